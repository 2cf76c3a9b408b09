//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use jordan_core::classify::{
    brute_force_sample, central_polynomial, classify_image, parity_predict, pi_polynomial,
    preimage_search, verify_classification, ImageClass, PreimageOptions, ValueKind,
};
use jordan_core::cli::parse_polynomial;
use jordan_core::composition::AlgebraLevel;
use jordan_core::hermitian::{basis_element, Herm2};
use jordan_core::poly::{associator, enumerate_monomials, identity_polynomial, random_polynomial, Polynomial};
use jordan_core::sampling::{random_float_vector, random_herm2, random_spin, rng, stream_rng};
use jordan_core::spin::{automorphism_mapping, ExactSpin, FloatSpin};
use num_traits::Zero;
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn models_orthonormal() -> Check {
    let mut pairs = 0;
    for level in AlgebraLevel::ALL {
        let n = level.spin_dimension();
        for i in 1..n {
            for j in 1..n {
                let product = basis_element(level, i)
                    .and_then(|a| a.jordan_mul(&basis_element(level, j)?))
                    .map_err(err)?;
                let expected = if i == j { Herm2::identity(level) } else { Herm2::zero(level) };
                ensure(product == expected, || format!("J_{n}: e{i}∘e{j} = {product}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} basis pairs exact"))
}

fn models_isomorphic() -> Check {
    for level in AlgebraLevel::ALL {
        let mut r = rng(0x150 + level.dimension() as u64);
        for k in 0..1000 {
            let x = random_herm2(&mut r, level);
            let y = random_herm2(&mut r, level);
            let lhs = x.jordan_mul(&y).map_err(err)?.to_spin();
            let rhs = x.to_spin().mul(&y.to_spin()).map_err(err)?;
            ensure(lhs == rhs, || format!("{level} pair {k}: x = {x}, y = {y}"))?;
        }
    }
    Ok("1000 pairs per model".into())
}

fn jordan_identity<T, F>(x: &T, y: &T, mul: F) -> Result<bool, String>
where
    T: PartialEq,
    F: Fn(&T, &T) -> Result<T, String>,
{
    let xx = mul(x, x)?;
    let lhs = mul(&mul(x, y)?, &xx)?;
    let rhs = mul(x, &mul(y, &xx)?)?;
    Ok(lhs == rhs && mul(x, y)? == mul(y, x)?)
}

fn jordan_axioms() -> Check {
    for n in 2..=10 {
        let mut r = rng(0x300 + n as u64);
        for k in 0..1000 {
            let x = random_spin(&mut r, n);
            let y = random_spin(&mut r, n);
            let ok = jordan_identity(&x, &y, |a, b| a.mul(b).map_err(err))?;
            ensure(ok, || format!("J_{n} pair {k}: x = {x}, y = {y}"))?;
        }
    }
    for level in AlgebraLevel::ALL {
        let mut r = rng(0x310 + level.dimension() as u64);
        for k in 0..1000 {
            let x = random_herm2(&mut r, level);
            let y = random_herm2(&mut r, level);
            let ok = jordan_identity(&x, &y, |a, b| a.jordan_mul(b).map_err(err))?;
            ensure(ok, || format!("{level} model pair {k}: x = {x}, y = {y}"))?;
        }
    }
    Ok("J_2..J_10 and four matrix models, 1000 pairs each".into())
}

fn golden_suite() -> Vec<(&'static str, Polynomial)> {
    let (x1, x2, x3, x4) = (
        Polynomial::var(1),
        Polynomial::var(2),
        Polynomial::var(3),
        Polynomial::var(4),
    );
    vec![
        ("identity", identity_polynomial()),
        ("x1*x2", x1.mul(&x2)),
        ("associator", associator()),
        ("((x1*x2)*x3)*x4", x1.mul(&x2).mul(&x3).mul(&x4)),
        ("(x1*x2)*(x3*x4) - (x1*x3)*(x2*x4)", x1.mul(&x2).mul(&x3.mul(&x4)).sub(&x1.mul(&x3).mul(&x2.mul(&x4)))),
        (
            "associator(x1*x2, x3, x4)",
            x1.mul(&x2).mul(&x3).mul(&x4).sub(&x1.mul(&x2).mul(&x3.mul(&x4))),
        ),
    ]
}

fn basis_parity() -> Check {
    let mut tuples = 0u64;
    for (name, p) in golden_suite() {
        let m = p.arity() as usize;
        for n in 2..=4 {
            let basis: Vec<ExactSpin> = (0..n).map(|k| ExactSpin::basis(n, k).unwrap()).collect();
            let mut tuple = vec![0usize; m];
            loop {
                let inputs: Vec<ExactSpin> = tuple.iter().map(|&k| basis[k].clone()).collect();
                let value = p.evaluate(&inputs).map_err(err)?;
                let odd = tuple.iter().filter(|&&k| k != 0).count() % 2 == 1;
                let ok = if odd {
                    value.scalar().is_zero()
                } else {
                    value.pure_part().iter().all(Zero::is_zero)
                };
                ensure(ok, || format!("{name} on J_{n} at {tuple:?} = {value}"))?;
                let predicted = if odd { ValueKind::Pure } else { ValueKind::Real };
                ensure(parity_predict(&tuple) == predicted, || format!("parity_predict at {tuple:?}"))?;
                tuples += 1;
                let mut i = m;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    tuple[i] += 1;
                    if tuple[i] < n {
                        break;
                    }
                    tuple[i] = 0;
                }
                if tuple.iter().all(|&k| k == 0) {
                    break;
                }
            }
        }
    }
    Ok(format!("{tuples} basis tuples"))
}

fn golden_classifications() -> Check {
    let start = Instant::now();
    let expect = |p: &Polynomial, n: usize, want: ImageClass, name: &str| -> Result<(), String> {
        let got = classify_image(p, n).map_err(err)?.class;
        ensure(got == want, || format!("{name} on J_{n}: {got}, expected {want}"))
    };
    for n in [3, 4, 6, 10] {
        expect(&associator(), n, ImageClass::PureSpace, "associator")?;
        expect(&central_polynomial(), n, ImageClass::Scalars, "central")?;
        expect(&identity_polynomial(), n, ImageClass::Full, "identity")?;
    }
    for n in 2..=4 {
        expect(&pi_polynomial(), n, ImageClass::Zero, "degree-8 identity")?;
    }
    let sample = brute_force_sample(&pi_polynomial(), 10, 10_000, 0x5a).map_err(err)?;
    ensure(sample.values.iter().all(|v| v.is_zero(jordan_core::scalar::ScalarMode::Exact)), || {
        "degree-8 identity nonzero on a sampled J_10 input".into()
    })?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 60.0, || format!("took {elapsed:.1} s"))?;
    Ok(format!("{elapsed:.1} s"))
}

fn orbit_mappings() -> Check {
    let mut worst_map = 0.0f64;
    let mut worst_product = 0.0f64;
    for k in 0..200u64 {
        let mut r = stream_rng(0x600, k);
        let n = 2 + (k as usize % 9);
        let u = random_float_vector(&mut r, n - 1);
        let norm: f64 = u.iter().map(|c| c * c).sum::<f64>().sqrt();
        let dir = random_float_vector(&mut r, n - 1);
        let dir_norm: f64 = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
        let v: Vec<f64> = dir.iter().map(|c| c * norm / dir_norm).collect();
        let phi = automorphism_mapping(&u, &v, 1e-9).map_err(err)?;
        let image = phi.apply_pure(&u);
        let d = image.iter().zip(&v).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        worst_map = worst_map.max(d);
        ensure(d <= 1e-9, || format!("pair {k} in J_{n}: ‖Φ(u) − v‖ = {d:e}"))?;
        for j in 0..100 {
            let x = FloatSpin::new(r.gen_range(-3.0..3.0), random_float_vector(&mut r, n - 1)).map_err(err)?;
            let y = FloatSpin::new(r.gen_range(-3.0..3.0), random_float_vector(&mut r, n - 1)).map_err(err)?;
            let lhs = phi.apply(&x.mul(&y).map_err(err)?).map_err(err)?;
            let rhs = phi.apply(&x).and_then(|a| a.mul(&phi.apply(&y)?)).map_err(err)?;
            let d = lhs.distance(&rhs);
            worst_product = worst_product.max(d);
            ensure(d <= 1e-9, || format!("pair {k}, product {j}: defect {d:e}"))?;
        }
    }
    Ok(format!("max map error {worst_map:.1e}, max product defect {worst_product:.1e}"))
}

fn classifier_vs_oracle() -> Check {
    let mut mismatched = 0;
    for k in 0..500u64 {
        let m = 1 + (k % 4) as u32;
        let n = 2 + ((k / 4) % 3) as usize;
        let available = [1, 1, 3, 15][m as usize - 1];
        let terms = 1 + (k as usize * 7) % available.min(6);
        let p = random_polynomial(m, terms, 5, 0x700 + k).map_err(err)?;
        let report = verify_classification(&p, n, 1000, k).map_err(|e| format!("polynomial {k}: {e}"))?;
        if !report.exact_match {
            mismatched += 1;
        }
    }
    Ok(format!("500 polynomials, {mismatched} where sampling saw fewer components"))
}

fn preimages() -> Check {
    let tol = 1e-9;
    let mut summary = Vec::new();
    for (name, p) in [("identity", identity_polynomial()), ("x1*x2", Polynomial::var(1).mul(&Polynomial::var(2)))] {
        let mut successes = 0;
        for k in 0..100u64 {
            let mut r = stream_rng(0x800, k);
            let target = FloatSpin::new(r.gen_range(-3.0..3.0), random_float_vector(&mut r, 2)).map_err(err)?;
            let options = PreimageOptions {
                seed: k,
                tolerance: tol,
                ..PreimageOptions::default()
            };
            if let Ok(found) = preimage_search(&p, &target, &options) {
                let value = p.evaluate(&found.assignment).map_err(err)?;
                let residual = value.distance(&target);
                ensure(residual <= tol, || format!("{name} target {target}: re-evaluated residual {residual:e}"))?;
                if found.residual <= tol {
                    successes += 1;
                }
            }
        }
        ensure(successes >= 99, || format!("{name}: {successes}/100 successes"))?;
        summary.push(format!("{name} {successes}/100"));
    }
    Ok(summary.join(", "))
}

#[derive(Clone)]
enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>),
}

/// Every ordered binary tree whose leaves, read left to right, are `leaves`.
fn ordered_trees(leaves: &[usize]) -> Vec<Tree> {
    if leaves.len() == 1 {
        return vec![Tree::Leaf(leaves[0])];
    }
    let mut out = Vec::new();
    for split in 1..leaves.len() {
        for l in ordered_trees(&leaves[..split]) {
            for r in ordered_trees(&leaves[split..]) {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r.clone())));
            }
        }
    }
    out
}

fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.clone();
        let head = rest.remove(i);
        for mut tail in permutations(rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Key invariant under swapping the children of any node.
fn commutative_key(t: &Tree) -> String {
    match t {
        Tree::Leaf(i) => format!("x{i}"),
        Tree::Node(l, r) => {
            let (a, b) = (commutative_key(l), commutative_key(r));
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            format!("[{a},{b}]")
        }
    }
}

fn parse_key(text: &str) -> Tree {
    fn go(s: &[u8], pos: &mut usize) -> Tree {
        if s[*pos] == b'(' {
            *pos += 1;
            let l = go(s, pos);
            *pos += 1;
            let r = go(s, pos);
            *pos += 1;
            Tree::Node(Box::new(l), Box::new(r))
        } else {
            *pos += 1;
            let start = *pos;
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            Tree::Leaf(std::str::from_utf8(&s[start..*pos]).unwrap().parse().unwrap())
        }
    }
    go(text.as_bytes(), &mut 0)
}

fn monomial_counts() -> Check {
    let expected = [1usize, 1, 3, 15, 105, 945];
    for m in 1..=6u32 {
        let mut oracle = BTreeSet::new();
        for perm in permutations((1..=m as usize).collect()) {
            for t in ordered_trees(&perm) {
                oracle.insert(commutative_key(&t));
            }
        }
        let listed = enumerate_monomials(m).map_err(err)?;
        let keys: BTreeSet<String> = listed.iter().map(|mono| commutative_key(&parse_key(&mono.to_string()))).collect();
        ensure(listed.len() == expected[m as usize - 1], || format!("m = {m}: {} monomials", listed.len()))?;
        ensure(oracle.len() == listed.len() && keys == oracle, || {
            format!("m = {m}: oracle finds {} classes", oracle.len())
        })?;
    }
    Ok("1, 1, 3, 15, 105, 945".into())
}

fn parser_round_trip() -> Check {
    for k in 0..500u64 {
        let m = 1 + (k % 5) as u32;
        let available = [1usize, 1, 3, 15, 105][m as usize - 1];
        let terms = 1 + (k as usize * 11) % available.min(8);
        let p = random_polynomial(m, terms, 9, 0xa00 + k).map_err(err)?;
        let text = p.to_string();
        let (q, _, _) = parse_polynomial(&text, true).map_err(|e| format!("{text}: {e}"))?;
        ensure(q == p, || format!("{text} parsed back as {q}"))?;
    }
    let (q, _, _) = parse_polynomial("(x1*x2)*x3 - x1*(x2*x3)", true).map_err(err)?;
    ensure(q == associator(), || format!("associator source parsed as {q}"))?;
    Ok("500 round trips, associator source exact".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("models orthonormal", models_orthonormal),
        ("isomorphism", models_isomorphic),
        ("jordan axioms", jordan_axioms),
        ("parity", basis_parity),
        ("golden classifications", golden_classifications),
        ("orbits", orbit_mappings),
        ("classifier vs oracle", classifier_vs_oracle),
        ("preimage search", preimages),
        ("monomial counts", monomial_counts),
        ("parser", parser_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1} s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1} s]", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
