//! Self-adjoint 2×2 matrices over ℝ, ℂ, ℍ, 𝕆 under `x∘y = (xy + yx)/2`.
//!
//! Only `(alpha, delta, beta)` is stored: the matrix is `[[alpha, beta],
//! [conj(beta), delta]]`, so self-adjointness holds by construction. The
//! basis is `e_0 = I`, `e_1 = diag(1, −1)` and, for `k ≥ 2`, the
//! off-diagonal matrix with `beta` equal to the `(k−2)`-th unit.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::composition::{AlgebraLevel, CDNumber};
use crate::error::{Error, Result};
use crate::poly::EvalAlgebra;
use crate::scalar::{int, parse_rational, rational, Rational};
use crate::spin::{ExactSpin, SpinElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Herm2 {
    alpha: Rational,
    delta: Rational,
    beta: CDNumber,
}

/// Structured text record: level tag, diagonal entries as `p/q`, and the
/// off-diagonal entry as a coordinate list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Herm2Record {
    pub level: AlgebraLevel,
    pub alpha: String,
    pub delta: String,
    pub beta: Vec<String>,
}

type Matrix = [[CDNumber; 2]; 2];

impl Herm2 {
    pub fn new(alpha: Rational, delta: Rational, beta: CDNumber) -> Self {
        Herm2 { alpha, delta, beta }
    }

    pub fn zero(level: AlgebraLevel) -> Self {
        Herm2::new(Rational::zero(), Rational::zero(), CDNumber::zero(level))
    }

    pub fn identity(level: AlgebraLevel) -> Self {
        Herm2::new(int(1), int(1), CDNumber::zero(level))
    }

    pub fn level(&self) -> AlgebraLevel {
        self.beta.level()
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn beta(&self) -> &CDNumber {
        &self.beta
    }

    pub fn add(&self, other: &Herm2) -> Result<Herm2> {
        Ok(Herm2::new(
            &self.alpha + &other.alpha,
            &self.delta + &other.delta,
            self.beta.add(&other.beta)?,
        ))
    }

    pub fn scale(&self, factor: &Rational) -> Herm2 {
        Herm2::new(&self.alpha * factor, &self.delta * factor, self.beta.scale(factor))
    }

    fn as_matrix(&self) -> Matrix {
        let level = self.level();
        [
            [CDNumber::real(level, self.alpha.clone()), self.beta.clone()],
            [self.beta.conj(), CDNumber::real(level, self.delta.clone())],
        ]
    }

    /// The Jordan product, computed from the full matrix products `xy` and
    /// `yx`. The symmetrised result must again be self-adjoint with real
    /// diagonal; anything else is reported as an invariant violation.
    pub fn jordan_mul(&self, other: &Herm2) -> Result<Herm2> {
        if self.level() != other.level() {
            return Err(Error::LevelMismatch {
                left: self.level().to_string(),
                right: other.level().to_string(),
            });
        }
        let x = self.as_matrix();
        let y = other.as_matrix();
        let xy = mat_mul(&x, &y);
        let yx = mat_mul(&y, &x);
        let half = rational(1, 2);
        let s: Vec<Vec<CDNumber>> = (0..2)
            .map(|r| {
                (0..2)
                    .map(|c| xy[r][c].add_unchecked(&yx[r][c]).scale(&half))
                    .collect()
            })
            .collect();
        let is_real = |z: &CDNumber| z.coords()[1..].iter().all(Zero::is_zero);
        if !is_real(&s[0][0]) || !is_real(&s[1][1]) {
            return Err(Error::InvariantViolation(format!(
                "Jordan product has non-real diagonal: {} / {}",
                s[0][0], s[1][1]
            )));
        }
        if s[1][0] != s[0][1].conj() {
            return Err(Error::InvariantViolation(format!(
                "Jordan product is not self-adjoint: {} vs conj({})",
                s[1][0], s[0][1]
            )));
        }
        Ok(Herm2::new(
            s[0][0].real_part().clone(),
            s[1][1].real_part().clone(),
            s[0][1].clone(),
        ))
    }

    /// Coordinates in the basis `e_0, …, e_{n−1}`.
    pub fn to_spin(&self) -> ExactSpin {
        let half = rational(1, 2);
        let a = (&self.alpha + &self.delta) * &half;
        let mut v = Vec::with_capacity(1 + self.level().dimension());
        v.push((&self.alpha - &self.delta) * &half);
        v.extend(self.beta.coords().iter().cloned());
        SpinElement::new(a, v).expect("pure part is never empty")
    }

    pub fn from_spin(s: &ExactSpin, level: AlgebraLevel) -> Result<Herm2> {
        let pure = s.pure_part();
        let expected = 1 + level.dimension();
        if pure.len() != expected {
            return Err(Error::DimensionMismatch {
                expected: expected + 1,
                got: s.n(),
            });
        }
        let a = s.scalar();
        let beta = CDNumber::new(level, pure[1..].to_vec())?;
        Ok(Herm2::new(a + &pure[0], a - &pure[0], beta))
    }

    pub fn to_record(&self) -> Herm2Record {
        Herm2Record {
            level: self.level(),
            alpha: self.alpha.to_string(),
            delta: self.delta.to_string(),
            beta: self.beta.coords().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_record(record: &Herm2Record) -> Result<Herm2> {
        let beta = record
            .beta
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Herm2::new(
            parse_rational(&record.alpha)?,
            parse_rational(&record.delta)?,
            CDNumber::new(record.level, beta)?,
        ))
    }
}

/// Basis matrix `e_index` of the model over `level`.
pub fn basis_element(level: AlgebraLevel, index: usize) -> Result<Herm2> {
    let n = level.spin_dimension();
    match index {
        0 => Ok(Herm2::identity(level)),
        1 => Ok(Herm2::new(int(1), int(-1), CDNumber::zero(level))),
        i if i < n => Ok(Herm2::new(
            Rational::zero(),
            Rational::zero(),
            CDNumber::unit(level, i - 2)?,
        )),
        _ => Err(Error::IndexOutOfRange { index, limit: n }),
    }
}

/// Outcome of checking one Hermitian model against `J_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub level: AlgebraLevel,
    pub n: usize,
    /// Pure basis pairs `(i, j)`, `1 ≤ i, j ≤ n−1`, checked for `e_i∘e_j = δ_ij·1`.
    pub basis_pairs: usize,
    /// Random pairs checked for commutativity, the Jordan identity, and
    /// `to_spin(x∘y) = to_spin(x)∘to_spin(y)`.
    pub random_pairs: usize,
    pub failures: Vec<String>,
}

impl ModelReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_model(level: AlgebraLevel, random_pairs: usize, seed: u64) -> Result<ModelReport> {
    let n = level.spin_dimension();
    let mut failures = Vec::new();
    let mut basis_pairs = 0;
    for i in 1..n {
        for j in 1..n {
            basis_pairs += 1;
            let product = basis_element(level, i)?.jordan_mul(&basis_element(level, j)?)?;
            let expected = if i == j { Herm2::identity(level) } else { Herm2::zero(level) };
            if product != expected {
                failures.push(format!("e{i}∘e{j} = {product}, expected {expected}"));
            }
        }
    }
    let mut rng = crate::sampling::rng(seed);
    for k in 0..random_pairs {
        let x = crate::sampling::random_herm2(&mut rng, level);
        let y = crate::sampling::random_herm2(&mut rng, level);
        let xy = x.jordan_mul(&y)?;
        if xy != y.jordan_mul(&x)? {
            failures.push(format!("pair {k}: x∘y ≠ y∘x for x = {x}, y = {y}"));
        }
        if xy.to_spin() != x.to_spin().mul(&y.to_spin())? {
            failures.push(format!("pair {k}: to_spin is not multiplicative at x = {x}, y = {y}"));
        }
        let xx = x.jordan_mul(&x)?;
        let lhs = xy.jordan_mul(&xx)?;
        let rhs = x.jordan_mul(&y.jordan_mul(&xx)?)?;
        if lhs != rhs {
            failures.push(format!("pair {k}: Jordan identity fails at x = {x}, y = {y}"));
        }
        if Herm2::from_spin(&x.to_spin(), level)? != x {
            failures.push(format!("pair {k}: from_spin(to_spin(x)) ≠ x for x = {x}"));
        }
    }
    Ok(ModelReport {
        level,
        n,
        basis_pairs,
        random_pairs,
        failures,
    })
}

fn mat_mul(x: &Matrix, y: &Matrix) -> Matrix {
    let entry = |r: usize, c: usize| {
        x[r][0]
            .mul_unchecked(&y[0][c])
            .add_unchecked(&x[r][1].mul_unchecked(&y[1][c]))
    };
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

impl fmt::Display for Herm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.alpha,
            self.beta,
            self.beta.conj(),
            self.delta
        )
    }
}

impl EvalAlgebra for Herm2 {
    fn zero_like(&self) -> Self {
        Herm2::zero(self.level())
    }

    fn shape(&self) -> String {
        format!("Herm2({})", self.level())
    }

    fn sum(&self, other: &Self) -> Self {
        Herm2::new(
            &self.alpha + &other.alpha,
            &self.delta + &other.delta,
            self.beta.add_unchecked(&other.beta),
        )
    }

    fn scaled(&self, factor: &Rational) -> Self {
        self.scale(factor)
    }

    fn product(&self, other: &Self) -> Result<Self> {
        self.jordan_mul(other)
    }
}
