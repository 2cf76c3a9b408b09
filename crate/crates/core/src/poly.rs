//! Commutative non-associative polynomials.
//!
//! A monomial is an unordered binary tree over variables `x1, x2, …`; it is
//! stored in canonical form, where at every node the left child precedes
//! the right child in the tree order (more leaves first, then the
//! lexicographic order of the flattened token sequence). With that order
//! `(x1*x2)*x3` is already canonical and `x3*(x2*x1)` canonicalizes to it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::sampling;
use crate::scalar::{int, rational, Rational};

/// Variable `x_index`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MTree {
    Leaf(VarId),
    Node(Box<MTree>, Box<MTree>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Token {
    Open,
    Var(u32),
    Close,
}

impl MTree {
    pub fn leaf(index: u32) -> MTree {
        MTree::Leaf(VarId(index))
    }

    pub fn node(left: MTree, right: MTree) -> MTree {
        MTree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            MTree::Leaf(_) => 1,
            MTree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Variables in left-to-right leaf order.
    pub fn leaves(&self) -> Vec<VarId> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<VarId>) {
        match self {
            MTree::Leaf(v) => out.push(*v),
            MTree::Node(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    fn tokens(&self, out: &mut Vec<Token>) {
        match self {
            MTree::Leaf(v) => out.push(Token::Var(v.0)),
            MTree::Node(l, r) => {
                out.push(Token::Open);
                l.tokens(out);
                r.tokens(out);
                out.push(Token::Close);
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            MTree::Leaf(_) => true,
            MTree::Node(l, r) => l.as_ref() <= r.as_ref() && l.is_canonical() && r.is_canonical(),
        }
    }

    /// Swaps children at every node; an equivalent tree modulo commutativity.
    pub fn mirrored(&self) -> MTree {
        match self {
            MTree::Leaf(v) => MTree::Leaf(*v),
            MTree::Node(l, r) => MTree::node(r.mirrored(), l.mirrored()),
        }
    }

    fn render(&self, out: &mut String) {
        match self {
            MTree::Leaf(v) => out.push_str(&v.to_string()),
            MTree::Node(l, r) => {
                out.push('(');
                l.render(out);
                out.push('*');
                r.render(out);
                out.push(')');
            }
        }
    }
}

impl Ord for MTree {
    fn cmp(&self, other: &Self) -> Ordering {
        other.leaf_count().cmp(&self.leaf_count()).then_with(|| {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            self.tokens(&mut a);
            other.tokens(&mut b);
            a.cmp(&b)
        })
    }
}

impl PartialOrd for MTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.render(&mut out);
        f.write_str(&out)
    }
}

/// A canonical monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(MTree);

impl Monomial {
    pub fn tree(&self) -> &MTree {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.leaf_count()
    }

    pub fn var(index: u32) -> Monomial {
        Monomial(MTree::leaf(index))
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let (l, r) = if self.0 <= other.0 {
            (self.0.clone(), other.0.clone())
        } else {
            (other.0.clone(), self.0.clone())
        };
        Monomial(MTree::node(l, r))
    }

    /// Whether the leaves are exactly `x1, …, x_arity`, each once.
    pub fn is_multilinear_in(&self, arity: u32) -> bool {
        let mut seen: Vec<u32> = self.0.leaves().iter().map(|v| v.0).collect();
        seen.sort_unstable();
        seen.len() == arity as usize && seen.iter().zip(1..).all(|(&v, k)| v == k)
    }

    pub fn max_var(&self) -> u32 {
        self.0.leaves().iter().map(|v| v.0).max().unwrap_or(0)
    }

    pub fn evaluate<A: EvalAlgebra>(&self, assignment: &[A]) -> Result<A> {
        eval_tree(&self.0, assignment)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Orders every node's children, bottom-up.
pub fn canonicalize(tree: &MTree) -> Monomial {
    fn go(tree: &MTree) -> MTree {
        match tree {
            MTree::Leaf(v) => MTree::Leaf(*v),
            MTree::Node(l, r) => {
                let (l, r) = (go(l), go(r));
                if r < l {
                    MTree::node(r, l)
                } else {
                    MTree::node(l, r)
                }
            }
        }
    }
    Monomial(go(tree))
}

/// What the evaluator needs from an algebra.
pub trait EvalAlgebra: Clone {
    fn zero_like(&self) -> Self;
    /// Elements with different shapes cannot be combined.
    fn shape(&self) -> String;
    fn sum(&self, other: &Self) -> Self;
    fn scaled(&self, factor: &Rational) -> Self;
    fn product(&self, other: &Self) -> Result<Self>;
}

fn eval_tree<A: EvalAlgebra>(tree: &MTree, assignment: &[A]) -> Result<A> {
    match tree {
        MTree::Leaf(v) => assignment
            .get((v.0 as usize).wrapping_sub(1))
            .cloned()
            .ok_or(Error::MissingAssignment(v.0)),
        MTree::Node(l, r) => eval_tree(l, assignment)?.product(&eval_tree(r, assignment)?),
    }
}

fn eval_cached<'t, A: EvalAlgebra>(
    tree: &'t MTree,
    assignment: &[A],
    cache: &mut HashMap<&'t MTree, A>,
) -> Result<A> {
    if let MTree::Leaf(_) = tree {
        return eval_tree(tree, assignment);
    }
    if let Some(hit) = cache.get(tree) {
        return Ok(hit.clone());
    }
    let MTree::Node(l, r) = tree else { unreachable!() };
    let value = eval_cached(l, assignment, cache)?.product(&eval_cached(r, assignment, cache)?)?;
    cache.insert(tree, value.clone());
    Ok(value)
}

/// A finite rational combination of canonical monomials with a declared
/// arity. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(arity: u32) -> Polynomial {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(index: u32) -> Polynomial {
        Polynomial::from_terms(index, [(Monomial::var(index), int(1))])
    }

    pub fn from_terms<I>(arity: u32, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut out = Polynomial::zero(arity);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// Adds `coeff · tree`, canonicalizing the tree first.
    pub fn add_tree(&mut self, tree: &MTree, coeff: Rational) {
        self.add_term(canonicalize(tree), coeff);
    }

    fn add_term(&mut self, monomial: Monomial, coeff: Rational) {
        self.arity = self.arity.max(monomial.max_var());
        let slot = self.terms.entry(monomial).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn with_arity(mut self, arity: u32) -> Polynomial {
        self.arity = self.arity.max(arity);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Rational {
        self.terms.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|m| m.is_multilinear_in(self.arity))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone().with_arity(other.arity);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    /// Bilinear product: every pair of monomials becomes one node.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.arity.max(other.arity));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }

    /// Renames `x_i` to `x_{mapping[i−1]}`.
    pub fn rename(&self, mapping: &[u32]) -> Result<Polynomial> {
        fn go(tree: &MTree, mapping: &[u32]) -> Result<MTree> {
            Ok(match tree {
                MTree::Leaf(v) => MTree::leaf(
                    *mapping
                        .get((v.0 as usize).wrapping_sub(1))
                        .ok_or(Error::MissingAssignment(v.0))?,
                ),
                MTree::Node(l, r) => MTree::node(go(l, mapping)?, go(r, mapping)?),
            })
        }
        let mut out = Polynomial::zero(mapping.iter().copied().max().unwrap_or(0));
        for (m, c) in &self.terms {
            out.add_tree(&go(m.tree(), mapping)?, c.clone());
        }
        Ok(out)
    }

    /// Evaluates with `x_i ↦ assignment[i−1]`. Every variable that occurs
    /// must be assigned and all assigned elements must share one shape.
    pub fn evaluate<A: EvalAlgebra>(&self, assignment: &[A]) -> Result<A> {
        let first = assignment.first().ok_or_else(|| {
            Error::InvalidInput("empty assignment: cannot infer the algebra".into())
        })?;
        let shape = first.shape();
        if let Some(other) = assignment.iter().find(|x| x.shape() != shape) {
            return Err(Error::InvalidInput(format!(
                "assignment mixes {shape} and {}",
                other.shape()
            )));
        }
        // monomials share subtrees; evaluate each distinct subtree once
        let mut cache: HashMap<&MTree, A> = HashMap::new();
        let mut acc = first.zero_like();
        for (m, c) in &self.terms {
            acc = acc.sum(&eval_cached(m.tree(), assignment, &mut cache)?.scaled(c));
        }
        Ok(acc)
    }

    /// Same terms multiplied by the least common multiple of the
    /// denominators, as integers.
    pub fn integer_coefficients(&self) -> (Rational, Vec<(Monomial, num_bigint::BigInt)>) {
        let lcm = self
            .terms
            .values()
            .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scale = Rational::from_integer(lcm.clone());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), (c * &scale).to_integer()))
            .collect();
        (scale, terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{magnitude}*{m}")?;
        }
        Ok(())
    }
}

impl EvalAlgebra for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(0)
    }

    fn shape(&self) -> String {
        "polynomial".into()
    }

    fn sum(&self, other: &Self) -> Self {
        self.add(other)
    }

    fn scaled(&self, factor: &Rational) -> Self {
        self.scale(factor)
    }

    fn product(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(other))
    }
}

/// `(x1 x2) x3 − x1 (x2 x3)`.
pub fn associator() -> Polynomial {
    let (x1, x2, x3) = (MTree::leaf(1), MTree::leaf(2), MTree::leaf(3));
    let mut p = Polynomial::zero(3);
    p.add_tree(&MTree::node(MTree::node(x1.clone(), x2.clone()), x3.clone()), int(1));
    p.add_tree(&MTree::node(x1, MTree::node(x2, x3)), int(-1));
    p
}

/// `f(x1) = x1`.
pub fn identity_polynomial() -> Polynomial {
    Polynomial::var(1)
}

pub const DEFAULT_ENUMERATION_BOUND: u32 = 8;

/// `(2m − 3)!!`, the number of canonical multilinear monomials of degree `m`.
pub fn monomial_count(m: u32) -> u64 {
    (1..m).map(|k| u64::from(2 * k - 1)).product::<u64>().max(1)
}

pub fn enumerate_monomials(m: u32) -> Result<Vec<Monomial>> {
    enumerate_monomials_bounded(m, DEFAULT_ENUMERATION_BOUND)
}

/// All canonical multilinear monomials on `x1, …, xm`, sorted.
///
/// Each unordered split of the variable set is generated once by keeping
/// the smallest variable on one fixed side.
pub fn enumerate_monomials_bounded(m: u32, bound: u32) -> Result<Vec<Monomial>> {
    if m == 0 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    if m > bound {
        return Err(Error::BoundExceeded(format!(
            "degree {m} exceeds enumeration bound {bound}"
        )));
    }
    let vars: Vec<u32> = (1..=m).collect();
    let mut out: Vec<Monomial> = trees_on(&vars).into_iter().map(Monomial).collect();
    out.sort();
    Ok(out)
}

fn trees_on(vars: &[u32]) -> Vec<MTree> {
    if vars.len() == 1 {
        return vec![MTree::leaf(vars[0])];
    }
    let (first, rest) = (vars[0], &vars[1..]);
    let mut out = Vec::new();
    // subsets of `rest` joining `first`; the complement must be non-empty
    for mask in 0u32..(1 << rest.len()) - 1 {
        let mut side_a = vec![first];
        let mut side_b = Vec::new();
        for (bit, &v) in rest.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                side_a.push(v);
            } else {
                side_b.push(v);
            }
        }
        let (ta, tb) = (trees_on(&side_a), trees_on(&side_b));
        for a in &ta {
            for b in &tb {
                out.push(canonicalize(&MTree::node(a.clone(), b.clone())).0);
            }
        }
    }
    out
}

/// A seeded random multilinear polynomial of degree `m` with `term_count`
/// distinct monomials and coefficients `±p/q` with `1 ≤ p, q ≤ coeff_bound`.
pub fn random_polynomial(m: u32, term_count: usize, coeff_bound: u32, seed: u64) -> Result<Polynomial> {
    if coeff_bound == 0 {
        return Err(Error::InvalidInput("coefficient bound must be positive".into()));
    }
    let available = monomial_count(m);
    if term_count as u64 > available {
        return Err(Error::InvalidInput(format!(
            "{term_count} terms requested but only {available} monomials of degree {m} exist"
        )));
    }
    let monomials = enumerate_monomials(m)?;
    let mut rng = sampling::rng(seed);
    let bound = i64::from(coeff_bound);
    let picks = index::sample(&mut rng, monomials.len(), term_count).into_vec();
    let mut out = Polynomial::zero(m);
    for i in picks {
        let magnitude = rng.gen_range(1..=bound);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let denom = rng.gen_range(1..=bound);
        out.add_term(monomials[i].clone(), rational(sign * magnitude, denom));
    }
    Ok(out)
}
