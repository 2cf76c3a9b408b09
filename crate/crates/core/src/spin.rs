//! The spin factor `J_n`: elements `a + v` with `a` a scalar and `v` in the
//! pure space `V = span(e_1, …, e_{n−1})`, multiplied by
//! `(a + u)∘(b + v) = (ab + ⟨u,v⟩) + (a·v + b·u)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::EvalAlgebra;
use crate::scalar::{Rational, Scalar, ScalarMode};

#[derive(Debug, Clone, PartialEq)]
pub struct SpinElement<S> {
    a: S,
    v: Vec<S>,
}

pub type ExactSpin = SpinElement<Rational>;
pub type FloatSpin = SpinElement<f64>;

impl<S: Scalar> SpinElement<S> {
    /// Builds `a + v` in `J_n` with `n = v.len() + 1`.
    pub fn new(a: S, v: Vec<S>) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::InvalidInput(
                "spin factor needs n >= 2 (non-empty pure part)".into(),
            ));
        }
        Ok(SpinElement { a, v })
    }

    pub fn zero(n: usize) -> Result<Self> {
        check_ambient(n)?;
        Ok(SpinElement {
            a: S::zero(),
            v: vec![S::zero(); n - 1],
        })
    }

    pub fn unit(n: usize) -> Result<Self> {
        let mut out = Self::zero(n)?;
        out.a = S::one();
        Ok(out)
    }

    pub fn real(n: usize, a: S) -> Result<Self> {
        let mut out = Self::zero(n)?;
        out.a = a;
        Ok(out)
    }

    pub fn pure(v: Vec<S>) -> Result<Self> {
        Self::new(S::zero(), v)
    }

    /// Basis element `e_index`; index 0 is the unit.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_ambient(n)?;
        if index >= n {
            return Err(Error::IndexOutOfRange { index, limit: n });
        }
        let mut out = Self::zero(n)?;
        if index == 0 {
            out.a = S::one();
        } else {
            out.v[index - 1] = S::one();
        }
        Ok(out)
    }

    /// Ambient dimension `n`.
    pub fn n(&self) -> usize {
        self.v.len() + 1
    }

    pub fn scalar(&self) -> &S {
        &self.a
    }

    pub fn pure_part(&self) -> &[S] {
        &self.v
    }

    /// Coordinate `index` in the basis `e_0, …, e_{n−1}`.
    pub fn coord(&self, index: usize) -> &S {
        if index == 0 {
            &self.a
        } else {
            &self.v[index - 1]
        }
    }

    pub fn without_scalar(&self) -> Self {
        SpinElement {
            a: S::zero(),
            v: self.v.clone(),
        }
    }

    pub fn is_zero(&self, mode: ScalarMode) -> bool {
        mode.is_zero(&self.a) && self.has_zero_pure_part(mode)
    }

    pub fn has_zero_pure_part(&self, mode: ScalarMode) -> bool {
        self.v.iter().all(|c| mode.is_zero(c))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.v.len() != other.v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn neg(&self) -> Self {
        SpinElement {
            a: -self.a.clone(),
            v: self.v.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        SpinElement {
            a: self.a.clone() * factor.clone(),
            v: self.v.iter().map(|c| c.clone() * factor.clone()).collect(),
        }
    }

    /// The Jordan product of `J_n`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn pure_norm_sq(&self) -> S {
        dot(&self.v, &self.v)
    }

    /// Squared Euclidean norm over all `n` coordinates.
    pub fn norm_sq(&self) -> S {
        self.a.clone() * self.a.clone() + self.pure_norm_sq()
    }

    pub fn to_f64(&self) -> FloatSpin {
        SpinElement {
            a: self.a.to_f64(),
            v: self.v.iter().map(Scalar::to_f64).collect(),
        }
    }

    /// Parses `a + [c1, …, c_{n−1}]`, or the basis shorthand `e<k>`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix('e') {
            return Err(Error::InvalidInput(format!(
                "basis shorthand e{rest} needs an ambient dimension; use parse_in"
            )));
        }
        let bad = || Error::InvalidInput(format!("expected `a + [c1, ...]`, got {text:?}"));
        let open = text.find('[').ok_or_else(bad)?;
        let close = text.rfind(']').ok_or_else(bad)?;
        if close < open || !text[close + 1..].trim().is_empty() {
            return Err(bad());
        }
        let head = text[..open].trim();
        let head = head.strip_suffix('+').ok_or_else(bad)?.trim();
        let a = S::parse_text(head)?;
        let v = text[open + 1..close]
            .split(',')
            .map(S::parse_text)
            .collect::<Result<Vec<_>>>()?;
        Self::new(a, v)
    }

    /// Like [`SpinElement::parse`], but also accepts combinations of basis
    /// names such as `2 + 3e1`, `-e2 + 1/2*e1` or a bare scalar `1`, and
    /// checks that the element lives in `J_n`.
    pub fn parse_in(text: &str, n: usize) -> Result<Self> {
        let trimmed = text.trim();
        if !trimmed.contains('[') {
            return Self::parse_combination(trimmed, n);
        }
        let out = Self::parse(trimmed)?;
        if out.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: out.n(),
            });
        }
        Ok(out)
    }

    fn parse_combination(text: &str, n: usize) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("cannot read {text:?} as an element of J_{n}"));
        let mut out = Self::zero(n)?;
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in text.char_indices() {
            if (c == '+' || c == '-') && !text[start..i].trim().is_empty() {
                terms.push(&text[start..i]);
                start = i;
            }
        }
        terms.push(&text[start..]);
        for term in terms {
            let compact: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            let (negative, body) = match compact.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, compact.strip_prefix('+').unwrap_or(&compact)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff, index) = match body.find('e') {
                Some(at) => {
                    let index: usize = body[at + 1..].parse().map_err(|_| bad())?;
                    let coeff = body[..at].trim_end_matches('*');
                    let coeff = if coeff.is_empty() { S::one() } else { S::parse_text(coeff)? };
                    (coeff, Some(index))
                }
                None => (S::parse_text(body)?, None),
            };
            let coeff = if negative { S::zero() - coeff } else { coeff };
            let unit = match index {
                Some(k) => Self::basis(n, k)?,
                None => Self::unit(n)?,
            };
            out = out.add_unchecked(&unit.scale(&coeff));
        }
        Ok(out)
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        SpinElement {
            a: self.a.clone() + other.a.clone(),
            v: self
                .v
                .iter()
                .zip(&other.v)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let a = self.a.clone() * other.a.clone() + dot(&self.v, &other.v);
        let v = self
            .v
            .iter()
            .zip(&other.v)
            .map(|(u, w)| self.a.clone() * w.clone() + other.a.clone() * u.clone())
            .collect();
        SpinElement { a, v }
    }
}

impl FloatSpin {
    /// Euclidean distance over all coordinates.
    pub fn distance(&self, other: &FloatSpin) -> f64 {
        let da = self.a - other.a;
        let dv: f64 = self
            .v
            .iter()
            .zip(&other.v)
            .map(|(x, y)| (x - y) * (x - y))
            .sum();
        (da * da + dv).sqrt()
    }
}

impl<S: Scalar> fmt::Display for SpinElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + [", self.a.render())?;
        for (i, c) in self.v.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&c.render())?;
        }
        f.write_str("]")
    }
}

impl<S: Scalar> EvalAlgebra for SpinElement<S> {
    fn zero_like(&self) -> Self {
        SpinElement {
            a: S::zero(),
            v: vec![S::zero(); self.v.len()],
        }
    }

    fn shape(&self) -> String {
        format!("J_{}", self.n())
    }

    fn sum(&self, other: &Self) -> Self {
        self.add_unchecked(other)
    }

    fn scaled(&self, factor: &Rational) -> Self {
        self.scale(&S::from_rational(factor))
    }

    fn product(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
}

fn check_ambient(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "spin factor dimension must be at least 2, got {n}"
        )));
    }
    Ok(())
}

fn dot<S: Scalar>(x: &[S], y: &[S]) -> S {
    x.iter()
        .zip(y)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// Same scalar part and same pure norm: the orbit criterion under `Aut(J_n)`.
pub fn orbit_equivalent<S: Scalar>(x: &SpinElement<S>, y: &SpinElement<S>, mode: ScalarMode) -> bool {
    x.n() == y.n() && mode.eq(x.scalar(), y.scalar()) && mode.eq(&x.pure_norm_sq(), &y.pure_norm_sq())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn fdot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Extends the unit vector `w` to an orthonormal basis of the pure space,
/// with `w` first. Candidates are the standard basis vectors in order;
/// those whose residual after projection is below `tolerance` are skipped.
pub fn frame_complete(w: &[f64], tolerance: f64) -> Result<Vec<Vec<f64>>> {
    if w.is_empty() {
        return Err(Error::InvalidInput("empty pure vector".into()));
    }
    if (norm(w) - 1.0).abs() > tolerance {
        return Err(Error::InvalidInput(format!(
            "frame seed must be a unit vector, norm is {}",
            norm(w)
        )));
    }
    let dim = w.len();
    let mut frame = vec![w.to_vec()];
    for k in 0..dim {
        if frame.len() == dim {
            break;
        }
        let mut residual = vec![0.0; dim];
        residual[k] = 1.0;
        // two passes of projection keep the frame orthonormal to rounding
        for _ in 0..2 {
            for f in &frame {
                let c = fdot(f, &residual);
                for (r, x) in residual.iter_mut().zip(f) {
                    *r -= c * x;
                }
            }
        }
        let len = norm(&residual);
        if len < tolerance {
            continue;
        }
        frame.push(residual.into_iter().map(|r| r / len).collect());
    }
    if frame.len() != dim {
        return Err(Error::InvariantViolation(format!(
            "frame completion produced {} of {dim} vectors",
            frame.len()
        )));
    }
    Ok(frame)
}

/// A linear automorphism of `J_n`: fixes the unit and acts on the pure
/// space by an orthogonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Automorphism {
    /// Row-major; column `i` is the image of `e_{i+1}`.
    matrix: Vec<Vec<f64>>,
}

impl Automorphism {
    pub fn identity(pure_dim: usize) -> Self {
        let matrix = (0..pure_dim)
            .map(|r| (0..pure_dim).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
            .collect();
        Automorphism { matrix }
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    pub fn pure_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply_pure(&self, v: &[f64]) -> Vec<f64> {
        self.matrix.iter().map(|row| fdot(row, v)).collect()
    }

    pub fn apply(&self, x: &FloatSpin) -> Result<FloatSpin> {
        if x.pure_part().len() != self.pure_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.pure_dim() + 1,
                got: x.n(),
            });
        }
        SpinElement::new(*x.scalar(), self.apply_pure(x.pure_part()))
    }

    pub fn transpose(&self) -> Automorphism {
        let d = self.pure_dim();
        let matrix = (0..d)
            .map(|r| (0..d).map(|c| self.matrix[c][r]).collect())
            .collect();
        Automorphism { matrix }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let d = self.pure_dim();
        let matrix = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| (0..d).map(|k| self.matrix[r][k] * other.matrix[k][c]).sum())
                    .collect()
            })
            .collect();
        Automorphism { matrix }
    }

    /// Largest entry of `MᵀM − I` in absolute value.
    pub fn orthogonality_defect(&self) -> f64 {
        let d = self.pure_dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let entry: f64 = (0..d).map(|k| self.matrix[k][i] * self.matrix[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((entry - target).abs());
            }
        }
        worst
    }
}

/// The map fixing 1 and sending `e_i ↦ frame[i−1]`.
pub fn build_automorphism(frame: &[Vec<f64>], tolerance: f64) -> Result<Automorphism> {
    let d = frame.len();
    if d == 0 {
        return Err(Error::InvalidInput("empty frame".into()));
    }
    if let Some(bad) = frame.iter().find(|f| f.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: bad.len(),
        });
    }
    for i in 0..d {
        for j in 0..d {
            let target = if i == j { 1.0 } else { 0.0 };
            let got = fdot(&frame[i], &frame[j]);
            if (got - target).abs() > tolerance {
                return Err(Error::InvalidInput(format!(
                    "frame is not orthonormal: <j{}, j{}> = {got}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let matrix = (0..d).map(|r| (0..d).map(|c| frame[c][r]).collect()).collect();
    Ok(Automorphism { matrix })
}

/// An automorphism sending the pure vector `u` to the pure vector `v`,
/// built as `Φ_v ∘ Φ_u⁻¹` where `Φ_w` sends `e_1 ↦ w/‖w‖`.
pub fn automorphism_mapping(u: &[f64], v: &[f64], tolerance: f64) -> Result<Automorphism> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len() + 1,
            got: v.len() + 1,
        });
    }
    let (nu, nv) = (norm(u), norm(v));
    if nu <= tolerance || nv <= tolerance {
        return Err(Error::InvalidInput("zero pure vector has no direction".into()));
    }
    let (su, sv) = (nu * nu, nv * nv);
    if (su - sv).abs() > tolerance * su.max(1.0) {
        return Err(Error::InvalidInput(format!(
            "pure norms differ: {su} vs {sv}"
        )));
    }
    let frame_for = |w: &[f64], len: f64| -> Result<Automorphism> {
        let unit: Vec<f64> = w.iter().map(|c| c / len).collect();
        build_automorphism(&frame_complete(&unit, tolerance)?, tolerance)
    };
    let phi_u = frame_for(u, nu)?;
    let phi_v = frame_for(v, nv)?;
    Ok(phi_v.compose(&phi_u.transpose()))
}
