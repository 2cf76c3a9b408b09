//! Exact arithmetic in the real composition algebras ℝ, ℂ, ℍ, 𝕆.
//!
//! Elements are stored as `2^k` rational coordinates in the order
//! `1, i, j, k, l, il, jl, kl` (truncated to the level). Products follow the
//! Cayley–Dickson doubling rule `(a,b)(c,d) = (ac − d̄b, da + bc̄)`, which
//! reproduces Hamilton's `ij = k` on the quaternion half.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

pub const UNIT_NAMES: [&str; 8] = ["1", "i", "j", "k", "l", "il", "jl", "kl"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraLevel {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl AlgebraLevel {
    pub const ALL: [AlgebraLevel; 4] = [
        AlgebraLevel::Real,
        AlgebraLevel::Complex,
        AlgebraLevel::Quaternion,
        AlgebraLevel::Octonion,
    ];

    pub fn dimension(self) -> usize {
        match self {
            AlgebraLevel::Real => 1,
            AlgebraLevel::Complex => 2,
            AlgebraLevel::Quaternion => 4,
            AlgebraLevel::Octonion => 8,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            AlgebraLevel::Real => "real",
            AlgebraLevel::Complex => "complex",
            AlgebraLevel::Quaternion => "quaternion",
            AlgebraLevel::Octonion => "octonion",
        }
    }

    /// Dimension of the Hermitian 2×2 model over this level (3, 4, 6 or 10).
    pub fn spin_dimension(self) -> usize {
        2 + self.dimension()
    }

    /// Inverse of [`AlgebraLevel::spin_dimension`].
    pub fn for_spin_dimension(n: usize) -> Option<AlgebraLevel> {
        AlgebraLevel::ALL.into_iter().find(|l| l.spin_dimension() == n)
    }
}

impl fmt::Display for AlgebraLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for AlgebraLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "real" | "r" => Ok(AlgebraLevel::Real),
            "complex" | "c" => Ok(AlgebraLevel::Complex),
            "quaternion" | "h" => Ok(AlgebraLevel::Quaternion),
            "octonion" | "o" => Ok(AlgebraLevel::Octonion),
            other => Err(Error::InvalidInput(format!("unknown algebra level {other:?}"))),
        }
    }
}

/// An element of ℝ, ℂ, ℍ or 𝕆 with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CDNumber {
    level: AlgebraLevel,
    coords: Vec<Rational>,
}

impl CDNumber {
    pub fn new(level: AlgebraLevel, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != level.dimension() {
            return Err(Error::DimensionMismatch {
                expected: level.dimension(),
                got: coords.len(),
            });
        }
        Ok(CDNumber { level, coords })
    }

    pub fn zero(level: AlgebraLevel) -> Self {
        CDNumber {
            level,
            coords: vec![Rational::zero(); level.dimension()],
        }
    }

    pub fn real(level: AlgebraLevel, value: Rational) -> Self {
        let mut out = CDNumber::zero(level);
        out.coords[0] = value;
        out
    }

    /// The `index`-th unit in the order `1, i, j, k, l, il, jl, kl`.
    pub fn unit(level: AlgebraLevel, index: usize) -> Result<Self> {
        if index >= level.dimension() {
            return Err(Error::IndexOutOfRange {
                index,
                limit: level.dimension(),
            });
        }
        let mut out = CDNumber::zero(level);
        out.coords[index] = int(1);
        Ok(out)
    }

    pub fn level(&self) -> AlgebraLevel {
        self.level
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn real_part(&self) -> &Rational {
        &self.coords[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_level(&self, other: &CDNumber) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level.to_string(),
                right: other.level.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CDNumber) -> Result<CDNumber> {
        self.check_level(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &CDNumber) -> Result<CDNumber> {
        self.check_level(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &CDNumber) -> Result<CDNumber> {
        self.check_level(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> CDNumber {
        CDNumber {
            level: self.level,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> CDNumber {
        CDNumber {
            level: self.level,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn conj(&self) -> CDNumber {
        CDNumber {
            level: self.level,
            coords: conj_slice(&self.coords),
        }
    }

    pub fn norm_sq(&self) -> Rational {
        self.coords.iter().map(|c| c * c).sum()
    }

    /// Euclidean inner product of the coordinate vectors, i.e. `Re(x·ȳ)`.
    pub fn dot(&self, other: &CDNumber) -> Rational {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub(crate) fn add_unchecked(&self, other: &CDNumber) -> CDNumber {
        CDNumber {
            level: self.level,
            coords: add_slice(&self.coords, &other.coords),
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &CDNumber) -> CDNumber {
        CDNumber {
            level: self.level,
            coords: mul_slice(&self.coords, &other.coords),
        }
    }
}

impl fmt::Display for CDNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (coeff, name) in self.coords.iter().zip(UNIT_NAMES) {
            if coeff.is_zero() {
                continue;
            }
            let negative = crate::scalar::is_negative(coeff);
            let magnitude = if negative { -coeff } else { coeff.clone() };
            if wrote {
                f.write_str(if negative { " - " } else { " + " })?;
            } else if negative {
                f.write_str("-")?;
            }
            match (name, magnitude == int(1)) {
                ("1", _) => write!(f, "{magnitude}")?,
                (_, true) => f.write_str(name)?,
                (_, false) => write!(f, "{magnitude}{name}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn add_slice(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sub_slice(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn conj_slice(x: &[Rational]) -> Vec<Rational> {
    x.iter()
        .enumerate()
        .map(|(i, c)| if i == 0 { c.clone() } else { -c })
        .collect()
}

fn mul_slice(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    let half = x.len() / 2;
    let (a, b) = x.split_at(half);
    let (c, d) = y.split_at(half);
    let first = sub_slice(&mul_slice(a, c), &mul_slice(&conj_slice(d), b));
    let second = add_slice(&mul_slice(d, a), &mul_slice(b, &conj_slice(c)));
    let mut out = first;
    out.extend(second);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn unit(level: AlgebraLevel, index: usize) -> CDNumber {
        CDNumber::unit(level, index).unwrap()
    }

    fn q(coords: [i64; 4]) -> CDNumber {
        CDNumber::new(AlgebraLevel::Quaternion, coords.iter().map(|&c| int(c)).collect()).unwrap()
    }

    #[test]
    fn add_is_coordinatewise() {
        let h = AlgebraLevel::Quaternion;
        assert_eq!(unit(h, 1).add(&unit(h, 2)).unwrap(), q([0, 1, 1, 0]));
        let x = q([1, -2, 3, 4]);
        assert_eq!(x.add(&CDNumber::zero(h)).unwrap(), x);
        let half = CDNumber::real(AlgebraLevel::Real, rational(1, 2));
        assert_eq!(half.add(&half).unwrap(), unit(AlgebraLevel::Real, 0));
    }

    #[test]
    fn hamilton_relations() {
        let h = AlgebraLevel::Quaternion;
        let (i, j, k) = (unit(h, 1), unit(h, 2), unit(h, 3));
        let minus_one = CDNumber::real(h, int(-1));
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&k).unwrap(), i);
        assert_eq!(k.mul(&i).unwrap(), j);
        assert_eq!(j.mul(&i).unwrap(), k.neg());
        for u in [&i, &j, &k] {
            assert_eq!(u.mul(u).unwrap(), minus_one);
        }
        let x = q([2, 0, -1, 5]);
        assert_eq!(x.mul(&unit(h, 0)).unwrap(), x);
    }

    #[test]
    fn octonion_non_associative_witness() {
        let o = AlgebraLevel::Octonion;
        let (i, j, l) = (unit(o, 1), unit(o, 2), unit(o, 4));
        let kl = unit(o, 7);
        let left = i.mul(&j).unwrap().mul(&l).unwrap();
        let right = i.mul(&j.mul(&l).unwrap()).unwrap();
        assert_eq!(left, kl);
        assert_eq!(right, kl.neg());
    }

    #[test]
    fn conjugation_and_norm() {
        let r = CDNumber::real(AlgebraLevel::Real, int(3));
        assert_eq!(r.conj(), r);
        let c = AlgebraLevel::Complex;
        assert_eq!(unit(c, 1).conj(), unit(c, 1).neg());
        let one_plus_i = unit(c, 0).add(&unit(c, 1)).unwrap();
        assert_eq!(one_plus_i.norm_sq(), int(2));
        assert_eq!(CDNumber::zero(AlgebraLevel::Octonion).norm_sq(), int(0));
    }

    #[test]
    fn mixed_levels_are_rejected() {
        let a = unit(AlgebraLevel::Complex, 1);
        let b = unit(AlgebraLevel::Quaternion, 1);
        assert!(matches!(a.add(&b), Err(Error::LevelMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::LevelMismatch { .. })));
        assert!(CDNumber::unit(AlgebraLevel::Complex, 2).is_err());
        assert!(CDNumber::new(AlgebraLevel::Complex, vec![int(1)]).is_err());
    }

    #[test]
    fn display_names_units() {
        let o = AlgebraLevel::Octonion;
        let x = unit(o, 5).scale(&int(-2)).add(&unit(o, 0)).unwrap();
        assert_eq!(x.to_string(), "1 - 2il");
        assert_eq!(unit(o, 7).neg().to_string(), "-kl");
        assert_eq!(CDNumber::zero(o).to_string(), "0");
    }
}
