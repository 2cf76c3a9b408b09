//! Randomized evaluation as an independent check on the exact classifier.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::sampling;
use crate::scalar::Rational;
use crate::spin::ExactSpin;

use super::{classify_image, ClassificationReport, ImageClass};

#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub trials: usize,
    pub saw_scalar: bool,
    pub saw_pure: bool,
    pub values: Vec<ExactSpin>,
}

impl SampleReport {
    /// Class suggested by the sampled values alone.
    pub fn empirical_class(&self) -> ImageClass {
        ImageClass::from_support(self.saw_scalar, self.saw_pure)
    }
}

/// Evaluates `p` exactly on `trials` seeded random rational assignments.
/// Trial `t` draws from its own stream, so results do not depend on
/// scheduling. Non-multilinear polynomials are accepted.
pub fn brute_force_sample(p: &Polynomial, n: usize, trials: usize, seed: u64) -> Result<SampleReport> {
    let arity = p.arity().max(1) as usize;
    let multilinear = p.is_multilinear();
    let values: Vec<ExactSpin> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = sampling::stream_rng(seed, t as u64);
            let assignment: Vec<ExactSpin> =
                (0..arity).map(|_| sampling::random_spin(&mut rng, n)).collect();
            if multilinear {
                evaluate_cleared(p, &assignment)
            } else {
                p.evaluate(&assignment)
            }
        })
        .collect::<Result<_>>()?;
    let saw_scalar = values.iter().any(|v| !v.scalar().is_zero());
    let saw_pure = values
        .iter()
        .any(|v| v.pure_part().iter().any(|c| !c.is_zero()));
    Ok(SampleReport {
        trials,
        saw_scalar,
        saw_pure,
        values,
    })
}

/// Multilinear evaluation with each input's denominators cleared first:
/// `p(y_1/d_1, …, y_m/d_m) = p(y_1, …, y_m) / (d_1⋯d_m)`. Integer inputs
/// keep the intermediate rationals small.
fn evaluate_cleared(p: &Polynomial, assignment: &[ExactSpin]) -> Result<ExactSpin> {
    let mut total_denominator = BigInt::one();
    let cleared: Vec<ExactSpin> = assignment
        .iter()
        .map(|x| {
            let d = (0..x.n()).fold(BigInt::one(), |acc, i| acc.lcm(x.coord(i).denom()));
            total_denominator *= &d;
            x.scale(&Rational::from_integer(d))
        })
        .collect();
    let value = p.evaluate(&cleared)?;
    Ok(value.scale(&Rational::new(BigInt::one(), total_denominator)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport {
    pub exact: ClassificationReport,
    pub empirical: ImageClass,
    pub trials: usize,
    /// The sampler saw every component the exact class allows.
    pub exact_match: bool,
}

/// Runs the exact classifier and the sampler and fails if the sampler sees
/// a value component that the exact class forbids.
pub fn verify_classification(p: &Polynomial, n: usize, trials: usize, seed: u64) -> Result<ConsistencyReport> {
    let exact = classify_image(p, n)?;
    let sample = brute_force_sample(p, n, trials, seed)?;
    let class = exact.class;
    if (sample.saw_scalar && !class.allows_real()) || (sample.saw_pure && !class.allows_pure()) {
        let offending = sample
            .values
            .iter()
            .find(|v| {
                (!v.scalar().is_zero() && !class.allows_real())
                    || (v.pure_part().iter().any(|c| !c.is_zero()) && !class.allows_pure())
            })
            .map(ToString::to_string)
            .unwrap_or_default();
        return Err(Error::InvariantViolation(format!(
            "exact class {class} contradicted by sampled value {offending} for {p} on J_{n}"
        )));
    }
    let empirical = sample.empirical_class();
    Ok(ConsistencyReport {
        exact,
        empirical,
        trials,
        exact_match: empirical == class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{central_polynomial, pi_polynomial};
    use crate::poly::{associator, identity_polynomial, random_polynomial, MTree};
    use crate::scalar::int;

    #[test]
    fn pi_samples_vanish() {
        let report = brute_force_sample(&pi_polynomial(), 3, 200, 5).unwrap();
        assert!(report.values.iter().all(|v| v.scalar().is_zero() && v.pure_part().iter().all(Zero::is_zero)));
    }

    #[test]
    fn associator_samples_are_pure() {
        let report = brute_force_sample(&associator(), 3, 300, 1).unwrap();
        assert!(!report.saw_scalar);
        assert!(report.saw_pure);
    }

    #[test]
    fn identity_samples_are_generic() {
        let report = brute_force_sample(&identity_polynomial(), 4, 20, 2).unwrap();
        assert!(report.saw_scalar && report.saw_pure);
        assert_eq!(report.empirical_class(), ImageClass::Full);
    }

    #[test]
    fn cleared_denominators_match_direct_evaluation() {
        let p = random_polynomial(4, 6, 3, 21).unwrap();
        let mut rng = sampling::rng(3);
        for _ in 0..20 {
            let xs: Vec<ExactSpin> = (0..4).map(|_| sampling::random_spin(&mut rng, 5)).collect();
            assert_eq!(evaluate_cleared(&p, &xs).unwrap(), p.evaluate(&xs).unwrap());
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = random_polynomial(3, 2, 3, 4).unwrap();
        assert_eq!(brute_force_sample(&p, 3, 30, 8).unwrap(), brute_force_sample(&p, 3, 30, 8).unwrap());
    }

    #[test]
    fn accepts_non_multilinear() {
        let mut square = crate::poly::Polynomial::zero(1);
        square.add_tree(&MTree::node(MTree::leaf(1), MTree::leaf(1)), int(1));
        let report = brute_force_sample(&square, 3, 10, 0).unwrap();
        assert_eq!(report.values.len(), 10);
        assert!(verify_classification(&square, 3, 10, 0).is_err());
    }

    #[test]
    fn consistency_examples() {
        let assoc = verify_classification(&associator(), 4, 200, 3).unwrap();
        assert_eq!(assoc.exact.class, ImageClass::PureSpace);
        assert!(assoc.exact_match);
        let central = verify_classification(&central_polynomial(), 3, 200, 3).unwrap();
        assert_eq!(central.exact.class, ImageClass::Scalars);
        assert!(central.exact_match);
        for seed in 0..4 {
            let p = random_polynomial(3, 2, 3, seed).unwrap();
            verify_classification(&p, 3, 100, seed).unwrap();
        }
    }
}
