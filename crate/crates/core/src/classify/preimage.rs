//! Constructing an input that a full-image polynomial maps to a target.
//!
//! Starting from a basis tuple `x` with nonzero real value, inputs are
//! replaced one slot at a time by generic elements `z`. At the first slot
//! `i` where the value stops being real, the slot is split into a part
//! reproducing the real value and a part `r̃_i = z_i − c·x_i` with purely
//! pure value `w`. By linearity in slot `i`, feeding `s·x_i + t·r̃_i`
//! produces `s·k + t·w`; `s` and `t` fix the scalar part and the pure norm,
//! and an automorphism turns `t·w` onto the target's pure direction.
//!
//! The chain is evaluated exactly; only the final scaling and rotation
//! use floating point.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::sampling;
use crate::scalar::{Rational, Scalar, DEFAULT_TOLERANCE};
use crate::spin::{automorphism_mapping, ExactSpin, FloatSpin};

use super::{classify_image_with, ClassifyOptions, ImageClass};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreimageOptions {
    pub seed: u64,
    pub tolerance: f64,
    pub max_retries: usize,
    pub classify: ClassifyOptions,
}

impl Default for PreimageOptions {
    fn default() -> Self {
        PreimageOptions {
            seed: 0,
            tolerance: DEFAULT_TOLERANCE,
            max_retries: 64,
            classify: ClassifyOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreimageResult {
    pub assignment: Vec<FloatSpin>,
    pub value: FloatSpin,
    pub residual: f64,
    /// 1-based slot where the chain left the reals.
    pub slot: usize,
    pub attempts: usize,
    /// One line per failed attempt.
    pub trace: Vec<String>,
}

pub fn preimage_search(p: &Polynomial, target: &FloatSpin, options: &PreimageOptions) -> Result<PreimageResult> {
    let n = target.n();
    let report = classify_image_with(p, n, &options.classify)?;
    if report.class != ImageClass::Full {
        return Err(Error::NotFull(report.class));
    }
    if target.norm_sq().sqrt() <= options.tolerance {
        return Err(Error::InvalidInput("target must be nonzero".into()));
    }
    let real_witness = report.real_witness.expect("full image has a real witness");
    let base: Vec<ExactSpin> = real_witness
        .tuple
        .iter()
        .map(|&k| ExactSpin::basis(n, k))
        .collect::<Result<_>>()?;
    let m = base.len();

    let mut trace = Vec::new();
    for attempt in 0..options.max_retries {
        let mut rng = sampling::stream_rng(options.seed, attempt as u64);
        let generic: Vec<ExactSpin> = (0..m).map(|_| sampling::random_spin(&mut rng, n)).collect();
        match attempt_once(p, target, &base, &generic, options.tolerance)? {
            Ok((assignment, value, residual, slot)) => {
                return Ok(PreimageResult {
                    assignment,
                    value,
                    residual,
                    slot,
                    attempts: attempt + 1,
                    trace,
                });
            }
            Err(reason) => trace.push(format!("attempt {attempt}: {reason}")),
        }
    }
    Err(Error::SearchFailed { trace })
}

type Found = (Vec<FloatSpin>, FloatSpin, f64, usize);

/// Outer `Err` is a contract violation; inner `Err` is a degenerate draw.
fn attempt_once(
    p: &Polynomial,
    target: &FloatSpin,
    base: &[ExactSpin],
    generic: &[ExactSpin],
    tolerance: f64,
) -> Result<std::result::Result<Found, String>> {
    let m = base.len();
    let chain_input = |j: usize| -> Vec<ExactSpin> {
        generic[..j].iter().chain(&base[j..]).cloned().collect()
    };
    let is_real = |x: &ExactSpin| x.pure_part().iter().all(Zero::is_zero);

    // chain[j] is the value with the first j slots replaced
    let mut previous = p.evaluate(&chain_input(0))?;
    let mut split = None;
    for j in 0..m {
        let next = p.evaluate(&chain_input(j + 1))?;
        if !is_real(&next) {
            if is_real(&previous) && !previous.scalar().is_zero() {
                split = Some((j, previous.scalar().clone(), next));
            }
            break;
        }
        previous = next;
    }
    let Some((slot, real_value, mixed)) = split else {
        return Ok(Err("no slot where a nonzero real value turns non-real".into()));
    };

    let c: Rational = mixed.scalar() / &real_value;
    let mut inputs = chain_input(slot);
    let adjusted = generic[slot].sub(&base[slot].scale(&c))?;
    inputs[slot] = adjusted.clone();
    let pure_value = p.evaluate(&inputs)?;
    if !pure_value.scalar().is_zero() {
        return Err(Error::InvariantViolation(format!(
            "adjusted slot value {pure_value} is not pure"
        )));
    }

    let w_norm = pure_value.pure_norm_sq().to_f64().sqrt();
    let target_pure_norm = target.pure_norm_sq().sqrt();
    let scalar_coeff = target.scalar() / real_value.to_f64();
    let pure_coeff = target_pure_norm / w_norm;

    let mut float_inputs: Vec<FloatSpin> = inputs.iter().map(ExactSpin::to_f64).collect();
    float_inputs[slot] = base[slot]
        .to_f64()
        .scale(&scalar_coeff)
        .add(&adjusted.to_f64().scale(&pure_coeff))?;

    if target_pure_norm > tolerance {
        let scaled_w: Vec<f64> = pure_value
            .pure_part()
            .iter()
            .map(|c| c.to_f64() * pure_coeff)
            .collect();
        let phi = automorphism_mapping(&scaled_w, target.pure_part(), tolerance)?;
        float_inputs = float_inputs
            .iter()
            .map(|x| phi.apply(x))
            .collect::<Result<_>>()?;
    }

    let value = p.evaluate(&float_inputs)?;
    let residual = value.distance(target);
    if residual > tolerance {
        return Ok(Err(format!("slot {} residual {residual:e} above tolerance", slot + 1)));
    }
    Ok(Ok((float_inputs, value, residual, slot + 1)))
}
