//! Exact image classification of multilinear polynomials on `J_n`.
//!
//! Basic evaluations (every input a basis element) are either real or pure,
//! according to the parity of the number of pure inputs. Whether nonzero
//! real and nonzero pure basic evaluations exist decides the image:
//! `{0}`, the scalars, the pure space `V`, or all of `J_n`.

mod basis;
mod examples;
mod oracle;
mod preimage;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::spin::ExactSpin;

use basis::{BasisEvaluator, Support};

pub use examples::{central_example, central_polynomial, pi_example, pi_polynomial};
pub use oracle::{brute_force_sample, verify_classification, ConsistencyReport, SampleReport};
pub use preimage::{preimage_search, PreimageOptions, PreimageResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ImageClass {
    #[serde(rename = "zero")]
    Zero,
    #[serde(rename = "scalars")]
    Scalars,
    #[serde(rename = "pure")]
    PureSpace,
    #[serde(rename = "full")]
    Full,
}

impl ImageClass {
    pub fn from_support(real: bool, pure: bool) -> ImageClass {
        match (real, pure) {
            (false, false) => ImageClass::Zero,
            (true, false) => ImageClass::Scalars,
            (false, true) => ImageClass::PureSpace,
            (true, true) => ImageClass::Full,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ImageClass::Zero => "zero",
            ImageClass::Scalars => "scalars",
            ImageClass::PureSpace => "pure",
            ImageClass::Full => "full",
        }
    }

    pub fn allows_real(self) -> bool {
        matches!(self, ImageClass::Scalars | ImageClass::Full)
    }

    pub fn allows_pure(self) -> bool {
        matches!(self, ImageClass::PureSpace | ImageClass::Full)
    }
}

impl fmt::Display for ImageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    Real,
    Pure,
}

/// Real for an even number of pure (nonzero-index) inputs, pure for odd.
pub fn parity_predict(tuple: &[usize]) -> ValueKind {
    match parity_of(tuple) {
        Parity::Even => ValueKind::Real,
        Parity::Odd => ValueKind::Pure,
    }
}

fn parity_of(tuple: &[usize]) -> Parity {
    if tuple.iter().filter(|&&k| k != 0).count() % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasicEvalRecord {
    pub tuple: Vec<usize>,
    pub value: ExactSpin,
    pub parity: Parity,
}

impl BasicEvalRecord {
    /// Evaluates `p` exactly at `(e_{tuple[0]}, …)`.
    pub fn evaluate(p: &Polynomial, n: usize, tuple: Vec<usize>) -> Result<BasicEvalRecord> {
        let assignment = tuple
            .iter()
            .map(|&k| ExactSpin::basis(n, k))
            .collect::<Result<Vec<_>>>()?;
        let value = p.evaluate(&assignment)?;
        let parity = parity_of(&tuple);
        Ok(BasicEvalRecord { tuple, value, parity })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "tuple": self.tuple,
            "value": self.value.to_string(),
            "parity": self.parity,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub class: ImageClass,
    pub real_witness: Option<BasicEvalRecord>,
    pub pure_witness: Option<BasicEvalRecord>,
    /// Length of the lexicographic prefix of basis tuples needed to decide.
    pub tuples_examined: u64,
}

impl ClassificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "class": self.class,
            "real_witness": self.real_witness.as_ref().map(BasicEvalRecord::to_json),
            "pure_witness": self.pure_witness.as_ref().map(BasicEvalRecord::to_json),
            "tuples_examined": self.tuples_examined,
        })
    }
}

pub const DEFAULT_MAX_TUPLES: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub max_tuples: u64,
    pub parallel: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_tuples: DEFAULT_MAX_TUPLES,
            parallel: true,
        }
    }
}

pub fn classify_image(p: &Polynomial, n: usize) -> Result<ClassificationReport> {
    classify_image_with(p, n, &ClassifyOptions::default())
}

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Default, Clone, Copy)]
struct ChunkResult {
    first_real: Option<u64>,
    first_pure: Option<u64>,
}

/// Sweeps `n^m` basis tuples in lexicographic order, stopping once both a
/// nonzero real and a nonzero pure basic evaluation are found. Witnesses
/// are the least qualifying tuples, independent of scheduling.
pub fn classify_image_with(
    p: &Polynomial,
    n: usize,
    options: &ClassifyOptions,
) -> Result<ClassificationReport> {
    if !p.is_multilinear() {
        return Err(Error::NotMultilinear);
    }
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "spin factor dimension must be at least 2, got {n}"
        )));
    }
    let m = p.arity() as usize;
    let total = u32::try_from(m)
        .ok()
        .and_then(|m| (n as u64).checked_pow(m))
        .unwrap_or(u64::MAX);
    let limit = total.min(options.max_tuples);

    let scan: Box<dyn Fn(u64, u64) -> Result<ChunkResult> + Sync> =
        match BasisEvaluator::compile(p, n) {
            Some(eval) => Box::new(move |start, end| scan_fast(&eval, n, m, start, end)),
            None => Box::new(move |start, end| scan_exact(p, n, m, start, end)),
        };

    let wave = if options.parallel {
        rayon::current_num_threads().max(1) as u64 * 4
    } else {
        1
    };
    let mut found = ChunkResult::default();
    let mut start = 0;
    while start < limit && !(found.first_real.is_some() && found.first_pure.is_some()) {
        let chunks: Vec<(u64, u64)> = (0..wave)
            .map(|w| start + w * CHUNK)
            .take_while(|&s| s < limit)
            .map(|s| (s, (s + CHUNK).min(limit)))
            .collect();
        start = chunks.last().map_or(limit, |c| c.1);
        let results: Vec<ChunkResult> = if options.parallel {
            chunks
                .par_iter()
                .map(|&(s, e)| scan(s, e))
                .collect::<Result<_>>()?
        } else {
            chunks.iter().map(|&(s, e)| scan(s, e)).collect::<Result<_>>()?
        };
        for r in results {
            found.first_real = min_opt(found.first_real, r.first_real);
            found.first_pure = min_opt(found.first_pure, r.first_pure);
        }
    }

    let decided = found.first_real.is_some() && found.first_pure.is_some();
    if !decided && limit < total {
        return Err(Error::BoundExceeded(format!(
            "{total} basis tuples exceed the cap of {}",
            options.max_tuples
        )));
    }
    let tuples_examined = match (found.first_real, found.first_pure) {
        (Some(r), Some(q)) => r.max(q) + 1,
        _ => total,
    };
    let witness = |index: Option<u64>, kind: ValueKind| -> Result<Option<BasicEvalRecord>> {
        let Some(index) = index else { return Ok(None) };
        let record = BasicEvalRecord::evaluate(p, n, decode(index, n, m))?;
        let ok = match kind {
            ValueKind::Real => !num_traits::Zero::is_zero(record.value.scalar()),
            ValueKind::Pure => record.value.pure_part().iter().any(|c| !num_traits::Zero::is_zero(c)),
        };
        if !ok || parity_predict(&record.tuple) != kind {
            return Err(Error::InvariantViolation(format!(
                "witness {:?} re-evaluates to {}",
                record.tuple, record.value
            )));
        }
        Ok(Some(record))
    };
    let real_witness = witness(found.first_real, ValueKind::Real)?;
    let pure_witness = witness(found.first_pure, ValueKind::Pure)?;
    Ok(ClassificationReport {
        class: ImageClass::from_support(real_witness.is_some(), pure_witness.is_some()),
        real_witness,
        pure_witness,
        tuples_examined,
    })
}

fn min_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Tuple at lexicographic position `index`, first slot most significant.
fn decode(mut index: u64, n: usize, m: usize) -> Vec<usize> {
    let mut tuple = vec![0; m];
    for slot in tuple.iter_mut().rev() {
        *slot = (index % n as u64) as usize;
        index /= n as u64;
    }
    tuple
}

fn advance(tuple: &mut [u8], n: u8) {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return;
        }
        *slot = 0;
    }
}

fn parity_violation(tuple: &[usize], support: Support) -> Error {
    Error::InvariantViolation(format!(
        "basic evaluation at {tuple:?} has nonzero {} part against parity {:?}",
        if support.real { "real" } else { "pure" },
        parity_of(tuple)
    ))
}

fn record(result: &mut ChunkResult, index: u64, tuple: &[usize], support: Support) -> Result<()> {
    let odd = parity_of(tuple) == Parity::Odd;
    if (odd && support.real) || (!odd && support.pure) {
        return Err(parity_violation(tuple, support));
    }
    if support.real && result.first_real.is_none() {
        result.first_real = Some(index);
    }
    if support.pure && result.first_pure.is_none() {
        result.first_pure = Some(index);
    }
    Ok(())
}

fn scan_fast(eval: &BasisEvaluator, n: usize, m: usize, start: u64, end: u64) -> Result<ChunkResult> {
    let mut result = ChunkResult::default();
    let mut tuple: Vec<u8> = decode(start, n, m).into_iter().map(|k| k as u8).collect();
    let (mut acc, mut stack) = (vec![0i64; n], Vec::with_capacity(m));
    for index in start..end {
        let support = eval.support(&tuple, &mut acc, &mut stack);
        if support.real || support.pure {
            let wide: Vec<usize> = tuple.iter().map(|&k| usize::from(k)).collect();
            record(&mut result, index, &wide, support)?;
            if result.first_real.is_some() && result.first_pure.is_some() {
                break;
            }
        }
        advance(&mut tuple, n as u8);
    }
    Ok(result)
}

fn scan_exact(p: &Polynomial, n: usize, m: usize, start: u64, end: u64) -> Result<ChunkResult> {
    let mut result = ChunkResult::default();
    let basis = (0..n).map(|k| ExactSpin::basis(n, k)).collect::<Result<Vec<_>>>()?;
    for index in start..end {
        let tuple = decode(index, n, m);
        let assignment: Vec<ExactSpin> = tuple.iter().map(|&k| basis[k].clone()).collect();
        let value = p.evaluate(&assignment)?;
        let support = Support {
            real: !num_traits::Zero::is_zero(value.scalar()),
            pure: value.pure_part().iter().any(|c| !num_traits::Zero::is_zero(c)),
        };
        record(&mut result, index, &tuple, support)?;
        if result.first_real.is_some() && result.first_pure.is_some() {
            break;
        }
    }
    Ok(result)
}
