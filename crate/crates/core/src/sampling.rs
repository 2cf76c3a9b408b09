//! Seeded generators for random algebra elements.
//!
//! Coordinates are integers in `[−9, 9]` divided by a denominator in `1..=4`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::composition::{AlgebraLevel, CDNumber};
use crate::hermitian::Herm2;
use crate::scalar::{rational, Rational};
use crate::spin::ExactSpin;

pub const COORD_BOUND: i64 = 9;
pub const MAX_DENOMINATOR: i64 = 4;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for the `stream`-th trial of a seeded run.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let numer = rng.gen_range(-COORD_BOUND..=COORD_BOUND);
    let denom = rng.gen_range(1..=MAX_DENOMINATOR);
    rational(numer, denom)
}

pub fn random_spin<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ExactSpin {
    let a = random_rational(rng);
    let v = (1..n).map(|_| random_rational(rng)).collect();
    ExactSpin::new(a, v).expect("n >= 2")
}

pub fn random_cd<R: Rng + ?Sized>(rng: &mut R, level: AlgebraLevel) -> CDNumber {
    let coords = (0..level.dimension()).map(|_| random_rational(rng)).collect();
    CDNumber::new(level, coords).expect("length matches level")
}

pub fn random_herm2<R: Rng + ?Sized>(rng: &mut R, level: AlgebraLevel) -> Herm2 {
    Herm2::new(random_rational(rng), random_rational(rng), random_cd(rng, level))
}

pub fn random_float_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-3.0..3.0)).collect()
}
