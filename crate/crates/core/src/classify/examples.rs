//! Products and compositions of associators with known images.

use crate::error::{Error, Result};
use crate::poly::{associator, Polynomial};

use super::{classify_image, ClassificationReport};

/// `assoc(x1, x2, x3) ∘ assoc(x4, x5, x6)`: a product of two pure values,
/// hence central.
pub fn central_polynomial() -> Polynomial {
    let left = associator();
    let right = associator()
        .rename(&[4, 5, 6])
        .expect("associator has three variables");
    left.mul(&right)
}

/// `assoc(assoc(x1,x2,x3) ∘ assoc(x4,x5,x6), x7, x8)`: the first argument is
/// always real, so the associator vanishes.
pub fn pi_polynomial() -> Polynomial {
    let images = [central_polynomial(), Polynomial::var(7), Polynomial::var(8)];
    associator()
        .evaluate(&images)
        .expect("polynomial substitution cannot fail")
}

pub fn central_example(n: usize) -> Result<(Polynomial, ClassificationReport)> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("central example needs n >= 3, got {n}")));
    }
    let p = central_polynomial();
    let report = classify_image(&p, n)?;
    Ok((p, report))
}

pub fn pi_example(n: usize) -> Result<(Polynomial, ClassificationReport)> {
    let p = pi_polynomial();
    let report = classify_image(&p, n)?;
    Ok((p, report))
}
