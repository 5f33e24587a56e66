//! Gauss hypergeometric ₂F₁ on the non-positive real axis.

use num_complex::Complex;

use super::SpecfunError;
use crate::real::Real;

const MAX_TERMS: usize = 20_000;
/// Largest transformed argument for which the full accuracy contract holds.
const FULL_ACCURACY_LIMIT: f64 = 0.95;

/// Result of a ₂F₁ evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Hyp2f1<T> {
    pub value: Complex<T>,
    /// Estimated absolute error of `value`.
    pub error: T,
    /// Set when the Pfaff-transformed argument exceeded the full-accuracy range.
    pub reduced_accuracy: bool,
}

/// ₂F₁(a, b; c; z) for z ≤ 0.
///
/// Applies the Pfaff transformation
/// `₂F₁(a,b;c;z) = (1−z)^{−a} ₂F₁(a, c−b; c; z/(z−1))`, which maps (−∞, 0] onto
/// [0, 1), and sums the resulting power series directly.
pub fn hyp2f1<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: T,
    z: T,
) -> Result<Hyp2f1<T>, SpecfunError> {
    if c <= T::zero() && c == c.round() {
        return Err(SpecfunError::InvalidParameter(
            "c must not be a non-positive integer",
        ));
    }
    if !(z <= T::zero()) {
        return Err(SpecfunError::Domain("hyp2f1 requires z <= 0"));
    }
    if z == T::zero() {
        return Ok(Hyp2f1 {
            value: Complex::new(T::one(), T::zero()),
            error: T::zero(),
            reduced_accuracy: false,
        });
    }
    let w = z / (z - T::one());
    let b2 = Complex::new(c, T::zero()) - b;
    let cc = Complex::new(c, T::zero());
    let eps = T::epsilon();

    let mut term = Complex::new(T::one(), T::zero());
    let mut sum = term;
    let mut abs_sum = T::one();
    let mut converged = false;
    let mut small_run = 0;
    for n in 0..MAX_TERMS {
        let nf = T::count(n);
        let ratio = (a + nf) * (b2 + nf) / ((cc + nf) * (nf + T::one()));
        term = term * ratio * w;
        sum = sum + term;
        abs_sum = abs_sum + term.norm();
        if term.norm() <= eps * sum.norm() {
            small_run += 1;
            if small_run >= 3 {
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    if !converged {
        return Err(SpecfunError::NoConvergence("hyp2f1 transformed series"));
    }
    // (1 − z)^{−a} = exp(−a ln(1 − z))
    let log1mz = (T::one() - z).ln();
    let prefactor = (-a * log1mz).exp();
    let value = prefactor * sum;
    let error = prefactor.norm() * (abs_sum * eps * T::lit(4.0));
    Ok(Hyp2f1 {
        value,
        error,
        reduced_accuracy: w > T::lit(FULL_ACCURACY_LIMIT),
    })
}
