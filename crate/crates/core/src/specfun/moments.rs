//! sech²-weighted integrals from the identity term of the heat trace.

use super::quadrature::{Estimate, QuadratureSpec};
use super::SpecfunError;
use crate::real::Real;

/// π sech²(πr), evaluated without overflow for large r.
pub fn pi_sech2<T: Real>(r: T) -> T {
    let e = (-T::lit(2.0) * T::PI() * r.abs()).exp();
    let d = T::one() + e;
    T::PI() * T::lit(4.0) * e / (d * d)
}

/// ∫_R^∞ 4π (r + ½)^{2k} e^{−2πr} dr, an upper bound for the truncated tail
/// of the k-th moment (uses sech²(πr) ≤ 4e^{−2πr} and r² + ¼ ≤ (r + ½)²).
pub fn moment_tail_bound<T: Real>(k: usize, r_max: T) -> T {
    let two_pi = T::lit(2.0) * T::PI();
    let p = 2 * k;
    let base = r_max + T::lit(0.5);
    // ∫_R^∞ x^p e^{−ax} dx with x shifted: Σ_j p!/(p−j)! base^{p−j}/a^{j+1} · e^{−aR}
    let mut acc = T::zero();
    let mut falling = T::one();
    for j in 0..=p {
        acc = acc + falling * base.powi((p - j) as i32) / two_pi.powi(j as i32 + 1);
        falling = falling * T::count(p - j);
    }
    T::lit(4.0) * T::PI() * acc * (-two_pi * r_max).exp()
}

fn truncated<T: Real, F: Fn(T) -> T>(
    f: F,
    tail: T,
    split: T,
    q: &QuadratureSpec<T>,
) -> Result<Estimate<T>, SpecfunError> {
    q.validate()?;
    if tail >= q.abs_tol {
        return Err(SpecfunError::ToleranceNotMet {
            achieved: tail.to_f64().unwrap_or(f64::NAN),
            requested: q.abs_tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    let inner = QuadratureSpec {
        abs_tol: q.abs_tol - tail,
        ..*q
    };
    // splitting keeps narrow peaks at r = 0 visible to the adaptive rule
    let est = if split > T::zero() && split < q.r_max {
        let half = inner.scaled(T::lit(0.5));
        let a = half.integrate(&f, T::zero(), split)?;
        let b = half.integrate(&f, split, q.r_max)?;
        Estimate {
            value: a.value + b.value,
            error: a.error + b.error,
        }
    } else {
        inner.integrate(f, T::zero(), q.r_max)?
    };
    let error = est.error + tail;
    if error > q.abs_tol {
        return Err(SpecfunError::ToleranceNotMet {
            achieved: error.to_f64().unwrap_or(f64::NAN),
            requested: q.abs_tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(Estimate {
        value: est.value,
        error,
    })
}

/// I(t) = ∫₀^∞ π e^{−r²t} sech²(πr) dr.
pub fn identity_term_integral<T: Real>(
    t: T,
    q: &QuadratureSpec<T>,
) -> Result<Estimate<T>, SpecfunError> {
    if !(t > T::zero()) {
        return Err(SpecfunError::Domain("identity_term_integral requires t > 0"));
    }
    truncated(
        |r| pi_sech2(r) * (-r * r * t).exp(),
        moment_tail_bound(0, q.r_max),
        T::lit(6.0) / t.sqrt(),
        q,
    )
}

/// m_k = ∫₀^∞ π (r² + ¼)^k sech²(πr) dr.
pub fn heat_moment<T: Real>(k: usize, q: &QuadratureSpec<T>) -> Result<Estimate<T>, SpecfunError> {
    let quarter = T::lit(0.25);
    truncated(
        |r| pi_sech2(r) * (r * r + quarter).powi(k as i32),
        moment_tail_bound(k, q.r_max),
        T::zero(),
        q,
    )
}
