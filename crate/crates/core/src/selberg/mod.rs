//! Spectral quantities from the Selberg trace formula: heat trace, heat
//! coefficients, spectral zeta function and determinant, the `R_N` diagnostic,
//! completeness certificates and the Riesz-mean test.

mod heat;
mod riesz;
mod zeta;

pub use heat::{
    completeness_certificate, geodesic_heat_term, heat_coefficients, heat_trace_geometric,
    identity_heat_term, nu, r_n_curve, Certificate, HeatTrace, RnCurve,
};
pub use riesz::{riesz_test, weyl_check, WeylFit};
pub use zeta::{log_det, zeta, Budget, DetEvaluation, ZetaEvaluation, ZetaOptions, ZetaParameters};

use serde::{Deserialize, Serialize};

use crate::geometry::LengthSpectrum;
use crate::specfun::SpecfunError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SelbergError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error("pole of the continuation at s = {0}")]
    Pole(f64),
    #[error("certificate parameters violate 0 < t < T < sqrt(l0^2 + 1) - 1")]
    CertificateParameters,
    #[error("no certificate: F_T(t) - R_N(t) = {0:e} is not positive")]
    NoCertificate(f64),
}

/// Area, eigenvalues and primitive lengths of a closed hyperbolic surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralInput {
    pub vol: f64,
    /// Distinct eigenvalues `(λ, multiplicity)`, ascending, starting with `(0, 1)`.
    pub eigenvalues: Vec<(f64, usize)>,
    /// Absolute uncertainty of each listed eigenvalue (same order).
    pub uncertainties: Vec<f64>,
    pub lengths: LengthSpectrum,
}

impl SpectralInput {
    pub fn new(
        vol: f64,
        eigenvalues: Vec<(f64, usize)>,
        lengths: LengthSpectrum,
    ) -> Result<Self, SelbergError> {
        let n = eigenvalues.len();
        let s = Self {
            vol,
            eigenvalues,
            uncertainties: vec![0.0; n],
            lengths,
        };
        s.validate()?;
        Ok(s)
    }

    /// Genus-g surface: `Vol = 4π(g − 1)`.
    pub fn for_genus(
        genus: usize,
        eigenvalues: Vec<(f64, usize)>,
        lengths: LengthSpectrum,
    ) -> Result<Self, SelbergError> {
        if genus < 2 {
            return Err(SelbergError::InvalidInput("genus must be at least 2".into()));
        }
        Self::new(4.0 * std::f64::consts::PI * (genus as f64 - 1.0), eigenvalues, lengths)
    }

    pub fn with_uncertainties(mut self, u: Vec<f64>) -> Result<Self, SelbergError> {
        if u.len() != self.eigenvalues.len() || u.iter().any(|x| !(*x >= 0.0)) {
            return Err(SelbergError::InvalidInput("one non-negative uncertainty per eigenvalue".into()));
        }
        self.uncertainties = u;
        Ok(self)
    }

    fn validate(&self) -> Result<(), SelbergError> {
        if !(self.vol > 0.0 && self.vol.is_finite()) {
            return Err(SelbergError::InvalidInput("volume must be positive".into()));
        }
        match self.eigenvalues.first() {
            Some(&(l, m)) if l == 0.0 && m == 1 => {}
            _ => return Err(SelbergError::InvalidInput("eigenvalue list must start with (0, 1)".into())),
        }
        for w in self.eigenvalues.windows(2) {
            if !(w[1].0 > w[0].0) || w[1].1 == 0 {
                return Err(SelbergError::InvalidInput(
                    "eigenvalues must be strictly ascending with positive multiplicities".into(),
                ));
            }
        }
        if self.lengths.entries.is_empty() {
            return Err(SelbergError::InvalidInput("length spectrum is empty".into()));
        }
        Ok(())
    }

    /// Systole `ℓ₀`.
    pub fn systole(&self) -> f64 {
        self.lengths.entries[0].0
    }

    /// Eigenvalues repeated by multiplicity, including `λ₀ = 0`.
    pub fn expanded(&self) -> Vec<f64> {
        expand(&self.eigenvalues)
    }

    /// The first `n + 1` eigenvalues `λ₀ … λ_n` counted with multiplicity.
    pub fn truncated(&self, n: usize) -> Result<Vec<f64>, SelbergError> {
        let all = self.expanded();
        if all.len() < n + 1 {
            return Err(SelbergError::InvalidInput(format!(
                "{} eigenvalues requested, {} available",
                n + 1,
                all.len()
            )));
        }
        Ok(all[..=n].to_vec())
    }

    /// Largest listed eigenvalue.
    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.last().map(|e| e.0).unwrap_or(0.0)
    }
}

/// Repeat each eigenvalue by its multiplicity.
pub fn expand(list: &[(f64, usize)]) -> Vec<f64> {
    list.iter()
        .flat_map(|&(l, m)| std::iter::repeat(l).take(m))
        .collect()
}

/// Pairwise summation with a fixed split, so the result does not depend on
/// the number of threads.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    const LEAF: usize = 64;
    if v.len() <= LEAF {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    let (x, y) = rayon::join(|| pairwise_sum(a), || pairwise_sum(b));
    x + y
}

/// Map `f` over `v` in parallel and sum pairwise.
pub(crate) fn par_sum<T: Sync, F: Fn(&T) -> f64 + Sync + Send>(v: &[T], f: F) -> f64 {
    use rayon::prelude::*;
    let terms: Vec<f64> = v.par_iter().map(f).collect();
    pairwise_sum(&terms)
}

/// Weyl density `Vol/(4π)` of the counting function.
pub(crate) fn weyl_density(vol: f64) -> f64 {
    vol / (4.0 * std::f64::consts::PI)
}

/// Serialized parameters common to the JSON records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    pub vol: f64,
    pub eigenvalues: usize,
    pub lambda_max: f64,
    pub l_max: f64,
    pub systole: f64,
}

impl SpectralInput {
    pub fn summary(&self) -> InputSummary {
        InputSummary {
            vol: self.vol,
            eigenvalues: self.expanded().len(),
            lambda_max: self.lambda_max(),
            l_max: self.lengths.l_max,
            systole: self.systole(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lengths() -> LengthSpectrum {
        LengthSpectrum {
            entries: vec![(3.0, 2)],
            l_max: 4.0,
            tail_certified: false,
        }
    }

    #[test]
    fn validation() {
        assert!(SpectralInput::new(1.0, vec![(0.0, 1), (2.0, 3)], lengths()).is_ok());
        assert!(SpectralInput::new(1.0, vec![(2.0, 3)], lengths()).is_err());
        assert!(SpectralInput::new(1.0, vec![(0.0, 1), (2.0, 3), (1.0, 1)], lengths()).is_err());
        assert!(SpectralInput::new(-1.0, vec![(0.0, 1)], lengths()).is_err());
        let s = SpectralInput::new(1.0, vec![(0.0, 1), (2.0, 3)], lengths()).unwrap();
        assert_eq!(s.expanded(), vec![0.0, 2.0, 2.0, 2.0]);
        assert_eq!(s.truncated(2).unwrap(), vec![0.0, 2.0, 2.0]);
        assert!(s.truncated(4).is_err());
    }

    #[test]
    fn pairwise_sum_is_exact_on_integers() {
        let v: Vec<f64> = (1..=10_000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 50_005_000.0);
    }
}
