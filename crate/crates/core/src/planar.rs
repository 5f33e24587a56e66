//! Stabilized method of particular solutions for Dirichlet eigenvalues of
//! planar domains with a plane-wave basis, and the Fox–Henrici–Moler bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gsvd::{self, GsvdError, Matrix};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlanarError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Gsvd(#[from] GsvdError),
}

/// Built-in domains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PlanarDomain {
    Disk { radius: f64 },
    /// `x²/a² + y²/b² < 1`.
    Ellipse { a: f64, b: f64 },
}

impl PlanarDomain {
    pub fn unit_disk() -> Self {
        PlanarDomain::Disk { radius: 1.0 }
    }

    /// `x²/4 + y² < 1`.
    pub fn ellipse_2_1() -> Self {
        PlanarDomain::Ellipse { a: 2.0, b: 1.0 }
    }

    fn semi_axes(&self) -> (f64, f64) {
        match *self {
            PlanarDomain::Disk { radius } => (radius, radius),
            PlanarDomain::Ellipse { a, b } => (a, b),
        }
    }

    pub fn validate(&self) -> Result<(), PlanarError> {
        let (a, b) = self.semi_axes();
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(PlanarError::InvalidParameter("domain size must be positive"));
        }
        Ok(())
    }

    pub fn area(&self) -> f64 {
        let (a, b) = self.semi_axes();
        std::f64::consts::PI * a * b
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (a, b) = self.semi_axes();
        (x / a).powi(2) + (y / b).powi(2) < 1.0
    }

    /// Implicit boundary equation `x²/a² + y²/b² − 1`.
    pub fn implicit(&self, x: f64, y: f64) -> f64 {
        let (a, b) = self.semi_axes();
        (x / a).powi(2) + (y / b).powi(2) - 1.0
    }

    /// Boundary point at angle parameter θ and the speed `|γ′(θ)|`.
    pub fn boundary(&self, theta: f64) -> ((f64, f64), f64) {
        let (a, b) = self.semi_axes();
        let (s, c) = theta.sin_cos();
        ((a * c, b * s), (a * a * s * s + b * b * c * c).sqrt())
    }

    /// Domain scaled by `c` about the origin.
    pub fn scaled(&self, c: f64) -> Self {
        match *self {
            PlanarDomain::Disk { radius } => PlanarDomain::Disk { radius: c * radius },
            PlanarDomain::Ellipse { a, b } => PlanarDomain::Ellipse { a: c * a, b: c * b },
        }
    }

    /// `M` boundary points equally spaced in θ with arclength quadrature weights.
    pub fn boundary_points(&self, m: usize) -> Vec<((f64, f64), f64)> {
        let h = 2.0 * std::f64::consts::PI / m as f64;
        (0..m)
            .map(|i| {
                let (p, speed) = self.boundary((i as f64 + 0.5) * h);
                (p, speed * h)
            })
            .collect()
    }

    /// `q` uniform interior points by rejection sampling in the bounding box.
    pub fn interior_points(&self, q: usize, seed: u64) -> Vec<(f64, f64)> {
        let (a, b) = self.semi_axes();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(q);
        while out.len() < q {
            let x = a * (2.0 * rng.gen::<f64>() - 1.0);
            let y = b * (2.0 * rng.gen::<f64>() - 1.0);
            if self.contains(x, y) {
                out.push((x, y));
            }
        }
        out
    }
}

/// `cos(k_j·x), sin(k_j·x)` with `|k_j| = √λ`, directions `θ_j = θ₀ + jπ/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWaveBasis {
    pub wavenumber: f64,
    pub directions: Vec<(f64, f64)>,
}

pub fn plane_wave_basis(lambda: f64, n_dir: usize) -> Result<PlaneWaveBasis, PlanarError> {
    plane_wave_basis_rotated(lambda, n_dir, 0.0)
}

pub fn plane_wave_basis_rotated(
    lambda: f64,
    n_dir: usize,
    rotation: f64,
) -> Result<PlaneWaveBasis, PlanarError> {
    if !(lambda > 0.0) {
        return Err(PlanarError::InvalidParameter("lambda must be positive"));
    }
    if n_dir == 0 {
        return Err(PlanarError::InvalidParameter("need at least one direction"));
    }
    let directions = (0..n_dir)
        .map(|j| {
            let th = rotation + std::f64::consts::PI * j as f64 / n_dir as f64;
            (th.cos(), th.sin())
        })
        .collect();
    Ok(PlaneWaveBasis {
        wavenumber: lambda.sqrt(),
        directions,
    })
}

impl PlaneWaveBasis {
    pub fn len(&self) -> usize {
        2 * self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Values of all basis functions at `(x, y)`, ordered `cos₀, sin₀, cos₁, …`.
    pub fn eval_into(&self, x: f64, y: f64, out: &mut [f64]) {
        for (j, &(dx, dy)) in self.directions.iter().enumerate() {
            let (s, c) = (self.wavenumber * (dx * x + dy * y)).sin_cos();
            out[2 * j] = c;
            out[2 * j + 1] = s;
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Vec<f64> {
        let mut v = vec![0.0; self.len()];
        self.eval_into(x, y, &mut v);
        v
    }

    /// `Σ cⱼ φⱼ(x, y)`.
    pub fn combine(&self, coeffs: &[f64], x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for (j, &(dx, dy)) in self.directions.iter().enumerate() {
            let (s, c) = (self.wavenumber * (dx * x + dy * y)).sin_cos();
            acc += coeffs[2 * j] * c + coeffs[2 * j + 1] * s;
        }
        acc
    }
}

/// Discretization and search parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PlanarConfig {
    pub n_dir: usize,
    pub boundary_points: usize,
    pub interior_points: usize,
    pub seed: u64,
    /// Offset of the direction set.
    pub rotation: f64,
    pub m: usize,
    pub tau: f64,
    pub theta: f64,
    pub candidate_threshold: f64,
    pub tol_lambda: f64,
    /// Boundary oversampling factor of [`boundary_sup_estimate`].
    pub sup_sampling: usize,
}

impl Default for PlanarConfig {
    fn default() -> Self {
        Self {
            n_dir: 24,
            boundary_points: 144,
            interior_points: 192,
            seed: 7,
            rotation: 0.0,
            m: 4,
            tau: 1e-14,
            theta: 1e-4,
            candidate_threshold: 0.2,
            tol_lambda: 1e-12,
            sup_sampling: 10,
        }
    }
}

impl PlanarConfig {
    fn validate(&self) -> Result<(), PlanarError> {
        if self.n_dir == 0 || self.boundary_points == 0 || self.interior_points == 0 {
            return Err(PlanarError::InvalidParameter("point and direction counts must be positive"));
        }
        if self.m == 0 || self.sup_sampling == 0 {
            return Err(PlanarError::InvalidParameter("m and sup_sampling must be positive"));
        }
        Ok(())
    }
}

/// Boundary matrix `A` (rows scaled by √arclength weight) and interior matrix
/// `B` (rows scaled by `√(|Ω|/Q)`), so that `‖Av‖`, `‖Bv‖` approximate
/// `L²(∂Ω)` and `L²(Ω)` norms.
pub fn planar_system(
    domain: &PlanarDomain,
    lambda: f64,
    cfg: &PlanarConfig,
) -> Result<(Matrix, Matrix, PlaneWaveBasis), PlanarError> {
    domain.validate()?;
    cfg.validate()?;
    let basis = plane_wave_basis_rotated(lambda, cfg.n_dir, cfg.rotation)?;
    let bpts = domain.boundary_points(cfg.boundary_points);
    let ipts = domain.interior_points(cfg.interior_points, cfg.seed);
    let n = basis.len();
    let mut row = vec![0.0; n];
    let mut a = Matrix::zeros(bpts.len(), n);
    for (i, &((x, y), w)) in bpts.iter().enumerate() {
        basis.eval_into(x, y, &mut row);
        let sw = w.sqrt();
        for j in 0..n {
            a[(i, j)] = sw * row[j];
        }
    }
    let wi = (domain.area() / ipts.len() as f64).sqrt();
    let mut b = Matrix::zeros(ipts.len(), n);
    for (i, &(x, y)) in ipts.iter().enumerate() {
        basis.eval_into(x, y, &mut row);
        for j in 0..n {
            b[(i, j)] = wi * row[j];
        }
    }
    Ok((a, b, basis))
}

/// Smallest generalized singular values of `(A, B)` at λ.
pub fn planar_sigma(domain: &PlanarDomain, lambda: f64, cfg: &PlanarConfig) -> Result<Vec<f64>, PlanarError> {
    let (a, b, _) = planar_system(domain, lambda, cfg)?;
    Ok(gsvd::smallest_generalized_values(a.as_ref(), b.as_ref(), cfg.m, cfg.tau)?)
}

/// Relative Fox–Henrici–Moler half-width `(√2ε + ε²)/(1 − ε²)`.
pub fn fhm_bound(lambda: f64, epsilon: f64) -> Result<f64, PlanarError> {
    if !(lambda > 0.0) {
        return Err(PlanarError::InvalidParameter("lambda must be positive"));
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(PlanarError::InvalidParameter("epsilon must lie in [0, 1)"));
    }
    Ok((std::f64::consts::SQRT_2 * epsilon + epsilon * epsilon) / (1.0 - epsilon * epsilon))
}

/// Estimate of `ε = √|Ω|·‖u|∂Ω‖_∞` for `u` normalized in `L²(Ω)` (NON-RIGOROUS).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupEstimate {
    pub epsilon: f64,
    /// Sampled boundary supremum of the normalized function.
    pub boundary_sup: f64,
    /// Safety margin added from the largest jump between neighbouring samples.
    pub margin: f64,
    /// Monte-Carlo `L²(Ω)` norm before normalization and its standard error.
    pub l2_norm: f64,
    pub l2_std_error: f64,
}

/// Sup of `Σ cⱼφⱼ` over `sampling × M` boundary points, normalized by a
/// Monte-Carlo `L²(Ω)` norm on the configured interior points.
pub fn boundary_sup_estimate(
    domain: &PlanarDomain,
    basis: &PlaneWaveBasis,
    coeffs: &[f64],
    cfg: &PlanarConfig,
) -> Result<SupEstimate, PlanarError> {
    cfg.validate()?;
    if coeffs.len() != basis.len() {
        return Err(PlanarError::InvalidParameter("coefficient length mismatch"));
    }
    let ipts = domain.interior_points(cfg.interior_points, cfg.seed);
    let q = ipts.len() as f64;
    let sq: Vec<f64> = ipts.iter().map(|&(x, y)| basis.combine(coeffs, x, y).powi(2)).collect();
    let mean = sq.iter().sum::<f64>() / q;
    let var = sq.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (q - 1.0).max(1.0);
    let area = domain.area();
    let l2 = (area * mean).sqrt();
    // standard error of the squared norm, propagated to the norm
    let l2_std_error = if l2 > 0.0 { 0.5 * area * (var / q).sqrt() / l2 } else { 0.0 };
    if !(l2 > 0.0) {
        return Err(PlanarError::InvalidParameter("function vanishes on the interior sample"));
    }
    let mpts = cfg.boundary_points * cfg.sup_sampling;
    let vals: Vec<f64> = domain
        .boundary_points(mpts)
        .iter()
        .map(|&((x, y), _)| basis.combine(coeffs, x, y) / l2)
        .collect();
    let sup = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let margin = 0.5
        * (0..vals.len())
            .map(|i| (vals[(i + 1) % vals.len()] - vals[i]).abs())
            .fold(0.0f64, f64::max);
    Ok(SupEstimate {
        epsilon: area.sqrt() * (sup + margin),
        boundary_sup: sup,
        margin,
        l2_norm: l2,
        l2_std_error,
    })
}

/// A planar eigenvalue with its FHM interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarRecord {
    pub lambda: f64,
    pub multiplicity: usize,
    pub sigma_min: f64,
    pub epsilon: f64,
    /// Absolute FHM half-width, infinite when ε ≥ 1.
    pub half_width: f64,
    /// `true` when the relative bound exceeds 1.
    pub vacuous: bool,
}

/// Scan, refine and certify eigenvalues in `[lo, hi]`.
pub fn planar_find_eigenvalues(
    domain: &PlanarDomain,
    range: (f64, f64),
    step: f64,
    cfg: &PlanarConfig,
) -> Result<Vec<PlanarRecord>, PlanarError> {
    let (lo, hi) = range;
    if !(lo > 0.0) {
        return Err(PlanarError::InvalidParameter("range must lie in λ > 0"));
    }
    let pts = gsvd::grid(lo, hi, step)?;
    let curve = gsvd::scan_points(&pts, |l| planar_sigma(domain, l, cfg))?;
    let s = &curve.samples;
    let mut brackets = Vec::new();
    for i in 0..cfg.m.min(2) {
        for j in gsvd::local_minima(&curve, i, cfg.candidate_threshold) {
            brackets.push((i, (s[j - 1].0, s[j].0, s[j + 1].0)));
        }
    }
    let refined: Vec<(f64, f64)> = brackets
        .par_iter()
        .map(|&(i, br)| {
            gsvd::refine_minimum(
                br,
                |l| -> Result<f64, PlanarError> {
                    Ok(planar_sigma(domain, l, cfg)?.get(i).copied().unwrap_or(f64::INFINITY))
                },
                cfg.tol_lambda,
            )
        })
        .collect::<Result<_, _>>()?;
    let mut lambdas: Vec<f64> = refined
        .into_iter()
        .filter(|&(_, v)| v < cfg.theta)
        .map(|x| x.0)
        .collect();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup_by(|a, b| (*a - *b).abs() < 1e-6 * (1.0 + b.abs()));
    lambdas
        .par_iter()
        .map(|&l| {
            let (a, b, basis) = planar_system(domain, l, cfg)?;
            let g = gsvd::smallest_generalized_singulars(a.as_ref(), b.as_ref(), cfg.m, cfg.tau)?;
            let est = boundary_sup_estimate(domain, &basis, &g.vectors[0], cfg)?;
            let (half_width, vacuous) = match fhm_bound(l, est.epsilon) {
                Ok(rel) => (rel * l, rel > 1.0),
                Err(_) => (f64::INFINITY, true),
            };
            Ok(PlanarRecord {
                lambda: l,
                multiplicity: gsvd::multiplicity_estimate(&g.sigma, cfg.theta).max(1),
                sigma_min: g.sigma[0],
                epsilon: est.epsilon,
                half_width,
                vacuous,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_direction_basis() {
        let b = plane_wave_basis(4.0, 1).unwrap();
        let v = b.eval(0.3, 0.7);
        assert!((v[0] - 0.6f64.cos()).abs() < 1e-15);
        assert!((v[1] - 0.6f64.sin()).abs() < 1e-15);
        let v0 = b.eval(0.0, 0.0);
        assert_eq!((v0[0], v0[1]), (1.0, 0.0));
    }

    #[test]
    fn fhm_formula() {
        assert_eq!(fhm_bound(1.0, 0.0).unwrap(), 0.0);
        assert!((fhm_bound(1.0, 0.1).unwrap() - 0.152_950_864_9).abs() < 1e-9);
        assert!((fhm_bound(1.0, 0.5).unwrap() - 1.276_142_374_9).abs() < 1e-9);
        assert!(fhm_bound(1.0, 1.0).is_err());
        assert!(fhm_bound(0.0, 0.1).is_err());
    }

    #[test]
    fn boundary_closes_and_lies_on_curve() {
        let d = PlanarDomain::ellipse_2_1();
        let (p0, _) = d.boundary(0.0);
        let (p1, _) = d.boundary(2.0 * std::f64::consts::PI);
        assert!((p0.0 - p1.0).abs() < 1e-12 && (p0.1 - p1.1).abs() < 1e-12);
        for ((x, y), _) in d.boundary_points(50) {
            assert!(d.implicit(x, y).abs() < 1e-10);
        }
        let perimeter: f64 = d.boundary_points(2000).iter().map(|p| p.1).sum();
        assert!((perimeter - 9.688_448_220_547_675).abs() < 1e-9);
    }

    #[test]
    fn interior_points_are_reproducible() {
        let d = PlanarDomain::unit_disk();
        let a = d.interior_points(100, 3);
        assert_eq!(a, d.interior_points(100, 3));
        assert!(a.iter().all(|&(x, y)| d.contains(x, y)));
        assert_ne!(a, d.interior_points(100, 4));
    }
}
