//! Method of particular solutions on a glued surface: collocation matrices,
//! σ-curves, eigenvalue search, jump defects and inclusion intervals.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cylinder_modes::{solve_radial, Angular, ModeError, ModeIndex, Parity, RadialSolution};
use crate::geometry::{BoundaryPoint, CollocationSet, SurfaceDecomposition};
use crate::gsvd::{self, GsvdError, Matrix};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MpsError {
    #[error("radial solve failed at lambda = {lambda}: {source}")]
    Radial { lambda: f64, source: ModeError },
    #[error(transparent)]
    Gsvd(#[from] GsvdError),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("eigenvalue file: {0}")]
    Io(String),
}

/// Modes `k ≤ N` on every piece.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSpec {
    pub n: usize,
    pub modes: Vec<ModeIndex>,
    pub pieces: usize,
}

impl BasisSpec {
    pub fn new(n: usize, pieces: usize) -> Self {
        Self {
            n,
            modes: ModeIndex::all_up_to(n),
            pieces,
        }
    }

    pub fn per_piece(&self) -> usize {
        self.modes.len()
    }

    /// `2(2N+1)` per piece.
    pub fn dimension(&self) -> usize {
        self.per_piece() * self.pieces
    }
}

/// Radial solutions of one piece indexed by `(k, parity)`.
struct PieceModes {
    ell: f64,
    radial: Vec<[RadialSolution; 2]>,
}

fn piece_modes(dec: &SurfaceDecomposition, n: usize, lambda: f64) -> Result<Vec<PieceModes>, MpsError> {
    dec.pieces
        .iter()
        .map(|p| {
            let radial = (0..=n)
                .map(|k| {
                    let solve = |par| {
                        solve_radial(
                            p.core_length,
                            ModeIndex::new(k, par, Angular::Cos).expect("cos is always valid"),
                            lambda,
                            p.rho_max,
                        )
                        .map_err(|source| MpsError::Radial { lambda, source })
                    };
                    Ok([solve(Parity::Even)?, solve(Parity::Odd)?])
                })
                .collect::<Result<Vec<_>, MpsError>>()?;
            Ok(PieceModes {
                ell: p.core_length,
                radial,
            })
        })
        .collect()
}

/// Values and outward normal derivatives of all modes of one piece at one point.
fn mode_row(
    modes: &PieceModes,
    basis: &BasisSpec,
    bp: &BoundaryPoint,
    values: &mut [f64],
    normals: &mut [f64],
) -> Result<(), MpsError> {
    let (rho, t) = (bp.fermi.rho, bp.fermi.t);
    let (nr, nt) = bp.normal;
    let mut radial = Vec::with_capacity(modes.radial.len());
    for pair in &modes.radial {
        let e = pair[0].radial(rho).map_err(|source| MpsError::Radial {
            lambda: pair[0].lambda(),
            source,
        })?;
        let o = pair[1].radial(rho).map_err(|source| MpsError::Radial {
            lambda: pair[1].lambda(),
            source,
        })?;
        radial.push([e, o]);
    }
    for (j, m) in basis.modes.iter().enumerate() {
        let k = m.k();
        let omega = 2.0 * std::f64::consts::PI * k as f64 / modes.ell;
        let (s, c) = (omega * t).sin_cos();
        let (trig, dtrig) = match m.angular() {
            Angular::Cos => (c, -omega * s),
            Angular::Sin => (s, omega * c),
        };
        let (phi, dphi) = radial[k][match m.parity() {
            Parity::Even => 0,
            Parity::Odd => 1,
        }];
        values[j] = phi * trig;
        normals[j] = nr * dphi * trig + nt * phi * dtrig;
    }
    Ok(())
}

/// Unscaled blocks `A, Ã, B, B̃` (rows = collocation points).
struct Blocks {
    a: Matrix,
    at: Matrix,
    b: Matrix,
    bt: Matrix,
}

fn blocks(
    dec: &SurfaceDecomposition,
    basis: &BasisSpec,
    coll: &CollocationSet,
    lambda: f64,
) -> Result<Blocks, MpsError> {
    if basis.pieces != dec.pieces.len() {
        return Err(MpsError::InvalidParameter("basis piece count mismatch".into()));
    }
    let modes = piece_modes(dec, basis.n, lambda)?;
    let npts = coll.points.len();
    let ncols = basis.dimension();
    let per = basis.per_piece();
    let mut out = Blocks {
        a: Matrix::zeros(npts, ncols),
        at: Matrix::zeros(npts, ncols),
        b: Matrix::zeros(npts, ncols),
        bt: Matrix::zeros(npts, ncols),
    };
    let mut vals = vec![0.0; per];
    let mut norms = vec![0.0; per];
    for (i, p) in coll.points.iter().enumerate() {
        mode_row(&modes[p.plus_piece], basis, &p.plus, &mut vals, &mut norms)?;
        let off = p.plus_piece * per;
        for j in 0..per {
            out.a[(i, off + j)] = vals[j];
            out.b[(i, off + j)] = norms[j];
        }
        mode_row(&modes[p.minus_piece], basis, &p.minus, &mut vals, &mut norms)?;
        let off = p.minus_piece * per;
        for j in 0..per {
            out.at[(i, off + j)] = vals[j];
            out.bt[(i, off + j)] = norms[j];
        }
    }
    Ok(out)
}

/// `Q_λ = (A − Ã) ⊕ (B + B̃)` and `R_λ = A ⊕ Ã ⊕ B ⊕ B̃`, rows scaled by the
/// square root of the arclength weight and normal rows additionally by `1/√(1+λ)`.
pub fn build_system(
    dec: &SurfaceDecomposition,
    basis: &BasisSpec,
    coll: &CollocationSet,
    lambda: f64,
) -> Result<(Matrix, Matrix), MpsError> {
    let bl = blocks(dec, basis, coll, lambda)?;
    let n = coll.points.len();
    let ncols = basis.dimension();
    let dscale = 1.0 / (1.0 + lambda.abs()).sqrt();
    let w: Vec<f64> = coll.points.iter().map(|p| p.weight.sqrt()).collect();
    let q = Matrix::from_fn(2 * n, ncols, |i, j| {
        if i < n {
            w[i] * (bl.a[(i, j)] - bl.at[(i, j)])
        } else {
            let i = i - n;
            w[i] * dscale * (bl.b[(i, j)] + bl.bt[(i, j)])
        }
    });
    let r = Matrix::from_fn(4 * n, ncols, |i, j| {
        let (blk, ii) = (i / n, i % n);
        match blk {
            0 => w[ii] * bl.a[(ii, j)],
            1 => w[ii] * bl.at[(ii, j)],
            2 => w[ii] * dscale * bl.b[(ii, j)],
            _ => w[ii] * dscale * bl.bt[(ii, j)],
        }
    });
    Ok((q, r))
}

/// Search configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SearchOptions {
    /// Number of smallest σ's tracked.
    pub m: usize,
    /// Relative truncation of `R`.
    pub tau: f64,
    /// σ below which a refined minimum counts as an eigenvalue and a σ counts
    /// towards the multiplicity.
    pub theta: f64,
    /// Scan minima above this are not refined.
    pub candidate_threshold: f64,
    /// Golden-section bracket width.
    pub tol_lambda: f64,
    /// Sobolev constant of the inclusion theorem (non-rigorous default 1).
    pub sobolev_c: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            m: gsvd::DEFAULT_M,
            tau: gsvd::DEFAULT_TAU,
            theta: 1e-3,
            candidate_threshold: 0.1,
            tol_lambda: 1e-11,
            sobolev_c: 1.0,
        }
    }
}

/// Default scan step: 0.05 up to λ = 50, then `0.05·√(50/λ)`.
pub fn default_step(lambda: f64) -> f64 {
    if lambda <= 50.0 {
        0.05
    } else {
        0.05 * (50.0 / lambda).sqrt()
    }
}

/// Default collocation density: 4 points per wavelength at `lambda`, and at
/// least `oversample × columns` points in total.
pub fn default_density(dec: &SurfaceDecomposition, basis: &BasisSpec, lambda: f64, oversample: f64) -> f64 {
    let wave = 4.0 * lambda.max(0.0).sqrt() / (2.0 * std::f64::consts::PI);
    let rows = oversample * basis.dimension() as f64 / dec.interface_length();
    wave.max(rows)
}

/// One computed eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRecord {
    pub lambda: f64,
    pub multiplicity: usize,
    pub sigma_min: f64,
    pub half_width: f64,
    #[serde(rename = "basis_N")]
    pub basis_n: usize,
    #[serde(skip)]
    pub density: f64,
    #[serde(skip)]
    pub epsilon: f64,
    #[serde(skip)]
    pub eta: f64,
    #[serde(skip)]
    pub sobolev_c: f64,
}

/// `σ_1 … σ_m` at λ.
pub fn sigma(
    dec: &SurfaceDecomposition,
    basis: &BasisSpec,
    coll: &CollocationSet,
    lambda: f64,
    opts: &SearchOptions,
) -> Result<Vec<f64>, MpsError> {
    let (q, r) = build_system(dec, basis, coll, lambda)?;
    Ok(gsvd::smallest_generalized_values(q.as_ref(), r.as_ref(), opts.m, opts.tau)?)
}

/// Scan `[lo, hi]`, refine minima and attach multiplicities and inclusion widths.
pub fn find_eigenvalues(
    dec: &SurfaceDecomposition,
    basis: &BasisSpec,
    coll: &CollocationSet,
    range: (f64, f64),
    step: f64,
    opts: &SearchOptions,
) -> Result<Vec<EigenvalueRecord>, MpsError> {
    let (lo, hi) = range;
    let pts = gsvd::grid(lo, hi, step)?;
    let curve = gsvd::scan_points(&pts, |l| sigma(dec, basis, coll, l, opts))?;
    find_in_curve(dec, basis, coll, &curve, opts)
}

/// Refine the minima of an already computed σ-curve.
pub fn find_in_curve(
    dec: &SurfaceDecomposition,
    basis: &BasisSpec,
    coll: &CollocationSet,
    curve: &gsvd::SingularCurve,
    opts: &SearchOptions,
) -> Result<Vec<EigenvalueRecord>, MpsError> {
    let s = &curve.samples;
    if s.is_empty() {
        return Ok(vec![]);
    }
    let lo = s[0].0;
    let step = if s.len() > 1 { s[1].0 - s[0].0 } else { 1.0 };
    let mut brackets = Vec::new();
    for i in 0..opts.m.min(2) {
        for j in gsvd::local_minima(curve, i, opts.candidate_threshold) {
            brackets.push((i, (s[j - 1].0, s[j].0, s[j + 1].0)));
        }
    }
    let refined: Vec<Option<(f64, f64)>> = brackets
        .par_iter()
        .map(|&(i, br)| {
            let (l, v) = gsvd::refine_minimum(
                br,
                |l| -> Result<f64, MpsError> {
                    let sv = sigma(dec, basis, coll, l, opts)?;
                    Ok(sv.get(i).copied().unwrap_or(f64::INFINITY))
                },
                opts.tol_lambda,
            )?;
            Ok::<_, MpsError>((v < opts.theta).then_some((l, v)))
        })
        .collect::<Result<_, _>>()?;
    let mut lambdas: Vec<f64> = refined.into_iter().flatten().map(|x| x.0).collect();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup_by(|a, b| (*a - *b).abs() < 1e-6 * (1.0 + b.abs()));
    let lambdas = split_clusters(dec, basis, coll, lambdas, step, opts)?;

    let mut records = Vec::new();
    if lo <= 0.0 {
        records.push(EigenvalueRecord {
            lambda: 0.0,
            multiplicity: 1,
            sigma_min: 0.0,
            half_width: 0.0,
            basis_n: basis.n,
            density: coll.density,
            epsilon: 0.0,
            eta: 0.0,
            sobolev_c: opts.sobolev_c,
        });
    }
    let recs: Vec<Option<EigenvalueRecord>> = lambdas
        .par_iter()
        .filter(|&&l| l > 0.5 * step)
        .map(|&l| {
            let (q, r) = build_system(dec, basis, coll, l)?;
            let g = gsvd::smallest_generalized_singulars(q.as_ref(), r.as_ref(), opts.m, opts.tau)?;
            let mult = gsvd::multiplicity_estimate(&g.sigma, opts.theta);
            if mult == 0 {
                return Ok(None);
            }
            let defect = jump_defect(dec, basis, coll, &g.vectors[0], l)?;
            let epsilon = opts.sobolev_c * defect.epsilon;
            let half_width = inclusion_interval(l, epsilon.min(0.999_999), defect.eta)
                .map(|(a, b)| 0.5 * (b - a))
                .unwrap_or(f64::INFINITY);
            Ok(Some(EigenvalueRecord {
                lambda: l,
                multiplicity: mult,
                sigma_min: g.sigma[0],
                half_width,
                basis_n: basis.n,
                density: coll.density,
                epsilon,
                eta: defect.eta,
                sobolev_c: opts.sobolev_c,
            }))
        })
        .collect::<Result<_, MpsError>>()?;
    records.extend(recs.into_iter().flatten());
    Ok(records)
}

const SPLIT_POINTS: usize = 25;
const SPLIT_DEPTH: usize = 3;

/// Closely spaced eigenvalues share one scan minimum. When a refined minimum
/// has more σ's below θ than its own cluster, rescan `σ_1` on a finer grid
/// around it and refine every further minimum.
fn split_clusters(
    dec: &SurfaceDecomposition,
    basis: &BasisSpec,
    coll: &CollocationSet,
    mut lambdas: Vec<f64>,
    step: f64,
    opts: &SearchOptions,
) -> Result<Vec<f64>, MpsError> {
    let same = |a: f64, b: f64| (a - b).abs() < 1e-6 * (1.0 + b.abs());
    let mut pending = lambdas.clone();
    let mut width = step;
    for _ in 0..SPLIT_DEPTH {
        let crowded: Vec<f64> = pending
            .par_iter()
            .map(|&l| {
                let sv = sigma(dec, basis, coll, l, opts)?;
                let mult = gsvd::multiplicity_estimate(&sv, opts.theta);
                Ok::<_, MpsError>((mult > 0 && sv.get(mult).is_some_and(|&s| s < opts.theta)).then_some(l))
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        if crowded.is_empty() {
            break;
        }
        let h = 2.0 * width / (SPLIT_POINTS - 1) as f64;
        let mut found = Vec::new();
        for &l in &crowded {
            let pts: Vec<f64> = (0..SPLIT_POINTS).map(|k| l - width + h * k as f64).collect();
            let curve = gsvd::scan_points(&pts, |x| sigma(dec, basis, coll, x, opts))?;
            let s = &curve.samples;
            let brackets: Vec<_> = gsvd::local_minima(&curve, 0, opts.theta)
                .into_iter()
                .map(|j| (s[j - 1].0, s[j].0, s[j + 1].0))
                .collect();
            let mins = brackets
                .par_iter()
                .map(|&br| {
                    gsvd::refine_minimum(
                        br,
                        |x| -> Result<f64, MpsError> { Ok(sigma(dec, basis, coll, x, opts)?[0]) },
                        opts.tol_lambda,
                    )
                })
                .collect::<Result<Vec<_>, _>>()?;
            for (x, v) in mins {
                if v < opts.theta && !lambdas.iter().chain(&found).any(|&y| same(x, y)) {
                    found.push(x);
                }
            }
        }
        lambdas.extend_from_slice(&found);
        pending = if found.is_empty() { crowded } else { found };
        width = 2.0 * h;
    }
    lambdas.sort_by(f64::total_cmp);
    Ok(lambdas)
}

/// Search over a long λ range in windows, each with its own basis size
/// `max(n_min, n_offset + ⌈n_slope·√λ_hi⌉)`, collocation set and scan step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WindowPlan {
    pub n_min: usize,
    pub n_offset: usize,
    pub n_slope: f64,
    pub window: f64,
    /// Collocation points per basis column (see [`default_density`]).
    pub oversample: f64,
    /// Fixed scan step; `None` uses [`default_step`] at the window's upper end.
    pub step: Option<f64>,
}

impl Default for WindowPlan {
    fn default() -> Self {
        Self {
            n_min: 24,
            n_offset: 12,
            n_slope: 3.3,
            window: 5.0,
            oversample: 1.5,
            step: None,
        }
    }
}

impl WindowPlan {
    pub fn n_for(&self, lambda_hi: f64) -> usize {
        let grown = self.n_offset + (self.n_slope * lambda_hi.max(0.0).sqrt()).ceil() as usize;
        self.n_min.max(grown)
    }
}

pub fn find_eigenvalues_windowed(
    dec: &SurfaceDecomposition,
    range: (f64, f64),
    plan: &WindowPlan,
    opts: &SearchOptions,
) -> Result<Vec<EigenvalueRecord>, MpsError> {
    find_eigenvalues_windowed_with(dec, range, plan, opts, |_, _| {})
}

/// As [`find_eigenvalues_windowed`], reporting each finished window `[a, b)`
/// and the records accumulated so far.
pub fn find_eigenvalues_windowed_with<P: FnMut((f64, f64), &[EigenvalueRecord])>(
    dec: &SurfaceDecomposition,
    range: (f64, f64),
    plan: &WindowPlan,
    opts: &SearchOptions,
    mut progress: P,
) -> Result<Vec<EigenvalueRecord>, MpsError> {
    let (lo, hi) = range;
    if !(lo < hi) || !(plan.window > 0.0) {
        return Err(MpsError::InvalidParameter("need lo < hi and window > 0".into()));
    }
    let mut out: Vec<EigenvalueRecord> = Vec::new();
    let mut a = lo;
    while a < hi {
        let b = (a + plan.window).min(hi);
        let step = plan.step.unwrap_or_else(|| default_step(b));
        let basis = BasisSpec::new(plan.n_for(b), dec.pieces.len());
        let coll = dec.collocate(default_density(dec, &basis, b, plan.oversample))?;
        // one extra step on each side so minima at window edges are bracketed
        let wa = if a > lo { a - step } else { a };
        let wb = if b < hi { b + step } else { b };
        let mut recs = find_eigenvalues(dec, &basis, &coll, (wa, wb), step, opts)?;
        recs.retain(|r| (r.lambda >= a || a == lo) && (r.lambda < b || b == hi));
        for r in recs {
            if !out.iter().any(|o| (o.lambda - r.lambda).abs() < 1e-6 * (1.0 + r.lambda)) {
                out.push(r);
            }
        }
        progress((a, b), &out);
        a = b;
    }
    out.sort_by(|x, y| x.lambda.total_cmp(&y.lambda));
    Ok(out)
}

/// `[λ − h, λ + h]` with `h = ((1+λ)ε + η)/(1−ε)`.
pub fn inclusion_interval(lambda: f64, epsilon: f64, eta: f64) -> Result<(f64, f64), MpsError> {
    if !(0.0..1.0).contains(&epsilon) || !(eta >= 0.0) {
        return Err(MpsError::InvalidParameter(format!(
            "inclusion interval needs 0 <= epsilon < 1 and eta >= 0 (got {epsilon}, {eta})"
        )));
    }
    let h = ((1.0 + lambda) * epsilon + eta) / (1.0 - epsilon);
    Ok((lambda - h, lambda + h))
}

/// Discrete jump defect of a candidate function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpDefect {
    /// Weighted discrete L²(Σ) norm of `(Dφ, D_nφ)` after normalizing the R-row proxy norm to 1.
    pub epsilon: f64,
    /// PDE residual; zero because every mode solves the equation (up to the radial tolerance).
    pub eta: f64,
    /// Radial-solve tolerance times the coefficient norm, reported separately.
    pub radial_residual: f64,
}

pub fn jump_defect(
    dec: &SurfaceDecomposition,
    basis: &BasisSpec,
    coll: &CollocationSet,
    coeffs: &[f64],
    lambda: f64,
) -> Result<JumpDefect, MpsError> {
    if coeffs.len() != basis.dimension() {
        return Err(MpsError::InvalidParameter("coefficient length mismatch".into()));
    }
    let bl = blocks(dec, basis, coll, lambda)?;
    let dot = |m: &Matrix, i: usize| -> f64 { (0..coeffs.len()).map(|j| m[(i, j)] * coeffs[j]).sum() };
    let (mut jump, mut norm) = (0.0, 0.0);
    for (i, p) in coll.points.iter().enumerate() {
        let (a, at, b, bt) = (dot(&bl.a, i), dot(&bl.at, i), dot(&bl.b, i), dot(&bl.bt, i));
        jump += p.weight * ((a - at).powi(2) + (b + bt).powi(2));
        norm += p.weight * (a * a + at * at + b * b + bt * bt);
    }
    let cnorm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    let scale = norm.sqrt();
    Ok(JumpDefect {
        epsilon: if scale > 0.0 { jump.sqrt() / scale } else { f64::INFINITY },
        eta: 0.0,
        radial_residual: 1e-15 * cnorm / scale.max(f64::MIN_POSITIVE),
    })
}

/// Write the eigenvalue CSV (`lambda,multiplicity,sigma_min,half_width,basis_N`).
pub fn write_eigenvalues<W: Write>(w: W, records: &[EigenvalueRecord]) -> Result<(), MpsError> {
    let mut wr = csv::Writer::from_writer(w);
    for r in records {
        wr.serialize(r).map_err(|e| MpsError::Io(e.to_string()))?;
    }
    wr.flush().map_err(|e| MpsError::Io(e.to_string()))
}

pub fn read_eigenvalues<R: Read>(r: R) -> Result<Vec<EigenvalueRecord>, MpsError> {
    let mut rd = csv::Reader::from_reader(r);
    let recs: Vec<EigenvalueRecord> = rd
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| MpsError::Io(e.to_string()))?;
    if recs.windows(2).any(|w| !(w[0].lambda < w[1].lambda)) {
        return Err(MpsError::Io("eigenvalues must be strictly ascending".into()));
    }
    if recs.iter().any(|r| r.multiplicity == 0 || !(r.lambda >= 0.0)) {
        return Err(MpsError::Io("invalid eigenvalue row".into()));
    }
    Ok(recs)
}
