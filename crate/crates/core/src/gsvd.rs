//! Smallest generalized singular values of a matrix pair, λ-scans, golden-section
//! refinement of minima and multiplicity counting.

use faer::{Mat, MatRef};
use rayon::prelude::*;

pub type Matrix = Mat<f64>;

/// Default relative truncation threshold for the column space of `R`.
pub const DEFAULT_TAU: f64 = 1e-12;
/// Default number of retained singular values.
pub const DEFAULT_M: usize = 6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GsvdError {
    #[error("Q and R have different column counts ({0} vs {1})")]
    ShapeMismatch(usize, usize),
    #[error("R is numerically zero")]
    ZeroR,
    #[error("singular value decomposition did not converge")]
    NoConvergence,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("builder failed at lambda = {lambda}: {message}")]
    Builder { lambda: f64, message: String },
    #[error("invalid bracket")]
    InvalidBracket,
}

/// The `m` smallest values of `‖Qv‖/‖Rv‖` with their coefficient vectors.
#[derive(Debug, Clone)]
pub struct GeneralizedSingulars {
    /// Ascending.
    pub sigma: Vec<f64>,
    /// `vectors[i]` attains `sigma[i]`, normalized so that `‖R v‖ = 1`.
    pub vectors: Vec<Vec<f64>>,
    /// Dimension of the retained subspace.
    pub rank: usize,
}

fn seq() {
    // per-sample linear algebra is sequential; parallelism lives in the scans
    faer::set_global_parallelism(faer::Par::Seq);
}

/// Smallest generalized singular values of `(Q, R)` on the numerically
/// non-singular subspace of `R` (relative threshold `tau`).
pub fn smallest_generalized_singulars(
    q: MatRef<'_, f64>,
    r: MatRef<'_, f64>,
    m: usize,
    tau: f64,
) -> Result<GeneralizedSingulars, GsvdError> {
    solve(q, r, m, tau, true)
}

/// As [`smallest_generalized_singulars`] without the vectors (cheaper).
pub fn smallest_generalized_values(
    q: MatRef<'_, f64>,
    r: MatRef<'_, f64>,
    m: usize,
    tau: f64,
) -> Result<Vec<f64>, GsvdError> {
    solve(q, r, m, tau, false).map(|g| g.sigma)
}

fn solve(
    q: MatRef<'_, f64>,
    r: MatRef<'_, f64>,
    m: usize,
    tau: f64,
    want_vectors: bool,
) -> Result<GeneralizedSingulars, GsvdError> {
    seq();
    let n = q.ncols();
    if r.ncols() != n {
        return Err(GsvdError::ShapeMismatch(n, r.ncols()));
    }
    if m == 0 || !(tau > 0.0 && tau < 1.0) {
        return Err(GsvdError::InvalidParameter("need m >= 1 and 0 < tau < 1"));
    }
    // column equilibration by the R column norms (does not change the quotient)
    let scale: Vec<f64> = (0..n)
        .map(|j| {
            let s = r.col(j).norm_l2();
            if s > 0.0 && s.is_finite() {
                1.0 / s
            } else {
                1.0
            }
        })
        .collect();
    let rs = Mat::from_fn(r.nrows(), n, |i, j| r[(i, j)] * scale[j]);
    let qs = Mat::from_fn(q.nrows(), n, |i, j| q[(i, j)] * scale[j]);

    // reduce R to a square triangular factor when tall
    let tri = if rs.nrows() > n {
        rs.qr().thin_R().to_owned()
    } else {
        rs
    };
    let (s, v) = right_singular_pairs(tri.as_ref())?;
    let smax = s.first().copied().unwrap_or(0.0);
    if !(smax > 0.0) {
        return Err(GsvdError::ZeroR);
    }
    let rank = s.iter().take_while(|&&x| x >= tau * smax).count();
    // Z = V_r S_r^{-1}
    let z = Mat::from_fn(n, rank, |i, j| v[(i, j)] / s[j]);
    let qz = &qs * &z;
    // pad with zero rows so that every retained direction has a singular value
    let qz = if qz.nrows() < rank {
        Mat::from_fn(rank, rank, |i, j| if i < qz.nrows() { qz[(i, j)] } else { 0.0 })
    } else {
        qz
    };
    let take = m.min(rank);
    if !want_vectors {
        let mut sv = match qz.singular_values() {
            Ok(sv) => sv,
            Err(_) => right_singular_pairs(qz.as_ref())?.0,
        };
        sv.reverse();
        sv.truncate(take);
        return Ok(GeneralizedSingulars {
            sigma: sv,
            vectors: vec![],
            rank,
        });
    }
    let (qs_vals, qv) = right_singular_pairs(qz.as_ref())?;
    let mut sigma = Vec::with_capacity(take);
    let mut vectors = Vec::with_capacity(take);
    for idx in 0..take {
        let col = rank - 1 - idx;
        sigma.push(qs_vals[col]);
        let y = qv.col(col);
        let zy = &z * y;
        vectors.push((0..n).map(|i| zy[i] * scale[i]).collect());
    }
    Ok(GeneralizedSingulars {
        sigma,
        vectors,
        rank,
    })
}

/// Singular values (descending) and right singular vectors of `a`; when the
/// SVD iteration fails to converge or returns non-finite entries the transpose
/// is tried, then one-sided Jacobi.
fn right_singular_pairs(a: MatRef<'_, f64>) -> Result<(Vec<f64>, Mat<f64>), GsvdError> {
    let k = a.nrows().min(a.ncols());
    let finite = |s: &[f64], v: &Mat<f64>| {
        s.iter().all(|x| x.is_finite()) && (0..v.ncols()).all(|j| v.col(j).iter().all(|x| x.is_finite()))
    };
    if let Ok(svd) = a.thin_svd() {
        let s: Vec<f64> = svd.S().column_vector().iter().copied().collect();
        let v = svd.V().to_owned();
        if finite(&s, &v) {
            return Ok((s, v));
        }
    }
    if let Ok(svd) = a.transpose().thin_svd() {
        let s: Vec<f64> = svd.S().column_vector().iter().copied().collect();
        let v = svd.U().subcols(0, k).to_owned();
        if finite(&s, &v) {
            return Ok((s, v));
        }
    }
    jacobi_svd(a)
}

/// One-sided (Hestenes) Jacobi SVD: orthogonalize the columns of `a` by plane
/// rotations accumulated in `V`.
fn jacobi_svd(a: MatRef<'_, f64>) -> Result<(Vec<f64>, Mat<f64>), GsvdError> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut u = a.to_owned();
    let mut v = Mat::<f64>::identity(n, n);
    let mut converged = false;
    for _ in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..m {
                    let (x, y) = (u[(i, p)], u[(i, q)]);
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma == 0.0 {
                    continue;
                }
                let c0 = gamma.abs() / (alpha * beta).sqrt();
                off = off.max(c0);
                if c0 < 1e-15 {
                    continue;
                }
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let (x, y) = (u[(i, p)], u[(i, q)]);
                    u[(i, p)] = c * x - s * y;
                    u[(i, q)] = s * x + c * y;
                }
                for i in 0..n {
                    let (x, y) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = c * x - s * y;
                    v[(i, q)] = s * x + c * y;
                }
            }
        }
        if off < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(GsvdError::NoConvergence);
    }
    let norms: Vec<f64> = (0..n).map(|j| u.col(j).norm_l2()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let k = m.min(n);
    let s = order[..k].iter().map(|&j| norms[j]).collect();
    let vk = Mat::from_fn(n, k, |i, j| v[(i, order[j])]);
    Ok((s, vk))
}

/// σ-curve samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularCurve {
    pub samples: Vec<(f64, Vec<f64>)>,
}

/// Uniform grid `lo, lo + step, …` up to and including `hi` (within rounding).
pub fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>, GsvdError> {
    if !(lo < hi) || !(step > 0.0) || !(lo.is_finite() && hi.is_finite()) {
        return Err(GsvdError::InvalidParameter("need lo < hi and step > 0"));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| lo + step * i as f64).collect())
}

/// Evaluate `f` (the `m` smallest σ's at λ) on the points, in parallel; output
/// is in λ order regardless of scheduling.
pub fn scan_points<F, E>(points: &[f64], f: F) -> Result<SingularCurve, GsvdError>
where
    F: Fn(f64) -> Result<Vec<f64>, E> + Sync,
    E: std::fmt::Display,
{
    let samples: Vec<(f64, Vec<f64>)> = points
        .par_iter()
        .map(|&l| {
            f(l).map(|s| (l, s)).map_err(|e| GsvdError::Builder {
                lambda: l,
                message: e.to_string(),
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(SingularCurve { samples })
}

/// Scan with a matrix builder `λ ↦ (Q_λ, R_λ)`.
pub fn scan<B, E>(
    lo: f64,
    hi: f64,
    step: f64,
    builder: B,
    m: usize,
    tau: f64,
) -> Result<SingularCurve, GsvdError>
where
    B: Fn(f64) -> Result<(Matrix, Matrix), E> + Sync,
    E: std::fmt::Display,
{
    let pts = grid(lo, hi, step)?;
    scan_points(&pts, |l| -> Result<Vec<f64>, String> {
        let (q, r) = builder(l).map_err(|e| e.to_string())?;
        smallest_generalized_values(q.as_ref(), r.as_ref(), m, tau).map_err(|e| e.to_string())
    })
}

const GOLD: f64 = 0.381_966_011_250_105_2;

/// Golden-section refinement of a bracketed minimum `f(b) < min(f(a), f(c))`
/// until the bracket is narrower than `tol`. Returns `(λ*, f(λ*))`.
pub fn refine_minimum<F, E>(
    bracket: (f64, f64, f64),
    f: F,
    tol: f64,
) -> Result<(f64, f64), E>
where
    F: Fn(f64) -> Result<f64, E>,
    E: From<GsvdError>,
{
    let (mut a, mut b, mut c) = bracket;
    if !(a < b && b < c) || !(tol > 0.0) {
        return Err(GsvdError::InvalidBracket.into());
    }
    let mut fb = f(b)?;
    while c - a > tol {
        let right = c - b > b - a;
        let x = if right { b + GOLD * (c - b) } else { b - GOLD * (b - a) };
        if !(x > a && x < c) || x == b {
            break;
        }
        let fx = f(x)?;
        // ties keep the left sub-bracket
        if right {
            if fx < fb {
                a = b;
                b = x;
                fb = fx;
            } else {
                c = x;
            }
        } else if fx <= fb {
            c = b;
            b = x;
            fb = fx;
        } else {
            a = x;
        }
    }
    Ok((b, fb))
}

/// Number of σ's in the cluster of `σ_1`: below θ and below the geometric mean
/// of `σ_1` and θ, so that a nearby eigenvalue's σ's are not counted.
pub fn multiplicity_estimate(sigma: &[f64], theta: f64) -> usize {
    let Some(&s1) = sigma.first() else { return 0 };
    if !(s1 < theta) {
        return 0;
    }
    let cut = theta.min((theta * s1.max(f64::MIN_POSITIVE)).sqrt());
    sigma.iter().filter(|&&s| s < theta && s <= cut.max(s1)).count()
}

/// Indices of strict local minima of the `i`-th σ curve below `threshold`.
pub fn local_minima(curve: &SingularCurve, i: usize, threshold: f64) -> Vec<usize> {
    let v: Vec<f64> = curve
        .samples
        .iter()
        .map(|(_, s)| s.get(i).copied().unwrap_or(f64::INFINITY))
        .collect();
    (1..v.len().saturating_sub(1))
        .filter(|&j| v[j] < v[j - 1] && v[j] < v[j + 1] && v[j] < threshold)
        .collect()
}
