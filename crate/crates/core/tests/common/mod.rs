//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// J_n(x) from the Bessel integral, trapezoidal rule on a periodic integrand.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    let m = 400;
    let h = PI / m as f64;
    let mut acc = 0.0;
    for i in 0..=m {
        let tau = i as f64 * h;
        let w = if i == 0 || i == m { 0.5 } else { 1.0 };
        acc += w * (n as f64 * tau - x * tau.sin()).cos();
    }
    acc * h / PI
}

/// k-th positive zero of J_n by bracketing and bisection.
pub fn bessel_zero(n: i32, k: usize) -> f64 {
    let mut found = 0;
    let mut x = 0.5;
    let dx = 0.05;
    let mut f = bessel_j(n, x);
    loop {
        let g = bessel_j(n, x + dx);
        if f * g < 0.0 {
            found += 1;
            if found == k {
                let (mut a, mut b) = (x, x + dx);
                let fa0 = f;
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if (bessel_j(n, m) * fa0) > 0.0 {
                        a = m;
                    } else {
                        b = m;
                    }
                }
                return 0.5 * (a + b);
            }
        }
        x += dx;
        f = g;
    }
}

/// Lowest Dirichlet eigenvalue of `x²/a² + y²/b² < 1` by Rayleigh–Ritz with
/// the even-even polynomial basis `(1 − X² − Y²)X^{2i}Y^{2j}`, `i + j ≤ deg`,
/// after the substitution `x = aX, y = bY`. Dense symmetric-definite solve.
pub fn ellipse_ritz(a: f64, b: f64, deg: usize) -> f64 {
    use nalgebra::DMatrix;
    // ∫_{unit disk} X^{2p} Y^{2q} = Γ(p+½)Γ(q+½)/Γ(p+q+2)
    let lg = stirling_lgamma;
    let mono = |p: i64, q: i64| -> f64 {
        if p < 0 || q < 0 {
            return 0.0;
        }
        (lg(p as f64 + 0.5) + lg(q as f64 + 0.5) - lg((p + q) as f64 + 2.0)).exp()
    };
    let idx: Vec<(i64, i64)> = (0..=deg as i64)
        .flat_map(|s| (0..=s).map(move |i| (i, s - i)))
        .collect();
    // φ = (1 − X² − Y²) X^{2i} Y^{2j} as a list of (coef, px, py) in X^{px}Y^{py}
    let poly = |i: i64, j: i64| vec![(1.0, 2 * i, 2 * j), (-1.0, 2 * i + 2, 2 * j), (-1.0, 2 * i, 2 * j + 2)];
    let dx = |p: &[(f64, i64, i64)]| -> Vec<(f64, i64, i64)> {
        p.iter().filter(|t| t.1 > 0).map(|&(c, x, y)| (c * x as f64, x - 1, y)).collect()
    };
    let dy = |p: &[(f64, i64, i64)]| -> Vec<(f64, i64, i64)> {
        p.iter().filter(|t| t.2 > 0).map(|&(c, x, y)| (c * y as f64, x, y - 1)).collect()
    };
    let inner = |p: &[(f64, i64, i64)], q: &[(f64, i64, i64)]| -> f64 {
        let mut s = 0.0;
        for &(c1, x1, y1) in p {
            for &(c2, x2, y2) in q {
                let (ex, ey) = (x1 + x2, y1 + y2);
                if ex % 2 == 0 && ey % 2 == 0 {
                    s += c1 * c2 * mono(ex / 2, ey / 2);
                }
            }
        }
        s
    };
    let n = idx.len();
    let mut k = DMatrix::<f64>::zeros(n, n);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (r, &(i1, j1)) in idx.iter().enumerate() {
        let p = poly(i1, j1);
        for (c, &(i2, j2)) in idx.iter().enumerate() {
            let q = poly(i2, j2);
            m[(r, c)] = inner(&p, &q);
            k[(r, c)] = inner(&dx(&p), &dx(&q)) / (a * a) + inner(&dy(&p), &dy(&q)) / (b * b);
        }
    }
    // symmetric-definite reduction with the Cholesky factor of the mass matrix
    let l = m.cholesky().expect("mass matrix positive definite").l();
    let li = l.clone().try_inverse().expect("invertible");
    let c = &li * k * li.transpose();
    let c = 0.5 * (&c + c.transpose());
    let ev = c.symmetric_eigenvalues();
    ev.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// ln Γ(x) for x > 0: upward shift to x + n ≥ 25 and the Stirling series.
pub fn stirling_lgamma(x: f64) -> f64 {
    let mut shift = 0.0;
    let mut y = x;
    while y < 25.0 {
        shift += y.ln();
        y += 1.0;
    }
    let y2 = y * y;
    let series = 1.0 / (12.0 * y) - 1.0 / (360.0 * y * y2) + 1.0 / (1260.0 * y * y2 * y2)
        - 1.0 / (1680.0 * y * y2 * y2 * y2);
    (y - 0.5) * y.ln() - y + 0.5 * (2.0 * PI).ln() + series - shift
}

/// ∫_a^b f by composite Simpson with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}
