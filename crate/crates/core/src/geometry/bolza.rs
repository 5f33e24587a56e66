//! The Bolza surface as a quotient of the Poincaré disk by the side pairings of
//! the regular octagon with corners `2^{−1/4} e^{iπk/4}`, and its primitive
//! length spectrum.
//!
//! Closed geodesics are found as hyperbolic elements `g` whose axis crosses the
//! octagon `F`. Every lift of a closed geodesic that meets `F` contributes the
//! length of `axis ∩ F`, and these pieces add up to the primitive length, so
//! `Σ |axis(g) ∩ F| / ℓ_prim(g)` over the elements of one length counts the
//! conjugacy classes of that length without any word canonicalization.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use num_complex::Complex64 as C;
use rayon::prelude::*;

use super::GeometryError;

/// `[[a, b], [b̄, ā]]` in SU(1,1), normalized to `Re a ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11 {
    pub a: C,
    pub b: C,
}

impl Su11 {
    pub const IDENTITY: Su11 = Su11 {
        a: C::new(1.0, 0.0),
        b: C::new(0.0, 0.0),
    };

    fn normalized(self) -> Self {
        if self.a.re < 0.0 || (self.a.re == 0.0 && self.a.im < 0.0) {
            Su11 {
                a: -self.a,
                b: -self.b,
            }
        } else {
            self
        }
    }

    pub fn mul(&self, o: &Su11) -> Su11 {
        Su11 {
            a: self.a * o.a + self.b * o.b.conj(),
            b: self.a * o.b + self.b * o.a.conj(),
        }
        .normalized()
    }

    pub fn inverse(&self) -> Su11 {
        Su11 {
            a: self.a.conj(),
            b: -self.b,
        }
        .normalized()
    }

    pub fn det(&self) -> f64 {
        self.a.norm_sqr() - self.b.norm_sqr()
    }

    pub fn apply(&self, z: C) -> C {
        (self.a * z + self.b) / (self.b.conj() * z + self.a.conj())
    }

    /// `|tr|`.
    pub fn abs_trace(&self) -> f64 {
        2.0 * self.a.re.abs()
    }

    /// `cosh d(0, g·0)`.
    pub fn cosh_displacement(&self) -> f64 {
        2.0 * self.a.norm_sqr() - 1.0
    }

    /// Translation length `2 arccosh(|tr|/2)` for hyperbolic elements.
    pub fn translation_length(&self) -> Option<f64> {
        let h = self.a.re.abs();
        (h > 1.0 + 1e-12).then(|| 2.0 * h.acosh())
    }

    /// Repelling and attracting fixed points on the unit circle.
    pub fn axis(&self) -> Option<(C, C)> {
        let h = self.a.re;
        if h.abs() <= 1.0 + 1e-12 {
            return None;
        }
        let s = (h * h - 1.0).sqrt() * h.signum();
        let bc = self.b.conj();
        let ia = C::new(0.0, self.a.im);
        Some(((ia - s) / bc, (ia + s) / bc))
    }
}

/// Fuchsian group given by side pairings of a Dirichlet polygon centred at 0.
#[derive(Debug, Clone)]
pub struct FuchsianGroup {
    /// Side pairings and their inverses; `generators[k]` maps side `k + n/2` to side `k`.
    pub generators: Vec<Su11>,
    /// Polygon corners in counterclockwise order.
    pub vertices: Vec<C>,
}

/// The four octagon translations `g_k` (axis direction `π/8 + kπ/4`) and their inverses.
pub fn bolza_group() -> FuchsianGroup {
    let a = 1.0 + std::f64::consts::SQRT_2;
    let b = (2.0 + 2.0 * std::f64::consts::SQRT_2).sqrt();
    let mut generators = Vec::with_capacity(8);
    for k in 0..4 {
        let th = std::f64::consts::PI / 8.0 + k as f64 * std::f64::consts::PI / 4.0;
        generators.push(Su11 {
            a: C::new(a, 0.0),
            b: C::from_polar(b, th),
        });
    }
    for k in 0..4 {
        let g = generators[k].inverse();
        generators.push(g);
    }
    let r = 2f64.powf(-0.25);
    let vertices = (0..8)
        .map(|k| C::from_polar(r, std::f64::consts::PI * k as f64 / 4.0))
        .collect();
    FuchsianGroup {
        generators,
        vertices,
    }
}

/// Circle orthogonal to the unit circle through `p`, `q`; returns its centre.
fn orthogonal_circle(p: C, q: C) -> C {
    // |v|² − 2 Re(v c̄) + 1 = 0 at v = p, q
    let (a11, a12, r1) = (2.0 * p.re, 2.0 * p.im, p.norm_sqr() + 1.0);
    let (a21, a22, r2) = (2.0 * q.re, 2.0 * q.im, q.norm_sqr() + 1.0);
    let det = a11 * a22 - a12 * a21;
    C::new((r1 * a22 - a12 * r2) / det, (a11 * r2 - r1 * a21) / det)
}

impl FuchsianGroup {
    /// Centres of the side geodesics; side `j` joins `vertices[j]` and `vertices[j+1]`.
    fn side_centres(&self) -> Vec<C> {
        let n = self.vertices.len();
        (0..n)
            .map(|j| orthogonal_circle(self.vertices[j], self.vertices[(j + 1) % n]))
            .collect()
    }

    /// Euclidean radius of the polygon's corners as a hyperbolic distance from 0.
    pub fn circumradius(&self) -> f64 {
        let r = self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max);
        2.0 * r.atanh()
    }

    /// Hyperbolic distance from 0 to the nearest side.
    pub fn inradius(&self) -> f64 {
        self.side_centres()
            .iter()
            .map(|c| {
                let rho = (c.norm_sqr() - 1.0).sqrt();
                2.0 * (c.norm() - rho).atanh()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// All group elements with `d(0, g·0) ≤ radius`.
    ///
    /// Breadth-first search over right multiplication by side pairings: the
    /// tiles crossed by the segment `[0, g·0]` form a chain of neighbours whose
    /// centres stay within `radius + circumradius`.
    pub fn orbit_ball(&self, radius: f64) -> Vec<Su11> {
        let prune = (radius + self.circumradius()).cosh();
        let keep = radius.cosh();
        let key = |g: &Su11| {
            let q = |x: f64| (x * 1e6).round() as i64;
            [q(g.a.re), q(g.a.im), q(g.b.re), q(g.b.im)]
        };
        let mut seen: HashMap<[i64; 4], ()> = HashMap::new();
        let mut all = vec![Su11::IDENTITY];
        seen.insert(key(&Su11::IDENTITY), ());
        let mut head = 0;
        while head < all.len() {
            let g = all[head];
            head += 1;
            for s in &self.generators {
                let h = g.mul(s);
                if h.cosh_displacement() > prune {
                    continue;
                }
                if seen.insert(key(&h), ()).is_none() {
                    all.push(h);
                }
            }
        }
        all.retain(|g| g.cosh_displacement() <= keep * (1.0 + 1e-12));
        all
    }

    /// Length of `axis(g) ∩ F` and whether that piece lies on `∂F`.
    fn axis_piece(&self, g: &Su11, centres: &[C]) -> (f64, bool) {
        let Some((rep, att)) = g.axis() else {
            return (0.0, false);
        };
        // point of the axis nearest to 0
        let m = 0.5 * (rep + att);
        let cos_a = m.norm().min(1.0);
        let alpha = cos_a.acos();
        let u = if m.norm() > 1e-300 { m / m.norm() } else { C::new(1.0, 0.0) };
        let p0 = u * (std::f64::consts::FRAC_PI_4 - 0.5 * alpha).tan();
        let t_inv = |z: C| (z - p0) / (C::new(1.0, 0.0) - p0.conj() * z);
        let dir = t_inv(att);
        let dir = dir / dir.norm();
        let point = |s: f64| {
            let w = dir * (0.5 * s).tanh();
            (w + p0) / (C::new(1.0, 0.0) + p0.conj() * w)
        };
        let side = |c: C, z: C| z.norm_sqr() - 2.0 * (z * c.conj()).re + 1.0;
        let span = self.circumradius() + 0.5;
        let (mut lo, mut hi) = (-span, span);
        let mut on_boundary = false;
        for &c in centres {
            let (fl, fh) = (side(c, point(lo)), side(c, point(hi)));
            let fm = side(c, point(0.5 * (lo + hi)));
            let tiny = 1e-11;
            if fl.abs() < tiny && fh.abs() < tiny && fm.abs() < tiny {
                on_boundary = true;
                continue;
            }
            if fl >= 0.0 && fh >= 0.0 {
                continue;
            }
            if fl < 0.0 && fh < 0.0 {
                return (0.0, false);
            }
            let inside_low = fl >= 0.0;
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if (side(c, point(mid)) >= 0.0) == inside_low {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            if inside_low {
                hi = 0.5 * (a + b);
            } else {
                lo = 0.5 * (a + b);
            }
            if hi <= lo {
                return (0.0, false);
            }
        }
        ((hi - lo).max(0.0), on_boundary)
    }
}

/// Primitive closed geodesic lengths with multiplicities up to `l_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthSpectrum {
    /// `(ℓ, multiplicity)`, strictly increasing in ℓ. Multiplicities count
    /// oriented primitive geodesics (primitive hyperbolic conjugacy classes).
    pub entries: Vec<(f64, usize)>,
    pub l_max: f64,
    /// Whether the enumeration below `l_max` is exhaustive.
    pub tail_certified: bool,
}

/// Largest cutoff accepted by [`length_spectrum`].
pub const MAX_L_MAX: f64 = 12.0;

/// Primitive length spectrum of `group` below `l_max`.
pub fn length_spectrum(group: &FuchsianGroup, l_max: f64) -> Result<LengthSpectrum, GeometryError> {
    if !(l_max > 0.0) {
        return Err(GeometryError::InvalidLength);
    }
    if l_max > MAX_L_MAX {
        return Err(GeometryError::Intractable { l_max });
    }
    // an axis meeting F passes within the circumradius of 0
    let radius = l_max + 2.0 * group.circumradius() + 1e-9;
    let elements = group.orbit_ball(radius);
    let centres = group.side_centres();
    let mut cands: Vec<(f64, C, C, f64)> = elements
        .par_iter()
        .filter_map(|g| {
            let l = g.translation_length()?;
            if l > l_max + 1e-9 {
                return None;
            }
            let (piece, boundary) = group.axis_piece(g, &centres);
            if piece <= 1e-9 {
                return None;
            }
            let (rep, att) = g.axis()?;
            let w = if boundary { 0.5 } else { 1.0 };
            Some((l, rep, att, w * piece))
        })
        .collect();
    cands.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.re.total_cmp(&y.1.re)).then(x.1.im.total_cmp(&y.1.im)));
    // drop elements that were reached twice through rounding of the search keys
    let mut uniq: Vec<(f64, C, C, f64)> = Vec::with_capacity(cands.len());
    for c in cands {
        let dup = uniq.iter().rev().take_while(|u| c.0 - u.0 < 1e-8).any(|u| {
            (u.1 - c.1).norm() < 1e-8 && (u.2 - c.2).norm() < 1e-8 && (u.0 - c.0).abs() < 1e-8
        });
        if !dup {
            uniq.push(c);
        }
    }
    // primitive iff no shorter element shares the oriented axis
    let primitive: Vec<&(f64, C, C, f64)> = uniq
        .iter()
        .filter(|c| {
            !uniq.iter().any(|u| {
                u.0 < c.0 - 1e-8 && (u.1 - c.1).norm() < 1e-7 && (u.2 - c.2).norm() < 1e-7
            })
        })
        .collect();
    let mut entries: Vec<(f64, f64)> = Vec::new();
    for c in primitive {
        match entries.last_mut() {
            Some(last) if (c.0 - last.0).abs() < 1e-8 * c.0 => last.1 += c.3 / c.0,
            _ => entries.push((c.0, c.3 / c.0)),
        }
    }
    let mut out = Vec::with_capacity(entries.len());
    for (l, w) in entries {
        let m = w.round();
        if (w - m).abs() > 1e-6 || m < 1.0 {
            return Err(GeometryError::NonIntegralCount { length: l, count: w });
        }
        out.push((l, m as usize));
    }
    Ok(LengthSpectrum {
        entries: out,
        l_max,
        tail_certified: true,
    })
}

impl LengthSpectrum {
    pub fn systole(&self) -> Option<f64> {
        self.entries.first().map(|e| e.0)
    }

    /// Upper bound on the number of oriented closed geodesics (primitive or
    /// not) of length `≤ x` for the Bolza octagon, from disjointness of the
    /// inscribed balls around the orbit of 0.
    pub fn counting_bound(x: f64) -> f64 {
        let g = bolza_group();
        let r_in = g.inradius();
        let r = x + 2.0 * g.circumradius() + r_in;
        (r.cosh() - 1.0) / (r_in.cosh() - 1.0)
    }

    /// Bound on `Σ_{ℓ(γ) > l_max} f(ℓ(γ))` for `f` decreasing on `[l_max, ∞)`,
    /// by binning lengths in steps of `h` and using [`Self::counting_bound`].
    pub fn tail_bound<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let h = 0.05;
        let mut acc = 0.0;
        for j in 0..100_000 {
            let x = self.l_max + j as f64 * h;
            let term = f(x) * Self::counting_bound(x + h);
            acc += term;
            if j > 20 && term < 1e-30 * acc.max(1e-300) {
                break;
            }
            if !term.is_finite() {
                return f64::INFINITY;
            }
        }
        acc
    }

    pub fn write<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# primitive closed geodesics: length, oriented multiplicity")?;
        writeln!(w, "L_MAX {}", self.l_max)?;
        for (l, m) in &self.entries {
            writeln!(w, "{l:.15} {m}")?;
        }
        Ok(())
    }

    /// Parse the text format (`L_MAX <value>` header, `<length> <multiplicity>` lines, `#` comments).
    pub fn read<R: BufRead>(r: R) -> Result<Self, GeometryError> {
        let bad = |line: usize, msg: &str| GeometryError::LengthFile(format!("line {line}: {msg}"));
        let mut l_max = None;
        let mut entries: Vec<(f64, usize)> = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line.map_err(|e| GeometryError::LengthFile(e.to_string()))?;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let first = it.next().unwrap_or("");
            if first == "L_MAX" {
                let v: f64 = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad(i + 1, "bad L_MAX"))?;
                l_max = Some(v);
                continue;
            }
            let l: f64 = first.parse().map_err(|_| bad(i + 1, "bad length"))?;
            let m: usize = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad(i + 1, "bad multiplicity"))?;
            if it.next().is_some() {
                return Err(bad(i + 1, "trailing fields"));
            }
            if !(l > 0.0) || m == 0 {
                return Err(bad(i + 1, "length and multiplicity must be positive"));
            }
            if let Some(&(prev, _)) = entries.last() {
                if l <= prev {
                    return Err(bad(i + 1, "lengths must be strictly increasing"));
                }
            }
            entries.push((l, m));
        }
        let l_max = l_max.ok_or_else(|| GeometryError::LengthFile("missing L_MAX header".into()))?;
        if entries.iter().any(|e| e.0 > l_max) {
            return Err(GeometryError::LengthFile("length above L_MAX".into()));
        }
        Ok(Self {
            entries,
            l_max,
            tail_certified: false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_pair_sides() {
        let g = bolza_group();
        let v = &g.vertices;
        for k in 0..4 {
            let s = g.generators[k];
            assert!((s.det() - 1.0).abs() < 1e-12);
            // side k+4 (v_{k+4} → v_{k+5}) onto side k reversed
            let p = s.apply(v[k + 4]);
            let q = s.apply(v[(k + 5) % 8]);
            assert!((p - v[k + 1]).norm() < 1e-10, "{k}");
            assert!((q - v[k]).norm() < 1e-10, "{k}");
        }
    }

    #[test]
    fn group_product_and_inverse() {
        let g = bolza_group();
        let x = g.generators[1].mul(&g.generators[6]).mul(&g.generators[3]);
        let y = x.mul(&x.inverse());
        assert!((y.a - 1.0).norm() < 1e-12 && y.b.norm() < 1e-12);
        let z = C::new(0.1, -0.3);
        let lhs = x.apply(z);
        let rhs = g.generators[1].apply(g.generators[6].apply(g.generators[3].apply(z)));
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn systole_of_generators() {
        let g = bolza_group();
        let l = g.generators[0].translation_length().unwrap();
        assert!((l - 2.0 * (1.0 + std::f64::consts::SQRT_2).acosh()).abs() < 1e-12);
        // the generator axis crosses the octagon through opposite side midpoints
        assert!((g.inradius() - 0.5 * l).abs() < 1e-10);
    }

    #[test]
    fn file_round_trip() {
        let s = LengthSpectrum {
            entries: vec![(3.057141530, 24), (3.983, 48)],
            l_max: 4.0,
            tail_certified: true,
        };
        let mut buf = Vec::new();
        s.write(&mut buf).unwrap();
        let r = LengthSpectrum::read(buf.as_slice()).unwrap();
        assert_eq!(r.entries.len(), 2);
        assert_eq!(r.entries[1].1, 48);
        assert_eq!(r.l_max, 4.0);
        assert!(LengthSpectrum::read("1.0 2\n".as_bytes()).is_err());
        assert!(LengthSpectrum::read("L_MAX 3\n2.0 1\n1.0 1\n".as_bytes()).is_err());
    }
}
