//! Fenchel–Nielsen gluing of cut pants into a closed surface, the interface Σ
//! and its collocation points.

use serde::{Deserialize, Serialize};

use super::piece::{pants_from_lengths, ArcKind, BoundaryPoint, CylinderPiece};
use super::GeometryError;

/// One gluing curve: two (pants, cuff slot) ends, length and twist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FnEdge {
    /// `[[pants, slot], [pants, slot]]`; slot 0 of every pants is its cylinder core.
    pub ends: [[usize; 2]; 2],
    pub length: f64,
    /// Twist as a fraction of `length`.
    #[serde(default)]
    pub twist: f64,
}

/// Fenchel–Nielsen data on a trivalent graph with `2g − 2` vertices (pants).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FenchelNielsen {
    pub genus: usize,
    #[serde(rename = "edge")]
    pub edges: Vec<FnEdge>,
}

impl FenchelNielsen {
    pub fn pants_count(&self) -> usize {
        2 * self.genus.saturating_sub(1)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let g = self.genus;
        if g < 2 {
            return Err(GeometryError::InvalidGraph("genus must be at least 2".into()));
        }
        let np = self.pants_count();
        if self.edges.len() != 3 * g - 3 {
            return Err(GeometryError::InvalidGraph(format!(
                "expected {} edges, found {}",
                3 * g - 3,
                self.edges.len()
            )));
        }
        let mut used = vec![[false; 3]; np];
        for (i, e) in self.edges.iter().enumerate() {
            if !(e.length > 0.0 && e.length.is_finite()) {
                return Err(GeometryError::InvalidLength);
            }
            if !e.twist.is_finite() {
                return Err(GeometryError::InvalidGraph(format!("edge {i}: twist not finite")));
            }
            for [p, s] in e.ends {
                if p >= np || s >= 3 {
                    return Err(GeometryError::InvalidGraph(format!("edge {i}: end ({p}, {s}) out of range")));
                }
                if used[p][s] {
                    return Err(GeometryError::InvalidGraph(format!("cuff ({p}, {s}) used twice")));
                }
                used[p][s] = true;
            }
        }
        // trivalence: every cuff used exactly once (counts already match)
        // connectivity
        let mut seen = vec![false; np];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let [a, b] = [e.ends[0][0], e.ends[1][0]];
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(GeometryError::InvalidGraph("graph is not connected".into()));
        }
        Ok(())
    }

    /// Cuff lengths per pants in slot order.
    pub fn pants_lengths(&self) -> Vec<[f64; 3]> {
        let mut out = vec![[0.0; 3]; self.pants_count()];
        for e in &self.edges {
            for [p, s] in e.ends {
                out[p][s] = e.length;
            }
        }
        out
    }

    /// Bolza surface, m-w coordinates
    /// `(2 arccosh(3+2√2), ½; 2 arccosh(1+√2), 0; 2 arccosh(1+√2), 0)`.
    pub fn bolza_mw() -> Self {
        let long = 2.0 * (3.0 + 2.0 * 2f64.sqrt()).acosh();
        let short = 2.0 * (1.0 + 2f64.sqrt()).acosh();
        Self::theta([(long, 0.5), (short, 0.0), (short, 0.0)])
    }

    /// Bolza surface, symmetric coordinates `(ℓ_s, t; ℓ_s, t; ℓ_s, t)`.
    pub fn bolza_symmetric() -> Self {
        let a = (1.0 + 2f64.sqrt()).acosh();
        let t = ((2.0 / 7.0 * (3.0 + 2f64.sqrt())).sqrt()).acosh() / a;
        Self::theta([(2.0 * a, t), (2.0 * a, t), (2.0 * a, t)])
    }

    /// Genus 2 on the theta graph: cuff `i` of pants 0 glued to cuff `i` of pants 1.
    pub fn theta(data: [(f64, f64); 3]) -> Self {
        Self {
            genus: 2,
            edges: (0..3)
                .map(|i| FnEdge {
                    ends: [[0, i], [1, i]],
                    length: data[i].0,
                    twist: data[i].1,
                })
                .collect(),
        }
    }
}

/// Reference to one boundary arc of one piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcRef {
    pub piece: usize,
    pub kind: ArcKind,
}

/// Pair of identified boundary arcs. `plus` is the `x₊` side.
#[derive(Debug, Clone, PartialEq)]
pub struct Interface {
    pub plus: ArcRef,
    pub minus: ArcRef,
    pub length: f64,
    /// Minus-side parameter `s' = (offset − s) mod length` for cuffs; `s' = s` for seams.
    pub offset: Option<f64>,
    /// Smooth sub-segments `[a, b]` in the plus parameter, split at the corners of both sides.
    pub segments: Vec<(f64, f64)>,
}

/// A closed surface as glued cylinder pieces.
#[derive(Debug, Clone)]
pub struct SurfaceDecomposition {
    pub genus: usize,
    pub pieces: Vec<CylinderPiece>,
    pub interfaces: Vec<Interface>,
}

fn split_segments(length: f64, mut cuts: Vec<f64>, periodic: bool) -> Vec<(f64, f64)> {
    let tol = 1e-12 * (1.0 + length);
    for c in cuts.iter_mut() {
        *c = c.rem_euclid(length);
        if length - *c < tol {
            *c = 0.0;
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < tol);
    if !periodic {
        if cuts.first().is_none_or(|&c| c > tol) {
            cuts.insert(0, 0.0);
        }
        let mut out: Vec<(f64, f64)> = cuts.windows(2).map(|w| (w[0], w[1])).collect();
        out.push((*cuts.last().unwrap(), length));
        out.retain(|(a, b)| b - a > tol);
        return out;
    }
    match cuts.len() {
        0 => vec![(0.0, length)],
        n => (0..n)
            .map(|i| {
                let a = cuts[i];
                let b = if i + 1 < n { cuts[i + 1] } else { cuts[0] + length };
                (a, b)
            })
            .collect(),
    }
}

/// Glue the pants of `fnp` (each cut along its `c1` seam) into a surface.
pub fn assemble_surface(fnp: &FenchelNielsen) -> Result<SurfaceDecomposition, GeometryError> {
    fnp.validate()?;
    let pieces: Vec<CylinderPiece> = fnp
        .pants_lengths()
        .iter()
        .enumerate()
        .map(|(id, l)| pants_from_lengths(l[0], l[1], l[2]).map(|p| CylinderPiece::from_pants(id, &p)))
        .collect::<Result<_, _>>()?;

    let mut interfaces = Vec::new();
    for e in &fnp.edges {
        let (mut p, mut m) = (e.ends[0], e.ends[1]);
        if (m[0], m[1]) < (p[0], p[1]) {
            std::mem::swap(&mut p, &mut m);
        }
        let plus = ArcRef { piece: p[0], kind: ArcKind::cuff(p[1]) };
        let minus = ArcRef { piece: m[0], kind: ArcKind::cuff(m[1]) };
        let len = e.length;
        let offset = (e.twist * len).rem_euclid(len);
        let mut cuts = pieces[plus.piece].corners(plus.kind);
        cuts.extend(
            pieces[minus.piece]
                .corners(minus.kind)
                .into_iter()
                .map(|c| (offset - c).rem_euclid(len)),
        );
        interfaces.push(Interface {
            plus,
            minus,
            length: len,
            offset: Some(offset),
            segments: split_segments(len, cuts, true),
        });
    }
    for piece in &pieces {
        let len = piece.arc_length(ArcKind::Seam);
        interfaces.push(Interface {
            plus: ArcRef { piece: piece.id, kind: ArcKind::Seam },
            minus: ArcRef { piece: piece.id, kind: ArcKind::SeamMirror },
            length: len,
            offset: None,
            segments: vec![(0.0, len)],
        });
    }
    Ok(SurfaceDecomposition {
        genus: fnp.genus,
        pieces,
        interfaces,
    })
}

/// Paired sample on Σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollocationPoint {
    pub interface: usize,
    pub param: f64,
    pub plus_piece: usize,
    pub plus: BoundaryPoint,
    pub minus_piece: usize,
    pub minus: BoundaryPoint,
    /// Arclength quadrature weight.
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct CollocationSet {
    pub points: Vec<CollocationPoint>,
    pub density: f64,
}

impl SurfaceDecomposition {
    pub fn area(&self) -> f64 {
        self.pieces.iter().map(|p| p.area()).sum()
    }

    /// Total length of Σ (each identified pair counted once).
    pub fn interface_length(&self) -> f64 {
        self.interfaces.iter().map(|i| i.length).sum()
    }

    /// Both images of interface parameter `s`.
    pub fn pair(&self, interface: usize, s: f64) -> (BoundaryPoint, BoundaryPoint) {
        let itf = &self.interfaces[interface];
        let sp = match itf.offset {
            Some(off) => (off - s).rem_euclid(itf.length),
            None => s,
        };
        (
            self.pieces[itf.plus.piece].point(itf.plus.kind, s),
            self.pieces[itf.minus.piece].point(itf.minus.kind, sp),
        )
    }

    /// Midpoint-rule samples, `round(length·density)` per smooth segment.
    pub fn collocate(&self, density: f64) -> Result<CollocationSet, GeometryError> {
        if !(density > 0.0 && density.is_finite()) {
            return Err(GeometryError::InvalidDensity);
        }
        let mut points = Vec::new();
        for (idx, itf) in self.interfaces.iter().enumerate() {
            for &(a, b) in &itf.segments {
                let n = ((b - a) * density).round() as usize;
                let h = (b - a) / n.max(1) as f64;
                for j in 0..n {
                    let s = a + (j as f64 + 0.5) * h;
                    let (plus, minus) = self.pair(idx, s);
                    points.push(CollocationPoint {
                        interface: idx,
                        param: s,
                        plus_piece: itf.plus.piece,
                        plus,
                        minus_piece: itf.minus.piece,
                        minus,
                        weight: h,
                    });
                }
            }
        }
        Ok(CollocationSet { points, density })
    }
}
