use alloc::vec;
use alloc::vec::Vec;

use super::{lp, FEAS_TOL};
use crate::error::{Error, Result};

/// `alpha * R1 + beta * R2 <= gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HalfPlane {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl HalfPlane {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        HalfPlane { alpha, beta, gamma }
    }

    /// Scaled so that `max(|alpha|, |beta|) = 1`.
    pub fn normalized(self) -> Self {
        let m = self.alpha.abs().max(self.beta.abs());
        if m == 0.0 {
            self
        } else {
            HalfPlane::new(self.alpha / m, self.beta / m, self.gamma / m)
        }
    }

    pub fn slack(&self, p: [f64; 2]) -> f64 {
        self.gamma - self.alpha * p[0] - self.beta * p[1]
    }
}

/// Bounded convex region of the rate plane.
///
/// Vertices are counterclockwise starting from the lexicographically smallest
/// one. Half-planes are the facets of that polygon; a segment is stored as its
/// line (both sides) plus two end caps, a point as a degenerate box.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RateRegion2D {
    halfplanes: Vec<HalfPlane>,
    vertices: Vec<[f64; 2]>,
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist_inf(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs())
}

/// Convex hull, counterclockwise, collinear points dropped.
fn hull(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = Vec::with_capacity(points.len());
    for &p in points {
        if !pts.iter().any(|&q| dist_inf(p, q) <= FEAS_TOL) {
            pts.push(p);
        }
    }
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        let len = dist_inf(o, b).max(1.0);
        cross(o, a, b) <= 1e-12 * len
    };
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn facets(v: &[[f64; 2]]) -> Vec<HalfPlane> {
    match v.len() {
        0 => Vec::new(),
        1 => {
            let [x, y] = v[0];
            vec![HalfPlane::new(1.0, 0.0, x), HalfPlane::new(-1.0, 0.0, -x), HalfPlane::new(0.0, 1.0, y), HalfPlane::new(0.0, -1.0, -y)]
        }
        2 => {
            let (p, q) = (v[0], v[1]);
            let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
            let line = HalfPlane::new(dy, -dx, dy * p[0] - dx * p[1]).normalized();
            let cap_q = HalfPlane::new(dx, dy, dx * q[0] + dy * q[1]).normalized();
            let cap_p = HalfPlane::new(-dx, -dy, -dx * p[0] - dy * p[1]).normalized();
            vec![line, HalfPlane::new(-line.alpha, -line.beta, -line.gamma), cap_q, cap_p]
        }
        n => (0..n)
            .map(|i| {
                let (p, q) = (v[i], v[(i + 1) % n]);
                let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
                HalfPlane::new(dy, -dx, dy * p[0] - dx * p[1]).normalized()
            })
            .collect(),
    }
}

impl RateRegion2D {
    /// Intersection of `hp` with the nonnegative quadrant.
    pub fn from_halfplanes(hp: &[HalfPlane]) -> Result<Self> {
        let mut all: Vec<HalfPlane> = hp.iter().map(|h| h.normalized()).collect();
        all.push(HalfPlane::new(-1.0, 0.0, 0.0));
        all.push(HalfPlane::new(0.0, -1.0, 0.0));

        let a: Vec<Vec<f64>> = all.iter().map(|h| vec![h.alpha, h.beta]).collect();
        let b: Vec<f64> = all.iter().map(|h| h.gamma).collect();
        for c in [[1.0, 0.0], [0.0, 1.0]] {
            match lp::maximize(&c, &a, &b, &[false, false]) {
                Ok(_) => {}
                Err(Error::Unbounded) => return Err(Error::RegionUnbounded),
                Err(e) => return Err(e),
            }
        }

        let mut pts = Vec::new();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let (h, g) = (all[i], all[j]);
                let det = h.alpha * g.beta - h.beta * g.alpha;
                if det.abs() < 1e-14 {
                    continue;
                }
                let p = [(h.gamma * g.beta - h.beta * g.gamma) / det, (h.alpha * g.gamma - h.gamma * g.alpha) / det];
                if all.iter().all(|k| k.slack(p) >= -FEAS_TOL) {
                    pts.push(p);
                }
            }
        }
        if pts.is_empty() {
            return Err(Error::Infeasible);
        }
        Self::from_vertices(&pts)
    }

    /// Convex hull of `points`.
    pub fn from_vertices(points: &[[f64; 2]]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let vertices = hull(points);
        Ok(RateRegion2D { halfplanes: facets(&vertices), vertices })
    }

    /// `[0, r1] x [0, r2]`.
    pub fn rectangle(r1: f64, r2: f64) -> Self {
        Self::from_vertices(&[[0.0, 0.0], [r1, 0.0], [r1, r2], [0.0, r2]]).expect("nonempty")
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn halfplanes(&self) -> &[HalfPlane] {
        &self.halfplanes
    }

    /// `max alpha * R1 + beta * R2` over the region.
    pub fn support(&self, alpha: f64, beta: f64) -> f64 {
        self.vertices.iter().map(|v| alpha * v[0] + beta * v[1]).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn sum_rate(&self) -> f64 {
        self.support(1.0, 1.0)
    }

    pub fn max_r1(&self) -> f64 {
        self.support(1.0, 0.0)
    }

    pub fn max_r2(&self) -> f64 {
        self.support(0.0, 1.0)
    }

    pub fn contains(&self, p: [f64; 2], tol: f64) -> bool {
        self.halfplanes.iter().all(|h| h.slack(p) >= -tol)
    }

    pub fn minkowski_sum(&self, other: &RateRegion2D) -> Self {
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push([a[0] + b[0], a[1] + b[1]]);
            }
        }
        Self::from_vertices(&pts).expect("nonempty")
    }

    pub fn translated(&self, d1: f64, d2: f64) -> Self {
        self.minkowski_sum(&Self::from_vertices(&[[d1, d2]]).expect("nonempty"))
    }

    /// Mirror image across `R1 = R2`.
    pub fn mirrored(&self) -> Self {
        let pts: Vec<[f64; 2]> = self.vertices.iter().map(|v| [v[1], v[0]]).collect();
        Self::from_vertices(&pts).expect("nonempty")
    }

    /// Symmetric sup-norm distance between the two vertex sets.
    pub fn vertex_distance(&self, other: &RateRegion2D) -> f64 {
        let one_way = |a: &[[f64; 2]], b: &[[f64; 2]]| {
            a.iter().map(|p| b.iter().map(|q| dist_inf(*p, *q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
        };
        one_way(&self.vertices, &other.vertices).max(one_way(&other.vertices, &self.vertices))
    }
}

/// Convex hull of the union of `regions`.
pub fn hull_union(regions: &[RateRegion2D]) -> Result<RateRegion2D> {
    let pts: Vec<[f64; 2]> = regions.iter().flat_map(|r| r.vertices.iter().copied()).collect();
    RateRegion2D::from_vertices(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_from_halfplanes() {
        let r = RateRegion2D::from_halfplanes(&[HalfPlane::new(1.0, 0.0, 2.0), HalfPlane::new(0.0, 1.0, 3.0)]).unwrap();
        assert_eq!(r.vertices(), &[[0.0, 0.0], [2.0, 0.0], [2.0, 3.0], [0.0, 3.0]]);
        assert_eq!(r.sum_rate(), 5.0);
    }

    #[test]
    fn sum_face_is_unit_normalized() {
        let r = RateRegion2D::from_halfplanes(&[
            HalfPlane::new(1.0, 0.0, 2.0),
            HalfPlane::new(0.0, 1.0, 2.0),
            HalfPlane::new(2.0, 2.0, 6.0),
        ])
        .unwrap();
        assert_eq!(r.vertices().len(), 5);
        assert!(r.halfplanes().iter().any(|h| h.alpha == 1.0 && h.beta == 1.0 && (h.gamma - 3.0).abs() < 1e-12));
    }

    #[test]
    fn degenerate_shapes() {
        let seg = RateRegion2D::from_halfplanes(&[HalfPlane::new(1.0, 0.0, 1.5), HalfPlane::new(0.0, 1.0, 0.0)]).unwrap();
        assert_eq!(seg.vertices(), &[[0.0, 0.0], [1.5, 0.0]]);
        assert!(seg.contains([0.7, 0.0], 1e-12) && !seg.contains([0.7, 0.1], 1e-12));
        let pt = RateRegion2D::from_halfplanes(&[HalfPlane::new(1.0, 1.0, 0.0)]).unwrap();
        assert_eq!(pt.vertices(), &[[0.0, 0.0]]);
    }

    #[test]
    fn triangles_hull() {
        let a = RateRegion2D::from_vertices(&[[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]]).unwrap();
        let b = RateRegion2D::from_vertices(&[[0.0, 0.0], [1.0, 0.0], [0.0, 2.0]]).unwrap();
        let h = hull_union(&[a, b]).unwrap();
        assert_eq!(h.vertices(), &[[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]);
        for i in 0..=50 {
            for j in 0..=50 {
                let p = [i as f64 * 0.05, j as f64 * 0.05];
                assert_eq!(h.contains(p, 1e-12), p[0] + p[1] <= 2.0 + 1e-12);
            }
        }
    }

    #[test]
    fn rectangle_minkowski() {
        let r = RateRegion2D::rectangle(1.0, 1.0).minkowski_sum(&RateRegion2D::rectangle(0.5, 0.25));
        assert_eq!(r.vertices(), &[[0.0, 0.0], [1.5, 0.0], [1.5, 1.25], [0.0, 1.25]]);
    }
}
