use alloc::string::String;
use alloc::vec::Vec;

use super::region::{HalfPlane, RateRegion2D};
use super::{lp, Combo, HalfSpaceSystem, Row, FEAS_TOL};
use crate::error::{Error, Result};

const COEF_EPS: f64 = 1e-12;

fn normalized(mut coef: Vec<f64>, mut bound: f64) -> Option<Row> {
    let m = coef.iter().fold(0.0f64, |s, x| s.max(x.abs()));
    if m <= COEF_EPS {
        // 0 <= bound: drop when satisfied, keep as an infeasibility witness otherwise.
        return if bound < -FEAS_TOL { Some(Row { coef: coef.iter().map(|_| 0.0).collect(), bound }) } else { None };
    }
    for x in &mut coef {
        *x /= m;
        if x.abs() <= COEF_EPS {
            *x = 0.0;
        }
    }
    bound /= m;
    Some(Row { coef, bound })
}

fn dedupe(rows: Vec<Row>) -> Vec<Row> {
    let mut out: Vec<Row> = Vec::with_capacity(rows.len());
    'next: for r in rows {
        for o in out.iter_mut() {
            if o.coef.iter().zip(&r.coef).all(|(a, b)| (a - b).abs() <= COEF_EPS) {
                o.bound = o.bound.min(r.bound);
                continue 'next;
            }
        }
        out.push(r);
    }
    out
}

/// Drops rows implied by the remaining ones (LP check).
fn prune(sys: &mut HalfSpaceSystem) {
    let mut i = 0;
    while i < sys.rows.len() {
        let row = sys.rows[i].clone();
        let a: Vec<Vec<f64>> = sys.rows.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.coef.clone()).collect();
        let b: Vec<f64> = sys.rows.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.bound).collect();
        match lp::maximize(&row.coef, &a, &b, &sys.nonneg) {
            Ok(s) if s.value <= row.bound + FEAS_TOL => {
                sys.rows.remove(i);
            }
            Err(Error::Infeasible) => return,
            _ => i += 1,
        }
    }
}

/// Projects out `var`. The result describes exactly the projection of the feasible set.
pub fn fm_eliminate(system: &HalfSpaceSystem, var: &str) -> Result<HalfSpaceSystem> {
    let k = system.index(var)?;
    let mut rows: Vec<Row> = system.rows.clone();
    if system.nonneg[k] {
        let mut coef = alloc::vec![0.0; system.vars.len()];
        coef[k] = -1.0;
        rows.push(Row { coef, bound: 0.0 });
    }

    let drop_k = |c: &[f64]| -> Vec<f64> { c.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect() };
    let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        let a = r.coef[k];
        if a > COEF_EPS {
            pos.push(r);
        } else if a < -COEF_EPS {
            neg.push(r);
        } else if let Some(n) = normalized(drop_k(&r.coef), r.bound) {
            keep.push(n);
        }
    }
    for p in &pos {
        let ap = p.coef[k];
        for n in &neg {
            let an = -n.coef[k];
            let coef: Vec<f64> = p.coef.iter().zip(&n.coef).map(|(x, y)| x / ap + y / an).collect();
            if let Some(r) = normalized(drop_k(&coef), p.bound / ap + n.bound / an) {
                keep.push(r);
            }
        }
    }

    let mut out = HalfSpaceSystem {
        vars: system.vars.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, v)| v.clone()).collect(),
        nonneg: system.nonneg.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect(),
        rows: dedupe(keep),
    };
    prune(&mut out);
    Ok(out)
}

/// Eliminates `names`, cheapest first (fewest generated rows).
pub fn eliminate_all(system: &HalfSpaceSystem, names: &[&str]) -> Result<HalfSpaceSystem> {
    let mut sys = system.clone();
    let mut left: Vec<String> = names.iter().map(|s| String::from(*s)).collect();
    while !left.is_empty() {
        let mut best = 0;
        let mut best_cost = usize::MAX;
        for (i, name) in left.iter().enumerate() {
            let k = sys.index(name)?;
            let p = sys.rows.iter().filter(|r| r.coef[k] > COEF_EPS).count() + usize::from(sys.nonneg[k]);
            let n = sys.rows.iter().filter(|r| r.coef[k] < -COEF_EPS).count();
            let cost = p * n;
            if cost < best_cost {
                best_cost = cost;
                best = i;
            }
        }
        let name = left.remove(best);
        sys = fm_eliminate(&sys, &name)?;
    }
    Ok(sys)
}

fn lifted(system: &HalfSpaceSystem, r1_combo: Combo<'_>, r2_combo: Combo<'_>) -> Result<HalfSpaceSystem> {
    let d1 = system.dense(r1_combo)?;
    let d2 = system.dense(r2_combo)?;
    let mut sys = system.clone();
    let i1 = sys.add_var("R1", true);
    let i2 = sys.add_var("R2", true);
    for (d, i) in [(d1, i1), (d2, i2)] {
        let mut c: Vec<f64> = d.clone();
        c.extend([0.0, 0.0]);
        c[i] = -1.0;
        let neg: Vec<f64> = c.iter().map(|x| -x).collect();
        sys.push_row(c, 0.0);
        sys.push_row(neg, 0.0);
    }
    Ok(sys)
}

/// Region of `(R1, R2)` with `R1 = r1_combo . x`, `R2 = r2_combo . x`, `x` feasible.
pub fn project_to_rate_plane(system: &HalfSpaceSystem, r1_combo: Combo<'_>, r2_combo: Combo<'_>) -> Result<RateRegion2D> {
    let sys = lifted(system, r1_combo, r2_combo)?;
    let names: Vec<&str> = system.vars.iter().map(|s| s.as_str()).collect();
    let plane = eliminate_all(&sys, &names)?;
    let hp: Vec<HalfPlane> = plane.rows.iter().map(|r| HalfPlane::new(r.coef[0], r.coef[1], r.bound)).collect();
    RateRegion2D::from_halfplanes(&hp)
}

/// Same region as [`project_to_rate_plane`], rebuilt from LP support queries.
///
/// Each edge of the current inner approximation is tested against the support
/// value in its outward normal; edges that are not facets get split at the
/// maximizer. Needs a few LPs per vertex and no elimination.
pub fn project_by_support(system: &HalfSpaceSystem, r1_combo: Combo<'_>, r2_combo: Combo<'_>) -> Result<RateRegion2D> {
    let d1 = system.dense(r1_combo)?;
    let d2 = system.dense(r2_combo)?;
    let query = |al: f64, be: f64| -> Result<[f64; 2]> {
        let c: Vec<f64> = d1.iter().zip(&d2).map(|(x, y)| al * x + be * y).collect();
        let s = system.maximize_dense(&c).map_err(|e| if e == Error::Unbounded { Error::RegionUnbounded } else { e })?;
        let p1: f64 = d1.iter().zip(&s.x).map(|(a, b)| a * b).sum();
        let p2: f64 = d2.iter().zip(&s.x).map(|(a, b)| a * b).sum();
        Ok([p1, p2])
    };
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for (al, be) in [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)] {
        pts.push(query(al, be)?);
    }
    // Clip to the quadrant like the elimination path does.
    let quad = |p: [f64; 2]| [p[0].max(0.0), p[1].max(0.0)];
    let mut hull = RateRegion2D::from_vertices(&pts.iter().map(|&p| quad(p)).collect::<Vec<_>>())?;
    for _ in 0..64 {
        let v = hull.vertices().to_vec();
        if v.len() < 3 {
            // Segment or point: probe both normals of the segment.
            let mut added = false;
            if v.len() == 2 {
                let (dx, dy) = (v[1][0] - v[0][0], v[1][1] - v[0][1]);
                for (al, be) in [(dy, -dx), (-dy, dx)] {
                    let p = quad(query(al, be)?);
                    if al * (p[0] - v[0][0]) + be * (p[1] - v[0][1]) > FEAS_TOL {
                        pts.push(p);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        } else {
            let mut added = false;
            for i in 0..v.len() {
                let (p, q) = (v[i], v[(i + 1) % v.len()]);
                let (al, be) = (q[1] - p[1], p[0] - q[0]);
                let r = quad(query(al, be)?);
                let norm = al.abs().max(be.abs());
                if (al * (r[0] - p[0]) + be * (r[1] - p[1])) / norm > FEAS_TOL {
                    pts.push(r);
                    added = true;
                }
            }
            if !added {
                break;
            }
        }
        hull = RateRegion2D::from_vertices(&pts.iter().map(|&p| quad(p)).collect::<Vec<_>>())?;
    }
    Ok(hull)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pair() {
        let mut s = HalfSpaceSystem::new(&["x", "y"]);
        s.push(&[("y", 1.0)], 2.0).unwrap();
        s.push(&[("x", 1.0), ("y", -1.0)], 0.0).unwrap();
        let e = fm_eliminate(&s, "y").unwrap();
        assert_eq!(e.vars(), ["x"]);
        assert_eq!(e.rows().len(), 1);
        assert!((e.rows()[0].coef[0] - 1.0).abs() < 1e-12 && (e.rows()[0].bound - 2.0).abs() < 1e-12);
    }

    #[test]
    fn combine_pair() {
        let mut s = HalfSpaceSystem::new(&["x", "y"]);
        s.push(&[("x", 1.0), ("y", 1.0)], 4.0).unwrap();
        s.push(&[("x", 1.0), ("y", -1.0)], 0.0).unwrap();
        let e = fm_eliminate(&s, "y").unwrap();
        assert_eq!(e.rows().len(), 1);
        assert!((e.rows()[0].bound - 2.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_projection_is_an_error() {
        let mut s = HalfSpaceSystem::new(&["x", "y"]);
        s.push(&[("x", 1.0)], 1.0).unwrap();
        assert_eq!(project_to_rate_plane(&s, &[("x", 1.0)], &[("y", 1.0)]), Err(Error::RegionUnbounded));
        assert_eq!(project_by_support(&s, &[("x", 1.0)], &[("y", 1.0)]), Err(Error::RegionUnbounded));
    }
}
