//! Grid scans with golden-section refinement.
//!
//! The objectives here are minima of concave pieces and so have kinks; golden
//! section is only ever run inside the grid cells around the best grid point.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchSpec {
    pub lo: f64,
    pub hi: f64,
    pub grid_step: f64,
    pub tol: f64,
}

impl SearchSpec {
    pub fn new(lo: f64, hi: f64, grid_step: f64, tol: f64) -> Self {
        SearchSpec { lo, hi, grid_step, tol }
    }

    fn check(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi) {
            return Err(Error::Domain { what: "search interval", value: self.hi - self.lo });
        }
        if !(self.grid_step > 0.0 && self.grid_step.is_finite()) {
            return Err(Error::Domain { what: "grid_step", value: self.grid_step });
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Domain { what: "tol", value: self.tol });
        }
        Ok(())
    }
}

fn eval(f: &impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { x })
    }
}

fn golden(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(f, x1)?;
    let mut f2 = eval(f, x2)?;
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(f, x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(f, x2)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// Maximizes `f` on `[lo, hi]`; see [`maximize_1d_with`].
pub fn maximize_1d(f: impl Fn(f64) -> f64, spec: &SearchSpec) -> Result<(f64, f64)> {
    maximize_1d_with(f, spec, &[])
}

/// Grid scan plus golden refinement in the cells next to the best point.
///
/// Points in `extra` (clipped to the interval) are evaluated alongside the
/// grid, for known kink locations. Ties keep the smallest `x`.
pub fn maximize_1d_with(f: impl Fn(f64) -> f64, spec: &SearchSpec, extra: &[f64]) -> Result<(f64, f64)> {
    spec.check()?;
    let n = libm::ceil((spec.hi - spec.lo) / spec.grid_step) as usize;
    let mut best = (spec.lo, eval(&f, spec.lo)?);
    for i in 1..=n {
        let x = (spec.lo + i as f64 * spec.grid_step).min(spec.hi);
        let v = eval(&f, x)?;
        if v > best.1 {
            best = (x, v);
        }
    }
    for &x in extra {
        if x.is_finite() && x >= spec.lo && x <= spec.hi {
            let v = eval(&f, x)?;
            if v > best.1 {
                best = (x, v);
            }
        }
    }
    let a = (best.0 - spec.grid_step).max(spec.lo);
    let b = (best.0 + spec.grid_step).min(spec.hi);
    if b > a {
        let g = golden(&f, a, b, spec.tol)?;
        if g.1 > best.1 {
            best = g;
        }
    }
    Ok(best)
}

fn compositions(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    if k == 1 {
        prefix.push(n);
        out(prefix)?;
        prefix.pop();
        return Ok(());
    }
    for i in 0..=n {
        prefix.push(i);
        compositions(n - i, k - 1, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Maximizes `f(w)` over `w >= 0`, `sum w = total`, `w` of length `k` in 2..=4.
///
/// Scans the lattice of step `spec.grid_step` (rounded to divide `total`),
/// then moves mass between coordinate pairs with golden section, halving the
/// move radius until it falls below `spec.tol`.
pub fn search_simplex(f: impl Fn(&[f64]) -> f64, k: usize, total: f64, spec: &SearchSpec) -> Result<(Vec<f64>, f64)> {
    if !(2..=4).contains(&k) {
        return Err(Error::Domain { what: "simplex dimension", value: k as f64 });
    }
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::Domain { what: "simplex total", value: total });
    }
    SearchSpec::new(0.0, total, spec.grid_step, spec.tol).check()?;
    let fv = |w: &[f64]| -> Result<f64> {
        let v = f(w);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x: w[0] })
        }
    };

    let n = (libm::round(total / spec.grid_step) as usize).max(1);
    let h0 = total / n as f64;
    let mut best_w = vec![0.0; k];
    let mut best_v = f64::NEG_INFINITY;
    let mut w = vec![0.0; k];
    compositions(n, k, &mut Vec::with_capacity(k), &mut |c: &[usize]| {
        for (wi, &ci) in w.iter_mut().zip(c) {
            *wi = ci as f64 * h0;
        }
        let v = fv(&w)?;
        if v > best_v {
            best_v = v;
            best_w.copy_from_slice(&w);
        }
        Ok(())
    })?;

    let mut h = h0;
    let mut rounds = 0;
    while h >= spec.tol && rounds < 400 {
        rounds += 1;
        let mut improved = false;
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let lo = -best_w[i].min(h);
                let hi = best_w[j].min(h);
                if hi - lo <= spec.tol {
                    continue;
                }
                let base = best_w.clone();
                let g = |t: f64| {
                    let mut x = base.clone();
                    x[i] = (x[i] + t).max(0.0);
                    x[j] = (x[j] - t).max(0.0);
                    f(&x)
                };
                let (t, v) = golden(&g, lo, hi, spec.tol)?;
                if v > best_v + 1e-15 {
                    best_w[i] = (best_w[i] + t).max(0.0);
                    best_w[j] = (best_w[j] - t).max(0.0);
                    best_v = fv(&best_w)?;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    Ok((best_w, best_v))
}
