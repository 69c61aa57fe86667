//! Small dense linear programs: maximize `c.x` subject to `A x <= b`.
//!
//! Two-phase tableau simplex with Bland's rule. Free variables are split into
//! a difference of two nonnegative columns; rows with a negative right-hand
//! side get an artificial column for phase one.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-10;
const MAX_PIVOTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
}

struct Tableau {
    width: usize,
    t: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.width + j]
    }

    fn rows(&self) -> usize {
        self.basis.len()
    }

    fn pivot(&mut self, obj: &mut [f64], r: usize, col: usize) {
        let w = self.width;
        let p = self.at(r, col);
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        for i in 0..self.rows() {
            if i == r {
                continue;
            }
            let f = self.at(i, col);
            if f != 0.0 {
                for j in 0..w {
                    self.t[i * w + j] -= f * self.t[r * w + j];
                }
            }
        }
        let f = obj[col];
        if f != 0.0 {
            for j in 0..w {
                obj[j] -= f * self.t[r * w + j];
            }
        }
        self.basis[r] = col;
    }

    /// Runs simplex on `obj` (stored as `-c`, value in the last slot) over columns `< allowed`.
    fn run(&mut self, obj: &mut [f64], allowed: usize) -> Result<()> {
        let rhs = self.width - 1;
        for _ in 0..MAX_PIVOTS {
            let Some(col) = (0..allowed).find(|&j| obj[j] < -PIVOT_EPS) else {
                return Ok(());
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.rows() {
                let a = self.at(i, col);
                if a > PIVOT_EPS {
                    let ratio = self.at(i, rhs).max(0.0) / a;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - 1e-12 || (ratio <= br + 1e-12 && self.basis[i] < self.basis[bi]) {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match best {
                None => return Err(Error::Unbounded),
                Some((r, _)) => self.pivot(obj, r, col),
            }
        }
        Err(Error::Infeasible)
    }
}

/// Maximizes `c.x` over `{x : a[i].x <= b[i]}` with `x[j] >= 0` where `nonneg[j]`.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64], nonneg: &[bool]) -> Result<LpSolution> {
    let n = c.len();
    let m = a.len();
    debug_assert_eq!(b.len(), m);
    debug_assert_eq!(nonneg.len(), n);

    let mut col_of = Vec::with_capacity(n);
    let mut nc = 0;
    for &nn in nonneg {
        col_of.push(nc);
        nc += if nn { 1 } else { 2 };
    }
    let n_art = b.iter().filter(|&&x| x < 0.0).count();
    let width = nc + m + n_art + 1;
    let rhs = width - 1;
    let mut tab = Tableau { width, t: vec![0.0; m * width], basis: vec![0; m] };

    let mut art = nc + m;
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            let v = sign * a[i][j];
            tab.t[i * width + col_of[j]] = v;
            if !nonneg[j] {
                tab.t[i * width + col_of[j] + 1] = -v;
            }
        }
        tab.t[i * width + nc + i] = sign;
        tab.t[i * width + rhs] = sign * b[i];
        if b[i] < 0.0 {
            tab.t[i * width + art] = 1.0;
            tab.basis[i] = art;
            art += 1;
        } else {
            tab.basis[i] = nc + i;
        }
    }

    if n_art > 0 {
        let mut obj = vec![0.0; width];
        for j in nc + m..nc + m + n_art {
            obj[j] = 1.0;
        }
        for i in 0..m {
            if tab.basis[i] >= nc + m {
                for j in 0..width {
                    obj[j] -= tab.at(i, j);
                }
            }
        }
        tab.run(&mut obj, width - 1)?;
        let scale = b.iter().fold(1.0f64, |s, x| s.max(x.abs()));
        if obj[rhs] < -1e-9 * scale {
            return Err(Error::Infeasible);
        }
        for i in 0..m {
            if tab.basis[i] >= nc + m {
                if let Some(j) = (0..nc + m).find(|&j| tab.at(i, j).abs() > 1e-9) {
                    let mut dummy = vec![0.0; width];
                    tab.pivot(&mut dummy, i, j);
                }
            }
        }
    }

    let mut obj = vec![0.0; width];
    for j in 0..n {
        obj[col_of[j]] = -c[j];
        if !nonneg[j] {
            obj[col_of[j] + 1] = c[j];
        }
    }
    for i in 0..m {
        let f = obj[tab.basis[i]];
        if f != 0.0 {
            for j in 0..width {
                obj[j] -= f * tab.at(i, j);
            }
        }
    }
    tab.run(&mut obj, nc + m)?;

    let mut cols = vec![0.0; nc];
    for i in 0..m {
        if tab.basis[i] < nc {
            cols[tab.basis[i]] = tab.at(i, rhs);
        }
    }
    let x: Vec<f64> = (0..n)
        .map(|j| if nonneg[j] { cols[col_of[j]] } else { cols[col_of[j]] - cols[col_of[j] + 1] })
        .collect();
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok(LpSolution { value, x })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_sum() {
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let s = maximize(&[1.0, 1.0], &a, &[2.0, 3.0], &[true, true]).unwrap();
        assert!((s.value - 5.0).abs() < 1e-12);
    }

    #[test]
    fn needs_phase_one() {
        // x >= 1 written as -x <= -1, maximize -x.
        let a = vec![vec![-1.0], vec![1.0]];
        let s = maximize(&[-1.0], &a, &[-1.0, 4.0], &[true]).unwrap();
        assert!((s.value + 1.0).abs() < 1e-12);
        assert!((s.x[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn free_variable() {
        let a = vec![vec![1.0], vec![-1.0]];
        let s = maximize(&[-1.0], &a, &[5.0, 3.0], &[false]).unwrap();
        assert!((s.x[0] + 3.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![vec![1.0], vec![-1.0]];
        assert_eq!(maximize(&[1.0], &a, &[1.0, -2.0], &[true]), Err(Error::Infeasible));
        let a = vec![vec![1.0, -1.0]];
        assert_eq!(maximize(&[1.0, 0.0], &a, &[1.0], &[true, true]), Err(Error::Unbounded));
    }

    #[test]
    fn degenerate_vertex() {
        // Several constraints active at the optimum.
        let a = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0], vec![2.0, 1.0], vec![1.0, 2.0]];
        let s = maximize(&[1.0, 1.0], &a, &[1.0, 1.0, 2.0, 3.0, 3.0], &[true, true]).unwrap();
        assert!((s.value - 2.0).abs() < 1e-12);
    }
}
