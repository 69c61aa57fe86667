//! Linear systems over named rate variables, their projections and 2-D regions.

mod fm;
pub mod lp;
mod region;

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use fm::{eliminate_all, fm_eliminate, project_by_support, project_to_rate_plane};
pub use region::{hull_union, HalfPlane, RateRegion2D};

/// Tolerance for feasibility of vertices and redundancy of rows.
pub const FEAS_TOL: f64 = 1e-9;

/// A sparse linear form: `(variable name, coefficient)` pairs.
pub type Combo<'a> = &'a [(&'a str, f64)];

/// One inequality `coef . x <= bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coef: Vec<f64>,
    pub bound: f64,
}

/// A finite set of linear inequalities with optional nonnegativity per variable.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HalfSpaceSystem {
    vars: Vec<String>,
    nonneg: Vec<bool>,
    rows: Vec<Row>,
}

impl HalfSpaceSystem {
    /// System over `names`, all nonnegative, with no rows.
    pub fn new(names: &[&str]) -> Self {
        HalfSpaceSystem {
            vars: names.iter().map(|s| s.to_string()).collect(),
            nonneg: vec![true; names.len()],
            rows: Vec::new(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nonneg(&self) -> &[bool] {
        &self.nonneg
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn set_nonneg(&mut self, name: &str, flag: bool) -> Result<()> {
        let i = self.index(name)?;
        self.nonneg[i] = flag;
        Ok(())
    }

    pub fn add_var(&mut self, name: &str, nonneg: bool) -> usize {
        self.vars.push(name.to_string());
        self.nonneg.push(nonneg);
        for r in &mut self.rows {
            r.coef.push(0.0);
        }
        self.vars.len() - 1
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn dense(&self, combo: Combo<'_>) -> Result<Vec<f64>> {
        let mut v = vec![0.0; self.vars.len()];
        for &(name, k) in combo {
            v[self.index(name)?] += k;
        }
        Ok(v)
    }

    /// Adds `combo <= bound`.
    pub fn push(&mut self, combo: Combo<'_>, bound: f64) -> Result<()> {
        let coef = self.dense(combo)?;
        self.push_row(coef, bound);
        Ok(())
    }

    pub fn push_row(&mut self, coef: Vec<f64>, bound: f64) {
        assert_eq!(coef.len(), self.vars.len(), "row length must match variable count");
        assert!(bound.is_finite(), "row bound must be finite");
        self.rows.push(Row { coef, bound });
    }

    /// Pins each named variable to zero.
    pub fn with_zero(mut self, names: &[&str]) -> Result<Self> {
        for &n in names {
            self.push(&[(n, 1.0)], 0.0)?;
            self.push(&[(n, -1.0)], 0.0)?;
        }
        Ok(self)
    }

    fn matrix(&self) -> (Vec<Vec<f64>>, Vec<f64>) {
        (self.rows.iter().map(|r| r.coef.clone()).collect(), self.rows.iter().map(|r| r.bound).collect())
    }

    /// Maximizer and value of a dense objective.
    pub fn maximize_dense(&self, c: &[f64]) -> Result<lp::LpSolution> {
        let (a, b) = self.matrix();
        lp::maximize(c, &a, &b, &self.nonneg)
    }

    pub fn maximize(&self, objective: Combo<'_>) -> Result<lp::LpSolution> {
        self.maximize_dense(&self.dense(objective)?)
    }

    pub fn support_value(&self, objective: Combo<'_>) -> Result<f64> {
        Ok(self.maximize(objective)?.value)
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.vars.len()
            && x.iter().zip(&self.nonneg).all(|(v, &nn)| !nn || *v >= -tol)
            && self.rows.iter().all(|r| r.coef.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() <= r.bound + tol)
    }
}

/// Maximum of `objective` over the feasible set of `system`.
pub fn support_value(system: &HalfSpaceSystem, objective: Combo<'_>) -> Result<f64> {
    system.support_value(objective)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_of_box() {
        let mut s = HalfSpaceSystem::new(&["x", "y"]);
        s.push(&[("x", 1.0)], 2.0).unwrap();
        s.push(&[("y", 1.0)], 3.0).unwrap();
        assert!((support_value(&s, &[("x", 1.0), ("y", 1.0)]).unwrap() - 5.0).abs() < 1e-12);
        assert!(matches!(s.push(&[("z", 1.0)], 1.0), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn unbounded_and_infeasible() {
        let mut s = HalfSpaceSystem::new(&["x", "y"]);
        s.push(&[("x", 1.0)], 2.0).unwrap();
        assert_eq!(s.support_value(&[("y", 1.0)]), Err(Error::Unbounded));
        s.push(&[("x", -1.0)], -3.0).unwrap();
        assert_eq!(s.support_value(&[("x", 1.0)]), Err(Error::Infeasible));
    }
}
