//! Channel parameters, validation and the scalar Gaussian capacity.
//!
//! Powers are linear and normalized to unit noise variance. Gains are
//! amplitudes and only get squared inside formulas. Relay-band powers are per
//! relay-band symbol, so a link of bandwidth fraction `eta` carries
//! `eta * cap(gain^2 * power)` bits per IC channel use.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

const SUM_TOL: f64 = 1e-12;

/// `0.5 * log2(1 + x)`, bits per real channel use.
pub fn cap(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain { what: "cap", value: x });
    }
    Ok(c(x))
}

#[inline]
pub(crate) fn c(x: f64) -> f64 {
    debug_assert!(x >= -1e-12, "cap of negative snr {x}");
    0.5 * libm::log2(1.0 + x.max(0.0))
}

pub fn db_to_linear(d: f64) -> Result<f64> {
    if !d.is_finite() {
        return Err(Error::Domain { what: "db_to_linear", value: d });
    }
    Ok(libm::pow(10.0, d / 10.0))
}

pub fn linear_to_db(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain { what: "linear_to_db", value: x });
    }
    Ok(10.0 * libm::log10(x))
}

/// One violated invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Violation {
    pub field: &'static str,
    pub value: f64,
    pub reason: &'static str,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} (observed {})", self.field, self.reason, self.value)
    }
}

pub trait Validate {
    fn violations(&self) -> Vec<Violation>;

    fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }
}

fn check_nonneg(out: &mut Vec<Violation>, field: &'static str, value: f64) {
    if !value.is_finite() {
        out.push(Violation { field, value, reason: "not finite" });
    } else if value < 0.0 {
        out.push(Violation { field, value, reason: "negative" });
    }
}

fn check_sum(out: &mut Vec<Violation>, field: &'static str, sum: f64, total: f64) {
    if sum.is_finite() && total.is_finite() && (sum - total).abs() > SUM_TOL * total.abs().max(1.0) {
        out.push(Violation { field, value: sum, reason: "fractions do not sum to eta_total" });
    }
}

/// Interference channel: cross gains and source powers.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IcParams {
    /// Gain from source 1 to destination 2.
    pub a12: f64,
    /// Gain from source 2 to destination 1.
    pub a21: f64,
    pub p1: f64,
    pub p2: f64,
}

impl IcParams {
    pub fn new(a12: f64, a21: f64, p1: f64, p2: f64) -> Self {
        IcParams { a12, a21, p1, p2 }
    }

    pub fn symmetric(a: f64, p: f64) -> Self {
        Self::new(a, a, p, p)
    }

    /// Exchange the roles of the two pairs.
    pub fn swapped(&self) -> Self {
        Self::new(self.a21, self.a12, self.p2, self.p1)
    }
}

impl Validate for IcParams {
    fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        check_nonneg(&mut v, "a12", self.a12);
        check_nonneg(&mut v, "a21", self.a21);
        check_nonneg(&mut v, "P1", self.p1);
        check_nonneg(&mut v, "P2", self.p2);
        v
    }
}

/// Gains and powers of the four orthogonal relay links, without a bandwidth split.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ObrcGainsI {
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
    pub p1r: f64,
    pub p2r: f64,
    pub pr1: f64,
    pub pr2: f64,
}

impl ObrcGainsI {
    /// Per-unit-bandwidth capacities `[1->R, 2->R, R->1, R->2]`.
    pub fn unit_caps(&self) -> [f64; 4] {
        [
            c(self.b1 * self.b1 * self.p1r),
            c(self.b2 * self.b2 * self.p2r),
            c(self.c1 * self.c1 * self.pr1),
            c(self.c2 * self.c2 * self.pr2),
        ]
    }

    /// Attach bandwidth fractions `[eta1R, eta2R, etaR1, etaR2]`.
    pub fn with_allocation(&self, eta: [f64; 4]) -> ObrcTypeI {
        ObrcTypeI {
            b1: self.b1,
            b2: self.b2,
            c1: self.c1,
            c2: self.c2,
            p1r: self.p1r,
            p2r: self.p2r,
            pr1: self.pr1,
            pr2: self.pr2,
            eta1r: eta[0],
            eta2r: eta[1],
            etar1: eta[2],
            etar2: eta[3],
            eta_total: eta.iter().sum(),
        }
    }

    pub fn swapped(&self) -> Self {
        ObrcGainsI {
            b1: self.b2,
            b2: self.b1,
            c1: self.c2,
            c2: self.c1,
            p1r: self.p2r,
            p2r: self.p1r,
            pr1: self.pr2,
            pr2: self.pr1,
        }
    }
}

/// Type-I relay band: two source-to-relay and two relay-to-destination links.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ObrcTypeI {
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
    pub p1r: f64,
    pub p2r: f64,
    pub pr1: f64,
    pub pr2: f64,
    pub eta1r: f64,
    pub eta2r: f64,
    pub etar1: f64,
    pub etar2: f64,
    pub eta_total: f64,
}

/// Link rates in bits per IC channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinksI {
    pub l1r: f64,
    pub l2r: f64,
    pub lr1: f64,
    pub lr2: f64,
}

impl ObrcTypeI {
    pub fn gains(&self) -> ObrcGainsI {
        ObrcGainsI {
            b1: self.b1,
            b2: self.b2,
            c1: self.c1,
            c2: self.c2,
            p1r: self.p1r,
            p2r: self.p2r,
            pr1: self.pr1,
            pr2: self.pr2,
        }
    }

    pub fn allocation(&self) -> [f64; 4] {
        [self.eta1r, self.eta2r, self.etar1, self.etar2]
    }

    pub fn links(&self) -> LinksI {
        let u = self.gains().unit_caps();
        LinksI {
            l1r: self.eta1r * u[0],
            l2r: self.eta2r * u[1],
            lr1: self.etar1 * u[2],
            lr2: self.etar2 * u[3],
        }
    }

    pub fn swapped(&self) -> Self {
        let a = self.allocation();
        let mut s = self.gains().swapped().with_allocation([a[1], a[0], a[3], a[2]]);
        s.eta_total = self.eta_total;
        s
    }
}

impl Validate for ObrcTypeI {
    fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        for (name, x) in [
            ("b1", self.b1),
            ("b2", self.b2),
            ("c1", self.c1),
            ("c2", self.c2),
            ("P1R", self.p1r),
            ("P2R", self.p2r),
            ("PR1", self.pr1),
            ("PR2", self.pr2),
            ("eta1R", self.eta1r),
            ("eta2R", self.eta2r),
            ("etaR1", self.etar1),
            ("etaR2", self.etar2),
            ("eta_total", self.eta_total),
        ] {
            check_nonneg(&mut v, name, x);
        }
        let sum = self.eta1r + self.eta2r + self.etar1 + self.etar2;
        check_sum(&mut v, "eta1R+eta2R+etaR1+etaR2", sum, self.eta_total);
        v
    }
}

/// Gains and powers of the multiple-access / broadcast relay band, without a bandwidth split.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ObrcGainsII {
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
    pub p1r: f64,
    pub p2r: f64,
    pub pr: f64,
}

impl ObrcGainsII {
    pub fn with_allocation(&self, eta_mac: f64, eta_bc: f64) -> ObrcTypeII {
        ObrcTypeII {
            b1: self.b1,
            b2: self.b2,
            c1: self.c1,
            c2: self.c2,
            p1r: self.p1r,
            p2r: self.p2r,
            pr: self.pr,
            eta_mac,
            eta_bc,
            eta_total: eta_mac + eta_bc,
        }
    }

    pub fn swapped(&self) -> Self {
        ObrcGainsII { b1: self.b2, b2: self.b1, c1: self.c2, c2: self.c1, p1r: self.p2r, p2r: self.p1r, pr: self.pr }
    }
}

/// Type-II relay band: a MAC phase of fraction `eta_mac` and a BC phase of fraction `eta_bc`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ObrcTypeII {
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
    pub p1r: f64,
    pub p2r: f64,
    pub pr: f64,
    pub eta_mac: f64,
    pub eta_bc: f64,
    pub eta_total: f64,
}

impl ObrcTypeII {
    pub fn gains(&self) -> ObrcGainsII {
        ObrcGainsII { b1: self.b1, b2: self.b2, c1: self.c1, c2: self.c2, p1r: self.p1r, p2r: self.p2r, pr: self.pr }
    }

    pub fn swapped(&self) -> Self {
        let mut s = self.gains().swapped().with_allocation(self.eta_mac, self.eta_bc);
        s.eta_total = self.eta_total;
        s
    }
}

impl Validate for ObrcTypeII {
    fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        for (name, x) in [
            ("b1", self.b1),
            ("b2", self.b2),
            ("c1", self.c1),
            ("c2", self.c2),
            ("P1R", self.p1r),
            ("P2R", self.p2r),
            ("PR", self.pr),
            ("etaMAC", self.eta_mac),
            ("etaBC", self.eta_bc),
            ("eta_total", self.eta_total),
        ] {
            check_nonneg(&mut v, name, x);
        }
        check_sum(&mut v, "etaMAC+etaBC", self.eta_mac + self.eta_bc, self.eta_total);
        v
    }
}

/// Private/common power split of the two sources on the IC.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PowerSplit {
    pub p1p: f64,
    pub p1c: f64,
    pub p2p: f64,
    pub p2c: f64,
}

impl PowerSplit {
    pub fn common_only(ic: &IcParams) -> Self {
        PowerSplit { p1p: 0.0, p1c: ic.p1, p2p: 0.0, p2c: ic.p2 }
    }

    pub fn private_only(ic: &IcParams) -> Self {
        PowerSplit { p1p: ic.p1, p1c: 0.0, p2p: ic.p2, p2c: 0.0 }
    }

    /// Noise plus private interference at destination 1.
    pub fn n1(&self, ic: &IcParams) -> f64 {
        ic.a21 * ic.a21 * self.p2p + 1.0
    }

    /// Noise plus private interference at destination 2.
    pub fn n2(&self, ic: &IcParams) -> f64 {
        ic.a12 * ic.a12 * self.p1p + 1.0
    }

    pub fn swapped(&self) -> Self {
        PowerSplit { p1p: self.p2p, p1c: self.p2c, p2p: self.p1p, p2c: self.p1c }
    }

    pub fn violations(&self, ic: &IcParams) -> Vec<Violation> {
        let mut v = Vec::new();
        check_nonneg(&mut v, "P1p", self.p1p);
        check_nonneg(&mut v, "P1c", self.p1c);
        check_nonneg(&mut v, "P2p", self.p2p);
        check_nonneg(&mut v, "P2c", self.p2c);
        let t1 = self.p1p + self.p1c;
        if t1 > ic.p1 + SUM_TOL * ic.p1.max(1.0) {
            v.push(Violation { field: "P1p+P1c", value: t1, reason: "power budget exceeded" });
        }
        let t2 = self.p2p + self.p2c;
        if t2 > ic.p2 + SUM_TOL * ic.p2.max(1.0) {
            v.push(Violation { field: "P2p+P2c", value: t2, reason: "power budget exceeded" });
        }
        v
    }

    pub fn validate(&self, ic: &IcParams) -> Result<()> {
        let v = self.violations(ic);
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_values() {
        assert_eq!(cap(0.0).unwrap(), 0.0);
        assert_eq!(cap(3.0).unwrap(), 1.0);
        assert_eq!(cap(63.0).unwrap(), 3.0);
        assert!((cap(10.0).unwrap() - 1.729_715_809_3).abs() < 1e-9);
        assert!(cap(-1.0).is_err());
        assert!(cap(f64::NAN).is_err());
        assert!(cap(f64::INFINITY).is_err());
    }

    #[test]
    fn db_conversions() {
        assert_eq!(db_to_linear(10.0).unwrap(), 10.0);
        assert_eq!(db_to_linear(0.0).unwrap(), 1.0);
        assert!((db_to_linear(3.0).unwrap() - 1.995_262_315).abs() < 1e-9);
        assert!(db_to_linear(f64::NAN).is_err());
        assert!(linear_to_db(0.0).is_err());
    }

    #[test]
    fn violations_name_field() {
        let g = ObrcGainsI { b1: 1.0, b2: 1.0, c1: 1.0, c2: 1.0, p1r: 1.0, p2r: 1.0, pr1: 1.0, pr2: 1.0 };
        assert!(g.with_allocation([0.25; 4]).validate().is_ok());
        let mut o = g.with_allocation([0.25; 4]);
        o.eta1r = -0.1;
        let v = o.violations();
        assert!(v.iter().any(|x| x.field == "eta1R" && x.reason == "negative"));
        let ic = IcParams::symmetric(1.0, 10.0);
        let s = PowerSplit { p1p: 5.0, p1c: 5.5, p2p: 0.0, p2c: 10.0 };
        let v = s.violations(&ic);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].reason, "power budget exceeded");
    }
}
