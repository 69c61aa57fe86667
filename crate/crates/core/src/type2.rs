//! Relay band made of a multiple-access phase into the relay and a broadcast
//! phase out of it.
//!
//! Source 1 signals privately on the IC and source 2 sends common messages,
//! which suits weak interference at destination 2 and strong interference at
//! destination 1. The relay splits its broadcast power into a share `xi` for
//! destination 1 and `xibar` for destination 2; destination 2's content is
//! superposed on top of destination 1's.

use alloc::vec::Vec;

use crate::channel::{c, IcParams, ObrcGainsII, ObrcTypeII, Validate};
use crate::error::{Error, Result};
use crate::optimize::{maximize_1d_with, SearchSpec};
use crate::polytope::{project_to_rate_plane, HalfPlane, HalfSpaceSystem, RateRegion2D};

/// Grid and tolerance for the relay power share.
pub const XI_SPEC: SearchSpec = SearchSpec { lo: 0.0, hi: 1.0, grid_step: 1e-3, tol: 1e-8 };

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RelayPowerSplit {
    pub xi: f64,
    pub xibar: f64,
}

impl RelayPowerSplit {
    /// `xibar = 1 - xi`.
    pub fn full(xi: f64) -> Self {
        RelayPowerSplit { xi, xibar: 1.0 - xi }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.xi.is_finite() && self.xibar.is_finite() && self.xi >= 0.0 && self.xibar >= 0.0 && self.xi + self.xibar <= 1.0 + 1e-12;
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(alloc::vec![crate::channel::Violation {
                field: "xi+xibar",
                value: self.xi + self.xibar,
                reason: "outside the unit simplex",
            }]))
        }
    }

    fn is_full(&self) -> bool {
        (self.xi + self.xibar - 1.0).abs() <= 1e-12
    }
}

/// Compression noise at the relay.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CfNoise {
    pub sigma2: f64,
}

/// Rate terms shared by all Type-II constructions.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TermsII {
    /// `cap(P1)`: private rate of pair 1 on the IC.
    pub a: f64,
    /// `cap(P2 / (1 + a12^2 P1))`: common rate of pair 2 at destination 2.
    pub bc: f64,
    /// `cap(P1 + a21^2 P2)`: joint decoding at destination 1.
    pub s: f64,
    pub m1: f64,
    pub m2: f64,
    pub ms: f64,
    pub b1: f64,
    pub b2: f64,
}

pub fn terms(ic: &IcParams, obrc: &ObrcTypeII, split: &RelayPowerSplit) -> TermsII {
    let (s1, s2) = (obrc.b1 * obrc.b1 * obrc.p1r, obrc.b2 * obrc.b2 * obrc.p2r);
    let (g1, g2) = (obrc.c1 * obrc.c1 * obrc.pr, obrc.c2 * obrc.c2 * obrc.pr);
    TermsII {
        a: c(ic.p1),
        bc: c(ic.p2 / (1.0 + ic.a12 * ic.a12 * ic.p1)),
        s: c(ic.p1 + ic.a21 * ic.a21 * ic.p2),
        m1: obrc.eta_mac * c(s1),
        m2: obrc.eta_mac * c(s2),
        ms: obrc.eta_mac * c(s1 + s2),
        b1: obrc.eta_bc * c(g1 * split.xi),
        b2: obrc.eta_bc * c(g2 * split.xibar / (1.0 + g2 * split.xi)),
    }
}

fn check(ic: &IcParams, obrc: &ObrcTypeII) -> Result<()> {
    ic.validate()?;
    obrc.validate()
}

/// Values of `xi` where a term of the objectives crosses a constant.
fn xi_kinks(obrc: &ObrcTypeII, t: &TermsII) -> Vec<f64> {
    let (g1, g2) = (obrc.c1 * obrc.c1 * obrc.pr, obrc.c2 * obrc.c2 * obrc.pr);
    let mut out = Vec::new();
    if obrc.eta_bc > 0.0 {
        let inv = |r: f64| libm::exp2(2.0 * r / obrc.eta_bc);
        if g1 > 0.0 {
            out.push((inv(t.m1) - 1.0) / g1);
        }
        if g2 > 0.0 {
            for r in [t.m2, t.ms] {
                out.push(((1.0 + g2) / inv(r) - 1.0) / g2);
            }
        }
    }
    out
}

/// Outer-bound objective at a given `xi`.
pub fn outer_objective(t: &TermsII) -> f64 {
    t.a + t.bc + t.m1.min(t.b1) + t.ms.min(t.b2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OuterII {
    pub value: f64,
    pub xi_star: f64,
    /// Set outside `a12 < 1`, `c1 >= c2`.
    pub heuristic: bool,
}

/// Sum-rate outer bound, maximized over the relay power share.
pub fn outer_sumrate_t2(ic: &IcParams, obrc: &ObrcTypeII) -> Result<OuterII> {
    check(ic, obrc)?;
    let kinks = xi_kinks(obrc, &terms(ic, obrc, &RelayPowerSplit::full(1.0)));
    let (xi_star, value) = maximize_1d_with(|x| outer_objective(&terms(ic, obrc, &RelayPowerSplit::full(x))), &XI_SPEC, &kinks)?;
    Ok(OuterII { value, xi_star, heuristic: !(ic.a12 < 1.0 && obrc.c1 >= obrc.c2) })
}

/// Decode-and-forward signal relaying for a power split with `xibar = 1 - xi`.
pub fn df_system_t2(ic: &IcParams, obrc: &ObrcTypeII, split: &RelayPowerSplit) -> Result<HalfSpaceSystem> {
    check(ic, obrc)?;
    split.validate()?;
    if !split.is_full() {
        return Err(Error::NotApplicable("signal relaying uses xibar = 1 - xi"));
    }
    let t = terms(ic, obrc, split);
    let mut s = HalfSpaceSystem::new(&["R1p", "R2c", "R1R", "R2R"]);
    s.push(&[("R1p", 1.0)], t.a)?;
    s.push(&[("R2c", 1.0)], t.bc)?;
    s.push(&[("R1p", 1.0), ("R2c", 1.0)], t.s)?;
    s.push(&[("R1R", 1.0)], t.m1.min(t.b1))?;
    s.push(&[("R2R", 1.0)], t.m2.min(t.b2))?;
    s.push(&[("R1R", 1.0), ("R2R", 1.0)], t.ms)?;
    Ok(s)
}

pub fn df_region_t2(ic: &IcParams, obrc: &ObrcTypeII, split: &RelayPowerSplit) -> Result<RateRegion2D> {
    let s = df_system_t2(ic, obrc, split)?;
    project_to_rate_plane(&s, &[("R1p", 1.0), ("R1R", 1.0)], &[("R2c", 1.0), ("R2R", 1.0)])
}

pub fn df_sumrate(t: &TermsII) -> f64 {
    (t.a + t.bc).min(t.s) + (t.m1.min(t.b1) + t.m2.min(t.b2)).min(t.ms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DfRegime {
    /// Relay-to-destination bottleneck: the relay serves pair 1 only.
    Prop8,
    /// Excess-rate conditions hold at the optimal power share.
    Prop9,
    /// Neither set of conditions holds; the value is achievable only.
    ConditionsUnmet,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DfSumcap {
    pub value: f64,
    pub regime: DfRegime,
    pub xi: f64,
}

/// Sum capacity by signal relaying in mixed interference, when its conditions hold.
pub fn df_sumcap_t2(ic: &IcParams, obrc: &ObrcTypeII) -> Result<DfSumcap> {
    check(ic, obrc)?;
    if ic.a12 >= 1.0 {
        return Err(Error::NotApplicable("a12 >= 1"));
    }
    if ic.a21 < libm::sqrt((1.0 + ic.p1) / (1.0 + ic.a12 * ic.a12 * ic.p1)) {
        return Err(Error::NotApplicable("a21 < sqrt((1+P1)/(1+a12^2 P1))"));
    }
    let t1 = terms(ic, obrc, &RelayPowerSplit::full(1.0));
    let full_bc1 = obrc.eta_bc * c(obrc.c1 * obrc.c1 * obrc.pr);
    if t1.m1 >= full_bc1 && obrc.c1 >= obrc.c2 {
        return Ok(DfSumcap { value: t1.a + t1.bc + full_bc1, regime: DfRegime::Prop8, xi: 1.0 });
    }
    let kinks = xi_kinks(obrc, &t1);
    let f9 = |x: f64| {
        let t = terms(ic, obrc, &RelayPowerSplit::full(x));
        t.a + t.bc + t.m1.min(t.b1) + t.b2
    };
    let (xi, value) = maximize_1d_with(f9, &XI_SPEC, &kinks)?;
    let at = terms(ic, obrc, &RelayPowerSplit::full(xi));
    let mac2 = obrc.eta_mac * c(obrc.b2 * obrc.b2 * obrc.p2r / (1.0 + obrc.b1 * obrc.b1 * obrc.p1r));
    if t1.m1 < full_bc1 && mac2 >= at.b2 {
        return Ok(DfSumcap { value, regime: DfRegime::Prop9, xi });
    }
    let (xi, value) = maximize_1d_with(|x| df_sumrate(&terms(ic, obrc, &RelayPowerSplit::full(x))), &XI_SPEC, &kinks)?;
    Ok(DfSumcap { value, regime: DfRegime::ConditionsUnmet, xi })
}

/// Variables of the forwarding scheme: private rate of pair 1, the two common
/// parts of pair 2 (`R2c'` also goes through the relay to destination 1), and
/// the relay-only rates.
pub const FWD_VARS: [&str; 5] = ["R1p", "R2c''", "R2c'", "R1R", "R2R"];
pub const FWD_R1: [(&str, f64); 2] = [("R1p", 1.0), ("R1R", 1.0)];
pub const FWD_R2: [(&str, f64); 3] = [("R2c''", 1.0), ("R2c'", 1.0), ("R2R", 1.0)];

/// Joint signal relaying and interference forwarding before elimination.
pub fn prop10_system_t2(ic: &IcParams, obrc: &ObrcTypeII, split: &RelayPowerSplit) -> Result<HalfSpaceSystem> {
    check(ic, obrc)?;
    split.validate()?;
    let t = terms(ic, obrc, split);
    let mut s = HalfSpaceSystem::new(&FWD_VARS);
    s.push(&[("R1p", 1.0)], t.a)?;
    s.push(&[("R2c''", 1.0), ("R1p", 1.0)], t.s)?;
    s.push(&[("R2c'", 1.0), ("R2c''", 1.0)], t.bc)?;
    s.push(&[("R1R", 1.0)], t.m1)?;
    s.push(&[("R2c'", 1.0), ("R2R", 1.0)], t.m2)?;
    s.push(&[("R1R", 1.0), ("R2c'", 1.0), ("R2R", 1.0)], t.ms)?;
    s.push(&[("R2c'", 1.0), ("R1R", 1.0)], t.b1)?;
    s.push(&[("R2R", 1.0)], t.b2)?;
    Ok(s)
}

/// Facets of the projected forwarding region as `(alpha, beta, bound)`.
///
/// Obtained by exact elimination of the five split rates; candidate rows that
/// are implied by the others under `S >= A`, `MS >= max(M1, M2)` and
/// `MS <= M1 + M2` are dropped.
pub fn prop10_bounds(t: &TermsII) -> [(f64, f64, f64); 9] {
    [
        (1.0, 0.0, t.a + t.b1),
        (1.0, 0.0, t.a + t.m1),
        (0.0, 1.0, t.bc + t.b2),
        (0.0, 1.0, t.bc + t.m2),
        (0.0, 1.0, t.s + t.m2),
        (1.0, 1.0, t.s + t.b1 + t.b2),
        (1.0, 1.0, t.s + t.ms),
        (1.0, 1.0, t.s + t.m2 + t.b1),
        (1.0, 1.0, t.a + t.bc + t.ms),
    ]
}

pub fn prop10_region_t2(ic: &IcParams, obrc: &ObrcTypeII, split: &RelayPowerSplit) -> Result<RateRegion2D> {
    check(ic, obrc)?;
    split.validate()?;
    let hp: Vec<HalfPlane> = prop10_bounds(&terms(ic, obrc, split)).iter().map(|&(a, b, g)| HalfPlane::new(a, b, g)).collect();
    RateRegion2D::from_halfplanes(&hp)
}

pub fn prop10_sumrate(t: &TermsII) -> f64 {
    let (mut u1, mut u2, mut s) = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for (a, b, g) in prop10_bounds(t) {
        match (a > 0.0, b > 0.0) {
            (true, false) => u1 = u1.min(g),
            (false, true) => u2 = u2.min(g),
            _ => s = s.min(g),
        }
    }
    s.min(u1 + u2)
}

/// Sum capacity of the forwarding scheme in the limit of very large `b2` and `c1`.
pub fn prop10_limit_sumcap(ic: &IcParams, obrc: &ObrcTypeII) -> f64 {
    c(ic.p1) + c(ic.p2 / (1.0 + ic.a12 * ic.a12 * ic.p1)) + obrc.eta_mac * c(obrc.b1 * obrc.b1 * obrc.p1r) + obrc.eta_bc * c(obrc.c2 * obrc.c2 * obrc.pr)
}

/// Compress-and-forward region with the smallest admissible compression noise.
pub fn cf_region_t2(ic: &IcParams, obrc: &ObrcTypeII) -> Result<(RateRegion2D, CfNoise)> {
    check(ic, obrc)?;
    let ratio = obrc.eta_bc / obrc.eta_mac;
    let m = libm::pow(1.0 + obrc.c1 * obrc.c1 * obrc.pr, ratio).min(libm::pow(1.0 + obrc.c2 * obrc.c2 * obrc.pr, ratio));
    if !(m > 1.0) {
        return Err(Error::CfInfeasible);
    }
    let (s1, s2) = (obrc.b1 * obrc.b1 * obrc.p1r, obrc.b2 * obrc.b2 * obrc.p2r);
    let sigma2 = (1.0 + s1 + s2) / (m - 1.0);
    let q = 1.0 + sigma2;
    let (a12s, a21s) = (ic.a12 * ic.a12, ic.a21 * ic.a21);
    let r = RateRegion2D::from_halfplanes(&[
        HalfPlane::new(1.0, 0.0, c(ic.p1) + obrc.eta_mac * c(s1 / q)),
        HalfPlane::new(0.0, 1.0, c(ic.p2) + obrc.eta_mac * c(s2 / q)),
        HalfPlane::new(1.0, 1.0, c(ic.p1 + a21s * ic.p2).min(c(a12s * ic.p1 + ic.p2)) + obrc.eta_mac * c((s1 + s2) / q)),
    ])?;
    Ok((r, CfNoise { sigma2 }))
}

/// Capacity region under strong interference with a noiseless broadcast phase.
///
/// The flag is set when `a12 < 1` or `a21 < 1`; the region then only serves as an outer bound.
pub fn strong_region_t2(ic: &IcParams, obrc: &ObrcTypeII) -> Result<(RateRegion2D, bool)> {
    check(ic, obrc)?;
    let (s1, s2) = (obrc.b1 * obrc.b1 * obrc.p1r, obrc.b2 * obrc.b2 * obrc.p2r);
    let (a12s, a21s) = (ic.a12 * ic.a12, ic.a21 * ic.a21);
    let mac = obrc.eta_mac * c(s1 + s2);
    let r = RateRegion2D::from_halfplanes(&[
        HalfPlane::new(1.0, 0.0, c(ic.p1) + obrc.eta_mac * c(s1)),
        HalfPlane::new(0.0, 1.0, c(ic.p2) + obrc.eta_mac * c(s2)),
        HalfPlane::new(1.0, 1.0, c(ic.p1 + a21s * ic.p2) + mac),
        HalfPlane::new(1.0, 1.0, c(a12s * ic.p1 + ic.p2) + mac),
    ])?;
    Ok((r, !(ic.a12 >= 1.0 && ic.a21 >= 1.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SchemeII {
    /// Decode-and-forward signal relaying only.
    DfSr,
    /// Signal relaying plus forwarding of source 2's common message.
    DfSrIf,
    Outer,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AllocationII {
    pub eta_mac: f64,
    pub eta_bc: f64,
    pub xi: f64,
    pub value: f64,
}

pub fn scheme_objective(scheme: SchemeII, t: &TermsII) -> f64 {
    match scheme {
        SchemeII::DfSr => df_sumrate(t),
        SchemeII::DfSrIf => prop10_sumrate(t),
        SchemeII::Outer => outer_objective(t),
    }
}

/// Best `(xi, sum-rate)` of a scheme at a fixed bandwidth split.
pub fn scheme_sumrate_t2(ic: &IcParams, obrc: &ObrcTypeII, scheme: SchemeII) -> Result<(f64, f64)> {
    check(ic, obrc)?;
    best_xi(ic, obrc, scheme)
}

fn best_xi(ic: &IcParams, obrc: &ObrcTypeII, scheme: SchemeII) -> Result<(f64, f64)> {
    let kinks = xi_kinks(obrc, &terms(ic, obrc, &RelayPowerSplit::full(1.0)));
    maximize_1d_with(|x| scheme_objective(scheme, &terms(ic, obrc, &RelayPowerSplit::full(x))), &XI_SPEC, &kinks)
}

/// Best `(etaMAC, etaBC, xi)` for a scheme with `etaMAC + etaBC = eta_total`.
pub fn varbw_sumrate_t2(ic: &IcParams, gains: &ObrcGainsII, eta_total: f64, scheme: SchemeII) -> Result<AllocationII> {
    if !(eta_total > 0.0 && eta_total.is_finite()) {
        return Err(Error::Domain { what: "eta_total", value: eta_total });
    }
    let spec = SearchSpec::new(0.0, eta_total, eta_total / 100.0, 1e-9);
    let inner = |em: f64| match best_xi(ic, &gains.with_allocation(em, eta_total - em), scheme) {
        Ok((_, v)) => v,
        Err(_) => f64::NAN,
    };
    let (eta_mac, _) = maximize_1d_with(inner, &spec, &[])?;
    let obrc = gains.with_allocation(eta_mac, eta_total - eta_mac);
    let (xi, value) = best_xi(ic, &obrc, scheme)?;
    Ok(AllocationII { eta_mac, eta_bc: eta_total - eta_mac, xi, value })
}
