//! Relay band made of four orthogonal links (two into the relay, two out).
//!
//! Message splits follow the four-way structure `W_iR, W_ip, W_ic', W_ic''`:
//! `R` goes over the relay only, `p` is private on the IC, `c''` is common on
//! the IC, and `c'` is common on the IC and also forwarded by the relay to the
//! other destination (interference forwarding).

use alloc::vec;
use alloc::vec::Vec;

use crate::channel::{c, IcParams, LinksI, ObrcGainsI, ObrcTypeI, PowerSplit, Validate};
use crate::error::{Error, Result};
use crate::optimize::{search_simplex, SearchSpec};
use crate::polytope::{project_by_support, project_to_rate_plane, HalfPlane, HalfSpaceSystem, RateRegion2D};

const EQ_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Regime {
    /// Relay-to-destination links limit both relay paths.
    Bottleneck,
    /// Spare capacity on the path from source 2 to destination 1.
    ExcessRate2to1,
    ExcessRate1to2,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegimeReport {
    pub label: Regime,
    pub excess_rate: f64,
    pub strong_at_d2: bool,
    pub no_if_needed_strong: bool,
    pub no_if_needed_mixed: bool,
}

pub fn classify_t1(ic: &IcParams, obrc: &ObrcTypeI) -> RegimeReport {
    let l = obrc.links();
    let into1 = l.lr1 <= l.l1r;
    let into2 = l.lr2 <= l.l2r;
    let (label, excess_rate) = match (into1, into2) {
        (true, true) => (Regime::Bottleneck, 0.0),
        (false, true) => (Regime::ExcessRate2to1, (l.lr1 - l.l1r).min(l.l2r - l.lr2)),
        (true, false) => (Regime::ExcessRate1to2, (l.lr2 - l.l2r).min(l.l1r - l.lr1)),
        (false, false) => (Regime::Other, 0.0),
    };
    let (a12s, a21s) = (ic.a12 * ic.a12, ic.a21 * ic.a21);
    RegimeReport {
        label,
        excess_rate,
        strong_at_d2: ic.a12 >= 1.0,
        no_if_needed_strong: (a12s - 1.0) * ic.p1 + (1.0 - a21s) * ic.p2 <= 0.0,
        no_if_needed_mixed: ic.a21 >= libm::sqrt((1.0 + ic.p1) / (1.0 + a12s * ic.p1)),
    }
}

/// Split-rate variables, pair 1 then pair 2.
pub const SPLIT_VARS: [&str; 8] = ["R1p", "R1c'", "R1c''", "R1R", "R2p", "R2c'", "R2c''", "R2R"];
pub const R1_COMBO: [(&str, f64); 4] = [("R1p", 1.0), ("R1c'", 1.0), ("R1c''", 1.0), ("R1R", 1.0)];
pub const R2_COMBO: [(&str, f64); 4] = [("R2p", 1.0), ("R2c'", 1.0), ("R2c''", 1.0), ("R2R", 1.0)];

/// A decodable stream at one destination: its rate variables and received power.
struct Stream {
    vars: &'static [&'static str],
    power: f64,
}

fn decoder_rows(sys: &mut HalfSpaceSystem, streams: [Stream; 3], noise: f64) -> Result<()> {
    // Subset masks over (own common, own private, other common''); the lone
    // other-common subset is not an error event and is skipped.
    for mask in 1u8..8 {
        if mask == 0b100 {
            continue;
        }
        let mut combo: Vec<(&str, f64)> = Vec::new();
        let mut power = 0.0;
        for (i, s) in streams.iter().enumerate() {
            if mask & (1 << i) != 0 {
                combo.extend(s.vars.iter().map(|v| (*v, 1.0)));
                power += s.power;
            }
        }
        sys.push(&combo, c(power / noise))?;
    }
    Ok(())
}

/// Linear system of the four-way split for a fixed power split.
pub fn split_system(ic: &IcParams, obrc: &ObrcTypeI, split: &PowerSplit) -> Result<HalfSpaceSystem> {
    ic.validate()?;
    obrc.validate()?;
    split.validate(ic)?;
    let (a12s, a21s) = (ic.a12 * ic.a12, ic.a21 * ic.a21);
    let mut sys = HalfSpaceSystem::new(&SPLIT_VARS);
    decoder_rows(
        &mut sys,
        [
            Stream { vars: &["R1c'", "R1c''"], power: split.p1c },
            Stream { vars: &["R1p"], power: split.p1p },
            Stream { vars: &["R2c''"], power: a21s * split.p2c },
        ],
        split.n1(ic),
    )?;
    decoder_rows(
        &mut sys,
        [
            Stream { vars: &["R2c'", "R2c''"], power: split.p2c },
            Stream { vars: &["R2p"], power: split.p2p },
            Stream { vars: &["R1c''"], power: a12s * split.p1c },
        ],
        split.n2(ic),
    )?;
    let l = obrc.links();
    sys.push(&[("R1c'", 1.0), ("R1R", 1.0)], l.l1r)?;
    sys.push(&[("R2c'", 1.0), ("R2R", 1.0)], l.l2r)?;
    sys.push(&[("R2c'", 1.0), ("R1R", 1.0)], l.lr1)?;
    sys.push(&[("R1c'", 1.0), ("R2R", 1.0)], l.lr2)?;
    Ok(sys)
}

/// Achievable region for one power split, by Fourier-Motzkin projection.
pub fn achievable_region_t1(ic: &IcParams, obrc: &ObrcTypeI, split: &PowerSplit) -> Result<RateRegion2D> {
    project_to_rate_plane(&split_system(ic, obrc, split)?, &R1_COMBO, &R2_COMBO)
}

/// Uniform `n x n` grid of private powers, the rest common. `n = 1` is common-only.
pub fn split_grid(ic: &IcParams, n: usize) -> Vec<PowerSplit> {
    if n <= 1 {
        return vec![PowerSplit::common_only(ic)];
    }
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let p1p = ic.p1 * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let p2p = ic.p2 * j as f64 / (n - 1) as f64;
            out.push(PowerSplit { p1p, p1c: ic.p1 - p1p, p2p, p2c: ic.p2 - p2p });
        }
    }
    out
}

/// Convex hull of the achievable regions over a grid of power splits.
///
/// Each per-split region is rebuilt from LP support queries, which is much
/// cheaper than elimination and yields the same polygon.
pub fn achievable_hull_t1(ic: &IcParams, obrc: &ObrcTypeI, grid_points: usize) -> Result<RateRegion2D> {
    let mut pts = Vec::new();
    for s in split_grid(ic, grid_points) {
        let r = project_by_support(&split_system(ic, obrc, &s)?, &R1_COMBO, &R2_COMBO)?;
        pts.extend_from_slice(r.vertices());
    }
    RateRegion2D::from_vertices(&pts)
}

/// Max sum-rate over the split grid and the split attaining it.
pub fn achievable_sumrate_t1(ic: &IcParams, obrc: &ObrcTypeI, grid_points: usize) -> Result<(PowerSplit, f64)> {
    let mut sum: Vec<(&str, f64)> = R1_COMBO.to_vec();
    sum.extend_from_slice(&R2_COMBO);
    let mut best: Option<(PowerSplit, f64)> = None;
    for s in split_grid(ic, grid_points) {
        let v = split_system(ic, obrc, &s)?.support_value(&sum)?;
        if best.is_none_or(|b| v > b.1) {
            best = Some((s, v));
        }
    }
    best.ok_or(Error::EmptyInput)
}

/// A bound value, flagged when evaluated outside the conditions of its derivation.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Bound {
    pub value: f64,
    pub heuristic: bool,
}

fn symmetric_strong(ic: &IcParams) -> bool {
    (ic.a12 - ic.a21).abs() <= EQ_TOL && ic.a12 >= 1.0 && (ic.p1 - ic.p2).abs() <= EQ_TOL
}

fn outer_from_links(ic: &IcParams, l: &LinksI) -> f64 {
    let (a12s, a21s) = (ic.a12 * ic.a12, ic.a21 * ic.a21);
    let at_d2 = c(a12s * ic.p1 + ic.p2) + (l.l1r + l.l2r).min(l.lr2) + l.l1r.min(l.lr1);
    let at_d1 = c(ic.p1 + a21s * ic.p2) + (l.l1r + l.l2r).min(l.lr1) + l.l2r.min(l.lr2);
    at_d2.min(at_d1)
}

/// Sum-rate outer bound for a fixed allocation.
///
/// Both index orientations of the bound are evaluated and the smaller is
/// returned. Flagged heuristic unless `a12 = a21 >= 1` and `P1 = P2`.
pub fn outer_sumrate_t1(ic: &IcParams, obrc: &ObrcTypeI) -> Bound {
    Bound { value: outer_from_links(ic, &obrc.links()), heuristic: !symmetric_strong(ic) }
}

/// IC-only region under strong interference.
pub fn strong_ic_region(ic: &IcParams) -> Result<RateRegion2D> {
    let (a12s, a21s) = (ic.a12 * ic.a12, ic.a21 * ic.a21);
    let sum = c(ic.p1 + a21s * ic.p2).min(c(a12s * ic.p1 + ic.p2));
    RateRegion2D::from_halfplanes(&[
        HalfPlane::new(1.0, 0.0, c(ic.p1)),
        HalfPlane::new(0.0, 1.0, c(ic.p2)),
        HalfPlane::new(1.0, 1.0, sum),
    ])
}

/// IC region enlarged by the relay-to-destination rates in the bottleneck regime.
pub fn prop3_region(ic_region: &RateRegion2D, obrc: &ObrcTypeI) -> Result<RateRegion2D> {
    let l = obrc.links();
    if !(l.lr1 <= l.l1r && l.lr2 <= l.l2r) {
        return Err(Error::NotApplicable("bottleneck conditions do not hold"));
    }
    Ok(ic_region.minkowski_sum(&RateRegion2D::rectangle(l.lr1, l.lr2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Prop4Case {
    /// Destination 2 sets the sum-rate; forwarding covers the gap at destination 1.
    I,
    /// Excess rate set by the relay-to-destination-1 link and below the gap.
    II,
}

/// Capacity region with strong interference at destination 2 and spare rate from 2 to 1.
pub fn prop4_region(ic: &IcParams, obrc: &ObrcTypeI) -> Result<(RateRegion2D, Prop4Case)> {
    if ic.a12 < 1.0 {
        return Err(Error::NotApplicable("a12 < 1"));
    }
    let l = obrc.links();
    if !(l.lr1 >= l.l1r && l.lr2 <= l.l2r) {
        return Err(Error::NotApplicable("excess-rate conditions do not hold"));
    }
    let (a12s, a21s) = (ic.a12 * ic.a12, ic.a21 * ic.a21);
    let at_d2 = c(a12s * ic.p1 + ic.p2);
    let at_d1 = c(ic.p1 + a21s * ic.p2);
    let gap = at_d2 - at_d1;
    let r_ex = (l.lr1 - l.l1r).min(l.l2r - l.lr2);
    let (sum, case) = if r_ex >= gap.max(0.0) {
        (at_d2 + l.l1r + l.lr2, Prop4Case::I)
    } else if l.lr1 - l.l1r <= l.l2r - l.lr2 && r_ex <= gap {
        (at_d1 + l.lr1 + l.lr2, Prop4Case::II)
    } else {
        return Err(Error::Ambiguous);
    };
    let region = RateRegion2D::from_halfplanes(&[
        HalfPlane::new(1.0, 0.0, c(ic.p1) + l.l1r),
        HalfPlane::new(0.0, 1.0, c(ic.p2) + l.lr2),
        HalfPlane::new(1.0, 1.0, sum),
    ])?;
    Ok((region, case))
}

/// The split-rate system restricted to the scheme behind the excess-rate results:
/// common-only IC signaling, `R1c' = R1p = R2p = 0`.
pub fn forwarding_system(ic: &IcParams, obrc: &ObrcTypeI) -> Result<HalfSpaceSystem> {
    split_system(ic, obrc, &PowerSplit::common_only(ic))?.with_zero(&["R1c'", "R1p", "R2p"])
}

/// Sum capacity with weak interference at destination 2 and a large excess rate.
pub fn prop5_sumcap(ic: &IcParams, obrc: &ObrcTypeI) -> Result<f64> {
    if ic.a12 >= 1.0 {
        return Err(Error::NotApplicable("a12 >= 1"));
    }
    let l = obrc.links();
    if !(l.lr1 >= l.l1r && l.lr2 <= l.l2r) {
        return Err(Error::NotApplicable("excess-rate conditions do not hold"));
    }
    let r_ex = (l.lr1 - l.l1r).min(l.l2r - l.lr2);
    let treat = c(ic.p1) + c(ic.p2 / (1.0 + ic.a12 * ic.a12 * ic.p1));
    let threshold = treat - c(ic.p1 + ic.a21 * ic.a21 * ic.p2);
    if r_ex < threshold.max(0.0) {
        return Err(Error::NotApplicable("excess rate below threshold"));
    }
    Ok(treat + l.l1r + l.lr2)
}

/// Sum-rate of separate signal relaying with common-only IC signaling.
pub fn sr_objective(ic: &IcParams, obrc: &ObrcTypeI) -> f64 {
    let l = obrc.links();
    common_sum(ic) + l.l1r.min(l.lr1) + l.l2r.min(l.lr2)
}

/// Best sum of common-only IC rates decodable at both destinations.
fn common_sum(ic: &IcParams) -> f64 {
    let (a12s, a21s) = (ic.a12 * ic.a12, ic.a21 * ic.a21);
    let s1 = c(ic.p1 + a21s * ic.p2);
    let s2 = c(a12s * ic.p1 + ic.p2);
    let x = c(ic.p1).min(c(a12s * ic.p1));
    let y = c(ic.p2).min(c(a21s * ic.p2));
    s1.min(s2).min(x + y)
}

/// Optimal allocation and sum capacity for the symmetric strong case with a dominant pair 1.
pub fn prop6_alloc(ic: &IcParams, gains: &ObrcGainsI, eta_total: f64) -> Result<([f64; 4], f64)> {
    if (ic.a12 - ic.a21).abs() > EQ_TOL || ic.a12 < 1.0 {
        return Err(Error::NotApplicable("requires a12 = a21 >= 1"));
    }
    if (ic.p1 - ic.p2).abs() > EQ_TOL {
        return Err(Error::NotApplicable("requires P1 = P2"));
    }
    let [u1r, u2r, ur1, ur2] = gains.unit_caps();
    if (u1r - ur1).abs() > EQ_TOL {
        return Err(Error::NotApplicable("requires cap(b1^2 P1R) = cap(c1^2 PR1)"));
    }
    if u1r < u2r - EQ_TOL {
        return Err(Error::NotApplicable("requires cap(b1^2 P1R) >= cap(b2^2 P2R)"));
    }
    if ur1 < 2.0 * ur2 - EQ_TOL {
        return Err(Error::NotApplicable("requires cap(c1^2 PR1) >= 2 cap(c2^2 PR2)"));
    }
    let h = eta_total / 2.0;
    Ok(([h, 0.0, h, 0.0], c(ic.a12 * ic.a12 * ic.p1 + ic.p2) + h * ur1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SchemeI {
    /// Signal relaying only.
    Sr,
    /// Signal relaying plus forwarding of source 2's common message to destination 1.
    SrIf,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AllocationI {
    /// `[eta1R, eta2R, etaR1, etaR2]`.
    pub eta: [f64; 4],
    pub value: f64,
}

const ETA_VARS: [&str; 4] = ["e1R", "e2R", "eR1", "eR2"];

/// Scheme system with bandwidths as variables; rows are linear because each link rate is `eta * unit_cap`.
fn varbw_system(ic: &IcParams, gains: &ObrcGainsI, eta_total: f64, scheme: SchemeI) -> Result<HalfSpaceSystem> {
    let (a12s, a21s) = (ic.a12 * ic.a12, ic.a21 * ic.a21);
    let [u1r, u2r, ur1, ur2] = gains.unit_caps();
    let mut s = HalfSpaceSystem::new(&["x", "y", "z", "r1", "r2", "e1R", "e2R", "eR1", "eR2"]);
    // x = R1c'', y = R2c'', z = R2c', r_i = R_iR.
    s.push(&[("x", 1.0)], c(ic.p1))?;
    s.push(&[("y", 1.0)], c(a21s * ic.p2))?;
    s.push(&[("x", 1.0), ("y", 1.0)], c(ic.p1 + a21s * ic.p2))?;
    s.push(&[("y", 1.0), ("z", 1.0)], c(ic.p2))?;
    s.push(&[("x", 1.0)], c(a12s * ic.p1))?;
    s.push(&[("x", 1.0), ("y", 1.0), ("z", 1.0)], c(a12s * ic.p1 + ic.p2))?;
    s.push(&[("r1", 1.0), ("e1R", -u1r)], 0.0)?;
    s.push(&[("z", 1.0), ("r2", 1.0), ("e2R", -u2r)], 0.0)?;
    s.push(&[("z", 1.0), ("r1", 1.0), ("eR1", -ur1)], 0.0)?;
    s.push(&[("r2", 1.0), ("eR2", -ur2)], 0.0)?;
    let all: Vec<(&str, f64)> = ETA_VARS.iter().map(|v| (*v, 1.0)).collect();
    let neg: Vec<(&str, f64)> = ETA_VARS.iter().map(|v| (*v, -1.0)).collect();
    s.push(&all, eta_total)?;
    s.push(&neg, -eta_total)?;
    if scheme == SchemeI::Sr {
        s = s.with_zero(&["z"])?;
    }
    Ok(s)
}

const SUM_OBJ: [(&str, f64); 5] = [("x", 1.0), ("y", 1.0), ("z", 1.0), ("r1", 1.0), ("r2", 1.0)];

fn eta_of(s: &HalfSpaceSystem, x: &[f64]) -> Result<[f64; 4]> {
    let mut e = [0.0; 4];
    for (k, v) in ETA_VARS.iter().enumerate() {
        e[k] = x[s.index(v)?].max(0.0);
    }
    Ok(e)
}

/// Best bandwidth allocation for a scheme; exact, since the problem is one LP.
pub fn varbw_sumrate_t1(ic: &IcParams, gains: &ObrcGainsI, eta_total: f64, scheme: SchemeI) -> Result<AllocationI> {
    if !(eta_total > 0.0 && eta_total.is_finite()) {
        return Err(Error::Domain { what: "eta_total", value: eta_total });
    }
    ic.validate()?;
    let s = varbw_system(ic, gains, eta_total, scheme)?;
    let sol = s.maximize(&SUM_OBJ)?;
    Ok(AllocationI { eta: eta_of(&s, &sol.x)?, value: sol.value })
}

/// Sum-rate of a scheme at a fixed allocation, from the same linear system.
pub fn scheme_sumrate_t1(ic: &IcParams, obrc: &ObrcTypeI, scheme: SchemeI) -> Result<f64> {
    obrc.validate()?;
    let mut s = varbw_system(ic, &obrc.gains(), obrc.eta_total, scheme)?;
    for (v, e) in ETA_VARS.iter().zip(obrc.allocation()) {
        s.push(&[(v, 1.0)], e)?;
        s.push(&[(v, -1.0)], -e)?;
    }
    s.support_value(&SUM_OBJ)
}

/// Closed form of [`scheme_sumrate_t1`].
///
/// For a forwarded rate `z` the best sum is concave piecewise linear in `z`,
/// so it is maximized at one of its breakpoints.
pub fn scheme_sumrate_closed_t1(ic: &IcParams, obrc: &ObrcTypeI, scheme: SchemeI) -> f64 {
    let (a12s, a21s) = (ic.a12 * ic.a12, ic.a21 * ic.a21);
    let l = obrc.links();
    let a1 = c(ic.p1);
    let xc = a1.min(c(a12s * ic.p1));
    let y1 = c(a21s * ic.p2);
    let s1 = c(ic.p1 + a21s * ic.p2);
    let a2 = c(ic.p2);
    let s2 = c(a12s * ic.p1 + ic.p2);
    let f = |z: f64| z + s1.min(s2 - z).min(xc + y1.min(a2 - z)) + l.l1r.min(l.lr1 - z) + l.lr2.min(l.l2r - z);
    if scheme == SchemeI::Sr {
        return f(0.0);
    }
    let zmax = l.lr1.min(l.l2r).min(a2).min(s2).max(0.0);
    [0.0, zmax, s2 - s1, s2 - xc - y1, xc + a2 - s1, a2 - y1, l.lr1 - l.l1r, l.l2r - l.lr2]
        .iter()
        .filter(|z| **z >= 0.0 && **z <= zmax)
        .map(|&z| f(z))
        .fold(f(0.0), f64::max)
}

/// Outer bound maximized over allocations, as one LP on the epigraph.
pub fn outer_varbw_t1(ic: &IcParams, gains: &ObrcGainsI, eta_total: f64) -> Result<(AllocationI, bool)> {
    let (a12s, a21s) = (ic.a12 * ic.a12, ic.a21 * ic.a21);
    let [u1r, u2r, ur1, ur2] = gains.unit_caps();
    let mut s = HalfSpaceSystem::new(&["t", "u1", "v1", "u2", "v2", "e1R", "e2R", "eR1", "eR2"]);
    s.set_nonneg("t", false)?;
    let k1 = c(a12s * ic.p1 + ic.p2);
    let k2 = c(ic.p1 + a21s * ic.p2);
    s.push(&[("t", 1.0), ("u1", -1.0), ("v1", -1.0)], k1)?;
    s.push(&[("u1", 1.0), ("e1R", -u1r), ("e2R", -u2r)], 0.0)?;
    s.push(&[("u1", 1.0), ("eR2", -ur2)], 0.0)?;
    s.push(&[("v1", 1.0), ("e1R", -u1r)], 0.0)?;
    s.push(&[("v1", 1.0), ("eR1", -ur1)], 0.0)?;
    s.push(&[("t", 1.0), ("u2", -1.0), ("v2", -1.0)], k2)?;
    s.push(&[("u2", 1.0), ("e1R", -u1r), ("e2R", -u2r)], 0.0)?;
    s.push(&[("u2", 1.0), ("eR1", -ur1)], 0.0)?;
    s.push(&[("v2", 1.0), ("e2R", -u2r)], 0.0)?;
    s.push(&[("v2", 1.0), ("eR2", -ur2)], 0.0)?;
    let all: Vec<(&str, f64)> = ETA_VARS.iter().map(|v| (*v, 1.0)).collect();
    let neg: Vec<(&str, f64)> = ETA_VARS.iter().map(|v| (*v, -1.0)).collect();
    s.push(&all, eta_total)?;
    s.push(&neg, -eta_total)?;
    let sol = s.maximize(&[("t", 1.0)])?;
    Ok((AllocationI { eta: eta_of(&s, &sol.x)?, value: sol.value }, !symmetric_strong(ic)))
}

/// Allocation search on the signal-relaying objective with [`search_simplex`].
pub fn sr_allocation_search(ic: &IcParams, gains: &ObrcGainsI, eta_total: f64, spec: &SearchSpec) -> Result<AllocationI> {
    let f = |w: &[f64]| sr_objective(ic, &gains.with_allocation([w[0], w[1], w[2], w[3]]));
    let (w, value) = search_simplex(f, 4, eta_total, spec)?;
    Ok(AllocationI { eta: [w[0], w[1], w[2], w[3]], value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case_ii() -> ObrcTypeI {
        ObrcGainsI { b1: 1.5f64.sqrt(), b2: 1.5f64.sqrt(), c1: 0.3f64.sqrt(), c2: 0.3f64.sqrt(), p1r: 10.0, p2r: 10.0, pr1: 10.0, pr2: 10.0 }
            .with_allocation([1.0; 4])
    }

    fn case_iii() -> ObrcTypeI {
        ObrcGainsI { b1: 1.5f64.sqrt(), b2: 6.3f64.sqrt(), c1: 6.3f64.sqrt(), c2: 1.5f64.sqrt(), p1r: 10.0, p2r: 10.0, pr1: 10.0, pr2: 10.0 }
            .with_allocation([1.0; 4])
    }

    #[test]
    fn classify_examples() {
        let ic = IcParams::symmetric(1.0, 10.0);
        assert_eq!(classify_t1(&ic, &case_ii()).label, Regime::Bottleneck);
        let r = classify_t1(&ic, &case_iii());
        assert_eq!(r.label, Regime::ExcessRate2to1);
        assert!((r.excess_rate - 1.0).abs() < 1e-12);
        let g = ObrcGainsI { b1: 1.0, b2: 1.0, c1: 1.0, c2: 1.0, p1r: 3.0, p2r: 3.0, pr1: 3.0, pr2: 3.0 };
        assert_eq!(classify_t1(&ic, &g.with_allocation([0.25; 4])).label, Regime::Bottleneck);
    }

    #[test]
    fn case_iii_sum_rate() {
        let ic = IcParams::symmetric(1.0, 10.0);
        let r = achievable_region_t1(&ic, &case_iii(), &PowerSplit::common_only(&ic)).unwrap();
        assert!((r.sum_rate() - (c(20.0) + 4.0)).abs() < 1e-9);
        let o = outer_sumrate_t1(&ic, &case_iii());
        assert!((o.value - (c(20.0) + 4.0)).abs() < 1e-12 && !o.heuristic);
    }

    #[test]
    fn prop4_cases() {
        let ic = IcParams::symmetric(1.0, 10.0);
        let (r, case) = prop4_region(&ic, &case_iii()).unwrap();
        assert_eq!(case, Prop4Case::I);
        assert!((r.max_r1() - (c(10.0) + 2.0)).abs() < 1e-12);
        assert!((r.sum_rate() - (c(20.0) + 4.0)).abs() < 1e-12);
        assert!(matches!(prop4_region(&IcParams::symmetric(0.9, 10.0), &case_iii()), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn closed_form_matches_system() {
        let ic = IcParams::new(3.0, 2.0, 10.0, 10.0);
        for b2 in [0.5, 1.0, 2.0, 4.0] {
            let g = ObrcGainsI { b1: 1.5, b2, c1: 3.0, c2: 1.0, p1r: 10.0, p2r: 10.0, pr1: 10.0, pr2: 10.0 };
            for eta in [[0.25; 4], [0.4, 0.1, 0.3, 0.2], [0.1, 0.5, 0.3, 0.1]] {
                let o = g.with_allocation(eta);
                for sch in [SchemeI::Sr, SchemeI::SrIf] {
                    let a = scheme_sumrate_t1(&ic, &o, sch).unwrap();
                    let b = scheme_sumrate_closed_t1(&ic, &o, sch);
                    assert!((a - b).abs() < 1e-9, "{b2} {eta:?} {sch:?}: {a} vs {b}");
                }
            }
        }
    }
}
