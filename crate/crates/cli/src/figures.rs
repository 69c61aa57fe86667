//! Figure presets: fixed parameter sets and x-grids, one column per curve.

use rayon::prelude::*;

use icobr_core::channel::{ObrcGainsI, ObrcGainsII};
use icobr_core::type1::{self, SchemeI};
use icobr_core::type2::{self, SchemeII};
use icobr_core::IcParams;

use crate::error::CliError;
use crate::eval::Table;

pub const NAMES: [&str; 7] = ["fig2", "fig3", "fig4", "fig7", "fig8", "fig9", "fig10"];

/// Split-grid size per power for the achievable curves.
pub const SPLIT_GRID: usize = 11;

const P: f64 = 10.0;

/// Points `lo, lo + step, ..., hi`, rounded to clean decimals.
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|i| ((lo + i as f64 * step) * 1e9).round() / 1e9).collect()
}

fn gains_i(b1: f64, b2: f64, c1: f64, c2: f64) -> ObrcGainsI {
    ObrcGainsI { b1, b2, c1, c2, p1r: P, p2r: P, pr1: P, pr2: P }
}

fn gains_ii(b1: f64, b2: f64, c1: f64, c2: f64) -> ObrcGainsII {
    ObrcGainsII { b1, b2, c1, c2, p1r: P, p2r: P, pr: P }
}

fn table<F>(x_name: &str, curves: &[&str], xs: &[f64], f: F) -> Result<Table, CliError>
where
    F: Fn(f64) -> icobr_core::Result<Vec<f64>> + Sync,
{
    let rows: Result<Vec<Vec<Option<f64>>>, CliError> = crate::thread_pool()?.install(|| {
        xs.par_iter()
            .map(|&x| {
                let ys = f(x).map_err(|e| CliError::Numeric(format!("{x_name} = {x}: {e}")))?;
                Ok(std::iter::once(x).chain(ys).map(Some).collect())
            })
            .collect()
    });
    let mut columns = vec![x_name.to_string()];
    columns.extend(curves.iter().map(|c| c.to_string()));
    Ok(Table { columns, rows: rows? })
}

/// Link gains giving unit rates cap(15) = 2 into the relay and cap(3) = 1 out of it.
pub fn fig2_bottleneck() -> ObrcGainsI {
    gains_i(1.5f64.sqrt(), 1.5f64.sqrt(), 0.3f64.sqrt(), 0.3f64.sqrt())
}

/// Link gains with rates 2, 3 into the relay and 3, 2 out of it.
pub fn fig2_excess() -> ObrcGainsI {
    gains_i(1.5f64.sqrt(), 6.3f64.sqrt(), 6.3f64.sqrt(), 1.5f64.sqrt())
}

pub fn fig2() -> Result<Table, CliError> {
    let xs = grid(0.1, 3.0, 0.05);
    table("a", &["no_relay", "bottleneck", "excess_rate"], &xs, |a| {
        let ic = IcParams::symmetric(a, P);
        let sum = |o| type1::achievable_sumrate_t1(&ic, &o, SPLIT_GRID).map(|(_, v)| v);
        Ok(vec![
            sum(fig2_bottleneck().with_allocation([0.0; 4]))?,
            sum(fig2_bottleneck().with_allocation([1.0; 4]))?,
            sum(fig2_excess().with_allocation([1.0; 4]))?,
        ])
    })
}

pub fn fig3() -> Result<Table, CliError> {
    let ic = IcParams::symmetric(2.0, P);
    table("b1", &["sr", "sr_if", "outer"], &grid(0.5, 4.0, 0.05), |b1| {
        let g = gains_i(b1, 2.0, 3.0, 2.0);
        Ok(vec![
            type1::varbw_sumrate_t1(&ic, &g, 1.0, SchemeI::Sr)?.value,
            type1::varbw_sumrate_t1(&ic, &g, 1.0, SchemeI::SrIf)?.value,
            type1::outer_varbw_t1(&ic, &g, 1.0)?.0.value,
        ])
    })
}

pub fn fig4() -> Result<Table, CliError> {
    let ic = IcParams::new(3.0, 2.0, P, P);
    table("b2", &["sr", "sr_if", "outer"], &grid(0.5, 4.0, 0.05), |b2| {
        let g = gains_i(1.5, b2, 3.0, 1.0);
        Ok(vec![
            type1::varbw_sumrate_t1(&ic, &g, 1.0, SchemeI::Sr)?.value,
            type1::varbw_sumrate_t1(&ic, &g, 1.0, SchemeI::SrIf)?.value,
            type1::outer_varbw_t1(&ic, &g, 1.0)?.0.value,
        ])
    })
}

pub fn fig7() -> Result<Table, CliError> {
    let ic = IcParams::symmetric(2.0, P);
    table("c", &["cf", "outer"], &grid(1.0, 12.0, 0.25), |c| {
        let o = gains_ii(1.0, 1.0, c, c).with_allocation(1.0, 1.0);
        Ok(vec![type2::cf_region_t2(&ic, &o)?.0.sum_rate(), type2::strong_region_t2(&ic, &o)?.0.sum_rate()])
    })
}

pub fn fig8() -> Result<Table, CliError> {
    let ic = IcParams::new(0.5, 1.8, P, P);
    table("b1", &["df_sr", "outer", "eta_mac", "eta_bc", "xi"], &grid(0.5, 5.0, 0.1), |b1| {
        let g = gains_ii(b1, 2.0, 2.0, 0.3);
        let df = type2::varbw_sumrate_t2(&ic, &g, 1.0, SchemeII::DfSr)?;
        let ob = type2::varbw_sumrate_t2(&ic, &g, 1.0, SchemeII::Outer)?;
        Ok(vec![df.value, ob.value, df.eta_mac, df.eta_bc, df.xi])
    })
}

pub const FIG9_PAIRS: [(f64, f64); 3] = [(3.0, 2.0), (10.0, 5.0), (20.0, 10.0)];

pub fn fig9() -> Result<Table, CliError> {
    let ic = IcParams::new(0.5, 1.8, P, P);
    let names: Vec<String> = FIG9_PAIRS
        .iter()
        .flat_map(|(b2, c1)| [format!("df_sr_b2_{b2}_c1_{c1}"), format!("outer_b2_{b2}_c1_{c1}")])
        .collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    table("b1", &refs, &grid(0.5, 10.0, 0.1), |b1| {
        let mut out = Vec::new();
        for (b2, c1) in FIG9_PAIRS {
            let g = gains_ii(b1, b2, c1, 1.0);
            out.push(type2::varbw_sumrate_t2(&ic, &g, 1.0, SchemeII::DfSr)?.value);
            out.push(type2::varbw_sumrate_t2(&ic, &g, 1.0, SchemeII::Outer)?.value);
        }
        Ok(out)
    })
}

pub fn fig10() -> Result<Table, CliError> {
    let ic = IcParams::new(0.5, 1.0, P, P);
    table("b2", &["df_sr_if", "df_sr", "outer"], &grid(0.5, 5.0, 0.1), |b2| {
        let g = gains_ii(1.0, b2, 4.0, 1.5);
        Ok(vec![
            type2::varbw_sumrate_t2(&ic, &g, 1.0, SchemeII::DfSrIf)?.value,
            type2::varbw_sumrate_t2(&ic, &g, 1.0, SchemeII::DfSr)?.value,
            type2::varbw_sumrate_t2(&ic, &g, 1.0, SchemeII::Outer)?.value,
        ])
    })
}

pub fn figure(name: &str) -> Result<Table, CliError> {
    match name {
        "fig2" => fig2(),
        "fig3" => fig3(),
        "fig4" => fig4(),
        "fig7" => fig7(),
        "fig8" => fig8(),
        "fig9" => fig9(),
        "fig10" => fig10(),
        _ => Err(CliError::Usage(format!("unknown figure `{name}`; valid: {}", NAMES.join(", ")))),
    }
}
