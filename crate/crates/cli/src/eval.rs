use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use icobr_core::type1::{self, RegimeReport, SchemeI};
use icobr_core::type2::{self, RelayPowerSplit, SchemeII};
use icobr_core::{Error, HalfPlane, RateRegion2D};

use crate::config::{Command, Relay, Resolved, RunConfig};
use crate::error::CliError;

/// Default split-grid size per power for Type-I achievable regions.
pub const DEFAULT_GRID: usize = 11;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Regime(RegimeReport),
    Region {
        scheme: String,
        vertices: Vec<[f64; 2]>,
        halfplanes: Vec<HalfPlane>,
        sum_rate: f64,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        flags: Vec<String>,
    },
    Value {
        scheme: String,
        value: f64,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        details: Vec<(String, f64)>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        flags: Vec<String>,
    },
    Table(Table),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub status: Status,
    /// The configuration with powers converted to linear units.
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Payload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Result of one evaluation before it is wrapped into an [`Outcome`].
enum Eval {
    Done(Payload),
    NotApplicable(String),
}

fn lift<T>(r: icobr_core::Result<T>) -> Result<Result<T, String>, CliError> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::NotApplicable(m)) => Ok(Err(m.to_string())),
        Err(Error::Ambiguous) => Ok(Err("neither case of the excess-rate result applies".into())),
        Err(Error::CfInfeasible) => Ok(Err("no admissible compression noise".into())),
        Err(Error::Invalid(v)) => Err(CliError::Validation(v.iter().map(|x| x.to_string()).collect())),
        Err(e) => Err(CliError::Numeric(e.to_string())),
    }
}

macro_rules! try_na {
    ($e:expr) => {
        match lift($e)? {
            Ok(v) => v,
            Err(m) => return Ok(Eval::NotApplicable(m)),
        }
    };
}

fn region(scheme: &str, r: &RateRegion2D, flags: Vec<String>) -> Payload {
    Payload::Region {
        scheme: scheme.to_string(),
        vertices: r.vertices().to_vec(),
        halfplanes: r.halfplanes().to_vec(),
        sum_rate: r.sum_rate(),
        flags,
    }
}

fn value(scheme: &str, v: f64, details: Vec<(&str, f64)>, flags: Vec<String>) -> Payload {
    Payload::Value {
        scheme: scheme.to_string(),
        value: v,
        details: details.into_iter().map(|(k, x)| (k.to_string(), x)).collect(),
        flags,
    }
}

fn heuristic(flag: bool) -> Vec<String> {
    if flag {
        vec!["heuristic bound".to_string()]
    } else {
        Vec::new()
    }
}

fn scheme_name(cfg: &RunConfig, command: Command, r: &Resolved) -> String {
    if let Some(s) = &cfg.scheme {
        return s.clone();
    }
    match (&r.relay, command) {
        (Relay::TypeI(..), _) => "achievable".into(),
        (Relay::TypeII(..), Command::Region) => "df".into(),
        (Relay::TypeII(..), _) => "df_sr".into(),
    }
}

fn unknown(scheme: &str, valid: &[&str]) -> CliError {
    CliError::Usage(format!("unknown scheme `{scheme}`; valid: {}", valid.join(", ")))
}

fn classify(r: &Resolved) -> Result<Eval, CliError> {
    let (o, _) = r.type1()?;
    Ok(Eval::Done(Payload::Regime(type1::classify_t1(&r.ic, o))))
}

fn region_t1(cfg: &RunConfig, r: &Resolved, scheme: &str) -> Result<Eval, CliError> {
    let (o, _) = r.type1()?;
    let grid = cfg.grid_points.unwrap_or(DEFAULT_GRID);
    Ok(Eval::Done(match scheme {
        "achievable" => match &r.split {
            Some(s) => region(scheme, &try_na!(type1::achievable_region_t1(&r.ic, o, s)), vec![]),
            None => region(scheme, &try_na!(type1::achievable_hull_t1(&r.ic, o, grid)), vec![]),
        },
        "prop3" => {
            let quiet = o.gains().with_allocation([0.0; 4]);
            let ic_region = try_na!(type1::achievable_hull_t1(&r.ic, &quiet, grid));
            region(scheme, &try_na!(type1::prop3_region(&ic_region, o)), vec![])
        }
        "prop4" => {
            let (reg, case) = try_na!(type1::prop4_region(&r.ic, o));
            region(scheme, &reg, vec![format!("case {case:?}")])
        }
        _ => return Err(unknown(scheme, &["achievable", "prop3", "prop4"])),
    }))
}

fn split_of(r: &Resolved) -> RelayPowerSplit {
    r.xi.unwrap_or(RelayPowerSplit::full(1.0))
}

fn region_t2(r: &Resolved, scheme: &str) -> Result<Eval, CliError> {
    let (o, _) = r.type2()?;
    Ok(Eval::Done(match scheme {
        "df" => region(scheme, &try_na!(type2::df_region_t2(&r.ic, o, &split_of(r))), vec![]),
        "prop10" => region(scheme, &try_na!(type2::prop10_region_t2(&r.ic, o, &split_of(r))), vec![]),
        "cf" => {
            let (reg, n) = try_na!(type2::cf_region_t2(&r.ic, o));
            let mut p = region(scheme, &reg, vec![]);
            if let Payload::Region { flags, .. } = &mut p {
                flags.push(format!("sigma2 {}", n.sigma2));
            }
            p
        }
        "strong" => {
            let (reg, outer_only) = try_na!(type2::strong_region_t2(&r.ic, o));
            region(scheme, &reg, if outer_only { vec!["outer bound only".into()] } else { vec![] })
        }
        _ => return Err(unknown(scheme, &["df", "prop10", "cf", "strong"])),
    }))
}

fn sumrate_t1(cfg: &RunConfig, r: &Resolved, scheme: &str) -> Result<Eval, CliError> {
    let (o, eta) = r.type1()?;
    let grid = cfg.grid_points.unwrap_or(DEFAULT_GRID);
    let var = cfg.variable_bandwidth;
    let alloc = |a: type1::AllocationI, name: &str, flags: Vec<String>| {
        let [e1, e2, e3, e4] = a.eta;
        value(name, a.value, vec![("eta1R", e1), ("eta2R", e2), ("etaR1", e3), ("etaR2", e4)], flags)
    };
    Ok(Eval::Done(match scheme {
        "achievable" => match &r.split {
            Some(s) => {
                let sys = try_na!(type1::split_system(&r.ic, o, s));
                let sum: Vec<(&str, f64)> = type1::R1_COMBO.iter().chain(type1::R2_COMBO.iter()).copied().collect();
                value(scheme, try_na!(sys.support_value(&sum)), vec![], vec![])
            }
            None => {
                let (s, v) = try_na!(type1::achievable_sumrate_t1(&r.ic, o, grid));
                value(scheme, v, vec![("P1p", s.p1p), ("P1c", s.p1c), ("P2p", s.p2p), ("P2c", s.p2c)], vec![])
            }
        },
        "outer" if var => {
            let (a, h) = try_na!(type1::outer_varbw_t1(&r.ic, &o.gains(), eta));
            alloc(a, scheme, heuristic(h))
        }
        "outer" => {
            let b = type1::outer_sumrate_t1(&r.ic, o);
            value(scheme, b.value, vec![], heuristic(b.heuristic))
        }
        "sr" | "sr_if" => {
            let s = if scheme == "sr" { SchemeI::Sr } else { SchemeI::SrIf };
            if var {
                alloc(try_na!(type1::varbw_sumrate_t1(&r.ic, &o.gains(), eta, s)), scheme, vec![])
            } else {
                value(scheme, try_na!(type1::scheme_sumrate_t1(&r.ic, o, s)), vec![], vec![])
            }
        }
        "prop5" => value(scheme, try_na!(type1::prop5_sumcap(&r.ic, o)), vec![], vec![]),
        "prop6" => {
            let (a, v) = try_na!(type1::prop6_alloc(&r.ic, &o.gains(), eta));
            alloc(type1::AllocationI { eta: a, value: v }, scheme, vec![])
        }
        _ => return Err(unknown(scheme, &["achievable", "outer", "sr", "sr_if", "prop5", "prop6"])),
    }))
}

fn sumrate_t2(cfg: &RunConfig, r: &Resolved, scheme: &str) -> Result<Eval, CliError> {
    let (o, eta) = r.type2()?;
    let kind = match scheme {
        "df_sr" => Some(SchemeII::DfSr),
        "df_sr_if" => Some(SchemeII::DfSrIf),
        "outer" => Some(SchemeII::Outer),
        _ => None,
    };
    if let Some(k) = kind {
        if cfg.variable_bandwidth {
            let a = try_na!(type2::varbw_sumrate_t2(&r.ic, &o.gains(), eta, k));
            let flags = if k == SchemeII::Outer { heuristic(!(r.ic.a12 < 1.0 && o.c1 >= o.c2)) } else { vec![] };
            return Ok(Eval::Done(value(scheme, a.value, vec![("etaMAC", a.eta_mac), ("etaBC", a.eta_bc), ("xi", a.xi)], flags)));
        }
        if let Some(sp) = r.xi {
            try_na!(sp.validate());
            let v = type2::scheme_objective(k, &type2::terms(&r.ic, o, &sp));
            return Ok(Eval::Done(value(scheme, v, vec![("xi", sp.xi)], vec![])));
        }
        if k == SchemeII::Outer {
            let b = try_na!(type2::outer_sumrate_t2(&r.ic, o));
            return Ok(Eval::Done(value(scheme, b.value, vec![("xi", b.xi_star)], heuristic(b.heuristic))));
        }
        let (xi, v) = try_na!(type2::scheme_sumrate_t2(&r.ic, o, k));
        return Ok(Eval::Done(value(scheme, v, vec![("xi", xi)], vec![])));
    }
    Ok(Eval::Done(match scheme {
        "df_sumcap" => {
            let d = try_na!(type2::df_sumcap_t2(&r.ic, o));
            value(scheme, d.value, vec![("xi", d.xi)], vec![format!("regime {:?}", d.regime)])
        }
        "cf" => {
            let (reg, n) = try_na!(type2::cf_region_t2(&r.ic, o));
            value(scheme, reg.sum_rate(), vec![("sigma2", n.sigma2)], vec![])
        }
        "strong" => {
            let (reg, outer_only) = try_na!(type2::strong_region_t2(&r.ic, o));
            value(scheme, reg.sum_rate(), vec![], if outer_only { vec!["outer bound only".into()] } else { vec![] })
        }
        "prop10_limit" => value(scheme, type2::prop10_limit_sumcap(&r.ic, o), vec![], vec![]),
        _ => return Err(unknown(scheme, &["df_sr", "df_sr_if", "outer", "df_sumcap", "cf", "strong", "prop10_limit"])),
    }))
}

fn sumrate(cfg: &RunConfig, r: &Resolved, scheme: &str) -> Result<Eval, CliError> {
    match r.relay {
        Relay::TypeI(..) => sumrate_t1(cfg, r, scheme),
        Relay::TypeII(..) => sumrate_t2(cfg, r, scheme),
    }
}

/// Grid `lo, lo + (hi - lo) / steps, ..., hi`.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|i| if i == steps { hi } else { lo + (hi - lo) * i as f64 / steps as f64 }).collect()
}

fn sweep(cfg: &RunConfig, r: &Resolved) -> Result<Eval, CliError> {
    let sw = cfg.sweep.as_ref().ok_or_else(|| CliError::Usage("sweep needs a `sweep` section".into()))?;
    let xs = linspace(sw.lo, sw.hi, sw.steps);
    let scheme = scheme_name(cfg, Command::Sumrate, r);
    let pool = crate::thread_pool()?;
    let rows: Result<Vec<Vec<Option<f64>>>, CliError> = pool.install(|| {
        xs.par_iter()
            .map(|&x| {
                let mut point = cfg.with_parameter(&sw.parameter, x)?;
                point.sweep = None;
                let pr = point.resolve()?;
                Ok(match sumrate(&point, &pr, &scheme)? {
                    Eval::Done(Payload::Value { value, .. }) => vec![Some(x), Some(value)],
                    _ => vec![Some(x), None],
                })
            })
            .collect()
    });
    Ok(Eval::Done(Payload::Table(Table { columns: vec![sw.parameter.clone(), scheme], rows: rows? })))
}

/// Runs `command` (or the config's own `command`) on a validated configuration.
pub fn evaluate_config(cfg: &RunConfig, command: Option<Command>) -> Result<Outcome, CliError> {
    let command = command.or(cfg.command).ok_or_else(|| CliError::Usage("no command given".into()))?;
    let r = cfg.resolve()?;
    let scheme = scheme_name(cfg, command, &r);
    let eval = match command {
        Command::Classify => classify(&r)?,
        Command::Region => match r.relay {
            Relay::TypeI(..) => region_t1(cfg, &r, &scheme)?,
            Relay::TypeII(..) => region_t2(&r, &scheme)?,
        },
        Command::Sumrate => sumrate(cfg, &r, &scheme)?,
        Command::Sweep => sweep(cfg, &r)?,
        Command::Figure => return Err(CliError::Usage("figure presets take --name, not a config".into())),
    };
    let mut echo = cfg.linearized()?;
    echo.command = Some(command);
    Ok(match eval {
        Eval::Done(p) => Outcome { status: Status::Ok, config: echo, result: Some(p), reason: None },
        Eval::NotApplicable(m) => Outcome { status: Status::NotApplicable, config: echo, result: None, reason: Some(m) },
    })
}
