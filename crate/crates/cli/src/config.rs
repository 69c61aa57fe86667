//! Run configuration: one JSON document per run.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use icobr_core::channel::{ObrcGainsI, ObrcGainsII, Validate};
use icobr_core::type2::RelayPowerSplit;
use icobr_core::{db_to_linear, IcParams, ObrcTypeI, ObrcTypeII, PowerSplit};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Type1,
    Type2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Linear,
    Db,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Classify,
    Region,
    Sumrate,
    Sweep,
    Figure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IcConfig {
    pub a12: f64,
    pub a21: f64,
    #[serde(rename = "P1")]
    pub p1: f64,
    #[serde(rename = "P2")]
    pub p2: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObrcIConfig {
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
    #[serde(rename = "P1R")]
    pub p1r: f64,
    #[serde(rename = "P2R")]
    pub p2r: f64,
    #[serde(rename = "PR1")]
    pub pr1: f64,
    #[serde(rename = "PR2")]
    pub pr2: f64,
    #[serde(rename = "eta1R", default = "one")]
    pub eta1r: f64,
    #[serde(rename = "eta2R", default = "one")]
    pub eta2r: f64,
    #[serde(rename = "etaR1", default = "one")]
    pub etar1: f64,
    #[serde(rename = "etaR2", default = "one")]
    pub etar2: f64,
    /// Total bandwidth for variable-allocation commands.
    #[serde(default = "one")]
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObrcIIConfig {
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
    #[serde(rename = "P1R")]
    pub p1r: f64,
    #[serde(rename = "P2R")]
    pub p2r: f64,
    #[serde(rename = "PR")]
    pub pr: f64,
    #[serde(rename = "etaMAC", default = "one")]
    pub eta_mac: f64,
    #[serde(rename = "etaBC", default = "one")]
    pub eta_bc: f64,
    #[serde(default = "one")]
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitConfig {
    #[serde(rename = "P1p")]
    pub p1p: f64,
    #[serde(rename = "P1c")]
    pub p1c: f64,
    #[serde(rename = "P2p")]
    pub p2p: f64,
    #[serde(rename = "P2c")]
    pub p2c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Dotted path to a numeric field, e.g. `obrc.b1`.
    pub parameter: String,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: Model,
    #[serde(default)]
    pub units: Units,
    pub ic: IcConfig,
    pub obrc: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub variable_bandwidth: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
}

/// Relay parameters after model dispatch.
#[derive(Debug, Clone, PartialEq)]
pub enum Relay {
    TypeI(ObrcTypeI, f64),
    TypeII(ObrcTypeII, f64),
}

/// Validated, linear-unit parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub ic: IcParams,
    pub relay: Relay,
    pub split: Option<PowerSplit>,
    pub xi: Option<RelayPowerSplit>,
}

impl Resolved {
    pub fn type1(&self) -> Result<(&ObrcTypeI, f64), CliError> {
        match &self.relay {
            Relay::TypeI(o, eta) => Ok((o, *eta)),
            Relay::TypeII(..) => Err(CliError::Usage("this selector needs model type1".into())),
        }
    }

    pub fn type2(&self) -> Result<(&ObrcTypeII, f64), CliError> {
        match &self.relay {
            Relay::TypeII(o, eta) => Ok((o, *eta)),
            Relay::TypeI(..) => Err(CliError::Usage("this selector needs model type2".into())),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(vec![format!("config: {e}")]))
    }

    fn power(&self, x: f64) -> Result<f64, CliError> {
        match self.units {
            Units::Linear => Ok(x),
            Units::Db => db_to_linear(x).map_err(|e| CliError::Validation(vec![format!("power: {e}")])),
        }
    }

    fn obrc_i(&self) -> Result<ObrcIConfig, CliError> {
        serde_json::from_value(self.obrc.clone())
            .map_err(|e| CliError::Validation(vec![format!("obrc: {e} (model type1 expects b1, b2, c1, c2, P1R, P2R, PR1, PR2, eta1R, eta2R, etaR1, etaR2, eta)")]))
    }

    fn obrc_ii(&self) -> Result<ObrcIIConfig, CliError> {
        serde_json::from_value(self.obrc.clone())
            .map_err(|e| CliError::Validation(vec![format!("obrc: {e} (model type2 expects b1, b2, c1, c2, P1R, P2R, PR, etaMAC, etaBC, eta)")]))
    }

    /// Checks every field and converts powers to linear units.
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let ic = IcParams::new(self.ic.a12, self.ic.a21, self.power(self.ic.p1)?, self.power(self.ic.p2)?);
        let mut errs: Vec<String> = ic.violations().iter().map(|v| format!("ic.{v}")).collect();
        let relay = match self.model {
            Model::Type1 => {
                let o = self.obrc_i()?;
                let gains = ObrcGainsI {
                    b1: o.b1,
                    b2: o.b2,
                    c1: o.c1,
                    c2: o.c2,
                    p1r: self.power(o.p1r)?,
                    p2r: self.power(o.p2r)?,
                    pr1: self.power(o.pr1)?,
                    pr2: self.power(o.pr2)?,
                };
                let r = gains.with_allocation([o.eta1r, o.eta2r, o.etar1, o.etar2]);
                errs.extend(r.violations().iter().map(|v| format!("obrc.{v}")));
                if !(o.eta > 0.0 && o.eta.is_finite()) {
                    errs.push(format!("obrc.eta must be positive (observed {})", o.eta));
                }
                Relay::TypeI(r, o.eta)
            }
            Model::Type2 => {
                let o = self.obrc_ii()?;
                let gains = ObrcGainsII {
                    b1: o.b1,
                    b2: o.b2,
                    c1: o.c1,
                    c2: o.c2,
                    p1r: self.power(o.p1r)?,
                    p2r: self.power(o.p2r)?,
                    pr: self.power(o.pr)?,
                };
                let r = gains.with_allocation(o.eta_mac, o.eta_bc);
                errs.extend(r.violations().iter().map(|v| format!("obrc.{v}")));
                if !(o.eta > 0.0 && o.eta.is_finite()) {
                    errs.push(format!("obrc.eta must be positive (observed {})", o.eta));
                }
                Relay::TypeII(r, o.eta)
            }
        };
        let split = match &self.split {
            None => None,
            Some(s) => {
                let ps = PowerSplit {
                    p1p: self.power(s.p1p)?,
                    p1c: self.power(s.p1c)?,
                    p2p: self.power(s.p2p)?,
                    p2c: self.power(s.p2c)?,
                };
                errs.extend(ps.violations(&ic).iter().map(|v| format!("split.{v}")));
                Some(ps)
            }
        };
        let xi = self.xi.map(RelayPowerSplit::full);
        if let Some(x) = self.xi {
            if !(0.0..=1.0).contains(&x) {
                errs.push(format!("xi outside [0, 1] (observed {x})"));
            }
        }
        if let Some(sw) = &self.sweep {
            let probe = self.with_parameter(&sw.parameter, sw.lo).and_then(|mut c| {
                c.sweep = None;
                c.resolve()
            });
            if let Err(e) = probe {
                errs.push(e.to_string());
            }
            if sw.steps == 0 || !(sw.lo.is_finite() && sw.hi.is_finite()) {
                errs.push(format!("sweep needs finite bounds and steps >= 1 (observed steps {})", sw.steps));
            }
        }
        if !errs.is_empty() {
            return Err(CliError::Validation(errs));
        }
        Ok(Resolved { ic, relay, split, xi })
    }

    /// Copy with all powers in linear units; evaluates identically.
    pub fn linearized(&self) -> Result<Self, CliError> {
        let mut out = self.clone();
        if self.units == Units::Linear {
            return Ok(out);
        }
        out.units = Units::Linear;
        out.ic.p1 = self.power(self.ic.p1)?;
        out.ic.p2 = self.power(self.ic.p2)?;
        let keys: &[&str] = match self.model {
            Model::Type1 => &["P1R", "P2R", "PR1", "PR2"],
            Model::Type2 => &["P1R", "P2R", "PR"],
        };
        if let Value::Object(m) = &mut out.obrc {
            for k in keys {
                if let Some(v) = m.get(*k).and_then(Value::as_f64) {
                    m.insert((*k).to_string(), serde_json::json!(self.power(v)?));
                }
            }
        }
        if let Some(s) = &mut out.split {
            s.p1p = self.power(s.p1p)?;
            s.p1c = self.power(s.p1c)?;
            s.p2p = self.power(s.p2p)?;
            s.p2c = self.power(s.p2c)?;
        }
        Ok(out)
    }

    /// Copy with the numeric field at a dotted path set to `x`.
    pub fn with_parameter(&self, path: &str, x: f64) -> Result<Self, CliError> {
        let mut v = serde_json::to_value(self).map_err(|e| CliError::Usage(e.to_string()))?;
        let pointer = format!("/{}", path.replace('.', "/"));
        let missing = || CliError::Validation(vec![format!("sweep.parameter `{path}` does not name a field")]);
        if v.pointer(&pointer).is_none() {
            // Defaulted fields are absent from the document; insert them so the sweep can set them.
            let (parent, leaf) = pointer.rsplit_once('/').ok_or_else(missing)?;
            let obj = v.pointer_mut(parent).and_then(Value::as_object_mut).ok_or_else(missing)?;
            obj.insert(leaf.to_string(), serde_json::json!(0.0));
        }
        let slot = v.pointer_mut(&pointer).ok_or_else(missing)?;
        if !slot.is_number() {
            return Err(CliError::Validation(vec![format!("sweep.parameter `{path}` is not numeric")]));
        }
        *slot = serde_json::json!(x);
        serde_json::from_value(v).map_err(|e| CliError::Validation(vec![format!("sweep.parameter `{path}`: {e}")]))
    }
}
