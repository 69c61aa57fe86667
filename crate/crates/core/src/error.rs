use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::channel::Violation;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// Argument outside the domain of a scalar function.
    Domain { what: &'static str, value: f64 },
    /// Parameter set failed validation.
    Invalid(Vec<Violation>),
    UnknownVariable(String),
    Infeasible,
    Unbounded,
    RegionUnbounded,
    EmptyInput,
    /// Objective returned NaN or infinity at `x`.
    NonFinite { x: f64 },
    /// Preconditions of a closed-form result are not met.
    NotApplicable(&'static str),
    /// Neither case of a two-case result applies.
    Ambiguous,
    CfInfeasible,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what}: value {value} outside domain"),
            Error::Invalid(v) => {
                write!(f, "invalid parameters: ")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Error::UnknownVariable(n) => write!(f, "unknown variable `{n}`"),
            Error::Infeasible => f.write_str("system infeasible"),
            Error::Unbounded => f.write_str("objective unbounded"),
            Error::RegionUnbounded => f.write_str("region unbounded"),
            Error::EmptyInput => f.write_str("empty input"),
            Error::NonFinite { x } => write!(f, "objective not finite at x = {x}"),
            Error::NotApplicable(why) => write!(f, "not applicable: {why}"),
            Error::Ambiguous => f.write_str("ambiguous: neither case condition holds"),
            Error::CfInfeasible => f.write_str("CF infeasible: zero relay-destination capacity"),
        }
    }
}

impl core::error::Error for Error {}
