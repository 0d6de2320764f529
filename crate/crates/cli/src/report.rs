use std::fmt;
use std::process::ExitCode;

use planar_core::bounds::BoundsError;
use planar_core::curve::CurveError;
use planar_core::factor::FactorError;
use planar_core::gf::GfError;
use planar_core::pntest::PnError;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Top-level JSON document written by every subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub inputs: Value,
    pub tool_version: String,
    pub outputs: Value,
    pub warnings: Vec<String>,
}

impl ReportEnvelope {
    pub fn new(command: &str, inputs: Value, outputs: Value, warnings: Vec<String>) -> Self {
        Self {
            command: command.to_string(),
            inputs,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            outputs,
            warnings,
        }
    }
}

/// Failure classes, mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or a request beyond the enumeration caps.
    Input(String),
    /// The computation contradicted one of its own checks.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::Internal(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Internal(m) => write!(f, "internal check failed: {m}"),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<PnError> for CliError {
    fn from(e: PnError) -> Self {
        match e {
            PnError::Field(GfError::FieldTooLarge { .. }) => CliError::Input(e.to_string()),
            PnError::Field(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::MNotNormalized { .. }
            | CurveError::MTooSmall(_)
            | CurveError::WrongRegime { .. }
            | CurveError::ExtensionNotMultipleOfL { .. }
            | CurveError::CapExceeded { .. }
            | CurveError::Bounds(_) => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<FactorError> for CliError {
    fn from(e: FactorError) -> Self {
        match e {
            FactorError::Invariant(_) | FactorError::Poly(_) => CliError::Internal(e.to_string()),
            FactorError::Curve(c) => c.into(),
            FactorError::Pn(p) => p.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    Ok(serde_json::to_value(v)?)
}
