//! JSON run configurations for the batch front-end.

use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::parse_rational;
use crate::spectral::{FieldSpec, GridSpec};
use crate::structure::StructureMatrix;
use crate::verify::{GeneratorSpec, GridPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckStructure,
    VerifyTransport,
    VerifyMaximal,
    Scaling,
    Refine,
    Toy,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckStructure => "check-structure",
            Command::VerifyTransport => "verify-transport",
            Command::VerifyMaximal => "verify-maximal",
            Command::Scaling => "scaling",
            Command::Refine => "refine",
            Command::Toy => "toy",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "check-structure" => Ok(Command::CheckStructure),
            "verify-transport" => Ok(Command::VerifyTransport),
            "verify-maximal" => Ok(Command::VerifyMaximal),
            "scaling" => Ok(Command::Scaling),
            "refine" => Ok(Command::Refine),
            "toy" => Ok(Command::Toy),
            other => Err(Error::Config(format!("command: unknown command {other:?}"))),
        }
    }
}

/// Either explicit field specifications or a seeded generator block.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldsSource {
    List(Vec<FieldSpec>),
    Generator(GeneratorSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub structure: StructureMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fields: Option<FieldsSource>,
    /// `(beta, gamma)` pairs as `"p/q"` strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolutions: Option<Vec<usize>>,
    /// Optional left-exponent shift for the scaling detection probe.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe_shift: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_policy: Option<GridPolicy>,
    /// Target group for the toy scan (1 or 2, default 2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toy_group: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    /// Output path prefix; the CLI `--out` flag overrides it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl RunConfig {
    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json)
            .map_err(|e| Error::Config(format!("configuration: {e}")))
    }

    /// Resolve the field list, running the generator when one is given.
    /// The generator's seed rides along for report provenance.
    pub fn resolve_fields(&self, grid: &GridSpec) -> Result<(Vec<FieldSpec>, Option<u64>)> {
        match &self.fields {
            None => Err(Error::Config("fields: missing".into())),
            Some(FieldsSource::List(list)) => {
                if list.is_empty() {
                    return Err(Error::Config("fields: empty".into()));
                }
                Ok((list.clone(), None))
            }
            Some(FieldsSource::Generator(g)) => {
                if g.count == 0 {
                    return Err(Error::Config("fields: empty".into()));
                }
                let fields = g.generate(grid, self.structure.dims())?;
                Ok((fields, Some(g.seed)))
            }
        }
    }

    pub fn parsed_exponents(&self) -> Result<Vec<(BigRational, BigRational)>> {
        let raw = self
            .exponents
            .as_ref()
            .ok_or_else(|| Error::Config("exponents: missing".into()))?;
        if raw.is_empty() {
            return Err(Error::Config("exponents: empty".into()));
        }
        raw.iter()
            .enumerate()
            .map(|(i, (b, g))| {
                let beta = parse_rational(b)
                    .map_err(|e| Error::Config(format!("exponents[{i}].beta: {e}")))?;
                let gamma = parse_rational(g)
                    .map_err(|e| Error::Config(format!("exponents[{i}].gamma: {e}")))?;
                Ok((beta, gamma))
            })
            .collect()
    }

    pub fn required_grid(&self) -> Result<&GridSpec> {
        self.grid
            .as_ref()
            .ok_or_else(|| Error::Config("grid: missing".into()))
    }

    pub fn required_radii(&self) -> Result<&[f64]> {
        match self.radii.as_deref() {
            None => Err(Error::Config("radii: missing".into())),
            Some([]) => Err(Error::Config("radii: empty".into())),
            Some(r) => Ok(r),
        }
    }
}
