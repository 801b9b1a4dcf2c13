//! JSON documents read and written by the command-line tool.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use flatres::graphs::{CylinderConfig, Quantifier};
use flatres::{
    CircumferenceTuple, ConstructionCertificate, GaussianRational, PrimitiveRay, Profile, ResidueTuple,
    StratumSignature, Verdict,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

/// A residue question: a stratum and one residue per pole, higher poles first.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidueRequest {
    pub format_version: u32,
    pub stratum: StratumSignature,
    pub residues: ResidueTuple,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CylinderRequest {
    pub format_version: u32,
    pub stratum: StratumSignature,
    pub circumferences: Vec<GaussianRational>,
}

impl CylinderRequest {
    pub fn tuple(&self) -> CircumferenceTuple {
        CircumferenceTuple::new(self.circumferences.clone())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub format_version: u32,
    pub stratum: StratumSignature,
    pub residues: ResidueTuple,
    pub verdict: Verdict,
}

/// Output of `witness`, and the input of `verify`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub format_version: u32,
    pub stratum: StratumSignature,
    pub residues: ResidueTuple,
    pub certificate: ConstructionCertificate,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RefusalDoc {
    pub format_version: u32,
    pub stratum: StratumSignature,
    pub residues: ResidueTuple,
    pub realizable: bool,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyStatus {
    Verified,
    Violation,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub format_version: u32,
    pub status: VerifyStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableRow {
    pub s: usize,
    pub max_zero: u32,
    pub count: usize,
    pub rays: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableDoc {
    pub format_version: u32,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Disagreement {
    pub integers: Vec<i64>,
    pub decide: bool,
    pub graph: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleDoc {
    pub format_version: u32,
    pub max_s: usize,
    pub bound: i64,
    pub mode: Quantifier,
    pub checked: usize,
    pub agreement: String,
    pub disagreements: Vec<Disagreement>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CylinderStatus {
    Realizable,
    NotRealizable,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CylinderDoc {
    pub format_version: u32,
    pub stratum: StratumSignature,
    pub circumferences: Vec<GaussianRational>,
    pub status: CylinderStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub configuration: Option<CylinderConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ray: Option<PrimitiveRay>,
}

/// Reads a path, `-` for stdin, or an inline document starting with `{`.
pub fn read_source(source: &str) -> Result<String> {
    if source.trim_start().starts_with('{') {
        return Ok(source.to_string());
    }
    if source == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
        return Ok(buf);
    }
    fs::read_to_string(source).with_context(|| format!("reading {source}"))
}

/// Parses a document, reporting the failing field path and line.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    #[derive(Deserialize)]
    struct Version {
        format_version: Option<u32>,
    }
    let de = &mut serde_json::Deserializer::from_str(text);
    let value: T = match serde_path_to_error::deserialize(de) {
        Ok(v) => v,
        Err(e) => {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if path == "." {
                bail!("document: {inner}");
            }
            bail!("field `{path}`: {inner}");
        }
    };
    let v: Version = serde_json::from_str(text)?;
    match v.format_version {
        Some(FORMAT_VERSION) => Ok(value),
        Some(other) => bail!("field `format_version`: unsupported version {other}, expected {FORMAT_VERSION}"),
        None => bail!("field `format_version` is missing"),
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

/// Writes to `path` through a temporary file in the same directory, or to
/// stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
        Some(path) => write_atomic(path, text)?,
    }
    Ok(())
}

pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
