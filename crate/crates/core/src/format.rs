//! JSON interchange files.
//!
//! Entries are JSON integers when they are integral and fit in 64 bits, and
//! strings otherwise (`"-7/3"`, or a long integer). Row and column labels are
//! implicit: rows `1..=p`, columns `1..=q`.

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::engine::{Audit, Branch, TheoremCertificate};
use crate::error::{Error, Result};
use crate::matrix::{IndexSet, IndexedMatrix};
use crate::oracle::InstanceSpec;
use crate::rings::{Ring, RingElement};
use crate::transversal::{ColumnPartition, Instance};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    pub fn from_element(e: &RingElement) -> Self {
        let r = e.to_ratio();
        if r.denom().is_one() {
            if let Some(v) = r.numer().to_i64() {
                return Entry::Int(v);
            }
        }
        Entry::Text(e.to_string())
    }

    pub fn to_element(&self, ring: Ring) -> Result<RingElement> {
        match self {
            Entry::Int(v) => Ok(ring.from_i64(*v)),
            Entry::Text(s) => ring.parse_element(s),
        }
    }
}

fn encode_rows(m: &IndexedMatrix) -> Vec<Vec<Entry>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(Entry::from_element).collect())
        .collect()
}

fn decode_rows(ring: Ring, rows: &[Vec<Entry>]) -> Result<IndexedMatrix> {
    let width = rows.first().map_or(0, Vec::len);
    if let Some(i) = rows.iter().position(|r| r.len() != width) {
        return Err(Error::Parse(format!("row {} has {} entries, expected {width}", i + 1, rows[i].len())));
    }
    let entries = rows
        .iter()
        .map(|r| r.iter().map(|e| e.to_element(ring)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    IndexedMatrix::from_rows(ring, entries)
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Two-space indented JSON with arrays of scalars kept on one line, so a
/// matrix prints one row per line.
fn to_json<T: Serialize>(value: &T) -> String {
    fn write(v: &Value, indent: usize, out: &mut String) {
        let pad = |n: usize| "  ".repeat(n);
        match v {
            Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
                let inner: Vec<String> = items.iter().map(Value::to_string).collect();
                out.push_str(&format!("[{}]", inner.join(", ")));
            }
            Value::Array(items) => {
                out.push_str("[\n");
                for (i, x) in items.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    write(x, indent + 1, out);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push(']');
            }
            Value::Object(map) if map.len() <= 1 && map.values().all(|x| !x.is_array() && !x.is_object()) => {
                let inner: Vec<String> = map.iter().map(|(k, x)| format!("{}: {x}", Value::String(k.clone()))).collect();
                out.push_str(&format!("{{{}}}", inner.join("")));
            }
            Value::Object(map) => {
                out.push_str("{\n");
                for (i, (k, x)) in map.iter().enumerate() {
                    out.push_str(&format!("{}{}: ", pad(indent + 1), Value::String(k.clone())));
                    write(x, indent + 1, out);
                    out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push('}');
            }
            scalar => out.push_str(&scalar.to_string()),
        }
    }
    let mut out = String::new();
    write(&serde_json::to_value(value).expect("serializable"), 0, &mut out);
    out.push('\n');
    out
}

/// How a generated instance was drawn.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Provenance {
    pub prng: String,
    pub spec: InstanceSpec,
    pub require_hypothesis: bool,
    pub attempts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct InstanceFile {
    pub ring: Ring,
    pub rows: Vec<Vec<Entry>>,
    pub partition: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance, provenance: Option<Provenance>) -> Self {
        InstanceFile {
            ring: inst.matrix().ring(),
            rows: encode_rows(inst.matrix()),
            partition: inst.partition().blocks().iter().map(|b| b.as_slice().to_vec()).collect(),
            provenance,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.rows.is_empty() {
            return Err(Error::Parse("the matrix needs at least one row".into()));
        }
        let matrix = decode_rows(self.ring, &self.rows)?;
        let blocks = self
            .partition
            .iter()
            .map(|b| IndexSet::new(b.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        let partition = ColumnPartition::new(blocks, matrix.cols())?;
        Instance::new(matrix, partition)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CertificateFile {
    #[serde(rename = "Q")]
    pub q: Vec<Vec<Entry>>,
    pub m: usize,
    pub rows_aprime: Vec<usize>,
    pub possibly_bad_blocks: Vec<usize>,
    pub branch: String,
    pub engine_version: String,
}

impl CertificateFile {
    pub fn from_certificate(cert: &TheoremCertificate) -> Self {
        CertificateFile {
            q: encode_rows(&cert.q),
            m: cert.m,
            rows_aprime: cert.rows.as_slice().to_vec(),
            possibly_bad_blocks: cert.possibly_bad_blocks.clone(),
            branch: cert.branch.to_string(),
            engine_version: ENGINE_VERSION.to_string(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// Rebuilds a certificate for `ring` with an empty audit.
    pub fn to_certificate(&self, ring: Ring) -> Result<TheoremCertificate> {
        let q = decode_rows(ring, &self.q)?;
        Ok(TheoremCertificate {
            q,
            rows: IndexSet::new(self.rows_aprime.iter().copied())?,
            m: self.m,
            possibly_bad_blocks: self.possibly_bad_blocks.clone(),
            branch: self.branch.parse::<Branch>()?,
            audit: Audit::default(),
        })
    }
}

/// Printed by `check` and `certify` when an invertible transversal exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct WitnessReport {
    pub hypothesis: String,
    pub witness_columns: Vec<usize>,
    pub determinant: Entry,
}

impl WitnessReport {
    pub fn new(columns: &IndexSet, determinant: &RingElement) -> Self {
        WitnessReport {
            hypothesis: "FAILS".into(),
            witness_columns: columns.as_slice().to_vec(),
            determinant: Entry::from_element(determinant),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct EchelonReport {
    pub t: usize,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<Entry>>,
    #[serde(rename = "QM")]
    pub qm: Vec<Vec<Entry>>,
    /// `[column, row]` pairs of the unit columns.
    pub pivots: Vec<(usize, usize)>,
}

impl EchelonReport {
    pub fn new(result: &crate::echelon::EchelonResult) -> Self {
        EchelonReport {
            t: result.t,
            q: encode_rows(&result.q),
            qm: encode_rows(&result.reduced),
            pivots: result.pivots.clone(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

pub fn rado_report_to_json(report: &crate::rado::RadoReport) -> String {
    to_json(report)
}

pub fn parse_rado_report(text: &str) -> Result<crate::rado::RadoReport> {
    parse_json(text)
}
