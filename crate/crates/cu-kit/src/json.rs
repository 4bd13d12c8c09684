//! JSON encodings: the Bratteli diagram schema, law reports, and the
//! positive-element fixtures used by the oracle self-test.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use cu_kit_core::bratteli::BratteliDiagram;
use cu_kit_core::laws::LawReport;
use cu_kit_core::matrix_map::MatrixCuMap;

use crate::oracle::{FiniteDimAlgebra, OracleError, PositiveElement};

#[derive(Clone, Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(String),
    #[error("{0}")]
    Schema(String),
}

/// The on-disk diagram schema:
/// `{ "dims": [[int,...],...], "mults": [[[int,...],...],...],
///    "stationary": bool (default false), "unital": bool (default false) }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BratteliJson {
    pub dims: Vec<Vec<u64>>,
    pub mults: Vec<Vec<Vec<u64>>>,
    #[serde(default)]
    pub stationary: bool,
    #[serde(default)]
    pub unital: bool,
}

pub fn parse_bratteli(text: &str) -> Result<BratteliDiagram, JsonError> {
    let raw: BratteliJson =
        serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))?;
    let mut mults = Vec::with_capacity(raw.mults.len());
    for (i, rows) in raw.mults.iter().enumerate() {
        let rows: Vec<Vec<u128>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as u128).collect())
            .collect();
        let m = MatrixCuMap::from_rows(&rows)
            .map_err(|e| JsonError::Schema(format!("multiplicity matrix at stage {}: {e}", i + 1)))?;
        mults.push(m);
    }
    BratteliDiagram::new(raw.dims, mults, raw.stationary, raw.unital)
        .map_err(|e| JsonError::Schema(e.to_string()))
}

/// Serialized shape of a law report:
/// `{ "law": string, "cases": int, "failures": int,
///    "first_counterexample": string or null }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LawReportJson {
    pub law: String,
    pub cases: u32,
    pub failures: u32,
    pub first_counterexample: Option<String>,
}

impl From<&LawReport> for LawReportJson {
    fn from(r: &LawReport) -> Self {
        LawReportJson {
            law: r.law.clone(),
            cases: r.cases,
            failures: r.failures,
            first_counterexample: r.first_counterexample.clone(),
        }
    }
}

pub fn law_reports_json(reports: &[LawReport]) -> Vec<LawReportJson> {
    reports.iter().map(LawReportJson::from).collect()
}

/// Positive element fixture: per-block row-major `[re, im]` pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositiveElementJson {
    pub block_sizes: Vec<usize>,
    pub blocks: Vec<Vec<[f64; 2]>>,
}

impl PositiveElementJson {
    pub fn decode(&self) -> Result<(FiniteDimAlgebra, PositiveElement), JsonError> {
        let algebra = FiniteDimAlgebra::new(self.block_sizes.clone())
            .map_err(|e| JsonError::Schema(e.to_string()))?;
        if self.blocks.len() != self.block_sizes.len() {
            return Err(JsonError::Schema(format!(
                "expected {} blocks, got {}",
                self.block_sizes.len(),
                self.blocks.len()
            )));
        }
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (i, (entries, &n)) in self.blocks.iter().zip(&self.block_sizes).enumerate() {
            if entries.len() != n * n {
                return Err(JsonError::Schema(format!(
                    "block {i} has {} entries, expected {}",
                    entries.len(),
                    n * n
                )));
            }
            blocks.push(DMatrix::from_fn(n, n, |r, c| {
                let [re, im] = entries[r * n + c];
                Complex::new(re, im)
            }));
        }
        let element = PositiveElement::new(&algebra, blocks)
            .map_err(|e: OracleError| JsonError::Schema(e.to_string()))?;
        Ok((algebra, element))
    }

    pub fn encode(algebra: &FiniteDimAlgebra, element: &PositiveElement) -> Self {
        let blocks = element
            .blocks()
            .iter()
            .map(|b| {
                let n = b.nrows();
                let mut out = Vec::with_capacity(n * n);
                for r in 0..n {
                    for c in 0..n {
                        out.push([b[(r, c)].re, b[(r, c)].im]);
                    }
                }
                out
            })
            .collect();
        PositiveElementJson { block_sizes: algebra.block_sizes().to_vec(), blocks }
    }
}

/// Self-test fixture: a pair of positive elements over one algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementPairJson {
    pub a: PositiveElementJson,
    pub b: PositiveElementJson,
}
