//! Serialized documents. Every JSON document carries `schema_version` and a
//! `kind` tag; `schema/report.schema.json` describes all of them.

use std::str::FromStr;

use dicke_core::radical::format_ratio;
use dicke_core::sweep::OracleSummary;
use dicke_core::{CertificationReport, IndexSet, OccupationIndex, ReducedDickeState, WitnessChoice};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1.0.0";
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");
pub const CSV_COLUMNS: [&str; 6] = ["m", "k", "discriminant", "witness_value", "spectral_min", "is_npt"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub kind: String,
    pub occupation: Vec<usize>,
    pub verdict: String,
    pub records: Vec<RecordDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordDocument {
    pub m: usize,
    pub k: usize,
    /// Exact `p/q`.
    pub discriminant: String,
    pub witness_value: f64,
    pub spectral_min: f64,
    pub is_npt: bool,
    pub witness: WitnessDocument,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub m_hat: Vec<usize>,
    pub k_hat: Vec<usize>,
    pub k_hat_prime: Vec<usize>,
    pub delta: Vec<i64>,
    pub positions: Option<[usize; 2]>,
}

/// One CSV row, columns in [`CSV_COLUMNS`] order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRecord {
    pub m: usize,
    pub k: usize,
    pub discriminant: String,
    pub witness_value: f64,
    pub spectral_min: f64,
    pub is_npt: bool,
}

impl From<&WitnessChoice> for WitnessDocument {
    fn from(w: &WitnessChoice) -> Self {
        Self {
            m_hat: w.m_hat.entries().to_vec(),
            k_hat: w.k_hat.entries().to_vec(),
            k_hat_prime: w.k_hat_prime.entries().to_vec(),
            delta: w.delta.clone(),
            positions: w.positions.map(|(i, j)| [i, j]),
        }
    }
}

impl From<&CertificationReport> for ReportDocument {
    fn from(r: &CertificationReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            kind: "certification".into(),
            occupation: r.parent.entries().to_vec(),
            verdict: r.verdict.as_str().into(),
            records: r
                .records
                .iter()
                .map(|rec| RecordDocument {
                    m: rec.m,
                    k: rec.k,
                    discriminant: format_ratio(&rec.discriminant),
                    witness_value: rec.optimal_witness_value(),
                    spectral_min: rec.spectral_min,
                    is_npt: rec.is_npt,
                    witness: (&rec.witness).into(),
                    timing_ms: rec.elapsed_ms,
                })
                .collect(),
        }
    }
}

impl RecordDocument {
    pub fn csv_row(&self) -> CsvRecord {
        CsvRecord {
            m: self.m,
            k: self.k,
            discriminant: self.discriminant.clone(),
            witness_value: self.witness_value,
            spectral_min: self.spectral_min,
            is_npt: self.is_npt,
        }
    }

    pub fn discriminant_value(&self) -> Result<BigRational, String> {
        parse_ratio(&self.discriminant)
    }
}

/// Parses `p/q` (or a bare integer) into an exact rational.
pub fn parse_ratio(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s).map_err(|e| format!("bad rational {s:?}: {e}"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightDocument {
    pub part: Vec<usize>,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionDocument {
    pub schema_version: String,
    pub kind: String,
    pub occupation: Vec<usize>,
    pub m: usize,
    pub weights: Vec<WeightDocument>,
}

impl From<&ReducedDickeState> for ReductionDocument {
    fn from(r: &ReducedDickeState) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            kind: "reduction".into(),
            occupation: r.parent().entries().to_vec(),
            m: r.subsystem_size(),
            weights: r
                .weights()
                .iter()
                .map(|(p, w)| WeightDocument {
                    part: p.entries().to_vec(),
                    weight: format_ratio(w.value()),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub schema_version: String,
    pub kind: String,
    pub occupation: Vec<usize>,
    pub m: usize,
    pub k: usize,
    pub spectrum: Vec<f64>,
    pub spectral_min: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dense_spectrum: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexSetDocument {
    pub schema_version: String,
    pub kind: String,
    pub d: usize,
    pub norm: usize,
    pub bound: Option<Vec<usize>>,
    pub members: Vec<Vec<usize>>,
}

impl From<&IndexSet> for IndexSetDocument {
    fn from(s: &IndexSet) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            kind: "index_set".into(),
            d: s.dim(),
            norm: s.norm(),
            bound: s.bound().map(|b| b.entries().to_vec()),
            members: s.iter().map(|x| x.entries().to_vec()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleDocument {
    pub schema_version: String,
    pub kind: String,
    pub max_d: usize,
    pub max_n: usize,
    pub parents: usize,
    pub checks: usize,
    pub max_entry_deviation: f64,
    pub max_spectrum_deviation: f64,
    pub mismatches: Vec<String>,
    pub passed: bool,
}

impl OracleDocument {
    pub fn new(max_d: usize, max_n: usize, s: &OracleSummary) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            kind: "oracle_check".into(),
            max_d,
            max_n,
            parents: s.parents,
            checks: s.checks,
            max_entry_deviation: s.max_entry_deviation,
            max_spectrum_deviation: s.max_spectrum_deviation,
            mismatches: s.mismatches.iter().map(|m| format!("{m:?}")).collect(),
            passed: s.passed(),
        }
    }
}

pub fn occupation_string(x: &[usize]) -> String {
    OccupationIndex::new(x.to_vec())
        .map(|o| o.to_string())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use dicke_core::certify;

    #[test]
    fn discriminants_round_trip() {
        let report = certify(&"1,2".parse().unwrap()).unwrap();
        let doc = ReportDocument::from(&report);
        for (rec, orig) in doc.records.iter().zip(&report.records) {
            assert_eq!(rec.discriminant_value().unwrap(), orig.discriminant);
        }
        let json = serde_json::to_string(&doc).unwrap();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn csv_row_field_order() {
        let report = certify(&"1,1".parse().unwrap()).unwrap();
        let doc = ReportDocument::from(&report);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(doc.records[0].csv_row()).unwrap();
        let text = String::from_utf8(w.into_inner().unwrap()).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_COLUMNS.join(","));
    }

    #[test]
    fn embedded_schema_version_matches() {
        let schema: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
        assert_eq!(schema["$defs"]["version"]["const"], SCHEMA_VERSION);
    }
}
