//! JSON form of designs and a checker for documents read from disk.

use serde::{Deserialize, Serialize};

use super::gdd::{verify_gdd, Block, GroupDivisibleDesign};
use super::hadamard::{is_hadamard, HadamardMatrix};
use super::latin::{verify_latin, LatinSquare};
use super::oa::{symbols, verify_oa, verify_type1_oa, OrthogonalArray, Row, TypeIOrthogonalArray};
use crate::error::Result;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OaParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    pub strength: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GddParams {
    pub point_count: usize,
    pub strength: usize,
    pub index: usize,
    /// Omitted for a t-design (singleton groups).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<Block>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderParams {
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DesignDocument {
    Oa {
        params: OaParams,
        rows: Vec<Row>,
    },
    #[serde(rename = "type1oa")]
    Type1Oa {
        params: OaParams,
        rows: Vec<Row>,
    },
    Gdd {
        params: GddParams,
        blocks: Vec<Block>,
    },
    Latin {
        params: OrderParams,
        grid: Vec<Vec<usize>>,
    },
    Hadamard {
        params: OrderParams,
        rows: Vec<Vec<i8>>,
    },
}

/// Outcome of checking a document: `valid` is false if the design fails
/// its defining property or a declared parameter disagrees with the data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DesignReport {
    pub kind: &'static str,
    pub valid: bool,
    pub detail: serde_json::Value,
    pub mismatches: Vec<String>,
}

fn oa_params(rows: &[Row], strength: usize, index: usize) -> OaParams {
    OaParams {
        row_count: Some(rows.len()),
        columns: rows.first().map(Vec::len),
        levels: Some(symbols(rows).len()),
        strength,
        index: Some(index),
    }
}

impl DesignDocument {
    pub fn from_oa(a: &OrthogonalArray) -> Self {
        DesignDocument::Oa {
            params: oa_params(a.rows(), a.strength(), a.index()),
            rows: a.rows().to_vec(),
        }
    }

    pub fn from_type1_oa(a: &TypeIOrthogonalArray) -> Self {
        DesignDocument::Type1Oa {
            params: oa_params(a.rows(), a.strength(), a.index()),
            rows: a.rows().to_vec(),
        }
    }

    pub fn from_gdd(d: &GroupDivisibleDesign) -> Self {
        let groups = if d.group_size() == 1 {
            None
        } else {
            Some(d.groups().to_vec())
        };
        DesignDocument::Gdd {
            params: GddParams {
                point_count: d.point_count(),
                strength: d.strength(),
                index: d.index(),
                groups,
            },
            blocks: d.blocks().to_vec(),
        }
    }

    pub fn from_latin(l: &LatinSquare) -> Self {
        DesignDocument::Latin {
            params: OrderParams { order: l.order() },
            grid: l.grid().to_vec(),
        }
    }

    pub fn from_hadamard(h: &HadamardMatrix) -> Self {
        DesignDocument::Hadamard {
            params: OrderParams { order: h.order() },
            rows: h.rows().to_vec(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Checks the defining property and any declared parameters. Structural
    /// problems (ragged rows, a bad group partition) are errors.
    pub fn check(&self) -> Result<DesignReport> {
        let mut mismatches = Vec::new();
        let mut declared = |name: &str, want: Option<usize>, got: usize| {
            if let Some(w) = want {
                if w != got {
                    mismatches.push(format!("{name}: declared {w}, found {got}"));
                }
            }
        };
        let (kind, ok, detail) = match self {
            DesignDocument::Oa { params, rows } | DesignDocument::Type1Oa { params, rows } => {
                let type1 = matches!(self, DesignDocument::Type1Oa { .. });
                let balance = if type1 {
                    verify_type1_oa(rows, params.strength)?
                } else {
                    verify_oa(rows, params.strength)?
                };
                declared("rowCount", params.row_count, rows.len());
                declared("columns", params.columns, rows[0].len());
                declared("levels", params.levels, symbols(rows).len());
                if let Some(lambda) = balance.lambda() {
                    declared("index", params.index, lambda);
                }
                (
                    if type1 { "type1oa" } else { "oa" },
                    balance.is_balanced(),
                    serde_json::to_value(&balance)?,
                )
            }
            DesignDocument::Gdd { params, blocks } => {
                let d = match &params.groups {
                    Some(groups) => GroupDivisibleDesign::new(
                        params.point_count,
                        groups.clone(),
                        blocks.clone(),
                        params.strength,
                        params.index,
                    )?,
                    None => GroupDivisibleDesign::t_design(
                        params.point_count,
                        blocks.clone(),
                        params.strength,
                        params.index,
                    )?,
                };
                let check = verify_gdd(&d);
                ("gdd", check.is_valid(), serde_json::to_value(&check)?)
            }
            DesignDocument::Latin { params, grid } => {
                declared("order", Some(params.order), grid.len());
                let ok = verify_latin(grid);
                ("latin", ok, serde_json::Value::Bool(ok))
            }
            DesignDocument::Hadamard { params, rows } => {
                declared("order", Some(params.order), rows.len());
                let ok = is_hadamard(rows);
                ("hadamard", ok, serde_json::Value::Bool(ok))
            }
        };
        Ok(DesignReport {
            kind,
            valid: ok && mismatches.is_empty(),
            detail,
            mismatches,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::catalog::{affine_plane_gdd, fano_pair};
    use crate::designs::hadamard::paley;
    use crate::designs::oa::parity_split;

    #[test]
    fn round_trips_and_checks() {
        let (even, _) = parity_split(3).unwrap();
        let (fano, _) = fano_pair();
        let docs = vec![
            DesignDocument::from_oa(&even),
            DesignDocument::from_type1_oa(&TypeIOrthogonalArray::permutations(3)),
            DesignDocument::from_gdd(&affine_plane_gdd()),
            DesignDocument::from_gdd(&fano),
            DesignDocument::from_latin(&LatinSquare::cyclic(3).unwrap()),
            DesignDocument::from_hadamard(&paley(7).unwrap().hadamard),
        ];
        for doc in docs {
            let text = doc.to_json();
            let back = DesignDocument::from_json(&text).unwrap();
            assert_eq!(back, doc);
            let report = back.check().unwrap();
            assert!(report.valid, "{text}: {report:?}");
        }
    }

    #[test]
    fn wire_format() {
        let (even, _) = parity_split(3).unwrap();
        let text = DesignDocument::from_oa(&even).to_json();
        assert!(text.starts_with(r#"{"kind":"oa","params":{"rowCount":4,"columns":3,"levels":2,"strength":2,"index":1},"rows":[["0","0","0"]"#));
        let gdd = DesignDocument::from_gdd(&affine_plane_gdd()).to_json();
        assert!(gdd.contains(r#""groups":[[1,2,3],[4,5,6],[7,8,9]]"#));
    }

    #[test]
    fn failures_are_reported() {
        let doc = DesignDocument::from_json(
            r#"{"kind":"oa","params":{"strength":3},"rows":[["0","0","0"],["0","1","1"],["1","0","1"],["1","1","0"]]}"#,
        )
        .unwrap();
        assert!(!doc.check().unwrap().valid);
        let doc = DesignDocument::from_json(
            r#"{"kind":"oa","params":{"strength":2,"index":2},"rows":[["0","0","0"],["0","1","1"],["1","0","1"],["1","1","0"]]}"#,
        )
        .unwrap();
        let report = doc.check().unwrap();
        assert!(!report.valid);
        assert_eq!(report.mismatches.len(), 1);
        let doc = DesignDocument::from_json(r#"{"kind":"latin","params":{"order":2},"grid":[[1,1],[2,2]]}"#).unwrap();
        assert!(!doc.check().unwrap().valid);
        let doc = DesignDocument::from_json(
            r#"{"kind":"gdd","params":{"pointCount":4,"strength":1,"index":1,"groups":[[1,2],[2,3]]},"blocks":[[1,3]]}"#,
        )
        .unwrap();
        assert!(doc.check().is_err());
    }
}
