use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::BasedComplex;
use crate::error::{Error, Result};
use crate::grouprings::{GroupRingElem, GroupSpec};
use crate::matrix::Matrix;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    group: GroupSpec,
    min_degree: i64,
    ranks: Vec<usize>,
    #[serde(default)]
    differentials: BTreeMap<i64, Vec<Vec<GroupRingElem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Vec<String>>>,
}

pub(super) fn to_value(c: &BasedComplex) -> serde_json::Value {
    let differentials = c
        .differentials
        .iter()
        .enumerate()
        .map(|(k, d)| (c.min_degree + k as i64, d.iter_rows().map(<[GroupRingElem]>::to_vec).collect()))
        .collect();
    let file = ComplexFile {
        group: c.spec().clone(),
        min_degree: c.min_degree,
        ranks: c.ranks.clone(),
        differentials,
        labels: Some(c.labels.clone()),
    };
    serde_json::to_value(file).expect("complex serializes")
}

pub(super) fn to_json(c: &BasedComplex) -> String {
    serde_json::to_string_pretty(&to_value(c)).expect("complex serializes")
}

pub(super) fn from_json(s: &str) -> Result<BasedComplex> {
    let file: ComplexFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    build(file)
}

pub(super) fn from_value(v: serde_json::Value) -> Result<BasedComplex> {
    let file: ComplexFile = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    build(file)
}

fn build(file: ComplexFile) -> Result<BasedComplex> {
    file.group.check()?;
    let n = file.ranks.len();
    let top = file.min_degree + n as i64 - 1;
    if let Some((&bad, _)) = file.differentials.iter().find(|(&i, _)| i < file.min_degree || i >= top) {
        return Err(Error::ShapeMismatch(format!(
            "differential given in degree {bad}, outside {}..{}",
            file.min_degree,
            top - 1
        )));
    }
    let mut differentials = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n.saturating_sub(1) {
        let degree = file.min_degree + k as i64;
        let (rows, cols) = (file.ranks[k + 1], file.ranks[k]);
        let m = match file.differentials.get(&degree) {
            None => Matrix::filled(rows, cols, GroupRingElem::zero()),
            Some(given) => {
                if given.len() != rows || given.iter().any(|r| r.len() != cols) {
                    return Err(Error::ShapeMismatch(format!(
                        "differential in degree {degree} must be {rows}x{cols}"
                    )));
                }
                Matrix::from_rows(given.clone(), cols).expect("checked shape")
            }
        };
        differentials.push(m);
    }
    let c = BasedComplex::new(file.group, file.min_degree, file.ranks, differentials, file.labels)?;
    c.check_entries()?;
    Ok(c)
}
