//! JSON documents exchanged between commands.
//!
//! A Plücker vector is `{"nu": [..], "entries": [{"lam": [..], "value": ".."}], "mode": "exact|float"}`.
//! A polynomial is `{"coeffs_e_basis": [..]}`, where entry `j` (from 0) is the
//! coefficient of `u^j / j!`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use wronski_core::grassmann::{PluckerVector, PolyVector};
use wronski_core::solver::Solution;
use wronski_core::{Partition, Rational};

use crate::scalars::Emit;
use crate::CliError;

pub fn partition(parts: &[usize]) -> Result<Partition, CliError> {
    Partition::new(parts.to_vec()).map_err(|e| CliError::Input(e.to_string()))
}

pub fn parts(p: &Partition) -> Value {
    json!(p.parts())
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub lam: Vec<usize>,
    pub value: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct PluckerDoc {
    pub nu: Vec<usize>,
    pub entries: Vec<EntryDoc>,
    pub mode: String,
}

pub fn plucker_doc<F: Emit>(delta: &PluckerVector<F>) -> PluckerDoc {
    PluckerDoc {
        nu: delta.nu.parts().to_vec(),
        entries: delta.entries.iter().map(|(lam, v)| EntryDoc { lam: lam.parts().to_vec(), value: v.emit() }).collect(),
        mode: F::MODE.into(),
    }
}

pub fn read_plucker<F: Emit>(doc: &PluckerDoc) -> Result<PluckerVector<F>, CliError> {
    let nu = partition(&doc.nu)?;
    let mut entries = BTreeMap::new();
    for e in &doc.entries {
        if entries.insert(partition(&e.lam)?, F::parse(&e.value)?).is_some() {
            return Err(CliError::Input(format!("duplicate entry for {:?}", e.lam)));
        }
    }
    PluckerVector::from_entries(nu, entries).map_err(|e| CliError::Input(e.to_string()))
}

pub fn poly_doc<F: Emit>(p: &PolyVector<F>) -> Value {
    json!({ "coeffs_e_basis": p.coeffs.iter().map(Emit::emit).collect::<Vec<_>>() })
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ResidualDoc {
    pub wronskian: f64,
    pub relations: f64,
    pub eigen: f64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SolutionDoc {
    pub delta: PluckerDoc,
    pub multiplicity: usize,
    pub eigenvectors: Vec<Vec<String>>,
    pub residuals: ResidualDoc,
    pub pass: bool,
}

pub fn solution_doc(sol: &Solution, residual_tol: f64) -> SolutionDoc {
    let r = &sol.residuals;
    SolutionDoc {
        delta: plucker_doc(&sol.delta),
        multiplicity: sol.multiplicity,
        eigenvectors: sol.eigenvectors.iter().map(|v| v.iter().map(Emit::emit).collect()).collect(),
        residuals: ResidualDoc { wronskian: r.wronskian, relations: r.relations, eigen: r.eigen },
        pass: r.wronskian <= residual_tol && r.relations <= residual_tol,
    }
}

/// The parts of a `solve` document read back by `basis` and `positivity`.
#[derive(Deserialize, Clone, Debug)]
pub struct SolveDoc {
    pub command: String,
    pub instances: Vec<InstanceDoc>,
}

#[derive(Deserialize, Clone, Debug)]
pub struct InstanceDoc {
    pub nu: Vec<usize>,
    pub roots: Vec<String>,
    pub solutions: Vec<SolutionDoc>,
}

pub fn read_solve_doc(text: &str) -> Result<SolveDoc, CliError> {
    let doc: SolveDoc = serde_json::from_str(text).map_err(|e| CliError::Input(format!("solve document: {e}")))?;
    if doc.command != "solve" {
        return Err(CliError::Input(format!("expected a solve document, found {:?}", doc.command)));
    }
    Ok(doc)
}

pub fn delta_of<F: Emit>(sol: &SolutionDoc, nu: &[usize]) -> Result<PluckerVector<F>, CliError> {
    if sol.delta.nu != nu {
        return Err(CliError::Input(format!("solution shape {:?} differs from instance {:?}", sol.delta.nu, nu)));
    }
    read_plucker(&sol.delta)
}

pub fn is_exact(doc: &PluckerDoc) -> Result<bool, CliError> {
    match doc.mode.as_str() {
        "exact" => Ok(true),
        "float" => Ok(false),
        other => Err(CliError::Input(format!("unknown mode {other:?}"))),
    }
}

pub type Exact = Rational;
