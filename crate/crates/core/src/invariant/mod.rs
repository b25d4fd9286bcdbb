//! Ideal Turaev–Viro invariants as normal forms, and what to do with them.
//!
//! An [`InvariantContext`] binds a class table to the generators of its
//! ideal and a verified Gröbner basis of them. Records for distinct spines
//! are independent and may be computed in parallel.

mod report;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colours::{ClassTable, VarKind};
use crate::exactpoly::text::{format_polynomial, parse_polynomial};
use crate::exactpoly::{MonomialOrder, PolyError, Polynomial, QuotientAlgebra, QuotientElement, QuotientPoint, VariableRegistry};
use crate::groebner::{self, buchberger, normal_form, radical_member, GroebnerBasis, GroebnerConfig, GroebnerError};
use crate::spine::{Spine, SpineStats};
use crate::statesum::{state_sum, StateSumError, StateSumStats};

pub use report::{records_to_jsonl, render_table};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("{label}: spine has {vertices} true vertices, at least 2 are required")]
    TooFewVertices { label: String, vertices: usize },
    #[error("basis provenance {actual} does not match the system generators ({expected})")]
    ProvenanceMismatch { expected: String, actual: String },
    #[error("basis order differs from the system's variable order")]
    OrderMismatch,
    #[error("records come from different systems or bases: {0} vs {1}")]
    MixedSystems(String, String),
    #[error("point does not annihilate basis polynomial {index}: value {value}")]
    Annihilation { index: usize, value: String },
    #[error("point file line {line}: {message}")]
    PointFile { line: usize, message: String },
    #[error(transparent)]
    StateSum(#[from] StateSumError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub struct InvariantContext {
    pub table: ClassTable,
    pub generators: Vec<Polynomial>,
    pub basis: GroebnerBasis,
    annihilation: Mutex<HashMap<String, bool>>,
}

impl InvariantContext {
    /// Checks that `basis` was computed from `generators` in the table's order.
    pub fn new(table: ClassTable, generators: Vec<Polynomial>, basis: GroebnerBasis) -> Result<Self, InvariantError> {
        if basis.order() != table.order() {
            return Err(InvariantError::OrderMismatch);
        }
        let expected = groebner::provenance(&generators, table.order());
        if basis.provenance() != expected {
            return Err(InvariantError::ProvenanceMismatch {
                expected,
                actual: basis.provenance().to_string(),
            });
        }
        if !basis.is_verified() {
            return Err(GroebnerError::NotVerified.into());
        }
        Ok(InvariantContext {
            table,
            generators,
            basis,
            annihilation: Mutex::new(HashMap::new()),
        })
    }

    /// Computes the reduced basis of `generators` and binds it.
    pub fn compute(table: ClassTable, generators: Vec<Polynomial>, config: &GroebnerConfig) -> Result<Self, InvariantError> {
        let basis = buchberger(&generators, table.order(), config)?;
        Self::new(table, generators, basis)
    }

    pub fn order(&self) -> &MonomialOrder {
        self.table.order()
    }

    pub fn system_name(&self) -> &str {
        &self.table.system().name
    }

    fn vars_of(&self, pick: impl Fn(&VarKind) -> bool) -> Vec<usize> {
        self.table
            .variable_kinds()
            .iter()
            .enumerate()
            .filter(|(_, k)| pick(k))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn weight_vars(&self) -> Vec<usize> {
        self.vars_of(|k| matches!(k, VarKind::Weight(_)))
    }

    pub fn symbol_vars(&self) -> Vec<usize> {
        self.vars_of(|k| matches!(k, VarKind::Symbol(_)))
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, InvariantError> {
        Ok(normal_form(p, &self.basis)?)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        format_polynomial(p, self.order())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub label: String,
    pub spine_hash: String,
    pub system: String,
    pub basis: String,
    pub stats: SpineStats,
    #[serde(skip)]
    pub normal_form: Polynomial,
    #[serde(rename = "normal_form")]
    pub normal_form_text: String,
    pub deg_w: u32,
    pub deg_6j: u32,
    pub statesum: StateSumStats,
    pub epsilon: Option<String>,
}

pub fn compute_invariant(ctx: &InvariantContext, label: &str, spine: &Spine) -> Result<InvariantRecord, InvariantError> {
    let stats = spine.stats();
    if stats.vertices < 2 {
        return Err(InvariantError::TooFewVertices {
            label: label.to_string(),
            vertices: stats.vertices,
        });
    }
    let ss = state_sum(spine, &ctx.table)?;
    let nf = ctx.normal_form(&ss.polynomial)?;
    Ok(InvariantRecord {
        label: label.to_string(),
        spine_hash: spine.hash(),
        system: ctx.system_name().to_string(),
        basis: ctx.basis.provenance().to_string(),
        stats,
        normal_form_text: ctx.format(&nf),
        deg_w: nf.degree_in(&ctx.weight_vars()).degree,
        deg_6j: nf.degree_in(&ctx.symbol_vars()).degree,
        normal_form: nf,
        statesum: ss.stats,
        epsilon: None,
    })
}

/// Records for several spines, in input order.
pub fn compute_all(ctx: &InvariantContext, spines: &[(String, Spine)]) -> Vec<Result<InvariantRecord, InvariantError>> {
    spines.par_iter().map(|(l, s)| compute_invariant(ctx, l, s)).collect()
}

fn same_source(records: &[&InvariantRecord]) -> Result<(), InvariantError> {
    if let Some(first) = records.first() {
        for r in records {
            if (&r.system, &r.basis) != (&first.system, &first.basis) {
                return Err(InvariantError::MixedSystems(first.system.clone(), r.system.clone()));
            }
        }
    }
    Ok(())
}

/// Labels grouped by identical normal form, classes in order of first
/// occurrence.
pub fn compare_partition(records: &[InvariantRecord]) -> Result<Vec<Vec<String>>, InvariantError> {
    same_source(&records.iter().collect::<Vec<_>>())?;
    let mut classes: Vec<(&Polynomial, Vec<String>)> = Vec::new();
    for r in records {
        match classes.iter_mut().find(|(p, _)| **p == r.normal_form) {
            Some((_, labels)) => labels.push(r.label.clone()),
            None => classes.push((&r.normal_form, vec![r.label.clone()])),
        }
    }
    Ok(classes.into_iter().map(|(_, l)| l).collect())
}

/// Partition class index of each record.
pub fn partition_ids(records: &[InvariantRecord]) -> Result<Vec<usize>, InvariantError> {
    same_source(&records.iter().collect::<Vec<_>>())?;
    let mut reps: Vec<&Polynomial> = Vec::new();
    Ok(records
        .iter()
        .map(|r| match reps.iter().position(|p| **p == r.normal_form) {
            Some(i) => i,
            None => {
                reps.push(&r.normal_form);
                reps.len() - 1
            }
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicativityReport {
    /// `None` when the check was skipped.
    pub multiplicative: Option<bool>,
    pub product: String,
    pub connected_sum: String,
    pub notice: Option<String>,
}

/// Compares `Nf(ab)` with `Nf(Nf(a)·Nf(b))`.
pub fn multiplicativity_check(
    ctx: &InvariantContext,
    a: &InvariantRecord,
    b: &InvariantRecord,
    ab: &InvariantRecord,
) -> Result<MultiplicativityReport, InvariantError> {
    same_source(&[a, b, ab])?;
    let product = ctx.normal_form(&(&a.normal_form * &b.normal_form))?;
    let sys = ctx.table.system();
    if sys.m() == 1 && sys.n() == 1 {
        return Ok(MultiplicativityReport {
            multiplicative: None,
            product: ctx.format(&product),
            connected_sum: ab.normal_form_text.clone(),
            notice: Some("single-colour system: check carries no content".into()),
        });
    }
    Ok(MultiplicativityReport {
        multiplicative: Some(product == ab.normal_form),
        product: ctx.format(&product),
        connected_sum: ab.normal_form_text.clone(),
        notice: None,
    })
}

/// Parses a point file: `name = polynomial in t` per line, `#` comments.
pub fn parse_point(text: &str, algebra: &Arc<QuotientAlgebra>, registry: &Arc<VariableRegistry>) -> Result<QuotientPoint, InvariantError> {
    let treg = VariableRegistry::new(["t"])?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| InvariantError::PointFile { line: i + 1, message };
        let (name, value) = line.split_once('=').ok_or_else(|| err("expected `name = value`".into()))?;
        let p = parse_polynomial(value.trim(), &treg).map_err(|e| err(e.to_string()))?;
        let q = QuotientElement::from_univariate(algebra, &p).map_err(|e| err(e.to_string()))?;
        values.push((name.trim().to_string(), q));
    }
    Ok(QuotientPoint::new(algebra, registry, values.iter().map(|(n, q)| (n.as_str(), q.clone())))?)
}

/// Checks once per (basis, point) that the point kills every basis element.
pub fn check_annihilation(ctx: &InvariantContext, point: &QuotientPoint, key: &str) -> Result<(), InvariantError> {
    if ctx.annihilation.lock().expect("cache").get(key) == Some(&true) {
        return Ok(());
    }
    for (i, g) in ctx.basis.polynomials().iter().enumerate() {
        let v = point.evaluate(g)?;
        if !v.is_zero() {
            return Err(InvariantError::Annihilation {
                index: i,
                value: v.to_string(),
            });
        }
    }
    ctx.annihilation.lock().expect("cache").insert(key.to_string(), true);
    Ok(())
}

/// Value of the record's normal form at `point`; `key` names the point for
/// the annihilation cache.
pub fn epsilon_evaluate(ctx: &InvariantContext, record: &InvariantRecord, point: &QuotientPoint, key: &str) -> Result<QuotientElement, InvariantError> {
    check_annihilation(ctx, point, key)?;
    Ok(point.evaluate(&record.normal_form)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBound {
    /// `max(deg_w - 1, deg_6j)` of the normal form.
    pub bound: u32,
    /// Bound of at most 2 carries no information.
    pub trivial: bool,
}

pub fn degree_bound(record: &InvariantRecord) -> DegreeBound {
    let bound = if record.normal_form.is_zero() {
        0
    } else {
        record.deg_w.saturating_sub(1).max(record.deg_6j)
    };
    DegreeBound { bound, trivial: bound <= 2 }
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicalReport {
    /// Each ideal generator reduces to zero modulo the radical candidates.
    pub contained: Vec<bool>,
    /// Normal form of each radical candidate modulo the ideal.
    pub normal_forms: Vec<String>,
    /// Nonzero normal forms equal the expected ones as a set, when given.
    pub normal_forms_match: Option<bool>,
    /// Each radical candidate lies in the radical of the ideal.
    pub members: Vec<bool>,
}

impl RadicalReport {
    pub fn passes(&self) -> bool {
        self.contained.iter().all(|&b| b) && self.members.iter().all(|&b| b) && self.normal_forms_match != Some(false)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, ok) in self.contained.iter().enumerate() {
            if !ok {
                out.push(format!("ideal generator {} not in the radical candidates' ideal", i + 1));
            }
        }
        if self.normal_forms_match == Some(false) {
            out.push("nonzero normal forms differ from the expected list".into());
        }
        for (i, ok) in self.members.iter().enumerate() {
            if !ok {
                out.push(format!("radical candidate {} is not in the radical", i + 1));
            }
        }
        out
    }
}

/// Ideal containment in the candidate radical, normal forms of candidates
/// modulo `gb`, and radical membership of each candidate.
pub fn radical_suite(
    ideal_gens: &[Polynomial],
    radical_gens: &[Polynomial],
    gb: &GroebnerBasis,
    expected_nfs: Option<&[Polynomial]>,
    config: &GroebnerConfig,
) -> Result<RadicalReport, InvariantError> {
    let order = gb.order();
    let rgb = buchberger(radical_gens, order, config)?;
    let contained = ideal_gens
        .iter()
        .map(|g| normal_form(g, &rgb).map(|r| r.is_zero()))
        .collect::<Result<Vec<_>, _>>()?;
    let nfs = radical_gens.iter().map(|r| normal_form(r, gb)).collect::<Result<Vec<_>, _>>()?;
    let normal_forms_match = expected_nfs.map(|want| {
        let mut got: Vec<&Polynomial> = Vec::new();
        for p in nfs.iter().filter(|p| !p.is_zero()) {
            if !got.contains(&p) {
                got.push(p);
            }
        }
        got.len() == want.len() && want.iter().all(|w| got.contains(&w))
    });
    let members = radical_gens
        .par_iter()
        .map(|r| radical_member(r, ideal_gens, order, config))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RadicalReport {
        contained,
        normal_forms: nfs.iter().map(|p| format_polynomial(p, order)).collect(),
        normal_forms_match,
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::VariableRegistry;

    #[test]
    fn radical_of_a_square() {
        let ord = MonomialOrder::degrevlex(VariableRegistry::new(["x", "y"]).unwrap());
        let p = |s: &str| parse_polynomial(s, ord.registry()).unwrap();
        let cfg = GroebnerConfig::default();
        let ideal = vec![p("x^2")];
        let gb = buchberger(&ideal, &ord, &cfg).unwrap();
        let r = radical_suite(&ideal, &[p("x")], &gb, None, &cfg).unwrap();
        assert_eq!(r.contained, vec![true]);
        assert_eq!(r.normal_forms, vec!["x"]);
        assert_eq!(r.members, vec![true]);
        assert!(r.passes());
        let r = radical_suite(&ideal, &[p("y")], &gb, None, &cfg).unwrap();
        assert_eq!(r.members, vec![false]);
        assert!(!r.passes());
    }
}
