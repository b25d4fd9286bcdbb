//! Colour systems, symbol classes and the variable universe.
//!
//! A [`ColourSystem`] lists the strata colours with their involution and the
//! edge colours. An [`AssumptionSet`] adds fixed values, zero rules and an
//! optional edge-slot symmetry. [`ClassTable::build`] enumerates every raw
//! symbol tuple, groups tuples into classes under [`SymmetryGroup`], and
//! builds the ordered [`VariableRegistry`] of the polynomial ring.

mod config;
mod group;
mod table;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{PolyError, Rational};

pub use config::{load_system, parse_system, AugmentSpec, OrderSpec, SystemConfig, VarRef};
pub use group::{as_tetrahedron_map, EdgeSymmetry, SlotAction, SymmetryGroup, REFERENCE_DIRECTIONS, VERTEX_TRIPLES};
pub use table::{ClassCounts, ClassTable, SymbolClass, Value, VarKind};

#[derive(Debug, Error)]
pub enum ColourError {
    #[error("unknown colour `{0}`")]
    UnknownToken(String),
    #[error("duplicate colour `{0}`")]
    DuplicateToken(String),
    #[error("involution: {0}")]
    BadInvolution(String),
    #[error("zero-rule colour `{0}` is not fixed by the involution")]
    NotInvolutionFixed(String),
    #[error("conflicting fixed values for {0}")]
    ConflictingFixedValue(String),
    #[error("priority list names `{0}`, which is not a free variable")]
    PriorityNotFree(String),
    #[error("system needs at least one strata colour and one edge colour")]
    EmptySystem,
    #[error(transparent)]
    Registry(#[from] PolyError),
    #[error("{path}:{line}: {message}")]
    Config { path: String, line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum InvolutionKind {
    #[default]
    Trivial,
    /// `x ↦ -x` on signed integer tokens.
    Negation,
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionKind::Trivial => "trivial",
            InvolutionKind::Negation => "negation",
        })
    }
}

/// Strata colours `F` with an involution, and edge colours `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColourSystem {
    pub name: String,
    strata: Vec<String>,
    involution: Vec<u8>,
    involution_kind: InvolutionKind,
    edges: Vec<String>,
}

impl ColourSystem {
    /// `edge_count == 1` gives the single edge colour `*`; otherwise the
    /// edge colours are `1..=edge_count`.
    pub fn new(name: &str, strata: Vec<String>, involution_kind: InvolutionKind, edge_count: usize) -> Result<Self, ColourError> {
        if strata.is_empty() || edge_count == 0 || strata.len() > 255 || edge_count > 255 {
            return Err(ColourError::EmptySystem);
        }
        for (i, s) in strata.iter().enumerate() {
            if strata[..i].contains(s) {
                return Err(ColourError::DuplicateToken(s.clone()));
            }
        }
        let involution = match involution_kind {
            InvolutionKind::Trivial => (0..strata.len() as u8).collect(),
            InvolutionKind::Negation => {
                let mut inv = Vec::with_capacity(strata.len());
                for s in &strata {
                    let v: i64 = s
                        .parse()
                        .map_err(|_| ColourError::BadInvolution(format!("negation needs integer colours, got `{s}`")))?;
                    let target = (-v).to_string();
                    let j = strata
                        .iter()
                        .position(|t| t.parse::<i64>().ok() == Some(-v))
                        .ok_or_else(|| ColourError::BadInvolution(format!("`{target}` missing from strata colours")))?;
                    inv.push(j as u8);
                }
                inv
            }
        };
        let edges = if edge_count == 1 {
            vec!["*".to_string()]
        } else {
            (1..=edge_count).map(|i| i.to_string()).collect()
        };
        Ok(ColourSystem {
            name: name.to_string(),
            strata,
            involution,
            involution_kind,
            edges,
        })
    }

    pub fn m(&self) -> usize {
        self.strata.len()
    }

    pub fn n(&self) -> usize {
        self.edges.len()
    }

    pub fn strata_tokens(&self) -> &[String] {
        &self.strata
    }

    pub fn edge_tokens(&self) -> &[String] {
        &self.edges
    }

    pub fn involution(&self) -> &[u8] {
        &self.involution
    }

    pub fn involution_kind(&self) -> InvolutionKind {
        self.involution_kind
    }

    pub fn inv(&self, c: u8) -> u8 {
        self.involution[c as usize]
    }

    pub fn strata_index(&self, token: &str) -> Result<u8, ColourError> {
        let token = token.trim();
        self.strata
            .iter()
            .position(|s| s == token)
            .map(|i| i as u8)
            .ok_or_else(|| ColourError::UnknownToken(token.to_string()))
    }

    pub fn edge_index(&self, token: &str) -> Result<u8, ColourError> {
        let token = token.trim();
        self.edges
            .iter()
            .position(|s| s == token)
            .map(|i| i as u8)
            .ok_or_else(|| ColourError::UnknownToken(token.to_string()))
    }

    /// Representative of the involution orbit of `c`: the first listed
    /// colour of the orbit that does not start with `-`, else the first.
    pub fn weight_representative(&self, c: u8) -> u8 {
        let orbit = [c, self.inv(c)];
        orbit
            .iter()
            .copied()
            .filter(|&x| !self.strata[x as usize].starts_with('-'))
            .min()
            .unwrap_or(c.min(self.inv(c)))
    }

    /// Text of a tuple, e.g. `(1,1,2,1,2,2;*,*,*,*)`.
    pub fn tuple_text(&self, t: &SymbolTuple) -> String {
        let s: Vec<&str> = t.strata.iter().map(|&c| self.strata[c as usize].as_str()).collect();
        let e: Vec<&str> = t.edges.iter().map(|&c| self.edges[c as usize].as_str()).collect();
        format!("({};{})", s.join(","), e.join(","))
    }
}

/// Arguments of one symbol, as colour indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymbolTuple {
    pub strata: [u8; 6],
    pub edges: [u8; 4],
}

/// A fixed value on all symbols matching a pattern; `None` edges match any
/// edge colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSymbol {
    pub strata: [u8; 6],
    pub edges: [Option<u8>; 4],
    pub value: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AssumptionSet {
    pub fixed_symbols: Vec<FixedSymbol>,
    /// Fixed weight per strata colour (applied to its involution orbit).
    pub fixed_weights: Vec<(u8, Rational)>,
    /// Involution-fixed colours `z`: a symbol vanishes when some edge slot
    /// sees exactly two strata coloured `z`.
    pub zero_rules: Vec<u8>,
    pub edge_symmetry: EdgeSymmetry,
    /// Name of the bridge variable when augmentation is active.
    pub bridge_variable: Option<String>,
}

impl AssumptionSet {
    pub fn validate(&self, sys: &ColourSystem) -> Result<(), ColourError> {
        for &z in &self.zero_rules {
            if sys.inv(z) != z {
                return Err(ColourError::NotInvolutionFixed(sys.strata[z as usize].clone()));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self, t: &SymbolTuple) -> bool {
        self.zero_rules.iter().any(|&z| {
            VERTEX_TRIPLES
                .iter()
                .any(|tr| tr.iter().filter(|&&i| t.strata[i] == z).count() == 2)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn negation_involution() {
        let sys = ColourSystem::new("t", toks(&["0", "1", "-1"]), InvolutionKind::Negation, 1).unwrap();
        assert_eq!(sys.involution(), &[0, 2, 1]);
        assert_eq!(sys.weight_representative(2), 1);
        assert!(ColourSystem::new("t", toks(&["0", "1"]), InvolutionKind::Negation, 1).is_err());
        assert!(ColourSystem::new("t", toks(&["1", "1"]), InvolutionKind::Trivial, 1).is_err());
    }

    #[test]
    fn zero_rule_counts_exactly_two() {
        let asm = AssumptionSet {
            zero_rules: vec![0],
            ..Default::default()
        };
        let t = |s: [u8; 6]| SymbolTuple { strata: s, edges: [0; 4] };
        assert!(!asm.is_zero(&t([0; 6])));
        assert!(asm.is_zero(&t([0, 0, 1, 1, 1, 1])));
        assert!(!asm.is_zero(&t([0, 1, 1, 1, 1, 1])));
    }
}
