//! Tetrahedral symmetry of symbol slots.
//!
//! Edge slots `A, B, C, D` are the corners 0..3 of a tetrahedron and the
//! strata slots `a..f` its six sides: `a=AB, b=AC, c=BC, d=AD, e=BD, f=CD`.
//! Each side carries a reference direction; a slot relabelling negates the
//! colour of every side whose direction it reverses.

use std::collections::HashSet;

use serde::Serialize;

use super::SymbolTuple;

/// Reference direction of each strata slot, as a pair of edge slots.
pub const REFERENCE_DIRECTIONS: [(usize, usize); 6] = [(0, 1), (2, 0), (1, 2), (0, 3), (3, 1), (2, 3)];

/// Strata slots meeting at each edge slot.
pub const VERTEX_TRIPLES: [[usize; 3]; 4] = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeSymmetry {
    #[default]
    None,
    /// Double transpositions of the edge slots.
    Klein,
    /// All permutations of the edge slots.
    Full,
}

impl std::str::FromStr for EdgeSymmetry {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" | "false" => Ok(EdgeSymmetry::None),
            "klein" => Ok(EdgeSymmetry::Klein),
            "full" | "true" => Ok(EdgeSymmetry::Full),
            other => Err(format!("unknown edge symmetry `{other}`")),
        }
    }
}

impl std::fmt::Display for EdgeSymmetry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EdgeSymmetry::None => "none",
            EdgeSymmetry::Klein => "klein",
            EdgeSymmetry::Full => "full",
        })
    }
}

/// New slot `i` takes old slot `src[i]`, through the involution when
/// `neg[i]`; new edge slot `k` takes old edge slot `esrc[k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlotAction {
    pub src: [usize; 6],
    pub neg: [bool; 6],
    pub esrc: [usize; 4],
}

impl SlotAction {
    pub const IDENTITY: SlotAction = SlotAction {
        src: [0, 1, 2, 3, 4, 5],
        neg: [false; 6],
        esrc: [0, 1, 2, 3],
    };

    /// `(a,b,c,d,e,f;A,B,C,D) ↦ (b,c,a,f,−d,−e;C,A,B,D)`
    pub const G1: SlotAction = SlotAction {
        src: [1, 2, 0, 5, 3, 4],
        neg: [false, false, false, false, true, true],
        esrc: [2, 0, 1, 3],
    };

    /// `(a,b,c,d,e,f;A,B,C,D) ↦ (a,−d,−e,−b,−c,−f;A,B,D,C)`
    pub const G2: SlotAction = SlotAction {
        src: [0, 3, 4, 1, 2, 5],
        neg: [false, true, true, true, true, true],
        esrc: [0, 1, 3, 2],
    };

    pub fn edges_only(esrc: [usize; 4]) -> SlotAction {
        SlotAction {
            esrc,
            ..SlotAction::IDENTITY
        }
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &SlotAction) -> SlotAction {
        let mut out = SlotAction::IDENTITY;
        for i in 0..6 {
            out.src[i] = self.src[other.src[i]];
            out.neg[i] = other.neg[i] ^ self.neg[other.src[i]];
        }
        for k in 0..4 {
            out.esrc[k] = self.esrc[other.esrc[k]];
        }
        out
    }

    pub fn apply(&self, t: &SymbolTuple, involution: &[u8]) -> SymbolTuple {
        let mut out = *t;
        for i in 0..6 {
            let v = t.strata[self.src[i]];
            out.strata[i] = if self.neg[i] { involution[v as usize] } else { v };
        }
        for k in 0..4 {
            out.edges[k] = t.edges[self.esrc[k]];
        }
        out
    }
}

/// The finite group generated by the two tetrahedral generators and the
/// configured edge-slot symmetry.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    actions: Vec<SlotAction>,
}

impl SymmetryGroup {
    pub fn new(edge_symmetry: EdgeSymmetry) -> Self {
        let mut gens = vec![SlotAction::G1, SlotAction::G2];
        match edge_symmetry {
            EdgeSymmetry::None => {}
            EdgeSymmetry::Klein => gens.push(SlotAction::edges_only([1, 0, 3, 2])),
            EdgeSymmetry::Full => {
                gens.push(SlotAction::edges_only([1, 0, 2, 3]));
                gens.push(SlotAction::edges_only([1, 2, 3, 0]));
            }
        }
        Self::generated_by(&gens)
    }

    pub fn generated_by(gens: &[SlotAction]) -> Self {
        let mut seen: HashSet<SlotAction> = HashSet::from([SlotAction::IDENTITY]);
        let mut actions = vec![SlotAction::IDENTITY];
        let mut k = 0;
        while k < actions.len() {
            let a = actions[k];
            for g in gens {
                let b = a.then(g);
                if seen.insert(b) {
                    actions.push(b);
                }
            }
            k += 1;
        }
        SymmetryGroup { actions }
    }

    pub fn actions(&self) -> &[SlotAction] {
        &self.actions
    }

    pub fn order(&self) -> usize {
        self.actions.len()
    }

    pub fn orbit(&self, t: &SymbolTuple, involution: &[u8]) -> Vec<SymbolTuple> {
        let mut out: Vec<SymbolTuple> = self.actions.iter().map(|a| a.apply(t, involution)).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn canonicalize(&self, t: &SymbolTuple, involution: &[u8]) -> SymbolTuple {
        self.actions.iter().map(|a| a.apply(t, involution)).min().expect("identity")
    }
}

/// The edge-slot permutation of an action seen as a relabelling of the
/// tetrahedron, when the strata part agrees with it under the reference
/// directions.
pub fn as_tetrahedron_map(a: &SlotAction) -> Option<[usize; 4]> {
    for i in 0..6 {
        let (p, q) = REFERENCE_DIRECTIONS[i];
        let (op, oq) = (a.esrc[p], a.esrc[q]);
        let j = REFERENCE_DIRECTIONS.iter().position(|&(x, y)| (x, y) == (op, oq) || (x, y) == (oq, op))?;
        if a.src[i] != j || a.neg[i] != (REFERENCE_DIRECTIONS[j] == (oq, op)) {
            return None;
        }
    }
    Some(a.esrc)
}
