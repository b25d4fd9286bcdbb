//! Turaev–Viro state sums of special spines.
//!
//! A colouring gives every 2-stratum a strata colour, relative to an
//! orientation of the stratum, and every true edge an edge colour. Its term
//! is the product of the stratum weights and of one symbol per true vertex.
//! At a vertex the four edge-ends fill the edge slots, each corner fills the
//! strata slot of its pair of ends, and a corner running against the slot's
//! reference direction contributes the involution of its colour.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colours::{ClassTable, SymbolTuple, Value, REFERENCE_DIRECTIONS};
use crate::exactpoly::{Monomial, Polynomial, Rational};
use crate::spine::{pair_slot, Spine};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateSumError {
    #[error("{colourings} colourings exceed the limit of {limit}")]
    TooManyColourings { colourings: u128, limit: u128 },
    #[error("orientation choice covers {got} strata, spine has {want}")]
    OrientationLength { got: usize, want: usize },
    #[error("slot choice covers {got} vertices, spine has {want}")]
    SlotLength { got: usize, want: usize },
    #[error("slot choice at vertex {0} is not a permutation")]
    BadSlotPermutation(usize),
}

/// Per stratum: `true` reverses the orientation given by its boundary word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrientationChoice {
    pub flips: Vec<bool>,
}

impl OrientationChoice {
    pub fn identity(strata: usize) -> Self {
        OrientationChoice { flips: vec![false; strata] }
    }
}

/// Per vertex: edge slot `k` holds the sorted edge-end `perm[k]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SlotChoice {
    pub perms: Vec<[usize; 4]>,
}

impl SlotChoice {
    pub fn identity(vertices: usize) -> Self {
        SlotChoice {
            perms: vec![[0, 1, 2, 3]; vertices],
        }
    }
}

#[derive(Clone, Debug)]
pub struct StateSumOptions {
    pub orientation: Option<OrientationChoice>,
    pub slots: Option<SlotChoice>,
    pub parallel: bool,
    pub max_colourings: u128,
}

impl Default for StateSumOptions {
    fn default() -> Self {
        StateSumOptions {
            orientation: None,
            slots: None,
            parallel: true,
            max_colourings: 1 << 36,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSumStats {
    pub enumerated: u64,
    pub pruned: u64,
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSum {
    pub polynomial: Polynomial,
    pub stats: StateSumStats,
}

/// How one vertex reads a colouring.
#[derive(Clone, Copy, Debug)]
struct VertexPlan {
    /// Stratum and whether the colour is read directly, per strata slot.
    strata: [(usize, bool); 6],
    /// Edge index (0-based) per edge slot.
    edges: [usize; 4],
}

fn plan(spine: &Spine, orient: &OrientationChoice, slots: &SlotChoice) -> Vec<VertexPlan> {
    spine
        .vertices()
        .iter()
        .zip(&slots.perms)
        .map(|(v, perm)| {
            let mut slot_of = [0usize; 4];
            for (k, &p) in perm.iter().enumerate() {
                slot_of[p] = k;
            }
            let end_slot = |e| slot_of[v.ends.iter().position(|&x| x == e).expect("end at vertex")];
            let mut strata = [(0usize, true); 6];
            for &ci in &v.corners {
                let c = spine.corners()[ci];
                let (a, b) = (end_slot(c.from), end_slot(c.to));
                let s = pair_slot(a.min(b), a.max(b));
                let direct = REFERENCE_DIRECTIONS[s] == (a, b);
                strata[s] = (c.curve, direct != orient.flips[c.curve]);
            }
            let edges = std::array::from_fn(|k| v.ends[perm[k]].edge - 1);
            VertexPlan { strata, edges }
        })
        .collect()
}

fn tuple_for(p: &VertexPlan, strata_col: &[u8], edge_col: &[u8], inv: &[u8]) -> SymbolTuple {
    SymbolTuple {
        strata: std::array::from_fn(|s| {
            let (curve, direct) = p.strata[s];
            let c = strata_col[curve];
            if direct {
                c
            } else {
                inv[c as usize]
            }
        }),
        edges: std::array::from_fn(|k| edge_col[p.edges[k]]),
    }
}

/// Raw symbol tuple at vertex `v` under a colouring.
pub fn vertex_tuple(
    spine: &Spine,
    v: usize,
    strata_col: &[u8],
    edge_col: &[u8],
    orient: &OrientationChoice,
    perm: [usize; 4],
    involution: &[u8],
) -> SymbolTuple {
    let mut slots = SlotChoice::identity(spine.vertices().len());
    slots.perms[v] = perm;
    let p = plan(spine, orient, &slots)[v];
    tuple_for(&p, strata_col, edge_col, involution)
}

/// Value of the symbol at vertex `v`: its class variable, fixed value or zero.
pub fn vertex_symbol<'a>(spine: &Spine, v: usize, strata_col: &[u8], edge_col: &[u8], orient: &OrientationChoice, table: &'a ClassTable) -> &'a Value {
    let t = vertex_tuple(spine, v, strata_col, edge_col, orient, [0, 1, 2, 3], table.system().involution());
    table.resolve(&t)
}

pub fn state_sum(spine: &Spine, table: &ClassTable) -> Result<StateSum, StateSumError> {
    state_sum_with(spine, table, &StateSumOptions::default())
}

struct Acc {
    terms: HashMap<Vec<u32>, Rational>,
    enumerated: u64,
    pruned: u64,
}

impl Acc {
    fn new() -> Self {
        Acc {
            terms: HashMap::new(),
            enumerated: 0,
            pruned: 0,
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        for (k, v) in other.terms {
            *self.terms.entry(k).or_insert_with(|| Rational::from_integer(0.into())) += v;
        }
        self.enumerated += other.enumerated;
        self.pruned += other.pruned;
        self
    }
}

pub fn state_sum_with(spine: &Spine, table: &ClassTable, opts: &StateSumOptions) -> Result<StateSum, StateSumError> {
    let sys = table.system();
    let (f, e, nv) = (spine.stratum_count(), spine.edge_count(), spine.vertices().len());
    let (m, n) = (sys.m(), sys.n());
    let total = (m as u128).checked_pow(f as u32).and_then(|a| (n as u128).checked_pow(e as u32).and_then(|b| a.checked_mul(b)));
    match total {
        Some(t) if t <= opts.max_colourings => {}
        _ => {
            return Err(StateSumError::TooManyColourings {
                colourings: total.unwrap_or(u128::MAX),
                limit: opts.max_colourings,
            })
        }
    }
    let orient = opts.orientation.clone().unwrap_or_else(|| OrientationChoice::identity(f));
    if orient.flips.len() != f {
        return Err(StateSumError::OrientationLength { got: orient.flips.len(), want: f });
    }
    let slots = opts.slots.clone().unwrap_or_else(|| SlotChoice::identity(nv));
    if slots.perms.len() != nv {
        return Err(StateSumError::SlotLength {
            got: slots.perms.len(),
            want: nv,
        });
    }
    for (i, p) in slots.perms.iter().enumerate() {
        let mut seen = [false; 4];
        for &k in p {
            if k > 3 || seen[k] {
                return Err(StateSumError::BadSlotPermutation(i));
            }
            seen[k] = true;
        }
    }
    let plans = plan(spine, &orient, &slots);
    let inv = sys.involution();
    let nvars = table.registry().len();
    let strata_total = (m as u64).pow(f as u32);
    let edge_total = (n as u64).pow(e as u32);

    let decode = |mut idx: u64, radix: usize, len: usize| -> Vec<u8> {
        let mut out = vec![0u8; len];
        for k in (0..len).rev() {
            out[k] = (idx % radix as u64) as u8;
            idx /= radix as u64;
        }
        out
    };

    // One strata colouring with all its edge colourings.
    let run = |si: u64| -> Acc {
        let mut acc = Acc::new();
        let sc = decode(si, m, f);
        let mut base = vec![0u32; nvars];
        let mut coeff = Rational::from_integer(1.into());
        for &c in &sc {
            match table.weight(c) {
                Value::Var(v) => base[*v] += 1,
                Value::Const(q) => coeff *= q,
                Value::Zero => {
                    acc.pruned += edge_total;
                    return acc;
                }
            }
        }
        // Zero rules only see strata colours.
        let probe = vec![0u8; e];
        if plans.iter().any(|p| table.assumptions().is_zero(&tuple_for(p, &sc, &probe, inv))) {
            acc.pruned += edge_total;
            return acc;
        }
        for ei in 0..edge_total {
            acc.enumerated += 1;
            let ec = decode(ei, n, e);
            let mut exps = base.clone();
            let mut c = coeff.clone();
            let mut zero = false;
            for p in &plans {
                match table.resolve(&tuple_for(p, &sc, &ec, inv)) {
                    Value::Var(v) => exps[*v] += 1,
                    Value::Const(q) => c *= q,
                    Value::Zero => {
                        zero = true;
                        break;
                    }
                }
            }
            if zero {
                acc.pruned += 1;
                continue;
            }
            *acc.terms.entry(exps).or_insert_with(|| Rational::from_integer(0.into())) += c;
        }
        acc
    };

    let acc = if opts.parallel {
        (0..strata_total).into_par_iter().map(run).reduce(Acc::new, Acc::merge)
    } else {
        (0..strata_total).map(run).fold(Acc::new(), Acc::merge)
    };
    let polynomial = Polynomial::from_terms(acc.terms.into_iter().map(|(k, v)| (Monomial::from_dense(&k), v)));
    let stats = StateSumStats {
        enumerated: acc.enumerated,
        pruned: acc.pruned,
        terms: polynomial.len(),
    };
    Ok(StateSum { polynomial, stats })
}
