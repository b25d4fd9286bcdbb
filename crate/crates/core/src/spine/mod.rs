//! Special spines from Matveev codes.
//!
//! Each curve of a [`SpineCode`] is the boundary word of one 2-stratum.
//! Consecutive letters `x, y` of a word give a corner: the stratum leaves
//! edge `|x|` at its head when `x > 0` (tail otherwise) and enters edge `|y|`
//! at its tail when `y > 0` (head otherwise). True vertices are the
//! connected components of the graph on edge-ends whose links are corners;
//! each must look like the complete graph on four edge-ends.

mod code;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use code::SpineCode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpineError {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("code has no curves")]
    EmptyCode,
    #[error("curve {curve} is empty")]
    EmptyCurve { curve: usize },
    #[error("zero entry in curve {curve} at position {position}")]
    ZeroEntry { curve: usize, position: usize },
    #[error("edge {0} never occurs")]
    MissingEdge(usize),
    #[error("edge {edge} occurs {count} times, expected 3")]
    EdgeMultiplicity { edge: usize, count: usize },
    #[error("vertex component {component} has {ends} edge-ends, expected 4")]
    VertexDegree { component: String, ends: usize },
    #[error("vertex component {component}: corner joins edge-end {end} to itself")]
    LoopCorner { component: String, end: EdgeEnd },
    #[error("vertex component {component}: two corners join {a} and {b}")]
    DuplicateCorner { component: String, a: EdgeEnd, b: EdgeEnd },
    #[error("vertex component {component}: no corner joins {a} and {b}")]
    MissingCorner { component: String, a: EdgeEnd, b: EdgeEnd },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum End {
    Tail,
    Head,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: End,
}

impl fmt::Display for EdgeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = match self.end {
            End::Tail => 't',
            End::Head => 'h',
        };
        write!(f, "{}{e}", self.edge)
    }
}

impl EdgeEnd {
    fn index(self) -> usize {
        2 * (self.edge - 1) + usize::from(self.end == End::Head)
    }

    fn from_index(i: usize) -> Self {
        EdgeEnd {
            edge: i / 2 + 1,
            end: if i % 2 == 1 { End::Head } else { End::Tail },
        }
    }
}

/// Germ of a 2-stratum at a true vertex, between two consecutive letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Corner {
    pub curve: usize,
    pub position: usize,
    /// Edge-end the boundary word leaves.
    pub from: EdgeEnd,
    /// Edge-end the boundary word enters next.
    pub to: EdgeEnd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    /// Incident edge-ends, sorted.
    pub ends: [EdgeEnd; 4],
    /// Indices into [`Spine::corners`], one per pair of ends.
    pub corners: [usize; 6],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineStats {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub closed_consistent: bool,
}

impl fmt::Display for SpineStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V={} E={} F={} euler={} closed={}",
            self.vertices, self.edges, self.faces, self.euler, self.closed_consistent
        )
    }
}

/// Incidence structure of a special spine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spine {
    code: SpineCode,
    corners: Vec<Corner>,
    vertices: Vec<Vertex>,
    warnings: Vec<String>,
}

fn component_label(ends: &[EdgeEnd]) -> String {
    let parts: Vec<String> = ends.iter().map(EdgeEnd::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

impl Spine {
    pub fn build(code: SpineCode) -> Result<Spine, SpineError> {
        let e = code.edge_count();
        let mut mult = vec![0usize; e + 1];
        for x in code.curves().iter().flatten() {
            mult[x.unsigned_abs() as usize] += 1;
        }
        if let Some(edge) = (1..=e).find(|&k| mult[k] != 3) {
            return Err(SpineError::EdgeMultiplicity { edge, count: mult[edge] });
        }

        let mut corners = Vec::with_capacity(code.letter_count());
        for (ci, word) in code.curves().iter().enumerate() {
            for (i, &x) in word.iter().enumerate() {
                let y = word[(i + 1) % word.len()];
                corners.push(Corner {
                    curve: ci,
                    position: i,
                    from: EdgeEnd {
                        edge: x.unsigned_abs() as usize,
                        end: if x > 0 { End::Head } else { End::Tail },
                    },
                    to: EdgeEnd {
                        edge: y.unsigned_abs() as usize,
                        end: if y > 0 { End::Tail } else { End::Head },
                    },
                });
            }
        }

        let mut parent: Vec<usize> = (0..2 * e).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for c in &corners {
            let (a, b) = (find(&mut parent, c.from.index()), find(&mut parent, c.to.index()));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut comps: BTreeMap<usize, (BTreeSet<EdgeEnd>, Vec<usize>)> = BTreeMap::new();
        for i in 0..2 * e {
            let r = find(&mut parent, i);
            comps.entry(r).or_default().0.insert(EdgeEnd::from_index(i));
        }
        for (k, c) in corners.iter().enumerate() {
            let r = find(&mut parent, c.from.index());
            comps.get_mut(&r).expect("component").1.push(k);
        }

        let mut vertices = Vec::with_capacity(comps.len());
        for (ends, cs) in comps.into_values() {
            let ends: Vec<EdgeEnd> = ends.into_iter().collect();
            let label = component_label(&ends);
            if ends.len() != 4 {
                return Err(SpineError::VertexDegree {
                    component: label,
                    ends: ends.len(),
                });
            }
            let slot = |x: EdgeEnd| ends.iter().position(|&y| y == x).expect("end in component");
            let mut by_pair: [Option<usize>; 6] = [None; 6];
            for &k in &cs {
                let c = corners[k];
                if c.from == c.to {
                    return Err(SpineError::LoopCorner {
                        component: label,
                        end: c.from,
                    });
                }
                let (i, j) = {
                    let (p, q) = (slot(c.from), slot(c.to));
                    (p.min(q), p.max(q))
                };
                let s = pair_slot(i, j);
                if by_pair[s].is_some() {
                    return Err(SpineError::DuplicateCorner {
                        component: label,
                        a: ends[i],
                        b: ends[j],
                    });
                }
                by_pair[s] = Some(k);
            }
            let mut vc = [0usize; 6];
            for (s, k) in by_pair.iter().enumerate() {
                match k {
                    Some(k) => vc[s] = *k,
                    None => {
                        let (i, j) = SLOT_PAIRS[s];
                        return Err(SpineError::MissingCorner {
                            component: label,
                            a: ends[i],
                            b: ends[j],
                        });
                    }
                }
            }
            vertices.push(Vertex {
                ends: [ends[0], ends[1], ends[2], ends[3]],
                corners: vc,
            });
        }

        let mut spine = Spine {
            code,
            corners,
            vertices,
            warnings: Vec::new(),
        };
        let st = spine.stats();
        if !st.closed_consistent {
            spine.warnings.push(format!(
                "not closed-manifold consistent: F={} V={} euler={}",
                st.faces, st.vertices, st.euler
            ));
        }
        Ok(spine)
    }

    pub fn parse(text: &str) -> Result<Spine, SpineError> {
        Spine::build(SpineCode::parse(text)?)
    }

    pub fn code(&self) -> &SpineCode {
        &self.code
    }

    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn stratum_count(&self) -> usize {
        self.code.curves().len()
    }

    pub fn edge_count(&self) -> usize {
        self.code.edge_count()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn stats(&self) -> SpineStats {
        let (v, e, f) = (self.vertices.len(), self.edge_count(), self.stratum_count());
        let euler = f as i64 - e as i64 + v as i64;
        SpineStats {
            vertices: v,
            edges: e,
            faces: f,
            euler,
            closed_consistent: f == v + 1 && euler == 1,
        }
    }

    /// SHA-256 of the canonical code text.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.code.to_string().as_bytes()))
    }
}

/// Vertex-slot pairs of the six strata slots a..f.
pub const SLOT_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];

/// Strata slot of the unordered vertex-slot pair `i < j`.
pub fn pair_slot(i: usize, j: usize) -> usize {
    SLOT_PAIRS.iter().position(|&p| p == (i, j)).expect("i < j < 4")
}

/// A code with the label of the comment line above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledCode {
    pub label: String,
    pub line: usize,
    pub code: SpineCode,
}

/// Parses a spine file: one code per line, `#` lines label the next code.
pub fn parse_spine_file(text: &str) -> Result<Vec<LabeledCode>, (usize, SpineError)> {
    let mut out = Vec::new();
    let mut label: Option<String> = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(l) = line.strip_prefix('#') {
            label = Some(l.trim().to_string());
            continue;
        }
        let code = SpineCode::parse(line).map_err(|e| (i + 1, e))?;
        out.push(LabeledCode {
            label: label.take().unwrap_or_else(|| format!("line{}", i + 1)),
            line: i + 1,
            code,
        });
    }
    Ok(out)
}
