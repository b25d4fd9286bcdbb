//! Biedenharn–Elliott generators of the Turaev–Viro ideal.
//!
//! For strata colours `j1..j9` and edge colours `k1..k6` the generator is
//!
//! ```text
//! Σ_A  jj(j1,j2,j3,j7,j8,j9; k1,k2,k3,A) · jj(j4,j5,j6,-j7,-j8,-j9; k4,k5,k6,A)
//! - Σ_{A1,A2,A3} Σ_j w(j) · jj(j,j1,j2,-j4,-j5,j7; A1,A2,k1,k4)
//!                         · jj(j,j2,j3,-j5,-j6,j9; A2,A3,k3,k6)
//!                         · jj(j,j3,j1,-j6,-j4,-j8; A3,A1,k2,k5)
//! ```
//!
//! where `-x` is the involution and every symbol is replaced by its class
//! value.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::colours::{ClassTable, SymbolTuple, Value, VarKind};
use crate::exactpoly::text::format_polynomial;
use crate::exactpoly::{Monomial, MonomialOrder, Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BeError {
    #[error("strata colours differ: {0:?} vs {1:?}")]
    MismatchedColours(Vec<String>, Vec<String>),
    #[error("base variable `{0}` has no counterpart in the target system")]
    MissingClass(String),
    #[error("target system has no bridge variable")]
    NoBridgeVariable,
    #[error("base system must have one edge colour")]
    BaseNotSingleEdge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GeneratorSpec {
    pub j: [u8; 9],
    pub k: [u8; 6],
}

impl GeneratorSpec {
    /// Spec number `idx` in odometer order (`j1` slowest, `k6` fastest).
    pub fn from_index(mut idx: usize, m: usize, n: usize) -> Self {
        let mut k = [0u8; 6];
        for x in k.iter_mut().rev() {
            *x = (idx % n) as u8;
            idx /= n;
        }
        let mut j = [0u8; 9];
        for x in j.iter_mut().rev() {
            *x = (idx % m) as u8;
            idx /= m;
        }
        GeneratorSpec { j, k }
    }

    pub fn count(m: usize, n: usize) -> usize {
        m.pow(9) * n.pow(6)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j: Vec<String> = self.j.iter().map(u8::to_string).collect();
        let k: Vec<String> = self.k.iter().map(u8::to_string).collect();
        write!(f, "j=[{}] k=[{}]", j.join(","), k.join(","))
    }
}

/// A symbol or weight value as a scaled variable.
#[derive(Clone, Debug)]
enum Factor {
    Zero,
    Term(Option<usize>, Rational),
}

impl From<&Value> for Factor {
    fn from(v: &Value) -> Self {
        match v {
            Value::Zero => Factor::Zero,
            Value::Var(i) => Factor::Term(Some(*i), Rational::from_integer(1.into())),
            Value::Const(c) => Factor::Term(None, c.clone()),
        }
    }
}

fn product(p: &mut Polynomial, sign: i64, factors: &[Factor]) {
    let mut c = Rational::from_integer(sign.into());
    let mut vars = Vec::with_capacity(factors.len());
    for f in factors {
        match f {
            Factor::Zero => return,
            Factor::Term(v, q) => {
                c *= q;
                if let Some(v) = v {
                    vars.push((*v, 1));
                }
            }
        }
    }
    p.add_term(Monomial::from_pairs(vars), c);
}

fn generator_with<S, W>(spec: &GeneratorSpec, m: usize, n: usize, inv: &[u8], sym: S, weight: W) -> Polynomial
where
    S: Fn(&SymbolTuple) -> Factor,
    W: Fn(u8) -> Factor,
{
    let [j1, j2, j3, j4, j5, j6, j7, j8, j9] = spec.j;
    let [k1, k2, k3, k4, k5, k6] = spec.k;
    let ng = |x: u8| inv[x as usize];
    let t = |s: [u8; 6], e: [u8; 4]| SymbolTuple { strata: s, edges: e };
    let mut p = Polynomial::zero();
    for a in 0..n as u8 {
        product(
            &mut p,
            1,
            &[
                sym(&t([j1, j2, j3, j7, j8, j9], [k1, k2, k3, a])),
                sym(&t([j4, j5, j6, ng(j7), ng(j8), ng(j9)], [k4, k5, k6, a])),
            ],
        );
    }
    for a1 in 0..n as u8 {
        for a2 in 0..n as u8 {
            for a3 in 0..n as u8 {
                for j in 0..m as u8 {
                    product(
                        &mut p,
                        -1,
                        &[
                            weight(j),
                            sym(&t([j, j1, j2, ng(j4), ng(j5), j7], [a1, a2, k1, k4])),
                            sym(&t([j, j2, j3, ng(j5), ng(j6), j9], [a2, a3, k3, k6])),
                            sym(&t([j, j3, j1, ng(j6), ng(j4), ng(j8)], [a3, a1, k2, k5])),
                        ],
                    );
                }
            }
        }
    }
    p
}

/// The generator of one spec in the table's registry.
pub fn be_generator(spec: &GeneratorSpec, table: &ClassTable) -> Polynomial {
    let sys = table.system();
    generator_with(
        spec,
        sys.m(),
        sys.n(),
        sys.involution(),
        |t| table.resolve(t).into(),
        |c| table.weight(c).into(),
    )
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum DedupConvention {
    /// Drop exact repeats.
    Exact,
    /// Drop exact repeats and negatives of earlier generators.
    #[default]
    Sign,
}

impl std::str::FromStr for DedupConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(DedupConvention::Exact),
            "sign" => Ok(DedupConvention::Sign),
            o => Err(format!("unknown dedup convention `{o}`")),
        }
    }
}

impl fmt::Display for DedupConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DedupConvention::Exact => "exact",
            DedupConvention::Sign => "sign",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GenerationStats {
    pub specs: usize,
    pub nonzero: usize,
    pub exact: usize,
    pub sign: usize,
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub polynomials: Vec<Polynomial>,
    /// First spec producing each polynomial.
    pub specs: Vec<GeneratorSpec>,
    pub convention: DedupConvention,
    pub stats: GenerationStats,
}

/// All generators of the table's system, zero ones dropped, deduplicated
/// in spec order keeping first occurrences.
pub fn generate_ideal(table: &ClassTable, convention: DedupConvention) -> GeneratorSet {
    let sys = table.system();
    let (m, n) = (sys.m(), sys.n());
    let total = GeneratorSpec::count(m, n);
    let raw: Vec<(GeneratorSpec, Polynomial)> = (0..total)
        .into_par_iter()
        .filter_map(|i| {
            let spec = GeneratorSpec::from_index(i, m, n);
            let p = be_generator(&spec, table);
            (!p.is_zero()).then_some((spec, p))
        })
        .collect();
    let mut stats = GenerationStats {
        specs: total,
        nonzero: raw.len(),
        ..Default::default()
    };
    let mut seen: HashSet<&Polynomial> = HashSet::new();
    let mut keep = Vec::new();
    for (i, (_, p)) in raw.iter().enumerate() {
        if !seen.insert(p) {
            continue;
        }
        stats.exact += 1;
        let neg = -p;
        if seen.contains(&neg) {
            if convention == DedupConvention::Exact {
                keep.push(i);
            }
            continue;
        }
        stats.sign += 1;
        keep.push(i);
    }
    let (specs, polynomials) = keep.into_iter().map(|i| raw[i].clone()).unzip();
    GeneratorSet {
        polynomials,
        specs,
        convention,
        stats,
    }
}

/// Generator list text: header lines then one polynomial per line.
pub fn generators_to_text(set: &GeneratorSet, order: &MonomialOrder, config_hash: &str) -> String {
    let mut out = format!(
        "#system {config_hash}\n#dedup {}\n#vars {}\n",
        set.convention,
        order.registry().serialize()
    );
    for p in &set.polynomials {
        out.push_str(&format_polynomial(p, order));
        out.push('\n');
    }
    out
}

/// Rewrites polynomials over a single-edge-colour base system into the
/// target system: each base symbol becomes the bridge variable times the
/// target symbol with the same strata colours and all edge colours equal to
/// the first; base weights map to target weights of the same colour.
pub fn augment_bridge(base: &ClassTable, base_polys: &[Polynomial], target: &ClassTable) -> Result<Vec<Polynomial>, BeError> {
    if base.system().n() != 1 {
        return Err(BeError::BaseNotSingleEdge);
    }
    let x = target.bridge_variable().ok_or(BeError::NoBridgeVariable)?;
    let xp = Polynomial::var(x);
    let bs = base.system();
    let ts = target.system();
    let colour = |c: u8| -> Result<u8, BeError> {
        let tok = &bs.strata_tokens()[c as usize];
        ts.strata_index(tok).map_err(|_| BeError::MissingClass(tok.clone()))
    };
    let mut images = Vec::with_capacity(base.registry().len());
    for (vi, kind) in base.variable_kinds().iter().enumerate() {
        let name = base.registry().name(vi).unwrap_or_default().to_string();
        let img = match kind {
            VarKind::Symbol(ci) => {
                let label = base.classes()[*ci].label;
                let mut strata = [0u8; 6];
                for s in 0..6 {
                    strata[s] = colour(label.strata[s]).map_err(|_| BeError::MissingClass(name.clone()))?;
                }
                let t = SymbolTuple { strata, edges: [0; 4] };
                &xp * &target.resolve(&t).to_polynomial()
            }
            VarKind::Weight(c) => target.weight(colour(*c).map_err(|_| BeError::MissingClass(name.clone()))?).to_polynomial(),
            VarKind::Bridge => return Err(BeError::MissingClass(name)),
        };
        images.push(img);
    }
    Ok(base_polys.iter().map(|p| p.substitute(&images)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingReport {
    pub holds: bool,
    /// `1/n³`
    pub factor: String,
    pub specs_checked: usize,
    pub counterexample: Option<GeneratorSpec>,
}

/// Checks that substituting `jj(a..f)^{AB}_{CD} := jj(a..f) / n²` turns
/// every generator of the wide system into `1/n³` times the base generator
/// with the same strata colours.
pub fn scaling_identity_check(base: &ClassTable, wide: &ClassTable) -> Result<ScalingReport, BeError> {
    let (bs, ws) = (base.system(), wide.system());
    if bs.n() != 1 {
        return Err(BeError::BaseNotSingleEdge);
    }
    if bs.strata_tokens() != ws.strata_tokens() || bs.involution() != ws.involution() {
        return Err(BeError::MismatchedColours(bs.strata_tokens().to_vec(), ws.strata_tokens().to_vec()));
    }
    let (m, n) = (ws.m(), ws.n());
    let n2 = Rational::from_integer((n * n).into());
    let factor = Rational::from_integer(1.into()) / Rational::from_integer((n * n * n).into());
    let wide_sym = |t: &SymbolTuple| -> Factor {
        match wide.resolve(t) {
            Value::Zero => Factor::Zero,
            Value::Const(c) => Factor::Term(None, c.clone()),
            Value::Var(_) => match Factor::from(base.resolve(&SymbolTuple { strata: t.strata, edges: [0; 4] })) {
                Factor::Zero => Factor::Zero,
                Factor::Term(v, c) => Factor::Term(v, c / &n2),
            },
        }
    };
    let wide_weight = |c: u8| -> Factor {
        match wide.weight(c) {
            Value::Var(_) => base.weight(c).into(),
            v => v.into(),
        }
    };
    let inv = ws.involution();
    let total = GeneratorSpec::count(m, n);
    let per_j = GeneratorSpec::count(1, n);
    // the k index runs fastest, so each j block shares one right-hand side
    let bad = (0..total / per_j).into_par_iter().find_map_first(|block| {
        let first = GeneratorSpec::from_index(block * per_j, m, n);
        let rhs = be_generator(&GeneratorSpec { j: first.j, k: [0; 6] }, base).scale(&factor);
        (block * per_j..(block + 1) * per_j).find(|&i| {
            let spec = GeneratorSpec::from_index(i, m, n);
            generator_with(&spec, m, n, inv, wide_sym, wide_weight) != rhs
        })
    });
    Ok(ScalingReport {
        holds: bad.is_none(),
        factor: factor.to_string(),
        specs_checked: total,
        counterexample: bad.map(|i| GeneratorSpec::from_index(i, m, n)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colours::parse_system;
    use crate::exactpoly::text::parse_polynomial;
    use std::path::Path;

    fn table(text: &str) -> ClassTable {
        let cfg = parse_system(text, Path::new("t.cfg")).unwrap();
        ClassTable::build(&cfg.system, &cfg.assumptions, &cfg.order).unwrap()
    }

    const TV21S: &str = "[colours]\nstrata = 1,2\n[assumptions]\nfix w(1) = 1\nfix j(1,1,1,1,1,1) = 1\nzero_rule colour = 1\n\
                         [order]\nvariables = j(1,1,2,1,2,2), j(2,1,2,2,1,2), j(2,1,2,2,2,2), j(2,2,2,2,2,2), w(2)\n";

    #[test]
    fn one_colour_generator() {
        let t = table("[colours]\nstrata = 1\n");
        let g = be_generator(&GeneratorSpec { j: [0; 9], k: [0; 6] }, &t);
        assert_eq!(format_polynomial(&g, t.order()), "-w1*j111111^3 + j111111^2");
    }

    #[test]
    fn all_twos_generator() {
        let t = table(TV21S);
        let g = be_generator(&GeneratorSpec { j: [1; 9], k: [0; 6] }, &t);
        let want = parse_polynomial("j222222^2 - j212222^3 - w2*j222222^3", t.registry()).unwrap();
        assert_eq!(g, want);
    }

    #[test]
    fn two_colour_counts() {
        let t = table(TV21S);
        let s = generate_ideal(&t, DedupConvention::Sign);
        assert_eq!((s.stats.exact, s.stats.sign, s.polynomials.len()), (12, 12, 12));
        let t = table("[colours]\nstrata = 1,2\n[assumptions]\nzero_rule colour = 1\n");
        assert_eq!(generate_ideal(&t, DedupConvention::Exact).polynomials.len(), 14);
    }

    #[test]
    fn bridge_single_symbol() {
        let base = table("[colours]\nstrata = 1,2\n");
        let target = table(
            "[colours]\nstrata = 1,2\nedges = 2\n[assumptions]\nfix j(1,1,1,1,1,1;*,*,*,*) = 1/4\naugment = X\n",
        );
        let p = parse_polynomial("j111111", base.registry()).unwrap();
        let out = augment_bridge(&base, &[p], &target).unwrap();
        assert_eq!(format_polynomial(&out[0], target.order()), "1/4*X");
        assert!(augment_bridge(&base, &[], &target).unwrap().is_empty());
    }

    #[test]
    fn scaling_lemma_small() {
        let base = table("[colours]\nstrata = 1\n");
        let wide = table("[colours]\nstrata = 1\nedges = 2\n");
        let r = scaling_identity_check(&base, &wide).unwrap();
        assert!(r.holds);
        assert_eq!(r.factor, "1/8");
        let r = scaling_identity_check(&base, &base).unwrap();
        assert!(r.holds && r.factor == "1");
    }
}
