//! Gröbner bases over ℚ.
//!
//! [`buchberger`] runs a batched Buchberger loop with the Gebauer–Möller
//! criteria on primitive integer polynomials and returns the reduced basis.
//! A [`GroebnerBasis`] carries its order and a provenance hash of the
//! generating set, and round-trips through a plain text file.

mod division;
mod engine;
mod file;

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exactpoly::text::format_polynomial;
use crate::exactpoly::{MonomialOrder, PolyError, Polynomial, Rational};
use engine::{EOrder, EPoly};

pub use division::reduce;

/// Which S-pairs are processed next.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum PairStrategy {
    /// Smallest lcm degree first.
    #[default]
    Normal,
    /// Smallest sugar degree first, lcm degree as tie-break.
    Sugar,
}

impl std::str::FromStr for PairStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "normal" => Ok(PairStrategy::Normal),
            "sugar" => Ok(PairStrategy::Sugar),
            other => Err(format!("unknown pair strategy `{other}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerConfig {
    pub strategy: PairStrategy,
    pub max_pairs: Option<usize>,
    pub max_basis: Option<usize>,
    pub max_seconds: Option<f64>,
    /// Most S-pairs reduced together in one parallel batch.
    pub batch_size: usize,
    pub parallel: bool,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            strategy: PairStrategy::Normal,
            max_pairs: None,
            max_basis: None,
            max_seconds: None,
            batch_size: 64,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BuchbergerStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub product_skips: usize,
    pub chain_skips: usize,
    pub max_degree: u32,
    pub basis_len: usize,
    pub elapsed_secs: f64,
}

/// State at the moment a resource limit stopped Buchberger.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialReport {
    pub limit: String,
    pub basis_len: usize,
    pub active_len: usize,
    pub pairs_reduced: usize,
    pub pairs_pending: usize,
    pub max_degree: u32,
    pub elapsed_secs: f64,
}

impl fmt::Display for PartialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} reached after {:.1}s: {} polynomials ({} active), {} pairs reduced, {} pending, max degree {}",
            self.limit, self.elapsed_secs, self.basis_len, self.active_len, self.pairs_reduced, self.pairs_pending, self.max_degree
        )
    }
}

#[derive(Debug, Error)]
pub enum GroebnerError {
    #[error("resource limit: {0}")]
    ResourceLimit(PartialReport),
    #[error("basis is not verified as a Gröbner basis")]
    NotVerified,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("basis file line {line}: {message}")]
    File { line: usize, message: String },
    #[error("basis file digest mismatch: header {expected}, content {actual}")]
    DigestMismatch { expected: String, actual: String },
}

/// A Gröbner basis together with its order and provenance.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    polynomials: Vec<Polynomial>,
    order: MonomialOrder,
    reduced: bool,
    verified: bool,
    provenance: String,
    engine: OnceLock<Vec<EPoly>>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.polynomials == other.polynomials
            && self.order == other.order
            && self.reduced == other.reduced
            && self.provenance == other.provenance
    }
}

/// Content hash of a generating set under an order.
pub fn provenance(generators: &[Polynomial], order: &MonomialOrder) -> String {
    let mut h = Sha256::new();
    h.update(format!("order {}\nvars {}\n", order.kind(), order.registry().serialize()));
    for g in generators {
        h.update(format_polynomial(g, order));
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

impl GroebnerBasis {
    /// Wraps an arbitrary polynomial list; unverified until [`Self::verify`].
    pub fn from_polynomials(polynomials: Vec<Polynomial>, order: MonomialOrder, provenance: String) -> Self {
        GroebnerBasis {
            polynomials: polynomials.into_iter().filter(|p| !p.is_zero()).collect(),
            order,
            reduced: false,
            verified: false,
            provenance,
            engine: OnceLock::new(),
        }
    }

    /// Runs the S-pair check and marks the basis verified when it passes.
    pub fn verify(&mut self) -> bool {
        self.verified = is_groebner(&self.polynomials, &self.order);
        self.verified
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polynomials
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.polynomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polynomials.is_empty()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.polynomials.len() == 1 && self.polynomials[0].is_constant()
    }

    fn engine(&self) -> &[EPoly] {
        self.engine
            .get_or_init(|| self.polynomials.iter().map(|p| EPoly::from_polynomial(p, &self.order).0).collect())
    }
}

fn to_engine(polys: &[Polynomial], order: &MonomialOrder) -> Result<Vec<EPoly>, GroebnerError> {
    polys
        .iter()
        .map(|p| {
            for (m, _) in p.terms() {
                order.check(m)?;
            }
            Ok(EPoly::from_polynomial(p, order).0)
        })
        .collect()
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub fn buchberger(generators: &[Polynomial], order: &MonomialOrder, config: &GroebnerConfig) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with_stats(generators, order, config).map(|(gb, _)| gb)
}

pub fn buchberger_with_stats(
    generators: &[Polynomial],
    order: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<(GroebnerBasis, BuchbergerStats), GroebnerError> {
    let gens = to_engine(generators, order)?;
    let out = engine::buchberger(EOrder::new(order), order.nvars(), gens, config)?;
    let polynomials = out.basis.iter().map(EPoly::to_monic).collect();
    let gb = GroebnerBasis {
        polynomials,
        order: order.clone(),
        reduced: true,
        verified: true,
        provenance: provenance(generators, order),
        engine: OnceLock::from(out.basis),
    };
    Ok((gb, out.stats))
}

/// Unique representative of `f` modulo the ideal of `gb`.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial, GroebnerError> {
    if !gb.verified {
        return Err(GroebnerError::NotVerified);
    }
    if f.is_zero() {
        return Ok(Polynomial::zero());
    }
    for (m, _) in f.terms() {
        gb.order.check(m)?;
    }
    let (p, s) = EPoly::from_polynomial(f, &gb.order);
    let refs: Vec<&EPoly> = gb.engine().iter().collect();
    let r = engine::reduce(EOrder::new(&gb.order), p, &refs);
    if r.poly.is_zero() {
        return Ok(Polynomial::zero());
    }
    let scale: Rational = r.scale() * s;
    Ok(r.poly.to_polynomial().scale(&scale.recip()))
}

/// True iff every S-polynomial of `candidate` reduces to zero against it.
pub fn is_groebner(candidate: &[Polynomial], order: &MonomialOrder) -> bool {
    match to_engine(candidate, order) {
        Ok(polys) => {
            let polys: Vec<EPoly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
            engine::s_pairs_vanish(EOrder::new(order), &polys, true)
        }
        Err(_) => false,
    }
}

/// Whether two generating sets define the same ideal.
pub fn ideal_equal(a: &[Polynomial], b: &[Polynomial], order: &MonomialOrder, config: &GroebnerConfig) -> Result<bool, GroebnerError> {
    let ga = buchberger(a, order, config)?;
    let gb = buchberger(b, order, config)?;
    Ok(ga.polynomials == gb.polynomials)
}

/// Radical membership: `p ∈ √I` iff `1 ∈ I + ⟨1 − y·p⟩` for a fresh `y`.
pub fn radical_member(
    p: &Polynomial,
    generators: &[Polynomial],
    order: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<bool, GroebnerError> {
    let reg = order.registry();
    let fresh = (0..)
        .map(|i| if i == 0 { "rabinowitsch_y".to_string() } else { format!("rabinowitsch_y{i}") })
        .find(|name| reg.index_of(name).is_none())
        .expect("some fresh name");
    let ext = order.extended(&fresh)?;
    let y = Polynomial::var(reg.len());
    let mut gens: Vec<Polynomial> = generators.to_vec();
    gens.push(&Polynomial::one() - &(&y * p));
    let gb = buchberger(&gens, &ext, config)?;
    Ok(gb.is_unit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::text::parse_polynomial;
    use crate::exactpoly::VariableRegistry;

    fn parse_all(texts: &[&str], order: &MonomialOrder) -> Vec<Polynomial> {
        texts.iter().map(|t| parse_polynomial(t, order.registry()).unwrap()).collect()
    }

    #[test]
    fn hand_run_buchberger() {
        let ord = MonomialOrder::lex(VariableRegistry::new(["x", "y"]).unwrap());
        let gens = parse_all(&["x*y - 1", "y^2 - 1"], &ord);
        assert!(!is_groebner(&gens, &ord));
        let gb = buchberger(&gens, &ord, &GroebnerConfig::default()).unwrap();
        let want = parse_all(&["y^2 - 1", "x - y"], &ord);
        assert_eq!(gb.polynomials(), want.as_slice());
        assert!(is_groebner(gb.polynomials(), &ord));
    }

    #[test]
    fn single_generators() {
        let ord = MonomialOrder::degrevlex(VariableRegistry::new(["x", "y"]).unwrap());
        let gens = parse_all(&["x"], &ord);
        let gb = buchberger(&gens, &ord, &GroebnerConfig::default()).unwrap();
        assert_eq!(gb.polynomials(), gens.as_slice());
        assert!(is_groebner(&parse_all(&["3*x^2 + y"], &ord), &ord));
        let unit = buchberger(&parse_all(&["x", "x + 2"], &ord), &ord, &GroebnerConfig::default()).unwrap();
        assert!(unit.is_unit());
    }

    #[test]
    fn normal_forms_and_membership() {
        let ord = MonomialOrder::degrevlex(VariableRegistry::new(["x", "y"]).unwrap());
        let x2 = parse_all(&["x^2"], &ord);
        let gb = buchberger(&x2, &ord, &GroebnerConfig::default()).unwrap();
        assert!(normal_form(&Polynomial::zero(), &gb).unwrap().is_zero());
        let f = parse_polynomial("1/3*x^3 + 2*x*y - 1/2", ord.registry()).unwrap();
        assert_eq!(normal_form(&f, &gb).unwrap(), parse_polynomial("2*x*y - 1/2", ord.registry()).unwrap());
        let unverified = GroebnerBasis::from_polynomials(x2.clone(), ord.clone(), String::new());
        assert!(matches!(normal_form(&f, &unverified), Err(GroebnerError::NotVerified)));

        let c = GroebnerConfig::default();
        let x = parse_polynomial("x", ord.registry()).unwrap();
        let y = parse_polynomial("y", ord.registry()).unwrap();
        assert!(radical_member(&x, &x2, &ord, &c).unwrap());
        assert!(!radical_member(&y, &x2, &ord, &c).unwrap());
        assert!(!ideal_equal(std::slice::from_ref(&x), &x2, &ord, &c).unwrap());
        let pair = parse_all(&["x*y - 1", "y^2 - 1"], &ord);
        let swapped = vec![pair[1].clone(), pair[0].clone()];
        assert!(ideal_equal(&pair, &swapped, &ord, &c).unwrap());
    }

    #[test]
    fn limits_abort_with_report() {
        let ord = MonomialOrder::degrevlex(VariableRegistry::new(["x", "y", "z"]).unwrap());
        let gens = parse_all(&["x^2*y - z^3", "x*z^2 - y^2", "y*z - x^3 + 1"], &ord);
        let cfg = GroebnerConfig {
            max_pairs: Some(1),
            ..GroebnerConfig::default()
        };
        match buchberger(&gens, &ord, &cfg) {
            Err(GroebnerError::ResourceLimit(r)) => assert_eq!(r.limit, "max_pairs"),
            other => panic!("expected limit, got {other:?}"),
        }
    }
}
