//! Integer-coefficient working representation for Buchberger.
//!
//! Polynomials are kept primitive over ℤ with terms sorted in descending
//! order, so every reduction step is fraction free.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{BuchbergerStats, GroebnerConfig, GroebnerError, PartialReport, PairStrategy};
use crate::exactpoly::{Monomial, MonomialOrder, OrderKind, Polynomial, Rational};

/// Dense exponent vector; slot 0 holds the total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Mon {
    e: Box<[u16]>,
    mask: u64,
}

fn mask_of(e: &[u16]) -> u64 {
    e[1..]
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
}

impl Mon {
    fn new(e: Box<[u16]>) -> Self {
        let mask = mask_of(&e);
        Mon { e, mask }
    }

    pub(crate) fn one(n: usize) -> Self {
        Mon::new(vec![0; n + 1].into_boxed_slice())
    }

    pub(crate) fn from_monomial(m: &Monomial, n: usize) -> Self {
        let mut e = vec![0u16; n + 1];
        for &(v, x) in m.exponents() {
            e[v + 1] = u16::try_from(x).expect("exponent fits in u16");
        }
        e[0] = e[1..].iter().sum();
        Mon::new(e.into_boxed_slice())
    }

    pub(crate) fn to_monomial(&self) -> Monomial {
        Monomial::from_pairs(self.e[1..].iter().enumerate().map(|(v, &x)| (v, x as u32)))
    }

    pub(crate) fn deg(&self) -> u32 {
        self.e[0] as u32
    }

    pub(crate) fn is_one(&self) -> bool {
        self.e[0] == 0
    }

    fn mul(&self, o: &Mon) -> Mon {
        let e: Box<[u16]> = self.e.iter().zip(o.e.iter()).map(|(a, b)| a.checked_add(*b).expect("exponent overflow")).collect();
        Mon { e, mask: self.mask | o.mask }
    }

    pub(crate) fn divides(&self, o: &Mon) -> bool {
        if self.mask & !o.mask != 0 || self.e[0] > o.e[0] {
            return false;
        }
        self.e[1..].iter().zip(o.e[1..].iter()).all(|(a, b)| a <= b)
    }

    /// `self / o`, assuming `o` divides `self`.
    fn div(&self, o: &Mon) -> Mon {
        Mon::new(self.e.iter().zip(o.e.iter()).map(|(a, b)| a - b).collect())
    }

    fn lcm(&self, o: &Mon) -> Mon {
        let mut e: Vec<u16> = self.e.iter().zip(o.e.iter()).map(|(a, b)| *a.max(b)).collect();
        e[0] = e[1..].iter().sum();
        Mon {
            e: e.into_boxed_slice(),
            mask: self.mask | o.mask,
        }
    }

    fn coprime(&self, o: &Mon) -> bool {
        if self.mask & o.mask == 0 {
            return true;
        }
        if self.e.len() <= 65 {
            return false;
        }
        self.e[1..].iter().zip(o.e[1..].iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct EOrder {
    kind: OrderKind,
}

impl EOrder {
    pub(crate) fn new(order: &MonomialOrder) -> Self {
        EOrder { kind: order.kind() }
    }

    pub(crate) fn cmp(&self, a: &Mon, b: &Mon) -> Ordering {
        match self.kind {
            OrderKind::Lex => a.e[1..].cmp(&b.e[1..]),
            OrderKind::DegRevLex => a.e[0].cmp(&b.e[0]).then_with(|| {
                for (x, y) in a.e[1..].iter().zip(b.e[1..].iter()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct EPoly {
    pub(crate) terms: Vec<(Mon, BigInt)>,
}

impl EPoly {
    /// Integer multiple of `p` with coprime coefficients and positive leading
    /// coefficient, plus the rational `s` with `result = s·p`.
    pub(crate) fn from_polynomial(p: &Polynomial, order: &MonomialOrder) -> (EPoly, Rational) {
        let n = order.nvars();
        let ord = EOrder::new(order);
        let den = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<(Mon, BigInt)> = p
            .terms()
            .map(|(m, c)| (Mon::from_monomial(m, n), (c * &den).to_integer()))
            .collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut e = EPoly { terms };
        let content = e.make_primitive();
        (e, Rational::from_integer(den) / Rational::from_integer(content))
    }

    pub(crate) fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.to_monomial(), Rational::from_integer(c.clone()))))
    }

    /// Monic rational image.
    pub(crate) fn to_monic(&self) -> Polynomial {
        match self.terms.first() {
            None => Polynomial::zero(),
            Some((_, lc)) => {
                let lc = Rational::from_integer(lc.clone());
                Polynomial::from_terms(
                    self.terms
                        .iter()
                        .map(|(m, c)| (m.to_monomial(), Rational::from_integer(c.clone()) / &lc)),
                )
            }
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> &Mon {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the signed content; returns the divisor (1 for zero).
    pub(crate) fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
        g
    }

    fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.deg()).max().unwrap_or(0)
    }
}

/// `x·a − y·t·b` where the leading terms cancel; `a` and `b` are given
/// without their cancelling first terms.
fn combine(ord: EOrder, head: &[(Mon, BigInt)], x: &BigInt, a: &[(Mon, BigInt)], y: &BigInt, t: &Mon, b: &[(Mon, BigInt)]) -> Vec<(Mon, BigInt)> {
    let scale = |c: &BigInt| if x.is_one() { c.clone() } else { c * x };
    let mut out = Vec::with_capacity(head.len() + a.len() + b.len());
    out.extend(head.iter().map(|(m, c)| (m.clone(), scale(c))));
    let (mut i, mut j) = (0, 0);
    let next_b = |j: usize| -> (Mon, BigInt) {
        let (m, c) = &b[j];
        (m.mul(t), -(c * y))
    };
    let mut pending_b = if b.is_empty() { None } else { Some(next_b(0)) };
    while i < a.len() || pending_b.is_some() {
        match (a.get(i), &pending_b) {
            (Some((ma, ca)), Some((mb, _))) => match ord.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), scale(ca)));
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending_b.take().expect("pending"));
                    j += 1;
                    pending_b = if j < b.len() { Some(next_b(j)) } else { None };
                }
                Ordering::Equal => {
                    let (mb, cb) = pending_b.take().expect("pending");
                    let s = scale(ca) + cb;
                    if !s.is_zero() {
                        out.push((mb, s));
                    }
                    i += 1;
                    j += 1;
                    pending_b = if j < b.len() { Some(next_b(j)) } else { None };
                }
            },
            (Some((ma, ca)), None) => {
                out.push((ma.clone(), scale(ca)));
                i += 1;
            }
            (None, Some(_)) => {
                out.push(pending_b.take().expect("pending"));
                j += 1;
                pending_b = if j < b.len() { Some(next_b(j)) } else { None };
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Finds the shortest reducer whose leading monomial divides `m`.
fn find_reducer<'a>(reducers: &[&'a EPoly], m: &Mon) -> Option<&'a EPoly> {
    let mut best: Option<&EPoly> = None;
    for g in reducers {
        if g.lm().divides(m) && best.is_none_or(|b| g.terms.len() < b.terms.len()) {
            best = Some(g);
        }
    }
    best
}

/// Outcome of a reduction: `poly = (num/den)·input` modulo the reducers.
pub(crate) struct Reduced {
    pub(crate) poly: EPoly,
    pub(crate) num: BigInt,
    pub(crate) den: BigInt,
}

impl Reduced {
    pub(crate) fn scale(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }
}

/// Full reduction (leading and tail terms).
pub(crate) fn reduce(ord: EOrder, p: EPoly, reducers: &[&EPoly]) -> Reduced {
    let mut terms = p.terms;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut growth = 0u32;
    let mut k = 0;
    while k < terms.len() {
        let Some(g) = find_reducer(reducers, &terms[k].0) else {
            k += 1;
            continue;
        };
        let (c, b) = (&terms[k].1, g.lc());
        let gg = c.gcd(b);
        let x = b / &gg;
        let y = c / &gg;
        let t = terms[k].0.div(g.lm());
        terms = combine(ord, &terms[..k], &x, &terms[k + 1..], &y, &t, &g.terms[1..]);
        if !x.is_one() {
            num *= &x;
            growth += 1;
            if growth.is_multiple_of(16) {
                let mut e = EPoly { terms };
                den *= e.make_primitive();
                terms = e.terms;
            }
        }
    }
    let mut poly = EPoly { terms };
    den *= poly.make_primitive();
    Reduced { poly, num, den }
}

fn spoly(ord: EOrder, f: &EPoly, g: &EPoly) -> EPoly {
    let l = f.lm().lcm(g.lm());
    let tf = l.div(f.lm());
    let tg = l.div(g.lm());
    let gg = f.lc().gcd(g.lc());
    let x = g.lc() / &gg;
    let y = f.lc() / &gg;
    let a: Vec<(Mon, BigInt)> = f.terms[1..].iter().map(|(m, c)| (m.mul(&tf), c.clone())).collect();
    EPoly {
        terms: combine(ord, &[], &x, &a, &y, &tg, &g.terms[1..]),
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mon,
    sugar: u32,
}

pub(crate) struct Outcome {
    pub(crate) basis: Vec<EPoly>,
    pub(crate) stats: BuchbergerStats,
}

struct State<'c> {
    ord: EOrder,
    polys: Vec<EPoly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: BuchbergerStats,
    config: &'c GroebnerConfig,
    start: Instant,
}

impl State<'_> {
    fn reducers(&self) -> Vec<&EPoly> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
    }

    fn limit(&self, what: &str) -> GroebnerError {
        GroebnerError::ResourceLimit(PartialReport {
            limit: what.to_string(),
            basis_len: self.polys.len(),
            active_len: self.active.iter().filter(|a| **a).count(),
            pairs_reduced: self.stats.pairs_reduced,
            pairs_pending: self.pairs.len(),
            max_degree: self.stats.max_degree,
            elapsed_secs: self.start.elapsed().as_secs_f64(),
        })
    }

    fn check_limits(&self) -> Result<(), GroebnerError> {
        if let Some(s) = self.config.max_seconds {
            if self.start.elapsed().as_secs_f64() > s {
                return Err(self.limit("max_seconds"));
            }
        }
        if let Some(p) = self.config.max_pairs {
            if self.stats.pairs_reduced >= p {
                return Err(self.limit("max_pairs"));
            }
        }
        if let Some(b) = self.config.max_basis {
            if self.polys.len() > b {
                return Err(self.limit("max_basis"));
            }
        }
        Ok(())
    }

    /// Inserts `h` (nonzero, primitive, reduced) with Gebauer–Möller updates.
    fn insert(&mut self, h: EPoly, sugar: u32) {
        let hi = self.polys.len();
        let lh = h.lm().clone();
        self.stats.max_degree = self.stats.max_degree.max(h.max_degree());
        let cands: Vec<(usize, Mon, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lg = self.polys[g].lm();
                (g, lg.lcm(&lh), lg.coprime(&lh))
            })
            .collect();
        let mut keep = vec![false; cands.len()];
        for idx in 0..cands.len() {
            let (_, l, cop) = &cands[idx];
            if *cop {
                keep[idx] = true;
                continue;
            }
            let dominated = cands[idx + 1..].iter().any(|o| o.1.divides(l))
                || (0..idx).any(|o| keep[o] && cands[o].1.divides(l));
            keep[idx] = !dominated;
            if dominated {
                self.stats.chain_skips += 1;
            }
        }
        let before = self.pairs.len();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && polys[p.i].lm().lcm(&lh) != p.lcm && polys[p.j].lm().lcm(&lh) != p.lcm)
        });
        self.stats.chain_skips += before - self.pairs.len();
        for (idx, (g, l, cop)) in cands.into_iter().enumerate() {
            if !keep[idx] {
                continue;
            }
            if cop {
                self.stats.product_skips += 1;
                continue;
            }
            let lg = self.polys[g].lm();
            let s = (self.sugar[g] + l.deg() - lg.deg()).max(sugar + l.deg() - lh.deg());
            self.pairs.push(Pair { i: g, j: hi, lcm: l, sugar: s });
            self.stats.pairs_created += 1;
        }
        for g in 0..hi {
            if self.active[g] && lh.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
    }

    fn next_batch(&mut self) -> Vec<Pair> {
        let key = |p: &Pair| match self.config.strategy {
            PairStrategy::Normal => (p.lcm.deg(), 0),
            PairStrategy::Sugar => (p.sugar, p.lcm.deg()),
        };
        let Some(best) = self.pairs.iter().map(key).min() else {
            return Vec::new();
        };
        let (mut batch, rest): (Vec<Pair>, Vec<Pair>) = std::mem::take(&mut self.pairs).into_iter().partition(|p| key(p) == best);
        self.pairs = rest;
        let ord = self.ord;
        batch.sort_by(|a, b| ord.cmp(&a.lcm, &b.lcm).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j)));
        if batch.len() > self.config.batch_size.max(1) {
            let tail = batch.split_off(self.config.batch_size.max(1));
            self.pairs.extend(tail);
        }
        batch
    }
}

/// Buchberger's algorithm; returns the interreduced minimal basis (primitive,
/// not yet monic) in ascending leading-monomial order.
pub(crate) fn buchberger(ord: EOrder, n: usize, gens: Vec<EPoly>, config: &GroebnerConfig) -> Result<Outcome, GroebnerError> {
    let mut st = State {
        ord,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: BuchbergerStats::default(),
        config,
        start: Instant::now(),
    };
    let mut gens: Vec<EPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    gens.sort_by(|a, b| ord.cmp(a.lm(), b.lm()).then_with(|| a.terms.len().cmp(&b.terms.len())));
    for g in gens {
        let sugar = g.max_degree();
        let r = reduce(ord, g, &st.reducers()).poly;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(unit(n, st));
        }
        st.insert(r, sugar);
    }
    loop {
        st.check_limits()?;
        let batch = st.next_batch();
        if batch.is_empty() {
            break;
        }
        let snapshot = st.polys.len();
        let reduced: Vec<(EPoly, u32)> = {
            let reducers = st.reducers();
            let polys = &st.polys;
            let work = |p: &Pair| (reduce(ord, spoly(ord, &polys[p.i], &polys[p.j]), &reducers).poly, p.sugar);
            if config.parallel && batch.len() > 1 {
                batch.par_iter().map(work).collect()
            } else {
                batch.iter().map(work).collect()
            }
        };
        st.stats.pairs_reduced += batch.len();
        for (r, sugar) in reduced {
            let r = if st.polys.len() > snapshot && !r.is_zero() {
                reduce(ord, r, &st.reducers()).poly
            } else {
                r
            };
            if r.is_zero() {
                st.stats.zero_reductions += 1;
                continue;
            }
            if r.is_constant() {
                return Ok(unit(n, st));
            }
            let sugar = sugar.max(r.max_degree());
            st.insert(r, sugar);
        }
    }
    let basis = interreduce(ord, st.reducers().into_iter().cloned().collect(), config.parallel);
    st.stats.elapsed_secs = st.start.elapsed().as_secs_f64();
    st.stats.basis_len = basis.len();
    Ok(Outcome { basis, stats: st.stats })
}

fn unit(n: usize, mut st: State<'_>) -> Outcome {
    st.stats.elapsed_secs = st.start.elapsed().as_secs_f64();
    st.stats.basis_len = 1;
    Outcome {
        basis: vec![EPoly {
            terms: vec![(Mon::one(n), BigInt::one())],
        }],
        stats: st.stats,
    }
}

/// Tail-reduces each element of a minimal basis by the others.
pub(crate) fn interreduce(ord: EOrder, minimal: Vec<EPoly>, parallel: bool) -> Vec<EPoly> {
    let work = |i: usize| {
        let others: Vec<&EPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect();
        reduce(ord, minimal[i].clone(), &others).poly
    };
    let mut out: Vec<EPoly> = if parallel {
        (0..minimal.len()).into_par_iter().map(work).collect()
    } else {
        (0..minimal.len()).map(work).collect()
    };
    out.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    out
}

/// True when every S-polynomial of `cands` reduces to zero against `cands`.
pub(crate) fn s_pairs_vanish(ord: EOrder, cands: &[EPoly], parallel: bool) -> bool {
    let refs: Vec<&EPoly> = cands.iter().collect();
    let pairs: Vec<(usize, usize)> = (0..cands.len())
        .flat_map(|i| (i + 1..cands.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| !cands[i].lm().coprime(cands[j].lm()))
        .collect();
    let check = |&(i, j): &(usize, usize)| reduce(ord, spoly(ord, &cands[i], &cands[j]), &refs).poly.is_zero();
    if parallel {
        pairs.par_iter().all(check)
    } else {
        pairs.iter().all(check)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::text::parse_polynomial;
    use crate::exactpoly::VariableRegistry;

    #[test]
    fn degrevlex_matches_reference_order() {
        let order = MonomialOrder::degrevlex(VariableRegistry::new(["x", "y", "z"]).unwrap());
        let ord = EOrder::new(&order);
        let ms = [
            Monomial::from_pairs([(0, 2), (2, 1)]),
            Monomial::from_pairs([(0, 1), (1, 1), (2, 1)]),
            Monomial::from_pairs([(1, 2)]),
            Monomial::from_pairs([(0, 1), (2, 1)]),
            Monomial::one(),
        ];
        for a in &ms {
            for b in &ms {
                assert_eq!(ord.cmp(&Mon::from_monomial(a, 3), &Mon::from_monomial(b, 3)), order.cmp(a, b));
            }
        }
    }

    #[test]
    fn fraction_free_reduction_tracks_scale() {
        let order = MonomialOrder::lex(VariableRegistry::new(["x", "y"]).unwrap());
        let ord = EOrder::new(&order);
        let reg = order.registry().clone();
        let (g, _) = EPoly::from_polynomial(&parse_polynomial("2*x - 3*y", &reg).unwrap(), &order);
        let (f, s) = EPoly::from_polynomial(&parse_polynomial("1/2*x^2", &reg).unwrap(), &order);
        let r = reduce(ord, f, &[&g]);
        // x^2/2 = 9/8 y^2 modulo 2x - 3y
        let nf = r.poly.to_polynomial().scale(&(r.scale() * s).recip());
        assert_eq!(nf, parse_polynomial("9/8*y^2", &reg).unwrap());
    }
}
