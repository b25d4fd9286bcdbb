//! Randomized property suites. Every runner uses a fixed seed.

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use tvforge::beideal::{generate_ideal, scaling_identity_check, DedupConvention};
use tvforge::colours::{
    as_tetrahedron_map, load_system, parse_system, ClassTable, EdgeSymmetry, SlotAction, SymbolTuple, SymmetryGroup,
};
use tvforge::groebner::{buchberger, normal_form, reduce, GroebnerBasis, GroebnerConfig, PairStrategy};
use tvforge::spine::{parse_spine_file, Spine};
use tvforge::statesum::{state_sum, state_sum_with, OrientationChoice, SlotChoice, StateSumOptions};
use tvforge::{Monomial, MonomialOrder, Polynomial, Rational, VariableRegistry};

fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn table(name: &str) -> ClassTable {
    let cfg = load_system(&fixtures().join("systems").join(name)).unwrap();
    ClassTable::build(&cfg.system, &cfg.assumptions, &cfg.order).unwrap()
}

fn inline_table(text: &str) -> ClassTable {
    let cfg = parse_system(text, Path::new("inline.cfg")).unwrap();
    ClassTable::build(&cfg.system, &cfg.assumptions, &cfg.order).unwrap()
}

fn spines() -> &'static [Spine] {
    static S: OnceLock<Vec<Spine>> = OnceLock::new();
    S.get_or_init(|| {
        let text = std::fs::read_to_string(fixtures().join("spines/lens.txt")).unwrap();
        parse_spine_file(&text).unwrap().into_iter().map(|lc| Spine::build(lc.code).unwrap()).collect()
    })
}

struct Reduced {
    table: ClassTable,
    gb: GroebnerBasis,
}

fn tv21s() -> &'static Reduced {
    static R: OnceLock<Reduced> = OnceLock::new();
    R.get_or_init(|| {
        let table = table("tv21s.cfg");
        let gens = generate_ideal(&table, DedupConvention::Sign).polynomials;
        let gb = buchberger(&gens, table.order(), &GroebnerConfig::default()).unwrap();
        Reduced { table, gb }
    })
}

fn xyz(lex: bool) -> MonomialOrder {
    let reg = VariableRegistry::new(["x", "y", "z"]).unwrap();
    if lex {
        MonomialOrder::lex(reg)
    } else {
        MonomialOrder::degrevlex(reg)
    }
}

fn monomial(nvars: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, nvars).prop_map(|e| Monomial::from_dense(&e))
}

fn polynomial(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(nvars, max_exp), -6i64..=6, 1i64..=3), 0..=max_terms).prop_map(|terms| {
        Polynomial::from_terms(
            terms
                .into_iter()
                .map(|(m, p, q)| (m, Rational::new(p.into(), q.into()))),
        )
    })
}

fn divisible_by_lead(m: &Monomial, basis: &[Polynomial], order: &MonomialOrder) -> bool {
    basis
        .iter()
        .filter_map(|g| g.leading_term(order).ok())
        .any(|(lm, _)| lm.divides(m))
}

proptest! {
    #![proptest_config(config(256, 0x5eed_0001))]

    #[test]
    fn order_axioms(lex in any::<bool>(), a in monomial(3, 4), b in monomial(3, 4), c in monomial(3, 4)) {
        let ord = xyz(lex);
        prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
        prop_assert_eq!(ord.cmp(&a, &b).is_eq(), a == b);
        prop_assert!(ord.cmp(&Monomial::one(), &a).is_le());
        prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&a.mul(&c), &b.mul(&c)));
        if ord.cmp(&a, &b).is_le() && ord.cmp(&b, &c).is_le() {
            prop_assert!(ord.cmp(&a, &c).is_le());
        }
    }
}

proptest! {
    #![proptest_config(config(128, 0x5eed_0002))]

    #[test]
    fn division_contract(
        lex in any::<bool>(),
        f in polynomial(3, 3, 6),
        basis in prop::collection::vec(polynomial(3, 2, 3), 1..=3),
    ) {
        let ord = xyz(lex);
        let (r, q) = reduce(&f, &basis, &ord);
        let mut rebuilt = r.clone();
        for (qi, gi) in q.iter().zip(&basis) {
            rebuilt += &(qi * gi);
        }
        prop_assert_eq!(rebuilt, f);
        for (m, _) in r.terms() {
            prop_assert!(!divisible_by_lead(m, &basis, &ord));
        }
    }
}

proptest! {
    #![proptest_config(config(48, 0x5eed_0003))]

    #[test]
    fn reduced_basis_is_strategy_free(
        lex in any::<bool>(),
        gens in prop::collection::vec(polynomial(3, 2, 3), 1..=3),
    ) {
        let ord = xyz(lex);
        let limits = |strategy, parallel| GroebnerConfig {
            strategy,
            parallel,
            max_pairs: Some(20_000),
            max_seconds: Some(20.0),
            ..GroebnerConfig::default()
        };
        let a = buchberger(&gens, &ord, &limits(PairStrategy::Normal, true));
        let b = buchberger(&gens, &ord, &limits(PairStrategy::Sugar, false));
        prop_assume!(a.is_ok() && b.is_ok());
        let (a, b) = (a.unwrap(), b.unwrap());
        prop_assert_eq!(a.polynomials(), b.polynomials());
    }
}

fn tuple(m: u8) -> impl Strategy<Value = SymbolTuple> {
    (prop::array::uniform6(0..m), prop::array::uniform4(0..2u8)).prop_map(|(strata, edges)| SymbolTuple { strata, edges })
}

#[test]
fn group_closure_and_tetrahedral_action() {
    let g = SymmetryGroup::new(EdgeSymmetry::None);
    assert_eq!(g.order(), 24);
    for a in g.actions() {
        assert!(as_tetrahedron_map(a).is_some(), "{a:?}");
        for b in g.actions() {
            assert!(g.actions().contains(&a.then(b)));
        }
    }
    assert_eq!(as_tetrahedron_map(&SlotAction::G1), Some([2, 0, 1, 3]));
    assert_eq!(as_tetrahedron_map(&SlotAction::G2), Some([0, 1, 3, 2]));
    assert_eq!(SymmetryGroup::new(EdgeSymmetry::Full).order(), 24 * 24);
}

proptest! {
    #![proptest_config(config(256, 0x5eed_0004))]

    #[test]
    fn canonical_form_is_idempotent(neg in any::<bool>(), t in tuple(3), k in 0usize..24) {
        let inv: Vec<u8> = if neg { vec![0, 2, 1] } else { vec![0, 1, 2] };
        let g = SymmetryGroup::new(EdgeSymmetry::None);
        let c = g.canonicalize(&t, &inv);
        prop_assert_eq!(g.canonicalize(&c, &inv), c);
        let moved = g.actions()[k].apply(&t, &inv);
        prop_assert_eq!(g.canonicalize(&moved, &inv), c);
        prop_assert!(g.orbit(&t, &inv).contains(&c));
        prop_assert!(c <= t);
    }
}

fn tetra_perm() -> impl Strategy<Value = [usize; 4]> {
    Just([0usize, 1, 2, 3]).prop_shuffle()
}

proptest! {
    #![proptest_config(config(24, 0x5eed_0005))]

    #[test]
    fn state_sum_ignores_orientation_and_slots(
        sys in 0usize..2,
        which in 0usize..4,
        flips in prop::collection::vec(any::<bool>(), 10),
        perms in prop::collection::vec(tetra_perm(), 9),
    ) {
        static TABLES: OnceLock<Vec<ClassTable>> = OnceLock::new();
        let tables = TABLES.get_or_init(|| vec![table("tv21s.cfg"), table("tv31s.cfg")]);
        let t = &tables[sys];
        let sp = &spines()[which];
        let base = state_sum(sp, t).unwrap().polynomial;
        let opts = StateSumOptions {
            orientation: Some(OrientationChoice { flips: flips[..sp.stratum_count()].to_vec() }),
            slots: Some(SlotChoice { perms: perms[..sp.vertices().len()].to_vec() }),
            ..StateSumOptions::default()
        };
        prop_assert_eq!(state_sum_with(sp, t, &opts).unwrap().polynomial, base);
    }
}

#[test]
fn scaling_lemma_for_two_and_three_edge_colours() {
    for (strata, inv) in [("1", "trivial"), ("1,2", "trivial"), ("1,-1", "negation")] {
        let base = inline_table(&format!("[colours]\nstrata = {strata}\ninvolution = {inv}\n"));
        for (n, factor) in [(2, "1/8"), (3, "1/27")] {
            // two strata colours with three edge colours is 373k specs; too slow here
            if n == 3 && strata != "1" {
                continue;
            }
            let wide = inline_table(&format!("[colours]\nstrata = {strata}\ninvolution = {inv}\nedges = {n}\n"));
            let r = scaling_identity_check(&base, &wide).unwrap();
            assert!(r.holds, "{strata} n={n}: {:?}", r.counterexample);
            assert_eq!(r.factor, factor);
        }
    }
}

#[test]
#[ignore = "minutes on one core"]
fn scaling_lemma_two_colours_three_edges() {
    let base = inline_table("[colours]\nstrata = 1,2\n");
    let wide = inline_table("[colours]\nstrata = 1,2\nedges = 3\n");
    let r = scaling_identity_check(&base, &wide).unwrap();
    assert!(r.holds && r.factor == "1/27", "{:?}", r.counterexample);
}

proptest! {
    #![proptest_config(config(64, 0x5eed_0006))]

    #[test]
    fn coset_soundness(
        which in 0usize..4,
        picks in prop::collection::vec((0usize..64, polynomial(5, 2, 3)), 1..=3),
    ) {
        let r = tv21s();
        let f = state_sum(&spines()[which], &r.table).unwrap().polynomial;
        let basis = r.gb.polynomials();
        let mut g = f.clone();
        for (i, h) in &picks {
            g += &(h * &basis[i % basis.len()]);
        }
        prop_assert_eq!(normal_form(&g, &r.gb).unwrap(), normal_form(&f, &r.gb).unwrap());
    }

    #[test]
    fn normal_forms_agree_iff_difference_vanishes(f in polynomial(5, 3, 4), g in polynomial(5, 3, 4)) {
        let r = tv21s();
        let same = normal_form(&f, &r.gb).unwrap() == normal_form(&g, &r.gb).unwrap();
        prop_assert_eq!(same, normal_form(&(&f - &g), &r.gb).unwrap().is_zero());
    }
}
