use std::path::PathBuf;

use tvforge::beideal::{generate_ideal, DedupConvention};
use tvforge::colours::{load_system, ClassTable};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/systems").join(name)
}

fn table(name: &str) -> ClassTable {
    let cfg = load_system(&fixture(name)).unwrap();
    ClassTable::build(&cfg.system, &cfg.assumptions, &cfg.order).unwrap()
}

#[test]
fn class_counts() {
    let c = table("tv21.cfg").counts();
    assert_eq!(c.classes, 11);
    let c = table("tv21s.cfg").counts();
    assert_eq!((c.free, c.fixed, c.weights_free), (4, 1, 1));
    let c = table("tv31plus.cfg").counts();
    assert_eq!((c.free, c.weights_free), (41, 1));
    let c = table("tv31s.cfg").counts();
    assert_eq!((c.free, c.nonzero, c.weights_free), (21, 21, 1));
    let c = table("tv22s.cfg").counts();
    assert_eq!(c.free, 22);
}

#[test]
fn generator_counts() {
    let t = table("tv21s.cfg");
    let names: Vec<&str> = t.registry().names().iter().map(String::as_str).collect();
    assert_eq!(names, ["j112122", "j212212", "j212222", "j222222", "w2"]);
    for (cfg, want) in [("tv31s.cfg", 474), ("tv31plus.cfg", 1661)] {
        let t = table(cfg);
        let exact = generate_ideal(&t, DedupConvention::Exact);
        let sign = generate_ideal(&t, DedupConvention::Sign);
        assert_eq!(sign.polynomials.len(), want, "{cfg}");
        assert_eq!(exact.polynomials.len(), want, "{cfg}");
    }
}
