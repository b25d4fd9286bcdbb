//! Config → table → generators → basis, with the cache in between.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use tvforge::beideal::{augment_bridge, generate_ideal, DedupConvention, GenerationStats};
use tvforge::cache::Cache;
use tvforge::colours::{load_system, ClassTable, SystemConfig};
use tvforge::exactpoly::text::parse_polynomial_lines;
use tvforge::groebner::{GroebnerBasis, GroebnerConfig};
use tvforge::invariant::InvariantContext;
use tvforge::spine::{parse_spine_file, Spine};
use tvforge::Polynomial;

/// Ideals with more generators than this need `--stretch` for a basis.
pub const STRETCH_THRESHOLD: usize = 1000;

pub struct System {
    pub config: SystemConfig,
    pub table: ClassTable,
}

pub struct Generators {
    pub polynomials: Vec<Polynomial>,
    pub stats: GenerationStats,
    pub bridged: usize,
    pub convention: DedupConvention,
}

pub fn load(path: &Path) -> Result<System> {
    let config = load_system(path)?;
    let table = ClassTable::build(&config.system, &config.assumptions, &config.order).with_context(|| format!("{}", path.display()))?;
    Ok(System { config, table })
}

pub fn read_polynomials(path: &Path, table: &ClassTable) -> Result<Vec<Polynomial>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_polynomial_lines(&text, table.registry()).map_err(|(line, e)| anyhow::anyhow!("{}:{line}: {e}", path.display()))
}

pub fn generators(sys: &System, convention: DedupConvention) -> Result<Generators> {
    let set = generate_ideal(&sys.table, convention);
    let mut polynomials = set.polynomials;
    let mut bridged = 0;
    if let Some(aug) = &sys.config.augment {
        let base = load(&aug.base_config).with_context(|| format!("base system {}", aug.base_config.display()))?;
        let base_polys = read_polynomials(&aug.base_polynomials, &base.table)?;
        let extra = augment_bridge(&base.table, &base_polys, &sys.table)?;
        bridged = extra.len();
        polynomials.extend(extra);
    }
    Ok(Generators {
        polynomials,
        stats: set.stats,
        bridged,
        convention,
    })
}

pub fn basis(
    sys: &System,
    gens: &Generators,
    cache: Option<&Cache>,
    config: &GroebnerConfig,
    stretch: bool,
) -> Result<(GroebnerBasis, bool)> {
    let n = gens.polynomials.len();
    let compute = |cache: Option<&Cache>| -> Result<(GroebnerBasis, bool)> {
        if n > STRETCH_THRESHOLD && !stretch {
            bail!("{n} generators: a basis of this size can take days; pass --stretch to run it anyway");
        }
        match cache {
            Some(c) => Ok(c.basis_or_compute(&gens.polynomials, sys.table.order(), config)?),
            None => Ok((tvforge::groebner::buchberger(&gens.polynomials, sys.table.order(), config)?, false)),
        }
    };
    if let Some(c) = cache {
        let prov = tvforge::groebner::provenance(&gens.polynomials, sys.table.order());
        if let Some(gb) = c.load_basis(&prov)? {
            return Ok((gb, true));
        }
    }
    compute(cache)
}

pub fn context(sys: System, gens: Generators, gb: GroebnerBasis) -> Result<InvariantContext> {
    Ok(InvariantContext::new(sys.table, gens.polynomials, gb)?)
}

pub fn read_spines(paths: &[PathBuf]) -> Result<Vec<(String, Spine)>> {
    let mut out = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let codes = parse_spine_file(&text).map_err(|(line, e)| anyhow::anyhow!("{}:{line}: {e}", path.display()))?;
        for lc in codes {
            let spine = Spine::build(lc.code).map_err(|e| anyhow::anyhow!("{}:{}: {e}", path.display(), lc.line))?;
            out.push((lc.label, spine));
        }
    }
    Ok(out)
}
