mod pipeline;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use tvforge::beideal::{generators_to_text, DedupConvention};
use tvforge::cache::Cache;
use tvforge::exactpoly::text::format_polynomial;
use tvforge::exactpoly::QuotientAlgebra;
use tvforge::groebner::{GroebnerConfig, PairStrategy};
use tvforge::invariant::{
    compare_partition, compute_all, degree_bound, epsilon_evaluate, parse_point, partition_ids, radical_suite, records_to_jsonl,
    render_table, InvariantContext, InvariantRecord,
};
use tvforge::statesum::state_sum;

use pipeline::System;

#[derive(Parser)]
#[command(name = "tvforge", version, about = "Ideal Turaev-Viro invariants from special spines")]
struct Cli {
    /// System configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cache directory for bases and records.
    #[arg(long, global = true, env = "TVFORGE_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Wall-clock budget for one Gröbner computation.
    #[arg(long, global = true, default_value_t = 3600.0)]
    max_seconds: f64,
    /// Most S-pairs reduced in one Gröbner computation.
    #[arg(long, global = true, default_value_t = 5_000_000)]
    max_pairs: usize,
    #[arg(long, global = true, default_value_t = 200_000)]
    max_basis: usize,
    #[arg(long, global = true, default_value = "normal")]
    strategy: PairStrategy,
    /// Allow bases of very large ideals.
    #[arg(long, global = true)]
    stretch: bool,
    #[arg(long, global = true, default_value = "sign")]
    dedup: DedupConvention,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Check spine codes and print V/E/F/euler per code.
    Validate { spines: Vec<PathBuf> },
    /// Print the raw state sum of each spine.
    Statesum { spines: Vec<PathBuf> },
    /// Print the generators of the ideal.
    Ideal {
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Compute (or load) the reduced Gröbner basis.
    Groebner {
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Normal forms of the polynomials in a file.
    Nf { polynomials: PathBuf },
    /// Invariant table for the spines.
    Invariant {
        spines: Vec<PathBuf>,
        /// Also evaluate at the point in this file.
        #[arg(long)]
        point: Option<PathBuf>,
    },
    /// Evaluate invariants at a quotient-algebra point.
    Eval {
        #[arg(long)]
        point: PathBuf,
        spines: Vec<PathBuf>,
    },
    /// Degree bounds of the invariants.
    Bound { spines: Vec<PathBuf> },
    /// Check candidate radical generators against the ideal.
    Radical {
        radical: PathBuf,
        /// Expected nonzero normal forms of the candidates.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Group spines by identical invariant.
    Partition { spines: Vec<PathBuf> },
}

impl Cli {
    fn groebner_config(&self) -> GroebnerConfig {
        GroebnerConfig {
            strategy: self.strategy,
            max_pairs: Some(self.max_pairs),
            max_basis: Some(self.max_basis),
            max_seconds: Some(self.max_seconds),
            ..Default::default()
        }
    }

    fn cache(&self) -> Result<Option<Cache>> {
        Ok(match &self.cache_dir {
            Some(d) => Some(Cache::new(d)?),
            None => None,
        })
    }

    fn system(&self) -> Result<System> {
        match &self.config {
            Some(p) => pipeline::load(p),
            None => bail!("--config is required for this command"),
        }
    }

    fn context(&self) -> Result<InvariantContext> {
        let sys = self.system()?;
        let gens = pipeline::generators(&sys, self.dedup)?;
        let cache = self.cache()?;
        let (gb, _) = pipeline::basis(&sys, &gens, cache.as_ref(), &self.groebner_config(), self.stretch)?;
        pipeline::context(sys, gens, gb)
    }

    /// Records, from the record cache when possible.
    fn records(&self, ctx: &InvariantContext, spines: &[PathBuf]) -> Result<Vec<InvariantRecord>> {
        let spines = pipeline::read_spines(spines)?;
        let cache = self.cache()?;
        let system_hash = self.config.as_deref().map(config_hash).transpose()?.unwrap_or_default();
        let mut out: Vec<Option<InvariantRecord>> = vec![None; spines.len()];
        let mut todo = Vec::new();
        for (i, (label, spine)) in spines.iter().enumerate() {
            if let Some(c) = &cache {
                let key = Cache::record_key(&spine.hash(), &system_hash, ctx.basis.provenance());
                if let Some(mut r) = c.load_record(&key, ctx.order())? {
                    r.label = label.clone();
                    out[i] = Some(r);
                    continue;
                }
            }
            todo.push(i);
        }
        let fresh: Vec<(String, tvforge::spine::Spine)> = todo.iter().map(|&i| spines[i].clone()).collect();
        for (&i, r) in todo.iter().zip(compute_all(ctx, &fresh)) {
            let r = r.with_context(|| format!("spine `{}`", spines[i].0))?;
            if let Some(c) = &cache {
                c.store_record(&Cache::record_key(&r.spine_hash, &system_hash, &r.basis), &r)?;
            }
            out[i] = Some(r);
        }
        Ok(out.into_iter().map(|r| r.expect("filled")).collect())
    }
}

fn config_hash(path: &Path) -> Result<String> {
    Ok(tvforge::colours::load_system(path)?.hash)
}

fn add_epsilon(ctx: &InvariantContext, records: &mut [InvariantRecord], point: &Path) -> Result<()> {
    let text = std::fs::read_to_string(point).with_context(|| format!("reading {}", point.display()))?;
    let alg = QuotientAlgebra::golden_quartic();
    let pt = parse_point(&text, &alg, ctx.table.registry()).with_context(|| point.display().to_string())?;
    for r in records.iter_mut() {
        let v = epsilon_evaluate(ctx, r, &pt, &point.display().to_string()).with_context(|| point.display().to_string())?;
        r.epsilon = Some(v.to_string());
    }
    Ok(())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    match &cli.command {
        Command::Validate { spines } => {
            let mut failed = false;
            for path in spines {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let codes = match tvforge::spine::parse_spine_file(&text) {
                    Ok(c) => c,
                    Err((line, e)) => {
                        eprintln!("{}:{line}: {e}", path.display());
                        failed = true;
                        continue;
                    }
                };
                for lc in codes {
                    match tvforge::spine::Spine::build(lc.code) {
                        Ok(s) => {
                            println!("{}:{} {} {}", path.display(), lc.line, lc.label, s.stats());
                            for w in s.warnings() {
                                println!("  warning: {w}");
                            }
                        }
                        Err(e) => {
                            eprintln!("{}:{}: {e}", path.display(), lc.line);
                            failed = true;
                        }
                    }
                }
            }
            return Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS });
        }
        Command::Statesum { spines } => {
            let sys = cli.system()?;
            for (label, spine) in pipeline::read_spines(spines)? {
                let s = state_sum(&spine, &sys.table)?;
                let text = format_polynomial(&s.polynomial, sys.table.order());
                match cli.format {
                    Format::Text => println!(
                        "{label}: {text}\n  colourings enumerated {} pruned {} terms {}",
                        s.stats.enumerated, s.stats.pruned, s.stats.terms
                    ),
                    Format::Jsonl => println!(
                        "{}",
                        serde_json::json!({"label": label, "statesum": text, "stats": s.stats})
                    ),
                }
            }
        }
        Command::Ideal { output } => {
            let sys = cli.system()?;
            let gens = pipeline::generators(&sys, cli.dedup)?;
            let set = tvforge::beideal::GeneratorSet {
                polynomials: gens.polynomials.clone(),
                specs: Vec::new(),
                convention: gens.convention,
                stats: gens.stats,
            };
            emit(output.as_deref(), &generators_to_text(&set, sys.table.order(), &sys.config.hash))?;
            let c = sys.table.counts();
            eprintln!(
                "{}: {} free classes, {} fixed, {} weight variables; {} specs, {} nonzero, {} exact-dedup, {} sign-dedup, {} bridged",
                sys.config.system.name, c.free, c.fixed, c.weights_free, gens.stats.specs, gens.stats.nonzero, gens.stats.exact, gens.stats.sign, gens.bridged
            );
        }
        Command::Groebner { output } => {
            let sys = cli.system()?;
            let gens = pipeline::generators(&sys, cli.dedup)?;
            let cache = cli.cache()?;
            let started = std::time::Instant::now();
            let (gb, hit) = pipeline::basis(&sys, &gens, cache.as_ref(), &cli.groebner_config(), cli.stretch)?;
            emit(output.as_deref(), &gb.to_text())?;
            let where_ = match &cache {
                Some(c) => c.basis_path(gb.provenance()).display().to_string(),
                None => "not cached".into(),
            };
            eprintln!(
                "{}: {} generators, basis of {} polynomials ({}, {:.2}s) [{}]",
                sys.config.system.name,
                gens.polynomials.len(),
                gb.len(),
                if hit { "cache hit" } else { "computed" },
                started.elapsed().as_secs_f64(),
                where_
            );
        }
        Command::Nf { polynomials } => {
            let ctx = cli.context()?;
            for p in pipeline::read_polynomials(polynomials, &ctx.table)? {
                println!("{}", ctx.format(&ctx.normal_form(&p)?));
            }
        }
        Command::Invariant { spines, point } => {
            let ctx = cli.context()?;
            let mut records = cli.records(&ctx, spines)?;
            if let Some(p) = point {
                add_epsilon(&ctx, &mut records, p)?;
            }
            let ids = partition_ids(&records)?;
            match cli.format {
                Format::Text => print!("{}", render_table(&records, &ids)),
                Format::Jsonl => print!("{}", records_to_jsonl(&records, &ids)),
            }
        }
        Command::Eval { point, spines } => {
            let ctx = cli.context()?;
            let mut records = cli.records(&ctx, spines)?;
            add_epsilon(&ctx, &mut records, point)?;
            for r in &records {
                let v = r.epsilon.as_deref().unwrap_or("-");
                match cli.format {
                    Format::Text => println!("{}\t{v}", r.label),
                    Format::Jsonl => println!("{}", serde_json::json!({"label": r.label, "value": v})),
                }
            }
        }
        Command::Bound { spines } => {
            let ctx = cli.context()?;
            for r in cli.records(&ctx, spines)? {
                let b = degree_bound(&r);
                match cli.format {
                    Format::Text => println!(
                        "{}\tdeg_w {}\tdeg_6j {}\tbound {}{}",
                        r.label,
                        r.deg_w,
                        r.deg_6j,
                        b.bound,
                        if b.trivial { " (trivial)" } else { "" }
                    ),
                    Format::Jsonl => println!("{}", serde_json::json!({"label": r.label, "deg_w": r.deg_w, "deg_6j": r.deg_6j, "bound": b})),
                }
            }
        }
        Command::Radical { radical, expected } => {
            let ctx = cli.context()?;
            let cand = pipeline::read_polynomials(radical, &ctx.table)?;
            let want = match expected {
                Some(p) => Some(pipeline::read_polynomials(p, &ctx.table)?),
                None => None,
            };
            let rep = radical_suite(&ctx.generators, &cand, &ctx.basis, want.as_deref(), &cli.groebner_config())?;
            match cli.format {
                Format::Text => {
                    let contained = rep.contained.iter().filter(|&&b| b).count();
                    let members = rep.members.iter().filter(|&&b| b).count();
                    println!("ideal in candidate ideal: {contained}/{}", rep.contained.len());
                    println!("candidates in radical: {members}/{}", rep.members.len());
                    if let Some(m) = rep.normal_forms_match {
                        println!("nonzero normal forms match expected: {m}");
                    }
                    for (i, nf) in rep.normal_forms.iter().enumerate() {
                        println!("  nf[{}] = {nf}", i + 1);
                    }
                    for f in rep.failures() {
                        println!("FAIL {f}");
                    }
                }
                Format::Jsonl => println!("{}", serde_json::to_string(&rep)?),
            }
            if !rep.passes() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Partition { spines } => {
            let ctx = cli.context()?;
            let records = cli.records(&ctx, spines)?;
            let classes = compare_partition(&records)?;
            for (i, labels) in classes.iter().enumerate() {
                match cli.format {
                    Format::Text => println!("{i}\t{}", labels.join(", ")),
                    Format::Jsonl => println!("{}", serde_json::json!({"class": i, "labels": labels})),
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
