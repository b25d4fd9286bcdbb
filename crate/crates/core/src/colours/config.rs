//! Sectioned key-value system files.
//!
//! ```text
//! [colours]
//! name = tv21s
//! strata = 1, 2
//! involution = trivial
//! edges = 1
//!
//! [assumptions]
//! fix w(1) = 1
//! fix j(1,1,1,1,1,1) = 1
//! zero_rule colour = 1
//! edge_symmetry = none
//!
//! [order]
//! kind = degrevlex
//! variables = j(2,1,2,2,1,2), w(2)
//! ```
//!
//! An optional `[augment]` section names the bridge `variable`, the
//! `base_config` of the single-edge-colour system and its `base_polynomials`
//! file; paths are relative to the config file.

use std::fmt;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::table::parse_tuple;
use super::{AssumptionSet, ColourError, ColourSystem, EdgeSymmetry, FixedSymbol, InvolutionKind};
use crate::exactpoly::{is_identifier, OrderKind, Rational};

/// One entry of the variable priority list, still as tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarRef {
    Symbol { strata: [String; 6], edges: Option<[String; 4]> },
    Weight(String),
    Named(String),
}

impl VarRef {
    /// Accepts `j(…)` or `jj(…)` with six strata tokens and optionally `;`
    /// and four edge tokens, `w(c)`, or a bare identifier.
    pub fn parse(text: &str) -> Result<VarRef, String> {
        let text = text.trim();
        let Some(open) = text.find('(') else {
            if is_identifier(text) {
                return Ok(VarRef::Named(text.to_string()));
            }
            return Err(format!("bad variable `{text}`"));
        };
        let head = &text[..open];
        let body = text[open + 1..].strip_suffix(')').ok_or_else(|| format!("missing `)` in `{text}`"))?;
        match head {
            "w" => Ok(VarRef::Weight(body.trim().to_string())),
            "j" | "jj" => {
                let (s, e) = match body.split_once(';') {
                    Some((s, e)) => (s, Some(e)),
                    None => (body, None),
                };
                let strata = tokens::<6>(s).ok_or_else(|| format!("`{text}` needs six strata colours"))?;
                let edges = match e {
                    Some(e) => Some(tokens::<4>(e).ok_or_else(|| format!("`{text}` needs four edge colours"))?),
                    None => None,
                };
                Ok(VarRef::Symbol { strata, edges })
            }
            _ => Err(format!("bad variable `{text}`")),
        }
    }
}

fn tokens<const N: usize>(s: &str) -> Option<[String; N]> {
    let v: Vec<String> = s.split(',').map(|t| t.trim().to_string()).collect();
    v.try_into().ok()
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarRef::Symbol { strata, edges } => {
                write!(f, "j({}", strata.join(","))?;
                if let Some(e) = edges {
                    write!(f, ";{}", e.join(","))?;
                }
                f.write_str(")")
            }
            VarRef::Weight(c) => write!(f, "w({c})"),
            VarRef::Named(n) => f.write_str(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSpec {
    pub kind: OrderKind,
    pub variables: Vec<VarRef>,
}

impl Default for OrderSpec {
    fn default() -> Self {
        OrderSpec {
            kind: OrderKind::DegRevLex,
            variables: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentSpec {
    pub variable: String,
    pub base_config: PathBuf,
    pub base_polynomials: PathBuf,
}

#[derive(Clone, Debug)]
pub struct SystemConfig {
    pub path: PathBuf,
    pub system: ColourSystem,
    pub assumptions: AssumptionSet,
    pub order: OrderSpec,
    pub augment: Option<AugmentSpec>,
    /// sha256 of the file text.
    pub hash: String,
}

pub fn load_system(path: &Path) -> Result<SystemConfig, ColourError> {
    let text = std::fs::read_to_string(path).map_err(|source| ColourError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_system(&text, path)
}

#[derive(Default)]
struct Raw {
    name: Option<String>,
    strata: Option<(usize, Vec<String>)>,
    involution: InvolutionKind,
    edges: usize,
    fixes: Vec<(usize, String, String)>,
    zero_rules: Vec<(usize, String)>,
    edge_symmetry: EdgeSymmetry,
    kind: OrderKind,
    variables: Vec<(usize, String)>,
    augment_variable: Option<String>,
    base_config: Option<String>,
    base_polynomials: Option<String>,
}

pub fn parse_system(text: &str, path: &Path) -> Result<SystemConfig, ColourError> {
    let err = |line: usize, message: String| ColourError::Config {
        path: path.display().to_string(),
        line,
        message,
    };
    let mut raw = Raw {
        edges: 1,
        ..Default::default()
    };
    let mut section = String::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            section = name.trim().to_string();
            if !matches!(section.as_str(), "colours" | "assumptions" | "order" | "augment") {
                return Err(err(ln, format!("unknown section [{section}]")));
            }
            continue;
        }
        if section == "assumptions" {
            if let Some(rest) = line.strip_prefix("fix ") {
                let (lhs, rhs) = rest.rsplit_once('=').ok_or_else(|| err(ln, "expected `fix <symbol> = <value>`".into()))?;
                raw.fixes.push((ln, lhs.trim().to_string(), rhs.trim().to_string()));
                continue;
            }
        }
        let (key, value) = line.split_once('=').ok_or_else(|| err(ln, format!("expected `key = value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        match (section.as_str(), key) {
            ("colours", "name") => raw.name = Some(value.to_string()),
            ("colours", "strata") => raw.strata = Some((ln, value.split(',').map(|t| t.trim().to_string()).collect())),
            ("colours", "involution") => {
                raw.involution = match value {
                    "trivial" => InvolutionKind::Trivial,
                    "negation" => InvolutionKind::Negation,
                    v => return Err(err(ln, format!("unknown involution `{v}`"))),
                }
            }
            ("colours", "edges") => raw.edges = value.parse().map_err(|_| err(ln, format!("bad edge count `{value}`")))?,
            ("assumptions", "zero_rule colour") | ("assumptions", "zero_rule") => raw.zero_rules.push((ln, value.to_string())),
            ("assumptions", "edge_symmetry") => raw.edge_symmetry = value.parse().map_err(|e| err(ln, e))?,
            ("assumptions", "augment") | ("augment", "variable") => raw.augment_variable = Some(value.to_string()),
            ("augment", "base_config") => raw.base_config = Some(value.to_string()),
            ("augment", "base_polynomials") => raw.base_polynomials = Some(value.to_string()),
            ("order", "kind") => raw.kind = value.parse().map_err(|e: crate::exactpoly::PolyError| err(ln, e.to_string()))?,
            ("order", "variables") => {
                for v in split_top_level(value) {
                    raw.variables.push((ln, v));
                }
            }
            ("", _) => return Err(err(ln, "key outside any section".into())),
            (s, k) => return Err(err(ln, format!("unknown key `{k}` in [{s}]"))),
        }
    }

    let (sline, strata) = raw.strata.ok_or_else(|| err(0, "[colours] strata missing".into()))?;
    let name = raw
        .name
        .unwrap_or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
    let system = ColourSystem::new(&name, strata, raw.involution, raw.edges).map_err(|e| err(sline, e.to_string()))?;

    let mut asm = AssumptionSet {
        edge_symmetry: raw.edge_symmetry,
        bridge_variable: raw.augment_variable.clone(),
        ..Default::default()
    };
    for (ln, lhs, rhs) in &raw.fixes {
        let value: Rational = rhs.parse().map_err(|_| err(*ln, format!("bad rational `{rhs}`")))?;
        match VarRef::parse(lhs).map_err(|e| err(*ln, e))? {
            VarRef::Weight(tok) => {
                let c = system.strata_index(&tok).map_err(|e| err(*ln, e.to_string()))?;
                asm.fixed_weights.push((c, value));
            }
            VarRef::Symbol { strata, edges } => {
                let any_edges: [String; 4] = std::array::from_fn(|_| system.edge_tokens()[0].clone());
                let t = parse_tuple(&system, &strata, Some(&any_edges)).map_err(|e| err(*ln, e.to_string()))?;
                let mut pattern = [None; 4];
                if let Some(e) = edges {
                    for k in 0..4 {
                        if e[k] != "*" {
                            pattern[k] = Some(system.edge_index(&e[k]).map_err(|e| err(*ln, e.to_string()))?);
                        }
                    }
                }
                asm.fixed_symbols.push(FixedSymbol {
                    strata: t.strata,
                    edges: pattern,
                    value,
                });
            }
            VarRef::Named(n) => return Err(err(*ln, format!("cannot fix `{n}`"))),
        }
    }
    for (ln, tok) in &raw.zero_rules {
        asm.zero_rules.push(system.strata_index(tok).map_err(|e| err(*ln, e.to_string()))?);
    }
    asm.validate(&system).map_err(|e| err(0, e.to_string()))?;

    let mut order = OrderSpec {
        kind: raw.kind,
        variables: Vec::new(),
    };
    for (ln, v) in &raw.variables {
        order.variables.push(VarRef::parse(v).map_err(|e| err(*ln, e))?);
    }

    let base = path.parent().unwrap_or(Path::new("."));
    let augment = match (raw.augment_variable, raw.base_config, raw.base_polynomials) {
        (_, None, None) => None,
        (Some(variable), Some(c), Some(p)) => Some(AugmentSpec {
            variable,
            base_config: base.join(c),
            base_polynomials: base.join(p),
        }),
        _ => return Err(err(0, "augmentation needs variable, base_config and base_polynomials".into())),
    };

    Ok(SystemConfig {
        path: path.to_path_buf(),
        system,
        assumptions: asm,
        order,
        augment,
        hash: hex::encode(Sha256::digest(text.as_bytes())),
    })
}

/// Splits on commas outside parentheses.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}
