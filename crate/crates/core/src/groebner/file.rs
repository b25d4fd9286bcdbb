//! Basis file format.
//!
//! ```text
//! #order degrevlex
//! #vars j112122,j212212,j212222,j222222,w2
//! #source <sha256 of generators>
//! #reduced true
//! #digest <sha256 of the polynomial lines>
//! w2*j212222^2 - j212222^2 + j222222*j212222
//! ```

use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};

use super::{GroebnerBasis, GroebnerError};
use crate::exactpoly::text::{format_polynomial, parse_polynomial};
use crate::exactpoly::{MonomialOrder, OrderKind, VariableRegistry};

fn digest(lines: &[String]) -> String {
    let mut h = Sha256::new();
    for l in lines {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

impl GroebnerBasis {
    pub fn to_text(&self) -> String {
        let lines: Vec<String> = self.polynomials.iter().map(|p| format_polynomial(p, &self.order)).collect();
        let mut out = format!(
            "#order {}\n#vars {}\n#source {}\n#reduced {}\n#digest {}\n",
            self.order.kind(),
            self.order.registry().serialize(),
            self.provenance,
            self.reduced,
            digest(&lines)
        );
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }

    /// Loads a basis file. A reduced basis is trusted as verified; the
    /// optional digest line guards against corruption.
    pub fn from_text(text: &str) -> Result<GroebnerBasis, GroebnerError> {
        let mut kind: Option<OrderKind> = None;
        let mut vars: Option<VariableRegistry> = None;
        let mut source = String::new();
        let mut reduced = false;
        let mut expected_digest: Option<String> = None;
        let mut body: Vec<(usize, &str)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let Some(header) = line.strip_prefix('#') else {
                body.push((lineno, line));
                continue;
            };
            let (key, value) = header.split_once(char::is_whitespace).unwrap_or((header, ""));
            let value = value.trim();
            let bad = |message: String| GroebnerError::File { line: lineno, message };
            match key {
                "order" => kind = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
                "vars" => vars = Some(VariableRegistry::parse(value).map_err(|e| bad(format!("{e}")))?),
                "source" => source = value.to_string(),
                "reduced" => {
                    reduced = match value {
                        "true" => true,
                        "false" => false,
                        other => return Err(bad(format!("bad #reduced value `{other}`"))),
                    }
                }
                "digest" => expected_digest = Some(value.to_string()),
                _ => {}
            }
        }
        let kind = kind.ok_or(GroebnerError::File {
            line: 0,
            message: "missing #order header".into(),
        })?;
        let vars = vars.ok_or(GroebnerError::File {
            line: 0,
            message: "missing #vars header".into(),
        })?;
        let order = MonomialOrder::new(kind, Arc::new(vars));
        let mut polynomials = Vec::with_capacity(body.len());
        for (lineno, line) in &body {
            let p = parse_polynomial(line, order.registry()).map_err(|e| GroebnerError::File {
                line: *lineno,
                message: e.to_string(),
            })?;
            polynomials.push(p);
        }
        if let Some(expected) = expected_digest {
            let actual = digest(&polynomials.iter().map(|p| format_polynomial(p, &order)).collect::<Vec<_>>());
            if actual != expected {
                return Err(GroebnerError::DigestMismatch { expected, actual });
            }
        }
        Ok(GroebnerBasis {
            polynomials,
            order,
            reduced,
            verified: reduced,
            provenance: source,
            engine: OnceLock::new(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{buchberger, GroebnerConfig};
    use super::*;

    #[test]
    fn round_trip_and_tamper_detection() {
        let ord = MonomialOrder::degrevlex(VariableRegistry::new(["x", "y", "z"]).unwrap());
        let gens: Vec<_> = ["x*y - z", "y^2 - 1/3*x"]
            .iter()
            .map(|t| parse_polynomial(t, ord.registry()).unwrap())
            .collect();
        let gb = buchberger(&gens, &ord, &GroebnerConfig::default()).unwrap();
        let text = gb.to_text();
        let back = GroebnerBasis::from_text(&text).unwrap();
        assert_eq!(back, gb);
        assert_eq!(back.to_text(), text);
        let last = text.lines().last().unwrap().to_string();
        let tampered = text.replace(&last, "x + 1");
        assert!(matches!(GroebnerBasis::from_text(&tampered), Err(GroebnerError::DigestMismatch { .. })));
    }
}
