use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{Monomial, PolyError, VariableRegistry};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    #[default]
    DegRevLex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lex => "lex",
            OrderKind::DegRevLex => "degrevlex",
        })
    }
}

impl FromStr for OrderKind {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "lex" => Ok(OrderKind::Lex),
            "degrevlex" | "dp" | "grevlex" => Ok(OrderKind::DegRevLex),
            other => Err(PolyError::UnknownOrder(other.to_string())),
        }
    }
}

/// Admissible monomial order over a registry; registry position 0 is the
/// largest variable.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    registry: Arc<VariableRegistry>,
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.kind, self.registry)
    }
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, registry: Arc<VariableRegistry>) -> Self {
        MonomialOrder { kind, registry }
    }

    pub fn degrevlex(registry: VariableRegistry) -> Self {
        Self::new(OrderKind::DegRevLex, Arc::new(registry))
    }

    pub fn lex(registry: VariableRegistry) -> Self {
        Self::new(OrderKind::Lex, Arc::new(registry))
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn registry(&self) -> &Arc<VariableRegistry> {
        &self.registry
    }

    pub fn nvars(&self) -> usize {
        self.registry.len()
    }

    /// Same kind over a registry extended by one fresh lowest variable.
    pub fn extended(&self, name: &str) -> Result<Self, PolyError> {
        Ok(Self::new(self.kind, Arc::new(self.registry.extended(name)?)))
    }

    pub fn check(&self, m: &Monomial) -> Result<(), PolyError> {
        match m.max_var() {
            Some(v) if v >= self.registry.len() => Err(PolyError::VariableOutOfRange {
                index: v,
                len: self.registry.len(),
            }),
            _ => Ok(()),
        }
    }

    /// Checked comparison.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.cmp(a, b))
    }

    /// Comparison without range checks.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => cmp_lex(a, b),
            OrderKind::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| cmp_revlex_tail(a, b)),
        }
    }
}

fn cmp_lex(a: &Monomial, b: &Monomial) -> Ordering {
    let (ea, eb) = (a.exponents(), b.exponents());
    let (mut i, mut j) = (0, 0);
    loop {
        match (ea.get(i), eb.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(va, xa)), Some(&(vb, xb))) => {
                if va < vb {
                    return Ordering::Greater;
                }
                if vb < va {
                    return Ordering::Less;
                }
                if xa != xb {
                    return xa.cmp(&xb);
                }
                i += 1;
                j += 1;
            }
        }
    }
}

/// Reverse-lexicographic tie-break: the last variable where the exponents
/// differ decides, the smaller exponent wins.
fn cmp_revlex_tail(a: &Monomial, b: &Monomial) -> Ordering {
    let (ea, eb) = (a.exponents(), b.exponents());
    let (mut i, mut j) = (ea.len(), eb.len());
    loop {
        match (i.checked_sub(1).map(|k| ea[k]), j.checked_sub(1).map(|k| eb[k])) {
            (None, None) => return Ordering::Equal,
            // a has a later variable with positive exponent
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
            (Some((va, xa)), Some((vb, xb))) => {
                if va > vb {
                    return Ordering::Less;
                }
                if vb > va {
                    return Ordering::Greater;
                }
                if xa != xb {
                    return xb.cmp(&xa);
                }
                i -= 1;
                j -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> VariableRegistry {
        VariableRegistry::new(["x", "y"]).unwrap()
    }

    fn m(pairs: &[(usize, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn degrevlex_tie_break() {
        let ord = MonomialOrder::degrevlex(xy());
        // x^2 y vs x y^2
        assert_eq!(ord.compare(&m(&[(0, 2), (1, 1)]), &m(&[(0, 1), (1, 2)])).unwrap(), Ordering::Greater);
        // x y z vs x^2 z: smaller exponent in the last differing variable wins
        let ord3 = MonomialOrder::degrevlex(VariableRegistry::new(["x", "y", "z"]).unwrap());
        assert_eq!(ord3.cmp(&m(&[(0, 2), (2, 1)]), &m(&[(0, 1), (1, 1), (2, 1)])), Ordering::Greater);
        assert_eq!(ord3.cmp(&m(&[(1, 2)]), &m(&[(0, 1), (2, 1)])), Ordering::Greater);
    }

    #[test]
    fn lex_ignores_degree() {
        let ord = MonomialOrder::lex(xy());
        assert_eq!(ord.compare(&m(&[(0, 1)]), &m(&[(1, 2)])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn reflexive_and_range_checked() {
        let ord = MonomialOrder::degrevlex(xy());
        let a = m(&[(0, 1), (1, 4)]);
        assert_eq!(ord.compare(&a, &a).unwrap(), Ordering::Equal);
        assert!(matches!(
            ord.compare(&m(&[(2, 1)]), &a),
            Err(PolyError::VariableOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn order_kind_parses() {
        assert_eq!("degrevlex".parse::<OrderKind>().unwrap(), OrderKind::DegRevLex);
        assert_eq!("lex".parse::<OrderKind>().unwrap(), OrderKind::Lex);
        assert!("deglex".parse::<OrderKind>().is_err());
    }
}
