use std::fmt;

/// Sparse power product: `(variable index, exponent)` pairs sorted by index,
/// exponents strictly positive.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(idx: usize) -> Self {
        Monomial {
            exps: vec![(idx, 1)],
        }
    }

    /// Builds a monomial from arbitrary `(index, exponent)` pairs, merging
    /// repeats and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut exps: Vec<(usize, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        exps.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { exps: merged }
    }

    /// Monomial from a dense exponent vector.
    pub fn from_dense(dense: &[u32]) -> Self {
        Monomial {
            exps: dense
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (v, e))
                .collect(),
        }
    }

    pub fn to_dense(&self, nvars: usize) -> Vec<u32> {
        let mut dense = vec![0; nvars];
        for &(v, e) in &self.exps {
            dense[v] = e;
        }
        dense
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps
            .binary_search_by_key(&var, |&(v, _)| v)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.exps
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect(),
        }
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial::from_pairs(
            other.exps.iter().map(|&(v, e)| (v, e - self.exponent(v))),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(
            self.exps
                .iter()
                .map(|&(v, e)| (v, e.max(other.exponent(v))))
                .chain(other.exps.iter().filter(|&&(v, _)| self.exponent(v) == 0).copied()),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, _)| other.exponent(v) == 0)
    }

    /// Sum of exponents over the selected variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        self.exps
            .iter()
            .filter(|(v, _)| vars.contains(v))
            .map(|&(_, e)| e)
            .sum()
    }

    /// Re-indexes variables; `map[i]` is the new index of variable `i`.
    pub fn reindex(&self, map: &[usize]) -> Monomial {
        Monomial::from_pairs(self.exps.iter().map(|&(v, e)| (map[v], e)))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|&(v, e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_on_exponents() {
        let a = Monomial::from_pairs([(0, 2), (2, 1)]);
        let b = Monomial::from_pairs([(0, 1), (1, 3)]);
        assert_eq!(a.mul(&b), Monomial::from_pairs([(0, 3), (1, 3), (2, 1)]));
        assert_eq!(a.lcm(&b), Monomial::from_pairs([(0, 2), (1, 3), (2, 1)]));
        assert!(Monomial::var(0).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(Monomial::var(0).quotient_of(&a), Some(Monomial::from_pairs([(0, 1), (2, 1)])));
        assert_eq!(a.degree(), 3);
        assert!(Monomial::var(1).is_coprime(&a));
    }

    #[test]
    fn zero_exponents_are_dropped() {
        let m = Monomial::from_pairs([(3, 0), (1, 2), (1, 1)]);
        assert_eq!(m.exponents(), &[(1, 3)]);
        assert_eq!(Monomial::from_dense(&[0, 3, 0]), m);
    }
}
