//! Evaluation in a simple algebraic extension `ℚ[t]/(μ)`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::text::format_rational;
use super::{PolyError, Polynomial, Rational, VariableRegistry};

/// `ℚ[t]/(μ)` for a monic `μ` of degree `d ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientAlgebra {
    /// Coefficients of `μ`, lowest degree first; the leading 1 is included.
    minimal: Vec<Rational>,
}

/// Residue of degree below `d`, lowest coefficient first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientElement {
    algebra: Arc<QuotientAlgebra>,
    coeffs: Vec<Rational>,
}

impl QuotientAlgebra {
    pub fn new(minimal: Vec<Rational>) -> Result<Arc<Self>, PolyError> {
        match minimal.last() {
            Some(lead) if minimal.len() >= 2 && lead.is_one() => Ok(Arc::new(QuotientAlgebra { minimal })),
            _ => Err(PolyError::BadMinimalPolynomial),
        }
    }

    /// `ℚ[t]/(t⁴ − t² − 1)`; `t²` is then a root of `ε² − ε − 1`.
    pub fn golden_quartic() -> Arc<Self> {
        let c = |v: i64| Rational::from_integer(v.into());
        QuotientAlgebra::new(vec![c(-1), c(0), c(-1), c(0), c(1)]).expect("monic")
    }

    pub fn degree(&self) -> usize {
        self.minimal.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[Rational] {
        &self.minimal
    }

    /// Reduces an arbitrary coefficient vector modulo `μ`.
    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        while coeffs.len() > d {
            let top = coeffs.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - d;
            for (i, m) in self.minimal[..d].iter().enumerate() {
                coeffs[shift + i] -= &top * m;
            }
        }
        coeffs.resize(d, Rational::zero());
        coeffs
    }
}

impl QuotientElement {
    pub fn from_coeffs(algebra: &Arc<QuotientAlgebra>, coeffs: Vec<Rational>) -> Self {
        QuotientElement {
            algebra: algebra.clone(),
            coeffs: algebra.reduce(coeffs),
        }
    }

    pub fn constant(algebra: &Arc<QuotientAlgebra>, c: Rational) -> Self {
        Self::from_coeffs(algebra, vec![c])
    }

    pub fn generator(algebra: &Arc<QuotientAlgebra>) -> Self {
        Self::from_coeffs(algebra, vec![Rational::zero(), Rational::one()])
    }

    /// Image of a univariate polynomial in variable index 0.
    pub fn from_univariate(algebra: &Arc<QuotientAlgebra>, p: &Polynomial) -> Result<Self, PolyError> {
        let mut coeffs = vec![Rational::zero(); p.total_degree() as usize + 1];
        for (m, c) in p.terms() {
            if let Some(v) = m.max_var().filter(|&v| v > 0) {
                return Err(PolyError::VariableOutOfRange { index: v, len: 1 });
            }
            coeffs[m.exponent(0) as usize] += c;
        }
        Ok(Self::from_coeffs(algebra, coeffs))
    }

    pub fn algebra(&self) -> &Arc<QuotientAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        QuotientElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        QuotientElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QuotientElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * d];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Self::from_coeffs(&self.algebra, prod)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(&self.algebra, Rational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }
}

impl fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            let coef = format_rational(&abs);
            match i {
                0 => f.write_str(&coef)?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{coef}*")?;
                    }
                    f.write_str("t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Assignment of quotient-algebra values to registry variables.
#[derive(Clone, Debug)]
pub struct QuotientPoint {
    algebra: Arc<QuotientAlgebra>,
    registry: Arc<VariableRegistry>,
    values: Vec<Option<QuotientElement>>,
}

impl QuotientPoint {
    /// Builds a point; naming a variable missing from `registry` is an error.
    pub fn new<'a, I>(algebra: &Arc<QuotientAlgebra>, registry: &Arc<VariableRegistry>, assignment: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (&'a str, QuotientElement)>,
    {
        let mut values = vec![None; registry.len()];
        for (name, value) in assignment {
            let idx = registry
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            values[idx] = Some(QuotientElement::from_coeffs(algebra, value.coeffs));
        }
        Ok(QuotientPoint {
            algebra: algebra.clone(),
            registry: registry.clone(),
            values,
        })
    }

    pub fn algebra(&self) -> &Arc<QuotientAlgebra> {
        &self.algebra
    }

    pub fn value(&self, name: &str) -> Option<&QuotientElement> {
        self.registry.index_of(name).and_then(|i| self.values[i].as_ref())
    }

    /// Image of `f` under the substitution homomorphism.
    pub fn evaluate(&self, f: &Polynomial) -> Result<QuotientElement, PolyError> {
        let mut acc = QuotientElement::constant(&self.algebra, Rational::zero());
        for (m, c) in f.terms() {
            let mut t = QuotientElement::constant(&self.algebra, c.clone());
            for &(v, e) in m.exponents() {
                let value = self.values.get(v).and_then(Option::as_ref).ok_or_else(|| {
                    PolyError::Unassigned(self.registry.name(v).map(str::to_string).unwrap_or_else(|| format!("x{v}")))
                })?;
                t = t.mul(&value.pow(e));
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::text::parse_polynomial;
    use crate::exactpoly::rat;

    fn t_poly(text: &str) -> QuotientElement {
        let reg = VariableRegistry::new(["t"]).unwrap();
        let alg = QuotientAlgebra::golden_quartic();
        QuotientElement::from_univariate(&alg, &parse_polynomial(text, &reg).unwrap()).unwrap()
    }

    #[test]
    fn epsilon_is_golden() {
        let eps = t_poly("t^2");
        let one = t_poly("1");
        assert!(eps.mul(&eps).sub(&eps).sub(&one).is_zero());
        // eps^-1 = eps - 1 and (eps^-1/2)^2 = eps^-1
        assert_eq!(eps.mul(&t_poly("t^2 - 1")), one);
        assert_eq!(t_poly("t^3 - t").pow(2), t_poly("t^2 - 1"));
    }

    #[test]
    fn evaluation_and_errors() {
        let alg = QuotientAlgebra::golden_quartic();
        let reg = Arc::new(VariableRegistry::new(["e", "u"]).unwrap());
        let point = QuotientPoint::new(&alg, &reg, [("e", t_poly("t^2"))]).unwrap();
        let f = parse_polynomial("e^2 - e - 1", &reg).unwrap();
        assert!(point.evaluate(&f).unwrap().is_zero());
        assert_eq!(point.evaluate(&Polynomial::from_int(5)).unwrap(), QuotientElement::constant(&alg, rat(5, 1)));
        let g = parse_polynomial("u", &reg).unwrap();
        assert!(matches!(point.evaluate(&g), Err(PolyError::Unassigned(_))));
        assert!(QuotientPoint::new(&alg, &reg, [("zz", t_poly("1"))]).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(t_poly("t^3 - t").to_string(), "t^3 - t");
        assert_eq!(t_poly("t^4").to_string(), "t^2 + 1");
        assert_eq!(t_poly("0").to_string(), "0");
        assert_eq!(t_poly("-1/2*t").to_string(), "-1/2*t");
    }
}
