use crate::exactpoly::{MonomialOrder, Polynomial};

/// Multivariate division of `f` by `basis` in sequence order.
///
/// Returns `(remainder, quotients)` with `f = Σ qᵢ·gᵢ + remainder`; no
/// remainder monomial is divisible by a leading monomial of the basis. At
/// each step the first basis element whose leading monomial divides the
/// current leading term is used. Zero basis entries get a zero quotient.
pub fn reduce(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> (Polynomial, Vec<Polynomial>) {
    let leads: Vec<_> = basis.iter().map(|g| g.leading_term(order).ok()).collect();
    let mut quotients = vec![Polynomial::zero(); basis.len()];
    let mut remainder = Polynomial::zero();
    let mut p = f.clone();
    while let Ok((m, c)) = p.leading_term(order) {
        let hit = leads.iter().enumerate().find_map(|(i, lt)| {
            let (lm, lc) = lt.as_ref()?;
            lm.quotient_of(&m).map(|t| (i, t, &c / lc))
        });
        match hit {
            Some((i, t, q)) => {
                p -= &basis[i].mul_term(&t, &q);
                quotients[i].add_term(t, q);
            }
            None => {
                p.add_term(m.clone(), -c.clone());
                remainder.add_term(m, c);
            }
        }
    }
    (remainder, quotients)
}
