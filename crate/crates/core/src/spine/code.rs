use std::fmt;

use super::SpineError;

/// Boundary words of the 2-strata: cyclic sequences of signed edge numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpineCode {
    curves: Vec<Vec<i32>>,
    edge_count: usize,
}

impl SpineCode {
    /// Validates curves: nonempty, no zero letters, every magnitude `1..=E`
    /// present where `E` is the largest magnitude.
    pub fn new(curves: Vec<Vec<i32>>) -> Result<Self, SpineError> {
        if curves.is_empty() {
            return Err(SpineError::EmptyCode);
        }
        for (i, c) in curves.iter().enumerate() {
            if c.is_empty() {
                return Err(SpineError::EmptyCurve { curve: i });
            }
            if let Some(pos) = c.iter().position(|&x| x == 0) {
                return Err(SpineError::ZeroEntry { curve: i, position: pos });
            }
        }
        let edge_count = curves.iter().flatten().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0);
        let mut seen = vec![false; edge_count + 1];
        for x in curves.iter().flatten() {
            seen[x.unsigned_abs() as usize] = true;
        }
        if let Some(missing) = (1..=edge_count).find(|&k| !seen[k]) {
            return Err(SpineError::MissingEdge(missing));
        }
        Ok(SpineCode { curves, edge_count })
    }

    /// Parses `((1,1,2,-3),(1,3,-4,-4,-2),(2,-4,-3))`, ignoring whitespace.
    pub fn parse(text: &str) -> Result<Self, SpineError> {
        let err = |column: usize, message: &str| SpineError::Parse {
            column,
            message: message.to_string(),
        };
        let chars: Vec<(usize, char)> = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).map(|(i, c)| (i + 1, c)).collect();
        let end = text.chars().count() + 1;
        let at = |k: usize| chars.get(k).map(|&(col, _)| col).unwrap_or(end);
        let mut k = 0;
        let expect = |k: &mut usize, want: char| -> Result<(), SpineError> {
            match chars.get(*k) {
                Some(&(_, c)) if c == want => {
                    *k += 1;
                    Ok(())
                }
                Some(&(col, c)) => Err(SpineError::Parse {
                    column: col,
                    message: format!("expected `{want}`, found `{c}`"),
                }),
                None => Err(SpineError::Unbalanced),
            }
        };
        expect(&mut k, '(')?;
        let mut curves = Vec::new();
        loop {
            expect(&mut k, '(')?;
            let mut curve = Vec::new();
            loop {
                let start = k;
                if matches!(chars.get(k), Some((_, '-')) | Some((_, '+'))) {
                    k += 1;
                }
                while matches!(chars.get(k), Some((_, c)) if c.is_ascii_digit()) {
                    k += 1;
                }
                if k == start || (k == start + 1 && !chars[start].1.is_ascii_digit()) {
                    return match chars.get(k) {
                        None => Err(SpineError::Unbalanced),
                        Some(_) if k == start && chars[k].1 == ')' && curve.is_empty() => {
                            Err(SpineError::EmptyCurve { curve: curves.len() })
                        }
                        Some(_) => Err(err(at(k), "expected integer")),
                    };
                }
                let s: String = chars[start..k].iter().map(|&(_, c)| c).collect();
                let v: i32 = s.parse().map_err(|_| err(at(start), "integer out of range"))?;
                curve.push(v);
                match chars.get(k) {
                    Some((_, ',')) => k += 1,
                    Some((_, ')')) => {
                        k += 1;
                        break;
                    }
                    Some(&(col, c)) => return Err(err(col, &format!("unexpected `{c}`"))),
                    None => return Err(SpineError::Unbalanced),
                }
            }
            curves.push(curve);
            match chars.get(k) {
                Some((_, ',')) => k += 1,
                Some((_, ')')) => {
                    k += 1;
                    break;
                }
                Some(&(col, c)) => return Err(err(col, &format!("unexpected `{c}`"))),
                None => return Err(SpineError::Unbalanced),
            }
        }
        if let Some(&(col, c)) = chars.get(k) {
            return Err(if c == ')' {
                SpineError::Unbalanced
            } else {
                err(col, &format!("trailing `{c}`"))
            });
        }
        SpineCode::new(curves)
    }

    pub fn curves(&self) -> &[Vec<i32>] {
        &self.curves
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn letter_count(&self) -> usize {
        self.curves.iter().map(Vec::len).sum()
    }

    /// The same code with curve `i` rotated left by `k` letters.
    pub fn rotated(&self, i: usize, k: usize) -> SpineCode {
        let mut curves = self.curves.clone();
        let len = curves[i].len();
        curves[i].rotate_left(k % len);
        SpineCode {
            curves,
            edge_count: self.edge_count,
        }
    }

    /// The same code with edge `e` renamed to `perm[e - 1]`.
    pub fn renumbered(&self, perm: &[usize]) -> SpineCode {
        let curves = self
            .curves
            .iter()
            .map(|c| c.iter().map(|&x| x.signum() * perm[x.unsigned_abs() as usize - 1] as i32).collect())
            .collect();
        SpineCode {
            curves,
            edge_count: self.edge_count,
        }
    }
}

impl fmt::Display for SpineCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.curves.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let letters: Vec<String> = c.iter().map(i32::to_string).collect();
            write!(f, "({})", letters.join(","))?;
        }
        f.write_str(")")
    }
}
