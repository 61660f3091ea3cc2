use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{parse_rational, Rational};
use crate::calculus::Vector;

/// Monomial in the oscillator variables, as the multiset of its indices
/// sorted ascending: `x₁²x₃` is `[1, 1, 3]`. The empty monomial is the vacuum.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut indices: Vec<u32>) -> Self {
        assert!(indices.iter().all(|&i| i >= 1), "oscillator indices start at 1");
        indices.sort_unstable();
        Monomial(indices)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&i| i as usize).sum()
    }

    /// Largest index and the remaining monomial.
    pub fn split_last(&self) -> Option<(u32, Monomial)> {
        let (&last, rest) = self.0.split_last()?;
        Some((last, Monomial(rest.to_vec())))
    }

    pub fn times(&self, index: u32) -> Monomial {
        let pos = self.0.partition_point(|&i| i <= index);
        let mut v = self.0.clone();
        v.insert(pos, index);
        Monomial(v)
    }

    /// `∂/∂x_index` as (multiplicity, reduced monomial).
    pub fn derivative(&self, index: u32) -> Option<(u32, Monomial)> {
        let count = self.0.iter().filter(|&&i| i == index).count() as u32;
        if count == 0 {
            return None;
        }
        let pos = self.0.iter().position(|&i| i == index).expect("present");
        let mut v = self.0.clone();
        v.remove(pos);
        Some((count, Monomial(v)))
    }

    /// Distinct indices with their exponents.
    pub fn powers(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &i in &self.0 {
            match out.last_mut() {
                Some((j, e)) if *j == i => *e += 1,
                _ => out.push((i, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .powers()
            .into_iter()
            .map(|(i, e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// All monomials of weight exactly `w`, i.e. the partitions of `w`, in a
/// fixed order.
pub fn basis_of_weight(w: usize) -> Vec<Monomial> {
    fn go(rest: usize, max: usize, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if rest == 0 {
            out.push(Monomial::new(acc.clone()));
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            acc.push(part as u32);
            go(rest - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(w, w, &mut Vec::new(), &mut out);
    out
}

/// Monomials of weight `0..=max_weight`, ordered by weight.
pub fn basis_up_to(max_weight: usize) -> Vec<Monomial> {
    (0..=max_weight).flat_map(basis_of_weight).collect()
}

/// Element of the Fock space `ℚ[x₁, x₂, …]`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FockState {
    terms: BTreeMap<Monomial, Rational>,
}

impl FockState {
    pub fn zero() -> Self {
        FockState::default()
    }

    pub fn vacuum() -> Self {
        FockState::monomial(Monomial::vacuum())
    }

    pub fn monomial(m: Monomial) -> Self {
        FockState::term(m, Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut s = FockState::zero();
        s.add_term(m, c);
        s
    }

    /// The single variable `x_n`.
    pub fn var(n: u32) -> Self {
        FockState::monomial(Monomial::new(vec![n]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FockState, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> FockState {
        let mut out = FockState::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn plus(&self, other: &FockState) -> FockState {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn minus(&self, other: &FockState) -> FockState {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    /// Least and greatest weight of the monomials present.
    pub fn weight_range(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(Monomial::weight);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), w| (lo.min(w), hi.max(w))))
    }

    pub fn max_weight(&self) -> usize {
        self.weight_range().map_or(0, |r| r.1)
    }

    /// Weight of a nonzero homogeneous state.
    pub fn homogeneous_weight(&self) -> Option<usize> {
        match self.weight_range() {
            Some((lo, hi)) if lo == hi => Some(lo),
            _ => None,
        }
    }

    /// Components of weight at most `w`.
    pub fn truncate(&self, w: usize) -> FockState {
        FockState {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() <= w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn component(&self, w: usize) -> FockState {
        FockState {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Parses sums of monomial terms such as `2*x1*x2 - 1/2*x3^2 + 1`.
    pub fn parse(src: &str) -> Result<FockState, String> {
        let cleaned: String = src.replace('−', "-").split_whitespace().collect();
        if cleaned.is_empty() {
            return Err("empty state".into());
        }
        let mut out = FockState::zero();
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(i > 0 && cleaned[..i].ends_with('^')) {
                if !current.is_empty() {
                    chunks.push((negative, std::mem::take(&mut current)));
                } else if i > 0 {
                    return Err(format!("misplaced `{ch}` in `{src}`"));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(format!("dangling sign in `{src}`"));
        }
        chunks.push((negative, current));
        for (negative, chunk) in chunks {
            let mut coeff = Rational::one();
            let mut indices = Vec::new();
            for factor in chunk.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((a, b)) => (a, b),
                        None => (rest, "1"),
                    };
                    let idx: u32 = idx
                        .parse()
                        .ok()
                        .filter(|&i| i >= 1)
                        .ok_or_else(|| format!("bad variable `{factor}`"))?;
                    let exp: u32 = exp.parse().map_err(|_| format!("bad exponent in `{factor}`"))?;
                    indices.extend(std::iter::repeat(idx).take(exp as usize));
                } else {
                    let r = parse_rational(factor).ok_or_else(|| format!("bad factor `{factor}`"))?;
                    coeff *= r;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Monomial::new(indices), coeff);
        }
        Ok(out)
    }
}

impl Vector for FockState {
    fn zero() -> Self {
        FockState::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        FockState::add_scaled(self, other, c)
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest weight first reads more naturally
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.weight().cmp(&a.0.weight()).then(a.0.cmp(b.0)));
        for (k, (m, c)) in items.into_iter().enumerate() {
            let negative = *c < Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if m.is_vacuum() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Translation `T = Σ_k k·x_{k+1}·∂/∂x_k`.
pub fn translation(c: &FockState) -> FockState {
    let mut out = FockState::zero();
    for (m, coeff) in c.terms() {
        for (i, _) in m.powers() {
            let (mult, rest) = m.derivative(i).expect("present");
            out.add_term(rest.times(i + 1), coeff * Rational::from_integer((mult * i).into()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn partitions() {
        let counts: Vec<usize> = (0..=10).map(|w| basis_of_weight(w).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert!(basis_of_weight(5).iter().all(|m| m.weight() == 5));
        assert_eq!(basis_up_to(3).len(), 7);
    }

    #[test]
    fn parse_and_display() {
        let s = FockState::parse("2*x1*x2 - 1/2*x3^2 + 1").unwrap();
        assert_eq!(s.coeff(&Monomial::new(vec![1, 2])), int(2));
        assert_eq!(s.coeff(&Monomial::new(vec![3, 3])), rat(-1, 2));
        assert_eq!(s.coeff(&Monomial::vacuum()), int(1));
        assert_eq!(s.to_string(), "-1/2*x3^2 + 2*x1*x2 + 1");
        assert_eq!(FockState::parse(&s.to_string()).unwrap(), s);
        assert_eq!(FockState::parse("x1 - x1").unwrap(), FockState::zero());
        assert!(FockState::parse("x0").is_err());
        assert!(FockState::parse("y1").is_err());
        assert!(FockState::parse("x1 +").is_err());
    }

    #[test]
    fn translation_examples() {
        assert!(translation(&FockState::vacuum()).is_zero());
        assert_eq!(translation(&FockState::var(1)), FockState::var(2));
        assert_eq!(
            translation(&FockState::parse("x1^2").unwrap()),
            FockState::parse("2*x1*x2").unwrap()
        );
        assert_eq!(translation(&FockState::var(2)), FockState::parse("2*x3").unwrap());
    }

    #[test]
    fn monomial_helpers() {
        let m = Monomial::new(vec![3, 1, 1]);
        assert_eq!(m.weight(), 5);
        assert_eq!(m.split_last(), Some((3, Monomial::new(vec![1, 1]))));
        assert_eq!(m.derivative(1), Some((2, Monomial::new(vec![1, 3]))));
        assert_eq!(m.derivative(2), None);
        assert_eq!(m.times(2), Monomial::new(vec![1, 1, 2, 3]));
    }
}
