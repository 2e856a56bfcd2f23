//! Polynomials: finite maps from monomials to exact rational coefficients.
//! Rendering order is the monomial order, largest term first.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::monomial::Monomial;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merges a term in, dropping the monomial when the coefficient cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }

    pub fn scale(&mut self, by: &BigRational) {
        if by.is_zero() {
            self.terms.clear();
            return;
        }
        for c in self.terms.values_mut() {
            *c *= by;
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The largest monomial present.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Specializes every `x_{ij}` to 1: the coefficient of `beta^m` in the
    /// result, indexed by `m`.
    pub fn specialize_x_to_one(&self) -> Vec<BigRational> {
        let top = self.terms.keys().map(|m| m.beta_exp()).max().unwrap_or(0);
        let mut out = vec![BigRational::zero(); top as usize + 1];
        for (m, c) in &self.terms {
            out[m.beta_exp() as usize] += c;
        }
        out
    }

    /// Renders `b^k x14 x13 ...` terms joined by `+`/`-`, largest first.
    /// Vertices of two or more digits are braced: `x{10,12}`.
    pub fn render_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push_str("- ");
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut pieces: Vec<String> = Vec::new();
            if !abs.is_one() || (m.beta_exp() == 0 && m.word().is_empty()) {
                pieces.push(abs.to_string());
            }
            if m.beta_exp() == 1 {
                pieces.push("b".to_string());
            } else if m.beta_exp() > 1 {
                pieces.push(format!("b^{}", m.beta_exp()));
            }
            for e in m.word() {
                if e.i() < 10 && e.j() < 10 {
                    pieces.push(format!("x{}{}", e.i(), e.j()));
                } else {
                    pieces.push(format!("x{{{},{}}}", e.i(), e.j()));
                }
            }
            out.push_str(&pieces.join(" "));
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

/// Exact integer binomial coefficient with the polynomial-friendly convention
/// `C(n, k) = 0` for `k < 0`.
pub fn binomial_int(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for m in 0..k {
        num *= BigInt::from(n - m);
        den *= BigInt::from(m + 1);
    }
    num / den
}
