//! The differential polynomial ring `ℂ[L_{-2}, L_{-3}, …]` with
//! `∂L_{-n} = (n − 1) L_{-n-1}`, graded by `deg L_{-n} = n` and ordered by
//! grevlex. Ideal slices, Hilbert series of quotients, and the explicit
//! elements whose leading monomials realise the forbidden patterns.

mod elements;
mod json;
mod slice;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::rational::{self, frac, int, Rational};

pub use elements::{
    build_element, closure_covers, element_expr, element_weight, groebner_check, element_check,
    three_five_gap_check, verify_derivative_formulas, ElementBuilder, ElementName, Gen, IdealExpr,
    ElementCheckOptions,
};
pub use json::DiffPolyJson;
pub use slice::{hilbert_quotient, hilbert_quotient_with, ideal_slice, membership, GradedIdealSlice, MonomialIndex};

/// A polynomial in the `L_{-n}`, keyed by partitions (monomials).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffPoly {
    terms: BTreeMap<Partition, Rational>,
}

fn part(parts: &[i64]) -> Partition {
    Partition::new(parts.to_vec()).expect("parts are at least 2")
}

/// `∂^{(i)} L_{-m} = C(m − 2 + i, i) · L_{-m-i}`.
fn divided_generator_coeff(m: i64, i: i64) -> Rational {
    let mut c = Rational::one();
    for j in 1..=i {
        c = c * int(m - 2 + j) / int(j);
    }
    c
}

impl DiffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Partition::empty())
    }

    pub fn monomial(lam: Partition) -> Self {
        Self::term(lam, Rational::one())
    }

    pub fn term(lam: Partition, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(lam, c);
        }
        DiffPoly { terms }
    }

    /// `L_{-λ1}···L_{-λm}` from a part list in any order.
    pub fn l(parts: &[i64]) -> Self {
        Self::monomial(part(parts))
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, Rational)>>(terms: I) -> Self {
        let mut out = DiffPoly::zero();
        for (lam, c) in terms {
            out.add_term(lam, &c);
        }
        out
    }

    pub fn add_term(&mut self, lam: Partition, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lam) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms in increasing grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lam: &Partition) -> Rational {
        self.terms.get(lam).cloned().unwrap_or_else(Rational::zero)
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

    /// The common weight of all terms, if there is one.
    pub fn weight(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Partition::weight);
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight().is_some()
    }

    pub fn add(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (lam, c) in &other.terms {
            out.add_term(lam.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> DiffPoly {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &DiffPoly) -> DiffPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Multiply by the monomial `L_μ`.
    pub fn mul_monomial(&self, mu: &Partition) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(k, v)| (k.union(mu), v.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.add_term(k1.union(k2), &(c1 * c2));
            }
        }
        out
    }

    /// Leibniz extension of `∂L_{-n} = (n − 1) L_{-n-1}`.
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (lam, c) in &self.terms {
            let parts = lam.parts();
            let mut i = 0;
            while i < parts.len() {
                // a part repeated m times contributes m copies of the same term
                let n = parts[i];
                let mut j = i;
                while j < parts.len() && parts[j] == n {
                    j += 1;
                }
                let mult = (j - i) as i64;
                let mut new_parts = parts.to_vec();
                new_parts[i] = n + 1;
                out.add_term(part(&new_parts), &(c * int(mult * (n - 1))));
                i = j;
            }
        }
        out
    }

    /// `∂^n f / n!`, by iterating `f_{j+1} = ∂f_j / (j + 1)`.
    pub fn divided_derivative(&self, n: usize) -> DiffPoly {
        let mut f = self.clone();
        for j in 1..=n {
            f = f.derive().scale(&frac(1, j as i64));
        }
        f
    }

    /// `∂^{(n)}` via the closed form on each monomial: a sum over
    /// compositions of `n` of products of `C(m − 2 + i, i) L_{-m-i}`.
    pub fn divided_derivative_closed(&self, n: usize) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (lam, c) in &self.terms {
            // distribute n over the parts one at a time
            let mut partial: Vec<(Vec<i64>, usize, Rational)> = vec![(Vec::new(), n, c.clone())];
            for &m in lam.parts() {
                let mut next = Vec::new();
                for (parts, rest, coeff) in partial {
                    for i in 0..=rest {
                        let mut p = parts.clone();
                        p.push(m + i as i64);
                        next.push((p, rest - i, &coeff * divided_generator_coeff(m, i as i64)));
                    }
                }
                partial = next;
            }
            for (parts, rest, coeff) in partial {
                if rest == 0 {
                    out.add_term(part(&parts), &coeff);
                }
            }
        }
        out
    }

    pub fn leading_monomial(&self) -> Result<Partition> {
        self.terms.keys().next_back().cloned().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_coeff(&self) -> Result<Rational> {
        self.terms.values().next_back().cloned().ok_or(Error::ZeroPolynomial)
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Result<DiffPoly> {
        Ok(self.scale(&self.leading_coeff()?.recip()))
    }

    pub fn to_json(&self) -> DiffPolyJson {
        DiffPolyJson::from_poly(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serialisable")
    }

    pub fn from_json_str(s: &str) -> Result<DiffPoly> {
        let j: DiffPolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_poly()
    }
}

/// `a = L_{-2}^3`.
pub fn gen_a() -> DiffPoly {
    DiffPoly::l(&[2, 2, 2])
}

/// `b = L_{-4}L_{-3}L_{-2} + (1/6) L_{-5}L_{-2}^2`.
pub fn gen_b() -> DiffPoly {
    gen_b_general(4)
}

/// `b^{(p')} = (9 − 2p')/(3(p' − 2)) L_{-5}L_{-2}^{p'−2} + L_{-4}L_{-3}L_{-2}^{p'−3}`.
pub fn gen_b_general(p_prime: i64) -> DiffPoly {
    assert!(p_prime >= 3, "p' must be at least 3");
    let twos = |n: i64| vec![2; n as usize];
    let mut first = vec![5];
    first.extend(twos(p_prime - 2));
    let mut second = vec![4, 3];
    second.extend(twos(p_prime - 3));
    DiffPoly::term(part(&first), frac(9 - 2 * p_prime, 3 * (p_prime - 2)))
        .add(&DiffPoly::l(&second))
}

/// `L_{-2}^s`.
pub fn gen_power(s: usize) -> DiffPoly {
    DiffPoly::l(&vec![2; s])
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, lam: &Partition) -> fmt::Result {
    if lam.is_empty() {
        return write!(f, "1");
    }
    let parts = lam.parts();
    let mut i = 0;
    let mut first = true;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "L_-{}", parts[i])?;
        if j - i > 1 {
            write!(f, "^{}", j - i)?;
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for DiffPoly {
    /// Terms from the leading monomial down.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (lam, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if !a.is_one() || lam.is_empty() {
                write!(f, "{}", rational::format(&a))?;
                if !lam.is_empty() {
                    write!(f, "*")?;
                }
            }
            if !lam.is_empty() {
                fmt_monomial(f, lam)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
