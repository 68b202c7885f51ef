//! Truncated power series in `q` with exact rational coefficients.
//!
//! Exponents live in `(1/D)·ℤ≥0` for a per-series denominator `D`; the
//! coefficient of `q^{k/D}` is stored under the integer key `k`. Binary
//! operations unify denominators by lcm.

mod intpoly;
mod json;
mod trunc;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use intpoly::{IntPoly, QBinomialTable};
pub use json::SeriesJson;
pub use trunc::Trunc;

#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    denom: i64,
    trunc: Trunc,
    coeffs: BTreeMap<i64, Rational>,
}

/// First coefficient at which two series differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub exponent: Rational,
    pub left: Rational,
    pub right: Rational,
}

/// Outcome of comparing two series up to the order both of them know.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub order: Trunc,
    pub mismatch: Option<Mismatch>,
}

impl Comparison {
    pub fn equal(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(f, "equal mod {}", self.order),
            Some(m) => write!(
                f,
                "differ at q^{}: {} vs {}",
                rational::format(&m.exponent),
                rational::format(&m.left),
                rational::format(&m.right)
            ),
        }
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

impl QSeries {
    fn raw(denom: i64, trunc: Trunc, coeffs: BTreeMap<i64, Rational>) -> Self {
        debug_assert!(denom > 0);
        let mut s = QSeries {
            denom,
            trunc,
            coeffs,
        };
        s.clip();
        s
    }

    /// Drop zero coefficients and everything at or above the truncation order.
    fn clip(&mut self) {
        let limit = self.key_limit();
        self.coeffs
            .retain(|k, c| !c.is_zero() && limit.map_or(true, |l| *k < l));
    }

    /// Smallest key that is *not* known, i.e. `ceil(trunc · D)`.
    fn key_limit(&self) -> Option<i64> {
        self.trunc.value().map(|n| {
            let scaled = n * Rational::from_integer(BigInt::from(self.denom));
            scaled.ceil().to_integer().to_i64().expect("truncation order fits i64")
        })
    }

    pub fn zero(trunc: Trunc) -> Self {
        QSeries::raw(1, trunc, BTreeMap::new())
    }

    pub fn one(trunc: Trunc) -> Self {
        QSeries::monomial(Rational::one(), &Rational::zero(), trunc)
    }

    /// `c · q^e`. Panics if `e` is negative.
    pub fn monomial(c: Rational, e: &Rational, trunc: Trunc) -> Self {
        assert!(!e.is_negative(), "negative exponent {e}");
        let denom = e.denom().to_i64().expect("exponent denominator fits i64");
        let key = e.numer().to_i64().expect("exponent numerator fits i64");
        let mut coeffs = BTreeMap::new();
        coeffs.insert(key, c);
        QSeries::raw(denom, trunc, coeffs)
    }

    /// `q^n` with integer exponent.
    pub fn q_pow(n: i64, trunc: Trunc) -> Self {
        QSeries::monomial(Rational::one(), &rational::int(n), trunc)
    }

    /// Integer-exponent series from dense integer coefficients starting at `q^0`.
    pub fn from_ints(coeffs: &[i64], trunc: Trunc) -> Self {
        let map = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (i as i64, rational::int(*c)))
            .collect();
        QSeries::raw(1, trunc, map)
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I, trunc: Trunc) -> Self
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let denom = terms.iter().fold(1i64, |d, (e, _)| {
            lcm(d, e.denom().to_i64().expect("denominator fits i64"))
        });
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            assert!(!e.is_negative(), "negative exponent {e}");
            let key = (e * rational::int(denom)).to_integer().to_i64().unwrap();
            *coeffs.entry(key).or_insert_with(Rational::zero) += c;
        }
        QSeries::raw(denom, trunc, coeffs)
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn trunc(&self) -> &Trunc {
        &self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_exact()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn exponent_of(&self, key: i64) -> Rational {
        Rational::new(BigInt::from(key), BigInt::from(self.denom))
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        self.coeffs.iter().map(|(k, c)| (self.exponent_of(*k), c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `q^e`, or `None` if `e` is at or past the truncation order.
    pub fn coeff(&self, e: &Rational) -> Option<Rational> {
        if !self.trunc.covers(e) {
            return None;
        }
        let scaled = e * rational::int(self.denom);
        if !scaled.is_integer() {
            return Some(Rational::zero());
        }
        let key = scaled.to_integer().to_i64()?;
        Some(self.coeffs.get(&key).cloned().unwrap_or_else(Rational::zero))
    }

    /// Coefficient of `q^n` for integer `n`.
    pub fn coeff_int(&self, n: i64) -> Option<Rational> {
        self.coeff(&rational::int(n))
    }

    /// Integer coefficients of `q^0 .. q^{count-1}`; panics on non-integers or unknown terms.
    pub fn int_coeffs(&self, count: usize) -> Vec<i64> {
        (0..count as i64)
            .map(|n| {
                let c = self.coeff_int(n).expect("coefficient below truncation");
                assert!(c.is_integer(), "non-integer coefficient {c}");
                c.to_integer().to_i64().unwrap()
            })
            .collect()
    }

    /// Lowest exponent with nonzero coefficient; for a zero truncated series
    /// this is the truncation order, and `None` for the exact zero.
    pub fn valuation(&self) -> Option<Rational> {
        match self.coeffs.keys().next() {
            Some(k) => Some(self.exponent_of(*k)),
            None => self.trunc.value().cloned(),
        }
    }

    pub fn degree(&self) -> Option<Rational> {
        self.coeffs.keys().next_back().map(|k| self.exponent_of(*k))
    }

    /// Re-key with a denominator that is a multiple of the current one.
    fn with_denom(&self, denom: i64) -> QSeries {
        if denom == self.denom {
            return self.clone();
        }
        assert_eq!(denom % self.denom, 0);
        let f = denom / self.denom;
        QSeries {
            denom,
            trunc: self.trunc.clone(),
            coeffs: self.coeffs.iter().map(|(k, c)| (k * f, c.clone())).collect(),
        }
    }

    /// Smallest denominator able to hold every stored exponent and the truncation order.
    pub fn normalized(&self) -> QSeries {
        let mut g = self.coeffs.keys().fold(self.denom, |g, k| g.gcd(k));
        if let Some(n) = self.trunc.value() {
            let scaled = n * rational::int(self.denom);
            if scaled.is_integer() {
                g = g.gcd(&scaled.to_integer().to_i64().unwrap());
            } else {
                g = 1;
            }
        }
        if g <= 1 {
            return self.clone();
        }
        QSeries {
            denom: self.denom / g,
            trunc: self.trunc.clone(),
            coeffs: self.coeffs.iter().map(|(k, c)| (k / g, c.clone())).collect(),
        }
    }

    pub fn truncate(&self, trunc: &Trunc) -> QSeries {
        QSeries::raw(self.denom, self.trunc.meet(trunc), self.coeffs.clone())
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let d = lcm(self.denom, other.denom);
        let a = self.with_denom(d);
        let b = other.with_denom(d);
        let mut coeffs = a.coeffs;
        for (k, c) in b.coeffs {
            *coeffs.entry(k).or_insert_with(Rational::zero) += c;
        }
        QSeries::raw(d, self.trunc.meet(&other.trunc), coeffs)
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            denom: self.denom,
            trunc: self.trunc.clone(),
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries::raw(
            self.denom,
            self.trunc.clone(),
            self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        )
    }

    /// Multiply by `q^e`, `e ≥ 0`. The truncation order moves up by `e`.
    pub fn shift(&self, e: &Rational) -> QSeries {
        assert!(!e.is_negative(), "negative shift {e}");
        let d = lcm(self.denom, e.denom().to_i64().unwrap());
        let a = self.with_denom(d);
        let off = (e * rational::int(d)).to_integer().to_i64().unwrap();
        QSeries::raw(
            d,
            self.trunc.shifted(e),
            a.coeffs.into_iter().map(|(k, c)| (k + off, c)).collect(),
        )
    }

    pub fn shift_int(&self, n: i64) -> QSeries {
        self.shift(&rational::int(n))
    }

    /// Divide by `q^e`; requires every stored exponent to be at least `e`.
    pub fn unshift(&self, e: &Rational) -> Result<QSeries> {
        let d = lcm(self.denom, e.denom().to_i64().unwrap());
        let a = self.with_denom(d);
        let off = (e * rational::int(d)).to_integer().to_i64().unwrap();
        if a.coeffs.keys().next().is_some_and(|k| *k < off) {
            return Err(Error::InvalidArgument(format!(
                "series has terms below q^{}",
                rational::format(e)
            )));
        }
        Ok(QSeries::raw(
            d,
            self.trunc.shifted(&-e),
            a.coeffs.into_iter().map(|(k, c)| (k - off, c)).collect(),
        ))
    }

    /// Cauchy product. The result is known up to
    /// `min(trunc_a + ord_b, trunc_b + ord_a)`.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let d = lcm(self.denom, other.denom);
        let a = self.with_denom(d);
        let b = other.with_denom(d);
        let bound = |t: &Trunc, ord: Option<Rational>| match ord {
            None => Trunc::exact(),
            Some(o) => t.shifted(&o),
        };
        let trunc = bound(&a.trunc, b.valuation()).meet(&bound(&b.trunc, a.valuation()));
        let probe = QSeries {
            denom: d,
            trunc: trunc.clone(),
            coeffs: BTreeMap::new(),
        };
        let limit = probe.key_limit();
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (ka, ca) in &a.coeffs {
            for (kb, cb) in &b.coeffs {
                let k = ka + kb;
                if limit.is_some_and(|l| k >= l) {
                    break;
                }
                *coeffs.entry(k).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        QSeries::raw(d, trunc, coeffs)
    }

    /// Multiplicative inverse modulo `q^{trunc}`; the series must be truncated.
    pub fn inverse(&self) -> Result<QSeries> {
        match self.trunc.value() {
            Some(n) => self.inverse_mod(&n.clone()),
            None => Err(Error::InvalidArgument(
                "inverse of an exact polynomial needs a truncation order".into(),
            )),
        }
    }

    /// Inverse modulo `q^n` (also for exact input).
    pub fn inverse_mod(&self, n: &Rational) -> Result<QSeries> {
        let a0 = self
            .coeffs
            .get(&0)
            .cloned()
            .ok_or(Error::ZeroConstantTerm)?;
        let trunc = self.trunc.meet(&Trunc::at(n.clone()));
        let probe = QSeries::raw(self.denom, trunc.clone(), BTreeMap::new());
        let limit = probe.key_limit().unwrap().max(0) as usize;
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(limit);
        let tail: Vec<(usize, &Rational)> = self
            .coeffs
            .iter()
            .filter(|(k, _)| **k > 0)
            .map(|(k, c)| (*k as usize, c))
            .collect();
        for i in 0..limit {
            if i == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut acc = Rational::zero();
            for (k, c) in &tail {
                if *k > i {
                    break;
                }
                let b = &out[i - k];
                if !b.is_zero() {
                    acc += *c * b;
                }
            }
            out.push(-acc * &inv0);
        }
        let coeffs = out.into_iter().enumerate().map(|(i, c)| (i as i64, c)).collect();
        Ok(QSeries::raw(self.denom, trunc, coeffs))
    }

    /// Substitute `q → q^m` for a positive integer `m`.
    pub fn dilate(&self, m: i64) -> QSeries {
        assert!(m > 0);
        let f = rational::int(m);
        QSeries::raw(
            self.denom,
            match self.trunc.value() {
                None => Trunc::exact(),
                Some(n) => Trunc::at(n * &f),
            },
            self.coeffs.iter().map(|(k, c)| (k * m, c.clone())).collect(),
        )
    }

    /// Compare coefficientwise below the smaller of the two truncation orders.
    pub fn compare(&self, other: &QSeries) -> Comparison {
        let d = lcm(self.denom, other.denom);
        let a = self.with_denom(d);
        let b = other.with_denom(d);
        let order = a.trunc.meet(&b.trunc);
        let zero = Rational::zero();
        let mut keys: Vec<i64> = a.coeffs.keys().chain(b.coeffs.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            let ca = a.coeffs.get(&k).unwrap_or(&zero);
            let cb = b.coeffs.get(&k).unwrap_or(&zero);
            if ca != cb {
                let exponent = Rational::new(BigInt::from(k), BigInt::from(d));
                if !order.covers(&exponent) {
                    break;
                }
                return Comparison {
                    order,
                    mismatch: Some(Mismatch {
                        exponent,
                        left: ca.clone(),
                        right: cb.clone(),
                    }),
                };
            }
        }
        Comparison {
            order,
            mismatch: None,
        }
    }

    /// Whether every known coefficient is a nonnegative integer.
    pub fn is_nonneg_integral(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson::from_series(self)
    }

    pub fn from_json(j: &SeriesJson) -> Result<QSeries> {
        j.to_series()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = rational::format(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{abs}")?;
            } else {
                if !c.abs().is_one() {
                    write!(f, "{abs}*")?;
                }
                if e.is_one() {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{}", rational::format(&e))?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(n) = self.trunc.value() {
            write!(f, " + O(q^{})", rational::format(n))?;
        }
        Ok(())
    }
}

/// `(q)_n = ∏_{j=1}^{n} (1 − q^j)`. Exact unless its degree `n(n+1)/2`
/// reaches `storage`, in which case it is stored truncated at `storage`.
pub fn pochhammer(n: usize, storage: Option<i64>) -> QSeries {
    let poly = IntPoly::pochhammer(n);
    let exact = poly.to_series();
    match storage {
        Some(cap) if (poly.degree().unwrap_or(0) as i64) >= cap => exact.truncate(&Trunc::int(cap)),
        _ => exact,
    }
}

/// `(q)_∞ mod q^N`: only the factors `1 − q^j` with `j < N` matter.
pub fn pochhammer_inf(n: i64) -> QSeries {
    let mut coeffs = vec![BigInt::zero(); n.max(0) as usize];
    if n <= 0 {
        return QSeries::zero(Trunc::int(n.max(0)));
    }
    coeffs[0] = BigInt::one();
    let len = coeffs.len();
    for j in 1..len {
        for i in (j..len).rev() {
            let t = coeffs[i - j].clone();
            coeffs[i] -= t;
        }
    }
    IntPoly::from_coeffs(coeffs).to_series().truncate(&Trunc::int(n))
}

/// Gaussian binomial `[m choose n]_q`; zero outside `0 ≤ n ≤ m`.
pub fn q_binomial(m: i64, n: i64) -> QSeries {
    IntPoly::q_binomial(m, n).to_series()
}

/// `1/(q)_k mod q^N`.
pub fn inv_pochhammer(k: usize, n: i64) -> QSeries {
    IntPoly::pochhammer(k)
        .to_series()
        .inverse_mod(&rational::int(n))
        .expect("constant term of (q)_k is 1")
}
