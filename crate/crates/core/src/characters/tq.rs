use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::{QSeries, Trunc};
use crate::rational::{self, Rational};

/// Largest truncation order accepted from JSON input.
pub const MAX_JSON_TRUNC: i64 = 1 << 16;

/// Truncated series in two variables, `Σ c(m, n) t^m q^n`, known for `n < trunc`.
///
/// Exponents are nonnegative integers in both variables; each q-degree carries
/// a polynomial in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TQSeries {
    trunc: i64,
    coeffs: BTreeMap<i64, BTreeMap<i64, Rational>>,
}

/// First `(m, n)` at which two two-variable series differ.
#[derive(Clone, Debug, PartialEq)]
pub struct TQMismatch {
    pub t_exp: i64,
    pub q_exp: i64,
    pub left: Rational,
    pub right: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TQComparison {
    pub order: i64,
    pub mismatch: Option<TQMismatch>,
}

impl TQComparison {
    pub fn equal(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for TQComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(f, "equal mod q^{}", self.order),
            Some(m) => write!(
                f,
                "differ at t^{} q^{}: {} vs {}",
                m.t_exp,
                m.q_exp,
                rational::format(&m.left),
                rational::format(&m.right)
            ),
        }
    }
}

impl TQSeries {
    pub fn zero(trunc: i64) -> Self {
        TQSeries {
            trunc: trunc.max(0),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms as `(q-exponent, t-exponent, coefficient)`, ascending in q then t.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .flat_map(|(n, poly)| poly.iter().map(move |(m, c)| (*n, *m, c)))
    }

    pub fn coeff(&self, t_exp: i64, q_exp: i64) -> Rational {
        self.coeffs
            .get(&q_exp)
            .and_then(|p| p.get(&t_exp))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Add `c · t^m q^n`; terms at or above the truncation are dropped.
    pub fn add_term(&mut self, t_exp: i64, q_exp: i64, c: &Rational) {
        assert!(t_exp >= 0 && q_exp >= 0, "negative exponent");
        if q_exp >= self.trunc || c.is_zero() {
            return;
        }
        let poly = self.coeffs.entry(q_exp).or_default();
        let e = poly.entry(t_exp).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            poly.remove(&t_exp);
            if poly.is_empty() {
                self.coeffs.remove(&q_exp);
            }
        }
    }

    /// Add `t^m · s`. The truncation drops to that of `s` if `s` knows less.
    pub fn add_series(&mut self, t_exp: i64, s: &QSeries) {
        let s = s.normalized();
        assert_eq!(s.denom(), 1, "two-variable series use integer q-exponents");
        if let Some(n) = s.trunc().value() {
            let n = n.floor().to_integer();
            let n: i64 = n.try_into().unwrap_or(i64::MAX);
            if n < self.trunc {
                self.trunc = n;
                self.coeffs.split_off(&n);
            }
        }
        for (e, c) in s.terms() {
            let e: i64 = e.to_integer().try_into().expect("exponent fits i64");
            self.add_term(t_exp, e, c);
        }
    }

    pub fn add(&self, other: &TQSeries) -> TQSeries {
        let mut out = self.clone();
        out.lower_trunc(other.trunc);
        for (n, m, c) in other.terms() {
            out.add_term(m, n, c);
        }
        out
    }

    pub fn neg(&self) -> TQSeries {
        TQSeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|(n, p)| (*n, p.iter().map(|(m, c)| (*m, -c)).collect()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &TQSeries) -> TQSeries {
        self.add(&other.neg())
    }

    fn lower_trunc(&mut self, n: i64) {
        if n < self.trunc {
            self.trunc = n;
            self.coeffs.split_off(&n);
        }
    }

    /// Substitute `t → t·q^a` for `a ≥ 0`: `t^m q^n ↦ t^m q^{n + a·m}`.
    /// The truncation order is unchanged since exponents only move up.
    pub fn shear(&self, a: i64) -> TQSeries {
        assert!(a >= 0, "shear must not lower q-exponents");
        let mut out = TQSeries::zero(self.trunc);
        for (n, m, c) in self.terms() {
            out.add_term(m, n + a * m, c);
        }
        out
    }

    /// Multiply by `t^m q^n`; the result is known up to `trunc + n`.
    pub fn mul_monomial(&self, t_exp: i64, q_exp: i64) -> TQSeries {
        let mut out = TQSeries::zero(self.trunc + q_exp);
        for (n, m, c) in self.terms() {
            out.add_term(m + t_exp, n + q_exp, c);
        }
        out
    }

    /// Coefficient of `t^m` as a q-series.
    pub fn t_slice(&self, t_exp: i64) -> QSeries {
        QSeries::from_terms(
            self.terms()
                .filter(|(_, m, _)| *m == t_exp)
                .map(|(n, _, c)| (rational::int(n), c.clone())),
            Trunc::int(self.trunc),
        )
    }

    /// The `t = 1` fibre.
    pub fn at_t_one(&self) -> QSeries {
        QSeries::from_terms(
            self.terms().map(|(n, _, c)| (rational::int(n), c.clone())),
            Trunc::int(self.trunc),
        )
    }

    /// `t^m q^n ↦ t^{n−2m} q^n`, i.e. `f(t^{-2}, tq)`.
    pub fn bigraded(&self) -> Result<TQSeries> {
        let mut out = TQSeries::zero(self.trunc);
        for (n, m, c) in self.terms() {
            let e = n - 2 * m;
            if e < 0 {
                return Err(Error::InvalidArgument(format!(
                    "t^{m} q^{n} maps to a negative t-exponent"
                )));
            }
            out.add_term(e, n, c);
        }
        Ok(out)
    }

    pub fn compare(&self, other: &TQSeries) -> TQComparison {
        let order = self.trunc.min(other.trunc);
        let diff = self.sub(other);
        let mismatch = diff.terms().next().filter(|(n, _, _)| *n < order).map(|(n, m, _)| {
            TQMismatch {
                t_exp: m,
                q_exp: n,
                left: self.coeff(m, n),
                right: other.coeff(m, n),
            }
        });
        TQComparison { order, mismatch }
    }

    /// Every coefficient is a nonnegative integer.
    pub fn is_nonneg_integral(&self) -> bool {
        self.terms()
            .all(|(_, _, c)| c.is_integer() && !c.is_negative())
    }

    /// Largest `t`-exponent at each `q`-degree is at most `n / 2`.
    pub fn respects_part_bound(&self) -> bool {
        self.terms().all(|(n, m, _)| 2 * m <= n)
    }

    pub fn to_json(&self) -> TQJson {
        TQJson {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|(n, p)| (*n, p.iter().map(|(m, c)| (*m, rational::format(c))).collect()))
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serialisable")
    }

    pub fn from_json_str(s: &str) -> Result<TQSeries> {
        let j: TQJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_series()
    }
}

/// Wire form: `{"trunc": N, "coeffs": [[n, [[m, "c"], ...]], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TQJson {
    pub trunc: i64,
    pub coeffs: Vec<(i64, Vec<(i64, String)>)>,
}

impl TQJson {
    pub fn to_series(&self) -> Result<TQSeries> {
        let bad = |msg: String| Err(Error::Parse(msg));
        if !(0..=MAX_JSON_TRUNC).contains(&self.trunc) {
            return bad(format!("trunc {} out of range", self.trunc));
        }
        let mut out = TQSeries::zero(self.trunc);
        let mut last_n = -1;
        for (n, poly) in &self.coeffs {
            if *n <= last_n || *n >= self.trunc {
                return bad(format!("q-exponent {n} out of order or not below trunc"));
            }
            last_n = *n;
            if poly.is_empty() {
                return bad(format!("empty polynomial at q^{n}"));
            }
            let mut last_m = -1;
            for (m, c) in poly {
                if *m <= last_m || *m > *n {
                    return bad(format!("t-exponent {m} out of order or above q-degree {n}"));
                }
                last_m = *m;
                let c = rational::parse(c)?;
                if c.is_zero() {
                    return bad(format!("zero coefficient at t^{m} q^{n}"));
                }
                out.add_term(*m, *n, &c);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if !c.is_one() || (m == 0 && n == 0) {
                write!(f, "{}", rational::format(c))?;
                if m != 0 || n != 0 {
                    write!(f, "*")?;
                }
            }
            match m {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{m}")?,
            }
            if m != 0 && n != 0 {
                write!(f, "*")?;
            }
            match n {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc)
    }
}
