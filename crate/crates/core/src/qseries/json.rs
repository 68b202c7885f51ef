//! Fixture format: `{"denom": D, "trunc": "p/q", "coeffs": [["e", "c"], ...]}`
//! with exponents strictly increasing. Exact polynomials use `"trunc": "inf"`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{QSeries, Trunc};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest denominator accepted from untrusted input.
const MAX_DENOM: i64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub denom: i64,
    pub trunc: String,
    pub coeffs: Vec<(String, String)>,
}

impl SeriesJson {
    pub fn from_series(s: &QSeries) -> Self {
        SeriesJson {
            denom: s.denom,
            trunc: s.trunc.to_json_string(),
            coeffs: s
                .terms()
                .map(|(e, c)| (rational::format(&e), rational::format(c)))
                .collect(),
        }
    }

    pub fn to_series(&self) -> Result<QSeries> {
        if self.denom <= 0 || self.denom > MAX_DENOM {
            return Err(Error::Parse(format!("denominator {} out of range", self.denom)));
        }
        let trunc = if self.trunc == "inf" {
            Trunc::exact()
        } else {
            let n = rational::parse(&self.trunc)?;
            if n.is_negative() {
                return Err(Error::Parse("negative truncation order".into()));
            }
            checked_key(&n, self.denom)?;
            Trunc::at(n)
        };
        let mut coeffs = BTreeMap::new();
        let mut last: Option<i64> = None;
        for (e, c) in &self.coeffs {
            let e = rational::parse(e)?;
            let c = rational::parse(c)?;
            if e.is_negative() {
                return Err(Error::Parse(format!("negative exponent {e}")));
            }
            if !trunc.covers(&e) {
                return Err(Error::Parse(format!("exponent {e} at or past truncation")));
            }
            let key = checked_key(&e, self.denom)?
                .ok_or_else(|| Error::Parse(format!("exponent {e} not a multiple of 1/{}", self.denom)))?;
            if last.is_some_and(|l| key <= l) {
                return Err(Error::Parse("exponents must be strictly increasing".into()));
            }
            last = Some(key);
            if c.is_zero() {
                return Err(Error::Parse(format!("zero coefficient stored at q^{e}")));
            }
            coeffs.insert(key, c);
        }
        Ok(QSeries::raw(self.denom, trunc, coeffs))
    }
}

/// `e · D` as an `i64` key if it is an integer in range.
fn checked_key(e: &Rational, denom: i64) -> Result<Option<i64>> {
    let scaled = e * Rational::from_integer(BigInt::from(denom));
    let k = scaled.ceil().to_integer();
    let k = k
        .to_i64()
        .filter(|k| k.abs() < (1i64 << 40))
        .ok_or_else(|| Error::Parse(format!("exponent {e} out of range")))?;
    Ok(scaled.is_integer().then_some(k))
}

impl QSeries {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("series serializes")
    }

    pub fn from_json_str(s: &str) -> Result<QSeries> {
        let j: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_series()
    }
}
