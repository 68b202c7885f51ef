//! Dense integer polynomials for the exact q-binomial and Pochhammer kernels.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{QSeries, Trunc};
use crate::rational::Rational;

/// Exact polynomial in `q` with integer coefficients, lowest degree first,
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|c| BigInt::from(*c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::from(c);
        IntPoly::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        IntPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(out)
    }

    /// Add `c · q^shift · other` in place.
    pub fn add_scaled_shifted(&mut self, other: &IntPoly, c: i64, shift: usize) {
        if other.is_zero() || c == 0 {
            return;
        }
        let need = other.coeffs.len() + shift;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, BigInt::zero());
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            self.coeffs[i + shift] += b * c;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// First index where the two polynomials differ.
    pub fn first_difference(&self, other: &IntPoly) -> Option<(usize, BigInt, BigInt)> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).find_map(|i| {
            let (a, b) = (self.coeff(i), other.coeff(i));
            (a != b).then_some((i, a, b))
        })
    }

    pub fn to_series(&self) -> QSeries {
        QSeries::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    (
                        Rational::from_integer(BigInt::from(i)),
                        Rational::from_integer(c.clone()),
                    )
                }),
            Trunc::exact(),
        )
    }

    /// `∏_{j=1}^{n} (1 − q^j)`.
    pub fn pochhammer(n: usize) -> IntPoly {
        let deg = n * (n + 1) / 2;
        let mut c = vec![BigInt::zero(); deg + 1];
        c[0] = BigInt::from(1);
        let mut cur = 0;
        for j in 1..=n {
            cur += j;
            for i in (j..=cur).rev() {
                let t = c[i - j].clone();
                c[i] -= t;
            }
        }
        IntPoly::from_coeffs(c)
    }

    /// Gaussian binomial via the q-Pascal rule, zero outside `0 ≤ n ≤ m`.
    pub fn q_binomial(m: i64, n: i64) -> IntPoly {
        if n < 0 || m < 0 || n > m {
            return IntPoly::zero();
        }
        let (m, n) = (m as usize, n as usize);
        let n = n.min(m - n);
        // row[j] = [i choose j]_q for the current i
        let mut row: Vec<IntPoly> = vec![IntPoly::one()];
        for i in 1..=m {
            let mut next = Vec::with_capacity((i + 1).min(n + 1));
            for j in 0..=i.min(n) {
                let mut p = if j == 0 { IntPoly::zero() } else { row[j - 1].clone() };
                if j < row.len() && j < i {
                    p.add_scaled_shifted(&row[j], 1, j);
                }
                next.push(p);
            }
            row = next;
        }
        row.swap_remove(n)
    }
}

/// Memoized Gaussian binomials for repeated lookups.
#[derive(Default)]
pub struct QBinomialTable {
    cache: HashMap<(i64, i64), IntPoly>,
}

impl QBinomialTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, m: i64, n: i64) -> &IntPoly {
        let key = if n < 0 || m < 0 || n > m {
            (-1, -1)
        } else {
            (m, n.min(m - n))
        };
        self.cache.entry(key).or_insert_with(|| {
            if key.0 < 0 {
                IntPoly::zero()
            } else {
                IntPoly::q_binomial(key.0, key.1)
            }
        })
    }
}
