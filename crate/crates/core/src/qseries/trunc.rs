use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::rational::{self, Rational};

/// Truncation order of a series: coefficients of `q^e` are known exactly for
/// `e < N`. `Trunc::exact()` marks an exact polynomial (no unknown tail).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Trunc(Option<Rational>);

impl Trunc {
    pub fn exact() -> Self {
        Trunc(None)
    }

    pub fn at(n: Rational) -> Self {
        Trunc(Some(n))
    }

    pub fn int(n: i64) -> Self {
        Trunc(Some(rational::int(n)))
    }

    pub fn is_exact(&self) -> bool {
        self.0.is_none()
    }

    pub fn value(&self) -> Option<&Rational> {
        self.0.as_ref()
    }

    /// Whether the coefficient of `q^e` is known.
    pub fn covers(&self, e: &Rational) -> bool {
        match &self.0 {
            None => true,
            Some(n) => e < n,
        }
    }

    pub fn meet(&self, other: &Trunc) -> Trunc {
        match (&self.0, &other.0) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some(a), Some(b)) => Trunc(Some(a.min(b).clone())),
        }
    }

    /// `self + shift`; exact stays exact.
    pub fn shifted(&self, shift: &Rational) -> Trunc {
        Trunc(self.0.as_ref().map(|n| n + shift))
    }

    pub fn to_json_string(&self) -> String {
        match &self.0 {
            None => "inf".to_string(),
            Some(n) => rational::format(n),
        }
    }
}

impl PartialOrd for Trunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Trunc {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Trunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => write!(f, "exact"),
            Some(n) if n.is_zero() => write!(f, "q^0"),
            Some(n) => write!(f, "q^{}", rational::format(n)),
        }
    }
}
