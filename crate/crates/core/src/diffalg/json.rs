//! Wire form `{"weight": d, "terms": [[[5,2,2], "1/6"], ...]}`, terms in
//! increasing grevlex order. The zero polynomial has `"weight": null`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::DiffPoly;
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::rational;

/// Caps on untrusted input so a hostile fixture cannot exhaust memory.
const MAX_PART: i64 = 1 << 16;
const MAX_LEN: usize = 1 << 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffPolyJson {
    pub weight: Option<i64>,
    pub terms: Vec<(Vec<i64>, String)>,
}

impl DiffPolyJson {
    pub fn from_poly(f: &DiffPoly) -> Self {
        DiffPolyJson {
            weight: f.weight(),
            terms: f
                .terms()
                .map(|(lam, c)| (lam.parts().to_vec(), rational::format(c)))
                .collect(),
        }
    }

    /// Parts must be weakly decreasing and `≥ 2`, terms strictly increasing
    /// in grevlex, each of the declared weight, with nonzero coefficients.
    pub fn to_poly(&self) -> Result<DiffPoly> {
        let bad = |m: String| Err(Error::Parse(m));
        if self.weight.is_none() && !self.terms.is_empty() {
            return bad("nonzero polynomial without a weight".into());
        }
        let mut out = DiffPoly::zero();
        let mut last: Option<Partition> = None;
        for (parts, c) in &self.terms {
            if parts.len() > MAX_LEN || parts.iter().any(|p| *p > MAX_PART) {
                return bad("monomial too large".into());
            }
            if !parts.windows(2).all(|w| w[0] >= w[1]) {
                return bad(format!("parts {parts:?} not weakly decreasing"));
            }
            let lam = Partition::new(parts.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            if Some(lam.weight()) != self.weight {
                return bad(format!("monomial {lam} has the wrong weight"));
            }
            if last.as_ref().is_some_and(|l| *l >= lam) {
                return bad("terms must be strictly increasing in grevlex".into());
            }
            let c = rational::parse(c)?;
            if c.is_zero() {
                return bad(format!("zero coefficient at {lam}"));
            }
            out.add_term(lam.clone(), &c);
            last = Some(lam);
        }
        Ok(out)
    }
}
