//! Graded slices `I_d` of a differential ideal `I = (g_1, …, g_r)_∂`.
//!
//! `I_d` is spanned by `L_μ · ∂^{(j)} g` over all `μ`, `j` and generators
//! `g` with `|μ| + j + wt(g) = d`. Columns are the weight-`d` monomials in
//! increasing grevlex order, so the pivot columns of the echelon basis are
//! exactly the leading monomials of `I_d`.

use std::collections::{BTreeMap, HashMap};

use super::DiffPoly;
use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::partitions::{partition_counts, partitions_of, Partition};
use crate::qseries::{QSeries, Trunc};
use crate::rational::{self, Rational};

/// The weight-`d` monomials with their grevlex positions.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    weight: i64,
    monomials: Vec<Partition>,
    position: HashMap<Partition, usize>,
}

impl MonomialIndex {
    pub fn new(weight: i64) -> Self {
        let monomials = partitions_of(weight, 2);
        let position = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialIndex { weight, monomials, position }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &Partition {
        &self.monomials[i]
    }

    pub fn position(&self, lam: &Partition) -> Option<usize> {
        self.position.get(lam).copied()
    }

    /// Coordinates of a weight-`d` polynomial.
    pub fn coords(&self, f: &DiffPoly) -> Result<BTreeMap<usize, Rational>> {
        f.terms()
            .map(|(lam, c)| {
                self.position(lam)
                    .map(|i| (i, c.clone()))
                    .ok_or_else(|| {
                        Error::InvalidArgument(format!("{lam} does not have weight {}", self.weight))
                    })
            })
            .collect()
    }
}

/// Echelon basis of `I_d` together with its column index.
#[derive(Clone, Debug)]
pub struct GradedIdealSlice {
    pub index: MonomialIndex,
    pub basis: EchelonBasis,
    /// Number of spanning vectors that were reduced.
    pub spanning: usize,
}

impl GradedIdealSlice {
    pub fn weight(&self) -> i64 {
        self.index.weight()
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// `#monomials − rank`.
    pub fn quotient_dim(&self) -> usize {
        self.index.len() - self.rank()
    }

    /// Leading monomials of `I_d`, in increasing grevlex order.
    pub fn leading_monomials(&self) -> Vec<Partition> {
        self.basis.pivots().map(|i| self.index.monomial(i).clone()).collect()
    }

    pub fn contains(&self, f: &DiffPoly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.basis.contains_rational(&self.index.coords(f)?))
    }
}

fn homogeneous_weight(g: &DiffPoly) -> Result<Option<i64>> {
    if g.is_zero() {
        return Ok(None);
    }
    g.weight()
        .map(Some)
        .ok_or_else(|| Error::InvalidArgument(format!("generator {g} is not homogeneous")))
}

/// Row-reduce the spanning set of `I_d`.
pub fn ideal_slice(gens: &[DiffPoly], d: i64) -> Result<GradedIdealSlice> {
    let index = MonomialIndex::new(d);
    let mut basis = EchelonBasis::new();
    let mut spanning = 0;
    for g in gens {
        let Some(w) = homogeneous_weight(g)? else {
            continue;
        };
        if d < w {
            continue;
        }
        let mut der = g.clone();
        for j in 0..=d - w {
            if j > 0 {
                der = der.derive().scale(&rational::frac(1, j));
            }
            let rest = d - w - j;
            for mu in partitions_of(rest, 2) {
                let v = index.coords(&der.mul_monomial(&mu))?;
                if !v.is_empty() {
                    spanning += 1;
                    basis.insert_rational(&v);
                }
            }
        }
    }
    Ok(GradedIdealSlice { index, basis, spanning })
}

/// `Σ_{d ≤ N} (#monomials of weight d − rank I_d) q^d`, mod `q^{N+1}`.
pub fn hilbert_quotient(gens: &[DiffPoly], n: i64) -> Result<QSeries> {
    hilbert_quotient_with(gens, n, |d| ideal_slice(gens, d))
}

/// As [`hilbert_quotient`], with a caller-supplied slice routine (used to
/// run the independent weights in parallel).
pub fn hilbert_quotient_with<F>(gens: &[DiffPoly], n: i64, slice: F) -> Result<QSeries>
where
    F: Fn(i64) -> Result<GradedIdealSlice>,
{
    let min_weight = gens
        .iter()
        .filter_map(|g| homogeneous_weight(g).transpose())
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min();
    let counts = partition_counts((n + 1).max(0) as usize, 2);
    let mut terms = Vec::new();
    for d in 0..=n {
        let free = counts[d as usize];
        let dim = match min_weight {
            Some(w) if d >= w => slice(d)?.quotient_dim() as u64,
            _ => free,
        };
        if dim != 0 {
            terms.push((rational::int(d), rational::int(dim as i64)));
        }
    }
    Ok(QSeries::from_terms(terms, Trunc::int(n + 1)))
}

/// Whether the homogeneous `f` lies in the ideal generated by `gens`.
pub fn membership(f: &DiffPoly, gens: &[DiffPoly]) -> Result<bool> {
    let Some(d) = homogeneous_weight(f)? else {
        return Ok(true);
    };
    ideal_slice(gens, d)?.contains(f)
}
