//! Exact linear algebra over the rationals.
//!
//! Dense helpers for the small matrices of Nahm data, and a sparse
//! incremental echelon basis for the graded slices of ideals and
//! submodules. Echelon rows are keyed by their *leading column*, where
//! columns are ordered by a caller-supplied total order (grevlex on
//! monomials); elimination always works from the leading column down, so the
//! pivot set is determined by the spanned subspace and the order alone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|r| !a[*r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

pub fn is_symmetric(m: &Matrix) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n)
        && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Sylvester's criterion: every leading principal minor is positive.
pub fn is_positive_definite(m: &Matrix) -> bool {
    let n = m.len();
    (1..=n).all(|k| {
        let minor: Matrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|r| !a[*r][col].is_zero())
            .ok_or_else(|| Error::InvalidArgument("matrix is singular".into()))?;
        a.swap(piv, col);
        let inv = a[col][col].recip();
        for c in 0..2 * n {
            a[col][c] = &a[col][c] * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Sparse integer vector: column index → nonzero coefficient.
pub type SparseVec = BTreeMap<usize, BigInt>;

/// Clear denominators and divide out the content, normalising the sign so
/// the coefficient at the leading (largest) column is positive.
pub fn primitive(v: &BTreeMap<usize, Rational>) -> SparseVec {
    let lcm = v
        .values()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut out: SparseVec = v
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (*k, (c * Rational::from_integer(lcm.clone())).to_integer()))
        .collect();
    normalize(&mut out);
    out
}

fn normalize(v: &mut SparseVec) {
    let g = v.values().fold(BigInt::zero(), |g, c| g.gcd(c));
    let lead_negative = v.values().next_back().is_some_and(|c| c.is_negative());
    if g.is_zero() {
        return;
    }
    let g = if lead_negative { -g } else { g };
    if !g.is_one() {
        for c in v.values_mut() {
            *c = &*c / &g;
        }
    }
}

/// Echelon basis of a subspace of `Q^n`, grown one vector at a time.
///
/// Columns are integers; *larger index = larger in the monomial order*, so
/// each row's leading column is its maximum key. Rows are stored primitive
/// over the integers.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Leading columns, ascending.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    /// Top-reduce `v`: eliminate its leading column while that column is a
    /// pivot. Since pivots are distinct leading columns, the result is zero
    /// iff `v` lies in the span. The returned vector is primitive.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        normalize(&mut v);
        loop {
            let Some((col, c)) = v.iter().next_back().map(|(k, c)| (*k, c.clone())) else {
                return v;
            };
            let Some(row) = self.rows.get(&col) else {
                return v;
            };
            let p = &row[&col];
            // v <- p·v − c·row, then divide out the content
            let g = p.gcd(&c);
            let (fp, fc) = (p / &g, &c / &g);
            if !fp.is_one() {
                for x in v.values_mut() {
                    *x *= &fp;
                }
            }
            for (k, r) in row {
                let e = v.entry(*k).or_insert_with(BigInt::zero);
                *e -= &fc * r;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            normalize(&mut v);
        }
    }

    /// Insert `v` if it is independent; returns the new pivot column.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (&lead, _) = r.iter().next_back()?;
        self.rows.insert(lead, r);
        Some(lead)
    }

    pub fn insert_rational(&mut self, v: &BTreeMap<usize, Rational>) -> Option<usize> {
        self.insert(primitive(v))
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_rational(&self, v: &BTreeMap<usize, Rational>) -> bool {
        self.contains(primitive(v))
    }

    /// Fully reduced echelon form: each row monic at its pivot and zero at
    /// every other pivot column. Rows ascend by pivot.
    pub fn reduced_rows(&self) -> Vec<(usize, BTreeMap<usize, Rational>)> {
        let mut out: Vec<(usize, BTreeMap<usize, Rational>)> = Vec::new();
        for (&piv, row) in &self.rows {
            let lead = Rational::from_integer(row[&piv].clone());
            let mut r: BTreeMap<usize, Rational> = row
                .iter()
                .map(|(k, c)| (*k, Rational::from_integer(c.clone()) / &lead))
                .collect();
            // clear lower pivots using already-reduced rows
            for (p2, r2) in &out {
                if let Some(c) = r.get(p2).cloned() {
                    for (k, x) in r2 {
                        let e = r.entry(*k).or_insert_with(Rational::zero);
                        *e -= &c * x;
                        if e.is_zero() {
                            r.remove(k);
                        }
                    }
                }
            }
            // clear this pivot from the earlier rows
            for (_, r2) in out.iter_mut() {
                if let Some(c) = r2.get(&piv).cloned() {
                    for (k, x) in &r {
                        let e = r2.entry(*k).or_insert_with(Rational::zero);
                        *e -= &c * x;
                        if e.is_zero() {
                            r2.remove(k);
                        }
                    }
                }
            }
            out.push((piv, r));
        }
        out
    }
}

/// Basis of the right nullspace of a dense rational matrix.
pub fn nullspace(rows: &Matrix, ncols: usize) -> Vec<Vec<Rational>> {
    let mut a: Matrix = rows.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..a.len()).find(|i| !a[*i][col].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let inv = a[r][col].recip();
        for c in 0..ncols {
            a[r][c] = &a[r][c] * &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for c in 0..ncols {
                let t = &f * &a[r][c];
                a[i][c] -= t;
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|x| int(*x)).collect()).collect()
    }

    #[test]
    fn determinant_and_definiteness() {
        assert_eq!(determinant(&mat(&[&[8, 3], &[3, 2]])), int(7));
        assert!(is_positive_definite(&mat(&[&[8, 3], &[3, 2]])));
        assert!(!is_positive_definite(&mat(&[&[1, 2], &[2, 1]])));
        assert!(is_symmetric(&mat(&[&[1, 2], &[2, 1]])));
        assert!(!is_symmetric(&mat(&[&[1, 2], &[3, 1]])));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = mat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], frac(3, 4));
        assert_eq!(inv[1][1], int(1));
        assert!(inverse(&mat(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn echelon_span_and_pivots() {
        let v = |pairs: &[(usize, i64)]| -> SparseVec {
            pairs.iter().map(|(k, c)| (*k, BigInt::from(*c))).collect()
        };
        let mut b = EchelonBasis::new();
        assert_eq!(b.insert(v(&[(0, 1), (2, 1)])), Some(2));
        assert_eq!(b.insert(v(&[(1, 1), (2, 2)])), Some(1));
        assert_eq!(b.insert(v(&[(0, -2), (1, 1)])), None);
        assert_eq!(b.rank(), 2);
        assert!(b.contains(v(&[(0, 2), (1, -1)])));
        assert!(!b.contains(v(&[(0, 1)])));
        let rows = b.reduced_rows();
        assert_eq!(rows.len(), 2);
        // row with pivot 2 has no entry at pivot 1
        assert!(!rows[1].1.contains_key(&1));
    }

    #[test]
    fn nullspace_small() {
        let ns = nullspace(&mat(&[&[1, 1, 0], &[0, 1, 1]]), 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![int(1), int(-1), int(1)]);
    }
}
