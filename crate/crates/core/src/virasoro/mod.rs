//! Exact computations in the vacuum module `Vir^c`: PBW normal ordering,
//! singular vectors, graded dimensions of the simple quotient, and the
//! filtration identities behind the kernel lemmas.
//!
//! Vectors are combinations of `L_{-n_1}···L_{-n_m}|0⟩` with
//! `n_1 ≥ … ≥ n_m ≥ 2`. Words with `L_{-1}` only occur transiently: any
//! ordered monomial ending in `L_{-1}|0⟩` vanishes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{feigin_fuchs_character, MinimalModelLabel};
use crate::diffalg::{gen_b_general, gen_power, hilbert_quotient, DiffPoly, DiffPolyJson};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, EchelonBasis, Matrix};
use crate::partitions::{partition_counts, partitions_of, Partition};
use crate::rational::{self, frac, int, Rational};
use crate::report::Report;

/// Element of `Vir^c` in the PBW basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirVector {
    c: Rational,
    terms: BTreeMap<Partition, Rational>,
}

impl VirVector {
    pub fn zero(c: Rational) -> Self {
        VirVector { c, terms: BTreeMap::new() }
    }

    pub fn vacuum(c: Rational) -> Self {
        Self::monomial(c, &[])
    }

    /// `L_{-n_1}···L_{-n_m}|0⟩` for parts `≥ 2` in any order; the word is
    /// normal ordered.
    pub fn monomial(c: Rational, parts: &[i64]) -> Self {
        let mut sorted = parts.to_vec();
        sorted.sort_unstable();
        let mut v = Self::zero(c);
        v.terms.insert(Partition::empty(), Rational::one());
        // apply right to left: the smallest part is next to |0⟩
        for n in sorted {
            v = v.apply_mode(-n);
        }
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, Rational)>>(c: Rational, terms: I) -> Self {
        let mut v = Self::zero(c);
        for (lam, x) in terms {
            v.add_term(lam, &x);
        }
        v
    }

    pub fn central_charge(&self) -> &Rational {
        &self.c
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lam: &Partition) -> Rational {
        self.terms.get(lam).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms, if there is one.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Partition::weight);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    fn add_term(&mut self, lam: Partition, x: &Rational) {
        if x.is_zero() {
            return;
        }
        let e = self.terms.entry(lam.clone()).or_insert_with(Rational::zero);
        *e += x;
        if e.is_zero() {
            self.terms.remove(&lam);
        }
    }

    pub fn add(&self, other: &VirVector) -> VirVector {
        assert_eq!(self.c, other.c, "central charges differ");
        let mut out = self.clone();
        for (lam, x) in &other.terms {
            out.add_term(lam.clone(), x);
        }
        out
    }

    pub fn scale(&self, x: &Rational) -> VirVector {
        let mut out = Self::zero(self.c.clone());
        for (lam, y) in &self.terms {
            out.add_term(lam.clone(), &(x * y));
        }
        out
    }

    pub fn sub(&self, other: &VirVector) -> VirVector {
        self.add(&other.scale(&-Rational::one()))
    }

    /// `L_m v`, normal ordered with the Virasoro bracket and `C = c`.
    pub fn apply_mode(&self, m: i64) -> VirVector {
        ModeApplier::new(self.c.clone()).apply_vector(m, self)
    }

    /// Apply `L_{m_k}···L_{m_1}`: the word is applied right to left.
    pub fn apply_word(&self, word: &[i64]) -> VirVector {
        let mut ap = ModeApplier::new(self.c.clone());
        word.iter().rev().fold(self.clone(), |v, m| ap.apply_vector(*m, &v))
    }

    /// Largest `p` with `v ∈ F_p`, i.e. the minimum of `deg − 2·length` over
    /// the monomials (`None` for zero).
    pub fn filtration_level(&self) -> Option<i64> {
        self.terms.keys().map(|l| l.weight() - 2 * l.len() as i64).min()
    }

    /// Coordinates in the degree-`d` PBW basis.
    fn coords(&self, index: &HashMap<Partition, usize>) -> BTreeMap<usize, Rational> {
        self.terms
            .iter()
            .map(|(l, x)| (*index.get(l).expect("monomial of the right degree"), x.clone()))
            .collect()
    }

    pub fn to_json(&self) -> VirVectorJson {
        let poly = DiffPoly::from_terms(self.terms.iter().map(|(l, x)| (l.clone(), x.clone())));
        let j = poly.to_json();
        VirVectorJson { c: rational::format(&self.c), weight: j.weight, terms: j.terms }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serialisable")
    }

    pub fn from_json_str(s: &str) -> Result<VirVector> {
        let j: VirVectorJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_vector()
    }
}

/// `{"c": "1/2", "weight": d, "terms": [[[5,2,2], "1/6"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VirVectorJson {
    pub c: String,
    pub weight: Option<i64>,
    pub terms: Vec<(Vec<i64>, String)>,
}

impl VirVectorJson {
    pub fn to_vector(&self) -> Result<VirVector> {
        let c = rational::parse(&self.c)?;
        let poly = DiffPolyJson { weight: self.weight, terms: self.terms.clone() }.to_poly()?;
        Ok(VirVector::from_terms(c, poly.terms().map(|(l, x)| (l.clone(), x.clone()))))
    }
}

impl fmt::Display for VirVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = DiffPoly::from_terms(self.terms.iter().map(|(l, x)| (l.clone(), x.clone())));
        write!(f, "({poly})|0>")
    }
}

type Terms = Vec<(Vec<i64>, Rational)>;

/// Memoised normal ordering of `L_m L_{-n_1}···L_{-n_k}|0⟩`.
struct ModeApplier {
    c: Rational,
    memo: HashMap<(i64, Vec<i64>), Terms>,
}

impl ModeApplier {
    fn new(c: Rational) -> Self {
        ModeApplier { c, memo: HashMap::new() }
    }

    fn apply_vector(&mut self, m: i64, v: &VirVector) -> VirVector {
        let mut out = VirVector::zero(self.c.clone());
        for (lam, x) in &v.terms {
            for (parts, y) in self.apply(m, lam.parts()) {
                out.add_term(Partition::new(parts).expect("parts at least 2"), &(x * y));
            }
        }
        out
    }

    fn apply(&mut self, m: i64, parts: &[i64]) -> Terms {
        let key = (m, parts.to_vec());
        if let Some(t) = self.memo.get(&key) {
            return t.clone();
        }
        let out = self.compute(m, parts);
        self.memo.insert(key, out.clone());
        out
    }

    fn compute(&mut self, m: i64, parts: &[i64]) -> Terms {
        let w: i64 = parts.iter().sum();
        if parts.is_empty() {
            // L_n|0⟩ = 0 for n ≥ −1
            return if m <= -2 { vec![(vec![-m], Rational::one())] } else { Vec::new() };
        }
        if m > w {
            return Vec::new();
        }
        if m == 0 {
            return vec![(parts.to_vec(), int(w))];
        }
        let n1 = parts[0];
        if m < 0 && -m >= n1 {
            let mut p = vec![-m];
            p.extend_from_slice(parts);
            return vec![(p, Rational::one())];
        }
        // L_m L_{-n1} R = L_{-n1} L_m R + (m + n1) L_{m-n1} R + δ_{m,n1} (m³−m)/12 · c · R
        let rest = &parts[1..];
        let mut acc: HashMap<Vec<i64>, Rational> = HashMap::new();
        let push = |acc: &mut HashMap<Vec<i64>, Rational>, p: Vec<i64>, x: Rational| {
            let e = acc.entry(p).or_insert_with(Rational::zero);
            *e += x;
        };
        for (t, x) in self.apply(m, rest) {
            for (p, y) in self.apply(-n1, &t) {
                push(&mut acc, p, &x * y);
            }
        }
        if m + n1 != 0 {
            for (p, y) in self.apply(m - n1, rest) {
                push(&mut acc, p, int(m + n1) * y);
            }
        }
        if m == n1 {
            let central = frac(m * m * m - m, 12) * &self.c;
            push(&mut acc, rest.to_vec(), central);
        }
        let mut out: Terms = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Whether `L_m v = 0` for every listed `m`.
pub fn singular_vector_check(v: &VirVector, positive_modes: &[i64]) -> bool {
    positive_modes.iter().all(|m| v.apply_mode(*m).is_zero())
}

/// PBW basis of degree `d` and its index.
fn basis(d: i64) -> (Vec<Partition>, HashMap<Partition, usize>) {
    let b = partitions_of(d, 2);
    let idx = b.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
    (b, idx)
}

/// The singular vector of degree `(p−1)(p'−1)` at `c_{p,p'}`: the nullspace
/// of the stacked `L_1`, `L_2` matrices, scaled so the grevlex-largest PBW
/// coefficient is 1.
pub fn solve_singular_vector(label: MinimalModelLabel) -> Result<VirVector> {
    let c = label.central_charge();
    let d = (label.p() - 1) * (label.p_prime() - 1);
    let (cols, _) = basis(d);
    let images: Vec<(VirVector, VirVector)> = cols
        .iter()
        .map(|l| {
            let v = VirVector::monomial(c.clone(), l.parts());
            (v.apply_mode(1), v.apply_mode(2))
        })
        .collect();
    let mut rows: Matrix = Vec::new();
    for (shift, pick) in [(1, 0usize), (2, 1)] {
        let (targets, _) = basis(d - shift);
        for t in &targets {
            rows.push(
                images
                    .iter()
                    .map(|im| if pick == 0 { im.0.coeff(t) } else { im.1.coeff(t) })
                    .collect(),
            );
        }
    }
    let ns = if rows.is_empty() {
        vec![vec![Rational::one(); cols.len()]]
    } else {
        nullspace(&rows, cols.len())
    };
    match ns.len() {
        0 => Err(Error::NoSolution),
        1 => {
            let v = VirVector::from_terms(c, cols.into_iter().zip(ns[0].iter().cloned()));
            let lead = v.terms().next_back().map(|(_, x)| x.clone()).ok_or(Error::NoSolution)?;
            Ok(v.scale(&lead.recip()))
        }
        k => Err(Error::NonUniqueSolution(k)),
    }
}

/// The printed degree-6 singular vector at `c = 1/2`, read with `|0⟩` on
/// every term.
pub fn printed_v34() -> VirVector {
    let c = frac(1, 2);
    VirVector::from_terms(
        c,
        [
            (Partition::new(vec![2, 2, 2]).expect("valid"), int(1)),
            (Partition::new(vec![3, 3]).expect("valid"), frac(93, 64)),
            (Partition::new(vec![6]).expect("valid"), frac(-27, 16)),
            (Partition::new(vec![4, 2]).expect("valid"), frac(-33, 8)),
        ],
    )
}

/// Degree-`d` slice of the submodule generated by the singular vector `v`
/// (degree `D`): spanned by `L_{-μ} v` over partitions `μ` of `d − D` with
/// parts `≥ 1`, since `v` is annihilated by the positive modes.
pub fn submodule_slice(v: &VirVector, d: i64) -> EchelonBasis {
    let mut out = EchelonBasis::new();
    let Some(dv) = v.degree() else {
        return out;
    };
    if d < dv {
        return out;
    }
    let (_, idx) = basis(d);
    let mut ap = ModeApplier::new(v.c.clone());
    for mu in partitions_of(d - dv, 1) {
        // the smallest part acts first
        let w = mu.parts().iter().rev().fold(v.clone(), |acc, n| ap.apply_vector(-n, &acc));
        if !w.is_zero() {
            out.insert_rational(&w.coords(&idx));
        }
    }
    out
}

/// `dim (Vir^c / ⟨v_{p,p'}⟩)_n` for `0 ≤ n ≤ N`.
pub fn quotient_graded_dims(label: MinimalModelLabel, n: i64) -> Result<Vec<u64>> {
    let v = solve_singular_vector(label)?;
    let counts = partition_counts((n + 1).max(0) as usize, 2);
    Ok((0..=n)
        .map(|d| counts[d as usize] - submodule_slice(&v, d).rank() as u64)
        .collect())
}

/// The singular vector, its annihilation, the printed coefficients and the
/// graded dimensions of the Ising quotient against the character.
pub fn singular_vector_report(n: i64) -> Result<Report> {
    let label = MinimalModelLabel::ising();
    let mut report = Report::new("Ising singular vector and quotient dimensions", format!("degree <= {n}"));
    let v = solve_singular_vector(label)?;
    report.push("solved vector", v.degree() == Some(6), v.to_string());
    report.push(
        "annihilated by L_1 and L_2",
        singular_vector_check(&v, &[1, 2]),
        "exact".to_string(),
    );
    let printed = printed_v34();
    let same = printed == v;
    report.push(
        "printed coefficients {1, 93/64, -27/16, -33/8}",
        same,
        if same { "match".to_string() } else { format!("printed {printed}, solved {v}") },
    );
    let dims = quotient_graded_dims(label, n)?;
    let chi = feigin_fuchs_character(label, n + 1);
    let want: Vec<i64> = chi.int_coeffs((n + 1) as usize);
    let got: Vec<i64> = dims.iter().map(|x| *x as i64).collect();
    report.push(
        "graded dimensions equal the character",
        got == want,
        format!("{got:?}"),
    );
    Ok(report)
}

/// `w + (256/429) L_{-3}v − (64/429) L_{-1}L_{-2}v − (31/286) L_{-1}^3 v`,
/// with `w = L_{-5}L_{-2}^2 + 6 L_{-4}L_{-3}L_{-2}`.
pub fn lemma_b_combination() -> Result<VirVector> {
    let v = solve_singular_vector(MinimalModelLabel::ising())?;
    let c = frac(1, 2);
    let w = VirVector::monomial(c.clone(), &[5, 2, 2]).add(&VirVector::monomial(c, &[4, 3, 2]).scale(&int(6)));
    Ok(w
        .add(&v.apply_word(&[-3]).scale(&frac(256, 429)))
        .sub(&v.apply_word(&[-1, -2]).scale(&frac(64, 429)))
        .sub(&v.apply_word(&[-1, -1, -1]).scale(&frac(31, 286))))
}

/// The displayed right-hand side.
pub fn lemma_b_rhs() -> VirVector {
    let c = frac(1, 2);
    let m = |p: &[i64], x: Rational| (Partition::new(p.to_vec()).expect("valid"), x);
    VirVector::from_terms(
        c,
        [
            m(&[6, 3], frac(27, 8)),
            m(&[7, 2], frac(87, 4)),
            m(&[9], frac(147, 32)),
            m(&[5, 4], frac(-45, 16)),
        ],
    )
}

pub fn lemma_b_check() -> Result<Report> {
    let mut report = Report::new("degree-9 kernel identity at c = 1/2", "exact");
    let lhs = lemma_b_combination()?;
    let rhs = lemma_b_rhs();
    report.push("combination equals the displayed vector", lhs == rhs, lhs.to_string());
    let long = lhs.terms().filter(|(l, _)| l.len() >= 3).count();
    report.push("no PBW components of length 3", long == 0, format!("{long} such terms"));
    report.push(
        "combination lies in F_5",
        lhs.filtration_level().is_some_and(|p| p >= 5),
        format!("level {:?}", lhs.filtration_level()),
    );
    let w = VirVector::monomial(frac(1, 2), &[5, 2, 2]).add(&VirVector::monomial(frac(1, 2), &[4, 3, 2]).scale(&int(6)));
    report.push(
        "w alone has length-3 components",
        w.terms().any(|(l, _)| l.len() == 3),
        format!("level {:?}", w.filtration_level()),
    );
    Ok(report)
}

/// For `Vir_{3,p'}`: the kernel of `C[L]/(L_{-2}^{p'-1})_∂ → gr Vir_{3,p'}`
/// vanishes below weight `2p'+1` and is one-dimensional there, and
/// `b^{(p')}` is a nonzero class whose PBW lift lies in `F_4 + ⟨v⟩`.
pub fn lemma_bp_check(p_prime: i64) -> Result<Report> {
    let label = MinimalModelLabel::new(3, p_prime)?;
    if p_prime < 4 {
        return Err(Error::InvalidArgument(format!("p' = {p_prime} is below 4")));
    }
    let d = 2 * p_prime + 1;
    let mut report = Report::new(format!("kernel lemma for (3,{p_prime})"), format!("weight <= {d}"));
    let power = gen_power((p_prime - 1) as usize);
    let arc = hilbert_quotient(std::slice::from_ref(&power), d)?;
    let vir = quotient_graded_dims(label, d)?;
    let kernel: Vec<i64> = (0..=d)
        .map(|n| {
            let a = arc.coeff_int(n).unwrap_or_else(Rational::zero);
            let a: i64 = a.to_integer().try_into().expect("small");
            a - vir[n as usize] as i64
        })
        .collect();
    report.push(
        format!("kernel vanishes below weight {d}"),
        kernel[..d as usize].iter().all(|k| *k == 0),
        format!("{:?}", &kernel[..d as usize]),
    );
    report.push(format!("kernel at weight {d} is one-dimensional"), kernel[d as usize] == 1, kernel[d as usize].to_string());

    let b = gen_b_general(p_prime);
    let in_ideal = crate::diffalg::membership(&b, std::slice::from_ref(&power))?;
    report.push("b is nonzero modulo the power", !in_ideal, format!("b = {b}"));

    // lift b to Vir^c and test membership in span(⟨v⟩_d ∪ F_4)
    let v = solve_singular_vector(label)?;
    let (cols, idx) = basis(d);
    let mut span = submodule_slice(&v, d);
    for (i, l) in cols.iter().enumerate() {
        if 2 * (l.len() as i64) <= d - 4 {
            let mut e = BTreeMap::new();
            e.insert(i, Rational::one());
            span.insert_rational(&e);
        }
    }
    let lift = VirVector::from_terms(v.c.clone(), b.terms().map(|(l, x)| (l.clone(), x.clone())));
    let maps_to_zero = span.contains_rational(&lift.coords(&idx));
    report.push("symbol of b maps to zero", maps_to_zero, "lift lies in F_4 + <v>".to_string());
    Ok(report)
}
