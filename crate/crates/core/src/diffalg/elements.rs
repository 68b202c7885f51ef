//! The explicit elements of `I = (a, b)_∂` whose leading monomials realise
//! every forbidden pattern, the top-term formulas for `∂^{(n)}a` and
//! `∂^{(n)}b`, and the degreewise Gröbner check.
//!
//! Elements are built as [`IdealExpr`] certificates, i.e. explicit sums
//! `Σ c · L_μ · ∂^{(j)} g` with `g ∈ {a, b}`, so membership in `I` holds by
//! construction at every weight; at small weights it is re-checked against
//! the row-reduced slice.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use super::slice::{hilbert_quotient, ideal_slice, GradedIdealSlice};
use super::{gen_a, gen_b, gen_b_general, gen_power, DiffPoly};
use crate::characters::{feigin_fuchs_character, MinimalModelLabel};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition, EXCEPTIONAL, FAMILIES};
use crate::rational::{self, frac, int, Rational};
use crate::report::Report;

/// One of the two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
}

/// `Σ c · L_μ · ∂^{(j)} g`, keyed by `(μ, g, j)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IdealExpr {
    terms: BTreeMap<(Partition, Gen, usize), Rational>,
}

impl IdealExpr {
    pub fn derivative(g: Gen, j: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((Partition::empty(), g, j), Rational::one());
        IdealExpr { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Partition, Gen, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &IdealExpr) -> IdealExpr {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            let e = out.terms.entry(key.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(key);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> IdealExpr {
        if c.is_zero() {
            return IdealExpr::default();
        }
        IdealExpr {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn sub(&self, other: &IdealExpr) -> IdealExpr {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Multiply by `L_{-n_1}···L_{-n_r}`.
    pub fn times(&self, parts: &[i64]) -> IdealExpr {
        let mu = Partition::new(parts.to_vec()).expect("parts at least 2");
        IdealExpr {
            terms: self
                .terms
                .iter()
                .map(|((m, g, j), c)| ((m.union(&mu), *g, *j), c.clone()))
                .collect(),
        }
    }

    /// Largest derivative order used on each generator.
    fn max_order(&self, g: Gen) -> Option<usize> {
        self.terms.keys().filter(|(_, h, _)| *h == g).map(|(_, _, j)| *j).max()
    }
}

/// Generators with cached divided derivatives.
#[derive(Clone, Debug)]
pub struct ElementBuilder {
    a: Vec<DiffPoly>,
    b: Vec<DiffPoly>,
}

impl Default for ElementBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl ElementBuilder {
    /// `a` and `6b`: the top-term formulas and the element coefficients are
    /// stated for `b` scaled by 6 (same ideal, different normalisation).
    pub fn new() -> Self {
        Self::with_generators(gen_a(), gen_b().scale(&int(6)))
    }

    pub fn with_generators(a: DiffPoly, b: DiffPoly) -> Self {
        ElementBuilder { a: vec![a], b: vec![b] }
    }

    /// `∂^{(j)} g`, extending the cache by `f_{i+1} = ∂f_i / (i + 1)`.
    pub fn derivative(&mut self, g: Gen, j: usize) -> &DiffPoly {
        let cache = match g {
            Gen::A => &mut self.a,
            Gen::B => &mut self.b,
        };
        while cache.len() <= j {
            let i = cache.len();
            let next = cache[i - 1].derive().scale(&frac(1, i as i64));
            cache.push(next);
        }
        &cache[j]
    }

    pub fn generator(&self, g: Gen) -> &DiffPoly {
        match g {
            Gen::A => &self.a[0],
            Gen::B => &self.b[0],
        }
    }

    pub fn eval(&mut self, e: &IdealExpr) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for ((mu, g, j), c) in e.terms() {
            for (lam, x) in self.derivative(*g, *j).clone().terms() {
                out.add_term(lam.union(mu), &(x * c));
            }
        }
        out
    }

    /// As [`eval`](Self::eval) but through the closed form for `∂^{(j)}`.
    pub fn eval_closed(&self, e: &IdealExpr) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for ((mu, g, j), c) in e.terms() {
            let d = self.generator(*g).divided_derivative_closed(*j);
            for (lam, x) in d.terms() {
                out.add_term(lam.union(mu), &(x * c));
            }
        }
        out
    }
}

/// The element families of the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementName {
    R,
    S,
    T,
    U,
    V,
    W,
    Y,
    Z,
    E1,
    E2,
    E3,
    E4,
}

impl ElementName {
    pub const ALL: [ElementName; 12] = [
        ElementName::R,
        ElementName::S,
        ElementName::T,
        ElementName::U,
        ElementName::V,
        ElementName::W,
        ElementName::Y,
        ElementName::Z,
        ElementName::E1,
        ElementName::E2,
        ElementName::E3,
        ElementName::E4,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ElementName::R => "r",
            ElementName::S => "s",
            ElementName::T => "t",
            ElementName::U => "u",
            ElementName::V => "v",
            ElementName::W => "w",
            ElementName::Y => "y",
            ElementName::Z => "z",
            ElementName::E1 => "e1",
            ElementName::E2 => "e2",
            ElementName::E3 => "e3",
            ElementName::E4 => "e4",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown element {s:?}")))
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self, ElementName::E1 | ElementName::E2 | ElementName::E3 | ElementName::E4)
    }

    /// The leading monomial claimed for the `k`-th element.
    ///
    /// For `y` the claim is the one consistent with the weights,
    /// `[6+k, 5+k, 2+k, 2+k]`; the printed list gives the index-shifted
    /// `[8+k, 7+k, 4+k, 4+k]`, which is the leading monomial of `y_{k+2}`.
    pub fn claimed_leading(&self, k: i64) -> Partition {
        let p = |v: &[i64]| Partition::new(v.iter().map(|x| x + k).collect()).expect("valid");
        let e = |v: &[i64]| Partition::new(v.to_vec()).expect("valid");
        match self {
            ElementName::R => p(&[4, 4, 2]),
            ElementName::S => p(&[5, 3, 3]),
            ElementName::T => p(&[4, 3, 2]),
            ElementName::U => p(&[5, 5, 2, 2]),
            ElementName::V => p(&[6, 6, 3, 2]),
            ElementName::W => p(&[6, 5, 3, 2]),
            ElementName::Y => p(&[6, 5, 2, 2]),
            ElementName::Z => p(&[8, 7, 5, 3, 2]),
            ElementName::E1 => e(EXCEPTIONAL[0]),
            ElementName::E2 => e(EXCEPTIONAL[1]),
            ElementName::E3 => e(EXCEPTIONAL[2]),
            ElementName::E4 => e(EXCEPTIONAL[3]),
        }
    }
}

impl fmt::Display for ElementName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `Σ c_i k^i`, coefficients from the constant term up.
fn poly(k: i64, coeffs: &[i64]) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * int(k) + int(*c))
}

fn da(j: i64) -> IdealExpr {
    IdealExpr::derivative(Gen::A, j as usize)
}

fn db(j: i64) -> IdealExpr {
    IdealExpr::derivative(Gen::B, j as usize)
}

fn r(k: i64) -> IdealExpr {
    db(3 * k + 1).sub(&da(3 * k + 4).scale(&(poly(k, &[12, 48, 55, 19]) / int(6))))
}

fn s(k: i64) -> IdealExpr {
    db(3 * k + 2).sub(&da(3 * k + 5).scale(&(poly(k, &[36, 91, 74, 19]) / int(6))))
}

fn t(k: i64) -> IdealExpr {
    db(3 * k).sub(&da(3 * k + 3).scale(&(poly(k, &[0, 17, 36, 19]) / int(6))))
}

fn u(k: i64) -> IdealExpr {
    if k == 0 {
        return t(0).times(&[5]).scale(&int(8)).sub(&t(1).times(&[2]).scale(&int(6)));
    }
    let m = k - 1;
    t(m + 1)
        .times(&[6 + m])
        .scale(&int(2 * m + 10))
        .sub(&t(m + 2).times(&[3 + m]).scale(&int(2 * m + 8)))
        .sub(&da(3 * m + 10).times(&[2 + m]).scale(&frac((2 * m + 10) * (3 * m + 20), 3)))
}

fn v(k: i64) -> IdealExpr {
    t(k + 2)
        .times(&[2 + k])
        .scale(&poly(k, &[9426, 3061, 318, 11]))
        .sub(&s(k).times(&[6 + k]).scale(&poly(k, &[370, 349, 90, 7])))
        .sub(&s(k + 1).times(&[3 + k]).scale(&poly(k, &[1745, 1029, 191, 11])))
        .sub(&r(k + 1).times(&[4 + k]).scale(&(int(8) * poly(k, &[255, 121, 19, 1]))))
        .add(&da(3 * k + 5).times(&[6 + k]).scale(&(poly(k, &[13690, 14763, 5075, 709, 35]) / int(3))))
        .add(&da(3 * k + 8).times(&[3 + k]).scale(&(poly(k, &[1785, 1102, 254, 26, 1]) * frac(8, 3))))
}

fn w(k: i64) -> IdealExpr {
    r(k).times(&[6 + k])
        .scale(&int(k + 2))
        .sub(&s(k + 1).times(&[2 + k]).scale(&int(k + 6)))
}

fn y(k: i64) -> IdealExpr {
    match k {
        0 => r(0)
            .times(&[5])
            .scale(&int(42))
            .sub(&da(7).times(&[2]).scale(&int(84)))
            .sub(&r(1).times(&[2]).scale(&int(12)))
            .add(&t(0).times(&[6]).scale(&int(108))),
        1 => r(1)
            .times(&[6])
            .scale(&int(-640))
            .add(&r(2).times(&[3]).scale(&int(2584)))
            .sub(&s(1).times(&[5]).scale(&int(4480)))
            .add(&s(2).times(&[2]).scale(&frac(81856, 3)))
            .add(&t(1).times(&[7]).scale(&int(1216)))
            .sub(&t(2).times(&[4]).scale(&int(10304)))
            .add(&da(6).times(&[7]).scale(&int(72128)))
            .add(&da(7).times(&[6]).scale(&frac(112000, 3))),
        _ => {
            let k = k - 2;
            r(k + 2)
                .times(&[7 + k])
                .scale(&(int(2) * poly(k, &[-810, -657, -189, -23, -1])))
                .add(&r(k + 3).times(&[4 + k]).scale(&poly(k, &[1360, -2198, -1129, -162, -7])))
                .sub(&s(k + 2).times(&[6 + k]).scale(&(int(4) * poly(k, &[2160, 1302, 289, 28, 1]))))
                .add(
                    &s(k + 3)
                        .times(&[3 + k])
                        .scale(&(int(16) * poly(k, &[16600, 14962, 3849, 384, 13]) / int(k + 4))),
                )
                .sub(&t(k + 2).times(&[8 + k]).scale(&poly(k, &[4880, 7850, 1911, 162, 5])))
                .sub(&t(k + 3).times(&[5 + k]).scale(&poly(k, &[19080, 10841, 2265, 207, 7])))
                .add(&da(3 * k + 9).times(&[8 + k]).scale(&poly(k, &[190800, 165650, 55173, 8865, 691, 21])))
                .sub(&da(3 * k + 15).times(&[2 + k]).scale(&(int(2) * poly(k, &[62640, 37218, 8393, 901, 47, 1]))))
                .add(
                    &da(3 * k + 10)
                        .times(&[7 + k])
                        .scale(&(poly(k, &[127440, 96258, 28769, 4253, 311, 9]) * frac(2, 3))),
                )
        }
    }
}

fn z(k: i64) -> IdealExpr {
    y(k + 2)
        .times(&[2 + k])
        .scale(&int(k + 6))
        .sub(&r(k).times(&[8 + k, 7 + k]).scale(&(int(32) * poly(k, &[27440, 14184, 2427, 165, 4]))))
}

fn e1() -> IdealExpr {
    s(0).times(&[2]).scale(&int(3)).sub(&da(2).times(&[5]))
}

fn e2() -> IdealExpr {
    y(0).times(&[6])
        .add(&da(11).times(&[2, 2]).scale(&int(384)))
        .sub(&s(2).times(&[2, 2]).scale(&int(832)))
        .sub(&u(0).times(&[7]).scale(&int(12)))
}

fn e3() -> IdealExpr {
    w(1).times(&[2])
        .scale(&int(432))
        .add(&db(0).times(&[7, 6]).scale(&int(11520)))
        .add(&y(0).times(&[7]).scale(&int(73)))
        .add(&da(2).times(&[7, 7]).scale(&int(53088)))
}

fn e4() -> IdealExpr {
    u(0).times(&[9, 8])
        .add(&da(2).times(&[9, 8, 6]).scale(&int(8)))
        .add(&y(3).times(&[2, 2]).scale(&frac(112, 1415040)))
}

/// The certificate of the `k`-th element of a family (`k` is ignored for
/// the exceptional elements).
pub fn element_expr(name: ElementName, k: i64) -> Result<IdealExpr> {
    if k < 0 {
        return Err(Error::InvalidArgument(format!("index {k} is negative")));
    }
    Ok(match name {
        ElementName::R => r(k),
        ElementName::S => s(k),
        ElementName::T => t(k),
        ElementName::U => u(k),
        ElementName::V => v(k),
        ElementName::W => w(k),
        ElementName::Y => y(k),
        ElementName::Z => z(k),
        ElementName::E1 => e1(),
        ElementName::E2 => e2(),
        ElementName::E3 => e3(),
        ElementName::E4 => e4(),
    })
}

/// The element as a polynomial, exactly as printed.
pub fn build_element(name: ElementName, k: i64) -> Result<DiffPoly> {
    let e = element_expr(name, k)?;
    Ok(ElementBuilder::new().eval(&e))
}

/// One listed top term: offsets of the monomial (shifted by `k`) and the
/// coefficient `(Σ c_i k^i) / divisor`.
struct TopTerm {
    offsets: &'static [i64],
    coeffs: &'static [i64],
    divisor: i64,
}

const fn tt(offsets: &'static [i64], coeffs: &'static [i64], divisor: i64) -> TopTerm {
    TopTerm { offsets, coeffs, divisor }
}

/// `(generator, order = 3k + shift, terms)`, terms in decreasing grevlex
/// order as printed.
const FORMULAS: &[(Gen, i64, &str, &[TopTerm])] = &[
    (
        Gen::A,
        9,
        "d^(3k+9) a",
        &[
            tt(&[5, 5, 5], &[1], 1),
            tt(&[6, 5, 4], &[6], 1),
            tt(&[6, 6, 3], &[3], 1),
            tt(&[7, 4, 4], &[3], 1),
            tt(&[7, 5, 3], &[6], 1),
            tt(&[7, 6, 2], &[6], 1),
        ],
    ),
    (
        Gen::A,
        10,
        "d^(3k+10) a",
        &[
            tt(&[6, 5, 5], &[3], 1),
            tt(&[6, 6, 4], &[3], 1),
            tt(&[7, 5, 4], &[6], 1),
            tt(&[7, 6, 3], &[6], 1),
            tt(&[7, 7, 2], &[3], 1),
            tt(&[8, 4, 4], &[3], 1),
            tt(&[8, 5, 3], &[6], 1),
            tt(&[8, 6, 2], &[6], 1),
        ],
    ),
    (
        Gen::A,
        11,
        "d^(3k+11) a",
        &[
            tt(&[6, 6, 5], &[3], 1),
            tt(&[7, 5, 5], &[3], 1),
            tt(&[7, 6, 4], &[6], 1),
            tt(&[7, 7, 3], &[3], 1),
            tt(&[8, 5, 4], &[6], 1),
            tt(&[8, 6, 3], &[6], 1),
            tt(&[8, 7, 2], &[6], 1),
        ],
    ),
    (
        Gen::B,
        6,
        "d^(3k+6) b",
        &[
            tt(&[5, 5, 5], &[330, 389, 150, 19], 6),
            tt(&[6, 5, 4], &[340, 391, 150, 19], 1),
            tt(&[6, 6, 3], &[376, 395, 150, 19], 2),
            tt(&[7, 4, 4], &[344, 395, 150, 19], 2),
            tt(&[7, 5, 3], &[370, 397, 150, 19], 1),
            tt(&[7, 6, 2], &[448, 403, 150, 19], 1),
        ],
    ),
    (
        Gen::B,
        7,
        "d^(3k+7) b",
        &[
            tt(&[6, 5, 5], &[480, 496, 169, 19], 2),
            tt(&[6, 6, 4], &[496, 498, 169, 19], 2),
            tt(&[7, 5, 4], &[496, 500, 169, 19], 1),
            tt(&[7, 6, 3], &[544, 504, 169, 19], 1),
            tt(&[7, 7, 2], &[640, 512, 169, 19], 2),
            tt(&[8, 4, 4], &[496, 506, 169, 19], 2),
            tt(&[8, 5, 3], &[528, 508, 169, 19], 1),
            tt(&[8, 6, 2], &[624, 514, 169, 19], 1),
        ],
    ),
    (
        Gen::B,
        8,
        "d^(3k+8) b",
        &[
            tt(&[6, 6, 5], &[666, 615, 188, 19], 2),
            tt(&[7, 5, 5], &[672, 617, 188, 19], 2),
            tt(&[7, 6, 4], &[694, 619, 188, 19], 1),
            tt(&[7, 7, 3], &[760, 625, 188, 19], 2),
            tt(&[8, 5, 4], &[690, 623, 188, 19], 1),
            tt(&[8, 6, 3], &[750, 627, 188, 19], 1),
            tt(&[8, 7, 2], &[870, 635, 188, 19], 1),
        ],
    ),
];

/// Checks the printed top terms of `∂^{(3k+9..11)}a` and `∂^{(3k+6..8)}b`
/// for `0 ≤ k ≤ k_max`: each listed monomial carries the stated coefficient
/// and every other monomial is smaller than all listed ones.
pub fn verify_derivative_formulas(k_max: i64) -> Report {
    let mut report = Report::new("derivative top-term formulas", format!("k <= {k_max}"));
    let mut builder = ElementBuilder::new();
    for k in 0..=k_max {
        for (g, shift, label, terms) in FORMULAS {
            let f = builder.derivative(*g, (3 * k + shift) as usize).clone();
            let mut bad = Vec::new();
            for term in terms.iter() {
                let lam = Partition::new(term.offsets.iter().map(|o| o + k).collect())
                    .expect("valid");
                let want = poly(k, term.coeffs) / int(term.divisor);
                let got = f.coeff(&lam);
                if got != want {
                    bad.push(format!(
                        "{lam}: {} vs printed {}",
                        rational::format(&got),
                        rational::format(&want)
                    ));
                }
            }
            // the top terms of f are exactly the listed ones
            let top: BTreeSet<Partition> = f.terms().rev().take(terms.len()).map(|(l, _)| l.clone()).collect();
            let listed: BTreeSet<Partition> = terms
                .iter()
                .map(|t| Partition::new(t.offsets.iter().map(|o| o + k).collect()).expect("valid"))
                .collect();
            if top != listed {
                bad.push("listed monomials are not the top terms".to_string());
            }
            let detail = if bad.is_empty() {
                format!("{} top terms match", terms.len())
            } else {
                bad.join("; ")
            };
            report.push(format!("{label}, k = {k}"), bad.is_empty(), detail);
        }
    }
    report.note("b-coefficients are those of d^(n)(6b); for b itself divide by 6");
    report
}

#[derive(Clone, Debug)]
pub struct ElementCheckOptions {
    /// Largest family index.
    pub k_max: i64,
    /// Elements of weight at most this are also checked against the
    /// row-reduced slice of `I`.
    pub slice_limit: i64,
}

impl Default for ElementCheckOptions {
    fn default() -> Self {
        ElementCheckOptions { k_max: 5, slice_limit: 31 }
    }
}

/// What realises one pattern.
#[derive(Clone, Debug)]
enum Witness {
    /// `∂^{(j)} a`.
    Derivative(usize),
    Element(ElementName, i64),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Derivative(j) => write!(f, "d^({j}) a"),
            Witness::Element(n, _) if n.is_exceptional() => write!(f, "{n}"),
            Witness::Element(n, k) => write!(f, "{n}_{k}"),
        }
    }
}

/// Witness for family `f` (an index into [`FAMILIES`]) at element index `k`.
fn family_witness(f: usize, k: i64) -> Witness {
    use ElementName::*;
    match FAMILIES[f].offsets {
        [0, 0, 0] => Witness::Derivative(3 * k as usize),
        [1, 0, 0] => Witness::Derivative(3 * k as usize + 1),
        [1, 1, 0] => Witness::Derivative(3 * k as usize + 2),
        [2, 1, 0] => Witness::Element(T, k),
        [2, 2, 0] => Witness::Element(R, k),
        [2, 0, 0] => Witness::Element(S, k),
        [3, 3, 0, 0] => Witness::Element(U, k),
        [4, 3, 0, 0] => Witness::Element(Y, k),
        [4, 3, 1, 0] => Witness::Element(W, k),
        [4, 4, 1, 0] => Witness::Element(V, k),
        [6, 5, 3, 1, 0] => Witness::Element(Z, k),
        other => unreachable!("no witness for offsets {other:?}"),
    }
}

/// Slices of `I = (a, b)_∂`, computed on demand.
#[derive(Default)]
struct SliceCache {
    slices: HashMap<i64, GradedIdealSlice>,
}

impl SliceCache {
    fn get(&mut self, d: i64) -> Result<&GradedIdealSlice> {
        if !self.slices.contains_key(&d) {
            let s = ideal_slice(&[gen_a(), gen_b()], d)?;
            self.slices.insert(d, s);
        }
        Ok(&self.slices[&d])
    }
}

/// For every pattern family at element index `k ≤ k_max`, and the four
/// exceptional patterns, builds the witness element, checks its leading
/// monomial against the pattern and confirms membership in `I`.
pub fn element_check(opts: &ElementCheckOptions) -> Result<Report> {
    let mut report = Report::new(
        "leading monomials of ideal elements",
        format!("k <= {}, slice membership up to weight {}", opts.k_max, opts.slice_limit),
    );
    let mut builder = ElementBuilder::new();
    let mut cache = SliceCache::default();
    let mut jobs: Vec<(Partition, Witness)> = Vec::new();
    for (f, fam) in FAMILIES.iter().enumerate() {
        // s_k realises [p+2, p, p] at p = k + 3; the others at p = k + 2
        let shift = fam.p_min;
        for k in 0..=opts.k_max {
            jobs.push((fam.instance(k + shift), family_witness(f, k)));
        }
    }
    for (i, name) in [ElementName::E1, ElementName::E2, ElementName::E3, ElementName::E4]
        .into_iter()
        .enumerate()
    {
        jobs.push((Partition::new(EXCEPTIONAL[i].to_vec())?, Witness::Element(name, 0)));
    }

    let mut max_order = [0usize; 2];
    for (pattern, witness) in jobs {
        let expr = match &witness {
            Witness::Derivative(j) => IdealExpr::derivative(Gen::A, *j),
            Witness::Element(n, k) => element_expr(*n, *k)?,
        };
        for (i, g) in [Gen::A, Gen::B].into_iter().enumerate() {
            max_order[i] = max_order[i].max(expr.max_order(g).unwrap_or(0));
        }
        let f = builder.eval(&expr);
        let label = format!("{pattern} <- {witness}");
        let lm = match f.leading_monomial() {
            Ok(lm) => lm,
            Err(e) => {
                report.push(label, false, e.to_string());
                continue;
            }
        };
        let weight = pattern.weight();
        let mut detail = format!("weight {weight}, {} certificate terms", expr.len());
        let mut ok = f.is_homogeneous();
        if lm != pattern {
            ok = false;
            let err = Error::LeadingMonomialMismatch { expected: pattern.clone(), actual: lm };
            detail = format!("{detail}; {err}");
            if weight <= opts.slice_limit {
                let slice = cache.get(weight)?;
                let pivot = slice.index.position(&pattern).is_some_and(|i| slice.basis.has_pivot(i));
                detail = format!("{detail}; pattern is a leading monomial of I: {pivot}");
            }
        }
        if weight <= opts.slice_limit {
            let member = cache.get(weight)?.contains(&f)?;
            ok &= member;
            detail = format!("{detail}; slice membership {member}");
        } else {
            detail = format!("{detail}; membership by certificate");
        }
        report.push(label, ok, detail);
    }

    // the iterative and closed-form derivatives agree on every order used
    let mut agree = true;
    for (i, g) in [Gen::A, Gen::B].into_iter().enumerate() {
        for j in 0..=max_order[i] {
            let closed = builder.generator(g).divided_derivative_closed(j);
            agree &= *builder.derivative(g, j) == closed;
        }
    }
    report.push(
        "iterative and closed-form divided derivatives agree",
        agree,
        format!("orders up to {} on a and {} on b", max_order[0], max_order[1]),
    );

    report.absorb("in-ideal monomials", in_ideal_monomials(&mut builder, &mut cache, opts.slice_limit)?);
    report.note(
        "the printed leading monomial of y_k, [8+k,7+k,4+k,4+k], is that of y_{k+2}; \
         weights force [6+k,5+k,2+k,2+k] for y_k",
    );
    Ok(report)
}

/// The explicit combination equal to `L_{-5}L_{-4}L_{-2}^2`, and slice
/// membership of the exceptional monomials.
fn in_ideal_monomials(
    builder: &mut ElementBuilder,
    cache: &mut SliceCache,
    slice_limit: i64,
) -> Result<Report> {
    let mut report = Report::new("exceptional monomials in I", format!("weight <= {slice_limit}"));
    // plain derivatives: ∂²f = 2∂^{(2)}f
    let combo = db(2)
        .times(&[2])
        .scale(&int(6))
        .sub(&db(0).times(&[4]).scale(&int(18)))
        .sub(&da(2).times(&[5]).scale(&int(38)))
        .sub(&da(1).times(&[6]).scale(&int(88)))
        .sub(&da(0).times(&[7]).scale(&int(60)))
        .scale(&frac(1, 204));
    let lhs = builder.eval(&combo);
    let rhs = DiffPoly::l(&[5, 4, 2, 2]);
    report.push("explicit combination = L_-5*L_-4*L_-2^2", lhs == rhs, lhs.to_string());
    for (parts, claimed) in [
        (&[5i64, 4, 2, 2][..], true),
        (&[7, 6, 4, 2, 2][..], true),
        (&[7, 7, 4, 2, 2][..], false),
        (&[9, 8, 6, 4, 2, 2][..], true),
    ] {
        let m = DiffPoly::l(parts);
        let d = m.weight().expect("monomial");
        if d > slice_limit {
            report.note(format!("{m} above the slice limit, not checked"));
            continue;
        }
        let member = cache.get(d)?.contains(&m)?;
        if claimed {
            report.push(format!("{m} lies in I"), member, format!("slice at weight {d}"));
        } else {
            report.note(format!("{m} lies in I: {member}"));
        }
    }
    Ok(report)
}

/// Monomials of weight `d` divisible by one of `leads`.
pub fn closure_covers(leads: &[Partition], d: i64) -> BTreeSet<Partition> {
    partitions_of(d, 2)
        .into_iter()
        .filter(|m| leads.iter().any(|l| l.weight() <= d && m.contains(l)))
        .collect()
}

/// For each weight `6 ≤ d ≤ n`, compares the leading monomials of `I_d`
/// with the monomials divisible by a claimed leading monomial. The claimed
/// list includes `w_k`; monomials that only `w_k` accounts for are
/// reported separately.
pub fn groebner_check(n: i64) -> Result<Report> {
    let mut report = Report::new("degreewise Groebner property", format!("d <= {n}"));
    let mut claimed: Vec<Partition> = Vec::new();
    let mut without_w: Vec<Partition> = Vec::new();
    for fam in FAMILIES {
        let is_w = fam.offsets == [4, 3, 1, 0];
        for (_, lam) in fam.instances(n) {
            if !is_w {
                without_w.push(lam.clone());
            }
            claimed.push(lam);
        }
    }
    for e in EXCEPTIONAL {
        let lam = Partition::new(e.to_vec())?;
        if lam.weight() <= n {
            claimed.push(lam.clone());
            without_w.push(lam);
        }
    }
    let mut w_only = Vec::new();
    for d in 6..=n {
        let slice = ideal_slice(&[gen_a(), gen_b()], d)?;
        let pivots: BTreeSet<Partition> = slice.leading_monomials().into_iter().collect();
        let closure = closure_covers(&claimed, d);
        let partial = closure_covers(&without_w, d);
        w_only.extend(closure.difference(&partial).cloned());
        let extra: Vec<_> = pivots.difference(&closure).take(3).map(|p| p.to_string()).collect();
        let missing: Vec<_> = closure.difference(&pivots).take(3).map(|p| p.to_string()).collect();
        let ok = pivots == closure;
        let detail = if ok {
            format!("{} leading monomials", pivots.len())
        } else {
            format!("unexplained pivots {extra:?}, claimed but not pivots {missing:?}")
        };
        report.push(format!("d = {d}"), ok, detail);
    }
    if w_only.is_empty() {
        report.note("the list without w_k already generates every leading monomial");
    } else {
        let shown: Vec<String> = w_only.iter().take(8).map(|p| p.to_string()).collect();
        report.note(format!(
            "{} monomials are covered only by w_k, so the list without w_k is not a Groebner basis: {}{}",
            w_only.len(),
            shown.join(", "),
            if w_only.len() > shown.len() { ", ..." } else { "" }
        ));
    }
    Ok(report)
}

/// Hilbert series of `C[L_{-2},…] / (L_{-2}^4, b^{(5)})_∂` against the
/// `(3,5)` character up to weight `n`: the quotient must dominate, and the
/// first strict degree is reported.
pub fn three_five_gap_check(n: i64) -> Result<Report> {
    let mut report = Report::new("(3,5) analog: Hilbert series vs character", format!("q^{}", n + 1));
    let gens = [gen_power(4), gen_b_general(5)];
    let h = hilbert_quotient(&gens, n)?;
    let chi = feigin_fuchs_character(MinimalModelLabel::new(3, 5)?, n + 1);
    let mut first_gap = None;
    let mut dominated = true;
    for d in 0..=n {
        let hd = h.coeff_int(d).unwrap_or_else(Rational::zero);
        let cd = chi.coeff_int(d).unwrap_or_else(Rational::zero);
        if hd < cd {
            dominated = false;
            report.push(format!("q^{d}"), false, format!("quotient {hd} below character {cd}"));
        }
        if hd > cd && first_gap.is_none() {
            first_gap = Some((d, hd, cd));
        }
    }
    report.push("quotient dominates the character", dominated, format!("up to q^{n}"));
    match first_gap {
        Some((d, hd, cd)) => report.push(
            "first strict degree is at least 19",
            d >= 19,
            format!("first strict degree {d}: {hd} vs {cd}"),
        ),
        None => report.push("first strict degree is at least 19", true, format!("no gap up to q^{n}")),
    }
    Ok(report)
}

/// Weight of a family element, from its claimed leading monomial.
pub fn element_weight(name: ElementName, k: i64) -> i64 {
    name.claimed_leading(k).weight()
}
