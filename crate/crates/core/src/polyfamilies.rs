//! Finite polynomial families whose limits are the Ising module characters.
//!
//! `S` is the bosonic side (one q-binomial per term), `T` the
//! quasi-particle side (a product of two). Equality `S_n = T_n` for every `n`
//! implies the identities between the limiting characters.

use std::fmt;

use crate::characters::{self, AltForm, IsingModule, Side};
use crate::error::{Error, Result};
use crate::qseries::{IntPoly, QBinomialTable, QSeries, Trunc};
use crate::rational::frac;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sector {
    Vac,
    Half,
    Sixteenth,
}

impl Sector {
    pub const ALL: [Sector; 3] = [Sector::Vac, Sector::Half, Sector::Sixteenth];

    pub fn name(&self) -> &'static str {
        match self {
            Sector::Vac => "vac",
            Sector::Half => "half",
            Sector::Sixteenth => "sixteenth",
        }
    }

    pub fn parse(s: &str) -> Result<Sector> {
        Sector::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown sector '{s}'")))
    }

    /// Exponent offset of the module character relative to the family limit.
    fn offset(&self) -> (i64, i64) {
        match self {
            Sector::Half => (1, 2),
            _ => (0, 1),
        }
    }

    fn module(&self) -> IsingModule {
        match self {
            Sector::Vac => IsingModule::V0,
            Sector::Half => IsingModule::VHalf,
            Sector::Sixteenth => IsingModule::VSixteenth,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySide {
    S,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyId {
    pub sector: Sector,
    pub side: FamilySide,
}

impl FamilyId {
    pub fn new(sector: Sector, side: FamilySide) -> Self {
        FamilyId { sector, side }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            FamilySide::S => "S",
            FamilySide::T => "T",
        };
        match self.sector {
            Sector::Vac => write!(f, "{side}"),
            Sector::Half => write!(f, "{side}^(1/2)"),
            Sector::Sixteenth => write!(f, "{side}^(1/16)"),
        }
    }
}

/// Builds family members, sharing one q-binomial cache.
#[derive(Default)]
pub struct FamilyBuilder {
    binom: QBinomialTable,
}

impl FamilyBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn b(&mut self, m: i64, k: i64) -> IntPoly {
        self.binom.get(m, k).clone()
    }

    /// `q^e · [m1, k1] · [m2, k2]`, or zero when either binomial vanishes.
    fn pair(&mut self, e: i64, (m1, k1): (i64, i64), (m2, k2): (i64, i64)) -> IntPoly {
        let a = self.b(m1, k1);
        if a.is_zero() {
            return a;
        }
        let b = self.b(m2, k2);
        if b.is_zero() {
            return b;
        }
        a.mul(&b).shift(e as usize)
    }

    pub fn poly(&mut self, id: FamilyId, n: i64) -> IntPoly {
        let mut acc = IntPoly::zero();
        match (id.sector, id.side) {
            (Sector::Vac, FamilySide::S) => {
                for k in 0..=n.max(0) {
                    let t = self.b(n - k, 2 * k).shift((2 * k * k) as usize);
                    acc = acc.add(&t);
                }
            }
            (Sector::Half, FamilySide::S) => {
                for k in 1..=n.max(0) {
                    let t = self.b(n - k, 2 * k - 1).shift((2 * k * k - 2 * k) as usize);
                    acc = acc.add(&t);
                }
            }
            (Sector::Sixteenth, FamilySide::S) => {
                for k in 0..=n.max(0) {
                    let t = self.b(n - k, 2 * k + 1).shift((2 * k * k + k) as usize);
                    acc = acc.add(&t);
                }
            }
            (sector, FamilySide::T) => {
                for k in 0..=n.max(0) {
                    for m in 0..=n.max(0) {
                        if 3 * k + m > n + 1 {
                            break;
                        }
                        let q = m * m + 3 * k * m + 4 * k * k;
                        // the vacuum and half sectors subtract their second
                        // summand, the sixteenth sector adds it
                        let (plus, minus) = match sector {
                            Sector::Vac => (
                                self.pair(q, (n - 3 * k - m, k), (n - 4 * k - m, m)),
                                self.pair(q + k, (n - 3 * k - m - 1, k), (n - 4 * k - m - 1, m - 1)),
                            ),
                            Sector::Half => (
                                self.pair(q + 2 * k, (n - 3 * k - m - 1, k), (n - 4 * k - m - 1, m)),
                                self.pair(
                                    q + 2 * k + 4 * m + 8 * k + 6,
                                    (n - 3 * k - m - 5, k),
                                    (n - 4 * k - m - 5, m),
                                ),
                            ),
                            Sector::Sixteenth => (
                                self.pair(q + k + m, (n - 3 * k - m - 1, k), (n - 4 * k - m - 1, m)),
                                self.pair(q + m + 4 * k + 1, (n - 3 * k - m - 2, k), (n - 4 * k - m - 2, m))
                                    .neg(),
                            ),
                        };
                        acc = acc.add(&plus).sub(&minus);
                    }
                }
            }
        }
        acc
    }
}

pub fn family_poly(id: FamilyId, n: i64) -> IntPoly {
    FamilyBuilder::new().poly(id, n)
}

fn describe_difference(a: &IntPoly, b: &IntPoly) -> String {
    match a.first_difference(b) {
        None => "equal".to_string(),
        Some((e, x, y)) => format!("differ at q^{e}: {x} vs {y}"),
    }
}

/// `S_n = T_n` exactly for every `n ≤ n_max`, starting at `n = 0` in the
/// vacuum sector and `n = 1` otherwise. Every failing `n` gets its own item.
pub fn equality_check(sector: Sector, n_max: i64) -> Report {
    let mut report = Report::new(format!("families-{}", sector.name()), format!("n <= {n_max}"));
    let mut fb = FamilyBuilder::new();
    let start = if sector == Sector::Vac { 0 } else { 1 };
    let mut good = 0;
    for n in start..=n_max {
        let s = fb.poly(FamilyId::new(sector, FamilySide::S), n);
        let t = fb.poly(FamilyId::new(sector, FamilySide::T), n);
        if s == t {
            good += 1;
        } else {
            report.push(format!("S_{n} = T_{n}"), false, describe_difference(&s, &t));
        }
    }
    let total = n_max - start + 1;
    report.push(
        format!("S_n = T_n for {start} <= n <= {n_max}"),
        good == total,
        format!("{good} of {total} values equal"),
    );
    report
}

/// Residual of the order-8 recurrence at `n` for a family `f`.
pub fn recurrence_residual(f: &dyn Fn(i64) -> IntPoly, n: i64) -> IntPoly {
    let one_q = IntPoly::from_i64(&[1, 1]);
    let one_q_q2 = IntPoly::from_i64(&[1, 1, 1]);
    let nn = n as usize;
    f(n).shift(4 * nn + 15)
        .add(&one_q.mul(&f(n + 3).sub(&f(n + 4))).shift(2 * nn + 11))
        .sub(&f(n + 5).shift(3))
        .add(&one_q_q2.mul(&f(n + 6).shift(1).sub(&f(n + 7))))
        .add(&f(n + 8))
}

/// The recurrence holds exactly for `0 ≤ n ≤ n_max` on both vacuum families.
pub fn recurrence_check_s(n_max: i64) -> Report {
    let mut report = Report::new("recurrence-s", format!("n <= {n_max}"));
    for side in [FamilySide::S, FamilySide::T] {
        let id = FamilyId::new(Sector::Vac, side);
        let mut fb = FamilyBuilder::new();
        let table: Vec<IntPoly> = (0..=n_max + 8).map(|n| fb.poly(id, n)).collect();
        let f = |n: i64| table[n as usize].clone();
        let bad = (0..=n_max).find(|n| !recurrence_residual(&f, *n).is_zero());
        let detail = match bad {
            None => format!("residual 0 for all {} values", n_max + 1),
            Some(n) => format!("nonzero residual at n={n}: {:?}", recurrence_residual(&f, n).coeffs()),
        };
        report.push(format!("{id} satisfies the recurrence"), bad.is_none(), detail);
    }
    report
}

/// Compare `family(n)` (times the sector's `q`-offset) with the module
/// character modulo `q^N`, after checking that `n` and `n + 1` agree there.
pub fn limit_check(id: FamilyId, n: i64, order: i64) -> Result<Report> {
    let mut fb = FamilyBuilder::new();
    let trunc = Trunc::int(order);
    let (a, b) = id.sector.offset();
    let offset = frac(a, b);
    let series = |p: &IntPoly| p.to_series().shift(&offset).truncate(&trunc);
    let here = series(&fb.poly(id, n));
    let next = series(&fb.poly(id, n + 1));
    if !here.compare(&next).equal() {
        return Err(Error::StabilizationNotReached(n));
    }
    let target: QSeries = match id.sector {
        Sector::Vac => characters::alt_expression(AltForm::Euler, order),
        s => characters::module_character(s.module(), Side::New, order),
    };
    let mut report = Report::new(format!("limit-{id}"), format!("q^{order}"));
    let cmp = here.compare(&target);
    report.push(format!("{id}_{n} matches the character"), cmp.equal(), cmp.to_string());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::IsingModule;
    use crate::qseries::inv_pochhammer;
    use crate::rational::int;

    fn vac(side: FamilySide) -> FamilyId {
        FamilyId::new(Sector::Vac, side)
    }

    #[test]
    fn small_values() {
        assert_eq!(family_poly(vac(FamilySide::S), 0), IntPoly::one());
        assert_eq!(family_poly(vac(FamilySide::S), 3), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(family_poly(vac(FamilySide::T), 3), IntPoly::from_i64(&[1, 0, 1]));
    }

    #[test]
    fn s_side_is_nonnegative() {
        let mut fb = FamilyBuilder::new();
        for sector in Sector::ALL {
            for n in 0..=40 {
                assert!(fb.poly(FamilyId::new(sector, FamilySide::S), n).is_nonnegative());
            }
        }
    }

    #[test]
    fn equalities() {
        let r = equality_check(Sector::Vac, 40);
        assert!(r.passed, "{r}");
        let r = equality_check(Sector::Sixteenth, 30);
        assert!(r.passed, "{r}");
    }

    #[test]
    fn half_sector_fails_only_at_one() {
        // S^(1/2)_1 = [0,1] = 0 while T^(1/2)_1 = [0,0]^2 = 1
        let r = equality_check(Sector::Half, 30);
        let failing: Vec<&str> = r.items.iter().filter(|i| !i.passed).map(|i| i.label.as_str()).collect();
        assert_eq!(failing, vec!["S_1 = T_1", "S_n = T_n for 1 <= n <= 30"]);
        assert!(family_poly(FamilyId::new(Sector::Half, FamilySide::S), 1).is_zero());
        assert_eq!(family_poly(FamilyId::new(Sector::Half, FamilySide::T), 1), IntPoly::one());
        let mut fb = FamilyBuilder::new();
        for n in 2..=30 {
            let s = fb.poly(FamilyId::new(Sector::Half, FamilySide::S), n);
            assert_eq!(s, fb.poly(FamilyId::new(Sector::Half, FamilySide::T), n), "n={n}");
        }
    }

    #[test]
    fn recurrence_holds() {
        let r = recurrence_check_s(30);
        assert!(r.passed, "{r}");
    }

    #[test]
    fn recurrence_detects_a_wrong_family() {
        // the shifted sequence n ↦ S_{n+1} does not satisfy the recurrence
        let mut fb = FamilyBuilder::new();
        let table: Vec<IntPoly> = (0..12).map(|n| fb.poly(vac(FamilySide::S), n + 1)).collect();
        let f = |n: i64| table[n as usize].clone();
        assert!(!recurrence_residual(&f, 0).is_zero());
    }

    #[test]
    fn recurrence_at_zero_expansion() {
        // by hand: S_3 − S_4 = −q³ − q⁴ and S_8 ∋ q⁸[6,4], so the largest
        // summand degree is 16
        let f = |n: i64| family_poly(vac(FamilySide::S), n);
        let degrees = [
            f(0).shift(15).degree(),
            IntPoly::from_i64(&[1, 1]).mul(&f(3).sub(&f(4))).shift(11).degree(),
            f(5).shift(3).degree(),
            IntPoly::from_i64(&[1, 1, 1]).mul(&f(6).shift(1).sub(&f(7))).degree(),
            f(8).degree(),
        ];
        assert_eq!(degrees.iter().flatten().max(), Some(&16));
        assert!(recurrence_residual(&f, 0).is_zero());
    }

    #[test]
    fn limits() {
        let r = limit_check(vac(FamilySide::S), 60, 30).unwrap();
        assert!(r.passed, "{r}");
        let r = limit_check(FamilyId::new(Sector::Half, FamilySide::T), 50, 25).unwrap();
        assert!(r.passed, "{r}");
        let r = limit_check(FamilyId::new(Sector::Sixteenth, FamilySide::S), 50, 25).unwrap();
        assert!(r.passed, "{r}");
        assert!(limit_check(vac(FamilySide::S), 0, 1).unwrap().passed);
    }

    #[test]
    fn limit_requires_stabilisation() {
        assert_eq!(
            limit_check(vac(FamilySide::S), 5, 30).unwrap_err(),
            Error::StabilizationNotReached(5)
        );
    }

    #[test]
    fn vacuum_limit_oracle() {
        // lim S_n = Σ q^{2k²}/(q)_{2k}, built here from scratch
        let order = 20;
        let mut oracle = QSeries::zero(Trunc::int(order));
        for k in 0..4 {
            let t = inv_pochhammer(2 * k as usize, order).shift_int(2 * k * k);
            oracle = oracle.add(&t.truncate(&Trunc::int(order)));
        }
        let s = family_poly(vac(FamilySide::S), 40).to_series().truncate(&Trunc::int(order));
        assert!(s.compare(&oracle).equal());
        let half = characters::module_character(IsingModule::VHalf, Side::Classical, 10);
        assert_eq!(half.coeff(&frac(1, 2)), Some(int(1)));
    }
}
