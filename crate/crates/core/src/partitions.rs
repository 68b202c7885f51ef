//! Partitions into parts `≥ 2`, the avoidance set `𝒫(n)`, its five-class
//! decomposition and the difference-condition sets counted by the
//! Andrews–Gordon product.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;

/// Weakly decreasing list of parts. Doubles as the monomial
/// `L_{-λ1}···L_{-λm}` of the differential polynomial ring.
///
/// `Ord` is the graded reverse lexicographic order: first by weight, then at
/// the first differing position the partition with the *larger* part is the
/// smaller one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<i64>);

impl Partition {
    /// Validates weak decrease and `parts ≥ min_part`.
    pub fn with_min_part(mut parts: Vec<i64>, min_part: i64) -> Result<Self> {
        if parts.iter().any(|p| *p < min_part) {
            return Err(Error::InvalidArgument(format!(
                "parts of {parts:?} must be at least {min_part}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// Partition with parts `≥ 2`, sorted into decreasing order.
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        Self::with_min_part(parts, 2)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn smallest(&self) -> Option<i64> {
        self.0.last().copied()
    }

    /// Multiset union (product of monomials).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Whether `mu`'s parts, with multiplicity, occur among `self`'s.
    pub fn contains(&self, mu: &Partition) -> bool {
        // both are sorted decreasingly: merge walk
        let mut it = self.0.iter().peekable();
        'outer: for m in &mu.0 {
            while let Some(&&x) = it.peek() {
                it.next();
                match x.cmp(m) {
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => continue,
                    Ordering::Less => return false,
                }
            }
            return false;
        }
        true
    }

    /// Multiset difference `self \ mu`, if `mu` is contained.
    pub fn quotient(&self, mu: &Partition) -> Option<Partition> {
        let mut rest = self.0.clone();
        for m in &mu.0 {
            let pos = rest.iter().position(|x| x == m)?;
            rest.remove(pos);
        }
        Some(Partition(rest))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a != b {
                    // larger part first means smaller monomial
                    return b.cmp(a);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// `L_λ < L_μ` in the graded reverse lexicographic order.
pub fn grevlex_less(lam: &Partition, mu: &Partition) -> bool {
    lam < mu
}

/// All partitions of `n` with parts `≥ min_part`, in increasing grevlex order
/// (equivalently decreasing lexicographic order: `[n]` first).
pub fn partitions_of(n: i64, min_part: i64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(rest: i64, max: i64, min: i64, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        let mut p = max.min(rest);
        while p >= min {
            cur.push(p);
            go(rest - p, p, min, cur, out);
            cur.pop();
            p -= 1;
        }
    }
    if n >= 0 {
        go(n, n, min_part.max(1), &mut cur, &mut out);
    }
    out
}

/// Number of partitions of each `n < len` with parts `≥ min_part`.
pub fn partition_counts(len: usize, min_part: usize) -> Vec<u64> {
    let mut ways = vec![0u64; len];
    if len == 0 {
        return ways;
    }
    ways[0] = 1;
    for p in min_part.max(1)..len {
        for i in p..len {
            ways[i] += ways[i - p];
        }
    }
    ways
}

/// The forbidden sub-multisets: five `p`-indexed shapes, their ranges, and
/// four exceptional partitions.
#[derive(Clone, Debug)]
pub struct PatternFamily {
    pub offsets: &'static [i64],
    pub p_min: i64,
    pub name: &'static str,
}

/// Offsets are added to `p`; the pattern is `[p + o_1, …, p + o_r]`.
pub const FAMILIES: &[PatternFamily] = &[
    PatternFamily { offsets: &[0, 0, 0], p_min: 2, name: "[p,p,p]" },
    PatternFamily { offsets: &[1, 0, 0], p_min: 2, name: "[p+1,p,p]" },
    PatternFamily { offsets: &[1, 1, 0], p_min: 2, name: "[p+1,p+1,p]" },
    PatternFamily { offsets: &[2, 1, 0], p_min: 2, name: "[p+2,p+1,p]" },
    PatternFamily { offsets: &[2, 2, 0], p_min: 2, name: "[p+2,p+2,p]" },
    PatternFamily { offsets: &[2, 0, 0], p_min: 3, name: "[p+2,p,p]" },
    PatternFamily { offsets: &[3, 3, 0, 0], p_min: 2, name: "[p+3,p+3,p,p]" },
    PatternFamily { offsets: &[4, 3, 0, 0], p_min: 2, name: "[p+4,p+3,p,p]" },
    PatternFamily { offsets: &[4, 3, 1, 0], p_min: 2, name: "[p+4,p+3,p+1,p]" },
    PatternFamily { offsets: &[4, 4, 1, 0], p_min: 2, name: "[p+4,p+4,p+1,p]" },
    PatternFamily { offsets: &[6, 5, 3, 1, 0], p_min: 2, name: "[p+6,p+5,p+3,p+1,p]" },
];

pub const EXCEPTIONAL: &[&[i64]] = &[
    &[5, 4, 2, 2],
    &[7, 6, 4, 2, 2],
    &[7, 7, 4, 2, 2],
    &[9, 8, 6, 4, 2, 2],
];

impl PatternFamily {
    pub fn instance(&self, p: i64) -> Partition {
        Partition(self.offsets.iter().map(|o| p + o).collect())
    }

    /// Instances of weight `≤ max_weight`, smallest `p` first.
    pub fn instances(&self, max_weight: i64) -> impl Iterator<Item = (i64, Partition)> + '_ {
        (self.p_min..)
            .map(move |p| (p, self.instance(p)))
            .take_while(move |(_, lam)| lam.weight() <= max_weight)
    }
}

/// Every forbidden pattern of weight `≤ max_weight`, duplicate free.
pub fn patterns_up_to(max_weight: i64) -> Vec<Partition> {
    let mut out: Vec<Partition> = FAMILIES
        .iter()
        .flat_map(|f| f.instances(max_weight).map(|(_, lam)| lam))
        .chain(
            EXCEPTIONAL
                .iter()
                .map(|e| Partition(e.to_vec()))
                .filter(|lam| lam.weight() <= max_weight),
        )
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Patterns grouped by their smallest part, for incremental containment tests.
struct PatternIndex {
    by_min: HashMap<i64, Vec<Vec<(i64, usize)>>>,
}

impl PatternIndex {
    fn new(max_weight: i64) -> Self {
        let mut by_min: HashMap<i64, Vec<Vec<(i64, usize)>>> = HashMap::new();
        for pat in patterns_up_to(max_weight) {
            let mut counts: Vec<(i64, usize)> = Vec::new();
            for &x in pat.parts() {
                match counts.last_mut() {
                    Some((v, c)) if *v == x => *c += 1,
                    _ => counts.push((x, 1)),
                }
            }
            by_min
                .entry(pat.smallest().unwrap())
                .or_default()
                .push(counts);
        }
        PatternIndex { by_min }
    }

    /// Whether some pattern with smallest part `x` is contained in the multiset `mult`.
    fn hit(&self, x: i64, mult: &HashMap<i64, usize>) -> bool {
        self.by_min.get(&x).is_some_and(|pats| {
            pats.iter().any(|pat| {
                pat.iter()
                    .all(|(v, c)| mult.get(v).copied().unwrap_or(0) >= *c)
            })
        })
    }
}

/// Whether `lam` has parts `≥ 2` and avoids every forbidden pattern.
pub fn avoids_all(lam: &Partition) -> bool {
    lam.smallest().map_or(true, |s| s >= 2)
        && patterns_up_to(lam.weight())
            .iter()
            .all(|pat| !lam.contains(pat))
}

/// `𝒫(n)` in increasing grevlex order.
pub fn enumerate_p(n: i64) -> Vec<Partition> {
    if n < 0 {
        return Vec::new();
    }
    let index = PatternIndex::new(n);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut mult: HashMap<i64, usize> = HashMap::new();
    fn go(
        rest: i64,
        max: i64,
        index: &PatternIndex,
        cur: &mut Vec<i64>,
        mult: &mut HashMap<i64, usize>,
        out: &mut Vec<Partition>,
    ) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        let mut p = max.min(rest);
        while p >= 2 {
            cur.push(p);
            *mult.entry(p).or_insert(0) += 1;
            if !index.hit(p, mult) {
                go(rest - p, p, index, cur, mult, out);
            }
            *mult.get_mut(&p).unwrap() -= 1;
            cur.pop();
            p -= 1;
        }
    }
    go(n, n, &index, &mut cur, &mut mult, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    A,
    B,
    C,
    D,
    E,
}

impl Class {
    pub const ALL: [Class; 5] = [Class::A, Class::B, Class::C, Class::D, Class::E];

    fn index(self) -> usize {
        self as usize
    }
}

/// Which of the five disjoint classes of `𝒫(n)` contains `lam`.
pub fn classify(lam: &Partition) -> Result<Class> {
    if !avoids_all(lam) {
        return Err(Error::NotInP(lam.clone()));
    }
    let parts = lam.parts();
    let m = parts.len();
    if m == 0 {
        return Ok(Class::A);
    }
    let at = |back: usize| parts.get(m.wrapping_sub(1 + back)).copied();
    let last = parts[m - 1];
    if last > 2 {
        return Ok(Class::A);
    }
    match at(1) {
        None => Ok(Class::B),
        Some(x) if x > 3 => Ok(Class::B),
        Some(3) => Ok(Class::C),
        Some(_) => match at(2) {
            None => Ok(Class::D),
            Some(y) if y > 4 => Ok(Class::D),
            Some(4) => Ok(Class::E),
            // [2,2,2] and [3,2,2] are forbidden, so avoidance already excluded these
            Some(_) => Err(Error::NotInP(lam.clone())),
        },
    }
}

/// Counts `a(n,m), …, e(n,m)` of the five classes by number of parts.
#[derive(Clone, Debug, PartialEq)]
pub struct CountTable {
    pub n_max: i64,
    counts: Vec<Vec<[u64; 5]>>,
}

impl CountTable {
    /// Count of class `class` at weight `n` with `m` parts; zero out of range.
    pub fn get(&self, class: Class, n: i64, m: i64) -> u64 {
        if n < 0 || m < 0 || n > self.n_max {
            return 0;
        }
        self.counts[n as usize]
            .get(m as usize)
            .map_or(0, |row| row[class.index()])
    }

    pub fn p(&self, n: i64, m: i64) -> u64 {
        Class::ALL.iter().map(|c| self.get(*c, n, m)).sum()
    }

    /// `|𝒫(n)|`.
    pub fn total(&self, n: i64) -> u64 {
        (0..=n.max(0)).map(|m| self.p(n, m)).sum()
    }

    pub fn max_parts(&self, n: i64) -> i64 {
        if n < 0 || n > self.n_max {
            return -1;
        }
        self.counts[n as usize].len() as i64 - 1
    }

    /// CSV rows `n,m,a,b,c,d,e,p` for every `(n, m)` with `m ≤ n/2`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m,a,b,c,d,e,p\n");
        for n in 0..=self.n_max {
            for m in 0..=n / 2 {
                let row: Vec<String> = Class::ALL
                    .iter()
                    .map(|c| self.get(*c, n, m).to_string())
                    .collect();
                out.push_str(&format!("{n},{m},{},{}\n", row.join(","), self.p(n, m)));
            }
        }
        out
    }
}

pub fn count_table(n_max: i64) -> CountTable {
    let counts = (0..=n_max.max(0))
        .map(|n| {
            let mut row = vec![[0u64; 5]; (n / 2 + 1) as usize];
            for lam in enumerate_p(n) {
                let class = classify(&lam).expect("enumerated partitions avoid all patterns");
                row[lam.len()][class.index()] += 1;
            }
            row
        })
        .collect();
    CountTable {
        n_max: n_max.max(0),
        counts,
    }
}

/// Checks the five counting recurrences for every `0 ≤ n ≤ n_max`, `0 ≤ m ≤ n`.
pub fn recursion_check(n_max: i64) -> Report {
    use Class::*;
    let t = count_table(n_max);
    let g = |c: Class, n: i64, m: i64| t.get(c, n, m) as i64;
    type Rule = (&'static str, fn(&dyn Fn(Class, i64, i64) -> i64, i64, i64) -> i64);
    let rules: [(Class, Rule); 5] = [
        (A, ("a(n,m) = a(n-m,m)+b(n-m,m)+c(n-m,m)+d(n-m,m)", |g, n, m| {
            g(A, n - m, m) + g(B, n - m, m) + g(C, n - m, m) + g(D, n - m, m)
        })),
        (B, ("b(n,m) = a(n-m-1,m-1) - d(n-2m,m-1)", |g, n, m| {
            g(A, n - m - 1, m - 1) - g(D, n - 2 * m, m - 1)
        })),
        (C, ("c(n,m) = b(n-2m+1,m-1) + d(n-2m,m-1)", |g, n, m| {
            g(B, n - 2 * m + 1, m - 1) + g(D, n - 2 * m, m - 1)
        })),
        (D, ("d(n,m) = b(n-m,m-1) - e(n-2m+1,m-1)", |g, n, m| {
            g(B, n - m, m - 1) - g(E, n - 2 * m + 1, m - 1)
        })),
        (E, ("e(n,m) = c(n-m,m-1)", |g, n, m| g(C, n - m, m - 1))),
    ];
    let mut report = Report::new("recursion", format!("n <= {n_max}"));
    for (class, (label, rhs)) in rules {
        let mut failure = None;
        let mut checked = 0;
        'scan: for n in 0..=n_max {
            for m in 0..=n {
                // m = 0 reduces the first rule to a(n,0) = a(n,0)
                if m == 0 && class == A {
                    continue;
                }
                checked += 1;
                let lhs = g(class, n, m);
                let r = rhs(&g, n, m);
                if lhs != r {
                    failure = Some(format!("fails at (n,m)=({n},{m}): lhs {lhs}, rhs {r}"));
                    break 'scan;
                }
            }
        }
        match failure {
            None => report.push(label, true, format!("{checked} instances hold")),
            Some(f) => report.push(label, false, f),
        }
    }
    report
}

/// Partitions of `n` with parts `≥ 2` and `λ_i − λ_{i+s−1} ≥ 2`, increasing grevlex order.
pub fn mourtada_basis(s: usize, n: i64) -> Vec<Partition> {
    assert!(s >= 2, "difference-condition width must be at least 2");
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(rest: i64, max: i64, s: usize, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        let mut p = max.min(rest);
        while p >= 2 {
            let len = cur.len();
            let ok = len + 1 < s || cur[len + 1 - s] - p >= 2;
            if ok {
                cur.push(p);
                go(rest - p, p, s, cur, out);
                cur.pop();
            }
            p -= 1;
        }
    }
    if n >= 0 {
        go(n, n, s, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[i64]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    /// Brute force: all partitions with parts ≥ 2, filtered by explicit containment.
    fn brute_p(n: i64) -> Vec<Partition> {
        let pats = patterns_up_to(n);
        partitions_of(n, 2)
            .into_iter()
            .filter(|lam| pats.iter().all(|pat| !lam.contains(pat)))
            .collect()
    }

    #[test]
    fn containment() {
        assert!(part(&[5, 3, 3, 2]).contains(&part(&[3, 3])));
        assert!(!part(&[4, 2]).contains(&part(&[2, 2])));
        assert!(part(&[4, 2]).contains(&Partition::empty()));
        assert!(Partition::empty().contains(&Partition::empty()));
        assert!(part(&[9, 8, 6, 4, 2, 2]).contains(&part(&[8, 4, 2])));
        assert!(!part(&[9, 8, 6, 4, 2]).contains(&part(&[8, 4, 2, 2])));
    }

    #[test]
    fn grevlex_examples() {
        assert!(grevlex_less(&part(&[4, 2]), &part(&[3, 3])));
        assert!(grevlex_less(&part(&[2]), &part(&[3])));
        assert!(!grevlex_less(&part(&[4, 2]), &part(&[4, 2])));
        assert!(grevlex_less(&part(&[5, 2, 2]), &part(&[4, 3, 2])));
        assert!(grevlex_less(&part(&[4, 2, 2]), &part(&[3, 3, 2])));
    }

    #[test]
    fn grevlex_is_multiplicative_and_total() {
        for w in 0..=14 {
            let ps = partitions_of(w, 2);
            for (i, a) in ps.iter().enumerate() {
                for b in &ps[i + 1..] {
                    // partitions_of lists increasing grevlex
                    assert!(a < b);
                    for c in partitions_of(4, 2).iter().chain(partitions_of(5, 2).iter()) {
                        assert!(a.union(c) < b.union(c));
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_p(0), vec![Partition::empty()]);
        assert_eq!(enumerate_p(6), vec![part(&[6]), part(&[4, 2]), part(&[3, 3])]);
        assert_eq!(enumerate_p(7), vec![part(&[7]), part(&[5, 2]), part(&[4, 3])]);
        assert_eq!(
            enumerate_p(9),
            vec![part(&[9]), part(&[7, 2]), part(&[6, 3]), part(&[5, 4]), part(&[5, 2, 2])]
        );
        assert!(enumerate_p(1).is_empty());
    }

    #[test]
    fn pruned_enumeration_matches_brute_force() {
        for n in 0..=30 {
            assert_eq!(enumerate_p(n), brute_p(n), "n={n}");
        }
    }

    #[test]
    fn patterns_are_duplicate_free() {
        let pats = patterns_up_to(40);
        let mut sorted = pats.clone();
        sorted.dedup();
        assert_eq!(pats.len(), sorted.len());
        assert!(pats.contains(&part(&[5, 3, 3])));
        assert!(!pats.contains(&part(&[4, 2, 2])));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&part(&[4, 2])), Ok(Class::B));
        assert_eq!(classify(&part(&[3, 2])), Ok(Class::C));
        assert_eq!(classify(&part(&[4, 2, 2])), Ok(Class::E));
        assert_eq!(classify(&Partition::empty()), Ok(Class::A));
        assert_eq!(classify(&part(&[2])), Ok(Class::B));
        assert_eq!(classify(&part(&[2, 2])), Ok(Class::D));
        assert_eq!(classify(&part(&[7, 2, 2])), Ok(Class::D));
        assert_eq!(classify(&part(&[5, 3])), Ok(Class::A));
        assert_eq!(
            classify(&part(&[2, 2, 2])),
            Err(Error::NotInP(part(&[2, 2, 2])))
        );
    }

    #[test]
    fn classes_are_exhaustive() {
        for n in 0..=60 {
            for lam in enumerate_p(n) {
                assert!(classify(&lam).is_ok(), "{lam}");
            }
        }
    }

    #[test]
    fn count_table_values() {
        let t = count_table(12);
        assert_eq!(t.p(6, 1), 1);
        assert_eq!(t.p(6, 2), 2);
        for n in 0..=12 {
            assert_eq!(t.p(n, 0), u64::from(n == 0));
        }
        assert_eq!(t.total(9), 5);
        assert!(t.to_csv().starts_with("n,m,a,b,c,d,e,p\n0,0,1,0,0,0,0,1\n"));
    }

    #[test]
    fn recursions_hold() {
        let r = recursion_check(40);
        assert!(r.passed, "{r}");
        assert!(recursion_check(0).passed);
    }

    #[test]
    fn mourtada_small() {
        assert_eq!(mourtada_basis(2, 5), vec![part(&[5])]);
        assert_eq!(mourtada_basis(2, 0), vec![Partition::empty()]);
        assert_eq!(mourtada_basis(3, 6), vec![part(&[6]), part(&[4, 2]), part(&[3, 3])]);
    }

    #[test]
    fn mourtada_matches_brute_force() {
        for s in 2..=4usize {
            for n in 0..=20 {
                let brute: Vec<_> = partitions_of(n, 2)
                    .into_iter()
                    .filter(|lam| {
                        let p = lam.parts();
                        (0..p.len()).all(|i| i + s - 1 >= p.len() || p[i] - p[i + s - 1] >= 2)
                    })
                    .collect();
                assert_eq!(mourtada_basis(s, n), brute, "s={s} n={n}");
            }
        }
    }

    #[test]
    fn partition_counts_agree_with_listing() {
        let counts = partition_counts(25, 2);
        for n in 0..25 {
            assert_eq!(counts[n] as usize, partitions_of(n as i64, 2).len());
        }
    }
}
