use proptest::prelude::*;

use super::*;

fn ints(s: &QSeries, count: usize) -> Vec<i64> {
    s.int_coeffs(count)
}

/// Number of partitions of each `n < len` with parts drawn from `allowed`,
/// optionally distinct, by plain recursion over the largest part.
fn count_partitions(len: usize, allowed: &dyn Fn(usize) -> bool, distinct: bool) -> Vec<i64> {
    fn go(rem: usize, max: usize, allowed: &dyn Fn(usize) -> bool, distinct: bool) -> i64 {
        if rem == 0 {
            return 1;
        }
        let mut total = 0;
        for part in (1..=max.min(rem)).rev() {
            if allowed(part) {
                let next = if distinct { part - 1 } else { part };
                total += go(rem - part, next, allowed, distinct);
            }
        }
        total
    }
    (0..len).map(|n| go(n, n, allowed, distinct)).collect()
}

#[test]
fn feigin_fuchs_examples() {
    let ising = feigin_fuchs_character(MinimalModelLabel::ising(), 8);
    assert_eq!(ints(&ising, 8), vec![1, 0, 1, 1, 2, 2, 3, 3]);
    let rr = feigin_fuchs_character(MinimalModelLabel::new(2, 5).unwrap(), 6);
    assert_eq!(ints(&rr, 6), vec![1, 0, 1, 1, 1, 1]);
    for (p, pp) in [(2, 5), (2, 7), (3, 4), (3, 5), (4, 5), (5, 7)] {
        let s = feigin_fuchs_character(MinimalModelLabel::new(p, pp).unwrap(), 10);
        assert_eq!(s.coeff_int(0), Some(int(1)), "({p},{pp})");
        assert!(s.is_nonneg_integral());
    }
}

#[test]
fn feigin_fuchs_two_five_is_rogers_ramanujan() {
    let n = 40;
    let s = feigin_fuchs_character(MinimalModelLabel::new(2, 5).unwrap(), n);
    let oracle = count_partitions(n as usize, &|j| j % 5 == 2 || j % 5 == 3, false);
    assert_eq!(ints(&s, n as usize), oracle);
}

#[test]
fn label_validation() {
    assert!(matches!(MinimalModelLabel::new(2, 4), Err(Error::InvalidLabel(2, 4))));
    assert!(MinimalModelLabel::new(4, 3).is_err());
    assert!(MinimalModelLabel::new(1, 3).is_err());
    assert_eq!(MinimalModelLabel::ising().central_charge(), frac(1, 2));
    assert_eq!(MinimalModelLabel::new(2, 5).unwrap().central_charge(), frac(-22, 5));
}

#[test]
fn alt_expression_examples() {
    assert_eq!(ints(&alt_expression(AltForm::Euler, 8), 8), vec![1, 0, 1, 1, 2, 2, 3, 3]);
    let fh = alt_expression(AltForm::FermionHalf, 10);
    assert_eq!(fh.denom(), 1);
    assert_eq!(fh.coeff(&frac(1, 2)), Some(int(0)));
}

#[test]
fn four_alt_expressions_agree() {
    let n = 60;
    let forms: Vec<QSeries> = AltForm::ALL.iter().map(|w| alt_expression(*w, n)).collect();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let cmp = forms[i].compare(&forms[j]);
            assert!(cmp.equal(), "{:?} vs {:?}: {cmp}", AltForm::ALL[i], AltForm::ALL[j]);
            assert_eq!(cmp.order, Trunc::int(n));
        }
    }
    let ff = feigin_fuchs_character(MinimalModelLabel::ising(), n);
    assert!(ff.compare(&forms[0]).equal());
}

#[test]
fn nahm_rogers_ramanujan_example() {
    let data = NahmData::new(vec![vec![int(2)]], vec![int(0)], int(0)).unwrap();
    assert_eq!(ints(&nahm_sum(&data, 6).unwrap(), 6), vec![1, 1, 1, 1, 2, 2]);
}

#[test]
fn nahm_e8_is_ising() {
    let s = nahm_sum(&NahmData::e8(), 12).unwrap();
    let ff = feigin_fuchs_character(MinimalModelLabel::ising(), 12);
    let cmp = s.compare(&ff);
    assert!(cmp.equal(), "{cmp}");
}

#[test]
fn e8_cartan_inverse_is_integral() {
    let inv = linalg::inverse(&e8_cartan()).unwrap();
    assert!(inv.iter().flatten().all(|x| x.is_integer() && x.is_positive()));
    assert_eq!(linalg::determinant(&e8_cartan()), int(1));
    // the highest root coefficients appear on the diagonal of C^{-1} up to
    // the node norm: entry (8,8) of the inverse is 2
    assert_eq!(inv[7][7], int(2));
}

#[test]
fn andrews_gordon_examples_and_identity() {
    assert_eq!(ints(&andrews_gordon_product(2, 6), 6), vec![1, 0, 1, 1, 1, 1]);
    for s in 2..=4i64 {
        let n = 30;
        let prod = andrews_gordon_product(s, n);
        let m = (2 * s + 1) as usize;
        let oracle = count_partitions(n as usize, &|j| j % m != 0 && j % m != 1 && j % m != m - 1, false);
        assert_eq!(ints(&prod, n as usize), oracle, "s={s}");
        let sum = nahm_sum(&NahmData::andrews_gordon(s as usize).unwrap(), n).unwrap();
        let cmp = sum.compare(&prod);
        assert!(cmp.equal(), "s={s}: {cmp}");
    }
}

#[test]
fn nahm_data_validation() {
    let a = vec![vec![int(1), int(2)], vec![int(2), int(1)]];
    assert_eq!(
        NahmData::new(a, vec![int(0), int(0)], int(0)),
        Err(Error::NotPositiveDefinite)
    );
    let a = vec![vec![int(2), int(1)], vec![int(0), int(2)]];
    assert_eq!(NahmData::new(a, vec![int(0), int(0)], int(0)), Err(Error::NotSymmetric));
    let a = vec![vec![int(2)]];
    assert!(matches!(
        NahmData::new(a, vec![int(0), int(0)], int(0)),
        Err(Error::DimensionMismatch(_))
    ));
    assert!(NahmData::andrews_gordon(1).is_err());
}

#[test]
fn quasiparticle_examples() {
    assert_eq!(ints(&quasiparticle_chi(8), 8), vec![1, 0, 1, 1, 2, 2, 3, 3]);
    let cmp = quasiparticle_chi(60).compare(&alt_expression(AltForm::Euler, 60));
    assert!(cmp.equal(), "{cmp}");
}

#[test]
fn module_character_examples() {
    let v16 = module_character(IsingModule::VSixteenth, Side::Classical, 5);
    assert_eq!(ints(&v16, 5), vec![1, 1, 1, 2, 2]);
    let vh = module_character(IsingModule::VHalf, Side::Classical, 6);
    assert_eq!(vh.valuation(), Some(frac(1, 2)));
}

#[test]
fn module_character_classical_oracles() {
    let n = 40;
    let v16 = module_character(IsingModule::VSixteenth, Side::Classical, n);
    assert_eq!(ints(&v16, n as usize), count_partitions(n as usize, &|_| true, true));
    // the second classical form of each character: Euler-type sums
    let mut half = QSeries::zero(Trunc::int(n));
    let mut k = 1;
    while 2 * k * k - 2 * k < n {
        let e = int(2 * k * k - 2 * k) + frac(1, 2);
        let body = inv_pochhammer((2 * k - 1) as usize, n);
        half = half.add(&body.shift(&e).truncate(&Trunc::int(n)));
        k += 1;
    }
    let vh = module_character(IsingModule::VHalf, Side::Classical, n);
    assert!(vh.compare(&half).equal());
    let mut sixteenth = QSeries::zero(Trunc::int(n));
    let mut k = 0;
    while k * (k + 1) / 2 < n {
        let body = inv_pochhammer(k as usize, n);
        sixteenth = sixteenth.add(&body.shift_int(k * (k + 1) / 2).truncate(&Trunc::int(n)));
        k += 1;
    }
    assert!(v16.compare(&sixteenth).equal());
}

#[test]
fn module_character_identities() {
    let n = 50;
    for m in IsingModule::ALL {
        let c = module_character(m, Side::Classical, n);
        let new = module_character(m, Side::New, n);
        let cmp = c.compare(&new);
        assert!(cmp.equal(), "{}: {cmp}", m.name());
        assert_eq!(cmp.order, Trunc::int(n));
    }
}

#[test]
fn closed_form_lowest_terms() {
    let n = 20;
    let a = closed_form(Family::A, n);
    assert!(a.t_slice(0).compare(&QSeries::one(Trunc::int(n))).equal());
    let b = closed_form(Family::B, n);
    assert_eq!(b.terms().next().map(|(q, t, c)| (q, t, c.clone())), Some((2, 1, int(1))));
    let e = closed_form(Family::E, n);
    assert_eq!(e.terms().next().map(|(q, t, c)| (q, t, c.clone())), Some((8, 3, int(1))));
}

#[test]
fn functional_equations_hold() {
    let r = functional_equation_check(40);
    assert!(r.passed, "{r}");
    assert_eq!(r.items.len(), 10);
    let r = closed_form_cross_check(40);
    assert!(r.passed, "{r}");
}

#[test]
fn functional_equation_check_detects_corruption() {
    // the check compares distinct objects: perturbing E breaks its equation
    let n = 20;
    let e = closed_form(Family::E, n);
    let c = closed_form(Family::C, n);
    let mut bad = e.clone();
    bad.add_term(4, 12, &int(1));
    assert!(e.compare(&c.shear(1).mul_monomial(1, 1)).equal());
    assert!(!bad.compare(&c.shear(1).mul_monomial(1, 1)).equal());
}

#[test]
fn p_and_bigraded_examples() {
    let p = p_of_t_q(60);
    assert_eq!(p.coeff(2, 4), int(1));
    assert!(p.is_nonneg_integral() && p.respects_part_bound());
    let chi = quasiparticle_chi(60);
    assert!(p.at_t_one().compare(&chi).equal());
    let g = bigraded_character(60).unwrap();
    assert_eq!(g.coeff(0, 2), int(1));
    assert!(g.at_t_one().compare(&chi).equal());
    assert!(g.terms().all(|(_, m, _)| m >= 0));
}

#[test]
fn tq_json_round_trip_and_rejects() {
    let p = p_of_t_q(12);
    let s = p.to_json_string();
    assert_eq!(TQSeries::from_json_str(&s).unwrap(), p);
    assert!(s.starts_with("{\"trunc\":12,\"coeffs\":[[0,[[0,\"1\"]]]"));
    for bad in [
        r#"{"trunc":-1,"coeffs":[]}"#,
        r#"{"trunc":5,"coeffs":[[5,[[0,"1"]]]]}"#,
        r#"{"trunc":5,"coeffs":[[2,[[0,"1"]]],[1,[[0,"1"]]]]}"#,
        r#"{"trunc":5,"coeffs":[[2,[[3,"1"]]]]}"#,
        r#"{"trunc":5,"coeffs":[[2,[[0,"0"]]]]}"#,
        r#"{"trunc":5,"coeffs":[[2,[]]]}"#,
        r#"{"trunc":5,"coeffs":[[2,[[1,"1"],[1,"2"]]]]}"#,
        r#"{"trunc":5,"coeffs":[[2,[[1,"x"]]]]}"#,
        r#"{"trunc":5,"coeffs":[],"extra":1}"#,
        r#"{"trunc":99999999,"coeffs":[]}"#,
    ] {
        assert!(TQSeries::from_json_str(bad).is_err(), "{bad}");
    }
}

fn brute_vectors(data: &NahmData, n: i64, r: usize) -> Vec<Vec<usize>> {
    let dim = data.dim();
    let mut out = Vec::new();
    let mut k = vec![0usize; dim];
    loop {
        if data.exponent(&k) < int(n) {
            out.push(k.clone());
        }
        let mut i = 0;
        loop {
            if i == dim {
                out.sort();
                return out;
            }
            k[i] += 1;
            if k[i] <= r {
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

fn small_matrix() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>)> {
    (1usize..=3).prop_flat_map(|d| {
        (
            proptest::collection::vec(proptest::collection::vec(-2i64..=3, d), d),
            proptest::collection::vec(-2i64..=2, d),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nahm_enumeration_is_complete((raw, b) in small_matrix()) {
        let d = b.len();
        // symmetrise and make diagonally dominant enough to be definite
        let mut a = vec![vec![int(0); d]; d];
        for i in 0..d {
            for j in 0..d {
                a[i][j] = int(raw[i.min(j)][i.max(j)]);
            }
            let off: i64 = (0..d).filter(|j| *j != i).map(|j| raw[i.min(j)][i.max(j)].abs()).sum();
            a[i][i] = int(raw[i][i].abs() + off + 1);
        }
        let data = NahmData::new(a, b.iter().map(|x| int(*x)).collect(), int(3)).unwrap();
        let n = 8;
        let mut fast = data.vectors_below(n);
        fast.sort();
        prop_assert_eq!(fast, brute_vectors(&data, n, 12));
    }

    #[test]
    fn shear_composes(a in 0i64..4, b in 0i64..4) {
        let p = p_of_t_q(20);
        prop_assert_eq!(p.shear(a).shear(b), p.shear(a + b));
    }

    #[test]
    fn tq_json_round_trip(terms in proptest::collection::vec((0i64..15, 0i64..8, -5i64..5), 0..20)) {
        let mut s = TQSeries::zero(15);
        for (n, m, c) in terms {
            if m <= n {
                s.add_term(m, n, &int(c));
            }
        }
        prop_assert_eq!(TQSeries::from_json_str(&s.to_json_string()).unwrap(), s);
    }
}
