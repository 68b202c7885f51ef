use proptest::prelude::*;

use super::*;
use crate::characters::{andrews_gordon_product, feigin_fuchs_character, MinimalModelLabel};
use crate::linalg::{nullspace, Matrix};
use crate::partitions::{partition_counts, partitions_of};

fn p(parts: &[i64]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    frac(n, d)
}

/// Dense spanning matrix of `I_d`, built without the echelon code.
fn spanning_matrix(gens: &[DiffPoly], d: i64) -> (Vec<Partition>, Matrix) {
    let cols = partitions_of(d, 2);
    let mut rows = Vec::new();
    for g in gens {
        let w = g.weight().unwrap();
        for j in 0..=(d - w) {
            let der = g.divided_derivative_closed(j as usize);
            for mu in partitions_of(d - w - j, 2) {
                let f = der.mul_monomial(&mu);
                rows.push(cols.iter().map(|c| f.coeff(c)).collect::<Vec<_>>());
            }
        }
    }
    (cols, rows)
}

fn dense_rank(rows: &Matrix, ncols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    ncols - nullspace(rows, ncols).len()
}

#[test]
fn derive_examples() {
    assert_eq!(DiffPoly::l(&[2]).derive(), DiffPoly::l(&[3]));
    assert_eq!(gen_a().derive(), DiffPoly::term(p(&[3, 2, 2]), int(3)));
    assert!(DiffPoly::one().derive().is_zero());
    assert_eq!(DiffPoly::l(&[4]).derive(), DiffPoly::term(p(&[5]), int(3)));
}

#[test]
fn divided_derivative_examples() {
    let f = gen_b();
    assert_eq!(f.divided_derivative(0), f);
    let want = DiffPoly::term(p(&[4, 2, 2]), int(3)).add(&DiffPoly::term(p(&[3, 3, 2]), int(3)));
    assert_eq!(gen_a().divided_derivative(2), want);
    let d9 = gen_a().divided_derivative(9);
    assert_eq!(d9.leading_monomial().unwrap(), p(&[5, 5, 5]));
    assert_eq!(d9.leading_coeff().unwrap(), int(1));
    assert_eq!(d9.coeff(&p(&[6, 5, 4])), int(6));
    // the normalisation 6b used by the element formulas
    let b6 = gen_b().scale(&int(6)).divided_derivative(6);
    assert_eq!(b6.coeff(&p(&[5, 5, 5])), int(55));
}

#[test]
fn leading_monomials() {
    assert_eq!(gen_a().divided_derivative(2).leading_monomial().unwrap(), p(&[3, 3, 2]));
    assert_eq!(gen_b().leading_monomial().unwrap(), p(&[4, 3, 2]));
    assert_eq!(DiffPoly::l(&[2]).leading_monomial().unwrap(), p(&[2]));
    assert_eq!(DiffPoly::zero().leading_monomial(), Err(Error::ZeroPolynomial));
}

#[test]
fn general_b_at_four_and_five() {
    assert_eq!(gen_b_general(4), gen_b());
    let b5 = gen_b_general(5);
    assert_eq!(b5.coeff(&p(&[5, 2, 2, 2])), q(-1, 9));
    assert_eq!(b5.coeff(&p(&[4, 3, 2, 2])), int(1));
    assert_eq!(b5.weight(), Some(11));
}

#[test]
fn display_from_the_top() {
    assert_eq!(gen_b().to_string(), "L_-4*L_-3*L_-2 + 1/6*L_-5*L_-2^2");
    assert_eq!(DiffPoly::one().neg().to_string(), "-1");
    assert_eq!(DiffPoly::zero().to_string(), "0");
}

#[test]
fn json_round_trip_and_rejections() {
    let b = gen_b();
    let s = b.to_json_string();
    assert_eq!(s, r#"{"weight":9,"terms":[[[5,2,2],"1/6"],[[4,3,2],"1"]]}"#);
    assert_eq!(DiffPoly::from_json_str(&s).unwrap(), b);
    assert_eq!(DiffPoly::from_json_str(r#"{"weight":null,"terms":[]}"#).unwrap(), DiffPoly::zero());
    for bad in [
        r#"{"weight":9,"terms":[[[4,3,2],"1"],[[5,2,2],"1/6"]]}"#,
        r#"{"weight":9,"terms":[[[2,3,4],"1"]]}"#,
        r#"{"weight":9,"terms":[[[4,3,1,1],"1"]]}"#,
        r#"{"weight":8,"terms":[[[4,3,2],"1"]]}"#,
        r#"{"weight":9,"terms":[[[4,3,2],"0"]]}"#,
        r#"{"weight":null,"terms":[[[2],"1"]]}"#,
        r#"{"weight":9,"terms":[],"extra":1}"#,
    ] {
        assert!(DiffPoly::from_json_str(bad).is_err(), "{bad}");
    }
}

#[test]
fn slice_examples() {
    let s6 = ideal_slice(&[gen_a()], 6).unwrap();
    assert_eq!(s6.rank(), 1);
    assert_eq!(s6.leading_monomials(), vec![p(&[2, 2, 2])]);
    assert_eq!(ideal_slice(&[gen_a()], 5).unwrap().rank(), 0);
    let s9 = ideal_slice(&[gen_a(), gen_b()], 9).unwrap();
    let lms = s9.leading_monomials();
    assert!(lms.contains(&p(&[4, 3, 2])));
    assert!(lms.contains(&p(&[3, 3, 3])));
}

#[test]
fn slice_ranks_match_dense_oracle() {
    let gens = [gen_a(), gen_b()];
    for d in 6..=16 {
        let (cols, rows) = spanning_matrix(&gens, d);
        assert_eq!(ideal_slice(&gens, d).unwrap().rank(), dense_rank(&rows, cols.len()), "d = {d}");
    }
}

#[test]
fn pivots_match_suffix_rank_oracle() {
    // column i is a leading monomial iff rank(cols >= i) > rank(cols > i)
    let gens = [gen_a(), gen_b()];
    for d in [9, 12, 14] {
        let (cols, rows) = spanning_matrix(&gens, d);
        let n = cols.len();
        let suffix_rank = |i: usize| -> usize {
            let sub: Matrix = rows.iter().map(|r| r[i..].to_vec()).collect();
            dense_rank(&sub, n - i)
        };
        let ranks: Vec<usize> = (0..=n).map(|i| if i == n { 0 } else { suffix_rank(i) }).collect();
        let want: Vec<Partition> =
            (0..n).filter(|i| ranks[*i] > ranks[i + 1]).map(|i| cols[i].clone()).collect();
        assert_eq!(ideal_slice(&gens, d).unwrap().leading_monomials(), want, "d = {d}");
    }
}

#[test]
fn membership_examples() {
    let gens = [gen_a(), gen_b()];
    assert!(membership(&gen_a(), &gens).unwrap());
    assert!(membership(&DiffPoly::l(&[5, 4, 2, 2]), &gens).unwrap());
    assert!(!membership(&DiffPoly::l(&[3, 2]), &gens).unwrap());
    assert!(membership(&DiffPoly::zero(), &gens).unwrap());
    let mixed = DiffPoly::l(&[2]).add(&DiffPoly::l(&[3]));
    assert!(membership(&mixed, &gens).is_err());
}

#[test]
fn hilbert_of_free_algebra_counts_partitions() {
    let h = hilbert_quotient(&[], 20).unwrap();
    let counts = partition_counts(21, 2);
    for d in 0..=20 {
        assert_eq!(h.coeff_int(d).unwrap(), int(counts[d as usize] as i64));
    }
}

#[test]
fn hilbert_of_power_matches_andrews_gordon() {
    for s in [2usize, 3] {
        let h = hilbert_quotient(&[gen_power(s)], 22).unwrap();
        let ag = andrews_gordon_product(s as i64, 23);
        assert!(h.compare(&ag).equal(), "s = {s}: {}", h.compare(&ag));
    }
}

#[test]
fn hilbert_of_ising_ideal_matches_character_low_order() {
    let h = hilbert_quotient(&[gen_a(), gen_b()], 22).unwrap();
    let chi = feigin_fuchs_character(MinimalModelLabel::ising(), 23);
    let cmp = h.compare(&chi);
    assert!(cmp.equal(), "{cmp}");
}

#[test]
fn without_b_first_mismatch_at_nine() {
    let h = hilbert_quotient(&[gen_a()], 12).unwrap();
    let chi = feigin_fuchs_character(MinimalModelLabel::ising(), 13);
    let m = h.compare(&chi).mismatch.unwrap();
    assert_eq!(m.exponent, int(9));
}

#[test]
fn constructed_elements() {
    let r0 = element_expr(ElementName::R, 0).unwrap();
    // r_0 = d^(1)(6b) - 2 d^(4)a
    let want = IdealExpr::derivative(Gen::B, 1).sub(&IdealExpr::derivative(Gen::A, 4).scale(&int(2)));
    assert_eq!(r0, want);
    assert_eq!(build_element(ElementName::R, 0).unwrap().leading_monomial().unwrap(), p(&[4, 4, 2]));
    assert_eq!(build_element(ElementName::T, 0).unwrap(), gen_b().scale(&int(6)));
    let e1 = build_element(ElementName::E1, 0).unwrap();
    assert_eq!(e1.leading_monomial().unwrap(), p(&[5, 4, 2, 2]));
    assert!(element_expr(ElementName::R, -1).is_err());
    assert_eq!(ElementName::parse("e3").unwrap(), ElementName::E3);
    assert!(ElementName::parse("x").is_err());
}

#[test]
fn element_leading_monomials_small_k() {
    for name in ElementName::ALL {
        let ks: &[i64] = if name.is_exceptional() { &[0] } else { &[0, 1, 2] };
        for &k in ks {
            let f = build_element(name, k).unwrap();
            assert!(f.is_homogeneous());
            assert_eq!(f.leading_monomial().unwrap(), name.claimed_leading(k), "{name}_{k}");
            assert_eq!(f.weight(), Some(element_weight(name, k)));
        }
    }
}

#[test]
fn closed_form_evaluation_agrees() {
    let mut b = ElementBuilder::new();
    for name in [ElementName::Y, ElementName::V, ElementName::E2] {
        let e = element_expr(name, 1).unwrap();
        assert_eq!(b.eval(&e), b.eval_closed(&e), "{name}");
    }
}

#[test]
fn derivative_formulas_hold() {
    let r = verify_derivative_formulas(3);
    assert!(r.passed, "{r}");
    assert_eq!(r.items.len(), 24);
}

#[test]
fn element_check_small() {
    let r = element_check(&ElementCheckOptions { k_max: 1, slice_limit: 22 }).unwrap();
    assert!(r.passed, "{r}");
}

#[test]
fn groebner_small_and_w_note() {
    let r = groebner_check(16).unwrap();
    assert!(r.passed, "{r}");
    assert!(r.notes.iter().any(|n| n.contains("[6,5,3,2]")), "{r}");
    // weight 8: d^(2)a and L_-2 a
    let s8 = ideal_slice(&[gen_a(), gen_b()], 8).unwrap();
    assert_eq!(s8.leading_monomials(), vec![p(&[3, 3, 2]), p(&[2, 2, 2, 2])]);
    let cover = closure_covers(&[p(&[2, 2, 2]), p(&[3, 2, 2]), p(&[3, 3, 2])], 8);
    assert_eq!(cover.into_iter().collect::<Vec<_>>(), s8.leading_monomials());
}

fn homogeneous_poly() -> impl Strategy<Value = DiffPoly> {
    (2i64..=9).prop_flat_map(|w| {
        let monos = partitions_of(w, 2);
        let n = monos.len();
        proptest::collection::vec((0..n, -5i64..=5), 1..4).prop_map(move |terms| {
            DiffPoly::from_terms(terms.into_iter().map(|(i, c)| (monos[i].clone(), int(c))))
        })
    })
}

proptest! {
    #[test]
    fn leibniz(f in homogeneous_poly(), g in homogeneous_poly()) {
        let lhs = f.mul(&g).derive();
        let rhs = f.derive().mul(&g).add(&f.mul(&g.derive()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derive_raises_weight_by_one(f in homogeneous_poly()) {
        prop_assume!(!f.is_zero());
        let d = f.derive();
        prop_assert!(d.is_zero() || d.weight() == Some(f.weight().unwrap() + 1));
    }

    #[test]
    fn iterative_matches_closed_form(f in homogeneous_poly(), n in 0usize..8) {
        prop_assert_eq!(f.divided_derivative(n), f.divided_derivative_closed(n));
    }

    #[test]
    fn leading_monomial_is_multiplicative(f in homogeneous_poly(), g in homogeneous_poly()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let lm = f.mul(&g).leading_monomial().unwrap();
        prop_assert_eq!(lm, f.leading_monomial().unwrap().union(&g.leading_monomial().unwrap()));
    }

    #[test]
    fn json_round_trip(f in homogeneous_poly()) {
        let back = DiffPoly::from_json_str(&f.to_json_string()).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn grevlex_multiplicative_exhaustive() {
    // m1 < m2 implies m1·n < m2·n, for all weights up to 14
    for w in 2..=14 {
        let monos = partitions_of(w, 2);
        for pair in monos.windows(2) {
            assert!(pair[0] < pair[1]);
            for v in 0..=(14 - w) {
                for n in partitions_of(v, 2) {
                    assert!(pair[0].union(&n) < pair[1].union(&n), "{} {} {}", pair[0], pair[1], n);
                }
            }
        }
    }
}
