//! Agreement between independently built pieces: the avoidance set, the
//! characters, the Virasoro quotient and the differential-ideal quotient.

use isingcheck::characters::{bigraded_character, feigin_fuchs_character, p_of_t_q, MinimalModelLabel};
use isingcheck::diffalg::{gen_a, gen_b, hilbert_quotient};
use isingcheck::partitions::{count_table, enumerate_p};
use isingcheck::qseries::QSeries;
use isingcheck::virasoro::quotient_graded_dims;

#[test]
fn avoidance_set_counts_the_character() {
    let chi = feigin_fuchs_character(MinimalModelLabel::ising(), 31).int_coeffs(31);
    for (n, c) in chi.iter().enumerate() {
        assert_eq!(enumerate_p(n as i64).len() as i64, *c, "n = {n}");
    }
}

#[test]
fn part_counts_match_the_two_variable_series() {
    let n = 30;
    let table = count_table(n);
    let p = p_of_t_q(n + 1);
    for w in 0..=n {
        for m in 0..=w {
            let want = table.p(w, m) as i64;
            let got = p.coeff(m, w);
            assert_eq!(got, isingcheck::rational::int(want), "n = {w}, m = {m}");
        }
        let brute = enumerate_p(w).iter().filter(|l| l.len() == 2).count() as u64;
        assert_eq!(table.p(w, 2), brute);
    }
}

#[test]
fn bigraded_character_collapses_to_the_character() {
    let n = 25;
    let bi = bigraded_character(n).unwrap();
    let chi = feigin_fuchs_character(MinimalModelLabel::ising(), n);
    assert!(bi.at_t_one().compare(&chi).equal());
}

#[test]
fn three_quotients_agree() {
    let n = 18;
    let vir = quotient_graded_dims(MinimalModelLabel::ising(), n).unwrap();
    let arc = hilbert_quotient(&[gen_a(), gen_b()], n).unwrap();
    for (d, v) in vir.iter().enumerate() {
        let a = arc.coeff_int(d as i64).unwrap();
        assert_eq!(a, isingcheck::rational::int(*v as i64), "degree {d}");
        assert_eq!(enumerate_p(d as i64).len() as u64, *v, "degree {d}");
    }
}

#[test]
fn character_survives_json() {
    let chi = feigin_fuchs_character(MinimalModelLabel::ising(), 40);
    let back = QSeries::from_json_str(&chi.to_json_string()).unwrap();
    assert!(back.compare(&chi).equal());
    assert_eq!(back.trunc(), chi.trunc());
}
