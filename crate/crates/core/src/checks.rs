//! One entry point per verification, shared by the command-line front-end
//! and the acceptance suite. Each takes its truncation order explicitly.

use crate::characters::{
    self, alt_expression, andrews_gordon_product, feigin_fuchs_character, module_character, mod16_product,
    nahm_sum, push_comparison, AltForm, IsingModule, MinimalModelLabel, NahmData, Side,
};
use crate::diffalg::{
    self, gen_a, gen_b, gen_power, hilbert_quotient_with, DiffPoly, GradedIdealSlice, ElementCheckOptions,
};
use crate::error::{Error, Result};
use crate::partitions::{self, enumerate_p};
use crate::polyfamilies::{self, FamilyId, FamilySide, Sector};
use crate::qseries::QSeries;
use crate::report::Report;
use crate::virasoro;

/// The four classical expressions agree pairwise modulo `q^n`.
pub fn characters_equal(n: i64) -> Report {
    let mut report = Report::new("four classical character expressions", format!("q^{n}"));
    let forms: Vec<(AltForm, QSeries)> = AltForm::ALL.iter().map(|w| (*w, alt_expression(*w, n))).collect();
    let (base_name, base) = (&forms[0].0, &forms[0].1);
    for (w, s) in &forms[1..] {
        push_comparison(&mut report, format!("{} = {}", base_name.name(), w.name()), base, s);
    }
    push_comparison(
        &mut report,
        "BGG = Feigin-Fuchs (3,4)",
        base,
        &feigin_fuchs_character(MinimalModelLabel::ising(), n),
    );
    report
}

/// The quasi-particle double sum equals the Euler form modulo `q^n`.
pub fn quasiparticle_identity(n: i64) -> Report {
    let mut report = Report::new("quasi-particle double sum", format!("q^{n}"));
    push_comparison(
        &mut report,
        "double sum = Euler form",
        &characters::quasiparticle_chi(n),
        &alt_expression(AltForm::Euler, n),
    );
    report
}

/// The eight-fold E8 sum and the Andrews-Gordon sums against their products.
pub fn nahm_e8(n: i64) -> Result<Report> {
    let mut report = Report::new("E8 Nahm sum", format!("q^{n}"));
    push_comparison(
        &mut report,
        "E8 sum = character of (3,4)",
        &nahm_sum(&NahmData::e8(), n)?,
        &feigin_fuchs_character(MinimalModelLabel::ising(), n),
    );
    Ok(report)
}

/// Classical and new forms of the three module characters modulo `q^n`.
pub fn module_identities(n: i64) -> Report {
    let mut report = Report::new("module characters", format!("q^{n}"));
    for m in IsingModule::ALL {
        push_comparison(
            &mut report,
            format!("{} classical = new", m.name()),
            &module_character(m, Side::Classical, n),
            &module_character(m, Side::New, n),
        );
    }
    report
}

/// `|𝒫(k)|` against the mod-16 product and the quintuple product for `k ≤ n`.
pub fn partitions_count(n: i64) -> Report {
    let mut report = Report::new("avoidance set counts", format!("n <= {n}"));
    let product = mod16_product(n + 1);
    let quintuple = alt_expression(AltForm::QuintupleProduct, n + 1);
    push_comparison(&mut report, "mod-16 product = quintuple product", &product, &quintuple);
    let bad: Vec<String> = (0..=n)
        .filter_map(|k| {
            let count = enumerate_p(k).len() as i64;
            let coeff = characters::int_coeff(&product, k)?;
            (count != coeff).then(|| format!("n={k}: {count} vs {coeff}"))
        })
        .collect();
    report.push(
        "|P(n)| = product coefficient",
        bad.is_empty(),
        if bad.is_empty() { format!("all {} values agree", n + 1) } else { bad.join("; ") },
    );
    report
}

pub fn recursion(n: i64) -> Report {
    partitions::recursion_check(n)
}

/// Functional equations of the closed forms and `P(t,q) = A + … + E`.
pub fn functional_eqs(n: i64) -> Report {
    let mut report = characters::functional_equation_check(n);
    report.check = "functional equations and P(t,q) decomposition".to_string();
    report.absorb("closed forms", characters::closed_form_cross_check(n));
    report
}

/// `S_n = T_n` in all three sectors for `n ≤ n_max`.
pub fn families(n_max: i64) -> Report {
    let mut report = Report::new("polynomial families S = T", format!("n <= {n_max}"));
    for sector in Sector::ALL {
        report.absorb(sector.name(), polyfamilies::equality_check(sector, n_max));
    }
    report
}

pub fn recurrence_s(n_max: i64) -> Report {
    polyfamilies::recurrence_check_s(n_max)
}

/// Limits of the `S` families against the module characters modulo `q^order`.
pub fn family_limits(n: i64, order: i64) -> Result<Report> {
    let mut report = Report::new("family limits", format!("q^{order}"));
    for sector in Sector::ALL {
        let id = FamilyId::new(sector, FamilySide::S);
        report.absorb(&id.to_string(), polyfamilies::limit_check(id, n, order)?);
    }
    Ok(report)
}

/// `a`, `b`, `6b` or `pow<s>` (for `L_{-2}^s`), comma separated.
pub fn parse_generators(spec: &str) -> Result<Vec<DiffPoly>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s {
            "a" => Ok(gen_a()),
            "b" => Ok(gen_b()),
            "6b" => Ok(gen_b().scale(&crate::rational::int(6))),
            _ => match s.strip_prefix("pow").map(str::parse::<usize>) {
                Some(Ok(k)) if (1..=64).contains(&k) => Ok(gen_power(k)),
                _ => Err(Error::Parse(format!("unknown generator {s:?}"))),
            },
        })
        .collect::<Result<Vec<_>>>()
        .and_then(|g| {
            if g.is_empty() {
                Err(Error::Parse("no generators given".into()))
            } else {
                Ok(g)
            }
        })
}

/// Hilbert series of `ℂ[L] / (gens)_∂` against the (3,4) character modulo
/// `q^{n+1}`, with the slice routine supplied by the caller.
pub fn hilbert_with<F>(gens: &[DiffPoly], label: &str, n: i64, slice: F) -> Result<Report>
where
    F: Fn(i64) -> Result<GradedIdealSlice>,
{
    let mut report = Report::new(format!("Hilbert series of the quotient by ({label})"), format!("q^{}", n + 1));
    let h = hilbert_quotient_with(gens, n, slice)?;
    push_comparison(
        &mut report,
        "quotient = character of (3,4)",
        &h,
        &feigin_fuchs_character(MinimalModelLabel::ising(), n + 1),
    );
    Ok(report)
}

pub fn hilbert(gens: &[DiffPoly], label: &str, n: i64) -> Result<Report> {
    hilbert_with(gens, label, n, |d| diffalg::ideal_slice(gens, d))
}

/// Leading monomials of the constructed elements and the derivative formulas.
pub fn ideal_elements(k_max: i64) -> Result<Report> {
    let opts = ElementCheckOptions { k_max, ..ElementCheckOptions::default() };
    let mut report = diffalg::element_check(&opts)?;
    report.absorb("derivative formulas", diffalg::verify_derivative_formulas(k_max.min(3)));
    Ok(report)
}

pub fn groebner(n: i64) -> Result<Report> {
    diffalg::groebner_check(n)
}

/// Singular vector and quotient dimensions to degree `n`, plus the (3,5)
/// Hilbert comparison to degree `gap_order`.
pub fn singular_vector(n: i64, gap_order: i64) -> Result<Report> {
    let mut report = virasoro::singular_vector_report(n)?;
    report.absorb("(3,5)", diffalg::three_five_gap_check(gap_order)?);
    Ok(report)
}

/// The degree-9 identity and the kernel lemma for `p' ∈ {4, 5, 7}`.
pub fn lemma_b() -> Result<Report> {
    let mut report = virasoro::lemma_b_check()?;
    for pp in [4, 5, 7] {
        report.absorb(&format!("p'={pp}"), virasoro::lemma_bp_check(pp)?);
    }
    Ok(report)
}

/// Andrews-Gordon sums for `s ∈ {2,3,4}` against the products modulo `q^n`.
pub fn andrews_gordon(n: i64) -> Result<Report> {
    let mut report = Report::new("Andrews-Gordon sums", format!("q^{n}"));
    for s in 2..=4 {
        push_comparison(
            &mut report,
            format!("s={s}"),
            &nahm_sum(&NahmData::andrews_gordon(s as usize)?, n)?,
            &andrews_gordon_product(s, n),
        );
    }
    Ok(report)
}
