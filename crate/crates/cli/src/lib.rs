//! Command-line front-end: every verification as a subcommand, rendered as
//! JSON, CSV or text.

pub mod config;

use std::collections::HashMap;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use isingcheck::checks;
use isingcheck::diffalg::{ideal_slice, GradedIdealSlice};
use isingcheck::nahm;
use isingcheck::report::Report;

pub use config::{ConfigError, Format, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Check {
    CharactersEqual,
    NahmE8,
    ModulesIdentities,
    PartitionsCount,
    Recursion,
    FunctionalEqs,
    Families,
    RecurrenceS,
    Hilbert,
    Prop51,
    Groebner,
    SingularVector,
    LemmaB,
    NahmAlpha,
}

impl Check {
    pub const ALL: [Check; 14] = [
        Check::CharactersEqual,
        Check::NahmE8,
        Check::ModulesIdentities,
        Check::PartitionsCount,
        Check::Recursion,
        Check::FunctionalEqs,
        Check::Families,
        Check::RecurrenceS,
        Check::Hilbert,
        Check::Prop51,
        Check::Groebner,
        Check::SingularVector,
        Check::LemmaB,
        Check::NahmAlpha,
    ];

    /// Apply a `--trunc` override to the order this check reads.
    pub fn override_order(self, cfg: &mut RunConfig, n: i64) {
        match self {
            Check::CharactersEqual | Check::PartitionsCount => cfg.qseries = n,
            Check::ModulesIdentities => cfg.modules = n,
            Check::NahmE8 => cfg.e8 = n,
            Check::Recursion | Check::FunctionalEqs | Check::Families => cfg.two_variable = n,
            Check::RecurrenceS => cfg.recurrence = n,
            Check::Hilbert => cfg.hilbert = n,
            Check::Prop51 => cfg.element_k = n,
            Check::Groebner => cfg.groebner = n,
            Check::SingularVector => cfg.virasoro = n,
            Check::LemmaB | Check::NahmAlpha => {}
        }
    }
}

/// One report with its wall-clock time and optional structured payload.
#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    #[serde(flatten)]
    pub report: Report,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunOutput {
    pub schema: u32,
    pub command: String,
    pub passed: bool,
    pub reports: Vec<Entry>,
}

fn failed(check: &str, e: impl std::fmt::Display) -> Report {
    let mut r = Report::new(check, "not run");
    r.push("computation", false, format!("error: {e}"));
    r
}

fn entry(report: Report, start: Instant) -> Entry {
    Entry { report, seconds: start.elapsed().as_secs_f64(), data: None }
}

/// Slices of the ideal computed in parallel, handed out once each.
fn parallel_hilbert(gens_spec: &str, n: i64) -> Report {
    let gens = match checks::parse_generators(gens_spec) {
        Ok(g) => g,
        Err(e) => return failed("Hilbert series", e),
    };
    let slices: HashMap<i64, GradedIdealSlice> = match (0..=n)
        .into_par_iter()
        .map(|d| ideal_slice(&gens, d).map(|s| (d, s)))
        .collect::<isingcheck::Result<_>>()
    {
        Ok(m) => m,
        Err(e) => return failed("Hilbert series", e),
    };
    let slices = Mutex::new(slices);
    let take = |d: i64| {
        let mut m = slices.lock().expect("no poisoned lock");
        match m.remove(&d) {
            Some(s) => Ok(s),
            None => ideal_slice(&gens, d),
        }
    };
    checks::hilbert_with(&gens, gens_spec, n, take).unwrap_or_else(|e| failed("Hilbert series", e))
}

/// Run one check; `characters-equal` yields two reports, the rest one.
pub fn run_check(check: Check, cfg: &RunConfig, gens: &str) -> Vec<Entry> {
    let start = Instant::now();
    let or_fail = |name: &str, r: isingcheck::Result<Report>| r.unwrap_or_else(|e| failed(name, e));
    match check {
        Check::CharactersEqual => {
            let a = entry(checks::characters_equal(cfg.qseries), start);
            let start = Instant::now();
            vec![a, entry(checks::quasiparticle_identity(cfg.qseries), start)]
        }
        Check::NahmE8 => vec![entry(or_fail("E8 Nahm sum", checks::nahm_e8(cfg.e8)), start)],
        Check::ModulesIdentities => vec![entry(checks::module_identities(cfg.modules), start)],
        Check::PartitionsCount => vec![entry(checks::partitions_count(cfg.qseries), start)],
        Check::Recursion => vec![entry(checks::recursion(cfg.two_variable), start)],
        Check::FunctionalEqs => vec![entry(checks::functional_eqs(cfg.two_variable), start)],
        Check::Families => vec![entry(checks::families(cfg.two_variable), start)],
        Check::RecurrenceS => vec![entry(checks::recurrence_s(cfg.recurrence), start)],
        Check::Hilbert => vec![entry(parallel_hilbert(gens, cfg.hilbert), start)],
        Check::Prop51 => vec![entry(or_fail("ideal elements", checks::ideal_elements(cfg.element_k)), start)],
        Check::Groebner => vec![entry(or_fail("Groebner property", checks::groebner(cfg.groebner)), start)],
        Check::SingularVector => vec![entry(
            or_fail("singular vector", checks::singular_vector(cfg.virasoro, cfg.groebner)),
            start,
        )],
        Check::LemmaB => vec![entry(or_fail("kernel identities", checks::lemma_b()), start)],
        Check::NahmAlpha => match nahm::nahm_alpha_report() {
            Ok((report, sol)) => {
                let mut e = entry(report, start);
                e.data = serde_json::to_value(&sol).ok();
                vec![e]
            }
            Err(e) => vec![entry(failed("Nahm system", e), start)],
        },
    }
}

/// Run the checks on a pool of `cfg.jobs` threads, keeping their order.
pub fn run(command: &str, list: &[Check], cfg: &RunConfig, gens: &str) -> Result<RunOutput, ConfigError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| ConfigError(format!("thread pool: {e}")))?;
    let reports: Vec<Entry> = pool.install(|| {
        list.par_iter()
            .map(|c| run_check(*c, cfg, gens))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    });
    Ok(RunOutput {
        schema: 1,
        command: command.to_string(),
        passed: reports.iter().all(|e| e.report.passed),
        reports,
    })
}

pub fn render(out: &RunOutput, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(out).expect("serialisable") + "\n",
        Format::Text => {
            let mut s = String::new();
            for e in &out.reports {
                s.push_str(&e.report.to_string());
                s.push_str(&format!("  time: {:.3} s\n", e.seconds));
            }
            let verdict = if out.passed { "all checks passed" } else { "some checks failed" };
            s.push_str(&format!("{}: {verdict}\n", out.command));
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["check", "order", "check_passed", "seconds", "label", "passed", "detail"])
                .expect("in-memory write");
            for e in &out.reports {
                let r = &e.report;
                let secs = format!("{:.3}", e.seconds);
                for item in &r.items {
                    w.write_record([
                        r.check.as_str(),
                        r.order.as_str(),
                        bool_str(r.passed),
                        secs.as_str(),
                        item.label.as_str(),
                        bool_str(item.passed),
                        item.detail.as_str(),
                    ])
                    .expect("in-memory write");
                }
            }
            String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8 fields")
        }
    }
}

fn bool_str(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}
