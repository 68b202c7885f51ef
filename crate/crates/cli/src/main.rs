use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use isingcheck_cli::{render, run, Check, Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "isingcheck", version, about = "Exact verification of Ising-model character identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation order for a single check.
    #[arg(long, global = true)]
    trunc: Option<i64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// File of `key = value` settings; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Halve every truncation order.
    #[arg(long, global = true)]
    reduced: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    CharactersEqual,
    NahmE8,
    ModulesIdentities,
    PartitionsCount,
    Recursion,
    FunctionalEqs,
    Families,
    RecurrenceS,
    /// Hilbert series of the quotient by a differential ideal.
    Hilbert {
        /// Comma-separated generators: a, b, 6b, pow<s>.
        #[arg(long, default_value = "a,b")]
        gens: String,
    },
    Prop51,
    Groebner,
    SingularVector,
    LemmaB,
    NahmAlpha,
    /// Every check at the configured orders.
    All,
}

impl Command {
    fn checks(&self) -> Vec<Check> {
        match self {
            Command::CharactersEqual => vec![Check::CharactersEqual],
            Command::NahmE8 => vec![Check::NahmE8],
            Command::ModulesIdentities => vec![Check::ModulesIdentities],
            Command::PartitionsCount => vec![Check::PartitionsCount],
            Command::Recursion => vec![Check::Recursion],
            Command::FunctionalEqs => vec![Check::FunctionalEqs],
            Command::Families => vec![Check::Families],
            Command::RecurrenceS => vec![Check::RecurrenceS],
            Command::Hilbert { .. } => vec![Check::Hilbert],
            Command::Prop51 => vec![Check::Prop51],
            Command::Groebner => vec![Check::Groebner],
            Command::SingularVector => vec![Check::SingularVector],
            Command::LemmaB => vec![Check::LemmaB],
            Command::NahmAlpha => vec![Check::NahmAlpha],
            Command::All => Check::ALL.to_vec(),
        }
    }

    fn name(&self) -> String {
        let debug = format!("{self:?}");
        let head = debug.split([' ', '{']).next().unwrap_or_default();
        let mut out = String::new();
        for (i, ch) in head.chars().enumerate() {
            if ch.is_uppercase() && i > 0 {
                out.push('-');
            }
            out.push(ch.to_ascii_lowercase());
        }
        out
    }
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("isingcheck: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match RunConfig::parse(&text) {
                Ok(c) => c,
                Err(e) => return config_error(format!("{}: {e}", path.display())),
            },
            Err(e) => return config_error(format!("{}: {e}", path.display())),
        },
        None => RunConfig::default(),
    };
    if cli.reduced {
        cfg = cfg.reduced();
    }
    let list = cli.command.checks();
    if let Some(n) = cli.trunc {
        if n < 1 {
            return config_error("--trunc must be at least 1");
        }
        if list.len() != 1 {
            return config_error("--trunc applies to a single check; use --config or --reduced with all");
        }
        list[0].override_order(&mut cfg, n);
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }
    if let Some(o) = cli.out {
        cfg.out = Some(o);
    }
    let gens = match &cli.command {
        Command::Hilbert { gens } => gens.clone(),
        _ => "a,b".to_string(),
    };
    if let Command::Hilbert { gens } = &cli.command {
        if let Err(e) = isingcheck::checks::parse_generators(gens) {
            return config_error(e);
        }
    }
    let output = match run(&cli.command.name(), &list, &cfg, &gens) {
        Ok(o) => o,
        Err(e) => return config_error(e),
    };
    let text = render(&output, cfg.format);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return config_error(format!("{}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    if output.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
