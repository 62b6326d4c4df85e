//! `zcent`: classification, witnesses, GL(n, Z) searches and the H_M
//! pipeline from the command line.
//!
//! Exit codes: 0 decided, 2 unknown or incomplete, 1 error or rejected.

mod commands;
mod document;
mod report;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use zcent_core::backends::SearchConfig;
use zcent_core::hm::DEFAULT_DEPTH;

use crate::commands::*;
use crate::document::{check_stdin_once, read_document, MatrixDocument};
use crate::report::{exit_code, ReportDocument};

#[derive(Parser)]
#[command(name = "zcent", version, about = "Centralizers of rational matrices in GL(n, Z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Coefficient bound for lattice searches.
    #[arg(long, global = true, default_value_t = 3)]
    bound: u32,
    /// Orbit search depth.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    /// Primes for the modular non-conjugacy filter.
    #[arg(long, global = true, value_delimiter = ',', default_value = "2,3,5")]
    primes: Vec<u64>,
    /// Single-line JSON (default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

/// Inputs are matrix document paths, `-` for stdin.
#[derive(Subcommand)]
enum Command {
    /// Abelian, contains-free or polycyclic, with evidence.
    Classify { t: String },
    /// Kernel filtrations and Jordan block sizes per irreducible factor.
    Profile { t: String },
    /// Non-commuting pair, GL(2) embedding and invariant flags.
    Witnesses { t: String },
    /// Is there P in GL(n, Z) with P T P^-1 = T-hat?
    ConjGlnz { t: String, t_hat: String },
    /// Generators of the centralizer of T in GL(n, Z) found by the search.
    Centralizer { t: String },
    /// Is there Q in H_M with Q T Q^-1 = T-hat?
    ConjHm { t: String, t_hat: String, m: String },
    /// Generators of the centralizer of T in H_M.
    StabHm { t: String, m: String },
    /// Re-check the claim in a report produced by another subcommand.
    Verify { report: String },
}

fn load(pairs: &[(&str, &str)]) -> Result<BTreeMap<String, MatrixDocument>> {
    check_stdin_once(&pairs.iter().map(|(_, p)| *p).collect::<Vec<_>>())?;
    pairs.iter().map(|(k, p)| Ok((k.to_string(), read_document(p)?))).collect()
}

fn run(cli: &Cli) -> Result<ReportDocument> {
    let o = &cli.opts;
    let cfg = SearchConfig { coeff_bound: o.bound, filter_primes: o.primes.clone(), ..SearchConfig::default() };
    let start = Instant::now();
    let (name, inputs) = match &cli.command {
        Command::Classify { t } => ("classify", load(&[("t", t)])?),
        Command::Profile { t } => ("profile", load(&[("t", t)])?),
        Command::Witnesses { t } => ("witnesses", load(&[("t", t)])?),
        Command::ConjGlnz { t, t_hat } => ("conj-glnz", load(&[("t", t), ("t_hat", t_hat)])?),
        Command::Centralizer { t } => ("centralizer", load(&[("t", t)])?),
        Command::ConjHm { t, t_hat, m } => ("conj-hm", load(&[("t", t), ("t_hat", t_hat), ("m", m)])?),
        Command::StabHm { t, m } => ("stab-hm", load(&[("t", t), ("m", m)])?),
        Command::Verify { report } => {
            let text = if report == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                std::fs::read_to_string(report).with_context(|| format!("reading {report}"))?
            };
            let checked: ReportDocument = serde_json::from_str(&text).context("parsing report")?;
            let (result, detail) = match verify_report(&checked) {
                Ok(d) => ("verified", d),
                Err(e) => ("rejected", format!("{e:#}")),
            };
            let mut payload = serde_json::Map::new();
            payload.insert("checked".into(), checked.command.clone().into());
            payload.insert("detail".into(), detail.into());
            return Ok(ReportDocument {
                command: "verify".into(),
                result: result.into(),
                inputs: checked.inputs,
                config: checked.config,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                payload,
            });
        }
    };
    let m = |k: &str| inputs[k].to_matrix();
    let (result, payload) = match &cli.command {
        Command::Classify { .. } => cmd_classify(&m("t"))?,
        Command::Profile { .. } => cmd_profile(&m("t"))?,
        Command::Witnesses { .. } => cmd_witnesses(&m("t"))?,
        Command::ConjGlnz { .. } => cmd_conj_glnz(&m("t"), &m("t_hat"), &cfg)?,
        Command::Centralizer { .. } => cmd_centralizer(&m("t"), &cfg)?,
        Command::ConjHm { .. } => cmd_conj_hm(&m("t"), &m("t_hat"), &m("m"), &cfg, o.depth)?,
        Command::StabHm { .. } => cmd_stab_hm(&m("t"), &m("m"), &cfg, o.depth)?,
        Command::Verify { .. } => unreachable!(),
    };
    Ok(ReportDocument {
        command: name.into(),
        result,
        inputs,
        config: echo(&cfg, o.depth),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        payload,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = if cli.opts.pretty { serde_json::to_string_pretty(&report) } else { serde_json::to_string(&report) };
            println!("{}", text.expect("reports serialize"));
            ExitCode::from(exit_code(&report.result) as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
