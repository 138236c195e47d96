//! `howe`: symbol statistics, series listings, theta partners, first
//! occurrences and the verification suites.
//!
//! Exit codes: 0 success, 1 a check failed or closed form and oracle
//! disagree, 2 bad usage or unparsable input.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use howe_core::character::{
    first_occurrence_general, first_occurrence_scan, preservation_sum_general, CharFamily, GeneralCharacter, SpTargets,
    Target,
};
use howe_core::partition::Partition;
use howe_core::symbol::{
    enumerate_series, partition_from_symbol, symbol_from_partition, SeriesFamily, SeriesTag, Sign, Symbol,
};
use howe_core::theta::{
    first_occurrence_bruteforce, first_occurrence_unitary, theta_zero_orth, theta_zero_sp, theta_zero_unitary,
    weil_pairs, weil_pairs_unitary, Parity, SeriesCache,
};
use howe_core::verify::{run_suite, SampleConfig, Suite, VerifyConfig};

use output::{render, CharacterFirstRow, FirstOccurrenceRow, Format, PairRow, PreservationRow, SymbolInfo, VerifyRow};

#[derive(Parser)]
#[command(name = "howe", version, about = "Lusztig symbols and theta-correspondence first occurrences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Emit {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized form and statistics of a symbol literal such as `1,0|2`.
    Symbol {
        #[arg(allow_hyphen_values = true)]
        literal: String,
        #[command(flatten)]
        emit: Emit,
    },
    /// Every unipotent symbol of a series (or every partition for `u`).
    Enumerate {
        #[arg(long)]
        group: SeriesFamily,
        #[arg(long)]
        rank: u32,
        #[command(flatten)]
        emit: Emit,
    },
    /// Unipotent theta correspondence.
    Theta {
        #[command(subcommand)]
        command: ThetaCommand,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        max_rank: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[command(flatten)]
        emit: Emit,
    },
    /// First occurrences and preservation sums of a general character given as JSON.
    Character {
        #[command(subcommand)]
        command: CharacterCommand,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pair {
    #[value(name = "sp:o+")]
    SpOPlus,
    #[value(name = "sp:o-")]
    SpOMinus,
    #[value(name = "u:u")]
    UU,
}

#[derive(Subcommand)]
enum ThetaCommand {
    /// Related unipotent pairs of the given ranks.
    Partners {
        #[arg(long, value_enum)]
        pair: Pair,
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        corank: u32,
        #[command(flatten)]
        emit: Emit,
    },
    /// Closed-form and scanned first occurrence of a unipotent character.
    First {
        #[arg(long)]
        group: SeriesFamily,
        /// A symbol literal, or a partition such as `2,1` for `u`.
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
        /// `o+`, `o-` or `sp`; `even` or `odd` for `u`.
        #[arg(long)]
        target: String,
        #[command(flatten)]
        emit: Emit,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetPair {
    Even,
    Odd,
}

#[derive(Subcommand)]
enum CharacterCommand {
    /// Closed-form first occurrence against the scanning oracle.
    First {
        /// Character JSON, or `@path` to read it from a file.
        #[arg(long)]
        character: String,
        /// `u-even`, `u-odd`, `sp`, `o+`, `o-`, `oodd` or `oodd-c`.
        #[arg(long)]
        target: Target,
        #[command(flatten)]
        emit: Emit,
    },
    /// The preservation identity for the character.
    Preservation {
        #[arg(long)]
        character: String,
        /// For symplectic characters: even or odd orthogonal targets.
        #[arg(long, value_enum, default_value = "even")]
        targets: TargetPair,
        #[command(flatten)]
        emit: Emit,
    },
}

/// Bad input (exit 2) versus a failed check or computation (exit 1).
enum Failure {
    Usage(anyhow::Error),
    Check(anyhow::Error),
}

impl From<howe_core::Error> for Failure {
    fn from(e: howe_core::Error) -> Self {
        match e {
            howe_core::Error::CapExceeded { .. } => Failure::Check(e.into()),
            other => Failure::Usage(other.into()),
        }
    }
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn check(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Check(e.into())
}

type Outcome = Result<bool, Failure>;

fn emit<T: serde::Serialize>(rows: &[T], emit: &Emit) -> Result<(), Failure> {
    let text = render(rows, emit.format).map_err(check)?;
    match &emit.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())).map_err(check),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn symbol_info(s: &Symbol, partition: Option<&Partition>) -> SymbolInfo {
    let series = match partition {
        Some(_) => "u".to_string(),
        None => SeriesFamily::of_defect(s.defect()).map(|f| f.name().to_string()).unwrap_or_default(),
    };
    SymbolInfo {
        partition: partition.map(ToString::to_string),
        symbol: s.to_string(),
        rank: s.rank(),
        defect: s.defect(),
        delta: s.delta(),
        upsilon: s.upsilon().to_string(),
        cuspidal: s.is_cuspidal(),
        series,
    }
}

fn cmd_symbol(literal: &str, out: &Emit) -> Outcome {
    let s: Symbol = literal.parse()?;
    emit(&[symbol_info(&s.normalize(), None)], out)?;
    Ok(true)
}

fn cmd_enumerate(group: SeriesFamily, rank: u32, out: &Emit) -> Outcome {
    let rows: Vec<SymbolInfo> = if group == SeriesFamily::U {
        howe_core::partition::partitions_of(rank)
            .iter()
            .map(|p| symbol_info(&symbol_from_partition(p), Some(p)))
            .collect()
    } else {
        enumerate_series(SeriesTag::new(group, rank))?.iter().map(|s| symbol_info(s, None)).collect()
    };
    emit(&rows, out)?;
    Ok(true)
}

fn cmd_partners(pair: Pair, rank: u32, corank: u32, out: &Emit) -> Outcome {
    let rows: Vec<PairRow> = match pair {
        Pair::SpOPlus | Pair::SpOMinus => {
            let eps = if pair == Pair::SpOPlus { Sign::Plus } else { Sign::Minus };
            weil_pairs(rank, eps, corank)
                .into_iter()
                .map(|(a, b)| PairRow { left: a.to_string(), right: b.to_string() })
                .collect()
        }
        Pair::UU => weil_pairs_unitary(rank, corank)
            .into_iter()
            .map(|(a, b)| PairRow { left: a.to_string(), right: b.to_string() })
            .collect(),
    };
    emit(&rows, out)?;
    Ok(true)
}

fn cmd_theta_first(group: SeriesFamily, literal: &str, target: &str, out: &Emit) -> Outcome {
    let cache = SeriesCache::new();
    let row = if group == SeriesFamily::U {
        let lambda: Partition = literal.parse()?;
        let parity: Parity = target.parse()?;
        let closed = theta_zero_unitary(&lambda, parity);
        let oracle = first_occurrence_unitary(&cache, &lambda, parity)?;
        let agree =
            closed.size() == oracle.space_dimension && oracle.witnesses.contains(&symbol_from_partition(&closed));
        let as_partition = |s: &Symbol| partition_from_symbol(s).map(|p| p.to_string()).unwrap_or_default();
        FirstOccurrenceRow {
            source: lambda.to_string(),
            target: parity.to_string(),
            closed_partner: closed.to_string(),
            closed_dimension: closed.size(),
            oracle_partner: as_partition(&oracle.partner),
            oracle_dimension: oracle.space_dimension,
            witnesses: oracle.witnesses.iter().map(as_partition).collect::<Vec<_>>().join(";"),
            agree,
        }
    } else {
        let s: Symbol = literal.parse()?;
        let s = s.normalize();
        if SeriesFamily::of_defect(s.defect()) != Some(group) {
            return Err(usage(anyhow!("symbol {s} (defect {}) is not in the {group} series", s.defect())));
        }
        let target: SeriesFamily = target.parse()?;
        let closed = match (group, target) {
            (SeriesFamily::Sp, SeriesFamily::OEvenPlus) => theta_zero_sp(&s, Sign::Plus)?,
            (SeriesFamily::Sp, SeriesFamily::OEvenMinus) => theta_zero_sp(&s, Sign::Minus)?,
            (SeriesFamily::OEvenPlus | SeriesFamily::OEvenMinus, SeriesFamily::Sp) => theta_zero_orth(&s)?,
            _ => return Err(usage(anyhow!("no {group} to {target} correspondence"))),
        };
        let oracle = first_occurrence_bruteforce(&cache, &s, target)?;
        FirstOccurrenceRow {
            source: s.to_string(),
            target: target.to_string(),
            closed_partner: closed.to_string(),
            closed_dimension: 2 * closed.rank(),
            oracle_partner: oracle.partner.to_string(),
            oracle_dimension: oracle.space_dimension,
            witnesses: oracle.witnesses.iter().map(ToString::to_string).collect::<Vec<_>>().join(";"),
            agree: oracle.partner == closed && oracle.space_dimension == 2 * closed.rank(),
        }
    };
    let agree = row.agree;
    emit(&[row], out)?;
    Ok(agree)
}

fn read_character(arg: &str) -> Result<GeneralCharacter, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}")).map_err(usage)?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).context("parsing character JSON").map_err(usage)
}

fn cmd_character_first(literal: &str, target: Target, out: &Emit) -> Outcome {
    let rho = read_character(literal)?;
    let closed = first_occurrence_general(&rho, target)?;
    let (scanned, partner) = first_occurrence_scan(&SeriesCache::new(), &rho, target)?;
    let row = CharacterFirstRow {
        character: rho.to_string(),
        target: target.to_string(),
        closed_dimension: closed,
        oracle_dimension: scanned,
        oracle_partner: partner.to_string(),
        agree: closed == scanned,
    };
    emit(&[row], out)?;
    Ok(closed == scanned)
}

fn cmd_preservation(literal: &str, targets: TargetPair, out: &Emit) -> Outcome {
    let rho = read_character(literal)?;
    let sp_targets = match targets {
        TargetPair::Even => SpTargets::Even,
        TargetPair::Odd => SpTargets::Odd,
    };
    let p = preservation_sum_general(&rho, sp_targets)?;
    let label = match rho.family() {
        CharFamily::Unitary { .. } => "u-even,u-odd",
        CharFamily::OEven { .. } | CharFamily::OOdd { .. } => "sp,sp-sgn",
        CharFamily::Sp { .. } if targets == TargetPair::Even => "o+,o-",
        CharFamily::Sp { .. } => "oodd,oodd-c",
    };
    let row = PreservationRow {
        character: rho.to_string(),
        targets: label.to_string(),
        first: p.first,
        second: p.second,
        lhs: p.lhs,
        rhs: p.rhs,
        pass: p.lhs == p.rhs,
    };
    emit(&[row], out)?;
    Ok(p.lhs == p.rhs)
}

fn cmd_verify(suite: Suite, max_rank: u32, seed: u64, samples: usize, out: &Emit) -> Outcome {
    let sampling = SampleConfig { seed, samples, scanned: samples.min(100), ..SampleConfig::default() };
    let config = VerifyConfig { max_rank, sampling };
    let report = run_suite(&SeriesCache::new(), suite, &config)?;
    let rows: Vec<VerifyRow> = report
        .checks
        .iter()
        .map(|r| VerifyRow {
            suite: suite.to_string(),
            check: r.check.clone(),
            parameters: r.parameters.clone(),
            expected: r.expected.clone(),
            actual: r.actual.clone(),
            pass: r.pass,
        })
        .collect();
    emit(&rows, out)?;
    let failing = rows.iter().filter(|r| !r.pass).count();
    eprintln!("{suite}: {} ({} checks, {failing} failing)", if failing == 0 { "PASS" } else { "FAIL" }, rows.len());
    Ok(failing == 0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Symbol { literal, emit } => cmd_symbol(&literal, &emit),
        Command::Enumerate { group, rank, emit } => cmd_enumerate(group, rank, &emit),
        Command::Theta { command } => match command {
            ThetaCommand::Partners { pair, rank, corank, emit } => cmd_partners(pair, rank, corank, &emit),
            ThetaCommand::First { group, symbol, target, emit } => cmd_theta_first(group, &symbol, &target, &emit),
        },
        Command::Verify { suite, max_rank, seed, samples, emit } => cmd_verify(suite, max_rank, seed, samples, &emit),
        Command::Character { command } => match command {
            CharacterCommand::First { character, target, emit } => cmd_character_first(&character, target, &emit),
            CharacterCommand::Preservation { character, targets, emit } => cmd_preservation(&character, targets, &emit),
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
