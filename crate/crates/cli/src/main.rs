//! Command-line front end: classify the string C-group representations of a
//! permutation group and write them as a JSONL catalog.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, ValueEnum};
use polyatlas::atlas::write_jsonl;
use polyatlas::{fixture, run_classify, run_oracle, ClassifyOptions, Error, GroupAnalysis, Limits, RankSelection};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Ranks {
    #[value(name = "3")]
    Three,
    High,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "polyatlas", version, about = "Classify string C-group representations of a permutation group")]
struct Args {
    /// Group file: a `degree d` line, then one generator per line.
    #[arg(long)]
    group: PathBuf,

    /// Ranks to classify.
    #[arg(long, value_enum, default_value = "all")]
    ranks: Ranks,

    /// Skip the rank-3 intersection-property test. Only valid for groups
    /// without a nontrivial cyclic normal subgroup.
    #[arg(long)]
    skip_c2: bool,

    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,

    /// Write the catalog here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Largest group whose elements may be enumerated.
    #[arg(long, default_value_t = 20_000_000)]
    max_enum: u64,

    /// Print the conjugacy class table and exit.
    #[arg(long)]
    dump_classes: bool,

    /// Use exhaustive enumeration instead (groups of order at most 2000).
    #[arg(long)]
    oracle: bool,

    /// Largest rank to search.
    #[arg(long)]
    max_rank: Option<usize>,

    /// Smallest rank the oracle reports.
    #[arg(long, default_value_t = 3)]
    min_rank: usize,

    /// Name recorded in the catalog (default: the file stem).
    #[arg(long)]
    name: Option<String>,
}

/// Exit status by error category.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::NoGenerators | Error::InvalidPermutation(_) | Error::DegreeTooLarge(_)) => 2,
        Some(Error::TooLarge { .. } | Error::OrderOverflow) => 3,
        Some(Error::Io(_)) => 4,
        Some(_) => 5,
        None => 1,
    }
}

fn run(args: Args) -> anyhow::Result<()> {
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let group = fixture::load_group(&args.group)?;
    let name = args.name.clone().unwrap_or_else(|| {
        args.group
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "G".into())
    });
    let limits = Limits {
        max_enum: args.max_enum,
        max_orbit: args.max_enum as usize,
    };

    if args.dump_classes {
        let analysis = GroupAnalysis::new(&group, limits)?;
        print!("{}", analysis.class_table());
        return Ok(());
    }

    let report = if args.oracle {
        run_oracle(&group, &name, args.min_rank, args.max_rank, limits)?
    } else {
        let ranks = match args.ranks {
            Ranks::Three => RankSelection::Three,
            Ranks::High => RankSelection::High,
            Ranks::All => RankSelection::All,
        };
        run_classify(
            &group,
            &name,
            ClassifyOptions {
                ranks,
                skip_c2: args.skip_c2,
                max_rank: args.max_rank,
                limits,
            },
        )?
    };
    let entries = report.entries()?;
    match &args.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            write_jsonl(&entries, &mut w)?;
            w.flush()?;
            print!("{}", report.summary());
        }
        None => {
            let stdout = std::io::stdout();
            write_jsonl(&entries, stdout.lock())?;
            eprint!("{}", report.summary());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
