//! `reconalg`: command-line front end.
//!
//! Exit status: 0 success, 1 a verification failed, 2 usage error, 3 a
//! resource cap was hit.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use reconalg::pathalg::Engine;
use reconalg::LabelList;

#[derive(Parser, Debug)]
#[command(name = "reconalg", version, about = "Reconstruction algebras of cyclic quotient surface singularities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Which algebra: a group `1/r(1,a)` or a label list.
#[derive(Args, Debug, Clone)]
pub struct Input {
    #[arg(long, requires = "a", conflicts_with = "labels")]
    pub r: Option<u64>,
    #[arg(long, requires = "r", conflicts_with = "labels")]
    pub a: Option<u64>,
    /// Continued-fraction labels, e.g. `4,3,4`.
    #[arg(long, value_parser = clap::value_parser!(LabelList))]
    pub labels: Option<LabelList>,
}

#[derive(Args, Debug, Clone, Copy)]
#[group(multiple = false)]
pub struct Format {
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub dot: bool,
    #[arg(long)]
    pub tex: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Continued-fraction labels of r/a.
    Expand {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
    },
    /// The i- and j-series.
    Series {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
    },
    /// Arrows of the quiver with their bidegrees.
    Quiver {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
    },
    /// Defining relations.
    Relations {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
    },
    /// The special modules and the monomial labelling of every arrow.
    Specials {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
    },
    /// Generators of the invariant ring.
    Generators {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
    },
    /// The reversed algebra 1/r(1,b) and the expansion of r/(r-a).
    Dual {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
    },
    /// Check every graded cell of the path algebra against the Hom indicator.
    VerifyEndo {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
        /// Total degree bound; defaults to 2r+2.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        degree: Option<u64>,
        #[arg(long, value_enum, default_value = "automaton")]
        engine: EngineArg,
        /// Cap on enumerated paths per source (explicit) or cells (automaton).
        #[arg(long, default_value_t = 2_000_000)]
        max_paths: usize,
    },
    /// Projective resolutions of the vertex simples.
    Resolve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
        #[arg(long)]
        vertex: Option<usize>,
        /// Total degree bound for the exactness check; defaults to 2r+2.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        degree: Option<u64>,
    },
    /// Global dimension, verified through the resolutions.
    Gldim {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        degree: Option<u64>,
    },
    /// Chart atlas, transitions and dual graph.
    Moduli {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        format: Format,
    },
}

#[derive(clap::ValueEnum, Debug, Clone, Copy)]
pub enum EngineArg {
    Automaton,
    Explicit,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Automaton => Engine::Automaton,
            EngineArg::Explicit => Engine::Explicit,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.command) {
        Ok(report) => {
            print!("{}", report.stdout);
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
