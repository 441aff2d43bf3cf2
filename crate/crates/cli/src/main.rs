mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "stm", version, about = "Finite supertropical monoids: quotients, factorizations, equalizers, tyrants")]
struct Cli {
    /// Fixture files to load before resolving names.
    #[arg(short = 'f', long = "file", global = true)]
    files: Vec<PathBuf>,

    /// Line-oriented key=value output.
    #[arg(long, global = true)]
    porcelain: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse files and validate every object in them.
    Check {
        inputs: Vec<PathBuf>,
    },
    /// Split a transmission into its tangible and mixing parts.
    Factorize {
        /// A map name, or a monoid name for its ghost map.
        name: String,
        /// Factorize the projection by this named relation instead.
        #[arg(long)]
        relation: Option<String>,
        /// Re-check the flags of both parts and their composite.
        #[arg(long)]
        verify: bool,
    },
    /// The fiberwise equalizer of a set.
    Equalize {
        monoid: String,
        /// Members of the set; `{x y}` or `x y`.
        #[arg(required = true, num_args = 1..)]
        set: Vec<String>,
        /// Print a witness path for every identified pair.
        #[arg(long)]
        paths: bool,
    },
    /// The tyrant relation `T(x)` of a tangible element.
    Tyrant {
        monoid: String,
        element: String,
        #[arg(long)]
        paths: bool,
    },
    /// The isolating relations `Is(x)` and `Sis(x)` of a tangible element.
    Isolate {
        monoid: String,
        element: String,
        #[arg(long)]
        paths: bool,
    },
    /// Check every property on the catalog and seeded random instances.
    Verify(VerifyArgs),
    /// Look for random instances with obstructions and print them as fixtures.
    Search {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        size: usize,
    },
    /// The lattice of MFCE relations of a monoid.
    Lattice {
        monoid: String,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 6)]
    size: usize,
    /// Candidate cap for exhaustive relation enumeration.
    #[arg(long, default_value_t = supertropical::oracle::DEFAULT_CANDIDATE_CAP)]
    cap: u64,
    /// Skip the catalog and check only random instances.
    #[arg(long)]
    no_catalog: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
