mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use solvquot::counting::{CountConfig, DEFAULT_FRONTIER_CAP, DEFAULT_HOM_CAP};
use solvquot::groups::DEFAULT_AUT_WORK;
use solvquot::lattice::DEFAULT_LATTICE_CAP;
use solvquot::subgrowth::{DEFAULT_MAX_K, DEFAULT_SEARCH_CAP};
use solvquot_oracle::DEFAULT_LETTER_OPS;

use input::CliError;

/// Counts homomorphisms and epimorphisms from finitely presented groups to
/// finite solvable groups.
#[derive(Parser)]
#[command(name = "solvquot", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// worker threads [default: available cores]
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// tab-separated output instead of JSON
    #[arg(long, global = true)]
    pub tsv: bool,
    /// timings on stderr
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Args, Clone)]
pub struct Caps {
    /// abort when a running Hom count exceeds this
    #[arg(long, default_value_t = DEFAULT_HOM_CAP)]
    pub hom_cap: u128,
    /// abort when a level holds more epimorphisms than this
    #[arg(long, default_value_t = DEFAULT_FRONTIER_CAP)]
    pub frontier_cap: u128,
    /// work budget of the automorphism search before falling back to lifting
    #[arg(long, default_value_t = DEFAULT_AUT_WORK)]
    pub aut_work: u128,
}

impl Caps {
    pub fn config(&self) -> CountConfig {
        CountConfig {
            hom_cap: self.hom_cap,
            frontier_cap: self.frontier_cap,
            aut_work: self.aut_work,
            ..CountConfig::default()
        }
    }
}

#[derive(Args, Clone)]
pub struct Io {
    /// presentation: builtin:family(args), file:path or inline `< x, y | ... >`
    #[arg(long)]
    pub source: String,
    /// group spec such as S(4) or D(8)*Z(3), or file:path with a table
    #[arg(long)]
    pub target: String,
}

#[derive(Subcommand)]
pub enum Command {
    /// |Hom(G, Γ)|
    Hom {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        caps: Caps,
    },
    /// |Epi(G, Γ)| with per-level lift statistics
    Epi {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        caps: Caps,
        /// cross-check with another strategy: lifting, moebius or gaschutz
        #[arg(long, default_value = "lifting")]
        strategy: String,
    },
    /// δ_Γ(G) = |Epi(G, Γ)| / |Aut Γ|
    Delta {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        caps: Caps,
    },
    /// |Aut Γ|
    Aut {
        #[arg(long)]
        target: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// twisted Fox system and cohomology for every epimorphism onto a level
    Cocycle {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        caps: Caps,
        /// layer to lift through [default: top]
        #[arg(long)]
        level: Option<usize>,
    },
    /// Möbius function of the subgroup lattice
    Moebius {
        #[arg(long)]
        target: String,
        /// inductive, kt or weisner
        #[arg(long, default_value = "inductive")]
        variant: String,
        #[arg(long, default_value_t = DEFAULT_LATTICE_CAP)]
        lattice_cap: usize,
    },
    /// subgroup counts a_k through permutation representations
    Growth {
        #[arg(long, required_unless_present = "table2")]
        source: Option<String>,
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        /// also count normal subgroups (k ≤ 15)
        #[arg(long)]
        normal: bool,
        /// low-index table for the braid groups B_n
        #[arg(long, conflicts_with_all = ["source", "normal"])]
        table2: bool,
        /// braid indices for --table2
        #[arg(long, default_value = "3,4,5,6")]
        ns: String,
        /// seconds for --table2 before remaining entries are left unverified
        #[arg(long)]
        budget_secs: Option<u64>,
        /// largest symmetric degree
        #[arg(long, default_value_t = DEFAULT_MAX_K)]
        max_k: usize,
        /// largest number of permutation tuples per degree
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        search_cap: u128,
        #[command(flatten)]
        caps: Caps,
    },
    /// lifting engine against brute-force enumeration
    Verify {
        /// comma-separated sources [default: the standard matrix]
        #[arg(long)]
        sources: Option<String>,
        /// comma-separated targets [default: catalog groups of order ≤ 24]
        #[arg(long)]
        targets: Option<String>,
        #[arg(long, default_value_t = DEFAULT_LETTER_OPS)]
        letter_ops: u128,
        /// per oracle run
        #[arg(long)]
        timeout_secs: Option<u64>,
        /// skip the lift-set comparison
        #[arg(long)]
        no_lifts: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// built-in solvable groups
    Catalog {
        /// print the multiplication table of this group in table-file format
        #[arg(long)]
        dump: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let result = commands::run(&cli);
    if cli.verbose {
        eprintln!("elapsed\t{:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(report)) => {
            let _ = std::io::stdout().lock().write_all(report.as_bytes());
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
