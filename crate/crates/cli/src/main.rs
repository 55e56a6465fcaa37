use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use unireduce_cli::{
    cmd_closure, cmd_decompose, cmd_defect, cmd_eigenvector, cmd_verify, EigenMethod, Outcome,
    Suite,
};

/// Approximate fixed points and common eigenvectors of finite unitary groups.
#[derive(Parser)]
#[command(name = "unireduce", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Close a set of generators into a finite group and write it out.
    Closure {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
        /// Abort when the group grows beyond this many elements.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Weak and strong defect of a unit vector.
    Defect {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        xi: PathBuf,
    },
    /// Certified common eigenvector near a vector.
    Eigenvector {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        xi: PathBuf,
        /// auto, average, rho, monomial or truncate.
        #[arg(long, default_value = "auto")]
        method: EigenMethod,
    },
    /// Split the space into irreducible invariant blocks.
    Decompose {
        #[arg(long)]
        group: PathBuf,
    },
    /// Run a seeded randomized verification suite.
    Verify {
        /// lemmas, bounds, pipeline or oracle.
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trials: usize,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome: Outcome = match cli.command {
        Command::Closure { input, output, cap } => cmd_closure(&input, &output, cap),
        Command::Defect { group, xi } => cmd_defect(&group, &xi),
        Command::Eigenvector { group, xi, method } => cmd_eigenvector(&group, &xi, method),
        Command::Decompose { group } => cmd_decompose(&group),
        Command::Verify {
            suite,
            seed,
            trials,
        } => cmd_verify(suite, seed, trials),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code as i32);
}
