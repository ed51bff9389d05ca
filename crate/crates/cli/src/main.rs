use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use special_primes_cli::{parse_problem, run_command, Command};

#[derive(Parser)]
#[command(name = "special-primes", version, about = "Special primes of Frobenius maps on free modules over F_p[x_1..x_n]")]
struct Cli {
    /// Problem file
    file: PathBuf,
    /// Print the recursion tree as `# ` lines before the result
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the special primes with their certificates
    SpecialPrimes,
    /// Star closure of a submodule
    StarClosure {
        #[arg(long)]
        module: String,
    },
    /// p^e-th root of a submodule
    Ie {
        #[arg(long)]
        e: u32,
        #[arg(long)]
        module: String,
    },
    /// Submodule on whose dual the action is nilpotent
    NilpotentKernel,
    /// Whether a prime is the annihilator of its star closure quotient
    CheckSpecial {
        #[arg(long)]
        prime: String,
    },
    /// Whether U·W lies in W^[p]
    CheckCompatible {
        #[arg(long)]
        module: String,
    },
    /// Prime annihilators of compatible submodules for the near-splitting given by U
    NearSplittingAnnihilators,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::SpecialPrimes => Command::SpecialPrimes,
            Cmd::StarClosure { module } => Command::StarClosure { module },
            Cmd::Ie { e, module } => Command::Ie { e, module },
            Cmd::NilpotentKernel => Command::NilpotentKernel,
            Cmd::CheckSpecial { prime } => Command::CheckSpecial { prime },
            Cmd::CheckCompatible { module } => Command::CheckCompatible { module },
            Cmd::NearSplittingAnnihilators => Command::NearSplittingAnnihilators,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let text = match std::fs::read_to_string(&cli.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", cli.file.display());
            return ExitCode::from(2);
        }
    };
    let problem = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}: {e}", cli.file.display());
            return ExitCode::from(2);
        }
    };
    match run_command(&cli.cmd.into(), &problem, cli.trace) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
