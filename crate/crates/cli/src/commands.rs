use std::fmt;

use special_primes::frobenius::{ie_module, is_compatible, is_special_prime, nilpotent_kernel, star_closure, FrobMatrix};
use special_primes::near_splitting::{compatible_prime_annihilators, NearSplitting};
use special_primes::{find_special_primes, AlgebraError, Ideal, Submodule};

use crate::problem::{parse_module, ProblemFile};

/// A subcommand. Module and ideal arguments are either names declared in
/// the problem file or literal bracket / parenthesis syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    SpecialPrimes,
    StarClosure { module: String },
    Ie { e: u32, module: String },
    NilpotentKernel,
    CheckSpecial { prime: String },
    CheckCompatible { module: String },
    NearSplittingAnnihilators,
}

#[derive(Debug)]
pub enum CommandError {
    /// Bad argument text or a violated precondition.
    Usage(String),
    /// The computation left the supported envelope.
    Capability(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Capability(_) => 1,
            CommandError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandError::Usage(m) | CommandError::Capability(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CommandError {}

impl From<AlgebraError> for CommandError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Capability(_) => CommandError::Capability(e.to_string()),
            other => CommandError::Usage(other.to_string()),
        }
    }
}

fn module_arg(pf: &ProblemFile, arg: &str) -> Result<Submodule, CommandError> {
    if let Some(m) = pf.modules.get(arg.trim()) {
        return Ok(m.clone());
    }
    parse_module(&pf.ring, pf.alpha, arg).map_err(|e| CommandError::Usage(format!("module argument: {e}")))
}

fn ideal_arg(pf: &ProblemFile, arg: &str) -> Result<Ideal, CommandError> {
    if let Some(i) = pf.ideals.get(arg.trim()) {
        return Ok(i.clone());
    }
    Ideal::parse(&pf.ring, arg).map_err(|e| CommandError::Usage(format!("ideal argument: {e}")))
}

/// Runs `cmd`; with `trace`, recursion notes precede the result as `# ` lines.
pub fn run_command(cmd: &Command, pf: &ProblemFile, trace: bool) -> Result<String, CommandError> {
    let f = FrobMatrix::new(pf.u.clone(), 1)?;
    let out = match cmd {
        Command::SpecialPrimes => {
            let rep = find_special_primes(&f)?;
            let mut s = String::new();
            if trace {
                for t in &rep.trace {
                    s.push_str(&format!("# {t}\n"));
                }
            }
            s + &rep.to_string()
        }
        Command::StarClosure { module } => {
            format!("{}\n", star_closure(&module_arg(pf, module)?, &f)?.canonical_string())
        }
        Command::Ie { e, module } => {
            format!("{}\n", ie_module(&module_arg(pf, module)?, *e)?.canonical_string())
        }
        Command::NilpotentKernel => format!("{}\n", nilpotent_kernel(&f)?.canonical_string()),
        Command::CheckSpecial { prime } => {
            let q = ideal_arg(pf, prime)?;
            let verdict = if is_special_prime(&q, &f)? { "special" } else { "not special" };
            format!("{verdict}\n")
        }
        Command::CheckCompatible { module } => {
            let verdict = if is_compatible(&module_arg(pf, module)?, &f)? { "compatible" } else { "not compatible" };
            format!("{verdict}\n")
        }
        Command::NearSplittingAnnihilators => {
            let rep = compatible_prime_annihilators(&NearSplitting::new(pf.u.clone())?)?;
            let mut s = String::new();
            if trace {
                for t in &rep.primes.trace {
                    s.push_str(&format!("# {t}\n"));
                }
            }
            s + &rep.to_string()
        }
    };
    Ok(out)
}
