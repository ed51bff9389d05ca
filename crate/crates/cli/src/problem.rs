//! Problem files: `key = value` lines, `#` comments, values may continue
//! over several lines while brackets are open.
//!
//! ```text
//! p = 2
//! vars = x, y, z
//! alpha = 2
//! U = [[x^3+y^3+z^3, x*y^2*z^5],
//!      [x*(y^2+z^2), x^3]]
//! module W = [[y,0],[z,0]]
//! ideal P = (x, y+z)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use special_primes::parse::{parse_ideal_gens, parse_nested};
use special_primes::{AlgebraError, Ideal, PolyMatrix, Ring, RingRef, Submodule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ProblemError {}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub ring: RingRef,
    pub alpha: usize,
    pub u: PolyMatrix,
    pub modules: BTreeMap<String, Submodule>,
    pub ideals: BTreeMap<String, Ideal>,
}

struct Entry {
    key: String,
    value: String,
    line: usize,
    col: usize,
}

fn at(line: usize, col: usize, msg: impl Into<String>) -> ProblemError {
    ProblemError { line, col, msg: msg.into() }
}

fn lift(e: &Entry, err: AlgebraError) -> ProblemError {
    match err {
        AlgebraError::Parse { col, msg } => at(e.line, e.col + col.max(1) - 1, msg),
        other => at(e.line, e.col, other.to_string()),
    }
}

fn depth(s: &str) -> i64 {
    s.chars().map(|c| match c {
        '[' | '(' => 1,
        ']' | ')' => -1,
        _ => 0,
    }).sum()
}

fn entries(text: &str) -> Result<Vec<Entry>, ProblemError> {
    let mut out: Vec<Entry> = Vec::new();
    let mut open = 0i64;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if open > 0 {
            let last = out.last_mut().expect("continuation follows an entry");
            last.value.push(' ');
            last.value.push_str(line.trim());
            open += depth(line);
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(at(i + 1, 1, "expected `key = value`"));
        };
        let key = line[..eq].split_whitespace().collect::<Vec<_>>().join(" ");
        let rest = &line[eq + 1..];
        let col = eq + 2 + (rest.len() - rest.trim_start().len());
        out.push(Entry { key, value: rest.trim().to_string(), line: i + 1, col });
        open = depth(rest);
    }
    if open > 0 {
        let e = out.last().expect("open bracket belongs to an entry");
        return Err(at(e.line, e.col, "unbalanced brackets"));
    }
    Ok(out)
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let items = entries(text)?;
    let find = |k: &str| items.iter().find(|e| e.key == k);
    let need = |k: &str| find(k).ok_or_else(|| at(1, 1, format!("missing `{k}`")));

    let pe = need("p")?;
    let p: u64 = pe.value.parse().map_err(|_| at(pe.line, pe.col, "p must be a positive integer"))?;
    let ve = need("vars")?;
    let vars: Vec<&str> = ve.value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let ring = Ring::new(p, &vars).map_err(|e| match e {
        AlgebraError::NotPrime(_) => at(pe.line, pe.col, "p must be prime"),
        other => at(ve.line, ve.col, other.to_string()),
    })?;

    let ue = need("U")?;
    let rows = parse_nested(&ring, &ue.value).map_err(|e| lift(ue, e))?;
    let u = PolyMatrix::from_rows(&ring, rows).map_err(|e| lift(ue, e))?;
    let alpha = match find("alpha") {
        Some(ae) => ae.value.parse().map_err(|_| at(ae.line, ae.col, "alpha must be a positive integer"))?,
        None => u.rows(),
    };
    if u.rows() != alpha || u.cols() != alpha {
        return Err(at(ue.line, ue.col, format!("U is {}x{} but alpha = {alpha}", u.rows(), u.cols())));
    }

    let mut modules = BTreeMap::new();
    let mut ideals = BTreeMap::new();
    for e in &items {
        let mut words = e.key.split(' ');
        match (words.next(), words.next(), words.next()) {
            (Some("p" | "vars" | "alpha" | "U"), None, _) => {}
            (Some("module"), Some(name), None) => {
                let m = parse_module(&ring, alpha, &e.value).map_err(|err| lift(e, err))?;
                modules.insert(name.to_string(), m);
            }
            (Some("ideal"), Some(name), None) => {
                let gens = parse_ideal_gens(&ring, &e.value).map_err(|err| lift(e, err))?;
                ideals.insert(name.to_string(), Ideal::new(&ring, gens).map_err(|err| lift(e, err))?);
            }
            _ => return Err(at(e.line, 1, format!("unknown key `{}`", e.key))),
        }
    }
    Ok(ProblemFile { ring, alpha, u, modules, ideals })
}

/// Generators in bracket syntax, one inner list per generator.
pub fn parse_module(ring: &RingRef, rank: usize, text: &str) -> Result<Submodule, AlgebraError> {
    if text.replace(' ', "") == "[]" {
        return Ok(Submodule::zero(ring, rank));
    }
    Submodule::new(ring, rank, parse_nested(ring, text)?)
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p = {}", self.ring.p())?;
        writeln!(f, "vars = {}", self.ring.vars().join(", "))?;
        writeln!(f, "alpha = {}", self.alpha)?;
        let rows: Vec<String> = (0..self.u.rows())
            .map(|i| {
                let r: Vec<String> = self.u.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        writeln!(f, "U = [{}]", rows.join(", "))?;
        for (name, m) in &self.modules {
            writeln!(f, "module {name} = {m}")?;
        }
        for (name, i) in &self.ideals {
            writeln!(f, "ideal {name} = {i}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIRST: &str = "p = 2\nvars = x, y, z\nalpha = 2\nU = [[x^3+y^3+z^3, x*y^2*z^5],\n     [x*(y^2+z^2), x^3]]  # two rows\nideal P = (x, y+z)\n";

    #[test]
    fn reads_a_problem() {
        let pf = parse_problem(FIRST).unwrap();
        assert_eq!(pf.alpha, 2);
        assert_eq!(pf.u.get(1, 1).to_string(), "x^3");
        assert!(pf.ideals.contains_key("P"));
    }

    #[test]
    fn diagnostics() {
        let e = parse_problem("p = 4\nvars = x\nU = [[x]]\n").unwrap_err();
        assert_eq!(e.msg, "p must be prime");
        let e = parse_problem("p = 2\nvars = x, y\nalpha = 2\nU = [[x],[y]]\n").unwrap_err();
        assert!(e.msg.contains("alpha"), "{e}");
        let e = parse_problem("p = 2\nvars = x\nU = [[x+w]]\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 9), "{e}");
        assert!(parse_problem("p = 2\nvars = x\nU = [[x]\n").is_err());
        assert!(parse_problem("p = 2\nvars = x\nU = [[x]]\ncolour = red\n").is_err());
    }

    #[test]
    fn round_trip() {
        let pf = parse_problem(FIRST).unwrap();
        let again = parse_problem(&pf.to_string()).unwrap();
        assert_eq!(again.u, pf.u);
        assert_eq!(again.to_string(), pf.to_string());
    }
}
