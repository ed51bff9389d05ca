//! Text syntax for polynomials, polynomial lists and matrices.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := power ('*' power)*
//! power   := atom ('^' integer)?
//! atom    := integer | variable | '(' expr ')'
//! ```

use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::RingRef;

struct Parser<'a> {
    ring: &'a RingRef,
    chars: Vec<(usize, char)>,
    pos: usize,
}

fn err<T>(col: usize, msg: impl Into<String>) -> Result<T> {
    Err(AlgebraError::Parse { col, msg: msg.into() })
}

impl<'a> Parser<'a> {
    fn new(ring: &'a RingRef, text: &str) -> Self {
        let chars = text.char_indices().filter(|(_, c)| !c.is_whitespace()).map(|(i, c)| (i + 1, c)).collect();
        Parser { ring, chars, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|t| t.1)
    }

    fn col(&self) -> usize {
        self.chars.get(self.pos).map_or_else(|| self.chars.last().map_or(1, |t| t.0 + 1), |t| t.0)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.col();
        let mut v: u64 = 0;
        let mut any = false;
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            v = v.checked_mul(10).and_then(|v| v.checked_add(u64::from(c as u8 - b'0'))).ok_or(
                AlgebraError::Parse { col: start, msg: "integer too large".into() },
            )?;
            any = true;
            self.pos += 1;
        }
        if !any {
            return err(start, "expected an integer");
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut neg = false;
        if self.peek() == Some('-') {
            neg = true;
            self.pos += 1;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.power()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return err(self.col(), "expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                let p = u64::from(self.ring.p());
                Ok(Polynomial::constant(self.ring, (v % p) as i64))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|t| t.1).collect();
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => err(col, format!("unknown variable `{name}`")),
                }
            }
            Some(c) => err(col, format!("unexpected `{c}`")),
            None => err(col, "unexpected end of input"),
        }
    }
}

pub fn parse_polynomial(ring: &RingRef, text: &str) -> Result<Polynomial> {
    let mut p = Parser::new(ring, text);
    let out = p.expr()?;
    if p.pos != p.chars.len() {
        return err(p.col(), format!("unexpected `{}`", p.peek().unwrap()));
    }
    Ok(out)
}

/// Splits `s` on top-level commas (ignoring commas nested in brackets or parentheses).
fn split_top(s: &str, offset: usize) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => {
                depth -= 1;
                if depth < 0 {
                    return err(offset + i + 1, "unbalanced bracket");
                }
            }
            ',' if depth == 0 => {
                out.push((offset + start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return err(offset + s.len(), "unbalanced bracket");
    }
    out.push((offset + start, &s[start..]));
    Ok(out)
}

fn strip_delims(s: &str, open: char, close: char, offset: usize) -> Result<(usize, &str)> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    if !(t.starts_with(open) && t.ends_with(close)) || t.len() < 2 {
        return err(offset + lead + 1, format!("expected `{open}...{close}`"));
    }
    Ok((offset + lead + 1, &t[1..t.len() - 1]))
}

fn with_offset(e: AlgebraError, offset: usize) -> AlgebraError {
    match e {
        AlgebraError::Parse { col, msg } => AlgebraError::Parse { col: col + offset, msg },
        other => other,
    }
}

/// Parses a comma-separated polynomial list wrapped in `open`/`close`.
fn parse_list(ring: &RingRef, text: &str, open: char, close: char, offset: usize) -> Result<Vec<Polynomial>> {
    let (off, inner) = strip_delims(text, open, close, offset)?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(inner, off)?
        .into_iter()
        .map(|(o, piece)| parse_polynomial(ring, piece).map_err(|e| with_offset(e, o)))
        .collect()
}

/// `[[a,b],[c,d]]` -> rows of polynomials.
pub fn parse_nested(ring: &RingRef, text: &str) -> Result<Vec<Vec<Polynomial>>> {
    let (off, inner) = strip_delims(text, '[', ']', 0)?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(inner, off)?.into_iter().map(|(o, piece)| parse_list(ring, piece, '[', ']', o)).collect()
}

/// `(x, y+z)` -> ideal generators. `(0)` and `(1)` are accepted.
pub fn parse_ideal_gens(ring: &RingRef, text: &str) -> Result<Vec<Polynomial>> {
    parse_list(ring, text, '(', ')', 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn parentheses_and_signs() {
        let ring = Ring::new(2, &["x", "y", "z"]).unwrap();
        let a = parse_polynomial(&ring, "x*(y^2+z^2)").unwrap();
        assert_eq!(a, parse_polynomial(&ring, "x*y^2 + x*z^2").unwrap());
        let b = parse_polynomial(&ring, "-x + 3").unwrap();
        assert_eq!(b, parse_polynomial(&ring, "x+1").unwrap());
    }

    #[test]
    fn diagnostics_carry_columns() {
        let ring = Ring::new(2, &["x", "y"]).unwrap();
        match parse_polynomial(&ring, "x + w") {
            Err(AlgebraError::Parse { col, msg }) => {
                assert_eq!(col, 5);
                assert!(msg.contains("unknown variable"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial(&ring, "x +").is_err());
        assert!(parse_polynomial(&ring, "(x").is_err());
    }

    #[test]
    fn nested_lists() {
        let ring = Ring::new(2, &["x", "y", "z"]).unwrap();
        let m = parse_nested(&ring, "[[y,0],[z,0],[0,x],[x,y+z]]").unwrap();
        assert_eq!(m.len(), 4);
        assert!(m.iter().all(|v| v.len() == 2));
        let u = parse_nested(&ring, "[[x^3+y^3+z^3, x*y^2*z^5],[x*(y^2+z^2), x^3]]").unwrap();
        assert_eq!(u[1][0].to_string(), "x*y^2+x*z^2");
        assert_eq!(parse_ideal_gens(&ring, "(x, y+z)").unwrap().len(), 2);
    }
}
