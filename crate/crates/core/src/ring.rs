//! Polynomial rings F_p[x_1..x_n] and the monomial orders used throughout.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;

/// Exponent vector of a monomial.
pub type Exps = SmallVec<[u32; 6]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GrevLex,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<RingRef> {
        let field = PrimeField::new(p)?;
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(AlgebraError::Parse { col: 0, msg: format!("invalid variable name `{v}`") });
            }
            if vars[..i].contains(v) {
                return Err(AlgebraError::Parse { col: 0, msg: format!("duplicate variable `{v}`") });
            }
        }
        Ok(Arc::new(Ring { field, vars, order: MonomialOrder::GrevLex }))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.p(), self.vars.join(","))
    }
}

pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[inline]
pub fn total_degree(e: &[u32]) -> u64 {
    e.iter().map(|&x| u64::from(x)).sum()
}

/// Graded reverse lexicographic comparison; `Greater` means `a` is the larger monomial.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    match total_degree(a).cmp(&total_degree(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_div(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        // x > y > z, x*z < y^2 in grevlex
        assert_eq!(grevlex_cmp(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(grevlex_cmp(&[0, 0, 2], &[1, 1, 0]), Ordering::Less);
    }

    #[test]
    fn ring_validation() {
        assert!(Ring::new(2, &["x", "x"]).is_err());
        assert!(Ring::new(4, &["x"]).is_err());
        assert!(Ring::new(3, &["x", "y1"]).is_ok());
    }
}
