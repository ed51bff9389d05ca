//! Sparse multivariate polynomials over F_p.
//!
//! Terms are kept sorted in strictly descending grevlex order with no zero
//! coefficients, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::ring::{divides, grevlex_cmp, mono_div, mono_mul, same_ring, total_degree, Exps, RingRef};

#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Exps, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingRef, c: i64) -> Self {
        let c = ring.field().reduce(c);
        let terms = if c == 0 { vec![] } else { vec![(Exps::from_elem(0, ring.nvars()), c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        let mut e = Exps::from_elem(0, ring.nvars());
        e[i] = 1;
        Polynomial { ring: ring.clone(), terms: vec![(e, 1)] }
    }

    pub fn monomial(ring: &RingRef, exps: &[u32], c: u32) -> Self {
        assert_eq!(exps.len(), ring.nvars());
        let c = c % ring.p();
        let terms = if c == 0 { vec![] } else { vec![(Exps::from_slice(exps), c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<(Exps, u32)>) -> Self {
        let f = *ring.field();
        terms.sort_by(|a, b| grevlex_cmp(&b.0, &a.0));
        let mut out: Vec<(Exps, u32)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            let c = c % f.p();
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = f.add(last.1, c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Assumes `terms` are already canonical (sorted descending, no zeros, no repeats).
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Exps, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| grevlex_cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Exps, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exps, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|t| t.0.iter().all(|&x| x == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.first().is_some_and(|t| t.1 == 1)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&(Exps, u32)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| total_degree(&t.0)).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.0[var]).max().unwrap_or(0)
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&i| self.terms.iter().any(|t| t.0[i] > 0)).collect()
    }

    pub fn make_monic(&self) -> Self {
        let lc = self.leading_coeff();
        if lc == 0 || lc == 1 {
            return self.clone();
        }
        self.scale(self.ring.field().inv(lc))
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.ring.field();
        let c = c % f.p();
        if c == 0 {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn mul_term(&self, e: &[u32], c: u32) -> Self {
        let f = self.ring.field();
        if c.is_multiple_of(f.p()) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (mono_mul(m, e), f.mul(*a, c))).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_scaled(other, 1))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_scaled(other, self.ring.p() - 1))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_impl(other))
    }

    /// `self + c * other` by a linear merge.
    pub fn add_scaled(&self, other: &Self, c: u32) -> Self {
        let f = *self.ring.field();
        let c = c % f.p();
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match grevlex_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), f.mul(b[j].1, c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a[i].1, f.mul(b[j].1, c));
                    if s != 0 {
                        out.push((a[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(e, x)| (e.clone(), f.mul(*x, c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let f = *self.ring.field();
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        // accumulate one row per term of the smaller factor; each row is already sorted
        let mut acc = Self::zero(&self.ring);
        for (e, c) in &small.terms {
            let row = Polynomial {
                ring: self.ring.clone(),
                terms: big.terms.iter().map(|(m, a)| (mono_mul(m, e), f.mul(*a, *c))).collect(),
            };
            acc = acc.add_scaled(&row, 1);
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut r = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        r
    }

    /// `f^{p^e}`. Coefficients lie in F_p, so only exponents change.
    pub fn bracket_power(&self, e: u32) -> Self {
        let q = self.ring.p().pow(e);
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.iter().map(|x| x * q).collect(), *c)).collect(),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let f = *self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[var] > 0)
            .filter_map(|(m, c)| {
                let k = f.mul(*c, m[var] % f.p());
                if k == 0 {
                    return None;
                }
                let mut m2 = m.clone();
                m2[var] -= 1;
                Some((m2, k))
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    /// Multivariate division by a single divisor: `self = q*g + r` where no
    /// term of `r` is divisible by the leading monomial of `g`.
    pub fn div_rem(&self, g: &Self) -> (Self, Self) {
        assert!(!g.is_zero(), "division by zero polynomial");
        let f = *self.ring.field();
        let (lm, lc) = g.terms[0].clone();
        let lc_inv = f.inv(lc);
        let mut q = Vec::new();
        let mut r = Vec::new();
        let mut rest = self.clone();
        while let Some((m, c)) = rest.terms.first().cloned() {
            if divides(&lm, &m) {
                let qm = mono_div(&m, &lm);
                let qc = f.mul(c, lc_inv);
                rest = rest.add_scaled(&g.mul_term(&qm, qc), f.p() - 1);
                q.push((qm, qc));
            } else {
                r.push((m, c));
                rest.terms.remove(0);
            }
        }
        (Self::from_sorted_terms(&self.ring, q), Self::from_sorted_terms(&self.ring, r))
    }

    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(g);
        r.is_zero().then_some(q)
    }

    /// Substitutes `value` for variable `var`.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        let mut out = Self::zero(&self.ring);
        let maxd = self.degree_in(var);
        let mut powers = vec![Self::one(&self.ring)];
        for k in 1..=maxd as usize {
            let next = powers[k - 1].mul_impl(value);
            powers.push(next);
        }
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let k = m2[var] as usize;
            m2[var] = 0;
            out = out.add_scaled(&powers[k].mul_term(&m2, *c), 1);
        }
        out
    }

    /// Moves the polynomial into another ring whose variable `i` is variable
    /// `map[i]` of the target.
    pub fn remap(&self, target: &RingRef, map: &[usize]) -> Self {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Exps::from_elem(0, n);
                for (i, &x) in m.iter().enumerate() {
                    e[map[i]] += x;
                }
                (e, *c)
            })
            .collect();
        Self::from_terms(target, terms)
    }

    /// Parses the textual polynomial syntax (`x^3+y^3+z^3`, `x*(y^2+z^2)`, `2*x*y`, ...).
    pub fn parse(ring: &RingRef, text: &str) -> Result<Self> {
        crate::parse::parse_polynomial(ring, text)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            let mut parts: Vec<String> = Vec::new();
            let is_const = m.iter().all(|&x| x == 0);
            if *c != 1 || is_const {
                parts.push(c.to_string());
            }
            for (i, &x) in m.iter().enumerate() {
                match x {
                    0 => {}
                    1 => parts.push(self.ring.vars()[i].clone()),
                    _ => parts.push(format!("{}^{}", self.ring.vars()[i], x)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.p() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn r(p: u64) -> RingRef {
        Ring::new(p, &["x", "y", "z"]).unwrap()
    }

    fn pp(ring: &RingRef, s: &str) -> Polynomial {
        Polynomial::parse(ring, s).unwrap()
    }

    #[test]
    fn char_two_cancellation() {
        let ring = r(2);
        let a = pp(&ring, "x+y");
        assert!((&a + &a).is_zero());
    }

    #[test]
    fn freshman_dream() {
        let ring = r(2);
        let a = pp(&ring, "x+y");
        assert_eq!(a.pow(2), pp(&ring, "x^2+y^2"));
        assert_eq!(a.bracket_power(1), pp(&ring, "x^2+y^2"));
        assert_eq!(a.bracket_power(0), a);
    }

    #[test]
    fn bracket_power_char_three() {
        let ring = r(3);
        let a = pp(&ring, "x+1");
        // (x+1)^3 = x^3 + 3x^2 + 3x + 1 = x^3 + 1 mod 3, expanded by repeated products
        let cube = &(&a * &a) * &a;
        assert_eq!(cube, pp(&ring, "x^3+1"));
        assert_eq!(a.bracket_power(1), cube);
    }

    #[test]
    fn monomial_product() {
        let ring = r(5);
        assert_eq!(&pp(&ring, "x^3*y^2") * &pp(&ring, "x"), pp(&ring, "x^4*y^2"));
    }

    #[test]
    fn division() {
        let ring = r(2);
        let (q, rem) = pp(&ring, "x^3").div_rem(&pp(&ring, "x^2+y"));
        assert_eq!(q, pp(&ring, "x"));
        assert_eq!(rem, pp(&ring, "x*y"));
    }

    #[test]
    fn derivative_char_p() {
        let ring = r(2);
        assert_eq!(pp(&ring, "x^2+y^3").derivative(1), pp(&ring, "y^2"));
        assert!(pp(&ring, "x^2+y^3").derivative(0).is_zero());
    }

    #[test]
    fn display_roundtrip() {
        let ring = r(3);
        for s in ["x^3+y^3+z^3", "x*y^2*z^5", "2*x*y+1", "0", "y+z"] {
            let a = pp(&ring, s);
            assert_eq!(pp(&ring, &a.to_string()), a);
        }
        assert_eq!(pp(&ring, "2*x*y+1").to_string(), "2*x*y+1");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::one(&r(2));
        let b = Polynomial::one(&r(3));
        assert_eq!(a.checked_add(&b), Err(AlgebraError::RingMismatch));
    }
}
