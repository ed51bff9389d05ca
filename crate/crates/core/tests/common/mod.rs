//! Random small inputs and the invariants checked on them.
#![allow(dead_code)]

use proptest::collection::vec;
use proptest::prelude::*;
use special_primes::frobenius::{
    bracket_power_module, ie_module, is_compatible, nilpotent_kernel, star_closure, FrobMatrix,
};
use special_primes::ring::Exps;
use special_primes::{PolyMatrix, Polynomial, Ring, RingRef, Submodule};

const VARS: [&str; 3] = ["x", "y", "z"];

/// Terms as `(coefficient, exponents)`; total degree at most 4.
pub type Terms = Vec<(u32, Vec<u32>)>;

#[derive(Debug, Clone)]
pub struct Shape {
    pub p: u64,
    pub n: usize,
    pub rank: usize,
}

impl Shape {
    pub fn ring(&self) -> RingRef {
        Ring::new(self.p, &VARS[..self.n]).unwrap()
    }
}

pub fn shape(max_rank: usize) -> impl Strategy<Value = Shape> {
    (prop_oneof![Just(2u64), Just(3u64)], 1..=3usize, 1..=max_rank).prop_map(|(p, n, rank)| Shape { p, n, rank })
}

fn monomial(n: usize) -> impl Strategy<Value = Vec<u32>> {
    vec(0..=4u32, n).prop_map(|raw| {
        let mut left = 4;
        raw.into_iter()
            .map(|e| {
                let t = e.min(left);
                left -= t;
                t
            })
            .collect()
    })
}

pub fn terms(s: &Shape, max_terms: usize) -> impl Strategy<Value = Terms> {
    vec((1..s.p as u32, monomial(s.n)), 0..=max_terms)
}

pub fn vectors(s: &Shape, max_gens: usize) -> impl Strategy<Value = Vec<Vec<Terms>>> {
    vec(vec(terms(s, 3), s.rank), 1..=max_gens)
}

pub fn square(s: &Shape) -> impl Strategy<Value = Vec<Vec<Terms>>> {
    vec(vec(terms(s, 2), s.rank), s.rank)
}

pub fn poly(r: &RingRef, t: &Terms) -> Polynomial {
    Polynomial::from_terms(r, t.iter().map(|(c, e)| (e.iter().copied().collect::<Exps>(), *c)).collect())
}

pub fn module(r: &RingRef, rank: usize, gens: &[Vec<Terms>]) -> Submodule {
    Submodule::new(r, rank, gens.iter().map(|g| g.iter().map(|t| poly(r, t)).collect()).collect()).unwrap()
}

pub fn frob(r: &RingRef, rows: &[Vec<Terms>]) -> FrobMatrix {
    let rows = rows.iter().map(|row| row.iter().map(|t| poly(r, t)).collect()).collect();
    FrobMatrix::new(PolyMatrix::from_rows(r, rows).unwrap(), 1).unwrap()
}

fn check(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn err(e: special_primes::AlgebraError) -> String {
    e.to_string()
}

/// `W ⊆ I_e(W)^{[p^e]}`.
pub fn root_property(w: &Submodule, e: u32) -> Result<(), String> {
    let root = ie_module(w, e).map_err(err)?;
    check(bracket_power_module(&root, e).contains_module(w).map_err(err)?, "W not inside I_e(W)^[q]")
}

/// `I_e(V_1 + V_2) = I_e(V_1) + I_e(V_2)`.
pub fn additivity(v1: &Submodule, v2: &Submodule, e: u32) -> Result<(), String> {
    let whole = ie_module(&v1.sum(v2).map_err(err)?, e).map_err(err)?;
    let parts = ie_module(v1, e).map_err(err)?.sum(&ie_module(v2, e).map_err(err)?).map_err(err)?;
    check(whole.equals(&parts).map_err(err)?, "I_e is not additive")
}

/// `I_e(W^{[p^e]}) = W`.
pub fn round_trip(w: &Submodule, e: u32) -> Result<(), String> {
    let back = ie_module(&bracket_power_module(w, e), e).map_err(err)?;
    check(back.equals(w).map_err(err)?, "I_e(W^[q]) differs from W")
}

/// Fixed point, containment, idempotence, and minimality against `(V + V')^★`
/// and `R^α`, whose compatibility is checked separately.
pub fn star_closure_laws(f: &FrobMatrix, v: &Submodule, extra: &Submodule) -> Result<(), String> {
    let w = star_closure(v, f).map_err(err)?;
    check(w.contains_module(v).map_err(err)?, "closure misses V")?;
    check(is_compatible(&w, f).map_err(err)?, "closure is not compatible")?;
    let step = ie_module(&f.image(&w).map_err(err)?, 1).map_err(err)?;
    check(w.sum(&step).map_err(err)?.equals(&w).map_err(err)?, "closure is not a fixed point")?;
    check(star_closure(&w, f).map_err(err)?.equals(&w).map_err(err)?, "closure is not idempotent")?;
    let free = Submodule::free(v.ring(), v.rank());
    let bigger = star_closure(&v.sum(extra).map_err(err)?, f).map_err(err)?;
    for c in [free, bigger] {
        check(is_compatible(&c, f).map_err(err)? && c.contains_module(v).map_err(err)?, "sample is not a compatible supermodule")?;
        check(c.contains_module(&w).map_err(err)?, "closure is not minimal")?;
    }
    Ok(())
}

/// `I_1(U·K) = K`.
pub fn kernel_fixed_point(f: &FrobMatrix) -> Result<(), String> {
    let k = nilpotent_kernel(f).map_err(err)?;
    let next = ie_module(&f.image(&k).map_err(err)?, 1).map_err(err)?;
    check(next.equals(&k).map_err(err)?, "kernel is not fixed")
}
