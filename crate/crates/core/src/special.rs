//! Enumeration of special primes: the rank-one worklist, the rank reduction
//! by a localized change of basis, and the recursive driver for `α > 1`.

use std::collections::HashMap;
use std::fmt;

use crate::decomposition::{dimension, minimal_primes, singular_locus_ideal, sort_ideals};
use crate::error::{AlgebraError, Result};
use crate::factor;
use crate::frobenius::{ie_module, ie_vector, is_compatible, is_special_prime, nilpotent_kernel, star_closure, FrobMatrix};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::RingRef;
use crate::submodule::{Ideal, Submodule};

const MAX_DEPTH: usize = 64;
const MAX_CHAIN: usize = 20;

/// `a^{-k} · N` over the localization `R_a`.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalizedMatrix {
    numerators: PolyMatrix,
    denom: Polynomial,
    exp: u32,
}

impl fmt::Debug for LocalizedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^-{} * {}", self.denom, self.exp, self.numerators)
    }
}

impl LocalizedMatrix {
    pub fn new(numerators: PolyMatrix, denom: Polynomial, exp: u32) -> Result<Self> {
        if denom.is_zero() {
            return Err(AlgebraError::ZeroInput("localized matrix denominator"));
        }
        Ok(LocalizedMatrix { numerators, denom, exp }.canonical())
    }

    /// Strips common factors of the denominator; constant denominators are folded in.
    fn canonical(mut self) -> Self {
        if self.denom.is_constant() {
            let ring = self.denom.ring().clone();
            let field = ring.field();
            let c = field.pow(field.inv(self.denom.leading_coeff()), u64::from(self.exp));
            self.numerators = self.numerators.map(|x| x.scale(c));
            self.denom = Polynomial::one(&ring);
            self.exp = 0;
            return self;
        }
        while self.exp > 0 {
            let divided: Option<Vec<Polynomial>> =
                self.numerators.entries().iter().map(|x| x.exact_div(&self.denom)).collect();
            match divided {
                Some(entries) => {
                    let cols = self.numerators.cols();
                    let rows = entries.chunks(cols).map(|r| r.to_vec()).collect();
                    self.numerators = PolyMatrix::from_rows(self.numerators.ring(), rows).expect("shape preserved");
                    self.exp -= 1;
                }
                None => break,
            }
        }
        self
    }

    pub fn numerators(&self) -> &PolyMatrix {
        &self.numerators
    }

    pub fn denom(&self) -> &Polynomial {
        &self.denom
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (d, e) = match (self.exp, other.exp) {
            (0, _) => (other.denom.clone(), other.exp),
            (_, 0) => (self.denom.clone(), self.exp),
            _ if self.denom == other.denom => (self.denom.clone(), self.exp + other.exp),
            _ => {
                let d = &self.denom.pow(u64::from(self.exp)) * &other.denom.pow(u64::from(other.exp));
                (d, 1)
            }
        };
        LocalizedMatrix::new(self.numerators.mul(&other.numerators)?, d, e)
    }

    pub fn is_identity(&self) -> bool {
        self.exp == 0 && self.numerators == PolyMatrix::identity(self.numerators.ring(), self.numerators.rows())
    }
}

/// A change of basis over `R_a` together with its inverse.
#[derive(Debug, Clone)]
pub struct Unimodular {
    pub forward: LocalizedMatrix,
    pub inverse: LocalizedMatrix,
    pub pivot: Polynomial,
}

/// `X` invertible over `R_a` with `X·c = a·e_α`: clear the other entries of
/// `c` against the pivot, then move the pivot row last. No row is rescaled,
/// since `a` is a unit in `R_a` and the scaling only changes `ν` later.
pub fn make_unimodular(c: &[Polynomial], a: &Polynomial) -> Result<Unimodular> {
    if a.is_zero() {
        return Err(AlgebraError::ZeroInput("pivot of make_unimodular"));
    }
    let Some(k) = c.iter().rposition(|x| x == a) else {
        return Err(AlgebraError::Precondition(format!("pivot {a} is not an entry of the vector")));
    };
    let ring = a.ring();
    let n = c.len();
    let last = n - 1;
    let mut elim = PolyMatrix::identity(ring, n).scale(a);
    let mut back = elim.clone();
    for (i, ci) in c.iter().enumerate() {
        if i != k {
            elim.set(i, k, -ci);
            back.set(i, k, ci.clone());
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(k, last);
    let all: Vec<usize> = (0..n).collect();
    let forward = elim.submatrix(&perm, &all);
    let inverse = back.submatrix(&all, &perm);
    Ok(Unimodular {
        forward: LocalizedMatrix::new(forward, a.clone(), 1)?,
        inverse: LocalizedMatrix::new(inverse, a.clone(), 1)?,
        pivot: a.clone(),
    })
}

/// The output of [`reduce_alpha`]: `U' = a^ν X^{[q]} U X^{-1}` and `W' = X W_a ∩ R^α`.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub frob: FrobMatrix,
    pub module: Submodule,
    pub nu: u32,
}

/// Smallest `ν` with `base^ν · n / denom` polynomial, and that quotient.
fn clear_denominator(n: &PolyMatrix, base: &Polynomial, denom: &Polynomial, bound: u32) -> Result<(PolyMatrix, u32)> {
    let ring = n.ring();
    let mut scaled = n.clone();
    for nu in 0..=bound {
        let divided: Option<Vec<Polynomial>> = scaled.entries().iter().map(|x| x.exact_div(denom)).collect();
        if let Some(entries) = divided {
            let rows = entries.chunks(n.cols()).map(|r| r.to_vec()).collect();
            return Ok((PolyMatrix::from_rows(ring, rows)?, nu));
        }
        scaled = scaled.scale(base);
    }
    Err(AlgebraError::Precondition(format!("no power of {base} clears the denominator {denom}")))
}

/// `a^ν X^{[q]} M X^{-1} / extra` with `ν` minimal, where `a` is the common
/// denominator of `X` and `extra` divides `a^ν` times the product.
fn conjugate(m: &PolyMatrix, e: u32, x: &Unimodular, extra: &Polynomial) -> Result<(PolyMatrix, u32)> {
    let ring = m.ring();
    let q = ring.p().pow(e);
    let (fw, inv) = (&x.forward, &x.inverse);
    let a = &x.pivot;
    let n = fw.numerators.bracket_power(e).mul(m)?.mul(&inv.numerators)?;
    let s = q * fw.exp + inv.exp;
    let denom = extra * &a.pow(u64::from(s));
    let base = extra * a;
    clear_denominator(&n, &base, &denom, s + 1)
}

fn check_unimodular(f: &FrobMatrix, x: &Unimodular) -> Result<()> {
    let n = f.alpha();
    let (fw, inv) = (&x.forward, &x.inverse);
    if fw.numerators.rows() != n || inv.numerators.rows() != n {
        return Err(AlgebraError::RankMismatch { expected: n, got: fw.numerators.rows() });
    }
    if [fw, inv].iter().any(|m| m.exp > 0 && m.denom != x.pivot) {
        return Err(AlgebraError::Precondition("X must have denominators in powers of its pivot".into()));
    }
    if !fw.mul(inv)?.is_identity() {
        return Err(AlgebraError::Precondition("X is not invertible with the stated inverse".into()));
    }
    Ok(())
}

pub fn reduce_alpha(f: &FrobMatrix, x: &Unimodular, w: &Submodule) -> Result<Reduction> {
    check_unimodular(f, x)?;
    let ring = f.ring();
    let (u, nu) = conjugate(f.u(), f.e(), x, &Polynomial::one(ring))?;
    let moved = w.map_by(&x.forward.numerators)?;
    let module = if x.pivot.is_constant() { moved } else { moved.saturate(&x.pivot)? };
    Ok(Reduction { frob: FrobMatrix::new(u, f.e())?, module, nu })
}

/// `a1^mu · U ≡ g · V` modulo `P^{[q]}`.
#[derive(Debug, Clone)]
pub struct GVDecomposition {
    pub a1: Polynomial,
    pub g: Polynomial,
    pub v: PolyMatrix,
    pub mu: u32,
}

fn by_degree(v: &mut [Polynomial]) {
    v.sort_by_cached_key(|f| (f.total_degree().unwrap_or(0), f.num_terms(), f.to_string()));
}

pub fn gv_decomposition(f: &FrobMatrix, p: &Ideal) -> Result<GVDecomposition> {
    let ring = f.ring();
    let u = f.u();
    if p.is_zero() {
        return Ok(GVDecomposition { a1: Polynomial::one(ring), g: Polynomial::one(ring), v: u.clone(), mu: 1 });
    }
    let pq = p.bracket_power(f.e());
    let c = pq.quotient(p)?;
    for x in u.entries() {
        if !c.contains(x)? {
            return Err(AlgebraError::Precondition(format!("entry {x} of U is outside (P^[q] : P)")));
        }
    }
    let mut cands = c.groebner_basis();
    by_degree(&mut cands);
    for g in cands {
        if pq.contains(&g)? {
            continue;
        }
        let colon = pq.with_gens(vec![g.clone()])?.quotient(&c)?;
        let mut outside = Vec::new();
        for h in colon.groebner_basis() {
            if !p.contains(&h)? {
                outside.push(h);
            }
        }
        by_degree(&mut outside);
        let Some(a1) = outside.into_iter().next() else { continue };
        let mut gens = vec![g.clone()];
        gens.extend(pq.gens());
        let span = Ideal::new(ring, gens)?;
        let mut rows = Vec::with_capacity(u.rows());
        for i in 0..u.rows() {
            let mut row = Vec::with_capacity(u.cols());
            for j in 0..u.cols() {
                let lifted = span
                    .lift_membership(&(&a1 * u.get(i, j)))?
                    .ok_or_else(|| AlgebraError::Precondition("a1·U is not in (g) + P^[q]".into()))?;
                row.push(lifted[0].clone());
            }
            rows.push(row);
        }
        let v = PolyMatrix::from_rows(ring, rows)?;
        for (x, y) in u.entries().iter().zip(v.entries()) {
            let diff = &(&a1 * x) - &(&g * y);
            assert!(pq.contains(&diff)?, "a1·U − g·V must vanish modulo P^[q]");
        }
        return Ok(GVDecomposition { a1, g, v, mu: 1 });
    }
    Err(AlgebraError::Capability(format!("no generator of (P^[q] : P) localizes to a generator at P = {p}")))
}

/// A vector `w ∉ P·R^α` with `V·w ≡ 0` modulo `P`, by fraction-free
/// Gauss–Jordan elimination over `R/P`.
pub fn kernel_mod_prime(v: &PolyMatrix, p: &Ideal) -> Result<Vec<Polynomial>> {
    let ring = v.ring();
    let (nr, nc) = (v.rows(), v.cols());
    let nf = |x: &Polynomial| p.normal_form(x);
    let mut m: Vec<Vec<Polynomial>> = Vec::with_capacity(nr);
    for i in 0..nr {
        m.push(v.row(i).iter().map(nf).collect::<Result<_>>()?);
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..nc {
        let Some(i) = (r..nr).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, i);
        let piv = m[r][col].clone();
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let c = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = nf(&(&(&piv * &*x) - &(&c * y)))?;
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == nr {
            break;
        }
    }
    let Some(free) = (0..nc).find(|c| pivots.iter().all(|&(_, pc)| pc != *c)) else {
        return Err(AlgebraError::Precondition("matrix is invertible modulo P".into()));
    };
    let mut w = vec![Polynomial::zero(ring); nc];
    let dets: Vec<Polynomial> = pivots.iter().map(|&(r, c)| m[r][c].clone()).collect();
    w[free] = dets.iter().fold(Polynomial::one(ring), |acc, d| &acc * d);
    for (k, &(r, c)) in pivots.iter().enumerate() {
        let others = dets.iter().enumerate().filter(|&(j, _)| j != k).fold(Polynomial::one(ring), |acc, (_, d)| &acc * d);
        w[c] = -&(&m[r][free] * &others);
    }
    let mut common = Polynomial::zero(ring);
    for x in w.iter().filter(|x| !x.is_zero()) {
        common = factor::gcd(&common, x)?;
    }
    let w: Vec<Polynomial> = w.iter().map(|x| x.exact_div(&common).expect("gcd divides")).collect();
    for x in v.mul_vec(&w)? {
        debug_assert!(p.contains(&x)?, "kernel vector must solve V·w ≡ 0 mod P");
    }
    Ok(w)
}

/// A reported prime with the data that certifies it.
#[derive(Debug, Clone)]
pub struct PrimeCertificate {
    pub prime: Ideal,
    /// `(Q·R^α)^{★U}`.
    pub closure: Submodule,
    pub annihilator: Ideal,
    /// Whether the action on `E(closure)` is not nilpotent.
    pub nonnilpotent: bool,
    /// A generator of the nilpotent kernel outside the closure, when there is one.
    pub witness: Option<Vec<Polynomial>>,
}

#[derive(Debug, Clone)]
pub struct SpecialPrimeReport {
    pub frob: FrobMatrix,
    pub kernel: Submodule,
    pub primes: Vec<PrimeCertificate>,
    pub trace: Vec<String>,
}

impl SpecialPrimeReport {
    pub fn prime_ideals(&self) -> Vec<Ideal> {
        self.primes.iter().map(|c| c.prime.clone()).collect()
    }
}

impl fmt::Display for SpecialPrimeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.primes {
            writeln!(f, "{}", c.prime.canonical_string())?;
            writeln!(f, "  closure: {}", c.closure.canonical_string())?;
            writeln!(f, "  annihilator: {}", c.annihilator.canonical_string())?;
            match &c.witness {
                Some(w) => writeln!(f, "  non-nilpotent: yes, witness {}", crate::submodule::format_vectors(std::slice::from_ref(w)))?,
                None => writeln!(f, "  non-nilpotent: no")?,
            }
        }
        Ok(())
    }
}

fn strictly_contains(q: &Ideal, p: &Ideal) -> Result<bool> {
    Ok(q.contains_ideal(p)? && !p.contains_ideal(q)?)
}

fn as_ideal(m: &Submodule) -> Result<Ideal> {
    Ideal::new(m.ring(), m.gens().iter().map(|g| g[0].clone()).collect())
}

fn single(ring: &RingRef, u: &Polynomial, e: u32) -> Result<FrobMatrix> {
    FrobMatrix::new(PolyMatrix::from_rows(ring, vec![vec![u.clone()]])?, e)
}

fn push_new(found: &mut Vec<Ideal>, q: Ideal) -> Result<bool> {
    for p in found.iter() {
        if p.equals(&q)? {
            return Ok(false);
        }
    }
    found.push(q);
    Ok(true)
}

/// Column and entry of a generating matrix to localize at: outside `P`,
/// preferring sparse columns, low degree and a pivot already in last position.
fn choose_entry(gens: &[Vec<Polynomial>], p: &Ideal) -> Result<Option<(Vec<Polynomial>, Polynomial)>> {
    type Key = (usize, u64, usize, usize);
    let mut best: Option<(Key, Vec<Polynomial>, Polynomial)> = None;
    for (j, col) in gens.iter().enumerate() {
        let nonzero = col.iter().filter(|x| !x.is_zero()).count();
        for (i, x) in col.iter().enumerate() {
            if x.is_zero() || p.contains(x)? {
                continue;
            }
            let key = (nonzero, x.total_degree().unwrap_or(0), col.len() - 1 - i, j);
            if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                best = Some((key, col.clone(), x.clone()));
            }
        }
    }
    Ok(best.map(|(_, c, x)| (c, x)))
}

struct Engine {
    trace: Vec<String>,
    depth: usize,
    special_memo: HashMap<(String, String), bool>,
}

impl Engine {
    fn new() -> Self {
        Engine { trace: Vec::new(), depth: 0, special_memo: HashMap::new() }
    }

    fn note(&mut self, msg: String) {
        self.trace.push(format!("{}{}", "  ".repeat(self.depth), msg));
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(AlgebraError::Capability(format!("recursion deeper than {MAX_DEPTH} levels")));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn special(&mut self, q: &Ideal, f: &FrobMatrix) -> Result<bool> {
        let key = (format!("{f:?}"), q.canonical_string());
        if let Some(&b) = self.special_memo.get(&key) {
            return Ok(b);
        }
        let b = is_special_prime(q, f)?;
        self.special_memo.insert(key, b);
        Ok(b)
    }

    /// Keeps the candidates strictly above `p`, avoiding `avoid`, special for every map in `maps`.
    fn admit(&mut self, cands: Vec<Ideal>, p: &Ideal, avoid: Option<&Polynomial>, maps: &[&FrobMatrix]) -> Result<Vec<Ideal>> {
        let mut out = Vec::new();
        'next: for q in cands {
            if !strictly_contains(&q, p)? {
                continue;
            }
            if let Some(a) = avoid {
                if q.contains(a)? {
                    continue;
                }
            }
            for f in maps {
                if !self.special(&q, f)? {
                    self.note(format!("reject {}: not special for {:?}", q.canonical_string(), f.u()));
                    continue 'next;
                }
            }
            push_new(&mut out, q)?;
        }
        Ok(out)
    }

    fn alpha1(&mut self, u: &Polynomial, e: u32) -> Result<Vec<Ideal>> {
        if u.is_zero() {
            return Err(AlgebraError::ZeroInput("alpha1_special_primes"));
        }
        let ring = u.ring().clone();
        let f = single(&ring, u, e)?;
        let root = as_ideal(&ie_vector(&ring, std::slice::from_ref(u), e)?)?;
        self.note(format!("rank one, u = {u}, e = {e}"));
        let mut found = vec![Ideal::zero(&ring)];
        let mut next = 0;
        while next < found.len() {
            let p = found[next].clone();
            next += 1;
            if p.contains_ideal(&root)? || dimension(&p) == Some(0) {
                continue;
            }
            let pq = p.bracket_power(e);
            let fedder = pq.quotient(&p)?;
            let cands = [
                root.sum(&p)?,
                singular_locus_ideal(&p)?.sum(&p)?,
                pq.with_gens(vec![u.clone()])?.quotient(&fedder)?.sum(&p)?,
            ];
            for j in cands {
                if j.is_unit() {
                    continue;
                }
                let closed = as_ideal(&star_closure(j.as_module(), &f)?)?;
                if closed.is_unit() {
                    continue;
                }
                for q in minimal_primes(&closed)? {
                    if !self.special(&q, &f)? {
                        continue;
                    }
                    let s = q.canonical_string();
                    if push_new(&mut found, q)? {
                        self.note(format!("  above {}: {}", p.canonical_string(), s));
                    }
                }
            }
        }
        sort_ideals(&mut found);
        Ok(found)
    }

    /// All special primes reachable from `(0)`.
    fn all(&mut self, f: &FrobMatrix) -> Result<Vec<Ideal>> {
        let ring = f.ring().clone();
        if f.u().is_zero() {
            self.note("zero action: no information from this block".into());
            return Ok(vec![Ideal::zero(&ring)]);
        }
        if f.alpha() == 1 {
            return self.alpha1(f.u().get(0, 0), f.e());
        }
        let mut found = vec![Ideal::zero(&ring)];
        let mut next = 0;
        while next < found.len() {
            let p = found[next].clone();
            next += 1;
            for q in self.minimal_over(&p, f)? {
                push_new(&mut found, q)?;
            }
        }
        sort_ideals(&mut found);
        Ok(found)
    }

    fn block(&mut self, u: &FrobMatrix) -> Result<FrobMatrix> {
        FrobMatrix::new(u.u().leading_block(u.alpha() - 1), u.e())
    }

    fn bootstrap(&mut self, p: &Ideal, a: &Polynomial, f: &FrobMatrix) -> Result<Vec<Ideal>> {
        if p.contains(a)? {
            return Err(AlgebraError::Precondition(format!("bootstrap element {a} lies in P")));
        }
        let w = star_closure(&Submodule::extended(&p.with_gens(vec![a.clone()])?, f.alpha()), f)?;
        let ann = w.annihilator_of_quotient()?;
        if ann.is_unit() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for q in minimal_primes(&ann)? {
            if self.special(&q, f)? {
                out.push(q);
            }
        }
        self.note(format!("bootstrap with {a}: {}", list(&out)));
        Ok(out)
    }

    /// Special primes for the `(α-1)`-block after localizing at `a` so that `col` becomes `a·e_α`.
    fn reduced_branch(&mut self, f: &FrobMatrix, w: &Submodule, col: &[Polynomial], a: &Polynomial) -> Result<Vec<Ideal>> {
        let x = make_unimodular(col, a)?;
        let red = reduce_alpha(f, &x, w)?;
        debug_assert!(is_compatible(&red.module, &red.frob)?, "reduction must preserve compatibility");
        let b = self.block(&red.frob)?;
        self.note(format!("reduce at {a}: nu = {}, U' = {:?}", red.nu, red.frob.u()));
        self.enter()?;
        let found = self.all(&b);
        self.leave();
        found
    }

    fn minimal_over(&mut self, p: &Ideal, f: &FrobMatrix) -> Result<Vec<Ideal>> {
        self.enter()?;
        let r = self.minimal_over_inner(p, f);
        self.leave();
        r
    }

    fn minimal_over_inner(&mut self, p: &Ideal, f: &FrobMatrix) -> Result<Vec<Ideal>> {
        let ps = p.canonical_string();
        if dimension(p) == Some(0) {
            self.note(format!("P = {ps}: maximal, nothing above"));
            return Ok(Vec::new());
        }
        if !self.special(p, f)? {
            return Err(AlgebraError::Precondition(format!("{ps} is not special")));
        }
        let alpha = f.alpha();
        let base = Submodule::extended(p, alpha);
        let m = star_closure(&base, f)?;
        if !base.contains_module(&m)? {
            let (col, a) = choose_entry(&m.groebner_basis(), p)?.expect("closure strictly above P·R^α has an entry outside P");
            self.note(format!("P = {ps}: closure {} is larger than P·R^{alpha}, entry {a}", m.canonical_string()));
            let mut out = self.bootstrap(p, &a, f)?;
            let cands = self.reduced_branch(f, &m, &col, &a)?;
            for q in self.admit(cands, p, Some(&a), &[f])? {
                push_new(&mut out, q)?;
            }
            return Ok(out);
        }
        let gv = gv_decomposition(f, p)?;
        let d = gv.v.determinant()?;
        self.note(format!("P = {ps}: closed, g = {}, a1 = {}, det V = {d}", gv.g, gv.a1));
        if !p.contains(&d)? {
            let mut out = self.bootstrap(p, &d, f)?;
            self.enter()?;
            let cands = self.alpha1(&gv.g, f.e());
            self.leave();
            for q in self.admit(cands?, p, Some(&d), &[f])? {
                push_new(&mut out, q)?;
            }
            return Ok(out);
        }
        let w = kernel_mod_prime(&gv.v, p)?;
        let mut outside = Vec::new();
        for (i, x) in w.iter().enumerate() {
            if !p.contains(x)? {
                outside.push((x.total_degree().unwrap_or(0), alpha - 1 - i, x.clone()));
            }
        }
        outside.sort_by_key(|a| (a.0, a.1));
        let a2 = outside[0].2.clone();
        let x = make_unimodular(&w, &a2)?;
        let gvm = gv.v.scale(&gv.g);
        let (u1, nu) = conjugate(&gvm, f.e(), &x, &gv.a1.pow(u64::from(gv.mu)))?;
        let pq = p.bracket_power(f.e());
        let u1 = u1.map(|y| pq.normal_form(y).expect("same ring"));
        if (0..alpha).any(|i| !u1.get(i, alpha - 1).is_zero()) {
            return Err(AlgebraError::Precondition("last column did not vanish modulo P^[q]".into()));
        }
        self.note(format!("kernel vector {}, pivot {a2}, nu = {nu}, U1 = {u1:?}", crate::submodule::format_vectors(std::slice::from_ref(&w))));
        // The change of basis is only valid away from a1·a2.
        let a = &gv.a1 * &a2;
        let mut out = if a.is_constant() { Vec::new() } else { self.bootstrap(p, &a, f)? };
        let u1 = FrobMatrix::new(u1, f.e())?;
        for q in self.zero_column(&u1, p, f, Some(&a))? {
            push_new(&mut out, q)?;
        }
        Ok(out)
    }

    fn zero_column(&mut self, u1: &FrobMatrix, p: &Ideal, top: &FrobMatrix, avoid: Option<&Polynomial>) -> Result<Vec<Ideal>> {
        let alpha = u1.alpha();
        if u1.u().is_zero() {
            self.note("zero matrix after reduction: nothing to report".into());
            return Ok(Vec::new());
        }
        let b = self.block(u1)?;
        let pr = Submodule::extended(p, alpha - 1);
        let mut k = Submodule::free(u1.ring(), alpha - 1);
        let mut nilpotent_at = None;
        for j in 1..=MAX_CHAIN {
            let next = ie_module(&b.image(&k)?, b.e())?.reduced();
            if pr.contains_module(&next)? {
                nilpotent_at = Some(j as u32);
                break;
            }
            if next.equals(&k)? {
                break;
            }
            k = next;
        }
        if let Some(steps) = nilpotent_at {
            let e = u1.e();
            let mut prod = u1.u().clone();
            for s in 1..steps {
                prod = u1.u().bracket_power(e * s).mul(&prod)?;
            }
            let total = e * steps;
            let pq = p.bracket_power(total);
            self.note(format!("zero column, block nilpotent after {steps} steps"));
            let mut out = Vec::new();
            for i in 0..alpha - 1 {
                let g = pq.normal_form(prod.get(alpha - 1, i))?;
                if g.is_zero() {
                    continue;
                }
                self.enter()?;
                let cands = self.alpha1(&g, total);
                self.leave();
                for q in self.admit(cands?, p, avoid, &[top])? {
                    push_new(&mut out, q)?;
                }
            }
            return Ok(out);
        }
        self.note("zero column, block not nilpotent".into());
        self.enter()?;
        let block_primes = self.all(&b);
        self.leave();
        let mut above = Vec::new();
        for q in block_primes? {
            if strictly_contains(&q, p)? {
                above.push(q);
            }
        }
        let mut tau = Ideal::unit(u1.ring());
        for (i, q) in above.iter().enumerate() {
            let mut minimal = true;
            for (j, r) in above.iter().enumerate() {
                if i != j && strictly_contains(q, r)? {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                tau = tau.intersect(q)?;
            }
        }
        let kernel = nilpotent_kernel(&b)?;
        let padded: Vec<Vec<Polynomial>> = kernel
            .ideal_product(&tau)
            .gens()
            .iter()
            .map(|g| {
                let mut v = g.clone();
                v.push(Polynomial::zero(u1.ring()));
                v
            })
            .collect();
        let lifted = u1.image(&Submodule::new(u1.ring(), alpha, padded)?)?;
        let m = star_closure(&ie_module(&lifted, u1.e())?, u1)?;
        self.note(format!("tau = {}, M' = {}", tau.canonical_string(), m.canonical_string()));
        let Some((col, a)) = choose_entry(&m.groebner_basis(), p)? else {
            return Err(AlgebraError::Precondition("every entry of M' lies in P".into()));
        };
        let mut out = Vec::new();
        let boot = self.bootstrap(p, &a, u1)?;
        for q in self.admit(boot, p, avoid, &[top])? {
            push_new(&mut out, q)?;
        }
        let cands = self.reduced_branch(u1, &m, &col, &a)?;
        let both = avoid.map_or(a.clone(), |b| b * &a);
        for q in self.admit(cands, p, Some(&both), &[top])? {
            push_new(&mut out, q)?;
        }
        Ok(out)
    }
}

fn list(v: &[Ideal]) -> String {
    let parts: Vec<String> = v.iter().map(|q| q.canonical_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// All primes `Q` with `u·Q ⊆ Q^{[p^e]}` reachable by the rank-one worklist
/// from `(0)`, which is always included.
pub fn alpha1_special_primes(u: &Polynomial, e: u32) -> Result<Vec<Ideal>> {
    if e == 0 {
        return Err(AlgebraError::Precondition("Frobenius exponent must be positive".into()));
    }
    Engine::new().alpha1(u, e)
}

/// Minimal primes of the annihilator of `R^α / ((P + aR)·R^α)^{★U}` that are special.
pub fn bootstrap_step(p: &Ideal, a: &Polynomial, f: &FrobMatrix) -> Result<Vec<Ideal>> {
    Engine::new().bootstrap(p, a, f)
}

/// The special primes found directly above `p`, when `U` has a zero last column.
pub fn zero_column_step(f: &FrobMatrix, p: &Ideal) -> Result<Vec<Ideal>> {
    let alpha = f.alpha();
    if alpha < 2 || (0..alpha).any(|i| !f.u().get(i, alpha - 1).is_zero()) {
        return Err(AlgebraError::Precondition("the last column of U must be zero".into()));
    }
    let mut eng = Engine::new();
    if !eng.special(p, f)? {
        return Err(AlgebraError::Precondition(format!("{} is not special", p.canonical_string())));
    }
    eng.zero_column(f, p, f, None)
}

pub fn minimal_special_over(p: &Ideal, f: &FrobMatrix) -> Result<Vec<Ideal>> {
    Engine::new().minimal_over(p, f)
}

fn certify(q: Ideal, f: &FrobMatrix, kernel: &Submodule) -> Result<PrimeCertificate> {
    let closure = star_closure(&Submodule::extended(&q, f.alpha()), f)?;
    let annihilator = closure.annihilator_of_quotient()?;
    let mut witness = None;
    for g in kernel.groebner_basis() {
        if !closure.contains(&g)? {
            witness = Some(g);
            break;
        }
    }
    Ok(PrimeCertificate { prime: q, closure, annihilator, nonnilpotent: witness.is_some(), witness })
}

/// Runs the worklist from `(0)` and certifies each prime found.
pub fn find_special_primes(f: &FrobMatrix) -> Result<SpecialPrimeReport> {
    let kernel = nilpotent_kernel(f)?;
    if kernel.is_zero() {
        return Err(AlgebraError::Precondition("the Frobenius action is nilpotent".into()));
    }
    let mut eng = Engine::new();
    let found = eng.all(f)?;
    let mut primes = Vec::with_capacity(found.len());
    for q in found {
        let cert = certify(q, f, &kernel)?;
        debug_assert!(cert.annihilator.equals(&cert.prime)?, "reported primes are special");
        primes.push(cert);
    }
    Ok(SpecialPrimeReport { frob: f.clone(), kernel, primes, trace: eng.trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_nested;
    use crate::ring::Ring;

    const F: &str = "(x^3+y^3+z^3)";
    const G: &str = "(x^2+z^4)";

    fn ring() -> RingRef {
        Ring::new(2, &["x", "y", "z"]).unwrap()
    }

    fn mat(r: &RingRef, s: &str) -> PolyMatrix {
        PolyMatrix::from_rows(r, parse_nested(r, s).unwrap()).unwrap()
    }

    fn poly(r: &RingRef, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn ideals(r: &RingRef, gens: &[&str]) -> Vec<Ideal> {
        gens.iter().map(|s| Ideal::parse(r, s).unwrap()).collect()
    }

    fn same_set(got: &[Ideal], want: &[Ideal]) -> bool {
        got.len() == want.len() && want.iter().all(|w| got.iter().any(|g| g.equals(w).unwrap()))
    }

    fn first_example(r: &RingRef) -> FrobMatrix {
        FrobMatrix::new(mat(r, "[[x^3+y^3+z^3, x*y^2*z^5],[x*(y^2+z^2), x^3]]"), 1).unwrap()
    }

    fn second_example(r: &RingRef) -> FrobMatrix {
        let s = format!("[[x*{F}, y*{F}],[x*{G}, y*{G}]]");
        FrobMatrix::new(mat(r, &s), 1).unwrap()
    }

    #[test]
    fn unimodular_shapes() {
        let r = ring();
        let (zero, one, x, y) = (Polynomial::zero(&r), Polynomial::one(&r), poly(&r, "x"), poly(&r, "y"));
        let id = make_unimodular(&[zero.clone(), one.clone()], &one).unwrap();
        assert!(id.forward.is_identity() && id.inverse.is_identity());

        let sw = make_unimodular(&[y.clone(), zero.clone()], &y).unwrap();
        let moved = sw.forward.numerators().mul_vec(&[y.clone(), zero.clone()]).unwrap();
        let scale = sw.forward.denom().pow(u64::from(sw.forward.exp()));
        assert_eq!(moved, vec![zero.clone(), &y * &scale]);

        let u = make_unimodular(&[y.clone(), x.clone()], &x).unwrap();
        assert_eq!(u.inverse.numerators(), &mat(&r, "[[x, y],[0, x]]"));
        assert_eq!((u.inverse.denom(), u.inverse.exp()), (&x, 1));
        assert!(make_unimodular(std::slice::from_ref(&y), &x).is_err());
    }

    #[test]
    fn reductions_match_worked_examples() {
        let r = ring();
        let f1 = first_example(&r);
        let w = Submodule::free(&r, 2);
        let id = make_unimodular(&[Polynomial::zero(&r), Polynomial::one(&r)], &Polynomial::one(&r)).unwrap();
        let same = reduce_alpha(&f1, &id, &w).unwrap();
        assert_eq!((same.frob.u(), same.nu), (f1.u(), 0));

        let y = poly(&r, "y");
        let diag = Unimodular {
            forward: LocalizedMatrix::new(mat(&r, "[[1,0],[0,y]]"), y.clone(), 1).unwrap(),
            inverse: LocalizedMatrix::new(mat(&r, "[[y,0],[0,1]]"), y.clone(), 0).unwrap(),
            pivot: y,
        };
        let red = reduce_alpha(&f1, &diag, &w).unwrap();
        assert_eq!(red.nu, 1);
        assert_eq!(red.frob.u(), &mat(&r, "[[x^3+y^3+z^3, x*y*z^5],[x*y^2*(y^2+z^2), x^3*y]]"));

        let f2 = second_example(&r);
        let x = make_unimodular(&[poly(&r, "y"), poly(&r, "x")], &poly(&r, "x")).unwrap();
        let red = reduce_alpha(&f2, &x, &w).unwrap();
        assert_eq!(red.nu, 1);
        assert_eq!(red.frob.u(), &mat(&r, &format!("[[x^2*{F}+y^2*{G}, 0],[x^2*{G}, 0]]")));
    }

    #[test]
    fn gv_decompositions() {
        let r = ring();
        let f1 = first_example(&r);
        let d = gv_decomposition(&f1, &Ideal::zero(&r)).unwrap();
        assert!(d.a1.is_one() && d.g.is_one() && &d.v == f1.u());

        let r2 = Ring::new(2, &["x", "y"]).unwrap();
        let f = FrobMatrix::new(mat(&r2, "[[x,0],[0,x]]"), 1).unwrap();
        let d = gv_decomposition(&f, &Ideal::parse(&r2, "(x)").unwrap()).unwrap();
        assert_eq!((d.g.to_string(), d.a1.to_string()), ("x".to_string(), "1".to_string()));
        assert!(d.v.determinant().unwrap().is_one());
    }

    #[test]
    fn kernels_modulo_primes() {
        let r = ring();
        let zero = Ideal::zero(&r);
        let w = kernel_mod_prime(second_example(&r).u(), &zero).unwrap();
        assert_eq!(w, vec![poly(&r, "y"), poly(&r, "x")]);
        let w = kernel_mod_prime(&mat(&r, "[[x, x],[y, y]]"), &zero).unwrap();
        assert_eq!(w, vec![Polynomial::one(&r), Polynomial::one(&r)]);
        assert!(kernel_mod_prime(&PolyMatrix::identity(&r, 2), &zero).is_err());
    }

    #[test]
    fn rank_one_worklist() {
        let r = ring();
        assert!(same_set(&alpha1_special_primes(&Polynomial::one(&r), 1).unwrap(), &ideals(&r, &["(0)"])));
        assert!(alpha1_special_primes(&Polynomial::zero(&r), 1).is_err());
        let got = alpha1_special_primes(&poly(&r, "x^3*y"), 1).unwrap();
        assert!(same_set(&got, &ideals(&r, &["(0)", "(x)", "(y)", "(x,y)"])));
        let got = alpha1_special_primes(&poly(&r, &format!("y*{G}")), 1).unwrap();
        assert!(same_set(&got, &ideals(&r, &["(0)", "(y)", "(y, x+z^2)", "(x+z^2)"])));
        let u = format!("x^2*{F}+y^2*{G}");
        let got = alpha1_special_primes(&poly(&r, &u), 1).unwrap();
        assert!(same_set(&got, &ideals(&r, &["(0)", &format!("({u})"), "(x,y)", "(x,z)"])));
    }

    #[test]
    fn bootstrap_examples() {
        let r = ring();
        let f1 = first_example(&r);
        let d = f1.u().determinant().unwrap();
        let got = bootstrap_step(&Ideal::zero(&r), &d, &f1).unwrap();
        assert!(same_set(&got, &ideals(&r, &["(x, y+z)"])));
        let got = bootstrap_step(&Ideal::parse(&r, "(x,z)").unwrap(), &poly(&r, "y"), &second_example(&r)).unwrap();
        assert!(same_set(&got, &ideals(&r, &["(x,y,z)"])));
        assert!(bootstrap_step(&Ideal::zero(&r), &Polynomial::one(&r), &f1).unwrap().is_empty());
        assert!(bootstrap_step(&Ideal::parse(&r, "(x)").unwrap(), &poly(&r, "x^2"), &f1).is_err());
    }

    #[test]
    fn zero_columns() {
        let r = ring();
        let zero = FrobMatrix::new(PolyMatrix::zero(&r, 2, 2), 1).unwrap();
        assert!(zero_column_step(&zero, &Ideal::zero(&r)).unwrap().is_empty());
        assert!(zero_column_step(&first_example(&r), &Ideal::zero(&r)).is_err());
    }

    #[test]
    fn steps_of_the_first_example() {
        let r = ring();
        let f1 = first_example(&r);
        let got = minimal_special_over(&Ideal::zero(&r), &f1).unwrap();
        assert!(same_set(&got, &ideals(&r, &["(x, y+z)"])));
        let got = minimal_special_over(&Ideal::parse(&r, "(x, y+z)").unwrap(), &f1).unwrap();
        assert!(same_set(&got, &ideals(&r, &["(x, y, z)"])));
        assert!(minimal_special_over(&Ideal::parse(&r, "(y)").unwrap(), &f1).is_err());
    }

    #[test]
    fn driver_edge_cases() {
        let r = ring();
        let one = FrobMatrix::new(PolyMatrix::identity(&r, 1), 1).unwrap();
        let rep = find_special_primes(&one).unwrap();
        assert!(same_set(&rep.prime_ideals(), &ideals(&r, &["(0)"])));
        let zero = FrobMatrix::new(PolyMatrix::zero(&r, 1, 1), 1).unwrap();
        assert!(find_special_primes(&zero).is_err());
    }
}
