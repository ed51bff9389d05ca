//! Submodules of free modules R^α and the operations the decomposition and
//! Frobenius code need: membership, equality, sums, intersections, colons,
//! saturation, annihilators and explicit membership certificates.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{AlgebraError, Result};
use crate::gb::{Ctx, SVec, Term};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Exps, RingRef};

/// Moves a vector into the sparse representation, sending ring variable `i`
/// to index `map[i]` of an exponent vector of length `nv` and component `j`
/// to position `j + pos_offset`.
pub(crate) fn embed(v: &[Polynomial], map: &[usize], nv: usize, pos_offset: u32) -> Vec<Term> {
    let mut out = Vec::new();
    for (j, f) in v.iter().enumerate() {
        for (m, c) in f.terms() {
            let mut e = Exps::from_elem(0, nv);
            for (i, &x) in m.iter().enumerate() {
                e[map[i]] += x;
            }
            out.push(Term { pos: j as u32 + pos_offset, mon: e, coef: *c });
        }
    }
    out
}

/// Inverse of [`embed`] for terms in positions `pos_offset..pos_offset+rank`.
pub(crate) fn extract(ring: &RingRef, rank: usize, sv: &[Term], map: &[usize], pos_offset: u32) -> Vec<Polynomial> {
    let n = ring.nvars();
    let mut comps: Vec<Vec<(Exps, u32)>> = vec![Vec::new(); rank];
    for t in sv {
        let mut e = Exps::from_elem(0, n);
        for i in 0..n {
            e[i] = t.mon[map[i]];
        }
        comps[(t.pos - pos_offset) as usize].push((e, t.coef));
    }
    comps.into_iter().map(|c| Polynomial::from_terms(ring, c)).collect()
}

fn identity_map(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn shifted_map(n: usize, k: usize) -> Vec<usize> {
    (k..n + k).collect()
}

#[derive(Clone)]
pub struct Submodule {
    ring: RingRef,
    rank: usize,
    gens: Vec<Vec<Polynomial>>,
    gb: Arc<OnceLock<Vec<SVec>>>,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Submodule {
    pub fn new(ring: &RingRef, rank: usize, gens: Vec<Vec<Polynomial>>) -> Result<Self> {
        if rank == 0 {
            return Err(AlgebraError::Dimension("free module of rank 0".into()));
        }
        for g in &gens {
            if g.len() != rank {
                return Err(AlgebraError::RankMismatch { expected: rank, got: g.len() });
            }
            if g.iter().any(|p| !same_ring(p.ring(), ring)) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        Ok(Self::from_parts(ring, rank, gens))
    }

    fn from_parts(ring: &RingRef, rank: usize, gens: Vec<Vec<Polynomial>>) -> Self {
        let gens = gens.into_iter().filter(|g| g.iter().any(|p| !p.is_zero())).collect();
        Submodule { ring: ring.clone(), rank, gens, gb: Arc::new(OnceLock::new()) }
    }

    pub fn zero(ring: &RingRef, rank: usize) -> Self {
        Self::from_parts(ring, rank, Vec::new())
    }

    /// The whole free module R^rank.
    pub fn free(ring: &RingRef, rank: usize) -> Self {
        Self::from_parts(ring, rank, unit_vectors(ring, rank))
    }

    /// I·R^rank.
    pub fn extended(ideal: &Ideal, rank: usize) -> Self {
        let ring = ideal.ring();
        let mut gens = Vec::new();
        for f in ideal.gens() {
            for i in 0..rank {
                let mut v = vec![Polynomial::zero(ring); rank];
                v[i] = f.clone();
                gens.push(v);
            }
        }
        Self::from_parts(ring, rank, gens)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[Vec<Polynomial>] {
        &self.gens
    }

    fn ctx(&self) -> Ctx {
        Ctx::new(*self.ring.field(), 0)
    }

    fn map(&self) -> Vec<usize> {
        identity_map(self.ring.nvars())
    }

    fn svec(&self, v: &[Polynomial]) -> SVec {
        self.ctx().normalize(embed(v, &self.map(), self.ring.nvars(), 0))
    }

    pub(crate) fn gb_svecs(&self) -> &[SVec] {
        self.gb.get_or_init(|| {
            let gens = self.gens.iter().map(|g| self.svec(g)).collect();
            self.ctx().groebner(gens)
        })
    }

    /// Reduced Gröbner basis (position-over-term, grevlex).
    pub fn groebner_basis(&self) -> Vec<Vec<Polynomial>> {
        let map = self.map();
        self.gb_svecs().iter().map(|g| extract(&self.ring, self.rank, g, &map, 0)).collect()
    }

    /// The same module presented by its reduced Gröbner basis.
    pub fn reduced(&self) -> Self {
        let gens = self.groebner_basis();
        let gb = self.gb.clone();
        Submodule { ring: self.ring.clone(), rank: self.rank, gens, gb }
    }

    fn check_vec(&self, v: &[Polynomial]) -> Result<()> {
        if v.len() != self.rank {
            return Err(AlgebraError::RankMismatch { expected: self.rank, got: v.len() });
        }
        if v.iter().any(|p| !same_ring(p.ring(), &self.ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if self.rank != other.rank {
            return Err(AlgebraError::RankMismatch { expected: self.rank, got: other.rank });
        }
        Ok(())
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        self.check_vec(v)?;
        let r = self.ctx().normal_form(&self.svec(v), self.gb_svecs());
        Ok(extract(&self.ring, self.rank, &r, &self.map(), 0))
    }

    pub fn contains(&self, v: &[Polynomial]) -> Result<bool> {
        self.check_vec(v)?;
        Ok(self.ctx().normal_form(&self.svec(v), self.gb_svecs()).is_empty())
    }

    /// `other ⊆ self`.
    pub fn contains_module(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.gb_svecs() == other.gb_svecs())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_free(&self) -> bool {
        let gb = self.gb_svecs();
        (0..self.rank as u32).all(|i| gb.iter().any(|g| g[0].pos == i && g[0].mon.iter().all(|&x| x == 0)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::from_parts(&self.ring, self.rank, gens))
    }

    /// Adds generators.
    pub fn with_gens(&self, extra: Vec<Vec<Polynomial>>) -> Result<Self> {
        for v in &extra {
            self.check_vec(v)?;
        }
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ok(Self::from_parts(&self.ring, self.rank, gens))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring, self.rank));
        }
        let n = self.ring.nvars();
        let nv = n + 1;
        let map = shifted_map(n, 1);
        let ctx = Ctx::new(*self.ring.field(), 1);
        let mut gens = Vec::new();
        for g in &self.gens {
            let mut v = embed(g, &map, nv, 0);
            for t in v.iter_mut() {
                t.mon[0] += 1;
            }
            gens.push(ctx.normalize(v));
        }
        let p = self.ring.p();
        for g in &other.gens {
            let v = embed(g, &map, nv, 0);
            let mut w = v.clone();
            for t in v {
                let mut mon = t.mon.clone();
                mon[0] += 1;
                w.push(Term { pos: t.pos, mon, coef: (p - t.coef) % p });
            }
            gens.push(ctx.normalize(w));
        }
        let gb = ctx.groebner(gens);
        let out = gb
            .iter()
            .filter(|g| g[0].mon[0] == 0)
            .map(|g| extract(&self.ring, self.rank, g, &map, 0))
            .collect();
        Ok(Self::from_parts(&self.ring, self.rank, out))
    }

    /// `f · self`.
    pub fn scale(&self, f: &Polynomial) -> Self {
        let gens = self.gens.iter().map(|g| g.iter().map(|x| x * f).collect()).collect();
        Self::from_parts(&self.ring, self.rank, gens)
    }

    /// `I · self`.
    pub fn ideal_product(&self, ideal: &Ideal) -> Self {
        let mut gens = Vec::new();
        for f in ideal.gens() {
            for g in &self.gens {
                gens.push(g.iter().map(|x| x * &f).collect());
            }
        }
        Self::from_parts(&self.ring, self.rank, gens)
    }

    /// `(self : f) = { v : f v ∈ self }`.
    pub fn colon_element(&self, f: &Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Ok(Self::free(&self.ring, self.rank));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let fm = Self::free(&self.ring, self.rank).scale(f);
        let meet = self.intersect(&fm)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| g.iter().map(|x| x.exact_div(f).expect("intersection with f·R^α is divisible by f")).collect())
            .collect();
        Ok(Self::from_parts(&self.ring, self.rank, gens))
    }

    /// `(self : J) = ∩_{g ∈ J} (self : g)`.
    pub fn colon_ideal(&self, j: &Ideal) -> Result<Self> {
        let mut acc = Self::free(&self.ring, self.rank);
        for g in j.gens() {
            acc = acc.intersect(&self.colon_element(&g)?)?;
        }
        Ok(acc)
    }

    /// `(self : f^∞)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Self> {
        let mut cur = self.clone();
        loop {
            let next = cur.colon_element(f)?;
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `{ r : r e_i ∈ self }`.
    pub fn coordinate_ideal(&self, i: usize) -> Result<Ideal> {
        if i >= self.rank {
            return Err(AlgebraError::Dimension(format!("coordinate {i} of a rank {} module", self.rank)));
        }
        // Move coordinate i to the last (least significant) position.
        let perm: Vec<usize> = (0..self.rank).filter(|&j| j != i).chain(std::iter::once(i)).collect();
        let gens: Vec<Vec<Polynomial>> =
            self.gens.iter().map(|g| perm.iter().map(|&j| g[j].clone()).collect()).collect();
        let m = Self::from_parts(&self.ring, self.rank, gens);
        let last = (self.rank - 1) as u32;
        let map = m.map();
        let out = m
            .gb_svecs()
            .iter()
            .filter(|g| g[0].pos == last)
            .map(|g| extract(&self.ring, self.rank, g, &map, 0).pop().unwrap())
            .collect();
        Ok(Ideal::from_gens_unchecked(&self.ring, out))
    }

    /// Annihilator of the quotient R^α / self.
    pub fn annihilator_of_quotient(&self) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for i in 0..self.rank {
            acc = acc.intersect(&self.coordinate_ideal(i)?)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// Coefficients `c` with `v = Σ c_j gens[j]`, or `None` when `v ∉ self`.
    pub fn lift_membership(&self, v: &[Polynomial]) -> Result<Option<Vec<Polynomial>>> {
        self.check_vec(v)?;
        let s = self.gens.len();
        if v.iter().all(Polynomial::is_zero) {
            return Ok(Some(vec![Polynomial::zero(&self.ring); s]));
        }
        if s == 0 {
            return Ok(None);
        }
        let a = self.rank;
        let n = self.ring.nvars();
        let map = self.map();
        let ctx = self.ctx();
        let gens: Vec<SVec> = self
            .gens
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let mut t = embed(g, &map, n, 0);
                t.push(Term { pos: (a + j) as u32, mon: Exps::from_elem(0, n), coef: 1 });
                ctx.normalize(t)
            })
            .collect();
        let gb = ctx.groebner(gens);
        let r = ctx.normal_form(&ctx.normalize(embed(v, &map, n, 0)), &gb);
        if r.iter().any(|t| (t.pos as usize) < a) {
            return Ok(None);
        }
        let coeffs: Vec<Polynomial> = extract(&self.ring, s, &r, &map, a as u32).iter().map(|c| -c).collect();
        let mut check = vec![Polynomial::zero(&self.ring); a];
        for (c, g) in coeffs.iter().zip(&self.gens) {
            for (acc, x) in check.iter_mut().zip(g) {
                *acc = &*acc + &(c * x);
            }
        }
        debug_assert_eq!(check, v);
        Ok(Some(coeffs))
    }

    /// Image under a map R^α → R^β given by a β×α matrix.
    pub fn map_by(&self, m: &crate::matrix::PolyMatrix) -> Result<Self> {
        if m.cols() != self.rank {
            return Err(AlgebraError::RankMismatch { expected: m.cols(), got: self.rank });
        }
        let gens = self.gens.iter().map(|g| m.mul_vec(g)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(&self.ring, m.rows(), gens))
    }

    /// Canonical text form: the reduced Gröbner basis as a generator list.
    pub fn canonical_string(&self) -> String {
        format_vectors(&self.groebner_basis())
    }
}

pub(crate) fn unit_vectors(ring: &RingRef, rank: usize) -> Vec<Vec<Polynomial>> {
    (0..rank)
        .map(|i| {
            let mut v = vec![Polynomial::zero(ring); rank];
            v[i] = Polynomial::one(ring);
            v
        })
        .collect()
}

pub(crate) fn format_vectors(vs: &[Vec<Polynomial>]) -> String {
    let parts: Vec<String> = vs
        .iter()
        .map(|v| format!("[{}]", v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_vectors(&self.gens))
    }
}

/// An ideal of R, stored as a rank-one submodule.
#[derive(Clone)]
pub struct Ideal(Submodule);

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|p| !same_ring(p.ring(), ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(Self::from_gens_unchecked(ring, gens))
    }

    pub(crate) fn from_gens_unchecked(ring: &RingRef, gens: Vec<Polynomial>) -> Self {
        Ideal(Submodule::from_parts(ring, 1, gens.into_iter().map(|g| vec![g]).collect()))
    }

    pub fn parse(ring: &RingRef, text: &str) -> Result<Self> {
        Self::new(ring, crate::parse::parse_ideal_gens(ring, text)?)
    }

    pub fn zero(ring: &RingRef) -> Self {
        Self::from_gens_unchecked(ring, Vec::new())
    }

    pub fn unit(ring: &RingRef) -> Self {
        Self::from_gens_unchecked(ring, vec![Polynomial::one(ring)])
    }

    pub fn ring(&self) -> &RingRef {
        self.0.ring()
    }

    pub fn as_module(&self) -> &Submodule {
        &self.0
    }

    pub fn gens(&self) -> Vec<Polynomial> {
        self.0.gens.iter().map(|g| g[0].clone()).collect()
    }

    pub fn groebner_basis(&self) -> Vec<Polynomial> {
        self.0.groebner_basis().into_iter().map(|mut g| g.pop().unwrap()).collect()
    }

    pub fn reduced(&self) -> Self {
        Ideal(self.0.reduced())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_free()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.0.contains(std::slice::from_ref(f))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(self.0.normal_form(std::slice::from_ref(f))?.pop().unwrap())
    }

    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        self.0.contains_module(&other.0)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.0.equals(&other.0)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        Ok(Ideal(self.0.sum(&other.0)?))
    }

    pub fn with_gens(&self, extra: Vec<Polynomial>) -> Result<Self> {
        Ok(Ideal(self.0.with_gens(extra.into_iter().map(|f| vec![f]).collect())?))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        if !same_ring(self.ring(), other.ring()) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(Ideal(self.0.ideal_product(other)))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        Ok(Ideal(self.0.intersect(&other.0)?))
    }

    pub fn quotient_element(&self, f: &Polynomial) -> Result<Self> {
        Ok(Ideal(self.0.colon_element(f)?))
    }

    /// `(self : J)`.
    pub fn quotient(&self, j: &Self) -> Result<Self> {
        Ok(Ideal(self.0.colon_ideal(j)?))
    }

    /// `(self : f^∞)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Self> {
        Ok(Ideal(self.0.saturate(f)?))
    }

    /// `I^{[p^e]}`, generated by the `p^e`-th powers of the generators.
    pub fn bracket_power(&self, e: u32) -> Self {
        Self::from_gens_unchecked(self.ring(), self.gens().iter().map(|g| g.bracket_power(e)).collect())
    }

    /// Coefficients expressing `f` in terms of the generators.
    pub fn lift_membership(&self, f: &Polynomial) -> Result<Option<Vec<Polynomial>>> {
        self.0.lift_membership(std::slice::from_ref(f))
    }

    /// Gröbner basis for a block order in which the variables `block` are
    /// compared first (grevlex), then the remaining variables (grevlex).
    /// Elements are sorted by descending leading term in that order.
    pub fn block_groebner(&self, block: &[usize]) -> Vec<Polynomial> {
        let ring = self.ring();
        let n = ring.nvars();
        let order: Vec<usize> = block.iter().copied().chain((0..n).filter(|i| !block.contains(i))).collect();
        let mut map = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            map[i] = k;
        }
        let ctx = Ctx::new(*ring.field(), block.len());
        let gens = self.0.gens.iter().map(|g| ctx.normalize(embed(g, &map, n, 0))).collect();
        ctx.groebner(gens).iter().map(|g| extract(ring, 1, g, &map, 0).pop().unwrap()).collect()
    }

    /// `self ∩ F_p[vars not in block]`.
    pub fn eliminate(&self, block: &[usize]) -> Self {
        let gens = self
            .block_groebner(block)
            .into_iter()
            .filter(|g| g.terms().iter().all(|(m, _)| block.iter().all(|&i| m[i] == 0)))
            .collect();
        Self::from_gens_unchecked(self.ring(), gens)
    }

    pub fn canonical_string(&self) -> String {
        format_ideal(&self.groebner_basis())
    }
}

pub(crate) fn format_ideal(gens: &[Polynomial]) -> String {
    if gens.is_empty() {
        return "(0)".into();
    }
    format!("({})", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "))
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ideal(&self.gens()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_nested;
    use crate::ring::Ring;

    fn module(ring: &RingRef, rank: usize, s: &str) -> Submodule {
        Submodule::new(ring, rank, parse_nested(ring, s).unwrap()).unwrap()
    }

    #[test]
    fn ideal_membership_and_equality() {
        let ring = Ring::new(2, &["x", "y", "z"]).unwrap();
        let i = Ideal::parse(&ring, "(x^2+y, x*y)").unwrap();
        let j = Ideal::parse(&ring, "(x*y, x^2+y, y^2)").unwrap();
        // y^2 = y(x^2+y) - x(xy)
        assert!(i.equals(&j).unwrap());
        assert!(!i.contains(&Polynomial::parse(&ring, "x").unwrap()).unwrap());
        assert!(Ideal::parse(&ring, "(x+1, x)").unwrap().is_unit());
    }

    #[test]
    fn intersections_and_quotients() {
        let ring = Ring::new(3, &["x", "y"]).unwrap();
        let a = Ideal::parse(&ring, "(x)").unwrap();
        let b = Ideal::parse(&ring, "(y)").unwrap();
        assert!(a.intersect(&b).unwrap().equals(&Ideal::parse(&ring, "(x*y)").unwrap()).unwrap());
        let c = Ideal::parse(&ring, "(x^2*y, x*y^2)").unwrap();
        let q = c.quotient_element(&Polynomial::parse(&ring, "x*y").unwrap()).unwrap();
        assert!(q.equals(&Ideal::parse(&ring, "(x, y)").unwrap()).unwrap());
        let s = Ideal::parse(&ring, "(x^3*y, x^2*y^2)").unwrap().saturate(&Polynomial::parse(&ring, "x").unwrap()).unwrap();
        assert!(s.equals(&Ideal::parse(&ring, "(y)").unwrap()).unwrap());
    }

    #[test]
    fn module_annihilator() {
        let ring = Ring::new(2, &["x", "y", "z"]).unwrap();
        let w = module(&ring, 2, "[[y,0],[z,0],[0,x],[x,y+z]]");
        let ann = w.annihilator_of_quotient().unwrap();
        // x^2 e_0 = x(x, y+z) - (y+z)(0, x) and y(y+z) e_1 = y(x, y+z) - x(y, 0)
        let expect = Ideal::parse(&ring, "(x^2, x*y, x*z, y^2+y*z, y*z+z^2)").unwrap();
        assert!(ann.equals(&expect).unwrap());
        assert!(!w.is_free());
        assert!(Submodule::free(&ring, 2).is_free());
    }

    #[test]
    fn lift_reexpands() {
        let ring = Ring::new(2, &["x", "y"]).unwrap();
        let w = module(&ring, 2, "[[x,y],[y,0]]");
        let v = parse_nested(&ring, "[[x^2+y^2, x*y]]").unwrap().pop().unwrap();
        let c = w.lift_membership(&v).unwrap().unwrap();
        let re: Vec<Polynomial> =
            (0..2).map(|k| &(&c[0] * &w.gens()[0][k]) + &(&c[1] * &w.gens()[1][k])).collect();
        assert_eq!(re, v);
        let bad = parse_nested(&ring, "[[1, 0]]").unwrap().pop().unwrap();
        assert!(w.lift_membership(&bad).unwrap().is_none());
    }

    #[test]
    fn elimination() {
        let ring = Ring::new(5, &["t", "x", "y"]).unwrap();
        // t = x, y = t^2  ->  y - x^2
        let i = Ideal::parse(&ring, "(t - x, y - t^2)").unwrap();
        let e = i.eliminate(&[0]);
        assert!(e.equals(&Ideal::parse(&ring, "(y - x^2)").unwrap()).unwrap());
    }

    #[test]
    fn colon_of_module() {
        let ring = Ring::new(2, &["x", "y"]).unwrap();
        let w = module(&ring, 2, "[[x^2, 0],[0, x*y]]");
        let c = w.colon_element(&Polynomial::parse(&ring, "x").unwrap()).unwrap();
        assert!(c.equals(&module(&ring, 2, "[[x,0],[0,y]]")).unwrap());
    }
}
