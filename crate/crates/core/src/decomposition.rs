//! Minimal primes, primality, dimension and singular loci of ideals.
//!
//! Minimal primes are found by recursive splitting. Reducible Gröbner basis
//! elements split the ideal directly. Zero-dimensional ideals are reduced
//! with minimal polynomials of the variables and then split along the fixed
//! points of Frobenius on the quotient algebra. Positive-dimensional ideals
//! are localized at a maximal independent set `u`, saturated at the leading
//! coefficients of a block Gröbner basis, and tested with eliminants of
//! candidate primitive elements.

use std::collections::{HashMap, HashSet};

use crate::error::{AlgebraError, Result};
use crate::factor::factor;
use crate::field::PrimeField;
use crate::linalg::nullspace;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::{divides, grevlex_cmp, Exps, Ring, RingRef};
use crate::submodule::Ideal;
use crate::upoly::{self, UPoly};

const MAX_DEPTH: usize = 64;

fn leading_monomials(gb: &[Polynomial]) -> Vec<Exps> {
    gb.iter().map(|g| g.terms()[0].0.clone()).collect()
}

fn independent(set: &[usize], lms: &[Exps]) -> bool {
    lms.iter().all(|m| m.iter().enumerate().any(|(i, &e)| e > 0 && !set.contains(&i)))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Largest independent variable set modulo the leading monomials, choosing the
/// lexicographically first among those of maximal size.
fn max_independent_set(lms: &[Exps], n: usize) -> Vec<usize> {
    for k in (0..=n).rev() {
        if let Some(s) = combinations(n, k).into_iter().find(|s| independent(s, lms)) {
            return s;
        }
    }
    Vec::new()
}

/// Krull dimension of R/I; `None` for the unit ideal.
pub fn dimension(ideal: &Ideal) -> Option<usize> {
    if ideal.is_unit() {
        return None;
    }
    let lms = leading_monomials(&ideal.groebner_basis());
    Some(max_independent_set(&lms, ideal.ring().nvars()).len())
}

/// Standard monomials of a zero-dimensional ideal and coordinates in that basis.
struct Quotient {
    ideal: Ideal,
    basis: Vec<Exps>,
    index: HashMap<Exps, usize>,
}

impl Quotient {
    fn new(ideal: &Ideal) -> Self {
        let n = ideal.ring().nvars();
        let lms = leading_monomials(&ideal.groebner_basis());
        let mut basis: Vec<Exps> = vec![Exps::from_elem(0, n)];
        let mut index: HashMap<Exps, usize> = HashMap::new();
        index.insert(basis[0].clone(), 0);
        let mut k = 0;
        while k < basis.len() {
            for i in 0..n {
                let mut m = basis[k].clone();
                m[i] += 1;
                if !index.contains_key(&m) && !lms.iter().any(|l| divides(l, &m)) {
                    index.insert(m.clone(), basis.len());
                    basis.push(m);
                }
            }
            k += 1;
        }
        Quotient { ideal: ideal.clone(), basis, index }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self, f: &Polynomial) -> Vec<u32> {
        let r = self.ideal.normal_form(f).expect("same ring");
        let mut v = vec![0u32; self.dim()];
        for (m, c) in r.terms() {
            v[self.index[m]] = *c;
        }
        v
    }

    fn element(&self, v: &[u32]) -> Polynomial {
        let terms = self.basis.iter().zip(v).filter(|(_, &c)| c != 0).map(|(m, &c)| (m.clone(), c)).collect();
        Polynomial::from_terms(self.ideal.ring(), terms)
    }

    /// Minimal polynomial of `b` acting on the quotient.
    fn minimal_polynomial(&self, b: &Polynomial, field: &PrimeField) -> UPoly {
        let one = Polynomial::one(self.ideal.ring());
        let mut cols = vec![self.coords(&one)];
        let mut power = one;
        loop {
            power = self.ideal.normal_form(&(&power * b)).expect("same ring");
            cols.push(self.coords(&power));
            let k = cols.len();
            let rows: Vec<Vec<u32>> = (0..self.dim()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
            if let Some(v) = nullspace(&rows, k, field).into_iter().next() {
                return UPoly::new(v).monic(field);
            }
        }
    }
}

fn evaluate(g: &UPoly, b: &Polynomial) -> Polynomial {
    let ring = b.ring();
    let mut acc = Polynomial::zero(ring);
    for &c in g.0.iter().rev() {
        acc = &(&acc * b) + &Polynomial::constant(ring, i64::from(c));
    }
    acc
}

/// Copy of `ring` with one extra variable appended; returns it with the index.
fn with_extra_var(ring: &RingRef) -> Result<(RingRef, usize)> {
    let mut names: Vec<String> = ring.vars().to_vec();
    let mut k = 0;
    let name = loop {
        let cand = if k == 0 { "t".to_string() } else { format!("t{k}") };
        if !names.contains(&cand) {
            break cand;
        }
        k += 1;
    };
    names.push(name);
    let n = ring.nvars();
    Ok((Ring::new(u64::from(ring.p()), &names)?, n))
}

struct Decomposer {
    memo: HashMap<String, Vec<Ideal>>,
}

impl Decomposer {
    fn run(&mut self, ideal: &Ideal, depth: usize) -> Result<Vec<Ideal>> {
        if depth > MAX_DEPTH {
            return Err(AlgebraError::Capability("prime decomposition recursion is too deep".into()));
        }
        let ideal = ideal.reduced();
        let key = ideal.canonical_string();
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let out = self.split(&ideal, depth)?;
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    fn union(&mut self, parts: Vec<Ideal>, depth: usize) -> Result<Vec<Ideal>> {
        let mut out = Vec::new();
        for j in parts {
            out.extend(self.run(&j, depth + 1)?);
        }
        Ok(out)
    }

    fn split(&mut self, ideal: &Ideal, depth: usize) -> Result<Vec<Ideal>> {
        if ideal.is_unit() {
            return Ok(Vec::new());
        }
        if ideal.is_zero() {
            return Ok(vec![ideal.clone()]);
        }
        let gb = ideal.groebner_basis();
        for g in &gb {
            if g.is_constant() {
                continue;
            }
            let fz = match factor(g) {
                Ok(fz) => fz,
                Err(AlgebraError::Capability(_)) => continue,
                Err(e) => return Err(e),
            };
            if fz.distinct() >= 2 {
                let parts = fz.factors.iter().map(|(h, _)| ideal.with_gens(vec![h.clone()])).collect::<Result<Vec<_>>>()?;
                return self.union(parts, depth);
            }
            if fz.factors[0].1 >= 2 {
                let next = ideal.with_gens(vec![fz.factors[0].0.clone()])?;
                return self.union(vec![next], depth);
            }
        }
        let n = ideal.ring().nvars();
        let u = max_independent_set(&leading_monomials(&gb), n);
        if u.is_empty() {
            self.zero_dimensional(ideal, depth)
        } else {
            let v: Vec<usize> = (0..n).filter(|i| !u.contains(i)).collect();
            self.positive_dimensional(ideal, &u, &v, depth)
        }
    }

    fn zero_dimensional(&mut self, ideal: &Ideal, depth: usize) -> Result<Vec<Ideal>> {
        let ring = ideal.ring().clone();
        let field = *ring.field();
        let q = Quotient::new(ideal);
        for i in 0..ring.nvars() {
            let x = Polynomial::var(&ring, i);
            let mp = q.minimal_polynomial(&x, &field);
            let (_, fs) = upoly::factor(&mp, &field);
            if fs.len() >= 2 || fs[0].1 >= 2 {
                let parts = fs.iter().map(|(g, _)| ideal.with_gens(vec![evaluate(g, &x)])).collect::<Result<Vec<_>>>()?;
                return self.union(parts, depth);
            }
        }
        if q.dim() == 1 {
            return Ok(vec![ideal.clone()]);
        }
        // Frobenius-fixed subalgebra; its dimension counts the local factors.
        let d = q.dim();
        let p = u64::from(field.p());
        let images: Vec<Vec<u32>> = q
            .basis
            .iter()
            .map(|m| {
                let b = Polynomial::monomial(&ring, m, 1);
                q.coords(&b.pow(p))
            })
            .collect();
        let rows: Vec<Vec<u32>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { field.sub(images[j][i], 1) } else { images[j][i] }).collect())
            .collect();
        let kernel = nullspace(&rows, d, &field);
        if kernel.len() <= 1 {
            return Ok(vec![ideal.clone()]);
        }
        let b = kernel
            .iter()
            .map(|v| q.element(v))
            .find(|b| !b.is_constant())
            .expect("kernel of dimension > 1 has a non-constant element");
        let parts = (0..field.p())
            .map(|c| ideal.with_gens(vec![&b - &Polynomial::constant(&ring, i64::from(c))]))
            .collect::<Result<Vec<_>>>()?;
        self.union(parts, depth)
    }

    fn positive_dimensional(&mut self, ideal: &Ideal, u: &[usize], v: &[usize], depth: usize) -> Result<Vec<Ideal>> {
        let ring = ideal.ring().clone();
        let bgb = ideal.block_groebner(v);
        let mut hfactors: Vec<Polynomial> = Vec::new();
        let mut lead_v: Vec<Exps> = Vec::new();
        for g in &bgb {
            let vpart = |m: &Exps| -> Exps { v.iter().map(|&i| m[i]).collect() };
            // terms are stored in grevlex order, so the block-leading v-part is a maximum
            let lv = g.terms().iter().map(|(m, _)| vpart(m)).max_by(|a, b| grevlex_cmp(a, b)).expect("basis elements are nonzero");
            let lc_terms = g
                .terms()
                .iter()
                .filter(|(m, _)| vpart(m) == lv)
                .map(|(m, c)| {
                    let mut e = m.clone();
                    for &i in v {
                        e[i] = 0;
                    }
                    (e, *c)
                })
                .collect();
            let lc = Polynomial::from_terms(&ring, lc_terms);
            lead_v.push(lv);
            if !lc.is_constant() {
                match factor(&lc) {
                    Ok(fz) => {
                        for (h, _) in fz.factors {
                            if !hfactors.contains(&h) {
                                hfactors.push(h);
                            }
                        }
                    }
                    Err(AlgebraError::Capability(_)) => hfactors.push(lc.make_monic()),
                    Err(e) => return Err(e),
                }
            }
        }
        if !hfactors.is_empty() {
            let mut h = Polynomial::one(&ring);
            for f in &hfactors {
                h = &h * f;
            }
            let sat = ideal.saturate(&h)?;
            if !sat.equals(ideal)? {
                let mut parts = vec![sat];
                for f in &hfactors {
                    parts.push(ideal.with_gens(vec![f.clone()])?);
                }
                return self.union(parts, depth);
            }
        }
        let degree = count_standard(&lead_v);
        if degree == 1 {
            return Ok(vec![ideal.clone()]);
        }
        for a in candidates(&ring, u, v) {
            let f = eliminant(ideal, &a, v)?;
            let fz = match factor(&f.poly) {
                Ok(fz) => fz,
                Err(AlgebraError::Capability(_)) => continue,
                Err(e) => return Err(e),
            };
            let tf: Vec<(Polynomial, u32)> = fz.factors.into_iter().filter(|(g, _)| g.degree_in(f.t) > 0).collect();
            if tf.len() >= 2 || tf[0].1 >= 2 {
                let parts = tf.iter().map(|(g, _)| ideal.with_gens(vec![f.at(g, &a)])).collect::<Result<Vec<_>>>()?;
                return self.union(parts, depth);
            }
            if tf[0].0.degree_in(f.t) as usize == degree {
                return Ok(vec![ideal.clone()]);
            }
        }
        Err(AlgebraError::Capability(format!("no primitive element found for {ideal}")))
    }
}

/// Number of monomials in the `v` variables outside the monomial ideal.
fn count_standard(lead_v: &[Exps]) -> usize {
    let k = lead_v.first().map_or(0, |m| m.len());
    let mut seen: HashSet<Exps> = HashSet::new();
    let mut queue = vec![Exps::from_elem(0, k)];
    seen.insert(queue[0].clone());
    let mut i = 0;
    while i < queue.len() {
        for j in 0..k {
            let mut m = queue[i].clone();
            m[j] += 1;
            if !seen.contains(&m) && !lead_v.iter().any(|l| divides(l, &m)) {
                seen.insert(m.clone());
                queue.push(m);
            }
        }
        i += 1;
    }
    queue.len()
}

fn candidates(ring: &RingRef, u: &[usize], v: &[usize]) -> Vec<Polynomial> {
    let x = |i: usize| Polynomial::var(ring, i);
    let c = |k: u32| Polynomial::constant(ring, i64::from(k));
    let p = ring.p();
    let mut out: Vec<Polynomial> = v.iter().map(|&i| x(i)).collect();
    for (a, &i) in v.iter().enumerate() {
        for &j in &v[a + 1..] {
            for k in 1..p.min(8) {
                out.push(&x(i) + &(&c(k) * &x(j)));
            }
            for &l in u {
                out.push(&x(i) + &(&x(l) * &x(j)));
                out.push(&x(j) + &(&x(l) * &x(i)));
            }
            out.push(&x(i) + &x(j).pow(2));
            out.push(&x(j) + &x(i).pow(2));
        }
    }
    if v.len() >= 3 {
        let sum = v.iter().fold(Polynomial::zero(ring), |acc, &i| &acc + &x(i));
        out.push(sum);
        for &l in u {
            let mut acc = Polynomial::zero(ring);
            for (k, &i) in v.iter().enumerate() {
                acc = &acc + &(&x(l).pow(k as u64) * &x(i));
            }
            out.push(acc);
        }
    }
    let mut seen = HashSet::new();
    out.retain(|a| seen.insert(a.clone()));
    out
}

/// Generator `F(u, t)` of `(I + (t - a)) ∩ F_p[u, t]`.
struct Eliminant {
    poly: Polynomial,
    t: usize,
    ext: RingRef,
    ring: RingRef,
}

impl Eliminant {
    /// `g(u, a)` back in the original ring.
    fn at(&self, g: &Polynomial, a: &Polynomial) -> Polynomial {
        let n = self.ring.nvars();
        let id: Vec<usize> = (0..n).collect();
        let a_ext = a.remap(&self.ext, &id);
        let back: Vec<usize> = (0..=n).map(|i| if i == n { 0 } else { i }).collect();
        g.substitute(self.t, &a_ext).remap(&self.ring, &back)
    }
}

fn eliminant(ideal: &Ideal, a: &Polynomial, v: &[usize]) -> Result<Eliminant> {
    let ring = ideal.ring().clone();
    let (ext, t) = with_extra_var(&ring)?;
    let id: Vec<usize> = (0..ring.nvars()).collect();
    let mut gens: Vec<Polynomial> = ideal.gens().iter().map(|g| g.remap(&ext, &id)).collect();
    gens.push(&Polynomial::var(&ext, t) - &a.remap(&ext, &id));
    let elim = Ideal::new(&ext, gens)?.eliminate(v);
    let poly = elim
        .gens()
        .into_iter()
        .filter(|g| g.degree_in(t) > 0)
        .min_by_key(|g| (g.degree_in(t), g.num_terms()))
        .ok_or_else(|| AlgebraError::Precondition("eliminant is trivial".into()))?;
    Ok(Eliminant { poly, t, ext, ring })
}

pub(crate) fn sort_ideals(v: &mut [Ideal]) {
    v.sort_by_cached_key(|i| {
        let gb = i.groebner_basis();
        (gb.len(), i.canonical_string())
    });
}

/// Minimal primes of `ideal`, each presented by its reduced Gröbner basis.
/// The unit ideal has none; `(0)` is its own only minimal prime.
pub fn minimal_primes(ideal: &Ideal) -> Result<Vec<Ideal>> {
    let mut d = Decomposer { memo: HashMap::new() };
    let found = d.run(ideal, 0)?;
    let mut uniq: Vec<Ideal> = Vec::new();
    for p in found {
        let mut dup = false;
        for q in &uniq {
            if q.equals(&p)? {
                dup = true;
                break;
            }
        }
        if !dup {
            uniq.push(p);
        }
    }
    let mut out = Vec::new();
    for (k, p) in uniq.iter().enumerate() {
        let mut minimal = true;
        for (j, q) in uniq.iter().enumerate() {
            if j != k && p.contains_ideal(q)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(p.reduced());
        }
    }
    sort_ideals(&mut out);
    Ok(out)
}

pub fn is_prime(ideal: &Ideal) -> Result<bool> {
    if ideal.is_unit() {
        return Ok(false);
    }
    let mp = minimal_primes(ideal)?;
    Ok(mp.len() == 1 && mp[0].equals(ideal)?)
}

/// `P + (c x c minors of the Jacobian of P)` with `c = n - dim P`. The
/// singular locus of `R/(0)` is empty, so `(0)` gives the unit ideal.
pub fn singular_locus_ideal(prime: &Ideal) -> Result<Ideal> {
    let ring = prime.ring().clone();
    let Some(dim) = dimension(prime) else {
        return Err(AlgebraError::UnitIdeal("singular locus"));
    };
    let n = ring.nvars();
    let c = n - dim;
    if c == 0 {
        return Ok(Ideal::unit(&ring));
    }
    let gens = prime.groebner_basis();
    let jac: Vec<Vec<Polynomial>> = gens.iter().map(|g| (0..n).map(|i| g.derivative(i)).collect()).collect();
    let jac = PolyMatrix::from_rows(&ring, jac)?;
    let mut minors = Vec::new();
    for rows in combinations(gens.len(), c) {
        for cols in combinations(n, c) {
            let m = jac.submatrix(&rows, &cols).determinant()?;
            if !m.is_zero() && !minors.contains(&m) {
                minors.push(m);
            }
        }
    }
    prime.with_gens(minors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(ring: &RingRef, s: &str) -> Ideal {
        Ideal::parse(ring, s).unwrap()
    }

    fn strings(v: &[Ideal]) -> Vec<String> {
        v.iter().map(|i| i.canonical_string()).collect()
    }

    #[test]
    fn dimensions() {
        let ring = Ring::new(2, &["x", "y", "z"]).unwrap();
        assert_eq!(dimension(&ideal(&ring, "(0)")), Some(3));
        assert_eq!(dimension(&ideal(&ring, "(x*y)")), Some(2));
        assert_eq!(dimension(&ideal(&ring, "(x, y)")), Some(1));
        assert_eq!(dimension(&ideal(&ring, "(x, y, z)")), Some(0));
        assert_eq!(dimension(&ideal(&ring, "(x, x+1)")), None);
    }

    #[test]
    fn monomial_ideal_components() {
        let ring = Ring::new(2, &["x", "y", "z"]).unwrap();
        let mp = minimal_primes(&ideal(&ring, "(x*y, x*z)")).unwrap();
        assert_eq!(strings(&mp), vec!["(x)", "(y, z)"]);
        let mp = minimal_primes(&ideal(&ring, "(x^2, x*y^3)")).unwrap();
        assert_eq!(strings(&mp), vec!["(x)"]);
    }

    #[test]
    fn zero_dimensional_splitting() {
        let ring = Ring::new(2, &["x", "y"]).unwrap();
        // x^2+x+1 irreducible over F_2 but y^2+y+1 = (y - x)(y - x^2) modulo it
        let i = ideal(&ring, "(x^2+x+1, y^2+y+1)");
        let mp = minimal_primes(&i).unwrap();
        assert_eq!(mp.len(), 2);
        for p in &mp {
            assert!(p.contains_ideal(&i).unwrap());
            assert!(is_prime(p).unwrap());
        }
        assert!(is_prime(&ideal(&ring, "(x^2+x+1, y)")).unwrap());
        assert!(!is_prime(&i).unwrap());
    }

    #[test]
    fn positive_dimensional_primes() {
        let ring = Ring::new(3, &["x", "y", "z"]).unwrap();
        assert!(is_prime(&ideal(&ring, "(x^2 - y*z)")).unwrap());
        // twisted cubic
        let tc = ideal(&ring, "(y^2 - x*z, x*y - z, x^2 - y)");
        assert!(is_prime(&tc).unwrap());
        // x^2 - y^2 z^2 = (x - yz)(x + yz)
        assert_eq!(minimal_primes(&ideal(&ring, "(x^2 - y^2*z^2)")).unwrap().len(), 2);
        // two lines meeting at the origin
        let mp = minimal_primes(&ideal(&ring, "(x*y, z)")).unwrap();
        assert_eq!(strings(&mp), vec!["(x, z)", "(y, z)"]);
        // grevlex leading term x*y^2 is not the leading term in y
        let r2 = Ring::new(2, &["x", "y"]).unwrap();
        assert!(is_prime(&ideal(&r2, "(x*y^2+y^3+x^2+y)")).unwrap());
    }

    #[test]
    fn singular_loci() {
        let ring = Ring::new(2, &["x", "y", "z"]).unwrap();
        assert!(singular_locus_ideal(&ideal(&ring, "(0)")).unwrap().is_unit());
        assert!(singular_locus_ideal(&ideal(&ring, "(x, y)")).unwrap().is_unit());
        // cusp y^2 = x^3 in char 2: singular at x = y = 0
        let s = singular_locus_ideal(&ideal(&ring, "(y^2 + x^3)")).unwrap();
        assert_eq!(minimal_primes(&s).unwrap().len(), 1);
        assert!(s.contains(&Polynomial::parse(&ring, "x^2").unwrap()).unwrap());
    }
}
