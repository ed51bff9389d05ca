//! Multivariate factorization over F_p by Kronecker substitution, and gcds.

use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::Exps;
use crate::submodule::Ideal;
use crate::upoly::{self, UPoly};

/// Upper bound on recombination attempts before giving up.
const MAX_RECOMBINATIONS: u64 = 1 << 18;

/// Irreducible factorization `f = c · ∏ g_i^{m_i}` with monic `g_i`, sorted by
/// ascending degree and then textually.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn distinct(&self) -> usize {
        self.factors.len()
    }
}

fn push_factor(out: &mut Vec<(Polynomial, u32)>, g: Polynomial, m: u32) {
    let g = g.make_monic();
    match out.iter_mut().find(|(h, _)| *h == g) {
        Some(e) => e.1 += m,
        None => out.push((g, m)),
    }
}

pub fn factor(f: &Polynomial) -> Result<Factorization> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroInput("factor"));
    }
    let ring = f.ring().clone();
    let n = ring.nvars();
    let unit = f.leading_coeff();
    let mut out = Vec::new();
    // Monomial content.
    let mut minexp: Exps = f.terms()[0].0.clone();
    for (m, _) in f.terms() {
        for i in 0..n {
            minexp[i] = minexp[i].min(m[i]);
        }
    }
    for (i, &e) in minexp.iter().enumerate() {
        if e > 0 {
            out.push((Polynomial::var(&ring, i), e));
        }
    }
    let mut rest = f.make_monic();
    if minexp.iter().any(|&e| e > 0) {
        rest = rest.exact_div(&Polynomial::monomial(&ring, &minexp, 1)).expect("monomial content divides");
    }
    if !rest.is_constant() {
        factor_kronecker(&rest, &mut out)?;
    }
    out.sort_by(|a, b| {
        a.0.total_degree().cmp(&b.0.total_degree()).then_with(|| a.0.to_string().cmp(&b.0.to_string()))
    });
    Ok(Factorization { unit, factors: out })
}

fn factor_kronecker(f: &Polynomial, out: &mut Vec<(Polynomial, u32)>) -> Result<()> {
    let ring = f.ring().clone();
    let field = *ring.field();
    let n = ring.nvars();
    let radix: Vec<u64> = (0..n).map(|i| u64::from(f.degree_in(i)) + 1).collect();
    let mut weights = vec![1u64; n];
    for i in 1..n {
        weights[i] = weights[i - 1].checked_mul(radix[i - 1]).ok_or_else(too_big)?;
    }
    let top = weights[n - 1].checked_mul(radix[n - 1]).ok_or_else(too_big)?;
    if top > 1500 {
        return Err(too_big());
    }
    let to_uni = |g: &Polynomial| -> UPoly {
        let mut c = vec![0u32; top as usize];
        for (m, k) in g.terms() {
            let idx: u64 = m.iter().zip(&weights).map(|(&e, &w)| u64::from(e) * w).sum();
            c[idx as usize] = field.add(c[idx as usize], *k);
        }
        UPoly::new(c)
    };
    let from_uni = |u: &UPoly| -> Polynomial {
        let terms = u
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(idx, &c)| {
                let mut idx = idx as u64;
                let mut e = Exps::from_elem(0, n);
                for i in 0..n {
                    e[i] = (idx % radix[i]) as u32;
                    idx /= radix[i];
                }
                (e, c)
            })
            .collect();
        Polynomial::from_terms(&ring, terms)
    };
    let (_, ufac) = upoly::factor(&to_uni(f), &field);
    let mut pool: Vec<UPoly> = Vec::new();
    for (g, m) in ufac {
        for _ in 0..m {
            pool.push(g.clone());
        }
    }
    let mut rest = f.clone();
    let mut attempts = 0u64;
    let mut size = 1;
    while !rest.is_constant() {
        if 2 * size > pool.len() {
            push_factor(out, rest.clone(), 1);
            break;
        }
        let mut found = None;
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            attempts += 1;
            if attempts > MAX_RECOMBINATIONS {
                return Err(AlgebraError::Capability(format!("factor recombination for {f} exceeds the search limit")));
            }
            let mut prod = UPoly::one();
            for &i in &idx {
                prod = prod.mul(&pool[i], &field);
            }
            let cand = from_uni(&prod);
            if !cand.is_constant() && fits(&cand, &rest) {
                if let Some(q) = rest.exact_div(&cand) {
                    found = Some((idx.clone(), cand, q));
                    break;
                }
            }
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
        match found {
            Some((idx, cand, q)) => {
                push_factor(out, cand, 1);
                rest = q.make_monic();
                for &i in idx.iter().rev() {
                    pool.remove(i);
                }
            }
            None => size += 1,
        }
    }
    Ok(())
}

fn fits(cand: &Polynomial, f: &Polynomial) -> bool {
    let n = f.ring().nvars();
    (0..n).all(|i| cand.degree_in(i) <= f.degree_in(i)) && cand.total_degree() <= f.total_degree()
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn too_big() -> AlgebraError {
    AlgebraError::Capability("polynomial degree too large for factorization".into())
}

/// Monic greatest common divisor, via the generator of `(f) ∩ (g)`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Ok(g.make_monic());
    }
    if g.is_zero() {
        return Ok(f.make_monic());
    }
    let ring = f.ring();
    let meet = Ideal::new(ring, vec![f.clone()])?.intersect(&Ideal::new(ring, vec![g.clone()])?)?;
    let lcm = meet.groebner_basis().pop().expect("principal intersection is nonzero");
    Ok((f * g).exact_div(&lcm).expect("fg / lcm is exact").make_monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn expand(fz: &Factorization, ring: &crate::ring::RingRef) -> Polynomial {
        let mut acc = Polynomial::constant(ring, i64::from(fz.unit));
        for (g, m) in &fz.factors {
            acc = &acc * &g.pow(u64::from(*m));
        }
        acc
    }

    #[test]
    fn bivariate_product() {
        let ring = Ring::new(2, &["x", "y", "z"]).unwrap();
        let f = Polynomial::parse(&ring, "x^3*(x^3+y^3+z^3) + x^2*y^2*z^5*(y^2+z^2)").unwrap();
        let fz = factor(&f).unwrap();
        assert_eq!(expand(&fz, &ring), f);
        assert_eq!(fz.factors[0], (Polynomial::parse(&ring, "x").unwrap(), 2));
    }

    #[test]
    fn splits_over_prime_field() {
        let ring = Ring::new(3, &["x", "y"]).unwrap();
        // x^2 - y^2 = (x-y)(x+y)
        let f = Polynomial::parse(&ring, "x^2 - y^2").unwrap();
        let fz = factor(&f).unwrap();
        assert_eq!(fz.distinct(), 2);
        assert_eq!(expand(&fz, &ring), f);
        // x^2 + y^2 is irreducible mod 3
        assert_eq!(factor(&Polynomial::parse(&ring, "x^2+y^2").unwrap()).unwrap().distinct(), 1);
        // (x + y)^3 = x^3 + y^3
        let c = factor(&Polynomial::parse(&ring, "x^3+y^3").unwrap()).unwrap();
        assert_eq!(c.factors, vec![(Polynomial::parse(&ring, "x+y").unwrap(), 3)]);
    }

    #[test]
    fn gcd_of_products() {
        let ring = Ring::new(5, &["x", "y"]).unwrap();
        let a = Polynomial::parse(&ring, "(x+y)*(x*y+1)").unwrap();
        let b = Polynomial::parse(&ring, "(x+y)^2*(x-1)").unwrap();
        assert_eq!(gcd(&a, &b).unwrap(), Polynomial::parse(&ring, "x+y").unwrap());
    }
}
