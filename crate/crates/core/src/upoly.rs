//! Dense univariate polynomials over F_p and Berlekamp factorization.

use crate::field::PrimeField;
use crate::linalg::{nullspace, transpose};

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct UPoly(pub Vec<u32>);

impl UPoly {
    pub fn new(mut c: Vec<u32>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn one() -> Self {
        UPoly(vec![1])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [1]
    }

    /// Degree; the zero polynomial reports 0.
    pub fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u32 {
        *self.0.last().unwrap_or(&0)
    }

    pub fn monic(&self, f: &PrimeField) -> Self {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        let inv = f.inv(self.lc());
        UPoly(self.0.iter().map(|&c| f.mul(c, inv)).collect())
    }

    pub fn sub(&self, o: &Self, f: &PrimeField) -> Self {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| f.sub(*self.0.get(i).unwrap_or(&0), *o.0.get(i).unwrap_or(&0)))
            .collect();
        UPoly::new(c)
    }

    pub fn mul(&self, o: &Self, f: &PrimeField) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly(Vec::new());
        }
        let p = u64::from(f.p());
        let mut acc = vec![0u64; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                acc[i + j] = (acc[i + j] + u64::from(a) * u64::from(b)) % p;
            }
        }
        UPoly::new(acc.into_iter().map(|x| x as u32).collect())
    }

    pub fn div_rem(&self, d: &Self, f: &PrimeField) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.0.len() < d.0.len() {
            return (UPoly(Vec::new()), self.clone());
        }
        let inv = f.inv(d.lc());
        let mut r = self.0.clone();
        let dn = d.0.len();
        let mut q = vec![0u32; r.len() - dn + 1];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dn - 1], inv);
            q[k] = c;
            if c != 0 {
                for (i, &di) in d.0.iter().enumerate() {
                    r[k + i] = f.sub(r[k + i], f.mul(c, di));
                }
            }
        }
        r.truncate(dn - 1);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &Self, f: &PrimeField) -> Self {
        self.div_rem(d, f).1
    }

    pub fn gcd(&self, o: &Self, f: &PrimeField) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &PrimeField) -> Self {
        let c = self.0.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, (i as u64 % u64::from(f.p())) as u32)).collect();
        UPoly::new(c)
    }

    /// `g` with `g^p = self`, assuming only exponents divisible by p occur.
    fn pth_root(&self, f: &PrimeField) -> Self {
        let p = f.p() as usize;
        UPoly::new(self.0.iter().step_by(p).copied().collect())
    }

    fn powmod(&self, mut e: u64, m: &Self, f: &PrimeField) -> Self {
        let mut base = self.rem(m, f);
        let mut acc = UPoly::one().rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f);
            }
            base = base.mul(&base, f).rem(m, f);
            e >>= 1;
        }
        acc
    }
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
/// `self = ∏ g^m`, each `g` square-free.
fn squarefree(a: &UPoly, f: &PrimeField) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    if a.deg() == 0 {
        return out;
    }
    let mut c = a.gcd(&a.derivative(f), f);
    let mut w = a.div_rem(&c, f).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, f);
        let fac = w.div_rem(&y, f).0;
        if fac.deg() > 0 {
            out.push((fac.monic(f), i));
        }
        w = y;
        c = c.div_rem(&w, f).0;
        i += 1;
    }
    if c.deg() > 0 {
        let root = c.pth_root(f);
        for (g, m) in squarefree(&root, f) {
            out.push((g, m * f.p()));
        }
    }
    out
}

/// Berlekamp splitting of a monic square-free polynomial into monic irreducibles.
fn berlekamp(a: &UPoly, f: &PrimeField) -> Vec<UPoly> {
    let n = a.deg();
    if n <= 1 {
        return vec![a.clone()];
    }
    let x = UPoly(vec![0, 1]);
    let xp = x.powmod(u64::from(f.p()), a, f);
    let mut q = vec![vec![0u32; n]; n];
    let mut cur = UPoly::one();
    for row in q.iter_mut() {
        for (k, &c) in cur.0.iter().enumerate() {
            row[k] = c;
        }
        cur = cur.mul(&xp, f).rem(a, f);
    }
    for (i, row) in q.iter_mut().enumerate() {
        row[i] = f.sub(row[i], 1);
    }
    let kernel = nullspace(&transpose(&q, n), n, f);
    let r = kernel.len();
    let mut factors = vec![a.clone()];
    for v in kernel {
        if factors.len() == r {
            break;
        }
        let v = UPoly::new(v);
        if v.deg() == 0 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors {
            if g.deg() <= 1 {
                next.push(g);
                continue;
            }
            let mut rest = g;
            for c in 0..f.p() {
                if rest.deg() <= 1 {
                    break;
                }
                let shifted = v.sub(&UPoly(vec![c]), f);
                let h = rest.gcd(&shifted, f);
                if h.deg() > 0 && h.deg() < rest.deg() {
                    rest = rest.div_rem(&h, f).0.monic(f);
                    next.push(h);
                }
            }
            next.push(rest);
        }
        factors = next;
    }
    factors
}

/// Complete factorization: leading coefficient and monic irreducible factors
/// with multiplicities, sorted.
pub(crate) fn factor(a: &UPoly, f: &PrimeField) -> (u32, Vec<(UPoly, u32)>) {
    if a.is_zero() {
        return (0, Vec::new());
    }
    let lc = a.lc();
    let mut out: Vec<(UPoly, u32)> = Vec::new();
    for (g, m) in squarefree(&a.monic(f), f) {
        for h in berlekamp(&g, f) {
            match out.iter_mut().find(|(k, _)| *k == h) {
                Some(e) => e.1 += m,
                None => out.push((h, m)),
            }
        }
    }
    out.sort();
    (lc, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(fs: &[(UPoly, u32)], f: &PrimeField) -> UPoly {
        let mut acc = UPoly::one();
        for (g, m) in fs {
            for _ in 0..*m {
                acc = acc.mul(g, f);
            }
        }
        acc
    }

    #[test]
    fn factors_recombine() {
        let f = PrimeField::new(2).unwrap();
        // x^4 + x = x (x+1) (x^2+x+1)
        let a = UPoly::new(vec![0, 1, 0, 0, 1]);
        let (lc, fs) = factor(&a, &f);
        assert_eq!(lc, 1);
        assert_eq!(fs.len(), 3);
        assert_eq!(expand(&fs, &f), a);
    }

    #[test]
    fn repeated_and_inseparable_parts() {
        let f = PrimeField::new(3).unwrap();
        // (x+1)^3 (x^2+1)^2 = (x^3+1)(x^4+2x^2+1)
        let a = UPoly::new(vec![1, 0, 1]).mul(&UPoly::new(vec![1, 0, 1]), &f).mul(&UPoly::new(vec![1, 0, 0, 1]), &f);
        let (_, fs) = factor(&a, &f);
        assert_eq!(fs, vec![(UPoly::new(vec![1, 0, 1]), 2), (UPoly::new(vec![1, 1]), 3)]);
    }

    #[test]
    fn irreducible_stays_whole() {
        let f = PrimeField::new(5).unwrap();
        // x^2 + 2 is irreducible mod 5 (2 is not a square)
        let a = UPoly::new(vec![2, 0, 1]);
        assert_eq!(factor(&a, &f).1, vec![(a, 1)]);
    }
}
