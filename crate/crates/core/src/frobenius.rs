//! Frobenius-linear maps on E^α, represented dually by a square matrix `U`:
//! a submodule `W ⊆ R^α` is compatible when `U·W ⊆ W^{[p^e]}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::{Exps, RingRef};
use crate::submodule::{Ideal, Submodule};

/// Upper bound on the length of the kernel chain in [`nilpotent_kernel`].
const MAX_KERNEL_STEPS: usize = 20;

#[derive(Clone, PartialEq, Eq)]
pub struct FrobMatrix {
    u: PolyMatrix,
    e: u32,
}

impl fmt::Debug for FrobMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrobMatrix(e={}, U={})", self.e, self.u)
    }
}

impl FrobMatrix {
    pub fn new(u: PolyMatrix, e: u32) -> Result<Self> {
        if !u.is_square() {
            return Err(AlgebraError::Dimension(format!("U must be square, got {}x{}", u.rows(), u.cols())));
        }
        if e == 0 {
            return Err(AlgebraError::Precondition("Frobenius exponent must be positive".into()));
        }
        Ok(FrobMatrix { u, e })
    }

    pub fn u(&self) -> &PolyMatrix {
        &self.u
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn alpha(&self) -> usize {
        self.u.rows()
    }

    pub fn ring(&self) -> &RingRef {
        self.u.ring()
    }

    fn check_rank(&self, w: &Submodule) -> Result<()> {
        if w.rank() != self.alpha() {
            return Err(AlgebraError::RankMismatch { expected: self.alpha(), got: w.rank() });
        }
        Ok(())
    }

    /// `U·W`.
    pub fn image(&self, w: &Submodule) -> Result<Submodule> {
        self.check_rank(w)?;
        w.map_by(&self.u)
    }
}

/// `W^{[p^e]}`, generated by the bracket powers of the generators.
pub fn bracket_power_module(w: &Submodule, e: u32) -> Submodule {
    if e == 0 {
        return w.clone();
    }
    let gens = w.gens().iter().map(|g| g.iter().map(|x| x.bracket_power(e)).collect()).collect();
    Submodule::new(w.ring(), w.rank(), gens).expect("shape is preserved")
}

/// The components `u_γ` in `v = Σ_γ u_γ^{[p^e]} x^γ`, keyed by `γ`.
fn root_components(ring: &RingRef, v: &[Polynomial], e: u32) -> Vec<Vec<Polynomial>> {
    let q = ring.p().pow(e);
    let rank = v.len();
    let mut parts: BTreeMap<Exps, Vec<Vec<(Exps, u32)>>> = BTreeMap::new();
    for (j, f) in v.iter().enumerate() {
        for (m, c) in f.terms() {
            let gamma: Exps = m.iter().map(|&x| x % q).collect();
            let delta: Exps = m.iter().map(|&x| x / q).collect();
            parts.entry(gamma).or_insert_with(|| vec![Vec::new(); rank])[j].push((delta, *c));
        }
    }
    parts
        .into_values()
        .map(|comps| comps.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect())
        .collect()
}

/// `I_e(R v)`.
pub fn ie_vector(ring: &RingRef, v: &[Polynomial], e: u32) -> Result<Submodule> {
    if e == 0 {
        return Err(AlgebraError::Precondition("I_e needs e >= 1".into()));
    }
    Submodule::new(ring, v.len(), root_components(ring, v, e))
}

/// `I_e(W)`: the smallest `L` with `W ⊆ L^{[p^e]}`.
pub fn ie_module(w: &Submodule, e: u32) -> Result<Submodule> {
    if e == 0 {
        return Err(AlgebraError::Precondition("I_e needs e >= 1".into()));
    }
    let ring = w.ring();
    let gens = w.gens().iter().flat_map(|g| root_components(ring, g, e)).collect();
    Submodule::new(ring, w.rank(), gens)
}

/// `V^{★U}`: the smallest `W ⊇ V` with `U·W ⊆ W^{[p^e]}`.
pub fn star_closure(v: &Submodule, f: &FrobMatrix) -> Result<Submodule> {
    f.check_rank(v)?;
    let mut w = v.reduced();
    loop {
        let step = ie_module(&f.image(&w)?, f.e)?;
        if w.contains_module(&step)? {
            return Ok(w);
        }
        w = w.sum(&step)?.reduced();
    }
}

/// The submodule `K` with `E(K)` the elements on which the action is
/// nilpotent: the stable value of `K_0 = R^α`, `K_j = I_e(U·K_{j-1})`.
pub fn nilpotent_kernel(f: &FrobMatrix) -> Result<Submodule> {
    let mut k = Submodule::free(f.ring(), f.alpha());
    for _ in 0..MAX_KERNEL_STEPS {
        let next = ie_module(&f.image(&k)?, f.e)?.reduced();
        if next.equals(&k)? {
            return Ok(k);
        }
        k = next;
    }
    Err(AlgebraError::Capability(format!("nilpotent kernel chain did not stabilize within {MAX_KERNEL_STEPS} steps")))
}

pub fn is_compatible(w: &Submodule, f: &FrobMatrix) -> Result<bool> {
    f.check_rank(w)?;
    bracket_power_module(w, f.e).contains_module(&f.image(w)?)
}

/// `Q` is special when it is the annihilator of `R^α / (Q·R^α)^{★U}`.
pub fn is_special_prime(q: &Ideal, f: &FrobMatrix) -> Result<bool> {
    let w = star_closure(&Submodule::extended(q, f.alpha()), f)?;
    w.annihilator_of_quotient()?.equals(q)
}

/// Whether the action on `E(W)` is not nilpotent, i.e. the nilpotent kernel is not inside `W`.
pub fn restriction_nonnilpotent(w: &Submodule, f: &FrobMatrix) -> Result<bool> {
    if !is_compatible(w, f)? {
        return Err(AlgebraError::Precondition("submodule is not compatible with U".into()));
    }
    Ok(!w.contains_module(&nilpotent_kernel(f)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_nested;
    use crate::ring::Ring;

    fn module(ring: &RingRef, rank: usize, s: &str) -> Submodule {
        Submodule::new(ring, rank, parse_nested(ring, s).unwrap()).unwrap()
    }

    fn frob(ring: &RingRef, s: &str) -> FrobMatrix {
        FrobMatrix::new(PolyMatrix::from_rows(ring, parse_nested(ring, s).unwrap()).unwrap(), 1).unwrap()
    }

    #[test]
    fn roots_of_vectors() {
        let ring = Ring::new(2, &["x", "y"]).unwrap();
        let x3 = parse_nested(&ring, "[[x^3]]").unwrap().pop().unwrap();
        assert!(ie_vector(&ring, &x3, 1).unwrap().equals(&module(&ring, 1, "[[x]]")).unwrap());
        let v = parse_nested(&ring, "[[x^3, y]]").unwrap().pop().unwrap();
        assert!(ie_vector(&ring, &v, 1).unwrap().equals(&module(&ring, 2, "[[x,0],[0,1]]")).unwrap());
        let w = module(&ring, 1, "[[x^2+y^2]]");
        assert!(ie_module(&w, 1).unwrap().equals(&module(&ring, 1, "[[x+y]]")).unwrap());
    }

    #[test]
    fn closures_and_kernels() {
        let ring = Ring::new(2, &["x", "y"]).unwrap();
        let id = frob(&ring, "[[1]]");
        let zero = Submodule::zero(&ring, 1);
        assert!(star_closure(&zero, &id).unwrap().is_zero());
        assert!(nilpotent_kernel(&id).unwrap().is_free());
        assert!(nilpotent_kernel(&frob(&ring, "[[0]]")).unwrap().is_zero());
        // u = x: I_1(x R) = R, so nothing is nilpotent
        assert!(nilpotent_kernel(&frob(&ring, "[[x]]")).unwrap().is_free());
        // u = x^2 kills only the socle of E
        let k = nilpotent_kernel(&frob(&ring, "[[x^2]]")).unwrap();
        assert!(k.equals(&module(&ring, 1, "[[x]]")).unwrap());
    }

    #[test]
    fn compatibility() {
        let ring = Ring::new(2, &["x", "y"]).unwrap();
        let f = frob(&ring, "[[1,0],[0,1]]");
        assert!(is_compatible(&Submodule::free(&ring, 2), &f).unwrap());
        assert!(!is_compatible(&module(&ring, 2, "[[x^2,0],[0,1]]"), &f).unwrap());
        assert!(is_special_prime(&Ideal::zero(&ring), &f).unwrap());
        assert!(!is_special_prime(&Ideal::parse(&ring, "(x)").unwrap(), &f).unwrap());
    }
}
