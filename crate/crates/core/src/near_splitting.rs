//! Frobenius near-splittings `φ = Φ ∘ F_*U` of `R^α` and their compatible submodules.
//!
//! Evaluating `φ` on `F_*V` gives `I_1(U·V)`, so the projection `Φ` and any
//! choice of basis for `F_*R` never need to be built.

use std::fmt;

use crate::error::Result;
use crate::frobenius::{ie_module, FrobMatrix};
use crate::matrix::PolyMatrix;
use crate::special::{find_special_primes, SpecialPrimeReport};
use crate::submodule::Submodule;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearSplitting {
    frob: FrobMatrix,
}

impl NearSplitting {
    pub fn new(u: PolyMatrix) -> Result<Self> {
        Ok(NearSplitting { frob: FrobMatrix::new(u, 1)? })
    }

    pub fn matrix(&self) -> &PolyMatrix {
        self.frob.u()
    }

    pub fn alpha(&self) -> usize {
        self.frob.alpha()
    }
}

/// `φ(F_*V) = I_1(U·V)`.
pub fn apply_near_splitting(s: &NearSplitting, v: &Submodule) -> Result<Submodule> {
    ie_module(&s.frob.image(v)?, 1)
}

/// `φ(F_*V) ⊆ V`.
pub fn is_phi_compatible(s: &NearSplitting, v: &Submodule) -> Result<bool> {
    v.contains_module(&apply_near_splitting(s, v)?)
}

/// A prime `P` with the largest compatible `V` for which `R^α/V` has annihilator `P`.
#[derive(Debug, Clone)]
pub struct CompatibleAnnihilator {
    pub prime: crate::submodule::Ideal,
    pub module: Submodule,
}

#[derive(Debug, Clone)]
pub struct NearSplittingReport {
    pub entries: Vec<CompatibleAnnihilator>,
    pub primes: SpecialPrimeReport,
}

impl fmt::Display for NearSplittingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            writeln!(f, "P{i} = {}", e.prime.canonical_string())?;
            writeln!(f, "  V{} = {}", i + 1, e.module.canonical_string())?;
        }
        Ok(())
    }
}

/// Prime annihilators of `R^α/V` over compatible `V`, found by the
/// special-prime search on the same matrix.
pub fn compatible_prime_annihilators(s: &NearSplitting) -> Result<NearSplittingReport> {
    let primes = find_special_primes(&s.frob)?;
    let entries = primes
        .primes
        .iter()
        .map(|c| CompatibleAnnihilator { prime: c.prime.clone(), module: c.closure.clone() })
        .collect();
    Ok(NearSplittingReport { entries, primes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_nested;
    use crate::ring::{Ring, RingRef};

    fn module(r: &RingRef, rank: usize, s: &str) -> Submodule {
        Submodule::new(r, rank, parse_nested(r, s).unwrap()).unwrap()
    }

    #[test]
    fn evaluation_and_compatibility() {
        let r = Ring::new(2, &["x", "y"]).unwrap();
        let id = NearSplitting::new(PolyMatrix::identity(&r, 2)).unwrap();
        assert!(apply_near_splitting(&id, &Submodule::zero(&r, 2)).unwrap().is_zero());
        let v = module(&r, 2, "[[x^2,0]]");
        assert!(apply_near_splitting(&id, &v).unwrap().equals(&module(&r, 2, "[[x,0]]")).unwrap());
        assert!(is_phi_compatible(&id, &Submodule::free(&r, 2)).unwrap());
        assert!(!is_phi_compatible(&id, &module(&r, 2, "[[x^2,0],[0,1]]")).unwrap());
        assert!(apply_near_splitting(&id, &Submodule::zero(&r, 3)).is_err());
    }

    #[test]
    fn identity_has_only_zero() {
        let r = Ring::new(3, &["x"]).unwrap();
        let rep = compatible_prime_annihilators(&NearSplitting::new(PolyMatrix::identity(&r, 1)).unwrap()).unwrap();
        assert_eq!(rep.entries.len(), 1);
        assert!(rep.entries[0].prime.is_zero() && rep.entries[0].module.is_zero());
    }
}
