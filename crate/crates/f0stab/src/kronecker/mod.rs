//! Representations of the Kronecker quiver `K₂`.
//!
//! A representation is a pencil of two `p × q` matrices. The submodules
//! provide exact fields ([`field`], [`poly`]), constructors and morphism
//! spaces ([`rep`]), a finite-field semistability oracle ([`bruteforce`]),
//! the canonical form over `Q` ([`canonical`]) and HN filtrations ([`hn`]).

pub mod bruteforce;
pub mod canonical;
pub mod field;
pub mod hn;
pub mod poly;
pub mod rep;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::charge::{in_h, phase_cmp, ExactComplex};
use crate::error::{Error, Result};
use crate::exact::q;
use crate::k_lattice::KClass;

pub use bruteforce::{realizable_classes, semistable_bruteforce, semistable_naive, Budget, SemistabilityVerdict};
pub use canonical::{kronecker_canonical_form, PencilBlock, RegularPoint};
pub use field::{Field, Matrix, NumberField, PrimeField, Rationals};
pub use hn::{hn_filtration, HnFactor, HnResult};
pub use poly::QPoly;
pub use rep::{c0, c1, dim_hom, indecomposable, indecomposable_over, FieldTag, KroneckerRep, P1Point};

/// Charges of the two simple representations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityFunctionK2 {
    pub z_c0: ExactComplex,
    pub z_c1: ExactComplex,
}

/// Which of the three phase regimes a stability function is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `φ(C₀) < φ(C₁)`
    C0Below,
    /// `φ(C₁) < φ(C₀)`
    C1Below,
    Equal,
}

impl StabilityFunctionK2 {
    pub fn new(z_c0: ExactComplex, z_c1: ExactComplex) -> Result<Self> {
        for z in [&z_c0, &z_c1] {
            if z.is_zero() {
                return Err(Error::ZeroCharge);
            }
            if !in_h(z) {
                return Err(Error::OutsideH(z.to_string()));
            }
        }
        Ok(StabilityFunctionK2 { z_c0, z_c1 })
    }

    pub fn charge(&self, d0: i64, d1: i64) -> ExactComplex {
        &self.z_c0.scale(&q(d0)) + &self.z_c1.scale(&q(d1))
    }

    /// Compares the phases of two nonzero dimension vectors.
    pub fn cmp_classes(&self, a: (i64, i64), b: (i64, i64)) -> Ordering {
        phase_cmp(&self.charge(a.0, a.1), &self.charge(b.0, b.1)).expect("nonzero effective classes lie in H")
    }

    pub fn regime(&self) -> Regime {
        match self.cmp_classes((1, 0), (0, 1)) {
            Ordering::Less => Regime::C0Below,
            Ordering::Greater => Regime::C1Below,
            Ordering::Equal => Regime::Equal,
        }
    }
}

/// The four embeddings of `rep(K₂)` into the heart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Embedding {
    I1,
    I2,
    II1,
    II2,
}

impl Embedding {
    pub const ALL: [Embedding; 4] = [Embedding::I1, Embedding::I2, Embedding::II1, Embedding::II2];

    /// Slots receiving the vertex-0 and vertex-1 spaces.
    pub fn slots(self) -> (usize, usize) {
        match self {
            Embedding::I1 => (0, 1),
            Embedding::I2 => (2, 3),
            Embedding::II1 => (1, 2),
            Embedding::II2 => (3, 0),
        }
    }
}

/// K-class of a Kronecker dimension vector under an embedding.
pub fn embed_class(pq: (i64, i64), which: Embedding) -> KClass {
    let (s0, s1) = which.slots();
    let mut c = [0; 4];
    c[s0] += pq.0;
    c[s1] += pq.1;
    KClass(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embeddings() {
        assert_eq!(embed_class((1, 2), Embedding::I1), KClass([1, 2, 0, 0]));
        assert_eq!(embed_class((1, 1), Embedding::II2), KClass([1, 0, 0, 1]));
        assert_eq!(embed_class((2, 3), Embedding::II1), KClass([0, 2, 3, 0]));
        for e in Embedding::ALL {
            assert!(embed_class((0, 0), e).is_zero());
        }
    }

    #[test]
    fn regimes() {
        let z = |a, b| ExactComplex::from_ints(a, b);
        assert_eq!(StabilityFunctionK2::new(z(1, 1), z(-1, 1)).unwrap().regime(), Regime::C0Below);
        assert_eq!(StabilityFunctionK2::new(z(-1, 1), z(1, 1)).unwrap().regime(), Regime::C1Below);
        assert_eq!(StabilityFunctionK2::new(z(0, 1), z(0, 2)).unwrap().regime(), Regime::Equal);
        assert!(StabilityFunctionK2::new(z(1, 0), z(0, 1)).is_err());
    }
}
