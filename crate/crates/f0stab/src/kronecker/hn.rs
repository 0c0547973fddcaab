use std::cmp::Ordering;

use num_integer::Integer;
use serde::Serialize;

use super::canonical::{assemble, kronecker_canonical_form, PencilBlock};
use super::rep::{FieldTag, KroneckerRep};
use super::{Regime, StabilityFunctionK2};
use crate::charge::ExactComplex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HnFactor {
    pub class: (i64, i64),
    /// `Z(class)`, which carries the phase.
    pub charge: ExactComplex,
    /// Indecomposable summands of the factor; empty when the factor is the
    /// whole representation in the equal-phase regime.
    pub blocks: Vec<PencilBlock>,
    pub rep: KroneckerRep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HnResult {
    pub regime: Regime,
    pub factors: Vec<HnFactor>,
}

impl HnResult {
    pub fn classes(&self) -> Vec<(i64, i64)> {
        self.factors.iter().map(|f| f.class).collect()
    }
}

fn direction((p, q): (i64, i64)) -> (i64, i64) {
    let g = p.gcd(&q);
    (p / g, q / g)
}

/// The Harder–Narasimhan filtration of a nonzero rational representation.
///
/// When `φ(C₀) < φ(C₁)` every indecomposable is semistable, so the factors
/// are the isotypic pieces of the canonical form grouped by phase. When
/// `φ(C₁) < φ(C₀)` the filtration is `0 ⊆ (V₀, 0) ⊆ M`. When the phases
/// agree everything is semistable.
pub fn hn_filtration(m: &KroneckerRep, z: &StabilityFunctionK2) -> Result<HnResult> {
    if m.is_zero() {
        return Err(Error::ZeroRep);
    }
    if m.field != FieldTag::Rational {
        return Err(Error::FieldMismatch);
    }
    let regime = z.regime();
    let factor = |blocks: Vec<PencilBlock>| {
        let rep = assemble(&blocks);
        HnFactor { class: rep.class(), charge: z.charge(rep.p as i64, rep.q as i64), blocks, rep }
    };
    let factors = match regime {
        Regime::Equal => vec![HnFactor {
            class: m.class(),
            charge: z.charge(m.p as i64, m.q as i64),
            blocks: Vec::new(),
            rep: m.clone(),
        }],
        Regime::C1Below => {
            let mut out = Vec::new();
            if m.p > 0 {
                out.push(factor(vec![PencilBlock::QuotientRoot { n: 0 }; m.p]));
            }
            if m.q > 0 {
                out.push(factor(vec![PencilBlock::SubRoot { n: 0 }; m.q]));
            }
            out
        }
        Regime::C0Below => {
            let mut groups: Vec<((i64, i64), Vec<PencilBlock>)> = Vec::new();
            for b in kronecker_canonical_form(m)? {
                let d = direction(b.class());
                match groups.iter_mut().find(|(g, _)| *g == d) {
                    Some((_, v)) => v.push(b),
                    None => groups.push((d, vec![b])),
                }
            }
            groups.sort_by(|x, y| z.cmp_classes(y.0, x.0));
            groups.into_iter().map(|(_, blocks)| factor(blocks)).collect()
        }
    };
    debug_assert!(factors.windows(2).all(|w| z.cmp_classes(w[0].class, w[1].class) == Ordering::Greater));
    Ok(HnResult { regime, factors })
}
