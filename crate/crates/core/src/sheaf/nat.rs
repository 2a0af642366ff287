use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::localize::NatFraction;
use crate::spectra::{NatPoint, SpectrumKind};

/// Opens of the `Spec ℕ` model whose sections are known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NatOpen {
    /// `D(N)`.
    D(u64),
    /// `Spec ℕ ∖ {ℕ∖{1}} = D(2) ∪ D(3)`.
    PuncturedAtMax,
}

/// Section semirings of the structure sheaf on the `ℕ` models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NatSections {
    /// Sections over the empty open.
    Trivial,
    /// `ℕ[1/N]`; `N = 1` is `ℕ` itself.
    Fractions(u64),
}

impl fmt::Display for NatSections {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatSections::Trivial => write!(f, "0"),
            NatSections::Fractions(1) => write!(f, "ℕ"),
            NatSections::Fractions(n) => write!(f, "ℕ[1/{n}]"),
        }
    }
}

pub fn spec_nat_sections(kind: SpectrumKind, open: NatOpen) -> Result<NatSections> {
    match (kind, open) {
        (_, NatOpen::D(0)) => Ok(NatSections::Trivial),
        (_, NatOpen::D(n)) => Ok(NatSections::Fractions(n)),
        // glued from ℕ[1/2] and ℕ[1/3], see `glue_nat_pair`
        (SpectrumKind::Spec, NatOpen::PuncturedAtMax) => Ok(NatSections::Fractions(1)),
        (SpectrumKind::Sp, NatOpen::PuncturedAtMax) => {
            Err(Error::Unsupported("Sp ℕ has no maximal ideal to remove".into()))
        }
    }
}

/// Stalks `ℕ_p` of the `Spec ℕ` structure sheaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NatStalk {
    /// At `{0}`: `ℚ≥0`.
    NonNegRationals,
    /// At `pℕ`: fractions with denominators prime to `p`.
    LocalAt(u64),
    /// At `ℕ∖{1}`: only `1` is outside, so `ℕ` itself.
    Naturals,
}

pub fn nat_stalk(point: NatPoint) -> NatStalk {
    match point {
        NatPoint::Zero => NatStalk::NonNegRationals,
        NatPoint::Prime(p) => NatStalk::LocalAt(p),
        NatPoint::Max => NatStalk::Naturals,
    }
}

/// Decides whether `(x, y) ∈ ℕ[1/2] × ℕ[1/3]` agree in `ℕ[1/6]`, and if so
/// returns the unique natural number restricting to both.
pub fn glue_nat_pair(x: &NatFraction, y: &NatFraction) -> Result<Option<BigUint>> {
    if x.base() != 2 || y.base() != 3 {
        return Err(Error::precondition("expected a pair in ℕ[1/2] × ℕ[1/3]"));
    }
    if x.restrict(6)? != y.restrict(6)? {
        return Ok(None);
    }
    // x·2ᵃ·3ᵇ = y·2ᵃ·3ᵇ forces both denominators to cancel
    match (x.to_nat(), y.to_nat()) {
        (Some(m), Some(n)) if m == n => Ok(Some(m)),
        _ => Err(Error::Inconsistent(format!("{x:?} and {y:?} agree but are not natural"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(spec_nat_sections(SpectrumKind::Spec, NatOpen::D(6)).unwrap().to_string(), "ℕ[1/6]");
        assert_eq!(spec_nat_sections(SpectrumKind::Spec, NatOpen::PuncturedAtMax).unwrap().to_string(), "ℕ");
        assert_eq!(spec_nat_sections(SpectrumKind::Sp, NatOpen::D(1)).unwrap().to_string(), "ℕ");
        assert!(matches!(
            spec_nat_sections(SpectrumKind::Sp, NatOpen::PuncturedAtMax),
            Err(Error::Unsupported(_))
        ));
        assert_eq!(nat_stalk(NatPoint::Zero), NatStalk::NonNegRationals);
        assert_eq!(nat_stalk(NatPoint::Max), NatStalk::Naturals);
    }

    #[test]
    fn naturals_round_trip() {
        for n in 0..=100u64 {
            let x = NatFraction::from_nat(2, n).unwrap();
            let y = NatFraction::from_nat(3, n).unwrap();
            assert_eq!(glue_nat_pair(&x, &y).unwrap(), Some(BigUint::from(n)));
        }
    }

    #[test]
    fn disagreeing_pairs_are_rejected() {
        let half = NatFraction::new(2, BigUint::from(1u8), 1).unwrap();
        let one = NatFraction::from_nat(3, 1).unwrap();
        assert_eq!(glue_nat_pair(&half, &one).unwrap(), None);
        assert!(glue_nat_pair(&one, &half).is_err());
    }
}
