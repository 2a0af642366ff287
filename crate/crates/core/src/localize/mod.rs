//! Multiplicative submonoids, saturation, localization, semi-invertibility
//! and hardening.

mod bx;
mod nat;

use serde::{Deserialize, Serialize};

pub use bx::{bounded_witness, bx_hardening_iso, bx_hardening_verify, bx_preimage, BxFraction, BxSampling};
pub use nat::{nat_is_semi_invertible, nat_power_saturation_member, NatFraction};

use crate::error::{Error, Result};
use crate::ideals::{ideal_closure, subtractive_closure};
use crate::kernel::{FiniteSemiring, Homomorphism};
use crate::subset::Subset;

pub fn is_mult_submonoid(a: &FiniteSemiring, s: Subset) -> bool {
    s.contains(a.one()) && s.iter().all(|x| s.iter().all(|y| s.contains(a.mul(x, y))))
}

/// Least multiplicative submonoid containing `gens`.
pub fn monoid_closure(a: &FiniteSemiring, gens: impl IntoIterator<Item = usize>) -> Subset {
    let mut s = Subset::singleton(a.one());
    let mut frontier: Vec<usize> = gens.into_iter().collect();
    while let Some(x) = frontier.pop() {
        if s.contains(x) {
            continue;
        }
        s.insert(x);
        frontier.extend(s.iter().map(|y| a.mul(x, y)));
    }
    s
}

/// `{aⁿ | n ≥ 0}`.
pub fn powers(a: &FiniteSemiring, x: usize) -> Subset {
    monoid_closure(a, [x])
}

/// `S^sat = {b | ∃ c: bc ∈ S}`.
pub fn saturate(a: &FiniteSemiring, s: Subset) -> Subset {
    a.elements().filter(|&b| a.elements().any(|c| s.contains(a.mul(b, c)))).collect()
}

pub fn is_saturated(a: &FiniteSemiring, s: Subset) -> bool {
    saturate(a, s) == s
}

pub fn units(a: &FiniteSemiring) -> Subset {
    a.units().into_iter().collect()
}

/// `1 ∈ closure(aA)`, i.e. `∃ b, c: 1 + ab = ac`; for idempotent ambients
/// the equivalent `∃ b: 1 ⪯ ab`.
pub fn is_semi_invertible(a: &FiniteSemiring, x: usize) -> bool {
    if a.is_idempotent() {
        a.elements().any(|b| a.add(a.one(), a.mul(x, b)) == a.mul(x, b))
    } else {
        subtractive_closure(a, ideal_closure(a, [x])).contains(a.one())
    }
}

pub fn semi_invertibles(a: &FiniteSemiring) -> Subset {
    a.elements().filter(|&x| is_semi_invertible(a, x)).collect()
}

/// Units and semi-invertible elements coincide.
pub fn is_hard(a: &FiniteSemiring) -> bool {
    units(a) == semi_invertibles(a)
}

/// `S⁻¹A` for a finite `A`, with fraction classes computed by witness scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalizedSemiring {
    pub semiring: FiniteSemiring,
    /// `φ_S: A → S⁻¹A`.
    pub phi: Homomorphism,
    pub monoid: Subset,
    /// Class of the fraction `a/s`, indexed by `a * |S| + position of s in S`.
    class_of: Vec<usize>,
    /// Smallest fraction `(a, s)` of each class.
    pub reps: Vec<(usize, usize)>,
}

/// A witness `u ∈ S` with `a₁s₂u = a₂s₁u`, if any.
pub fn fraction_witness(
    a: &FiniteSemiring,
    s: Subset,
    (a1, s1): (usize, usize),
    (a2, s2): (usize, usize),
) -> Option<usize> {
    let (l, r) = (a.mul(a1, s2), a.mul(a2, s1));
    s.iter().find(|&u| a.mul(l, u) == a.mul(r, u))
}

pub fn localize(a: &FiniteSemiring, s: Subset) -> Result<LocalizedSemiring> {
    if !is_mult_submonoid(a, s) {
        return Err(Error::precondition(format!("{s:?} is not a multiplicative submonoid")));
    }
    let dens: Vec<usize> = s.to_vec();
    let m = dens.len();
    let pairs: Vec<(usize, usize)> = a.elements().flat_map(|x| dens.iter().map(move |&d| (x, d))).collect();
    let mut class_of = vec![usize::MAX; pairs.len()];
    let mut reps = Vec::new();
    for i in 0..pairs.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(pairs[i]);
        for j in i..pairs.len() {
            if class_of[j] == usize::MAX && fraction_witness(a, s, pairs[i], pairs[j]).is_some() {
                class_of[j] = c;
            }
        }
    }
    let pos = |d: usize| dens.binary_search(&d).expect("denominator in S");
    let cls = |x: usize, d: usize| class_of[x * m + pos(d)];
    let k = reps.len();
    let semiring = FiniteSemiring::from_fn(
        &format!("{}[S^-1]", a.label()),
        k,
        cls(a.zero(), a.one()),
        cls(a.one(), a.one()),
        |u, v| {
            let ((x1, s1), (x2, s2)) = (reps[u], reps[v]);
            cls(a.add(a.mul(x1, s2), a.mul(x2, s1)), a.mul(s1, s2))
        },
        |u, v| {
            let ((x1, s1), (x2, s2)) = (reps[u], reps[v]);
            cls(a.mul(x1, x2), a.mul(s1, s2))
        },
    )?;
    let names = reps
        .iter()
        .map(|&(x, d)| if d == a.one() { a.name(x) } else { format!("{}/{}", a.name(x), a.name(d)) })
        .collect();
    let semiring = semiring.with_names(names)?;
    let phi = Homomorphism { map: a.elements().map(|x| cls(x, a.one())).collect() };
    Ok(LocalizedSemiring { semiring, phi, monoid: s, class_of, reps })
}

impl LocalizedSemiring {
    /// Class of `x/d`; `d` must lie in the monoid.
    pub fn fraction(&self, x: usize, d: usize) -> Result<usize> {
        if !self.monoid.contains(d) {
            return Err(Error::precondition(format!("denominator {d} is not in S")));
        }
        let pos = self.monoid.iter().position(|e| e == d).expect("checked membership");
        let idx = x * self.monoid.len() + pos;
        self.class_of
            .get(idx)
            .copied()
            .ok_or_else(|| Error::structural(format!("element {x} out of range")))
    }
}

/// `A◇`: localization at the semi-invertible elements, with `χ_A`.
pub fn harden(a: &FiniteSemiring) -> LocalizedSemiring {
    let mut l = localize(a, semi_invertibles(a)).expect("semi-invertibles form a submonoid");
    l.semiring = l.semiring.with_label(format!("{}◇", a.label()));
    l
}
