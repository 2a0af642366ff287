//! Ideals of finite semirings and of ℕ: closure, primality, subtractive
//! closure, radicals and quotients.

mod nat;

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

pub use nat::{is_prime_number, primes_up_to, Bounded, NatIdeal, NatIdealKind, DEFAULT_NAT_BOUND};

use crate::error::{Error, Result};
use crate::kernel::{FiniteSemiring, Homomorphism};
use crate::subset::Subset;

/// Cap on the number of ideals [`all_ideals`] will enumerate.
pub const DEFAULT_IDEAL_LIMIT: usize = 1 << 16;

/// An ideal, given explicitly or by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdealHandle {
    Subset(Subset),
    Gens(Vec<usize>),
    Nat(Vec<u64>),
}

/// Serialized form: `{"ambient": name, "gens": [...]}` or `{"ambient": name, "subset": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealDoc {
    pub ambient: String,
    #[serde(flatten)]
    pub ideal: IdealHandle,
}

impl IdealHandle {
    /// Explicit subset over a finite ambient; the subset form is validated.
    pub fn resolve(&self, a: &FiniteSemiring) -> Result<Subset> {
        a.full_subset()?;
        match self {
            IdealHandle::Gens(g) => {
                if let Some(bad) = g.iter().find(|&&x| x >= a.size()) {
                    return Err(Error::structural(format!("generator {bad} out of range")));
                }
                Ok(ideal_closure(a, g.iter().copied()))
            }
            IdealHandle::Subset(s) => {
                if !s.is_subset(a.full_subset()?) {
                    return Err(Error::structural("subset has indices outside the carrier"));
                }
                if !is_ideal(a, *s) {
                    return Err(Error::precondition(format!("{s:?} is not an ideal")));
                }
                Ok(*s)
            }
            IdealHandle::Nat(_) => Err(Error::Unsupported("ℕ ideal over a finite ambient".into())),
        }
    }
}

/// Least ideal containing `gens`.
pub fn ideal_closure(a: &FiniteSemiring, gens: impl IntoIterator<Item = usize>) -> Subset {
    extend_ideal(a, Subset::singleton(a.zero()), gens)
}

/// Least ideal containing the ideal `base` and `extra`.
pub fn extend_ideal(a: &FiniteSemiring, base: Subset, extra: impl IntoIterator<Item = usize>) -> Subset {
    let mut set = base;
    let mut queue: VecDeque<usize> = VecDeque::new();
    for g in extra {
        if set.insert(g) {
            queue.push_back(g);
        }
    }
    while let Some(x) = queue.pop_front() {
        for r in a.elements() {
            let y = a.mul(r, x);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
        for y in set {
            let z = a.add(x, y);
            if set.insert(z) {
                queue.push_back(z);
            }
        }
    }
    set
}

pub fn is_ideal(a: &FiniteSemiring, i: Subset) -> bool {
    i.contains(a.zero())
        && i.iter().all(|x| {
            i.iter().all(|y| i.contains(a.add(x, y))) && a.elements().all(|r| i.contains(a.mul(r, x)))
        })
}

/// `I ≠ A` and `ab ∈ I ⟹ a ∈ I ∨ b ∈ I`.
pub fn is_prime(a: &FiniteSemiring, i: Subset) -> bool {
    i.len() < a.size()
        && is_ideal(a, i)
        && a.elements().all(|x| {
            i.contains(x) || a.elements().all(|y| i.contains(y) || !i.contains(a.mul(x, y)))
        })
}

/// `b, c ∈ I` and `a + b = c` imply `a ∈ I`, checked over every triple.
pub fn is_subtractive_exhaustive(a: &FiniteSemiring, i: Subset) -> bool {
    a.elements()
        .filter(|&x| !i.contains(x))
        .all(|x| i.iter().all(|b| !i.contains(a.add(x, b))))
}

/// In an idempotent semiring an ideal is subtractive iff it is down-closed.
pub fn is_down_closed(a: &FiniteSemiring, i: Subset) -> Result<bool> {
    for c in i {
        for x in a.elements() {
            if a.leq(x, c)? && !i.contains(x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Subtractivity, via down-closure when the ambient is idempotent.
pub fn is_subtractive(a: &FiniteSemiring, i: Subset) -> bool {
    if a.is_idempotent() {
        is_down_closed(a, i).expect("ambient is idempotent")
    } else {
        is_subtractive_exhaustive(a, i)
    }
}

/// `Ī = {a | ∃ b, c ∈ I: a + b = c}`, the kernel of `A → A/∼_I`.
pub fn subtractive_closure(a: &FiniteSemiring, i: Subset) -> Subset {
    a.elements().filter(|&x| i.iter().any(|b| i.contains(a.add(x, b)))).collect()
}

/// `∃ n ≥ 0: xⁿ ∈ I`, scanning powers until they cycle.
pub fn radical_member(a: &FiniteSemiring, i: Subset, x: usize) -> bool {
    let mut seen = Subset::empty();
    let mut p = a.one();
    loop {
        if i.contains(p) {
            return true;
        }
        if !seen.insert(p) {
            return false;
        }
        p = a.mul(p, x);
    }
}

pub fn radical(a: &FiniteSemiring, i: Subset) -> Subset {
    a.elements().filter(|&x| radical_member(a, i, x)).collect()
}

/// Every ideal of `a`, grown as a closure lattice from `{0}`, sorted by
/// `(size, bits)`.
pub fn all_ideals(a: &FiniteSemiring, limit: usize) -> Result<Vec<Subset>> {
    let full = a.full_subset()?;
    let bottom = ideal_closure(a, []);
    let mut seen: HashSet<Subset> = HashSet::from([bottom]);
    let mut queue = VecDeque::from([bottom]);
    while let Some(j) = queue.pop_front() {
        for x in full.difference(j) {
            let k = extend_ideal(a, j, [x]);
            if seen.insert(k) {
                if seen.len() > limit {
                    return Err(Error::resource(format!("more than {limit} ideals")));
                }
                queue.push_back(k);
            }
        }
    }
    let mut out: Vec<Subset> = seen.into_iter().collect();
    out.sort_by_key(|s| s.sort_key());
    Ok(out)
}

/// All prime ideals, in canonical order.
pub fn prime_ideals(a: &FiniteSemiring, limit: usize) -> Result<Vec<Subset>> {
    Ok(all_ideals(a, limit)?.into_iter().filter(|&i| is_prime(a, i)).collect())
}

/// Whether `rad(I)` equals the intersection of the primes containing `I`.
pub fn radical_equals_prime_intersection(a: &FiniteSemiring, i: Subset, primes: &[Subset]) -> bool {
    let meet = primes
        .iter()
        .filter(|p| i.is_subset(**p))
        .fold(a.full_subset().expect("caller enumerated primes"), |acc, p| acc.intersection(*p));
    radical(a, i) == meet
}

/// `A/∼_I` with `a ∼_I b ⟺ ∃ i, j ∈ I: a + i = b + j`, plus the projection.
///
/// Classes are numbered by their smallest element.
pub fn quotient_by_ideal(a: &FiniteSemiring, i: Subset) -> (FiniteSemiring, Homomorphism) {
    let n = a.size();
    // a + I, as a set, determines the class of a: a ∼ b iff the translates meet
    let translate: Vec<Subset> = a.elements().map(|x| i.iter().map(|y| a.add(x, y)).collect()).collect();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for y in x..n {
            if !translate[x].is_disjoint(translate[y]) {
                class[y] = c;
            }
        }
    }
    let k = reps.len();
    let q = FiniteSemiring::from_fn(
        &format!("{}/I", a.label()),
        k,
        class[a.zero()],
        class[a.one()],
        |u, v| class[a.add(reps[u], reps[v])],
        |u, v| class[a.mul(reps[u], reps[v])],
    )
    .expect("class indices are in range");
    let names = reps.iter().map(|&r| format!("[{}]", a.name(r))).collect();
    let q = q.with_names(names).expect("one name per class");
    (q, Homomorphism { map: class })
}
