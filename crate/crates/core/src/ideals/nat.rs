use std::collections::{BinaryHeap, BTreeSet};
use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

/// Default bound for the residue checks on ideals of ℕ.
pub const DEFAULT_NAT_BOUND: u64 = 10_000;

/// The ideal `g₁ℕ + … + g_rℕ` of ℕ, decided through its Apéry set.
///
/// With `m` the smallest nonzero generator, `apery[r]` is the least member
/// congruent to `r` mod `m`, so `a ∈ I` iff `apery[a mod m] ≤ a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatIdeal {
    gens: Vec<u64>,
    #[serde(skip)]
    apery: Vec<Option<u64>>,
}

/// The three families of prime ideals of ℕ, plus everything else.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NatIdealKind {
    Zero,
    Prime(u64),
    /// `ℕ ∖ {1} = ⟨2, 3⟩`.
    NonUnits,
    Whole,
    Other,
}

/// Outcome of a check that can only be carried out up to a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bounded<W> {
    /// No counterexample up to the bound.
    HoldsUpTo(u64),
    Fails(W),
}

impl<W> Bounded<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Bounded::HoldsUpTo(_))
    }
}

impl NatIdeal {
    pub fn new(gens: impl IntoIterator<Item = u64>) -> Self {
        let gens: Vec<u64> = gens.into_iter().filter(|&g| g > 0).collect::<BTreeSet<_>>().into_iter().collect();
        let apery = Self::apery_set(&gens);
        NatIdeal { gens, apery }
    }

    /// `pℕ`.
    pub fn principal(p: u64) -> Self {
        Self::new([p])
    }

    fn apery_set(gens: &[u64]) -> Vec<Option<u64>> {
        let Some(&m) = gens.first() else { return vec![] };
        let m_us = m as usize;
        let mut dist: Vec<Option<u64>> = vec![None; m_us];
        dist[0] = Some(0);
        let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
        while let Some(Reverse((d, r))) = heap.pop() {
            if dist[r] != Some(d) {
                continue;
            }
            for &g in &gens[1..] {
                let nd = d + g;
                let nr = (r + (g % m) as usize) % m_us;
                if dist[nr].is_none_or(|old| nd < old) {
                    dist[nr] = Some(nd);
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        dist
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    pub fn contains(&self, a: u64) -> bool {
        if a == 0 {
            return true;
        }
        let Some(&m) = self.gens.first() else { return false };
        if self.apery.is_empty() {
            // deserialized handles arrive without the cached table
            return Self::apery_set(&self.gens)[(a % m) as usize].is_some_and(|w| w <= a);
        }
        self.apery[(a % m) as usize].is_some_and(|w| w <= a)
    }

    /// Largest natural number not in the ideal when the generators are
    /// coprime; `None` if infinitely many naturals are missing.
    pub fn frobenius(&self) -> Option<i64> {
        let m = *self.gens.first()?;
        let apery = Self::apery_set(&self.gens);
        let max = apery.iter().copied().collect::<Option<Vec<_>>>()?.into_iter().max()?;
        Some(max as i64 - m as i64)
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(1)
    }

    /// Primality with all products `ab ≤ bound` checked.
    pub fn is_prime(&self, bound: u64) -> Bounded<(u64, u64)> {
        if !self.is_proper() {
            return Bounded::Fails((1, 1));
        }
        for a in 2..=bound {
            for b in a..=bound / a {
                if self.contains(a * b) && !self.contains(a) && !self.contains(b) {
                    return Bounded::Fails((a, b));
                }
            }
        }
        Bounded::HoldsUpTo(bound)
    }

    /// Subtractivity with all `a + b = c ≤ bound` checked; a failure is a
    /// triple `(a, b, c)` with `b, c` in the ideal and `a` outside it.
    pub fn is_subtractive(&self, bound: u64) -> Bounded<(u64, u64, u64)> {
        let members: Vec<u64> = (1..=bound).filter(|&b| self.contains(b)).collect();
        for a in (1..=bound).filter(|&a| !self.contains(a)) {
            for &b in &members {
                if a + b > bound {
                    break;
                }
                if self.contains(a + b) {
                    return Bounded::Fails((a, b, a + b));
                }
            }
        }
        Bounded::HoldsUpTo(bound)
    }

    /// Matches the ideal against the classified prime families.
    pub fn classify(&self) -> NatIdealKind {
        match self.gens.as_slice() {
            [] => NatIdealKind::Zero,
            _ if self.contains(1) => NatIdealKind::Whole,
            [p] if is_prime_number(*p) => NatIdealKind::Prime(*p),
            _ => {
                if self.contains(2) && self.contains(3) {
                    NatIdealKind::NonUnits
                } else {
                    NatIdealKind::Other
                }
            }
        }
    }
}

pub fn is_prime_number(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime_number(p)).collect()
}
