use serde::{Deserialize, Serialize};
use serde_json::json;

use super::space::{Dimension, FiniteSpace};
use super::SpectrumKind;
use crate::error::{Error, Result};
use crate::ideals::{primes_up_to, Bounded, NatIdeal};
use crate::report::Report;
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NatPoint {
    /// `{0}`.
    Zero,
    /// `pℕ`.
    Prime(u64),
    /// `ℕ ∖ {1}`, present only in `Spec`.
    Max,
}

/// `Spec ℕ` or `Sp ℕ`, truncated to the primes up to a bound.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NatSpectrumModel {
    pub kind: SpectrumKind,
    pub prime_bound: u64,
    pub points: Vec<NatPoint>,
}

impl NatSpectrumModel {
    pub fn new(kind: SpectrumKind, prime_bound: u64) -> Result<Self> {
        let mut points = vec![NatPoint::Zero];
        points.extend(primes_up_to(prime_bound).into_iter().map(NatPoint::Prime));
        if kind == SpectrumKind::Spec {
            points.push(NatPoint::Max);
        }
        if points.len() > Subset::CAPACITY {
            return Err(Error::resource(format!("prime bound {prime_bound} gives too many points")));
        }
        Ok(NatSpectrumModel { kind, prime_bound, points })
    }

    fn contains(point: NatPoint, n: u64) -> bool {
        match point {
            NatPoint::Zero => n == 0,
            NatPoint::Prime(p) => n.is_multiple_of(p),
            NatPoint::Max => n != 1,
        }
    }

    /// `D(n)`: points not containing `n`.
    pub fn d(&self, n: u64) -> Subset {
        (0..self.points.len()).filter(|&i| !Self::contains(self.points[i], n)).collect()
    }

    /// Subbasis `D(0)`, `D(1)` and `D(p)` for the modelled primes; their
    /// finite intersections are the sets `D(n)`.
    pub fn space(&self) -> FiniteSpace {
        let mut subbasis = vec![self.d(0), self.d(1)];
        subbasis.extend(self.points.iter().filter_map(|pt| match pt {
            NatPoint::Prime(p) => Some(self.d(*p)),
            _ => None,
        }));
        FiniteSpace::new(self.points.len(), subbasis).expect("point count checked")
    }

    pub fn dimension(&self, closed_set_limit: usize) -> Dimension {
        self.space().dimension(closed_set_limit)
    }

    pub fn index_of(&self, point: NatPoint) -> Option<usize> {
        self.points.iter().position(|&q| q == point)
    }
}

/// Checks the classification of `Spec ℕ` on the primes up to `bound`.
pub fn nat_model_verify(bound: u64) -> Result<Report> {
    if bound < 7 {
        return Err(Error::precondition("the ℕ model check needs bound ≥ 7"));
    }
    let primes = primes_up_to(bound);

    // ⟨p, q⟩ contains every n ≥ (p−1)q
    let mut tail_failures = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let ideal = NatIdeal::new([p, q]);
            let start = (p - 1) * q;
            let frobenius_ok = ideal.frobenius().is_some_and(|f| f < start as i64);
            let sampled_ok = (start..start + 2 * p * q).all(|n| ideal.contains(n));
            if !(frobenius_ok && sampled_ok) {
                tail_failures.push(json!([p, q]));
            }
        }
    }
    let tail = Report::new(
        format!("<p,q> contains every n >= (p-1)q for primes p < q <= {bound}"),
        tail_failures.is_empty(),
        tail_failures,
    );

    let mut prime_failures = Vec::new();
    for &p in &primes {
        let ideal = NatIdeal::principal(p);
        if !ideal.is_prime(bound).holds() || !ideal.is_subtractive(bound).holds() {
            prime_failures.push(json!(p));
        }
    }
    let principal = Report::new(
        format!("pN is prime and subtractive for p <= {bound} (checked on residues <= {bound})"),
        prime_failures.is_empty(),
        prime_failures,
    );

    let non_units = NatIdeal::new([2, 3]);
    let prime = non_units.is_prime(bound);
    let sub = non_units.is_subtractive(bound);
    let max = Report::new(
        "N \\ {1} is prime but not subtractive",
        prime.holds() && sub == Bounded::Fails((1, 2, 3)),
        vec![json!({ "prime": prime.holds(), "subtractive_witness": match sub {
            Bounded::Fails((a, b, c)) => json!(format!("{a}+{b}={c}")),
            Bounded::HoldsUpTo(_) => json!(null),
        }})],
    );

    Ok(Report::all(format!("classification of Spec N up to {bound}"), vec![tail, principal, max]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::IrreducibleMethod;

    #[test]
    fn basic_opens() {
        let m = NatSpectrumModel::new(SpectrumKind::Spec, 7).unwrap();
        // points: Zero, 2, 3, 5, 7, Max
        assert_eq!(m.points.len(), 6);
        assert_eq!(m.d(6), [0, 3, 4].into_iter().collect());
        assert_eq!(m.d(1), Subset::full(6));
        assert!(m.d(0).is_empty());
        let sp = NatSpectrumModel::new(SpectrumKind::Sp, 7).unwrap();
        assert_eq!(sp.points.len(), 5);
    }

    #[test]
    fn dimensions_at_bound_fifty() {
        let spec = NatSpectrumModel::new(SpectrumKind::Spec, 50).unwrap().dimension(1 << 20);
        assert_eq!(spec.value, 2);
        assert_eq!(spec.method, IrreducibleMethod::Exhaustive);
        let sp = NatSpectrumModel::new(SpectrumKind::Sp, 50).unwrap().dimension(1 << 20);
        assert_eq!(sp.value, 1);
    }

    #[test]
    fn verify_small_bound() {
        let r = nat_model_verify(30).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert!(nat_model_verify(5).is_err());
    }
}
