//! Semirings: table-based finite carriers, the built-in infinite instances,
//! homomorphisms and exhaustive axiom verification.

mod builtin;
pub mod construct;
mod hom;

pub use builtin::{
    BuiltinElement, BuiltinTag, Booleans, MinMax, MinMaxPairs, Naturals, NonNegRationals,
    Semiring, Tropical, TropicalRationals,
};
pub use hom::{enumerate_homs, find_isomorphism, is_homomorphism, Homomorphism};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::Subset;

/// A commutative semiring on the carrier `{0, ..., size-1}` given by its
/// addition and multiplication tables.
///
/// Construction only checks the shape of the data; use [`verify_axioms`]
/// to check the semiring laws.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SemiringTables", into = "SemiringTables")]
pub struct FiniteSemiring {
    size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
    label: String,
    names: Option<Vec<String>>,
}

/// Wire format of a finite semiring.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemiringTables {
    pub size: usize,
    pub zero: usize,
    pub one: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default)]
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl TryFrom<SemiringTables> for FiniteSemiring {
    type Error = Error;

    fn try_from(t: SemiringTables) -> Result<Self> {
        let mut s = FiniteSemiring::from_tables(&t.label, t.size, t.zero, t.one, &t.add, &t.mul)?;
        if let Some(names) = t.names {
            s = s.with_names(names)?;
        }
        Ok(s)
    }
}

impl From<FiniteSemiring> for SemiringTables {
    fn from(s: FiniteSemiring) -> Self {
        let rows = |flat: &[usize]| flat.chunks(s.size.max(1)).map(<[usize]>::to_vec).collect();
        SemiringTables {
            size: s.size,
            zero: s.zero,
            one: s.one,
            add: if s.size == 0 { vec![] } else { rows(&s.add) },
            mul: if s.size == 0 { vec![] } else { rows(&s.mul) },
            label: s.label.clone(),
            names: s.names.clone(),
        }
    }
}

impl FiniteSemiring {
    pub fn from_tables(
        label: &str,
        size: usize,
        zero: usize,
        one: usize,
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::structural("a semiring needs at least one element"));
        }
        if zero >= size || one >= size {
            return Err(Error::structural(format!(
                "zero={zero} / one={one} out of range for size {size}"
            )));
        }
        let flatten = |name: &str, t: &[Vec<usize>]| -> Result<Vec<usize>> {
            if t.len() != size || t.iter().any(|r| r.len() != size) {
                return Err(Error::structural(format!("{name} table is not {size}x{size}")));
            }
            let flat: Vec<usize> = t.iter().flatten().copied().collect();
            if let Some(bad) = flat.iter().find(|&&v| v >= size) {
                return Err(Error::structural(format!("{name} table entry {bad} out of range")));
            }
            Ok(flat)
        };
        Ok(FiniteSemiring {
            size,
            add: flatten("add", add)?,
            mul: flatten("mul", mul)?,
            zero,
            one,
            label: label.to_string(),
            names: None,
        })
    }

    /// Tabulates `add` and `mul` over `{0, ..., size-1}`.
    pub fn from_fn(
        label: &str,
        size: usize,
        zero: usize,
        one: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let tab = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..size).map(|a| (0..size).map(|b| f(a, b)).collect()).collect()
        };
        Self::from_tables(label, size, zero, one, &tab(&add), &tab(&mul))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tables serialize")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::structural(format!(
                "{} names given for {} elements",
                names.len(),
                self.size
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn sum(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.zero, |acc, x| self.add(acc, x))
    }

    pub fn product(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.one, |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, a: usize, n: usize) -> usize {
        (0..n).fold(self.one, |acc, _| self.mul(acc, a))
    }

    /// Idempotency is decided by `1 + 1 = 1` alone; distributivity spreads it.
    pub fn is_idempotent(&self) -> bool {
        self.add(self.one, self.one) == self.one
    }

    /// The natural order `a ⪯ b` iff `a + b = b`.
    pub fn leq(&self, a: usize, b: usize) -> Result<bool> {
        if !self.is_idempotent() {
            return Err(Error::precondition(format!(
                "{} is not idempotent; ⪯ is undefined",
                self.label
            )));
        }
        Ok(self.add(a, b) == b)
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }

    /// Invertible elements, ascending.
    pub fn units(&self) -> Vec<usize> {
        self.elements().filter(|&a| self.inverse(a).is_some()).collect()
    }

    pub fn is_semifield(&self) -> bool {
        self.zero != self.one
            && self.elements().all(|a| a == self.zero || self.inverse(a).is_some())
    }

    pub fn full_subset(&self) -> Result<Subset> {
        self.check_subset_capacity()?;
        Ok(Subset::full(self.size))
    }

    pub(crate) fn check_subset_capacity(&self) -> Result<()> {
        if self.size > Subset::CAPACITY {
            return Err(Error::resource(format!(
                "{} has {} elements; set-based operations support at most {}",
                self.label,
                self.size,
                Subset::CAPACITY
            )));
        }
        Ok(())
    }

    /// Componentwise direct product; element `(a, b)` has index `a * |B| + b`.
    pub fn direct_product(&self, other: &FiniteSemiring) -> FiniteSemiring {
        let m = other.size;
        let split = |x: usize| (x / m, x % m);
        let mut s = FiniteSemiring::from_fn(
            &format!("{}x{}", self.label, other.label),
            self.size * m,
            self.zero * m + other.zero,
            self.one * m + other.one,
            |x, y| {
                let ((a, b), (c, d)) = (split(x), split(y));
                self.add(a, c) * m + other.add(b, d)
            },
            |x, y| {
                let ((a, b), (c, d)) = (split(x), split(y));
                self.mul(a, c) * m + other.mul(b, d)
            },
        )
        .expect("product of well-formed tables is well formed");
        let names = (0..s.size)
            .map(|x| {
                let (a, b) = split(x);
                format!("({},{})", self.name(a), other.name(b))
            })
            .collect();
        s.names = Some(names);
        s
    }

    /// Quotient by the least congruence identifying each given pair, with
    /// the projection. Classes are numbered by their smallest element.
    pub fn congruence_quotient(&self, pairs: &[(usize, usize)]) -> Result<(FiniteSemiring, Homomorphism)> {
        if pairs.iter().any(|&(a, b)| a >= self.size || b >= self.size) {
            return Err(Error::structural("pair element out of range"));
        }
        let mut parent: Vec<usize> = self.elements().collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        let mut pending = pairs.to_vec();
        while let Some((a, b)) = pending.pop() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                continue;
            }
            parent[ra.max(rb)] = ra.min(rb);
            for c in self.elements() {
                pending.push((self.add(a, c), self.add(b, c)));
                pending.push((self.mul(a, c), self.mul(b, c)));
            }
        }
        let roots: Vec<usize> = self.elements().map(|x| find(&mut parent, x)).collect();
        let mut reps: Vec<usize> = roots.clone();
        reps.sort_unstable();
        reps.dedup();
        let class = |x: usize| reps.binary_search(&roots[x]).expect("root is a representative");
        let q = FiniteSemiring::from_fn(
            &format!("{}/~", self.label),
            reps.len(),
            class(self.zero),
            class(self.one),
            |u, v| class(self.add(reps[u], reps[v])),
            |u, v| class(self.mul(reps[u], reps[v])),
        )?
        .with_names(reps.iter().map(|&r| self.name(r)).collect())?;
        let map = Homomorphism { map: self.elements().map(class).collect() };
        Ok((q, map))
    }
}

impl fmt::Debug for FiniteSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSemiring({}, {} elements)", self.label, self.size)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    AdditiveCommutativity,
    AdditiveAssociativity,
    AdditiveIdentity,
    MultiplicativeCommutativity,
    MultiplicativeAssociativity,
    MultiplicativeIdentity,
    Distributivity,
    AbsorbingZero,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::AdditiveCommutativity => "additive commutativity",
            Law::AdditiveAssociativity => "additive associativity",
            Law::AdditiveIdentity => "additive identity",
            Law::MultiplicativeCommutativity => "multiplicative commutativity",
            Law::MultiplicativeAssociativity => "multiplicative associativity",
            Law::MultiplicativeIdentity => "multiplicative identity",
            Law::Distributivity => "distributivity",
            Law::AbsorbingZero => "absorbing zero",
        };
        f.write_str(s)
    }
}

/// One violated law with the first witness found (in index order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, law: Law) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }
}

/// Exhaustively checks every semiring law, reporting one witness per
/// violated law.
pub fn verify_axioms(s: &FiniteSemiring) -> AxiomReport {
    let n = s.size;
    let mut found: Vec<Violation> = Vec::new();
    let mut note = |law: Law, witness: Vec<usize>| {
        if !found.iter().any(|v| v.law == law) {
            found.push(Violation { law, witness });
        }
    };
    for a in 0..n {
        if s.add(a, s.zero) != a {
            note(Law::AdditiveIdentity, vec![a]);
        }
        if s.mul(a, s.one) != a {
            note(Law::MultiplicativeIdentity, vec![a]);
        }
        if s.mul(a, s.zero) != s.zero {
            note(Law::AbsorbingZero, vec![a]);
        }
        for b in 0..n {
            if s.add(a, b) != s.add(b, a) {
                note(Law::AdditiveCommutativity, vec![a, b]);
            }
            if s.mul(a, b) != s.mul(b, a) {
                note(Law::MultiplicativeCommutativity, vec![a, b]);
            }
            for c in 0..n {
                if s.add(s.add(a, b), c) != s.add(a, s.add(b, c)) {
                    note(Law::AdditiveAssociativity, vec![a, b, c]);
                }
                if s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)) {
                    note(Law::MultiplicativeAssociativity, vec![a, b, c]);
                }
                if s.mul(a, s.add(b, c)) != s.add(s.mul(a, b), s.mul(a, c)) {
                    note(Law::Distributivity, vec![a, b, c]);
                }
            }
        }
    }
    found.sort_by_key(|v| v.law);
    AxiomReport { violations: found }
}

#[cfg(test)]
mod tests {
    use super::construct::*;
    use super::*;

    #[test]
    fn boolean_tables_are_a_semiring() {
        assert!(verify_axioms(&boolean()).is_valid());
    }

    #[test]
    fn broken_absorption_is_reported_with_witness() {
        // 0·1 = 1 in an otherwise additive-identity-preserving table
        let add = vec![vec![0, 1], vec![1, 1]];
        let mul = vec![vec![1, 0], vec![0, 1]];
        let s = FiniteSemiring::from_tables("broken", 2, 0, 1, &add, &mul).unwrap();
        let report = verify_axioms(&s);
        let v = report.violated(Law::AbsorbingZero).expect("absorbing zero violated");
        assert_eq!(v.witness, vec![0]);
        assert_eq!(s.mul(v.witness[0], s.zero()), 1);
    }

    #[test]
    fn three_chain_is_a_semiring_and_idempotent() {
        let c = chain(3);
        assert!(verify_axioms(&c).is_valid());
        assert!(c.is_idempotent());
        // 1 ⪯ ½ fails: max(1,½) = 1
        assert!(!c.leq(2, 1).unwrap());
        assert!(c.leq(1, 2).unwrap());
    }

    #[test]
    fn malformed_tables_are_structural_errors() {
        let add = vec![vec![0, 1], vec![1]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        assert!(matches!(
            FiniteSemiring::from_tables("bad", 2, 0, 1, &add, &mul),
            Err(Error::Structural(_))
        ));
        let add = vec![vec![0, 7], vec![1, 1]];
        assert!(matches!(
            FiniteSemiring::from_tables("bad", 2, 0, 1, &add, &mul),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn leq_needs_idempotency() {
        assert!(matches!(zmod(3).leq(0, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn units_by_brute_force() {
        assert_eq!(boolean().units(), vec![1]);
        assert_eq!(zmod(6).units(), vec![1, 5]);
        let bx = bool_poly_quotient_univariate("B[x]/(x^2=x)", 2, |k| Some(k.min(1)));
        assert_eq!(bx.units(), vec![bx.one()]);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"size":2,"zero":0,"one":1,"add":[[0,1],[1,1]],"mul":[[0,0],[0,1]],"label":"B"}"#;
        let b = FiniteSemiring::from_json(text).unwrap();
        assert_eq!(b.add(1, 1), 1);
        assert_eq!(FiniteSemiring::from_json(&b.to_json()).unwrap(), b);
    }

    #[test]
    fn json_rejects_ragged_tables() {
        let text = r#"{"size":2,"zero":0,"one":1,"add":[[0,1]],"mul":[[0,0],[0,1]],"label":"B"}"#;
        assert!(FiniteSemiring::from_json(text).is_err());
    }
}
