use std::cmp::{max, min};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::FiniteSemiring;
use crate::error::{Error, Result};

/// Element-level semiring interface shared by table semirings and the
/// built-in infinite instances.
pub trait Semiring {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_idempotent(&self) -> bool {
        let one = self.one();
        self.add(&one, &one) == one
    }

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool> {
        if !self.is_idempotent() {
            return Err(Error::precondition("⪯ is only defined on idempotent semirings"));
        }
        Ok(self.add(a, b) == *b)
    }

    /// Closed-form invertibility rule, when the instance has one.
    fn is_unit(&self, _a: &Self::Elem) -> Option<bool> {
        None
    }
}

impl Semiring for FiniteSemiring {
    type Elem = usize;

    fn zero(&self) -> usize {
        FiniteSemiring::zero(self)
    }
    fn one(&self) -> usize {
        FiniteSemiring::one(self)
    }
    fn add(&self, a: &usize, b: &usize) -> usize {
        FiniteSemiring::add(self, *a, *b)
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteSemiring::mul(self, *a, *b)
    }
    fn is_unit(&self, a: &usize) -> Option<bool> {
        Some(self.inverse(*a).is_some())
    }
}

/// `(ℕ, +, ·)` with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Naturals;

impl Semiring for Naturals {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a + b
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b
    }
    fn is_unit(&self, a: &BigUint) -> Option<bool> {
        Some(a.is_one())
    }
}

/// `(ℚ≥0, +, ·)`; elements are assumed non-negative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NonNegRationals;

impl NonNegRationals {
    pub fn element(q: BigRational) -> Result<BigRational> {
        if q.is_negative() {
            return Err(Error::precondition(format!("{q} is negative")));
        }
        Ok(q)
    }
}

impl Semiring for NonNegRationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_unit(&self, a: &BigRational) -> Option<bool> {
        Some(!a.is_zero())
    }
}

/// `𝔹 = ({0,1}, ∨, ∧)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Booleans;

impl Semiring for Booleans {
    type Elem = bool;

    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
    fn is_unit(&self, a: &bool) -> Option<bool> {
        Some(*a)
    }
}

/// Element of the min-plus tropical semiring over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tropical {
    Finite(BigRational),
    Infinity,
}

impl Tropical {
    pub fn finite(n: i64) -> Self {
        Tropical::Finite(BigRational::from_integer(n.into()))
    }
}

impl PartialOrd for Tropical {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order with `+∞` on top.
impl Ord for Tropical {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Tropical::Infinity, Tropical::Infinity) => Equal,
            (Tropical::Infinity, _) => Greater,
            (_, Tropical::Infinity) => Less,
            (Tropical::Finite(a), Tropical::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tropical::Finite(q) => write!(f, "{q}"),
            Tropical::Infinity => f.write_str("+inf"),
        }
    }
}

/// `(ℚ ∪ {+∞}, min, +)`: zero is `+∞`, one is `0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TropicalRationals;

impl Semiring for TropicalRationals {
    type Elem = Tropical;

    fn zero(&self) -> Tropical {
        Tropical::Infinity
    }
    fn one(&self) -> Tropical {
        Tropical::Finite(BigRational::zero())
    }
    fn add(&self, a: &Tropical, b: &Tropical) -> Tropical {
        min(a, b).clone()
    }
    fn mul(&self, a: &Tropical, b: &Tropical) -> Tropical {
        match (a, b) {
            (Tropical::Finite(x), Tropical::Finite(y)) => Tropical::Finite(x + y),
            _ => Tropical::Infinity,
        }
    }
    fn is_unit(&self, a: &Tropical) -> Option<bool> {
        Some(*a != Tropical::Infinity)
    }
}

/// Element of `(ℕ_min × ℤ_max) ∪ {(+∞, −∞)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MinMax {
    Pair { ord: BigUint, deg: BigInt },
    /// The distinguished point `(+∞, −∞)`.
    Point,
}

impl MinMax {
    pub fn pair(ord: u64, deg: i64) -> Self {
        MinMax::Pair { ord: ord.into(), deg: deg.into() }
    }
}

impl fmt::Display for MinMax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinMax::Pair { ord, deg } => write!(f, "({ord},{deg})"),
            MinMax::Point => f.write_str("(+inf,-inf)"),
        }
    }
}

/// `(n,d)+(m,e) = (min(n,m), max(d,e))`, `(n,d)·(m,e) = (n+m, d+e)`; the
/// point `(+∞,−∞)` is neutral for `+` and absorbing for `·`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MinMaxPairs;

impl Semiring for MinMaxPairs {
    type Elem = MinMax;

    fn zero(&self) -> MinMax {
        MinMax::Point
    }
    fn one(&self) -> MinMax {
        MinMax::pair(0, 0)
    }
    fn add(&self, a: &MinMax, b: &MinMax) -> MinMax {
        match (a, b) {
            (MinMax::Point, x) | (x, MinMax::Point) => x.clone(),
            (MinMax::Pair { ord: n, deg: d }, MinMax::Pair { ord: m, deg: e }) => MinMax::Pair {
                ord: min(n, m).clone(),
                deg: max(d, e).clone(),
            },
        }
    }
    fn mul(&self, a: &MinMax, b: &MinMax) -> MinMax {
        match (a, b) {
            (MinMax::Point, _) | (_, MinMax::Point) => MinMax::Point,
            (MinMax::Pair { ord: n, deg: d }, MinMax::Pair { ord: m, deg: e }) => {
                MinMax::Pair { ord: n + m, deg: d + e }
            }
        }
    }
    fn is_unit(&self, a: &MinMax) -> Option<bool> {
        Some(matches!(a, MinMax::Pair { ord, .. } if ord.is_zero()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BuiltinTag {
    Nat,
    NonNegRat,
    Bool,
    TropicalRat,
    MinMaxPair,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BuiltinElement {
    Nat(BigUint),
    NonNegRat(BigRational),
    Bool(bool),
    TropicalRat(Tropical),
    MinMaxPair(MinMax),
}

impl BuiltinElement {
    pub fn tag(&self) -> BuiltinTag {
        match self {
            BuiltinElement::Nat(_) => BuiltinTag::Nat,
            BuiltinElement::NonNegRat(_) => BuiltinTag::NonNegRat,
            BuiltinElement::Bool(_) => BuiltinTag::Bool,
            BuiltinElement::TropicalRat(_) => BuiltinTag::TropicalRat,
            BuiltinElement::MinMaxPair(_) => BuiltinTag::MinMaxPair,
        }
    }
}

impl BuiltinTag {
    fn binop(
        &self,
        a: &BuiltinElement,
        b: &BuiltinElement,
        additive: bool,
    ) -> Result<BuiltinElement> {
        use BuiltinElement as E;
        fn op<S: Semiring>(s: S, x: &S::Elem, y: &S::Elem, additive: bool) -> S::Elem {
            if additive {
                s.add(x, y)
            } else {
                s.mul(x, y)
            }
        }
        Ok(match (self, a, b) {
            (BuiltinTag::Nat, E::Nat(x), E::Nat(y)) => E::Nat(op(Naturals, x, y, additive)),
            (BuiltinTag::NonNegRat, E::NonNegRat(x), E::NonNegRat(y)) => {
                E::NonNegRat(op(NonNegRationals, x, y, additive))
            }
            (BuiltinTag::Bool, E::Bool(x), E::Bool(y)) => E::Bool(op(Booleans, x, y, additive)),
            (BuiltinTag::TropicalRat, E::TropicalRat(x), E::TropicalRat(y)) => {
                E::TropicalRat(op(TropicalRationals, x, y, additive))
            }
            (BuiltinTag::MinMaxPair, E::MinMaxPair(x), E::MinMaxPair(y)) => {
                E::MinMaxPair(op(MinMaxPairs, x, y, additive))
            }
            _ => {
                return Err(Error::precondition(format!(
                    "elements {a:?}, {b:?} do not belong to {self:?}"
                )))
            }
        })
    }

    pub fn try_add(&self, a: &BuiltinElement, b: &BuiltinElement) -> Result<BuiltinElement> {
        self.binop(a, b, true)
    }

    pub fn try_mul(&self, a: &BuiltinElement, b: &BuiltinElement) -> Result<BuiltinElement> {
        self.binop(a, b, false)
    }
}

/// Panics on elements of a different instance; use [`BuiltinTag::try_add`]
/// for checked arithmetic.
impl Semiring for BuiltinTag {
    type Elem = BuiltinElement;

    fn zero(&self) -> BuiltinElement {
        match self {
            BuiltinTag::Nat => BuiltinElement::Nat(Naturals.zero()),
            BuiltinTag::NonNegRat => BuiltinElement::NonNegRat(NonNegRationals.zero()),
            BuiltinTag::Bool => BuiltinElement::Bool(false),
            BuiltinTag::TropicalRat => BuiltinElement::TropicalRat(Tropical::Infinity),
            BuiltinTag::MinMaxPair => BuiltinElement::MinMaxPair(MinMax::Point),
        }
    }
    fn one(&self) -> BuiltinElement {
        match self {
            BuiltinTag::Nat => BuiltinElement::Nat(Naturals.one()),
            BuiltinTag::NonNegRat => BuiltinElement::NonNegRat(NonNegRationals.one()),
            BuiltinTag::Bool => BuiltinElement::Bool(true),
            BuiltinTag::TropicalRat => BuiltinElement::TropicalRat(TropicalRationals.one()),
            BuiltinTag::MinMaxPair => BuiltinElement::MinMaxPair(MinMaxPairs.one()),
        }
    }
    fn add(&self, a: &BuiltinElement, b: &BuiltinElement) -> BuiltinElement {
        self.try_add(a, b).unwrap()
    }
    fn mul(&self, a: &BuiltinElement, b: &BuiltinElement) -> BuiltinElement {
        self.try_mul(a, b).unwrap()
    }
    fn is_unit(&self, a: &BuiltinElement) -> Option<bool> {
        match a {
            BuiltinElement::Nat(x) => Naturals.is_unit(x),
            BuiltinElement::NonNegRat(x) => NonNegRationals.is_unit(x),
            BuiltinElement::Bool(x) => Booleans.is_unit(x),
            BuiltinElement::TropicalRat(x) => TropicalRationals.is_unit(x),
            BuiltinElement::MinMaxPair(x) => MinMaxPairs.is_unit(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotency_of_builtins() {
        assert!(Booleans.is_idempotent());
        assert!(!Naturals.is_idempotent());
        assert!(!NonNegRationals.is_idempotent());
        assert!(TropicalRationals.is_idempotent());
        assert!(MinMaxPairs.is_idempotent());
        assert!(BuiltinTag::Bool.is_idempotent());
        assert!(!BuiltinTag::Nat.is_idempotent());
    }

    #[test]
    fn exact_natural_arithmetic() {
        let n = |k: u32| BigUint::from(k);
        assert_eq!(Naturals.add(&n(1), &n(2)), n(3));
        let big = BigUint::from(u64::MAX);
        assert_eq!(Naturals.mul(&big, &big).to_string(), "340282366920938463426481119284349108225");
    }

    #[test]
    fn tropical_operations() {
        let t = TropicalRationals;
        assert_eq!(t.add(&Tropical::finite(2), &Tropical::finite(3)), Tropical::finite(2));
        assert_eq!(t.mul(&Tropical::finite(2), &Tropical::finite(3)), Tropical::finite(5));
        assert_eq!(t.mul(&Tropical::finite(2), &t.zero()), Tropical::Infinity);
        assert_eq!(t.add(&Tropical::finite(2), &t.zero()), Tropical::finite(2));
    }

    #[test]
    fn minmax_point_is_neutral_and_absorbing() {
        let m = MinMaxPairs;
        let x = MinMax::pair(2, -3);
        assert_eq!(m.add(&x, &MinMax::Point), x);
        assert_eq!(m.mul(&x, &MinMax::Point), MinMax::Point);
        assert_eq!(m.add(&x, &MinMax::pair(1, 5)), MinMax::pair(1, 5));
        assert_eq!(m.mul(&x, &MinMax::pair(1, 5)), MinMax::pair(3, 2));
        assert_eq!(m.is_unit(&MinMax::pair(0, 7)), Some(true));
        assert_eq!(m.is_unit(&MinMax::pair(1, 0)), Some(false));
    }

    #[test]
    fn tagged_elements_refuse_mixing() {
        let a = BuiltinElement::Nat(BigUint::from(2u8));
        let b = BuiltinElement::Bool(true);
        assert!(BuiltinTag::Nat.try_add(&a, &b).is_err());
        assert_eq!(
            BuiltinTag::Nat.try_add(&a, &a).unwrap(),
            BuiltinElement::Nat(BigUint::from(4u8))
        );
    }
}
