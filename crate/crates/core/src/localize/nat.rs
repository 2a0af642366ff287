use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An element `a / Nᵏ` of `ℕ[1/N]`, kept with `k` minimal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NatFraction {
    n: u64,
    num: BigUint,
    k: u32,
}

impl NatFraction {
    pub fn new(n: u64, num: BigUint, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::precondition("cannot invert 0"));
        }
        let mut f = NatFraction { n, num, k };
        f.normalize();
        Ok(f)
    }

    pub fn from_nat(n: u64, a: u64) -> Result<Self> {
        Self::new(n, a.into(), 0)
    }

    fn normalize(&mut self) {
        if self.n == 1 {
            self.k = 0;
            return;
        }
        if self.num.is_zero() {
            self.k = 0;
            return;
        }
        let n = BigUint::from(self.n);
        while self.k > 0 {
            let (q, r) = self.num.div_rem(&n);
            if !r.is_zero() {
                break;
            }
            self.num = q;
            self.k -= 1;
        }
    }

    pub fn base(&self) -> u64 {
        self.n
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::precondition(format!(
                "ℕ[1/{}] and ℕ[1/{}] are different semirings",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let k = self.k.max(other.k);
        let n = BigUint::from(self.n);
        let num = &self.num * n.pow(k - self.k) + &other.num * n.pow(k - other.k);
        Self::new(self.n, num, k)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Self::new(self.n, &self.num * &other.num, self.k + other.k)
    }

    /// The natural number this fraction equals, if any.
    pub fn to_nat(&self) -> Option<BigUint> {
        (self.k == 0).then(|| self.num.clone())
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone().into(), BigUint::from(self.n).pow(self.k).into())
    }

    /// Image in `ℕ[1/M]` for `N | M`.
    pub fn restrict(&self, m: u64) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.n) {
            return Err(Error::precondition(format!("{} does not divide {m}", self.n)));
        }
        let factor = BigUint::from(m / self.n).pow(self.k);
        Self::new(m, &self.num * factor, self.k)
    }

    pub fn is_unit(&self) -> bool {
        nat_power_saturation_member(self.n, &self.num)
    }
}

impl fmt::Display for NatFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            0 => write!(f, "{}", self.num),
            1 => write!(f, "{}/{}", self.num, self.n),
            k => write!(f, "{}/{}^{k}", self.num, self.n),
        }
    }
}

impl fmt::Debug for NatFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NatFraction({self} in N[1/{}])", self.n)
    }
}

/// `b ∈ (Nᴺ)^sat`, i.e. `b` divides some power of `N`.
pub fn nat_power_saturation_member(n: u64, b: &BigUint) -> bool {
    if b.is_zero() {
        return n == 0;
    }
    let n = BigUint::from(n);
    let mut b = b.clone();
    loop {
        if b.is_one() {
            return true;
        }
        let g = b.gcd(&n);
        if g.is_one() {
            return false;
        }
        while (&b % &g).is_zero() {
            b /= &g;
        }
    }
}

/// In ℕ, `1 + ab = ac` forces `a | 1`, so only 1 is semi-invertible.
pub fn nat_is_semi_invertible(a: &BigUint) -> bool {
    a.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let f = NatFraction::new(6, 36u32.into(), 3).unwrap();
        assert_eq!(f.to_string(), "1/6");
        let g = NatFraction::from_nat(6, 5).unwrap();
        assert_eq!(f.mul(&g).unwrap().to_string(), "5/6");
        assert_eq!(f.add(&f).unwrap().to_string(), "2/6");
        assert_eq!(f.mul(&NatFraction::from_nat(6, 6).unwrap()).unwrap().to_nat(), Some(1u32.into()));
    }

    #[test]
    fn restriction_to_finer_base() {
        let f = NatFraction::new(2, 1u32.into(), 1).unwrap();
        let r = f.restrict(6).unwrap();
        assert_eq!(r.to_string(), "3/6");
        assert_eq!(r.to_rational(), f.to_rational());
        assert!(f.restrict(9).is_err());
    }

    #[test]
    fn saturation_of_powers_of_two() {
        for b in 1u32..200 {
            let oracle = (0..8).any(|k| (1u64 << k).is_multiple_of(b as u64));
            assert_eq!(nat_power_saturation_member(2, &b.into()), oracle, "{b}");
        }
    }

    #[test]
    fn semi_invertible_naturals_by_witness_search() {
        for a in 0u32..30 {
            let witnessed = (0u32..40).any(|b| (0u32..40).any(|c| 1 + a * b == a * c));
            assert_eq!(nat_is_semi_invertible(&a.into()), witnessed, "{a}");
        }
    }
}
