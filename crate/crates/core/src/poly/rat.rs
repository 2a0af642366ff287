use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::parse_terms;
use crate::error::{Error, Result};

/// Univariate polynomial in `t` with exact rational coefficients.
///
/// `coeffs[k]` is the coefficient of `tᵏ`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// `c·tᵏ`.
    pub fn term(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Parses strings such as `"t^4+t^3+t^2"` or `"3/2*t - 1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = RatPoly::zero();
        for t in parse_terms(text, &["t"], true)? {
            let mut c = match t.coeff {
                Some(c) => c
                    .parse::<BigRational>()
                    .map_err(|_| Error::Parse(format!("{c:?} is not a rational")))?,
                None => BigRational::one(),
            };
            if t.negative {
                c = -c;
            }
            p = &p + &RatPoly::term(c, t.exps[0] as usize);
        }
        Ok(p)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// Membership in `K[t², t³]`: the coefficient of `t` vanishes.
    pub fn in_ktt(&self) -> bool {
        self.coeff(1).is_zero()
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::precondition("division by the zero polynomial"))?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = &rem[k] / &lead;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] -= &c * d;
            }
            quot[k - dd] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("b is nonzero").1;
            a = b;
            b = r;
        }
        match a.coeffs.last().cloned() {
            Some(lead) => a.scale(&lead.recip()),
            None => a,
        }
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl std::ops::Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl std::ops::Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl std::ops::Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if !first || c.is_negative() {
                f.write_str(if first { "-" } else { sign })?;
            }
            let a = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            match (a.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => f.write_str(&mono)?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{mono}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl From<BigInt> for RatPoly {
    fn from(c: BigInt) -> Self {
        RatPoly::new(vec![BigRational::from_integer(c)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RatPoly {
        RatPoly::parse(s).unwrap()
    }

    #[test]
    fn ktt_membership() {
        assert!(p("t^3+t^2").in_ktt());
        assert!(!p("t").in_ktt());
        assert!(!(&p("t-1") * &p("t-1")).in_ktt());
        assert_eq!(&p("t-1") * &p("t-1"), p("t^2-2*t+1"));
    }

    #[test]
    fn division_and_gcd() {
        let (q, r) = p("t^3+t^2").div_rem(&p("t^2-1")).unwrap();
        assert_eq!(q, p("t+1"));
        assert_eq!(r, p("t+1"));
        assert_eq!(p("t^3+t^2").gcd(&p("t^2-1")), p("t+1"));
        assert!(p("t").div_rem(&RatPoly::zero()).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p("t^2-2*t+1").to_string(), "t^2-2*t+1");
        assert_eq!(p("-t").to_string(), "-t");
        assert_eq!(p("3/2*t^3").to_string(), "3/2*t^3");
    }
}
