//! Polynomials over idempotent semifields, Boolean polynomials, and exact
//! rational polynomials.

mod parse;
mod rat;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::kernel::{Booleans, Semiring, Tropical, TropicalRationals};
pub(crate) use parse::parse_terms;
use parse::{default_vars, monomial_string};
pub(crate) use parse::default_vars as default_var_names;
pub use rat::RatPoly;

/// Membership in `K[t², t³] ⊂ K[t]`.
pub fn ktt_member(f: &RatPoly) -> bool {
    f.in_ktt()
}

/// An exponent vector; compared lexicographically.
pub type Monomial = Vec<u32>;

/// Coefficient domains for [`IdemPoly`].
pub trait IdempotentSemifield: Semiring + Copy + Default {
    fn parse_coeff(text: &str) -> Result<Self::Elem>;
    fn format_coeff(c: &Self::Elem) -> String;
}

impl IdempotentSemifield for Booleans {
    fn parse_coeff(text: &str) -> Result<bool> {
        match text {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(Error::Parse(format!("{text:?} is not a Boolean coefficient"))),
        }
    }

    fn format_coeff(c: &bool) -> String {
        u8::from(*c).to_string()
    }
}

impl IdempotentSemifield for TropicalRationals {
    fn parse_coeff(text: &str) -> Result<Tropical> {
        if text == "inf" {
            return Ok(Tropical::Infinity);
        }
        text.parse::<BigRational>()
            .map(Tropical::Finite)
            .map_err(|_| Error::Parse(format!("{text:?} is not a rational")))
    }

    fn format_coeff(c: &Tropical) -> String {
        c.to_string()
    }
}

/// Polynomial with coefficients in an idempotent semifield `F`, stored as a
/// support map without zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct IdemPoly<F: IdempotentSemifield> {
    nvars: usize,
    coeffs: BTreeMap<Monomial, F::Elem>,
}

impl<F: IdempotentSemifield> IdemPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        IdemPoly { nvars, coeffs: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], F::default().one())
    }

    pub fn monomial(exps: Monomial, c: F::Elem) -> Self {
        let mut p = Self::zero(exps.len());
        if c != F::default().zero() {
            p.coeffs.insert(exps, c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            if m.len() != nvars {
                return Err(Error::structural(format!("exponent vector {m:?} has wrong length")));
            }
            p = p.add(&Self::monomial(m, c));
        }
        Ok(p)
    }

    pub fn parse(text: &str, vars: &[&str]) -> Result<Self> {
        let terms = parse_terms(text, vars, false)?;
        let mut p = Self::zero(vars.len());
        for t in terms {
            let c = match t.coeff {
                Some(c) => F::parse_coeff(c)?,
                None => F::default().one(),
            };
            p = p.add(&Self::monomial(t.exps, c));
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> F::Elem {
        self.coeffs.get(m).cloned().unwrap_or_else(|| F::default().zero())
    }

    pub fn support(&self) -> BTreeSet<Monomial> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let f = F::default();
        let mut coeffs = self.coeffs.clone();
        for (m, c) in &other.coeffs {
            let merged = match coeffs.get(m) {
                Some(d) => f.add(d, c),
                None => c.clone(),
            };
            coeffs.insert(m.clone(), merged);
        }
        coeffs.retain(|_, c| *c != f.zero());
        IdemPoly { nvars: self.nvars, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let f = F::default();
        let mut coeffs: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in &self.coeffs {
            for (n, d) in &other.coeffs {
                let e: Monomial = m.iter().zip(n).map(|(a, b)| a + b).collect();
                let prod = f.mul(c, d);
                let merged = match coeffs.get(&e) {
                    Some(old) => f.add(old, &prod),
                    None => prod,
                };
                coeffs.insert(e, merged);
            }
        }
        coeffs.retain(|_, c| *c != f.zero());
        IdemPoly { nvars: self.nvars, coeffs }
    }

    /// The constant coefficient `f(0_F)`.
    pub fn eval_at_zero(&self) -> F::Elem {
        self.coeff(&vec![0; self.nvars])
    }

    /// Over a semifield, `f` is semi-invertible exactly when `f(0) ≠ 0`.
    pub fn is_semi_invertible(&self) -> bool {
        self.eval_at_zero() != F::default().zero()
    }
}

impl<F: IdempotentSemifield> fmt::Display for IdemPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let vars = default_vars(self.nvars);
        let one = F::default().one();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(m, c)| {
                let mono = monomial_string(m, &vars);
                match (mono.is_empty(), *c == one) {
                    (true, _) => F::format_coeff(c),
                    (false, true) => mono,
                    (false, false) => format!("{}⊙{mono}", F::format_coeff(c)),
                }
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl<F: IdempotentSemifield> fmt::Debug for IdemPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdemPoly({self})")
    }
}

/// Polynomial over `𝔹`, identified with its support.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolPoly {
    nvars: usize,
    support: BTreeSet<Monomial>,
}

impl BoolPoly {
    pub fn zero(nvars: usize) -> Self {
        BoolPoly { nvars, support: BTreeSet::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars])
    }

    pub fn monomial(exps: Monomial) -> Self {
        BoolPoly { nvars: exps.len(), support: BTreeSet::from([exps]) }
    }

    pub fn from_support(nvars: usize, support: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let support: BTreeSet<Monomial> = support.into_iter().collect();
        if let Some(m) = support.iter().find(|m| m.len() != nvars) {
            return Err(Error::structural(format!("exponent vector {m:?} has wrong length")));
        }
        Ok(BoolPoly { nvars, support })
    }

    /// Univariate polynomial `Σ_{e∈exps} x^e`.
    pub fn univariate(exps: impl IntoIterator<Item = u32>) -> Self {
        BoolPoly { nvars: 1, support: exps.into_iter().map(|e| vec![e]).collect() }
    }

    pub fn parse(text: &str, vars: &[&str]) -> Result<Self> {
        let p = IdemPoly::<Booleans>::parse(text, vars)?;
        Ok(BoolPoly { nvars: vars.len(), support: p.support() })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> &BTreeSet<Monomial> {
        &self.support
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        BoolPoly { nvars: self.nvars, support: self.support.union(&other.support).cloned().collect() }
    }

    /// Minkowski sum of supports.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let support = self
            .support
            .iter()
            .flat_map(|m| other.support.iter().map(move |n| m.iter().zip(n).map(|(a, b)| a + b).collect()))
            .collect();
        BoolPoly { nvars: self.nvars, support }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    pub fn has_constant_term(&self) -> bool {
        self.support.contains(&vec![0; self.nvars])
    }

    pub fn is_semi_invertible(&self) -> bool {
        self.has_constant_term()
    }

    /// `(ord₀ f, deg f)` of a univariate polynomial; `None` for the zero
    /// polynomial, whose pair is `(+∞, −∞)`.
    pub fn ord_deg(&self) -> Result<Option<(u32, u32)>> {
        if self.nvars != 1 {
            return Err(Error::precondition("ord/deg needs a univariate polynomial"));
        }
        let lo = self.support.first().map(|m| m[0]);
        let hi = self.support.last().map(|m| m[0]);
        Ok(lo.zip(hi))
    }

    /// Image under the homomorphism `𝔹[x₁,…,xₙ] → 𝔹` with `xⱼ ↦ point[j]`.
    pub fn eval(&self, point: &[bool]) -> Result<bool> {
        if point.len() != self.nvars {
            return Err(Error::precondition(format!("{} values for {} variables", point.len(), self.nvars)));
        }
        Ok(self.support.iter().any(|m| m.iter().zip(point).all(|(&e, &v)| e == 0 || v)))
    }

    pub fn to_idem(&self) -> IdemPoly<Booleans> {
        IdemPoly::from_terms(self.nvars, self.support.iter().map(|m| (m.clone(), true)))
            .expect("support vectors have the right length")
    }
}

impl fmt::Display for BoolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_idem(), f)
    }
}

impl fmt::Debug for BoolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Trop = IdemPoly<TropicalRationals>;

    #[test]
    fn constant_coefficients() {
        let f = BoolPoly::parse("1+x", &["x"]).unwrap();
        assert!(f.to_idem().eval_at_zero());
        let g = IdemPoly::<Booleans>::parse("x*y", &["x", "y"]).unwrap();
        assert!(!g.eval_at_zero());
        let t = Trop::parse("2+3⊙x", &["x"]).unwrap();
        assert_eq!(t.eval_at_zero(), Tropical::finite(2));
    }

    #[test]
    fn semi_invertibility_of_examples() {
        assert!(BoolPoly::parse("1+x", &["x"]).unwrap().is_semi_invertible());
        assert!(!BoolPoly::parse("x", &["x"]).unwrap().is_semi_invertible());
        assert!(BoolPoly::one(1).is_semi_invertible());
        assert!(Trop::parse("5+x", &["x"]).unwrap().is_semi_invertible());
        assert!(!Trop::parse("inf+x", &["x"]).unwrap().is_semi_invertible());
    }

    #[test]
    fn ord_deg_examples() {
        assert_eq!(BoolPoly::parse("x^2+x^5", &["x"]).unwrap().ord_deg().unwrap(), Some((2, 5)));
        assert_eq!(BoolPoly::one(1).ord_deg().unwrap(), Some((0, 0)));
        assert_eq!(BoolPoly::zero(1).ord_deg().unwrap(), None);
        assert!(BoolPoly::zero(2).ord_deg().is_err());
    }

    #[test]
    fn tropical_product() {
        let f = Trop::parse("1+x", &["x"]).unwrap();
        let g = Trop::parse("2+x", &["x"]).unwrap();
        // (1 ⊕ x)(2 ⊕ x) = 3 ⊕ min(1,2)x ⊕ x²
        assert_eq!(f.mul(&g).to_string(), "3+1⊙x+x^2");
    }

    #[test]
    fn display_round_trip() {
        let f = BoolPoly::parse("x^2*y+1+y", &["x", "y"]).unwrap();
        assert_eq!(f.to_string(), "1+y+x^2*y");
        assert_eq!(BoolPoly::parse(&f.to_string(), &["x", "y"]).unwrap(), f);
        assert_eq!(BoolPoly::zero(1).to_string(), "0");
    }

    fn bool_poly(nvars: usize) -> impl Strategy<Value = BoolPoly> {
        prop::collection::btree_set(prop::collection::vec(0u32..4, nvars), 0..5)
            .prop_map(move |s| BoolPoly::from_support(nvars, s).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn minkowski_product_matches_convolution(f in bool_poly(2), g in bool_poly(2)) {
            let via_idem = f.to_idem().mul(&g.to_idem());
            prop_assert_eq!(f.mul(&g).to_idem(), via_idem);
        }

        #[test]
        fn semi_invertibility_is_multiplicative(f in bool_poly(2), g in bool_poly(2)) {
            prop_assert_eq!(
                f.mul(&g).is_semi_invertible(),
                f.is_semi_invertible() && g.is_semi_invertible()
            );
        }

        #[test]
        fn ord_and_deg_are_additive(f in bool_poly(1), g in bool_poly(1)) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let (a, b) = f.ord_deg().unwrap().unwrap();
            let (c, d) = g.ord_deg().unwrap().unwrap();
            prop_assert_eq!(f.mul(&g).ord_deg().unwrap(), Some((a + c, b + d)));
        }
    }
}
