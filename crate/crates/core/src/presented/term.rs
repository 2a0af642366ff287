use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{parse_terms, Monomial};

/// ℕ-linear combination of monomials; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Term {
    nvars: usize,
    coeffs: BTreeMap<Monomial, u32>,
}

impl Term {
    pub fn zero(nvars: usize) -> Self {
        Term { nvars, coeffs: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars])
    }

    pub fn monomial(m: Monomial) -> Self {
        Term { nvars: m.len(), coeffs: BTreeMap::from([(m, 1)]) }
    }

    /// The `i`-th generator as a term.
    pub fn generator(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(m)
    }

    pub fn from_coeffs(nvars: usize, coeffs: impl IntoIterator<Item = (Monomial, u32)>) -> Result<Self> {
        let mut t = Term::zero(nvars);
        for (m, c) in coeffs {
            if m.len() != nvars {
                return Err(Error::structural(format!("exponent vector {m:?} has wrong length")));
            }
            if c > 0 {
                *t.coeffs.entry(m).or_default() += c;
            }
        }
        Ok(t)
    }

    pub fn parse(text: &str, gens: &[&str]) -> Result<Self> {
        let mut t = Term::zero(gens.len());
        for raw in parse_terms(text, gens, false)? {
            let c: u32 = match raw.coeff {
                None => 1,
                Some(c) => c
                    .parse()
                    .map_err(|_| Error::Parse(format!("{c:?} is not a natural coefficient")))?,
            };
            if c > 0 {
                *t.coeffs.entry(raw.exps).or_default() += c;
            }
        }
        Ok(t)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<Monomial, u32> {
        &self.coeffs
    }

    pub fn coeff(&self, m: &[u32]) -> u32 {
        self.coeffs.get(m).copied().unwrap_or(0)
    }

    /// Largest total degree of a monomial in the support (0 for the zero term).
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Sum of all coefficients.
    pub fn weight(&self) -> u32 {
        self.coeffs.values().sum()
    }

    /// Canonical order used to pick class representatives.
    pub fn sort_key(&self) -> (u32, u32, &BTreeMap<Monomial, u32>) {
        (self.weight(), self.degree(), &self.coeffs)
    }

    pub fn add(&self, other: &Term) -> Term {
        let mut t = self.clone();
        for (m, c) in &other.coeffs {
            *t.coeffs.entry(m.clone()).or_default() += c;
        }
        t
    }

    pub fn mul(&self, other: &Term) -> Term {
        let mut t = Term::zero(self.nvars);
        for (m, c) in &self.coeffs {
            for (n, d) in &other.coeffs {
                let e: Monomial = m.iter().zip(n).map(|(a, b)| a + b).collect();
                *t.coeffs.entry(e).or_default() += c * d;
            }
        }
        t
    }

    pub fn scale_monomial(&self, m: &[u32]) -> Term {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(n, c)| (n.iter().zip(m).map(|(a, b)| a + b).collect(), *c))
            .collect();
        Term { nvars: self.nvars, coeffs }
    }

    pub fn pow(&self, k: u32) -> Term {
        (0..k).fold(Term::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// `self − other` when `other ≤ self` coefficientwise.
    pub fn checked_sub(&self, other: &Term) -> Option<Term> {
        let mut t = self.clone();
        for (m, c) in &other.coeffs {
            let have = t.coeffs.get_mut(m)?;
            match (*have).cmp(c) {
                std::cmp::Ordering::Less => return None,
                std::cmp::Ordering::Equal => {
                    t.coeffs.remove(m);
                }
                std::cmp::Ordering::Greater => *have -= c,
            }
        }
        Some(t)
    }

    pub fn format(&self, gens: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(m, &c)| {
                let mono: Vec<String> = m
                    .iter()
                    .zip(gens)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, g)| if e == 1 { g.clone() } else { format!("{g}^{e}") })
                    .collect();
                match (mono.is_empty(), c) {
                    (true, c) => c.to_string(),
                    (false, 1) => mono.join("*"),
                    (false, c) => format!("{c}*{}", mono.join("*")),
                }
            })
            .collect();
        parts.join("+")
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = crate::poly::default_var_names(self.nvars);
        write!(f, "Term({})", self.format(&gens))
    }
}
