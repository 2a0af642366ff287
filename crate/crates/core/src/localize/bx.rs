use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::kernel::{MinMax, MinMaxPairs, Semiring};
use crate::poly::BoolPoly;
use crate::report::Report;

/// A fraction `f/g` in `𝔹[x]◇` with `g` semi-invertible (`g(0) = 1`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BxFraction {
    num: BoolPoly,
    den: BoolPoly,
}

impl BxFraction {
    pub fn new(num: BoolPoly, den: BoolPoly) -> Result<Self> {
        if num.nvars() != 1 || den.nvars() != 1 {
            return Err(Error::precondition("fractions of 𝔹[x] need univariate polynomials"));
        }
        if !den.is_semi_invertible() {
            return Err(Error::precondition(format!("denominator {den} is not semi-invertible")));
        }
        Ok(BxFraction { num, den })
    }

    pub fn from_poly(f: BoolPoly) -> Result<Self> {
        Self::new(f, BoolPoly::one(1))
    }

    pub fn num(&self) -> &BoolPoly {
        &self.num
    }

    pub fn den(&self) -> &BoolPoly {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        BxFraction {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        BxFraction { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }
    }

    /// `f/g ↦ (ord₀ f, deg f − deg g)`, and `0/g ↦ (+∞, −∞)`.
    pub fn to_minmax(&self) -> MinMax {
        match self.num.ord_deg().expect("univariate") {
            None => MinMax::Point,
            Some((ord, deg)) => {
                let (_, dg) = self.den.ord_deg().expect("univariate").expect("nonzero denominator");
                MinMax::Pair { ord: ord.into(), deg: BigInt::from(deg) - BigInt::from(dg) }
            }
        }
    }

    /// A witness `u = 1 + x + … + xᵈ` with `f₁g₂u = f₂g₁u`, when the two
    /// fractions have the same image.
    pub fn equality_witness(&self, other: &Self) -> Option<BoolPoly> {
        let l = self.num.mul(&other.den);
        let r = other.num.mul(&self.den);
        let d = match (l.ord_deg().ok()?, r.ord_deg().ok()?) {
            (None, None) => 0,
            (Some((o1, d1)), Some((o2, d2))) => (d1 - o1).max(d2 - o2),
            _ => return None,
        };
        let u = BoolPoly::univariate(0..=d);
        (l.mul(&u) == r.mul(&u)).then_some(u)
    }
}

/// A fraction mapping to the given element.
///
/// `(n, d)` with `d ≥ n` comes from `xⁿ(1 + x^(d−n))/1`, and with `d < n`
/// from `xⁿ/(1 + x^(n−d))`.
pub fn bx_preimage(target: &MinMax) -> Result<BxFraction> {
    match target {
        MinMax::Point => BxFraction::from_poly(BoolPoly::zero(1)),
        MinMax::Pair { ord, deg } => {
            let n = ord
                .to_u32()
                .ok_or_else(|| Error::resource(format!("order {ord} too large")))?;
            let d = deg
                .to_i64()
                .ok_or_else(|| Error::resource(format!("degree {deg} too large")))?;
            let (n64, d) = (n as i64, d);
            if d >= n64 {
                let gap = u32::try_from(d - n64).map_err(|_| Error::resource("degree too large"))?;
                BxFraction::from_poly(BoolPoly::univariate([n, n + gap]))
            } else {
                let gap = u32::try_from(n64 - d).map_err(|_| Error::resource("degree too large"))?;
                BxFraction::new(BoolPoly::univariate([n]), BoolPoly::univariate([0, gap]))
            }
        }
    }
}

/// `f/g ↦ (ord₀ f, deg f − deg g)`, the isomorphism `𝔹[x]◇ → (ℕ_min × ℤ_max) ∪ {(+∞, −∞)}`.
pub fn bx_hardening_iso(frac: &BxFraction) -> MinMax {
    frac.to_minmax()
}

/// Searches every `u` with `u(0) = 1` and `deg u ≤ bound` for `f₁g₂u = f₂g₁u`.
pub fn bounded_witness(a: &BxFraction, b: &BxFraction, bound: u32) -> Option<BoolPoly> {
    let l = a.num.mul(&b.den);
    let r = b.num.mul(&a.den);
    (0u64..1 << bound).find_map(|mask| {
        let u = BoolPoly::univariate(std::iter::once(0).chain((1..=bound).filter(|i| mask >> (i - 1) & 1 == 1)));
        (l.mul(&u) == r.mul(&u)).then_some(u)
    })
}

fn max_degree(fracs: &[&BxFraction]) -> u32 {
    fracs
        .iter()
        .flat_map(|f| [&f.num, &f.den])
        .filter_map(|p| p.ord_deg().ok().flatten())
        .map(|(_, d)| d)
        .max()
        .unwrap_or(0)
}

fn random_fraction(rng: &mut ChaCha8Rng, max_deg: u32) -> BxFraction {
    let bits = |mask: u32| (0..=max_deg).filter(move |i| mask >> i & 1 == 1);
    let num = rng.random_range(0..1u32 << (max_deg + 1));
    let den = rng.random_range(0..1u32 << (max_deg + 1)) | 1;
    BxFraction::new(BoolPoly::univariate(bits(num)), BoolPoly::univariate(bits(den))).expect("constant term set")
}

/// Sample sizes and seed for [`bx_hardening_verify`].
#[derive(Clone, Copy, Debug)]
pub struct BxSampling {
    pub pairs: usize,
    pub targets: usize,
    pub max_degree: u32,
    pub seed: u64,
}

impl Default for BxSampling {
    fn default() -> Self {
        BxSampling { pairs: 1000, targets: 200, max_degree: 4, seed: 0x5eed }
    }
}

/// Randomized check that [`bx_hardening_iso`] is a bijective homomorphism.
///
/// Fraction equality is cross-checked by [`bounded_witness`] with bound twice
/// the largest degree involved.
pub fn bx_hardening_verify(cfg: BxSampling) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let s = MinMaxPairs;
    let mut hom_failures = Vec::new();
    for _ in 0..cfg.pairs {
        let (f, g) = (random_fraction(&mut rng, cfg.max_degree), random_fraction(&mut rng, cfg.max_degree));
        let (x, y) = (bx_hardening_iso(&f), bx_hardening_iso(&g));
        if bx_hardening_iso(&f.add(&g)) != s.add(&x, &y) || bx_hardening_iso(&f.mul(&g)) != s.mul(&x, &y) {
            hom_failures.push(json!([f.to_string(), g.to_string()]));
        }
    }
    let units = bx_hardening_iso(&BxFraction::from_poly(BoolPoly::one(1)).expect("unit denominator"))
        == s.one()
        && bx_hardening_iso(&BxFraction::from_poly(BoolPoly::zero(1)).expect("unit denominator")) == s.zero();
    let hom = Report::new(
        format!("homomorphism on {} random pairs", cfg.pairs),
        hom_failures.is_empty() && units,
        hom_failures,
    );

    // distinct images must come from fractions no witness identifies, and
    // equal images from fractions some witness identifies
    let (mut distinct, mut equal, mut failures) = (0, 0, Vec::new());
    while distinct < cfg.pairs || equal < cfg.pairs {
        let (f, g) = (random_fraction(&mut rng, cfg.max_degree), random_fraction(&mut rng, cfg.max_degree));
        let same = bx_hardening_iso(&f) == bx_hardening_iso(&g);
        let slot = if same { &mut equal } else { &mut distinct };
        if *slot >= cfg.pairs {
            continue;
        }
        *slot += 1;
        let bound = 2 * max_degree(&[&f, &g]);
        if bounded_witness(&f, &g, bound).is_some() != same || (same && f.equality_witness(&g).is_none()) {
            failures.push(json!({ "f": f.to_string(), "g": g.to_string(), "same_image": same }));
        }
    }
    let injective = Report::new(
        format!("injective: {} distinct-image pairs have no witness, {} equal-image pairs have one", cfg.pairs, cfg.pairs),
        failures.is_empty(),
        failures,
    );

    let mut misses = Vec::new();
    let mut targets: Vec<MinMax> = (0..cfg.targets)
        .map(|_| MinMax::pair(rng.random_range(0..64), rng.random_range(-64..64)))
        .collect();
    targets.push(MinMax::Point);
    for t in &targets {
        match bx_preimage(t) {
            Ok(f) if bx_hardening_iso(&f) == *t => {}
            _ => misses.push(json!(t.to_string())),
        }
    }
    let surjective = Report::new(
        format!("surjective onto {} sampled pairs and (+inf,-inf)", cfg.targets),
        misses.is_empty(),
        misses,
    );
    Report::all("B[x]◇ ≅ (N_min x Z_max) ∪ {(+inf,-inf)}", vec![hom, injective, surjective])
}

impl fmt::Display for BxFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for BxFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BxFraction({self})")
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BoolPoly {
        BoolPoly::parse(s, &["x"]).unwrap()
    }

    #[test]
    fn images_of_examples() {
        let f = BxFraction::new(p("x^2+x^5"), p("1+x^3")).unwrap();
        assert_eq!(f.to_minmax(), MinMax::pair(2, 2));
        assert_eq!(BxFraction::from_poly(p("1")).unwrap().to_minmax(), MinMax::pair(0, 0));
        assert_eq!(BxFraction::new(p("0"), p("1+x")).unwrap().to_minmax(), MinMax::Point);
        assert!(BxFraction::new(p("1"), p("x")).is_err());
    }

    #[test]
    fn preimages_round_trip() {
        for n in 0..6 {
            for d in -6..8 {
                let t = MinMax::pair(n, d);
                assert_eq!(bx_preimage(&t).unwrap().to_minmax(), t);
            }
        }
        assert_eq!(bx_preimage(&MinMax::Point).unwrap().to_minmax(), MinMax::Point);
    }

    #[test]
    fn witness_for_equal_images() {
        let a = BxFraction::new(p("x+x^3"), p("1")).unwrap();
        let b = BxFraction::new(p("x+x^4"), p("1+x")).unwrap();
        assert_eq!(a.to_minmax(), b.to_minmax());
        assert!(a.equality_witness(&b).is_some());
        let c = BxFraction::new(p("x"), p("1")).unwrap();
        assert!(a.equality_witness(&c).is_none());
    }

    #[test]
    fn bounded_witness_agrees_with_the_closed_form() {
        let a = BxFraction::new(p("x+x^3"), p("1")).unwrap();
        let b = BxFraction::new(p("x+x^4"), p("1+x")).unwrap();
        assert!(bounded_witness(&a, &b, 8).is_some());
        let c = BxFraction::new(p("x"), p("1")).unwrap();
        assert!(bounded_witness(&a, &c, 8).is_none());
    }

    #[test]
    fn sampled_iso() {
        let r = bx_hardening_verify(BxSampling { pairs: 100, targets: 20, ..Default::default() });
        assert!(r.passed(), "{}", r.to_json());
    }
}
