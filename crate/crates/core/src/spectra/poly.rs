use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::kernel::construct;
use crate::poly::BoolPoly;
use crate::report::Report;

use super::sp_enumerate;

/// Largest variable count accepted by [`BoolPolySpModel::build`].
pub const MAX_POLY_SP_VARS: usize = 4;

/// Prime kernels of `𝔹[x₁,…,xₙ]`, computed as kernels of the homomorphisms
/// `xⱼ ↦ eⱼ ∈ 𝔹` and recorded on the universe of polynomials with
/// squarefree support.
///
/// Universe element `m` has monomial `i` in its support when bit `i` of `m`
/// is set; monomial `i` is `∏_{j : bit j of i} x_{j+1}`.
#[derive(Clone, Debug)]
pub struct BoolPolySpModel {
    pub nvars: usize,
    /// One assignment per hom, in binary order.
    pub assignments: Vec<Vec<bool>>,
    /// `kernels[h][m]` is whether universe element `m` lies in the kernel of hom `h`.
    pub kernels: Vec<Vec<bool>>,
}

pub fn universe_poly(nvars: usize, m: usize) -> BoolPoly {
    let monos = 1usize << nvars;
    let support = (0..monos)
        .filter(|i| m >> i & 1 == 1)
        .map(|i| (0..nvars).map(|j| (i >> j & 1) as u32).collect());
    BoolPoly::from_support(nvars, support).expect("exponent vectors of length nvars")
}

/// Membership in the monomial ideal `⟨xⱼ⟩_{j ∈ J}`.
pub fn monomial_ideal_contains(f: &BoolPoly, vars: &[usize]) -> bool {
    f.support().iter().all(|m| vars.iter().any(|&j| m[j] > 0))
}

impl BoolPolySpModel {
    pub fn build(nvars: usize) -> Result<Self> {
        if nvars > MAX_POLY_SP_VARS {
            return Err(Error::resource(format!("{nvars} variables exceed {MAX_POLY_SP_VARS}")));
        }
        let assignments: Vec<Vec<bool>> =
            (0..1usize << nvars).map(|e| (0..nvars).map(|j| e >> j & 1 == 1).collect()).collect();
        let size = 1usize << (1usize << nvars);
        let polys: Vec<BoolPoly> = (0..size).map(|m| universe_poly(nvars, m)).collect();
        let kernels = assignments
            .iter()
            .map(|e| polys.iter().map(|f| f.eval(e).map(|v| !v)).collect::<Result<Vec<bool>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(BoolPolySpModel { nvars, assignments, kernels })
    }

    pub fn distinct_kernels(&self) -> usize {
        self.kernels.iter().collect::<HashSet<_>>().len()
    }

    /// `J = {j | eⱼ = 0}` for the hom with the given index.
    pub fn zero_vars(&self, h: usize) -> Vec<usize> {
        (0..self.nvars).filter(|&j| !self.assignments[h][j]).collect()
    }

    /// Whether kernel `h` equals `⟨xⱼ⟩_{j ∈ J}` on the universe.
    pub fn is_monomial_kernel(&self, h: usize) -> bool {
        let vars = self.zero_vars(h);
        self.kernels[h]
            .iter()
            .enumerate()
            .all(|(m, &inside)| inside == monomial_ideal_contains(&universe_poly(self.nvars, m), &vars))
    }
}

/// `|Sp 𝔹[x₁,…,xₙ]| = 2ⁿ` with points `⟨xⱼ⟩_{j∈J}`, for `n = 1..=max_vars`.
pub fn poly_sp_verify(max_vars: usize, samples: usize, seed: u64) -> Result<Report> {
    let mut parts = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1..=max_vars {
        let model = BoolPolySpModel::build(n)?;
        let size = model.kernels[0].len();
        // evaluation is additive and multiplicative on sampled pairs
        let mut hom_failures = 0;
        for _ in 0..samples {
            let (f, g) = (universe_poly(n, rng.random_range(0..size)), universe_poly(n, rng.random_range(0..size)));
            for e in &model.assignments {
                let (x, y) = (f.eval(e)?, g.eval(e)?);
                if f.add(&g).eval(e)? != (x || y) || f.mul(&g).eval(e)? != (x && y) {
                    hom_failures += 1;
                }
            }
        }
        let count = model.distinct_kernels();
        let monomial = (0..model.kernels.len()).filter(|&h| !model.is_monomial_kernel(h)).count();
        // small cases are rechecked by the subset scan of the quotient by xⱼ² ∼ xⱼ
        let scanned = if n <= 2 {
            Some(sp_enumerate(&construct::bool_boolean_algebra_poly(n as u32), 16)?.len())
        } else {
            None
        };
        parts.push(Report::new(
            format!("Sp B[x1..x{n}] has 2^{n} points, all monomial kernels"),
            hom_failures == 0 && count == 1 << n && monomial == 0 && scanned.is_none_or(|s| s == 1 << n),
            vec![json!({
                "universe": size,
                "kernels": count,
                "non_monomial": monomial,
                "hom_failures": hom_failures,
                "subset_scan": scanned,
            })],
        ));
    }
    Ok(Report::all(format!("kernels of homs B[x1..xn] -> B for n <= {max_vars}"), parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_encoding() {
        assert_eq!(universe_poly(2, 0b1001), BoolPoly::parse("1+x*y", &["x", "y"]).unwrap());
        assert!(monomial_ideal_contains(&universe_poly(2, 0b1010), &[0]));
        assert!(!monomial_ideal_contains(&universe_poly(2, 0b1011), &[0]));
    }

    #[test]
    fn small_models() {
        for n in 1..=3 {
            let m = BoolPolySpModel::build(n).unwrap();
            assert_eq!(m.distinct_kernels(), 1 << n);
            assert!((0..1 << n).all(|h| m.is_monomial_kernel(h)));
        }
        assert!(BoolPolySpModel::build(5).is_err());
    }

    #[test]
    fn report_passes() {
        assert!(poly_sp_verify(2, 50, 1).unwrap().passed());
    }
}
