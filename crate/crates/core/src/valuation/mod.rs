//! G-valuations, the idempotent semiring `M_R(A)` of subsemimodules, the
//! universal valuation `v_R` with its universal property, and the
//! homeomorphism `Sp M_R(A) ≅ Spec A`.

mod lattice;

use serde_json::json;

use crate::error::{Error, Result};
use crate::ideals::{is_prime, prime_ideals, DEFAULT_IDEAL_LIMIT};
use crate::kernel::{construct, enumerate_homs, FiniteSemiring, Homomorphism};
use crate::report::Report;
use crate::spectra::{sp_via_homs, spec_enumerate};
use crate::subset::Subset;

pub use lattice::{
    build_mra, mra_equalizer_check, mra_localization_iso_check, mra_presheaf_gap, SubmoduleLattice,
    DEFAULT_MODULE_LIMIT,
};

fn require_idempotent(s: &FiniteSemiring) -> Result<()> {
    if !s.is_idempotent() {
        return Err(Error::precondition(format!("{} is not idempotent", s.label())));
    }
    Ok(())
}

/// `v(0)=0`, `v(1)=1`, `v(ab)=v(a)v(b)` and `v(a+b) ⪯ v(a)+v(b)`, checked
/// exhaustively.
pub fn is_g_valuation(a: &FiniteSemiring, s: &FiniteSemiring, v: &[usize]) -> Result<bool> {
    require_idempotent(s)?;
    if v.len() != a.size() || v.iter().any(|&y| y >= s.size()) {
        return Err(Error::precondition("map does not fit the source and target"));
    }
    let leq = |x: usize, y: usize| s.add(x, y) == y;
    Ok(v[a.zero()] == s.zero()
        && v[a.one()] == s.one()
        && a.elements().all(|x| {
            a.elements().all(|y| v[a.mul(x, y)] == s.mul(v[x], v[y]) && leq(v[a.add(x, y)], s.add(v[x], v[y])))
        }))
}

/// Every G-valuation `A → S`, in lexicographic order of the value tables.
pub fn g_valuations(a: &FiniteSemiring, s: &FiniteSemiring) -> Result<Vec<Vec<usize>>> {
    require_idempotent(s)?;
    let n = a.size();
    let mut out = Vec::new();
    let mut v: Vec<Option<usize>> = vec![None; n];
    fn consistent(a: &FiniteSemiring, s: &FiniteSemiring, v: &[Option<usize>], x: usize) -> bool {
        a.elements().all(|y| {
            let Some(vy) = v[y] else { return true };
            let vx = v[x].expect("just assigned");
            let prod_ok = v[a.mul(x, y)].is_none_or(|p| p == s.mul(vx, vy));
            let sum_ok = v[a.add(x, y)].is_none_or(|q| s.add(q, s.add(vx, vy)) == s.add(vx, vy));
            prod_ok && sum_ok
        })
    }
    fn rec(
        a: &FiniteSemiring,
        s: &FiniteSemiring,
        x: usize,
        v: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if x == a.size() {
            out.push(v.iter().map(|y| y.expect("complete")).collect());
            return;
        }
        if v[x].is_some() {
            rec(a, s, x + 1, v, out);
            return;
        }
        for y in s.elements() {
            v[x] = Some(y);
            // products and sums involving x are checked once their operands are assigned
            if (0..=x).chain(x + 1..a.size()).all(|z| v[z].is_none() || consistent(a, s, v, z)) {
                rec(a, s, x + 1, v, out);
            }
        }
        v[x] = None;
    }
    if a.zero() == a.one() {
        if s.zero() == s.one() {
            out.push(vec![s.zero()]);
        }
        return Ok(out);
    }
    v[a.zero()] = Some(s.zero());
    v[a.one()] = Some(s.one());
    if consistent(a, s, &v, a.zero()) && consistent(a, s, &v, a.one()) {
        rec(a, s, 0, &mut v, &mut out);
    }
    Ok(out)
}

/// `Val(A, 𝔹) ↔ Spec A` via kernels and characteristic functions.
#[derive(Clone, Debug)]
pub struct ValSpecBijection {
    pub valuations: Vec<Vec<usize>>,
    pub primes: Vec<Subset>,
    /// `kernel_of[i]` is the index in `primes` of `ker(valuations[i])`.
    pub kernel_of: Vec<usize>,
}

/// `χ_p`: `0` on `p`, `1` off it (as indices of [`construct::boolean`]).
pub fn characteristic(a: &FiniteSemiring, p: Subset) -> Vec<usize> {
    a.elements().map(|x| usize::from(!p.contains(x))).collect()
}

pub fn val_spec_bijection(a: &FiniteSemiring) -> Result<ValSpecBijection> {
    let b = construct::boolean();
    let valuations = g_valuations(a, &b)?;
    let primes = prime_ideals(a, DEFAULT_IDEAL_LIMIT)?;
    let mut kernel_of = Vec::new();
    for v in &valuations {
        let ker: Subset = a.elements().filter(|&x| v[x] == b.zero()).collect();
        let i = primes
            .iter()
            .position(|&p| p == ker)
            .ok_or_else(|| Error::Inconsistent(format!("kernel {:?} is not prime", ker.to_vec())))?;
        kernel_of.push(i);
    }
    for (i, &p) in primes.iter().enumerate() {
        let chi = characteristic(a, p);
        let j = valuations
            .iter()
            .position(|v| *v == chi)
            .ok_or_else(|| Error::Inconsistent(format!("χ of prime {:?} is not a G-valuation", p.to_vec())))?;
        if kernel_of[j] != i {
            return Err(Error::Inconsistent("kernel and characteristic maps are not inverse".into()));
        }
    }
    if valuations.len() != primes.len() {
        return Err(Error::Inconsistent("Val(A, B) and Spec A differ in size".into()));
    }
    Ok(ValSpecBijection { valuations, primes, kernel_of })
}

/// `A_v = {a | v(a) ⪯ 1}`, verified to be a subsemiring.
pub fn integral_part(a: &FiniteSemiring, s: &FiniteSemiring, v: &[usize]) -> Result<Subset> {
    if !is_g_valuation(a, s, v)? {
        return Err(Error::precondition("not a G-valuation"));
    }
    let av: Subset = a.elements().filter(|&x| s.add(v[x], s.one()) == s.one()).collect();
    let closed = av.contains(a.zero())
        && av.contains(a.one())
        && av.iter().all(|x| av.iter().all(|y| av.contains(a.add(x, y)) && av.contains(a.mul(x, y))));
    if !closed {
        return Err(Error::Inconsistent("integral part is not a subsemiring".into()));
    }
    Ok(av)
}

/// The map `ℕ → 𝔹` vanishing off `1` satisfies the axioms on `0..=bound`;
/// its kernel `ℕ∖{1}` is not subtractive (`1 + 2 = 3`).
pub fn nat_max_valuation_check(bound: u64) -> Report {
    let v = |n: u64| n == 1;
    let mut bad = None;
    'outer: for x in 0..=bound {
        for y in 0..=bound {
            let mult = v(x * y) == (v(x) && v(y));
            let sub = !v(x + y) || v(x) || v(y);
            if !(mult && sub) {
                bad = Some((x, y));
                break 'outer;
            }
        }
    }
    let non_subtractive = !v(2) && !v(3) && v(1);
    Report::new(
        "v(n) = [n = 1] is a G-valuation on N with non-subtractive kernel",
        bad.is_none() && !v(0) && v(1) && non_subtractive,
        vec![json!({ "bound": bound, "violation": bad, "witness": [1, 2, 3] })],
    )
}

/// The factorization `v = f ∘ v_R` with its uniqueness certificate.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub f: Homomorphism,
    /// Homomorphisms `M_R(A) → S` enumerated for the certificate.
    pub homs_checked: usize,
    /// Number of them satisfying `g ∘ v_R = v`; exactly one when unique.
    pub matching: usize,
}

impl Factorization {
    pub fn is_unique(&self) -> bool {
        self.matching == 1
    }
}

/// `f(⟨a₁,…,aₙ⟩_R) = Σ v(aᵢ)`, checked independent of the generating set.
pub fn factor_through_universal(lattice: &SubmoduleLattice, s: &FiniteSemiring, v: &[usize]) -> Result<Factorization> {
    let a = lattice.base();
    if !is_g_valuation(a, s, v)? {
        return Err(Error::precondition("not a G-valuation"));
    }
    let av = integral_part(a, s, v)?;
    if !lattice.scalars().is_subset(av) {
        return Err(Error::precondition("the scalars are not integral for v"));
    }
    let m = &lattice.semiring;
    let mut map = Vec::with_capacity(m.size());
    for (i, &module) in lattice.modules().iter().enumerate() {
        let all = s.sum(module.iter().map(|x| v[x]));
        let gens = lattice.generators(i);
        let from_gens = s.sum(gens.iter().map(|&x| v[x]));
        if all != from_gens {
            return Err(Error::Inconsistent(format!("f is not well defined on module {i}")));
        }
        map.push(all);
    }
    let f = Homomorphism { map };
    if !crate::kernel::is_homomorphism(m, s, &f.map) {
        return Err(Error::Inconsistent("f is not a homomorphism".into()));
    }
    if a.elements().any(|x| f.apply(lattice.v_r(x)) != v[x]) {
        return Err(Error::Inconsistent("f ∘ v_R differs from v".into()));
    }
    let homs = enumerate_homs(m, s);
    let matching = homs.iter().filter(|g| a.elements().all(|x| g.apply(lattice.v_r(x)) == v[x])).count();
    Ok(Factorization { f, homs_checked: homs.len(), matching })
}

/// `v_R*: Sp M_R(A) → Spec A` is a bijection with inverse
/// `q ↦ {M | M ⊆ q}`, maps `D̃(⟨a⟩)` onto `D(a)`, and
/// `D̃(⟨a₁,…,aₙ⟩) = ⋃ D̃(⟨aᵢ⟩)`.
pub fn vstar_homeo_check(lattice: &SubmoduleLattice, limit: usize) -> Result<Report> {
    let a = lattice.base();
    let m = &lattice.semiring;
    let spec = spec_enumerate(a, limit)?;
    let sp = sp_via_homs(m)?;
    let vr: Vec<usize> = a.elements().map(|x| lattice.v_r(x)).collect();
    let mut map = Vec::new();
    let mut lands = true;
    for &p in &sp.points {
        let pre: Subset = a.elements().filter(|&x| p.contains(vr[x])).collect();
        match spec.index_of(pre) {
            Some(i) => map.push(i),
            None => {
                lands = false;
                map.push(usize::MAX);
            }
        }
    }
    let image: Subset = map.iter().copied().filter(|&i| i != usize::MAX).collect();
    let bijective = lands && image == spec.all() && image.len() == sp.len();
    let inverse_ok = bijective
        && spec.points.iter().all(|&q| {
            let pq: Subset = (0..m.size()).filter(|&i| lattice.modules()[i].is_subset(q)).collect();
            sp.index_of(pq).is_some_and(|j| spec.points[map[j]] == q)
        });
    let open_ok = bijective
        && a.elements().all(|x| {
            let img: Subset = sp.d(vr[x]).iter().map(|j| map[j]).collect();
            img == spec.d(x)
        });
    let basis_ok = (0..m.size()).all(|i| {
        let union = lattice.modules()[i].iter().fold(Subset::empty(), |acc, x| acc.union(sp.d(vr[x])));
        let from_gens = lattice.generators(i).iter().fold(Subset::empty(), |acc, &x| acc.union(sp.d(vr[x])));
        sp.d(i) == union && union == from_gens
    });
    let prime_ok = spec.points.iter().all(|&q| is_prime(a, q));
    Ok(Report::new(
        format!("v_R*: Sp M_R({0}) → Spec {0} is a homeomorphism", a.label()),
        bijective && inverse_ok && open_ok && basis_ok && prime_ok,
        vec![json!({
            "map": map,
            "sp_points": sp.len(),
            "spec_points": spec.len(),
            "bijective": bijective,
            "inverse": inverse_ok,
            "open": open_ok,
            "basis": basis_ok,
        })],
    ))
}

/// `v* : Sp S → Spec A`, `p ↦ v⁻¹(p)`, is well defined and
/// `(v*)⁻¹(D(a)) = D̃(v(a))`.
pub fn pullback_is_continuous(a: &FiniteSemiring, s: &FiniteSemiring, v: &[usize], limit: usize) -> Result<bool> {
    if !is_g_valuation(a, s, v)? {
        return Err(Error::precondition("not a G-valuation"));
    }
    let spec = spec_enumerate(a, limit)?;
    let sp = sp_via_homs(s)?;
    let mut map = Vec::new();
    for &p in &sp.points {
        let pre: Subset = a.elements().filter(|&x| p.contains(v[x])).collect();
        match spec.index_of(pre) {
            Some(i) => map.push(i),
            None => return Ok(false),
        }
    }
    Ok(a.elements().all(|x| {
        let pre: Subset = (0..map.len()).filter(|&j| spec.d(x).contains(map[j])).collect();
        pre == sp.d(v[x])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{enumerate_homs, is_homomorphism};

    #[test]
    fn boolean_valuations() {
        let b = construct::boolean();
        assert_eq!(val_spec_bijection(&b).unwrap().valuations.len(), 1);
        let line = construct::bool_idempotent_line();
        let bij = val_spec_bijection(&line).unwrap();
        assert_eq!(bij.valuations.len(), 3);
        assert_eq!(bij.primes.len(), spec_enumerate(&line, 16).unwrap().len());
    }

    #[test]
    fn bijection_on_the_corpus() {
        for a in construct::corpus() {
            val_spec_bijection(&a).unwrap();
        }
    }

    #[test]
    fn homs_are_valuations() {
        let b = construct::boolean();
        for a in construct::corpus() {
            for h in enumerate_homs(&a, &b) {
                assert!(is_g_valuation(&a, &b, &h.map).unwrap());
                assert_eq!(integral_part(&a, &b, &h.map).unwrap(), a.full_subset().unwrap());
            }
        }
    }

    #[test]
    fn idempotent_homs_are_the_subtractive_kernels() {
        let b = construct::boolean();
        for a in construct::corpus().into_iter().filter(|a| a.is_idempotent()) {
            let bij = val_spec_bijection(&a).unwrap();
            for (v, &i) in bij.valuations.iter().zip(&bij.kernel_of) {
                let hom = is_homomorphism(&a, &b, v);
                assert_eq!(hom, crate::ideals::is_subtractive(&a, bij.primes[i]), "{}", a.label());
            }
        }
    }

    #[test]
    fn valuation_on_naturals() {
        assert!(nat_max_valuation_check(200).passed());
    }

    #[test]
    fn non_idempotent_target_is_refused() {
        let a = construct::boolean();
        assert!(is_g_valuation(&a, &construct::zmod(2), &[0, 1]).is_err());
    }
}
