//! Prime spectra `Spec A` and prime-kernel spectra `Sp A` of finite
//! semirings, their Zariski topologies, induced maps, and the symbolic
//! model of `Spec ℕ`.

mod nat;
mod poly;
mod space;

use serde::{Deserialize, Serialize};
use serde_json::json;

pub use nat::{nat_model_verify, NatPoint, NatSpectrumModel};
pub use poly::{
    monomial_ideal_contains, poly_sp_verify, universe_poly, BoolPolySpModel, MAX_POLY_SP_VARS,
};
pub use space::{Dimension, FiniteSpace, IrreducibleMethod, DEFAULT_CLOSED_SET_LIMIT};

use crate::error::{Error, Result};
use crate::ideals::{self, ideal_closure, is_subtractive, radical, subtractive_closure};
use crate::kernel::{construct, enumerate_homs, FiniteSemiring, Homomorphism};
use crate::localize::{self, LocalizedSemiring};
use crate::report::Report;
use crate::subset::Subset;

/// Default cap on the carrier size accepted by the enumerators.
pub const DEFAULT_SPECTRUM_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Spec,
    Sp,
}

impl std::str::FromStr for SpectrumKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spec" => Ok(SpectrumKind::Spec),
            "sp" => Ok(SpectrumKind::Sp),
            _ => Err(Error::Parse(format!("unknown spectrum kind {s:?}"))),
        }
    }
}

/// Points of a spectrum with their Zariski topology.
///
/// `basis[a]` is `D(a)` (or `D̃(a)` for `Sp`) as a set of point indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumSpace {
    pub kind: SpectrumKind,
    pub points: Vec<Subset>,
    pub subtractive: Vec<bool>,
    pub basis: Vec<Subset>,
    pub space: FiniteSpace,
}

#[derive(Serialize)]
struct PointDoc {
    subset: Subset,
    subtractive: bool,
}

impl SpectrumSpace {
    fn from_points(a: &FiniteSemiring, kind: SpectrumKind, points: Vec<Subset>) -> Result<Self> {
        let basis: Vec<Subset> = a
            .elements()
            .map(|x| (0..points.len()).filter(|&i| !points[i].contains(x)).collect())
            .collect();
        let subtractive = points.iter().map(|&p| is_subtractive(a, p)).collect();
        let space = FiniteSpace::new(points.len(), basis.clone())?;
        Ok(SpectrumSpace { kind, points, subtractive, basis, space })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn all(&self) -> Subset {
        Subset::full(self.points.len())
    }

    /// `D(a)` or `D̃(a)`.
    pub fn d(&self, a: usize) -> Subset {
        self.basis[a]
    }

    /// `V(S)`: points containing every element of `s`.
    pub fn v(&self, s: impl IntoIterator<Item = usize> + Clone) -> Subset {
        (0..self.points.len()).filter(|&i| s.clone().into_iter().all(|x| self.points[i].contains(x))).collect()
    }

    pub fn index_of(&self, p: Subset) -> Option<usize> {
        self.points.iter().position(|&q| q == p)
    }

    pub fn point_name(&self, a: &FiniteSemiring, i: usize) -> String {
        let inner: Vec<String> = self.points[i].iter().map(|x| a.name(x)).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// `{"points": [{"subset": [...], "subtractive": bool}], "basis": {"a": [ids]}}`.
    pub fn to_json(&self) -> String {
        let points: Vec<PointDoc> = self
            .points
            .iter()
            .zip(&self.subtractive)
            .map(|(&subset, &subtractive)| PointDoc { subset, subtractive })
            .collect();
        let basis: serde_json::Map<String, serde_json::Value> =
            self.basis.iter().enumerate().map(|(a, d)| (a.to_string(), json!(d.to_vec()))).collect();
        serde_json::to_string_pretty(&json!({ "kind": self.kind, "points": points, "basis": basis }))
            .expect("plain data")
    }

    pub fn to_dot(&self, a: &FiniteSemiring) -> String {
        let names: Vec<String> = (0..self.len()).map(|i| self.point_name(a, i)).collect();
        self.space.to_dot(&names)
    }
}

fn check_limit(a: &FiniteSemiring, limit: usize) -> Result<()> {
    if a.size() > limit {
        return Err(Error::resource(format!(
            "{} has {} elements, over the spectrum limit {limit}",
            a.label(),
            a.size()
        )));
    }
    Ok(())
}

/// All prime ideals, in `(size, bits)` order.
pub fn spec_enumerate(a: &FiniteSemiring, limit: usize) -> Result<SpectrumSpace> {
    check_limit(a, limit)?;
    let primes = ideals::prime_ideals(a, ideals::DEFAULT_IDEAL_LIMIT)?;
    SpectrumSpace::from_points(a, SpectrumKind::Spec, primes)
}

/// Kernels of the homomorphisms `A → 𝔹`, in `(size, bits)` order.
pub fn hom_kernels(a: &FiniteSemiring) -> Result<Vec<Subset>> {
    a.full_subset()?;
    let b = construct::boolean();
    let mut kernels: Vec<Subset> =
        enumerate_homs(a, &b).iter().map(|f| f.kernel(&b).into_iter().collect()).collect();
    kernels.sort_by_key(|s| s.sort_key());
    kernels.dedup();
    Ok(kernels)
}

/// Prime subtractive ideals; for idempotent `A` cross-checked against the
/// kernels of `Hom(A, 𝔹)`.
pub fn sp_enumerate(a: &FiniteSemiring, limit: usize) -> Result<SpectrumSpace> {
    let spec = spec_enumerate(a, limit)?;
    let points: Vec<Subset> =
        spec.points.iter().zip(&spec.subtractive).filter(|(_, &s)| s).map(|(&p, _)| p).collect();
    if a.is_idempotent() && hom_kernels(a)? != points {
        return Err(Error::Inconsistent(format!(
            "Sp {} differs from the kernels of Hom(A, B)",
            a.label()
        )));
    }
    SpectrumSpace::from_points(a, SpectrumKind::Sp, points)
}

/// `Sp A` of an idempotent semiring straight from `Hom(A, 𝔹)`, without
/// enumerating ideals; used for carriers above the enumeration limit.
pub fn sp_via_homs(a: &FiniteSemiring) -> Result<SpectrumSpace> {
    if !a.is_idempotent() {
        return Err(Error::precondition("Sp via homomorphisms needs an idempotent semiring"));
    }
    let kernels = hom_kernels(a)?;
    SpectrumSpace::from_points(a, SpectrumKind::Sp, kernels)
}

pub fn enumerate(a: &FiniteSemiring, kind: SpectrumKind, limit: usize) -> Result<SpectrumSpace> {
    match kind {
        SpectrumKind::Spec => spec_enumerate(a, limit),
        SpectrumKind::Sp => sp_enumerate(a, limit),
    }
}

/// The two answers to "does `⋃_{a∈S} D(a)` cover the space?".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverVerdict {
    pub topological: bool,
    /// `⟨S⟩ = A` for `Spec`, `closure(⟨S⟩) = A` for `Sp`.
    pub algebraic: bool,
}

impl CoverVerdict {
    pub fn agree(&self) -> bool {
        self.topological == self.algebraic
    }
}

pub fn cover_check(a: &FiniteSemiring, space: &SpectrumSpace, s: &[usize]) -> CoverVerdict {
    let union = s.iter().fold(Subset::empty(), |acc, &x| acc.union(space.d(x)));
    let ideal = ideal_closure(a, s.iter().copied());
    let generated = match space.kind {
        SpectrumKind::Spec => ideal,
        SpectrumKind::Sp => subtractive_closure(a, ideal),
    };
    CoverVerdict { topological: union == space.all(), algebraic: generated.contains(a.one()) }
}

/// Whether `⋃_{a∈S} D(a) = D(b)`, topologically and via `b ∈ rad⟨S⟩`
/// together with `S ⊆ rad⟨b⟩` (valid for `Spec`).
pub fn covers_principal_open(a: &FiniteSemiring, space: &SpectrumSpace, s: &[usize], b: usize) -> CoverVerdict {
    let union = s.iter().fold(Subset::empty(), |acc, &x| acc.union(space.d(x)));
    let rad_s = radical(a, ideal_closure(a, s.iter().copied()));
    let rad_b = radical(a, ideal_closure(a, [b]));
    CoverVerdict {
        topological: union == space.d(b),
        algebraic: rad_s.contains(b) && s.iter().all(|&x| rad_b.contains(x)),
    }
}

/// `Spec(f)` or `Sp(f)`: `q ↦ f⁻¹(q)`, with the continuity certificate
/// `Spec(f)⁻¹(D(a)) = D(f(a))` checked for every `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedMap {
    pub map: Vec<usize>,
    /// Pairs `(a, f(a))`, one per basis open of the target.
    pub certificate: Vec<(usize, usize)>,
}

pub fn induced_map(f: &Homomorphism, source: &SpectrumSpace, target: &SpectrumSpace) -> Result<InducedMap> {
    // source is the spectrum of the codomain, target of the domain
    let map = source
        .points
        .iter()
        .map(|&q| {
            let pre: Subset = f.preimage(|y| q.contains(y)).into_iter().collect();
            target.index_of(pre).ok_or_else(|| {
                Error::Inconsistent(format!("preimage {pre:?} is not a point of the target spectrum"))
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut certificate = Vec::new();
    for (a, &d) in target.basis.iter().enumerate() {
        let pre: Subset = (0..map.len()).filter(|&i| d.contains(map[i])).collect();
        if pre != source.d(f.apply(a)) {
            return Err(Error::Inconsistent(format!("preimage of D({a}) is not D(f({a}))")));
        }
        certificate.push((a, f.apply(a)));
    }
    Ok(InducedMap { map, certificate })
}

/// Spectrum of a localization together with `Spec(φ_S)` / `Sp(φ_S)`.
pub fn localization_homeo_check(
    a: &FiniteSemiring,
    s: Subset,
    kind: SpectrumKind,
    limit: usize,
) -> Result<Report> {
    let l: LocalizedSemiring = localize::localize(a, s)?;
    let sa = enumerate(a, kind, limit)?;
    let sl = enumerate(&l.semiring, kind, limit)?;
    let induced = induced_map(&l.phi, &sl, &sa)?;
    let image: Subset = induced.map.iter().copied().collect();
    let expected: Subset = (0..sa.len()).filter(|&i| sa.points[i].is_disjoint(s)).collect();
    let injective = image.len() == induced.map.len();
    let continuous = sl.space.is_continuous(&induced.map, &sa.space);
    let open = sl.space.is_open_map(&induced.map, &sa.space);
    Ok(Report::new(
        format!("{kind:?}(phi_S) is an open embedding onto {{p : p ∩ S = ∅}}"),
        injective && continuous && open && image == expected,
        vec![json!({
            "map": induced.map,
            "image": image.to_vec(),
            "expected_image": expected.to_vec(),
            "injective": injective,
            "continuous": continuous,
            "open": open,
        })],
    ))
}

/// `Sp(χ_A): Sp A◇ → Sp A` is a homeomorphism.
pub fn hardening_homeo_check(a: &FiniteSemiring, limit: usize) -> Result<Report> {
    let h = localize::harden(a);
    let sa = sp_enumerate(a, limit)?;
    let sh = sp_enumerate(&h.semiring, limit)?;
    let induced = induced_map(&h.phi, &sh, &sa)?;
    let bijective = induced.map.len() == sa.len() && induced.map.iter().copied().collect::<Subset>() == sa.all();
    let continuous = sh.space.is_continuous(&induced.map, &sa.space);
    let open = sh.space.is_open_map(&induced.map, &sa.space);
    Ok(Report::new(
        format!("Sp(chi): Sp {}◇ → Sp {} is a homeomorphism", a.label(), a.label()),
        bijective && continuous && open,
        vec![json!({ "map": induced.map, "bijective": bijective, "continuous": continuous, "open": open })],
    ))
}
