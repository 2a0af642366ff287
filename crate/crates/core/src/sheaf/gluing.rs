use crate::error::{Error, Result};
use crate::localize::fraction_witness;
use crate::subset::Subset;

use super::{s_of_open, Presheaf};

/// `(v, n)` with `s·v = aⁿ`, smallest `n` first.
fn power_cofactor(p: &Presheaf, s: usize, x: usize) -> Option<(usize, usize)> {
    let a = p.base();
    (0..=a.size()).find_map(|n| {
        let target = a.pow(x, n);
        a.elements().find(|&v| a.mul(s, v) == target).map(|v| (v, n))
    })
}

/// Rewrites compatible local fractions `xᵢ/sᵢ ∈ L(D(aᵢ))` as `xᵢ'/sᵢ'`
/// with `sᵢ'` a power of `aᵢ` and `xᵢ'sⱼ' = xⱼ'sᵢ'` holding in `A` itself.
pub fn common_denominator_form(
    p: &Presheaf,
    cover: &[usize],
    locals: &[(usize, usize)],
) -> Result<Vec<(usize, usize)>> {
    let a = p.base();
    let space = p.space();
    if cover.len() != locals.len() {
        return Err(Error::precondition("one local fraction per cover element"));
    }
    let mut cof = Vec::new();
    for (&ai, &(_, si)) in cover.iter().zip(locals) {
        if !s_of_open(space, space.d(ai)).contains(si) {
            return Err(Error::precondition(format!("{} is not a denominator over D({})", a.name(si), a.name(ai))));
        }
        cof.push(power_cofactor(p, si, ai).ok_or_else(|| {
            Error::precondition(format!("{} divides no power of {}", a.name(si), a.name(ai)))
        })?);
    }
    let mut big_n = 0;
    for i in 0..cover.len() {
        for j in i + 1..cover.len() {
            let aij = a.mul(cover[i], cover[j]);
            let overlap: Subset = s_of_open(space, space.d(aij));
            let u = fraction_witness(a, overlap, locals[i], locals[j]).ok_or_else(|| {
                Error::precondition(format!("local sections {i} and {j} disagree on the overlap"))
            })?;
            let (_, nij) = power_cofactor(p, u, aij)
                .ok_or_else(|| Error::precondition(format!("{} divides no power of {}", a.name(u), a.name(aij))))?;
            big_n = big_n.max(nij);
        }
    }
    let out: Vec<(usize, usize)> = cover
        .iter()
        .zip(locals)
        .zip(&cof)
        .map(|((&ai, &(xi, _)), &(vi, ni))| (a.product([xi, vi, a.pow(ai, big_n)]), a.pow(ai, big_n + ni)))
        .collect();
    for i in 0..out.len() {
        for j in 0..out.len() {
            if a.mul(out[i].0, out[j].1) != a.mul(out[j].0, out[i].1) {
                return Err(Error::Inconsistent(format!("cross relation fails for {i}, {j}")));
            }
        }
        let local = p.value(space.d(cover[i]))?;
        if local.fraction(out[i].0, out[i].1)? != local.fraction(locals[i].0, locals[i].1)? {
            return Err(Error::Inconsistent(format!("normalized fraction {i} changed class")));
        }
    }
    Ok(out)
}

/// Glues a normalized family over a cover of `D(target)`: finds
/// `Σ bⱼsⱼ' = w` with `w ∈ S_target` and returns the class of
/// `(Σ bⱼxⱼ')/w` in `L(D(target))`. For `target = 1`, `w` is a unit.
pub fn glue(p: &Presheaf, cover: &[usize], target: usize, normalized: &[(usize, usize)]) -> Result<usize> {
    let a = p.base();
    let space = p.space();
    if cover.len() != normalized.len() || normalized.is_empty() {
        return Err(Error::precondition("one normalized fraction per cover element"));
    }
    let monoid = s_of_open(space, space.d(target));
    // reachable partial sums Σ_{k<j} b_k s_k', with back-pointers
    let mut layers: Vec<Vec<Option<(usize, usize)>>> = Vec::new();
    let mut reach = vec![None; a.size()];
    reach[a.zero()] = Some((usize::MAX, usize::MAX));
    for &(_, sj) in normalized {
        let mut next = vec![None; a.size()];
        for prev in a.elements().filter(|&e| reach[e].is_some()) {
            for b in a.elements() {
                let e = a.add(prev, a.mul(b, sj));
                if next[e].is_none() {
                    next[e] = Some((prev, b));
                }
            }
        }
        layers.push(next.clone());
        reach = next;
    }
    let w = monoid
        .iter()
        .find(|&w| reach[w].is_some())
        .ok_or_else(|| Error::precondition("the denominators generate no element of S_target"))?;
    let mut bs = vec![0; normalized.len()];
    let mut cur = w;
    for j in (0..normalized.len()).rev() {
        let (prev, b) = layers[j][cur].expect("reachable");
        bs[j] = b;
        cur = prev;
    }
    let numerator = a.sum(bs.iter().zip(normalized).map(|(&b, &(x, _))| a.mul(b, x)));
    let whole = space.d(target);
    let glued = p.value(whole)?.fraction(numerator, w)?;
    for (j, &(x, s)) in normalized.iter().enumerate() {
        let dj = space.d(cover[j]);
        let r = p.restriction(whole, dj)?;
        if r.apply(glued) != p.value(dj)?.fraction(x, s)? {
            return Err(Error::Inconsistent(format!("glued element disagrees on D({})", a.name(cover[j]))));
        }
    }
    Ok(glued)
}
