//! Small finite semirings used throughout tests, examples and the CLI.

use super::FiniteSemiring;

fn table(
    label: impl AsRef<str>,
    size: usize,
    zero: usize,
    one: usize,
    add: impl Fn(usize, usize) -> usize,
    mul: impl Fn(usize, usize) -> usize,
) -> FiniteSemiring {
    FiniteSemiring::from_fn(label.as_ref(), size, zero, one, add, mul)
        .expect("constructor tables are in range")
}

fn named(s: FiniteSemiring, names: Vec<String>) -> FiniteSemiring {
    s.with_names(names).expect("constructor produced matching names")
}

/// `𝔹 = ({0,1}, ∨, ∧)`.
pub fn boolean() -> FiniteSemiring {
    let s = table("B", 2, 0, 1, |a, b| a | b, |a, b| a & b);
    named(s, vec!["0".into(), "1".into()])
}

/// The zero semiring, where `0 = 1`.
pub fn trivial() -> FiniteSemiring {
    table("0", 1, 0, 0, |_, _| 0, |_, _| 0)
}

/// The chain `0 < 1 < … < n−1` with `(max, min)`.
///
/// `chain(3)` is `{0, ½, 1}`; index 1 is the middle element.
pub fn chain(n: usize) -> FiniteSemiring {
    assert!(n >= 1, "chain needs at least one element");
    table(format!("chain{n}"), n, 0, n - 1, |a, b| a.max(b), |a, b| a.min(b))
}

/// `ℤ/nℤ` with its ring operations.
pub fn zmod(n: usize) -> FiniteSemiring {
    assert!(n >= 1, "modulus must be positive");
    table(format!("Z{n}"), n, 0, 1 % n, |a, b| (a + b) % n, |a, b| (a * b) % n)
}

/// `ℕ` with every value `≥ k` collapsed to `k`.
pub fn truncated_nat(k: usize) -> FiniteSemiring {
    assert!(k >= 1, "truncation point must be positive");
    let s = table(
        format!("Nsat{k}"),
        k + 1,
        0,
        1,
        |a, b| (a + b).min(k),
        |a, b| (a * b).min(k),
    );
    let names = (0..=k).map(|i| if i == k { format!("{k}+") } else { i.to_string() }).collect();
    named(s, names)
}

/// Min-plus semiring on `{0,…,k−1,+∞}` with every value `≥ k` sent to `+∞`.
///
/// Index 0 is `+∞` (the zero), index `i+1` is the value `i`.
pub fn truncated_tropical(k: usize) -> FiniteSemiring {
    assert!(k >= 1, "truncation point must be positive");
    let value = |i: usize| if i == 0 { None } else { Some(i - 1) };
    let index = |v: Option<usize>| match v {
        Some(v) if v < k => v + 1,
        _ => 0,
    };
    let s = table(
        format!("Tmin{}", k + 1),
        k + 1,
        0,
        1,
        |a, b| match (value(a), value(b)) {
            (Some(x), Some(y)) => index(Some(x.min(y))),
            (Some(x), None) | (None, Some(x)) => index(Some(x)),
            (None, None) => 0,
        },
        |a, b| match (value(a), value(b)) {
            (Some(x), Some(y)) => index(Some(x + y)),
            _ => 0,
        },
    );
    let names = (0..=k).map(|i| value(i).map_or("inf".to_string(), |v| v.to_string())).collect();
    named(s, names)
}

fn monomial_name(e: u32) -> String {
    match e {
        0 => "1".into(),
        1 => "x".into(),
        _ => format!("x^{e}"),
    }
}

fn support_name(mask: usize, term: impl Fn(u32) -> String) -> String {
    if mask == 0 {
        return "0".into();
    }
    (0..usize::BITS)
        .filter(|i| mask >> i & 1 == 1)
        .map(term)
        .collect::<Vec<_>>()
        .join("+")
}

/// Quotient of `𝔹[x]` whose elements are subsets of `{1, x, …, x^(basis_len−1)}`.
///
/// `reduce` sends an exponent to the basis exponent it is identified with,
/// or to `None` when the monomial vanishes. Element `m` has support the set
/// bits of `m`, so `B[x]/(x²=x)` has `0, 1, x, 1+x` at indices `0..4`.
pub fn bool_poly_quotient_univariate(
    label: &str,
    basis_len: u32,
    reduce: impl Fn(u32) -> Option<u32>,
) -> FiniteSemiring {
    assert!((1..=16).contains(&basis_len), "basis too large");
    let size = 1usize << basis_len;
    let mul = |a: usize, b: usize| {
        let mut out = 0usize;
        for i in (0..basis_len).filter(|i| a >> i & 1 == 1) {
            for j in (0..basis_len).filter(|j| b >> j & 1 == 1) {
                if let Some(e) = reduce(i + j) {
                    debug_assert!(e < basis_len);
                    out |= 1 << e;
                }
            }
        }
        out
    };
    let s = table(label, size, 0, 1, |a, b| a | b, mul);
    let names = (0..size).map(|m| support_name(m, monomial_name)).collect();
    named(s, names)
}

/// `𝔹[x]/(x² ∼ x)`.
pub fn bool_idempotent_line() -> FiniteSemiring {
    bool_poly_quotient_univariate("B[x]/(x2=x)", 2, |e| Some(e.min(1)))
}

/// `𝔹[ε]/(ε² ∼ 0)`.
pub fn bool_dual_numbers() -> FiniteSemiring {
    bool_poly_quotient_univariate("B[e]", 2, |e| (e < 2).then_some(e))
}

/// `𝔹[x]/(x³ ∼ x²)`.
pub fn bool_cubic_collapse() -> FiniteSemiring {
    bool_poly_quotient_univariate("B[x]/(x3=x2)", 3, |e| Some(e.min(2)))
}

/// `𝔹[x₁,…,xₙ]/(xᵢ² ∼ xᵢ)` for `n ≤ 3`.
///
/// Monomials are subsets of variables (bit `j` of a monomial index is `x_{j+1}`)
/// and an element is a set of monomials, encoded as a bitmask over the
/// `2ⁿ` monomials.
pub fn bool_boolean_algebra_poly(n: u32) -> FiniteSemiring {
    assert!(n <= 3, "at most three variables");
    let monos = 1u32 << n;
    let size = 1usize << monos;
    let mul = |a: usize, b: usize| {
        let mut out = 0usize;
        for i in (0..monos).filter(|i| a >> i & 1 == 1) {
            for j in (0..monos).filter(|j| b >> j & 1 == 1) {
                out |= 1 << (i | j);
            }
        }
        out
    };
    let s = table(format!("B[x1..x{n}]/(xi2=xi)"), size, 0, 1, |a, b| a | b, mul);
    let term = |m: u32| {
        if m == 0 {
            return "1".to_string();
        }
        (0..n).filter(|j| m >> j & 1 == 1).map(|j| format!("x{}", j + 1)).collect::<Vec<_>>().join("*")
    };
    let names = (0..size).map(|m| support_name(m, term)).collect();
    named(s, names)
}

/// `𝔹[x,y]/(x² ∼ x, y² ∼ y, 1 + x ∼ x + y)`, the idempotent shadow of the
/// presented injectivity counterexample.
pub fn bool_xy_collapse() -> FiniteSemiring {
    let b = bool_boolean_algebra_poly(2);
    let find = |name: &str| b.elements().find(|&e| b.name(e) == name).expect("named element");
    let (q, _) = b
        .congruence_quotient(&[(find("1+x1"), find("x1+x2"))])
        .expect("pair in range");
    q.with_label("B[x,y]/(x2=x,y2=y,1+x=x+y)")
}

/// The fixed corpus of small semirings exercised by exhaustive checks.
pub fn corpus() -> Vec<FiniteSemiring> {
    vec![
        boolean(),
        zmod(2),
        chain(3),
        truncated_nat(2),
        bool_idempotent_line(),
        bool_dual_numbers(),
        boolean().direct_product(&boolean()).with_label("BxB"),
        zmod(4),
        truncated_tropical(2),
        truncated_nat(3),
        zmod(6),
        bool_cubic_collapse(),
    ]
}

/// Short names accepted by [`by_name`], with a description of each.
pub const NAMED: [(&str, &str); 12] = [
    ("boolean", "the Boolean semifield B"),
    ("trivial", "the zero semiring"),
    ("chain<n>", "the chain 0 < ... < n-1 under (max, min)"),
    ("z<n>", "the ring Z/nZ"),
    ("nat<k>", "N with values >= k collapsed to k"),
    ("trop<k>", "min-plus on {0..k-1, inf}"),
    ("line", "B[x]/(x^2 = x)"),
    ("dual", "B[e]/(e^2 = 0)"),
    ("cubic", "B[x]/(x^3 = x^2)"),
    ("bxb", "B x B"),
    ("bool<n>", "B[x1..xn]/(xi^2 = xi), n <= 3"),
    ("xy-collapse", "B[x,y]/(x^2 = x, y^2 = y, 1 + x = x + y)"),
];

/// Builds one of the [`NAMED`] semirings; `None` for unknown names.
pub fn by_name(name: &str) -> Option<FiniteSemiring> {
    let sized = |prefix: &str, max: usize| {
        name.strip_prefix(prefix)
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| (1..=max).contains(&n))
    };
    Some(match name {
        "boolean" | "B" => boolean(),
        "trivial" => trivial(),
        "line" => bool_idempotent_line(),
        "dual" => bool_dual_numbers(),
        "cubic" => bool_cubic_collapse(),
        "bxb" => boolean().direct_product(&boolean()).with_label("BxB"),
        "xy-collapse" => bool_xy_collapse(),
        _ => {
            if let Some(n) = sized("chain", 128) {
                chain(n)
            } else if let Some(n) = sized("z", 128) {
                zmod(n)
            } else if let Some(k) = sized("nat", 127) {
                truncated_nat(k)
            } else if let Some(k) = sized("trop", 127) {
                truncated_tropical(k)
            } else {
                let n = name.strip_prefix("bool").and_then(|n| n.parse::<u32>().ok()).filter(|&n| n <= 3)?;
                bool_boolean_algebra_poly(n)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::verify_axioms;

    #[test]
    fn corpus_is_valid() {
        for s in corpus() {
            let report = verify_axioms(&s);
            assert!(report.is_valid(), "{}: {:?}", s.label(), report.violations);
        }
    }

    #[test]
    fn multivariate_quotients_are_valid() {
        for n in 0..=2 {
            let s = bool_boolean_algebra_poly(n);
            assert!(verify_axioms(&s).is_valid());
            assert!(s.is_idempotent());
        }
    }

    #[test]
    fn element_names() {
        let s = bool_idempotent_line();
        assert_eq!(s.name(3), "1+x");
        let t = truncated_tropical(2);
        assert_eq!(t.name(0), "inf");
        assert_eq!(t.mul(2, 2), 0);
        assert_eq!(t.add(2, 1), 1);
        let m = bool_boolean_algebra_poly(2);
        assert_eq!(m.name(1 << 3 | 1), "1+x1*x2");
    }

    #[test]
    fn names_resolve() {
        assert_eq!(by_name("z6").unwrap().size(), 6);
        assert_eq!(by_name("chain3").unwrap().label(), "chain3");
        assert_eq!(by_name("bool2").unwrap().size(), 16);
        assert!(by_name("z0").is_none());
        assert!(by_name("bool4").is_none());
        assert!(by_name("nope").is_none());
    }
}
