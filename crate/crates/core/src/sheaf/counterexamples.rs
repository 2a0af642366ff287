use serde_json::json;

use crate::error::Result;
use crate::poly::{ktt_member, RatPoly};
use crate::presented::{Bound, CongruenceIndex, Presentation, Verdict};
use crate::report::Report;

fn p(text: &str) -> RatPoly {
    RatPoly::parse(text).expect("fixed polynomial parses")
}

/// The pair `((t³+t²)/(t²−1), (t⁴+t³+t²)/(t³−1))` over `K[t², t³]` lies in
/// the equalizer for the cover `D(t²−1) ∪ D(t³−1)` of `Spec A ∖ {m}` yet is
/// not the image of any element of `S_U⁻¹A = A`.
pub fn ktt_counterexample_verify() -> Report {
    let (x1, s1) = (p("t^3+t^2"), p("t^2-1"));
    let (x2, s2) = (p("t^4+t^3+t^2"), p("t^3-1"));
    let members = [&x1, &s1, &x2, &s2].iter().all(|f| ktt_member(f));
    // S_U = K^×: the only candidates λ(t−1)ⁿ with n > 0 leave A
    let square = &p("t-1") * &p("t-1");
    let units_only = !ktt_member(&p("t-1")) && !ktt_member(&square);
    let membership = Report::new(
        "numerators and denominators lie in K[t^2,t^3]; (t-1)^n does not",
        members && units_only,
        vec![json!({
            "polys": [x1.to_string(), s1.to_string(), x2.to_string(), s2.to_string()],
            "(t-1)^2": square.to_string(),
        })],
    );
    let lhs = &x1 * &s2;
    let rhs = &x2 * &s1;
    let equalizer = Report::new(
        "(t^3+t^2)(t^3-1) = (t^4+t^3+t^2)(t^2-1)",
        lhs == rhs,
        vec![json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string() })],
    );
    // f·(t²−1) = t³+t² has the unique solution f = t²/(t−1) in K(t)
    let (q, r) = x1.div_rem(&s1).expect("nonzero divisor");
    let g = x1.gcd(&s1);
    let num = x1.div_rem(&g).expect("nonzero gcd").0;
    let den = s1.div_rem(&g).expect("nonzero gcd").0;
    let reduced_ok = num == p("t^2") && den == p("t-1");
    let (q2, r2) = x2.div_rem(&s2).expect("nonzero divisor");
    let no_preimage = Report::new(
        "no f in K[t^2,t^3] with f(t^2-1) = t^3+t^2",
        !r.is_zero() && !r2.is_zero() && reduced_ok,
        vec![json!({
            "quotient": q.to_string(),
            "remainder": r.to_string(),
            "reduced": format!("({num})/({den})"),
            "second_remainder": r2.to_string(),
            "second_quotient": q2.to_string(),
        })],
    );
    Report::all(
        "the localization presheaf on Spec K[t^2,t^3] is not a sheaf",
        vec![membership, equalizer, no_preimage],
    )
}

/// In `ℕ[x,y]/(x²∼x, y²∼y, 1+x∼x+y)` the elements `1+xy` and `x+y` agree
/// after inverting `x` and after inverting `y`, while no bounded chain
/// relates them in `A`. Exponents `k ≤ max_k` are tried for the local
/// equalities.
pub fn sp_injectivity_counterexample(bound: u32, max_k: u32) -> Result<Report> {
    let pres = Presentation::xy_counterexample();
    let mut index = CongruenceIndex::build(&pres, Bound::uniform(bound))?;
    let (s, t) = (pres.parse("1+x*y")?, pres.parse("x+y")?);
    let mut parts = Vec::new();
    for (g, name) in [(0, "x"), (1, "y")] {
        let found = index.localized_images_equal(&s, &t, g, max_k)?;
        let (passed, witness) = match found {
            Some((k, chain)) => (
                k == 1 && chain.verify(&pres),
                json!({ "k": k, "steps": chain.steps.len(), "chain_verified": chain.verify(&pres) }),
            ),
            None => (false, json!({ "k": null })),
        };
        parts.push(Report::new(format!("{name}^k(1+xy) ~ {name}^k(x+y) with k = 1"), passed, vec![witness]));
    }
    let verdict = index.congruent(&s, &t)?;
    let separated = matches!(verdict, Verdict::NoAtBound(_));
    parts.push(Report::new(
        format!("1+xy and x+y are not congruent at bound {bound}"),
        separated,
        vec![json!({ "explored": index.explored() })],
    ));
    // 1 lies in the subtractive closure of xA + yA: 1 + x ∼ x + y
    let cover = index.congruent(&pres.parse("1+x")?, &t)?.is_yes();
    parts.push(Report::new("Sp A = D(x) ∪ D(y): 1 + x ∼ x + y", cover, vec![]));
    Ok(Report::all("A → A[1/x] × A[1/y] is not injective", parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ktt_passes() {
        let r = ktt_counterexample_verify();
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn xy_passes_at_six() {
        let r = sp_injectivity_counterexample(6, 6).unwrap();
        assert!(r.passed(), "{}", r.to_json());
    }
}
