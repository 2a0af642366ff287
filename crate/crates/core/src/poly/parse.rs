use crate::error::{Error, Result};

/// One parsed summand: sign, optional coefficient text, exponent vector.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RawTerm<'a> {
    pub negative: bool,
    pub coeff: Option<&'a str>,
    pub exps: Vec<u32>,
}

fn is_number(s: &str) -> bool {
    let s = s.strip_prefix('-').unwrap_or(s);
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '.')
        && s.chars().next().is_some_and(|c| c.is_ascii_digit())
}

/// Splits `text` into summands over `vars`.
///
/// Factors are joined by `*` or `⊙`; a factor is either a numeric
/// coefficient or `var` / `var^k`. `-` is a separator only when
/// `allow_minus` is set.
pub(crate) fn parse_terms<'a>(
    text: &'a str,
    vars: &[&str],
    allow_minus: bool,
) -> Result<Vec<RawTerm<'a>>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut pieces: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let mut negative = false;
    for (i, c) in text.char_indices() {
        let sep = c == '+' || (allow_minus && c == '-');
        // a leading sign or a sign right after `^` belongs to the next token
        let after_caret = text[..i].trim_end().ends_with('^');
        if sep && !after_caret {
            let piece = text[start..i].trim();
            if !piece.is_empty() {
                pieces.push((negative, piece));
            } else if i != 0 {
                return Err(Error::Parse(format!("empty summand in {text:?}")));
            }
            negative = c == '-';
            start = i + c.len_utf8();
        }
    }
    let last = text[start..].trim();
    if last.is_empty() {
        return Err(Error::Parse(format!("dangling operator in {text:?}")));
    }
    pieces.push((negative, last));

    pieces
        .into_iter()
        .map(|(negative, piece)| {
            let mut exps = vec![0u32; vars.len()];
            let mut coeff = None;
            for factor in piece.split(['*', '⊙']).map(str::trim) {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {piece:?}")));
                }
                if is_number(factor) || factor == "inf" {
                    if coeff.replace(factor).is_some() {
                        return Err(Error::Parse(format!("two coefficients in {piece:?}")));
                    }
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((n, k)) => {
                        let k: u32 = k
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                        (n.trim(), k)
                    }
                    None => (factor, 1),
                };
                let v = vars
                    .iter()
                    .position(|&v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                exps[v] += power;
            }
            Ok(RawTerm { negative, coeff, exps })
        })
        .collect()
}

/// Default variable names: `x`, `x,y`, `x,y,z`, then `x1..xn`.
pub(crate) fn default_vars(n: usize) -> Vec<String> {
    match n {
        0..=3 => ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect(),
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

pub(crate) fn monomial_string(exps: &[u32], vars: &[String]) -> String {
    let factors: Vec<String> = exps
        .iter()
        .zip(vars)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    factors.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_summands_and_factors() {
        let t = parse_terms("1+x^2*y", &["x", "y"], false).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].coeff, Some("1"));
        assert_eq!(t[1].exps, vec![2, 1]);
    }

    #[test]
    fn minus_and_coefficients() {
        let t = parse_terms("t^2 - 2*t + 1", &["t"], true).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t[1].negative);
        assert_eq!(t[1].coeff, Some("2"));
        let t = parse_terms("-t", &["t"], true).unwrap();
        assert!(t[0].negative);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_terms("x+", &["x"], false).is_err());
        assert!(parse_terms("w", &["x"], false).is_err());
        assert!(parse_terms("x^a", &["x"], false).is_err());
        assert!(parse_terms("2*3*x", &["x"], false).is_err());
    }
}
