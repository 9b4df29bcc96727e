//! Scalar literals: `z^k`, `-z^k`, `t^k`, `t^-k`, integers and rationals, sums of
//! such terms, and `(sum)/(sum)` quotients in ℚ(t).

use super::{Field, Scalar, ScalarError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    Zeta,
    T,
}

fn err(literal: &str, reason: impl Into<String>) -> ScalarError {
    ScalarError::Parse {
        literal: literal.to_string(),
        reason: reason.into(),
    }
}

/// Parses `s` as an element of `field`.
pub fn parse_scalar(s: &str, field: Field) -> Result<Scalar, ScalarError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err(s, "empty literal"));
    }
    if let Some(rest) = compact.strip_prefix('(') {
        if let Some((num, den)) = rest.split_once(")/(") {
            let den = den
                .strip_suffix(')')
                .ok_or_else(|| err(s, "unbalanced parentheses"))?;
            let n = parse_sum(s, num, field)?;
            let d = parse_sum(s, den, field)?;
            return d
                .inv()
                .map(|inv| n * inv)
                .map_err(|_| err(s, "zero denominator"));
        }
    }
    parse_sum(s, &compact, field)
}

fn parse_sum(orig: &str, s: &str, field: Field) -> Result<Scalar, ScalarError> {
    let bytes: Vec<char> = s.chars().collect();
    let mut terms = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        if (bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '^' {
            terms.push(bytes[start..i].iter().collect::<String>());
            start = i;
        }
    }
    terms.push(bytes[start..].iter().collect::<String>());
    let mut acc = Scalar::zero();
    for t in terms {
        acc += parse_term(orig, &t, field)?;
    }
    Ok(acc)
}

fn parse_int(orig: &str, s: &str) -> Result<i64, ScalarError> {
    s.parse::<i64>()
        .map_err(|_| err(orig, format!("bad integer {s:?}")))
}

fn parse_term(orig: &str, t: &str, field: Field) -> Result<Scalar, ScalarError> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if body.is_empty() {
        return Err(err(orig, "dangling sign"));
    }
    let mut coef = Scalar::one();
    let mut var: Option<Scalar> = None;
    for part in body.split('*') {
        let first = part
            .chars()
            .next()
            .ok_or_else(|| err(orig, "empty factor"))?;
        if first == 'z' || first == 't' {
            if var.is_some() {
                return Err(err(orig, "products of generators are not valid literals"));
            }
            let exp = match &part[1..] {
                "" => 1,
                e => parse_int(
                    orig,
                    e.strip_prefix('^')
                        .ok_or_else(|| err(orig, "expected ^ after variable"))?,
                )?,
            };
            var = Some(match (first, field) {
                ('z', Field::Cyclotomic(n)) => Scalar::zeta(n, exp),
                ('t', Field::RationalFunction) => Scalar::t_pow(exp),
                ('z', _) => return Err(err(orig, "z requires a cyclotomic field")),
                _ => return Err(err(orig, "t requires the rational-function field")),
            });
        } else if var.is_none() && coef.is_one() {
            coef = match part.split_once('/') {
                Some((n, d)) => {
                    let d = parse_int(orig, d)?;
                    if d == 0 {
                        return Err(err(orig, "zero denominator"));
                    }
                    Scalar::from_ratio(parse_int(orig, n)?, d)
                }
                None => Scalar::from_int(parse_int(orig, part)?),
            };
        } else {
            return Err(err(orig, format!("unexpected factor {part:?}")));
        }
    }
    let v = match var {
        Some(v) => coef * v,
        None => coef,
    };
    Ok(if neg { -v } else { v })
}
