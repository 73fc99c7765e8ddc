//! Text form of cyclotomic numbers: terms `rational ( "*z^" int )?` joined by
//! `+` / `-`, where `z = ζ_N`. The canonical form lists power-basis terms in
//! increasing degree without spaces, e.g. `1/2-3*z^2`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CycNum, CycloLevel};
use crate::error::{Error, Result};

pub(super) fn format(x: &CycNum) -> String {
    let mut out = String::new();
    for (k, c) in x.coeffs().into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        if a.denom().is_one() {
            out.push_str(&a.numer().to_string());
        } else {
            out.push_str(&format!("{}/{}", a.numer(), a.denom()));
        }
        if k > 0 {
            out.push_str(&format!("*z^{k}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(super) fn parse(level: &Arc<CycloLevel>, s: &str) -> Result<CycNum> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty cyclotomic literal".into()));
    }
    let bytes = compact.as_bytes();
    let mut terms = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);

    let mut acc = CycNum::zero(level);
    for term in terms {
        acc = &acc + &parse_term(level, term)?;
    }
    Ok(acc)
}

fn parse_term(level: &Arc<CycloLevel>, term: &str) -> Result<CycNum> {
    let bad = || Error::Parse(format!("malformed cyclotomic term '{term}'"));
    let (negative, body) = match term.as_bytes().first() {
        Some(b'+') => (false, &term[1..]),
        Some(b'-') => (true, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coef_str, power) = if let Some(rest) = body.strip_prefix('z') {
        (None, parse_power(rest).ok_or_else(bad)?)
    } else if let Some(pos) = body.find('*') {
        let rest = body[pos + 1..].strip_prefix('z').ok_or_else(bad)?;
        (Some(&body[..pos]), parse_power(rest).ok_or_else(bad)?)
    } else {
        (Some(body), 0)
    };
    let coef = match coef_str {
        None => BigRational::one(),
        Some(c) => parse_rational(c).ok_or_else(bad)?,
    };
    let coef = if negative { -coef } else { coef };
    let base = CycNum::zeta_pow(level, power);
    Ok(&base * &CycNum::from_rational(level, &coef))
}

fn parse_power(rest: &str) -> Option<i64> {
    if rest.is_empty() {
        return Some(1);
    }
    rest.strip_prefix('^')?.parse().ok()
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_grammar() {
        let l8 = CycloLevel::get(8);
        for s in ["0", "1", "-1/2", "3-1/2*z^2+7*z^3", "-1*z^1"] {
            let x = CycNum::parse(&l8, s).unwrap();
            assert_eq!(CycNum::parse(&l8, &x.to_string()).unwrap(), x);
        }
        let a = CycNum::parse(&l8, "z^7").unwrap();
        assert_eq!(a, CycNum::parse(&l8, "-1*z^3").unwrap());
        assert_eq!(a.to_string(), "-1*z^3");
        let b = CycNum::parse(&l8, " 2 * z ^ -1 ").unwrap();
        assert_eq!(b, CycNum::parse(&l8, "-2*z^3").unwrap());
        assert_eq!(CycNum::parse(&l8, "1/2 + 1/2").unwrap().to_string(), "1");
    }

    #[test]
    fn rejects_garbage() {
        let l4 = CycloLevel::get(4);
        for s in ["", "1/0", "abc", "2*y^3", "2*z^x", "+"] {
            assert!(CycNum::parse(&l4, s).is_err(), "{s}");
        }
    }
}
