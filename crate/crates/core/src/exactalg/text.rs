//! Parsing of the canonical text form produced by the `Display` impls.

use std::str::FromStr;

use num::{BigInt, One};

use super::{LPoly, RFunc, Rat};
use crate::error::{Error, Result};

fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if b == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(a, b))
        }
        None => Ok(Rat::from_integer(BigInt::from_str(s.trim()).map_err(|_| bad())?)),
    }
}

/// Parses one term such as `3/2 q^-1 X^2` or `T1*T2^-1`.
fn parse_term(s: &str) -> Result<LPoly> {
    let mut coeff = Rat::one();
    let mut powers: Vec<(String, i32)> = Vec::new();
    for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
        let starts_alpha = tok.chars().next().map(|c| c.is_ascii_alphabetic()).unwrap_or(false);
        if !starts_alpha {
            coeff *= parse_rat(tok)?;
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (
                n,
                e.trim_matches(|c| c == '(' || c == ')')
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?,
            ),
            None => (tok, 1),
        };
        if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::Parse(format!("bad variable `{name}`")));
        }
        powers.push((name.to_string(), exp));
    }
    let refs: Vec<(&str, i32)> = powers.iter().map(|(n, e)| (n.as_str(), *e)).collect();
    Ok(LPoly::monomial(coeff, &refs))
}

impl FromStr for LPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = LPoly::zero();
        let mut cur = String::new();
        let mut sign = 1i64;
        let mut prev_caret = false;
        let flush = |cur: &mut String, sign: i64, out: &mut LPoly| -> Result<()> {
            if cur.trim().is_empty() {
                return Ok(());
            }
            let t = parse_term(cur)?;
            *out = &*out + &t.scale(&Rat::from_integer(sign.into()));
            cur.clear();
            Ok(())
        };
        for ch in s.chars() {
            match ch {
                '+' | '-' if !prev_caret => {
                    if cur.trim().is_empty() {
                        if ch == '-' {
                            sign = -sign;
                        }
                    } else {
                        flush(&mut cur, sign, &mut out)?;
                        sign = if ch == '-' { -1 } else { 1 };
                    }
                }
                _ => cur.push(ch),
            }
            if !ch.is_whitespace() {
                prev_caret = ch == '^';
            }
        }
        if cur.trim().is_empty() {
            return Err(Error::Parse(format!("dangling sign in `{s}`")));
        }
        flush(&mut cur, sign, &mut out)?;
        Ok(out)
    }
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        &t[1..t.len() - 1]
    } else {
        t
    }
}

impl FromStr for RFunc {
    type Err = Error;

    /// Accepts `P`, `P/(Q)`, `(P)/(Q)` and `P/Q` with monomial `Q`.
    fn from_str(s: &str) -> Result<Self> {
        // split at a '/' that is followed by '(' or preceded by ')'
        let bytes: Vec<char> = s.chars().collect();
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in bytes.iter().enumerate() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    let next = bytes[i + 1..].iter().find(|c| !c.is_whitespace());
                    let prev = bytes[..i].iter().rev().find(|c| !c.is_whitespace());
                    if next == Some(&'(') || prev == Some(&')') {
                        split = Some(i);
                    }
                }
                _ => {}
            }
        }
        match split {
            Some(i) => {
                let a: String = bytes[..i].iter().collect();
                let b: String = bytes[i + 1..].iter().collect();
                let num = LPoly::from_str(strip_parens(&a))?;
                let den = LPoly::from_str(strip_parens(&b))?;
                RFunc::new(num, den)
            }
            None => Ok(RFunc::from_poly(LPoly::from_str(strip_parens(s))?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["1 - q^-1 X^2", "-q X^2", "3/2 q^2 u1 + T1^-1", "0"] {
            let p: LPoly = s.parse().unwrap();
            let again: LPoly = p.to_string().parse().unwrap();
            assert_eq!(p, again);
        }
        let f: RFunc = "(1 + q^-1 X^2)/(1 - q^-2 X^2)".parse().unwrap();
        assert_eq!(f.to_string().parse::<RFunc>().unwrap(), f);
        let g: RFunc = "1/(1 - q^-1 X^2)".parse().unwrap();
        assert_eq!(g.to_string(), "1/(1 - q^-1 X^2)");
    }

    #[test]
    fn rejects_garbage() {
        assert!("q^^2".parse::<LPoly>().is_err());
        assert!("1 +".parse::<LPoly>().is_err());
        assert!("".parse::<LPoly>().is_err());
    }
}
