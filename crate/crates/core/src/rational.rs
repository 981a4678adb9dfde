//! Exact rationals. Thin layer over `malachite_q` so the rest of the crate
//! never names the backend directly.

use malachite_base::num::basic::traits::{One, Zero};
use std::str::FromStr;

pub use malachite_q::Rational;

pub fn zero() -> Rational {
    Rational::ZERO
}

pub fn one() -> Rational {
    Rational::ONE
}

pub fn int(v: i64) -> Rational {
    Rational::from(v)
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::from_signeds(num, den)
}

/// `(-1)^e` as a rational.
pub fn sign(odd: bool) -> Rational {
    if odd {
        int(-1)
    } else {
        one()
    }
}

pub fn is_zero(r: &Rational) -> bool {
    *r == Rational::ZERO
}

/// Accepts `p`, `-p`, `p/q`; the result is always in lowest terms.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = Rational::from_str(p.trim()).ok()?;
        let q = Rational::from_str(q.trim()).ok()?;
        if is_zero(&q) {
            return None;
        }
        Some(p / q)
    } else {
        Rational::from_str(s).ok()
    }
}

/// Canonical textual form used in every structured output: `p` or `p/q`.
pub fn render(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trips() {
        for s in ["0", "1", "-3", "2/4", "-6/9", " 5 / 10 "] {
            let r = parse(s).unwrap();
            assert_eq!(parse(&render(&r)).unwrap(), r);
        }
        assert_eq!(render(&parse("2/4").unwrap()), "1/2");
        assert_eq!(render(&parse("-6/9").unwrap()), "-2/3");
        assert!(parse("1/0").is_none());
        assert!(parse("x").is_none());
    }

    #[test]
    fn lowest_terms_with_positive_denominator() {
        let r = frac(4, -6);
        assert_eq!(render(&r), "-2/3");
        assert_eq!(r, frac(-2, 3));
    }
}
