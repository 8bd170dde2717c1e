use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, Rational};

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            let var = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{var}")?,
                _ => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

/// Parses text such as `"2*X^3 - X^2 - 1"`, `"x^4+x^2-2"` or `"1/2*X + 3"`.
pub fn parse_polynomial(s: &str) -> Result<Polynomial> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && !cur.ends_with('^') {
            if i > 0 {
                if cur.is_empty() {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                terms.push((neg, std::mem::take(&mut cur)));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    terms.push((neg, cur));

    let mut coeffs: Vec<Rational> = Vec::new();
    for (neg, term) in terms {
        let (c, k) = parse_term(&term).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{m} in {s:?}")),
            other => other,
        })?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] += if neg { -c } else { c };
    }
    Ok(Polynomial::new(coeffs))
}

fn parse_term(term: &str) -> Result<(Rational, usize)> {
    let Some(pos) = term.find(['X', 'x']) else {
        return Ok((parse_rational(term)?, 0));
    };
    let (head, tail) = term.split_at(pos);
    let head = head.strip_suffix('*').unwrap_or(head);
    let c = if head.is_empty() {
        Rational::one()
    } else {
        parse_rational(head)?
    };
    let tail = &tail[1..];
    let k = if tail.is_empty() {
        1
    } else {
        let e = tail
            .strip_prefix('^')
            .ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?;
        e.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?
    };
    Ok((c, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_conventional_form() {
        assert_eq!(Polynomial::from_ints(&[-1, 0, -1, 2]).to_string(), "2*X^3 - X^2 - 1");
        assert_eq!(Polynomial::from_ints(&[-1, -1, 0, 2]).to_string(), "2*X^3 - X - 1");
        assert_eq!(Polynomial::from_ints(&[-1, -1, 1]).to_string(), "X^2 - X - 1");
        assert_eq!(Polynomial::from_ints(&[0, -1]).to_string(), "-X");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["2*X^3 - X^2 - 1", "X^4 + X^2 - 2", "-X", "1/2*X + 3", "7"] {
            assert_eq!(parse_polynomial(s).unwrap().to_string(), s);
        }
        assert_eq!(
            parse_polynomial("x^4+x^2-2").unwrap(),
            Polynomial::from_ints(&[-2, 0, 1, 0, 1])
        );
        assert_eq!(parse_polynomial("3X^2+X^2").unwrap(), Polynomial::from_ints(&[0, 0, 4]));
    }

    #[test]
    fn parse_errors() {
        for s in ["", "X^", "X^a", "2*Y", "1+", "++X"] {
            assert!(parse_polynomial(s).is_err(), "{s}");
        }
    }
}
