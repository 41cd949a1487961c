//! Text grammar for polynomials: terms joined by `+`/`-`, monomials written
//! `c*x1^2*x3` with `*` and `^` mandatory between factors, coefficients as
//! integers or `a/b` rationals. Variable names are supplied by the caller and
//! mapped positionally onto x1..xn.

use alloc::string::{String, ToString};

use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

/// Syntax or semantic error with a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "at byte {}: {}", self.pos, self.message)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, message: impl ToString) -> ParseError {
        ParseError {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        self.text[start..self.pos]
            .parse::<i64>()
            .map_err(|_| ParseError {
                pos: start,
                message: String::from("number too large"),
            })
    }

    fn ident(&mut self) -> Option<&'a str> {
        let start = self.pos;
        if !self
            .peek()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        {
            return None;
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        Some(&self.text[start..self.pos])
    }
}

/// Parse one polynomial over `ring`, with `names[i]` the surface name of x_{i+1}.
pub fn parse_polynomial<K: Field>(
    ring: &PolyRing<K>,
    names: &[String],
    text: &str,
) -> Result<Polynomial<K>, ParseError> {
    assert_eq!(names.len(), ring.nvars);
    let mut cur = Cursor::new(text);
    let poly = parse_sum(ring, names, &mut cur)?;
    cur.skip_ws();
    if cur.pos != text.len() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(poly)
}

fn parse_sum<K: Field>(
    ring: &PolyRing<K>,
    names: &[String],
    cur: &mut Cursor<'_>,
) -> Result<Polynomial<K>, ParseError> {
    let mut acc = ring.zero();
    let mut first = true;
    loop {
        cur.skip_ws();
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else if cur.peek().is_none() || cur.peek() == Some(')') || cur.peek() == Some(',') {
            return Ok(acc);
        } else {
            return Err(cur.err("expected '+' or '-'"));
        };
        let term = parse_term(ring, names, cur)?;
        acc = if negative {
            acc.try_sub(&term).expect("same ring")
        } else {
            acc.try_add(&term).expect("same ring")
        };
        first = false;
        cur.skip_ws();
        if cur.peek().is_none() || cur.peek() == Some(')') || cur.peek() == Some(',') {
            return Ok(acc);
        }
    }
}

fn parse_term<K: Field>(
    ring: &PolyRing<K>,
    names: &[String],
    cur: &mut Cursor<'_>,
) -> Result<Polynomial<K>, ParseError> {
    let mut coeff = ring.field.one();
    let mut mon = Monomial::one(ring.nvars);
    loop {
        cur.skip_ws();
        let at = cur.pos;
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = cur.integer()?;
            let den = if cur.eat('/') { cur.integer()? } else { 1 };
            if den == 0 {
                return Err(ParseError {
                    pos: at,
                    message: String::from("zero denominator"),
                });
            }
            let p = ring.field.characteristic();
            if p != 0 && (den.unsigned_abs() % p) == 0 {
                return Err(ParseError {
                    pos: at,
                    message: alloc::format!("denominator {den} is not invertible mod {p}"),
                });
            }
            coeff = ring.field.mul(&coeff, &ring.field.from_ratio(num, den));
        } else {
            let Some(name) = cur.ident() else {
                return Err(cur.err("expected a coefficient or variable"));
            };
            let Some(idx) = names.iter().position(|n| n == name) else {
                return Err(ParseError {
                    pos: at,
                    message: alloc::format!("unknown variable `{name}`"),
                });
            };
            let exp = if cur.eat('^') {
                let e = cur.integer()?;
                if e < 0 {
                    return Err(cur.err("negative exponent"));
                }
                e as u32
            } else {
                1
            };
            mon = mon.mul(&Monomial::var(ring.nvars, idx).pow(exp));
        }
        cur.skip_ws();
        if !cur.eat('*') {
            break;
        }
    }
    Ok(ring.monomial_term(mon, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::MonomialOrder;
    use alloc::vec;
    use alloc::vec::Vec;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| alloc::format!("x{i}")).collect()
    }

    #[test]
    fn parses_relations_of_the_running_example() {
        let r = PolyRing::new(PrimeField::new(101).unwrap(), 5, MonomialOrder::Grevlex);
        let ns = names(5);
        let f = parse_polynomial(&r, &ns, "x1^2-x2*x3").unwrap();
        let expected = r
            .var(0)
            .pow(2)
            .try_sub(&r.var(1).try_mul(&r.var(2)).unwrap())
            .unwrap();
        assert_eq!(f, expected);
        let g = parse_polynomial(&r, &ns, " - x3 + x4 + 2*x5 ").unwrap();
        let e2 = r
            .var(3)
            .try_add(&r.var(4).scale(&2))
            .unwrap()
            .try_sub(&r.var(2))
            .unwrap();
        assert_eq!(g, e2);
    }

    #[test]
    fn rational_coefficients() {
        let r = PolyRing::new(Rationals, 2, MonomialOrder::Grevlex);
        let f = parse_polynomial(&r, &names(2), "1/2*x1^2 - 3*x2").unwrap();
        assert_eq!(
            f.coeff(&Monomial::new(vec![2, 0])),
            Rationals.from_ratio(1, 2)
        );
        assert_eq!(f.coeff(&Monomial::new(vec![0, 1])), Rationals.from_i64(-3));
    }

    #[test]
    fn error_positions() {
        let r = PolyRing::new(Rationals, 2, MonomialOrder::Grevlex);
        let e = parse_polynomial(&r, &names(2), "x1 + y2").unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(e.message.contains("unknown variable"));
        let e = parse_polynomial(&r, &names(2), "x1^").unwrap_err();
        assert!(e.message.contains("number"));
    }

    #[test]
    fn aliased_variable_names() {
        let r = PolyRing::new(Rationals, 3, MonomialOrder::Grevlex);
        let ns = vec![String::from("a"), String::from("b"), String::from("c")];
        let f = parse_polynomial(&r, &ns, "a*c - b^2").unwrap();
        let expected = r
            .var(0)
            .try_mul(&r.var(2))
            .unwrap()
            .try_sub(&r.var(1).pow(2))
            .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn non_invertible_denominator_mod_p() {
        let r = PolyRing::new(PrimeField::new(5).unwrap(), 1, MonomialOrder::Grevlex);
        let e = parse_polynomial(&r, &names(1), "1/5*x1").unwrap_err();
        assert!(e.message.contains("not invertible"));
    }
}
