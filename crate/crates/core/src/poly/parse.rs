//! Text form of polynomials.
//!
//! ```text
//! expr   := [sign] term (('+' | '-') term)*
//! term   := [coeff] factor*
//! coeff  := integer | integer '/' integer | '(' [sign] integer ['/' integer] ')'
//! factor := 'x' index ['^' [sign] integer]
//! ```
//!
//! Whitespace is free between tokens and `*` may separate factors. Printing
//! emits terms in descending lexicographic order using the same grammar, so
//! `parse(print(p)) == p`.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Exponent, LaurentPoly, Rational};
use crate::{Error, Result};

/// Parses `text` as a Laurent polynomial in `x0..xn`.
pub fn parse_poly(text: &str, n: usize) -> Result<LaurentPoly> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars: n + 1,
    };
    parser.expr()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sign(&mut self) -> bool {
        if self.eat(b'-') {
            return true;
        }
        self.eat(b'+');
        false
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.nvars);
        let mut negative = {
            self.skip_ws();
            self.sign()
        };
        loop {
            let (e, c) = self.term()?;
            out.add_term(e, if negative { -c } else { c });
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.err(self.pos, "expected '+' or '-'"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Exponent, Rational)> {
        self.skip_ws();
        let start = self.pos;
        let coeff = match self.peek() {
            Some(b'0'..=b'9') => Some(self.unsigned_rational()?),
            Some(b'(') => {
                self.pos += 1;
                let neg = self.sign();
                self.skip_ws();
                let q = self.unsigned_rational()?;
                if !self.eat(b')') {
                    return self.err(self.pos, "expected ')'");
                }
                Some(if neg { -q } else { q })
            }
            _ => None,
        };
        let mut exp = Exponent::zero(self.nvars);
        let mut factors = 0usize;
        loop {
            self.skip_ws();
            let star = self.peek() == Some(b'*');
            if star {
                self.pos += 1;
                self.skip_ws();
            }
            if self.peek() != Some(b'x') {
                if star {
                    return self.err(self.pos, "expected a variable after '*'");
                }
                break;
            }
            let var_offset = self.pos;
            self.pos += 1;
            let index = match self.digits() {
                Some(s) => s
                    .parse::<usize>()
                    .or_else(|_| self.err(var_offset, "variable index too large"))?,
                None => return self.err(self.pos, "expected a variable index after 'x'"),
            };
            if index >= self.nvars {
                return Err(Error::VariableOutOfRange {
                    offset: var_offset,
                    index,
                    n: self.nvars - 1,
                });
            }
            let mut power = 1i32;
            if self.eat(b'^') {
                self.skip_ws();
                let neg = match self.peek() {
                    Some(b'-') => {
                        self.pos += 1;
                        true
                    }
                    Some(b'+') => {
                        self.pos += 1;
                        false
                    }
                    _ => false,
                };
                let at = self.pos;
                let s = match self.digits() {
                    Some(s) => s,
                    None => return self.err(self.pos, "expected an integer exponent"),
                };
                let v: i32 = s
                    .parse()
                    .or_else(|_| self.err(at, "exponent out of range"))?;
                power = if neg { -v } else { v };
            }
            let updated = exp.get(index).checked_add(power);
            match updated {
                Some(v) => exp.set(index, v),
                None => return self.err(var_offset, "exponent out of range"),
            }
            factors += 1;
        }
        if coeff.is_none() && factors == 0 {
            return self.err(start, "expected a term");
        }
        Ok((exp, coeff.unwrap_or_else(Rational::one)))
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        core::str::from_utf8(&self.src[start..self.pos]).ok()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let at = self.pos;
        match self.digits() {
            Some(s) => Ok(s.parse::<BigInt>().expect("ascii digits")),
            None => self.err(at, "expected an integer"),
        }
    }

    fn unsigned_rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.eat(b'/') {
            self.skip_ws();
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return self.err(at, "zero denominator");
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Formats a monomial as `x0^2 x3^-1`; empty string for the constant monomial.
pub fn monomial_string(e: &Exponent) -> String {
    let mut parts = alloc::vec::Vec::new();
    for (i, &a) in e.as_slice().iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(format!("x{i}")),
            _ => parts.push(format!("x{i}^{a}")),
        }
    }
    parts.join(" ")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().rev().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mono = monomial_string(e);
            if mono.is_empty() {
                write_rational(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_rational(f, &abs)?;
                    f.write_str(" ")?;
                }
                f.write_str(&mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = monomial_string(self);
        if s.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&s)
        }
    }
}

/// `p/q` form used by reports; integers print without a denominator.
pub fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
