//! Text form of polynomials.
//!
//! ```text
//! poly   := term (('+' | '-') term)*      a leading '-' is allowed
//! term   := coeff ('*' varpow)* | varpow ('*' varpow)*
//! varpow := var ('^' nat)?
//! ```
//!
//! Coefficients are decimal naturals reduced mod p; `-t` means `(p-1)*t`.
//! Whitespace between tokens is ignored. Error offsets are byte offsets.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{ParseError, ParseErrorKind};
use crate::field::FieldElem;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;

type PResult<T> = core::result::Result<T, ParseError>;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err_here(&self) -> ParseError {
        match self.text[self.pos..].chars().next() {
            Some(c) => ParseError::new(self.pos, ParseErrorKind::Unexpected(c)),
            None => ParseError::new(self.pos, ParseErrorKind::UnexpectedEnd),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn coeff(&mut self) -> Option<FieldElem> {
        let p = self.ring.characteristic() as u64;
        let ds = self.digits()?;
        let v = ds
            .bytes()
            .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
        Some(self.ring.field().elem(v))
    }

    fn varpow(&mut self, m: &mut Monomial) -> PResult<()> {
        let start = self.pos;
        match self.peek() {
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {}
            _ => return Err(self.err_here()),
        }
        while self
            .peek()
            .is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_')
        {
            self.pos += 1;
        }
        let name = &self.text[start..self.pos];
        let idx = self.ring.var_index(name).ok_or_else(|| {
            ParseError::new(start, ParseErrorKind::UnknownVariable(name.to_string()))
        })?;
        self.skip_ws();
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let ds = self.digits().ok_or_else(|| self.err_here())?;
            exp = ds
                .parse()
                .map_err(|_| ParseError::new(at, ParseErrorKind::ExponentOverflow))?;
        }
        let slot = &mut m.exps_mut()[idx];
        *slot = slot
            .checked_add(exp)
            .ok_or(ParseError::new(start, ParseErrorKind::ExponentOverflow))?;
        Ok(())
    }

    fn term(&mut self) -> PResult<(Monomial, FieldElem)> {
        let mut m = Monomial::one(self.ring.nvars());
        let c = match self.coeff() {
            Some(c) => {
                self.skip_ws();
                if self.peek() != Some(b'*') {
                    return Ok((m, c));
                }
                self.pos += 1;
                self.skip_ws();
                c
            }
            None => FieldElem::ONE,
        };
        loop {
            self.varpow(&mut m)?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            } else {
                return Ok((m, c));
            }
        }
    }

    /// Parses a polynomial, stopping before a `,` or the end of input.
    fn poly(&mut self) -> PResult<Poly> {
        let f = *self.ring.field();
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            negate = true;
            self.pos += 1;
            self.skip_ws();
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negate { f.neg(c) } else { c }));
            self.skip_ws();
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => break,
            }
            self.pos += 1;
            self.skip_ws();
        }
        Ok(Poly::from_terms(self.ring, terms))
    }
}

/// Parses one polynomial; the whole input must be consumed.
pub fn parse_poly(text: &str, ring: &Ring) -> PResult<Poly> {
    let mut p = Parser { text, pos: 0, ring };
    let f = p.poly()?;
    if p.pos != text.len() {
        return Err(p.err_here());
    }
    Ok(f)
}

/// Parses a comma-separated list of polynomials. Empty input gives no
/// polynomials.
pub fn parse_poly_list(text: &str, ring: &Ring) -> PResult<Vec<Poly>> {
    let mut p = Parser { text, pos: 0, ring };
    let mut out = Vec::new();
    p.skip_ws();
    if p.pos == text.len() {
        return Ok(out);
    }
    loop {
        out.push(p.poly()?);
        match p.peek() {
            Some(b',') => p.pos += 1,
            None => return Ok(out),
            _ => return Err(p.err_here()),
        }
    }
}
