use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::monomial::Monomial;
use crate::ring::Ring;

/// A sparse polynomial. Terms are sorted strictly descending under the ring's
/// order and carry nonzero coefficients.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, FieldElem)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        self.terms == other.terms && self.ring.same(&other.ring)
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, FieldElem::ONE)
    }

    pub fn constant(ring: &Ring, c: FieldElem) -> Poly {
        Poly::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Ring, i: usize) -> Poly {
        Poly::term(ring, Monomial::var(ring.nvars(), i), FieldElem::ONE)
    }

    pub fn term(ring: &Ring, m: Monomial, c: FieldElem) -> Poly {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            alloc::vec![(m, c)]
        };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining like monomials.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, FieldElem)>) -> Poly {
        let ord = ring.order();
        let f = ring.field();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps terms already in canonical order.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Monomial, FieldElem)>) -> Poly {
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<(Monomial, FieldElem)> {
        self.terms
    }

    #[inline]
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn lead(&self) -> Option<&(Monomial, FieldElem)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<FieldElem> {
        self.terms.first().map(|t| t.1)
    }

    /// Largest exponent sum over the terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn constant_coeff(&self) -> FieldElem {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => FieldElem::ZERO,
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(&other.terms, false))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(&other.terms, true))
    }

    fn merge(&self, other: &[(Monomial, FieldElem)], negate: bool) -> Poly {
        let f = self.ring.field();
        let ord = self.ring.order();
        let conv = |c: FieldElem| if negate { f.neg(c) } else { c };
        let mut out = Vec::with_capacity(self.terms.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        while i < a.len() && j < other.len() {
            match ord.cmp(&a[i].0, &other[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((other[j].0.clone(), conv(other[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, conv(other[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(other[j..].iter().map(|(m, c)| (m.clone(), conv(*c))));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Poly {
        let f = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let f = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), f.mul(*d, c))).collect(),
        }
    }

    /// `c·x^m·self`. Multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: FieldElem) -> Result<Poly> {
        if c.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let f = self.ring.field();
        let terms = self
            .terms
            .iter()
            .map(|(n, d)| Ok((n.mul(m)?, f.mul(*d, c))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term(m, *c);
        }
        let cap = self.ring.limits().max_terms;
        if small.len().saturating_mul(big.len()) > cap.saturating_mul(8) {
            return Err(Error::resource("polynomial product too large"));
        }
        let f = self.ring.field();
        let mut raw = Vec::with_capacity(small.len() * big.len());
        for (m, c) in &small.terms {
            for (n, d) in &big.terms {
                raw.push((m.mul(n)?, f.mul(*c, *d)));
            }
        }
        let out = Poly::from_terms(&self.ring, raw);
        if out.len() > cap {
            return Err(Error::resource("polynomial has too many terms"));
        }
        Ok(out)
    }

    /// `self^(q)` term by term with `q = p^e`; equals `self^q` in characteristic p.
    pub fn frobenius(&self, e: u32) -> Result<Poly> {
        if e == 0 {
            return Ok(self.clone());
        }
        let q = pow_checked(self.ring.characteristic() as u64, e)?;
        let f = self.ring.field();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.pow(q)?, f.frobenius(*c, e))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// `self^r`, splitting `r` into base-p digits so that each digit power is
    /// applied to a cheap Frobenius image.
    pub fn pow(&self, r: u64) -> Result<Poly> {
        if r == 0 {
            return Ok(Poly::one(&self.ring));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            let c = self.ring.field().pow(*c, r);
            return Ok(Poly::term(&self.ring, m.pow(r)?, c));
        }
        let p = self.ring.characteristic() as u64;
        let mut acc = Poly::one(&self.ring);
        let mut rest = r;
        let mut e = 0u32;
        while rest > 0 {
            let digit = rest % p;
            rest /= p;
            if digit > 0 {
                let base = self.frobenius(e)?;
                acc = acc.mul(&base.pow_small(digit)?)?;
            }
            e += 1;
        }
        Ok(acc)
    }

    fn pow_small(&self, mut k: u64) -> Result<Poly> {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Scales so the lead coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) if c == FieldElem::ONE => self.clone(),
            Some(c) => {
                let inv = self.ring.field().inv(c).expect("lead coefficient is nonzero");
                self.scale(inv)
            }
        }
    }

    /// Re-sorts into a ring with the same variables and field but possibly a
    /// different term order.
    pub fn to_ring(&self, target: &Ring) -> Result<Poly> {
        if self.ring.same(target) {
            return Ok(self.clone());
        }
        if target.field() != self.ring.field() || target.var_names() != self.ring.var_names() {
            return Err(Error::RingMismatch);
        }
        let mut terms = self.terms.clone();
        let ord = target.order();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Ok(Poly {
            ring: target.clone(),
            terms,
        })
    }

    /// Renames variables: variable `i` of `self` becomes variable `map[i]` of
    /// `target`. The map must be injective.
    pub fn embed(&self, target: &Ring, map: &[usize]) -> Result<Poly> {
        if map.len() != self.ring.nvars() || target.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        let n = target.nvars();
        if map.iter().any(|&j| j >= n) {
            return Err(Error::RingMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = alloc::vec![0u32; n];
                for (i, &v) in m.exponents().iter().enumerate() {
                    e[map[i]] += v;
                }
                (Monomial::from_exponents(e), *c)
            })
            .collect();
        Ok(Poly::from_terms(target, terms))
    }

    /// Ring homomorphism `x_i ↦ images[i]` into the ring of the images.
    pub fn substitute(&self, target: &Ring, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ring.nvars() || target.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        for g in images {
            target.check_same(g.ring())?;
        }
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, *c);
            for (i, &v) in m.exponents().iter().enumerate() {
                if v > 0 {
                    t = t.mul(&images[i].pow(v as u64)?)?;
                }
                if t.is_zero() {
                    break;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Total order on polynomials of one ring, used to sort generator lists.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        let ord = self.ring.order();
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let c = ord.cmp(&a.0, &b.0).then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

pub(crate) fn pow_checked(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or(Error::ExponentOverflow)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.ring.var_names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut first = true;
            if *c != FieldElem::ONE || m.is_one() {
                write!(f, "{c}")?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(&names[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
