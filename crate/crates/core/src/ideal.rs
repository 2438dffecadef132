use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::error::{Error, ParseError, Result};
use crate::field::FieldElem;
use crate::groebner::{minimal_monomials, GroebnerBasis};
use crate::monomial::{Monomial, MonomialOrder};
use crate::parse::parse_poly_list;
use crate::poly::Poly;
use crate::ring::Ring;

/// An ideal given by generators. The reduced Gröbner basis for the ring's own
/// order is computed on first use and shared between clones.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: Arc<OnceBox<GroebnerBasis>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            ring.check_same(g.ring())?;
        }
        Ok(Ideal::raw(ring, gens.into_iter().filter(|g| !g.is_zero()).collect()))
    }

    fn raw(ring: &Ring, gens: Vec<Poly>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens,
            gb: Arc::new(OnceBox::new()),
        }
    }

    pub fn parse(ring: &Ring, text: &str) -> core::result::Result<Ideal, ParseError> {
        let gens = parse_poly_list(text, ring)?;
        Ok(Ideal::raw(ring, gens.into_iter().filter(|g| !g.is_zero()).collect()))
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::raw(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::raw(ring, alloc::vec![Poly::one(ring)])
    }

    pub fn principal(f: Poly) -> Ideal {
        let ring = f.ring().clone();
        Ideal::raw(&ring, if f.is_zero() { Vec::new() } else { alloc::vec![f] })
    }

    pub fn from_monomials(ring: &Ring, ms: Vec<Monomial>) -> Ideal {
        let gens = minimal_monomials(ring, ms)
            .into_iter()
            .map(|m| Poly::term(ring, m, FieldElem::ONE))
            .collect();
        Ideal::raw(ring, gens)
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::raw(ring, (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Generated by the empty set (or only by zero).
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// All generators are monomials (up to scalars).
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    /// Exponent vectors of the minimal monomial generators, if monomial.
    pub fn monomial_gens(&self) -> Option<Vec<Monomial>> {
        if !self.is_monomial() {
            return None;
        }
        let ms = self.gens.iter().map(|g| g.lead_monomial().unwrap().clone()).collect();
        Some(minimal_monomials(&self.ring, ms))
    }

    /// Same ideal with a smaller generating set where that is cheap: minimal
    /// generators for monomial ideals, duplicates removed otherwise.
    pub fn trimmed(&self) -> Ideal {
        if let Some(ms) = self.monomial_gens() {
            return Ideal::from_monomials(&self.ring, ms);
        }
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.monic()).collect();
        gens.sort_by(|a, b| a.canonical_cmp(b));
        gens.dedup();
        let mut out = Ideal::raw(&self.ring, gens);
        out.gb = self.gb.clone();
        out
    }

    /// Largest total degree of a generator; 0 for the zero ideal.
    pub fn max_degree(&self) -> u64 {
        self.gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0)
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = GroebnerBasis::compute(&self.ring, &self.gens)?;
        // A concurrent fill may win; both values are identical.
        Ok(self.gb.get_or_init(|| Box::new(g)))
    }

    pub fn groebner_in(&self, order: MonomialOrder) -> Result<GroebnerBasis> {
        if order == self.ring.order() {
            return self.groebner().cloned();
        }
        GroebnerBasis::compute(&self.ring.reorder(order)?, &self.gens)
    }

    /// The ideal generated by its reduced Gröbner basis.
    pub fn canonical(&self) -> Result<Ideal> {
        let g = self.groebner()?;
        let mut out = Ideal::raw(&self.ring, g.basis().to_vec());
        out.gb = self.gb.clone();
        Ok(out)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(true);
        }
        if self.is_monomial() {
            return Ok(false);
        }
        Ok(self.groebner()?.is_unit())
    }

    pub fn member(&self, f: &Poly) -> Result<bool> {
        self.ring.check_same(f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        if self.is_monomial() {
            let leads: Vec<&Monomial> = self.gens.iter().map(|g| g.lead_monomial().unwrap()).collect();
            return Ok(f
                .terms()
                .iter()
                .all(|(m, _)| leads.iter().any(|l| l.divides(m))));
        }
        self.groebner()?.contains(f)
    }

    pub fn subset(&self, other: &Ideal) -> Result<bool> {
        self.ring.check_same(&other.ring)?;
        for g in &self.gens {
            if !other.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (mutual containment).
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.subset(other)? && other.subset(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::raw(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        if let (Some(a), Some(b)) = (self.monomial_gens(), other.monomial_gens()) {
            let mut ms = Vec::with_capacity(a.len() * b.len());
            for x in &a {
                for y in &b {
                    ms.push(x.mul(y)?);
                }
            }
            self.check_gen_cap(ms.len())?;
            return Ok(Ideal::from_monomials(&self.ring, ms));
        }
        self.check_gen_cap(self.gens.len().saturating_mul(other.gens.len()))?;
        let mut gens = Vec::new();
        let mut terms = 0usize;
        for f in &self.gens {
            for g in &other.gens {
                let h = f.mul(g)?;
                terms += h.len();
                self.check_term_budget(terms)?;
                gens.push(h);
            }
        }
        Ok(Ideal::raw(&self.ring, gens).dedup())
    }

    fn dedup(mut self) -> Ideal {
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.monic()).collect();
        gens.sort_by(|a, b| a.canonical_cmp(b));
        gens.dedup();
        self.gens = gens;
        self.gb = Arc::new(OnceBox::new());
        self
    }

    fn check_gen_cap(&self, n: usize) -> Result<()> {
        let cap = self.ring.limits().max_generators;
        if n > cap {
            return Err(Error::resource(alloc::format!(
                "ideal would have {n} generators (cap {cap})"
            )));
        }
        Ok(())
    }

    /// Bounds the total size of a generating set being built.
    fn check_term_budget(&self, terms: usize) -> Result<()> {
        let cap = self.ring.limits().max_terms;
        if terms > cap {
            return Err(Error::resource(alloc::format!(
                "generating set exceeds {cap} terms in total"
            )));
        }
        Ok(())
    }

    /// `I^r` generated by all products of `r` generators.
    pub fn power(&self, r: u64) -> Result<Ideal> {
        if r == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        if self.gens.is_empty() {
            return Ok(self.clone());
        }
        if r == 1 {
            return Ok(self.clone());
        }
        if let Some(ms) = self.monomial_gens() {
            return self.monomial_power(&ms, r);
        }
        if self.gens.len() == 1 {
            return Ok(Ideal::principal(self.gens[0].pow(r)?));
        }
        let trimmed = self.trimmed();
        let gens = trimmed.gens;
        let count = multiset_count(gens.len() as u64, r);
        if count.is_none_or(|c| c > self.ring.limits().max_generators as u64) {
            return Err(Error::resource("ideal power has too many generators"));
        }
        // Powers of each generator are shared across products.
        let mut pows: Vec<Vec<Poly>> = Vec::with_capacity(gens.len());
        let mut terms = 0usize;
        for g in &gens {
            let mut v = alloc::vec![Poly::one(&self.ring)];
            for k in 1..=r {
                let next = v[(k - 1) as usize].mul(g)?;
                terms += next.len();
                self.check_term_budget(terms)?;
                v.push(next);
            }
            pows.push(v);
        }
        let mut terms = 0usize;
        let mut out = Vec::new();
        let mut exps = alloc::vec![0u64; gens.len()];
        multisets(&mut exps, 0, r, &mut |e| {
            let mut f = Poly::one(&self.ring);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    f = f.mul(&pows[i][k as usize])?;
                }
            }
            terms += f.len();
            self.check_term_budget(terms)?;
            out.push(f);
            Ok(())
        })?;
        Ok(Ideal::raw(&self.ring, out).dedup())
    }

    fn monomial_power(&self, ms: &[Monomial], r: u64) -> Result<Ideal> {
        if ms.len() == 1 {
            return Ok(Ideal::from_monomials(&self.ring, alloc::vec![ms[0].pow(r)?]));
        }
        let cap = self.ring.limits().max_generators;
        // Square-and-multiply with minimalization keeps the lists short.
        let mut acc: Vec<Monomial> = alloc::vec![Monomial::one(self.ring.nvars())];
        let mut base: Vec<Monomial> = ms.to_vec();
        let mut k = r;
        let mul = |a: &[Monomial], b: &[Monomial]| -> Result<Vec<Monomial>> {
            if a.len().saturating_mul(b.len()) > cap.saturating_mul(16) {
                return Err(Error::resource("ideal power has too many generators"));
            }
            let mut v = Vec::with_capacity(a.len() * b.len());
            for x in a {
                for y in b {
                    v.push(x.mul(y)?);
                }
            }
            let v = minimal_monomials(&self.ring, v);
            if v.len() > cap {
                return Err(Error::resource("ideal power has too many generators"));
            }
            Ok(v)
        };
        while k > 0 {
            if k & 1 == 1 {
                acc = mul(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = mul(&base, &base)?;
            }
        }
        Ok(Ideal::from_monomials(&self.ring, acc))
    }

    /// `I ∩ J` via `(t·I + (1−t)·J) ∩ R` in `R[t]` with `t` eliminated.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(&self.ring));
        }
        if let (Some(a), Some(b)) = (self.monomial_gens(), other.monomial_gens()) {
            let ms = a.iter().flat_map(|x| b.iter().map(move |y| x.lcm(y))).collect();
            return Ok(Ideal::from_monomials(&self.ring, ms));
        }
        let big = self.ring.prepend_var(MonomialOrder::BlockElim(1))?;
        let shift: Vec<usize> = (1..=self.ring.nvars()).collect();
        let t = Poly::var(&big, 0);
        let one_minus_t = Poly::one(&big).sub(&t)?;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for g in &self.gens {
            gens.push(g.embed(&big, &shift)?.mul(&t)?);
        }
        for g in &other.gens {
            gens.push(g.embed(&big, &shift)?.mul(&one_minus_t)?);
        }
        let gb = GroebnerBasis::compute(&big, &gens)?;
        let mut out = Vec::new();
        for f in gb.basis() {
            if f.terms().iter().all(|(m, _)| m.exponents()[0] == 0) {
                out.push(drop_first_var(f, &self.ring));
            }
        }
        Ok(Ideal::raw(&self.ring, out))
    }

    /// `f ∈ rad(I)`, decided by `1 ∈ I + (1 − t·f)` in one more variable.
    pub fn radical_member(&self, f: &Poly) -> Result<bool> {
        self.ring.check_same(f.ring())?;
        if self.member(f)? {
            return Ok(true);
        }
        if self.gens.is_empty() {
            // The polynomial ring is a domain, so only 0 is nilpotent.
            return Ok(f.is_zero());
        }
        let big = self.ring.prepend_var(MonomialOrder::Grevlex)?;
        let shift: Vec<usize> = (1..=self.ring.nvars()).collect();
        let mut gens = Vec::with_capacity(self.gens.len() + 1);
        for g in &self.gens {
            gens.push(g.embed(&big, &shift)?);
        }
        let tf = Poly::var(&big, 0).mul(&f.embed(&big, &shift)?)?;
        gens.push(Poly::one(&big).sub(&tf)?);
        Ok(GroebnerBasis::compute(&big, &gens)?.is_unit())
    }

    /// Image under a ring map `x_i ↦ images[i]`.
    pub fn map(&self, target: &Ring, images: &[Poly]) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute(target, images))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }
}

fn drop_first_var(f: &Poly, target: &Ring) -> Poly {
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| (Monomial::from_exponents(m.exponents()[1..].to_vec()), *c))
        .collect();
    Poly::from_terms(target, terms)
}

/// Number of multisets of size `r` from `n` items, if it fits.
fn multiset_count(n: u64, r: u64) -> Option<u64> {
    // binom(n + r - 1, n - 1)
    let k = n.saturating_sub(1);
    let mut acc: u64 = 1;
    for i in 1..=k {
        acc = acc.checked_mul(r + i)? / i;
    }
    Some(acc)
}

fn multisets(
    exps: &mut Vec<u64>,
    i: usize,
    left: u64,
    f: &mut dyn FnMut(&[u64]) -> Result<()>,
) -> Result<()> {
    if i + 1 == exps.len() {
        exps[i] = left;
        return f(exps);
    }
    for k in (0..=left).rev() {
        exps[i] = k;
        multisets(exps, i + 1, left - k, f)?;
    }
    exps[i] = 0;
    Ok(())
}
