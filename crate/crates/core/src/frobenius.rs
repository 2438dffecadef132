//! Frobenius bracket powers `J^[q]` and Frobenius roots `b^[1/q]`, `q = p^e`.
//!
//! `R = F_p[x]` is free over `R^q` with basis `{x^u : 0 <= u_j < q}`. Writing
//! each generator as `h = Σ_u a_u^q x^u`, the root `b^[1/q]` is generated by
//! all the `a_u`. No Gröbner computation is involved.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;

pub(crate) fn check_exponent(ring: &Ring, e: u32) -> Result<()> {
    let cap = ring.limits().max_frobenius_exponent;
    if e > cap {
        return Err(Error::resource(alloc::format!(
            "Frobenius exponent {e} exceeds the limit {cap}"
        )));
    }
    Ok(())
}

/// `q = p^e`, or `None` when it does not fit in 64 bits.
pub(crate) fn frob_q(ring: &Ring, e: u32) -> Option<u64> {
    (ring.characteristic() as u64).checked_pow(e)
}

/// `J^[p^e]`, generated by the `p^e`-th powers of the generators of `J`.
pub fn bracket_power(j: &Ideal, e: u32) -> Result<Ideal> {
    check_exponent(j.ring(), e)?;
    if e == 0 {
        return Ok(j.clone());
    }
    let gens = j
        .gens()
        .iter()
        .map(|g| g.frobenius(e))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(j.ring(), gens)
}

/// Splits one polynomial into its basis components: `h = Σ_u a_u^q x^u`.
/// Returns the nonzero `a_u`, keyed by `u`.
fn components(h: &Poly, e: u32, q: Option<u64>) -> BTreeMap<Vec<u32>, Vec<(Monomial, FieldElem)>> {
    let field = h.ring().field();
    let mut buckets: BTreeMap<Vec<u32>, Vec<(Monomial, FieldElem)>> = BTreeMap::new();
    for (m, c) in h.terms() {
        let (w, u) = match q {
            Some(q) => m.split_by(q),
            // Every exponent is below q: the whole monomial is the basis part.
            None => (Monomial::one(m.nvars()), m.clone()),
        };
        buckets
            .entry(u.exponents().to_vec())
            .or_default()
            .push((w, field.pe_root(*c, e)));
    }
    buckets
}

/// `b^[1/p^e]`: the smallest ideal `J` with `b ⊆ J^[p^e]`.
pub fn frobenius_root(b: &Ideal, e: u32) -> Result<Ideal> {
    let ring = b.ring();
    check_exponent(ring, e)?;
    if e == 0 || b.is_zero_ideal() {
        return Ok(b.clone());
    }
    let q = frob_q(ring, e);
    let mut out: Vec<Poly> = Vec::new();
    for h in b.gens() {
        for (_, terms) in components(h, e, q) {
            let a = Poly::from_terms(ring, terms);
            if a.is_zero() {
                continue;
            }
            if a.is_unit() {
                return Ok(Ideal::unit(ring));
            }
            out.push(a.monic());
        }
    }
    if out.iter().all(|g| g.is_monomial()) {
        let ms = out.iter().map(|g| g.lead_monomial().unwrap().clone()).collect();
        return Ok(Ideal::from_monomials(ring, ms));
    }
    out.sort_by(|a, c| a.canonical_cmp(c));
    out.dedup();
    Ideal::new(ring, out)
}

/// `b^[p^{e_num}/p^{e_den}]`, i.e. the root of the bracket power.
pub fn root_scaled(b: &Ideal, e_num: u32, e_den: u32) -> Result<Ideal> {
    frobenius_root(&bracket_power(b, e_num)?, e_den)
}
