//! Slow, independent reference computations used to cross-check the main
//! algorithms.

use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::frobenius::{bracket_power, check_exponent, frobenius_root};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::rat::Rat;

fn monomial_gens(a: &Ideal) -> Result<Vec<Monomial>> {
    a.monomial_gens()
        .ok_or_else(|| Error::precondition("ideal is not generated by monomials"))
}

/// Root of a monomial ideal: `x^u ↦ x^⌊u/q⌋` on each generator.
pub fn root_monomial(b: &Ideal, e: u32) -> Result<Ideal> {
    let gens = monomial_gens(b)?;
    check_exponent(b.ring(), e)?;
    if e == 0 {
        return Ok(b.clone());
    }
    let q = (b.ring().characteristic() as u64).checked_pow(e);
    let ms = gens
        .iter()
        .map(|m| {
            let v = m
                .exponents()
                .iter()
                .map(|&x| q.map_or(0, |q| (x as u64 / q) as u32))
                .collect();
            Monomial::from_exponents(v)
        })
        .collect();
    Ok(Ideal::from_monomials(b.ring(), ms))
}

/// `ν^J_a(p^e)` by literally increasing `r` until `a^r ⊆ J^[p^e]`.
///
/// Returns 0 when `J` is the unit ideal.
pub fn nu_bruteforce(a: &Ideal, j: &Ideal, e: u32) -> Result<u64> {
    let jq = bracket_power(j, e)?;
    let q = (a.ring().characteristic() as u64)
        .checked_pow(e)
        .ok_or(Error::ExponentOverflow)?;
    // a^ℓ ⊆ J for some ℓ, then a^{ℓ(s(q-1)+1)} ⊆ J^[q]; stop well past that.
    let s = a.gens().len().max(1) as u64;
    let mut ell = 1u64;
    while !a.power(ell)?.subset(j)? {
        ell += 1;
        if ell > 64 {
            return Err(Error::precondition("a is not contained in rad(J)"));
        }
    }
    let limit = ell * (s * (q - 1) + 1);
    let mut pow = Ideal::unit(a.ring());
    for r in 0..=limit {
        if pow.subset(&jq)? {
            return Ok(r.saturating_sub(1));
        }
        pow = pow.product(a)?;
    }
    Err(Error::resource("brute-force search exceeded its bound"))
}

/// The raw chain `(e, (a^⌈c p^e⌉)^[1/p^e])` for `e = 1..=e_max`.
pub fn tau_bruteforce(a: &Ideal, c: &Rat, e_max: u32) -> Result<Vec<(u32, Ideal)>> {
    let p = a.ring().characteristic() as u64;
    let mut out = Vec::with_capacity(e_max as usize);
    for e in 1..=e_max {
        check_exponent(a.ring(), e)?;
        let q = p.checked_pow(e).ok_or(Error::ExponentOverflow)?;
        let r = c.ceil_mul(&q.into());
        let r: u64 = u64::try_from(r).map_err(|_| Error::ExponentOverflow)?;
        let term = frobenius_root(&a.power(r)?, e)?;
        out.push((e, term));
    }
    Ok(out)
}

fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Is there `λ >= 0` with `Σλ = 1` and `Σ λ_i v_i <= u`? Decided exactly
/// by Fourier–Motzkin elimination over the integers.
fn in_newton_polyhedron(vs: &[Monomial], u: &[u32]) -> bool {
    let m = vs.len();
    if m == 0 {
        return false;
    }
    // Eliminate λ_m = 1 − Σ_{i<m} λ_i. Constraints are rows [a_1..a_{m-1}, b]
    // meaning Σ a_i λ_i <= b.
    let k = m - 1;
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for (j, &uj) in u.iter().enumerate() {
        let last = vs[k].exponents()[j] as i128;
        let mut row: Vec<i128> = (0..k)
            .map(|i| vs[i].exponents()[j] as i128 - last)
            .collect();
        row.push(uj as i128 - last);
        rows.push(row);
    }
    for i in 0..k {
        let mut row = alloc::vec![0i128; k + 1];
        row[i] = -1;
        rows.push(row);
    }
    // λ_m >= 0  ⇔  Σ_{i<m} λ_i <= 1.
    let mut row = alloc::vec![1i128; k + 1];
    row[k] = 1;
    rows.push(row);

    for var in (0..k).rev() {
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            match r[var].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => zero.push(r),
            }
        }
        for p in &pos {
            for n in &neg {
                let (a, b) = (p[var], -n[var]);
                let mut comb: Vec<i128> = p.iter().zip(n).map(|(x, y)| b * x + a * y).collect();
                comb[var] = 0;
                let g = gcd_all(&comb);
                if g > 1 {
                    comb.iter_mut().for_each(|x| *x /= g);
                }
                zero.push(comb);
            }
        }
        rows = zero;
        rows.sort();
        rows.dedup();
    }
    rows.iter().all(|r| r[k] >= 0)
}

/// Integral closure of a monomial ideal: monomials in the Newton polyhedron,
/// searched among exponent vectors bounded by the generators' componentwise
/// maximum.
pub fn integral_closure_monomial(a: &Ideal) -> Result<Ideal> {
    let gens = monomial_gens(a)?;
    let ring = a.ring();
    if gens.is_empty() {
        return Ok(Ideal::zero(ring));
    }
    let n = ring.nvars();
    let maxes: Vec<u32> = (0..n)
        .map(|j| gens.iter().map(|g| g.exponents()[j]).max().unwrap())
        .collect();
    let total: u64 = maxes.iter().map(|&x| x as u64 + 1).product();
    if total > 1_000_000 {
        return Err(Error::resource("integral closure search box too large"));
    }
    let mut found = Vec::new();
    let mut u = alloc::vec![0u32; n];
    loop {
        if in_newton_polyhedron(&gens, &u) {
            found.push(Monomial::from_exponents(u.clone()));
        }
        let mut j = 0;
        loop {
            if j == n {
                return Ok(Ideal::from_monomials(ring, found));
            }
            if u[j] < maxes[j] {
                u[j] += 1;
                break;
            }
            u[j] = 0;
            j += 1;
        }
    }
}
