//! `ν^J_a(p^e)`, F-thresholds, F-pure thresholds, the denominator bound for
//! F-jumping exponents, and enumeration of the jumping exponents.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frobenius::{check_exponent, frob_q};
use crate::ideal::Ideal;
use crate::rat::{farey_neighbours, simplest_in, Bound, Rat};
use crate::testideal::{power_root, tau, TauParams, TauResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NuRecord {
    pub e: u32,
    pub q: u64,
    pub nu: u64,
}

#[derive(Clone, Debug)]
pub struct ThresholdEstimate {
    pub lower: Rat,
    pub upper: Rat,
    pub guess: Option<Rat>,
    pub certified: bool,
    pub records: Vec<NuRecord>,
}

/// Every F-jumping exponent `α` of `a` satisfies `p^s (p^b − 1) α ∈ ℕ` for
/// some `s <= e0 + N` and `1 <= b <= N`, where `p^{e0} > m d` with `e0`
/// minimal and `N = binom(m d + n, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenomBound {
    pub p: u32,
    pub m: u64,
    pub d: u64,
    pub n: usize,
    pub e0: u32,
    pub big_n: u64,
    d_max: BigUint,
    pub cap: Option<BigUint>,
}

/// Largest `N` for which the bound is materialized.
const MAX_BIG_N: u64 = 1 << 20;

impl DenomBound {
    /// `p^{e0+N} (p^N − 1)`, a bound on every admissible denominator.
    pub fn d_max(&self) -> &BigUint {
        &self.d_max
    }

    /// Largest `s` allowed in `p^s`.
    pub fn max_p_exponent(&self) -> u64 {
        self.e0 as u64 + self.big_n
    }

    pub fn with_cap(mut self, cap: Option<BigUint>) -> Self {
        self.cap = cap;
        self
    }

    /// The denominator bound actually used: the cap when it is smaller.
    pub fn effective_max(&self) -> BigUint {
        match &self.cap {
            Some(c) if *c < self.d_max => c.clone(),
            _ => self.d_max.clone(),
        }
    }

    pub fn cap_below_bound(&self) -> bool {
        self.cap.as_ref().is_some_and(|c| *c < self.d_max)
    }

    /// Does some `p^s (p^b − 1)` in the family have `den` as a divisor?
    pub fn is_admissible(&self, den: &BigUint) -> bool {
        if den.is_zero() {
            return false;
        }
        let p = BigUint::from(self.p);
        let mut rest = den.clone();
        let mut s = 0u64;
        while (&rest % &p).is_zero() {
            rest /= &p;
            s += 1;
        }
        if s > self.max_p_exponent() {
            return false;
        }
        if rest.is_one() {
            return true;
        }
        // Need ord_rest(p) <= N; the order is below rest.
        if rest <= BigUint::from(self.big_n) + 1u32 {
            return true;
        }
        let mut x = &p % &rest;
        for _ in 1..self.big_n {
            if x.is_one() {
                return true;
            }
            x = (x * &p) % &rest;
        }
        x.is_one()
    }
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// The denominator family for the jumping exponents of `a`, computed from a
/// trimmed generating set.
pub fn denom_bound(a: &Ideal) -> Result<DenomBound> {
    let a = a.trimmed();
    let ring = a.ring();
    let p = ring.characteristic();
    let m = a.gens().len() as u64;
    let d = a.max_degree();
    let n = ring.nvars();
    let md = m.checked_mul(d).ok_or(Error::ExponentOverflow)?;
    let mut e0 = 0u32;
    let mut pe: u128 = 1;
    while pe <= md as u128 {
        pe *= p as u128;
        e0 += 1;
    }
    let big_n = binomial(md + n as u64, n as u64)
        .filter(|&b| b <= MAX_BIG_N)
        .ok_or_else(|| Error::resource("denominator bound is astronomically large"))?;
    let pb = BigUint::from(p);
    let d_max = pb.pow((e0 as u64 + big_n) as u32) * (pb.pow(big_n as u32) - 1u32);
    Ok(DenomBound {
        p,
        m,
        d,
        n,
        e0,
        big_n,
        d_max,
        cap: None,
    })
}

fn check_radical(a: &Ideal, j: &Ideal) -> Result<()> {
    a.ring().check_same(j.ring())?;
    if a.is_zero_ideal() {
        return Err(Error::precondition("a must be nonzero"));
    }
    for g in a.gens() {
        if !j.radical_member(g)? {
            return Err(Error::precondition(alloc::format!(
                "a ⊆ rad(J) fails: generator {g} is not in rad(J)"
            )));
        }
    }
    Ok(())
}

/// Smallest `ℓ >= 1` with `a^ℓ ⊆ J`.
fn containment_power(a: &Ideal, j: &Ideal) -> Result<u64> {
    let mut pow = a.clone();
    let mut ell = 1u64;
    while !pow.subset(j)? {
        pow = pow.product(a)?;
        ell += 1;
    }
    Ok(ell)
}

/// `a^r ⊆ J^[q]`, tested as `(a^r)^[1/q] ⊆ J`.
fn contained(a: &Ideal, j: &Ideal, r: u64, e: u32) -> Result<bool> {
    power_root(a, r, e)?.subset(j)
}

/// Largest `r` in `[lo, hi)` with `a^r ⊄ J^[q]`, given that this fails at
/// `lo` and holds at `hi`.
fn search(a: &Ideal, j: &Ideal, e: u32, mut lo: u64, mut hi: u64) -> Result<u64> {
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if contained(a, j, mid, e)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo)
}

fn upper_search_bound(a: &Ideal, ell: u64, q: u64) -> Result<u64> {
    let s = a.gens().len() as u64;
    s.checked_mul(q - 1)
        .and_then(|x| x.checked_add(1))
        .and_then(|x| x.checked_mul(ell))
        .ok_or(Error::ExponentOverflow)
}

/// `ν^J_a(p^e)`: the largest `r` with `a^r ⊄ J^[p^e]`. Zero when `J = R`.
pub fn nu(a: &Ideal, j: &Ideal, e: u32) -> Result<u64> {
    check_radical(a, j)?;
    check_exponent(a.ring(), e)?;
    if j.is_unit()? {
        return Ok(0);
    }
    let a = a.trimmed();
    let q = frob_q(a.ring(), e).ok_or(Error::ExponentOverflow)?;
    let ell = containment_power(&a, j)?;
    // a^{ℓ(s(q−1)+1)} ⊆ (a^{[q]})^ℓ ⊆ J^[q].
    let hi = upper_search_bound(&a, ell, q)?;
    search(&a, j, e, 0, hi)
}

/// Estimates `c^J(a) = lim ν(p^e)/p^e` from `ν` at `e = 1..=e_max`.
///
/// Pigeonhole: if `R >= q'(ν(q)+1) + m(q'−1)`, every product of `R`
/// generators contains `(a^{ν(q)+1})^[q']`, so `a^R ⊆ J^[q q']`. Hence
/// `ν(q q') < q'(ν(q) + 1 + m)` and `c^J(a) <= (ν(q) + m + 1)/q`.
pub fn fthreshold(a: &Ideal, j: &Ideal, e_max: u32) -> Result<ThresholdEstimate> {
    check_radical(a, j)?;
    if e_max == 0 {
        return Err(Error::precondition("e_max must be at least 1"));
    }
    check_exponent(a.ring(), e_max)?;
    let a = a.trimmed();
    let p = a.ring().characteristic() as u64;
    let m = a.gens().len() as u64;
    let mut records: Vec<NuRecord> = Vec::with_capacity(e_max as usize);
    if j.is_unit()? {
        for e in 1..=e_max {
            let q = frob_q(a.ring(), e).ok_or(Error::ExponentOverflow)?;
            records.push(NuRecord { e, q, nu: 0 });
        }
    } else {
        let ell = containment_power(&a, j)?;
        for e in 1..=e_max {
            let q = frob_q(a.ring(), e).ok_or(Error::ExponentOverflow)?;
            let (lo, hi) = match records.last() {
                // p·ν(q) <= ν(pq) <= p(ν(q)+1) + m(p−1) − 1.
                Some(prev) => (p * prev.nu, p * (prev.nu + 1) + m * (p - 1)),
                None => (0, upper_search_bound(&a, ell, q)?),
            };
            let nu = search(&a, j, e, lo, hi)?;
            records.push(NuRecord { e, q, nu });
        }
    }
    let last = *records.last().unwrap();
    let lower = Rat::frac(last.nu, last.q);
    let upper = Rat::frac(last.nu + m + 1, last.q);
    let family = denom_bound(&a)?;
    let guess = consistent_guess(&records, &family).or_else(|| {
        simplest_admissible(
            &Bound::Closed(lower.clone()),
            &Bound::Closed(upper.clone()),
            &family,
            last.q,
        )
    });
    Ok(ThresholdEstimate {
        lower,
        upper,
        guess,
        certified: false,
        records,
    })
}

/// Simplest admissible rational `g` with `ν(p^e) = ⌈g p^e⌉ − 1` for every
/// record, i.e. `g ∈ (ν/q, (ν+1)/q]` for all of them.
fn consistent_guess(records: &[NuRecord], family: &DenomBound) -> Option<Rat> {
    let mut lo = Rat::zero();
    let mut hi: Option<Rat> = None;
    for r in records {
        let l = Rat::frac(r.nu, r.q);
        let h = Rat::frac(r.nu + 1, r.q);
        if l > lo {
            lo = l;
        }
        if hi.as_ref().is_none_or(|x| h < *x) {
            hi = Some(h);
        }
    }
    let hi = hi?;
    if hi <= lo {
        return None;
    }
    let q_max = records.last()?.q;
    simplest_admissible(&Bound::Open(lo), &Bound::Closed(hi), family, q_max)
}

/// Smallest-denominator admissible rational in the interval, searching
/// denominators up to a multiple of `q_max` (a power of p always qualifies
/// at that scale when the interval is at least `1/q_max` wide).
fn simplest_admissible(lo: &Bound, hi: &Bound, family: &DenomBound, q_max: u64) -> Option<Rat> {
    let limit = q_max.saturating_mul(family.p as u64).max(64);
    let hi_val = match hi {
        Bound::Closed(x) | Bound::Open(x) => x,
        Bound::Unbounded => return None,
    };
    let d_max = family.effective_max();
    for den in 1..=limit {
        let den_b = BigUint::from(den);
        if den_b > d_max {
            break;
        }
        // Largest numerator with k/den inside the upper end.
        let mut k = hi_val.floor_mul(&den_b);
        let cand = Rat::from_ratio(num_rational::Ratio::new(k.clone(), den_b.clone()));
        if matches!(hi, Bound::Open(_)) && cand == *hi_val {
            if k.is_zero() {
                continue;
            }
            k -= 1u32;
        }
        let cand = Rat::from_ratio(num_rational::Ratio::new(k, den_b.clone()));
        let above_lo = match lo {
            Bound::Closed(x) => cand >= *x,
            Bound::Open(x) => cand > *x,
            Bound::Unbounded => true,
        };
        if !above_lo {
            continue;
        }
        // The reduced form may have a smaller, already rejected denominator;
        // only accept genuinely new denominators.
        if *cand.denom() != den_b {
            continue;
        }
        if family.is_admissible(&den_b) {
            return Some(cand);
        }
    }
    None
}

/// F-pure threshold estimate: `J = (x_1, ..., x_n)`.
pub fn fpt(a: &Ideal, e_max: u32) -> Result<ThresholdEstimate> {
    for g in a.gens() {
        if !g.constant_coeff().is_zero() {
            return Err(Error::precondition(alloc::format!(
                "generator {g} has a nonzero constant term"
            )));
        }
    }
    fthreshold(a, &Ideal::maximal(a.ring()), e_max)
}

#[derive(Clone, Debug)]
pub struct JumpList {
    pub jumps: Vec<Rat>,
    /// `ideals[i]` is `τ` on `[jumps[i], jumps[i+1])`.
    pub ideals: Vec<Ideal>,
    pub certified: bool,
    pub bound: DenomBound,
}

struct Evaluator<'a> {
    a: &'a Ideal,
    params: &'a TauParams,
    all_certified: bool,
}

impl Evaluator<'_> {
    fn at(&mut self, c: &Rat) -> Result<TauResult> {
        let r = tau(self.a, c, self.params)?;
        self.all_certified &= r.certified;
        Ok(r)
    }
}

/// All F-jumping exponents of `a` in `[0, B]` with the test ideals between
/// them.
///
/// Between consecutive jumps `τ` is constant (right continuity), so the next
/// jump after `c0` is located by bisection on `τ(mid) = τ(c0)`. Since jump
/// denominators are at most `D`, two jumps are at least `1/D²` apart and the
/// bisection can stop once the bracket is narrower than that.
pub fn jumping_exponents(
    a: &Ideal,
    b: &Rat,
    params: &TauParams,
    cap: Option<BigUint>,
) -> Result<JumpList> {
    if a.is_zero_ideal() {
        return Err(Error::precondition("a must be nonzero"));
    }
    if b.is_zero() {
        return Err(Error::precondition("B must be positive"));
    }
    let family = denom_bound(a)?.with_cap(cap);
    let d_eff = family.effective_max();
    let d_eff_sq = &d_eff * &d_eff;
    let mut ev = Evaluator {
        a,
        params,
        all_certified: true,
    };
    let mut admissible = !family.cap_below_bound();

    let mut jumps = alloc::vec![Rat::zero()];
    let mut ideals = alloc::vec![ev.at(&Rat::zero())?.ideal];
    let tau_b = ev.at(b)?.ideal;
    loop {
        let c0 = jumps.last().unwrap().clone();
        let cur = ideals.last().unwrap().clone();
        if tau_b.equals(&cur)? {
            break;
        }
        let (mut lo, mut hi) = (c0.clone(), b.clone());
        loop {
            let open = simplest_in(&Bound::Open(lo.clone()), &Bound::Open(hi.clone()))
                .expect("nonempty open interval");
            if *open.denom() > d_eff {
                break;
            }
            let w = &hi - &lo;
            if w.denom() > &(w.numer() * &d_eff_sq) {
                break;
            }
            let quarter = &w * &Rat::frac(1, 4);
            let left = &lo + &quarter;
            let right = &hi - &quarter;
            let mid = if open >= left && open <= right {
                open
            } else {
                simplest_in(&Bound::Closed(left), &Bound::Closed(right)).expect("nonempty")
            };
            if ev.at(&mid)?.ideal.equals(&cur)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let alpha = simplest_in(&Bound::Open(lo), &Bound::Closed(hi)).expect("nonempty");
        if *alpha.denom() > d_eff && !ev.all_certified {
            return Err(Error::JumpVerification(alloc::format!(
                "no jump candidate below {alpha}: some test ideals were not certified"
            )));
        }
        if *alpha.denom() > d_eff {
            return Err(Error::CapExceeded {
                cap: alloc::format!("{d_eff}"),
            });
        }
        let below = farey_neighbours(&alpha, &d_eff).0;
        let below = if below < c0 { c0.clone() } else { below };
        let t_below = ev.at(&below)?.ideal;
        let t_alpha = ev.at(&alpha)?.ideal;
        if !t_below.equals(&cur)? || t_alpha.equals(&t_below)? {
            let why = if ev.all_certified { "" } else { " (some test ideals were not certified)" };
            return Err(Error::JumpVerification(alloc::format!("{alpha}{why}")));
        }
        if family.cap_below_bound() {
            // The cap may hide a jump between `below` and `alpha`; probe a
            // finer grid before trusting it.
            let finer = farey_neighbours(&alpha, &d_eff_sq).0;
            if finer > c0 && !ev.at(&finer)?.ideal.equals(&cur)? {
                return Err(Error::CapExceeded {
                    cap: alloc::format!("{d_eff}"),
                });
            }
        }
        admissible &= family.is_admissible(alpha.denom());
        jumps.push(alpha);
        ideals.push(t_alpha);
    }
    Ok(JumpList {
        jumps,
        ideals,
        certified: ev.all_certified && admissible,
        bound: family,
    })
}
