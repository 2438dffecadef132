//! Generalized test ideals `τ(a^c)` as the stable value of the ascending chain
//! `I_e = (a^⌈c p^e⌉)^[1/p^e]`, and mixed test ideals.
//!
//! # Certification
//!
//! Each `I_e` is contained in `τ`. For an upper bound, take `e' >> 0` with
//! `τ = (a^R)^[1/q q']`, `R = ⌈c q q'⌉`, and split every product of `R`
//! generators (`m` of them) as exponents `n_i = q' t_i + s_i` with
//! `s_i < q'`. Then `Σ t_i >= (R − m(q'−1))/q' > cq − m`, so
//! `a^R ⊆ (a^k)^[q']` for `k = ⌈cq⌉ − m` (or `cq − m + 1` when `cq` is an
//! integer), and by flatness `τ ⊆ (a^k)^[1/q] =: U_e`. Whenever
//! `U_e ⊆ I_e` the chain has provably reached `τ`. The same bound holds factor
//! by factor for mixed test ideals.
//!
//! Without such a certificate the chain is stopped after a plateau of `K`
//! equal terms and the result is marked uncertified.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::frobenius::{check_exponent, frob_q, frobenius_root};
use crate::groebner::minimal_monomials;
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::ring::Ring;

/// Knobs for the chain evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauParams {
    pub e_min: u32,
    pub e_max: u32,
    /// Number of consecutive equal chain terms accepted as stable.
    pub plateau: u32,
    pub use_skoda: bool,
}

impl Default for TauParams {
    fn default() -> Self {
        TauParams {
            e_min: 1,
            e_max: 20,
            plateau: 2,
            use_skoda: true,
        }
    }
}

impl TauParams {
    fn validate(&self, ring: &Ring) -> Result<()> {
        if self.e_min > self.e_max {
            return Err(Error::precondition("e_min must not exceed e_max"));
        }
        if self.plateau == 0 {
            return Err(Error::precondition("plateau length must be at least 1"));
        }
        check_exponent(ring, self.e_max)
    }
}

#[derive(Clone, Debug)]
pub struct TauResult {
    pub ideal: Ideal,
    /// First `e` from which the computed chain is constant.
    pub stabilized_at: u32,
    /// True when the value is proven equal to the test ideal.
    pub certified: bool,
    pub chain_trace: Option<Vec<(u32, Ideal)>>,
}

/// Largest admissible number of unit steps of `τ(a^c) = a·τ(a^{c−1})`:
/// returns `(s, c − s)` with `c − s ∈ [m − 1, m)`.
pub fn skoda_reduce(a: &Ideal, c: &Rat) -> Result<(u64, Rat)> {
    let m = a.gens().len() as u64;
    if m == 0 {
        return Err(Error::precondition("Skoda reduction needs a nonzero ideal"));
    }
    if *c < Rat::int(m) {
        return Err(Error::precondition(alloc::format!(
            "Skoda reduction needs c >= {m} (number of generators), got {c}"
        )));
    }
    let fl = c.floor().to_u64().ok_or(Error::ExponentOverflow)?;
    let s = fl - (m - 1);
    let rest = c.checked_sub(&Rat::int(s)).expect("s <= c");
    Ok((s, rest))
}

/// Does `T` have a generating set of polynomials of degree at most `⌊c·d⌋`,
/// `d` the largest generator degree of `a`? Decided exactly from the reduced
/// grevlex basis of `T`, which is degree compatible.
pub fn degree_bound_check(a: &Ideal, c: &Rat, t: &Ideal) -> Result<bool> {
    a.ring().check_same(t.ring())?;
    if t.is_zero_ideal() {
        return Ok(true);
    }
    let bound = c.floor_mul(&BigUint::from(a.max_degree()));
    let bound = bound.to_u64().unwrap_or(u64::MAX);
    let gb = t.groebner_in(MonomialOrder::Grevlex)?;
    let low: Vec<Poly> = gb
        .basis()
        .iter()
        .filter(|g| g.total_degree().unwrap_or(0) <= bound)
        .map(|g| g.to_ring(t.ring()))
        .collect::<Result<_>>()?;
    t.subset(&Ideal::new(t.ring(), low)?)
}

pub(crate) fn to_u64(v: BigUint) -> Result<u64> {
    v.to_u64().ok_or(Error::ExponentOverflow)
}

/// `⌈c q⌉` and the certificate exponent `k` for a factor with `m` generators.
fn exponents_for(c: &Rat, m: u64, q: &BigUint) -> (BigUint, BigUint) {
    let r = c.ceil_mul(q);
    let k = if c.mul_is_integer(q) { &r + 1u32 } else { r.clone() };
    let k = if k > BigUint::from(m) { k - m } else { BigUint::zero() };
    (r, k)
}

/// Minimal monomial generators of a two-generator or principal monomial
/// factor; fast membership is available for these.
#[derive(Clone, Debug)]
enum FastShape {
    Principal(Vec<i128>),
    Pair(Vec<i128>, Vec<i128>),
}

#[derive(Clone, Debug)]
struct FastFactor {
    shape: FastShape,
    degree: i128,
    gens: u64,
}

fn fast_factors(factors: &[(Ideal, Rat)]) -> Option<Vec<FastFactor>> {
    let mut pairs = 0;
    let mut out = Vec::with_capacity(factors.len());
    for (a, _) in factors {
        let ms = a.monomial_gens()?;
        let v = |m: &Monomial| m.exponents().iter().map(|&x| x as i128).collect::<Vec<_>>();
        let shape = match ms.len() {
            1 => FastShape::Principal(v(&ms[0])),
            2 => {
                pairs += 1;
                FastShape::Pair(v(&ms[0]), v(&ms[1]))
            }
            _ => return None,
        };
        let degree = ms.iter().map(|m| m.degree()).max().unwrap() as i128;
        out.push(FastFactor {
            shape,
            degree,
            gens: ms.len() as u64,
        });
    }
    (pairs <= 1).then_some(out)
}

/// Largest degree bound for which the fast path enumerates candidates.
const FAST_DEGREE_LIMIT: i64 = 4096;

/// `(Π a_i^{r_i})^[1/q]` for fast-path factors, by testing
/// `x^u ∈ P^[1/q] ⇔ x^{q(u+1)−1} ∈ P` on all `u` up to the degree bound.
/// The exponents are big integers, so `q` is not limited to machine words.
fn fast_root(ring: &Ring, fs: &[FastFactor], rs: &[BigUint], q: &BigUint) -> Result<Ideal> {
    let n = ring.nvars();
    let q = BigInt::from(q.clone());
    let mut base = alloc::vec![BigInt::zero(); n];
    let mut pair: Option<(&[i128], &[i128], BigInt)> = None;
    let mut total_deg = BigInt::zero();
    for (f, r) in fs.iter().zip(rs) {
        let r = BigInt::from(r.clone());
        total_deg += &r * f.degree;
        match &f.shape {
            FastShape::Principal(v) => {
                for j in 0..n {
                    base[j] += &r * v[j];
                }
            }
            FastShape::Pair(v1, v2) => pair = Some((v1, v2, r)),
        }
    }
    let dmax = (total_deg / &q)
        .to_i64()
        .filter(|&d| d <= FAST_DEGREE_LIMIT)
        .ok_or_else(|| Error::resource("degree bound of the root is too large"))? as i128;
    let member = |u: &[i128]| -> bool {
        let t: Vec<BigInt> = (0..n).map(|j| &q * (u[j] + 1) - 1 - &base[j]).collect();
        if t.iter().any(|x| x.is_negative()) {
            return false;
        }
        let Some((v1, v2, r)) = &pair else {
            return true;
        };
        // Need k in [0, r] with k·v1 + (r−k)·v2 <= t componentwise.
        let (mut lo, mut hi) = (BigInt::zero(), r.clone());
        for j in 0..n {
            let d = BigInt::from(v1[j] - v2[j]);
            let rhs = &t[j] - r * v2[j];
            if d.is_positive() {
                hi = hi.min(Integer::div_floor(&rhs, &d));
            } else if d.is_negative() {
                lo = lo.max(Integer::div_ceil(&rhs, &d));
            } else if rhs.is_negative() {
                return false;
            }
        }
        lo <= hi
    };
    let active: Vec<usize> = (0..n)
        .filter(|&j| {
            fs.iter().any(|f| match &f.shape {
                FastShape::Principal(v) => v[j] != 0,
                FastShape::Pair(a, b) => a[j] != 0 || b[j] != 0,
            })
        })
        .collect();
    let mut found: Vec<Monomial> = Vec::new();
    let mut u = alloc::vec![0i128; n];
    enumerate_bounded(&active, dmax, &mut u, 0, &mut |u| {
        if member(u) {
            found.push(Monomial::from_exponents(u.iter().map(|&x| x as u32).collect()));
        }
    });
    if found.len() > ring.limits().max_generators.saturating_mul(16) {
        return Err(Error::resource("too many candidate monomials"));
    }
    Ok(Ideal::from_monomials(ring, minimal_monomials(ring, found)))
}

fn enumerate_bounded(
    active: &[usize],
    left: i128,
    u: &mut Vec<i128>,
    k: usize,
    f: &mut dyn FnMut(&[i128]),
) {
    if k == active.len() {
        f(u);
        return;
    }
    let j = active[k];
    for v in 0..=left {
        u[j] = v;
        enumerate_bounded(active, left - v, u, k + 1, f);
    }
    u[j] = 0;
}

/// `(Π a_i^{r_i})^[1/q]` computed from the generators, pulling `q`-th powers
/// out of principal factors: `(f^{qs} g)^[1/q] = f^s · g^[1/q]`.
fn explicit_root(ring: &Ring, factors: &[(Ideal, Rat)], rs: &[u64], e: u32, q: u64) -> Result<Ideal> {
    let mut outside = Ideal::unit(ring);
    let mut inside = Ideal::unit(ring);
    for ((a, _), &r) in factors.iter().zip(rs) {
        if r == 0 {
            continue;
        }
        if a.gens().len() == 1 {
            let f = &a.gens()[0];
            let (s, t) = (r / q, r % q);
            if s > 0 {
                outside = outside.product(&Ideal::principal(f.pow(s)?))?;
            }
            if t > 0 {
                inside = inside.product(&Ideal::principal(f.pow(t)?))?;
            }
        } else {
            inside = inside.product(&a.power(r)?)?;
        }
    }
    outside.product(&frobenius_root(&inside, e)?)
}

/// `(a^r)^[1/p^e]`, using the cheapest available method.
pub(crate) fn power_root(a: &Ideal, r: u64, e: u32) -> Result<Ideal> {
    let ring = a.ring();
    check_exponent(ring, e)?;
    let factors = [(a.trimmed(), Rat::zero())];
    let q = frob_q(ring, e).ok_or(Error::ExponentOverflow)?;
    if let Some(fs) = fast_factors(&factors) {
        return fast_root(ring, &fs, &[BigUint::from(r)], &BigUint::from(q));
    }
    explicit_root(ring, &factors, &[r], e, q)
}

struct Chain<'a> {
    ring: &'a Ring,
    factors: &'a [(Ideal, Rat)],
    fast: Option<Vec<FastFactor>>,
}

/// Fast-path chains continue while `q` has at most this many bits. Their
/// cost does not grow with `q`, and points near a jump need `q` far beyond
/// the reciprocal of the distance to it.
const FAST_Q_BITS: u64 = 1024;

/// Extra chain terms tried after a plateau, looking for a certificate.
const CERT_EXTRA_STEPS: u32 = 3;
/// Those terms are only computed while `q` and the number of generator
/// products stay below these bounds.
const CERT_Q_LIMIT: u64 = 1 << 12;
const CERT_PRODUCT_LIMIT: u128 = 64;

impl Chain<'_> {
    fn cheap(&self, e: u32) -> bool {
        let Some(q) = frob_q(self.ring, e).filter(|&q| q <= CERT_Q_LIMIT) else {
            return false;
        };
        let qb = BigUint::from(q);
        let mut products: u128 = 1;
        for (a, c) in self.factors {
            let m = a.gens().len() as u128;
            if m <= 1 {
                continue;
            }
            let Some(r) = c.ceil_mul(&qb).to_u128() else {
                return false;
            };
            // binom(r + m − 1, m − 1) generators in a^r.
            let mut b: u128 = 1;
            for i in 1..m {
                b = b.saturating_mul(r + i) / i;
            }
            products = products.saturating_mul(b);
        }
        products <= CERT_PRODUCT_LIMIT
    }

    /// `(I_e, certified at e)`.
    fn term(&self, e: u32) -> Result<(Ideal, bool)> {
        let qb = BigUint::from(self.ring.characteristic()).pow(e);
        let mut rs = Vec::with_capacity(self.factors.len());
        let mut ks = Vec::with_capacity(self.factors.len());
        for (k, (a, c)) in self.factors.iter().enumerate() {
            let m = match &self.fast {
                Some(fs) => fs[k].gens,
                None => a.gens().len() as u64,
            };
            let (r, kk) = exponents_for(c, m, &qb);
            rs.push(r);
            ks.push(kk);
        }
        let root = |xs: &[BigUint]| match &self.fast {
            Some(fs) => fast_root(self.ring, fs, xs, &qb),
            None => {
                check_exponent(self.ring, e)?;
                let q = qb.to_u64().ok_or(Error::ExponentOverflow)?;
                let xs = xs.iter().map(|x| to_u64(x.clone())).collect::<Result<Vec<_>>>()?;
                explicit_root(self.ring, self.factors, &xs, e, q)
            }
        };
        let ie = root(&rs)?;
        let certified = if ks == rs {
            true
        } else {
            let ue = root(&ks)?;
            ue.subset(&ie)?
        };
        Ok((ie, certified))
    }
}

fn stabilized_from(trace: &[(u32, Ideal)], value: &Ideal) -> Result<u32> {
    let mut at = trace.last().map_or(0, |t| t.0);
    for (e, i) in trace.iter().rev() {
        // The chain ascends, so containment of the final value means equality.
        if value.subset(i)? {
            at = *e;
        } else {
            break;
        }
    }
    Ok(at)
}

/// Index of the start of the trailing run of equal terms, if it has length
/// at least `k`.
fn plateau_start(trace: &[(u32, Ideal)], k: u32) -> Result<Option<usize>> {
    if trace.is_empty() {
        return Ok(None);
    }
    let last = trace.len() - 1;
    let mut start = last;
    while start > 0 && trace[start].1.subset(&trace[start - 1].1)? {
        start -= 1;
    }
    Ok(((last - start + 1) as u32 >= k).then_some(start))
}

fn run_chain(
    ring: &Ring,
    factors: &[(Ideal, Rat)],
    params: &TauParams,
    shift: bool,
) -> Result<TauResult> {
    let chain = Chain {
        ring,
        factors,
        fast: fast_factors(factors),
    };
    let p = ring.characteristic() as u128;
    let mut trace: Vec<(u32, Ideal)> = Vec::new();

    if chain.fast.is_some() {
        let mut e = params.e_min;
        while (e as u64) * (u64::BITS - (p as u64).leading_zeros()) as u64 <= FAST_Q_BITS {
            let (ie, cert) = chain.term(e)?;
            trace.push((e, ie.clone()));
            if cert {
                let at = stabilized_from(&trace, &ie)?;
                return Ok(TauResult {
                    ideal: ie,
                    stabilized_at: at,
                    certified: true,
                    chain_trace: Some(trace),
                });
            }
            e += 1;
        }
    } else {
        // After a plateau, a few more cheap terms may still certify it.
        let mut extra: Option<u32> = None;
        for e in params.e_min..=params.e_max {
            if extra.is_some() && !chain.cheap(e) {
                break;
            }
            let (ie, cert) = match chain.term(e) {
                Ok(t) => t,
                Err(Error::ResourceLimit(_)) if extra.is_some() => break,
                Err(err) => return Err(err),
            };
            trace.push((e, ie.clone()));
            if cert {
                let at = stabilized_from(&trace, &ie)?;
                return Ok(TauResult {
                    ideal: ie,
                    stabilized_at: at,
                    certified: true,
                    chain_trace: Some(trace),
                });
            }
            if plateau_start(&trace, params.plateau)?.is_some() {
                let left = extra.get_or_insert(CERT_EXTRA_STEPS);
                if *left == 0 {
                    break;
                }
                *left -= 1;
            } else {
                extra = None;
            }
        }
    }
    // The shifted chain only certifies once q exceeds the shift's inverse,
    // which is within reach of the monomial path alone.
    if shift && factors.len() == 1 && chain.fast.is_some() {
        if let Some(res) = shifted(ring, &factors[0], params, &trace)? {
            return Ok(res);
        }
    }
    match plateau_start(&trace, params.plateau)? {
        Some(start) => Ok(TauResult {
            ideal: trace.last().unwrap().1.clone(),
            stabilized_at: trace[start].0,
            certified: false,
            chain_trace: Some(trace),
        }),
        None => {
            let e_max = trace.last().map_or(params.e_max, |t| t.0);
            Err(Error::inconclusive(e_max, trace))
        }
    }
}

/// Jumping exponents have denominators bounded by `D`, so `τ` is constant on
/// `[c, c + 1/(den(c)·D))`. Evaluating slightly to the right of `c` avoids
/// the case where `c` itself is a jump and the chain never certifies.
fn shifted(
    ring: &Ring,
    factor: &(Ideal, Rat),
    params: &TauParams,
    trace: &[(u32, Ideal)],
) -> Result<Option<TauResult>> {
    let (a, c) = factor;
    let bound = match crate::thresholds::denom_bound(a) {
        Ok(b) => b,
        Err(Error::ResourceLimit(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let step_den = c.denom() * bound.d_max() * 2u32;
    let c_plus = c + &Rat::from_ratio(num_rational::Ratio::new(1u32.into(), step_den));
    let moved = [(a.clone(), c_plus)];
    let res = match run_chain(ring, &moved, params, false) {
        Ok(r) => r,
        Err(Error::Inconclusive { .. } | Error::ResourceLimit(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    if !res.certified {
        return Ok(None);
    }
    let at = stabilized_from(trace, &res.ideal)?;
    Ok(Some(TauResult {
        ideal: res.ideal,
        stabilized_at: at,
        certified: true,
        chain_trace: Some(trace.to_vec()),
    }))
}

/// `τ(a^c)`.
pub fn tau(a: &Ideal, c: &Rat, params: &TauParams) -> Result<TauResult> {
    let ring = a.ring();
    params.validate(ring)?;
    if a.is_zero_ideal() {
        return Ok(TauResult {
            ideal: Ideal::zero(ring),
            stabilized_at: 0,
            certified: true,
            chain_trace: None,
        });
    }
    if c.is_zero() {
        return Ok(TauResult {
            ideal: Ideal::unit(ring),
            stabilized_at: 0,
            certified: true,
            chain_trace: None,
        });
    }
    let a = a.trimmed();
    let m = a.gens().len() as u64;
    if params.use_skoda && *c >= Rat::int(m) {
        let (s, rest) = skoda_reduce(&a, c)?;
        let inner = run_chain(ring, &[(a.clone(), rest)], params, true)?;
        let factor = a.power(s)?;
        let ideal = factor.product(&inner.ideal)?;
        let trace = match inner.chain_trace {
            Some(t) => Some(
                t.into_iter()
                    .map(|(e, i)| Ok((e, factor.product(&i)?)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        return Ok(TauResult {
            ideal: ideal.canonical()?,
            stabilized_at: inner.stabilized_at,
            certified: inner.certified,
            chain_trace: trace,
        });
    }
    canonical(run_chain(ring, &[(a, c.clone())], params, true)?)
}

fn canonical(mut res: TauResult) -> Result<TauResult> {
    res.ideal = res.ideal.canonical()?;
    Ok(res)
}

/// Mixed test ideal `τ(a_1^{c_1} ··· a_r^{c_r})`.
pub fn tau_mixed(pairs: &[(Ideal, Rat)], params: &TauParams) -> Result<TauResult> {
    let Some(first) = pairs.first() else {
        return Err(Error::precondition("at least one (ideal, exponent) pair is required"));
    };
    let ring = first.0.ring();
    for (a, _) in pairs {
        ring.check_same(a.ring())?;
    }
    if pairs.len() == 1 {
        return tau(&first.0, &first.1, params);
    }
    params.validate(ring)?;
    if pairs.iter().any(|(a, c)| a.is_zero_ideal() && !c.is_zero()) {
        return Ok(TauResult {
            ideal: Ideal::zero(ring),
            stabilized_at: params.e_min,
            certified: true,
            chain_trace: None,
        });
    }
    // a^0 = R: such factors drop out of the chain.
    let live: Vec<(Ideal, Rat)> = pairs
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, c)| (a.trimmed(), c.clone()))
        .collect();
    if live.is_empty() {
        return Ok(TauResult {
            ideal: Ideal::unit(ring),
            stabilized_at: 0,
            certified: true,
            chain_trace: None,
        });
    }
    canonical(run_chain(ring, &live, params, false)?)
}
