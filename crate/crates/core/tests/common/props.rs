//! Randomized property checks shared by the integration tests and the
//! acceptance runner. Each check builds its instance from a seed and returns
//! `Ok(true)` when the property was verified, `Ok(false)` when the instance
//! was skipped (resource limits, uncertified values) and `Err` with a
//! description on a violation.

#![allow(dead_code)]

use super::*;
use fjump_core::oracle::{integral_closure_monomial, nu_bruteforce, root_monomial, tau_bruteforce};
use fjump_core::*;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Check = std::result::Result<bool, String>;

/// Turns library errors into violations, except resource limits,
/// inconclusive chains and jump searches defeated by uncertified values,
/// which skip the instance.
macro_rules! lib {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(
                Error::ResourceLimit(_)
                | Error::Inconclusive { .. }
                | Error::JumpVerification(_)
                | Error::CapExceeded { .. },
            ) => return Ok(false),
            Err(err) => return Err(format!("{}: {err}", stringify!($e))),
        }
    };
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn tau_params() -> TauParams {
    TauParams {
        e_max: 12,
        ..TauParams::default()
    }
}

/// `τ(a^c)` when certified, otherwise skip the whole check.
macro_rules! tau_cert {
    ($a:expr, $c:expr) => {{
        let r = lib!(tau($a, $c, &tau_params()));
        if !r.certified {
            return Ok(false);
        }
        r.ideal
    }};
}

// ---- Frobenius roots -------------------------------------------------------

/// Monomial roots agree with the componentwise floor formula.
pub fn root_vs_monomial_oracle(seed: u64) -> Check {
    let mut g = rng(seed);
    let p = prime(&mut g, &[2, 3, 5]);
    let n = g.gen_range(1..=3);
    let r = ring(p, n);
    let k = g.gen_range(1..=4);
    let ms = (0..k).map(|_| monomial(&mut g, n, 24)).collect();
    let b = Ideal::from_monomials(&r, ms);
    let e = g.gen_range(0..=3);
    let fast = lib!(frobenius_root(&b, e));
    let slow = lib!(root_monomial(&b, e));
    ensure!(lib!(fast.equals(&slow)), "root of {b} at e={e}: {fast} vs {slow}");
    Ok(true)
}

fn small_pair(seed: u64) -> (Ring, Ideal, Ideal, u32, u32, rand_chacha::ChaCha8Rng) {
    let mut g = rng(seed);
    let p = prime(&mut g, &[2, 3]);
    let n = g.gen_range(1..=2);
    let r = ring(p, n);
    let a = ideal(&mut g, &r, 2, 3, 4);
    let b = ideal(&mut g, &r, 2, 3, 4);
    let e = g.gen_range(1..=2);
    let e2 = g.gen_range(1..=2);
    (r, a, b, e, e2, g)
}

/// All six relations between roots, sums, intersections, products and
/// bracket powers.
pub fn root_relations(seed: u64) -> Check {
    let (r, a, b, e, e2, mut g) = small_pair(seed);
    let root = |i: &Ideal, e| frobenius_root(i, e);

    // (1) a ⊆ b ⇒ a^[1/q] ⊆ b^[1/q], with a replaced by a subideal of b.
    let h = ideal(&mut g, &r, 2, 2, 2);
    let sub = lib!(b.product(&h));
    ensure!(lib!(lib!(root(&sub, e)).subset(&lib!(root(&b, e)))), "(1) fails for {sub} ⊆ {b}");

    // (2) intersection inclusion and exact sum equality.
    let ra = lib!(root(&a, e));
    let rb = lib!(root(&b, e));
    let cap = lib!(a.intersect(&b));
    ensure!(
        lib!(lib!(root(&cap, e)).subset(&lib!(ra.intersect(&rb)))),
        "(2) intersection fails for {a}, {b}"
    );
    let sum_root = lib!(root(&lib!(a.sum(&b)), e));
    ensure!(lib!(sum_root.equals(&lib!(ra.sum(&rb)))), "(2) sum fails for {a}, {b}");

    // (3) products.
    let prod_root = lib!(root(&lib!(a.product(&b)), e));
    ensure!(lib!(prod_root.subset(&lib!(ra.product(&rb)))), "(3) fails for {a}, {b}");

    // (4) (b^[q'])^[1/q] ⊆ (b^[1/q])^[q'].
    let scaled = lib!(root_scaled(&b, e2, e));
    ensure!(lib!(scaled.subset(&lib!(bracket_power(&rb, e2)))), "(4) fails for {b}");

    // (5) b^[1/qq'] ⊆ (b^[1/q])^[1/q'].
    let deep = lib!(root(&b, e + e2));
    ensure!(lib!(deep.subset(&lib!(root(&rb, e2)))), "(5) fails for {b}");

    // (6) b^[1/q] ⊆ (b^{q'})^[1/qq'].
    let q2 = (r.characteristic() as u64).pow(e2);
    let pw = lib!(b.power(q2));
    ensure!(lib!(rb.subset(&lib!(root(&pw, e + e2)))), "(6) fails for {b}");
    Ok(true)
}

/// `b ⊆ (b^[1/q])^[q]`, and the root does not depend on the generating set.
pub fn root_minimal_and_intrinsic(seed: u64) -> Check {
    let mut g = rng(seed);
    let p = prime(&mut g, &[2, 3, 5]);
    let n = g.gen_range(1..=3);
    let r = ring(p, n);
    let b = ideal(&mut g, &r, 3, 3, 8);
    let e = g.gen_range(1..=2);
    let rb = lib!(frobenius_root(&b, e));
    ensure!(lib!(b.subset(&lib!(bracket_power(&rb, e)))), "b ⊄ (b^[1/q])^[q] for {b}");

    let mut gens = b.gens().to_vec();
    for _ in 0..g.gen_range(1..=2) {
        let mut comb = Poly::zero(&r);
        for f in b.gens() {
            let h = poly(&mut g, &r, 2, 2);
            let h = if g.gen_bool(0.3) { Poly::one(&r) } else { h };
            comb = lib!(comb.add(&lib!(h.mul(f))));
        }
        if !comb.is_zero() {
            gens.push(comb);
        }
    }
    gens.shuffle(&mut g);
    let b2 = lib!(Ideal::new(&r, gens));
    ensure!(lib!(lib!(frobenius_root(&b2, e)).equals(&rb)), "root depends on generators of {b}");
    Ok(true)
}

/// `u^p ∈ J^[p] ⇔ u ∈ J`, exercised on members and random elements.
pub fn flatness(seed: u64) -> Check {
    let mut g = rng(seed);
    let p = prime(&mut g, &[2, 3]);
    let n = g.gen_range(1..=2);
    let r = ring(p, n);
    let j = ideal(&mut g, &r, 2, 2, 3);
    let u = if g.gen_bool(0.5) {
        let mut acc = Poly::zero(&r);
        for f in j.gens() {
            acc = lib!(acc.add(&lib!(poly(&mut g, &r, 2, 2).mul(f))));
        }
        acc
    } else {
        poly(&mut g, &r, 3, 3)
    };
    let jp = lib!(bracket_power(&j, 1));
    let lhs = lib!(jp.member(&lib!(u.frobenius(1))));
    let rhs = lib!(j.member(&u));
    ensure!(lhs == rhs, "flatness fails for u={u}, J={j}");
    Ok(true)
}

/// `(φ(b))^[1/q] ⊆ φ(b^[1/q])·R` for a substitution endomorphism `φ`.
pub fn restriction(seed: u64) -> Check {
    let mut g = rng(seed);
    let p = prime(&mut g, &[2, 3]);
    let n = g.gen_range(1..=2);
    let r = ring(p, n);
    let b = ideal(&mut g, &r, 2, 3, 3);
    let images: Vec<Poly> = (0..n).map(|_| poly(&mut g, &r, 2, 2)).collect();
    let e = g.gen_range(1..=2);
    let lhs = lib!(frobenius_root(&lib!(b.map(&r, &images)), e));
    let rhs = lib!(lib!(frobenius_root(&b, e)).map(&r, &images));
    ensure!(lib!(lhs.subset(&rhs)), "restriction fails for {b} under {images:?}");
    Ok(true)
}

// ---- Gröbner bases -----------------------------------------------------------

/// Reduced bases are sorted, monic, inter-reduced and independent of the
/// order of the input generators.
pub fn groebner_reduced_and_deterministic(seed: u64) -> Check {
    let mut g = rng(seed);
    let p = prime(&mut g, &[2, 3, 5]);
    let n = g.gen_range(1..=3);
    let r = ring(p, n);
    let a = ideal(&mut g, &r, 3, 3, 4);
    let gb = lib!(GroebnerBasis::compute(&r, a.gens()));
    ensure!(fjump_core::groebner::is_reduced(&gb), "basis of {a} not sorted");
    for (i, f) in gb.basis().iter().enumerate() {
        ensure!(f.lead_coeff().map(|c| c.value()) == Some(1), "non-monic element {f}");
        for (j, h) in gb.basis().iter().enumerate() {
            if i == j {
                continue;
            }
            let lm = h.lead_monomial().unwrap();
            ensure!(
                f.terms().iter().all(|(m, _)| !lm.divides(m)),
                "{f} has a term divisible by lead of {h}"
            );
        }
    }
    let mut gens = a.gens().to_vec();
    gens.shuffle(&mut g);
    let again = lib!(GroebnerBasis::compute(&r, &gens));
    let show = |b: &GroebnerBasis| b.basis().iter().map(|f| f.to_string()).collect::<Vec<_>>();
    ensure!(show(&gb) == show(&again), "basis of {a} depends on generator order");
    Ok(true)
}

/// Row-reduces `rows` over `F_p` (dense vectors) and reports whether
/// `target` lies in their span.
fn in_span(p: u64, rows: &[Vec<u64>], target: &[u64]) -> bool {
    let width = target.len();
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let inv = |x: u64| -> u64 {
        let mut r = 1u64;
        let (mut b, mut k) = (x % p, p - 2);
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            k >>= 1;
        }
        r
    };
    let reduce = |v: &mut Vec<u64>, basis: &[(usize, Vec<u64>)]| {
        for (piv, row) in basis {
            let c = v[*piv];
            if c != 0 {
                for k in 0..width {
                    v[k] = (v[k] + p * p - c * row[k] % p) % p;
                }
            }
        }
    };
    for row in rows {
        let mut v = row.clone();
        reduce(&mut v, &basis);
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let s = inv(v[piv]);
            v.iter_mut().for_each(|x| *x = *x * s % p);
            for (_, other) in basis.iter_mut() {
                let c = other[piv];
                if c != 0 {
                    for k in 0..width {
                        other[k] = (other[k] + p * p - c * v[k] % p) % p;
                    }
                }
            }
            basis.push((piv, v));
        }
    }
    let mut t = target.to_vec();
    reduce(&mut t, &basis);
    t.iter().all(|&x| x == 0)
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(Monomial::from_exponents(e.clone()));
            return;
        }
        for k in 0..=left {
            e[i] = k;
            rec(i + 1, left - k, e, out);
        }
    }
    rec(0, d, &mut e, &mut out);
    out
}

fn dense(f: &Poly, basis: &[Monomial]) -> Vec<u64> {
    let mut v = vec![0u64; basis.len()];
    for (m, c) in f.terms() {
        let k = basis.iter().position(|b| b == m).expect("homogeneous of the right degree");
        v[k] = c.value() as u64;
    }
    v
}

/// Membership agrees with linear algebra on homogeneous instances, where
/// `f ∈ I` of degree `d` iff `f` is in the span of `{m·g : deg = d}`.
pub fn membership_vs_span(seed: u64) -> Check {
    let mut g = rng(seed);
    let p = prime(&mut g, &[2, 3]);
    let n = g.gen_range(1..=2);
    let r = ring(p, n);
    let k = g.gen_range(1..=3);
    let gens: Vec<Poly> = (0..k)
        .map(|_| {
            let d = g.gen_range(1..=3);
            homogeneous(&mut g, &r, 3, d)
        })
        .collect();
    let a = lib!(Ideal::new(&r, gens.clone()));
    let d = g.gen_range(1..=4);
    let f = if g.gen_bool(0.5) {
        // A random member of degree d, when one exists.
        let mut acc = Poly::zero(&r);
        for h in &gens {
            let dh = h.total_degree().unwrap() as u32;
            if dh <= d {
                let m = if d > dh { homogeneous(&mut g, &r, 2, d - dh) } else { Poly::one(&r) };
                acc = lib!(acc.add(&lib!(m.mul(h))));
            }
        }
        if acc.is_zero() {
            homogeneous(&mut g, &r, 4, d)
        } else {
            acc
        }
    } else {
        homogeneous(&mut g, &r, 4, d)
    };
    let d = f.total_degree().unwrap() as u32;
    let basis = monomials_of_degree(n, d);
    let mut rows = Vec::new();
    for h in &gens {
        let dh = h.total_degree().unwrap() as u32;
        if dh <= d {
            for m in monomials_of_degree(n, d - dh) {
                rows.push(dense(&lib!(h.mul_term(&m, r.field().elem(1))), &basis));
            }
        }
    }
    let oracle = in_span(p, &rows, &dense(&f, &basis));
    let got = lib!(a.member(&f));
    ensure!(got == oracle, "membership of {f} in {a}: engine {got}, span {oracle}");
    Ok(true)
}

/// Explicit combinations of generators are members, and `f ∈ a ∩ b` iff it
/// lies in both.
pub fn membership_affine(seed: u64) -> Check {
    let mut g = rng(seed);
    let p = prime(&mut g, &[2, 3]);
    let n = g.gen_range(1..=2);
    let r = ring(p, n);
    let a = ideal(&mut g, &r, 2, 3, 4);
    let b = ideal(&mut g, &r, 2, 3, 4);
    let mut f = Poly::zero(&r);
    for h in a.gens() {
        f = lib!(f.add(&lib!(poly(&mut g, &r, 3, 2).mul(h))));
    }
    ensure!(lib!(a.member(&f)), "{f} should lie in {a}");
    let cap = lib!(a.intersect(&b));
    for _ in 0..3 {
        let u = if g.gen_bool(0.5) { lib!(f.mul(&b.gens()[0])) } else { poly(&mut g, &r, 3, 4) };
        let both = lib!(a.member(&u)) && lib!(b.member(&u));
        ensure!(lib!(cap.member(&u)) == both, "intersection membership of {u} in {a} ∩ {b}");
    }
    ensure!(lib!(lib!(a.product(&b)).subset(&cap)), "ab ⊄ a ∩ b for {a}, {b}");
    Ok(true)
}

// ---- Test ideals ---------------------------------------------------------

fn tau_instance(seed: u64) -> (Ring, Ideal, Rat, rand_chacha::ChaCha8Rng) {
    let mut g = rng(seed);
    let p = prime(&mut g, &[2, 3]);
    let n = g.gen_range(1..=2);
    let r = ring(p, n);
    let a = if g.gen_bool(0.4) {
        monomial_ideal(&mut g, &r, 2, 4)
    } else {
        ideal(&mut g, &r, 2, 3, 4)
    };
    let c = rat(&mut g, 2, 12);
    (r, a, c, g)
}

/// `c₁ < c₂ ⇒ τ(a^{c₂}) ⊆ τ(a^{c₁})`.
pub fn tau_monotone_in_c(seed: u64) -> Check {
    let (_, a, c, mut g) = tau_instance(seed);
    let d = rat(&mut g, 2, 12);
    let (lo, hi) = if c <= d { (c, d) } else { (d, c) };
    let t_lo = tau_cert!(&a, &lo);
    let t_hi = tau_cert!(&a, &hi);
    ensure!(lib!(t_hi.subset(&t_lo)), "τ({a}^{hi}) ⊄ τ({a}^{lo})");
    Ok(true)
}

/// `a ⊆ b ⇒ τ(a^c) ⊆ τ(b^c)`.
pub fn tau_monotone_in_ideal(seed: u64) -> Check {
    let (r, b, c, mut g) = tau_instance(seed);
    let a = if g.gen_bool(0.5) {
        lib!(b.product(&monomial_ideal(&mut g, &r, 1, 2)))
    } else {
        lib!(Ideal::new(&r, vec![b.gens()[0].clone()]))
    };
    let ta = tau_cert!(&a, &c);
    let tb = tau_cert!(&b, &c);
    ensure!(lib!(ta.subset(&tb)), "τ({a}^{c}) ⊄ τ({b}^{c})");
    Ok(true)
}

/// `τ((a∩b)^c) ⊆ τ(a^c) ∩ τ(b^c)` and `τ(a^c) + τ(b^c) ⊆ τ((a+b)^c)`.
pub fn tau_intersection_sum(seed: u64) -> Check {
    let (r, a, c, mut g) = tau_instance(seed);
    let b = if g.gen_bool(0.5) { monomial_ideal(&mut g, &r, 2, 3) } else { ideal(&mut g, &r, 1, 2, 3) };
    let ta = tau_cert!(&a, &c);
    let tb = tau_cert!(&b, &c);
    let t_cap = tau_cert!(&lib!(a.intersect(&b)), &c);
    let t_sum = tau_cert!(&lib!(a.sum(&b)), &c);
    ensure!(lib!(t_cap.subset(&lib!(ta.intersect(&tb)))), "intersection fails for {a}, {b}, c={c}");
    ensure!(lib!(lib!(ta.sum(&tb)).subset(&t_sum)), "sum fails for {a}, {b}, c={c}");
    Ok(true)
}

/// `τ((a·b)^c) ⊆ τ(a^c)·τ(b^c)`, and the mixed form
/// `τ(a^c b^d) ⊆ τ(a^c)·τ(b^d)` with `τ(a^c b^c) = τ((ab)^c)`.
pub fn tau_subadditive(seed: u64) -> Check {
    let (r, a, c, mut g) = tau_instance(seed);
    let b = monomial_ideal(&mut g, &r, 2, 3);
    let ab = lib!(a.product(&b));
    let ta = tau_cert!(&a, &c);
    let tb = tau_cert!(&b, &c);
    let tab = tau_cert!(&ab, &c);
    ensure!(lib!(tab.subset(&lib!(ta.product(&tb)))), "τ(({a})({b}))^{c} ⊄ product");

    let mixed_same = lib!(tau_mixed(&[(a.clone(), c.clone()), (b.clone(), c.clone())], &tau_params()));
    if mixed_same.certified {
        ensure!(lib!(mixed_same.ideal.equals(&tab)), "τ(a^c b^c) ≠ τ((ab)^c) for {a}, {b}, c={c}");
    }
    let d = rat(&mut g, 2, 12);
    let td = tau_cert!(&b, &d);
    let mixed = lib!(tau_mixed(&[(a.clone(), c.clone()), (b.clone(), d.clone())], &tau_params()));
    if mixed.certified {
        ensure!(
            lib!(mixed.ideal.subset(&lib!(ta.product(&td)))),
            "τ(a^{c} b^{d}) ⊄ τ(a^{c})τ(b^{d}) for {a}, {b}"
        );
    }
    Ok(true)
}

/// `τ((a^m)^c) = τ(a^{cm})` for `m ∈ {2, 3}`.
pub fn tau_rescaling(seed: u64) -> Check {
    let (_, a, c, mut g) = tau_instance(seed);
    let m = g.gen_range(2..=3u64);
    let am = lib!(a.power(m));
    let lhs = tau_cert!(&am, &c);
    let rhs = tau_cert!(&a, &(&c * &Rat::int(m)));
    ensure!(lib!(lhs.equals(&rhs)), "τ(({a})^{m})^{c} = {lhs} but τ(a^{}) = {rhs}", &c * &Rat::int(m));
    Ok(true)
}

/// Skoda reduction and the plain chain give the same ideal, the chain
/// ascends, and the degree bound holds.
pub fn tau_skoda_chain_degree(seed: u64) -> Check {
    let (_, a, c, mut g) = tau_instance(seed);
    let m = a.trimmed().gens().len() as u64;
    let c_big = &c + &Rat::int(m - 1 + g.gen_range(0..=1u64));
    let on = lib!(tau(&a, &c_big, &tau_params()));
    let off = lib!(tau(&a, &c_big, &TauParams { use_skoda: false, ..tau_params() }));
    ensure!(lib!(degree_bound_check(&a, &c_big, &on.ideal)), "degree bound fails: τ({a}^{c_big}) = {}", on.ideal);
    for res in [&on, &off] {
        if let Some(trace) = &res.chain_trace {
            for w in trace.windows(2) {
                ensure!(lib!(w[0].1.subset(&w[1].1)), "chain of {a} at {c_big} descends at e={}", w[1].0);
            }
        }
    }
    if on.certified && off.certified {
        ensure!(lib!(on.ideal.equals(&off.ideal)), "Skoda: {} vs {} for {a}^{c_big}", on.ideal, off.ideal);
        return Ok(true);
    }
    Ok(false)
}

/// `τ(a^c) = τ(ā^c)` for monomial `a` and its integral closure.
pub fn tau_closure(seed: u64) -> Check {
    let mut g = rng(seed);
    let p = prime(&mut g, &[2, 3]);
    let r = ring(p, 2);
    let a = monomial_ideal(&mut g, &r, 3, 5);
    let closure = lib!(integral_closure_monomial(&a));
    let c = rat(&mut g, 2, 12);
    let t1 = tau_cert!(&a, &c);
    let t2 = tau_cert!(&closure, &c);
    ensure!(lib!(t1.equals(&t2)), "τ({a}^{c}) = {t1} but closure {closure} gives {t2}");
    Ok(true)
}

/// For `a ∋ x_n`: `τ(a^{c+1})|_{x_n=0} = τ((a|_{x_n=0})^c)`.
pub fn tau_adjunction(seed: u64) -> Check {
    let mut g = rng(seed);
    let p = prime(&mut g, &[2, 3]);
    let r = ring(p, 2);
    let small = ring(p, 1);
    let y = Poly::var(&r, 1);
    let mut gens = vec![y];
    for _ in 0..g.gen_range(1..=2) {
        let f = if g.gen_bool(0.5) {
            Poly::term(&r, Monomial::from_exponents(vec![g.gen_range(1..=4), 0]), r.field().elem(1))
        } else {
            poly(&mut g, &r, 3, 4)
        };
        gens.push(f);
    }
    let a = lib!(Ideal::new(&r, gens));
    let c = rat(&mut g, 2, 12);
    let images = [Poly::var(&small, 0), Poly::zero(&small)];
    let restricted = lib!(a.map(&small, &images));
    let big = tau_cert!(&a, &(&c + &Rat::int(1)));
    let lhs = lib!(big.map(&small, &images));
    let rhs = tau_cert!(&restricted, &c);
    ensure!(lib!(lhs.equals(&rhs)), "adjunction fails for {a}, c={c}: {lhs} vs {rhs}");
    Ok(true)
}

// ---- ν and thresholds --------------------------------------------------------

fn nu_instance(seed: u64, ps: &[u64]) -> (Ring, Ideal, Ideal, rand_chacha::ChaCha8Rng) {
    let mut g = rng(seed);
    let p = prime(&mut g, ps);
    let n = g.gen_range(1..=2);
    let r = ring(p, n);
    let a = if g.gen_bool(0.4) { monomial_ideal(&mut g, &r, 2, 3) } else { ideal(&mut g, &r, 2, 3, 3) };
    let j = match g.gen_range(0..3) {
        0 => Ideal::maximal(&r),
        1 => {
            let ms = (0..n)
                .map(|i| {
                    let mut e = vec![0u32; n];
                    e[i] = g.gen_range(1..=3);
                    Monomial::from_exponents(e)
                })
                .collect();
            Ideal::from_monomials(&r, ms)
        }
        _ => lib_or(a.power(g.gen_range(1..=2)), Ideal::maximal(&r)),
    };
    (r, a, j, g)
}

fn lib_or(x: fjump_core::Result<Ideal>, d: Ideal) -> Ideal {
    x.unwrap_or(d)
}

/// `nu` agrees with the literal search.
pub fn nu_vs_bruteforce(seed: u64) -> Check {
    let (_, a, j, mut g) = nu_instance(seed, &[2, 3]);
    let e = g.gen_range(1..=2);
    let fast = lib!(nu(&a, &j, e));
    let slow = lib!(nu_bruteforce(&a, &j, e));
    ensure!(fast == slow, "ν({a}, {j}, {e}): {fast} vs brute force {slow}");
    Ok(true)
}

/// `ν(q)/q` is nondecreasing, and `ν(q)/q <= c^J(a) <= sℓ`.
pub fn nu_monotone_and_finite(seed: u64) -> Check {
    let (_, a, j, _) = nu_instance(seed, &[2, 3, 5]);
    let est = lib!(fthreshold(&a, &j, 4));
    for w in est.records.windows(2) {
        ensure!(
            Rat::frac(w[0].nu, w[0].q) <= Rat::frac(w[1].nu, w[1].q),
            "ν/q decreases for {a}, {j}: {:?}",
            est.records
        );
    }
    let a = a.trimmed();
    let s = a.gens().len() as u64;
    let mut ell = 1u64;
    let mut pw = a.clone();
    while !lib!(pw.subset(&j)) {
        pw = lib!(pw.product(&a));
        ell += 1;
    }
    ensure!(est.lower <= Rat::int(s * ell), "lower bound {} exceeds sℓ = {}", est.lower, s * ell);
    Ok(true)
}

/// `ν^{τ(a^c)}_a(p^e) <= ⌈c p^e⌉ − 1`.
pub fn threshold_of_test_ideal(seed: u64) -> Check {
    let (_, a, c, _) = tau_instance(seed);
    if a.is_zero_ideal() {
        return Ok(false);
    }
    let j = tau_cert!(&a, &c);
    let est = lib!(fthreshold(&a, &j, 3));
    for rec in &est.records {
        let bound = c.ceil_mul(&BigUint::from(rec.q)) - 1u32;
        ensure!(
            BigUint::from(rec.nu) <= bound,
            "ν^τ({a}) at q={} is {} > ⌈cq⌉−1 = {bound}, c={c}",
            rec.q,
            rec.nu
        );
    }
    Ok(true)
}

fn jumps_instance(seed: u64) -> (Ideal, Rat) {
    let mut g = rng(seed);
    let p = prime(&mut g, &[2, 3]);
    let n = g.gen_range(1..=2);
    let r = ring(p, n);
    let a = if g.gen_bool(0.7) {
        monomial_ideal(&mut g, &r, 2, 3)
    } else {
        let f = poly(&mut g, &r, 2, 3);
        Ideal::principal(f)
    };
    let b = Rat::int(g.gen_range(1..=2));
    (a, b)
}

/// Enumerated jumps: closed under `×p` and `−1` within range, `τ` constant
/// between consecutive jumps, the threshold of `τ(a^α)` is `α`, and
/// certified denominators are admissible.
pub fn jump_structure(seed: u64) -> Check {
    let (a, b) = jumps_instance(seed);
    let list = lib!(jumping_exponents(&a, &b, &tau_params(), None));
    if !list.certified {
        return Ok(false);
    }
    let p = Rat::int(a.ring().characteristic() as u64);
    let m = Rat::int(a.trimmed().gens().len() as u64);
    let jumps = &list.jumps;
    for alpha in jumps {
        ensure!(list.bound.is_admissible(alpha.denom()), "jump {alpha} of {a} outside the family");
        let pa = &p * alpha;
        if !alpha.is_zero() && pa <= b {
            ensure!(jumps.contains(&pa), "{a}: jump {alpha} but not {pa} (list {jumps:?})");
        }
        if *alpha > m {
            let down = alpha.checked_sub(&Rat::int(1)).unwrap();
            ensure!(jumps.contains(&down), "{a}: jump {alpha} but not {down}");
        }
    }
    for (i, w) in jumps.windows(2).enumerate() {
        let mid = &(&w[0] + &w[1]) * &Rat::frac(1, 2);
        let t = lib!(tau(&a, &mid, &tau_params()));
        ensure!(lib!(t.ideal.equals(&list.ideals[i])), "{a}: τ not constant on [{}, {})", w[0], w[1]);
    }
    for (alpha, t) in jumps.iter().zip(&list.ideals).skip(1) {
        let est = lib!(fthreshold(&a, t, 5));
        ensure!(
            est.lower <= *alpha && *alpha <= est.upper,
            "{a}: threshold bracket [{}, {}] misses jump {alpha}",
            est.lower,
            est.upper
        );
    }
    Ok(true)
}

/// A guess consistent with every recorded `ν` that is also an enumerated
/// jump satisfies `τ(a^g) ⊆ J`.
pub fn guess_test_ideal_inside(seed: u64) -> Check {
    let (a, b) = jumps_instance(seed);
    let r = a.ring().clone();
    let j = Ideal::maximal(&r);
    if a.gens().iter().any(|f| !f.constant_coeff().is_zero()) {
        return Ok(false);
    }
    let est = lib!(fpt(&a, 5));
    let Some(guess) = est.guess.clone() else {
        return Ok(false);
    };
    let consistent = est
        .records
        .iter()
        .all(|rec| guess.ceil_mul(&BigUint::from(rec.q)) == BigUint::from(rec.nu) + 1u32);
    if !consistent || guess > b {
        return Ok(false);
    }
    let list = lib!(jumping_exponents(&a, &b, &tau_params(), None));
    if !list.certified || !list.jumps.contains(&guess) {
        return Ok(false);
    }
    let t = tau_cert!(&a, &guess);
    ensure!(lib!(t.subset(&j)), "τ({a}^{guess}) = {t} ⊄ m");
    Ok(true)
}

/// The brute chain ascends and stays inside the certified test ideal.
pub fn brute_chain_matches(seed: u64) -> Check {
    let (_, a, c, _) = tau_instance(seed);
    let chain = lib!(tau_bruteforce(&a, &c, 3));
    for w in chain.windows(2) {
        ensure!(lib!(w[0].1.subset(&w[1].1)), "brute chain of {a} at {c} descends");
    }
    let t = tau_cert!(&a, &c);
    let last = &chain.last().unwrap().1;
    ensure!(lib!(last.subset(&t)), "brute chain term {last} exceeds τ = {t}");
    Ok(true)
}
