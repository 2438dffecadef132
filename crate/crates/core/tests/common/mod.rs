#![allow(dead_code)]

use fjump_core::{Ideal, Monomial, Poly, Rat, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const NAMES: [&str; 3] = ["x", "y", "z"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(p: u64, n: usize) -> Ring {
    Ring::new(p, &NAMES[..n]).unwrap()
}

pub fn id(r: &Ring, s: &str) -> Ideal {
    Ideal::parse(r, s).unwrap()
}

pub fn monomial(rng: &mut ChaCha8Rng, n: usize, max_exp: u32) -> Monomial {
    Monomial::from_exponents((0..n).map(|_| rng.gen_range(0..=max_exp)).collect())
}

/// Random monomial of total degree between 1 and `max_deg`.
pub fn monomial_deg(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> Monomial {
    let d = rng.gen_range(1..=max_deg);
    let mut e = vec![0u32; n];
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::from_exponents(e)
}

/// Random polynomial with at most `terms` terms of degree in `1..=max_deg`,
/// so the constant term is zero.
pub fn poly(rng: &mut ChaCha8Rng, r: &Ring, terms: usize, max_deg: u32) -> Poly {
    loop {
        let k = rng.gen_range(1..=terms);
        let p = r.characteristic();
        let ts = (0..k)
            .map(|_| {
                let m = monomial_deg(rng, r.nvars(), max_deg);
                (m, r.field().elem(rng.gen_range(1..p as u64)))
            })
            .collect();
        let f = Poly::from_terms(r, ts);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random homogeneous polynomial of degree `d`.
pub fn homogeneous(rng: &mut ChaCha8Rng, r: &Ring, terms: usize, d: u32) -> Poly {
    loop {
        let p = r.characteristic();
        let ts = (0..rng.gen_range(1..=terms))
            .map(|_| {
                let mut e = vec![0u32; r.nvars()];
                for _ in 0..d {
                    e[rng.gen_range(0..r.nvars())] += 1;
                }
                (Monomial::from_exponents(e), r.field().elem(rng.gen_range(1..p as u64)))
            })
            .collect();
        let f = Poly::from_terms(r, ts);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn ideal(rng: &mut ChaCha8Rng, r: &Ring, gens: usize, terms: usize, max_deg: u32) -> Ideal {
    let k = rng.gen_range(1..=gens);
    Ideal::new(r, (0..k).map(|_| poly(rng, r, terms, max_deg)).collect()).unwrap()
}

pub fn monomial_ideal(rng: &mut ChaCha8Rng, r: &Ring, gens: usize, max_deg: u32) -> Ideal {
    let k = rng.gen_range(1..=gens);
    let ms = (0..k).map(|_| monomial_deg(rng, r.nvars(), max_deg)).collect();
    Ideal::from_monomials(r, ms)
}

/// Random rational in `(0, max]` with denominator at most `max_den`.
pub fn rat(rng: &mut ChaCha8Rng, max: u64, max_den: u64) -> Rat {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(1..=max * den);
    Rat::frac(num, den)
}

pub fn prime(rng: &mut ChaCha8Rng, ps: &[u64]) -> u64 {
    ps[rng.gen_range(0..ps.len())]
}

pub mod props;
