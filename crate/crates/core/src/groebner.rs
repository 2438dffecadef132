//! Buchberger's algorithm with the Gebauer–Möller criteria and the normal
//! selection strategy (smallest lcm first).

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;

/// The reduced Gröbner basis of an ideal for the order of `ring`. Elements
/// are monic and sorted descending by lead monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    basis: Vec<Poly>,
    monomial: bool,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.basis == other.basis
    }
}

impl Eq for GroebnerBasis {}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Index of the first basis element whose lead monomial divides `m`.
fn find_divisor(leads: &[&Monomial], m: &Monomial) -> Option<usize> {
    leads.iter().position(|l| l.divides(m))
}

/// Full normal form of `f` with respect to monic polynomials `g`.
fn normal_form(f: &Poly, g: &[&Poly]) -> Result<Poly> {
    let ring = f.ring().clone();
    let leads: Vec<&Monomial> = g.iter().map(|p| p.lead_monomial().unwrap()).collect();
    let mut rest = f.clone();
    let mut done: Vec<(Monomial, crate::field::FieldElem)> = Vec::new();
    while let Some((m, c)) = rest.lead().cloned() {
        match find_divisor(&leads, &m) {
            Some(k) => {
                let t = leads[k].quotient_of(&m);
                rest = rest.sub(&g[k].mul_term(&t, c)?)?;
            }
            None => {
                done.push((m, c));
                let mut terms = rest.into_terms();
                terms.remove(0);
                rest = Poly::from_sorted(&ring, terms);
            }
        }
    }
    Ok(Poly::from_sorted(&ring, done))
}

fn spoly(f: &Poly, g: &Poly, lcm: &Monomial) -> Result<Poly> {
    let (mf, cf) = f.lead().unwrap();
    let (mg, cg) = g.lead().unwrap();
    let field = f.ring().field();
    // Both inputs are monic in practice, but stay general.
    let a = f.mul_term(&mf.quotient_of(lcm), field.inv(*cf)?)?;
    let b = g.mul_term(&mg.quotient_of(lcm), field.inv(*cg)?)?;
    a.sub(&b)
}

/// Removes monomials divisible by another one and sorts descending.
pub(crate) fn minimal_monomials(ring: &Ring, mut ms: Vec<Monomial>) -> Vec<Monomial> {
    let ord = ring.order();
    ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| ord.cmp(a, b)));
    ms.dedup();
    let mut keep: Vec<Monomial> = Vec::with_capacity(ms.len());
    for m in ms {
        // Sorted by degree, so a divisor of m (other than m) comes earlier.
        if !keep.iter().any(|k| k.divides(&m)) {
            keep.push(m);
        }
    }
    keep.sort_by(|a, b| ord.cmp(b, a));
    keep
}

struct Builder<'a> {
    ring: &'a Ring,
    polys: Vec<Poly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder<'_> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].lead_monomial().unwrap()
    }

    /// Gebauer–Möller update after adding `h`.
    fn update(&mut self, h: Poly) {
        let hi = self.polys.len();
        let hm = h.lead_monomial().unwrap().clone();
        self.polys.push(h);
        self.active.push(true);

        let mut cand: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: hi,
                lcm: hm.lcm(self.lm(g)),
            })
            .collect();

        // Chain criterion among the new pairs.
        let mut kept: Vec<Pair> = Vec::new();
        while !cand.is_empty() {
            let p = cand.remove(0);
            let coprime = hm.coprime(self.lm(p.i));
            if coprime
                || (!cand.iter().any(|o| o.lcm.divides(&p.lcm))
                    && !kept.iter().any(|o| o.lcm.divides(&p.lcm)))
            {
                kept.push(p);
            }
        }
        // Product criterion.
        kept.retain(|p| !hm.coprime(self.lm(p.i)));

        // Old pairs made redundant by h.
        let old = core::mem::take(&mut self.pairs);
        for p in old {
            let lcm_ih = self.lm(p.i).lcm(&hm);
            let lcm_jh = self.lm(p.j).lcm(&hm);
            if !hm.divides(&p.lcm) || lcm_ih == p.lcm || lcm_jh == p.lcm {
                self.pairs.push(p);
            }
        }
        self.pairs.extend(kept);

        for g in 0..hi {
            if self.active[g] && hm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn take_pair(&mut self) -> Option<Pair> {
        let ord = self.ring.order();
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                ord.cmp(&a.lcm, &b.lcm)
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn active_polys(&self) -> Vec<&Poly> {
        (0..self.polys.len())
            .filter(|&k| self.active[k])
            .map(|k| &self.polys[k])
            .collect()
    }
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of the ideal generated by `gens` for the order of
    /// `ring`. Generators are moved into `ring` first.
    pub fn compute(ring: &Ring, gens: &[Poly]) -> Result<GroebnerBasis> {
        let mut input: Vec<Poly> = Vec::with_capacity(gens.len());
        for g in gens {
            let g = g.to_ring(ring)?;
            if g.is_zero() {
                continue;
            }
            if g.is_unit() {
                return Ok(GroebnerBasis::unit(ring));
            }
            input.push(g.monic());
        }
        if input.iter().all(|g| g.is_monomial()) {
            let ms = input
                .iter()
                .map(|g| g.lead_monomial().unwrap().clone())
                .collect();
            let basis = minimal_monomials(ring, ms)
                .into_iter()
                .map(|m| Poly::term(ring, m, crate::field::FieldElem::ONE))
                .collect();
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                basis,
                monomial: true,
            });
        }

        let ord = ring.order();
        input.sort_by(|a, b| ord.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
        let mut b = Builder {
            ring,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        };
        for f in input {
            let h = normal_form(&f, &b.active_polys())?;
            if h.is_zero() {
                continue;
            }
            if h.is_unit() {
                return Ok(GroebnerBasis::unit(ring));
            }
            b.update(h.monic());
        }

        let cap = ring.limits().gb_max_steps;
        let mut steps = 0usize;
        while let Some(pair) = b.take_pair() {
            steps += 1;
            if steps > cap {
                return Err(Error::resource(alloc::format!(
                    "Groebner basis exceeded {cap} reduction steps"
                )));
            }
            let s = spoly(&b.polys[pair.i], &b.polys[pair.j], &pair.lcm)?;
            let h = normal_form(&s, &b.active_polys())?;
            if h.is_zero() {
                continue;
            }
            if h.is_unit() {
                return Ok(GroebnerBasis::unit(ring));
            }
            b.update(h.monic());
        }

        // The active set has pairwise non-dividing leads; reduce tails.
        let active: Vec<Poly> = b.active_polys().into_iter().cloned().collect();
        let mut basis = Vec::with_capacity(active.len());
        for (k, g) in active.iter().enumerate() {
            let others: Vec<&Poly> = active
                .iter()
                .enumerate()
                .filter(|&(o, _)| o != k)
                .map(|(_, p)| p)
                .collect();
            let (lm, lc) = g.lead().unwrap().clone();
            let mut tail = g.terms()[1..].to_vec();
            let tail_nf = normal_form(&Poly::from_sorted(ring, core::mem::take(&mut tail)), &others)?;
            let mut terms = alloc::vec![(lm, lc)];
            terms.extend(tail_nf.into_terms());
            basis.push(Poly::from_sorted(ring, terms).monic());
        }
        basis.sort_by(|a, b| ord.cmp(b.lead_monomial().unwrap(), a.lead_monomial().unwrap()));
        Ok(GroebnerBasis {
            ring: ring.clone(),
            basis,
            monomial: false,
        })
    }

    fn unit(ring: &Ring) -> GroebnerBasis {
        GroebnerBasis {
            ring: ring.clone(),
            basis: alloc::vec![Poly::one(ring)],
            monomial: true,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_unit()
    }

    /// True when the ideal is generated by monomials.
    pub fn is_monomial(&self) -> bool {
        self.monomial
    }

    /// Normal form of `f`; zero exactly when `f` lies in the ideal.
    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        let f = f.to_ring(&self.ring)?;
        if self.monomial {
            let leads: Vec<&Monomial> = self.basis.iter().map(|g| g.lead_monomial().unwrap()).collect();
            let terms = f
                .into_terms()
                .into_iter()
                .filter(|(m, _)| find_divisor(&leads, m).is_none())
                .collect();
            return Ok(Poly::from_sorted(&self.ring, terms));
        }
        let g: Vec<&Poly> = self.basis.iter().collect();
        normal_form(&f, &g)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }
}

/// Checks the defining properties of a reduced basis; used by tests.
pub fn is_reduced(gb: &GroebnerBasis) -> bool {
    let b = gb.basis();
    let ord = gb.ring().order();
    for (k, g) in b.iter().enumerate() {
        if g.lead_coeff() != Some(crate::field::FieldElem::ONE) {
            return false;
        }
        for (o, h) in b.iter().enumerate() {
            if o == k {
                continue;
            }
            let lh = h.lead_monomial().unwrap();
            if g.terms().iter().any(|(m, _)| lh.divides(m)) {
                return false;
            }
        }
        if k > 0
            && ord.cmp(b[k - 1].lead_monomial().unwrap(), g.lead_monomial().unwrap())
                != Ordering::Greater
        {
            return false;
        }
    }
    true
}
