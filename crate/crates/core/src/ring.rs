use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::MonomialOrder;

/// Caps on work done by the engine. Exceeding one is a [`Error::ResourceLimit`],
/// never a wrong answer.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Limits {
    /// Maximum number of S-pair reductions in one Buchberger run.
    pub gb_max_steps: usize,
    /// Maximum number of generators produced by an ideal power.
    pub max_generators: usize,
    /// Maximum number of terms in an intermediate polynomial power.
    pub max_terms: usize,
    /// Largest allowed Frobenius exponent `e` (so `q = p^e`).
    pub max_frobenius_exponent: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            gb_max_steps: 200_000,
            max_generators: 50_000,
            max_terms: 500_000,
            max_frobenius_exponent: 64,
        }
    }
}

#[derive(Debug)]
struct RingInner {
    field: PrimeField,
    names: Vec<String>,
    order: MonomialOrder,
    limits: Limits,
}

/// `F_p[x_1, ..., x_n]` with a fixed term order. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingInner>);

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(p: u64, names: &[S]) -> Result<Ring> {
        Ring::with_order(p, names, MonomialOrder::Grevlex)
    }

    pub fn with_order<S: AsRef<str>>(p: u64, names: &[S], order: MonomialOrder) -> Result<Ring> {
        let field = PrimeField::new(p)?;
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        Ring::from_parts(field, names, order, Limits::default())
    }

    fn from_parts(
        field: PrimeField,
        names: Vec<String>,
        order: MonomialOrder,
        limits: Limits,
    ) -> Result<Ring> {
        if names.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_ident(n) {
                return Err(Error::InvalidRing(alloc::format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(alloc::format!("duplicate variable {n:?}")));
            }
        }
        order.validate(names.len())?;
        Ok(Ring(Arc::new(RingInner {
            field,
            names,
            order,
            limits,
        })))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.0.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    #[inline]
    pub fn limits(&self) -> &Limits {
        &self.0.limits
    }

    /// Same variables and field, different term order.
    pub fn reorder(&self, order: MonomialOrder) -> Result<Ring> {
        if order == self.order() {
            return Ok(self.clone());
        }
        Ring::from_parts(self.0.field, self.0.names.clone(), order, self.0.limits)
    }

    pub fn with_limits(&self, limits: Limits) -> Ring {
        Ring(Arc::new(RingInner {
            field: self.0.field,
            names: self.0.names.clone(),
            order: self.0.order,
            limits,
        }))
    }

    /// Adds a fresh variable in front of the existing ones.
    pub(crate) fn prepend_var(&self, order: MonomialOrder) -> Result<Ring> {
        let mut name = String::from("_t");
        while self.0.names.contains(&name) {
            name.push('_');
        }
        let mut names = Vec::with_capacity(self.nvars() + 1);
        names.push(name);
        names.extend(self.0.names.iter().cloned());
        Ring::from_parts(self.0.field, names, order, self.0.limits)
    }

    /// Structural equality of field, variables and order.
    pub fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.names == other.0.names
                && self.0.order == other.0.order)
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        self.same(other)
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.characteristic(), self.0.names.join(", "))
    }
}
