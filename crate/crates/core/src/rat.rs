//! Nonnegative exact rationals for exponents, thresholds and jumps.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{ParseError, ParseErrorKind};

/// A reduced, nonnegative rational number of arbitrary size.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rat(Ratio<BigUint>);

impl Rat {
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Result<Self, ParseErrorKind> {
        let den = den.into();
        if den.is_zero() {
            return Err(ParseErrorKind::DenominatorZero);
        }
        Ok(Rat(Ratio::new(num.into(), den)))
    }

    /// Panics on a zero denominator; for literals in code.
    pub fn frac(num: u64, den: u64) -> Self {
        Rat::new(num, den).expect("nonzero denominator")
    }

    pub fn int(n: u64) -> Self {
        Rat(Ratio::from_integer(BigUint::from(n)))
    }

    pub fn zero() -> Self {
        Rat(Ratio::zero())
    }

    pub fn from_ratio(r: Ratio<BigUint>) -> Self {
        Rat(r)
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> BigUint {
        self.0.numer() / self.0.denom()
    }

    pub fn ceil(&self) -> BigUint {
        Integer::div_ceil(self.0.numer(), self.0.denom())
    }

    /// `⌈self · k⌉`
    pub fn ceil_mul(&self, k: &BigUint) -> BigUint {
        Integer::div_ceil(&(self.0.numer() * k), self.0.denom())
    }

    /// `⌊self · k⌋`
    pub fn floor_mul(&self, k: &BigUint) -> BigUint {
        (self.0.numer() * k) / self.0.denom()
    }

    /// Whether `self · k` is an integer.
    pub fn mul_is_integer(&self, k: &BigUint) -> bool {
        (self.0.numer() * k).is_multiple_of(self.0.denom())
    }

    /// `self - other`, or `None` when negative.
    pub fn checked_sub(&self, other: &Rat) -> Option<Rat> {
        if self < other {
            None
        } else {
            Some(Rat(&self.0 - &other.0))
        }
    }

    pub fn recip(&self) -> Option<Rat> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.0.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = self.0.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<u64> for Rat {
    fn from(n: u64) -> Self {
        Rat::int(n)
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat(&self.0 + &rhs.0)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

/// Saturating at zero.
impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        self.checked_sub(rhs).unwrap_or_else(Rat::zero)
    }
}

impl FromStr for Rat {
    type Err = ParseError;

    /// `num` or `num/den` with decimal naturals; surrounding whitespace ignored.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bytes = s.as_bytes();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        let read_nat = |i: &mut usize| -> Result<BigUint, ParseError> {
            let start = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            if start == *i {
                return Err(match s[start..].chars().next() {
                    Some(c) => ParseError::new(start, ParseErrorKind::Unexpected(c)),
                    None => ParseError::new(start, ParseErrorKind::UnexpectedEnd),
                });
            }
            Ok(BigUint::parse_bytes(&bytes[start..*i], 10).expect("digits"))
        };
        skip_ws(&mut i);
        let num = read_nat(&mut i)?;
        skip_ws(&mut i);
        let mut den = BigUint::one();
        let mut den_at = i;
        if i < bytes.len() && bytes[i] == b'/' {
            i += 1;
            skip_ws(&mut i);
            den_at = i;
            den = read_nat(&mut i)?;
            skip_ws(&mut i);
        }
        if let Some(c) = s[i..].chars().next() {
            return Err(ParseError::new(i, ParseErrorKind::Unexpected(c)));
        }
        Rat::new(num, den).map_err(|k| ParseError::new(den_at, k))
    }
}

/// An interval endpoint for [`simplest_in`].
#[derive(Clone, Debug)]
pub enum Bound {
    Closed(Rat),
    Open(Rat),
    Unbounded,
}

impl Bound {
    fn value(&self) -> Option<&Rat> {
        match self {
            Bound::Closed(r) | Bound::Open(r) => Some(r),
            Bound::Unbounded => None,
        }
    }

    fn closed(&self) -> bool {
        matches!(self, Bound::Closed(_))
    }
}

/// The rational of least denominator (then least value) in the interval
/// between `lo` and `hi`, found by descending the Stern–Brocot tree through
/// continued-fraction steps. Returns `None` for an empty interval.
pub fn simplest_in(lo: &Bound, hi: &Bound) -> Option<Rat> {
    let lo_v = lo.value().cloned().unwrap_or_else(Rat::zero);
    let lo = match lo {
        Bound::Unbounded => Bound::Closed(Rat::zero()),
        b => b.clone(),
    };
    if let Some(h) = hi.value() {
        match lo_v.cmp(h) {
            Ordering::Greater => return None,
            Ordering::Equal => {
                return (lo.closed() && hi.closed()).then_some(lo_v);
            }
            Ordering::Less => {}
        }
    }
    // Smallest integer in the interval, if any.
    let fl = lo_v.floor();
    let n = if lo_v.is_integer() && lo.closed() {
        fl.clone()
    } else {
        &fl + 1u32
    };
    let n_rat = Rat(Ratio::from_integer(n));
    let fits = match hi {
        Bound::Unbounded => true,
        Bound::Closed(h) => &n_rat <= h,
        Bound::Open(h) => &n_rat < h,
    };
    if fits {
        return Some(n_rat);
    }
    // The interval sits inside (fl, fl + 1): recurse on reciprocals of the
    // fractional parts.
    let shift = Rat(Ratio::from_integer(fl));
    let lo_frac = &lo_v - &shift;
    let hi_frac = hi.value().expect("bounded") - &shift;
    let new_lo = match hi {
        Bound::Closed(_) => Bound::Closed(hi_frac.recip().expect("positive")),
        _ => Bound::Open(hi_frac.recip().expect("positive")),
    };
    let new_hi = match lo_frac.recip() {
        None => Bound::Unbounded,
        Some(r) if lo.closed() => Bound::Closed(r),
        Some(r) => Bound::Open(r),
    };
    let y = simplest_in(&new_lo, &new_hi)?;
    Some(&shift + &y.recip().expect("positive"))
}

/// The largest rational `< x` and the smallest rational `>= x` whose
/// denominators are at most `max_den`. The upper neighbour is `None` only
/// when it would be infinite, which cannot happen for `max_den >= 1`.
pub fn farey_neighbours(x: &Rat, max_den: &BigUint) -> (Rat, Rat) {
    assert!(!max_den.is_zero());
    let xn = BigInt::from(x.numer().clone());
    let xd = BigInt::from(x.denom().clone());
    let dmax = BigInt::from(max_den.clone());
    let (mut ln, mut ld) = (BigInt::zero(), BigInt::one());
    let (mut rn, mut rd) = (BigInt::one(), BigInt::zero());
    if x.is_zero() {
        // Nothing lies strictly below zero among nonnegative rationals.
        return (Rat::zero(), Rat::zero());
    }
    loop {
        if &ld + &rd > dmax {
            break;
        }
        let mn = &ln + &rn;
        let md = &ld + &rd;
        if &mn * &xd < &xn * &md {
            // Step the left end towards x.
            let slope = &rn * &xd - &xn * &rd;
            let gap = &xn * &ld - &ln * &xd;
            let mut k: Option<BigInt> = if slope.is_zero() {
                None
            } else {
                Some(Integer::div_ceil(&gap, &slope) - 1)
            };
            if !rd.is_zero() {
                let by_den = (&dmax - &ld) / &rd;
                k = Some(match k {
                    Some(k) => k.min(by_den),
                    None => by_den,
                });
            }
            let k = k.expect("bounded step");
            ln += &k * &rn;
            ld += &k * &rd;
        } else {
            let gap = &xn * &ld - &ln * &xd;
            let room = &rn * &xd - &xn * &rd;
            let by_den = (&dmax - &rd) / &ld;
            let k = room.div_floor(&gap).min(by_den);
            rn += &k * &ln;
            rd += &k * &ld;
        }
    }
    let to_rat = |n: BigInt, d: BigInt| {
        Rat::new(n.to_biguint().expect("nonnegative"), d.to_biguint().expect("positive"))
            .expect("nonzero")
    };
    let upper = if rd.is_zero() { x.clone() } else { to_rat(rn, rd) };
    (to_rat(ln, ld), upper)
}
