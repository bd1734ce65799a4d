//! Arithmetic in the prime field F_p.
//!
//! Residues are stored as `u32` values in `[0, p)` and reduced eagerly. The
//! modulus is limited to `p < 2^31` so that every product fits in a `u64`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u32 = 1 << 31;

/// Deterministic primality test by trial division; inputs here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `>= n`.
pub fn prime_at_least(n: u32) -> u32 {
    let mut c = n.max(2);
    while !is_prime(c as u64) {
        c += 1;
    }
    c
}

/// Smallest prime `> n`.
pub fn next_prime(n: u32) -> u32 {
    prime_at_least(n + 1)
}

/// The context for a prime field: just the modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p as u64));
        }
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduce a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    pub fn elem(self, v: i64) -> FpElement {
        FpElement {
            value: self.reduce(v),
            modulus: self.p,
        }
    }

    /// Signed representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpElement {
    value: u32,
    modulus: u32,
}

impl FpElement {
    pub fn new(field: PrimeField, v: i64) -> Self {
        field.elem(v)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<FpElement> {
        self.field().inv(self.value).map(|value| FpElement {
            value,
            modulus: self.modulus,
        })
    }

    pub fn checked_add(self, rhs: FpElement) -> Result<FpElement> {
        self.same_field(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_mul(self, rhs: FpElement) -> Result<FpElement> {
        self.same_field(rhs)?;
        Ok(self * rhs)
    }

    fn same_field(self, rhs: FpElement) -> Result<()> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: rhs.modulus,
            });
        }
        Ok(())
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// The operator impls panic on mixed moduli; use the `checked_*` methods when
// the operands come from different contexts.
impl Add for FpElement {
    type Output = FpElement;
    fn add(self, rhs: FpElement) -> FpElement {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        FpElement {
            value: self.field().add(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for FpElement {
    type Output = FpElement;
    fn sub(self, rhs: FpElement) -> FpElement {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        FpElement {
            value: self.field().sub(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for FpElement {
    type Output = FpElement;
    fn mul(self, rhs: FpElement) -> FpElement {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        FpElement {
            value: self.field().mul(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for FpElement {
    type Output = FpElement;
    fn neg(self) -> FpElement {
        FpElement {
            value: self.field().neg(self.value),
            modulus: self.modulus,
        }
    }
}
