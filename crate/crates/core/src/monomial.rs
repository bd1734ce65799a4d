use core::cmp::Ordering;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of variables a monomial can carry.
pub const MAX_VARS: usize = 12;

/// Exponent vector `x_1^{e_1} ... x_n^{e_n}`.
///
/// Ordered graded-lexicographically with `x_1 > x_2 > ...`: first by total
/// degree, then by the exponent of `x_1`, then `x_2`, and so on. The same
/// type serves commutative monomials of the symmetric algebra and ordered
/// PBW monomials of the enveloping algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    degree: u16,
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        degree: 0,
        exps: [0; MAX_VARS],
    };

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Self::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u8::try_from(e).map_err(|_| Error::ExponentOverflow)?;
            m.degree += e as u16;
        }
        Ok(m)
    }

    /// `x_i^e`
    pub fn var_power(i: usize, e: u32) -> Result<Self> {
        if i >= MAX_VARS {
            return Err(Error::TooManyVariables(i + 1));
        }
        let mut m = Self::ONE;
        m.exps[i] = u8::try_from(e).map_err(|_| Error::ExponentOverflow)?;
        m.degree = e as u16;
        Ok(m)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Largest variable index with a positive exponent.
    #[inline]
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// Smallest variable index with a positive exponent.
    #[inline]
    pub fn min_var(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0)
    }

    /// Indices with positive exponent, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Product of commuting monomials.
    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i]
                .checked_add(other.exps[i])
                .ok_or(Error::ExponentOverflow)?;
        }
        m.degree += other.degree;
        Ok(m)
    }

    /// `self * x_i`, commutatively.
    pub fn with_incremented(&self, i: usize) -> Result<Monomial> {
        let mut m = *self;
        m.exps[i] = m.exps[i].checked_add(1).ok_or(Error::ExponentOverflow)?;
        m.degree += 1;
        Ok(m)
    }

    /// `self / x_i`; the caller guarantees `exp(i) > 0`.
    pub fn with_decremented(&self, i: usize) -> Monomial {
        debug_assert!(self.exps[i] > 0);
        let mut m = *self;
        m.exps[i] -= 1;
        m.degree -= 1;
        m
    }

    /// Exact quotient if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].checked_sub(other.exps[i])?;
        }
        m.degree -= other.degree;
        Some(m)
    }

    /// All monomials in `nvars` variables of total degree exactly `d`, in
    /// descending graded-lex order.
    pub fn all_of_degree(nvars: usize, d: usize) -> alloc::vec::Vec<Monomial> {
        let mut out = alloc::vec::Vec::new();
        let mut cur = [0u32; MAX_VARS];
        fn rec(
            i: usize,
            nvars: usize,
            left: usize,
            cur: &mut [u32; MAX_VARS],
            out: &mut alloc::vec::Vec<Monomial>,
        ) {
            if i + 1 == nvars {
                cur[i] = left as u32;
                out.push(Monomial::from_exponents(&cur[..nvars]).expect("bounded"));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u32;
                rec(i + 1, nvars, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(0, nvars, d, &mut cur, &mut out);
        out
    }

    /// Format with 1-based variable names, e.g. `x2*x4^3`.
    pub fn write_named(&self, f: &mut dyn fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_named(f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_named(f)
    }
}

/// Number of monomials of total degree `<= d` in `n` variables, `C(n + d, n)`.
pub fn count_up_to_degree(n: usize, d: usize) -> usize {
    let mut c: u128 = 1;
    for k in 1..=n as u128 {
        c = c * (d as u128 + k) / k;
    }
    usize::try_from(c).unwrap_or(usize::MAX)
}
