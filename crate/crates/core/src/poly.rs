//! Sparse multivariate polynomials over F_p.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FpElement, PrimeField};
use crate::monomial::{Monomial, MAX_VARS};

/// A polynomial in `nvars` commuting variables with coefficients in F_p.
///
/// Terms are kept canonical: each monomial at most once, no zero
/// coefficients. Iteration order is ascending graded-lex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: i64) -> Self {
        Self::term(field, nvars, Monomial::ONE, c)
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: nvars,
            });
        }
        Ok(Self::term(field, nvars, Monomial::var_power(i, 1)?, 1))
    }

    pub fn term(field: PrimeField, nvars: usize, m: Monomial, c: i64) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(m, field.reduce(c));
        p
    }

    pub fn from_terms(
        field: PrimeField,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, u32)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c % field.modulus());
        }
        p
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &u32)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn coeff_element(&self, m: &Monomial) -> FpElement {
        self.field.elem(self.coeff(m) as i64)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn leading_term(&self) -> Option<(Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, *c))
    }

    /// Add `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let f = self.field;
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn compatible(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, self.field.neg(*c));
        }
        Ok(out)
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.field.neg(1 % self.field.modulus()))
    }

    pub fn scale(&self, c: u32) -> Poly {
        let c = c % self.field.modulus();
        let mut out = Poly::zero(self.field, self.nvars);
        if c == 0 {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(*m, self.field.mul(*v, c));
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        let mut out = Poly::zero(self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2)?, self.field.mul(*c1, *c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Result<Poly> {
        let mut acc = Poly::one(self.field, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to the 0-based variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.nvars,
            });
        }
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let factor = self.field.reduce(e as i64);
            out.add_term(m.with_decremented(i), self.field.mul(*c, factor));
        }
        Ok(out)
    }

    /// Evaluate at a point of F_p^nvars.
    pub fn eval(&self, point: &[u32]) -> u32 {
        let f = self.field;
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &x) in point.iter().enumerate().take(self.nvars) {
                let e = m.exp(i);
                if e > 0 {
                    t = f.mul(t, f.pow(x, e as u64));
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    /// Substitute `images[i]` for the variable `x_{i+1}`. All images must
    /// share one field and variable count; the result lives there.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() < self.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: images.len(),
            });
        }
        let target = images
            .first()
            .map(|p| (p.field, p.nvars))
            .unwrap_or((self.field, 0));
        let mut out = Poly::zero(target.0, target.1);
        // Cache of powers per variable.
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| alloc::vec![Poly::one(p.field, p.nvars)])
            .collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target.0, target.1, *c as i64);
            for i in 0..self.nvars {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().expect("nonempty").mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor` when the division leaves no remainder.
    ///
    /// A single divisor is its own Groebner basis, so the greedy division
    /// by the leading term decides divisibility.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Option<Poly>> {
        self.compatible(divisor)?;
        let Some((lm, lc)) = divisor.leading_term() else {
            return Ok(None);
        };
        let inv = self.field.inv(lc).expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.field, self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            // A top term the divisor cannot reach stays in the remainder.
            let Some(q) = m.div(&lm) else {
                return Ok(None);
            };
            let qc = self.field.mul(c, inv);
            quot.add_term(q, qc);
            for (dm, dc) in &divisor.terms {
                rem.add_term(q.mul(dm)?, self.field.neg(self.field.mul(qc, *dc)));
            }
        }
        Ok(if rem.is_zero() { Some(quot) } else { None })
    }

    /// Variables occurring in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = [false; MAX_VARS];
        for m in self.terms.keys() {
            for i in m.support() {
                seen[i] = true;
            }
        }
        (0..self.nvars).filter(|&i| seen[i]).collect()
    }

    /// Coefficient vector against an explicit list of monomials. Terms not in
    /// the list are ignored.
    pub fn coefficients_on(&self, basis: &[Monomial]) -> Vec<u32> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = self.field.signed(*c);
            let mag = s.unsigned_abs();
            if idx == 0 {
                if s < 0 {
                    f.write_str("-")?;
                }
            } else if s < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                m.write_named(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Poly[F_{}; {}]({})",
            self.field.modulus(),
            self.nvars,
            self
        )
    }
}
