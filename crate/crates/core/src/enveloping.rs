//! The universal enveloping algebra U(g) in PBW normal form.
//!
//! An element is stored as a [`Poly`] whose monomial `x_1^{e_1}...x_n^{e_n}`
//! stands for the ordered product with ascending indices. Products are
//! brought back to this form by straightening: for `j < k`,
//! `x_k x_j = x_j x_k + [x_k, x_j]`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use spin::Mutex;

use crate::error::{Error, Result};
use crate::expr::{self, EvalContext};
use crate::field::PrimeField;
use crate::lie::LieAlgebra;
use crate::monomial::Monomial;
use crate::poly::Poly;

pub const DEFAULT_DEGREE_CAP: usize = 64;

type Terms = Arc<[(Monomial, u32)]>;

/// How to read a commutative polynomial into U(g).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrderingPolicy {
    /// Reject monomials containing two non-commuting variables.
    #[default]
    Strict,
    /// Read every monomial as the ascending ordered product.
    Ascending,
}

/// Multiplication context for one Lie algebra: the bracket table, the
/// straightening memo and the degree cap.
pub struct Envelope {
    alg: LieAlgebra,
    brackets: Vec<Vec<(usize, u32)>>,
    commutes: Vec<bool>,
    memo: Mutex<HashMap<(Monomial, u8), Terms>>,
    degree_cap: usize,
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Envelope")
            .field("algebra", &self.alg.name())
            .field("p", &self.alg.p())
            .field("degree_cap", &self.degree_cap)
            .finish()
    }
}

impl Envelope {
    pub fn new(alg: LieAlgebra) -> Arc<Self> {
        Self::with_degree_cap(alg, DEFAULT_DEGREE_CAP)
    }

    pub fn with_degree_cap(alg: LieAlgebra, degree_cap: usize) -> Arc<Self> {
        let n = alg.dim();
        let mut brackets = Vec::with_capacity(n * n);
        let mut commutes = Vec::with_capacity(n * n);
        for k in 0..n {
            for j in 0..n {
                let terms: Vec<(usize, u32)> = alg
                    .structure(k, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(l, &c)| (l, c))
                    .collect();
                commutes.push(terms.is_empty());
                brackets.push(terms);
            }
        }
        Arc::new(Envelope {
            alg,
            brackets,
            commutes,
            memo: Mutex::new(HashMap::new()),
            degree_cap,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn field(&self) -> PrimeField {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// Number of memoized straightening results.
    pub fn memo_len(&self) -> usize {
        self.memo.lock().len()
    }

    #[inline]
    fn commute(&self, a: usize, b: usize) -> bool {
        self.commutes[a * self.dim() + b]
    }

    /// `M * x_j` in normal form.
    fn right_mul_gen(&self, m: &Monomial, j: usize) -> Result<Terms> {
        let n = self.dim();
        let ordered = match m.max_var() {
            None => true,
            Some(k) => k <= j || (j + 1..n).all(|l| m.exp(l) == 0 || self.commute(l, j)),
        };
        if ordered {
            return Ok(Arc::from([(m.with_incremented(j)?, 1)]));
        }
        if let Some(hit) = self.memo.lock().get(&(*m, j as u8)) {
            return Ok(hit.clone());
        }
        let f = self.field();
        let k = m.max_var().expect("not ordered");
        let head = m.with_decremented(k);
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        let mut push = |q: Monomial, c: u32| {
            let e = acc.entry(q).or_insert(0);
            *e = f.add(*e, c);
        };
        // (M' x_j) x_k
        for (q, c) in self.right_mul_gen(&head, j)?.iter() {
            for (r, d) in self.right_mul_gen(q, k)?.iter() {
                push(*r, f.mul(*c, *d));
            }
        }
        // M' [x_k, x_j]
        for &(l, c) in &self.brackets[k * n + j] {
            for (r, d) in self.right_mul_gen(&head, l)?.iter() {
                push(*r, f.mul(c, *d));
            }
        }
        let terms: Terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        self.memo.lock().insert((*m, j as u8), terms.clone());
        Ok(terms)
    }

    /// `M * N` in normal form, accumulated into `out` with factor `c`.
    fn mono_mul_into(
        &self,
        m: &Monomial,
        nmono: &Monomial,
        c: u32,
        out: &mut HashMap<Monomial, u32>,
    ) -> Result<()> {
        let f = self.field();
        let add = |out: &mut HashMap<Monomial, u32>, q: Monomial, v: u32| {
            let e = out.entry(q).or_insert(0);
            *e = f.add(*e, v);
        };
        let commuting = match (m.max_var(), nmono.min_var()) {
            (Some(hi), Some(lo)) if hi > lo => m.support().filter(|&a| a > lo).all(|a| {
                nmono
                    .support()
                    .filter(|&b| b < a)
                    .all(|b| self.commute(a, b))
            }),
            _ => true,
        };
        if commuting {
            add(out, m.mul(nmono)?, c);
            return Ok(());
        }
        let mut cur: HashMap<Monomial, u32> = HashMap::new();
        cur.insert(*m, c);
        for j in nmono.support() {
            for _ in 0..nmono.exp(j) {
                let mut next: HashMap<Monomial, u32> = HashMap::with_capacity(cur.len());
                for (q, v) in cur.iter() {
                    for (r, d) in self.right_mul_gen(q, j)?.iter() {
                        add(&mut next, *r, f.mul(*v, *d));
                    }
                }
                next.retain(|_, v| *v != 0);
                cur = next;
            }
        }
        for (q, v) in cur {
            add(out, q, v);
        }
        Ok(())
    }
}

/// An element of U(g) in PBW normal form.
#[derive(Clone)]
pub struct PbwElement {
    env: Arc<Envelope>,
    body: Poly,
}

impl PartialEq for PbwElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.env, &other.env) && self.body == other.body
    }
}

impl Eq for PbwElement {}

fn same_algebra(a: &Arc<Envelope>, b: &Arc<Envelope>) -> bool {
    Arc::ptr_eq(a, b) || a.alg == b.alg
}

impl PbwElement {
    pub fn zero(env: &Arc<Envelope>) -> Self {
        PbwElement {
            env: env.clone(),
            body: Poly::zero(env.field(), env.dim()),
        }
    }

    pub fn scalar(env: &Arc<Envelope>, c: i64) -> Self {
        PbwElement {
            env: env.clone(),
            body: Poly::constant(env.field(), env.dim(), c),
        }
    }

    pub fn one(env: &Arc<Envelope>) -> Self {
        Self::scalar(env, 1)
    }

    /// The basis vector `x_{i+1}` (0-based index `i`).
    pub fn generator(env: &Arc<Envelope>, i: usize) -> Result<Self> {
        Ok(PbwElement {
            env: env.clone(),
            body: Poly::var(env.field(), env.dim(), i)?,
        })
    }

    /// Read a commutative polynomial into U(g) monomial by monomial.
    pub fn embed_commutative(
        env: &Arc<Envelope>,
        f: &Poly,
        policy: OrderingPolicy,
    ) -> Result<Self> {
        if f.field() != env.field() {
            return Err(Error::ModulusMismatch {
                left: env.field().modulus(),
                right: f.field().modulus(),
            });
        }
        if f.nvars() != env.dim() {
            return Err(Error::VariableCountMismatch {
                left: env.dim(),
                right: f.nvars(),
            });
        }
        if policy == OrderingPolicy::Strict {
            for (m, _) in f.terms() {
                let support: Vec<usize> = m.support().collect();
                for (a, &i) in support.iter().enumerate() {
                    for &j in &support[a + 1..] {
                        if !env.commute(i, j) {
                            return Err(Error::NonCommutingSupport { i: i + 1, j: j + 1 });
                        }
                    }
                }
            }
        }
        Ok(PbwElement {
            env: env.clone(),
            body: f.clone(),
        })
    }

    /// Parse an expression and evaluate it in U(g), multiplying factors in
    /// the order written. `eps` takes the algebra's parameter value.
    pub fn parse(env: &Arc<Envelope>, src: &str) -> Result<Self> {
        expr::parse(src)?.eval(&PbwContext { env: env.clone() })
    }

    pub fn envelope(&self) -> &Arc<Envelope> {
        &self.env
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.env.alg
    }

    /// Normal-form coordinates as a polynomial.
    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn into_body(self) -> Poly {
        self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.body.degree()
    }

    fn check(&self, other: &PbwElement) -> Result<()> {
        if same_algebra(&self.env, &other.env) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &PbwElement) -> Result<PbwElement> {
        self.check(other)?;
        Ok(PbwElement {
            env: self.env.clone(),
            body: self.body.add(&other.body)?,
        })
    }

    pub fn sub(&self, other: &PbwElement) -> Result<PbwElement> {
        self.check(other)?;
        Ok(PbwElement {
            env: self.env.clone(),
            body: self.body.sub(&other.body)?,
        })
    }

    pub fn neg(&self) -> PbwElement {
        PbwElement {
            env: self.env.clone(),
            body: self.body.neg(),
        }
    }

    pub fn scale(&self, c: u32) -> PbwElement {
        PbwElement {
            env: self.env.clone(),
            body: self.body.scale(c),
        }
    }

    /// Product in U(g), in normal form.
    pub fn mul(&self, other: &PbwElement) -> Result<PbwElement> {
        self.check(other)?;
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return Ok(Self::zero(&self.env));
        };
        if da + db > self.env.degree_cap {
            return Err(Error::DegreeCapExceeded {
                degree: da + db,
                cap: self.env.degree_cap,
            });
        }
        let f = self.env.field();
        let mut out: HashMap<Monomial, u32> = HashMap::new();
        for (m, a) in self.body.terms() {
            for (nm, b) in other.body.terms() {
                self.env.mono_mul_into(m, nm, f.mul(*a, *b), &mut out)?;
            }
        }
        Ok(PbwElement {
            env: self.env.clone(),
            body: Poly::from_terms(f, self.env.dim(), out),
        })
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &PbwElement) -> Result<PbwElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Index of the first generator not commuting with `self`.
    pub fn noncommuting_generator(&self) -> Result<Option<usize>> {
        for i in 0..self.env.dim() {
            let x = Self::generator(&self.env, i)?;
            if !x.commutator(self)?.is_zero() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Whether `self` commutes with every generator, hence with all of U(g).
    pub fn is_central(&self) -> Result<bool> {
        Ok(self.noncommuting_generator()?.is_none())
    }

    pub fn pow(&self, e: u32) -> Result<PbwElement> {
        let mut acc = Self::one(&self.env);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `self^p` by repeated multiplication.
    pub fn pth_power(&self) -> Result<PbwElement> {
        self.pow(self.env.alg.p())
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.body, f)
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PbwElement[{}]({})", self.env.alg.name(), self.body)
    }
}

/// Evaluates expressions in U(g).
pub struct PbwContext {
    pub env: Arc<Envelope>,
}

impl EvalContext for PbwContext {
    type Value = PbwElement;
    fn constant(&self, c: i64) -> Result<PbwElement> {
        Ok(PbwElement::scalar(&self.env, c))
    }
    fn variable(&self, i: usize) -> Result<PbwElement> {
        PbwElement::generator(&self.env, i)
    }
    fn eps(&self) -> Result<PbwElement> {
        let e = self
            .env
            .alg
            .eps()
            .ok_or_else(|| Error::UnexpectedEps(self.env.alg.name().into()))?;
        Ok(PbwElement::scalar(&self.env, e as i64))
    }
    fn add(&self, a: &PbwElement, b: &PbwElement) -> Result<PbwElement> {
        a.add(b)
    }
    fn sub(&self, a: &PbwElement, b: &PbwElement) -> Result<PbwElement> {
        a.sub(b)
    }
    fn mul(&self, a: &PbwElement, b: &PbwElement) -> Result<PbwElement> {
        a.mul(b)
    }
    fn neg(&self, a: &PbwElement) -> Result<PbwElement> {
        Ok(a.neg())
    }
}
