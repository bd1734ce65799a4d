//! Finite-dimensional Lie algebras given by structure constants over F_p.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{poly_matrix_rank, FpMatrix, PolyMatrix};
use crate::monomial::MAX_VARS;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    None,
    /// `eps` ranges over the whole field.
    EpsAny,
    /// `eps` must be nonzero.
    EpsNonzero,
    /// Defined in characteristic 2 only; `eps` is any field element.
    EpsChar2,
}

impl ParamKind {
    pub fn takes_eps(self) -> bool {
        !matches!(self, ParamKind::None)
    }
}

/// One summand `coeff * (eps if eps) * x_target` of a bracket.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTerm {
    /// 0-based basis index.
    pub target: usize,
    pub coeff: i64,
    pub eps: bool,
}

/// `[x_i, x_j] = sum of terms`, with `i < j` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketSpec {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<StructureTerm>,
}

/// Published invariants of a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableData {
    /// 0-based indices of the basis vectors spanning the center.
    pub center: Vec<usize>,
    pub class: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraSpec {
    pub name: String,
    pub dim: usize,
    pub param_kind: ParamKind,
    pub brackets: Vec<BracketSpec>,
    pub table: Option<TableData>,
}

impl LieAlgebraSpec {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.dim > MAX_VARS {
            return Err(Error::InvalidSpec(format!(
                "dimension {} out of range",
                self.dim
            )));
        }
        let mut seen = Vec::new();
        for b in &self.brackets {
            if b.i >= b.j || b.j >= self.dim {
                return Err(Error::InvalidSpec(format!(
                    "bracket [x{}, x{}] must have i < j <= dim",
                    b.i + 1,
                    b.j + 1
                )));
            }
            if seen.contains(&(b.i, b.j)) {
                return Err(Error::InvalidSpec(format!(
                    "bracket [x{}, x{}] given twice",
                    b.i + 1,
                    b.j + 1
                )));
            }
            seen.push((b.i, b.j));
            for t in &b.terms {
                if t.target >= self.dim {
                    return Err(Error::InvalidSpec(format!(
                        "x{} out of range",
                        t.target + 1
                    )));
                }
                if t.eps && !self.param_kind.takes_eps() {
                    return Err(Error::InvalidSpec(
                        "eps used by an unparametrized algebra".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Relations in the form `[x1, x2] = x3, [x2, x4] = eps*x6`.
    pub fn relations_string(&self) -> String {
        let mut out = String::new();
        for (n, b) in self.brackets.iter().enumerate() {
            if n > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("[x{}, x{}] = ", b.i + 1, b.j + 1));
            for (k, t) in b.terms.iter().enumerate() {
                let mag = t.coeff.unsigned_abs();
                if k == 0 {
                    if t.coeff < 0 {
                        out.push('-');
                    }
                } else if t.coeff < 0 {
                    out.push_str(" - ");
                } else {
                    out.push_str(" + ");
                }
                if mag != 1 {
                    out.push_str(&format!("{mag}*"));
                }
                if t.eps {
                    out.push_str("eps*");
                }
                out.push_str(&format!("x{}", t.target + 1));
            }
        }
        out
    }
}

/// An element of the Lie algebra in the fixed basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GVector {
    field: PrimeField,
    coords: Vec<u32>,
}

impl GVector {
    pub fn zero(field: PrimeField, n: usize) -> Self {
        GVector {
            field,
            coords: vec![0; n],
        }
    }

    pub fn basis(field: PrimeField, n: usize, i: usize) -> Self {
        let mut v = Self::zero(field, n);
        v.coords[i] = 1;
        v
    }

    pub fn from_coords(field: PrimeField, coords: &[i64]) -> Self {
        GVector {
            field,
            coords: coords.iter().map(|&c| field.reduce(c)).collect(),
        }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &GVector) -> GVector {
        assert_eq!(self.dim(), other.dim());
        let f = self.field;
        GVector {
            field: f,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> GVector {
        let f = self.field;
        GVector {
            field: f,
            coords: self.coords.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// The same vector as a linear polynomial.
    pub fn to_poly(&self) -> Poly {
        let n = self.dim();
        let mut p = Poly::zero(self.field, n);
        for (i, &c) in self.coords.iter().enumerate() {
            if c != 0 {
                p.add_term(
                    crate::monomial::Monomial::var_power(i, 1).expect("i < n"),
                    c,
                );
            }
        }
        p
    }
}

impl fmt::Display for GVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_poly(), f)
    }
}

impl fmt::Debug for GVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GVector({self})")
    }
}

/// Upper limit on candidates examined by [`LieAlgebra::find_abelian_triple`].
pub const TRIPLE_SEARCH_CAP: usize = 1 << 20;

/// A Lie algebra over F_p with dense structure constants `c[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    spec: LieAlgebraSpec,
    field: PrimeField,
    eps: Option<u32>,
    consts: Vec<u32>,
}

impl LieAlgebra {
    /// Instantiate a spec at prime `p`, checking parameters and `p >= class`.
    pub fn from_spec(spec: LieAlgebraSpec, p: u32, eps: Option<i64>) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if spec.param_kind == ParamKind::EpsChar2 && p != 2 {
            return Err(Error::Char2Only(spec.name.clone()));
        }
        let eps = match (spec.param_kind, eps) {
            (ParamKind::None, None) => None,
            (ParamKind::None, Some(_)) => return Err(Error::UnexpectedEps(spec.name.clone())),
            (_, None) => return Err(Error::MissingEps(spec.name.clone())),
            (kind, Some(e)) => {
                let e = field.reduce(e);
                if kind == ParamKind::EpsNonzero && e == 0 {
                    return Err(Error::EpsMustBeNonzero(spec.name.clone()));
                }
                Some(e)
            }
        };
        let alg = Self::new_unchecked(spec, field, eps)?;
        let class = match &alg.spec.table {
            Some(t) => t.class,
            None => alg
                .nilpotency_class()
                .ok_or_else(|| Error::InvalidSpec(format!("{} is not nilpotent", alg.spec.name)))?,
        };
        if class > p as usize {
            return Err(Error::CharacteristicTooSmall {
                name: alg.spec.name.clone(),
                p,
                class,
            });
        }
        Ok(alg)
    }

    /// Build the structure constants without the nilpotency and
    /// characteristic checks. The bracket is antisymmetric by construction
    /// but the Jacobi identity is not checked.
    pub fn new_unchecked(
        spec: LieAlgebraSpec,
        field: PrimeField,
        eps: Option<u32>,
    ) -> Result<Self> {
        spec.validate()?;
        let n = spec.dim;
        let mut consts = vec![0u32; n * n * n];
        for b in &spec.brackets {
            for t in &b.terms {
                let mut c = field.reduce(t.coeff);
                if t.eps {
                    let e = eps.ok_or_else(|| Error::MissingEps(spec.name.clone()))?;
                    c = field.mul(c, e);
                }
                let ij = (b.i * n + b.j) * n + t.target;
                let ji = (b.j * n + b.i) * n + t.target;
                consts[ij] = field.add(consts[ij], c);
                consts[ji] = field.neg(consts[ij]);
            }
        }
        Ok(LieAlgebra {
            spec,
            field,
            eps,
            consts,
        })
    }

    /// The abelian Lie algebra of dimension `n`.
    pub fn abelian(n: usize, p: u32) -> Result<Self> {
        let spec = LieAlgebraSpec {
            name: format!("abelian_{n}"),
            dim: n,
            param_kind: ParamKind::None,
            brackets: Vec::new(),
            table: None,
        };
        Self::from_spec(spec, p, None)
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn spec(&self) -> &LieAlgebraSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn eps(&self) -> Option<u32> {
        self.eps
    }

    /// Coordinates of `[x_i, x_j]`.
    #[inline]
    pub fn structure(&self, i: usize, j: usize) -> &[u32] {
        let n = self.dim();
        &self.consts[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn basis_vector(&self, i: usize) -> GVector {
        GVector::basis(self.field, self.dim(), i)
    }

    pub fn bracket(&self, u: &GVector, v: &GVector) -> Result<GVector> {
        let n = self.dim();
        for w in [u, v] {
            if w.dim() != n {
                return Err(Error::VariableCountMismatch {
                    left: n,
                    right: w.dim(),
                });
            }
            if w.field() != self.field {
                return Err(Error::ModulusMismatch {
                    left: self.p(),
                    right: w.field().modulus(),
                });
            }
        }
        let f = self.field;
        let mut out = vec![0u32; n];
        for (i, &a) in u.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.coords.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, &c) in self.structure(i, j).iter().enumerate() {
                    if c != 0 {
                        out[k] = f.add(out[k], f.mul(ab, c));
                    }
                }
            }
        }
        Ok(GVector {
            field: f,
            coords: out,
        })
    }

    fn bracket_basis(&self, i: usize, j: usize) -> GVector {
        GVector {
            field: self.field,
            coords: self.structure(i, j).to_vec(),
        }
    }

    /// True iff `[[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j] = 0`
    /// for all basis triples.
    pub fn check_jacobi(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    /// First basis triple violating the Jacobi identity.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let xi = self.basis_vector(i);
                    let xj = self.basis_vector(j);
                    let xk = self.basis_vector(k);
                    let a = self.bracket(&self.bracket_basis(i, j), &xk).expect("dims");
                    let b = self.bracket(&self.bracket_basis(j, k), &xi).expect("dims");
                    let c = self.bracket(&self.bracket_basis(k, i), &xj).expect("dims");
                    if !a.add(&b).add(&c).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Basis of the center in reduced echelon form.
    pub fn center(&self) -> Vec<GVector> {
        let n = self.dim();
        let mut m = FpMatrix::zeros(self.field, 0, n);
        let mut row = vec![0u32; n];
        for i in 0..n {
            for k in 0..n {
                for (j, r) in row.iter_mut().enumerate() {
                    *r = self.structure(i, j)[k];
                }
                m.push_row(&row);
            }
        }
        m.kernel_basis()
            .into_iter()
            .map(|coords| GVector {
                field: self.field,
                coords,
            })
            .collect()
    }

    /// Whether `v` commutes with every basis vector.
    pub fn is_central_vector(&self, v: &GVector) -> bool {
        (0..self.dim()).all(|i| {
            self.bracket(&self.basis_vector(i), v)
                .map(|w| w.is_zero())
                .unwrap_or(false)
        })
    }

    /// Indices `i` such that `x_i` is central.
    pub fn central_basis_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.is_central_vector(&self.basis_vector(i)))
            .collect()
    }

    /// Smallest `c` with `g^{c+1} = 0`, or `None` if the algebra is not
    /// nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let n = self.dim();
        let all: Vec<GVector> = (0..n).map(|i| self.basis_vector(i)).collect();
        self.lower_central_length(&all)
    }

    /// Nilpotency class of the subalgebra generated by `gens`.
    pub fn generated_subalgebra_class(&self, gens: &[GVector]) -> Option<usize> {
        let h = self.generated_subalgebra(gens);
        self.lower_central_length(&h)
    }

    /// Basis of the subalgebra generated by `gens`.
    pub fn generated_subalgebra(&self, gens: &[GVector]) -> Vec<GVector> {
        let mut basis = self.echelon(gens);
        loop {
            let mut next = basis.clone();
            for a in &basis {
                for b in &basis {
                    next.push(self.bracket(a, b).expect("dims"));
                }
            }
            let next = self.echelon(&next);
            if next.len() == basis.len() {
                return basis;
            }
            basis = next;
        }
    }

    fn lower_central_length(&self, h: &[GVector]) -> Option<usize> {
        let n = self.dim();
        let mut cur = self.echelon(h);
        let mut k = 1;
        loop {
            if cur.is_empty() {
                return Some(k - 1);
            }
            if k > n + 1 {
                return None;
            }
            let mut next = Vec::new();
            for a in h {
                for b in &cur {
                    next.push(self.bracket(a, b).expect("dims"));
                }
            }
            cur = self.echelon(&next);
            k += 1;
        }
    }

    fn echelon(&self, vs: &[GVector]) -> Vec<GVector> {
        let n = self.dim();
        let mut m = FpMatrix::zeros(self.field, 0, n);
        for v in vs {
            m.push_row(&v.coords);
        }
        m.rref();
        (0..m.rows())
            .map(|i| GVector {
                field: self.field,
                coords: m.row(i).to_vec(),
            })
            .collect()
    }

    /// The antisymmetric matrix with entries `[x_i, x_j]` as linear
    /// polynomials.
    pub fn multiplication_matrix(&self) -> PolyMatrix {
        let n = self.dim();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.bracket_basis(i, j).to_poly());
            }
        }
        PolyMatrix::new(n, n, entries).expect("consistent entries")
    }

    pub fn rank_mg(&self) -> usize {
        poly_matrix_rank(&self.multiplication_matrix()).expect("consistent entries")
    }

    /// Centralizer of `x`, as a reduced echelon basis.
    pub fn centralizer(&self, x: &GVector) -> Vec<GVector> {
        let n = self.dim();
        let f = self.field;
        let mut m = FpMatrix::zeros(f, 0, n);
        let mut row = vec![0u32; n];
        for k in 0..n {
            for (j, r) in row.iter_mut().enumerate() {
                *r = (0..n).fold(0, |acc, i| {
                    f.add(acc, f.mul(x.coords[i], self.structure(i, j)[k]))
                });
            }
            m.push_row(&row);
        }
        m.kernel_basis()
            .into_iter()
            .map(|coords| GVector { field: f, coords })
            .collect()
    }

    /// Find `x` outside the center and `y, z` with `[x,y] = [x,z] = 0` and
    /// `[y,z] != 0`, i.e. a non-central `x` with non-abelian centralizer.
    ///
    /// Candidates for `x` run over combinations of the non-central basis
    /// vectors by increasing support, first nonzero coefficient 1; `y, z`
    /// come from the centralizer basis. Gives up after [`TRIPLE_SEARCH_CAP`]
    /// candidates.
    pub fn find_abelian_triple(&self) -> Option<(GVector, GVector, GVector)> {
        let n = self.dim();
        let p = self.p();
        let central = self.central_basis_indices();
        let free: Vec<usize> = (0..n).filter(|i| !central.contains(i)).collect();
        let mut tried = 0usize;
        for size in 1..=free.len() {
            let mut pick: Vec<usize> = (0..size).collect();
            loop {
                let mut tail = vec![1u32; size - 1];
                loop {
                    tried += 1;
                    if tried > TRIPLE_SEARCH_CAP {
                        return None;
                    }
                    let mut coords = vec![0u32; n];
                    coords[free[pick[0]]] = 1;
                    for (t, &c) in tail.iter().enumerate() {
                        coords[free[pick[t + 1]]] = c;
                    }
                    let x = GVector {
                        field: self.field,
                        coords,
                    };
                    if !self.is_central_vector(&x) {
                        let c = self.centralizer(&x);
                        for (a, y) in c.iter().enumerate() {
                            for z in &c[a + 1..] {
                                if !self.bracket(y, z).expect("dims").is_zero() {
                                    return Some((x, y.clone(), z.clone()));
                                }
                            }
                        }
                    }
                    // Next coefficient tuple in 1..p.
                    let Some(t) = tail.iter().rposition(|&c| c + 1 < p) else {
                        break;
                    };
                    tail[t] += 1;
                    for c in &mut tail[t + 1..] {
                        *c = 1;
                    }
                }
                // Next subset of `size` positions.
                let Some(i) = (0..size).rev().find(|&i| pick[i] < free.len() - size + i) else {
                    break;
                };
                pick[i] += 1;
                for j in i + 1..size {
                    pick[j] = pick[j - 1] + 1;
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg(p: u32) -> LieAlgebra {
        let spec = LieAlgebraSpec {
            name: "h".into(),
            dim: 3,
            param_kind: ParamKind::None,
            brackets: vec![BracketSpec {
                i: 0,
                j: 1,
                terms: vec![StructureTerm {
                    target: 2,
                    coeff: 1,
                    eps: false,
                }],
            }],
            table: None,
        };
        LieAlgebra::from_spec(spec, p, None).unwrap()
    }

    #[test]
    fn heisenberg_structure() {
        let h = heisenberg(3);
        let x1 = h.basis_vector(0);
        let x2 = h.basis_vector(1);
        assert_eq!(h.bracket(&x1, &x2).unwrap(), h.basis_vector(2));
        assert_eq!(h.bracket(&x2, &x1).unwrap(), h.basis_vector(2).scale(2));
        assert!(h.bracket(&x1, &x1).unwrap().is_zero());
        assert_eq!(h.center(), vec![h.basis_vector(2)]);
        assert_eq!(h.nilpotency_class(), Some(2));
        assert_eq!(h.rank_mg(), 2);
        assert!(h.check_jacobi());
        assert!(h.find_abelian_triple().is_none());
    }

    #[test]
    fn abelian_degenerate_cases() {
        let a = LieAlgebra::abelian(4, 5).unwrap();
        assert_eq!(a.center().len(), 4);
        assert_eq!(a.nilpotency_class(), Some(1));
        assert_eq!(a.rank_mg(), 0);
        assert!(a.check_jacobi());
        assert!(a.find_abelian_triple().is_none());
    }

    #[test]
    fn spec_validation() {
        let mut spec = heisenberg(3).spec().clone();
        spec.brackets[0].i = 1;
        spec.brackets[0].j = 0;
        assert!(matches!(
            LieAlgebra::from_spec(spec, 3, None),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            LieAlgebra::from_spec(heisenberg(3).spec().clone(), 3, Some(1)),
            Err(Error::UnexpectedEps(_))
        ));
    }

    #[test]
    fn relations_render() {
        assert_eq!(heisenberg(2).spec().relations_string(), "[x1, x2] = x3");
    }
}
