//! Dense linear algebra over F_p and ranks of polynomial matrices.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Poly;

/// Row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from signed integer rows; all rows must have equal length.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, field.reduce(v));
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Append a row; its length must equal `cols`.
    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Reduce in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows = pivots.len();
        self.data.truncate(self.rows * self.cols);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space `{v : Mv = 0}`, returned in reduced
    /// row echelon form (each vector is a row).
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Self::zeros(f, 0, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push_row(&v);
        }
        basis.rref();
        (0..basis.rows).map(|i| basis.row(i).to_vec()).collect()
    }
}

/// Sparse vector: `(index, value)` pairs with strictly increasing indices and
/// nonzero values.
pub type SparseVec = Vec<(usize, u32)>;

/// `a + c * b`
fn sparse_axpy(f: PrimeField, a: &[(usize, u32)], c: u32, b: &[(usize, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = f.mul(c, b[j].1);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(a[i].1, f.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_scale(f: PrimeField, a: &mut SparseVec, c: u32) {
    for e in a.iter_mut() {
        e.1 = f.mul(e.1, c);
    }
}

/// Forward elimination: pivot rows keyed by their leading index, each
/// normalized to leading coefficient 1.
fn sparse_echelon(
    f: PrimeField,
    rows: impl IntoIterator<Item = SparseVec>,
) -> BTreeMap<usize, SparseVec> {
    let mut pivots: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for mut row in rows {
        while let Some(&(lead, c)) = row.first() {
            match pivots.get(&lead) {
                Some(pr) => row = sparse_axpy(f, &row, f.neg(c), pr),
                None => {
                    sparse_scale(f, &mut row, f.inv(c).expect("nonzero"));
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots
}

/// Reduced row echelon form of sparse rows, sorted by leading index.
pub fn sparse_rref(f: PrimeField, rows: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut pivots = sparse_echelon(f, rows);
    let leads: Vec<usize> = pivots.keys().rev().copied().collect();
    for lead in leads {
        let row = pivots[&lead].clone();
        let mut reduced = row.clone();
        for &(col, v) in &row[1..] {
            if let Some(pr) = pivots.get(&col) {
                reduced = sparse_axpy(f, &reduced, f.neg(v), pr);
            }
        }
        pivots.insert(lead, reduced);
    }
    pivots.into_values().collect()
}

pub fn sparse_rank(f: PrimeField, rows: impl IntoIterator<Item = SparseVec>) -> usize {
    sparse_echelon(f, rows).len()
}

/// Kernel of the linear map sending basis vector `c` to `images[c]`,
/// returned in reduced row echelon form over the domain indices.
pub fn sparse_kernel(f: PrimeField, images: &[SparseVec]) -> Vec<SparseVec> {
    let mut pivots: BTreeMap<usize, (SparseVec, SparseVec)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (c, image) in images.iter().enumerate() {
        let mut img = image.clone();
        let mut combo: SparseVec = vec![(c, 1)];
        loop {
            let Some(&(lead, v)) = img.first() else {
                kernel.push(combo);
                break;
            };
            match pivots.get(&lead) {
                Some((pi, pc)) => {
                    let m = f.neg(v);
                    img = sparse_axpy(f, &img, m, pi);
                    combo = sparse_axpy(f, &combo, m, pc);
                }
                None => {
                    let inv = f.inv(v).expect("nonzero");
                    sparse_scale(f, &mut img, inv);
                    sparse_scale(f, &mut combo, inv);
                    pivots.insert(lead, (img, combo));
                    break;
                }
            }
        }
    }
    sparse_rref(f, kernel)
}

/// Matrix with polynomial entries sharing one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidSpec("matrix entry count".into()));
        }
        if let Some(first) = entries.first() {
            for e in &entries {
                if e.field() != first.field() {
                    return Err(Error::ModulusMismatch {
                        left: first.field().modulus(),
                        right: e.field().modulus(),
                    });
                }
                if e.nvars() != first.nvars() {
                    return Err(Error::VariableCountMismatch {
                        left: first.nvars(),
                        right: e.nvars(),
                    });
                }
            }
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    /// Determinant of the square submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Poly> {
        assert_eq!(rows.len(), cols.len());
        let first = self.get(rows[0], cols[0]);
        let (field, nvars) = (first.field(), first.nvars());
        // Laplace expansion along successive rows, memoized by the set of
        // remaining columns.
        let k = cols.len();
        let mut memo: Vec<Option<Poly>> = vec![None; 1 << k];
        memo[0] = Some(Poly::one(field, nvars));
        for mask in 1usize..(1 << k) {
            let depth = k - mask.count_ones() as usize;
            let row = rows[depth];
            let mut acc = Poly::zero(field, nvars);
            let mut sign_pos = 0;
            for (c, &col) in cols.iter().enumerate() {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let entry = self.get(row, col);
                if !entry.is_zero() {
                    let sub = memo[mask & !(1 << c)].as_ref().expect("filled");
                    if !sub.is_zero() {
                        let t = entry.mul(sub)?;
                        acc = if sign_pos % 2 == 0 {
                            acc.add(&t)?
                        } else {
                            acc.sub(&t)?
                        };
                    }
                }
                sign_pos += 1;
            }
            memo[mask] = Some(acc);
        }
        Ok(memo[(1 << k) - 1].take().expect("filled"))
    }

    pub fn determinant(&self) -> Result<Poly> {
        assert_eq!(self.rows, self.cols, "square matrix");
        if self.rows == 0 {
            return Err(Error::InvalidSpec("empty matrix".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor(&idx, &idx)
    }

    fn evaluate(&self, point: &[u32]) -> FpMatrix {
        let field = self.entries[0].field();
        let mut m = FpMatrix::zeros(field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).eval(point));
            }
        }
        m
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Rank over the rational function field F_p(x_1, ..., x_n).
///
/// Evaluations at pseudo-random points give a lower bound (a nonzero
/// numeric minor certifies a nonzero symbolic one). The bound is then
/// raised until every minor one size larger vanishes symbolically.
pub fn poly_matrix_rank(m: &PolyMatrix) -> Result<usize> {
    if m.entries.iter().all(Poly::is_zero) {
        return Ok(0);
    }
    let field = m.entries[0].field();
    let nvars = m.entries[0].nvars();
    let p = field.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut lower = 0;
    for _ in 0..8 {
        let point: Vec<u32> = (0..nvars).map(|_| rng.next_u32() % p).collect();
        lower = lower.max(m.evaluate(&point).rank());
    }
    let max = m.rows.min(m.cols);
    let mut r = lower.max(1);
    'grow: while r < max {
        let size = r + 1;
        let row_sets = subsets(m.rows, size);
        let col_sets = subsets(m.cols, size);
        for rs in &row_sets {
            for cs in &col_sets {
                if !m.minor(rs, cs)?.is_zero() {
                    r = size;
                    continue 'grow;
                }
            }
        }
        break;
    }
    Ok(r)
}
