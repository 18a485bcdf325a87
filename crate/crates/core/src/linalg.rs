//! Exact linear algebra over the integers and the rationals.
//!
//! Ranks and determinants go through fraction-free (Bareiss) elimination
//! after each row has been scaled to integers. Spans of many sparse vectors
//! use [`SparseEchelon`], a sparse fraction-free echelon form that keeps
//! every stored row primitive.

use std::collections::HashMap;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows of equal length. `cols` is only used when
    /// `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let cols = rows.first().map_or(cols, |r| r.len());
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        let cols = self.cols;
        let mut out = Vec::with_capacity(self.rows);
        let mut it = self.data.into_iter();
        for _ in 0..self.rows {
            out.push(it.by_ref().take(cols).collect());
        }
        out
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Sub-matrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix<BigRational> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| BigRational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|x| x * c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigRational::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    acc += a * &other[(k, j)];
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        bareiss_rank(integer_rows(self))
    }

    pub fn det(&self) -> BigRational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut scale = BigInt::one();
        let rows: Vec<Vec<BigInt>> = self
            .iter_rows()
            .map(|r| {
                let (ints, l) = clear_denominators(r);
                scale *= l;
                ints
            })
            .collect();
        BigRational::new(bareiss_det(rows), scale)
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone().into_rows();
        let mut inv = Matrix::identity(n).into_rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].clone();
            for j in 0..n {
                a[c][j] /= &piv;
                inv[c][j] /= &piv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let factor = a[r][c].clone();
                for j in 0..n {
                    if !a[c][j].is_zero() {
                        let t = &factor * &a[c][j];
                        a[r][j] -= t;
                    }
                    if !inv[c][j].is_zero() {
                        let t = &factor * &inv[c][j];
                        inv[r][j] -= t;
                    }
                }
            }
        }
        Some(Matrix::from_rows(inv, n))
    }
}

/// Scales a rational row to integers; returns the integer row and the lcm
/// of the denominators used.
pub fn clear_denominators(row: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row
        .iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect();
    (ints, l)
}

fn integer_rows(m: &Matrix<BigRational>) -> Vec<Vec<BigInt>> {
    m.iter_rows().map(|r| clear_denominators(r).0).collect()
}

/// Rank by fraction-free elimination. Every intermediate entry is a minor
/// of the input, so each division is exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = piv * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant by fraction-free elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(c, p);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(c + 1);
        let pivot_row = &top[c];
        let piv = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..n {
                let mut v = piv * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = a[c][c].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Sparse integer vector: strictly increasing indices, nonzero values.
pub type SparseVec = Vec<(usize, BigInt)>;

/// Incremental sparse echelon form over the integers.
///
/// Rows are reduced on their leading index only, which is enough to decide
/// linear independence. With tracking enabled each stored row also carries
/// its coefficients over the inserted tags, so a dependent insertion yields
/// the linear relation that killed it.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivot_of: HashMap<usize, usize>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`; returns true when it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_inner(v, None).is_ok()
    }

    /// Inserts `v` tagged with `tag`. On dependence returns `Err(relation)`,
    /// a nonzero integer combination of tags (including `tag`) whose
    /// inserted vectors sum to zero.
    pub fn insert_tracked(&mut self, v: SparseVec, tag: usize) -> Result<(), SparseVec> {
        self.insert_inner(v, Some(tag))
    }

    fn insert_inner(&mut self, mut v: SparseVec, tag: Option<usize>) -> Result<(), SparseVec> {
        v.retain(|(_, x)| !x.is_zero());
        let mut combo: SparseVec = tag.map(|t| vec![(t, BigInt::one())]).unwrap_or_default();
        while let Some((lead, a)) = v.first().cloned() {
            let Some(&ri) = self.pivot_of.get(&lead) else {
                break;
            };
            let p = &self.rows[ri][0].1;
            let g = p.gcd(&a);
            let (sv, sr) = (p / &g, &a / &g);
            v = axpy(&sv, &v, &-&sr, &self.rows[ri]);
            if tag.is_some() {
                combo = axpy(&sv, &combo, &-&sr, &self.combos[ri]);
            }
            make_primitive(&mut v, &mut combo);
        }
        if v.is_empty() {
            return Err(combo);
        }
        let lead = v[0].0;
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(v);
        if tag.is_some() {
            self.combos.push(combo);
        }
        Ok(())
    }
}

/// `s*x + t*y` for sparse vectors.
fn axpy(s: &BigInt, x: &SparseVec, t: &BigInt, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, s * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, t * &y[j].1));
            j += 1;
        } else {
            let v = s * &x[i].1 + t * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn make_primitive(v: &mut SparseVec, combo: &mut SparseVec) {
    let mut g = BigInt::zero();
    for (_, x) in v.iter().chain(combo.iter()) {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, x) in v.iter_mut().chain(combo.iter_mut()) {
        *x = &*x / &g;
    }
}

/// Rank of a list of rational sparse vectors.
pub fn sparse_rank(vectors: impl IntoIterator<Item = Vec<(usize, BigRational)>>) -> usize {
    let mut ech = SparseEchelon::new();
    for v in vectors {
        let vals: Vec<BigRational> = v.iter().map(|(_, x)| x.clone()).collect();
        let (ints, _) = clear_denominators(&vals);
        let sv = v.into_iter().map(|(i, _)| i).zip(ints).collect();
        ech.insert(sv);
    }
    ech.rank()
}
