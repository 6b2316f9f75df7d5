//! Dense exact matrices, elementary transforms, minors and determinants.

use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::rings::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("elementary operation is not invertible: {0}")]
    NotInvertible(String),
}

/// A dense `rows × cols` matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::EntryCount {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Result<Self, MatrixError> {
        let m = rows.len();
        let mut data = Vec::with_capacity(m * cols);
        for row in rows {
            if row.len() != cols {
                return Err(MatrixError::EntryCount {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: m,
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![e; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&E> {
        (i < self.rows && j < self.cols).then(|| &self.data[i * self.cols + j])
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<E> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// Entry `(i, j)` is `M(f(i), g(j))`; the maps need not be injective.
    pub fn submatrix(&self, f: &IndexMap, g: &IndexMap) -> Result<Self, MatrixError> {
        if f.target() != self.rows || g.target() != self.cols {
            return Err(MatrixError::DimensionMismatch {
                op: "submatrix",
                left: (f.target(), g.target()),
                right: self.shape(),
            });
        }
        Ok(Self::from_fn(f.len(), g.len(), |i, j| {
            self[(f.get(i), g.get(j))].clone()
        }))
    }

    /// Contiguous block of rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(
            r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols,
            "block out of range"
        );
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Upper-left `r × c` block.
    pub fn ulsub(&self, r: usize, c: usize) -> Self {
        self.block(0, r, 0, c)
    }

    pub fn ursub(&self, r: usize, c: usize) -> Self {
        self.block(0, r, c, self.cols)
    }

    pub fn dlsub(&self, r: usize, c: usize) -> Self {
        self.block(r, self.rows, 0, c)
    }

    pub fn drsub(&self, r: usize, c: usize) -> Self {
        self.block(r, self.rows, c, self.cols)
    }

    /// Reassembles `[[a, b], [c, d]]`.
    pub fn block_mx(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, MatrixError> {
        let top = Self::row_mx(a, b)?;
        let bottom = Self::row_mx(c, d)?;
        Self::col_mx(&top, &bottom)
    }

    /// Stacks `top` above `bottom`.
    pub fn col_mx(top: &Self, bottom: &Self) -> Result<Self, MatrixError> {
        if top.cols != bottom.cols {
            return Err(MatrixError::DimensionMismatch {
                op: "col_mx",
                left: top.shape(),
                right: bottom.shape(),
            });
        }
        let mut data = top.data.clone();
        data.extend(bottom.data.iter().cloned());
        Ok(Self {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            data,
        })
    }

    /// Places `left` beside `right`.
    pub fn row_mx(left: &Self, right: &Self) -> Result<Self, MatrixError> {
        if left.rows != right.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "row_mx",
                left: left.shape(),
                right: right.shape(),
            });
        }
        Ok(Self::from_fn(left.rows, left.cols + right.cols, |i, j| {
            if j < left.cols {
                left[(i, j)].clone()
            } else {
                right[(i, j - left.cols)].clone()
            }
        }))
    }

    /// Rows `start..` as a new matrix.
    pub fn rows_from(&self, start: usize) -> Self {
        self.block(start.min(self.rows), self.rows, 0, self.cols)
    }

    /// Columns `start..` as a new matrix.
    pub fn cols_from(&self, start: usize) -> Self {
        self.block(0, self.rows, start.min(self.cols), self.cols)
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;

    fn index(&self, (i, j): (usize, usize)) -> &E {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &mut self.data[i * self.cols + j]
    }
}

/// Ring-dependent constructors and arithmetic.
impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<R: Ring<Elem = E> + ?Sized>(r: &R, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, r.zero())
    }

    pub fn identity<R: Ring<Elem = E> + ?Sized>(r: &R, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { r.one() } else { r.zero() })
    }

    /// `rows × cols` matrix with `s` on the diagonal; missing entries are 0
    /// and excess entries are dropped.
    pub fn diag_mx_seq<R: Ring<Elem = E> + ?Sized>(
        r: &R,
        rows: usize,
        cols: usize,
        s: &[E],
    ) -> Self {
        Self::from_fn(rows, cols, |i, j| {
            if i == j && i < s.len() {
                s[i].clone()
            } else {
                r.zero()
            }
        })
    }

    pub fn from_i64<R: Ring<Elem = E> + ?Sized>(
        r: &R,
        rows: usize,
        cols: usize,
        v: &[i64],
    ) -> Self {
        assert_eq!(v.len(), rows * cols, "entry count");
        Self {
            rows,
            cols,
            data: v.iter().map(|&x| r.from_i64(x)).collect(),
        }
    }

    pub fn mul<R: Ring<Elem = E> + ?Sized>(
        &self,
        r: &R,
        other: &Self,
    ) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !r.is_zero(b) {
                        out[(i, j)] = r.add(&out[(i, j)], &r.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add<R: Ring<Elem = E> + ?Sized>(
        &self,
        r: &R,
        other: &Self,
    ) -> Result<Self, MatrixError> {
        self.zip_with(other, "add", |a, b| r.add(a, b))
    }

    pub fn sub<R: Ring<Elem = E> + ?Sized>(
        &self,
        r: &R,
        other: &Self,
    ) -> Result<Self, MatrixError> {
        self.zip_with(other, "sub", |a, b| r.sub(a, b))
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(&E, &E) -> E,
    ) -> Result<Self, MatrixError> {
        if self.shape() != other.shape() {
            return Err(MatrixError::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn map<R: Ring<Elem = E> + ?Sized>(&self, _r: &R, f: impl Fn(&E) -> E) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero<R: Ring<Elem = E> + ?Sized>(&self, r: &R) -> bool {
        self.data.iter().all(|e| r.is_zero(e))
    }

    pub fn is_identity<R: Ring<Elem = E> + ?Sized>(&self, r: &R) -> bool {
        *self == Self::identity(r, self.rows) && self.is_square()
    }

    /// `row i ← a·row i + b·row j`, `row j ← c·row i + d·row j` (simultaneously).
    pub fn combine_rows<R: Ring<Elem = E> + ?Sized>(
        &mut self,
        r: &R,
        i: usize,
        j: usize,
        [a, b, c, d]: [&E; 4],
    ) {
        for k in 0..self.cols {
            let x = &self[(i, k)];
            let y = &self[(j, k)];
            let ni = r.add(&r.mul(a, x), &r.mul(b, y));
            let nj = r.add(&r.mul(c, x), &r.mul(d, y));
            self[(i, k)] = ni;
            self[(j, k)] = nj;
        }
    }

    /// `col i ← a·col i + b·col j`, `col j ← c·col i + d·col j` (simultaneously).
    pub fn combine_cols<R: Ring<Elem = E> + ?Sized>(
        &mut self,
        r: &R,
        i: usize,
        j: usize,
        [a, b, c, d]: [&E; 4],
    ) {
        for k in 0..self.rows {
            let x = &self[(k, i)];
            let y = &self[(k, j)];
            let ni = r.add(&r.mul(a, x), &r.mul(b, y));
            let nj = r.add(&r.mul(c, x), &r.mul(d, y));
            self[(k, i)] = ni;
            self[(k, j)] = nj;
        }
    }

    /// `row target ← row target + factor·row source`
    pub fn axpy_rows<R: Ring<Elem = E> + ?Sized>(
        &mut self,
        r: &R,
        target: usize,
        source: usize,
        factor: &E,
    ) {
        if r.is_zero(factor) {
            return;
        }
        for k in 0..self.cols {
            let s = &self[(source, k)];
            if !r.is_zero(s) {
                self[(target, k)] = r.add(&self[(target, k)], &r.mul(factor, s));
            }
        }
    }

    /// `col target ← col target + factor·col source`
    pub fn axpy_cols<R: Ring<Elem = E> + ?Sized>(
        &mut self,
        r: &R,
        target: usize,
        source: usize,
        factor: &E,
    ) {
        if r.is_zero(factor) {
            return;
        }
        for k in 0..self.rows {
            let s = &self[(k, source)];
            if !r.is_zero(s) {
                self[(k, target)] = r.add(&self[(k, target)], &r.mul(factor, s));
            }
        }
    }

    pub fn scale_row<R: Ring<Elem = E> + ?Sized>(&mut self, r: &R, i: usize, u: &E) {
        for k in 0..self.cols {
            self[(i, k)] = r.mul(u, &self[(i, k)]);
        }
    }

    pub fn scale_col<R: Ring<Elem = E> + ?Sized>(&mut self, r: &R, j: usize, u: &E) {
        for k in 0..self.rows {
            self[(k, j)] = r.mul(u, &self[(k, j)]);
        }
    }

    /// Applies a validated elementary operation on the given side.
    ///
    /// The result equals `E·M` (rows) or `M·E` (columns), where `E` is the
    /// operation applied to the identity on the same side.
    pub fn apply_elementary<R: Ring<Elem = E> + ?Sized>(
        &self,
        r: &R,
        op: &Elementary<E>,
        side: Side,
    ) -> Result<Self, MatrixError> {
        let bound = match side {
            Side::Row => self.rows,
            Side::Col => self.cols,
        };
        let check = |i: usize| {
            if i < bound {
                Ok(())
            } else {
                Err(MatrixError::IndexOutOfRange { index: i, bound })
            }
        };
        let mut out = self.clone();
        match op {
            Elementary::Swap(i, j) => {
                check(*i)?;
                check(*j)?;
                match side {
                    Side::Row => out.swap_rows(*i, *j),
                    Side::Col => out.swap_cols(*i, *j),
                }
            }
            Elementary::Scale(i, u) => {
                check(*i)?;
                if !r.is_unit(u) {
                    return Err(MatrixError::NotInvertible(format!(
                        "scale factor {} is not a unit",
                        r.format(u)
                    )));
                }
                match side {
                    Side::Row => out.scale_row(r, *i, u),
                    Side::Col => out.scale_col(r, *i, u),
                }
            }
            Elementary::Axpy {
                target,
                source,
                factor,
            } => {
                check(*target)?;
                check(*source)?;
                if target == source {
                    return Err(MatrixError::NotInvertible(
                        "axpy with target = source".into(),
                    ));
                }
                match side {
                    Side::Row => out.axpy_rows(r, *target, *source, factor),
                    Side::Col => out.axpy_cols(r, *target, *source, factor),
                }
            }
            Elementary::Combine { i, j, a, b, c, d } => {
                check(*i)?;
                check(*j)?;
                if i == j {
                    return Err(MatrixError::NotInvertible("combine with i = j".into()));
                }
                let det = r.sub(&r.mul(a, d), &r.mul(b, c));
                if !r.is_unit(&det) {
                    return Err(MatrixError::NotInvertible(format!(
                        "combine determinant {} is not a unit",
                        r.format(&det)
                    )));
                }
                match side {
                    Side::Row => out.combine_rows(r, *i, *j, [a, b, c, d]),
                    Side::Col => out.combine_cols(r, *i, *j, [a, b, c, d]),
                }
            }
        }
        Ok(out)
    }

    pub fn determinant<R: Ring<Elem = E> + ?Sized>(&self, r: &R) -> Result<E, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows <= 4 {
            Ok(self.cofactor_det(r))
        } else {
            Ok(self.bareiss_det(r))
        }
    }

    /// Laplace expansion along the first row. Square input only.
    pub fn cofactor_det<R: Ring<Elem = E> + ?Sized>(&self, r: &R) -> E {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let cols: Vec<usize> = (0..self.cols).collect();
        cofactor(r, self, 0, &cols)
    }

    /// Fraction-free Gaussian elimination. Square input only.
    pub fn bareiss_det<R: Ring<Elem = E> + ?Sized>(&self, r: &R) -> E {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return r.one();
        }
        let mut a = self.clone();
        let mut prev = r.one();
        let mut negate = false;
        for k in 0..n - 1 {
            if r.is_zero(&a[(k, k)]) {
                match (k + 1..n).find(|&i| !r.is_zero(&a[(i, k)])) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        negate = !negate;
                    }
                    None => return r.zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = r.sub(
                        &r.mul(&a[(k, k)], &a[(i, j)]),
                        &r.mul(&a[(i, k)], &a[(k, j)]),
                    );
                    a[(i, j)] = r
                        .div_opt(&num, &prev)
                        .expect("Bareiss interior division is exact");
                }
                a[(i, k)] = r.zero();
            }
            prev = a[(k, k)].clone();
        }
        let det = a[(n - 1, n - 1)].clone();
        if negate {
            r.neg(&det)
        } else {
            det
        }
    }

    /// `det(submatrix(f, g, M))`.
    pub fn minor<R: Ring<Elem = E> + ?Sized>(
        &self,
        r: &R,
        f: &IndexMap,
        g: &IndexMap,
    ) -> Result<E, MatrixError> {
        if f.len() != g.len() {
            return Err(MatrixError::NotSquare {
                rows: f.len(),
                cols: g.len(),
            });
        }
        if !f.is_injective() || !g.is_injective() {
            return Ok(r.zero());
        }
        self.submatrix(f, g)?.determinant(r)
    }
}

fn cofactor<R: Ring + ?Sized>(r: &R, m: &Matrix<R::Elem>, row: usize, cols: &[usize]) -> R::Elem {
    if cols.is_empty() {
        return r.one();
    }
    if cols.len() == 1 {
        return m[(row, cols[0])].clone();
    }
    let mut acc = r.zero();
    for (pos, &c) in cols.iter().enumerate() {
        let e = &m[(row, c)];
        if r.is_zero(e) {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = r.mul(e, &cofactor(r, m, row + 1, &rest));
        acc = if pos % 2 == 0 {
            r.add(&acc, &term)
        } else {
            r.sub(&acc, &term)
        };
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Row,
    Col,
}

/// Invertible elementary operations on rows or columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elementary<E> {
    Swap(usize, usize),
    /// Multiply line `i` by a unit.
    Scale(usize, E),
    /// `target ← target + factor·source`
    Axpy {
        target: usize,
        source: usize,
        factor: E,
    },
    /// `i ← a·i + b·j`, `j ← c·i + d·j` with `ad − bc` a unit.
    Combine {
        i: usize,
        j: usize,
        a: E,
        b: E,
        c: E,
        d: E,
    },
}

/// A map `{0..p-1} → {0..m-1}`, used to select rows or columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexMap {
    target: usize,
    indices: Vec<usize>,
    strict: bool,
}

impl IndexMap {
    pub fn new(indices: Vec<usize>, target: usize) -> Result<Self, MatrixError> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= target) {
            return Err(MatrixError::IndexOutOfRange {
                index: bad,
                bound: target,
            });
        }
        let strict = indices.windows(2).all(|w| w[0] < w[1]);
        Ok(Self {
            target,
            indices,
            strict,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            target: n,
            indices: (0..n).collect(),
            strict: true,
        }
    }

    /// Source size `p`.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn get(&self, i: usize) -> usize {
        self.indices[i]
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Strictly increasing.
    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn is_injective(&self) -> bool {
        if self.strict {
            return true;
        }
        let mut seen = self.indices.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// All strictly increasing maps `{0..k-1} → {0..l-1}` in lexicographic order.
pub fn strict_maps(k: usize, l: usize) -> Vec<IndexMap> {
    let mut out = Vec::new();
    if k > l {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(IndexMap {
            target: l,
            indices: cur.clone(),
            strict: true,
        });
        let Some(pos) = (0..k).rev().find(|&p| cur[p] < l - k + p) else {
            return out;
        };
        cur[pos] += 1;
        for q in pos + 1..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
}
