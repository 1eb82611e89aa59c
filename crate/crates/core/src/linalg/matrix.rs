use std::fmt;

use super::Rational;
use crate::error::{Error, Result};

/// A sparse row: strictly increasing column indices, no stored zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// Sparse rational matrix, stored row by row.
///
/// Every stored entry is nonzero and lies inside the declared shape.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        RationalMatrix { rows: n, cols: n, data }
    }

    /// Builds from dense rows. All rows must have length `cols`.
    pub fn from_dense(cols: usize, rows: &[Vec<Rational>]) -> Self {
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense row");
                r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect()
            })
            .collect();
        RationalMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect()).collect();
        Self::from_dense(cols, &dense)
    }

    /// Builds from sparse rows; entries are sorted, merged and zero-filtered.
    pub fn from_sparse_rows(cols: usize, rows: Vec<Vec<(usize, Rational)>>) -> Self {
        let data = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|(j, _)| *j);
                let mut out: SparseRow = Vec::with_capacity(r.len());
                for (j, v) in r {
                    assert!(j < cols, "column {j} out of bounds ({cols})");
                    match out.last_mut() {
                        Some((lj, lv)) if *lj == j => *lv += v,
                        _ => out.push((j, v)),
                    }
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            })
            .collect::<Vec<_>>();
        RationalMatrix { rows: data.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.data[i]
    }

    pub fn sparse_rows(&self) -> &[SparseRow] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.data[i][pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) if v.is_zero() => {
                row.remove(pos);
            }
            Ok(pos) => row[pos].1 = v,
            Err(_) if v.is_zero() => {}
            Err(pos) => row.insert(pos, (j, v)),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data
            .iter()
            .map(|r| {
                let mut d = vec![Rational::zero(); self.cols];
                for (j, v) in r {
                    d[*j] = v.clone();
                }
                d
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        self.data
            .iter()
            .map(|r| {
                let mut acc = Rational::zero();
                for (j, a) in r {
                    if !v[*j].is_zero() {
                        acc += a * &v[*j];
                    }
                }
                acc
            })
            .collect()
    }

    /// True iff `self * v` is exactly zero.
    pub fn annihilates(&self, v: &[Rational]) -> bool {
        self.mul_vec(v).iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut cols: Vec<SparseRow> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                cols[*j].push((i, v.clone()));
            }
        }
        RationalMatrix { rows: self.cols, cols: self.rows, data: cols }
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let rows = self
            .data
            .iter()
            .map(|r| {
                let mut acc: Vec<(usize, Rational)> = Vec::new();
                for (k, a) in r {
                    for (j, b) in &other.data[*k] {
                        acc.push((*j, a * b));
                    }
                }
                acc
            })
            .collect();
        RationalMatrix::from_sparse_rows(other.cols, rows)
    }

    /// Stacks rows of `other` below `self`.
    pub fn vstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RationalMatrix { rows: data.len(), cols: self.cols, data }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in self.to_dense() {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `a - factor * b` on sparse rows.
fn sub_scaled(a: &[(usize, Rational)], factor: &Rational, b: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0);
        let cb = b.get(j).map(|e| e.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let mut v = a[i].1.clone();
                v.sub_mul(factor, &b[j].1);
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(x), None) => {
                out.push((x, a[i].1.clone()));
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(factor * &b[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn scale_row(row: &mut SparseRow, factor: &Rational) {
    for (_, v) in row.iter_mut() {
        *v *= factor;
    }
}

/// Result of Gauss–Jordan elimination: the nonzero rows of the reduced row
/// echelon form, in pivot order.
struct Echelon {
    cols: usize,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
}

fn echelonize(cols: usize, input: impl IntoIterator<Item = SparseRow>) -> Echelon {
    // Rows are bucketed by leading column. Forward elimination only ever
    // pushes a row to a strictly larger bucket.
    let mut buckets: Vec<Vec<SparseRow>> = vec![Vec::new(); cols];
    for r in input {
        if let Some((lead, _)) = r.first() {
            buckets[*lead].push(r);
        }
    }
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..cols {
        let mut bucket = std::mem::take(&mut buckets[col]);
        if bucket.is_empty() {
            continue;
        }
        // Shortest row as pivot keeps fill-in down; the reduced form is
        // unique, so this choice never changes the output.
        let best = (0..bucket.len()).min_by_key(|&i| bucket[i].len()).unwrap();
        let mut pivot = bucket.swap_remove(best);
        let inv = pivot[0].1.recip().expect("stored entries are nonzero");
        scale_row(&mut pivot, &inv);
        for r in bucket {
            let factor = r[0].1.clone();
            let reduced = sub_scaled(&r, &factor, &pivot);
            if let Some((lead, _)) = reduced.first() {
                debug_assert!(*lead > col);
                buckets[*lead].push(reduced);
            }
        }
        rows.push(pivot);
        pivots.push(col);
    }

    // Back substitution, bottom-up: later rows are already fully reduced.
    let mut pivot_row = vec![usize::MAX; cols];
    for (i, &p) in pivots.iter().enumerate() {
        pivot_row[p] = i;
    }
    for i in (0..rows.len()).rev() {
        let targets: Vec<(usize, Rational)> = rows[i]
            .iter()
            .skip(1)
            .filter(|(c, _)| pivot_row[*c] != usize::MAX)
            .map(|(c, v)| (pivot_row[*c], v.clone()))
            .collect();
        for (l, factor) in targets {
            let reduced = sub_scaled(&rows[i], &factor, &rows[l]);
            rows[i] = reduced;
        }
    }
    Echelon { cols, rows, pivots }
}

impl Echelon {
    fn kernel(&self, ncols: usize) -> Vec<Vec<Rational>> {
        let mut free_index = vec![usize::MAX; ncols];
        let mut is_pivot = vec![false; ncols];
        for &p in &self.pivots {
            if p < ncols {
                is_pivot[p] = true;
            }
        }
        let mut basis = Vec::new();
        for c in 0..ncols {
            if !is_pivot[c] {
                free_index[c] = basis.len();
                let mut v = vec![Rational::zero(); ncols];
                v[c] = Rational::one();
                basis.push(v);
            }
        }
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if p >= ncols {
                continue;
            }
            for (c, val) in row.iter().skip(1) {
                if *c < ncols {
                    basis[free_index[*c]][p] = -val;
                }
            }
        }
        basis
    }

    fn into_matrix(self, rows: usize) -> RationalMatrix {
        let mut data = self.rows;
        data.resize(rows, Vec::new());
        RationalMatrix { rows, cols: self.cols, data }
    }
}

/// Reduced row echelon form and the pivot columns.
///
/// The returned matrix keeps the shape of `m`; zero rows sit at the bottom.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let e = echelonize(m.cols, m.data.iter().cloned());
    let pivots = e.pivots.clone();
    (e.into_matrix(m.rows), pivots)
}

pub fn rank(m: &RationalMatrix) -> usize {
    echelonize(m.cols, m.data.iter().cloned()).pivots.len()
}

/// Canonical free-variable basis of the null space, one vector per
/// non-pivot column of `rref(m)`, in column order.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    echelonize(m.cols, m.data.iter().cloned()).kernel(m.cols)
}

/// A particular solution plus a basis of the homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub homogeneous: Vec<Vec<Rational>>,
}

/// Solves `m x = b`. `Ok(None)` means the system is inconsistent.
pub fn solve_affine(m: &RationalMatrix, b: &[Rational]) -> Result<Option<AffineSolution>> {
    if b.len() != m.rows {
        return Err(Error::Malformed(format!("right-hand side has length {}, matrix has {} rows", b.len(), m.rows)));
    }
    let n = m.cols;
    let augmented = m.data.iter().zip(b).map(|(r, bi)| {
        let mut r = r.clone();
        if !bi.is_zero() {
            r.push((n, bi.clone()));
        }
        r
    });
    let e = echelonize(n + 1, augmented);
    if e.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![Rational::zero(); n];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        if let Some((c, v)) = row.last() {
            if *c == n {
                particular[p] = v.clone();
            }
        }
    }
    let homogeneous = e.kernel(n);
    Ok(Some(AffineSolution { particular, homogeneous }))
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(m: &RationalMatrix) -> Option<RationalMatrix> {
    assert_eq!(m.rows, m.cols, "inverse of a non-square matrix");
    let n = m.cols;
    let augmented = m.data.iter().enumerate().map(|(i, r)| {
        let mut r = r.clone();
        r.push((n + i, Rational::one()));
        r
    });
    if n == 0 {
        return Some(RationalMatrix::zeros(0, 0));
    }
    let e = echelonize(2 * n, augmented);
    if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
        return None;
    }
    let data = e
        .rows
        .into_iter()
        .take(n)
        .map(|r| r.into_iter().filter(|(c, _)| *c >= n).map(|(c, v)| (c - n, v)).collect())
        .collect();
    Some(RationalMatrix { rows: n, cols: n, data })
}

/// A linear subspace of `Q^ambient`, held as its reduced echelon row basis,
/// so that two subspaces are equal iff their representations are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span_sparse(ambient, (0..ambient).map(|i| vec![(i, Rational::one())]))
    }

    pub fn span_sparse(ambient: usize, vectors: impl IntoIterator<Item = SparseRow>) -> Self {
        let e = echelonize(ambient, vectors);
        Subspace { ambient, rows: e.rows, pivots: e.pivots }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        Self::span_sparse(ambient, vectors.iter().map(|v| dense_to_sparse(v)))
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_sparse(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| sparse_to_dense(r, self.ambient)).collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut r = dense_to_sparse(v);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Ok(pos) = r.binary_search_by_key(&p, |(c, _)| *c) {
                let f = r[pos].1.clone();
                r = sub_scaled(&r, &f, row);
            }
        }
        r.is_empty()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Self::span_sparse(self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn sparse_to_dense(r: &[(usize, Rational)], len: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    for (i, x) in r {
        v[*i] = x.clone();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn rref_identity() {
        let id = RationalMatrix::identity(3);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rref_zero() {
        let z = RationalMatrix::zeros(2, 3);
        let (r, p) = rref(&z);
        assert_eq!(r, z);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let (r, p) = rref(&m);
        assert_eq!(r, RationalMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_with_fractions() {
        let m = RationalMatrix::from_i64(&[&[2, 1, 0], &[4, 0, 1], &[0, 2, -1]]);
        let (r, p) = rref(&m);
        // Row 3 = 2*row 1 - row 2.
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r.get(0, 2), Rational::new(1, 4));
        assert_eq!(r.get(1, 2), Rational::new(-1, 2));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RationalMatrix::identity(4)).is_empty());
        assert_eq!(kernel_basis(&RationalMatrix::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&RationalMatrix::from_i64(&[&[1, 1, 0]]));
        assert_eq!(k, vec![vec![q(-1), q(1), q(0)], vec![q(0), q(0), q(1)]]);
    }

    #[test]
    fn affine_examples() {
        let b = vec![q(3), q(-1), Rational::new(1, 2)];
        let s = solve_affine(&RationalMatrix::identity(3), &b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert!(s.homogeneous.is_empty());

        let none = solve_affine(&RationalMatrix::from_i64(&[&[0]]), &[q(1)]).unwrap();
        assert!(none.is_none());

        let s = solve_affine(&RationalMatrix::from_i64(&[&[1, 1]]), &[q(2)]).unwrap().unwrap();
        assert_eq!(s.particular, vec![q(2), q(0)]);
        assert_eq!(s.homogeneous, vec![vec![q(-1), q(1)]]);

        assert!(solve_affine(&RationalMatrix::identity(2), &[q(1)]).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), RationalMatrix::identity(2));
        assert!(inverse(&RationalMatrix::from_i64(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn subspace_membership() {
        let s = Subspace::span(3, &[vec![q(1), q(1), q(0)], vec![q(2), q(2), q(0)]]);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[q(-3), q(-3), q(0)]));
        assert!(!s.contains(&[q(1), q(0), q(0)]));
        assert!(s.is_subspace_of(&Subspace::full(3)));
    }
}
