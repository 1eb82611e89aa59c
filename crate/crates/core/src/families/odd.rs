use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{binom, sign};
use crate::bilinear::BilinearMap;
use crate::cohomology::{ensure_cocycle, z02_component, Cochain2, CochainSpace, Part};
use crate::error::{Error, Result};
use crate::linalg::{rank, rref, solve_affine, AffineSolution, Rational, RationalMatrix, SparseRow, Subspace};
use crate::superalgebra::{BasisElement, SuperAlgebra, SuperVector};

use BasisElement::{X, Y};

/// Labels of the basis of `E` in order: `(p, s)` for `p < m`, `s` in
/// `1..=n`, then `(m, n)`.
fn e_labels(n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<_> = (1..m).flat_map(|p| (1..=n).map(move |s| (p, s))).collect();
    if m >= 1 && n >= 1 {
        out.push((m, n));
    }
    out
}

/// `f_{p,s}` for `p < m` from the closed form; `(m, s)` gives the single
/// value `X_n` on `(Y_m, Y_m)` when `s = n` and the zero map otherwise,
/// and `s > n` gives the zero map.
fn f_unchecked(n: usize, m: usize, p: usize, s: usize) -> Cochain2 {
    let mut c = Cochain2::zero(n, m);
    if s > n {
        return c;
    }
    if p == m {
        if s == n {
            c.add_entry(Part::B, m, m, X(n), &Rational::one());
        }
        return c;
    }
    let half = Rational::new(1, 2);
    for i in 1..=p {
        for j in p..=m {
            let (a, b) = ((p - i) as i64, (j - p) as i64);
            let coeff = sign(a) * (binom(b, a) + binom(b - 1, a - 1));
            let target = s as i64 - a + b;
            if coeff != 0 && (0..=n as i64).contains(&target) {
                c.add_entry(Part::B, i, j, X(target as usize), &(Rational::from_integer(coeff) * &half));
            }
        }
    }
    c
}

/// `f_{p,s}` for `1 <= p <= m-1`, `1 <= s <= n`, or `(p, s) = (m, n)`.
pub fn f_ps(n: usize, m: usize, p: usize, s: usize) -> Result<Cochain2> {
    let ok = (1 <= p && p < m && 1 <= s && s <= n) || (p == m && s == n && m >= 1 && n >= 1);
    if !ok {
        return Err(Error::OutOfRange(format!(
            "f: (p, s) = ({p}, {s}) needs 1 <= p <= {}, 1 <= s <= {n}, or (p, s) = ({m}, {n})",
            m.saturating_sub(1)
        )));
    }
    Ok(f_unchecked(n, m, p, s))
}

fn value(b: &Cochain2, t: usize, r: usize) -> SuperVector {
    if t > b.m() || r > b.m() {
        return SuperVector::zero();
    }
    b.apply_basis(Y(t), Y(r))
}

/// Nonzero values of `[X0, b(Y_t,Y_r)] - b(Y_{t+1},Y_r) - b(Y_{r+1},Y_t)`
/// for `1 <= t <= r <= m-1`.
pub fn shift_residuals(b: &Cochain2) -> Vec<((usize, usize), SuperVector)> {
    let a = SuperAlgebra::model(b.n(), b.m());
    let mut out = Vec::new();
    for t in 1..b.m() {
        for r in t..b.m() {
            let mut v = a.apply_left(X(0), &value(b, t, r));
            v.add_scaled(&-Rational::one(), &value(b, t + 1, r));
            v.add_scaled(&-Rational::one(), &value(b, r + 1, t));
            if !v.is_zero() {
                out.push(((t, r), v));
            }
        }
    }
    out
}

/// `[X0, b(Y_i,Y_m)] - b(Y_{i+1},Y_m)` for `i = 1..m-1`.
pub fn last_column_residual(b: &Cochain2) -> Vec<SuperVector> {
    let a = SuperAlgebra::model(b.n(), b.m());
    let m = b.m();
    (1..m)
        .map(|i| {
            let mut v = a.apply_left(X(0), &value(b, i, m));
            v.add_scaled(&-Rational::one(), &value(b, i + 1, m));
            v
        })
        .collect()
}

/// The `f_{p,s}` spanning `E`, each checked against the shift relation and for values
/// free of `X0`.
pub fn e_space_basis(n: usize, m: usize) -> Result<Vec<((usize, usize), Cochain2)>> {
    if n == 0 || m == 0 {
        return Err(Error::OutOfRange(format!("E needs n, m >= 1, got ({n}, {m})")));
    }
    e_labels(n, m)
        .into_iter()
        .map(|(p, s)| {
            let f = f_unchecked(n, m, p, s);
            if let Some(((t, r), v)) = shift_residuals(&f).first() {
                return Err(Error::FormulaAnomaly(format!(
                    "f_{{{p},{s}}} violates the shift relation at (t, r) = ({t}, {r}): residual {v}"
                )));
            }
            if f.image_meets_x0() {
                return Err(Error::FormulaAnomaly(format!("f_{{{p},{s}}} has a value on X0")));
            }
            Ok(((p, s), f))
        })
        .collect()
}

/// Kernel dimension of the linear system cutting out `E`: symmetric
/// `b: G1 x G1 -> G0` with the shift relation and `b(Y_m,Y_m)` a multiple of `X_n`,
/// plus `b` avoiding `X0` when `x0_free`. The equations are written out
/// by index arithmetic on the coordinates `b(Y_t,Y_r)[X_l]`.
pub fn e_system_dim(n: usize, m: usize, x0_free: bool) -> usize {
    let key = |t: usize, r: usize| {
        let (t, r) = if t <= r { (t, r) } else { (r, t) };
        // position of (t, r) among 1 <= t <= r <= m, row by row
        (t - 1) * (2 * m - t + 2) / 2 + (r - t)
    };
    let keys = m * (m + 1) / 2;
    let cols = keys * (n + 1);
    let col = |t: usize, r: usize, l: usize| key(t, r) * (n + 1) + l;
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut push = |terms: Vec<(usize, i64)>| {
        let mut row: Vec<(usize, i64)> = Vec::new();
        for (c, x) in terms {
            match row.iter_mut().find(|(d, _)| *d == c) {
                Some(e) => e.1 += x,
                None => row.push((c, x)),
            }
        }
        row.sort();
        let row: SparseRow =
            row.into_iter().filter(|(_, x)| *x != 0).map(|(c, x)| (c, Rational::from_integer(x))).collect();
        if !row.is_empty() {
            rows.push(row);
        }
    };
    for t in 1..m {
        for r in t..m {
            for l in 0..=n {
                let mut terms = Vec::new();
                // [X0, X_{l-1}] = X_l for 1 <= l-1 <= n-1
                if l >= 2 {
                    terms.push((col(t, r, l - 1), 1));
                }
                terms.push((col(t + 1, r, l), -1));
                if r < m {
                    terms.push((col(r + 1, t, l), -1));
                }
                push(terms);
            }
        }
    }
    for l in 0..n {
        push(vec![(col(m, m, l), 1)]);
    }
    if x0_free {
        for t in 1..=m {
            for r in t..=m {
                push(vec![(col(t, r, 0), 1)]);
            }
        }
    }
    cols - rank(&RationalMatrix::from_sparse_rows(cols, rows))
}

/// Kernel dimension of the shift relation together with `b(Y_i,Y_i) = 0` for all `i`.
pub fn shift_zero_diagonal_dim(n: usize, m: usize) -> usize {
    let space = CochainSpace::new(n, m);
    let range = space.part_range(Part::B);
    let units: Vec<Cochain2> = range.clone().map(|k| space.from_sparse(&[(k, Rational::one())])).collect();
    // one row per scalar equation, read off the residual of each unit
    let mut eqs: std::collections::BTreeMap<(usize, usize, BasisElement), SparseRow> = Default::default();
    for (col, u) in units.iter().enumerate() {
        for ((t, r), v) in shift_residuals(u) {
            for (e, x) in v.iter() {
                eqs.entry((t, r, e)).or_default().push((col, x.clone()));
            }
        }
        for i in 1..=m {
            for (e, x) in u.get(Part::B, i, i).iter() {
                eqs.entry((0, i, e)).or_default().push((col, x.clone()));
            }
        }
    }
    let rows: Vec<SparseRow> = eqs.into_values().collect();
    units.len() - rank(&RationalMatrix::from_sparse_rows(units.len(), rows))
}

/// Checks that a map satisfying the shift relation with zero diagonal is zero. Errors
/// when `b` has values off `G1 x G1` or fails the shift relation.
pub fn lbn_check(b: &Cochain2) -> Result<bool> {
    if b.parts().iter().any(|&p| p != Part::B) {
        return Err(Error::Precondition("map has values outside G1 x G1 -> G0".into()));
    }
    if let Some(((t, r), v)) = shift_residuals(b).first() {
        return Err(Error::Precondition(format!("the shift relation fails at (t, r) = ({t}, {r}): residual {v}")));
    }
    let diagonal_zero = (1..=b.m()).all(|i| b.get(Part::B, i, i).is_zero());
    Ok(!diagonal_zero || b.is_zero())
}

/// Coordinates of `b` against [`e_space_basis`]: `a_{p,s}` is the `X_s`
/// coefficient of `b(Y_p,Y_p)`. Errors when `b` is not in `E`.
pub fn f_coordinates(b: &Cochain2) -> Result<Vec<Rational>> {
    let (n, m) = (b.n(), b.m());
    let basis = e_space_basis(n, m)?;
    let coords: Vec<Rational> = basis.iter().map(|((p, s), _)| b.get(Part::B, *p, *p).coeff(X(*s))).collect();
    let mut rebuilt = Cochain2::zero(n, m);
    for ((_, f), a) in basis.iter().zip(&coords) {
        rebuilt.add_scaled(a, f);
    }
    if &rebuilt != b {
        return Err(Error::FormulaAnomaly(format!("{b:?} is not in the span of the f_{{p,s}}")));
    }
    Ok(coords)
}

/// A minimal odd-odd cocycle with leading term `f_{p,s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalCocycle {
    pub p: usize,
    pub s: usize,
    pub b0: Cochain2,
    /// Coefficients against [`e_space_basis`].
    pub coordinates: Vec<Rational>,
}

/// Basis of the odd-odd cocycles in reduced echelon form over the
/// `f_{p,s}`, ordered by `(p, s)`. Each row is checked to be a cocycle and
/// the rows are checked to span the whole block.
pub fn minimal_cocycles(n: usize, m: usize) -> Result<Vec<MinimalCocycle>> {
    let a = SuperAlgebra::model(n, m);
    let z = z02_component(&a, Part::B)?;
    let basis = e_space_basis(n, m)?;
    let rows: Vec<Vec<Rational>> = z.vectors().iter().map(f_coordinates).collect::<Result<_>>()?;
    let (reduced, pivots) = rref(&RationalMatrix::from_dense(basis.len(), &rows));
    if pivots.len() != z.dim() {
        return Err(Error::FormulaAnomaly("cocycle coordinates are dependent".into()));
    }
    let space = z.space().clone();
    let mut out = Vec::new();
    for (r, &pivot) in pivots.iter().enumerate() {
        let coordinates: Vec<Rational> = (0..basis.len()).map(|c| reduced.get(r, c)).collect();
        let mut b0 = Cochain2::zero(n, m);
        for ((_, f), x) in basis.iter().zip(&coordinates) {
            b0.add_scaled(x, f);
        }
        let (p, s) = basis[pivot].0;
        ensure_cocycle(&a, &b0, &format!("b0_{{{p},{s}}}"))?;
        out.push(MinimalCocycle { p, s, b0, coordinates });
    }
    let span = Subspace::span_sparse(space.dim(), out.iter().map(|c| space.to_sparse(&c.b0)));
    if span != z.subspace() {
        return Err(Error::FormulaAnomaly("minimal cocycles do not span the odd-odd block".into()));
    }
    Ok(out)
}

/// Entries breaking `b0_{p,s}(Y_i,Y_i) = 0` for `i < p` and
/// `b0_{p,s}(Y_p,Y_p) = X_s`.
pub fn staircase_violations(cocycles: &[MinimalCocycle]) -> Vec<String> {
    let mut out = Vec::new();
    for c in cocycles {
        for i in 1..c.p {
            let v = c.b0.get(Part::B, i, i);
            if !v.is_zero() {
                out.push(format!("b0_{{{},{}}}(Y{i},Y{i}) = {v}", c.p, c.s));
            }
        }
        let v = c.b0.get(Part::B, c.p, c.p);
        if v != SuperVector::basis(X(c.s)) {
            out.push(format!("b0_{{{},{}}}(Y{p},Y{p}) = {v}", c.p, c.s, p = c.p));
        }
    }
    out
}

/// The linear system for `alpha` making
/// `f_{p,s} + sum_k alpha^k f_{p+k,s+2k}` satisfy the last-column relation, and its solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvabilityRecord {
    pub p: usize,
    pub s: usize,
    /// Rows are `(i, X_l)` for `i = 1..m-1`, `l = 0..=n`; column `k-1`
    /// holds the contribution of `f_{p+k,s+2k}`.
    pub matrix: RationalMatrix,
    pub rhs: Vec<Rational>,
    /// `None` when `A_{p,s}` is empty.
    pub solution: Option<AffineSolution>,
    pub b0: Option<Cochain2>,
}

impl SolvabilityRecord {
    pub fn nonempty(&self) -> bool {
        self.solution.is_some()
    }

    /// `alpha = 0` lies in `A_{p,s}`, i.e. `f_{p,s}` alone satisfies the last-column relation.
    pub fn alpha_zero(&self) -> bool {
        self.solution.is_some() && self.rhs.iter().all(Rational::is_zero)
    }

    /// `f_{p,s} + sum_k alpha^k f_{p+k,s+2k}` for the particular solution.
    pub fn particular_cocycle(&self, n: usize, m: usize) -> Option<Cochain2> {
        let sol = self.solution.as_ref()?;
        let mut c = f_unchecked(n, m, self.p, self.s);
        for (k, x) in sol.particular.iter().enumerate() {
            c.add_scaled(x, &f_unchecked(n, m, self.p + k + 1, self.s + 2 * (k + 1)));
        }
        Some(c)
    }
}

fn residual_vector(n: usize, b: &Cochain2) -> Vec<Rational> {
    last_column_residual(b).iter().flat_map(|v| (0..=n).map(move |l| v.coeff(X(l)))).collect()
}

fn check_ps(n: usize, m: usize, p: usize, s: usize) -> Result<()> {
    if (1..=m).contains(&p) && (1..=n).contains(&s) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("A_{{p,s}}: (p, s) = ({p}, {s}) needs 1 <= p <= {m}, 1 <= s <= {n}")))
    }
}

fn system(n: usize, m: usize, p: usize, s: usize) -> (RationalMatrix, Vec<Rational>, Option<AffineSolution>) {
    let rows = m.saturating_sub(1) * (n + 1);
    let columns: Vec<Vec<Rational>> =
        (1..=m - p).map(|k| residual_vector(n, &f_unchecked(n, m, p + k, s + 2 * k))).collect();
    let mut matrix = RationalMatrix::zeros(rows, columns.len());
    for (k, column) in columns.iter().enumerate() {
        for (r, x) in column.iter().enumerate() {
            if !x.is_zero() {
                matrix.set(r, k, x.clone());
            }
        }
    }
    let rhs: Vec<Rational> = residual_vector(n, &f_unchecked(n, m, p, s)).into_iter().map(|x| -x).collect();
    // f_{m,s} with s < n is the zero map: no cocycle has it as leading term.
    let solution = if p == m && s < n {
        None
    } else if columns.is_empty() {
        rhs.iter().all(Rational::is_zero).then(|| AffineSolution { particular: vec![], homogeneous: vec![] })
    } else {
        solve_affine(&matrix, &rhs).expect("right-hand side matches the row count")
    };
    (matrix, rhs, solution)
}

fn record(n: usize, m: usize, p: usize, s: usize, minimal: &[MinimalCocycle]) -> SolvabilityRecord {
    let (matrix, rhs, solution) = system(n, m, p, s);
    let b0 = solution.as_ref().and_then(|_| minimal.iter().find(|c| (c.p, c.s) == (p, s)).map(|c| c.b0.clone()));
    SolvabilityRecord { p, s, matrix, rhs, solution, b0 }
}

/// Solves the last-column relation for `A_{p,s}`. The attached `b0` comes from
/// [`minimal_cocycles`].
pub fn solve_aps(n: usize, m: usize, p: usize, s: usize) -> Result<SolvabilityRecord> {
    check_ps(n, m, p, s)?;
    let minimal = minimal_cocycles(n, m)?;
    Ok(record(n, m, p, s, &minimal))
}

/// [`solve_aps`] for every `1 <= p <= m`, `1 <= s <= n`, ordered by `(p, s)`.
pub fn solve_all_aps(n: usize, m: usize) -> Result<Vec<SolvabilityRecord>> {
    let minimal = minimal_cocycles(n, m)?;
    let pairs: Vec<(usize, usize)> = (1..=m).flat_map(|p| (1..=n).map(move |s| (p, s))).collect();
    Ok(pairs.par_iter().map(|&(p, s)| record(n, m, p, s, &minimal)).collect())
}

/// Pairs for which `f_{p,s}` alone satisfies the last-column relation.
pub fn alpha_zero_pairs(n: usize, m: usize) -> BTreeSet<(usize, usize)> {
    e_labels(n, m)
        .into_iter()
        .filter(|&(p, s)| {
            let (_, rhs, solution) = system(n, m, p, s);
            solution.is_some() && rhs.iter().all(Rational::is_zero)
        })
        .collect()
}

/// The pairs `(p, s)` listed as having `f_{p,s}` a cocycle: for `m` odd,
/// `((m-1)/2, n)` and `2p = m-k`, `n-k-1 <= s <= n` over odd `k` in
/// `1..=m-2`; for `m` even, the same over even `k` in `0..=m-2`.
pub fn predicted_pairs_prop1(n: usize, m: usize) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    if n < 2 || m < 2 {
        return out;
    }
    if m % 2 == 1 && m >= 3 {
        out.insert(((m - 1) / 2, n));
    }
    for k in (0..=m - 2).filter(|k| k % 2 == m % 2) {
        let p = (m - k) / 2;
        if p == 0 {
            continue;
        }
        for s in (n as i64 - k as i64 - 1).max(1) as usize..=n {
            out.insert((p, s));
        }
    }
    out
}

/// Pairs `(p, n-m-q-1+2p)` with `1 <= q <= min(m-1, n-2)` and
/// `2+m+q-n <= 2p <= m-q+1`, keeping `1 <= s <= n`.
pub fn nonempty_aps_prop2(n: usize, m: usize) -> BTreeSet<(usize, usize)> {
    let (n, m) = (n as i64, m as i64);
    let mut out = BTreeSet::new();
    for q in 1..=(m - 1).min(n - 2) {
        for p in 1..=m {
            let two_p = 2 * p;
            if 2 + m + q - n <= two_p && two_p <= m - q + 1 {
                let s = n - m - q - 1 + two_p;
                if (1..=n).contains(&s) {
                    out.insert((p as usize, s as usize));
                }
            }
        }
    }
    out
}

/// Lower bound on the dimension of the odd-odd cocycles for `m >= n`,
/// by the parity of `m = 2t + e` and the residue of `n = 4s + r`.
pub fn dim_lower_bound_corollary(n: usize, m: usize) -> Result<i64> {
    if m < n {
        return Err(Error::Precondition(format!("the bound needs m >= n, got n = {n}, m = {m}")));
    }
    let (t, s, r) = ((m / 2) as i64, (n / 4) as i64, n % 4);
    let n = n as i64;
    Ok(match (m % 2, r) {
        (0, 0) => t * n - 2 * s * s + s,
        (0, 1) => t * n - 2 * s * s,
        (0, _) => t * n - 2 * s * s - s,
        (_, 0) => (t + 1) * n - 2 * s * s - s,
        (_, 1) => t * n - 2 * s * s + 2 * s + 1,
        (_, 2) => (t + 1) * n - 2 * s * s - 4 * s - 1,
        _ => t * n - 2 * s * s + 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_count() {
        assert_eq!(e_labels(3, 2), vec![(1, 1), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(e_labels(5, 4).len(), 5 * 4 - 5 + 1);
    }

    #[test]
    fn f11_on_l32() {
        let f = f_ps(3, 2, 1, 1).unwrap();
        assert_eq!(f.get(Part::B, 1, 2), SuperVector::term(X(2), Rational::new(1, 2)));
        assert_eq!(f.get(Part::B, 1, 1), SuperVector::basis(X(1)));
        assert!(f_ps(3, 2, 2, 2).is_err());
        assert!(f_ps(3, 2, 0, 1).is_err());
    }

    #[test]
    fn odd_bound_samples() {
        assert_eq!(dim_lower_bound_corollary(4, 4).unwrap(), 7);
        assert_eq!(dim_lower_bound_corollary(4, 5).unwrap(), 9);
        assert_eq!(dim_lower_bound_corollary(5, 6).unwrap(), 13);
        assert!(dim_lower_bound_corollary(5, 4).is_err());
    }

    #[test]
    fn predicted_pair_samples() {
        assert_eq!(predicted_pairs_prop1(3, 2), BTreeSet::from([(1, 2), (1, 3)]));
        assert_eq!(predicted_pairs_prop1(4, 3), BTreeSet::from([(1, 2), (1, 3), (1, 4)]));
        assert!(nonempty_aps_prop2(2, 5).is_empty());
    }
}
