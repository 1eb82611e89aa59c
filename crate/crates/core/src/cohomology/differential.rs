use std::collections::BTreeMap;

use rayon::prelude::*;

use super::cochain::{format_triple, slot_of, Cochain1, Cochain2, Cochain3};
use super::space::{CochainSpace, Coord};
use crate::bilinear::{basis_elements, canonical_triples, compose, BilinearMap, Triple};
use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix, SparseRow};
use crate::superalgebra::{BasisElement, SuperAlgebra, SuperVector};

fn check_dims(a: &SuperAlgebra, dims: (usize, usize), what: &str) -> Result<()> {
    if dims != (a.n(), a.m()) {
        return Err(Error::Malformed(format!("{what} has dimensions {dims:?}, algebra has ({}, {})", a.n(), a.m())));
    }
    Ok(())
}

/// `dc(x, y) = c([x,y]) - [x, c(y)] + (-1)^{|x||y|} [y, c(x)]`, tabulated
/// on canonical pairs.
pub fn differential1(a: &SuperAlgebra, c: &Cochain1) -> Result<Cochain2> {
    check_dims(a, c.dims(), "1-cochain")?;
    let basis = basis_elements(a.n(), a.m());
    let mut out = Cochain2::zero(a.n(), a.m());
    for (ix, &x) in basis.iter().enumerate() {
        for &y in &basis[ix..] {
            if slot_of(x, y).is_none() {
                continue;
            }
            let mut v = c.apply(a.bracket_basis(x, y));
            v.add_scaled(&-Rational::one(), &a.apply_left(x, &c.apply_basis(y)));
            let sign = x.parity().sign_with(y.parity());
            v.add_scaled(&Rational::from_integer(sign), &a.apply_left(y, &c.apply_basis(x)));
            out.set(x, y, v)?;
        }
    }
    Ok(out)
}

/// `dc = -(mu o c + c o mu)` on every canonical triple, where `o` is the
/// signed cyclic composition. Zero exactly on even 2-cocycles.
pub fn differential2(a: &SuperAlgebra, c: &Cochain2) -> Result<Cochain3> {
    check_dims(a, c.dims(), "2-cochain")?;
    c.validate()?;
    let mut out = Cochain3::zero(a.n(), a.m());
    for t in canonical_triples(a.n(), a.m()) {
        let mut v = compose(a, c, &t);
        v.add_scaled(&Rational::one(), &compose(c, a, &t));
        out.insert(t, -&v);
    }
    Ok(out)
}

/// Error carrying the first triple where `dc` is nonzero, if any.
pub fn ensure_cocycle(a: &SuperAlgebra, c: &Cochain2, what: &str) -> Result<()> {
    let d = differential2(a, c)?;
    match d.first_nonzero() {
        None => Ok(()),
        Some((t, v)) => {
            Err(Error::NotACocycle { what: what.to_string(), witness: format!("{} -> {v}", format_triple(t)) })
        }
    }
}

/// The matrix of `differential2` in the coordinates of [`CochainSpace`].
/// Rows are labelled `(triple, target)`; identically zero rows are dropped.
#[derive(Clone, Debug)]
pub struct DifferentialMatrix {
    pub space: CochainSpace,
    pub matrix: RationalMatrix,
    pub rows: Vec<(Triple, BasisElement)>,
}

impl DifferentialMatrix {
    /// Assembles the matrix by distributing every cyclic term directly into
    /// columns, without evaluating the differential on unit cochains.
    pub fn assemble(a: &SuperAlgebra) -> Self {
        let space = CochainSpace::new(a.n(), a.m());
        let triples = canonical_triples(a.n(), a.m());
        let blocks: Vec<Vec<((Triple, BasisElement), SparseRow)>> =
            triples.par_iter().map(|t| triple_rows(a, &space, t)).collect();
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for (label, row) in blocks.into_iter().flatten() {
            labels.push(label);
            rows.push(row);
        }
        DifferentialMatrix { matrix: RationalMatrix::from_sparse_rows(space.dim(), rows), space, rows: labels }
    }

    /// Same rows, keeping only the columns accepted by `keep`, renumbered
    /// in order. Rows that become zero are dropped.
    pub fn restrict(&self, keep: impl Fn(&Coord) -> bool) -> (RationalMatrix, Vec<usize>) {
        let columns: Vec<usize> =
            self.space.coords().iter().enumerate().filter(|(_, c)| keep(c)).map(|(i, _)| i).collect();
        let mut new_index = vec![usize::MAX; self.space.dim()];
        for (k, &c) in columns.iter().enumerate() {
            new_index[c] = k;
        }
        let rows: Vec<SparseRow> = self
            .matrix
            .sparse_rows()
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| new_index[*c] != usize::MAX)
                    .map(|(c, x)| (new_index[*c], x.clone()))
                    .collect::<SparseRow>()
            })
            .filter(|r| !r.is_empty())
            .collect();
        (RationalMatrix::from_sparse_rows(columns.len(), rows), columns)
    }
}

fn triple_rows(a: &SuperAlgebra, space: &CochainSpace, t: &Triple) -> Vec<((Triple, BasisElement), SparseRow)> {
    let mut acc: BTreeMap<BasisElement, BTreeMap<usize, Rational>> = BTreeMap::new();
    let mut add = |target: BasisElement, col: usize, x: Rational| {
        let row = acc.entry(target).or_default();
        let e = row.entry(col).or_insert_with(Rational::zero);
        *e += x;
    };
    let basis = a.basis();
    for (p, q, r, sign) in crate::bilinear::cyclic_terms(t) {
        // -sign * mu(P, c(Q, R))
        if let Some((part, i, j, sigma)) = slot_of(q, r) {
            for &k in &basis {
                if k.parity() != part.target_parity() {
                    continue;
                }
                let col = space.index(&Coord { part, i, j, target: k });
                for (target, x) in a.bracket_basis(p, k).iter() {
                    add(target, col, Rational::from_integer(-sign * sigma) * x);
                }
            }
        }
        // -sign * c(P, mu(Q, R))
        for (e, x) in a.bracket_basis(q, r).iter() {
            let Some((part, i, j, sigma)) = slot_of(p, e) else {
                continue;
            };
            for &k in &basis {
                if k.parity() != part.target_parity() {
                    continue;
                }
                let col = space.index(&Coord { part, i, j, target: k });
                add(k, col, Rational::from_integer(-sign * sigma) * x);
            }
        }
    }
    acc.into_iter()
        .filter_map(|(target, row)| {
            let row: SparseRow = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            (!row.is_empty()).then_some(((*t, target), row))
        })
        .collect()
}

/// Reads a [`Cochain3`] off the matrix image of a coordinate vector.
pub fn apply_matrix(dm: &DifferentialMatrix, c: &Cochain2) -> Cochain3 {
    let v = dm.space.to_dense(c);
    let image = dm.matrix.mul_vec(&v);
    let mut values: BTreeMap<Triple, SuperVector> = BTreeMap::new();
    for ((t, target), x) in dm.rows.iter().zip(image) {
        if !x.is_zero() {
            values.entry(*t).or_default().add_term(*target, &x);
        }
    }
    let mut out = Cochain3::zero(dm.space.n(), dm.space.m());
    for (t, v) in values {
        out.insert(t, v);
    }
    out
}
