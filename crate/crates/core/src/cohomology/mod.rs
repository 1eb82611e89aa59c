//! Even cochains in degrees 1 to 3, the differential and the spaces
//! `Z0^2`, `B0^2`, `H0^2` with adjoint coefficients.

mod cochain;
mod differential;
mod space;

use serde::Serialize;

pub use cochain::{format_triple, slot_of, Cochain1, Cochain2, Cochain3, Part};
pub use differential::{apply_matrix, differential1, differential2, ensure_cocycle, DifferentialMatrix};
pub use space::{CochainSpace, Coord};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, solve_affine, Rational, RationalMatrix, SparseRow, Subspace};
use crate::superalgebra::{BasisElement, SuperAlgebra, SuperVector};

/// A space of 2-cocycles in reduced row echelon form over the coordinates
/// of [`CochainSpace`].
#[derive(Clone, Debug)]
pub struct CocycleBasis {
    space: CochainSpace,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
}

impl CocycleBasis {
    /// Reduces `vectors` to echelon form after checking each one against
    /// the differential matrix.
    fn new(dm: &DifferentialMatrix, vectors: Vec<SparseRow>) -> Self {
        let ambient = dm.space.dim();
        for v in &vectors {
            let dense = crate::linalg::sparse_to_dense(v, ambient);
            assert!(dm.matrix.annihilates(&dense), "kernel vector is not a cocycle");
        }
        let span = Subspace::span_sparse(ambient, vectors);
        assert_eq!(span.basis_sparse().len(), span.dim());
        CocycleBasis { space: dm.space.clone(), rows: span.basis_sparse().to_vec(), pivots: span.pivots().to_vec() }
    }

    pub fn ambient(&self) -> usize {
        self.space.dim()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn space(&self) -> &CochainSpace {
        &self.space
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn coordinate_rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn vectors(&self) -> Vec<Cochain2> {
        self.rows.iter().map(|r| self.space.from_sparse(r)).collect()
    }

    pub fn subspace(&self) -> Subspace {
        Subspace::span_sparse(self.space.dim(), self.rows.iter().cloned())
    }

    pub fn contains(&self, c: &Cochain2) -> bool {
        self.subspace().contains(&self.space.to_dense(c))
    }
}

fn require_lie(a: &SuperAlgebra) -> Result<()> {
    match a.check_jacobi().first() {
        None => Ok(()),
        Some(t) => Err(Error::Precondition(format!("the bracket fails the Jacobi identity on {}", format_triple(t)))),
    }
}

fn kernel_in_columns(dm: &DifferentialMatrix, keep: impl Fn(&Coord) -> bool) -> CocycleBasis {
    let (m, columns) = dm.restrict(keep);
    let vectors = kernel_basis(&m)
        .into_iter()
        .map(|v| {
            v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (columns[k], x)).collect::<SparseRow>()
        })
        .collect();
    CocycleBasis::new(dm, vectors)
}

/// `Z0^2(A, A)`.
pub fn z02_basis(a: &SuperAlgebra) -> Result<CocycleBasis> {
    require_lie(a)?;
    let dm = DifferentialMatrix::assemble(a);
    Ok(kernel_in_columns(&dm, |_| true))
}

/// Cocycles supported on one homogeneous block.
pub fn z02_component(a: &SuperAlgebra, part: Part) -> Result<CocycleBasis> {
    z02_restricted(a, |c| c.part == part)
}

/// Cocycles whose coordinates outside `keep` vanish.
pub fn z02_restricted(a: &SuperAlgebra, keep: impl Fn(&Coord) -> bool) -> Result<CocycleBasis> {
    require_lie(a)?;
    let dm = DifferentialMatrix::assemble(a);
    Ok(kernel_in_columns(&dm, keep))
}

/// Dimensions of the full cocycle space and of each block's cocycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Additivity {
    pub total: usize,
    pub psi: usize,
    pub rho: usize,
    pub b: usize,
}

impl Additivity {
    pub fn holds(&self) -> bool {
        self.total == self.psi + self.rho + self.b
    }
}

/// Compares `dim Z0^2` with the sum over blocks. With `no_x0_image` every
/// space is intersected with the cochains whose values avoid `X0`.
pub fn additivity(a: &SuperAlgebra, no_x0_image: bool) -> Result<Additivity> {
    require_lie(a)?;
    let dm = DifferentialMatrix::assemble(a);
    let allowed = |c: &Coord| !(no_x0_image && c.target == BasisElement::X(0));
    let dim = |part: Option<Part>| kernel_in_columns(&dm, |c| allowed(c) && part.is_none_or(|p| c.part == p)).dim();
    Ok(Additivity { total: dim(None), psi: dim(Some(Part::Psi)), rho: dim(Some(Part::Rho)), b: dim(Some(Part::B)) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct H02Dims {
    pub z: usize,
    pub b: usize,
    pub h: usize,
}

/// Spanning set of `B0^2`: the differentials of the elementary even
/// 1-cochains `e -> f` with `e, f` basis elements of equal parity.
pub fn coboundary_generators(a: &SuperAlgebra) -> Result<Vec<Cochain2>> {
    let (n, m) = (a.n(), a.m());
    let basis = a.basis();
    let mut out = Vec::new();
    for &e in &basis {
        for &f in basis.iter().filter(|f| f.parity() == e.parity()) {
            let c = Cochain1::zero(n, m).with(e, SuperVector::basis(f))?;
            out.push(differential1(a, &c)?);
        }
    }
    Ok(out)
}

/// `(dim Z0^2, dim B0^2, dim H0^2)`, after checking `B0^2` lies in `Z0^2`.
pub fn h02_dims(a: &SuperAlgebra) -> Result<H02Dims> {
    let z = z02_basis(a)?;
    let space = z.space().clone();
    let b = Subspace::span_sparse(space.dim(), coboundary_generators(a)?.iter().map(|c| space.to_sparse(c)));
    if !b.is_subspace_of(&z.subspace()) {
        return Err(Error::FormulaAnomaly("a coboundary is not a cocycle".into()));
    }
    Ok(H02Dims { z: z.dim(), b: b.dim(), h: z.dim() - b.dim() })
}

/// Rank of a list of cochains as vectors of the coordinate space.
pub fn rank_of(space: &CochainSpace, cochains: &[Cochain2]) -> usize {
    Subspace::span_sparse(space.dim(), cochains.iter().map(|c| space.to_sparse(c))).dim()
}

/// Coefficients expressing `target` in terms of `family`, if it lies in
/// their span. The particular solution is returned when the family is
/// dependent.
pub fn coordinates_in(space: &CochainSpace, family: &[Cochain2], target: &Cochain2) -> Option<Vec<Rational>> {
    let stacked = RationalMatrix::from_sparse_rows(space.dim(), family.iter().map(|c| space.to_sparse(c)).collect());
    solve_affine(&stacked.transpose(), &space.to_dense(target))
        .expect("dimensions agree by construction")
        .map(|sol| sol.particular)
}
