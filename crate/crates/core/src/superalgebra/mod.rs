//! Lie superalgebras given by structure constants over a graded basis
//! `X0..Xn | Y1..Ym`, with the model filiform algebra `L(n,m)`.

mod json;
mod series;
mod vector;

use std::fmt;

use crate::bilinear::{basis_elements, canonical_triples, compose, BilinearMap, Triple};
use crate::error::{Error, Result};
use crate::linalg::{inverse, Rational, RationalMatrix};

pub use json::{StructureConstant, StructureConstants};
pub use series::{variety_embedding_dim, NilData};
pub use vector::{BasisElement, Parity, SuperVector};

use BasisElement::{X, Y};

/// A bracket on `span(X0..Xn | Y1..Ym)` stored as the full table of
/// basis brackets. The table always satisfies
/// `[a,b] = -(-1)^{|a||b|} [b,a]` and respects the grading; whether the
/// Jacobi identity holds is a separate question answered by
/// [`SuperAlgebra::check_jacobi`].
#[derive(Clone, PartialEq, Eq)]
pub struct SuperAlgebra {
    n: usize,
    m: usize,
    table: Vec<SuperVector>,
}

impl SuperAlgebra {
    /// All brackets zero.
    pub fn abelian(n: usize, m: usize) -> Self {
        let dim = n + 1 + m;
        SuperAlgebra { n, m, table: vec![SuperVector::zero(); dim * dim] }
    }

    /// `L(n,m)`: `[X0,Xi] = X(i+1)` for `1 <= i < n`, `[X0,Yj] = Y(j+1)` for
    /// `1 <= j < m`, all other brackets of basis elements zero.
    pub fn model(n: usize, m: usize) -> Self {
        let mut a = SuperAlgebra::abelian(n, m);
        for i in 1..n {
            a.put(X(0), X(i), SuperVector::basis(X(i + 1)));
        }
        for j in 1..m {
            a.put(X(0), Y(j), SuperVector::basis(Y(j + 1)));
        }
        a
    }

    /// Sets `[a,b] = v` (and the bracket `[b,a]` it forces), replacing any
    /// previous value.
    pub fn with_bracket(mut self, a: BasisElement, b: BasisElement, v: SuperVector) -> Result<Self> {
        self.check_element(a)?;
        self.check_element(b)?;
        if !v.in_range(self.n, self.m) {
            return Err(Error::Malformed(format!(
                "bracket value {v} leaves the basis of dimension ({}|{})",
                self.n + 1,
                self.m
            )));
        }
        let target = a.parity() + b.parity();
        if !v.is_homogeneous_of(target) {
            return Err(Error::Malformed(format!("[{a},{b}] must have parity {target:?}, got {v}")));
        }
        if a == b && a.is_even() && !v.is_zero() {
            return Err(Error::Malformed(format!("[{a},{a}] must vanish")));
        }
        self.put(a, b, v);
        Ok(self)
    }

    fn put(&mut self, a: BasisElement, b: BasisElement, v: SuperVector) {
        let swapped = if a.parity() == Parity::Odd && b.parity() == Parity::Odd { v.clone() } else { -&v };
        let (ia, ib) = (self.slot(a), self.slot(b));
        let dim = self.dim();
        self.table[ib * dim + ia] = swapped;
        self.table[ia * dim + ib] = v;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Total dimension `n + 1 + m`.
    pub fn dim(&self) -> usize {
        self.n + 1 + self.m
    }

    pub fn basis(&self) -> Vec<BasisElement> {
        basis_elements(self.n, self.m)
    }

    /// Position of `e` in the global order `X0..Xn, Y1..Ym`.
    pub fn slot(&self, e: BasisElement) -> usize {
        match e {
            X(i) => i,
            Y(j) => self.n + j,
        }
    }

    pub fn element(&self, slot: usize) -> BasisElement {
        if slot <= self.n {
            X(slot)
        } else {
            Y(slot - self.n)
        }
    }

    pub fn contains(&self, e: BasisElement) -> bool {
        e.in_range(self.n, self.m)
    }

    fn check_element(&self, e: BasisElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::Malformed(format!("{e} is not a basis element for n = {}, m = {}", self.n, self.m)))
        }
    }

    fn check_vector(&self, v: &SuperVector) -> Result<()> {
        match v.support().find(|e| !self.contains(*e)) {
            Some(e) => self.check_element(e),
            None => Ok(()),
        }
    }

    /// `[a,b]` on basis elements. Panics if either is out of range; use
    /// [`SuperAlgebra::bracket`] for checked access.
    pub fn bracket_basis(&self, a: BasisElement, b: BasisElement) -> &SuperVector {
        &self.table[self.slot(a) * self.dim() + self.slot(b)]
    }

    /// Bilinear extension of the basis brackets.
    pub fn bracket(&self, x: &SuperVector, y: &SuperVector) -> Result<SuperVector> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.apply(x, y))
    }

    /// Matrix of `ad(x)` in the global basis order (columns are inputs).
    pub fn ad_matrix(&self, x: &SuperVector) -> Result<RationalMatrix> {
        self.check_vector(x)?;
        let dim = self.dim();
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); dim];
        for col in 0..dim {
            let img = self.apply_left_vec(x, self.element(col));
            for (e, c) in img.iter() {
                rows[self.slot(e)].push((col, c.clone()));
            }
        }
        Ok(RationalMatrix::from_sparse_rows(dim, rows))
    }

    fn apply_left_vec(&self, x: &SuperVector, b: BasisElement) -> SuperVector {
        let mut out = SuperVector::zero();
        for (a, c) in x.iter() {
            out.add_scaled(c, self.bracket_basis(a, b));
        }
        out
    }

    /// Basis triples (canonical order, only odd elements repeated) on
    /// which the graded Jacobi sum does not vanish.
    pub fn check_jacobi(&self) -> Vec<Triple> {
        canonical_triples(self.n, self.m).into_iter().filter(|t| !compose(self, self, t).is_zero()).collect()
    }

    pub fn is_lie_superalgebra(&self) -> bool {
        self.check_jacobi().is_empty()
    }

    /// The algebra transported along the graded basis change `g = g0 + g1`:
    /// `[x,y]' = g [g^{-1} x, g^{-1} y]`. `g0` acts on coordinates of
    /// `X0..Xn`, `g1` on coordinates of `Y1..Ym`.
    pub fn transform(&self, g0: &RationalMatrix, g1: &RationalMatrix) -> Result<SuperAlgebra> {
        let (n, m) = (self.n, self.m);
        let shape = |g: &RationalMatrix, d: usize| g.rows() == d && g.cols() == d;
        if !shape(g0, n + 1) || !shape(g1, m) {
            return Err(Error::Malformed(format!("basis change must be ({0}x{0}, {1}x{1})", n + 1, m)));
        }
        let singular = || Error::Precondition("basis change is not invertible".into());
        let h0 = inverse(g0).ok_or_else(singular)?;
        let h1 = inverse(g1).ok_or_else(singular)?;

        let column = |h: &RationalMatrix, j: usize, make: fn(usize) -> BasisElement, offset| {
            SuperVector::from_terms((0..h.rows()).map(|i| (make(i + offset), h.get(i, j))))
        };
        let preimage = |e: BasisElement| match e {
            X(i) => column(&h0, i, X, 0),
            Y(j) => column(&h1, j - 1, Y, 1),
        };
        let push = |v: &SuperVector| {
            let mut out = SuperVector::zero();
            for (e, c) in v.iter() {
                let img = match e {
                    X(i) => column(g0, i, X, 0),
                    Y(j) => column(g1, j - 1, Y, 1),
                };
                out.add_scaled(c, &img);
            }
            out
        };

        let pre: Vec<SuperVector> = self.basis().into_iter().map(preimage).collect();
        let dim = self.dim();
        let mut out = SuperAlgebra::abelian(n, m);
        for ia in 0..dim {
            for ib in 0..dim {
                out.table[ia * dim + ib] = push(&self.apply(&pre[ia], &pre[ib]));
            }
        }
        Ok(out)
    }

    /// Structure constants `C`, `D`, `E` with only `i < j` stored for `C`
    /// and `i <= j` for `E`; entries sorted and nonzero.
    pub fn structure_constants(&self) -> StructureConstants {
        let (n, m) = (self.n, self.m);
        let mut sc = StructureConstants { n, m, c: Vec::new(), d: Vec::new(), e: Vec::new() };
        let entry = |i, j, k, v: &Rational| StructureConstant { i, j, k, v: v.clone() };
        for i in 0..=n {
            for j in i + 1..=n {
                for (t, v) in self.bracket_basis(X(i), X(j)).iter() {
                    sc.c.push(entry(i, j, t.index(), v));
                }
            }
            for j in 1..=m {
                for (t, v) in self.bracket_basis(X(i), Y(j)).iter() {
                    sc.d.push(entry(i, j, t.index(), v));
                }
            }
        }
        for i in 1..=m {
            for j in i..=m {
                for (t, v) in self.bracket_basis(Y(i), Y(j)).iter() {
                    sc.e.push(entry(i, j, t.index(), v));
                }
            }
        }
        sc
    }

    /// Builds the algebra from structure constants, rejecting out-of-range
    /// indices, non-canonical index pairs and duplicate entries.
    pub fn from_structure_constants(sc: &StructureConstants) -> Result<Self> {
        let (n, m) = (sc.n, sc.m);
        let mut alg = SuperAlgebra::abelian(n, m);
        let mut seen = std::collections::BTreeSet::new();
        let blocks: [(&str, &[StructureConstant]); 3] = [("C", &sc.c), ("D", &sc.d), ("E", &sc.e)];
        for (name, entries) in blocks {
            for en in entries {
                let (a, b, t) = match name {
                    "C" if en.i < en.j => (X(en.i), X(en.j), X(en.k)),
                    "D" => (X(en.i), Y(en.j), Y(en.k)),
                    "E" if en.i <= en.j => (Y(en.i), Y(en.j), X(en.k)),
                    _ => {
                        return Err(Error::Malformed(format!(
                            "{name} entry ({}, {}) is not in canonical order",
                            en.i, en.j
                        )))
                    }
                };
                for e in [a, b, t] {
                    alg.check_element(e)?;
                }
                if !seen.insert((name, en.i, en.j, en.k)) {
                    return Err(Error::Malformed(format!("duplicate {name} entry ({}, {}, {})", en.i, en.j, en.k)));
                }
                let mut v = alg.bracket_basis(a, b).clone();
                v.add_term(t, &en.v);
                alg.put(a, b, v);
            }
        }
        Ok(alg)
    }

    pub fn to_json(&self) -> String {
        self.structure_constants().to_json()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        SuperAlgebra::from_structure_constants(&StructureConstants::from_json(s)?)
    }

    /// Adds `phi` to the bracket. `phi` must be graded and match the
    /// dimensions of `self`.
    pub fn plus(&self, phi: &dyn BilinearMap) -> Result<SuperAlgebra> {
        if phi.dims() != (self.n, self.m) {
            return Err(Error::Malformed(format!(
                "dimension mismatch: algebra is ({}, {}), map is {:?}",
                self.n,
                self.m,
                phi.dims()
            )));
        }
        let mut out = self.clone();
        let basis = self.basis();
        let dim = self.dim();
        for (ia, &a) in basis.iter().enumerate() {
            for (ib, &b) in basis.iter().enumerate() {
                let extra = phi.apply_basis(a, b);
                if !extra.is_zero() {
                    let mut v = out.table[ia * dim + ib].clone();
                    v.add_scaled(&Rational::one(), &extra);
                    out.table[ia * dim + ib] = v;
                }
            }
        }
        out.check_table()?;
        Ok(out)
    }

    fn check_table(&self) -> Result<()> {
        for &a in &self.basis() {
            for &b in &self.basis() {
                let v = self.bracket_basis(a, b);
                let target = a.parity() + b.parity();
                if !v.is_homogeneous_of(target) {
                    return Err(Error::Malformed(format!("[{a},{b}] = {v} breaks the grading")));
                }
                let back = self.bracket_basis(b, a);
                let expected = if a.is_even() || b.is_even() { -back } else { back.clone() };
                if *v != expected {
                    return Err(Error::Malformed(format!("[{a},{b}] and [{b},{a}] violate graded antisymmetry")));
                }
            }
        }
        Ok(())
    }

    /// Nonzero basis brackets `[a,b]` with `a <= b` in the global order.
    pub fn nonzero_brackets(&self) -> Vec<(BasisElement, BasisElement, &SuperVector)> {
        let basis = self.basis();
        let mut out = Vec::new();
        for (i, &a) in basis.iter().enumerate() {
            for &b in &basis[i..] {
                let v = self.bracket_basis(a, b);
                if !v.is_zero() {
                    out.push((a, b, v));
                }
            }
        }
        out
    }
}

impl BilinearMap for SuperAlgebra {
    fn dims(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    fn apply_basis(&self, a: BasisElement, b: BasisElement) -> SuperVector {
        self.bracket_basis(a, b).clone()
    }

    fn apply_left(&self, a: BasisElement, v: &SuperVector) -> SuperVector {
        let mut out = SuperVector::zero();
        for (e, c) in v.iter() {
            out.add_scaled(c, self.bracket_basis(a, e));
        }
        out
    }
}

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperAlgebra(n={}, m={}) {{", self.n, self.m)?;
        for (a, b, v) in self.nonzero_brackets() {
            write!(f, " [{a},{b}]={v};")?;
        }
        write!(f, " }}")
    }
}
