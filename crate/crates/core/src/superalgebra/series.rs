use num::BigInt;

use super::{BasisElement, SuperAlgebra, SuperVector};
use crate::bilinear::BilinearMap;
use crate::error::{Error, Result};
use crate::linalg::{Rational, SparseRow, Subspace};

use BasisElement::{X, Y};

/// The two descending series `C^{i+1}(G0) = [G0, C^i(G0)]` and
/// `C^{i+1}(G1) = [G0, C^i(G1)]`.
///
/// Even subspaces live in coordinates `X0..Xn`, odd ones in `Y1..Ym`.
/// Each series ends either at the zero subspace or at the first term that
/// repeats, in which case the algebra is not nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilData {
    pub even_series: Vec<Subspace>,
    pub odd_series: Vec<Subspace>,
    /// `(p, q)` with `C^p(G0) = 0` and `C^q(G1) = 0` reached first.
    pub nilindex: Option<(usize, usize)>,
}

impl NilData {
    pub fn even_dims(&self) -> Vec<usize> {
        self.even_series.iter().map(Subspace::dim).collect()
    }

    pub fn odd_dims(&self) -> Vec<usize> {
        self.odd_series.iter().map(Subspace::dim).collect()
    }
}

impl SuperAlgebra {
    pub fn lower_central_series(&self) -> NilData {
        let (n, m) = (self.n, self.m);
        let even_basis: Vec<BasisElement> = (0..=n).map(X).collect();
        let (even_series, p) = self.series(Subspace::full(n + 1), &even_basis, X, 0);
        let (odd_series, q) = self.series(Subspace::full(m), &even_basis, Y, 1);
        NilData { even_series, odd_series, nilindex: p.zip(q) }
    }

    fn series(
        &self,
        start: Subspace,
        acting: &[BasisElement],
        make: fn(usize) -> BasisElement,
        offset: usize,
    ) -> (Vec<Subspace>, Option<usize>) {
        let ambient = start.ambient();
        let mut out = vec![start];
        loop {
            let current = out.last().expect("series is never empty");
            if current.dim() == 0 {
                return (out.clone(), Some(out.len() - 1));
            }
            let mut images: Vec<SparseRow> = Vec::new();
            for row in current.basis_sparse() {
                let v = SuperVector::from_terms(row.iter().map(|(i, c)| (make(i + offset), c.clone())));
                for &a in acting {
                    let img = self.apply_left(a, &v);
                    images.push(img.iter().map(|(e, c)| (e.index() - offset, c.clone())).collect());
                }
            }
            let next = Subspace::span_sparse(ambient, images);
            if next.dim() == current.dim() {
                return (out, None);
            }
            out.push(next);
        }
    }

    pub fn super_nilindex(&self) -> Option<(usize, usize)> {
        self.lower_central_series().nilindex
    }

    /// Nilpotent with super-nilindex `(n, m)`.
    pub fn is_filiform(&self) -> bool {
        self.super_nilindex() == Some((self.n, self.m))
    }

    /// The defining conditions of an adapted basis that fail, as readable
    /// strings; empty means the basis is adapted.
    pub fn adapted_basis_violations(&self) -> Vec<String> {
        let (n, m) = (self.n, self.m);
        let mut out = Vec::new();
        let mut expect = |a: BasisElement, b: BasisElement, want: SuperVector| {
            let got = self.bracket_basis(a, b);
            if *got != want {
                out.push(format!("[{a},{b}] = {got}, expected {want}"));
            }
        };
        for i in 1..n {
            expect(X(0), X(i), SuperVector::basis(X(i + 1)));
        }
        if n >= 1 {
            expect(X(0), X(n), SuperVector::zero());
        }
        for j in 1..m {
            expect(X(0), Y(j), SuperVector::basis(Y(j + 1)));
        }
        if m >= 1 {
            expect(X(0), Y(m), SuperVector::zero());
        }
        if n >= 2 {
            let v = self.bracket_basis(X(1), X(2));
            if v.support().any(|e| !matches!(e, X(k) if k >= 4)) {
                out.push(format!("[X1,X2] = {v} is not in span(X4..Xn)"));
            }
        }
        out
    }

    pub fn verify_adapted_basis(&self) -> bool {
        self.adapted_basis_violations().is_empty()
    }
}

/// `N = (p+1)^2 p/2 + 2(p+1) q^2`, evaluated exactly. A non-integer value
/// is reported as a formula anomaly instead of being rounded.
pub fn variety_embedding_dim(p: u64, q: u64) -> Result<BigInt> {
    let p1 = Rational::from_bigint(BigInt::from(p) + 1);
    let pr = Rational::from_bigint(BigInt::from(p));
    let qr = Rational::from_bigint(BigInt::from(q));
    let two = Rational::from_integer(2);
    let value = &(&(&p1 * &p1) * &pr) / &two + &(&(&two * &p1) * &qr) * &qr;
    if value.is_integer() {
        Ok(value.numer().clone())
    } else {
        Err(Error::FormulaAnomaly(format!("embedding dimension for p = {p}, q = {q} evaluates to {value}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_series() {
        let nd = SuperAlgebra::model(3, 2).lower_central_series();
        assert_eq!(nd.even_dims(), vec![4, 2, 1, 0]);
        assert_eq!(nd.odd_dims(), vec![2, 1, 0]);
        assert_eq!(nd.nilindex, Some((3, 2)));
    }

    #[test]
    fn abelian_series() {
        let a = SuperAlgebra::abelian(3, 2);
        assert_eq!(a.super_nilindex(), Some((1, 1)));
        assert!(!a.is_filiform());
        assert_eq!(SuperAlgebra::abelian(2, 0).super_nilindex(), Some((1, 0)));
    }

    #[test]
    fn non_nilpotent_series_stops() {
        // [X1, Y1] = Y1 makes ad(X1) the identity on the odd part.
        let a = SuperAlgebra::model(3, 2)
            .with_bracket(X(1), Y(1), SuperVector::basis(Y(1)))
            .unwrap()
            .with_bracket(X(1), Y(2), SuperVector::basis(Y(2)))
            .unwrap();
        let nd = a.lower_central_series();
        assert_eq!(nd.nilindex, None);
        assert_eq!(nd.odd_dims(), vec![2]);
        assert!(!a.is_filiform());
    }

    #[test]
    fn adapted_basis() {
        assert!(SuperAlgebra::model(6, 4).verify_adapted_basis());
        let bad = SuperAlgebra::model(4, 2).with_bracket(X(0), X(4), SuperVector::basis(X(1))).unwrap();
        assert!(!bad.verify_adapted_basis());
        let bad = SuperAlgebra::model(5, 2).with_bracket(X(1), X(2), SuperVector::basis(X(3))).unwrap();
        assert!(!bad.verify_adapted_basis());
        let ok = SuperAlgebra::model(5, 2).with_bracket(X(1), X(2), SuperVector::basis(X(5))).unwrap();
        assert!(ok.verify_adapted_basis());
    }

    #[test]
    fn embedding_dim() {
        assert_eq!(variety_embedding_dim(1, 1).unwrap(), BigInt::from(6));
        assert_eq!(variety_embedding_dim(0, 0).unwrap(), BigInt::from(0));
        assert_eq!(variety_embedding_dim(2, 3).unwrap(), BigInt::from(63));
    }
}
