//! Graded bilinear maps on `span(X0..Xn | Y1..Ym)` and their cyclic
//! composition, the one primitive behind the Jacobi identity, the
//! differential on 2-cochains, deformation equations and the quadratic
//! obstruction of a deformed law.

use crate::linalg::Rational;
use crate::superalgebra::{BasisElement, SuperVector};

/// A graded bilinear map known through its values on basis pairs.
pub trait BilinearMap {
    /// `(n, m)`: the even part is `X0..Xn`, the odd part `Y1..Ym`.
    fn dims(&self) -> (usize, usize);

    fn apply_basis(&self, a: BasisElement, b: BasisElement) -> SuperVector;

    /// `f(a, v)` for a basis element `a` and an arbitrary vector `v`.
    fn apply_left(&self, a: BasisElement, v: &SuperVector) -> SuperVector {
        let mut out = SuperVector::zero();
        for (e, c) in v.iter() {
            out.add_scaled(c, &self.apply_basis(a, e));
        }
        out
    }

    fn apply(&self, x: &SuperVector, y: &SuperVector) -> SuperVector {
        let mut out = SuperVector::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&(ca * cb), &self.apply_basis(a, b));
            }
        }
        out
    }
}

/// A basis triple `(A, B, C)`.
pub type Triple = [BasisElement; 3];

/// All basis elements of `span(X0..Xn | Y1..Ym)` in the fixed global order.
pub fn basis_elements(n: usize, m: usize) -> Vec<BasisElement> {
    (0..=n).map(BasisElement::X).chain((1..=m).map(BasisElement::Y)).collect()
}

/// Basis triples `A <= B <= C` in the global order where only odd
/// elements may repeat. Every graded alternating trilinear map is
/// determined by its values here.
pub fn canonical_triples(n: usize, m: usize) -> Vec<Triple> {
    let basis = basis_elements(n, m);
    let mut out = Vec::new();
    for (i, &a) in basis.iter().enumerate() {
        for (j, &b) in basis.iter().enumerate().skip(i) {
            if j == i && a.is_even() {
                continue;
            }
            for (k, &c) in basis.iter().enumerate().skip(j) {
                if k == j && b.is_even() {
                    continue;
                }
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Number of canonical triples with `q1` odd entries.
pub fn bidegree(t: &Triple) -> (usize, usize) {
    let odd = t.iter().filter(|e| !e.is_even()).count();
    (3 - odd, odd)
}

/// The cyclic rotations of `(A, B, C)` paired with their signs:
/// `(A,B,C)` carries `(-1)^{|C||A|}`, `(B,C,A)` carries `(-1)^{|A||B|}`
/// and `(C,A,B)` carries `(-1)^{|B||C|}`.
pub fn cyclic_terms(t: &Triple) -> [(BasisElement, BasisElement, BasisElement, i64); 3] {
    let [a, b, c] = *t;
    let s = |x: BasisElement, y: BasisElement| x.parity().sign_with(y.parity());
    [(a, b, c, s(c, a)), (b, c, a, s(a, b)), (c, a, b, s(b, c))]
}

/// `(f o g)(A,B,C) = sum over cyclic rotations of sign * f(P, g(Q, R))`.
///
/// `compose(mu, mu)` is the Jacobiator of a law `mu`;
/// `compose(mu, phi) + compose(phi, mu)` is its linearization at `phi`.
pub fn compose(f: &dyn BilinearMap, g: &dyn BilinearMap, t: &Triple) -> SuperVector {
    let mut out = SuperVector::zero();
    for (p, q, r, sign) in cyclic_terms(t) {
        let inner = g.apply_basis(q, r);
        if inner.is_zero() {
            continue;
        }
        out.add_scaled(&Rational::from_integer(sign), &f.apply_left(p, &inner));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisElement::{X, Y};

    #[test]
    fn triple_counts() {
        // n = 1, m = 1: basis X0 X1 Y1.
        let t = canonical_triples(1, 1);
        assert_eq!(t, vec![[X(0), X(1), Y(1)], [X(0), Y(1), Y(1)], [X(1), Y(1), Y(1)], [Y(1), Y(1), Y(1)]]);
        // Even part only: strictly increasing triples.
        assert_eq!(canonical_triples(4, 0).len(), 10);
        // Odd part only: multisets of size three from two elements.
        let odd: Vec<_> = canonical_triples(0, 2).into_iter().filter(|t| bidegree(t) == (0, 3)).collect();
        assert_eq!(odd.len(), 4);
    }

    #[test]
    fn cyclic_signs() {
        let terms = cyclic_terms(&[X(0), Y(1), Y(2)]);
        let signs: Vec<i64> = terms.iter().map(|t| t.3).collect();
        assert_eq!(signs, vec![1, 1, -1]);
    }
}
