use std::ops::Range;

use super::cochain::{Cochain2, Part};
use crate::bilinear::BilinearMap;
use crate::linalg::{Rational, SparseRow};
use crate::superalgebra::BasisElement;

use BasisElement::{X, Y};

/// One coordinate of the even 2-cochain space: the coefficient of
/// `target` in the stored value at key `(i, j)` of `part`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    pub part: Part,
    pub i: usize,
    pub j: usize,
    pub target: BasisElement,
}

impl Coord {
    /// The basis pair whose value this coordinate reads.
    pub fn arguments(&self) -> (BasisElement, BasisElement) {
        match self.part {
            Part::Psi => (X(self.i), X(self.j)),
            Part::Rho => (X(self.i), Y(self.j)),
            Part::B => (Y(self.i), Y(self.j)),
        }
    }
}

/// Fixed coordinate system on even 2-cochains: every `psi` coordinate
/// (keys `(i, j)` lexicographically, then target), then `rho` (keys
/// `(i, t)`, then target), then `b` (keys `(t, r)`, then target).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpace {
    n: usize,
    m: usize,
    psi_keys: usize,
    rho_keys: usize,
    b_keys: usize,
}

impl CochainSpace {
    pub fn new(n: usize, m: usize) -> Self {
        CochainSpace { n, m, psi_keys: n * (n + 1) / 2, rho_keys: (n + 1) * m, b_keys: m * (m + 1) / 2 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.part_range(Part::B).end
    }

    fn targets(&self, part: Part) -> usize {
        match part {
            Part::Psi | Part::B => self.n + 1,
            Part::Rho => self.m,
        }
    }

    pub fn part_range(&self, part: Part) -> Range<usize> {
        let psi = self.psi_keys * (self.n + 1);
        let rho = self.rho_keys * self.m;
        let b = self.b_keys * (self.n + 1);
        match part {
            Part::Psi => 0..psi,
            Part::Rho => psi..psi + rho,
            Part::B => psi + rho..psi + rho + b,
        }
    }

    /// Position of a key among the keys of its block.
    fn key_rank(&self, part: Part, i: usize, j: usize) -> usize {
        match part {
            // Keys (i, j), i < j <= n: rows before i hold n + (n-1) + ... terms.
            Part::Psi => i * self.n - i * (i.saturating_sub(1)) / 2 + (j - i - 1),
            Part::Rho => i * self.m + (j - 1),
            Part::B => {
                let t = i - 1;
                t * self.m - t * (t.saturating_sub(1)) / 2 + (j - i)
            }
        }
    }

    fn target_rank(part: Part, target: BasisElement) -> usize {
        match (part, target) {
            (Part::Rho, Y(r)) => r - 1,
            (Part::Psi | Part::B, X(k)) => k,
            _ => panic!("target {target} has the wrong parity for {part}"),
        }
    }

    pub fn index(&self, c: &Coord) -> usize {
        self.part_range(c.part).start
            + self.key_rank(c.part, c.i, c.j) * self.targets(c.part)
            + Self::target_rank(c.part, c.target)
    }

    /// Coordinates in index order.
    pub fn coords(&self) -> Vec<Coord> {
        let (n, m) = (self.n, self.m);
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..=n {
            for j in i + 1..=n {
                out.extend((0..=n).map(|k| Coord { part: Part::Psi, i, j, target: X(k) }));
            }
        }
        for i in 0..=n {
            for t in 1..=m {
                out.extend((1..=m).map(|r| Coord { part: Part::Rho, i, j: t, target: Y(r) }));
            }
        }
        for t in 1..=m {
            for r in t..=m {
                out.extend((0..=n).map(|k| Coord { part: Part::B, i: t, j: r, target: X(k) }));
            }
        }
        out
    }

    pub fn coord(&self, index: usize) -> Coord {
        self.coords()[index]
    }

    pub fn to_sparse(&self, c: &Cochain2) -> SparseRow {
        assert_eq!(c.dims(), (self.n, self.m), "cochain lives on a different algebra");
        let mut row: SparseRow = c
            .entries()
            .flat_map(|(part, i, j, v)| {
                v.iter().map(move |(target, x)| (self.index(&Coord { part, i, j, target }), x.clone()))
            })
            .collect();
        row.sort_by_key(|e| e.0);
        row
    }

    pub fn to_dense(&self, c: &Cochain2) -> Vec<Rational> {
        crate::linalg::sparse_to_dense(&self.to_sparse(c), self.dim())
    }

    pub fn from_sparse(&self, row: &[(usize, Rational)]) -> Cochain2 {
        let coords = self.coords();
        let mut out = Cochain2::zero(self.n, self.m);
        for (idx, x) in row {
            let c = coords[*idx];
            out.add_entry(c.part, c.i, c.j, c.target, x);
        }
        out
    }

    pub fn from_dense(&self, v: &[Rational]) -> Cochain2 {
        self.from_sparse(&crate::linalg::dense_to_sparse(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_match_enumeration() {
        for (n, m) in [(1, 0), (2, 1), (3, 2), (4, 4), (0, 3)] {
            let space = CochainSpace::new(n, m);
            let coords = space.coords();
            assert_eq!(coords.len(), space.dim());
            for (idx, c) in coords.iter().enumerate() {
                assert_eq!(space.index(c), idx, "{c:?} in ({n},{m})");
            }
        }
    }

    #[test]
    fn block_sizes() {
        let s = CochainSpace::new(3, 2);
        assert_eq!(s.part_range(Part::Psi).len(), 6 * 4);
        assert_eq!(s.part_range(Part::Rho).len(), 4 * 2 * 2);
        assert_eq!(s.part_range(Part::B).len(), 3 * 4);
    }
}
