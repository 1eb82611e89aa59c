//! Test oracle independent of the library's differential: dense structure
//! tensors over a prime field, brackets written out by hand, and the
//! cocycle condition read off the Jacobiator of `mu + phi` and `mu - phi`.
#![allow(dead_code)]

use filiform_core::cohomology::{Cochain2, Part};
use filiform_core::{BasisElement, Rational, SuperAlgebra};

pub const P: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

pub fn md(x: i128) -> u64 {
    x.rem_euclid(P as i128) as u64
}

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    (a + b) % P
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

pub fn rat(q: &Rational) -> u64 {
    let n: i128 = q.numer().try_into().expect("small numerator");
    let d: i128 = q.denom().try_into().expect("small denominator");
    mul(md(n), inv(md(d)))
}

/// Bilinear map on `dim = n+1+m` slots as a dense tensor `t[a][b][k]`.
#[derive(Clone)]
pub struct Dense {
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    pub t: Vec<u64>,
}

impl Dense {
    pub fn zero(n: usize, m: usize) -> Self {
        let dim = n + 1 + m;
        Dense { n, m, dim, t: vec![0; dim * dim * dim] }
    }

    pub fn odd(&self, a: usize) -> bool {
        a > self.n
    }

    pub fn at(&self, a: usize, b: usize, k: usize) -> u64 {
        self.t[(a * self.dim + b) * self.dim + k]
    }

    fn put(&mut self, a: usize, b: usize, k: usize, v: u64) {
        let d = self.dim;
        self.t[(a * d + b) * d + k] = v;
    }

    /// Sets the value on `(a, b)` and the graded-symmetric value on `(b, a)`.
    pub fn set_pair(&mut self, a: usize, b: usize, k: usize, v: u64) {
        self.put(a, b, k, v);
        let sym = self.odd(a) && self.odd(b);
        self.put(b, a, k, if sym { v } else { md(-(v as i128)) });
    }

    /// `L(n,m)`: `[X0, X_i] = X_{i+1}` for `1 <= i < n`,
    /// `[X0, Y_j] = Y_{j+1}` for `j < m`.
    pub fn model(n: usize, m: usize) -> Self {
        let mut d = Dense::zero(n, m);
        for i in 1..n {
            d.set_pair(0, i, i + 1, 1);
        }
        for j in 1..m {
            d.set_pair(0, n + j, n + j + 1, 1);
        }
        d
    }

    pub fn from_algebra(a: &SuperAlgebra) -> Self {
        let (n, m) = (a.n(), a.m());
        let mut d = Dense::zero(n, m);
        let basis = a.basis();
        for (ia, &x) in basis.iter().enumerate() {
            for (ib, &y) in basis.iter().enumerate() {
                for (e, c) in a.bracket_basis(x, y).iter() {
                    d.put(ia, ib, slot(n, e), rat(c));
                }
            }
        }
        d
    }

    /// Reads a cochain through its stored entries only, applying the
    /// symmetry rules here rather than through the library.
    pub fn from_cochain(c: &Cochain2) -> Self {
        let (n, m) = (c.n(), c.m());
        let mut d = Dense::zero(n, m);
        for (part, i, j, v) in c.entries() {
            let (a, b) = match part {
                Part::Psi => (i, j),
                Part::Rho => (i, n + j),
                Part::B => (n + i, n + j),
            };
            for (e, x) in v.iter() {
                d.set_pair(a, b, slot(n, e), rat(x));
            }
        }
        d
    }

    pub fn lin(&self, s: u64, other: &Dense) -> Dense {
        let mut out = self.clone();
        for (o, x) in out.t.iter_mut().zip(&other.t) {
            *o = add(*o, mul(s, *x));
        }
        out
    }

    /// Graded Jacobiator on every ordered triple, flattened.
    pub fn jacobiator(&self) -> Vec<u64> {
        let d = self.dim;
        let par = |a: usize| u64::from(self.odd(a));
        let sign = |a: usize, b: usize| if par(a) * par(b) == 1 { P - 1 } else { 1 };
        let mut out = Vec::with_capacity(d * d * d * d);
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut v = vec![0u64; d];
                    for (x, y, z, s) in [(a, b, c, sign(c, a)), (b, c, a, sign(a, b)), (c, a, b, sign(b, c))] {
                        for k in 0..d {
                            let inner = self.at(y, z, k);
                            if inner == 0 {
                                continue;
                            }
                            for (l, slot) in v.iter_mut().enumerate() {
                                *slot = add(*slot, mul(s, mul(inner, self.at(x, k, l))));
                            }
                        }
                    }
                    out.extend(v);
                }
            }
        }
        out
    }

    pub fn is_lie(&self) -> bool {
        self.jacobiator().iter().all(|&x| x == 0)
    }
}

pub fn slot(n: usize, e: BasisElement) -> usize {
    match e {
        BasisElement::X(i) => i,
        BasisElement::Y(j) => n + j,
    }
}

/// Linear part of `phi -> Jac(mu + phi)`, via `Jac(mu+phi) - Jac(mu-phi) = 2 L(phi)`.
pub fn linearized(mu: &Dense, phi: &Dense) -> Vec<u64> {
    let plus = mu.lin(1, phi).jacobiator();
    let minus = mu.lin(P - 1, phi).jacobiator();
    let half = inv(2);
    plus.iter().zip(&minus).map(|(p, q)| mul(half, add(*p, P - q))).collect()
}

pub fn is_cocycle(mu: &Dense, phi: &Cochain2) -> bool {
    linearized(mu, &Dense::from_cochain(phi)).iter().all(|&x| x == 0)
}

pub fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let iv = inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = mul(*x, iv);
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = add(*x, P - mul(f, *y));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Even 2-cochain unit vectors: one per (stored key, target), hand-enumerated.
pub fn unit_cochains(n: usize, m: usize, parts: &[Part]) -> Vec<Cochain2> {
    use filiform_core::SuperVector;
    use BasisElement::{X, Y};
    let mut out = Vec::new();
    let mut push = |a: BasisElement, b: BasisElement, t: BasisElement| {
        out.push(Cochain2::zero(n, m).with(a, b, SuperVector::basis(t)).unwrap());
    };
    if parts.contains(&Part::Psi) {
        for i in 0..=n {
            for j in i + 1..=n {
                for k in 0..=n {
                    push(X(i), X(j), X(k));
                }
            }
        }
    }
    if parts.contains(&Part::Rho) {
        for i in 0..=n {
            for t in 1..=m {
                for r in 1..=m {
                    push(X(i), Y(t), Y(r));
                }
            }
        }
    }
    if parts.contains(&Part::B) {
        for t in 1..=m {
            for r in t..=m {
                for k in 0..=n {
                    push(Y(t), Y(r), X(k));
                }
            }
        }
    }
    out
}

/// `dim` of the cocycles inside the span of the given unit cochains:
/// number of units minus the rank of the linearized Jacobiator.
pub fn cocycle_dim(mu: &Dense, units: &[Cochain2]) -> usize {
    let images: Vec<Vec<u64>> = units.iter().map(|u| linearized(mu, &Dense::from_cochain(u))).collect();
    // rank of the map = rank of the image vectors
    units.len() - rank_mod_p(images)
}
