use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bilinear::{bidegree, BilinearMap, Triple};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::superalgebra::{BasisElement, Parity, SuperVector};

use BasisElement::{X, Y};

/// The three homogeneous blocks of an even 2-cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    /// `G0 x G0 -> G0`, antisymmetric.
    Psi,
    /// `G0 x G1 -> G1`.
    Rho,
    /// `G1 x G1 -> G0`, symmetric.
    B,
}

impl Part {
    pub const ALL: [Part; 3] = [Part::Psi, Part::Rho, Part::B];

    pub fn name(self) -> &'static str {
        match self {
            Part::Psi => "psi",
            Part::Rho => "rho",
            Part::B => "b",
        }
    }

    /// Parity of the values in this block.
    pub fn target_parity(self) -> Parity {
        match self {
            Part::Psi | Part::B => Parity::Even,
            Part::Rho => Parity::Odd,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Part {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi" => Ok(Part::Psi),
            "rho" => Ok(Part::Rho),
            "b" => Ok(Part::B),
            other => Err(Error::InvalidPart(other.to_string())),
        }
    }
}

/// Where the value on `(a, b)` is stored: block, key and the sign relating
/// `c(a, b)` to the stored value.
pub fn slot_of(a: BasisElement, b: BasisElement) -> Option<(Part, usize, usize, i64)> {
    match (a, b) {
        (X(i), X(j)) if i < j => Some((Part::Psi, i, j, 1)),
        (X(i), X(j)) if i > j => Some((Part::Psi, j, i, -1)),
        (X(_), X(_)) => None,
        (X(i), Y(t)) => Some((Part::Rho, i, t, 1)),
        (Y(t), X(i)) => Some((Part::Rho, i, t, -1)),
        (Y(t), Y(r)) => Some((Part::B, t.min(r), t.max(r), 1)),
    }
}

/// An even 1-cochain: `X_i -> G0`, `Y_t -> G1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain1 {
    n: usize,
    m: usize,
    even: BTreeMap<usize, SuperVector>,
    odd: BTreeMap<usize, SuperVector>,
}

impl Cochain1 {
    pub fn zero(n: usize, m: usize) -> Self {
        Cochain1 { n, m, even: BTreeMap::new(), odd: BTreeMap::new() }
    }

    pub fn identity(n: usize, m: usize) -> Self {
        let mut c = Cochain1::zero(n, m);
        for i in 0..=n {
            c.even.insert(i, SuperVector::basis(X(i)));
        }
        for t in 1..=m {
            c.odd.insert(t, SuperVector::basis(Y(t)));
        }
        c
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn set(&mut self, e: BasisElement, v: SuperVector) -> Result<()> {
        if !e.in_range(self.n, self.m) {
            return Err(Error::OutOfRange(format!("{e} is not a basis element")));
        }
        if !v.is_homogeneous_of(e.parity()) || !v.in_range(self.n, self.m) {
            return Err(Error::Malformed(format!("value {v} on {e} is not of parity {:?}", e.parity())));
        }
        let (map, key) = match e {
            X(i) => (&mut self.even, i),
            Y(t) => (&mut self.odd, t),
        };
        if v.is_zero() {
            map.remove(&key);
        } else {
            map.insert(key, v);
        }
        Ok(())
    }

    pub fn with(mut self, e: BasisElement, v: SuperVector) -> Result<Self> {
        self.set(e, v)?;
        Ok(self)
    }

    pub fn apply_basis(&self, e: BasisElement) -> SuperVector {
        let value = match e {
            X(i) => self.even.get(&i),
            Y(t) => self.odd.get(&t),
        };
        value.cloned().unwrap_or_default()
    }

    pub fn apply(&self, v: &SuperVector) -> SuperVector {
        let mut out = SuperVector::zero();
        for (e, c) in v.iter() {
            out.add_scaled(c, &self.apply_basis(e));
        }
        out
    }

    /// Random even 1-cochain with small integer coefficients.
    pub fn random<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R, density: f64) -> Self {
        let mut c = Cochain1::zero(n, m);
        for i in 0..=n {
            let v = random_vector(rng, (0..=n).map(X), density);
            c.set(X(i), v).expect("parity by construction");
        }
        for t in 1..=m {
            let v = random_vector(rng, (1..=m).map(Y), density);
            c.set(Y(t), v).expect("parity by construction");
        }
        c
    }
}

fn random_vector<R: Rng + ?Sized>(
    rng: &mut R,
    targets: impl Iterator<Item = BasisElement>,
    density: f64,
) -> SuperVector {
    SuperVector::from_terms(targets.filter_map(|e| {
        if rng.gen_bool(density) {
            Some((e, Rational::from_integer(rng.gen_range(-3..=3))))
        } else {
            None
        }
    }))
}

/// An even 2-cochain stored by canonical key in each block.
///
/// `psi` is keyed by `(i, j)` with `i < j`, `rho` by `(i, t)` for the pair
/// `(X_i, Y_t)` and `b` by `(t, r)` with `t <= r`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Cochain2 {
    n: usize,
    m: usize,
    psi: BTreeMap<(usize, usize), SuperVector>,
    rho: BTreeMap<(usize, usize), SuperVector>,
    b: BTreeMap<(usize, usize), SuperVector>,
}

impl Cochain2 {
    pub fn zero(n: usize, m: usize) -> Self {
        Cochain2 { n, m, ..Default::default() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn block(&self, part: Part) -> &BTreeMap<(usize, usize), SuperVector> {
        match part {
            Part::Psi => &self.psi,
            Part::Rho => &self.rho,
            Part::B => &self.b,
        }
    }

    fn block_mut(&mut self, part: Part) -> &mut BTreeMap<(usize, usize), SuperVector> {
        match part {
            Part::Psi => &mut self.psi,
            Part::Rho => &mut self.rho,
            Part::B => &mut self.b,
        }
    }

    /// Sets `c(a, b) = v`, filling in the value on `(b, a)` by symmetry.
    pub fn set(&mut self, a: BasisElement, b: BasisElement, v: SuperVector) -> Result<()> {
        let (n, m) = (self.n, self.m);
        if !a.in_range(n, m) || !b.in_range(n, m) {
            return Err(Error::OutOfRange(format!("({a},{b}) is not a pair of basis elements")));
        }
        let Some((part, i, j, sign)) = slot_of(a, b) else {
            if v.is_zero() {
                return Ok(());
            }
            return Err(Error::Malformed(format!("({a},{a}) must map to zero")));
        };
        if !v.is_homogeneous_of(part.target_parity()) || !v.in_range(n, m) {
            return Err(Error::Malformed(format!("value {v} on ({a},{b}) has the wrong parity")));
        }
        self.put(part, i, j, v.scaled(&Rational::from_integer(sign)));
        Ok(())
    }

    pub fn with(mut self, a: BasisElement, b: BasisElement, v: SuperVector) -> Result<Self> {
        self.set(a, b, v)?;
        Ok(self)
    }

    fn put(&mut self, part: Part, i: usize, j: usize, v: SuperVector) {
        if v.is_zero() {
            self.block_mut(part).remove(&(i, j));
        } else {
            self.block_mut(part).insert((i, j), v);
        }
    }

    /// Adds `c * e_target` to the stored value at the canonical key.
    pub fn add_entry(&mut self, part: Part, i: usize, j: usize, target: BasisElement, c: &Rational) {
        let mut v = self.block(part).get(&(i, j)).cloned().unwrap_or_default();
        v.add_term(target, c);
        self.put(part, i, j, v);
    }

    /// Stored value at a canonical key.
    pub fn get(&self, part: Part, i: usize, j: usize) -> SuperVector {
        self.block(part).get(&(i, j)).cloned().unwrap_or_default()
    }

    /// `(part, i, j, value)` for every nonzero stored value, block by block.
    pub fn entries(&self) -> impl Iterator<Item = (Part, usize, usize, &SuperVector)> {
        Part::ALL.into_iter().flat_map(move |p| self.block(p).iter().map(move |(&(i, j), v)| (p, i, j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.psi.is_empty() && self.rho.is_empty() && self.b.is_empty()
    }

    /// Blocks holding at least one nonzero value.
    pub fn parts(&self) -> Vec<Part> {
        Part::ALL.into_iter().filter(|&p| !self.block(p).is_empty()).collect()
    }

    /// Copy keeping only one block.
    pub fn part(&self, part: Part) -> Cochain2 {
        let mut out = Cochain2::zero(self.n, self.m);
        *out.block_mut(part) = self.block(part).clone();
        out
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &Cochain2) {
        for (part, i, j, v) in other.entries() {
            let mut cur = self.get(part, i, j);
            cur.add_scaled(c, v);
            self.put(part, i, j, cur);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Cochain2 {
        let mut out = Cochain2::zero(self.n, self.m);
        out.add_scaled(c, self);
        out
    }

    /// Checks key ranges and the parity of every value.
    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.n, self.m);
        for (part, i, j, v) in self.entries() {
            let keys_ok = match part {
                Part::Psi => i < j && j <= n,
                Part::Rho => i <= n && (1..=m).contains(&j),
                Part::B => 1 <= i && i <= j && j <= m,
            };
            if !keys_ok {
                return Err(Error::Malformed(format!("{part} key ({i},{j}) out of range")));
            }
            if !v.is_homogeneous_of(part.target_parity()) || !v.in_range(n, m) {
                return Err(Error::Malformed(format!(
                    "{part}({i},{j}) = {v} is not a {:?} vector of the algebra",
                    part.target_parity()
                )));
            }
        }
        Ok(())
    }

    /// The same map on `G0 x G0` viewed in an algebra with `m` odd basis
    /// vectors. Only defined for cochains supported on `G0 x G0`.
    pub fn with_odd_dimension(&self, m: usize) -> Result<Cochain2> {
        if !self.rho.is_empty() || !self.b.is_empty() {
            return Err(Error::Precondition("cochain has values involving G1".into()));
        }
        Ok(Cochain2 { m, ..self.clone() })
    }

    /// True when `c(X0, .) = 0`.
    pub fn kills_x0(&self) -> bool {
        self.psi.keys().all(|&(i, _)| i != 0) && self.rho.keys().all(|&(i, _)| i != 0)
    }

    /// True when some value has a nonzero `X0` coefficient.
    pub fn image_meets_x0(&self) -> bool {
        self.entries().any(|(_, _, _, v)| !v.coeff(X(0)).is_zero())
    }

    /// Random even 2-cochain with small integer coefficients.
    pub fn random<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R, density: f64) -> Self {
        let mut c = Cochain2::zero(n, m);
        for i in 0..=n {
            for j in i + 1..=n {
                c.put(Part::Psi, i, j, random_vector(rng, (0..=n).map(X), density));
            }
            for t in 1..=m {
                c.put(Part::Rho, i, t, random_vector(rng, (1..=m).map(Y), density));
            }
        }
        for t in 1..=m {
            for r in t..=m {
                c.put(Part::B, t, r, random_vector(rng, (0..=n).map(X), density));
            }
        }
        c
    }

    pub fn to_json(&self) -> String {
        let wire = |part: Part| -> Vec<WireEntry> {
            self.block(part)
                .iter()
                .flat_map(|(&(i, j), v)| v.iter().map(move |(target, c)| WireEntry { i, j, target, v: c.clone() }))
                .collect()
        };
        let doc = WireCochain { psi: wire(Part::Psi), rho: wire(Part::Rho), b: wire(Part::B) };
        serde_json::to_string_pretty(&doc).expect("cochains always serialize")
    }

    /// Reads the `{psi, rho, b}` wire form for the algebra with parameters
    /// `(n, m)`. Keys must be canonical and every value must have the
    /// parity of its block.
    pub fn from_json(n: usize, m: usize, s: &str) -> Result<Self> {
        let doc: WireCochain = serde_json::from_str(s)?;
        let mut c = Cochain2::zero(n, m);
        for (part, entries) in [(Part::Psi, doc.psi), (Part::Rho, doc.rho), (Part::B, doc.b)] {
            for e in entries {
                if !e.target.in_range(n, m) {
                    return Err(Error::Malformed(format!("target {} out of range", e.target)));
                }
                c.add_entry(part, e.i, e.j, e.target, &e.v);
            }
        }
        c.validate()?;
        Ok(c)
    }
}

impl BilinearMap for Cochain2 {
    fn dims(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    fn apply_basis(&self, a: BasisElement, b: BasisElement) -> SuperVector {
        match slot_of(a, b) {
            None => SuperVector::zero(),
            Some((part, i, j, sign)) => match self.block(part).get(&(i, j)) {
                None => SuperVector::zero(),
                Some(v) if sign == 1 => v.clone(),
                Some(v) => -v,
            },
        }
    }
}

impl fmt::Debug for Cochain2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain2(n={}, m={}) {{", self.n, self.m)?;
        for (part, i, j, v) in self.entries() {
            let (a, b) = match part {
                Part::Psi => (X(i), X(j)),
                Part::Rho => (X(i), Y(j)),
                Part::B => (Y(i), Y(j)),
            };
            write!(f, " ({a},{b}) -> {v};")?;
        }
        write!(f, " }}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireEntry {
    i: usize,
    j: usize,
    target: BasisElement,
    v: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireCochain {
    #[serde(default)]
    psi: Vec<WireEntry>,
    #[serde(default)]
    rho: Vec<WireEntry>,
    #[serde(default)]
    b: Vec<WireEntry>,
}

/// An even 3-cochain known on canonical triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain3 {
    n: usize,
    m: usize,
    values: BTreeMap<Triple, SuperVector>,
}

impl Cochain3 {
    pub fn zero(n: usize, m: usize) -> Self {
        Cochain3 { n, m, values: BTreeMap::new() }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub(crate) fn insert(&mut self, t: Triple, v: SuperVector) {
        if !v.is_zero() {
            self.values.insert(t, v);
        }
    }

    pub fn get(&self, t: &Triple) -> SuperVector {
        self.values.get(t).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero values in canonical triple order.
    pub fn iter(&self) -> impl Iterator<Item = (&Triple, &SuperVector)> {
        self.values.iter()
    }

    pub fn first_nonzero(&self) -> Option<(&Triple, &SuperVector)> {
        self.values.iter().next()
    }

    /// Every value has the parity of an even cochain: even on bidegrees
    /// `(3,0)` and `(1,2)`, odd on `(2,1)` and `(0,3)`.
    pub fn check_grading(&self) -> bool {
        self.values.iter().all(|(t, v)| {
            let odd = bidegree(t).1 % 2 == 1;
            v.is_homogeneous_of(if odd { Parity::Odd } else { Parity::Even })
        })
    }
}

pub fn format_triple(t: &Triple) -> String {
    format!("({},{},{})", t[0], t[1], t[2])
}
