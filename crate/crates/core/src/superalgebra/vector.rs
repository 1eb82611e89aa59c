use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::linalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// `(-1)^(self * other)`.
    pub fn sign_with(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }
}

/// A graded basis vector: `X(i)` spans the even part (`0..=n`), `Y(j)` the
/// odd part (`1..=m`). Even elements order before odd ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    X(usize),
    Y(usize),
}

impl BasisElement {
    pub fn parity(self) -> Parity {
        match self {
            BasisElement::X(_) => Parity::Even,
            BasisElement::Y(_) => Parity::Odd,
        }
    }

    pub fn index(self) -> usize {
        match self {
            BasisElement::X(i) | BasisElement::Y(i) => i,
        }
    }

    pub fn is_even(self) -> bool {
        matches!(self, BasisElement::X(_))
    }

    /// Whether this element exists in a superalgebra with even part
    /// `X0..Xn` and odd part `Y1..Ym`.
    pub fn in_range(self, n: usize, m: usize) -> bool {
        match self {
            BasisElement::X(i) => i <= n,
            BasisElement::Y(j) => (1..=m).contains(&j),
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::X(i) => write!(f, "X{i}"),
            BasisElement::Y(j) => write!(f, "Y{j}"),
        }
    }
}

impl FromStr for BasisElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Malformed(format!("not a basis element: {s:?}"));
        let s = s.trim();
        let (head, idx) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let idx: usize = idx.parse().map_err(|_| bad())?;
        match head {
            "X" => Ok(BasisElement::X(idx)),
            "Y" => Ok(BasisElement::Y(idx)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for BasisElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BasisElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite linear combination of basis elements. Absent keys are zero and
/// no zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SuperVector {
    coeffs: BTreeMap<BasisElement, Rational>,
}

impl SuperVector {
    pub fn zero() -> Self {
        SuperVector::default()
    }

    pub fn basis(e: BasisElement) -> Self {
        Self::term(e, Rational::one())
    }

    pub fn term(e: BasisElement, c: Rational) -> Self {
        let mut v = SuperVector::zero();
        v.add_term(e, &c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisElement, Rational)>) -> Self {
        let mut v = SuperVector::zero();
        for (e, c) in terms {
            v.add_term(e, &c);
        }
        v
    }

    pub fn coeff(&self, e: BasisElement) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisElement, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn support(&self) -> impl Iterator<Item = BasisElement> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `self += c * e`
    pub fn add_term(&mut self, e: BasisElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.coeffs.remove(&e);
                }
            }
            None => {
                self.coeffs.insert(e, c.clone());
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &SuperVector) {
        if c.is_zero() {
            return;
        }
        for (e, v) in other.iter() {
            self.add_term(e, &(c * v));
        }
    }

    pub fn scaled(&self, c: &Rational) -> SuperVector {
        if c.is_zero() {
            return SuperVector::zero();
        }
        SuperVector { coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Parity of a nonzero homogeneous vector; `None` for zero or mixed.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.coeffs.keys().map(|e| e.parity());
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// True for zero and for vectors supported on one parity `p`.
    pub fn is_homogeneous_of(&self, p: Parity) -> bool {
        self.coeffs.keys().all(|e| e.parity() == p)
    }

    pub fn in_range(&self, n: usize, m: usize) -> bool {
        self.coeffs.keys().all(|e| e.in_range(n, m))
    }
}

impl fmt::Display for SuperVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coeffs.iter().enumerate() {
            let (neg, abs) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "{abs} {e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SuperVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&SuperVector> for &SuperVector {
    type Output = SuperVector;
    fn add(self, rhs: &SuperVector) -> SuperVector {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), rhs);
        out
    }
}

impl Sub<&SuperVector> for &SuperVector {
    type Output = SuperVector;
    fn sub(self, rhs: &SuperVector) -> SuperVector {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), rhs);
        out
    }
}

impl Neg for &SuperVector {
    type Output = SuperVector;
    fn neg(self) -> SuperVector {
        self.scaled(&-Rational::one())
    }
}

impl Neg for SuperVector {
    type Output = SuperVector;
    fn neg(mut self) -> SuperVector {
        for c in self.coeffs.values_mut() {
            *c = -&*c;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisElement::{X, Y};

    #[test]
    fn basis_element_text() {
        assert_eq!(X(4).to_string(), "X4");
        assert_eq!("Y12".parse::<BasisElement>().unwrap(), Y(12));
        assert!("Z1".parse::<BasisElement>().is_err());
        assert!("X".parse::<BasisElement>().is_err());
        assert!(X(7) < Y(1));
    }

    #[test]
    fn no_stored_zeros() {
        let mut v = SuperVector::basis(X(1));
        v.add_term(X(1), &Rational::from_integer(-1));
        assert!(v.is_zero());
        assert_eq!(v.parity(), None);
        assert!(v.is_homogeneous_of(Parity::Odd));
    }

    #[test]
    fn display() {
        let v = SuperVector::from_terms([
            (X(2), Rational::one()),
            (X(3), Rational::new(-1, 2)),
            (Y(1), Rational::from_integer(2)),
        ]);
        assert_eq!(v.to_string(), "X2 - 1/2 X3 + 2 Y1");
        assert_eq!(v.parity(), None);
    }
}
