//! Formal one-parameter deformations `nu_t = nu_0 + t nu_1 + t^2 nu_2 + ...`
//! of a superalgebra law, their order-by-order equations, the nilpotency
//! condition on `nu_t` and the constraints on filiform perturbations of
//! `L_{n,m}`.

use serde::Serialize;

use crate::bilinear::{canonical_triples, compose, BilinearMap, Triple};
use crate::cohomology::{differential2, format_triple, Cochain2, Cochain3};
use crate::error::{Error, Result};
use crate::linalg::{Rational, Subspace};
use crate::superalgebra::{BasisElement, SuperAlgebra, SuperVector};

use BasisElement::{X, Y};

/// A law `nu_0` together with the first terms of a formal deformation.
#[derive(Clone, Debug)]
pub struct Deformation {
    base: SuperAlgebra,
    terms: Vec<Cochain2>,
}

impl Deformation {
    pub fn new(base: SuperAlgebra, terms: Vec<Cochain2>) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if (t.n(), t.m()) != (base.n(), base.m()) {
                return Err(Error::Malformed(format!(
                    "term {} has dimensions ({}, {}), base has ({}, {})",
                    i + 1,
                    t.n(),
                    t.m(),
                    base.n(),
                    base.m()
                )));
            }
            t.validate()?;
        }
        Ok(Deformation { base, terms })
    }

    pub fn base(&self) -> &SuperAlgebra {
        &self.base
    }

    pub fn terms(&self) -> &[Cochain2] {
        &self.terms
    }

    /// Index of the last known term.
    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `nu_i`, zero beyond the known terms.
    fn nu(&self, i: usize) -> Option<&dyn BilinearMap> {
        match i {
            0 => Some(&self.base),
            _ => self.terms.get(i - 1).map(|t| t as &dyn BilinearMap),
        }
    }

    /// `nu_t(x, v)` for `v` a polynomial in `t` truncated at degree `top`.
    fn apply_left(&self, x: BasisElement, v: &[SuperVector], top: usize) -> Vec<SuperVector> {
        let mut out = vec![SuperVector::zero(); top + 1];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate().skip(j) {
                if let Some(nu) = self.nu(i - j) {
                    slot.add_scaled(&Rational::one(), &nu.apply(&SuperVector::basis(x), vj));
                }
            }
        }
        out
    }
}

/// Coefficient of `t^k` in the graded Jacobiator of `nu_t`:
/// `sum_{i=0}^{k} nu_i o nu_{k-i}` on every canonical triple.
pub fn deformation_residual(d: &Deformation, k: usize) -> Result<Cochain3> {
    if k > d.order() {
        return Err(Error::OutOfRange(format!("equation {k} needs terms up to order {k}, have {}", d.order())));
    }
    let (n, m) = (d.base.n(), d.base.m());
    let mut out = Cochain3::zero(n, m);
    for t in canonical_triples(n, m) {
        let mut v = SuperVector::zero();
        for i in 0..=k {
            let (f, g) = (d.nu(i).expect("i <= order"), d.nu(k - i).expect("k - i <= order"));
            v.add_scaled(&Rational::one(), &compose(f, g, &t));
        }
        out.insert(t, v);
    }
    Ok(out)
}

/// The first-order equation: `phi` is an even 2-cocycle of `base`.
pub fn check_first_order(base: &SuperAlgebra, phi: &Cochain2) -> Result<bool> {
    Ok(differential2(base, phi)?.is_zero())
}

/// `phi o phi` on every canonical triple.
pub fn nr_square(phi: &Cochain2) -> Cochain3 {
    let mut out = Cochain3::zero(phi.n(), phi.m());
    for t in canonical_triples(phi.n(), phi.m()) {
        out.insert(t, compose(phi, phi, &t));
    }
    out
}

/// The law `mu + phi` with its Jacobi verdict.
#[derive(Clone, Debug)]
pub struct Perturbed {
    pub algebra: SuperAlgebra,
    /// Triples where the graded Jacobi identity fails.
    pub jacobi_failures: Vec<Triple>,
}

impl Perturbed {
    pub fn is_lie(&self) -> bool {
        self.jacobi_failures.is_empty()
    }
}

/// Adds `phi` to the law of `base`. Requires `phi(X0, .) = 0` and `X0`
/// outside the image of `phi`.
pub fn apply_cocycle(base: &SuperAlgebra, phi: &Cochain2) -> Result<Perturbed> {
    if !phi.kills_x0() {
        return Err(Error::Precondition("phi(X0, .) must vanish".into()));
    }
    if phi.image_meets_x0() {
        return Err(Error::Precondition("X0 must not lie in the image of phi".into()));
    }
    let algebra = base.plus(phi)?;
    let jacobi_failures = algebra.check_jacobi();
    Ok(Perturbed { algebra, jacobi_failures })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintCheck {
    pub constraint: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiliformConstraints {
    pub checks: Vec<ConstraintCheck>,
    /// Common value `alpha` with `Phi(X_i, X_{n-i})[X_n] = (-1)^i alpha`,
    /// when one exists.
    pub alpha: Option<Rational>,
}

impl FiliformConstraints {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(constraint: &str, witnesses: Vec<String>) -> ConstraintCheck {
    ConstraintCheck { constraint: constraint.to_string(), passed: witnesses.is_empty(), witnesses }
}

/// Lowest index present in `v`, for a homogeneous vector.
fn lowest(v: &SuperVector) -> Option<usize> {
    v.support().map(BasisElement::index).min()
}

/// Checks `phi` against the filtrations `S0_i = span(X_i..X_n)`,
/// `S1_j = span(Y_j..Y_m)`:
/// `phi(X0, .) = 0`; `phi(S0_i, S0_j)` in `S0_{i+j+1}` for `i+j < n`
/// (hence in `S0_n` beyond); `phi(X_i, X_{n-i})[X_n] = (-1)^i alpha` with
/// `alpha = 0` for `n` even; `phi(S0_i, S1_j)` in `S1_{i+j}`.
pub fn check_filiform_constraints(n: usize, m: usize, phi: &Cochain2) -> Result<FiliformConstraints> {
    if (phi.n(), phi.m()) != (n, m) {
        return Err(Error::Malformed(format!("phi has dimensions ({}, {}), expected ({n}, {m})", phi.n(), phi.m())));
    }
    let value = |a, b| phi.apply_basis(a, b);

    let mut kills = Vec::new();
    for e in crate::bilinear::basis_elements(n, m) {
        let v = value(X(0), e);
        if !v.is_zero() {
            kills.push(format!("phi(X0,{e}) = {v}"));
        }
    }

    let mut even = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let floor = (a + b).min(n - 1) + 1;
            let v = value(X(a), X(b));
            if lowest(&v).is_some_and(|l| l < floor) {
                even.push(format!("phi(X{a},X{b}) = {v} not in S0_{floor}"));
            }
        }
    }

    let mut diagonal = Vec::new();
    let mut alpha: Option<Rational> = None;
    for i in 1..n {
        let c = value(X(i), X(n - i)).coeff(X(n));
        // (-1)^i alpha = c
        let a = if i % 2 == 0 { c.clone() } else { -c.clone() };
        match &alpha {
            None => alpha = Some(a),
            Some(prev) if *prev != a => {
                diagonal.push(format!(
                    "phi(X{i},X{}) has X{n}-coefficient {c}, expected {}",
                    n - i,
                    if i % 2 == 0 { prev.clone() } else { -prev.clone() }
                ));
            }
            Some(_) => {}
        }
    }
    if n.is_multiple_of(2) {
        if let Some(a) = alpha.as_ref().filter(|a| !a.is_zero()) {
            diagonal.push(format!("alpha = {a} but n = {n} is even"));
        }
    }
    let alpha = if diagonal.is_empty() { Some(alpha.unwrap_or_else(Rational::zero)) } else { None };

    let mut mixed = Vec::new();
    for a in 1..=n {
        for b in 1..=m {
            let v = value(X(a), Y(b));
            if lowest(&v).is_some_and(|l| l < a + b) {
                mixed.push(format!("phi(X{a},Y{b}) = {v} not in S1_{}", a + b));
            }
        }
    }

    Ok(FiliformConstraints {
        checks: vec![
            check("phi(X0, Z) = 0", kills),
            check("phi(S0_i, S0_j) in S0_{i+j+1}", even),
            check("phi(X_i, X_{n-i}) = (-1)^i alpha X_n", diagonal),
            check("phi(S0_i, S1_j) in S1_{i+j}", mixed),
        ],
        alpha,
    })
}

/// Truncated polynomial vectors, flattened degree by degree, for span
/// computations over the ground field.
fn flatten(a: &SuperAlgebra, v: &[SuperVector]) -> Vec<Rational> {
    let dim = a.dim();
    let mut out = vec![Rational::zero(); dim * v.len()];
    for (deg, vd) in v.iter().enumerate() {
        for (e, c) in vd.iter() {
            out[deg * dim + a.slot(e)] = c.clone();
        }
    }
    out
}

fn unflatten(a: &SuperAlgebra, flat: &[Rational]) -> Vec<SuperVector> {
    flat.chunks(a.dim())
        .map(|chunk| {
            SuperVector::from_terms(
                chunk.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(s, c)| (a.element(s), c.clone())),
            )
        })
        .collect()
}

/// Spanning set of all chains `nu_t(x_1, nu_t(x_2, ... nu_t(x_depth, v)))`
/// with `x_i` even basis vectors and `v` in `start`, mod `t^{top+1}`.
fn chain_span(d: &Deformation, start: Vec<BasisElement>, depth: usize, top: usize) -> Subspace {
    let a = &d.base;
    let len = a.dim() * (top + 1);
    let mut current = Subspace::span(
        len,
        &start
            .into_iter()
            .map(|e| {
                let mut v = vec![SuperVector::zero(); top + 1];
                v[0] = SuperVector::basis(e);
                flatten(a, &v)
            })
            .collect::<Vec<_>>(),
    );
    let evens: Vec<BasisElement> = (0..=a.n()).map(X).collect();
    for _ in 0..depth {
        if current.dim() == 0 {
            break;
        }
        let mut next = Vec::new();
        for v in current.basis() {
            let poly = unflatten(a, &v);
            for &x in &evens {
                next.push(flatten(a, &d.apply_left(x, &poly, top)));
            }
        }
        current = Subspace::span(len, &next);
    }
    current
}

/// Nilpotency of `nu_t` modulo `t^{truncation+1}`: every chain of `n`
/// even brackets applied to an even vector and every chain of `m` even
/// brackets applied to an odd vector vanishes.
pub fn check_condition_n(d: &Deformation, truncation: usize) -> bool {
    let (n, m) = (d.base.n(), d.base.m());
    let even = chain_span(d, (0..=n).map(X).collect(), n, truncation);
    let odd = chain_span(d, (1..=m).map(Y).collect(), m, truncation);
    even.dim() == 0 && odd.dim() == 0
}

/// Everything known about `L_{n,m} + phi`.
#[derive(Clone, Debug, Serialize)]
pub struct DeformationReport {
    pub jacobi: bool,
    pub jacobi_witness: Option<String>,
    pub first_order: bool,
    pub second_order: bool,
    pub filiform_constraints: FiliformConstraints,
    #[serde(rename = "condition_N")]
    pub condition_n: bool,
    pub nilindex: Option<(usize, usize)>,
}

/// Runs every check on `L_{n,m}` perturbed by `phi`, viewing `phi` as
/// the first-order term of `nu_t = mu + t phi`.
pub fn analyze(n: usize, m: usize, phi: &Cochain2, truncation: usize) -> Result<DeformationReport> {
    let base = SuperAlgebra::model(n, m);
    let algebra = base.plus(phi)?;
    let failures = algebra.check_jacobi();
    let d = Deformation::new(base.clone(), vec![phi.clone()])?;
    Ok(DeformationReport {
        jacobi: failures.is_empty(),
        jacobi_witness: failures.first().map(format_triple),
        first_order: check_first_order(&base, phi)?,
        second_order: nr_square(phi).is_zero(),
        filiform_constraints: check_filiform_constraints(n, m, phi)?,
        condition_n: check_condition_n(&d, truncation),
        nilindex: algebra.super_nilindex(),
    })
}
