use serde::Serialize;

use super::{binom, sign};
use crate::cohomology::{ensure_cocycle, rank_of, z02_component, Cochain2, CochainSpace, Part};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::superalgebra::{BasisElement, SuperAlgebra, SuperVector};

use BasisElement::{X, Y};

fn check_range(what: &str, ok: bool, detail: String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("{what}: {detail}")))
    }
}

/// `Psi_{k,s}` on `L_n` straight from the closed form, without checking
/// the cocycle condition:
/// `Psi(X_i, X_j) = (-1)^{k-i} C(j-k-1, k-i) X_{s+i+j-2k-1}` for
/// `1 <= i < j`, `k-i <= j-k-1`; indices above `n` vanish.
pub fn psi_ks_raw(n: usize, k: usize, s: usize) -> Result<Cochain2> {
    check_range(
        "Psi",
        1 <= k && k < n && 2 * k <= s && s <= n,
        format!("(k, s) = ({k}, {s}) needs 1 <= k <= n-1 and 2k <= s <= n with n = {n}"),
    )?;
    let (k, s) = (k as i64, s as i64);
    let mut c = Cochain2::zero(n, 0);
    for i in 1..=n as i64 {
        for j in i + 1..=n as i64 {
            if k - i > j - k - 1 {
                continue;
            }
            let coeff = sign(k - i) * binom(j - k - 1, k - i);
            let target = s + i + j - 2 * k - 1;
            if coeff != 0 && (0..=n as i64).contains(&target) {
                c.set(
                    X(i as usize),
                    X(j as usize),
                    SuperVector::term(X(target as usize), Rational::from_integer(coeff)),
                )?;
            }
        }
    }
    Ok(c)
}

/// `Psi_{k,s}`, checked to be a cocycle of `L_n`.
pub fn psi_ks(n: usize, k: usize, s: usize) -> Result<Cochain2> {
    let c = psi_ks_raw(n, k, s)?;
    ensure_cocycle(&SuperAlgebra::model(n, 0), &c, &format!("Psi_{{{k},{s}}}"))?;
    Ok(c)
}

/// How the index of the target `Y` in `rho_{k,s}(X_j, Y_r)` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RhoIndex {
    /// `Y_{s+r-1+j-k}`: keeps `rho(X_k, Y_1) = Y_s` and is compatible
    /// with the shift by `ad X0`.
    Shifted,
    /// `Y_{s+r-1-j+k}`, the form as printed.
    AsPrinted,
}

/// `rho_{k,s}` from the closed form without the cocycle check:
/// `rho(X_j, Y_r) = (-1)^{k-j} C(r-1, k-j) Y_index` for
/// `k-r+1 <= j <= k`, `j >= 1`; indices above `m` vanish.
pub fn rho_ks_raw(n: usize, m: usize, k: usize, s: usize, reading: RhoIndex) -> Result<Cochain2> {
    check_range(
        "rho",
        1 <= k && k <= n && 1 <= s && s <= m,
        format!("(k, s) = ({k}, {s}) needs 1 <= k <= {n} and 1 <= s <= {m}"),
    )?;
    let (k, s) = (k as i64, s as i64);
    let mut c = Cochain2::zero(n, m);
    for j in 1..=n as i64 {
        for r in 1..=m as i64 {
            if !(k - r < j && j <= k) {
                continue;
            }
            let coeff = sign(k - j) * binom(r - 1, k - j);
            let target = match reading {
                RhoIndex::Shifted => s + r - 1 + j - k,
                RhoIndex::AsPrinted => s + r - 1 - j + k,
            };
            if coeff != 0 && (1..=m as i64).contains(&target) {
                c.set(
                    X(j as usize),
                    Y(r as usize),
                    SuperVector::term(Y(target as usize), Rational::from_integer(coeff)),
                )?;
            }
        }
    }
    Ok(c)
}

/// `rho_{k,s}` with the shifted index, checked to be a cocycle of `L_{n,m}`.
pub fn rho_ks(n: usize, m: usize, k: usize, s: usize) -> Result<Cochain2> {
    let c = rho_ks_raw(n, m, k, s, RhoIndex::Shifted)?;
    ensure_cocycle(&SuperAlgebra::model(n, m), &c, &format!("rho_{{{k},{s}}}"))?;
    Ok(c)
}

/// The map with the single value `(X0, Y_i) -> Y_j`, checked to be a cocycle.
pub fn varrho_ij(n: usize, m: usize, i: usize, j: usize) -> Result<Cochain2> {
    check_range(
        "varrho",
        (1..=m).contains(&i) && (1..=m).contains(&j),
        format!("(i, j) = ({i}, {j}) needs indices in 1..={m}"),
    )?;
    let c = Cochain2::zero(n, m).with(X(0), Y(i), SuperVector::basis(Y(j)))?;
    ensure_cocycle(&SuperAlgebra::model(n, m), &c, &format!("varrho_{{{i},{j}}}"))?;
    Ok(c)
}

/// Parameter pairs in the stated range whose construction fails the
/// cocycle check, for each family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub n: usize,
    pub m: usize,
    pub psi_checked: usize,
    pub psi_failures: Vec<(usize, usize)>,
    pub rho_checked: usize,
    pub rho_failures: Vec<(usize, usize)>,
    pub varrho_checked: usize,
    pub varrho_failures: Vec<(usize, usize)>,
}

fn failed(r: Result<Cochain2>) -> Result<bool> {
    match r {
        Ok(_) => Ok(false),
        Err(Error::NotACocycle { .. }) => Ok(true),
        Err(e) => Err(e),
    }
}

/// Runs every `Psi_{k,s}`, `rho_{k,s}` and `varrho_{i,j}` in range through
/// the cocycle check on `L_{n,m}`.
pub fn family_membership(n: usize, m: usize) -> Result<MembershipReport> {
    let a = SuperAlgebra::model(n, m);
    let mut report = MembershipReport {
        n,
        m,
        psi_checked: 0,
        psi_failures: vec![],
        rho_checked: 0,
        rho_failures: vec![],
        varrho_checked: 0,
        varrho_failures: vec![],
    };
    for k in 1..n {
        for s in 2 * k..=n {
            report.psi_checked += 1;
            let c = psi_ks_raw(n, k, s)?.with_odd_dimension(m)?;
            if failed(ensure_cocycle(&a, &c, "Psi").map(|_| c))? {
                report.psi_failures.push((k, s));
            }
        }
    }
    for k in 1..=n {
        for s in 1..=m {
            report.rho_checked += 1;
            if failed(rho_ks(n, m, k, s))? {
                report.rho_failures.push((k, s));
            }
        }
    }
    for i in 1..=m {
        for j in 1..=m {
            report.varrho_checked += 1;
            if failed(varrho_ij(n, m, i, j))? {
                report.varrho_failures.push((i, j));
            }
        }
    }
    Ok(report)
}

/// Which `varrho_{i,j}` are taken alongside the `rho_{k,s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarrhoRange {
    /// `1 <= i <= j <= m`.
    Triangular,
    /// `1 <= i, j <= m`.
    Full,
}

impl VarrhoRange {
    pub fn pairs(self, m: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=m {
            for j in 1..=m {
                if self == VarrhoRange::Full || i <= j {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedBasisReport {
    pub n: usize,
    pub m: usize,
    /// `dim` of the cocycles supported on `G0 x G1 -> G1`.
    pub oracle_dim: usize,
    /// `rho_{k,s}` that are cocycles; these are the family members used.
    pub rho_cocycles: Vec<(usize, usize)>,
    pub rho_rank: usize,
    /// Rank of all `n*m` closed-form maps, cocycles or not.
    pub rho_formula_rank: usize,
    pub rank_triangular: usize,
    pub rank_full: usize,
    /// Readings whose family rank equals `oracle_dim`.
    pub matching: Vec<VarrhoRange>,
    /// The family spans the whole cocycle block under this reading.
    pub spans: Option<VarrhoRange>,
}

impl MixedBasisReport {
    /// The reading reproducing the oracle dimension, when exactly one does.
    pub fn resolved(&self) -> Option<VarrhoRange> {
        match self.matching.as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }
}

/// Compares the span of the `rho`/`varrho` families with the cocycles of
/// the `G0 x G1 -> G1` block.
pub fn mixed_basis_check(n: usize, m: usize) -> Result<MixedBasisReport> {
    let a = SuperAlgebra::model(n, m);
    let space = CochainSpace::new(n, m);
    let oracle = z02_component(&a, Part::Rho)?;
    let mut rho = Vec::new();
    let mut rho_pairs = Vec::new();
    let mut formula = Vec::new();
    for k in 1..=n {
        for s in 1..=m {
            formula.push(rho_ks_raw(n, m, k, s, RhoIndex::Shifted)?);
            match rho_ks(n, m, k, s) {
                Ok(c) => {
                    rho.push(c);
                    rho_pairs.push((k, s));
                }
                Err(Error::NotACocycle { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let oracle_space = oracle.subspace();
    let mut ranks = Vec::new();
    let mut spans = None;
    for reading in [VarrhoRange::Triangular, VarrhoRange::Full] {
        let mut family = rho.clone();
        for (i, j) in reading.pairs(m) {
            family.push(varrho_ij(n, m, i, j)?);
        }
        let span = crate::linalg::Subspace::span_sparse(space.dim(), family.iter().map(|c| space.to_sparse(c)));
        assert!(span.is_subspace_of(&oracle_space), "verified cocycles lie in the kernel");
        if span.dim() == oracle.dim() && spans.is_none() {
            spans = Some(reading);
        }
        ranks.push((reading, span.dim()));
    }
    let matching = ranks.iter().filter(|(_, r)| *r == oracle.dim()).map(|(reading, _)| *reading).collect();
    Ok(MixedBasisReport {
        n,
        m,
        oracle_dim: oracle.dim(),
        rho_rank: rank_of(&space, &rho),
        rho_formula_rank: rank_of(&space, &formula),
        rho_cocycles: rho_pairs,
        rank_triangular: ranks[0].1,
        rank_full: ranks[1].1,
        matching,
        spans,
    })
}
