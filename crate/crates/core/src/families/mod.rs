//! Closed-form cocycle families of the model algebras `L_{n,m}`: the
//! even-even maps `Psi_{k,s}`, the mixed maps `rho_{k,s}` and
//! `varrho_{i,j}`, the odd-odd maps `f_{p,s}` spanning `E`, the
//! solvability sets `A_{p,s}` and the minimal cocycles `b0_{p,s}`.

mod even;
mod odd;

use std::fmt;

use serde::Serialize;

pub use even::{
    family_membership, mixed_basis_check, psi_ks, psi_ks_raw, rho_ks, rho_ks_raw, varrho_ij, MembershipReport,
    MixedBasisReport, RhoIndex, VarrhoRange,
};
pub use odd::{
    alpha_zero_pairs, dim_lower_bound_corollary, e_space_basis, e_system_dim, f_coordinates, f_ps,
    last_column_residual, lbn_check, minimal_cocycles, nonempty_aps_prop2, predicted_pairs_prop1, shift_residuals,
    shift_zero_diagonal_dim, solve_all_aps, solve_aps, staircase_violations, MinimalCocycle, SolvabilityRecord,
};

/// `C(r, k)` with `C(-1, -1) = 1`; every other negative argument gives 0.
pub fn binom(r: i64, k: i64) -> i64 {
    if r == -1 && k == -1 {
        return 1;
    }
    if r < 0 || k < 0 || k > r {
        return 0;
    }
    let k = k.min(r - k);
    (0..k).fold(1i64, |acc, i| acc * (r - i) / (i + 1))
}

/// `(-1)^e`.
pub(crate) fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A member of one of the families together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilyTag {
    Psi { k: usize, s: usize },
    Rho { k: usize, s: usize },
    Varrho { i: usize, j: usize },
    F { p: usize, s: usize },
}

impl FamilyTag {
    /// Builds the map; `Psi` is lifted from `L_n` to `L_{n,m}`.
    pub fn build(self, n: usize, m: usize) -> crate::Result<crate::cohomology::Cochain2> {
        match self {
            FamilyTag::Psi { k, s } => psi_ks(n, k, s)?.with_odd_dimension(m),
            FamilyTag::Rho { k, s } => rho_ks(n, m, k, s),
            FamilyTag::Varrho { i, j } => varrho_ij(n, m, i, j),
            FamilyTag::F { p, s } => f_ps(n, m, p, s),
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Psi { k, s } => write!(f, "Psi_{{{k},{s}}}"),
            FamilyTag::Rho { k, s } => write!(f, "rho_{{{k},{s}}}"),
            FamilyTag::Varrho { i, j } => write!(f, "varrho_{{{i},{j}}}"),
            FamilyTag::F { p, s } => write!(f, "f_{{{p},{s}}}"),
        }
    }
}
