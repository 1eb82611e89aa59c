//! One-shot check of every closed-form statement about `L_{n,m}` against
//! the exact computation.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{h02_dims, z02_component, CochainSpace, Part};
use crate::families::{
    alpha_zero_pairs, dim_lower_bound_corollary, e_space_basis, e_system_dim, family_membership, minimal_cocycles,
    mixed_basis_check, nonempty_aps_prop2, predicted_pairs_prop1, solve_aps, staircase_violations, VarrhoRange,
};
use crate::linalg::Subspace;
use crate::{Error, Result, SuperAlgebra};

/// Default cap on the number of 2-cochain coordinates.
pub const DEFAULT_COORDINATE_LIMIT: usize = 50_000;

/// Claim identifiers, in report order.
pub const CLAIM_REGISTRY: [&str; 12] = [
    "dim-e-span",
    "dim-e-system",
    "psi-cocycles",
    "rho-cocycles",
    "varrho-cocycles",
    "mixed-basis",
    "alpha-zero-pairs",
    "nonempty-aps",
    "odd-dim-bound",
    "odd-basis",
    "odd-in-e",
    "h02",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    BoundSatisfied,
    NotApplicable,
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub claim_id: &'static str,
    /// The statement being checked, as a formula.
    pub anchor: &'static str,
    pub predicted: Value,
    pub computed: Value,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub phase: &'static str,
    pub millis: f64,
}

/// How the ambiguous formulas were read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Readings {
    pub psi_superscript: &'static str,
    pub rho_index: &'static str,
    /// The `varrho` range reproducing the mixed block, if exactly one does.
    pub varrho_range: Option<VarrhoRange>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConformanceReport {
    pub n: usize,
    pub m: usize,
    pub readings: Readings,
    pub claims: Vec<Claim>,
    pub timings: Vec<Timing>,
}

impl ConformanceReport {
    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.claim_id == id)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.verdict == Verdict::Mismatch)
    }

    pub fn all_match(&self) -> bool {
        self.mismatches().next().is_none()
    }
}

/// Refuses problems whose cochain space exceeds `limit` coordinates.
pub fn check_feasible(n: usize, m: usize, limit: usize) -> Result<()> {
    let coordinates = CochainSpace::new(n, m).dim();
    if coordinates > limit {
        return Err(Error::Infeasible { coordinates, limit });
    }
    Ok(())
}

/// [`run_conformance_limited`] with the default guard.
pub fn run_conformance(n: usize, m: usize) -> Result<ConformanceReport> {
    run_conformance_limited(n, m, Some(DEFAULT_COORDINATE_LIMIT))
}

/// Runs every claim for `L_{n,m}`; `limit = None` disables the size guard.
pub fn run_conformance_limited(n: usize, m: usize, limit: Option<usize>) -> Result<ConformanceReport> {
    if n < 2 || m < 1 {
        return Err(Error::OutOfRange(format!("need n >= 2 and m >= 1, got n = {n}, m = {m}")));
    }
    if let Some(limit) = limit {
        check_feasible(n, m, limit)?;
    }
    let mut claims = Vec::new();
    let mut timings = Vec::new();
    let mut phase = |name: &'static str, f: &mut dyn FnMut(&mut Vec<Claim>) -> Result<()>| -> Result<()> {
        let start = Instant::now();
        f(&mut claims)?;
        timings.push(Timing { phase: name, millis: start.elapsed().as_secs_f64() * 1e3 });
        Ok(())
    };
    let a = SuperAlgebra::model(n, m);
    let predicted_e = n * m - n + 1;

    phase("space-e", &mut |claims| {
        let basis = e_space_basis(n, m)?;
        let space = CochainSpace::new(n, m);
        let rank = Subspace::span_sparse(space.dim(), basis.iter().map(|(_, f)| space.to_sparse(f))).dim();
        claims.push(Claim {
            claim_id: "dim-e-span",
            anchor: "rank{f_{p,s}} = nm - n + 1",
            predicted: json!(predicted_e),
            computed: json!(rank),
            verdict: Verdict::of(rank == predicted_e),
        });
        let literal = e_system_dim(n, m, false);
        let x0_free = e_system_dim(n, m, true);
        claims.push(Claim {
            claim_id: "dim-e-system",
            anchor: "dim{b symmetric : [X0,b(Y_t,Y_r)] = b(Y_{t+1},Y_r) + b(Y_t,Y_{r+1}), b(Y_m,Y_m) in span(X_n)} = nm - n + 1",
            predicted: json!(predicted_e),
            computed: json!({ "literal": literal, "without_x0_values": x0_free }),
            verdict: Verdict::of(literal == predicted_e),
        });
        Ok(())
    })?;

    phase("families", &mut |claims| {
        let r = family_membership(n, m)?;
        let rows = [
            ("psi-cocycles", "Psi_{k,s} in Z, 1 <= k <= n-1, 2k <= s <= n", r.psi_checked, &r.psi_failures),
            ("rho-cocycles", "rho_{k,s} in Z, 1 <= k <= n, 1 <= s <= m", r.rho_checked, &r.rho_failures),
            ("varrho-cocycles", "varrho_{i,j} in Z, 1 <= i, j <= m", r.varrho_checked, &r.varrho_failures),
        ];
        for (claim_id, anchor, checked, failures) in rows {
            claims.push(Claim {
                claim_id,
                anchor,
                predicted: json!({ "checked": checked, "failures": [] }),
                computed: json!({ "checked": checked, "failures": failures }),
                verdict: Verdict::of(failures.is_empty()),
            });
        }
        Ok(())
    })?;

    let mut varrho_range = None;
    phase("mixed-basis", &mut |claims| {
        let r = mixed_basis_check(n, m)?;
        varrho_range = r.resolved();
        claims.push(Claim {
            claim_id: "mixed-basis",
            anchor: "rank(rho_{k,s} + varrho_{i,j}) = dim Z(G0 x G1 -> G1) under exactly one varrho range",
            predicted: json!(r.oracle_dim),
            computed: json!({
                "triangular": r.rank_triangular,
                "full": r.rank_full,
                "rho_cocycles": r.rho_cocycles.len(),
                "matching": r.matching,
            }),
            verdict: Verdict::of(r.resolved().is_some()),
        });
        Ok(())
    })?;

    phase("odd-odd", &mut |claims| {
        let predicted = predicted_pairs_prop1(n, m);
        let computed = alpha_zero_pairs(n, m);
        claims.push(Claim {
            claim_id: "alpha-zero-pairs",
            anchor: "{(p,s) : f_{p,s} is a cocycle} = predicted pairs",
            predicted: json!(predicted),
            computed: json!({
                "pairs": computed,
                "missing_from_prediction": computed.difference(&predicted).collect::<Vec<_>>(),
                "predicted_but_not_cocycles": predicted.difference(&computed).collect::<Vec<_>>(),
            }),
            verdict: Verdict::of(predicted == computed),
        });

        let emitted = nonempty_aps_prop2(n, m);
        let mut empty = BTreeSet::new();
        for &(p, s) in &emitted {
            if !solve_aps(n, m, p, s)?.nonempty() {
                empty.insert((p, s));
            }
        }
        claims.push(Claim {
            claim_id: "nonempty-aps",
            anchor: "A_{p,s} nonempty for s = n-m-q-1+2p, 1 <= q <= min(m-1,n-2), 2+m+q-n <= 2p <= m-q+1",
            predicted: json!(emitted),
            computed: json!({ "empty": empty }),
            verdict: Verdict::of(empty.is_empty()),
        });

        let z = z02_component(&a, Part::B)?;
        let bound_claim = match dim_lower_bound_corollary(n, m) {
            Ok(bound) => Claim {
                claim_id: "odd-dim-bound",
                anchor: "dim Z(G1 x G1 -> G0) >= bound(n, m) for m >= n",
                predicted: json!(bound),
                computed: json!(z.dim()),
                verdict: if z.dim() as i64 >= bound { Verdict::BoundSatisfied } else { Verdict::Mismatch },
            },
            Err(Error::Precondition(_)) => Claim {
                claim_id: "odd-dim-bound",
                anchor: "dim Z(G1 x G1 -> G0) >= bound(n, m) for m >= n",
                predicted: Value::Null,
                computed: json!(z.dim()),
                verdict: Verdict::NotApplicable,
            },
            Err(e) => return Err(e),
        };
        claims.push(bound_claim);

        let odd_basis = match minimal_cocycles(n, m) {
            Ok(b0) => {
                let violations = staircase_violations(&b0);
                let pivots: Vec<_> = b0.iter().map(|c| (c.p, c.s)).collect();
                let ok = violations.is_empty() && b0.len() == z.dim();
                (json!({ "count": b0.len(), "pivots": pivots, "staircase_violations": violations }), ok)
            }
            Err(Error::FormulaAnomaly(msg)) => (json!({ "anomaly": msg }), false),
            Err(e) => return Err(e),
        };
        claims.push(Claim {
            claim_id: "odd-basis",
            anchor: "b0_{p,s} over nonempty A_{p,s} form a staircase basis of Z(G1 x G1 -> G0)",
            predicted: json!(z.dim()),
            computed: odd_basis.0,
            verdict: Verdict::of(odd_basis.1),
        });

        let space = z.space().clone();
        let e = e_space_basis(n, m)?;
        let e_span = Subspace::span_sparse(space.dim(), e.iter().map(|(_, f)| space.to_sparse(f)));
        let inside = z.subspace().is_subspace_of(&e_span);
        claims.push(Claim {
            claim_id: "odd-in-e",
            anchor: "Z(G1 x G1 -> G0) is contained in E",
            predicted: json!(true),
            computed: json!(inside),
            verdict: Verdict::of(inside),
        });
        Ok(())
    })?;

    phase("h02", &mut |claims| {
        let h = h02_dims(&a)?;
        claims.push(Claim {
            claim_id: "h02",
            anchor: "dim H = dim Z - dim B",
            predicted: json!(h.z - h.b),
            computed: json!(h),
            verdict: Verdict::of(h.h == h.z - h.b),
        });
        Ok(())
    })?;

    debug_assert!(CLAIM_REGISTRY.iter().all(|id| claims.iter().filter(|c| c.claim_id == *id).count() == 1));
    Ok(ConformanceReport {
        n,
        m,
        readings: Readings { psi_superscript: "k-i", rho_index: "Y_{s+r-1+j-k}", varrho_range },
        claims,
        timings,
    })
}
