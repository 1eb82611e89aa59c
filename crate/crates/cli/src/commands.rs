use std::fs;
use std::path::Path;

use anyhow::Context;
use filiform_core::cohomology::{
    differential1, differential2, ensure_cocycle, h02_dims, z02_basis, z02_component, Cochain1, Cochain2, Part,
};
use filiform_core::conformance::{run_conformance_limited, Verdict};
use filiform_core::deformation::{analyze, deformation_residual, Deformation};
use filiform_core::families::{
    dim_lower_bound_corollary, e_space_basis, f_ps, psi_ks_raw, rho_ks_raw, solve_all_aps, solve_aps, varrho_ij,
    FamilyTag, RhoIndex, SolvabilityRecord,
};
use filiform_core::{BasisElement, Error, Rational, SuperAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::{Output, Table};
use crate::Kind;

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values always serialize")
}

fn cochain_value(c: &Cochain2) -> Value {
    serde_json::from_str(&c.to_json()).expect("cochain JSON is valid")
}

fn arguments(part: Part, i: usize, j: usize) -> (BasisElement, BasisElement) {
    use BasisElement::{X, Y};
    match part {
        Part::Psi => (X(i), X(j)),
        Part::Rho => (X(i), Y(j)),
        Part::B => (Y(i), Y(j)),
    }
}

fn push_entries(table: &mut Table, label: &str, c: &Cochain2) {
    for (part, i, j, v) in c.entries() {
        let (a, b) = arguments(part, i, j);
        table.push(vec![label.to_string(), part.to_string(), format!("({a},{b})"), v.to_string()]);
    }
}

pub fn lnm(n: Option<usize>, m: Option<usize>, input: Option<&Path>, dump: bool) -> anyhow::Result<Output> {
    let a = match (input, n, m) {
        (Some(path), _, _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            SuperAlgebra::from_json(&text)?
        }
        (None, Some(n), Some(m)) => {
            if n == 0 {
                return Err(Error::OutOfRange("L(n,m) needs n >= 1".into()).into());
            }
            SuperAlgebra::model(n, m)
        }
        _ => unreachable!("clap requires --n and --m without --input"),
    };
    if dump {
        let sc = a.structure_constants();
        let mut table = Table::new(&["block", "i", "j", "k", "v"]);
        for (block, entries) in [("C", &sc.c), ("D", &sc.d), ("E", &sc.e)] {
            for e in entries {
                table.push(vec![block.into(), e.i.to_string(), e.j.to_string(), e.k.to_string(), e.v.to_string()]);
            }
        }
        return Ok(Output::new(a.to_json(), table));
    }
    let series = a.lower_central_series();
    let jacobi = a.check_jacobi();
    let info = json!({
        "n": a.n(),
        "m": a.m(),
        "jacobi": jacobi.is_empty(),
        "nilindex": series.nilindex,
        "filiform": a.is_filiform(),
        "adapted_basis": a.verify_adapted_basis(),
        "even_series_dims": series.even_dims(),
        "odd_series_dims": series.odd_dims(),
    });
    let mut table = Table::new(&["property", "value"]);
    for key in ["n", "m", "jacobi", "nilindex", "filiform", "adapted_basis", "even_series_dims", "odd_series_dims"] {
        table.push(vec![key.into(), info[key].to_string()]);
    }
    for (a, b, v) in a.nonzero_brackets() {
        table.notes.push(format!("[{a},{b}] = {v}"));
    }
    Ok(Output::new(pretty(&info), table))
}

pub fn z2(n: usize, m: usize, part: Option<&str>, with_h: bool) -> anyhow::Result<Output> {
    let a = SuperAlgebra::model(n, m);
    let basis = match part {
        Some(p) => z02_component(&a, p.parse()?)?,
        None => z02_basis(&a)?,
    };
    let vectors = basis.vectors();
    let mut doc = json!({
        "n": n,
        "m": m,
        "part": part.unwrap_or("all"),
        "dim": basis.dim(),
        "basis": vectors.iter().map(cochain_value).collect::<Vec<_>>(),
    });
    let mut table = Table::new(&["cocycle", "block", "arguments", "value"]).note(format!(
        "L({n},{m}) part {}: dim {}",
        part.unwrap_or("all"),
        basis.dim()
    ));
    if with_h {
        let h = h02_dims(&a)?;
        doc["h02"] = json!(h);
        table.notes.push(format!("dim Z = {}, dim B = {}, dim H = {}", h.z, h.b, h.h));
    }
    for (k, c) in vectors.iter().enumerate() {
        push_entries(&mut table, &k.to_string(), c);
    }
    Ok(Output::new(pretty(&doc), table))
}

struct Member {
    tag: FamilyTag,
    map: Option<Cochain2>,
    witness: Option<String>,
}

fn build_member(n: usize, m: usize, tag: FamilyTag, printed: bool) -> anyhow::Result<Member> {
    let a = SuperAlgebra::model(n, m);
    let map = match tag {
        FamilyTag::Psi { k, s } => psi_ks_raw(n, k, s)?.with_odd_dimension(m)?,
        FamilyTag::Rho { k, s } => {
            let reading = if printed { RhoIndex::AsPrinted } else { RhoIndex::Shifted };
            rho_ks_raw(n, m, k, s, reading)?
        }
        FamilyTag::Varrho { i, j } => match varrho_ij(n, m, i, j) {
            Ok(c) => c,
            Err(Error::NotACocycle { witness, .. }) => return Ok(Member { tag, map: None, witness: Some(witness) }),
            Err(e) => return Err(e.into()),
        },
        FamilyTag::F { p, s } => f_ps(n, m, p, s)?,
    };
    let witness = match ensure_cocycle(&a, &map, &tag.to_string()) {
        Ok(()) => None,
        Err(Error::NotACocycle { witness, .. }) => Some(witness),
        Err(e) => return Err(e.into()),
    };
    Ok(Member { tag, map: Some(map), witness })
}

fn members(n: usize, m: usize, kind: Kind) -> anyhow::Result<Vec<FamilyTag>> {
    Ok(match kind {
        Kind::Psi => (1..n).flat_map(|k| (2 * k..=n).map(move |s| FamilyTag::Psi { k, s })).collect(),
        Kind::Rho => (1..=n).flat_map(|k| (1..=m).map(move |s| FamilyTag::Rho { k, s })).collect(),
        Kind::Varrho => (1..=m).flat_map(|i| (1..=m).map(move |j| FamilyTag::Varrho { i, j })).collect(),
        Kind::F => e_space_basis(n, m)?.into_iter().map(|((p, s), _)| FamilyTag::F { p, s }).collect(),
    })
}

pub fn families(
    n: usize,
    m: usize,
    kind: Kind,
    single: Option<(usize, usize)>,
    printed: bool,
) -> anyhow::Result<Output> {
    let tags = match single {
        Some((k, s)) => vec![match kind {
            Kind::Psi => FamilyTag::Psi { k, s },
            Kind::Rho => FamilyTag::Rho { k, s },
            Kind::Varrho => FamilyTag::Varrho { i: k, j: s },
            Kind::F => FamilyTag::F { p: k, s },
        }],
        None => members(n, m, kind)?,
    };
    let built: Vec<Member> = tags.into_iter().map(|t| build_member(n, m, t, printed)).collect::<anyhow::Result<_>>()?;
    // Only the even families are stated to consist of cocycles.
    let mismatch = kind != Kind::F && built.iter().any(|b| b.witness.is_some());
    let doc = json!({
        "n": n,
        "m": m,
        "readings": { "psi_superscript": "k-i", "rho_index": if printed { "printed" } else { "shifted" } },
        "members": built.iter().map(|b| json!({
            "name": b.tag.to_string(),
            "params": b.tag,
            "cocycle": b.witness.is_none(),
            "witness": b.witness,
            "map": b.map.as_ref().map(cochain_value),
        })).collect::<Vec<_>>(),
    });
    let table = if let [only] = built.as_slice() {
        let verdict = match &only.witness {
            None => "cocycle".to_string(),
            Some(w) => format!("not a cocycle: d2 is nonzero at {w}"),
        };
        let mut t =
            Table::new(&["map", "block", "arguments", "value"]).note(format!("{} on L({n},{m}): {verdict}", only.tag));
        if let Some(c) = &only.map {
            push_entries(&mut t, &only.tag.to_string(), c);
        }
        t
    } else {
        let mut t = Table::new(&["map", "cocycle", "witness"]);
        for b in &built {
            t.push(vec![b.tag.to_string(), (b.witness.is_none()).to_string(), b.witness.clone().unwrap_or_default()]);
        }
        t
    };
    Ok(Output::new(pretty(&doc), table).mismatch(mismatch))
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

fn record_value(n: usize, m: usize, r: &SolvabilityRecord) -> Value {
    json!({
        "p": r.p,
        "s": r.s,
        "unknowns": r.matrix.cols(),
        "equations": r.matrix.rows(),
        "nonempty": r.nonempty(),
        "alpha_zero": r.alpha_zero(),
        "particular": r.solution.as_ref().map(|s| rationals(&s.particular)),
        "free_parameters": r.solution.as_ref().map(|s| s.homogeneous.len()),
        "particular_cocycle": r.particular_cocycle(n, m).as_ref().map(cochain_value),
        "b0": r.b0.as_ref().map(cochain_value),
    })
}

pub fn aps(n: usize, m: usize, single: Option<(usize, usize)>) -> anyhow::Result<Output> {
    let records = match single {
        Some((p, s)) => vec![solve_aps(n, m, p, s)?],
        None => solve_all_aps(n, m)?,
    };
    let mut table = Table::new(&["p", "s", "unknowns", "nonempty", "alpha_zero", "particular", "free"]);
    for r in &records {
        let sol = r.solution.as_ref();
        table.push(vec![
            r.p.to_string(),
            r.s.to_string(),
            r.matrix.cols().to_string(),
            r.nonempty().to_string(),
            r.alpha_zero().to_string(),
            sol.map(|s| format!("[{}]", rationals(&s.particular).join(", "))).unwrap_or_default(),
            sol.map(|s| s.homogeneous.len().to_string()).unwrap_or_default(),
        ]);
    }
    let doc = json!({
        "n": n,
        "m": m,
        "records": records.iter().map(|r| record_value(n, m, r)).collect::<Vec<_>>(),
    });
    Ok(Output::new(pretty(&doc), table))
}

pub fn bounds(n: usize, m: usize) -> anyhow::Result<Output> {
    let bound = dim_lower_bound_corollary(n, m)?;
    let dim = z02_component(&SuperAlgebra::model(n, m), Part::B)?.dim();
    let verdict = if dim as i64 >= bound { Verdict::BoundSatisfied } else { Verdict::Mismatch };
    let doc = json!({ "n": n, "m": m, "bound": bound, "dim": dim, "verdict": verdict });
    let mut table = Table::new(&["n", "m", "bound", "dim", "verdict"]);
    table.push(vec![
        n.to_string(),
        m.to_string(),
        bound.to_string(),
        dim.to_string(),
        json!(verdict).as_str().unwrap().into(),
    ]);
    Ok(Output::new(pretty(&doc), table).mismatch(verdict == Verdict::Mismatch))
}

pub fn deform(n: usize, m: usize, phi: &Path, order: usize) -> anyhow::Result<Output> {
    if order == 0 {
        return Err(Error::OutOfRange("--order must be at least 1".into()).into());
    }
    let text = fs::read_to_string(phi).with_context(|| format!("reading {}", phi.display()))?;
    let phi = Cochain2::from_json(n, m, &text)?;
    let report = analyze(n, m, &phi, order)?;
    let mut terms = vec![phi];
    terms.resize(order, Cochain2::zero(n, m));
    let d = Deformation::new(SuperAlgebra::model(n, m), terms)?;
    let residuals: Vec<Value> = (1..=order)
        .map(|k| deformation_residual(&d, k).map(|r| json!({ "order": k, "vanishes": r.is_zero() })))
        .collect::<filiform_core::Result<_>>()?;
    let mut doc = serde_json::to_value(&report)?;
    doc["residuals"] = Value::Array(residuals);
    let mut table = Table::new(&["check", "value"]);
    for key in ["jacobi", "jacobi_witness", "first_order", "second_order", "condition_N", "nilindex"] {
        table.push(vec![key.into(), doc[key].to_string()]);
    }
    for c in &report.filiform_constraints.checks {
        table.push(vec![c.constraint.clone(), c.passed.to_string()]);
    }
    for r in doc["residuals"].as_array().into_iter().flatten() {
        table.push(vec![format!("residual order {}", r["order"]), r["vanishes"].to_string()]);
    }
    Ok(Output::new(pretty(&doc), table))
}

pub fn verify(n: usize, m: usize) -> anyhow::Result<Output> {
    let report = run_conformance_limited(n, m, None)?;
    let mut table = Table::new(&["claim", "verdict", "predicted", "computed"]).note(format!(
        "L({n},{m}); readings: Psi superscript {}, rho index {}, varrho range {}",
        report.readings.psi_superscript,
        report.readings.rho_index,
        report.readings.varrho_range.map(|r| json!(r).to_string()).unwrap_or_else(|| "unresolved".into()),
    ));
    for c in &report.claims {
        table.push(vec![
            c.claim_id.to_string(),
            json!(c.verdict).as_str().unwrap_or_default().to_string(),
            c.predicted.to_string(),
            c.computed.to_string(),
        ]);
    }
    Ok(Output::new(serde_json::to_string_pretty(&report)?, table).mismatch(!report.all_match()))
}

pub fn props(n: usize, m: usize, samples: usize, seed: u64) -> anyhow::Result<Output> {
    let a = SuperAlgebra::model(n, m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dd_failures = 0;
    for _ in 0..samples {
        let c = Cochain1::random(n, m, &mut rng, 0.5);
        if !differential2(&a, &differential1(&a, &c)?)?.is_zero() {
            dd_failures += 1;
        }
    }
    let z = z02_basis(&a)?;
    let cocycles = z.vectors();
    let (mut members, mut disagreements) = (0, 0);
    for k in 0..samples {
        let phi = if k % 2 == 0 {
            Cochain2::random(n, m, &mut rng, 0.3)
        } else {
            let mut c = Cochain2::zero(n, m);
            for v in &cocycles {
                c.add_scaled(&Rational::from_integer(rng.gen_range(-2..=2)), v);
            }
            c
        };
        let d = Deformation::new(a.clone(), vec![phi.clone()])?;
        let member = z.contains(&phi);
        members += member as usize;
        if deformation_residual(&d, 1)?.is_zero() != member {
            disagreements += 1;
        }
    }
    let doc = json!({
        "n": n,
        "m": m,
        "seed": seed,
        "samples": samples,
        "dd_failures": dd_failures,
        "first_order": { "cocycles": members, "disagreements": disagreements },
    });
    let mut table = Table::new(&["identity", "samples", "failures"]).note(format!("L({n},{m}), seed {seed}"));
    table.push(vec!["d2 o d1 = 0".into(), samples.to_string(), dd_failures.to_string()]);
    table.push(vec!["residual_1 = 0 iff cocycle".into(), samples.to_string(), disagreements.to_string()]);
    Ok(Output::new(pretty(&doc), table).mismatch(dd_failures + disagreements > 0))
}
