use branchdisc::classifier::{classify, table_grid, verify, Note, VerificationReport, VerifyConfig};
use branchdisc::discriminant::{cross_check_roots, decompose, discriminant_exact, discriminant_roots, EquisingularityType};
use branchdisc::error::escalate;
use branchdisc::invariants::{milnor, BranchInvariants, CharExponents};
use branchdisc::newton_polygon::{is_nondegenerate, polygon, NewtonPolygon};
use branchdisc::normal_forms::build;
use branchdisc::puiseux::{puiseux_roots, Parametrization, PuiseuxSeries};
use branchdisc::scalar::Field;
use branchdisc::{BigFloat, BranchDescriptor, Error, Poly, Rat, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

pub fn ty_json(t: &EquisingularityType) -> Value {
    json!({
        "text": t.to_string(),
        "branches": t.branches,
        "intersections": t.intersections,
    })
}

pub fn polygon_json(p: &NewtonPolygon) -> Value {
    json!({
        "vertices": p.vertices,
        "inclinations": p.edges.iter().map(|e| e.inclination.to_string()).collect::<Vec<_>>(),
    })
}

fn notes_json(notes: &[Note]) -> Value {
    serde_json::to_value(notes).expect("notes serialize")
}

fn series_json(roots: &[(PuiseuxSeries<BigFloat>, u32)], var: &str) -> Value {
    Value::Array(roots.iter().map(|(s, m)| json!({"series": s.display(var), "multiplicity": m})).collect())
}

/// Lowest total degree of a term.
fn multiplicity<K: Field>(f: &Poly<K>) -> u64 {
    f.terms().map(|(e, _)| e.iter().map(|&k| k as u64).sum::<u64>()).min().unwrap_or(0)
}

/// `2 c + 2 n` with the Milnor number standing in for the conductor.
fn auto_trunc<K: Field>(f: &Poly<K>) -> Rat {
    let n = multiplicity(f);
    let c = milnor(f).unwrap_or(f.total_degree() as u64);
    Rat::from_integer((2 * c + 2 * n).into())
}

fn invariants_json(inv: &BranchInvariants) -> Value {
    json!({
        "characteristic_exponents": inv.char,
        "semigroup": inv.semigroup.generators,
        "conductor": inv.semigroup.conductor,
        "milnor": inv.milnor,
        "tjurina": inv.tjurina,
        "r": inv.r,
        "zariski_lambda": inv.zariski_lambda,
    })
}

/// Invariants, topological type and truncated Puiseux roots of a curve.
pub fn analyze<K: Field>(f: &Poly<K>, param: Option<&Parametrization<K>>, trunc: Option<Rat>, prec: u32) -> Result<Value> {
    let dec = decompose(f, "x", "y", prec)?;
    let t = dec.equisingularity_type();
    let branch = t.len() == 1 && t.branches[0].mult == 1;
    let inv = match param {
        Some(p) => Some(BranchInvariants::of_parametrization(p)?),
        None if branch => Some(BranchInvariants::of_equation(f, t.branches[0].char.clone())?),
        None => None,
    };
    let bound = trunc.unwrap_or_else(|| auto_trunc(f));
    let roots: Vec<(PuiseuxSeries<BigFloat>, u32)> = escalate(prec, |p| puiseux_roots(f, "x", "y", &bound, p))?;
    Ok(json!({
        "equation": f.to_string(),
        "parametrization": param.map(|p| p.to_string()),
        "branch": branch,
        "type": ty_json(&t),
        "invariants": inv.as_ref().map(invariants_json),
        "puiseux": {"truncation": bound.to_string(), "roots": series_json(&roots, "x")},
        "precision": dec.precision,
    }))
}

/// Exact discriminant, its polygon, the non-degeneracy verdict, the type and
/// the composed roots `f(u, gamma(u))`.
pub fn discriminant<K: Field>(f: &Poly<K>, trunc: Option<Rat>, prec: u32) -> Result<Value> {
    let dd = discriminant_exact(f)?;
    let d = &dd.poly;
    let poly = polygon(d, "u", "v")?;
    let nd = is_nondegenerate(d, "u", "v")?;
    let witness = nd.as_ref().err().map(|w| {
        json!({
            "edge": [w.edge.start, w.edge.end],
            "edge_polynomial": Poly::from_upoly1(&w.edge_polynomial, "z").to_string(),
            "repeated_factor": Poly::from_upoly1(&w.factor, "z").to_string(),
            "multiplicity": w.multiplicity,
        })
    });
    let dec = decompose(d, "u", "v", prec)?;
    let (bound, roots) = match trunc {
        Some(b) => {
            let r = escalate(prec, |p| discriminant_roots(f, &b, p))?;
            (b, r)
        }
        None => composed_auto(f, prec)?,
    };
    let agree = cross_check_roots(f, d, prec)?;
    Ok(json!({
        "equation": f.to_string(),
        "discriminant": d.to_string(),
        "warning": dd.warning,
        "polygon": polygon_json(&poly),
        "nondegenerate": nd.is_ok(),
        "degeneracy_witness": witness,
        "type": ty_json(&dec.equisingularity_type()),
        "composed_roots": {"truncation": bound.to_string(), "roots": series_json(&roots, "u")},
        "roots_agree": agree,
        "precision": dec.precision,
    }))
}

/// The auto order, doubled while the composition is unstable.
fn composed_auto<K: Field>(f: &Poly<K>, prec: u32) -> Result<(Rat, Vec<(PuiseuxSeries<BigFloat>, u32)>)> {
    let mut bound = auto_trunc(f);
    for _ in 0..AUTO_DOUBLINGS {
        match escalate(prec, |p| discriminant_roots(f, &bound, p)) {
            Err(Error::InsufficientTruncation(_)) => bound *= Rat::from_integer(2.into()),
            r => return r.map(|r| (bound, r)),
        }
    }
    escalate(prec, |p| discriminant_roots(f, &bound, p)).map(|r| (bound, r))
}

const AUTO_DOUBLINGS: u32 = 3;

pub fn classify_json(d: &BranchDescriptor) -> Result<Value> {
    let p = classify(d)?;
    Ok(json!({
        "descriptor": d.to_json(),
        "fired_case": p.fired_case,
        "predicted": ty_json(&p.ty),
        "alternatives": p.alternatives.iter().map(|(l, t)| json!({"label": l, "type": ty_json(t)})).collect::<Vec<_>>(),
        "notes": notes_json(&p.notes),
    }))
}

fn char_json(c: &Option<CharExponents>) -> Value {
    serde_json::to_value(c).expect("char serializes")
}

pub fn verify_json(r: &VerificationReport) -> Value {
    let c = &r.computed;
    json!({
        "descriptor": r.descriptor.to_json(),
        "normal_form": r.normal_form,
        "coefficients": r.coeffs.iter().map(|(i, a)| (i.to_string(), Value::from(a.to_string()))).collect::<serde_json::Map<_, _>>(),
        "fired_case": r.fired_case,
        "predicted": ty_json(&r.predicted),
        "computed": {
            "equation": c.equation,
            "discriminant": c.discriminant,
            "polygon": polygon_json(&c.polygon),
            "nondegenerate": c.nondegenerate,
            "type": ty_json(&c.ty),
            "curve_type": ty_json(&c.curve_type),
            "characteristic_exponents": char_json(&c.char),
            "semigroup": c.semigroup.as_ref().map(|s| s.generators.clone()),
            "merle_polygon_match": c.merle,
            "roots_agree": c.roots_agree,
            "milnor": c.milnor,
            "tjurina": c.tjurina,
            "zariski_lambda": c.lambda,
            "precision": c.precision,
        },
        "match": r.matches,
        "alternatives": r.alternatives,
        "confirmed": r.confirmed(),
        "nondegeneracy_law": r.nondegeneracy_law,
        "invariants_match": r.invariants_match,
        "notes": notes_json(&r.notes),
    })
}

fn table_row(d: &BranchDescriptor, cfg: &VerifyConfig) -> Value {
    match verify(d, cfg) {
        Ok(r) => json!({
            "descriptor": d.to_json(),
            "normal_form": r.normal_form,
            "fired_case": r.fired_case,
            "predicted": r.predicted.to_string(),
            "computed": r.computed.ty.to_string(),
            "match": r.matches,
            "confirmed": r.confirmed(),
            "nondegenerate": r.computed.nondegenerate,
            "notes": r.notes.iter().map(|n| n.code.clone()).collect::<Vec<_>>(),
        }),
        Err(e) => json!({"descriptor": d.to_json(), "error": {"kind": e.kind(), "message": e.to_string()}}),
    }
}

/// Rows of table `n`, evaluated in parallel and returned in grid order.
pub fn table(n: u32, cfg: &VerifyConfig) -> Result<Value> {
    let grid = table_grid(n).ok_or_else(|| Error::InvalidInput(format!("no table {}; tables are 1 to {}", n, branchdisc::classifier::TABLES)))?;
    let rows: Vec<Value> = grid.par_iter().map(|d| table_row(d, cfg)).collect();
    let matched = rows.iter().filter(|r| r["match"] == Value::Bool(true)).count();
    Ok(json!({"table": n, "rows": rows, "matched": matched, "total": grid.len()}))
}

/// Equation (and parametrization, if any) of a descriptor's family member.
pub fn build_curve(d: &BranchDescriptor, seed: u64) -> Result<(Poly<branchdisc::algebra::parse::Q6>, Option<Parametrization<branchdisc::algebra::parse::Q6>>)> {
    let b = build(d, seed)?;
    Ok((b.equation()?, b.parametrization().cloned()))
}

/// Indented `key: value` rendering of a report.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{}{}: {}\n", pad, k, s)),
                    None => {
                        out.push_str(&format!("{}{}:\n", pad, k));
                        write_text(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{}- {}\n", pad, s)),
                    None => {
                        out.push_str(&format!("{}[{}]\n", pad, i + 1));
                        write_text(x, depth + 1, out);
                    }
                }
            }
        }
        x => out.push_str(&format!("{}{}\n", pad, scalar(x).unwrap_or_default())),
    }
}
