//! Human and JSON rendering for the subcommand results.
//!
//! JSON schemas are stable: field names and shapes documented in the README
//! are append-only.  Every multiset is emitted sorted, every polynomial as a
//! literal that re-parses under the expression grammar.

use std::fmt::Write as _;

use motivic_core::algebra::field::FFElem;
use motivic_core::algebra::literal::{render_scalar_poly, render_tau_entry, render_two_level};
use motivic_core::algebra::matrix::Matrix;
use motivic_core::algebra::Ring;
use motivic_core::congruence::{
    BoundContext, CoefficientAudit, Conclusion, CongruenceVerdict, NonexistenceOutcome,
    NonexistenceVerdict,
};
use motivic_core::frobenius::{FrobCharPoly, Reconstruction};
use motivic_core::io::{MotiveDocument, TargetEntry};
use motivic_core::place::Place;
use motivic_core::algebra::poly::Poly;
use motivic_core::repr::{FiniteGroupRep, TraceVerdict};
use motivic_core::shtuka::{CyclicBlock, LocalShtukaPresentation, PiSeries, TameInertiaReport};
use num_rational::Ratio;
use serde_json::{json, Value};

/// `1`, `-3`, `1/2` — never a denominator of one.
pub fn ratio_str(r: &Ratio<i64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ratio_list(rs: &[Ratio<i64>]) -> Vec<String> {
    rs.iter().map(ratio_str).collect()
}

fn multiset<T: std::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn ratio_multiset(rs: &[Ratio<i64>]) -> String {
    format!("{{{}}}", ratio_list(rs).join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

/// Render a series in `pi` over the residue field with its precision tail.
fn pi_series_str(s: &PiSeries) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (k, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cs = c.to_string();
        let coeff = if cs.contains('+') || cs.contains('-') || cs.contains('*') {
            format!("({cs})")
        } else {
            cs
        };
        let term = match k {
            0 => coeff,
            1 if c.is_one() => "pi".to_string(),
            1 => format!("{coeff} pi"),
            _ if c.is_one() => format!("pi^{k}"),
            _ => format!("{coeff} pi^{k}"),
        };
        terms.push(term);
    }
    let body = if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    };
    format!("{body} + O(pi^{})", s.precision())
}

fn place_str(place: &Place) -> String {
    render_scalar_poly(place.generator())
}

fn audit_json(audit: &CoefficientAudit) -> Value {
    let entries: Vec<Value> = audit
        .entries
        .iter()
        .map(|e| {
            let (status, detail) = match &e.status {
                Reconstruction::Zero => ("zero", None),
                Reconstruction::NonZero => ("nonzero", None),
                Reconstruction::Inconclusive(msg) => ("inconclusive", Some(msg.clone())),
            };
            json!({
                "x_power": e.x_power,
                "congruent": e.congruent,
                "difference_degree": e.difference_degree,
                "degree_bound": e.degree_bound,
                "status": status,
                "detail": detail,
            })
        })
        .collect();
    Value::Array(entries)
}

fn ctx_json(ctx: &BoundContext) -> Value {
    json!({
        "insep_degree": ctx.insep_degree,
        "discriminant_bound": ctx.discriminant_bound,
        "ram_index": ctx.ram_index,
    })
}

pub fn info(doc: &MotiveDocument, as_json: bool) -> String {
    let m = &doc.motive;
    let mut hp = m.hodge_pink_weights().to_vec();
    hp.sort_unstable();
    if as_json {
        return pretty(&json!({
            "command": "info",
            "field_order": m.field().order(),
            "label": m.label(),
            "rank": m.rank(),
            "dimension": m.dim(),
            "hodge_pink_weights": hp,
            "height": m.height(),
            "slope": ratio_str(&m.slope()),
            "blocks": doc.blocks,
        }));
    }
    let mut out = String::new();
    if let Some(label) = m.label() {
        let _ = writeln!(out, "label: {label}");
    }
    let _ = writeln!(out, "field order: {}", m.field().order());
    let _ = writeln!(out, "rank: {}", m.rank());
    let _ = writeln!(out, "dimension: {}", m.dim());
    let _ = writeln!(out, "hodge-pink weights: {}", multiset(&hp));
    let _ = writeln!(out, "height: {}", m.height());
    let _ = writeln!(out, "slope: {}", ratio_str(&m.slope()));
    if let Some(blocks) = &doc.blocks {
        let parts: Vec<String> = blocks.iter().map(|b| b.to_string()).collect();
        let _ = writeln!(out, "blocks: {}", parts.join(", "));
    }
    out
}

pub fn charpoly(cp: &FrobCharPoly, method: &str, as_json: bool) -> String {
    let literal = render_two_level(cp.poly());
    if as_json {
        return pretty(&json!({
            "command": "charpoly",
            "place": place_str(cp.place()),
            "place_degree": cp.place().degree(),
            "method": method,
            "charpoly": literal,
        }));
    }
    format!("{literal}\n")
}

pub fn weil(cp: &FrobCharPoly, weights: &[Ratio<i64>], as_json: bool) -> String {
    if as_json {
        return pretty(&json!({
            "command": "weil",
            "place": place_str(cp.place()),
            "place_degree": cp.place().degree(),
            "charpoly": render_two_level(cp.poly()),
            "weights": ratio_list(weights),
        }));
    }
    format!("{}\n", ratio_multiset(weights))
}

pub struct ShtukaReport<'a> {
    pub place: &'a Place,
    pub prime: &'a Poly<FFElem>,
    pub shtuka: &'a LocalShtukaPresentation,
    pub dimension: usize,
    pub height: usize,
    pub precision: (usize, usize),
    pub torsion: &'a Matrix<PiSeries>,
    pub normal_form: &'a [CyclicBlock],
    pub ti: &'a TameInertiaReport,
    pub json: bool,
}

pub fn shtuka(r: ShtukaReport<'_>) -> String {
    let torsion_rows: Vec<Vec<String>> = (0..r.torsion.rows())
        .map(|i| {
            (0..r.torsion.cols())
                .map(|j| pi_series_str(r.torsion.at(i, j)))
                .collect()
        })
        .collect();
    let sum: u64 = r.ti.weights.iter().sum();
    let expected = (r.ti.ram_index * r.ti.dimension) as u64;
    if r.json {
        let blocks: Vec<Value> = r
            .normal_form
            .iter()
            .map(|b| {
                json!({
                    "columns": b.columns,
                    "digits": b.digits,
                    "lambda": b.lambda.to_string(),
                })
            })
            .collect();
        return pretty(&json!({
            "command": "shtuka",
            "place": place_str(r.place),
            "prime": render_scalar_poly(r.prime),
            "place_degree": r.place.degree(),
            "residue_order": r.place.residue_order(),
            "ram_index": r.shtuka.ram_index(),
            "rank": r.shtuka.rank(),
            "dimension": r.dimension,
            "height_bound": r.height,
            "precision": {"pi": r.precision.0, "z": r.precision.1},
            "torsion": torsion_rows,
            "normal_form": blocks,
            "tame_inertia": {
                "weights": r.ti.weights,
                "sum": sum,
                "expected": expected,
                "sum_matches": r.ti.sum_matches,
            },
        }));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "place: {} (degree {}, residue order {})",
        place_str(r.place),
        r.place.degree(),
        r.place.residue_order()
    );
    let _ = writeln!(out, "rank: {}", r.shtuka.rank());
    let _ = writeln!(out, "dimension: {}", r.dimension);
    let _ = writeln!(out, "ram index: {}", r.shtuka.ram_index());
    let _ = writeln!(out, "height bound: {}", r.height);
    let _ = writeln!(
        out,
        "precision: pi^{}, z^{}",
        r.precision.0, r.precision.1
    );
    let _ = writeln!(out, "torsion mod z:");
    for row in &torsion_rows {
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
    let _ = writeln!(out, "normal form:");
    for b in r.normal_form {
        let cols: Vec<String> = b.columns.iter().map(|c| c.to_string()).collect();
        let digits: Vec<String> = b.digits.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(
            out,
            "  cycle ({}): digits [{}], lambda = {}",
            cols.join(" -> "),
            digits.join(", "),
            b.lambda
        );
    }
    let _ = writeln!(
        out,
        "tame inertia: weights {}, sum {} = e*dim {}: {}",
        multiset(&r.ti.weights),
        sum,
        expected,
        if r.ti.sum_matches { "ok" } else { "MISMATCH" }
    );
    out
}

fn conclusion_parts(c: &Conclusion) -> (&'static str, Option<String>) {
    match c {
        Conclusion::Isomorphic => ("isomorphic", None),
        Conclusion::NotIsomorphic => ("not_isomorphic", None),
        Conclusion::Inconclusive(msg) => ("inconclusive", Some(msg.clone())),
    }
}

pub fn thm1(
    v: &CongruenceVerdict,
    place_v: &Place,
    prime: &Poly<FFElem>,
    h: usize,
    h_right: usize,
    ctx: &BoundContext,
    as_json: bool,
) -> String {
    let (conclusion, detail) = conclusion_parts(&v.conclusion);
    if as_json {
        return pretty(&json!({
            "command": "check-thm1",
            "place_v": place_str(place_v),
            "place_v_degree": place_v.degree(),
            "prime": render_scalar_poly(prime),
            "prime_degree": v.prime_degree,
            "heights": {"left": h, "right": h_right},
            "ctx": ctx_json(ctx),
            "threshold": v.threshold,
            "bound_ok": v.bound_ok,
            "congruent_at_v": v.congruent_at_v,
            "ti_match_at_u": v.ti_match_at_u,
            "isomorphic_ss_at_v": v.isomorphic_ss_at_v,
            "dims": {"left": v.left_dim, "right": v.right_dim, "equal": v.dim_equal},
            "weil_weights": {
                "left": ratio_list(&v.left_weil_weights),
                "right": ratio_list(&v.right_weil_weights),
                "equal": v.weil_weights_equal,
            },
            "tame_weights": {"left": v.left_tame_weights, "right": v.right_tame_weights},
            "audit": audit_json(&v.audit),
            "conclusion": conclusion,
            "detail": detail,
        }));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "prime: {} (degree {})",
        render_scalar_poly(prime),
        v.prime_degree
    );
    let _ = writeln!(
        out,
        "place v: {} (degree {})",
        place_str(place_v),
        place_v.degree()
    );
    let _ = writeln!(out, "heights: left {h}, right {h_right}");
    let _ = writeln!(
        out,
        "threshold: {} (prime degree above: {})",
        v.threshold,
        yes_no(v.bound_ok)
    );
    let _ = writeln!(out, "congruent at v: {}", yes_no(v.congruent_at_v));
    let _ = writeln!(
        out,
        "tame inertia at u: left {}, right {} (match: {})",
        multiset(&v.left_tame_weights),
        multiset(&v.right_tame_weights),
        yes_no(v.ti_match_at_u)
    );
    let _ = writeln!(
        out,
        "dimensions: left {}, right {} (equal: {})",
        v.left_dim,
        v.right_dim,
        yes_no(v.dim_equal)
    );
    let _ = writeln!(
        out,
        "weil weights: left {}, right {} (equal: {})",
        ratio_multiset(&v.left_weil_weights),
        ratio_multiset(&v.right_weil_weights),
        yes_no(v.weil_weights_equal)
    );
    let _ = writeln!(
        out,
        "isomorphic ss at v: {}",
        yes_no(v.isomorphic_ss_at_v)
    );
    match &v.conclusion {
        Conclusion::Isomorphic => {
            let _ = writeln!(out, "conclusion: isomorphic semisimplifications");
        }
        Conclusion::NotIsomorphic => {
            let _ = writeln!(out, "conclusion: not isomorphic");
        }
        Conclusion::Inconclusive(msg) => {
            let _ = writeln!(out, "conclusion: inconclusive — {msg}");
        }
    }
    out
}

pub fn thm2(
    v: &NonexistenceVerdict,
    place_v: &Place,
    prime: &Poly<FFElem>,
    h: usize,
    ctx: &BoundContext,
    entries: &[TargetEntry],
    as_json: bool,
) -> String {
    let s = &v.screening;
    let targets_json: Vec<Value> = entries
        .iter()
        .map(|t| {
            let tau = render_tau_entry(t.motive.tau().at(0, 0))
                .unwrap_or_else(|_| "<non-polynomial>".to_string());
            json!({"exponent": t.exponent, "tau": tau})
        })
        .collect();
    let (outcome, witness) = match &s.outcome {
        NonexistenceOutcome::Contradiction {
            weight,
            scaled,
            cap,
        } => (
            "contradiction",
            Some(json!({
                "weight": ratio_str(weight),
                "scaled": ratio_str(scaled),
                "cap": cap,
            })),
        ),
        NonexistenceOutcome::NoContradiction => ("no_contradiction", None),
    };
    if as_json {
        return pretty(&json!({
            "command": "check-thm2",
            "place_v": place_str(place_v),
            "place_v_degree": place_v.degree(),
            "prime": render_scalar_poly(prime),
            "prime_degree": s.prime_degree,
            "height_bound": h,
            "ctx": ctx_json(ctx),
            "targets": targets_json,
            "digits": v.digits,
            "target_weights": v.target_weights,
            "screening": {
                "threshold": s.threshold,
                "cap": s.cap,
                "weights": ratio_list(&s.weights),
                "scaled": ratio_list(&s.scaled),
            },
            "congruent_at_v": v.congruent_at_v,
            "equality_forced": v.equality_forced,
            "audit": audit_json(&v.audit),
            "outcome": outcome,
            "witness": witness,
        }));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "prime: {} (degree {})",
        render_scalar_poly(prime),
        s.prime_degree
    );
    let _ = writeln!(
        out,
        "place v: {} (degree {})",
        place_str(place_v),
        place_v.degree()
    );
    let _ = writeln!(out, "height bound: {h}");
    let _ = writeln!(out, "threshold: {} (prime degree above)", s.threshold);
    let digits: Vec<String> = v.digits.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "digits: [{}]", digits.join(", "));
    let _ = writeln!(out, "target weights: {}", multiset(&v.target_weights));
    let _ = writeln!(
        out,
        "candidate weil weights: {}, scaled: {}, digit cap: {}",
        ratio_multiset(&s.weights),
        ratio_multiset(&s.scaled),
        s.cap
    );
    let _ = writeln!(out, "congruent at v: {}", yes_no(v.congruent_at_v));
    let _ = writeln!(out, "equality forced: {}", yes_no(v.equality_forced));
    match &s.outcome {
        NonexistenceOutcome::Contradiction {
            weight,
            scaled,
            cap,
        } => {
            let _ = writeln!(
                out,
                "outcome: CONTRADICTION — weight {} scales to {}, not an integer digit in [0, {}]",
                ratio_str(weight),
                ratio_str(scaled),
                cap
            );
        }
        NonexistenceOutcome::NoContradiction => {
            let _ = writeln!(
                out,
                "outcome: no contradiction — every scaled weight is an integer digit within the cap"
            );
        }
    }
    out
}

pub fn repr_check(
    a: &FiniteGroupRep,
    charpoly_equal: bool,
    trace: &TraceVerdict,
    as_json: bool,
) -> String {
    if as_json {
        let trace_json = match trace {
            TraceVerdict::Decides(eq) => json!({"applies": true, "equal": eq}),
            TraceVerdict::DoesNotApply(msg) => json!({"applies": false, "reason": msg}),
        };
        return pretty(&json!({
            "command": "repr-check",
            "group_order": a.group().order(),
            "dimension": a.dim(),
            "field_order": a.field().order(),
            "charpoly_equal": charpoly_equal,
            "trace_criterion": trace_json,
        }));
    }
    let mut out = String::new();
    let _ = writeln!(out, "group order: {}", a.group().order());
    let _ = writeln!(out, "dimension: {}", a.dim());
    let _ = writeln!(out, "field order: {}", a.field().order());
    let _ = writeln!(
        out,
        "charpoly fingerprints equal: {}",
        yes_no(charpoly_equal)
    );
    match trace {
        TraceVerdict::Decides(eq) => {
            let _ = writeln!(out, "trace criterion: decides — equal: {}", yes_no(*eq));
        }
        TraceVerdict::DoesNotApply(msg) => {
            let _ = writeln!(out, "trace criterion: not applicable — {msg}");
        }
    }
    out
}
