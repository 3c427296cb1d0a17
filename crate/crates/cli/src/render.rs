//! Text and JSON renderings built from the same values.
//!
//! JSON objects use serde_json's default sorted map, so keys come out in a
//! canonical order and a parse/re-serialize cycle reproduces the bytes.

use fatpoints::report::SHGH_CONDITIONAL;
use fatpoints::{BoundReport, Exactness};
use num_rational::Ratio;
use serde_json::{json, Value};

/// One command's result in both forms.
pub struct Output {
    pub text: String,
    pub json: Value,
}

pub fn ratio(r: &Ratio<i64>) -> String {
    if r.is_integer() {
        format!("{}/1", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn input_json(mults: &[i64]) -> Value {
    json!({ "mults": mults, "n": mults.len() })
}

pub fn report_json(input: &Value, rep: &BoundReport) -> Value {
    let p = &rep.params;
    let mut params = json!({ "r": p.r, "d": p.d, "j": p.j });
    if let Some(c) = &p.c {
        params["c"] = json!(ratio(c));
    }
    if let Some(w) = &p.weights {
        params["weights"] = json!(w.iter().map(ratio).collect::<Vec<_>>());
    }
    json!({
        "input": input,
        "method": rep.method.as_str(),
        "direction": rep.direction.as_str(),
        "value": rep.value,
        "params": params,
        "validity": rep.validity,
    })
}

/// `  method (r=19, d=4): 15`, then one indented line per caveat.
pub fn report_text(rep: &BoundReport) -> String {
    let p = &rep.params;
    let mut parts = Vec::new();
    if let Some(r) = p.r {
        parts.push(format!("r={r}"));
    }
    if let Some(d) = p.d {
        parts.push(format!("d={d}"));
    }
    if let Some(j) = p.j {
        parts.push(format!("j={j}"));
    }
    if let Some(c) = &p.c {
        parts.push(format!("c={}", ratio(c)));
    }
    if let Some(w) = &p.weights {
        parts.push(format!(
            "weights={}",
            w.iter().map(ratio).collect::<Vec<_>>().join(",")
        ));
    }
    let params = if parts.is_empty() {
        String::new()
    } else {
        format!(" ({})", parts.join(", "))
    };
    let mut out = format!("  {}{}: {}\n", rep.method.as_str(), params, rep.value);
    for note in &rep.validity {
        out.push_str(&format!("      note: {note}\n"));
    }
    out
}

pub fn validity(exactness: Exactness) -> Vec<&'static str> {
    match exactness {
        Exactness::Exact => vec![],
        Exactness::ShghConjectural => vec![SHGH_CONDITIONAL],
    }
}

/// An exact (or SHGH-predicted) invariant in the bound-report schema.
pub fn value_json(input: &Value, method: &str, exactness: Exactness, value: i64) -> Value {
    json!({
        "input": input,
        "method": method,
        "direction": exactness.as_str(),
        "value": value,
        "params": { "r": null, "d": null, "j": null },
        "validity": validity(exactness),
    })
}

/// The customary wording: "Value of alpha" for at most nine points,
/// "Expected value of alpha (via SHGH conjecture)" beyond, with the note on
/// which side the prediction errs.
pub fn value_text(name: &str, exactness: Exactness, value: i64) -> String {
    match exactness {
        Exactness::Exact => format!("Value of {name}: {value}\n"),
        Exactness::ShghConjectural => {
            let side = match name {
                "alpha" => " Note: The SHGH conjectural value of alpha is an upper bound.\n",
                "tau" => " Note: The SHGH conjectural value of tau is a lower bound.\n",
                _ => "",
            };
            format!("Expected value of {name} (via SHGH conjecture): {value}\n{side}")
        }
    }
}

/// Right-aligned columns under a header row.
pub fn table(header: &[&str], rows: &[Vec<i64>]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect())
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            cells
                .iter()
                .map(|r| r[i].len())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: Vec<&str>| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect();
        format!(" {}\n", padded.join("  "))
    };
    let mut out = line(header.to_vec());
    for r in &cells {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
