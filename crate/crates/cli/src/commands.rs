use fatpoints::alpha::{self, best_rd_a, best_rd_b, CorVariant};
use fatpoints::resolution::quasi_uniform_resolution;
use fatpoints::suite::{alpha_suite, formula_rd, tau_suite, uniform_shape};
use fatpoints::{
    actual_hilbert, actual_nu, beta_expected, betti_table, expected_dim, find_alpha, find_tau,
    hilbert_table, psi_decompose, reduce_fundamental, tau, BoundReport, DivisorClass, Exactness,
    FatPointSpec, Method, Move, PointConfig,
};
use num_rational::Ratio;
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::{BoundArgs, ClassArgs, Command, InputArgs, OracleArgs, TableArgs};
use crate::render::{self, input_json, report_json, report_text, value_json, value_text, Output};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] fatpoints::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Library(fatpoints::Error::Invariant(_)) => 1,
            CliError::Library(_) => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

fn precondition(what: impl Into<String>) -> CliError {
    CliError::Library(fatpoints::Error::Precondition(what.into()))
}

pub fn run(command: &Command) -> Result<Output> {
    match command {
        Command::Hilb(a) => hilb(a),
        Command::Alpha(a) => bound(a, Kind::Alpha),
        Command::Tau(a) => bound(a, Kind::Tau),
        Command::Beta(a) => beta(a),
        Command::Res(a) => res(a),
        Command::Bounds(a) => bounds(a),
        Command::Decomp(a) => decomp(a),
        Command::Psi(a) => psi(a),
        Command::Oracle(a) => oracle(a),
    }
}

fn scheme(input: &InputArgs) -> Result<(FatPointSpec, Value)> {
    let mults = input.values();
    let json = input_json(&mults);
    Ok((FatPointSpec::new(mults)?, json))
}

fn header(z: &FatPointSpec) -> String {
    let exactness = Exactness::of(z);
    let label = match exactness {
        Exactness::Exact => "exact",
        Exactness::ShghConjectural => "SHGH-conjectural",
    };
    let n = z.support_size();
    let noun = if n == 1 { "point" } else { "points" };
    format!("Z = {z}, {n} {noun} of positive multiplicity ({label})\n")
}

fn hilb(a: &TableArgs) -> Result<Output> {
    let (z, input) = scheme(&a.input)?;
    let table = hilbert_table(&z, a.window)?;
    let mut text = header(&z);
    if table.exactness == Exactness::ShghConjectural {
        text.push_str(
            "each value is a lower bound for dim I_t, equal to it under the SHGH conjecture\n",
        );
    }
    text.push_str(&format!("alpha = {}, tau = {}\n", table.alpha, table.tau));
    let rows: Vec<Vec<i64>> = table.rows.iter().map(|&(t, h)| vec![t, h]).collect();
    text.push_str(&render::table(&["t", "dim I_t"], &rows));
    let json = json!({
        "input": input,
        "direction": table.exactness.as_str(),
        "alpha": table.alpha,
        "tau": table.tau,
        "rows": table.rows.iter().map(|&(t, h)| json!({ "t": t, "h": h })).collect::<Vec<_>>(),
        "validity": render::validity(table.exactness),
    });
    Ok(Output { text, json })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Alpha,
    Tau,
}

fn bound(a: &BoundArgs, kind: Kind) -> Result<Output> {
    let (z, input) = scheme(&a.input)?;
    let exactness = Exactness::of(&z);
    let Some(name) = &a.method else {
        let (label, value) = match kind {
            Kind::Alpha => ("alpha", find_alpha(&z)),
            Kind::Tau => ("tau", find_tau(&z)),
        };
        return Ok(Output {
            text: value_text(label, exactness, value),
            json: value_json(&input, label, exactness, value),
        });
    };
    let Some(method) = Method::from_name(name) else {
        let known: Vec<&str> = Method::ALL.iter().map(|m| m.as_str()).collect();
        return usage(format!(
            "unknown method {name:?}; known methods: {}",
            known.join(", ")
        ));
    };
    let rep = match kind {
        Kind::Alpha => alpha_method(&z, method, a)?,
        Kind::Tau => tau_method(&z, method, a)?,
    };
    Ok(Output {
        text: report_text(&rep),
        json: report_json(&input, &rep),
    })
}

/// `(r, d)` from the flags, or the default when neither is given.
fn rd(a: &BoundArgs, default: impl FnOnce() -> Option<(i64, i64)>) -> Result<(i64, i64)> {
    match (a.r, a.d) {
        (Some(r), Some(d)) => Ok((r, d)),
        (None, None) => match default() {
            Some(v) => Ok(v),
            None => usage("this method needs --r and --d"),
        },
        _ => usage("give both --r and --d, or neither"),
    }
}

fn uniform(z: &FatPointSpec, method: Method) -> Result<(i64, i64)> {
    uniform_shape(z).ok_or_else(|| {
        precondition(format!(
            "{} needs a nonzero scheme whose positive multiplicities are all equal",
            method.as_str()
        ))
    })
}

fn unused(a: &BoundArgs, method: Method, j: bool, weights: bool, c: bool) -> Result<()> {
    let extra = [
        (j && a.j.is_some(), "--j"),
        (weights && a.weights.is_some(), "--weights"),
        (c && a.c.is_some(), "--c"),
    ];
    match extra.iter().find(|(given, _)| *given) {
        Some((_, flag)) => usage(format!("{flag} does not apply to {}", method.as_str())),
        None => Ok(()),
    }
}

fn alpha_method(z: &FatPointSpec, method: Method, a: &BoundArgs) -> Result<BoundReport> {
    use Method::*;
    let n = z.support_size() as i64;
    let not_weights = !matches!(method, NefTest);
    unused(a, method, !matches!(method, CorD), not_weights, true)?;
    let fixed = |a: &BoundArgs| {
        if a.r.is_some() || a.d.is_some() {
            usage(format!("{} takes no --r or --d", method.as_str()))
        } else {
            Ok(())
        }
    };
    let rep = match method {
        NefTest => {
            let Some(w) = &a.weights else {
                return usage("nef-test needs --weights");
            };
            let (r, d) = rd(a, || None)?;
            alpha::nef_test_bound(z, &w.0, r, d)?
        }
        CorA | CorB | CorC | CorD => {
            let variant = match method {
                CorA => CorVariant::A,
                CorB => CorVariant::B,
                CorC => CorVariant::C,
                _ => CorVariant::D,
            };
            match (a.r, a.d, method) {
                (None, None, CorA) => alpha::cor_a_best(z)?,
                (None, None, CorB) => alpha::cor_b_best(z)?,
                (None, None, CorD) if a.j.is_none() => alpha::cor_d_best(z),
                _ => {
                    let (r, d) = rd(a, || None)?;
                    alpha::cor_bound(z, variant, r, d, a.j)?
                }
            }
        }
        Unloading => {
            let (r, d) = rd(a, || Some(best_rd_a(n.max(1))))?;
            alpha::unloading_alpha(z, r, d)?
        }
        UnloadingFormula => {
            let (n, m) = uniform(z, method)?;
            let (r, d) = rd(a, || Some(best_rd_a(n)))?;
            alpha::unloading_alpha_formula(n, m, r, d)?
        }
        BestUnloading => {
            fixed(a)?;
            alpha::best_search_alpha(z)?
        }
        Roe => {
            fixed(a)?;
            alpha::roe_alpha(z)
        }
        Psi => {
            fixed(a)?;
            alpha::psi_alpha_bound(z)?
        }
        ModifiedUnloading => match (a.r, a.d) {
            (None, None) => {
                let (ra, da) = best_rd_a(n.max(1));
                let (rb, db) = best_rd_b(n.max(1));
                let first = alpha::hr_alpha(z, ra, da)?;
                let second = alpha::hr_alpha(z, rb, db)?;
                if second.value > first.value {
                    second
                } else {
                    first
                }
            }
            _ => {
                let (r, d) = rd(a, || None)?;
                alpha::hr_alpha(z, r, d)?
            }
        },
        HrFormulaA => {
            let (n, m) = uniform(z, method)?;
            let (r, d) = rd(a, || Some(formula_rd(n)))?;
            alpha::hr_alpha_formula_a(n, m, r, d)?
        }
        HrFormulaB => {
            let (n, m) = uniform(z, method)?;
            let (r, d) = rd(a, || {
                let d = formula_rd(n).1;
                Some((d * d, d))
            })?;
            alpha::hr_alpha_formula_b(n, m, r, d)?
        }
        _ => return usage(format!("{} bounds tau, not alpha", method.as_str())),
    };
    Ok(rep)
}

fn tau_method(z: &FatPointSpec, method: Method, a: &BoundArgs) -> Result<BoundReport> {
    use Method::*;
    let n = z.support_size() as i64;
    unused(a, method, true, true, !matches!(method, Ran))?;
    let takes_rd = matches!(method, ModifiedUnloading | HrFormulaA | HrFormulaB);
    if !takes_rd && (a.r.is_some() || a.d.is_some()) {
        return usage(format!("{} takes no --r or --d", method.as_str()));
    }
    let rep = match method {
        Segre | Cubic | Ballico | Xu | Hhf => {
            let (n, m) = uniform(z, method)?;
            match method {
                Segre => tau::segre_tau(n, m)?,
                Cubic => tau::cubic_tau(n, m)?,
                Ballico => tau::ballico_tau(n, m)?,
                Xu => tau::xu_tau(n, m)?,
                _ => tau::hhf_tau(n, m)?,
            }
        }
        Gimigliano => tau::gimigliano_tau(z)?,
        Hirschowitz => tau::hirschowitz_tau(z)?,
        Catalisano => tau::catalisano_tau(z)?,
        Roe => {
            let mut w = z.sorted();
            if w.len() < 2 {
                w.resize(2, 0);
            }
            tau::roe_tau(&FatPointSpec::new(w)?)?
        }
        ModifiedUnloading => match (a.r, a.d) {
            (None, None) => {
                let (ra, da) = best_rd_a(n.max(1));
                let (rb, db) = best_rd_b(n.max(1));
                let first = tau::hr_tau(z, ra, da)?;
                let second = tau::hr_tau(z, rb, db)?;
                if second.value < first.value {
                    second
                } else {
                    first
                }
            }
            _ => {
                let (r, d) = rd(a, || None)?;
                tau::hr_tau(z, r, d)?
            }
        },
        HrFormulaA => {
            let (n, m) = uniform(z, method)?;
            let (r, d) = rd(a, || Some(formula_rd(n)))?;
            tau::hr_tau_formula_a(n, m, r, d)?
        }
        HrFormulaB => {
            let (n, m) = uniform(z, method)?;
            let (r, d) = rd(a, || {
                let d = formula_rd(n).1;
                Some((d * d, d))
            })?;
            tau::hr_tau_formula_b(n, m, r, d)?
        }
        Ran => {
            let (n, m) = uniform(z, method)?;
            match a.c {
                Some(c) => tau::ran_tau(n, m, c)?,
                None => {
                    let (ra, da) = best_rd_a(n);
                    let (rb, db) = best_rd_b(n);
                    let first = tau::ran_tau(n, m, Ratio::new(n * da, ra))?;
                    let second = tau::ran_tau(n, m, Ratio::new(rb, db))?;
                    if second.value < first.value {
                        second
                    } else {
                        first
                    }
                }
            }
        }
        _ => return usage(format!("{} bounds alpha, not tau", method.as_str())),
    };
    Ok(rep)
}

fn beta(a: &InputArgs) -> Result<Output> {
    let (z, input) = scheme(a)?;
    let exactness = Exactness::of(&z);
    let value = beta_expected(&z)?;
    Ok(Output {
        text: value_text("beta", exactness, value),
        json: value_json(&input, "beta", exactness, value),
    })
}

fn in_window(window: Option<(i64, i64)>, t: i64) -> bool {
    window.is_none_or(|(lo, hi)| lo <= t && t <= hi)
}

fn res(a: &TableArgs) -> Result<Output> {
    let (z, input) = scheme(&a.input)?;
    if let Some((lo, hi)) = a.window {
        if lo > hi {
            return Err(precondition(format!(
                "window lower end {lo} exceeds upper end {hi}"
            )));
        }
    }
    let w = z.sorted();
    let quasi_uniform = w.len() >= 9 && w[0] == w[8] && !z.is_zero();
    let mut text = header(&z);
    let mut json = json!({ "input": input });
    if z.support_size() <= 8 || !quasi_uniform {
        let b = betti_table(&z)?;
        text.push_str(&format!("alpha = {}, tau = {}\n", b.alpha, b.tau));
        let rows: Vec<_> = b.rows.iter().filter(|r| in_window(a.window, r.t)).collect();
        let cells: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| vec![r.t, r.h, r.nu, r.s, r.ker])
            .collect();
        text.push_str(&render::table(
            &["t", "dim I_t", "nu", "s", "ker mu"],
            &cells,
        ));
        json["direction"] = json!(Exactness::Exact.as_str());
        json["alpha"] = json!(b.alpha);
        json["tau"] = json!(b.tau);
        json["rows"] = rows
            .iter()
            .map(|r| json!({ "t": r.t, "h": r.h, "nu": r.nu, "s": r.s, "ker": r.ker }))
            .collect();
    }
    if quasi_uniform {
        let q = quasi_uniform_resolution(&z)?;
        let note = "conjectural: assumes maximal rank of the multiplication maps";
        text.push_str(&format!(
            "Predicted resolution (conjectural): 0 -> R[-{0}]^{4} + R[-{1}]^{3} -> R[-{1}]^{2} + R[-{5}]^{6}\n",
            q.alpha + 2,
            q.alpha + 1,
            q.b,
            q.c,
            q.d,
            q.alpha,
            q.a
        ));
        text.push_str(&format!(
            "  alpha={}, a={}, b={}, c={}, d={}\n      note: {note}\n",
            q.alpha, q.a, q.b, q.c, q.d
        ));
        json["quasi_uniform"] = json!({
            "alpha": q.alpha, "a": q.a, "b": q.b, "c": q.c, "d": q.d,
            "direction": "shgh-conjectural",
            "validity": [note],
        });
    }
    Ok(Output { text, json })
}

fn bounds(a: &InputArgs) -> Result<Output> {
    let (z, input) = scheme(a)?;
    let exactness = Exactness::of(&z);
    let (ea, et) = (find_alpha(&z), find_tau(&z));
    let (lower, upper) = rayon::join(|| alpha_suite(&z), || tau_suite(&z));

    let mut text = match uniform_shape(&z) {
        Some((n, m)) if z.len() as i64 == n => {
            format!("number of general points n of P2: {n}\nmultiplicity m of each point: {m}\n\n")
        }
        _ => format!("{}\n", header(&z)),
    };
    text.push_str(&value_text("alpha", exactness, ea));
    text.push_str("Lower bounds on alpha:\n");
    lower.iter().for_each(|r| text.push_str(&report_text(r)));
    text.push('\n');
    text.push_str(&value_text("tau", exactness, et));
    text.push_str("Upper bounds on tau:\n");
    upper.iter().for_each(|r| text.push_str(&report_text(r)));

    let mut items = vec![value_json(&input, "alpha", exactness, ea)];
    items.extend(lower.iter().map(|r| report_json(&input, r)));
    items.push(value_json(&input, "tau", exactness, et));
    items.extend(upper.iter().map(|r| report_json(&input, r)));
    Ok(Output {
        text,
        json: Value::Array(items),
    })
}

fn class(a: &ClassArgs) -> (DivisorClass, Value) {
    let mults = a.input.values();
    let json = json!({ "degree": a.degree, "mults": mults, "n": mults.len() });
    (DivisorClass::new(a.degree, mults), json)
}

fn class_json(f: &DivisorClass) -> Value {
    json!({ "degree": f.degree, "mults": f.mults })
}

fn decomp(a: &ClassArgs) -> Result<Output> {
    let (f, input) = class(a);
    let (reduced, word) = reduce_fundamental(&f);
    let quads = word
        .moves()
        .iter()
        .filter(|m| matches!(m, Move::Quad))
        .count();
    let e = expected_dim(&f);
    let text = format!(
        "F = {f}\nreduced class: {reduced}\nquadratic transforms: {quads}\nexpected dimension e(F): {e}\n"
    );
    let moves: Vec<Value> = word
        .moves()
        .iter()
        .map(|m| match m {
            Move::Quad => json!("quad"),
            Move::Permute(p) => json!({ "permute": p }),
        })
        .collect();
    let json = json!({
        "input": input,
        "reduced": class_json(&reduced),
        "quadratic_transforms": quads,
        "moves": moves,
        "expected_dim": e,
    });
    Ok(Output { text, json })
}

fn psi(a: &ClassArgs) -> Result<Output> {
    let (f, input) = class(a);
    let dec = psi_decompose(&f)?;
    let mut text = format!(
        "F = {f}\nin Psi: {}\n",
        if dec.in_psi { "yes" } else { "no" }
    );
    if dec.in_psi {
        text.push_str(&format!("H = {}\n", dec.h_part));
        if dec.n_part.is_empty() {
            text.push_str("N = 0\n");
        }
        for (c, k) in &dec.n_part {
            text.push_str(&format!("N includes {k} x {c}\n"));
        }
    }
    let json = json!({
        "input": input,
        "in_psi": dec.in_psi,
        "h_part": if dec.in_psi { class_json(&dec.h_part) } else { Value::Null },
        "n_part": dec.n_part.iter().map(|(c, k)| json!({ "class": class_json(c), "coefficient": k })).collect::<Vec<_>>(),
    });
    Ok(Output { text, json })
}

fn oracle(a: &OracleArgs) -> Result<Output> {
    let (z, input) = scheme(&a.input)?;
    let cfg = PointConfig::random(z.len(), a.seed, a.prime)?;
    let (lo, hi) = match (a.degree, a.window) {
        (Some(t), _) => (t, t),
        (None, Some(w)) => w,
        (None, None) => (find_alpha(&z) - 1, find_tau(&z) + 1),
    };
    if lo > hi {
        return Err(precondition(format!(
            "window lower end {lo} exceeds upper end {hi}"
        )));
    }
    let (lo, hi) = (lo.max(0), hi.max(0));
    let mut rows = Vec::new();
    for t in lo..=hi {
        let h = actual_hilbert(&cfg, &z, t)?;
        let nu = actual_nu(&cfg, &z, t)?;
        rows.push(vec![t, h, expected_dim(&z.class_at(t)), nu]);
    }
    let mut text = header(&z);
    text.push_str(&format!(
        "random points mod {} from seed {}\n",
        cfg.prime(),
        cfg.seed()
    ));
    text.push_str(&render::table(&["t", "dim I_t", "expected", "nu"], &rows));
    let json = json!({
        "input": input,
        "prime": cfg.prime(),
        "seed": cfg.seed(),
        "rows": rows.iter().map(|r| json!({ "t": r[0], "h": r[1], "expected": r[2], "nu": r[3] })).collect::<Vec<_>>(),
    });
    Ok(Output { text, json })
}
