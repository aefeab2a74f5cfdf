//! Plain-text views of JSON reports.
//!
//! Every figure printed here is read back from the report document, so a
//! table never shows a number the JSON does not contain.

use std::fmt::Write;

use peirce_core::json::parse_vector;
use serde_json::Value;

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn verdict(v: &Value) -> &'static str {
    if v.as_bool() == Some(true) {
        "passed"
    } else {
        "FAILED"
    }
}

/// A JSON vector of scalars in the `a + b√2 + c√3 + d√6` notation.
fn vector(v: &Value) -> String {
    let len = v.as_array().map_or(0, Vec::len);
    match parse_vector(v, len, "") {
        Ok(vec) => vec.to_string(),
        Err(_) => v.to_string(),
    }
}

fn rows(v: &Value) -> &[Value] {
    v.as_array().map_or(&[], Vec::as_slice)
}

fn columns(out: &mut String, table: &[Vec<String>]) {
    let width = table.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| table.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    for row in table {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                let pad = widths[c] - cell.chars().count();
                let _ = write!(line, "{cell}{}  ", " ".repeat(pad));
            }
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
}

fn system_line(out: &mut String, r: &Value) {
    let s = &r["system"];
    let _ = writeln!(out, "system: {} (dim {})", text(&s["label"]), text(&s["dim"]));
}

fn mode_text(m: &Value) -> String {
    match m {
        Value::String(s) => s.clone(),
        Value::Object(o) => o
            .iter()
            .map(|(k, v)| format!("{k} (seed {}, {} samples)", text(&v["seed"]), text(&v["count"])))
            .collect(),
        other => text(other),
    }
}

fn identity_rows(out: &mut String, checks: &Value) {
    let mut table = vec![vec!["identity".to_string(), "tuples".into(), "result".into()]];
    for c in rows(checks) {
        table.push(vec![text(&c["identity"]), text(&c["tuples"]), verdict(&c["passed"]).into()]);
    }
    columns(out, &table);
    for c in rows(checks) {
        let w = &c["witness"];
        if w.is_null() {
            continue;
        }
        let vars: Vec<String> = rows(&c["variables"]).iter().map(text).collect();
        let t = &w["tuple"];
        let _ = if let Some(idx) = t.get("basis") {
            let named: Vec<String> = vars
                .iter()
                .zip(rows(idx))
                .map(|(n, i)| format!("{n}=e{}", text(i)))
                .collect();
            writeln!(out, "witness {}: basis {}", text(&c["identity"]), named.join(" "))
        } else {
            let _ = writeln!(out, "witness {}: sample {}", text(&c["identity"]), text(&t["sample"]["index"]));
            let mut r = Ok(());
            for (n, v) in vars.iter().zip(rows(&t["sample"]["vectors"])) {
                r = writeln!(out, "  {n} = {}", vector(v));
            }
            r
        };
        let _ = writeln!(out, "  residual {}", vector(&w["residual"]));
    }
}

fn verify(out: &mut String, r: &Value) {
    system_line(out, r);
    let _ = writeln!(out, "mode: {}", mode_text(&r["mode"]));
    identity_rows(out, &r["checks"]);
}

fn tripotent_failure(out: &mut String, r: &Value) -> bool {
    let t = &r["tripotent_check"];
    if t["passed"].as_bool() == Some(false) {
        let _ = writeln!(out, "not a tripotent: (eee) - e = {}", vector(&t["residual"]));
        return true;
    }
    false
}

fn weak_line(out: &mut String, r: &Value) {
    let w = &r["weakly_commutative"];
    if !w.is_null() {
        let _ = writeln!(out, "weakly commutative: {} ({})", text(&w["value"]), text(&w["source"]));
    }
}

fn decompose(out: &mut String, r: &Value) {
    system_line(out, r);
    if tripotent_failure(out, r) {
        return;
    }
    weak_line(out, r);
    let mut table = vec![vec!["relation".to_string(), "formula".into(), "required".into(), "nonzero".into(), "result".into()]];
    for c in rows(&r["relations"]) {
        table.push(vec![
            text(&c["id"]),
            text(&c["formula"]),
            if c["required"].as_bool() == Some(true) { "yes" } else { "no" }.into(),
            text(&c["residual_nonzero"]),
            verdict(&c["passed"]).into(),
        ]);
    }
    columns(out, &table);
    if let Some(msg) = r.get("decomposition_error") {
        let _ = writeln!(out, "decomposition failed: {}", text(msg));
        return;
    }
    out.push('\n');
    let expected = &r["expected"]["components"];
    let mut table = vec![vec!["component".to_string(), "lambda".into(), "mu".into(), "dim".into()]];
    if !expected.is_null() {
        table[0].push("expected".into());
    }
    for c in rows(&r["components"]) {
        if c["dim"].as_u64() == Some(0) && expected.get(text(&c["label"])).is_none() {
            continue;
        }
        let mut row = vec![text(&c["label"]), text(&c["lambda"]), text(&c["mu"]), text(&c["dim"])];
        if !expected.is_null() {
            row.push(expected.get(text(&c["label"])).map_or("0".into(), text));
        }
        table.push(row);
    }
    table.push(vec!["total".into(), String::new(), String::new(), text(&r["total_dim"])]);
    columns(out, &table);
    let _ = writeln!(out, "tau dimension: {}", text(&r["tau_dim"]));
    out.push('\n');
    let mut table = vec![vec!["invariant".to_string(), "result".into()]];
    for c in rows(&r["invariants"]) {
        table.push(vec![text(&c["name"]), verdict(&c["passed"]).into()]);
    }
    columns(out, &table);
    let cl = &r["classification"];
    let violations: Vec<String> = rows(&cl["violations"]).iter().map(text).collect();
    if !violations.is_empty() {
        let _ = writeln!(out, "nonzero components that must vanish: {}", violations.join(", "));
    }
    if let Some(m) = r["expected"].get("matches") {
        let _ = writeln!(out, "dimensions match the model: {}", text(m));
    }
}

fn check_table(out: &mut String, title: &str, t: &Value) {
    let mut table = vec![vec![title.to_string(), "description".into(), "result".into()]];
    for e in rows(&t["entries"]) {
        table.push(vec![text(&e["id"]), text(&e["description"]), verdict(&e["passed"]).into()]);
    }
    columns(out, &table);
    for e in rows(&t["entries"]) {
        let w = &e["witness"];
        if !w.is_null() {
            let _ = writeln!(
                out,
                "witness {}: pair (e{}, e{}), residual {}",
                text(&e["id"]),
                text(&w["i"]),
                text(&w["j"]),
                vector(&w["residual"])
            );
        }
    }
}

fn dims_line(out: &mut String, dims: &Value) {
    let _ = writeln!(
        out,
        "graded dims: U11+ {}, U11- {}, U13+ {}, U13- {}",
        text(&dims["u11p"]),
        text(&dims["u11m"]),
        text(&dims["u13p"]),
        text(&dims["u13m"])
    );
}

fn left_unit(out: &mut String, r: &Value) {
    system_line(out, r);
    if tripotent_failure(out, r) {
        return;
    }
    let lu = &r["left_unit"];
    let _ = writeln!(out, "left unit: {}", verdict(&lu["passed"]));
    if lu["passed"].as_bool() != Some(true) {
        let _ = writeln!(out, "  L - I has {} nonzero entries", text(&lu["l_minus_identity_nonzero"]));
        return;
    }
    if let Some(msg) = r.get("decomposition_error") {
        let _ = writeln!(out, "decomposition failed: {}", text(msg));
        return;
    }
    if let Some(label) = r.get("unexpected_component") {
        let _ = writeln!(out, "unexpected nonzero component {}", text(label));
        return;
    }
    weak_line(out, r);
    dims_line(out, &r["circle"]["dims"]);
    let _ = writeln!(out, "unit (graded coordinates): {}", vector(&r["circle"]["unit"]));
    out.push('\n');
    check_table(out, "property", &r["properties"]);
    out.push('\n');
    check_table(out, "equation", &r["equations"]);
    let rt = &r["round_trip"];
    let _ = writeln!(
        out,
        "\nreconstruction: graded basis {}, original basis {}",
        verdict(&rt["graded_basis"]),
        verdict(&rt["original_basis"])
    );
}

fn synthesize(out: &mut String, r: &Value) {
    let src = &r["source"];
    match src["kind"].as_str() {
        Some("random") => {
            let _ = writeln!(out, "random circle table: seed {}, max dim {}", text(&src["seed"]), text(&src["max_dim"]));
        }
        _ => {
            let _ = writeln!(out, "circle table from input");
        }
    }
    let s = &r["synthesis"];
    dims_line(out, &s["space"]);
    let _ = writeln!(out, "circle entries: {}", rows(&r["circle"]["circle"]).len());
    out.push('\n');
    check_table(out, "property", &s["properties"]);
    out.push('\n');
    check_table(out, "equation", &s["equations"]);
    out.push('\n');
    identity_rows(out, &s["axioms"]);
    let _ = writeln!(
        out,
        "\nadmissible: {}, equations: {}, axioms: {}",
        verdict(&s["admissible"]),
        verdict(&s["equations_pass"]),
        verdict(&s["axioms_pass"])
    );
    let lu = &s["left_unit"];
    match lu.get("element").filter(|e| !e.is_null()) {
        Some(e) => {
            let _ = writeln!(
                out,
                "left unit candidate {}: unique {}, tripotent {}, left unit {}, grading {}",
                vector(e),
                text(&lu["unique"]),
                text(&lu["tripotent"]),
                text(&lu["left_unit"]),
                text(&lu["operators_match_grading"])
            );
        }
        None => {
            let _ = writeln!(out, "no element realizes the circle product");
        }
    }
}

fn example(out: &mut String, r: &Value) {
    let _ = writeln!(out, "system: {} (dim {})", text(&r["label"]), text(&r["dim"]));
    let _ = writeln!(out, "nonzero structure constants: {}", rows(&r["constants"]).len());
    if let Some(e) = r.get("tripotent") {
        let _ = writeln!(out, "tripotent: {}", vector(e));
    }
    let d = &r["descriptor"];
    if let Some(comps) = d["expected_components"].as_object() {
        let mut table = vec![vec!["component".to_string(), "dim".into()]];
        for (k, v) in comps {
            table.push(vec![k.clone(), text(v)]);
        }
        columns(out, &table);
        let _ = writeln!(out, "weakly commutative: {}", text(&d["weakly_commutative"]));
    }
}

pub fn render(report: &Value) -> String {
    let mut out = String::new();
    match report["command"].as_str() {
        Some("verify") => verify(&mut out, report),
        Some("decompose") => decompose(&mut out, report),
        Some("left-unit") => left_unit(&mut out, report),
        Some("synthesize") => synthesize(&mut out, report),
        Some("example") => example(&mut out, report),
        _ => out.push_str(&report.to_string()),
    }
    let _ = writeln!(out, "result: {}", verdict(&report["passed"]));
    out
}
