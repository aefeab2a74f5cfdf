use std::path::Path;

use peirce_core::identities::{check_identity_1_1, check_identity_1_2, check_weak_commutativity};
use peirce_core::json::{circle_to_json, parse_circle, parse_system, parse_tripotent, system_to_json, SCHEMA_VERSION};
use peirce_core::left_unit::{
    check_bilinear_equations, check_circle_properties, extract_circle, is_left_unit, random_circle, reconstruct_triple,
    synthesize_from_circle,
};
use peirce_core::models::{build_by_name, ModelDescriptor};
use peirce_core::peirce::{
    check_invariants, check_operator_relations, classify, make_context, peirce_decompose, TripotentContext,
};
use peirce_core::{CheckMode, ComponentLabel, Error, TripleSystem, Vector};
use serde_json::{json, Map, Value};

use crate::{CheckSet, CliError, CommandKind, Report, RunConfig, Source, TripotentSource};

/// Largest total dimension of a random circle table.
const RANDOM_MAX_DIM: usize = 6;

struct Loaded {
    system: TripleSystem,
    canonical: Option<Vector>,
    descriptor: Option<ModelDescriptor>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn in_file(path: &Path) -> impl FnOnce(Error) -> CliError + '_ {
    move |source| CliError::Input {
        path: path.to_path_buf(),
        source,
    }
}

fn load(source: &Source) -> Result<Loaded, CliError> {
    match source {
        Source::Model { name, params } => {
            let m = build_by_name(name, params)?;
            Ok(Loaded {
                system: m.system,
                canonical: Some(m.tripotent),
                descriptor: Some(m.descriptor),
            })
        }
        Source::File(path) => {
            let text = read(path)?;
            let system = parse_system(&text).map_err(in_file(path))?;
            let has_tripotent = serde_json::from_str::<Value>(&text)
                .ok()
                .is_some_and(|v| v.get("tripotent").is_some());
            let canonical = if has_tripotent {
                Some(parse_tripotent(&text, system.dim()).map_err(in_file(path))?)
            } else {
                None
            };
            Ok(Loaded {
                system,
                canonical,
                descriptor: None,
            })
        }
        Source::Random { .. } => unreachable!("random sources only feed synthesize"),
    }
}

fn tripotent(config: &RunConfig, loaded: &Loaded) -> Result<Vector, CliError> {
    match &config.tripotent {
        TripotentSource::File(path) => parse_tripotent(&read(path)?, loaded.system.dim()).map_err(in_file(path)),
        TripotentSource::Canonical => loaded.canonical.clone().ok_or_else(|| {
            CliError::Usage(format!(
                "{} needs a tripotent: pass --tripotent or add a \"tripotent\" field to the input",
                config.command.name()
            ))
        }),
    }
}

fn header(command: CommandKind) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command.name()));
    m
}

fn system_summary(s: &TripleSystem) -> Value {
    json!({"label": s.label(), "dim": s.dim()})
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn finish(mut m: Map<String, Value>, passed: bool) -> Report {
    m.insert("passed".into(), json!(passed));
    Report {
        json: Value::Object(m),
        passed,
    }
}

pub fn execute(config: &RunConfig) -> Result<Report, CliError> {
    match config.command {
        CommandKind::Verify => verify(config),
        CommandKind::Decompose => decompose(config),
        CommandKind::LeftUnit => left_unit(config),
        CommandKind::Synthesize => synthesize(config),
        CommandKind::Example => example(config),
    }
}

fn verify(config: &RunConfig) -> Result<Report, CliError> {
    let loaded = load(&config.source)?;
    let s = &loaded.system;
    let weak_model = loaded.descriptor.as_ref().is_some_and(|d| d.weakly_commutative);
    let checks = config
        .checks
        .unwrap_or(if weak_model { CheckSet::All } else { CheckSet::Axioms });
    let mode = config.mode.resolve(s.dim());
    let mut reports = Vec::new();
    if checks.axioms() {
        reports.push(check_identity_1_1(s, mode));
        reports.push(check_identity_1_2(s, mode));
    }
    if checks.weak_comm() {
        reports.push(check_weak_commutativity(s, mode));
    }
    let passed = reports.iter().all(|r| r.passed);
    let mut m = header(config.command);
    m.insert("system".into(), system_summary(s));
    m.insert("mode".into(), to_value(&mode));
    m.insert("checks".into(), to_value(&reports));
    Ok(finish(m, passed))
}

/// Weak commutativity as known from the model, or checked on the input.
fn weak_commutativity(loaded: &Loaded, mode: CheckMode) -> Value {
    match &loaded.descriptor {
        Some(d) => json!({"value": d.weakly_commutative, "source": "model"}),
        None => {
            let r = check_weak_commutativity(&loaded.system, mode);
            json!({"value": r.passed, "source": "checked", "check": to_value(&r)})
        }
    }
}

fn weak_flag(v: &Value) -> bool {
    v["value"].as_bool().unwrap_or(false)
}

/// The tripotent context, or a failed report when `(eee) ≠ e`.
fn context<'s>(
    s: &'s TripleSystem,
    e: &Vector,
    m: &mut Map<String, Value>,
) -> Result<Option<TripotentContext<'s>>, CliError> {
    m.insert("tripotent".into(), to_value(e));
    match make_context(s, e) {
        Ok(ctx) => {
            m.insert("tripotent_check".into(), json!({"passed": true}));
            Ok(Some(ctx))
        }
        Err(Error::NotATripotent { residual }) => {
            m.insert(
                "tripotent_check".into(),
                json!({"passed": false, "residual": to_value(&residual)}),
            );
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn component_json(label: ComponentLabel, basis: &[Vector]) -> Value {
    json!({
        "label": label.to_string(),
        "lambda": label.lambda_text(),
        "mu": label.mu_text(),
        "sign": label.sign_text(),
        "dim": basis.len(),
        "basis": to_value(&basis),
    })
}

fn decompose(config: &RunConfig) -> Result<Report, CliError> {
    let loaded = load(&config.source)?;
    let s = &loaded.system;
    let e = tripotent(config, &loaded)?;
    let mut m = header(config.command);
    m.insert("system".into(), system_summary(s));
    let Some(ctx) = context(s, &e, &mut m)? else {
        return Ok(finish(m, false));
    };
    let weak = weak_commutativity(&loaded, config.mode.resolve(s.dim()));
    let weakly_commutative = weak_flag(&weak);
    m.insert("weakly_commutative".into(), weak);

    let relations = check_operator_relations(&ctx)?;
    let mut relations_pass = true;
    let rel: Vec<Value> = relations
        .checks
        .iter()
        .map(|c| {
            let required = weakly_commutative || !c.id.requires_weak_commutativity();
            relations_pass &= !required || c.passed();
            json!({
                "id": c.id.key(),
                "formula": c.id.formula(),
                "required": required,
                "passed": c.passed(),
                "residual_nonzero": c.residual_nonzero(),
            })
        })
        .collect();
    m.insert("relations".into(), Value::Array(rel));

    let d = match peirce_decompose(&ctx) {
        Ok(d) => d,
        Err(Error::Decomposition(msg)) => {
            m.insert("decomposition_error".into(), json!(msg));
            return Ok(finish(m, false));
        }
        Err(e) => return Err(e.into()),
    };
    let components: Vec<Value> = d
        .components
        .iter()
        .map(|(label, sub)| component_json(*label, sub.basis()))
        .collect();
    m.insert("components".into(), Value::Array(components));
    m.insert("total_dim".into(), json!(d.dims().values().sum::<usize>()));
    m.insert("tau_dim".into(), json!(d.tau.cols()));

    let invariants = check_invariants(&d)?;
    m.insert(
        "invariants".into(),
        Value::Array(
            invariants
                .checks
                .iter()
                .map(|(name, ok)| json!({"name": name, "passed": ok}))
                .collect(),
        ),
    );
    let classification = classify(&d, weakly_commutative);
    m.insert(
        "classification".into(),
        json!({
            "weakly_commutative": weakly_commutative,
            "must_vanish": if weakly_commutative {
                to_value(&ComponentLabel::WEAKLY_COMMUTATIVE_ZERO)
            } else {
                json!([])
            },
            "violations": to_value(&classification.violations),
        }),
    );
    let mut expected_ok = true;
    if let Some(desc) = &loaded.descriptor {
        let dims = d.dims();
        expected_ok = ComponentLabel::ALL
            .iter()
            .all(|l| dims[l] == desc.expected_dim(*l));
        m.insert(
            "expected".into(),
            json!({"components": to_value(&desc.expected_components), "matches": expected_ok}),
        );
    }
    let passed = relations_pass && invariants.passed() && classification.passed() && expected_ok;
    Ok(finish(m, passed))
}

fn left_unit(config: &RunConfig) -> Result<Report, CliError> {
    let loaded = load(&config.source)?;
    let s = &loaded.system;
    let e = tripotent(config, &loaded)?;
    let mut m = header(config.command);
    m.insert("system".into(), system_summary(s));
    let Some(ctx) = context(s, &e, &mut m)? else {
        return Ok(finish(m, false));
    };
    let unit = is_left_unit(&ctx);
    let l_minus_i = ctx.l.sub(&peirce_core::Matrix::identity(s.dim()))?;
    m.insert(
        "left_unit".into(),
        json!({"passed": unit, "l_minus_identity_nonzero": l_minus_i.nonzero_count()}),
    );
    if !unit {
        return Ok(finish(m, false));
    }
    let d = match peirce_decompose(&ctx) {
        Ok(d) => d,
        Err(Error::Decomposition(msg)) => {
            m.insert("decomposition_error".into(), json!(msg));
            return Ok(finish(m, false));
        }
        Err(e) => return Err(e.into()),
    };
    let x = match extract_circle(&ctx, &d) {
        Ok(x) => x,
        Err(Error::UnexpectedComponent(label)) => {
            m.insert("unexpected_component".into(), json!(label.to_string()));
            return Ok(finish(m, false));
        }
        Err(e) => return Err(e.into()),
    };
    let weak = weak_commutativity(&loaded, config.mode.resolve(s.dim()));
    let weakly_commutative = weak_flag(&weak);
    m.insert("weakly_commutative".into(), weak);
    m.insert("circle".into(), circle_to_json(&x.circle, Some(&x.unit)));
    m.insert("graded_basis".into(), to_value(&x.basis.columns()));
    let properties = check_circle_properties(&x.circle);
    let equations = check_bilinear_equations(&x.circle, weakly_commutative);
    let graded = reconstruct_triple(&x.circle).same_constants(&x.graded_system);
    let original = x.reconstruct_in_original_basis()?.same_constants(s);
    m.insert("properties".into(), to_value(&properties));
    m.insert("equations".into(), to_value(&equations));
    m.insert(
        "round_trip".into(),
        json!({"graded_basis": graded, "original_basis": original}),
    );
    let passed = properties.passed() && equations.passed() && graded && original;
    Ok(finish(m, passed))
}

fn synthesize(config: &RunConfig) -> Result<Report, CliError> {
    let (circle, source) = match &config.source {
        Source::File(path) => {
            let (c, _) = parse_circle(&read(path)?).map_err(in_file(path))?;
            (c, json!({"kind": "input"}))
        }
        Source::Random { seed } => {
            (
                random_circle(*seed, RANDOM_MAX_DIM),
                json!({"kind": "random", "seed": seed, "max_dim": RANDOM_MAX_DIM}),
            )
        }
        Source::Model { .. } => unreachable!("rejected when the configuration is built"),
    };
    let (system, report) = synthesize_from_circle(&circle)?;
    let passed = report.admissible && report.equations_pass && report.axioms_pass;
    let mut m = header(config.command);
    m.insert("source".into(), source);
    m.insert("circle".into(), circle_to_json(&circle, None));
    m.insert("synthesis".into(), to_value(&report));
    m.insert("system".into(), system_to_json(&system));
    Ok(finish(m, passed))
}

fn example(config: &RunConfig) -> Result<Report, CliError> {
    let loaded = load(&config.source)?;
    let mut doc = match system_to_json(&loaded.system) {
        Value::Object(m) => m,
        _ => unreachable!("system documents are objects"),
    };
    doc.insert("command".into(), json!(config.command.name()));
    if let Some(e) = &loaded.canonical {
        doc.insert("tripotent".into(), to_value(e));
    }
    if let Some(d) = &loaded.descriptor {
        doc.insert("descriptor".into(), to_value(d));
    }
    Ok(finish(doc, true))
}
