//! Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use peirce_core::identities::{check_identity_1_1, check_identity_1_2, check_weak_commutativity};
use peirce_core::left_unit::{
    check_bilinear_equations, check_circle_properties, extract_circle, mutate, random_circle, reconstruct_triple,
    Mutation, ADMISSIBILITY, BILINEAR_EQUATIONS,
};
use peirce_core::models::{build_akn_ank, build_ann_ann, build_dnk, build_structurable_matrix, Model};
use peirce_core::peirce::{check_invariants, check_operator_relations, make_context, peirce_decompose, RelationId};
use peirce_core::{CheckMode, ComponentLabel};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn all_models() -> Vec<Model> {
    vec![
        build_akn_ank(1, 1).unwrap(),
        build_akn_ank(1, 2).unwrap(),
        build_akn_ank(2, 2).unwrap(),
        build_akn_ank(2, 3).unwrap(),
        build_ann_ann(1).unwrap(),
        build_ann_ann(2).unwrap(),
        build_dnk(3, 2, 1).unwrap(),
        build_dnk(4, 3, 2).unwrap(),
        build_dnk(3, 3, 3).unwrap(),
        build_structurable_matrix(2).unwrap(),
        build_structurable_matrix(3).unwrap(),
    ]
}

fn axiom_suite() -> Outcome {
    let exhaustive = [
        build_akn_ank(2, 3).unwrap(),
        build_dnk(3, 2, 1).unwrap(),
        build_dnk(4, 3, 2).unwrap(),
        build_structurable_matrix(2).unwrap(),
    ];
    let start = Instant::now();
    for m in &exhaustive {
        let s = &m.system;
        for r in [check_identity_1_1(s, CheckMode::Exhaustive), check_identity_1_2(s, CheckMode::Exhaustive)] {
            ensure(r.passed, format!("{} fails {}", s.label(), r.identity.key()))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(600), format!("exhaustive runs took {elapsed:?}"))?;
    let a33 = build_ann_ann(1).unwrap().system;
    let mode = CheckMode::Sampled { seed: 1, count: 10_000 };
    for r in [check_identity_1_1(&a33, mode), check_identity_1_2(&a33, mode)] {
        ensure(r.passed && r.tuples >= 10_000, format!("A33 fails {}", r.identity.key()))?;
    }
    Ok(format!("exhaustive dims 12/6/12/4 in {:.1}s, A33 10000 samples", elapsed.as_secs_f64()))
}

fn operator_relations() -> Outcome {
    for m in all_models() {
        let ctx = make_context(&m.system, &m.tripotent).map_err(|e| e.to_string())?;
        let rel = check_operator_relations(&ctx).map_err(|e| e.to_string())?;
        ensure(rel.general_relations_pass(), format!("{}: general relations fail", m.system.label()))?;
        if m.descriptor.name == "dnk" {
            ensure(rel.get(RelationId::Eq1_42).passed(), format!("{}: 1.42 fails", m.system.label()))?;
        }
    }
    let a23 = build_akn_ank(2, 3).unwrap();
    let ctx = make_context(&a23.system, &a23.tripotent).unwrap();
    let nonzero = check_operator_relations(&ctx).unwrap().get(RelationId::Eq1_42).residual_nonzero();
    ensure(nonzero > 0, "1.42 holds for A23-A32")?;
    Ok(format!("11 models; A23-A32 residual for 1.42 has {nonzero} nonzero entries"))
}

fn dims_of(m: &Model, labels: &[ComponentLabel]) -> Result<Vec<usize>, String> {
    let ctx = make_context(&m.system, &m.tripotent).map_err(|e| e.to_string())?;
    let d = peirce_decompose(&ctx).map_err(|e| e.to_string())?;
    let total: usize = d.dims().values().sum();
    ensure(total == m.system.dim(), format!("{}: components sum to {total}", m.system.label()))?;
    Ok(labels.iter().map(|l| d.dim(*l)).collect())
}

fn decomposition_dimensions() -> Outcome {
    use ComponentLabel::*;
    let cases: [(Model, Vec<ComponentLabel>, Vec<usize>); 4] = [
        (
            build_akn_ank(2, 3).unwrap(),
            vec![OneOnePlus, OneOneMinus, OneThreePlus, OneThreeMinus],
            vec![5, 3, 3, 1],
        ),
        (
            build_ann_ann(2).unwrap(),
            vec![
                ZeroZero,
                HalfHalf,
                OneOnePlus,
                OneOneMinus,
                ThreeHalvesThreeHalves,
                NegHalfZero,
                ZeroOne,
                HalfTwo,
                OneThreePlus,
                OneThreeMinus,
            ],
            vec![4, 16, 9, 3, 8, 8, 12, 8, 3, 1],
        ),
        (
            build_dnk(4, 3, 2).unwrap(),
            vec![ZeroZero, OneOnePlus, OneOneMinus, ZeroOne, OneThreeMinus],
            vec![2, 3, 4, 2, 1],
        ),
        (build_structurable_matrix(2).unwrap(), vec![OneOnePlus, OneThreeMinus], vec![3, 1]),
    ];
    for (m, labels, expected) in &cases {
        let got = dims_of(m, labels)?;
        ensure(&got == expected, format!("{}: {got:?} != {expected:?}", m.system.label()))?;
        let listed: usize = expected.iter().sum();
        ensure(listed == m.system.dim(), format!("{}: listed components miss dimensions", m.system.label()))?;
    }
    Ok("A23-A32 (5,3,3,1), A66-A66 ten parts of 72, D43 (2,3,4,2,1), M2 (3,1)".into())
}

fn invariant_suite() -> Outcome {
    let mut count = 0;
    for m in all_models() {
        let ctx = make_context(&m.system, &m.tripotent).map_err(|e| e.to_string())?;
        let d = peirce_decompose(&ctx).map_err(|e| e.to_string())?;
        let inv = check_invariants(&d).map_err(|e| e.to_string())?;
        let failed: Vec<&str> = inv.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
        ensure(failed.is_empty(), format!("{}: {failed:?}", m.system.label()))?;
        count += inv.checks.len();
        if m.descriptor.name == "ann" && m.descriptor.params["l"] == 2 {
            ensure((d.tau.rows(), d.tau.cols()) == (8, 8), "A66 tau is not 8x8")?;
        }
    }
    Ok(format!("{count} invariant checks over 11 decompositions, A66 tau 8x8"))
}

fn weak_dichotomy() -> Outcome {
    for (n, k, l) in [(4, 3, 2), (3, 2, 1)] {
        let s = build_dnk(n, k, l).unwrap().system;
        ensure(check_weak_commutativity(&s, CheckMode::Exhaustive).passed, format!("D{n}{k} fails 1.41"))?;
    }
    let a23 = build_akn_ank(2, 3).unwrap().system;
    let r = check_weak_commutativity(&a23, CheckMode::Exhaustive);
    let w = r.witness.ok_or("A23-A32 passes 1.41")?;
    ensure(!w.residual.is_zero(), "witness residual is zero")?;
    for (n, k, l) in [(3, 2, 1), (4, 3, 2), (3, 3, 3), (2, 2, 2), (5, 3, 1)] {
        let m = build_dnk(n, k, l).unwrap();
        let ctx = make_context(&m.system, &m.tripotent).map_err(|e| e.to_string())?;
        let d = peirce_decompose(&ctx).map_err(|e| e.to_string())?;
        for label in ComponentLabel::WEAKLY_COMMUTATIVE_ZERO {
            ensure(d.component(label).is_zero(), format!("D{n}{k} l={l}: {label} nonzero"))?;
        }
    }
    Ok(format!("D43, D32 pass; A23-A32 witness {:?}", w.tuple))
}

fn left_unit_round_trip() -> Outcome {
    let mut notes = Vec::new();
    for (m, weak) in [(build_dnk(3, 3, 3).unwrap(), true), (build_akn_ank(2, 3).unwrap(), false)] {
        let label = m.system.label().to_string();
        let ctx = make_context(&m.system, &m.tripotent).map_err(|e| e.to_string())?;
        let d = peirce_decompose(&ctx).map_err(|e| e.to_string())?;
        let x = extract_circle(&ctx, &d).map_err(|e| e.to_string())?;
        ensure(reconstruct_triple(&x.circle).same_constants(&x.graded_system), format!("{label}: graded round trip"))?;
        let back = x.reconstruct_in_original_basis().map_err(|e| e.to_string())?;
        ensure(back.same_constants(&m.system), format!("{label}: original round trip"))?;
        let props = check_circle_properties(&x.circle);
        ensure(props.passed(), format!("{label}: properties {:?}", props.failures()))?;
        let eqs = check_bilinear_equations(&x.circle, true);
        ensure(
            eqs.all_pass(&BILINEAR_EQUATIONS) && BILINEAR_EQUATIONS.len() == 14,
            format!("{label}: equations {:?}", eqs.failures()),
        )?;
        let weak_ok = eqs.all_pass(&["3.53", "3.54"]);
        ensure(weak_ok == weak, format!("{label}: weak equations passed = {weak_ok}"))?;
        if !weak {
            let failing = eqs.entries.iter().filter(|e| !e.passed).all(|e| e.witness.is_some());
            ensure(failing, format!("{label}: weak failure without witness"))?;
            notes.push(format!("{label} fails {:?}", eqs.failures()));
        }
    }
    Ok(format!("D33 and A23-A32 reconstruct exactly; {}", notes.join(", ")))
}

fn converse_synthesis() -> Outcome {
    let seeds = 120u64;
    let mut mutations = 0;
    for seed in 0..seeds {
        let c = random_circle(seed, 6);
        ensure(c.dim() <= 6, format!("seed {seed}: dimension {}", c.dim()))?;
        let props = check_circle_properties(&c);
        ensure(props.all_pass(&ADMISSIBILITY), format!("seed {seed}: generator broke admissibility"))?;
        let eqs = check_bilinear_equations(&c, false);
        ensure(eqs.passed(), format!("seed {seed}: {:?}", eqs.failures()))?;
        for kind in Mutation::ALL {
            let Some(bad) = mutate(&c, kind, seed) else { continue };
            ensure(
                !check_circle_properties(&bad).get(kind.property()).is_some_and(|e| e.passed),
                format!("seed {seed}: {kind:?} did not break {}", kind.property()),
            )?;
            ensure(!check_bilinear_equations(&bad, false).passed(), format!("seed {seed}: {kind:?} passes all equations"))?;
            mutations += 1;
        }
    }
    Ok(format!("{seeds} admissible tables pass, {mutations} mutations each break an equation"))
}

fn run_cli(args: &[&str], threads: &str) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_peirce"))
        .args(args)
        .env("PEIRCE_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn determinism() -> Outcome {
    let configs: [&[&str]; 6] = [
        &["verify", "--model", "dnk", "--params", "3,2,1"],
        &["verify", "--model", "akn", "--params", "2,3", "--check", "weak-comm"],
        &["decompose", "--model", "akn", "--params", "2,3"],
        &["left-unit", "--model", "dnk", "--params", "3,3,3"],
        &["synthesize", "--seed", "11"],
        &["verify", "--model", "ann", "--params", "1", "--mode", "sampled", "--seed", "5", "--sample-count", "500"],
    ];
    for args in configs {
        let first = run_cli(args, "1")?;
        for threads in ["1", "4"] {
            let again = run_cli(args, threads)?;
            ensure(again == first, format!("{args:?} differs with {threads} thread(s)"))?;
        }
        ensure(!first.1.is_empty(), format!("{args:?} printed nothing"))?;
    }
    Ok("6 configurations byte-identical across 3 runs and 1 or 4 threads".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("axiom suite", axiom_suite),
        ("operator relations", operator_relations),
        ("decomposition dimensions", decomposition_dimensions),
        ("Peirce invariants", invariant_suite),
        ("weak commutativity dichotomy", weak_dichotomy),
        ("left-unit round trip", left_unit_round_trip),
        ("converse synthesis", converse_synthesis),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", n + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({why})", n + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
