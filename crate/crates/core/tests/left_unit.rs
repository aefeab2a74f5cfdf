use peirce_core::left_unit::{
    check_bilinear_equations, check_circle_properties, derived_products, extract_circle, is_left_unit, mutate,
    random_circle, reconstruct_triple, split_circle, synthesize_from_circle,
    ExtractedCircle, Mutation, ADMISSIBILITY, BILINEAR_EQUATIONS,
};
use peirce_core::models::{build_akn_ank, build_dnk, build_structurable_matrix, Model};
use peirce_core::peirce::{make_context, peirce_decompose};
use peirce_core::{Error, Matrix, Scalar, TripleSystem, Vector};

fn extract(m: &Model) -> ExtractedCircle {
    let ctx = make_context(&m.system, &m.tripotent).unwrap();
    let d = peirce_decompose(&ctx).unwrap();
    extract_circle(&ctx, &d).unwrap()
}

fn left_unit_models() -> Vec<Model> {
    vec![
        build_dnk(3, 3, 3).unwrap(),
        build_akn_ank(2, 3).unwrap(),
        build_akn_ank(1, 1).unwrap(),
        build_akn_ank(2, 2).unwrap(),
        build_structurable_matrix(2).unwrap(),
        build_structurable_matrix(3).unwrap(),
    ]
}

#[test]
fn left_unit_detection() {
    for (m, expected) in [
        (build_akn_ank(2, 3).unwrap(), true),
        (build_dnk(3, 3, 3).unwrap(), true),
        (build_dnk(4, 3, 2).unwrap(), false),
    ] {
        let ctx = make_context(&m.system, &m.tripotent).unwrap();
        assert_eq!(is_left_unit(&ctx), expected, "{}", m.system.label());
    }
    let m = build_dnk(4, 3, 2).unwrap();
    let ctx = make_context(&m.system, &m.tripotent).unwrap();
    let d = peirce_decompose(&ctx).unwrap();
    assert!(matches!(extract_circle(&ctx, &d), Err(Error::NotLeftUnit)));
}

#[test]
fn unit_is_idempotent_for_the_circle_product() {
    for m in left_unit_models() {
        let x = extract(&m);
        assert_eq!(x.circle.product(&x.unit, &x.unit).unwrap(), x.unit, "{}", m.system.label());
        for i in 0..x.circle.dim() {
            let b = Vector::unit(x.circle.dim(), i);
            // e∘x = (eex) = x and x∘e = (xee) = Rx.
            assert_eq!(x.circle.product(&x.unit, &b).unwrap(), b);
            let r = Scalar::from_int(x.circle.block_of(i).r());
            assert_eq!(x.circle.product(&b, &x.unit).unwrap(), b.scale(&r));
        }
    }
}

#[test]
fn reconstruction_round_trip() {
    for m in left_unit_models() {
        let x = extract(&m);
        let rebuilt = reconstruct_triple(&x.circle);
        assert!(rebuilt.same_constants(&x.graded_system), "{}", m.system.label());
        let original = x.reconstruct_in_original_basis().unwrap();
        assert!(original.same_constants(&m.system), "{}", m.system.label());
    }
}

#[test]
fn derived_products_match_the_system() {
    for m in left_unit_models() {
        let x = extract(&m);
        let s = &x.graded_system;
        let n = s.dim();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (Vector::unit(n, i), Vector::unit(n, j));
                let (exy, xye) = derived_products(&x.circle, &a, &b).unwrap();
                assert_eq!(exy, s.product(&x.unit, &a, &b).unwrap());
                assert_eq!(xye, s.product(&a, &b, &x.unit).unwrap());
            }
        }
        let (exy, xye) = derived_products(&x.circle, &x.unit, &x.unit).unwrap();
        assert_eq!((exy, xye), (x.unit.clone(), x.unit.clone()));
    }
}

#[test]
fn circle_properties_hold_for_models() {
    for m in left_unit_models() {
        let props = check_circle_properties(&extract(&m).circle);
        assert!(props.passed(), "{}: {:?}", m.system.label(), props.failures());
    }
}

#[test]
fn bilinear_equations_hold_for_models() {
    for m in left_unit_models() {
        let eqs = check_bilinear_equations(&extract(&m).circle, false);
        assert_eq!(eqs.entries.len(), 14);
        assert!(eqs.passed(), "{}: {:?}", m.system.label(), eqs.failures());
    }
}

#[test]
fn weak_equations_separate_d33_from_a23() {
    let d33 = check_bilinear_equations(&extract(&build_dnk(3, 3, 3).unwrap()).circle, true);
    assert!(d33.passed(), "{:?}", d33.failures());
    let a23 = check_bilinear_equations(&extract(&build_akn_ank(2, 3).unwrap()).circle, true);
    assert!(a23.all_pass(&BILINEAR_EQUATIONS));
    let e = a23.get("3.53").unwrap();
    assert!(!e.passed);
    assert!(!e.witness.as_ref().unwrap().residual.is_zero());
}

/// `L`, `R`, `Q` of the actual system in graded coordinates.
fn operators(s: &TripleSystem, e: &Vector) -> (Matrix, Matrix, Matrix) {
    let ctx = make_context(s, e).unwrap();
    (ctx.l, ctx.r, ctx.q)
}

#[test]
fn equations_hold_for_the_actual_product() {
    // Independent of the circle machinery: evaluate a sample of the equations
    // with the real triple product and the real operators.
    for m in left_unit_models() {
        let x = extract(&m);
        let s = &x.graded_system;
        let e = &x.unit;
        let n = s.dim();
        let (l, r, q) = operators(s, e);
        let p = |a: &Vector, b: &Vector, c: &Vector| s.product(a, b, c).unwrap();
        let ap = |op: &Matrix, v: &Vector| op.mul_vec(v).unwrap();
        let one = Matrix::identity(n);
        let r_2l_1 = r.sub(&l.scale(&Scalar::from_int(2))).unwrap().sub(&one).unwrap();
        let r_l = r.sub(&l).unwrap();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (Vector::unit(n, i), Vector::unit(n, j));
                // (R−2L−1)((aeb) − (bea)) = 0
                assert!(ap(&r_2l_1, &(&p(&a, e, &b) - &p(&b, e, &a))).is_zero());
                // ((R−L)aec) − 2(ce(R−L)a) = (aQ(c)e) − (eQ(c)a)
                let ra = ap(&r_l, &a);
                let qb = ap(&q, &b);
                let lhs = &p(&ra, e, &b) - &p(&b, e, &ra).scale(&Scalar::from_int(2));
                assert_eq!(lhs, &p(&a, &qb, e) - &p(e, &qb, &a));
                // (euQ(v)) = (Q(u)ve) − Q(uev) + (evQ(u))
                let qa = ap(&q, &a);
                let rhs = &(&p(&qa, &b, e) - &ap(&q, &p(&a, e, &b))) + &p(e, &b, &qa);
                assert_eq!(p(e, &a, &qb), rhs);
            }
        }
    }
}

/// Row-major index of entry `(r, c)` of an `n×n` matrix.
fn at(n: usize, r: usize, c: usize) -> usize {
    r * n + c
}

fn matmul(n: usize, x: &[i64], y: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[at(n, i, j)] = (0..n).map(|k| x[at(n, i, k)] * y[at(n, k, j)]).sum();
        }
    }
    out
}

fn transpose(n: usize, x: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[at(n, j, i)] = x[at(n, i, j)];
        }
    }
    out
}

#[test]
fn d33_circle_is_xy_plus_yx_minus_xt_y() {
    let m = build_dnk(3, 3, 3).unwrap();
    let x = extract(&m);
    let n = 3;
    for a in 0..9 {
        for b in 0..9 {
            let (xa, yb) = (Vector::unit(9, a), Vector::unit(9, b));
            let ints = |v: &Vector| -> Vec<i64> { v.iter().map(|s| if s.is_zero() { 0 } else { 1 }).collect() };
            let (xi, yi) = (ints(&xa), ints(&yb));
            let xy = matmul(n, &xi, &yi);
            let yx = matmul(n, &yi, &xi);
            let xty = matmul(n, &transpose(n, &xi), &yi);
            let expected: Vec<i64> = (0..9).map(|k| xy[k] + yx[k] - xty[k]).collect();
            // Circle in original coordinates: basis · (coords(x) ∘ coords(y)).
            let inv = x.basis.inverse().unwrap().unwrap();
            let cx = inv.mul_vec(&xa).unwrap();
            let cy = inv.mul_vec(&yb).unwrap();
            let prod = x.basis.mul_vec(&x.circle.product(&cx, &cy).unwrap()).unwrap();
            assert_eq!(prod, Vector::from_ints(&expected), "({a}, {b})");
        }
    }
}

#[test]
fn d33_split_of_symmetric_arguments() {
    // For symmetric X, Y: X∘Y = YX, so A1 = (XY + YX)/2 and A3 = (YX − XY)/2.
    let m = build_dnk(3, 3, 3).unwrap();
    let x = extract(&m);
    let n = 3;
    let xs = [1, 2, 0, 2, -1, 3, 0, 3, 1];
    let ys = [0, 1, 1, 1, 2, 0, 1, 0, -1];
    let inv = x.basis.inverse().unwrap().unwrap();
    let cx = inv.mul_vec(&Vector::from_ints(&xs)).unwrap();
    let cy = inv.mul_vec(&Vector::from_ints(&ys)).unwrap();
    let (a1, a3) = split_circle(&x.circle, &cx, &cy).unwrap();
    let xy = matmul(n, &xs, &ys);
    let yx = matmul(n, &ys, &xs);
    let half = Scalar::ratio(1, 2);
    let sym = Vector::from_ints(&(0..9).map(|k| xy[k] + yx[k]).collect::<Vec<_>>()).scale(&half);
    let skew = Vector::from_ints(&(0..9).map(|k| yx[k] - xy[k]).collect::<Vec<_>>()).scale(&half);
    assert_eq!(x.basis.mul_vec(&a1).unwrap(), sym);
    assert_eq!(x.basis.mul_vec(&a3).unwrap(), skew);
    let (e1, e3) = split_circle(&x.circle, &x.unit, &x.unit).unwrap();
    assert_eq!((e1, e3.is_zero()), (x.unit.clone(), true));
}

#[test]
fn scalar_pair_circle() {
    let m = build_akn_ank(1, 1).unwrap();
    let x = extract(&m);
    assert_eq!(x.basis, Matrix::from_int_rows(&[&[1, 1], &[1, -1]]));
    let (u, v) = (Vector::unit(2, 0), Vector::unit(2, 1));
    assert_eq!(x.circle.product(&u, &u).unwrap(), u);
    // u∘v from (x e y) with e = (1,1): (1,1)·(1,−1) evaluates to (1, −1) in the original basis.
    let uv = x.basis.mul_vec(&x.circle.product(&u, &v).unwrap()).unwrap();
    assert_eq!(uv, m.system.product(&Vector::from_ints(&[1, 1]), &m.tripotent, &Vector::from_ints(&[1, -1])).unwrap());
    let (_, a3) = split_circle(&x.circle, &u, &u).unwrap();
    assert!(a3.is_zero());
}

#[test]
fn extracted_circles_synthesize_their_systems() {
    for m in [build_dnk(3, 3, 3).unwrap(), build_structurable_matrix(2).unwrap(), build_akn_ank(1, 1).unwrap()] {
        let x = extract(&m);
        let (s, report) = synthesize_from_circle(&x.circle).unwrap();
        assert!(s.same_constants(&x.graded_system));
        assert!(report.admissible && report.equations_pass && report.axioms_pass, "{}", m.system.label());
        assert!(report.left_unit.found(), "{}: {:?}", m.system.label(), report.left_unit);
    }
}

#[test]
fn asymmetric_a1_breaks_admissibility_and_equations() {
    let x = extract(&build_dnk(3, 3, 3).unwrap());
    let broken = mutate(&x.circle, Mutation::A1Symmetry, 5).unwrap();
    let (_, report) = synthesize_from_circle(&broken).unwrap();
    assert!(!report.admissible);
    assert!(!report.properties.get("3.39").unwrap().passed);
    assert!(!report.equations_pass);
}

#[test]
fn converse_over_random_admissible_tables() {
    let mut weak_cases = 0;
    for seed in 0..120u64 {
        let c = random_circle(seed, 6);
        let g = c.space();
        let props = check_circle_properties(&c);
        assert!(props.all_pass(&ADMISSIBILITY), "seed {seed}");
        let weak = g.u13p == 0;
        weak_cases += weak as usize;
        let eqs = check_bilinear_equations(&c, weak);
        assert!(eqs.passed(), "seed {seed} {g:?}: {:?}", eqs.failures());
        for kind in Mutation::ALL {
            let Some(bad) = mutate(&c, kind, seed) else { continue };
            let p = check_circle_properties(&bad);
            assert!(!p.get(kind.property()).unwrap().passed, "seed {seed} {kind:?}");
            let others: Vec<&str> = ADMISSIBILITY.iter().copied().filter(|id| *id != kind.property()).collect();
            assert!(p.all_pass(&others), "seed {seed} {kind:?}: {:?}", p.failures());
            let eqs = check_bilinear_equations(&bad, false);
            assert!(!eqs.passed(), "seed {seed} {kind:?} {g:?}");
        }
    }
    assert!(weak_cases > 10);
}
