//! Verification of the defining identities and of weak commutativity.
//!
//! Exhaustive mode evaluates each identity on basis tuples. Because the
//! evaluated forms are multilinear, vanishing on basis tuples is equivalent
//! to vanishing everywhere. Sampled mode evaluates on seeded pseudo-random
//! sparse vectors of small height.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::Vector;
use crate::scalar::Scalar;
use crate::triple::{to_dense, Accumulator, Sparse, TripleSystem};

/// Largest dimension checked exhaustively by default.
pub const EXHAUSTIVE_MAX_DIM: usize = 16;
pub const DEFAULT_SAMPLE_COUNT: usize = 10_000;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum IdentityId {
    /// `(ab(cdf)) = ((abc)df) − (c(bad)f) + (cd(abf))`
    #[serde(rename = "1.1")]
    Gjts11,
    /// `[((avb)uc) − (cu(avb)) − (cv(aub)) − (a(vcu)b)]_{a,b} = 0`
    #[serde(rename = "1.2")]
    Gjts12,
    /// Polarized `(yx(yyy)) = ((yyy)xy)`.
    #[serde(rename = "1.41")]
    WeakComm141,
}

impl IdentityId {
    pub fn key(self) -> &'static str {
        match self {
            IdentityId::Gjts11 => "1.1",
            IdentityId::Gjts12 => "1.2",
            IdentityId::WeakComm141 => "1.41",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exhaustive,
    Sampled { seed: u64, count: usize },
}

impl CheckMode {
    /// Exhaustive up to [`EXHAUSTIVE_MAX_DIM`], otherwise sampled with the default seed and count.
    pub fn default_for(dim: usize) -> Self {
        if dim <= EXHAUSTIVE_MAX_DIM {
            CheckMode::Exhaustive
        } else {
            CheckMode::Sampled {
                seed: DEFAULT_SEED,
                count: DEFAULT_SAMPLE_COUNT,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessTuple {
    /// Basis indices in the identity's variable order.
    Basis(Vec<usize>),
    /// Index of the failing sample and the vectors drawn for it.
    Sample { index: usize, vectors: Vec<Vector> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub tuple: WitnessTuple,
    pub residual: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub mode: CheckMode,
    /// Variables of the evaluated form, naming the witness slots.
    pub variables: Vec<&'static str>,
    /// Size of the tuple space (exhaustive) or number of samples.
    pub tuples: u64,
    pub passed: bool,
    pub witness: Option<Witness>,
}

/// Residual of `(ab(cdf)) − ((abc)df) + (c(bad)f) − (cd(abf))`.
pub(crate) fn residual_1_1(s: &TripleSystem, a: &Sparse, b: &Sparse, c: &Sparse, d: &Sparse, f: &Sparse) -> Sparse {
    let p = |x: &Sparse, y: &Sparse, z: &Sparse| s.product_sparse(x, y, z);
    let mut acc = Accumulator::default();
    acc.add(&p(a, b, &p(c, d, f)));
    acc.sub(&p(&p(a, b, c), d, f));
    acc.add(&p(c, &p(b, a, d), f));
    acc.sub(&p(c, d, &p(a, b, f)));
    acc.finish()
}

/// `((avb)uc) − (cu(avb)) − (cv(aub)) − (a(vcu)b)` before alternation in `a, b`.
fn expr_1_2(s: &TripleSystem, a: &Sparse, b: &Sparse, c: &Sparse, u: &Sparse, v: &Sparse) -> Sparse {
    let p = |x: &Sparse, y: &Sparse, z: &Sparse| s.product_sparse(x, y, z);
    let avb = p(a, v, b);
    let mut acc = Accumulator::default();
    acc.add(&p(&avb, u, c));
    acc.sub(&p(c, u, &avb));
    acc.sub(&p(c, v, &p(a, u, b)));
    acc.sub(&p(a, &p(v, c, u), b));
    acc.finish()
}

pub(crate) fn residual_1_2(s: &TripleSystem, a: &Sparse, b: &Sparse, c: &Sparse, u: &Sparse, v: &Sparse) -> Sparse {
    let mut acc = Accumulator::default();
    acc.add(&expr_1_2(s, a, b, c, u, v));
    acc.sub(&expr_1_2(s, b, a, c, u, v));
    acc.finish()
}

/// `(ux(yyy)) + (yx(uyy)) + (yx(yuy)) + (yx(yyu)) − ((yyy)xu) − ((uyy)xy) − ((yuy)xy) − ((yyu)xy)`.
pub(crate) fn residual_1_41(s: &TripleSystem, u: &Sparse, x: &Sparse, y: &Sparse) -> Sparse {
    let p = |a: &Sparse, b: &Sparse, c: &Sparse| s.product_sparse(a, b, c);
    let yyy = p(y, y, y);
    let inner = [p(u, y, y), p(y, u, y), p(y, y, u)];
    let mut acc = Accumulator::default();
    acc.add(&p(u, x, &yyy));
    acc.sub(&p(&yyy, x, u));
    for t in &inner {
        acc.add(&p(y, x, t));
        acc.sub(&p(t, x, y));
    }
    acc.finish()
}

/// `(yx(yyy)) − ((yyy)xy)`.
pub(crate) fn residual_1_40(s: &TripleSystem, x: &Sparse, y: &Sparse) -> Sparse {
    let yyy = s.product_sparse(y, y, y);
    let mut acc = Accumulator::default();
    acc.add(&s.product_sparse(y, x, &yyy));
    acc.sub(&s.product_sparse(&yyy, x, y));
    acc.finish()
}

/// Complete polarization of `(yx(yyy)) − ((yyy)xy)` in `y`:
/// `Σ_σ (y_σ1 x (y_σ2 y_σ3 y_σ4)) − ((y_σ1 y_σ2 y_σ3) x y_σ4)` over all orderings of the four `y`s.
/// Setting `y_1 = u`, `y_2 = y_3 = y_4 = y` gives six times the once-polarized residual.
pub(crate) fn residual_weak_full(s: &TripleSystem, x: &Sparse, ys: [&Sparse; 4]) -> Sparse {
    const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut acc = Accumulator::default();
    for i in 0..4 {
        let others: Vec<&Sparse> = (0..4).filter(|&j| j != i).map(|j| ys[j]).collect();
        let mut sym = Accumulator::default();
        for o in ORDERS {
            sym.add(&s.product_sparse(others[o[0]], others[o[1]], others[o[2]]));
        }
        let sym = sym.finish();
        if sym.is_empty() {
            continue;
        }
        acc.add(&s.product_sparse(ys[i], x, &sym));
        acc.sub(&s.product_sparse(&sym, x, ys[i]));
    }
    acc.finish()
}

fn unit(i: usize) -> Sparse {
    vec![(i, Scalar::one())]
}

fn random_sparse_vector(rng: &mut ChaCha8Rng, dim: usize) -> Sparse {
    let support = dim.min(3);
    let mut acc = Accumulator::default();
    for _ in 0..support {
        let i = rng.gen_range(0..dim);
        let mut c = rng.gen_range(-3i64..=2);
        if c >= 0 {
            c += 1;
        }
        acc.add(&vec![(i, Scalar::from_int(c))]);
    }
    acc.finish()
}

/// Scans `0..outer` in parallel, each chunk returning its first failure;
/// the smallest outer index with a failure wins, so the result does not
/// depend on scheduling.
fn first_failure<F>(outer: usize, scan: F) -> Option<Witness>
where
    F: Fn(usize) -> Option<Witness> + Sync,
{
    let found: Vec<Option<Witness>> = (0..outer).into_par_iter().map(&scan).collect();
    found.into_iter().flatten().next()
}

fn basis_witness(dim: usize, indices: Vec<usize>, residual: &Sparse) -> Witness {
    Witness {
        tuple: WitnessTuple::Basis(indices),
        residual: to_dense(dim, residual),
    }
}

fn sampled<F>(dim: usize, seed: u64, count: usize, arity: usize, eval: F) -> Option<Witness>
where
    F: Fn(&[Sparse]) -> Sparse + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<Vec<Sparse>> = (0..count)
        .map(|_| (0..arity).map(|_| random_sparse_vector(&mut rng, dim)).collect())
        .collect();
    let found: Vec<Option<Witness>> = samples
        .par_iter()
        .enumerate()
        .map(|(index, vs)| {
            let r = eval(vs);
            (!r.is_empty()).then(|| Witness {
                tuple: WitnessTuple::Sample {
                    index,
                    vectors: vs.iter().map(|v| to_dense(dim, v)).collect(),
                },
                residual: to_dense(dim, &r),
            })
        })
        .collect();
    found.into_iter().flatten().next()
}

fn report(identity: IdentityId, mode: CheckMode, variables: Vec<&'static str>, tuples: u64, witness: Option<Witness>) -> IdentityReport {
    IdentityReport {
        identity,
        mode,
        variables,
        tuples,
        passed: witness.is_none(),
        witness,
    }
}

fn five_index_scan<F>(s: &TripleSystem, residual: F) -> Option<Witness>
where
    F: Fn(&Sparse, &Sparse, &Sparse, &Sparse, &Sparse) -> Sparse + Sync,
{
    let n = s.dim();
    let units: Vec<Sparse> = (0..n).map(unit).collect();
    first_failure(n, |a| {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for f in 0..n {
                        let r = residual(&units[a], &units[b], &units[c], &units[d], &units[f]);
                        if !r.is_empty() {
                            return Some(basis_witness(n, vec![a, b, c, d, f], &r));
                        }
                    }
                }
            }
        }
        None
    })
}

pub fn check_identity_1_1(s: &TripleSystem, mode: CheckMode) -> IdentityReport {
    let n = s.dim();
    let vars = vec!["a", "b", "c", "d", "f"];
    match mode {
        CheckMode::Exhaustive => {
            let w = five_index_scan(s, |a, b, c, d, f| residual_1_1(s, a, b, c, d, f));
            report(IdentityId::Gjts11, mode, vars, (n as u64).pow(5), w)
        }
        CheckMode::Sampled { seed, count } => {
            let w = sampled(n, seed, count, 5, |v| residual_1_1(s, &v[0], &v[1], &v[2], &v[3], &v[4]));
            report(IdentityId::Gjts11, mode, vars, count as u64, w)
        }
    }
}

pub fn check_identity_1_2(s: &TripleSystem, mode: CheckMode) -> IdentityReport {
    let n = s.dim();
    let vars = vec!["a", "b", "c", "u", "v"];
    match mode {
        CheckMode::Exhaustive => {
            let w = five_index_scan(s, |a, b, c, u, v| residual_1_2(s, a, b, c, u, v));
            report(IdentityId::Gjts12, mode, vars, (n as u64).pow(5), w)
        }
        CheckMode::Sampled { seed, count } => {
            let w = sampled(n, seed, count, 5, |v| residual_1_2(s, &v[0], &v[1], &v[2], &v[3], &v[4]));
            report(IdentityId::Gjts12, mode, vars, count as u64, w)
        }
    }
}

/// Weak commutativity. Exhaustive mode scans `x` over the basis and `y_1 ≤ … ≤ y_4`
/// over basis multisets in the completely polarized form; sampled mode
/// evaluates the once-polarized form on random `u, x, y`.
pub fn check_weak_commutativity(s: &TripleSystem, mode: CheckMode) -> IdentityReport {
    let n = s.dim();
    match mode {
        CheckMode::Exhaustive => {
            let units: Vec<Sparse> = (0..n).map(unit).collect();
            let w = first_failure(n, |x| {
                for y1 in 0..n {
                    for y2 in y1..n {
                        for y3 in y2..n {
                            for y4 in y3..n {
                                let ys = [&units[y1], &units[y2], &units[y3], &units[y4]];
                                let r = residual_weak_full(s, &units[x], ys);
                                if !r.is_empty() {
                                    return Some(basis_witness(n, vec![x, y1, y2, y3, y4], &r));
                                }
                            }
                        }
                    }
                }
                None
            });
            let n64 = n as u64;
            let multisets = n64 * (n64 + 1) * (n64 + 2) * (n64 + 3) / 24;
            report(IdentityId::WeakComm141, mode, vec!["x", "y1", "y2", "y3", "y4"], n64 * multisets, w)
        }
        CheckMode::Sampled { seed, count } => {
            let w = sampled(n, seed, count, 3, |v| residual_1_41(s, &v[0], &v[1], &v[2]));
            report(IdentityId::WeakComm141, mode, vec!["u", "x", "y"], count as u64, w)
        }
    }
}

/// Once-polarized weak commutativity residual at `u, x, y`.
pub fn weak_comm_polarized(s: &TripleSystem, u: &Vector, x: &Vector, y: &Vector) -> Vector {
    use crate::triple::to_sparse;
    to_dense(s.dim(), &residual_1_41(s, &to_sparse(u), &to_sparse(x), &to_sparse(y)))
}

/// Unpolarized residual `(yx(yyy)) − ((yyy)xy)`.
pub fn weak_comm_unpolarized(s: &TripleSystem, x: &Vector, y: &Vector) -> Vector {
    use crate::triple::to_sparse;
    to_dense(s.dim(), &residual_1_40(s, &to_sparse(x), &to_sparse(y)))
}

/// Residual of the first defining identity at `a, b, c, d, f`.
pub fn identity_1_1_residual(s: &TripleSystem, v: [&Vector; 5]) -> Vector {
    use crate::triple::to_sparse;
    let sp: Vec<Sparse> = v.iter().map(|x| to_sparse(x)).collect();
    to_dense(s.dim(), &residual_1_1(s, &sp[0], &sp[1], &sp[2], &sp[3], &sp[4]))
}

/// Residual of the second defining identity at `a, b, c, u, v`.
pub fn identity_1_2_residual(s: &TripleSystem, v: [&Vector; 5]) -> Vector {
    use crate::triple::to_sparse;
    let sp: Vec<Sparse> = v.iter().map(|x| to_sparse(x)).collect();
    to_dense(s.dim(), &residual_1_2(s, &sp[0], &sp[1], &sp[2], &sp[3], &sp[4]))
}
