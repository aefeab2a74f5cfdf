//! Systems whose tripotent is a left unit (`L = 1`).
//!
//! Then only `U11±` and `U13±` occur, `R` and `Q` act diagonally, and the
//! whole triple product is recovered from the bilinear circle product
//! `x∘y = (xey)`:
//!
//! ```text
//! (xyz) = (Q⁻¹y∘x)∘z + x∘(Q⁻¹y∘z) − Q⁻¹y∘(x∘z)
//! ```
//!
//! All computations here run in the graded basis, i.e. the concatenation of
//! bases of `U11+`, `U11−`, `U13+`, `U13−` in that order.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::{check_identity_1_1, check_identity_1_2, CheckMode, IdentityReport};
use crate::linalg::{Matrix, Vector};
use crate::peirce::{ComponentLabel, PeirceDecomposition, TripotentContext};
use crate::scalar::Scalar;
use crate::triple::{to_dense, to_sparse, Accumulator, Sparse, TripleSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Block {
    #[serde(rename = "u11p")]
    U11Plus,
    #[serde(rename = "u11m")]
    U11Minus,
    #[serde(rename = "u13p")]
    U13Plus,
    #[serde(rename = "u13m")]
    U13Minus,
}

impl Block {
    pub const ALL: [Block; 4] = [Block::U11Plus, Block::U11Minus, Block::U13Plus, Block::U13Minus];

    pub fn key(self) -> &'static str {
        match self {
            Block::U11Plus => "u11p",
            Block::U11Minus => "u11m",
            Block::U13Plus => "u13p",
            Block::U13Minus => "u13m",
        }
    }

    pub fn label(self) -> ComponentLabel {
        match self {
            Block::U11Plus => ComponentLabel::OneOnePlus,
            Block::U11Minus => ComponentLabel::OneOneMinus,
            Block::U13Plus => ComponentLabel::OneThreePlus,
            Block::U13Minus => ComponentLabel::OneThreeMinus,
        }
    }

    /// Eigenvalue of `R`.
    pub fn r(self) -> i64 {
        match self {
            Block::U11Plus | Block::U11Minus => 1,
            Block::U13Plus | Block::U13Minus => 3,
        }
    }

    /// Eigenvalue of `Q`.
    pub fn q(self) -> i64 {
        match self {
            Block::U11Plus => 1,
            Block::U11Minus => -1,
            Block::U13Plus => 3,
            Block::U13Minus => -3,
        }
    }

    pub fn q_inv(self) -> Scalar {
        Scalar::ratio(1, self.q())
    }

    /// Sign of `x̄ = R Q⁻¹ x`.
    pub fn bar_sign(self) -> i64 {
        self.q().signum()
    }

    /// Sign of `x̃`, which negates `U11−` and `U13+`.
    pub fn tilde_sign(self) -> i64 {
        match self {
            Block::U11Plus | Block::U13Minus => 1,
            Block::U11Minus | Block::U13Plus => -1,
        }
    }

    /// `0` on `U11`, `1` on `U13`.
    pub fn p(self) -> u8 {
        match self {
            Block::U11Plus | Block::U11Minus => 0,
            Block::U13Plus | Block::U13Minus => 1,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// `U = U11+ ⊕ U11− ⊕ U13+ ⊕ U13−` given by the four dimensions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GradedSpace {
    pub u11p: usize,
    pub u11m: usize,
    pub u13p: usize,
    pub u13m: usize,
}

impl GradedSpace {
    pub fn new(u11p: usize, u11m: usize, u13p: usize, u13m: usize) -> Self {
        GradedSpace { u11p, u11m, u13p, u13m }
    }

    pub fn dim(&self) -> usize {
        self.u11p + self.u11m + self.u13p + self.u13m
    }

    pub fn block_dim(&self, b: Block) -> usize {
        match b {
            Block::U11Plus => self.u11p,
            Block::U11Minus => self.u11m,
            Block::U13Plus => self.u13p,
            Block::U13Minus => self.u13m,
        }
    }

    /// Dimension of `U11 = U11+ ⊕ U11−`; coordinates below it belong to `U11`.
    pub fn u11(&self) -> usize {
        self.u11p + self.u11m
    }

    pub fn block_of(&self, i: usize) -> Block {
        let mut end = 0;
        for b in Block::ALL {
            end += self.block_dim(b);
            if i < end {
                return b;
            }
        }
        panic!("index {i} outside a graded space of dimension {}", self.dim())
    }

    pub fn blocks(&self) -> Vec<Block> {
        (0..self.dim()).map(|i| self.block_of(i)).collect()
    }

    /// The block containing a nonzero `x`, if `x` is homogeneous.
    pub fn homogeneous_block(&self, x: &Vector) -> Option<Block> {
        let mut found = None;
        for (i, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let b = self.block_of(i);
            match found {
                None => found = Some(b),
                Some(prev) if prev != b => return None,
                _ => {}
            }
        }
        found
    }
}

/// A bilinear product on a [`GradedSpace`], stored by its values on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleAlgebra {
    space: GradedSpace,
    blocks: Vec<Block>,
    table: Vec<Sparse>,
}

impl CircleAlgebra {
    pub fn zero(space: GradedSpace) -> Self {
        let n = space.dim();
        CircleAlgebra {
            space,
            blocks: space.blocks(),
            table: vec![Vec::new(); n * n],
        }
    }

    pub fn space(&self) -> GradedSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn block_of(&self, i: usize) -> Block {
        self.blocks[i]
    }

    /// `e_i ∘ e_j`.
    pub fn constant(&self, i: usize, j: usize) -> Vector {
        to_dense(self.dim(), &self.table[i * self.dim() + j])
    }

    pub fn set_constant(&mut self, i: usize, j: usize, value: &Vector) -> Result<()> {
        let n = self.dim();
        if i >= n || j >= n {
            return Err(Error::GradingMismatch(format!(
                "index pair ({i}, {j}) outside a space of dimension {n}"
            )));
        }
        if value.len() != n {
            return Err(Error::GradingMismatch(format!(
                "value for ({i}, {j}) has length {}, expected {n}",
                value.len()
            )));
        }
        self.table[i * n + j] = to_sparse(value);
        Ok(())
    }

    /// Nonzero `e_i ∘ e_j` in lexicographic order.
    pub fn constants(&self) -> impl Iterator<Item = ((usize, usize), Vector)> + '_ {
        let n = self.dim();
        self.table
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(move |(s, v)| ((s / n, s % n), to_dense(n, v)))
    }

    pub(crate) fn product_sparse(&self, x: &Sparse, y: &Sparse) -> Sparse {
        let n = self.dim();
        let mut acc = Accumulator::default();
        for (i, a) in x {
            for (j, b) in y {
                let t = &self.table[i * n + j];
                if !t.is_empty() {
                    acc.add_scaled(&(a * b), t);
                }
            }
        }
        acc.finish()
    }

    pub fn product(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        x.check_len(self.dim())?;
        y.check_len(self.dim())?;
        Ok(to_dense(self.dim(), &self.product_sparse(&to_sparse(x), &to_sparse(y))))
    }

    fn diag(&self, x: &Sparse, f: impl Fn(Block) -> Scalar) -> Sparse {
        x.iter().map(|(i, v)| (*i, v * &f(self.blocks[*i]))).collect()
    }

    fn r(&self, x: &Sparse) -> Sparse {
        self.diag(x, |b| Scalar::from_int(b.r()))
    }

    fn q(&self, x: &Sparse) -> Sparse {
        self.diag(x, |b| Scalar::from_int(b.q()))
    }

    fn q_inv(&self, x: &Sparse) -> Sparse {
        self.diag(x, Block::q_inv)
    }

    fn bar(&self, x: &Sparse) -> Sparse {
        self.diag(x, |b| Scalar::from_int(b.bar_sign()))
    }

    fn tilde(&self, x: &Sparse) -> Sparse {
        self.diag(x, |b| Scalar::from_int(b.tilde_sign()))
    }

    /// `(xey) = x∘y`.
    fn m(&self, x: &Sparse, y: &Sparse) -> Sparse {
        self.product_sparse(x, y)
    }

    /// `(exy) = x̄∘y`.
    fn e(&self, x: &Sparse, y: &Sparse) -> Sparse {
        self.product_sparse(&self.bar(x), y)
    }

    /// `(xye) = R(Q⁻¹y∘x) + x∘ȳ − Q⁻¹y∘(Rx)`.
    fn f(&self, x: &Sparse, y: &Sparse) -> Sparse {
        let qy = self.q_inv(y);
        let mut acc = Accumulator::default();
        acc.add(&self.r(&self.product_sparse(&qy, x)));
        acc.add(&self.product_sparse(x, &self.bar(y)));
        acc.sub(&self.product_sparse(&qy, &self.r(x)));
        acc.finish()
    }

    /// `(xyz)` by the reconstruction formula.
    fn triple(&self, x: &Sparse, y: &Sparse, z: &Sparse) -> Sparse {
        let qy = self.q_inv(y);
        let mut acc = Accumulator::default();
        acc.add(&self.product_sparse(&self.product_sparse(&qy, x), z));
        acc.add(&self.product_sparse(x, &self.product_sparse(&qy, z)));
        acc.sub(&self.product_sparse(&qy, &self.product_sparse(x, z)));
        acc.finish()
    }
}

fn lin(terms: &[(i64, &Sparse)]) -> Sparse {
    let mut acc = Accumulator::default();
    for (c, v) in terms {
        acc.add_scaled(&Scalar::from_int(*c), v);
    }
    acc.finish()
}

fn unit(i: usize) -> Sparse {
    vec![(i, Scalar::one())]
}

pub fn is_left_unit(ctx: &TripotentContext<'_>) -> bool {
    ctx.l.is_identity()
}

/// A circle algebra read off a concrete system.
#[derive(Clone, Debug)]
pub struct ExtractedCircle {
    pub circle: CircleAlgebra,
    /// Columns are the graded basis vectors in the original coordinates.
    pub basis: Matrix,
    /// The tripotent in graded coordinates.
    pub unit: Vector,
    /// The original system written in the graded basis.
    pub graded_system: TripleSystem,
}

impl ExtractedCircle {
    /// Reconstructs the triple product and writes it back in the original basis.
    pub fn reconstruct_in_original_basis(&self) -> Result<TripleSystem> {
        let inv = self
            .basis
            .inverse()?
            .ok_or_else(|| Error::Decomposition("graded basis is singular".into()))?;
        reconstruct_triple(&self.circle).rebase(&inv)
    }
}

pub fn extract_circle(ctx: &TripotentContext<'_>, d: &PeirceDecomposition<'_>) -> Result<ExtractedCircle> {
    if !is_left_unit(ctx) {
        return Err(Error::NotLeftUnit);
    }
    let allowed: Vec<ComponentLabel> = Block::ALL.iter().map(|b| b.label()).collect();
    for (label, comp) in &d.components {
        if !comp.is_zero() && !allowed.contains(label) {
            return Err(Error::UnexpectedComponent(*label));
        }
    }
    let space = GradedSpace::new(
        d.dim(ComponentLabel::OneOnePlus),
        d.dim(ComponentLabel::OneOneMinus),
        d.dim(ComponentLabel::OneThreePlus),
        d.dim(ComponentLabel::OneThreeMinus),
    );
    let n = ctx.system.dim();
    let columns: Vec<Vector> = Block::ALL
        .iter()
        .flat_map(|b| d.component(b.label()).basis().iter().cloned())
        .collect();
    let basis = Matrix::from_columns(n, &columns)?;
    let graded_system = ctx.system.rebase(&basis)?;
    let e_graded = basis
        .solve(&Matrix::from_columns(n, std::slice::from_ref(&ctx.e))?)?
        .ok_or_else(|| Error::Decomposition("graded basis is singular".into()))?
        .column(0);
    let es = to_sparse(&e_graded);
    let mut circle = CircleAlgebra::zero(space);
    for i in 0..n {
        for j in 0..n {
            circle.table[i * n + j] = graded_system.product_sparse(&unit(i), &es, &unit(j));
        }
    }
    Ok(ExtractedCircle {
        circle,
        basis,
        unit: e_graded,
        graded_system,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Involutions {
    pub bar: Vector,
    pub tilde: Vector,
    /// `p(x)` for a nonzero `x` lying in `U11` or in `U13`.
    pub p: Option<u8>,
}

pub fn involutions(space: &GradedSpace, x: &Vector) -> Result<Involutions> {
    x.check_len(space.dim())?;
    let signed = |f: fn(Block) -> i64| -> Vector {
        x.iter()
            .enumerate()
            .map(|(i, v)| v * &Scalar::from_int(f(space.block_of(i))))
            .collect()
    };
    let mut parts = x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, _)| space.block_of(i).p());
    let p = parts.next().and_then(|first| parts.all(|q| q == first).then_some(first));
    Ok(Involutions {
        bar: signed(Block::bar_sign),
        tilde: signed(Block::tilde_sign),
        p,
    })
}

/// `x∘y = A1(x,y) + A3(x,y)` with `A1 ∈ U11`, `A3 ∈ U13`.
pub fn split_circle(c: &CircleAlgebra, x: &Vector, y: &Vector) -> Result<(Vector, Vector)> {
    let xy = c.product(x, y)?;
    let cut = c.space.u11();
    let a1 = xy.iter().enumerate().map(|(i, v)| if i < cut { v.clone() } else { Scalar::zero() }).collect();
    let a3 = xy.iter().enumerate().map(|(i, v)| if i < cut { Scalar::zero() } else { v.clone() }).collect();
    Ok((a1, a3))
}

/// `((exy), (xye))` computed from the circle product.
pub fn derived_products(c: &CircleAlgebra, x: &Vector, y: &Vector) -> Result<(Vector, Vector)> {
    x.check_len(c.dim())?;
    y.check_len(c.dim())?;
    let (xs, ys) = (to_sparse(x), to_sparse(y));
    Ok((to_dense(c.dim(), &c.e(&xs, &ys)), to_dense(c.dim(), &c.f(&xs, &ys))))
}

pub fn reconstruct_triple(c: &CircleAlgebra) -> TripleSystem {
    TripleSystem::from_basis_fn(c.dim(), "reconstructed", |i, j, k| c.triple(&unit(i), &unit(j), &unit(k)))
}

/// A failing basis pair with the residual it produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    pub residual: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub witness: Option<PairWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckTable {
    pub entries: Vec<CheckEntry>,
}

impl CheckTable {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn get(&self, id: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn all_pass(&self, ids: &[&str]) -> bool {
        ids.iter().all(|id| self.get(id).is_some_and(|e| e.passed))
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.entries.iter().filter(|e| !e.passed).map(|e| e.id).collect()
    }
}

type PairCheck = fn(&CircleAlgebra, usize, usize) -> Sparse;

fn run_checks(c: &CircleAlgebra, checks: &[(&'static str, &'static str, PairCheck)]) -> CheckTable {
    let n = c.dim();
    let entries = checks
        .par_iter()
        .map(|(id, description, check)| {
            let witness = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find_map(|(i, j)| {
                    let r = check(c, i, j);
                    (!r.is_empty()).then(|| PairWitness {
                        i,
                        j,
                        residual: to_dense(n, &r),
                    })
                });
            CheckEntry {
                id,
                description,
                passed: witness.is_none(),
                witness,
            }
        })
        .collect();
    CheckTable { entries }
}

fn a1_a3(c: &CircleAlgebra, v: &Sparse) -> (Sparse, Sparse) {
    let cut = c.space.u11();
    v.iter().cloned().partition(|(i, _)| *i < cut)
}

fn pow_neg3(p: u8) -> i64 {
    if p == 0 {
        1
    } else {
        -3
    }
}

fn prop_3_39(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (a, _) = a1_a3(c, &c.m(&unit(i), &unit(j)));
    let (b, _) = a1_a3(c, &c.m(&unit(j), &unit(i)));
    lin(&[(1, &a), (-1, &b)])
}

fn prop_3_40(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (_, a) = a1_a3(c, &c.m(&unit(i), &unit(j)));
    let (_, b) = a1_a3(c, &c.m(&unit(j), &unit(i)));
    let (pi, pj) = (c.block_of(i).p(), c.block_of(j).p());
    lin(&[(pow_neg3(pj), &a), (pow_neg3(pi), &b)])
}

fn prop_3_41(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (_, a) = a1_a3(c, &c.m(&unit(i), &unit(j)));
    let (_, b) = a1_a3(c, &c.m(&unit(j), &unit(i)));
    match (c.block_of(i).p(), c.block_of(j).p()) {
        (1, 0) => lin(&[(1, &a), (-3, &b)]),
        (0, 1) => lin(&[(3, &a), (-1, &b)]),
        _ => lin(&[(1, &a), (1, &b)]),
    }
}

fn prop_3_42(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (x, y) = (unit(i), unit(j));
    lin(&[(1, &c.tilde(&c.m(&x, &y))), (-1, &c.m(&c.tilde(&x), &c.tilde(&y)))])
}

fn prop_3_43(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let sign = c.block_of(i).tilde_sign() * c.block_of(j).tilde_sign();
    c.m(&unit(i), &unit(j))
        .into_iter()
        .filter(|(k, _)| c.block_of(*k).tilde_sign() != sign)
        .collect()
}

fn prop_3_28(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let uv = c.m(&unit(i), &unit(j));
    let vu = c.m(&unit(j), &unit(i));
    let rhs = match (c.block_of(i).p(), c.block_of(j).p()) {
        (0, 1) => vu,
        (1, 0) => lin(&[(4, &uv), (-3, &vu)]),
        _ => lin(&[(2, &uv), (-1, &vu)]),
    };
    lin(&[(1, &c.r(&uv)), (-1, &rhs)])
}

fn prop_3_30(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (u, v) = (unit(i), unit(j));
    let (ub, vb) = (c.bar(&u), c.bar(&v));
    let lhs = c.bar(&c.m(&u, &v));
    let vu = c.m(&vb, &ub);
    let uv = c.m(&ub, &vb);
    let rhs = match (c.block_of(i).p(), c.block_of(j).p()) {
        (0, 1) => lin(&[(1, &vu), (-2, &uv)]),
        (1, 0) => lin(&[(-3, &vu), (2, &uv)]),
        _ => vu,
    };
    lin(&[(1, &lhs), (-1, &rhs)])
}

/// Identifiers of the properties that make a circle product admissible.
pub const ADMISSIBILITY: [&str; 3] = ["3.39", "3.40", "3.42"];

pub fn check_circle_properties(c: &CircleAlgebra) -> CheckTable {
    run_checks(
        c,
        &[
            ("3.39", "A1(x,y) = A1(y,x)", prop_3_39),
            ("3.40", "(-3)^p(y) A3(x,y) = -(-3)^p(x) A3(y,x)", prop_3_40),
            ("3.41", "A3 case table", prop_3_41),
            ("3.42", "tilde(x∘y) = tilde(x)∘tilde(y)", prop_3_42),
            ("3.43", "U± ∘ U± grading", prop_3_43),
            ("3.28", "R(u∘v) case table", prop_3_28),
            ("3.30", "bar(u∘v) case table", prop_3_30),
        ],
    )
}

fn eq_3_1(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (y, z) = (unit(i), unit(j));
    let lhs = c.m(&y, &z);
    let rhs = lin(&[(1, &c.m(&y, &z)), (-1, &c.m(&y, &z)), (1, &c.m(&y, &z))]);
    lin(&[(1, &lhs), (-1, &rhs)])
}

fn eq_3_2(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (y, v) = (unit(i), unit(j));
    let lhs = c.f(&y, &v);
    let rhs = lin(&[(1, &c.f(&y, &v)), (-1, &c.f(&y, &v)), (1, &c.f(&y, &v))]);
    lin(&[(1, &lhs), (-1, &rhs)])
}

fn eq_3_3(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (v, z) = (unit(i), unit(j));
    let lhs = c.e(&v, &z);
    let rhs = lin(&[(1, &c.e(&v, &z)), (-1, &c.e(&v, &z)), (1, &c.e(&v, &z))]);
    lin(&[(1, &lhs), (-1, &rhs)])
}

fn eq_3_4(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (x, u) = (unit(i), unit(j));
    let xu = c.f(&x, &u);
    let rhs = lin(&[(1, &c.r(&xu)), (-1, &c.q(&c.f(&u, &x))), (1, &xu)]);
    lin(&[(1, &xu), (-1, &rhs)])
}

fn eq_3_5(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (x, v) = (unit(i), unit(j));
    let lhs = c.m(&x, &c.q(&v));
    let rx = c.r(&x);
    let rhs = lin(&[(1, &c.f(&rx, &v)), (-1, &c.q(&c.e(&x, &v))), (1, &c.e(&v, &rx))]);
    lin(&[(1, &lhs), (-1, &rhs)])
}

fn eq_3_6(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (x, y) = (unit(i), unit(j));
    let lhs = c.m(&x, &c.r(&y));
    let rhs = lin(&[(1, &c.r(&c.m(&x, &y))), (-1, &c.f(&y, &c.q(&x))), (1, &c.m(&y, &c.r(&x)))]);
    lin(&[(1, &lhs), (-1, &rhs)])
}

fn eq_3_7(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (x, z) = (unit(i), unit(j));
    let lhs = c.m(&x, &z);
    let rhs = lin(&[(1, &c.m(&c.r(&x), &z)), (-1, &c.e(&c.q(&x), &z)), (1, &c.m(&x, &z))]);
    lin(&[(1, &lhs), (-1, &rhs)])
}

fn eq_3_8(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (u, y) = (unit(i), unit(j));
    let lhs = c.e(&u, &c.r(&y));
    let rhs = lin(&[(1, &c.r(&c.e(&u, &y))), (-1, &c.f(&y, &c.r(&u))), (1, &c.m(&y, &c.q(&u)))]);
    lin(&[(1, &lhs), (-1, &rhs)])
}

fn eq_3_9(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (u, v) = (unit(i), unit(j));
    let lhs = c.e(&u, &c.q(&v));
    let qu = c.q(&u);
    let rhs = lin(&[(1, &c.f(&qu, &v)), (-1, &c.q(&c.m(&u, &v))), (1, &c.e(&v, &qu))]);
    lin(&[(1, &lhs), (-1, &rhs)])
}

fn eq_3_10(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (u, z) = (unit(i), unit(j));
    let lhs = c.e(&u, &z);
    let rhs = lin(&[(1, &c.m(&c.q(&u), &z)), (-1, &c.e(&c.r(&u), &z)), (1, &c.e(&u, &z))]);
    lin(&[(1, &lhs), (-1, &rhs)])
}

/// `(R − 2L − 1)x` with `L = 1`.
fn r_minus_3(c: &CircleAlgebra, x: &Sparse) -> Sparse {
    lin(&[(1, &c.r(x)), (-3, x)])
}

/// `(R − L)x` with `L = 1`.
fn r_minus_1(c: &CircleAlgebra, x: &Sparse) -> Sparse {
    lin(&[(1, &c.r(x)), (-1, x)])
}

fn eq_3_11(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (a, b) = (unit(i), unit(j));
    r_minus_3(c, &lin(&[(1, &c.m(&a, &b)), (-1, &c.m(&b, &a))]))
}

fn eq_3_12(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (a, u) = (unit(i), unit(j));
    let ra = r_minus_3(c, &a);
    lin(&[(1, &c.f(&ra, &u)), (-1, &c.e(&u, &ra))])
}

fn eq_3_13(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (a, v) = (unit(i), unit(j));
    let first = r_minus_1(c, &lin(&[(1, &c.f(&a, &v)), (-1, &c.e(&v, &a))]));
    let rv = c.r(&v);
    lin(&[
        (1, &first),
        (1, &c.e(&rv, &a)),
        (-1, &c.f(&a, &rv)),
        (-1, &c.e(&v, &r_minus_1(c, &a))),
    ])
}

fn eq_3_14(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (a, cc) = (unit(i), unit(j));
    let ra = r_minus_1(c, &a);
    let qc = c.q(&cc);
    lin(&[
        (1, &c.m(&ra, &cc)),
        (-2, &c.m(&cc, &ra)),
        (-1, &c.f(&a, &qc)),
        (1, &c.e(&qc, &a)),
    ])
}

/// `(R + Q + 1)x`.
fn s_op(c: &CircleAlgebra, x: &Sparse) -> Sparse {
    lin(&[(1, &c.r(x)), (1, &c.q(x)), (1, x)])
}

fn eq_3_53(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (z, y) = (unit(i), unit(j));
    let sz = s_op(c, &z);
    lin(&[(1, &c.f(&z, &y)), (1, &c.e(&y, &sz)), (-1, &c.e(&y, &z)), (-1, &c.f(&sz, &y))])
}

fn eq_3_54(c: &CircleAlgebra, i: usize, j: usize) -> Sparse {
    let (z, u) = (unit(i), unit(j));
    let (sz, su) = (s_op(c, &z), s_op(c, &u));
    let sym = lin(&[
        (1, &c.e(&u, &z)),
        (1, &c.m(&u, &z)),
        (1, &c.e(&z, &u)),
        (1, &c.m(&z, &u)),
        (1, &c.f(&u, &z)),
        (1, &c.f(&z, &u)),
    ]);
    lin(&[
        (1, &c.m(&z, &su)),
        (1, &c.m(&u, &sz)),
        (1, &sym),
        (-1, &c.m(&su, &z)),
        (-1, &c.m(&sz, &u)),
        (-1, &c.r(&sym)),
    ])
}

/// Identifiers of the fourteen equations obtained from the defining identities.
pub const BILINEAR_EQUATIONS: [&str; 14] = [
    "3.1", "3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "3.8", "3.9", "3.10", "3.11", "3.12", "3.13", "3.14",
];

/// Identifiers of the equations obtained from weak commutativity.
pub const WEAK_EQUATIONS: [&str; 2] = ["3.53", "3.54"];

/// The fourteen bilinear equations with `L = 1`, plus the two weak commutativity
/// equations when `weakly_commutative`.
pub fn check_bilinear_equations(c: &CircleAlgebra, weakly_commutative: bool) -> CheckTable {
    let mut checks: Vec<(&'static str, &'static str, PairCheck)> = vec![
        ("3.1", "L(yez) = (L(y)ez) - (yez) + (yeL(z))", eq_3_1),
        ("3.2", "L(yve) = (L(y)ve) - (yL(v)e) + (yve)", eq_3_2),
        ("3.3", "L(evz) = (evz) - (eL(v)z) + (evL(z))", eq_3_3),
        ("3.4", "(xue) = R(xue) - Q(uxe) + L(xue)", eq_3_4),
        ("3.5", "(xeQ(v)) = (R(x)ve) - Q(exv) + (evR(x))", eq_3_5),
        ("3.6", "(xeR(y)) = R(xey) - (yQ(x)e) + (yeR(x))", eq_3_6),
        ("3.7", "(xeL(z)) = (R(x)ez) - (eQ(x)z) + L(xez)", eq_3_7),
        ("3.8", "(euR(y)) = R(euy) - (yR(u)e) + (yeQ(u))", eq_3_8),
        ("3.9", "(euQ(v)) = (Q(u)ve) - Q(uev) + (evQ(u))", eq_3_9),
        ("3.10", "(euL(z)) = (Q(u)ez) - (eR(u)z) + L(euz)", eq_3_10),
        ("3.11", "(R-2L-1)((aeb) - (bea)) = 0", eq_3_11),
        ("3.12", "((R-2L-1)a,u,e) - (e,u,(R-2L-1)a) = 0", eq_3_12),
        ("3.13", "(R-L)((ave) - (eva)) + (eR(v)a) - (aR(v)e) = (ev(R-L)a)", eq_3_13),
        ("3.14", "((R-L)aec) - 2(ce(R-L)a) = (aQ(c)e) - (eQ(c)a)", eq_3_14),
    ];
    if weakly_commutative {
        checks.push(("3.53", "(zye) + (ey(R+Q+1)z) = (eyz) + ((R+Q+1)zye)", eq_3_53));
        checks.push(("3.54", "symmetrized weak commutativity with x = y = e", eq_3_54));
    }
    run_checks(c, &checks)
}

/// Outcome of searching the synthesized system for an element acting as the left unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeftUnitCandidate {
    /// Some `e` with `(x e y) = x∘y` on all basis pairs, if one exists.
    pub element: Option<Vector>,
    /// Whether that `e` is the only such element.
    pub unique: bool,
    pub tripotent: bool,
    pub left_unit: bool,
    /// `R` and `Q` of `e` act by the eigenvalues prescribed by the grading.
    pub operators_match_grading: bool,
}

impl LeftUnitCandidate {
    pub fn found(&self) -> bool {
        self.tripotent && self.left_unit && self.operators_match_grading
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SynthesisReport {
    pub space: GradedSpace,
    pub properties: CheckTable,
    /// Symmetry of `A1`, the `A3` relation and the tilde automorphism all hold.
    pub admissible: bool,
    pub equations: CheckTable,
    /// The bilinear equations hold, with the weak ones included when `U13+ = 0`.
    pub equations_pass: bool,
    pub axioms: Vec<IdentityReport>,
    /// Both defining identities hold for the synthesized system.
    pub axioms_pass: bool,
    pub left_unit: LeftUnitCandidate,
}

fn find_left_unit(s: &TripleSystem, c: &CircleAlgebra) -> Result<LeftUnitCandidate> {
    let n = c.dim();
    let mut none = LeftUnitCandidate {
        element: None,
        unique: false,
        tripotent: false,
        left_unit: false,
        operators_match_grading: false,
    };
    if n == 0 {
        return Ok(none);
    }
    // Rows indexed by (i, j, l): Σ_k e_k (e_i e_k e_j)_l = (e_i ∘ e_j)_l.
    let mut aug = Matrix::zeros(n * n * n, n + 1);
    for i in 0..n {
        for j in 0..n {
            let base = (i * n + j) * n;
            for k in 0..n {
                for (l, v) in s.basis_product(i, k, j) {
                    aug[(base + l, k)] = v.clone();
                }
            }
            for (l, v) in &c.table[i * n + j] {
                aug[(base + l, n)] = v.clone();
            }
        }
    }
    let (red, pivots) = aug.rref();
    if pivots.contains(&n) {
        return Ok(none);
    }
    let mut e = Vector::zeros(n);
    for (row, &p) in pivots.iter().enumerate() {
        e[p] = red[(row, n)].clone();
    }
    none.unique = pivots.len() == n;
    let es = to_sparse(&e);
    none.tripotent = to_dense(n, &s.product_sparse(&es, &es, &es)) == e;
    let mut left = true;
    let mut graded = true;
    for k in 0..n {
        let x = unit(k);
        left &= s.product_sparse(&es, &es, &x) == x;
        let b = c.block_of(k);
        graded &= s.product_sparse(&x, &es, &es) == lin(&[(b.r(), &x)]);
        graded &= s.product_sparse(&es, &x, &es) == lin(&[(b.q(), &x)]);
    }
    none.left_unit = left;
    none.operators_match_grading = graded;
    none.element = Some(e);
    Ok(none)
}

/// Builds the triple product of a circle table and reports which
/// admissibility, equation and axiom checks it meets.
pub fn synthesize_from_circle(c: &CircleAlgebra) -> Result<(TripleSystem, SynthesisReport)> {
    let system = reconstruct_triple(c).with_label("synthesized");
    let properties = check_circle_properties(c);
    let admissible = properties.all_pass(&ADMISSIBILITY);
    let weak = c.space.u13p == 0;
    let equations = check_bilinear_equations(c, weak);
    let equations_pass = equations.passed();
    let axioms = vec![
        check_identity_1_1(&system, CheckMode::default_for(system.dim())),
        check_identity_1_2(&system, CheckMode::default_for(system.dim())),
    ];
    let axioms_pass = axioms.iter().all(|r| r.passed);
    let left_unit = find_left_unit(&system, c)?;
    let report = SynthesisReport {
        space: c.space,
        properties,
        admissible,
        equations,
        equations_pass,
        axioms,
        axioms_pass,
        left_unit,
    };
    Ok((system, report))
}

/// Random graded space of total dimension `1..=max_dim`.
pub fn random_graded_space(rng: &mut impl Rng, max_dim: usize) -> GradedSpace {
    loop {
        let mut d = [0usize; 4];
        let total = rng.gen_range(1..=max_dim.max(1));
        for _ in 0..total {
            d[rng.gen_range(0..4)] += 1;
        }
        let g = GradedSpace::new(d[0], d[1], d[2], d[3]);
        if g.dim() > 0 {
            return g;
        }
    }
}

fn small_nonzero(rng: &mut impl Rng) -> i64 {
    let c = rng.gen_range(-2i64..=1);
    if c >= 0 {
        c + 1
    } else {
        c
    }
}

/// Target indices allowed for `e_i ∘ e_j` by the tilde grading, restricted to `U11` or `U13`.
fn targets(space: &GradedSpace, i: usize, j: usize, p: u8, respect_grading: bool) -> Vec<usize> {
    let sign = space.block_of(i).tilde_sign() * space.block_of(j).tilde_sign();
    (0..space.dim())
        .filter(|&k| {
            let b = space.block_of(k);
            b.p() == p && ((b.tilde_sign() == sign) == respect_grading)
        })
        .collect()
}

/// Value of `A3(e_j, e_i)` forced by the `A3` relation from `A3(e_i, e_j) = a`.
fn a3_partner(space: &GradedSpace, i: usize, j: usize, a: &Scalar) -> Scalar {
    let (pi, pj) = (space.block_of(i).p(), space.block_of(j).p());
    // (-3)^{p(i)} A3(j,i) = -(-3)^{p(j)} A3(i,j)
    let factor = Scalar::ratio(-pow_neg3(pj), pow_neg3(pi));
    a * &factor
}

/// A random admissible circle table (symmetric `A1`, related `A3`, tilde-graded), with small
/// integer coefficients and roughly half of the allowed entries nonzero.
pub fn random_admissible_circle(space: GradedSpace, seed: u64) -> CircleAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = space.dim();
    let mut c = CircleAlgebra::zero(space);
    let mut entries: Vec<Accumulator> = (0..n * n).map(|_| Accumulator::default()).collect();
    for i in 0..n {
        for j in i..n {
            for k in targets(&space, i, j, 0, true) {
                if rng.gen_bool(0.5) {
                    let a = vec![(k, Scalar::from_int(small_nonzero(&mut rng)))];
                    entries[i * n + j].add(&a);
                    if i != j {
                        entries[j * n + i].add(&a);
                    }
                }
            }
            if i == j {
                continue;
            }
            for k in targets(&space, i, j, 1, true) {
                if rng.gen_bool(0.5) {
                    let a = Scalar::from_int(small_nonzero(&mut rng));
                    let b = a3_partner(&space, i, j, &a);
                    entries[i * n + j].add(&vec![(k, a)]);
                    entries[j * n + i].add(&vec![(k, b)]);
                }
            }
        }
    }
    for (slot, acc) in entries.into_iter().enumerate() {
        c.table[slot] = acc.finish();
    }
    c
}

/// Graded space and admissible table both drawn from `seed`.
pub fn random_circle(seed: u64, max_dim: usize) -> CircleAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = random_graded_space(&mut rng, max_dim);
    random_admissible_circle(space, seed)
}

/// Ways to break exactly one of the admissibility conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mutation {
    /// Breaks the symmetry of `A1`.
    A1Symmetry,
    /// Breaks the skew relation for `A3`.
    A3Relation,
    /// Breaks the tilde automorphism while keeping the other two conditions.
    TildeGrading,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [Mutation::A1Symmetry, Mutation::A3Relation, Mutation::TildeGrading];

    pub fn property(self) -> &'static str {
        match self {
            Mutation::A1Symmetry => "3.39",
            Mutation::A3Relation => "3.40",
            Mutation::TildeGrading => "3.42",
        }
    }
}

/// Applies `kind` at a randomly chosen admissible position, or returns `None`
/// when the space has no position where the mutation is possible.
pub fn mutate(c: &CircleAlgebra, kind: Mutation, seed: u64) -> Option<CircleAlgebra> {
    let space = c.space;
    let n = space.dim();
    let mut options: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ks = match kind {
                Mutation::A1Symmetry if i != j => targets(&space, i, j, 0, true),
                Mutation::A3Relation => targets(&space, i, j, 1, true),
                Mutation::TildeGrading => {
                    let mut ks = targets(&space, i, j, 0, false);
                    if i != j {
                        ks.extend(targets(&space, i, j, 1, false));
                    }
                    ks
                }
                _ => Vec::new(),
            };
            options.extend(ks.into_iter().map(|k| (i, j, k)));
        }
    }
    if options.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (i, j, k) = options[rng.gen_range(0..options.len())];
    let mut out = c.clone();
    let mut add = |a: usize, b: usize, v: Scalar| {
        let slot = a * n + b;
        let mut acc = Accumulator::default();
        acc.add(&out.table[slot]);
        acc.add(&vec![(k, v)]);
        out.table[slot] = acc.finish();
    };
    match kind {
        Mutation::A1Symmetry | Mutation::A3Relation => add(i, j, Scalar::one()),
        Mutation::TildeGrading => {
            add(i, j, Scalar::one());
            if i != j {
                if space.block_of(k).p() == 0 {
                    add(j, i, Scalar::one());
                } else {
                    add(j, i, a3_partner(&space, i, j, &Scalar::one()));
                }
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_signs() {
        let bars: Vec<i64> = Block::ALL.iter().map(|b| b.bar_sign()).collect();
        let tildes: Vec<i64> = Block::ALL.iter().map(|b| b.tilde_sign()).collect();
        assert_eq!(bars, vec![1, -1, 1, -1]);
        assert_eq!(tildes, vec![1, -1, -1, 1]);
        for b in Block::ALL {
            // x̄ = (−1)^{p(x)} x̃
            let p_sign = if b.p() == 0 { 1 } else { -1 };
            assert_eq!(b.bar_sign(), p_sign * b.tilde_sign());
        }
    }

    #[test]
    fn involutions_on_homogeneous_vectors() {
        let g = GradedSpace::new(1, 1, 1, 1);
        let x = Vector::from_ints(&[1, 0, 0, 0]);
        let inv = involutions(&g, &x).unwrap();
        assert_eq!((inv.bar.clone(), inv.tilde.clone(), inv.p), (x.clone(), x, Some(0)));
        let y = Vector::from_ints(&[0, 0, 1, 0]);
        let inv = involutions(&g, &y).unwrap();
        assert_eq!(inv.bar, y);
        assert_eq!(inv.tilde, Vector::from_ints(&[0, 0, -1, 0]));
        assert_eq!(inv.p, Some(1));
        assert_eq!(involutions(&g, &Vector::from_ints(&[1, 0, 1, 0])).unwrap().p, None);
    }

    #[test]
    fn bar_is_involutive() {
        let g = GradedSpace::new(2, 1, 1, 2);
        let x = Vector::from_ints(&[1, -2, 3, 4, 5, -6]);
        let once = involutions(&g, &x).unwrap().bar;
        assert_eq!(involutions(&g, &once).unwrap().bar, x);
    }

    #[test]
    fn zero_product_synthesis() {
        let c = CircleAlgebra::zero(GradedSpace::new(2, 0, 0, 0));
        let (s, report) = synthesize_from_circle(&c).unwrap();
        assert_eq!(s.nonzero_constants(), 0);
        assert!(report.admissible && report.equations_pass && report.axioms_pass);
        assert!(!report.left_unit.found());
    }

    #[test]
    fn random_tables_are_admissible() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_graded_space(&mut rng, 6);
            let c = random_admissible_circle(g, seed);
            let props = check_circle_properties(&c);
            assert!(props.passed(), "seed {seed}: {:?}", props.failures());
        }
    }

    #[test]
    fn set_constant_checks_indices() {
        let mut c = CircleAlgebra::zero(GradedSpace::new(1, 0, 0, 0));
        assert!(matches!(
            c.set_constant(1, 0, &Vector::from_ints(&[1])),
            Err(Error::GradingMismatch(_))
        ));
    }
}
