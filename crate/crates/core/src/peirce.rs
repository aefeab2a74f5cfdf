//! Operators attached to a tripotent and the Peirce decomposition they induce.
//!
//! For a tripotent `e` put `L(x) = (eex)`, `R(x) = (xee)`, `Q(x) = (exe)`.
//! The whole space splits into at most ten joint eigenspaces of `L` and `R`
//! (with `U11` and `U13` further split by the sign of `Q`). The admissible
//! eigenvalue pairs form a closed list, so each component is computed as an
//! intersection of kernels and any leftover is reported as an error.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{assert_direct_sum, image, intersect, kernel, Matrix, Subspace, Vector};
use crate::scalar::Scalar;
use crate::triple::{to_dense, to_sparse, TripleSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// The ten admissible components, ordered by `(λ, μ, sign)` with `+` before `−`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentLabel {
    NegHalfZero,
    ZeroZero,
    ZeroOne,
    HalfHalf,
    HalfTwo,
    OneOnePlus,
    OneOneMinus,
    OneThreePlus,
    OneThreeMinus,
    ThreeHalvesThreeHalves,
}

impl ComponentLabel {
    pub const ALL: [ComponentLabel; 10] = [
        ComponentLabel::NegHalfZero,
        ComponentLabel::ZeroZero,
        ComponentLabel::ZeroOne,
        ComponentLabel::HalfHalf,
        ComponentLabel::HalfTwo,
        ComponentLabel::OneOnePlus,
        ComponentLabel::OneOneMinus,
        ComponentLabel::OneThreePlus,
        ComponentLabel::OneThreeMinus,
        ComponentLabel::ThreeHalvesThreeHalves,
    ];

    /// Components that survive when the system is weakly commutative.
    pub const WEAKLY_COMMUTATIVE_ZERO: [ComponentLabel; 4] = [
        ComponentLabel::ThreeHalvesThreeHalves,
        ComponentLabel::NegHalfZero,
        ComponentLabel::HalfTwo,
        ComponentLabel::OneThreePlus,
    ];

    /// `(λ, μ)` as `(numerator, denominator)` pairs over the common denominator 2.
    fn halves(self) -> (i64, i64) {
        use ComponentLabel::*;
        match self {
            NegHalfZero => (-1, 0),
            ZeroZero => (0, 0),
            ZeroOne => (0, 2),
            HalfHalf => (1, 1),
            HalfTwo => (1, 4),
            OneOnePlus | OneOneMinus => (2, 2),
            OneThreePlus | OneThreeMinus => (2, 6),
            ThreeHalvesThreeHalves => (3, 3),
        }
    }

    pub fn lambda(self) -> Scalar {
        Scalar::ratio(self.halves().0, 2)
    }

    pub fn mu(self) -> Scalar {
        Scalar::ratio(self.halves().1, 2)
    }

    pub fn sign(self) -> Option<Sign> {
        use ComponentLabel::*;
        match self {
            OneOnePlus | OneThreePlus => Some(Sign::Plus),
            OneOneMinus | OneThreeMinus => Some(Sign::Minus),
            _ => None,
        }
    }

    fn half_text(h: i64) -> String {
        if h % 2 == 0 {
            (h / 2).to_string()
        } else {
            format!("{h}/2")
        }
    }

    pub fn lambda_text(self) -> String {
        Self::half_text(self.halves().0)
    }

    pub fn mu_text(self) -> String {
        Self::half_text(self.halves().1)
    }

    pub fn sign_text(self) -> Option<&'static str> {
        self.sign().map(|s| match s {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }

    /// Eigenvalue `Q` is expected to take on a signed component (`±1` on `U11±`, `±3` on `U13±`).
    pub fn q_eigenvalue(self) -> Option<i64> {
        use ComponentLabel::*;
        match self {
            OneOnePlus => Some(1),
            OneOneMinus => Some(-1),
            OneThreePlus => Some(3),
            OneThreeMinus => Some(-3),
            _ => None,
        }
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U({},{})", self.lambda_text(), self.mu_text())?;
        if let Some(s) = self.sign_text() {
            f.write_str(s)?;
        }
        Ok(())
    }
}

impl Serialize for ComponentLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A verified tripotent together with the matrices of `L`, `R` and `Q`.
#[derive(Clone, Debug)]
pub struct TripotentContext<'s> {
    pub system: &'s TripleSystem,
    pub e: Vector,
    pub l: Matrix,
    pub r: Matrix,
    pub q: Matrix,
}

pub fn make_context<'s>(s: &'s TripleSystem, e: &Vector) -> Result<TripotentContext<'s>> {
    let n = s.dim();
    e.check_len(n)?;
    let es = to_sparse(e);
    let eee = to_dense(n, &s.product_sparse(&es, &es, &es));
    let residual = &eee - e;
    if !residual.is_zero() {
        return Err(Error::NotATripotent { residual });
    }
    let mut l_cols = Vec::with_capacity(n);
    let mut r_cols = Vec::with_capacity(n);
    let mut q_cols = Vec::with_capacity(n);
    for j in 0..n {
        let x = vec![(j, Scalar::one())];
        l_cols.push(to_dense(n, &s.product_sparse(&es, &es, &x)));
        r_cols.push(to_dense(n, &s.product_sparse(&x, &es, &es)));
        q_cols.push(to_dense(n, &s.product_sparse(&es, &x, &es)));
    }
    Ok(TripotentContext {
        system: s,
        e: e.clone(),
        l: Matrix::from_columns(n, &l_cols)?,
        r: Matrix::from_columns(n, &r_cols)?,
        q: Matrix::from_columns(n, &q_cols)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RelationId {
    Eq1_4,
    Eq1_5,
    Eq1_6,
    Eq1_7,
    Eq1_8,
    Eq1_8Prime,
    Eq1_42,
    Eq1_43,
}

impl RelationId {
    pub const ALL: [RelationId; 8] = [
        RelationId::Eq1_4,
        RelationId::Eq1_5,
        RelationId::Eq1_6,
        RelationId::Eq1_7,
        RelationId::Eq1_8,
        RelationId::Eq1_8Prime,
        RelationId::Eq1_42,
        RelationId::Eq1_43,
    ];

    pub fn key(self) -> &'static str {
        match self {
            RelationId::Eq1_4 => "1.4",
            RelationId::Eq1_5 => "1.5",
            RelationId::Eq1_6 => "1.6",
            RelationId::Eq1_7 => "1.7",
            RelationId::Eq1_8 => "1.8",
            RelationId::Eq1_8Prime => "1.8'",
            RelationId::Eq1_42 => "1.42",
            RelationId::Eq1_43 => "1.43",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            RelationId::Eq1_4 => "R^2 - Q^2 + LR - R = 0",
            RelationId::Eq1_5 => "RQ - QR + LQ - Q = 0",
            RelationId::Eq1_6 => "LR = RL",
            RelationId::Eq1_7 => "LQ + QL - 2Q = 0",
            RelationId::Eq1_8 => "(R - 2L - 1)(R - L) = 0",
            RelationId::Eq1_8Prime => "(R - L)(R - 2L - 1) = 0",
            RelationId::Eq1_42 => "(R - L)(R + Q + L - 1) = 0",
            RelationId::Eq1_43 => "(R - L)Q = -3(R - L)L",
        }
    }

    /// Whether the relation is only expected for weakly commutative systems.
    pub fn requires_weak_commutativity(self) -> bool {
        matches!(self, RelationId::Eq1_42 | RelationId::Eq1_43)
    }
}

#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub id: RelationId,
    pub residual: Matrix,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }

    /// Number of nonzero entries of the residual matrix.
    pub fn residual_nonzero(&self) -> usize {
        self.residual.nonzero_count()
    }
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn get(&self, id: RelationId) -> &RelationCheck {
        self.checks.iter().find(|c| c.id == id).expect("every relation is checked")
    }

    /// All relations that hold in every system, i.e. everything except the two that need weak commutativity.
    pub fn general_relations_pass(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| !c.id.requires_weak_commutativity())
            .all(RelationCheck::passed)
    }
}

pub fn check_operator_relations(ctx: &TripotentContext<'_>) -> Result<RelationReport> {
    let (l, r, q) = (&ctx.l, &ctx.r, &ctx.q);
    let one = Scalar::one();
    let lr = l.mul(r)?;
    let rl = r.mul(l)?;
    let lq = l.mul(q)?;
    let ql = q.mul(l)?;
    let r_minus_l = r.sub(l)?;
    // R − 2L − 1
    let r_2l_1 = r.sub(&l.scale(&Scalar::from_int(2)))?.shift(&one);
    let mut checks = Vec::with_capacity(8);
    let mut push = |id, residual| checks.push(RelationCheck { id, residual });

    push(RelationId::Eq1_4, r.mul(r)?.sub(&q.mul(q)?)?.add(&lr)?.sub(r)?);
    push(RelationId::Eq1_5, r.mul(q)?.sub(&q.mul(r)?)?.add(&lq)?.sub(q)?);
    push(RelationId::Eq1_6, lr.sub(&rl)?);
    push(RelationId::Eq1_7, lq.add(&ql)?.sub(&q.scale(&Scalar::from_int(2)))?);
    push(RelationId::Eq1_8, r_2l_1.mul(&r_minus_l)?);
    push(RelationId::Eq1_8Prime, r_minus_l.mul(&r_2l_1)?);
    let rql_1 = r.add(q)?.add(l)?.shift(&one);
    push(RelationId::Eq1_42, r_minus_l.mul(&rql_1)?);
    let rl_q = r_minus_l.mul(q)?;
    let rl_l = r_minus_l.mul(l)?.scale(&Scalar::from_int(3));
    push(RelationId::Eq1_43, rl_q.add(&rl_l)?);
    Ok(RelationReport { checks })
}

/// The ten Peirce components and the correspondence `τ = Q/√3` between
/// `U(3/2,3/2)` and `U(1/2,2)`.
#[derive(Clone, Debug)]
pub struct PeirceDecomposition<'s> {
    pub context: TripotentContext<'s>,
    pub components: BTreeMap<ComponentLabel, Subspace>,
    /// `τ` from `U(3/2,3/2)` coordinates to `U(1/2,2)` coordinates.
    pub tau: Matrix,
    /// `τ` from `U(1/2,2)` coordinates back to `U(3/2,3/2)` coordinates.
    pub tau_back: Matrix,
}

impl PeirceDecomposition<'_> {
    pub fn component(&self, label: ComponentLabel) -> &Subspace {
        &self.components[&label]
    }

    pub fn dim(&self, label: ComponentLabel) -> usize {
        self.components[&label].dim()
    }

    pub fn dims(&self) -> BTreeMap<ComponentLabel, usize> {
        self.components.iter().map(|(k, v)| (*k, v.dim())).collect()
    }

    pub fn nonzero(&self) -> Vec<(ComponentLabel, usize)> {
        self.components
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(k, s)| (*k, s.dim()))
            .collect()
    }
}

fn inv_sqrt3() -> Scalar {
    Scalar::sqrt3().scale(&crate::scalar::Rational::new(1.into(), 3.into()))
}

/// Coordinates of `(1/√3) Q b` in `target` for every basis vector `b` of `source`.
fn tau_matrix(q: &Matrix, source: &Subspace, target: &Subspace) -> Result<Matrix> {
    let scale = inv_sqrt3();
    let mut cols = Vec::with_capacity(source.dim());
    for b in source.basis() {
        let image = q.mul_vec(b)?.scale(&scale);
        let coords = target.coordinates(&image).ok_or_else(|| {
            Error::Decomposition("Q does not map U(3/2,3/2) and U(1/2,2) onto each other".into())
        })?;
        cols.push(coords);
    }
    Matrix::from_columns(target.dim(), &cols)
}

pub fn peirce_decompose<'s>(ctx: &TripotentContext<'s>) -> Result<PeirceDecomposition<'s>> {
    use ComponentLabel::*;
    let n = ctx.system.dim();
    let half = |h: i64| Scalar::ratio(h, 2);

    let mut l_kernels: BTreeMap<i64, Subspace> = BTreeMap::new();
    let mut r_kernels: BTreeMap<i64, Subspace> = BTreeMap::new();
    for label in ComponentLabel::ALL {
        let (lh, mh) = label.halves();
        l_kernels.entry(lh).or_insert_with(|| kernel(&ctx.l.shift(&half(lh))));
        r_kernels.entry(mh).or_insert_with(|| kernel(&ctx.r.shift(&half(mh))));
    }

    let mut joint: BTreeMap<(i64, i64), Subspace> = BTreeMap::new();
    for label in ComponentLabel::ALL {
        let key = label.halves();
        if let std::collections::btree_map::Entry::Vacant(slot) = joint.entry(key) {
            slot.insert(intersect(&l_kernels[&key.0], &r_kernels[&key.1])?);
        }
    }

    let mut components = BTreeMap::new();
    for label in ComponentLabel::ALL {
        let eigen = &joint[&label.halves()];
        let comp = match label.q_eigenvalue() {
            Some(q) => eigen.restricted_kernel(&ctx.q.shift(&Scalar::from_int(q)))?,
            None => eigen.clone(),
        };
        components.insert(label, comp);
    }

    for (plus, minus) in [(OneOnePlus, OneOneMinus), (OneThreePlus, OneThreeMinus)] {
        let whole = joint[&plus.halves()].dim();
        let split = components[&plus].dim() + components[&minus].dim();
        if whole != split {
            return Err(Error::Decomposition(format!(
                "Q does not split U({},{}) into ± parts: dimension {whole}, ± parts sum to {split}",
                plus.lambda_text(),
                plus.mu_text()
            )));
        }
    }

    let parts: Vec<&Subspace> = components.values().collect();
    assert_direct_sum(&parts, n).map_err(|f| Error::Decomposition(f.to_string()))?;

    for label in [ZeroZero, HalfHalf, ZeroOne, NegHalfZero] {
        for b in components[&label].basis() {
            if !ctx.q.mul_vec(b)?.is_zero() {
                return Err(Error::Decomposition(format!("Q does not annihilate {label}")));
            }
        }
    }

    let (big, small) = (&components[&ThreeHalvesThreeHalves], &components[&HalfTwo]);
    let tau = tau_matrix(&ctx.q, big, small)?;
    let tau_back = tau_matrix(&ctx.q, small, big)?;
    if !tau_back.mul(&tau)?.is_identity() || !tau.mul(&tau_back)?.is_identity() {
        return Err(Error::Decomposition("τ is not an involutive bijection".into()));
    }

    Ok(PeirceDecomposition {
        context: ctx.clone(),
        components,
        tau,
        tau_back,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub nonzero: Vec<(ComponentLabel, usize)>,
    pub weakly_commutative: bool,
    /// Components that must vanish for a weakly commutative system but do not.
    pub violations: Vec<ComponentLabel>,
}

impl Classification {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn classify(d: &PeirceDecomposition<'_>, weakly_commutative: bool) -> Classification {
    let violations = if weakly_commutative {
        ComponentLabel::WEAKLY_COMMUTATIVE_ZERO
            .into_iter()
            .filter(|l| !d.components[l].is_zero())
            .collect()
    } else {
        Vec::new()
    };
    Classification {
        nonzero: d.nonzero(),
        weakly_commutative,
        violations,
    }
}

/// Structural facts every decomposition satisfies; each entry is `(name, holds)`.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub checks: Vec<(String, bool)>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub fn check_invariants(d: &PeirceDecomposition<'_>) -> Result<InvariantReport> {
    use ComponentLabel::*;
    let ctx = &d.context;
    let n = ctx.system.dim();
    let mut checks = Vec::new();

    let mut eigen_ok = true;
    let mut q_ok = true;
    for (label, comp) in &d.components {
        let l_shift = ctx.l.shift(&label.lambda());
        let r_shift = ctx.r.shift(&label.mu());
        for b in comp.basis() {
            eigen_ok &= l_shift.mul_vec(b)?.is_zero() && r_shift.mul_vec(b)?.is_zero();
            if let Some(q) = label.q_eigenvalue() {
                q_ok &= ctx.q.mul_vec(b)? == b.scale(&Scalar::from_int(q));
            }
        }
    }
    checks.push(("L and R act by the labelled eigenvalues".to_string(), eigen_ok));
    checks.push(("Q acts by ±1 on U11± and ±3 on U13±".to_string(), q_ok));

    let q2 = ctx.q.mul(&ctx.q)?;
    let mut q2_ok = true;
    for (label, factor) in [
        (OneOnePlus, 1),
        (OneOneMinus, 1),
        (OneThreePlus, 9),
        (OneThreeMinus, 9),
        (ThreeHalvesThreeHalves, 3),
        (HalfTwo, 3),
    ] {
        for b in d.components[&label].basis() {
            q2_ok &= q2.mul_vec(b)? == b.scale(&Scalar::from_int(factor));
        }
    }
    checks.push(("Q^2 = I on U11, 9I on U13, 3I on U(3/2,3/2) and U(1/2,2)".to_string(), q2_ok));

    checks.push((
        "-1 is not an eigenvalue of L".to_string(),
        kernel(&ctx.l.shift(&Scalar::from_int(-1))).is_zero(),
    ));

    let r_minus_l = ctx.r.sub(&ctx.l)?;
    let r_2l_1 = ctx.r.sub(&ctx.l.scale(&Scalar::from_int(2)))?.shift(&Scalar::one());
    checks.push((
        "ker(R - L) = im(R - 2L - 1)".to_string(),
        kernel(&r_minus_l) == image(&r_2l_1),
    ));
    checks.push((
        "ker(R - 2L - 1) = im(R - L)".to_string(),
        kernel(&r_2l_1) == image(&r_minus_l),
    ));

    let (big, small) = (d.dim(ThreeHalvesThreeHalves), d.dim(HalfTwo));
    let tau_ok = big == small
        && d.tau_back.mul(&d.tau)?.is_identity()
        && d.tau.mul(&d.tau_back)?.is_identity();
    checks.push(("τ is a bijection U(3/2,3/2) ↔ U(1/2,2) with τ² = id".to_string(), tau_ok));

    let parts: Vec<&Subspace> = d.components.values().collect();
    checks.push((
        "components form a direct sum of the whole space".to_string(),
        assert_direct_sum(&parts, n).is_ok(),
    ));
    Ok(InvariantReport { checks })
}
