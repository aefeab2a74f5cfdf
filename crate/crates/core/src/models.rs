//! The standard matrix models, their canonical tripotents and the Peirce
//! dimensions predicted by their block shapes.
//!
//! Matrix spaces are flattened row-major; pair models store the first matrix
//! and then the second.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::peirce::ComponentLabel;
use crate::scalar::{Rational, Scalar};
use crate::triple::TripleSystem;

/// Small sparse matrix used to evaluate model products on basis vectors.
#[derive(Clone, Debug)]
struct Block {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Block {
    fn from_slice(rows: usize, cols: usize, data: &[Scalar]) -> Self {
        let entries = data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| ((i / cols, i % cols), x.clone()))
            .collect();
        Block { rows, cols, entries }
    }

    fn write(&self, out: &mut [Scalar]) {
        for ((r, c), x) in &self.entries {
            out[r * self.cols + c] = x.clone();
        }
    }

    fn t(&self) -> Block {
        Block {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), x)| ((c, r), x.clone())).collect(),
        }
    }

    fn mul(&self, rhs: &Block) -> Block {
        assert_eq!(self.cols, rhs.rows);
        let mut entries: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for (&(_, j), b) in rhs.entries.range((k, 0)..(k + 1, 0)) {
                *entries.entry((i, j)).or_default() += a * b;
            }
        }
        entries.retain(|_, x| !x.is_zero());
        Block {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        }
    }

    fn combine(&self, rhs: &Block, sign: i64) -> Block {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut entries = self.entries.clone();
        for (k, x) in &rhs.entries {
            let e = entries.entry(*k).or_default();
            if sign > 0 {
                *e += x;
            } else {
                *e -= x;
            }
        }
        entries.retain(|_, x| !x.is_zero());
        Block {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    fn add(&self, rhs: &Block) -> Block {
        self.combine(rhs, 1)
    }

    fn sub(&self, rhs: &Block) -> Block {
        self.combine(rhs, -1)
    }
}

fn mul3(a: &Block, b: &Block, c: &Block) -> Block {
    a.mul(b).mul(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelDescriptor {
    pub name: String,
    pub params: BTreeMap<String, usize>,
    /// Predicted dimension of every nonzero Peirce component.
    pub expected_components: BTreeMap<ComponentLabel, usize>,
    pub weakly_commutative: bool,
}

impl ModelDescriptor {
    pub fn total_dim(&self) -> usize {
        self.expected_components.values().sum()
    }

    pub fn expected_dim(&self, label: ComponentLabel) -> usize {
        self.expected_components.get(&label).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct Model {
    pub system: TripleSystem,
    pub tripotent: Vector,
    pub descriptor: ModelDescriptor,
}

fn descriptor(name: &str, params: &[(&str, usize)], comps: &[(ComponentLabel, usize)], weak: bool) -> ModelDescriptor {
    ModelDescriptor {
        name: name.to_string(),
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        expected_components: comps.iter().filter(|(_, d)| *d > 0).copied().collect(),
        weakly_commutative: weak,
    }
}

fn sym(n: usize) -> usize {
    n * (n + 1) / 2
}

fn skew(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Product `(A1 B1ᵀ C1 + C1 B1ᵀ A1 − C1 A2 B2ᵀ, A2 B2ᵀ C2 + C2 B2ᵀ A2 − B1ᵀ A1 C2)`
/// on pairs of a `k×n` and an `n×k` matrix.
fn pair_system(k: usize, n: usize, label: String) -> TripleSystem {
    let split = |v: &Vector| {
        let e = v.entries();
        (Block::from_slice(k, n, &e[..k * n]), Block::from_slice(n, k, &e[k * n..]))
    };
    TripleSystem::from_product_oracle(2 * k * n, label, |x, y, z| {
        let (a1, a2) = split(x);
        let (b1, b2) = split(y);
        let (c1, c2) = split(z);
        let b1t = b1.t();
        let first = mul3(&a1, &b1t, &c1).add(&mul3(&c1, &b1t, &a1)).sub(&mul3(&c1, &a2, &b2.t()));
        let b2t = b2.t();
        let second = mul3(&a2, &b2t, &c2).add(&mul3(&c2, &b2t, &a2)).sub(&mul3(&b1t, &a1, &c2));
        let mut out = vec![Scalar::zero(); 2 * k * n];
        first.write(&mut out[..k * n]);
        second.write(&mut out[k * n..]);
        Vector::from(out)
    })
}

/// `A_{kn} − A_{nk}` with tripotent `((E_k | 0), (E_k ; 0))`.
pub fn build_akn_ank(k: usize, n: usize) -> Result<Model> {
    if k < 1 || k > n {
        return Err(Error::Parameter(format!("akn requires 1 <= k <= n, got k={k}, n={n}")));
    }
    let system = pair_system(k, n, format!("A{k}{n}-A{n}{k}"));
    let mut e = Vector::zeros(2 * k * n);
    for i in 0..k {
        e[i * n + i] = Scalar::one();
        e[k * n + i * k + i] = Scalar::one();
    }
    use ComponentLabel::*;
    let descriptor = descriptor(
        "akn",
        &[("k", k), ("n", n)],
        &[
            (OneOnePlus, sym(k) + k * (n - k)),
            (OneOneMinus, skew(k) + k * (n - k)),
            (OneThreePlus, sym(k)),
            (OneThreeMinus, skew(k)),
        ],
        false,
    );
    Ok(Model {
        system,
        tripotent: e,
        descriptor,
    })
}

/// `A_{nn} − A_{nn}` with `n = 3l` and the block-diagonal tripotent
/// `(diag(E/√2, E, 0), diag(0, E, E/√2))`.
pub fn build_ann_ann(l: usize) -> Result<Model> {
    if l < 1 {
        return Err(Error::Parameter("ann requires l >= 1".into()));
    }
    let n = 3 * l;
    let system = pair_system(n, n, format!("A{n}{n}-A{n}{n}"));
    let inv_sqrt2 = Scalar::sqrt2().scale(&Rational::new(1.into(), 2.into()));
    let mut e = Vector::zeros(2 * n * n);
    for i in 0..l {
        e[i * n + i] = inv_sqrt2.clone();
        e[(l + i) * n + l + i] = Scalar::one();
        e[n * n + (l + i) * n + l + i] = Scalar::one();
        e[n * n + (2 * l + i) * n + 2 * l + i] = inv_sqrt2.clone();
    }
    use ComponentLabel::*;
    let descriptor = descriptor(
        "ann",
        &[("l", l)],
        &[
            (ZeroZero, l * l),
            (HalfHalf, 4 * l * l),
            (OneOnePlus, 3 * sym(l)),
            (OneOneMinus, 3 * skew(l)),
            (ThreeHalvesThreeHalves, 2 * l * l),
            (NegHalfZero, 2 * l * l),
            (ZeroOne, 3 * l * l),
            (HalfTwo, 2 * l * l),
            (OneThreePlus, sym(l)),
            (OneThreeMinus, skew(l)),
        ],
        false,
    );
    Ok(Model {
        system,
        tripotent: e,
        descriptor,
    })
}

/// `D_{nk}`: `n×k` matrices with `(XYZ) = XYᵀZ + ZYᵀX − YXᵀZ`, tripotent `diag(E_l, 0)`.
pub fn build_dnk(n: usize, k: usize, l: usize) -> Result<Model> {
    if !(n >= k && k >= l && l >= 1) {
        return Err(Error::Parameter(format!(
            "dnk requires n >= k >= l >= 1, got n={n}, k={k}, l={l}"
        )));
    }
    let system = TripleSystem::from_product_oracle(n * k, format!("D{n}{k}"), |x, y, z| {
        let (x, y, z) = (
            Block::from_slice(n, k, x.entries()),
            Block::from_slice(n, k, y.entries()),
            Block::from_slice(n, k, z.entries()),
        );
        let yt = y.t();
        let r = mul3(&x, &yt, &z).add(&mul3(&z, &yt, &x)).sub(&mul3(&y, &x.t(), &z));
        let mut out = vec![Scalar::zero(); n * k];
        r.write(&mut out);
        Vector::from(out)
    });
    let mut e = Vector::zeros(n * k);
    for i in 0..l {
        e[i * k + i] = Scalar::one();
    }
    use ComponentLabel::*;
    let descriptor = descriptor(
        "dnk",
        &[("n", n), ("k", k), ("l", l)],
        &[
            (ZeroZero, (n - l) * (k - l)),
            (OneOnePlus, sym(l)),
            (OneOneMinus, (n - l) * l),
            (ZeroOne, l * (k - l)),
            (OneThreeMinus, skew(l)),
        ],
        true,
    );
    Ok(Model {
        system,
        tripotent: e,
        descriptor,
    })
}

/// `m×m` matrices with the structurable product `(x ȳ) z + (z ȳ) x − (z x̄) y`,
/// where `x̄` is the transpose; the tripotent is the identity matrix.
pub fn build_structurable_matrix(m: usize) -> Result<Model> {
    if m < 1 {
        return Err(Error::Parameter("structurable requires m >= 1".into()));
    }
    let system = TripleSystem::from_product_oracle(m * m, format!("M{m}"), |x, y, z| {
        let (x, y, z) = (
            Block::from_slice(m, m, x.entries()),
            Block::from_slice(m, m, y.entries()),
            Block::from_slice(m, m, z.entries()),
        );
        let yt = y.t();
        let r = mul3(&x, &yt, &z).add(&mul3(&z, &yt, &x)).sub(&mul3(&z, &x.t(), &y));
        let mut out = vec![Scalar::zero(); m * m];
        r.write(&mut out);
        Vector::from(out)
    });
    let mut e = Vector::zeros(m * m);
    for i in 0..m {
        e[i * m + i] = Scalar::one();
    }
    use ComponentLabel::*;
    let descriptor = descriptor(
        "structurable",
        &[("m", m)],
        &[(OneOnePlus, sym(m)), (OneThreeMinus, skew(m))],
        false,
    );
    Ok(Model {
        system,
        tripotent: e,
        descriptor,
    })
}

/// Registry used by the command line: `akn k,n`, `ann l`, `dnk n,k,l`, `structurable m`.
pub fn build_by_name(name: &str, params: &[usize]) -> Result<Model> {
    let want = |count: usize| {
        if params.len() == count {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "model {name} takes {count} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name {
        "akn" => {
            want(2)?;
            build_akn_ank(params[0], params[1])
        }
        "ann" => {
            want(1)?;
            build_ann_ann(params[0])
        }
        "dnk" => {
            want(3)?;
            build_dnk(params[0], params[1], params[2])
        }
        "structurable" => {
            want(1)?;
            build_structurable_matrix(params[0])
        }
        other => Err(Error::Parameter(format!(
            "unknown model {other:?}; expected one of akn, ann, dnk, structurable"
        ))),
    }
}

pub const MODEL_NAMES: [&str; 4] = ["akn", "ann", "dnk", "structurable"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_dims_sum_to_system_dim() {
        for k in 1..=4 {
            for n in k..=5 {
                let d = build_akn_ank(k, n).unwrap().descriptor;
                assert_eq!(d.total_dim(), 2 * k * n);
            }
        }
        for l in 1..=2 {
            assert_eq!(build_ann_ann(l).unwrap().descriptor.total_dim(), 18 * l * l);
        }
        for n in 1..=4 {
            for k in 1..=n {
                for l in 1..=k {
                    assert_eq!(build_dnk(n, k, l).unwrap().descriptor.total_dim(), n * k);
                }
            }
        }
        for m in 1..=4 {
            assert_eq!(build_structurable_matrix(m).unwrap().descriptor.total_dim(), m * m);
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(build_akn_ank(3, 2), Err(Error::Parameter(_))));
        assert!(matches!(build_akn_ank(0, 2), Err(Error::Parameter(_))));
        assert!(matches!(build_ann_ann(0), Err(Error::Parameter(_))));
        assert!(matches!(build_dnk(2, 3, 1), Err(Error::Parameter(_))));
        assert!(matches!(build_dnk(3, 2, 3), Err(Error::Parameter(_))));
        assert!(matches!(build_structurable_matrix(0), Err(Error::Parameter(_))));
        assert!(matches!(build_by_name("akn", &[1]), Err(Error::Parameter(_))));
        assert!(matches!(build_by_name("nope", &[]), Err(Error::Parameter(_))));
    }

    #[test]
    fn scalar_case_of_dnk() {
        let model = build_dnk(1, 1, 1).unwrap();
        let p = model
            .system
            .product(&Vector::from_ints(&[2]), &Vector::from_ints(&[3]), &Vector::from_ints(&[4]))
            .unwrap();
        assert_eq!(p, Vector::from_ints(&[24]));
    }

    #[test]
    fn d21_sample_product() {
        let model = build_dnk(2, 1, 1).unwrap();
        let (x, y, z) = (Vector::from_ints(&[1, 0]), Vector::from_ints(&[0, 1]), Vector::from_ints(&[1, 0]));
        assert_eq!(model.system.product(&x, &y, &z).unwrap(), Vector::from_ints(&[0, -1]));
    }

    #[test]
    fn canonical_elements_are_tripotents() {
        let models = [
            build_akn_ank(1, 1).unwrap(),
            build_akn_ank(2, 3).unwrap(),
            build_ann_ann(1).unwrap(),
            build_dnk(4, 3, 2).unwrap(),
            build_structurable_matrix(2).unwrap(),
        ];
        for m in &models {
            let e = &m.tripotent;
            assert_eq!(&m.system.product(e, e, e).unwrap(), e, "{}", m.system.label());
        }
    }
}
