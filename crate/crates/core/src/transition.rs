//! Transition functions and maps between presentations, downward closure
//! operators, and the predicted homotopy type of a Frobenius complex.

use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::homology::LocalBettiVector;
use crate::monoid::{Coords, Element, MonoidSpec, NumericalIso};

/// `τ^p_q(m p + t) = m q + min(t, q - 1)` for `0 <= t < p`.
pub fn tau(p: u64, q: u64, n: u64) -> u64 {
    assert!(
        p >= 1 && q >= 1,
        "transition function needs positive parameters"
    );
    (n / p) * q + (n % p).min(q - 1)
}

fn params(spec: MonoidSpec) -> Option<Coords> {
    match spec {
        MonoidSpec::TwoGen { p, q } => Some(SmallVec::from_slice(&[p, q])),
        MonoidSpec::ThreeGen { p, q, r } => Some(SmallVec::from_slice(&[p, q, r])),
        _ => None,
    }
}

/// Coordinatewise `τ` applied to an arbitrary coordinate tuple, then
/// normalized in `target`.
pub fn transition_raw(source: MonoidSpec, target: MonoidSpec, raw: &[u64]) -> Result<Element> {
    let (Some(from), Some(to)) = (params(source), params(target)) else {
        return Err(Error::KindMismatch {
            source_spec: source,
            target_spec: target,
        });
    };
    if from.len() != to.len() {
        return Err(Error::KindMismatch {
            source_spec: source,
            target_spec: target,
        });
    }
    let image: Coords = raw
        .iter()
        .zip(from.iter().zip(&to))
        .map(|(&x, (&p, &q))| tau(p, q, x))
        .collect();
    target.element(&image)
}

/// The transition map `T : source -> target`.
pub fn transition_map(x: &Element, target: MonoidSpec) -> Result<Element> {
    transition_raw(x.spec(), target, x.coords())
}

/// Self-maps used as downward closure operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosureOp {
    /// `T^{via}_{source} ∘ T^{source}_{via}` on `source`.
    ComposedT { source: MonoidSpec, via: MonoidSpec },
    /// `min(m, n+1) a + min(m+1, n) b + k c` on `<1,1,2>`.
    F112,
    /// `min(m, ⌊n/2⌋+1) a + min(2m+1, n) b + k c` on `<1,2,2>`.
    G122,
    /// `min(m, n+1) a + min(m+1, n) b + k c` on `<2,2,2>`.
    H222,
    /// `min(x_i, 1)` coordinatewise on `N^dim`.
    FreeClamp { dim: usize },
}

impl ClosureOp {
    pub fn domain(&self) -> MonoidSpec {
        match *self {
            ClosureOp::ComposedT { source, .. } => source,
            ClosureOp::F112 => MonoidSpec::ThreeGen { p: 1, q: 1, r: 2 },
            ClosureOp::G122 => MonoidSpec::ThreeGen { p: 1, q: 2, r: 2 },
            ClosureOp::H222 => MonoidSpec::ThreeGen { p: 2, q: 2, r: 2 },
            ClosureOp::FreeClamp { dim } => MonoidSpec::Free { dim },
        }
    }

    /// Applies the defining formula to an arbitrary representative.
    pub fn apply_raw(&self, raw: &[u64]) -> Result<Element> {
        let spec = self.domain();
        match *self {
            ClosureOp::ComposedT { source, via } => {
                let mid = transition_raw(source, via, raw)?;
                transition_map(&mid, source)
            }
            ClosureOp::F112 | ClosureOp::H222 => {
                let (m, n, k) = (raw[0], raw[1], raw[2]);
                spec.element(&[m.min(n + 1), (m + 1).min(n), k])
            }
            ClosureOp::G122 => {
                let (m, n, k) = (raw[0], raw[1], raw[2]);
                spec.element(&[m.min(n / 2 + 1), (2 * m + 1).min(n), k])
            }
            ClosureOp::FreeClamp { .. } => {
                let c: Coords = raw.iter().map(|&x| x.min(1)).collect();
                spec.element(&c)
            }
        }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.spec() != self.domain() {
            return Err(Error::SpecMismatch {
                left: x.spec(),
                right: self.domain(),
            });
        }
        self.apply_raw(x.coords())
    }

    pub fn is_fixed(&self, x: &Element) -> Result<bool> {
        Ok(self.apply(x)? == *x)
    }
}

impl fmt::Display for ClosureOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureOp::ComposedT { source, via } => {
                write!(f, "T[{via}->{source}]∘T[{source}->{via}]")
            }
            ClosureOp::F112 => write!(f, "f_112"),
            ClosureOp::G122 => write!(f, "g_122"),
            ClosureOp::H222 => write!(f, "h_222"),
            ClosureOp::FreeClamp { dim } => write!(f, "free_clamp[{dim}]"),
        }
    }
}

/// Outcome of [`verify_closure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub op: ClosureOp,
    pub elements_checked: usize,
    pub counterexample: Option<String>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhaustively checks the downward-closure hypotheses on every normal form
/// with all coordinates `<= bound`: well-defined on representatives,
/// order-preserving, below the identity, idempotent, and `op(x) = 0` only
/// for `x = 0`.
pub fn verify_closure(op: ClosureOp, bound: u64) -> Result<ClosureReport> {
    let spec = op.domain();
    let xs = spec.normal_forms_in_box(&vec![bound; spec.arity()])?;
    let images = xs.iter().map(|x| op.apply(x)).collect::<Result<Vec<_>>>()?;
    let fail = |msg: String| ClosureReport {
        op,
        elements_checked: xs.len(),
        counterexample: Some(msg),
    };
    for (x, fx) in xs.iter().zip(&images) {
        for rep in x.representations() {
            if op.apply_raw(&rep)? != *fx {
                return Ok(fail(format!(
                    "not well-defined at representative {rep:?} of {x}"
                )));
            }
        }
        if !fx.leq(x)? {
            return Ok(fail(format!("op({x}) = {fx} is not below {x}")));
        }
        if op.apply(fx)? != *fx {
            return Ok(fail(format!("not idempotent at {x}")));
        }
        if fx.is_zero() != x.is_zero() {
            return Ok(fail(format!("preimage of 0 contains {x}")));
        }
    }
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            if x.leq(y)? && !images[i].leq(&images[j])? {
                return Ok(fail(format!("not order-preserving on {x} <= {y}")));
            }
        }
    }
    Ok(ClosureReport {
        op,
        elements_checked: xs.len(),
        counterexample: None,
    })
}

/// Homotopy type label attached to a prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum HomotopyType {
    /// Contractible.
    Point,
    /// `S^dim`; `dim = -1` is the empty space.
    Sphere { dim: i64 },
    /// A wedge of `count` copies of `S^dim`.
    Wedge { dim: i64, count: u64 },
}

impl HomotopyType {
    /// Local Betti numbers of a Frobenius complex of this type: `S^d`
    /// contributes to `β_{d+2}`.
    pub fn local_betti(&self) -> LocalBettiVector {
        match *self {
            HomotopyType::Point => LocalBettiVector::new(),
            HomotopyType::Sphere { dim } => {
                LocalBettiVector::from_pairs(&[((dim + 2) as usize, 1)])
            }
            HomotopyType::Wedge { dim, count } => {
                LocalBettiVector::from_pairs(&[((dim + 2) as usize, count)])
            }
        }
    }
}

impl fmt::Display for HomotopyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyType::Point => write!(f, "point"),
            HomotopyType::Sphere { dim } => write!(f, "S^{dim}"),
            HomotopyType::Wedge { dim, count } => write!(f, "wedge of {count} x S^{dim}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub homotopy: HomotopyType,
    pub betti: LocalBettiVector,
}

/// `N^d`: the clamp to `{0,1}^d` retracts onto a Boolean lattice, whose
/// proper part is the boundary of a simplex.
fn free_type(coords: &[u64]) -> HomotopyType {
    if coords.iter().any(|&x| x >= 2) {
        HomotopyType::Point
    } else {
        let ones = coords.iter().filter(|&&x| x == 1).count() as i64;
        HomotopyType::Sphere { dim: ones - 2 }
    }
}

fn two_gen_type(x: &Element) -> Result<HomotopyType> {
    let MonoidSpec::TwoGen { p, q } = x.spec() else {
        unreachable!("caller checks the presentation")
    };
    if p == 1 || q == 1 {
        let n = NumericalIso::new(p, q)?.forward(x)?.coords()[0];
        return Ok(free_type(&[n]));
    }
    let base = MonoidSpec::TwoGen { p: 2, q: 2 };
    let image = transition_map(x, base)?;
    if transition_map(&image, x.spec())? != *x {
        return Ok(HomotopyType::Point);
    }
    let degree: u64 = image.coords().iter().sum();
    Ok(HomotopyType::Sphere {
        dim: degree as i64 - 2,
    })
}

fn base_table_type(mu: &Element) -> HomotopyType {
    let MonoidSpec::ThreeGen { p, q, r: 2 } = mu.spec() else {
        unreachable!("base presentations have r = 2")
    };
    let [m, n, k] = [mu.coords()[0], mu.coords()[1], mu.coords()[2]];
    match (p, q) {
        (1, 1) => match (m, n) {
            (0, 0) if k == 1 => HomotopyType::Sphere { dim: -1 },
            (0, 0) => HomotopyType::Wedge {
                dim: k as i64 - 2,
                count: 2,
            },
            (1, 0) | (0, 1) => HomotopyType::Sphere { dim: k as i64 - 1 },
            _ => HomotopyType::Point,
        },
        _ => {
            if m <= 1 && n <= 1 {
                HomotopyType::Sphere {
                    dim: (m + n + k) as i64 - 2,
                }
            } else {
                HomotopyType::Point
            }
        }
    }
}

fn three_gen_type(x: &Element) -> Result<HomotopyType> {
    let MonoidSpec::ThreeGen { p, q, r } = x.spec() else {
        unreachable!("caller checks the presentation")
    };
    let [m, n, k] = [x.coords()[0], x.coords()[1], x.coords()[2]];
    if r == 1 {
        // c = p a + q b: the monoid is free on a, b.
        return Ok(free_type(&[m + k * p, n + k * q]));
    }
    if p > q {
        let swapped = MonoidSpec::three(q, p, r)?.element(&[n, m, k])?;
        return three_gen_type(&swapped);
    }
    let base = MonoidSpec::three(p.min(2), q.min(2), 2)?;
    let image = transition_map(x, base)?;
    if transition_map(&image, x.spec())? != *x {
        return Ok(HomotopyType::Point);
    }
    Ok(base_table_type(&image))
}

/// Predicted homotopy type of `F(λ)` and the local Betti numbers it implies.
pub fn predict(lambda: &Element) -> Result<Prediction> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    let homotopy = match lambda.spec() {
        MonoidSpec::Free { .. } => free_type(lambda.coords()),
        MonoidSpec::TwoGen { .. } => two_gen_type(lambda)?,
        MonoidSpec::ThreeGen { .. } => three_gen_type(lambda)?,
        MonoidSpec::NumericalSemigroup { p, q } => {
            let iso = NumericalIso::new(p, q)?;
            two_gen_type(&iso.inverse(lambda)?)?
        }
    };
    Ok(Prediction {
        homotopy,
        betti: homotopy.local_betti(),
    })
}

pub fn predicted_betti(lambda: &Element) -> Result<LocalBettiVector> {
    Ok(predict(lambda)?.betti)
}
