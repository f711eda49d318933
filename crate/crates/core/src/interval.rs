//! Intervals of the divisibility order as explicit finite posets.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{for_each_tuple_below, Element, MonoidSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endpoint {
    pub element: Element,
    pub closed: bool,
}

/// A finite induced subposet of a monoid, with the strict order tabulated.
#[derive(Clone, Debug)]
pub struct IntervalPoset {
    spec: MonoidSpec,
    elements: Vec<Element>,
    // above[i] holds j iff elements[i] < elements[j]
    above: Vec<FixedBitSet>,
    lower: Endpoint,
    upper: Endpoint,
}

#[derive(Serialize)]
struct IntervalJson<'a> {
    elements: Vec<&'a [u64]>,
    lt: Vec<[usize; 2]>,
}

/// Normal forms of every element lying below some representation of
/// `lambda` (including 0 and `lambda` itself).
fn down_set(lambda: &Element) -> BTreeSet<Element> {
    let spec = lambda.spec();
    let mut out = BTreeSet::new();
    match spec {
        MonoidSpec::NumericalSemigroup { .. } => {
            for n in 0..=lambda.coords()[0] {
                if let Ok(x) = spec.element(&[n]) {
                    out.insert(x);
                }
            }
        }
        _ => {
            for rep in lambda.representations() {
                for_each_tuple_below(&rep, |t| {
                    out.insert(spec.element(t).expect("tuple has the right arity"));
                });
            }
        }
    }
    out
}

impl IntervalPoset {
    fn build(
        spec: MonoidSpec,
        elements: Vec<Element>,
        lower: Endpoint,
        upper: Endpoint,
    ) -> IntervalPoset {
        let n = elements.len();
        let above = elements
            .iter()
            .map(|x| {
                let mut row = FixedBitSet::with_capacity(n);
                for (j, y) in elements.iter().enumerate() {
                    if x != y && x.divides(y) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        IntervalPoset {
            spec,
            elements,
            above,
            lower,
            upper,
        }
    }

    /// The open interval `(0, lambda)`.
    pub fn open(lambda: &Element) -> Result<IntervalPoset> {
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        let spec = lambda.spec();
        let elements = down_set(lambda)
            .into_iter()
            .filter(|mu| !mu.is_zero() && mu != lambda && mu.divides(lambda))
            .collect();
        Ok(Self::build(
            spec,
            elements,
            Endpoint {
                element: spec.zero(),
                closed: false,
            },
            Endpoint {
                element: lambda.clone(),
                closed: false,
            },
        ))
    }

    /// The half-open interval `[mu, lambda)`.
    pub fn half_open(mu: &Element, lambda: &Element) -> Result<IntervalPoset> {
        if !mu.lt(lambda)? {
            return Err(Error::EmptyRange);
        }
        let spec = lambda.spec();
        let elements = down_set(lambda)
            .into_iter()
            .filter(|nu| nu != lambda && mu.divides(nu) && nu.divides(lambda))
            .collect();
        Ok(Self::build(
            spec,
            elements,
            Endpoint {
                element: mu.clone(),
                closed: true,
            },
            Endpoint {
                element: lambda.clone(),
                closed: false,
            },
        ))
    }

    pub fn spec(&self) -> MonoidSpec {
        self.spec
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn lower(&self) -> &Endpoint {
        &self.lower
    }

    pub fn upper(&self) -> &Endpoint {
        &self.upper
    }

    /// Whether `elements[i] < elements[j]`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    /// Indices strictly above `i`.
    pub fn above(&self, i: usize) -> &FixedBitSet {
        &self.above[i]
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    /// All strict relations as index pairs `(i, j)` with `elements[i] < elements[j]`.
    pub fn relations(&self) -> Vec<[usize; 2]> {
        self.above
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.ones().map(move |j| [i, j]))
            .collect()
    }

    /// Induced subposet on the elements selected by `keep`.
    pub fn restrict_to(&self, mut keep: impl FnMut(&Element) -> bool) -> IntervalPoset {
        let kept: Vec<usize> = (0..self.len())
            .filter(|&i| keep(&self.elements[i]))
            .collect();
        self.restrict_indices(&kept)
    }

    fn restrict_indices(&self, kept: &[usize]) -> IntervalPoset {
        let n = kept.len();
        let above = kept
            .iter()
            .map(|&i| {
                let mut row = FixedBitSet::with_capacity(n);
                for (new_j, &j) in kept.iter().enumerate() {
                    if self.above[i].contains(j) {
                        row.insert(new_j);
                    }
                }
                row
            })
            .collect();
        IntervalPoset {
            spec: self.spec,
            elements: kept.iter().map(|&i| self.elements[i].clone()).collect(),
            above,
            lower: self.lower.clone(),
            upper: self.upper.clone(),
        }
    }

    /// Repeatedly deletes beat points: elements whose strict upper set has
    /// a minimum or whose strict lower set has a maximum. Each deletion is a
    /// strong deformation retraction of the order complex, so the result has
    /// the homotopy type (and homology) of the original poset.
    ///
    /// Candidates are scanned in index order, so the result is deterministic.
    pub fn core(&self) -> IntervalPoset {
        let n = self.len();
        let mut below: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in self.above.iter().enumerate() {
            for j in row.ones() {
                below[j].insert(i);
            }
        }
        let mut alive = FixedBitSet::with_capacity(n);
        alive.insert_range(..);
        let has_extremum = |set: &FixedBitSet, cmp: &[FixedBitSet]| -> bool {
            // y is the minimum of `set` iff set \ {y} lies above y (and dually)
            set.ones().any(|y| {
                let mut rest = set.clone();
                rest.set(y, false);
                rest.is_subset(&cmp[y])
            })
        };
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                if !alive.contains(x) {
                    continue;
                }
                let mut up = self.above[x].clone();
                up.intersect_with(&alive);
                let mut down = below[x].clone();
                down.intersect_with(&alive);
                let beat = (!up.is_clear() && has_extremum(&up, &self.above))
                    || (!down.is_clear() && has_extremum(&down, &below));
                if beat {
                    alive.set(x, false);
                    changed = true;
                }
            }
        }
        let kept: Vec<usize> = alive.ones().collect();
        self.restrict_indices(&kept)
    }

    /// `{ "elements": [[..], ..], "lt": [[i, j], ..] }`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(IntervalJson {
            elements: self.elements.iter().map(|e| e.coords()).collect(),
            lt: self.relations(),
        })
        .expect("interval serializes")
    }
}

pub fn open_interval(lambda: &Element) -> Result<IntervalPoset> {
    IntervalPoset::open(lambda)
}

pub fn half_open_interval(mu: &Element, lambda: &Element) -> Result<IntervalPoset> {
    IntervalPoset::half_open(mu, lambda)
}
