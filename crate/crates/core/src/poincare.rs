//! Truncated multigraded Poincaré series `Σ β_i(λ) t^i z^λ`.
//!
//! A series only makes claims inside its truncation region: `i <= i_max`
//! and normal-form coordinates bounded by `bound`. Comparisons are made on
//! the intersection of two regions.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{local_betti_with, FieldSpec, HomologyOptions, LocalBettiVector};
use crate::monoid::{Coords, Element, MonoidSpec};
use crate::transition::{predicted_betti, tau, transition_map};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultigradedSeries {
    spec: MonoidSpec,
    i_max: usize,
    bound: Coords,
    terms: BTreeMap<(usize, Element), u64>,
}

/// Where the local Betti numbers of a computed series come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BettiMode {
    Homology(FieldSpec),
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub i: usize,
    pub lambda: Vec<u64>,
    pub left: u64,
    pub right: u64,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t^{} z^{:?}: {} vs {}",
            self.i, self.lambda, self.left, self.right
        )
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    i: usize,
    lambda: &'a [u64],
    coeff: u64,
}

#[derive(Serialize)]
struct SeriesJson<'a> {
    spec: String,
    i_max: usize,
    terms: Vec<TermJson<'a>>,
}

impl MultigradedSeries {
    pub fn new(spec: MonoidSpec, i_max: usize, bound: &[u64]) -> Result<Self> {
        if bound.len() != spec.arity() {
            return Err(Error::Arity {
                expected: spec.arity(),
                got: bound.len(),
            });
        }
        Ok(MultigradedSeries {
            spec,
            i_max,
            bound: bound.iter().copied().collect(),
            terms: BTreeMap::new(),
        })
    }

    pub fn spec(&self) -> MonoidSpec {
        self.spec
    }

    pub fn i_max(&self) -> usize {
        self.i_max
    }

    pub fn bound(&self) -> &[u64] {
        &self.bound
    }

    pub fn in_region(&self, i: usize, lambda: &Element) -> bool {
        i <= self.i_max && lambda.coords().iter().zip(&self.bound).all(|(x, b)| x <= b)
    }

    /// Adds `coeff t^i z^λ`; terms outside the region are dropped.
    pub fn add(&mut self, i: usize, lambda: Element, coeff: u64) -> Result<()> {
        if lambda.spec() != self.spec {
            return Err(Error::SpecMismatch {
                left: lambda.spec(),
                right: self.spec,
            });
        }
        if coeff > 0 && self.in_region(i, &lambda) {
            *self.terms.entry((i, lambda)).or_insert(0) += coeff;
        }
        Ok(())
    }

    pub fn coeff(&self, i: usize, lambda: &Element) -> u64 {
        // BTreeMap lookup on a borrowed tuple key needs an owned probe.
        self.terms.get(&(i, lambda.clone())).copied().unwrap_or(0)
    }

    /// Terms in `(i, λ)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Element, u64)> + '_ {
        self.terms.iter().map(|((i, l), &c)| (*i, l, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = SeriesJson {
            spec: self.spec.to_string(),
            i_max: self.i_max,
            terms: self
                .terms()
                .map(|(i, l, coeff)| TermJson {
                    i,
                    lambda: l.coords(),
                    coeff,
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("series serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,lambda,coeff\n");
        for (i, l, c) in self.terms() {
            let lam: Vec<String> = l.coords().iter().map(u64::to_string).collect();
            s.push_str(&format!("{i},{},{c}\n", lam.join(" ")));
        }
        s
    }
}

impl fmt::Display for MultigradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(i, l, c)| {
                let lead = if c == 1 {
                    String::new()
                } else {
                    format!("{c} ")
                };
                format!("{lead}t^{i} z^{l}")
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The region used when none is given: it contains every exponent of the
/// closed form with `i <= i_max`, plus one unit of margin.
pub fn default_box(spec: MonoidSpec, i_max: usize) -> Vec<u64> {
    let half = i_max.div_ceil(2) as u64;
    match spec {
        MonoidSpec::ThreeGen { r, .. } => vec![2, 2, r * half + 2],
        MonoidSpec::TwoGen { p, q } => vec![p + 1, q * (half + 1) + 1],
        MonoidSpec::Free { dim } => vec![2; dim],
        MonoidSpec::NumericalSemigroup { p, q } => vec![(p * q) * (half + 1)],
    }
}

/// `Σ β_i(λ) t^i z^λ` over all normal forms `λ` in `bound`, `i <= i_max`.
pub fn series_computed(
    spec: MonoidSpec,
    i_max: usize,
    bound: &[u64],
    mode: BettiMode,
) -> Result<MultigradedSeries> {
    let mut series = MultigradedSeries::new(spec, i_max, bound)?;
    let lambdas = spec.normal_forms_in_box(bound)?;
    let rows: Vec<(Element, LocalBettiVector)> = lambdas
        .into_par_iter()
        .map(|lam| {
            let b = match mode {
                BettiMode::Homology(field) => {
                    local_betti_with(&lam, &HomologyOptions::with_field(field), Some(i_max))?
                }
                BettiMode::Oracle if lam.is_zero() => LocalBettiVector::identity(),
                BettiMode::Oracle => predicted_betti(&lam)?.truncated(i_max),
            };
            Ok((lam, b))
        })
        .collect::<Result<_>>()?;
    for (lam, b) in rows {
        for (i, c) in b.iter() {
            series.add(i, lam.clone(), c)?;
        }
    }
    Ok(series)
}

/// Expands `(1 + t z^a)(1 + t z^b)(1 + t z^c) / (1 - t^2 z^{rc})` for
/// `r >= 2` and `(1 + t z^a)(1 + t z^b)` for `r = 1`, normalizing every
/// exponent and summing coefficients that land on the same normal form.
pub fn series_closed_form(
    spec: MonoidSpec,
    i_max: usize,
    bound: &[u64],
) -> Result<MultigradedSeries> {
    let MonoidSpec::ThreeGen { r, .. } = spec else {
        return Err(Error::KindMismatch {
            source_spec: spec,
            target_spec: spec,
        });
    };
    let mut series = MultigradedSeries::new(spec, i_max, bound)?;
    for ea in 0..=1u64 {
        for eb in 0..=1u64 {
            if r == 1 {
                series.add((ea + eb) as usize, spec.element(&[ea, eb, 0])?, 1)?;
                continue;
            }
            for ec in 0..=1u64 {
                let base = (ea + eb + ec) as usize;
                let mut l = 0u64;
                while base + 2 * l as usize <= i_max {
                    series.add(
                        base + 2 * l as usize,
                        spec.element(&[ea, eb, ec + r * l])?,
                        1,
                    )?;
                    l += 1;
                }
            }
        }
    }
    Ok(series)
}

/// Result of pushing a series forward along a transition map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushforward {
    pub series: MultigradedSeries,
    /// Distinct source terms that landed on an existing target term.
    pub collisions: Vec<(usize, Element)>,
}

fn tau_corner(source: MonoidSpec, target: MonoidSpec, bound: &[u64]) -> Result<Vec<u64>> {
    let (MonoidSpec::ThreeGen { p, q, r }, MonoidSpec::ThreeGen { p: s, q: t, r: u }) =
        (source, target)
    else {
        return Err(Error::KindMismatch {
            source_spec: source,
            target_spec: target,
        });
    };
    Ok(bound
        .iter()
        .zip([(p, s), (q, t), (r, u)])
        .map(|(&x, (a, b))| tau(a, b, x))
        .collect())
}

/// Replaces each key `(i, μ)` by `(i, T(μ))`. The region becomes the image
/// of the source box corner under coordinatewise `τ`.
pub fn pushforward(s: &MultigradedSeries, target: MonoidSpec) -> Result<Pushforward> {
    let bound = tau_corner(s.spec, target, &s.bound)?;
    let mut series = MultigradedSeries::new(target, s.i_max, &bound)?;
    let mut collisions = Vec::new();
    for (i, mu, c) in s.terms() {
        let image = transition_map(mu, target)?;
        if series.coeff(i, &image) > 0 {
            collisions.push((i, image.clone()));
        }
        series.add(i, image, c)?;
    }
    Ok(Pushforward { series, collisions })
}

/// The smallest source box whose `τ`-image dominates `bound` coordinatewise.
pub fn preimage_box(source: MonoidSpec, target: MonoidSpec, bound: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(bound.len());
    for (axis, &b) in bound.iter().enumerate() {
        let mut x = 0u64;
        loop {
            let mut probe = vec![0; bound.len()];
            probe[axis] = x;
            if tau_corner(source, target, &probe)?[axis] >= b {
                break;
            }
            x += 1;
        }
        out.push(x);
    }
    Ok(out)
}

/// The presentation a three-generator series is pushed forward from.
pub fn base_presentation(spec: MonoidSpec) -> Result<MonoidSpec> {
    match spec {
        MonoidSpec::ThreeGen { p, q, r } if r >= 2 => MonoidSpec::three(p.min(2), q.min(2), 2),
        _ => Err(Error::KindMismatch {
            source_spec: spec,
            target_spec: spec,
        }),
    }
}

/// Keys on which `s1` and `s2` differ, inside both truncation regions.
pub fn series_diff(s1: &MultigradedSeries, s2: &MultigradedSeries) -> Result<Vec<Discrepancy>> {
    if s1.spec != s2.spec {
        return Err(Error::SpecMismatch {
            left: s1.spec,
            right: s2.spec,
        });
    }
    let mut keys: Vec<&(usize, Element)> = s1.terms.keys().chain(s2.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    Ok(keys
        .into_iter()
        .filter(|(i, l)| s1.in_region(*i, l) && s2.in_region(*i, l))
        .filter_map(|(i, l)| {
            let (left, right) = (s1.coeff(*i, l), s2.coeff(*i, l));
            (left != right).then(|| Discrepancy {
                i: *i,
                lambda: l.coords().to_vec(),
                left,
                right,
            })
        })
        .collect())
}
