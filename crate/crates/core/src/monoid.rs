//! Presentations, normal forms and the divisibility order of the monoids
//! handled by this crate.
//!
//! Four presentations are supported:
//!
//! * `Free { dim }`: the free commutative monoid `N^dim`;
//! * `TwoGen { p, q }`: `<a, b | p a = q b>`;
//! * `ThreeGen { p, q, r }`: `<a, b, c | p a + q b = r c>`;
//! * `NumericalSemigroup { p, q }`: the submonoid `N p + N q` of `N`, with
//!   `gcd(p, q) = 1`.
//!
//! Elements of the quotient monoids are stored in normal form. For
//! `TwoGen` the `a`-coordinate is pushed below `p` by rewriting `p a -> q b`.
//! For `ThreeGen` the rewrite `p a + q b -> r c` is applied until either
//! `m < p` or `n < q`. Both rewritings terminate and are confluent since
//! there is a single relation.
//!
//! Divisibility (`x <= y` iff `y = x + v` for some `v`) is decided by
//! comparing the normal form of `x` against the finite set of coordinate
//! tuples representing `y`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Coords = SmallVec<[u64; 3]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MonoidSpec {
    Free { dim: usize },
    TwoGen { p: u64, q: u64 },
    ThreeGen { p: u64, q: u64, r: u64 },
    NumericalSemigroup { p: u64, q: u64 },
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidSpec(format!("{name} must be positive")));
    }
    Ok(())
}

impl MonoidSpec {
    pub fn free(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpec("dimension must be positive".into()));
        }
        Ok(MonoidSpec::Free { dim })
    }

    pub fn two(p: u64, q: u64) -> Result<Self> {
        positive("p", p)?;
        positive("q", q)?;
        Ok(MonoidSpec::TwoGen { p, q })
    }

    pub fn three(p: u64, q: u64, r: u64) -> Result<Self> {
        positive("p", p)?;
        positive("q", q)?;
        positive("r", r)?;
        Ok(MonoidSpec::ThreeGen { p, q, r })
    }

    pub fn numerical(p: u64, q: u64) -> Result<Self> {
        positive("p", p)?;
        positive("q", q)?;
        if gcd(p, q) != 1 {
            return Err(Error::NotCoprime(p, q));
        }
        Ok(MonoidSpec::NumericalSemigroup { p, q })
    }

    /// Number of coordinates of an element.
    pub fn arity(&self) -> usize {
        match *self {
            MonoidSpec::Free { dim } => dim,
            MonoidSpec::TwoGen { .. } => 2,
            MonoidSpec::ThreeGen { .. } => 3,
            MonoidSpec::NumericalSemigroup { .. } => 1,
        }
    }

    pub fn zero(&self) -> Element {
        Element {
            spec: *self,
            coords: SmallVec::from_elem(0, self.arity()),
        }
    }

    /// Normalizes `raw` into an element of this monoid.
    pub fn element(&self, raw: &[u64]) -> Result<Element> {
        normalize(*self, raw)
    }

    /// The distinguished generators: unit vectors for the presented monoids,
    /// `p` and `q` for a numerical semigroup.
    pub fn generators(&self) -> Vec<Element> {
        match *self {
            MonoidSpec::NumericalSemigroup { p, q } => {
                let mut gens = vec![
                    Element::raw(*self, SmallVec::from_slice(&[p.min(q)])),
                    Element::raw(*self, SmallVec::from_slice(&[p.max(q)])),
                ];
                gens.dedup();
                gens
            }
            _ => (0..self.arity())
                .map(|i| {
                    let mut coords: Coords = SmallVec::from_elem(0, self.arity());
                    coords[i] = 1;
                    normalize(*self, &coords).expect("unit vectors are valid")
                })
                .collect(),
        }
    }

    /// Whether `coords` is already in normal form.
    pub fn is_normal(&self, coords: &[u64]) -> bool {
        if coords.len() != self.arity() {
            return false;
        }
        match *self {
            MonoidSpec::Free { .. } => true,
            MonoidSpec::TwoGen { p, .. } => coords[0] < p,
            MonoidSpec::ThreeGen { p, q, .. } => coords[0] < p || coords[1] < q,
            MonoidSpec::NumericalSemigroup { p, q } => in_numerical_semigroup(p, q, coords[0]),
        }
    }

    /// All normal forms whose coordinates are bounded componentwise by
    /// `bound`, in lexicographic order.
    pub fn normal_forms_in_box(&self, bound: &[u64]) -> Result<Vec<Element>> {
        if bound.len() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                got: bound.len(),
            });
        }
        let mut out = Vec::new();
        for_each_tuple_below(bound, |t| {
            if self.is_normal(t) {
                out.push(Element::raw(*self, SmallVec::from_slice(t)));
            }
        });
        Ok(out)
    }
}

impl fmt::Display for MonoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MonoidSpec::Free { dim } => write!(f, "free:{dim}"),
            MonoidSpec::TwoGen { p, q } => write!(f, "two:{p},{q}"),
            MonoidSpec::ThreeGen { p, q, r } => write!(f, "three:{p},{q},{r}"),
            MonoidSpec::NumericalSemigroup { p, q } => write!(f, "numsg:{p},{q}"),
        }
    }
}

impl FromStr for MonoidSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("monoid spec `{s}` lacks a `kind:` prefix")))?;
        let nums = parse_coords(args)?;
        let want = |n: usize| -> Result<()> {
            if nums.len() != n {
                return Err(Error::Parse(format!(
                    "`{kind}` takes {n} parameter(s), got {}",
                    nums.len()
                )));
            }
            Ok(())
        };
        match kind.trim() {
            "free" => {
                want(1)?;
                MonoidSpec::free(nums[0] as usize)
            }
            "two" => {
                want(2)?;
                MonoidSpec::two(nums[0], nums[1])
            }
            "three" => {
                want(3)?;
                MonoidSpec::three(nums[0], nums[1], nums[2])
            }
            "numsg" => {
                want(2)?;
                MonoidSpec::numerical(nums[0], nums[1])
            }
            other => Err(Error::Parse(format!("unknown monoid kind `{other}`"))),
        }
    }
}

/// Parses a comma-separated list of nonnegative integers.
pub fn parse_coords(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("`{t}` is not a nonnegative integer")))
        })
        .collect()
}

/// Calls `f` on every tuple `t` with `0 <= t <= bound` componentwise, in
/// lexicographic order.
pub(crate) fn for_each_tuple_below(bound: &[u64], mut f: impl FnMut(&[u64])) {
    let mut t = vec![0u64; bound.len()];
    loop {
        f(&t);
        let mut i = bound.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if t[i] < bound[i] {
                t[i] += 1;
                break;
            }
            t[i] = 0;
        }
    }
}

pub(crate) fn in_numerical_semigroup(p: u64, q: u64, n: u64) -> bool {
    (0..=n / p).any(|m| (n - m * p).is_multiple_of(q))
}

/// An element of a monoid, held in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    spec: MonoidSpec,
    coords: Coords,
}

/// Rewrites `raw` to its normal form in `spec`.
pub fn normalize(spec: MonoidSpec, raw: &[u64]) -> Result<Element> {
    if raw.len() != spec.arity() {
        return Err(Error::Arity {
            expected: spec.arity(),
            got: raw.len(),
        });
    }
    let mut c: Coords = SmallVec::from_slice(raw);
    match spec {
        MonoidSpec::Free { .. } => {}
        MonoidSpec::TwoGen { p, q } => {
            let s = c[0] / p;
            c[0] -= s * p;
            c[1] = s
                .checked_mul(q)
                .and_then(|d| c[1].checked_add(d))
                .ok_or(Error::Overflow)?;
        }
        MonoidSpec::ThreeGen { p, q, r } => {
            let s = (c[0] / p).min(c[1] / q);
            c[0] -= s * p;
            c[1] -= s * q;
            c[2] = s
                .checked_mul(r)
                .and_then(|d| c[2].checked_add(d))
                .ok_or(Error::Overflow)?;
        }
        MonoidSpec::NumericalSemigroup { p, q } => {
            if !in_numerical_semigroup(p, q, c[0]) {
                return Err(Error::NotInSemigroup(c[0]));
            }
        }
    }
    Ok(Element { spec, coords: c })
}

impl Element {
    pub(crate) fn raw(spec: MonoidSpec, coords: Coords) -> Self {
        debug_assert!(spec.is_normal(&coords));
        Element { spec, coords }
    }

    pub fn spec(&self) -> MonoidSpec {
        self.spec
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn same_spec(&self, other: &Element) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch {
                left: self.spec,
                right: other.spec,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_spec(other)?;
        let sum = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
            .collect::<Result<Coords>>()?;
        normalize(self.spec, &sum)
    }

    /// Every coordinate tuple that rewrites to this element.
    pub fn representations(&self) -> Vec<Coords> {
        let c = &self.coords;
        match self.spec {
            MonoidSpec::Free { .. } | MonoidSpec::NumericalSemigroup { .. } => vec![c.clone()],
            MonoidSpec::TwoGen { p, q } => (0..=c[1] / q)
                .map(|s| SmallVec::from_slice(&[c[0] + s * p, c[1] - s * q]))
                .collect(),
            MonoidSpec::ThreeGen { p, q, r } => (0..=c[2] / r)
                .map(|s| SmallVec::from_slice(&[c[0] + s * p, c[1] + s * q, c[2] - s * r]))
                .collect(),
        }
    }

    /// Divisibility: `self <= other` iff `other = self + v` for some `v`.
    pub fn leq(&self, other: &Element) -> Result<bool> {
        self.same_spec(other)?;
        Ok(self.divides(other))
    }

    pub fn lt(&self, other: &Element) -> Result<bool> {
        Ok(self != other && self.leq(other)?)
    }

    // Caller guarantees equal specs.
    pub(crate) fn divides(&self, other: &Element) -> bool {
        match self.spec {
            MonoidSpec::NumericalSemigroup { p, q } => {
                other.coords[0] >= self.coords[0]
                    && in_numerical_semigroup(p, q, other.coords[0] - self.coords[0])
            }
            _ => other
                .representations()
                .iter()
                .any(|rep| dominates(rep, &self.coords)),
        }
    }

    /// The unique `v` with `x + v = self`, if `x <= self`.
    pub fn subtract(&self, x: &Element) -> Option<Element> {
        if self.spec != x.spec {
            return None;
        }
        match self.spec {
            MonoidSpec::NumericalSemigroup { .. } => {
                let d = self.coords[0].checked_sub(x.coords[0])?;
                normalize(self.spec, &[d]).ok()
            }
            _ => self
                .representations()
                .into_iter()
                .find(|rep| dominates(rep, &x.coords))
                .map(|rep| {
                    let diff: Coords = rep.iter().zip(&x.coords).map(|(a, b)| a - b).collect();
                    normalize(self.spec, &diff).expect("difference has valid arity")
                }),
        }
    }
}

pub(crate) fn dominates(big: &[u64], small: &[u64]) -> bool {
    big.iter().zip(small).all(|(b, s)| b >= s)
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Result of identifying `N u + N v + N w` with some `ThreeGen` presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    /// `order[i]` is the index (0, 1, 2 for u, v, w) of the input generator
    /// sent to the i-th generator `a`, `b`, `c`.
    pub order: [usize; 3],
}

impl Recognition {
    pub fn spec(&self) -> MonoidSpec {
        MonoidSpec::ThreeGen {
            p: self.p,
            q: self.q,
            r: self.r,
        }
    }
}

fn det(x: [u64; 2], y: [u64; 2]) -> i128 {
    x[0] as i128 * y[1] as i128 - x[1] as i128 * y[0] as i128
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    gcd(a.unsigned_abs() as u64, b.unsigned_abs() as u64) as i128
}

/// Finds `(p, q, r)` such that the submonoid of `N^2` generated by three
/// pairwise independent vectors is isomorphic to `ThreeGen { p, q, r }`.
///
/// The primitive integer relation `m u + n v + k w = 0` is read off from
/// 2x2 determinants. It is normalized so exactly one coefficient is
/// negative, and the generators are permuted so that coefficient lands on
/// `c` while the two positive ones keep their input order.
pub fn recognize_submonoid(gens: [[u64; 2]; 3]) -> Result<Recognition> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if det(gens[i], gens[j]) == 0 {
            return Err(Error::LinearlyDependent(i, j));
        }
    }
    let [u, v, w] = gens;
    let mut rel = [det(v, w), det(w, u), det(u, v)];
    let g = gcd_i128(gcd_i128(rel[0], rel[1]), rel[2]);
    rel.iter_mut().for_each(|x| *x /= g);
    let negatives = rel.iter().filter(|&&x| x < 0).count();
    if negatives == 2 {
        rel.iter_mut().for_each(|x| *x = -*x);
    } else if negatives != 1 {
        return Err(Error::InvalidSpec(
            "generators do not span a pointed cone in N^2".into(),
        ));
    }
    let neg = rel
        .iter()
        .position(|&x| x < 0)
        .expect("one negative coefficient");
    let mut order = [0usize; 3];
    let mut slot = 0;
    for i in 0..3 {
        if i != neg {
            order[slot] = i;
            slot += 1;
        }
    }
    order[2] = neg;
    let p = rel[order[0]] as u64;
    let q = rel[order[1]] as u64;
    let r = (-rel[order[2]]) as u64;
    Ok(Recognition { p, q, r, order })
}

/// The isomorphism `TwoGen { p, q } -> N p + N q` sending `a -> q`, `b -> p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumericalIso {
    p: u64,
    q: u64,
}

impl NumericalIso {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        MonoidSpec::numerical(p, q)?;
        Ok(NumericalIso { p, q })
    }

    pub fn domain(&self) -> MonoidSpec {
        MonoidSpec::TwoGen {
            p: self.p,
            q: self.q,
        }
    }

    pub fn codomain(&self) -> MonoidSpec {
        MonoidSpec::NumericalSemigroup {
            p: self.p,
            q: self.q,
        }
    }

    pub fn forward(&self, x: &Element) -> Result<Element> {
        if x.spec != self.domain() {
            return Err(Error::SpecMismatch {
                left: x.spec,
                right: self.domain(),
            });
        }
        let (m, n) = (x.coords[0], x.coords[1]);
        let value = m
            .checked_mul(self.q)
            .zip(n.checked_mul(self.p))
            .and_then(|(s, t)| s.checked_add(t))
            .ok_or(Error::Overflow)?;
        normalize(self.codomain(), &[value])
    }

    pub fn inverse(&self, y: &Element) -> Result<Element> {
        if y.spec != self.codomain() {
            return Err(Error::SpecMismatch {
                left: y.spec,
                right: self.codomain(),
            });
        }
        let value = y.coords[0];
        // m q = value (mod p) with 0 <= m < p.
        let m = (0..self.p)
            .find(|&m| m * self.q <= value && (value - m * self.q).is_multiple_of(self.p))
            .ok_or(Error::NotInSemigroup(value))?;
        normalize(self.domain(), &[m, (value - m * self.q) / self.p])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, VecDeque};

    fn el(spec: MonoidSpec, c: &[u64]) -> Element {
        spec.element(c).unwrap()
    }

    /// Closure of `start` under the rewrite relation and its inverse,
    /// restricted to nonnegative tuples.
    fn orbit(spec: MonoidSpec, start: &[u64]) -> BTreeSet<Vec<u64>> {
        let step: Vec<i64> = match spec {
            MonoidSpec::TwoGen { p, q } => vec![-(p as i64), q as i64],
            MonoidSpec::ThreeGen { p, q, r } => vec![-(p as i64), -(q as i64), r as i64],
            _ => return BTreeSet::from([start.to_vec()]),
        };
        let mut seen = BTreeSet::from([start.to_vec()]);
        let mut queue = VecDeque::from([start.to_vec()]);
        while let Some(t) = queue.pop_front() {
            for sign in [1i64, -1] {
                let next: Option<Vec<u64>> = t
                    .iter()
                    .zip(&step)
                    .map(|(&x, &d)| u64::try_from(x as i64 + sign * d).ok())
                    .collect();
                if let Some(next) = next {
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        seen
    }

    #[test]
    fn normalize_examples() {
        let s = MonoidSpec::three(2, 3, 2).unwrap();
        assert_eq!(el(s, &[5, 4, 1]).coords(), &[3, 1, 3]);
        let t = MonoidSpec::two(2, 2).unwrap();
        assert_eq!(el(t, &[2, 0]).coords(), &[0, 2]);
        for spec in [
            s,
            t,
            MonoidSpec::free(4).unwrap(),
            MonoidSpec::numerical(3, 5).unwrap(),
        ] {
            assert!(spec.element(&vec![0; spec.arity()]).unwrap().is_zero());
        }
    }

    #[test]
    fn normalize_errors() {
        let t = MonoidSpec::two(2, 2).unwrap();
        assert_eq!(
            t.element(&[1, 2, 3]),
            Err(Error::Arity {
                expected: 2,
                got: 3
            })
        );
        let n = MonoidSpec::numerical(3, 5).unwrap();
        assert_eq!(n.element(&[7]), Err(Error::NotInSemigroup(7)));
        assert!(n.element(&[8]).is_ok());
    }

    #[test]
    fn spec_validation_and_parsing() {
        assert!(MonoidSpec::numerical(2, 4).is_err());
        assert!(MonoidSpec::three(0, 1, 1).is_err());
        assert!(MonoidSpec::free(0).is_err());
        for s in ["free:3", "two:2,3", "three:1,2,2", "numsg:3,5"] {
            let spec: MonoidSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        for bad in [
            "three:1,2",
            "two:a,b",
            "cyclic:3",
            "two",
            "numsg:2,4",
            "two:0,1",
        ] {
            assert!(bad.parse::<MonoidSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn normal_form_is_constant_on_orbits() {
        let specs = [
            MonoidSpec::two(2, 2).unwrap(),
            MonoidSpec::two(3, 5).unwrap(),
            MonoidSpec::three(2, 3, 2).unwrap(),
            MonoidSpec::three(1, 1, 2).unwrap(),
            MonoidSpec::three(2, 2, 3).unwrap(),
        ];
        for spec in specs {
            let bound = vec![if spec.arity() == 2 { 12 } else { 8 }; spec.arity()];
            for_each_tuple_below(&bound, |t| {
                let x = spec.element(t).unwrap();
                assert_eq!(spec.element(x.coords()).unwrap(), x, "idempotent");
                let orb = orbit(spec, t);
                for other in &orb {
                    assert_eq!(spec.element(other).unwrap(), x);
                }
                let reps: BTreeSet<Vec<u64>> =
                    x.representations().iter().map(|r| r.to_vec()).collect();
                assert_eq!(reps, orb, "representations of {x} in {spec}");
            });
        }
    }

    #[test]
    fn add_examples() {
        let t = MonoidSpec::two(2, 2).unwrap();
        let a = el(t, &[1, 0]);
        assert_eq!(a.add(&a).unwrap().coords(), &[0, 2]);
        assert_eq!(a.add(&t.zero()).unwrap(), a);
        let s = MonoidSpec::three(1, 1, 2).unwrap();
        let sum = el(s, &[1, 0, 0]).add(&el(s, &[0, 1, 0])).unwrap();
        assert_eq!(sum.coords(), &[0, 0, 2]);
        assert!(matches!(a.add(&sum), Err(Error::SpecMismatch { .. })));
    }

    #[test]
    fn representation_examples() {
        let s = MonoidSpec::three(1, 1, 2).unwrap();
        let reps: Vec<Vec<u64>> = el(s, &[0, 0, 2])
            .representations()
            .iter()
            .map(|r| r.to_vec())
            .collect();
        assert_eq!(reps, vec![vec![0, 0, 2], vec![1, 1, 0]]);
        let f = MonoidSpec::free(2).unwrap();
        assert_eq!(el(f, &[3, 4]).representations().len(), 1);
        let t = MonoidSpec::two(2, 2).unwrap();
        let reps: Vec<Vec<u64>> = el(t, &[1, 2])
            .representations()
            .iter()
            .map(|r| r.to_vec())
            .collect();
        assert_eq!(reps, vec![vec![1, 2], vec![3, 0]]);
    }

    #[test]
    fn leq_and_subtract_examples() {
        let t = MonoidSpec::two(2, 2).unwrap();
        let b = el(t, &[0, 1]);
        let two_a = el(t, &[2, 0]);
        assert!(b.leq(&two_a).unwrap());
        let s = MonoidSpec::three(1, 1, 2).unwrap();
        assert!(!el(s, &[1, 0, 0]).leq(&el(s, &[0, 0, 1])).unwrap());
        assert!(s.zero().leq(&el(s, &[0, 0, 1])).unwrap());

        let lam = el(t, &[1, 2]);
        assert_eq!(lam.subtract(&el(t, &[1, 0])).unwrap().coords(), &[0, 2]);
        assert_eq!(lam.subtract(&t.zero()).unwrap(), lam);
        let u = MonoidSpec::three(2, 3, 2).unwrap();
        let x = el(u, &[3, 1, 3]);
        assert_eq!(x.subtract(&el(u, &[0, 0, 1])).unwrap().coords(), &[3, 1, 2]);
        assert_eq!(el(s, &[0, 0, 1]).subtract(&el(s, &[1, 0, 0])), None);
    }

    #[test]
    fn monoid_laws_exhaustive() {
        for spec in [
            MonoidSpec::two(2, 3).unwrap(),
            MonoidSpec::three(1, 2, 2).unwrap(),
            MonoidSpec::three(2, 3, 4).unwrap(),
        ] {
            let bound = vec![if spec.arity() == 2 { 6 } else { 3 }; spec.arity()];
            let xs = spec.normal_forms_in_box(&bound).unwrap();
            for x in &xs {
                assert_eq!(x.add(&spec.zero()).unwrap(), *x);
                for y in &xs {
                    let xy = x.add(y).unwrap();
                    assert_eq!(xy, y.add(x).unwrap());
                    match xy.subtract(x) {
                        Some(v) => assert_eq!(v, *y, "cancellation"),
                        None => panic!("x <= x + y must hold"),
                    }
                    let le = x.leq(y).unwrap();
                    assert_eq!(le, y.subtract(x).is_some());
                    if let Some(v) = y.subtract(x) {
                        assert_eq!(x.add(&v).unwrap(), *y);
                    }
                    if le && y.leq(x).unwrap() {
                        assert_eq!(x, y, "antisymmetry");
                    }
                    for z in &xs {
                        assert_eq!(xy.add(z).unwrap(), x.add(&y.add(z).unwrap()).unwrap());
                        if le && y.leq(z).unwrap() {
                            assert!(x.leq(z).unwrap(), "transitivity");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn recognize_examples() {
        let r = recognize_submonoid([[2, 1], [1, 2], [1, 1]]).unwrap();
        assert_eq!((r.p, r.q, r.r, r.order), (1, 1, 3, [0, 1, 2]));
        let r = recognize_submonoid([[1, 0], [0, 1], [1, 1]]).unwrap();
        assert_eq!((r.p, r.q, r.r), (1, 1, 1));
        let r = recognize_submonoid([[3, 0], [0, 3], [1, 1]]).unwrap();
        assert_eq!((r.p, r.q, r.r), (1, 1, 3));
        // middle vector listed first
        let r = recognize_submonoid([[1, 1], [2, 1], [1, 2]]).unwrap();
        assert_eq!((r.p, r.q, r.r, r.order), (1, 1, 3, [1, 2, 0]));
        assert_eq!(
            recognize_submonoid([[1, 2], [2, 4], [1, 1]]),
            Err(Error::LinearlyDependent(0, 1))
        );
    }

    #[test]
    fn recognized_relation_holds() {
        let vs: Vec<[u64; 2]> = (0..5).flat_map(|x| (0..5).map(move |y| [x, y])).collect();
        for u in &vs {
            for v in &vs {
                for w in &vs {
                    let Ok(rec) = recognize_submonoid([*u, *v, *w]) else {
                        continue;
                    };
                    let g = [*u, *v, *w];
                    let (a, b, c) = (g[rec.order[0]], g[rec.order[1]], g[rec.order[2]]);
                    for i in 0..2 {
                        assert_eq!(rec.p * a[i] + rec.q * b[i], rec.r * c[i]);
                    }
                }
            }
        }
    }

    #[test]
    fn numerical_iso_examples() {
        let iso = NumericalIso::new(3, 5).unwrap();
        let t = iso.domain();
        assert_eq!(iso.forward(&el(t, &[1, 0])).unwrap().coords(), &[5]);
        assert_eq!(iso.forward(&el(t, &[0, 1])).unwrap().coords(), &[3]);
        assert_eq!(iso.forward(&t.zero()).unwrap().coords(), &[0]);
        assert_eq!(iso.forward(&el(t, &[2, 1])).unwrap().coords(), &[13]);
        assert_eq!(NumericalIso::new(4, 6), Err(Error::NotCoprime(4, 6)));
    }

    #[test]
    fn numerical_iso_is_order_isomorphism() {
        for (p, q) in [(2, 3), (3, 5), (1, 4)] {
            let iso = NumericalIso::new(p, q).unwrap();
            let xs = iso.domain().normal_forms_in_box(&[p - 1, 8]).unwrap();
            let mut images = BTreeSet::new();
            for x in &xs {
                let fx = iso.forward(x).unwrap();
                assert_eq!(iso.inverse(&fx).unwrap(), *x);
                assert!(images.insert(fx.clone()), "injective");
                for y in &xs {
                    let fy = iso.forward(y).unwrap();
                    assert_eq!(
                        iso.forward(&x.add(y).unwrap()).unwrap().coords()[0],
                        fx.coords()[0] + fy.coords()[0]
                    );
                    assert_eq!(x.leq(y).unwrap(), fx.leq(&fy).unwrap());
                }
            }
        }
    }
}
