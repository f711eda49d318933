//! Exact reduced simplicial homology over a field, and the local Betti
//! numbers of a monoid.
//!
//! Boundary matrices carry signed `±1` entries so the same matrices serve
//! every coefficient field. Ranks are computed by sparse column reduction
//! (lowest-one pivots) with clearing: a `d`-face that is a pivot row of the
//! reduced `∂_{d+1}` indexes a column of `∂_d` that reduces to zero, so it is
//! skipped.
//!
//! The augmentation `∂_0 : C_0 -> K` is included, which makes
//! `β̃_{-1} = 1` exactly for the empty complex.

mod field;

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

pub use field::FieldSpec;
use field::{FieldOps, PrimeField, Rationals};

use crate::complex::{order_complex, order_complex_skeleton, SimplicialComplex};
use crate::error::Result;
use crate::interval::IntervalPoset;
use crate::monoid::Element;

/// Sparse boundary map `∂_dim : C_dim -> C_{dim-1}`; `dim == 0` is the
/// augmentation into a single row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub dim: usize,
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, sign)` triplets, sorted by column then row.
    pub entries: Vec<(u32, u32, i8)>,
}

impl BoundaryMatrix {
    fn columns(&self) -> Vec<Vec<(u32, i8)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for &(r, c, s) in &self.entries {
            cols[c as usize].push((r, s));
        }
        cols
    }

    /// Dense integer product `self * rhs`, for checking `∂∂ = 0`.
    pub fn compose(&self, rhs: &BoundaryMatrix) -> Vec<Vec<i64>> {
        assert_eq!(self.cols, rhs.rows);
        let mut out = vec![vec![0i64; rhs.cols]; self.rows];
        let left = self.columns();
        for &(k, j, s) in &rhs.entries {
            for &(i, t) in &left[k as usize] {
                out[i as usize][j as usize] += (s as i64) * (t as i64);
            }
        }
        out
    }
}

/// `∂_0, ∂_1, ..., ∂_top` for `c`. Empty for the empty complex.
pub fn boundary_matrices(c: &SimplicialComplex) -> Vec<BoundaryMatrix> {
    boundary_matrices_through(c, c.dim().unwrap_or(0))
        .into_iter()
        .filter(|m| m.cols > 0)
        .collect()
}

fn boundary_matrices_through(c: &SimplicialComplex, top: usize) -> Vec<BoundaryMatrix> {
    let mut out = Vec::new();
    let mut buf = Vec::new();
    for d in 0..=top {
        let faces = c.faces(d);
        if d == 0 {
            out.push(BoundaryMatrix {
                dim: 0,
                rows: 1,
                cols: faces.len(),
                entries: (0..faces.len() as u32).map(|j| (0, j, 1)).collect(),
            });
            continue;
        }
        let mut entries = Vec::with_capacity(faces.len() * (d + 1));
        for (j, face) in faces.iter().enumerate() {
            let start = entries.len();
            for skip in 0..face.len() {
                buf.clear();
                buf.extend(
                    face.iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, v)| *v),
                );
                let row = c.index_of(&buf).expect("complex is closed under faces");
                let sign = if skip % 2 == 0 { 1 } else { -1 };
                entries.push((row as u32, j as u32, sign));
            }
            entries[start..].sort_unstable();
        }
        out.push(BoundaryMatrix {
            dim: d,
            rows: c.faces(d - 1).len(),
            cols: faces.len(),
            entries,
        });
    }
    out
}

/// Rank of a boundary matrix over `field`.
pub fn rank(m: &BoundaryMatrix, field: FieldSpec) -> usize {
    reduce(m, field, &FixedBitSet::with_capacity(m.cols)).0
}

// Returns (rank, pivot rows).
fn reduce(m: &BoundaryMatrix, field: FieldSpec, cleared: &FixedBitSet) -> (usize, FixedBitSet) {
    match field {
        FieldSpec::Gf2 => reduce_gf2(m, cleared),
        FieldSpec::Prime(p) => reduce_over(&PrimeField::new(p), m, cleared),
        FieldSpec::Rational => reduce_over(&Rationals, m, cleared),
    }
}

const NONE: u32 = u32::MAX;

fn reduce_gf2(m: &BoundaryMatrix, cleared: &FixedBitSet) -> (usize, FixedBitSet) {
    let mut owner = vec![NONE; m.rows];
    let mut store: Vec<Vec<u32>> = Vec::new();
    for (j, col) in m.columns().into_iter().enumerate() {
        if cleared.contains(j) {
            continue;
        }
        let mut col: Vec<u32> = col.into_iter().map(|(r, _)| r).collect();
        while let Some(&low) = col.last() {
            let o = owner[low as usize];
            if o == NONE {
                owner[low as usize] = store.len() as u32;
                store.push(col);
                break;
            }
            col = symmetric_difference(&col, &store[o as usize]);
        }
    }
    (store.len(), pivot_rows(&owner))
}

fn symmetric_difference(x: &[u32], y: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => {
                out.push(x[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(y[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    out
}

fn reduce_over<F: FieldOps>(
    f: &F,
    m: &BoundaryMatrix,
    cleared: &FixedBitSet,
) -> (usize, FixedBitSet) {
    let zero = f.sign(0);
    let mut owner = vec![NONE; m.rows];
    let mut store: Vec<Vec<(u32, F::Elem)>> = Vec::new();
    for (j, col) in m.columns().into_iter().enumerate() {
        if cleared.contains(j) {
            continue;
        }
        let mut col: Vec<(u32, F::Elem)> = col.into_iter().map(|(r, s)| (r, f.sign(s))).collect();
        while let Some((low, val)) = col.last() {
            let o = owner[*low as usize];
            if o == NONE {
                owner[*low as usize] = store.len() as u32;
                store.push(col);
                break;
            }
            let pivot = &store[o as usize];
            let factor = f.div(val, &pivot.last().expect("stored columns are nonzero").1);
            let mut next = Vec::with_capacity(col.len() + pivot.len());
            let (mut i, mut k) = (0, 0);
            while i < col.len() || k < pivot.len() {
                let take_col = k == pivot.len() || (i < col.len() && col[i].0 < pivot[k].0);
                let take_piv = i == col.len() || (k < pivot.len() && pivot[k].0 < col[i].0);
                let (row, v) = if take_col {
                    i += 1;
                    (col[i - 1].0, col[i - 1].1.clone())
                } else if take_piv {
                    k += 1;
                    (pivot[k - 1].0, f.sub_mul(&zero, &factor, &pivot[k - 1].1))
                } else {
                    i += 1;
                    k += 1;
                    (
                        col[i - 1].0,
                        f.sub_mul(&col[i - 1].1, &factor, &pivot[k - 1].1),
                    )
                };
                if !f.is_zero(&v) {
                    next.push((row, v));
                }
            }
            col = next;
        }
    }
    (store.len(), pivot_rows(&owner))
}

fn pivot_rows(owner: &[u32]) -> FixedBitSet {
    let mut rows = FixedBitSet::with_capacity(owner.len());
    for (r, &o) in owner.iter().enumerate() {
        if o != NONE {
            rows.insert(r);
        }
    }
    rows
}

/// Reduced Betti numbers `β̃_d`, `d >= -1`. Only nonzero entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiVector(BTreeMap<i64, u64>);

impl BettiVector {
    pub fn new() -> Self {
        BettiVector(BTreeMap::new())
    }

    pub fn from_pairs(pairs: &[(i64, u64)]) -> Self {
        let mut v = BettiVector::new();
        for &(d, b) in pairs {
            v.add(d, b);
        }
        v
    }

    pub fn add(&mut self, degree: i64, count: u64) {
        assert!(degree >= -1, "reduced homology starts in degree -1");
        if count > 0 {
            *self.0.entry(degree).or_insert(0) += count;
        }
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&d, &b)| (d, b))
    }

    /// Whether every reduced Betti number vanishes.
    pub fn is_acyclic(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ (-1)^d β̃_d`, with `β̃_{-1}` at sign `-1`.
    pub fn euler(&self) -> i64 {
        self.iter()
            .map(|(d, b)| {
                if d.rem_euclid(2) == 0 {
                    b as i64
                } else {
                    -(b as i64)
                }
            })
            .sum()
    }

    /// Entries with degree `<= max_degree`.
    pub fn truncated(&self, max_degree: i64) -> BettiVector {
        BettiVector(self.0.range(..=max_degree).map(|(&d, &b)| (d, b)).collect())
    }

    /// The Betti vector of the suspension: degrees shifted up by one.
    pub fn suspended(&self) -> BettiVector {
        BettiVector(self.iter().map(|(d, b)| (d + 1, b)).collect())
    }
}

impl Serialize for BettiVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(d, b)| (d.to_string(), b)))
    }
}

/// Local Betti numbers `β_i(λ)`, `i >= 0`. Only nonzero entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LocalBettiVector(BTreeMap<usize, u64>);

impl LocalBettiVector {
    pub fn new() -> Self {
        LocalBettiVector(BTreeMap::new())
    }

    pub fn from_pairs(pairs: &[(usize, u64)]) -> Self {
        LocalBettiVector(pairs.iter().copied().filter(|&(_, b)| b > 0).collect())
    }

    /// The vector of the identity element: `β_0 = 1`.
    pub fn identity() -> Self {
        Self::from_pairs(&[(0, 1)])
    }

    /// `β_i = β̃_{i-2}` of the Frobenius complex of a nonzero element.
    pub fn from_reduced(reduced: &BettiVector) -> Self {
        LocalBettiVector(reduced.iter().map(|(d, b)| ((d + 2) as usize, b)).collect())
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.0.iter().map(|(&i, &b)| (i, b))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn truncated(&self, i_max: usize) -> LocalBettiVector {
        LocalBettiVector(self.0.range(..=i_max).map(|(&i, &b)| (i, b)).collect())
    }
}

impl Serialize for LocalBettiVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(i, b)| (i.to_string(), b)))
    }
}

/// Full reduced Betti vector of `c`.
pub fn reduced_betti(c: &SimplicialComplex, field: FieldSpec) -> BettiVector {
    match c.dim() {
        None => BettiVector::from_pairs(&[(-1, 1)]),
        Some(top) => betti_from_ranks(c, field, top, top as i64),
    }
}

/// Reduced Betti numbers in degrees `<= max_degree`.
///
/// Only faces of dimension `<= max_degree + 1` are read, so `c` may be the
/// corresponding skeleton of a larger complex.
pub fn reduced_betti_through(
    c: &SimplicialComplex,
    field: FieldSpec,
    max_degree: i64,
) -> BettiVector {
    assert!(max_degree >= -1);
    match c.dim() {
        None => BettiVector::from_pairs(&[(-1, 1)]),
        Some(top) => {
            let top = top.min((max_degree + 1) as usize);
            betti_from_ranks(c, field, top, max_degree)
        }
    }
}

fn betti_from_ranks(
    c: &SimplicialComplex,
    field: FieldSpec,
    top: usize,
    max_degree: i64,
) -> BettiVector {
    let matrices = boundary_matrices_through(c, top);
    let mut ranks = vec![0usize; top + 2];
    let mut cleared = FixedBitSet::new();
    for m in matrices.iter().rev() {
        cleared.grow(m.cols);
        let (r, pivots) = reduce(m, field, &cleared);
        ranks[m.dim] = r;
        cleared = pivots;
    }
    let f = c.f_vector();
    let mut betti = BettiVector::new();
    betti.add(-1, 1 - ranks[0] as u64);
    for d in 0..=top.min(max_degree.max(0) as usize) {
        if d as i64 > max_degree {
            break;
        }
        betti.add(d as i64, (f[d] - ranks[d] - ranks[d + 1]) as u64);
    }
    betti
}

/// How Frobenius-complex homology is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyOptions {
    pub field: FieldSpec,
    /// Replace the interval by its beat-point core before building chains.
    pub core: bool,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions {
            field: FieldSpec::Gf2,
            core: true,
        }
    }
}

impl HomologyOptions {
    pub fn with_field(field: FieldSpec) -> Self {
        HomologyOptions {
            field,
            ..Default::default()
        }
    }
}

fn prepared_interval(lambda: &Element, opts: &HomologyOptions) -> Result<IntervalPoset> {
    let p = IntervalPoset::open(lambda)?;
    Ok(if opts.core { p.core() } else { p })
}

/// Reduced Betti vector of the Frobenius complex `F(λ)`.
pub fn frobenius_betti(lambda: &Element, opts: &HomologyOptions) -> Result<BettiVector> {
    let p = prepared_interval(lambda, opts)?;
    Ok(reduced_betti(&order_complex(&p), opts.field))
}

/// Reduced Betti numbers of `F(λ)` in degrees `<= max_degree`.
pub fn frobenius_betti_through(
    lambda: &Element,
    opts: &HomologyOptions,
    max_degree: i64,
) -> Result<BettiVector> {
    let p = prepared_interval(lambda, opts)?;
    let skeleton = order_complex_skeleton(&p, (max_degree + 1) as usize);
    Ok(reduced_betti_through(&skeleton, opts.field, max_degree))
}

/// Local Betti numbers of `λ` over `field`.
pub fn local_betti(lambda: &Element, field: FieldSpec) -> LocalBettiVector {
    local_betti_with(lambda, &HomologyOptions::with_field(field), None)
        .expect("nonzero lambda has an interval")
}

/// Local Betti numbers, optionally only for `i <= i_max`.
pub fn local_betti_with(
    lambda: &Element,
    opts: &HomologyOptions,
    i_max: Option<usize>,
) -> Result<LocalBettiVector> {
    if lambda.is_zero() {
        return Ok(LocalBettiVector::identity());
    }
    let reduced = match i_max {
        None => frobenius_betti(lambda, opts)?,
        Some(0) => return Ok(LocalBettiVector::new()),
        Some(i) => frobenius_betti_through(lambda, opts, i as i64 - 2)?,
    };
    Ok(LocalBettiVector::from_reduced(&reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::MonoidSpec;

    const FIELDS: [FieldSpec; 3] = [FieldSpec::Gf2, FieldSpec::Prime(3), FieldSpec::Rational];

    fn simplex_boundary(d: usize) -> SimplicialComplex {
        let facets: Vec<Vec<u32>> = (0..=d as u32)
            .map(|skip| (0..=d as u32).filter(|&v| v != skip).collect())
            .collect();
        SimplicialComplex::from_facets(d + 1, &facets)
    }

    #[test]
    fn edge_boundary() {
        let c = SimplicialComplex::from_facets(2, &[vec![0, 1]]);
        let ms = boundary_matrices(&c);
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[1].entries, vec![(0, 0, -1), (1, 0, 1)]);
        assert_eq!(reduced_betti(&c, FieldSpec::Rational), BettiVector::new());
    }

    #[test]
    fn empty_complex() {
        let c = SimplicialComplex::empty();
        assert!(boundary_matrices(&c).is_empty());
        for f in FIELDS {
            assert_eq!(reduced_betti(&c, f), BettiVector::from_pairs(&[(-1, 1)]));
        }
    }

    #[test]
    fn cycle_and_antichain() {
        let t = MonoidSpec::two(2, 2).unwrap();
        let p = IntervalPoset::open(&t.element(&[1, 2]).unwrap()).unwrap();
        let c = order_complex(&p);
        let ms = boundary_matrices(&c);
        for f in FIELDS {
            assert_eq!(rank(&ms[1], f), 3);
            assert_eq!(reduced_betti(&c, f), BettiVector::from_pairs(&[(1, 1)]));
        }
        let three = SimplicialComplex::from_facets(3, &[vec![0], vec![1], vec![2]]);
        assert_eq!(
            reduced_betti(&three, FieldSpec::Gf2),
            BettiVector::from_pairs(&[(0, 2)])
        );
    }

    #[test]
    fn sphere_boundaries() {
        for d in 1..=5 {
            let c = simplex_boundary(d);
            for f in FIELDS {
                assert_eq!(
                    reduced_betti(&c, f),
                    BettiVector::from_pairs(&[(d as i64 - 1, 1)])
                );
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        let s = MonoidSpec::three(2, 2, 2).unwrap();
        for lam in s.normal_forms_in_box(&[1, 1, 3]).unwrap().iter().skip(1) {
            let c = order_complex(&IntervalPoset::open(lam).unwrap());
            let ms = boundary_matrices(&c);
            for w in ms.windows(2) {
                let prod = w[0].compose(&w[1]);
                assert!(prod.iter().flatten().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn euler_matches_betti() {
        let s = MonoidSpec::three(1, 2, 2).unwrap();
        for lam in s.normal_forms_in_box(&[1, 2, 3]).unwrap().iter().skip(1) {
            let c = order_complex(&IntervalPoset::open(lam).unwrap());
            for f in FIELDS {
                assert_eq!(reduced_betti(&c, f).euler(), c.reduced_euler());
            }
        }
    }

    #[test]
    fn projective_plane_depends_on_field() {
        // Real projective plane (6 vertices): Z/2 torsion shows up only mod 2.
        let rp2 = SimplicialComplex::from_facets(
            6,
            &[
                vec![0, 1, 2],
                vec![0, 1, 3],
                vec![0, 2, 4],
                vec![0, 3, 5],
                vec![0, 4, 5],
                vec![1, 2, 5],
                vec![1, 3, 4],
                vec![1, 4, 5],
                vec![2, 3, 4],
                vec![2, 3, 5],
            ],
        );
        assert_eq!(reduced_betti(&rp2, FieldSpec::Rational), BettiVector::new());
        assert_eq!(reduced_betti(&rp2, FieldSpec::Prime(3)), BettiVector::new());
        assert_eq!(
            reduced_betti(&rp2, FieldSpec::Gf2),
            BettiVector::from_pairs(&[(1, 1), (2, 1)])
        );
    }

    #[test]
    fn truncation_agrees_with_full() {
        let s = MonoidSpec::three(2, 2, 2).unwrap();
        for lam in s.normal_forms_in_box(&[1, 1, 4]).unwrap().iter().skip(1) {
            let full = frobenius_betti(lam, &HomologyOptions::default()).unwrap();
            for j in -1..4 {
                let part = frobenius_betti_through(lam, &HomologyOptions::default(), j).unwrap();
                assert_eq!(part, full.truncated(j), "{lam} through {j}");
            }
        }
    }

    #[test]
    fn local_betti_examples() {
        let t = MonoidSpec::two(2, 2).unwrap();
        assert_eq!(
            local_betti(&t.zero(), FieldSpec::Gf2),
            LocalBettiVector::from_pairs(&[(0, 1)])
        );
        assert_eq!(
            local_betti(&t.element(&[1, 0]).unwrap(), FieldSpec::Gf2),
            LocalBettiVector::from_pairs(&[(1, 1)])
        );
        let s = MonoidSpec::three(1, 1, 2).unwrap();
        assert_eq!(
            local_betti(&s.element(&[0, 0, 2]).unwrap(), FieldSpec::Gf2),
            LocalBettiVector::from_pairs(&[(2, 2)])
        );
    }

    #[test]
    fn serializes_as_string_keyed_map() {
        let v = LocalBettiVector::from_pairs(&[(4, 2)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"4":2}"#);
        let b = BettiVector::from_pairs(&[(-1, 1)]);
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"-1":1}"#);
    }
}
