//! Abstract simplicial complexes and the order complex of a finite poset.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::interval::IntervalPoset;

/// Faces are strictly increasing vertex-index tuples grouped by dimension;
/// each dimension's list is sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces_by_dim: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            vertex_count: 0,
            faces_by_dim: Vec::new(),
        }
    }

    /// The complex generated by `facets` (all their nonempty subsets).
    pub fn from_facets(vertex_count: usize, facets: &[Vec<u32>]) -> Self {
        let mut by_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            assert!(
                f.iter().all(|&v| (v as usize) < vertex_count),
                "vertex out of range"
            );
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<u32> = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(face);
            }
        }
        SimplicialComplex {
            vertex_count,
            faces_by_dim: by_dim
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Highest face dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces_by_dim.len().checked_sub(1)
    }

    pub fn faces(&self, d: usize) -> &[Vec<u32>] {
        self.faces_by_dim.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn faces_by_dim(&self) -> &[Vec<Vec<u32>>] {
        &self.faces_by_dim
    }

    pub fn index_of(&self, face: &[u32]) -> Option<usize> {
        let d = face.len().checked_sub(1)?;
        self.faces(d)
            .binary_search_by(|f| f.as_slice().cmp(face))
            .ok()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim.iter().map(Vec::len).collect()
    }

    /// `sum_d (-1)^d f_d - 1`; the empty complex gives -1.
    pub fn reduced_euler(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum::<i64>()
            - 1
    }

    /// Faces not contained in any face one dimension higher, in lexicographic
    /// order.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for d in 0..self.faces_by_dim.len() {
            let mut covered: BTreeSet<&[u32]> = BTreeSet::new();
            let mut buf = Vec::new();
            for up in self.faces(d + 1) {
                for skip in 0..up.len() {
                    buf.clear();
                    buf.extend(
                        up.iter()
                            .enumerate()
                            .filter(|(i, _)| *i != skip)
                            .map(|(_, v)| *v),
                    );
                    if let Some(i) = self.index_of(&buf) {
                        covered.insert(self.faces(d)[i].as_slice());
                    }
                }
            }
            out.extend(
                self.faces(d)
                    .iter()
                    .filter(|f| !covered.contains(f.as_slice()))
                    .cloned(),
            );
        }
        out.sort();
        out
    }

    /// Whether every codimension-one face of every face is present.
    pub fn is_closed(&self) -> bool {
        let mut buf = Vec::new();
        for d in 1..self.faces_by_dim.len() {
            for f in self.faces(d) {
                for skip in 0..f.len() {
                    buf.clear();
                    buf.extend(
                        f.iter()
                            .enumerate()
                            .filter(|(i, _)| *i != skip)
                            .map(|(_, v)| *v),
                    );
                    if self.index_of(&buf).is_none() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// One facet per line, vertex indices separated by spaces.
    pub fn to_facet_text(&self) -> String {
        let mut s = String::new();
        for f in self.facets() {
            let line: Vec<String> = f.iter().map(u32::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("complex serializes")
    }
}

/// The order complex: one face per nonempty chain of `poset`.
pub fn order_complex(poset: &IntervalPoset) -> SimplicialComplex {
    build(poset, usize::MAX)
}

/// Faces of the order complex of dimension at most `max_dim`.
pub fn order_complex_skeleton(poset: &IntervalPoset, max_dim: usize) -> SimplicialComplex {
    build(poset, max_dim)
}

fn build(poset: &IntervalPoset, max_dim: usize) -> SimplicialComplex {
    let n = poset.len();
    // Chains are exactly the cliques of the comparability graph. Extending
    // only by larger indices enumerates each one once, already sorted, and
    // the DFS visits the faces of each dimension in lexicographic order.
    let mut later: Vec<Vec<u32>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut cmp = FixedBitSet::with_capacity(n);
        cmp.union_with(poset.above(i));
        for j in i + 1..n {
            if poset.lt(j, i) {
                cmp.insert(j);
            }
        }
        later.push(cmp.ones().filter(|&j| j > i).map(|j| j as u32).collect());
    }
    let mut comparable = vec![FixedBitSet::with_capacity(n); n];
    for (i, row) in later.iter().enumerate() {
        for &j in row {
            comparable[i].insert(j as usize);
        }
    }
    let mut faces: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut chain: Vec<u32> = Vec::new();
    fn extend(
        chain: &mut Vec<u32>,
        candidates: &[u32],
        comparable: &[FixedBitSet],
        faces: &mut Vec<Vec<Vec<u32>>>,
        max_dim: usize,
    ) {
        let d = chain.len() - 1;
        if faces.len() <= d {
            faces.push(Vec::new());
        }
        faces[d].push(chain.clone());
        if d >= max_dim {
            return;
        }
        for (pos, &v) in candidates.iter().enumerate() {
            let next: Vec<u32> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&w| comparable[v as usize].contains(w as usize))
                .collect();
            chain.push(v);
            extend(chain, &next, comparable, faces, max_dim);
            chain.pop();
        }
    }
    for v in 0..n as u32 {
        chain.push(v);
        extend(
            &mut chain,
            &later[v as usize],
            &comparable,
            &mut faces,
            max_dim,
        );
        chain.pop();
    }
    debug_assert!(faces.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
    SimplicialComplex {
        vertex_count: n,
        faces_by_dim: faces,
    }
}
