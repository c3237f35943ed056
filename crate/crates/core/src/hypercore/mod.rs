// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Hypergraph representation and the primitives every other module consumes.
//!
//! A [`Hypergraph`] has vertices `0..n` and an ordered sequence of edges; an
//! edge identifier is its index in that sequence. Edges are non-empty sorted
//! vertex sets and may repeat. Values are immutable after construction.

mod iso;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use iso::{canonical_form, is_isomorphic, CanonicalForm, CANONICAL_MAX_EDGES, CANONICAL_MAX_VERTICES};

/// Largest vertex count for which edges also carry a 128-bit mask.
const MASK_LIMIT: usize = 128;

#[derive(Clone, Debug, Serialize)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<u32>>,
    #[serde(skip)]
    masks: Option<Vec<u128>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge. Rejects empty edges, vertices
    /// outside `0..n` and vertices listed twice in one edge.
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = usize>,
    {
        if n > u32::MAX as usize {
            return Err(Error::TooLarge(format!("{n} vertices")));
        }
        let mut out = Vec::new();
        for (id, edge) in edges.into_iter().enumerate() {
            let mut vs: Vec<u32> = Vec::new();
            for v in edge {
                if v >= n {
                    return Err(Error::VertexOutOfRange { edge: id, vertex: v, n });
                }
                vs.push(v as u32);
            }
            if vs.is_empty() {
                return Err(Error::EmptyEdge(id));
            }
            vs.sort_unstable();
            if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex { edge: id, vertex: w[0] as usize });
            }
            out.push(vs);
        }
        if out.len() > u32::MAX as usize {
            return Err(Error::TooLarge(format!("{} edges", out.len())));
        }
        Ok(Self::from_sorted(n, out))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    /// Caller guarantees every edge is non-empty, sorted, duplicate-free and in range.
    pub(crate) fn from_sorted(n: usize, edges: Vec<Vec<u32>>) -> Self {
        let masks = (n <= MASK_LIMIT).then(|| {
            edges
                .iter()
                .map(|e| e.iter().fold(0u128, |m, &v| m | (1u128 << v)))
                .collect()
        });
        Hypergraph { n, edges, masks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &[u32] {
        &self.edges[e]
    }

    pub fn edge_size(&self, e: usize) -> usize {
        self.edges[e].len()
    }

    pub fn contains(&self, e: usize, v: usize) -> bool {
        match &self.masks {
            Some(m) => v < MASK_LIMIT && m[e] >> v & 1 == 1,
            None => self.edges[e].binary_search(&(v as u32)).is_ok(),
        }
    }

    /// Whether the vertex sets of `e` and `f` meet.
    pub fn intersects(&self, e: usize, f: usize) -> bool {
        match &self.masks {
            Some(m) => m[e] & m[f] != 0,
            None => sorted_intersection_size(&self.edges[e], &self.edges[f], true) > 0,
        }
    }

    pub fn intersection_size(&self, e: usize, f: usize) -> usize {
        match &self.masks {
            Some(m) => (m[e] & m[f]).count_ones() as usize,
            None => sorted_intersection_size(&self.edges[e], &self.edges[f], false),
        }
    }

    /// Incidence lists: for each vertex, the ids of edges containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (e, vs) in self.edges.iter().enumerate() {
            for &v in vs {
                inc[v as usize].push(e);
            }
        }
        inc
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for vs in &self.edges {
            for &v in vs {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degree = self.degrees();
        let mut codegree: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for vs in &self.edges {
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    *codegree.entry((u, v)).or_insert(0) += 1;
                }
            }
        }
        let max_degree = degree.iter().copied().max().unwrap_or(0);
        let max_codegree = codegree.values().copied().max().unwrap_or(0);
        DegreeStats { degree, codegree, max_degree, max_codegree }
    }

    pub fn max_codegree(&self) -> usize {
        self.degree_stats().max_codegree
    }

    /// `Σ_{e∈S} C(|e|,2) / C(n,2)`.
    pub fn volume(&self, edge_ids: &[usize]) -> Result<Rational> {
        if self.n < 2 {
            return Err(Error::Domain(format!("volume needs n >= 2, got n = {}", self.n)));
        }
        let mut total: u128 = 0;
        for &e in edge_ids {
            let s = self.edges.get(e).ok_or(Error::EdgeOutOfRange(e))?.len() as u128;
            total += s * (s - 1) / 2;
        }
        let n = self.n as u128;
        Ok(Rational::new(total.into(), (n * (n - 1) / 2).into()))
    }

    pub fn total_volume(&self) -> Result<Rational> {
        let all: Vec<usize> = (0..self.edge_count()).collect();
        self.volume(&all)
    }

    /// The dual: one vertex per edge, one edge per vertex `v` listing the
    /// edges containing `v`.
    pub fn dual(&self) -> Result<Hypergraph> {
        let inc = self.incidence();
        if let Some(v) = inc.iter().position(|es| es.is_empty()) {
            return Err(Error::IsolatedVertex(v));
        }
        let edges = inc
            .into_iter()
            .map(|es| es.into_iter().map(|e| e as u32).collect())
            .collect();
        Ok(Hypergraph::from_sorted(self.edge_count(), edges))
    }

    pub fn line_graph(&self) -> SimpleGraph {
        let m = self.edge_count();
        let mut adj = vec![Vec::new(); m];
        for e in 0..m {
            for f in e + 1..m {
                if self.intersects(e, f) {
                    adj[e].push(f);
                    adj[f].push(e);
                }
            }
        }
        SimpleGraph { adj }
    }

    pub fn predicates(&self) -> Predicates {
        let m = self.edge_count();
        let mut is_intersecting = true;
        let mut is_linear = true;
        for e in 0..m {
            for f in e + 1..m {
                let k = self.intersection_size(e, f);
                if k == 0 {
                    is_intersecting = false;
                }
                if k >= 2 {
                    is_linear = false;
                }
            }
        }
        Predicates { is_linear, is_intersecting }
    }

    pub fn is_intersecting(&self) -> bool {
        let m = self.edge_count();
        (0..m).all(|e| (e + 1..m).all(|f| self.intersects(e, f)))
    }

    /// `N[v]`: the union of edges through `v`, or `{v}` when `v` is isolated.
    pub fn closed_neighbourhood(&self, v: usize) -> Vec<u32> {
        let mut seen = vec![false; self.n];
        seen[v] = true;
        for vs in &self.edges {
            if vs.binary_search(&(v as u32)).is_ok() {
                for &u in vs {
                    seen[u as usize] = true;
                }
            }
        }
        (0..self.n as u32).filter(|&u| seen[u as usize]).collect()
    }

    /// `N(e)`: edges other than `e` meeting it.
    pub fn edge_neighbourhood(&self, e: usize) -> Vec<usize> {
        (0..self.edge_count())
            .filter(|&f| f != e && self.intersects(e, f))
            .collect()
    }

    pub fn neighbourhoods(&self) -> Neighbourhoods {
        let inc = self.incidence();
        let closed_vertex = (0..self.n)
            .map(|v| {
                let mut seen = vec![false; self.n];
                seen[v] = true;
                for &e in &inc[v] {
                    for &u in &self.edges[e] {
                        seen[u as usize] = true;
                    }
                }
                (0..self.n as u32).filter(|&u| seen[u as usize]).collect()
            })
            .collect();
        let lg = self.line_graph();
        Neighbourhoods { closed_vertex, edge: lg.adj }
    }

    /// Checks properness and, when lists are given, list compliance.
    pub fn validate_colouring(
        &self,
        colouring: &EdgeColouring,
        lists: Option<&ListAssignment>,
    ) -> Result<ColouringReport> {
        let m = self.edge_count();
        if colouring.colours.len() != m {
            return Err(Error::ColouringSize { expected: m, got: colouring.colours.len() });
        }
        if let Some(c) = lists {
            if c.len() != m {
                return Err(Error::ListSize { expected: m, got: c.len() });
            }
        }
        let mut violations = Vec::new();
        let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (e, &c) in colouring.colours.iter().enumerate() {
            classes.entry(c).or_default().push(e);
        }
        for (&colour, members) in &classes {
            for (i, &e) in members.iter().enumerate() {
                for &f in &members[i + 1..] {
                    if self.intersects(e, f) {
                        violations.push(Violation::Conflict { e, f, colour });
                    }
                }
            }
        }
        if let Some(c) = lists {
            for (e, &colour) in colouring.colours.iter().enumerate() {
                if !c.contains(e, colour) {
                    violations.push(Violation::OffList { e, colour });
                }
            }
        }
        Ok(ColouringReport {
            valid: violations.is_empty(),
            colour_count: classes.len(),
            violations,
        })
    }

    /// `H[S]`: edges contained in `S`, relabelled onto `0..|S|`.
    pub fn induced(&self, vertices: &[usize]) -> Result<SubHypergraph> {
        self.restrict_and_induce(vertices, SubMode::Induced)
    }

    /// `H|_S`: every edge replaced by its trace on `S`, relabelled onto `0..|S|`.
    pub fn restriction(&self, vertices: &[usize]) -> Result<SubHypergraph> {
        self.restrict_and_induce(vertices, SubMode::Restriction)
    }

    pub fn restrict_and_induce(&self, vertices: &[usize], mode: SubMode) -> Result<SubHypergraph> {
        let mut vertex_map: Vec<usize> = vertices.to_vec();
        vertex_map.sort_unstable();
        vertex_map.dedup();
        let mut new_id = vec![u32::MAX; self.n];
        for (i, &v) in vertex_map.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { edge: usize::MAX, vertex: v, n: self.n });
            }
            new_id[v] = i as u32;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (e, vs) in self.edges.iter().enumerate() {
            let trace: Vec<u32> = vs
                .iter()
                .filter(|&&v| new_id[v as usize] != u32::MAX)
                .map(|&v| new_id[v as usize])
                .collect();
            match mode {
                SubMode::Induced => {
                    if trace.len() == vs.len() {
                        edges.push(trace);
                        edge_map.push(e);
                    }
                }
                SubMode::Restriction => {
                    if trace.is_empty() {
                        return Err(Error::RestrictionMisses(e));
                    }
                    edges.push(trace);
                    edge_map.push(e);
                }
            }
        }
        Ok(SubHypergraph {
            hypergraph: Hypergraph::from_sorted(vertex_map.len(), edges),
            vertex_map,
            edge_map,
        })
    }

    /// The spanning sub-hypergraph on the given edge ids, in the given order.
    /// Edge `i` of the result is edge `ids[i]` of `self`.
    pub fn edge_subset(&self, ids: &[usize]) -> Result<Hypergraph> {
        let mut edges = Vec::with_capacity(ids.len());
        for &e in ids {
            edges.push(self.edges.get(e).ok_or(Error::EdgeOutOfRange(e))?.clone());
        }
        Ok(Hypergraph::from_sorted(self.n, edges))
    }

    /// Appends an edge, returning the new hypergraph.
    pub fn with_edge(&self, edge: Vec<usize>) -> Result<Hypergraph> {
        let mut all: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|vs| vs.iter().map(|&v| v as usize).collect())
            .collect();
        all.push(edge);
        Hypergraph::new(self.n, all)
    }

    /// Drops the edge with the given id, returning the new hypergraph.
    pub fn without_edge(&self, e: usize) -> Result<Hypergraph> {
        if e >= self.edge_count() {
            return Err(Error::EdgeOutOfRange(e));
        }
        let ids: Vec<usize> = (0..self.edge_count()).filter(|&f| f != e).collect();
        self.edge_subset(&ids)
    }
}

fn sorted_intersection_size(a: &[u32], b: &[u32], stop_at_first: bool) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                if stop_at_first {
                    return count;
                }
                i += 1;
                j += 1;
            }
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub degree: Vec<usize>,
    /// Codegree of each covered pair `(u, v)` with `u < v`; absent pairs have codegree 0.
    #[serde(skip)]
    pub codegree: BTreeMap<(u32, u32), usize>,
    pub max_degree: usize,
    pub max_codegree: usize,
}

impl DegreeStats {
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        let key = if u < v { (u as u32, v as u32) } else { (v as u32, u as u32) };
        self.codegree.get(&key).copied().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Predicates {
    pub is_linear: bool,
    pub is_intersecting: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighbourhoods {
    pub closed_vertex: Vec<Vec<u32>>,
    pub edge: Vec<Vec<usize>>,
}

/// A simple undirected graph stored as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    pub adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubMode {
    Induced,
    Restriction,
}

/// A relabelled sub-hypergraph. Vertex `i` of `hypergraph` is vertex
/// `vertex_map[i]` of the parent and edge `j` is parent edge `edge_map[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubHypergraph {
    pub hypergraph: Hypergraph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

/// Per-edge colour lists. Each list is kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListAssignment {
    lists: Vec<Vec<u32>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<u32>>) -> Self {
        let lists = lists
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        ListAssignment { lists }
    }

    /// Every one of `m` edges gets `{0, …, k−1}`.
    pub fn uniform(m: usize, k: u32) -> Self {
        ListAssignment { lists: vec![(0..k).collect(); m] }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn get(&self, e: usize) -> &[u32] {
        &self.lists[e]
    }

    pub fn lists(&self) -> &[Vec<u32>] {
        &self.lists
    }

    pub fn contains(&self, e: usize, colour: u32) -> bool {
        self.lists[e].binary_search(&colour).is_ok()
    }

    pub fn min_size(&self) -> usize {
        self.lists.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_size(&self) -> usize {
        self.lists.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted union of all lists.
    pub fn palette(&self) -> Vec<u32> {
        let mut all: Vec<u32> = self.lists.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// The lists of the given edges, in order.
    pub fn select(&self, ids: &[usize]) -> ListAssignment {
        ListAssignment { lists: ids.iter().map(|&e| self.lists[e].clone()).collect() }
    }

    /// Applies `keep` to every colour of every list.
    pub fn filter(&self, mut keep: impl FnMut(usize, u32) -> bool) -> ListAssignment {
        ListAssignment {
            lists: self
                .lists
                .iter()
                .enumerate()
                .map(|(e, l)| l.iter().copied().filter(|&c| keep(e, c)).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeColouring {
    pub colours: Vec<u32>,
}

impl EdgeColouring {
    pub fn new(colours: Vec<u32>) -> Self {
        EdgeColouring { colours }
    }

    pub fn colour_count(&self) -> usize {
        let mut cs = self.colours.clone();
        cs.sort_unstable();
        cs.dedup();
        cs.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two intersecting edges share a colour.
    Conflict { e: usize, f: usize, colour: u32 },
    /// An edge received a colour outside its list.
    OffList { e: usize, colour: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColouringReport {
    pub valid: bool,
    pub colour_count: usize,
    pub violations: Vec<Violation>,
}

/// Exact check that `vol(H, S) ≤ t`.
pub fn volume_at_most(h: &Hypergraph, ids: &[usize], t: usize) -> Result<bool> {
    Ok(h.volume(ids)? <= rational::int(t))
}

/// Volume of the empty set, used where a part may be empty.
pub fn zero_volume() -> Rational {
    Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn fano() -> Hypergraph {
        // Difference set {1,2,4} mod 7.
        Hypergraph::new(7, (0..7).map(|i| [1, 2, 4].iter().map(move |d| (i + d) % 7))).unwrap()
    }

    fn doubled(h: &Hypergraph) -> Hypergraph {
        let mut edges = Vec::new();
        for e in h.edges() {
            for _ in 0..2 {
                edges.push(e.iter().map(|&v| v as usize).collect::<Vec<_>>());
            }
        }
        Hypergraph::new(h.n(), edges).unwrap()
    }

    fn k4() -> Hypergraph {
        Hypergraph::new(4, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]])
            .unwrap()
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(Hypergraph::new(3, vec![vec![]]), Err(Error::EmptyEdge(0)));
        assert_eq!(
            Hypergraph::new(3, vec![vec![0, 3]]),
            Err(Error::VertexOutOfRange { edge: 0, vertex: 3, n: 3 })
        );
        assert_eq!(
            Hypergraph::new(3, vec![vec![1, 1]]),
            Err(Error::RepeatedVertex { edge: 0, vertex: 1 })
        );
        let h = Hypergraph::new(3, vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(h.edge(0), &[0, 2]);
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn fano_degree_profile() {
        let s = fano().degree_stats();
        assert!(s.degree.iter().all(|&d| d == 3));
        assert_eq!(s.codegree.len(), 21);
        assert!(s.codegree.values().all(|&c| c == 1));
        assert_eq!((s.max_degree, s.max_codegree), (3, 1));

        let s2 = doubled(&fano()).degree_stats();
        assert!(s2.degree.iter().all(|&d| d == 6));
        assert_eq!(s2.max_codegree, 2);

        let e = Hypergraph::empty(5).degree_stats();
        assert_eq!((e.max_degree, e.max_codegree), (0, 0));
    }

    #[test]
    fn volumes() {
        let f = fano();
        assert_eq!(f.total_volume().unwrap(), int(1));
        assert_eq!(f.volume(&[]).unwrap(), int(0));
        assert_eq!(doubled(&f).total_volume().unwrap(), int(2));
        assert_eq!(f.volume(&[0]).unwrap(), rat(1, 7));
        assert!(matches!(Hypergraph::empty(1).volume(&[]), Err(Error::Domain(_))));
    }

    #[test]
    fn dual_of_single_pair() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let d = h.dual().unwrap();
        assert_eq!(d.n(), 1);
        assert_eq!(d.edges(), &[vec![0], vec![0]]);
        let iso = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        assert_eq!(iso.dual(), Err(Error::IsolatedVertex(2)));
    }

    #[test]
    fn line_graphs() {
        let lf = fano().line_graph();
        assert_eq!(lf.edge_count(), 21);
        let disjoint = Hypergraph::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(disjoint.line_graph().edge_count(), 0);
        let lk = k4().line_graph();
        assert_eq!(lk.vertex_count(), 6);
        assert!((0..6).all(|v| lk.degree(v) == 4));
    }

    #[test]
    fn predicate_examples() {
        assert_eq!(fano().predicates(), Predicates { is_linear: true, is_intersecting: true });
        assert_eq!(
            doubled(&fano()).predicates(),
            Predicates { is_linear: false, is_intersecting: true }
        );
        let two = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(two.predicates(), Predicates { is_linear: true, is_intersecting: false });
    }

    #[test]
    fn neighbourhood_examples() {
        let f = fano();
        assert!((0..7).all(|v| f.closed_neighbourhood(v).len() == 7));
        let np5 = Hypergraph::new(5, vec![vec![1, 2, 3, 4], vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 4]])
            .unwrap();
        assert_eq!(np5.closed_neighbourhood(0), vec![0, 1, 2, 3, 4]);
        let iso = Hypergraph::new(3, vec![vec![0, 1]]).unwrap();
        assert_eq!(iso.closed_neighbourhood(2), vec![2]);
        let nb = np5.neighbourhoods();
        assert_eq!(nb.closed_vertex[0], vec![0, 1, 2, 3, 4]);
        assert_eq!(nb.edge[1], vec![0, 2, 3, 4]);
        assert_eq!(np5.edge_neighbourhood(1), vec![0, 2, 3, 4]);
    }

    #[test]
    fn colouring_validation() {
        let f = fano();
        let distinct = EdgeColouring::new((0..7).collect());
        let r = f.validate_colouring(&distinct, None).unwrap();
        assert!(r.valid);
        assert_eq!(r.colour_count, 7);

        let mut clash = distinct.clone();
        clash.colours[1] = 0;
        let r = f.validate_colouring(&clash, None).unwrap();
        assert!(!r.valid);
        assert_eq!(r.violations, vec![Violation::Conflict { e: 0, f: 1, colour: 0 }]);

        let lists = ListAssignment::uniform(7, 7);
        assert!(f.validate_colouring(&distinct, Some(&lists)).unwrap().valid);
        let short = ListAssignment::uniform(7, 6);
        let r = f.validate_colouring(&distinct, Some(&short)).unwrap();
        assert_eq!(r.violations, vec![Violation::OffList { e: 6, colour: 6 }]);

        assert_eq!(
            f.validate_colouring(&EdgeColouring::new(vec![0; 3]), None),
            Err(Error::ColouringSize { expected: 7, got: 3 })
        );
    }

    #[test]
    fn induced_and_restricted() {
        let f = fano();
        let line: Vec<usize> = f.edge(0).iter().map(|&v| v as usize).collect();
        let sub = f.induced(&line).unwrap();
        assert_eq!(sub.hypergraph.edge_count(), 1);
        assert_eq!(sub.edge_map, vec![0]);

        let all: Vec<usize> = (0..7).collect();
        assert_eq!(f.induced(&all).unwrap().hypergraph, f);

        let np5 = Hypergraph::new(5, vec![vec![1, 2, 3, 4], vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 4]])
            .unwrap();
        let r = np5.restriction(&[0, 1]).unwrap();
        assert_eq!(r.hypergraph.edges(), &[vec![1], vec![0, 1], vec![0], vec![0], vec![0]]);
        assert_eq!(np5.restriction(&[1]), Err(Error::RestrictionMisses(2)));
    }

    #[test]
    fn wide_hypergraphs_use_sorted_merge() {
        let h = Hypergraph::new(300, vec![vec![0, 150, 299], vec![150, 200], vec![1, 2]]).unwrap();
        assert!(h.intersects(0, 1));
        assert!(!h.intersects(0, 2));
        assert_eq!(h.intersection_size(0, 1), 1);
        assert!(h.contains(0, 299));
    }

    #[test]
    fn list_assignment_normalises() {
        let c = ListAssignment::new(vec![vec![3, 1, 3], vec![]]);
        assert_eq!(c.get(0), &[1, 3]);
        assert_eq!(c.min_size(), 0);
        assert_eq!(c.palette(), vec![1, 3]);
    }
}
