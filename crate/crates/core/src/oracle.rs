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

//! Exact answers at small scale.
//!
//! Everything here is computed by definition (search over colourings or
//! matchings) and is meant as ground truth for the heuristics elsewhere.
//! Searches that exceed their budget say so instead of guessing.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::{maximal_complement_matching, ComplementMatching, MatchingStrategy};
use crate::hypercore::{canonical_form, CanonicalForm, EdgeColouring, Hypergraph, ListAssignment};

/// Matchings on at most this many edges are re-verified exhaustively.
pub const EXHAUSTIVE_MATCHING_LIMIT: usize = 16;

pub const ENUMERATION_MAX_VERTICES: usize = 6;
pub const ENUMERATION_MAX_EDGES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleBudget {
    pub max_edges: usize,
    pub max_colours: usize,
    pub time_cap_ms: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_edges: 64, max_colours: 64, time_cap_ms: 60_000 }
    }
}

impl OracleBudget {
    fn deadline(&self) -> Instant {
        Instant::now() + Duration::from_millis(self.time_cap_ms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "value", rename_all = "snake_case")]
pub enum ChromaticIndex {
    Exact(usize),
    BudgetExceeded,
}

impl ChromaticIndex {
    pub fn value(&self) -> Option<usize> {
        match self {
            ChromaticIndex::Exact(k) => Some(*k),
            ChromaticIndex::BudgetExceeded => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "witness", rename_all = "snake_case")]
pub enum ListColourability {
    Yes(EdgeColouring),
    No,
    BudgetExceeded,
}

/// Thrown out of a search when the clock runs out.
struct OutOfTime;

#[allow(clippy::needless_range_loop)]
fn conflict_matrix(h: &Hypergraph) -> Vec<Vec<bool>> {
    let m = h.edge_count();
    let mut adj = vec![vec![false; m]; m];
    for e in 0..m {
        for f in e + 1..m {
            if h.intersects(e, f) {
                adj[e][f] = true;
                adj[f][e] = true;
            }
        }
    }
    adj
}

/// Greedy clique: repeatedly add the highest-degree vertex adjacent to all chosen.
fn greedy_clique(adj: &[Vec<bool>], candidates: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = candidates.to_vec();
    let deg = |v: usize| candidates.iter().filter(|&&u| adj[v][u]).count();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg(v)), v));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| adj[u][v]) {
            clique.push(v);
        }
    }
    clique
}

/// Chromatic index by branch and bound on the line graph.
///
/// The lower bound is a greedy clique; the initial upper bound is a DSATUR
/// colouring. Branching picks the uncoloured edge of maximum saturation and
/// tries existing colours before opening exactly one new colour.
pub fn exact_chromatic_index(h: &Hypergraph, budget: &OracleBudget) -> Result<ChromaticIndex> {
    let m = h.edge_count();
    if m > budget.max_edges {
        return Ok(ChromaticIndex::BudgetExceeded);
    }
    if m == 0 {
        return Ok(ChromaticIndex::Exact(0));
    }
    let adj = conflict_matrix(h);
    let all: Vec<usize> = (0..m).collect();
    let lower = greedy_clique(&adj, &all).len();
    let mut state = Dsatur::new(&adj);
    let initial = state.greedy();
    let mut best = initial;
    if best > lower {
        let deadline = budget.deadline();
        let mut search = Dsatur::new(&adj);
        if search.branch(&mut best, lower, deadline).is_err() {
            return Ok(ChromaticIndex::BudgetExceeded);
        }
    }
    if best > budget.max_colours {
        return Ok(ChromaticIndex::BudgetExceeded);
    }
    Ok(ChromaticIndex::Exact(best))
}

struct Dsatur<'a> {
    adj: &'a [Vec<bool>],
    colour: Vec<Option<usize>>,
    /// `forbid[v][c]`: number of coloured neighbours of `v` with colour `c`.
    forbid: Vec<Vec<usize>>,
    used: usize,
    nodes: u64,
}

impl<'a> Dsatur<'a> {
    fn new(adj: &'a [Vec<bool>]) -> Self {
        let m = adj.len();
        Dsatur { adj, colour: vec![None; m], forbid: vec![vec![0; m + 1]; m], used: 0, nodes: 0 }
    }

    fn saturation(&self, v: usize) -> usize {
        self.forbid[v].iter().filter(|&&k| k > 0).count()
    }

    fn pick(&self) -> Option<usize> {
        (0..self.adj.len()).filter(|&v| self.colour[v].is_none()).max_by_key(|&v| {
            let deg = (0..self.adj.len()).filter(|&u| self.colour[u].is_none() && self.adj[v][u]).count();
            (self.saturation(v), deg, std::cmp::Reverse(v))
        })
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = Some(c);
        for u in 0..self.adj.len() {
            if self.adj[v][u] {
                self.forbid[u][c] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colour[v].take().unwrap();
        for u in 0..self.adj.len() {
            if self.adj[v][u] {
                self.forbid[u][c] -= 1;
            }
        }
    }

    /// Plain DSATUR; returns the number of colours used.
    fn greedy(&mut self) -> usize {
        while let Some(v) = self.pick() {
            let c = (0..).find(|&c| self.forbid[v][c] == 0).unwrap();
            self.assign(v, c);
            self.used = self.used.max(c + 1);
        }
        self.used
    }

    fn branch(&mut self, best: &mut usize, lower: usize, deadline: Instant) -> std::result::Result<(), OutOfTime> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && Instant::now() > deadline {
            return Err(OutOfTime);
        }
        if self.used >= *best {
            return Ok(());
        }
        let Some(v) = self.pick() else {
            *best = self.used;
            return Ok(());
        };
        // Existing colours, then at most one fresh colour.
        for c in 0..=self.used {
            if c == self.used && c + 1 >= *best {
                break;
            }
            if self.forbid[v][c] > 0 {
                continue;
            }
            let prev = self.used;
            self.used = self.used.max(c + 1);
            self.assign(v, c);
            let res = self.branch(best, lower, deadline);
            self.unassign(v);
            self.used = prev;
            res?;
            if *best <= lower {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Backtracking list colouring. Edges are tried in ascending order of list
/// size; each assignment removes the colour from the live domains of
/// intersecting edges and backtracks as soon as one becomes empty. A clique
/// among the remaining edges whose domains jointly hold too few colours also
/// triggers a backtrack.
pub fn exact_list_colourable(h: &Hypergraph, lists: &ListAssignment, budget: &OracleBudget) -> Result<ListColourability> {
    let m = h.edge_count();
    if lists.len() != m {
        return Err(Error::ListSize { expected: m, got: lists.len() });
    }
    if m > budget.max_edges {
        return Ok(ListColourability::BudgetExceeded);
    }
    let adj = conflict_matrix(h);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&e| (lists.get(e).len(), e));
    let mut search = ListSearch {
        adj: &adj,
        order,
        domains: lists.lists().to_vec(),
        colour: vec![None; m],
        deadline: budget.deadline(),
        nodes: 0,
    };
    match search.run(0) {
        Err(OutOfTime) => Ok(ListColourability::BudgetExceeded),
        Ok(false) => Ok(ListColourability::No),
        Ok(true) => {
            let c = EdgeColouring::new(search.colour.into_iter().map(Option::unwrap).collect());
            Ok(ListColourability::Yes(c))
        }
    }
}

struct ListSearch<'a> {
    adj: &'a [Vec<bool>],
    order: Vec<usize>,
    domains: Vec<Vec<u32>>,
    colour: Vec<Option<u32>>,
    deadline: Instant,
    nodes: u64,
}

impl ListSearch<'_> {
    fn run(&mut self, depth: usize) -> std::result::Result<bool, OutOfTime> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && Instant::now() > self.deadline {
            return Err(OutOfTime);
        }
        if depth == self.order.len() {
            return Ok(true);
        }
        if self.clique_starved(depth) {
            return Ok(false);
        }
        let e = self.order[depth];
        let options = self.domains[e].clone();
        for c in options {
            let touched: Vec<usize> = (0..self.adj.len())
                .filter(|&f| self.colour[f].is_none() && f != e && self.adj[e][f] && self.domains[f].binary_search(&c).is_ok())
                .collect();
            if touched.iter().any(|&f| self.domains[f].len() == 1) {
                continue;
            }
            for &f in &touched {
                let pos = self.domains[f].binary_search(&c).unwrap();
                self.domains[f].remove(pos);
            }
            self.colour[e] = Some(c);
            let res = self.run(depth + 1);
            self.colour[e] = None;
            for &f in &touched {
                let pos = self.domains[f].binary_search(&c).unwrap_err();
                self.domains[f].insert(pos, c);
            }
            if res? {
                self.colour[e] = Some(c);
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn clique_starved(&self, depth: usize) -> bool {
        let rest = &self.order[depth..];
        let clique = greedy_clique(self.adj, rest);
        let mut union: Vec<u32> = clique.iter().flat_map(|&f| self.domains[f].iter().copied()).collect();
        union.sort_unstable();
        union.dedup();
        union.len() < clique.len()
    }
}

/// Maximum matching in the complement of the line graph; on at most
/// [`EXHAUSTIVE_MATCHING_LIMIT`] edges its size is re-derived by exhaustive
/// search over subsets.
pub fn maximum_complement_matching(h: &Hypergraph) -> Result<ComplementMatching> {
    let matching = maximal_complement_matching(h, MatchingStrategy::Maximum);
    matching.validate(h)?;
    if h.edge_count() <= EXHAUSTIVE_MATCHING_LIMIT {
        let exhaustive = exhaustive_matching_size(h);
        if exhaustive != matching.len() {
            return Err(Error::Internal(format!(
                "matching of size {} but exhaustive search finds {exhaustive}",
                matching.len()
            )));
        }
    }
    Ok(matching)
}

/// Size of a maximum complement matching by dynamic programming over edge subsets.
pub fn exhaustive_matching_size(h: &Hypergraph) -> usize {
    let m = h.edge_count();
    assert!(m <= 20, "exhaustive matching is exponential in the edge count");
    let mut best = vec![0u8; 1 << m];
    for mask in 1usize..1 << m {
        let i = mask.trailing_zeros() as usize;
        let without = mask & !(1 << i);
        let mut b = best[without];
        let mut rest = without;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !h.intersects(i, j) {
                b = b.max(1 + best[without & !(1 << j)]);
            }
        }
        best[mask] = b;
    }
    best[(1 << m) - 1] as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationConstraints {
    pub intersecting: bool,
    pub max_edges: usize,
}

/// All hypergraphs on `n` labelled-up-to-isomorphism vertices whose edges
/// have size at least `min_size`, with codegree at most `t`, at most
/// `max_edges` edges (multiplicities allowed) and, optionally, pairwise
/// intersecting. Includes the empty hypergraph.
///
/// Generation is level by level: every instance with `m + 1` edges is an
/// instance with `m` edges plus one subset, and each level is deduplicated
/// by canonical form. This is complete because every constraint is inherited
/// by sub-multisets.
pub fn enumerate_hypergraphs(n: usize, t: usize, min_size: usize, c: &EnumerationConstraints) -> Result<Vec<Hypergraph>> {
    if n > ENUMERATION_MAX_VERTICES || c.max_edges > ENUMERATION_MAX_EDGES {
        return Err(Error::TooLarge(format!(
            "enumeration supports n <= {ENUMERATION_MAX_VERTICES} and at most {ENUMERATION_MAX_EDGES} edges"
        )));
    }
    let subsets: Vec<Vec<usize>> = (1usize..1 << n)
        .filter(|s| s.count_ones() as usize >= min_size.max(1))
        .map(|s| (0..n).filter(|&v| s >> v & 1 == 1).collect())
        .collect();
    let empty = Hypergraph::empty(n);
    let mut out: Vec<Hypergraph> = vec![empty.clone()];
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::from([canonical_form(&empty)?]);
    for _ in 0..c.max_edges {
        let mut next: BTreeSet<CanonicalForm> = BTreeSet::new();
        for form in &level {
            let base = form.to_hypergraph();
            let stats = base.degree_stats();
            for s in &subsets {
                let ok_codegree = s
                    .iter()
                    .enumerate()
                    .all(|(i, &u)| s[i + 1..].iter().all(|&v| stats.codegree(u, v) < t));
                if !ok_codegree {
                    continue;
                }
                if c.intersecting && !base.edges().iter().all(|e| e.iter().any(|&v| s.contains(&(v as usize)))) {
                    continue;
                }
                let grown = base.with_edge(s.clone())?;
                next.insert(canonical_form(&grown)?);
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().map(CanonicalForm::to_hypergraph));
        level = next;
    }
    Ok(out)
}
