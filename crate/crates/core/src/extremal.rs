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

//! Colouring hypergraphs whose edges all have size close to `√n`.
//!
//! The approach is to find a large matching in the complement of the line
//! graph: matched pairs are disjoint edges that may share a colour, so a
//! matching `N` lets `e(H) − |N|` colours suffice even from lists. Useful
//! pairs (intersecting edges with few common neighbours) are the raw material
//! for matchings that beat `tn`.

use num_traits::{One, Signed};
use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercore::{EdgeColouring, Hypergraph, ListAssignment};
use crate::oracle::{self, ListColourability, OracleBudget};
use crate::rational::{self, int, Rational};

/// Pairs of vertex-disjoint edges, no edge in two pairs. Each pair is stored
/// as `(low id, high id)` and pairs are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementMatching {
    pub pairs: Vec<(usize, usize)>,
}

impl ComplementMatching {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        ComplementMatching { pairs }
    }

    pub fn empty() -> Self {
        ComplementMatching { pairs: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Edges covered by the matching.
    pub fn covered(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort_unstable();
        v
    }

    /// Every pair is vertex-disjoint in `h` and no edge is used twice.
    pub fn validate(&self, h: &Hypergraph) -> Result<()> {
        let mut used = vec![false; h.edge_count()];
        for &(a, b) in &self.pairs {
            for e in [a, b] {
                if e >= h.edge_count() {
                    return Err(Error::EdgeOutOfRange(e));
                }
                if used[e] {
                    return Err(Error::Precondition(format!("edge {e} lies in two matched pairs")));
                }
                used[e] = true;
            }
            if a == b || h.intersects(a, b) {
                return Err(Error::Precondition(format!("matched edges {a} and {b} intersect")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchingStrategy {
    /// First fit over edge-id pairs in lexicographic order.
    Greedy,
    /// A maximum matching of the complement of the line graph.
    Maximum,
}

/// `V(e) ∩ V(f) ≠ ∅` and `|N(e) ∩ N(f)| ≤ tn − 3`.
pub fn is_t_useful(h: &Hypergraph, t: usize, e: usize, f: usize) -> Result<bool> {
    let m = h.edge_count();
    for x in [e, f] {
        if x >= m {
            return Err(Error::EdgeOutOfRange(x));
        }
    }
    if e == f {
        return Err(Error::Precondition("a useful pair needs two distinct edges".into()));
    }
    if !h.intersects(e, f) {
        return Ok(false);
    }
    let common = (0..m)
        .filter(|&g| g != e && g != f && h.intersects(g, e) && h.intersects(g, f))
        .count();
    Ok((common as i64) <= (t * h.n()) as i64 - 3)
}

pub fn maximal_complement_matching(h: &Hypergraph, strategy: MatchingStrategy) -> ComplementMatching {
    let m = h.edge_count();
    let out = match strategy {
        MatchingStrategy::Greedy => {
            let mut used = vec![false; m];
            let mut pairs = Vec::new();
            for e in 0..m {
                if used[e] {
                    continue;
                }
                if let Some(f) = (e + 1..m).find(|&f| !used[f] && !h.intersects(e, f)) {
                    used[e] = true;
                    used[f] = true;
                    pairs.push((e, f));
                }
            }
            ComplementMatching::new(pairs)
        }
        MatchingStrategy::Maximum => {
            let mut g: UnGraph<(), ()> = UnGraph::with_capacity(m, 0);
            for _ in 0..m {
                g.add_node(());
            }
            for e in 0..m {
                for f in e + 1..m {
                    if !h.intersects(e, f) {
                        g.add_edge(NodeIndex::new(e), NodeIndex::new(f), ());
                    }
                }
            }
            let matching = maximum_matching(&g);
            ComplementMatching::new(matching.edges().map(|(a, b)| (a.index(), b.index())).collect())
        }
    };
    debug_assert!(out.validate(h).is_ok());
    out
}

/// List-colours `h` treating matched pairs as classes that may share a colour.
///
/// While some pair has a colour common to both lists, it takes the smallest
/// such colour (lowest pair first) and that colour is removed from every other
/// list. The remaining edges get distinct colours from a maximum bipartite
/// matching between edges and colours; Hall's condition holds because each
/// leftover pair has disjoint lists.
pub fn colour_from_matching(h: &Hypergraph, n_match: &ComplementMatching, lists: &ListAssignment) -> Result<EdgeColouring> {
    let m = h.edge_count();
    if lists.len() != m {
        return Err(Error::ListSize { expected: m, got: lists.len() });
    }
    n_match.validate(h)?;
    let classes = m - n_match.len();
    if let Some(e) = (0..m).find(|&e| lists.get(e).len() < classes) {
        return Err(Error::Precondition(format!(
            "edge {e} has {} colours but e(H) - |N| = {classes}",
            lists.get(e).len()
        )));
    }
    let mut work: Vec<Vec<u32>> = lists.lists().to_vec();
    let mut colour: Vec<Option<u32>> = vec![None; m];
    let mut open: Vec<(usize, usize)> = n_match.pairs.clone();
    loop {
        let pick = open.iter().enumerate().find_map(|(i, &(a, b))| {
            work[a].iter().find(|c| work[b].binary_search(c).is_ok()).map(|&c| (i, c))
        });
        let Some((i, c)) = pick else { break };
        let (a, b) = open.remove(i);
        colour[a] = Some(c);
        colour[b] = Some(c);
        for (e, l) in work.iter_mut().enumerate() {
            if colour[e].is_none() {
                if let Ok(pos) = l.binary_search(&c) {
                    l.remove(pos);
                }
            }
        }
    }
    let rest: Vec<usize> = (0..m).filter(|&e| colour[e].is_none()).collect();
    let palette: Vec<u32> = {
        let mut p: Vec<u32> = rest.iter().flat_map(|&e| work[e].iter().copied()).collect();
        p.sort_unstable();
        p.dedup();
        p
    };
    let mut g: UnGraph<(), ()> = UnGraph::with_capacity(rest.len() + palette.len(), 0);
    for _ in 0..rest.len() + palette.len() {
        g.add_node(());
    }
    for (i, &e) in rest.iter().enumerate() {
        for c in &work[e] {
            let j = palette.binary_search(c).unwrap();
            g.add_edge(NodeIndex::new(i), NodeIndex::new(rest.len() + j), ());
        }
    }
    let matching = maximum_matching(&g);
    for (i, &e) in rest.iter().enumerate() {
        let mate = matching.mate(NodeIndex::new(i)).ok_or_else(|| {
            Error::Internal(format!("distinct-colour assignment left edge {e} uncoloured"))
        })?;
        colour[e] = Some(palette[mate.index() - rest.len()]);
    }
    Ok(EdgeColouring::new(colour.into_iter().map(Option::unwrap).collect()))
}

/// Distinct pairwise-intersecting edges whose consecutive pairs
/// `(edges[2i], edges[2i+1])` are useful.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UsefulFamily {
    pub edges: Vec<usize>,
    /// A common vertex of each pair with few small edges through it, when the
    /// search route produced one.
    pub pair_witnesses: Vec<Option<usize>>,
}

impl UsefulFamily {
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.chunks(2).map(|p| (p[0], p[1]))
    }

    /// Distinct, in range, pairwise intersecting, even length and every pair useful.
    pub fn check(&self, h: &Hypergraph, t: usize) -> Result<()> {
        let m = h.edge_count();
        if !self.edges.len().is_multiple_of(2) || self.edges.is_empty() {
            return Err(Error::Precondition("a useful family needs a positive even number of edges".into()));
        }
        let mut seen = vec![false; m];
        for &e in &self.edges {
            if e >= m {
                return Err(Error::EdgeOutOfRange(e));
            }
            if seen[e] {
                return Err(Error::Precondition(format!("edge {e} repeated in the family")));
            }
            seen[e] = true;
        }
        for (i, &e) in self.edges.iter().enumerate() {
            if let Some(&f) = self.edges[i + 1..].iter().find(|&&f| !h.intersects(e, f)) {
                return Err(Error::Precondition(format!("family edges {e} and {f} are disjoint")));
            }
        }
        for (a, b) in self.pairs() {
            if !is_t_useful(h, t, a, b)? {
                return Err(Error::Precondition(format!("pair ({a}, {b}) is not useful")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UsefulCover {
    pub matching: ComplementMatching,
    pub colouring: EdgeColouring,
}

/// Turns a useful family of `2r + 2` edges (with `r = e(H) − tn`) into a
/// complement matching of size `r + 1` and colours from it.
///
/// For each family pair, the partner is the lowest-id edge outside the
/// pair's common neighbourhood that is not yet used; it misses one of the
/// two family edges, and that edge becomes its match.
pub fn useful_cover_colour(h: &Hypergraph, t: usize, family: &UsefulFamily, lists: &ListAssignment) -> Result<UsefulCover> {
    let m = h.edge_count();
    let tn = t * h.n();
    if m < tn {
        return Err(Error::Precondition(format!("e(H) = {m} is below tn = {tn}")));
    }
    let r = m - tn;
    if family.edges.len() < 2 * r + 2 {
        return Err(Error::Precondition(format!(
            "family has {} edges but 2r + 2 = {} are needed",
            family.edges.len(),
            2 * r + 2
        )));
    }
    family.check(h, t)?;
    let mut used = vec![false; m];
    for &e in &family.edges {
        used[e] = true;
    }
    let mut pairs = Vec::with_capacity(r + 1);
    for (i, (a, b)) in family.pairs().take(r + 1).enumerate() {
        let pick = (0..m).find(|&f| !used[f] && !(h.intersects(f, a) && h.intersects(f, b)));
        let Some(f) = pick else {
            return Err(Error::Internal(format!(
                "no partner outside the common neighbourhood of pair {i} ({a}, {b})"
            )));
        };
        used[f] = true;
        let partner = if h.intersects(f, a) { b } else { a };
        pairs.push((f, partner));
    }
    let matching = ComplementMatching::new(pairs);
    let colouring = colour_from_matching(h, &matching, lists)?;
    Ok(UsefulCover { matching, colouring })
}

/// The case-analysis branch that produced a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchRoute {
    /// Few edges of size at most `k`: all intersecting pairs among them.
    FewSmall,
    /// Few edges of size at most `k − 1`: pairs of size-`≤ k` edges with small intersection.
    FewBelowK,
    /// Size-`k` edges not dominating: pairs of size-`≤ k−1` edges with small intersection.
    BelowKDominant,
    /// Pairs of size-`k` edges through a vertex meeting few small edges.
    GoodVertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GateReport {
    pub route: SearchRoute,
    /// The numeric premise of the route held on this instance.
    pub premise: bool,
    pub found: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UsefulSearch {
    pub family: Option<UsefulFamily>,
    pub route: Option<SearchRoute>,
    /// `k` with `k² − k + 2 ≤ n ≤ k² + k + 1`.
    pub k: usize,
    /// `e(H) − tn`, negative when no family is needed.
    pub surplus: i64,
    pub matching_size: usize,
    pub gates: Vec<GateReport>,
}

/// Smallest `k ≥ 1` with `n ≤ k² + k + 1`; for `n ≥ 2` it also satisfies `k² − k + 2 ≤ n`.
pub fn plane_order_bracket(n: usize) -> usize {
    let mut k = 1;
    while k * k + k + 1 < n {
        k += 1;
    }
    k
}

/// Executable version of the extremal case analysis.
///
/// Edges split into `A⁻` (size `≤ k−1`), `A⁺` (size `k`) and `B` (larger).
/// Four routes are tried in order; each one's numeric gate is evaluated and
/// reported, and every route is attempted regardless since a family is
/// accepted only after [`UsefulFamily::check`]. Pools exclude the edges of a
/// maximum complement matching, so remaining edges pairwise intersect.
pub fn find_useful_family(h: &Hypergraph, t: usize, alpha: &Rational, delta: &Rational) -> Result<UsefulSearch> {
    for (name, x) in [("alpha", alpha), ("delta", delta)] {
        if !(x.is_positive() && *x < Rational::one()) {
            return Err(Error::Domain(format!("{name} must lie in (0,1), got {}", rational::display(x))));
        }
    }
    let n = h.n();
    let m = h.edge_count();
    let k = plane_order_bracket(n.max(2));
    let surplus = m as i64 - (t * n) as i64;
    let matching = maximal_complement_matching(h, MatchingStrategy::Maximum);
    let mut search = UsefulSearch {
        family: None,
        route: None,
        k,
        surplus,
        matching_size: matching.len(),
        gates: Vec::new(),
    };
    if surplus <= 0 {
        return Ok(search);
    }
    let need = surplus as usize + 1;
    let mut in_matching = vec![false; m];
    for e in matching.covered() {
        in_matching[e] = true;
    }
    let a_minus: Vec<usize> = (0..m).filter(|&e| h.edge_size(e) < k).collect();
    let a_plus: Vec<usize> = (0..m).filter(|&e| h.edge_size(e) == k).collect();
    let a_all: Vec<usize> = (0..m).filter(|&e| h.edge_size(e) <= k).collect();
    let free = |pool: &[usize]| pool.iter().copied().filter(|&e| !in_matching[e]).collect::<Vec<_>>();
    let tr = int(t);
    let alpha_k = alpha * int(k);
    let small_meet = |e: usize, f: usize| int(h.intersection_size(e, f)) <= alpha_k;

    let attempts: [(SearchRoute, bool, Vec<usize>, bool); 3] = [
        (SearchRoute::FewSmall, int(a_all.len()) <= &tr / (int(2) * delta), free(&a_all), false),
        (SearchRoute::FewBelowK, int(a_minus.len()) <= &tr / (int(4) * delta), free(&a_all), true),
        (
            SearchRoute::BelowKDominant,
            rational::at_most_scaled_sqrt(a_plus.len(), &(alpha * int(a_minus.len())), n),
            free(&a_minus),
            true,
        ),
    ];
    for (route, premise, pool, restrict) in attempts {
        let found = pair_up(h, t, &pool, need, |e, f| !restrict || small_meet(e, f))?;
        search.gates.push(GateReport { route, premise, found: found.is_some() });
        if let Some(pairs) = found {
            return Ok(finish(h, t, search, route, pairs, None));
        }
    }

    // Vertices lying in many edges of size below k.
    let bad_threshold = &tr / (int(4) * delta);
    let mut below_k_degree = vec![0usize; n];
    for &e in &a_minus {
        for &v in h.edge(e) {
            below_k_degree[v as usize] += 1;
        }
    }
    let v_bad: Vec<bool> = below_k_degree.iter().map(|&d| int(d) >= bad_threshold).collect();
    let delta_n = delta * int(n);
    let a_plus_bad: Vec<bool> = (0..m)
        .map(|e| {
            let hits = h.edge(e).iter().filter(|&&v| v_bad[v as usize]).count();
            int(hits * hits) >= delta_n
        })
        .collect();
    let pool: Vec<usize> = a_plus.iter().copied().filter(|&e| !in_matching[e] && !a_plus_bad[e]).collect();
    let degree_gate = int(2) * &tr / (alpha * alpha);
    let mut used = vec![false; m];
    let mut pairs = Vec::new();
    let mut witnesses = Vec::new();
    let mut gate_open = true;
    while pairs.len() < need {
        let mut best: Option<(usize, usize, usize)> = None;
        let mut max_degree = 0;
        for w in (0..n).filter(|&w| !v_bad[w]) {
            let through: Vec<usize> = pool.iter().copied().filter(|&e| !used[e] && h.contains(e, w)).collect();
            max_degree = max_degree.max(through.len());
            if best.is_some() {
                continue;
            }
            'outer: for (i, &e) in through.iter().enumerate() {
                for &f in &through[i + 1..] {
                    if small_meet(e, f) && is_t_useful(h, t, e, f)? {
                        best = Some((e, f, w));
                        break 'outer;
                    }
                }
            }
        }
        if int(max_degree) <= degree_gate {
            gate_open = false;
        }
        let Some((e, f, w)) = best else { break };
        used[e] = true;
        used[f] = true;
        pairs.push((e, f));
        witnesses.push(Some(w));
    }
    let premise = int(a_minus.len()) > bad_threshold
        && !rational::at_most_scaled_sqrt(a_plus.len(), &(alpha * int(a_minus.len())), n)
        && gate_open;
    let found = pairs.len() >= need;
    search.gates.push(GateReport { route: SearchRoute::GoodVertex, premise, found });
    if found {
        return Ok(finish(h, t, search, SearchRoute::GoodVertex, pairs, Some(witnesses)));
    }
    Ok(search)
}

/// Greedy pairing within a pool of pairwise-intersecting edges.
fn pair_up(
    h: &Hypergraph,
    t: usize,
    pool: &[usize],
    need: usize,
    allowed: impl Fn(usize, usize) -> bool,
) -> Result<Option<Vec<(usize, usize)>>> {
    let mut used = vec![false; h.edge_count()];
    let mut pairs = Vec::new();
    for (i, &e) in pool.iter().enumerate() {
        if pairs.len() == need {
            break;
        }
        if used[e] {
            continue;
        }
        for &f in &pool[i + 1..] {
            if !used[f] && allowed(e, f) && is_t_useful(h, t, e, f)? {
                used[e] = true;
                used[f] = true;
                pairs.push((e, f));
                break;
            }
        }
    }
    Ok((pairs.len() >= need).then_some(pairs))
}

fn finish(
    h: &Hypergraph,
    t: usize,
    mut search: UsefulSearch,
    route: SearchRoute,
    pairs: Vec<(usize, usize)>,
    witnesses: Option<Vec<Option<usize>>>,
) -> UsefulSearch {
    let family = UsefulFamily {
        edges: pairs.iter().flat_map(|&(a, b)| [a, b]).collect(),
        pair_witnesses: witnesses.unwrap_or_else(|| vec![None; pairs.len()]),
    };
    debug_assert!(family.check(h, t).is_ok());
    search.family = Some(family);
    search.route = Some(route);
    search
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalParams {
    #[serde(serialize_with = "rational::serialize")]
    pub alpha: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub delta: Rational,
    /// Budget for the exact fallback; `None` disables it.
    pub exact_budget: Option<OracleBudget>,
}

impl Default for ExtremalParams {
    fn default() -> Self {
        ExtremalParams {
            alpha: rational::rat(1, 4),
            delta: rational::rat(1, 10),
            exact_budget: Some(OracleBudget::default()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rung {
    AllDistinct,
    SingleComplementPair,
    UsefulCover,
    MaximumMatching,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RungAttempt {
    pub rung: Rung,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalOutcome {
    pub colouring: Option<EdgeColouring>,
    pub rung: Option<Rung>,
    /// Every edge has size at least `(1 − δ)√n`.
    pub size_premise: bool,
    pub attempts: Vec<RungAttempt>,
    pub search: Option<UsefulSearch>,
}

/// The colouring ladder for the extremal regime. Every rung's output is
/// validated against the lists before it is accepted.
pub fn colour_extremal(h: &Hypergraph, t: usize, lists: &ListAssignment, params: &ExtremalParams) -> Result<ExtremalOutcome> {
    let n = h.n();
    if n < 2 {
        return Err(Error::Domain(format!("the extremal ladder needs n >= 2, got {n}")));
    }
    let m = h.edge_count();
    if lists.len() != m {
        return Err(Error::ListSize { expected: m, got: lists.len() });
    }
    let tn = t * n;
    let factor = Rational::one() - &params.delta;
    let size_premise = (0..m).all(|e| rational::at_least_scaled_sqrt(h.edge_size(e), &factor, n));
    let mut out = ExtremalOutcome { colouring: None, rung: None, size_premise, attempts: Vec::new(), search: None };
    let accept = |c: EdgeColouring| -> Result<EdgeColouring> {
        let report = h.validate_colouring(&c, Some(lists))?;
        if report.valid {
            Ok(c)
        } else {
            Err(Error::Internal(format!("extremal rung produced an invalid colouring: {:?}", report.violations)))
        }
    };
    let record = |out: &mut ExtremalOutcome, rung: Rung, res: Result<EdgeColouring>| -> Result<bool> {
        match res {
            Ok(c) => {
                out.colouring = Some(accept(c)?);
                out.rung = Some(rung);
                out.attempts.push(RungAttempt { rung, outcome: "success".into() });
                Ok(true)
            }
            Err(Error::Precondition(msg)) => {
                out.attempts.push(RungAttempt { rung, outcome: msg });
                Ok(false)
            }
            Err(other) => Err(other),
        }
    };

    if m < tn && record(&mut out, Rung::AllDistinct, colour_from_matching(h, &ComplementMatching::empty(), lists))? {
        return Ok(out);
    }
    if m == tn && !h.is_intersecting() {
        let pair = (0..m).find_map(|e| (e + 1..m).find(|&f| !h.intersects(e, f)).map(|f| (e, f)));
        let matching = ComplementMatching::new(pair.into_iter().collect());
        if record(&mut out, Rung::SingleComplementPair, colour_from_matching(h, &matching, lists))? {
            return Ok(out);
        }
    }
    if m > tn {
        let search = find_useful_family(h, t, &params.alpha, &params.delta)?;
        let family = search.family.clone();
        out.search = Some(search);
        match family {
            Some(f) => {
                let res = useful_cover_colour(h, t, &f, lists).map(|c| c.colouring);
                if record(&mut out, Rung::UsefulCover, res)? {
                    return Ok(out);
                }
            }
            None => out.attempts.push(RungAttempt { rung: Rung::UsefulCover, outcome: "no useful family found".into() }),
        }
    }
    let matching = maximal_complement_matching(h, MatchingStrategy::Maximum);
    if record(&mut out, Rung::MaximumMatching, colour_from_matching(h, &matching, lists))? {
        return Ok(out);
    }
    match &params.exact_budget {
        Some(budget) if m <= budget.max_edges => match oracle::exact_list_colourable(h, lists, budget)? {
            ListColourability::Yes(c) => {
                record(&mut out, Rung::Exact, Ok(c))?;
            }
            ListColourability::No => out.attempts.push(RungAttempt { rung: Rung::Exact, outcome: "not colourable from these lists".into() }),
            ListColourability::BudgetExceeded => {
                out.attempts.push(RungAttempt { rung: Rung::Exact, outcome: "budget exceeded".into() })
            }
        },
        _ => out.attempts.push(RungAttempt { rung: Rung::Exact, outcome: "outside exact budget".into() }),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{projective_plane, t_fold};
    use crate::rational::rat;

    fn k4() -> Hypergraph {
        Hypergraph::new(4, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap()
    }

    fn two_disjoint() -> Hypergraph {
        Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap()
    }

    #[test]
    fn useful_pairs() {
        let f = projective_plane(2).unwrap();
        for e in 0..7 {
            for g in e + 1..7 {
                assert!(!is_t_useful(&f, 1, e, g).unwrap());
            }
        }
        let h = Hypergraph::new(6, vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 3, 5]]).unwrap();
        assert!(is_t_useful(&h, 1, 0, 1).unwrap());
        assert!(!is_t_useful(&two_disjoint(), 1, 0, 1).unwrap());
        assert!(is_t_useful(&h, 1, 0, 0).is_err());
    }

    #[test]
    fn complement_matchings() {
        let f = projective_plane(2).unwrap();
        assert!(maximal_complement_matching(&f, MatchingStrategy::Maximum).is_empty());
        let m = maximal_complement_matching(&k4(), MatchingStrategy::Maximum);
        assert_eq!(m.pairs, vec![(0, 5), (1, 4), (2, 3)]);
        assert_eq!(maximal_complement_matching(&two_disjoint(), MatchingStrategy::Greedy).len(), 1);
        let four = Hypergraph::new(8, (0..4).map(|i| vec![2 * i, 2 * i + 1])).unwrap();
        assert_eq!(maximal_complement_matching(&four, MatchingStrategy::Maximum).len(), 2);
    }

    #[test]
    fn colouring_from_matchings() {
        let h = k4();
        let m = maximal_complement_matching(&h, MatchingStrategy::Maximum);
        let c = colour_from_matching(&h, &m, &ListAssignment::uniform(6, 3)).unwrap();
        let r = h.validate_colouring(&c, Some(&ListAssignment::uniform(6, 3))).unwrap();
        assert!(r.valid);
        assert_eq!(r.colour_count, 3);

        let f = projective_plane(2).unwrap();
        let c = colour_from_matching(&f, &ComplementMatching::empty(), &ListAssignment::uniform(7, 7)).unwrap();
        assert_eq!(c.colour_count(), 7);

        let d = two_disjoint();
        let lists = ListAssignment::new(vec![vec![5], vec![5]]);
        let c = colour_from_matching(&d, &ComplementMatching::new(vec![(0, 1)]), &lists).unwrap();
        assert_eq!(c.colours, vec![5, 5]);
        assert!(matches!(
            colour_from_matching(&f, &ComplementMatching::empty(), &ListAssignment::uniform(7, 6)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn disjoint_pair_lists_use_hall() {
        // Pairs whose lists never overlap still get a proper colouring.
        let h = k4();
        let m = ComplementMatching::new(vec![(0, 5), (1, 4), (2, 3)]);
        let lists = ListAssignment::new(vec![
            vec![0, 1, 2],
            vec![3, 4, 5],
            vec![6, 7, 8],
            vec![0, 3, 6],
            vec![1, 4, 7],
            vec![2, 5, 8],
        ]);
        let c = colour_from_matching(&h, &m, &lists).unwrap();
        assert!(h.validate_colouring(&c, Some(&lists)).unwrap().valid);
    }

    #[test]
    fn cover_from_a_small_family() {
        // n = 5, t = 1, five edges: r = 0 and one useful pair is enough.
        let h = Hypergraph::new(5, vec![vec![0, 1], vec![0, 2], vec![3, 4], vec![1, 3], vec![2, 4]]).unwrap();
        assert!(is_t_useful(&h, 1, 0, 1).unwrap());
        let fam = UsefulFamily { edges: vec![0, 1], pair_witnesses: vec![None] };
        let lists = ListAssignment::uniform(5, 4);
        let cover = useful_cover_colour(&h, 1, &fam, &lists).unwrap();
        assert_eq!(cover.matching.pairs, vec![(0, 2)]);
        assert!(h.validate_colouring(&cover.colouring, Some(&lists)).unwrap().valid);
        assert!(cover.colouring.colour_count() <= 4);

        let short = Hypergraph::new(5, vec![vec![0, 1], vec![0, 2], vec![3, 4]]).unwrap();
        assert!(useful_cover_colour(&short, 1, &fam, &lists.select(&[0, 1, 2])).is_err());
    }

    #[test]
    fn no_family_on_planes() {
        let f = projective_plane(2).unwrap();
        assert!(find_useful_family(&f, 1, &rat(1, 4), &rat(1, 10)).unwrap().family.is_none());
        let f2 = t_fold(&f, 2).unwrap();
        assert!(find_useful_family(&f2, 2, &rat(1, 4), &rat(1, 10)).unwrap().family.is_none());
        let fam = UsefulFamily { edges: vec![0, 1], pair_witnesses: vec![None] };
        assert!(fam.check(&f, 1).is_err());
    }

    #[test]
    fn extremal_ladder_examples() {
        let p = ExtremalParams::default();
        let f = projective_plane(2).unwrap();
        let out = colour_extremal(&f, 1, &ListAssignment::uniform(7, 7), &p).unwrap();
        assert_eq!(out.colouring.unwrap().colour_count(), 7);

        let out = colour_extremal(&k4(), 1, &ListAssignment::uniform(6, 4), &p).unwrap();
        assert_eq!(out.rung, Some(Rung::MaximumMatching));
        assert!(out.colouring.unwrap().colour_count() <= 3);

        let lists = ListAssignment::new(vec![vec![9], vec![9]]);
        let out = colour_extremal(&two_disjoint(), 1, &lists, &p).unwrap();
        assert_eq!(out.colouring.unwrap().colours, vec![9, 9]);
    }

    #[test]
    fn bracket() {
        assert_eq!(plane_order_bracket(7), 2);
        assert_eq!(plane_order_bracket(8), 3);
        assert_eq!(plane_order_bracket(13), 3);
        for n in 2..200 {
            let k = plane_order_bracket(n);
            assert!(k * k - k + 2 <= n && n <= k * k + k + 1);
        }
    }
}
