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

//! Independent rechecks of structural invariants on a single instance.
//!
//! Nothing here reuses the routines it checks: forward degrees, partition
//! flags and chromatic numbers are recomputed from scratch.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::extremal::{self, MatchingStrategy};
use crate::hypercore::{self, Hypergraph, SimpleGraph};
use crate::oracle::{self, ChromaticIndex, OracleBudget};
use crate::ordering::{self, EdgeOrdering, PartitionCertificate};
use crate::rational::{self, int, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub name: String,
    pub holds: bool,
    /// Number of individual comparisons made.
    pub checked: usize,
    /// Set when the check was skipped because its premise failed.
    pub skipped: Option<String>,
    pub counterexample: Option<String>,
}

impl InvariantCheck {
    fn new(name: &str) -> Self {
        InvariantCheck { name: name.into(), holds: true, checked: 0, skipped: None, counterexample: None }
    }

    fn skip(name: &str, why: impl Into<String>) -> Self {
        InvariantCheck { skipped: Some(why.into()), ..InvariantCheck::new(name) }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.holds {
            self.holds = false;
            self.counterexample = Some(what());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub t: usize,
    pub checks: Vec<InvariantCheck>,
    pub all_hold: bool,
}

/// Every vertex lies in at most `t(n−1)/(r−1)` edges of size at least `r`.
pub fn degree_by_size(h: &Hypergraph, t: usize) -> InvariantCheck {
    let mut c = InvariantCheck::new("degree_by_size");
    let n = h.n();
    let max_size = h.edges().iter().map(Vec::len).max().unwrap_or(0);
    let inc = h.incidence();
    for r in 2..=max_size.max(2) {
        for (v, edges) in inc.iter().enumerate() {
            let d = edges.iter().filter(|&&e| h.edge_size(e) >= r).count();
            c.record(d * (r - 1) <= t * n.saturating_sub(1), || format!("vertex {v}, r = {r}: degree {d}"));
        }
    }
    c
}

/// For `α|e| ≥ 2`, at most `2t/α²` edges meet `e` in at least `α|e|` vertices.
pub fn heavy_intersections(h: &Hypergraph, t: usize, alphas: &[Rational]) -> InvariantCheck {
    let mut c = InvariantCheck::new("heavy_intersections");
    for alpha in alphas {
        for e in 0..h.edge_count() {
            let size = int(h.edge_size(e));
            if alpha * &size < int(2) {
                continue;
            }
            let heavy = (0..h.edge_count()).filter(|&f| int(h.intersection_size(e, f)) >= alpha * &size).count();
            let bound = int(2 * t) / (alpha * alpha);
            c.record(int(heavy) <= bound, || format!("edge {e}, alpha = {}: {heavy} heavy edges", rational::display(alpha)));
        }
    }
    c
}

/// Counts of neighbours of `e` by size band: `m1` of size at least
/// `(1+α₁)r`, `m2` of size in `[r/(1+α₂), (1+α₁)r)`.
pub fn size_bands(h: &Hypergraph, e: usize, a1: &Rational, a2: &Rational) -> (usize, usize) {
    let r = int(h.edge_size(e));
    let upper = (Rational::one() + a1) * &r;
    let lower = &r / (Rational::one() + a2);
    let (mut m1, mut m2) = (0, 0);
    for f in 0..h.edge_count() {
        if f == e || !h.intersects(e, f) {
            continue;
        }
        let s = int(h.edge_size(f));
        if s >= upper {
            m1 += 1;
        } else if s >= lower {
            m2 += 1;
        }
    }
    (m1, m2)
}

/// The weighted neighbourhood bound `(1+α₁)m₁ + m₂/(1+α₂) ≤ tn(1 + (1+α₂)/(r−1−α₂))`
/// and, when `m₁ + m₂ ≥ t(1−τ)n` and `α₁ > 0`, the far-neighbour bound
/// `m₁ ≤ (τ + (1+α₂+α₂r)/(r−1−α₂))·tn/α₁`. Applies when every edge has size
/// at least `2(1+α₂)²`; pairs violating that premise are skipped.
pub fn neighbourhood_bands(h: &Hypergraph, t: usize, alphas: &[Rational], taus: &[Rational]) -> (InvariantCheck, InvariantCheck) {
    let mut weighted = InvariantCheck::new("weighted_neighbourhood");
    let mut far = InvariantCheck::new("far_neighbours");
    let tn = int(t * h.n());
    let min_size = h.edges().iter().map(Vec::len).min().unwrap_or(0);
    for a1 in alphas {
        for a2 in alphas {
            let one_a2 = Rational::one() + a2;
            if int(min_size) < int(2) * &one_a2 * &one_a2 {
                continue;
            }
            for e in 0..h.edge_count() {
                let r = int(h.edge_size(e));
                let (m1, m2) = size_bands(h, e, a1, a2);
                let denom = &r - Rational::one() - a2;
                let lhs = (Rational::one() + a1) * int(m1) + int(m2) / &one_a2;
                let rhs = &tn * (Rational::one() + &one_a2 / &denom);
                weighted.record(lhs <= rhs, || {
                    format!("edge {e}, alphas ({}, {}): m1 = {m1}, m2 = {m2}", rational::display(a1), rational::display(a2))
                });
                if a1.is_zero() {
                    continue;
                }
                for tau in taus {
                    if int(m1 + m2) < &tn * (Rational::one() - tau) {
                        continue;
                    }
                    let bound = (tau + (&one_a2 + a2 * &r) / &denom) * &tn / a1;
                    far.record(int(m1) <= bound, || format!("edge {e}, tau = {}: m1 = {m1}", rational::display(tau)));
                }
            }
        }
    }
    if weighted.checked == 0 {
        weighted.skipped = Some("no edge-size premise met".into());
    }
    if far.checked == 0 {
        far.skipped = Some("no edge met the neighbourhood premise".into());
    }
    (weighted, far)
}

fn naive_forward(h: &Hypergraph, perm: &[usize]) -> Vec<usize> {
    let mut fwd = vec![0; h.edge_count()];
    for (i, &e) in perm.iter().enumerate() {
        fwd[e] = perm[..i].iter().filter(|&&f| h.intersects(e, f)).count();
    }
    fwd
}

fn rank_of(perm: &[usize]) -> Vec<usize> {
    let mut rank = vec![0; perm.len()];
    for (i, &e) in perm.iter().enumerate() {
        rank[e] = i;
    }
    rank
}

/// Every edge of `earlier` precedes every edge of `later`.
fn precedes(rank: &[usize], earlier: &[usize], later: &[usize]) -> bool {
    earlier.iter().all(|&e| later.iter().all(|&f| rank[e] < rank[f]))
}

fn all_of(part: &[usize], pred: impl Fn(usize) -> bool) -> bool {
    part.iter().all(|&e| pred(e))
}

/// Recomputes the stability-partition flags from parts and ordering.
pub fn recheck_stability(h: &Hypergraph, t: usize, sigma: &Rational, delta: &Rational, cert: &PartitionCertificate) -> Result<Vec<(String, bool)>> {
    let perm = cert.ordering.perm();
    let fwd = naive_forward(h, perm);
    let rank = rank_of(perm);
    let (h1, w, h2) = (cert.part("H1"), cert.part("W"), cert.part("H2"));
    let tn = int(t * h.n());
    let sizes: Vec<usize> = w.iter().map(|&e| h.edge_size(e)).collect();
    let w_max = sizes.iter().copied().max().unwrap_or(0);
    let w_min = sizes.iter().copied().min().unwrap_or(0);
    let vol: Rational = w.iter().map(|&e| rational::choose2(&int(h.edge_size(e)))).sum::<Rational>() / rational::choose2(&int(h.n()));
    let fd3 = precedes(&rank, h2, w) && precedes(&rank, w, h1) && precedes(&rank, h2, h1);
    Ok(vec![
        ("P1".into(), w.is_empty() || int(w_max) <= (Rational::one() + delta) * int(w_min)),
        ("P2".into(), w.is_empty() || vol >= (Rational::one() - delta) * int(t)),
        ("P3".into(), w.is_empty() || all_of(h2, |e| h.edge_size(e) >= w_max)),
        ("FD1".into(), all_of(h1, |e| int(fwd[e]) <= (Rational::one() - int(2) * sigma) * &tn)),
        ("FD2".into(), all_of(h2, |e| int(2000 * fwd[e]) <= tn)),
        ("FD3".into(), fd3),
    ])
}

/// Recomputes the extremal-partition flags from parts and ordering.
pub fn recheck_extremal(h: &Hypergraph, t: usize, delta: &Rational, gamma: &Rational, r0: usize, cert: &PartitionCertificate) -> Result<Vec<(String, bool)>> {
    let perm = cert.ordering.perm();
    let fwd = naive_forward(h, perm);
    let rank = rank_of(perm);
    let (h1, h2, h3) = (cert.part("H1"), cert.part("H2"), cert.part("H3"));
    let n = h.n();
    let tn = t * n;
    let root_factor = Rational::one() - int(2) * delta;
    let p2 = all_of(h3, |e| {
        let s = int(h.edge_size(e));
        !root_factor.is_positive() || &s * &s >= &root_factor * &root_factor * int(n)
    });
    Ok(vec![
        ("P'1".into(), (0..h.edge_count()).filter(|&e| h.edge_size(e) <= r0).all(|e| h1.contains(&e))),
        ("P'2".into(), p2),
        ("FD'1".into(), all_of(h2, |e| fwd[e] + 2 <= tn)),
        ("FD'2".into(), all_of(h1, |e| int(fwd[e]) <= gamma * int(tn))),
        ("FD'3".into(), precedes(&rank, h3, h2) && precedes(&rank, h2, h1) && precedes(&rank, h3, h1)),
    ])
}

fn compare_flags(name: &str, cert: &PartitionCertificate, recomputed: &[(String, bool)]) -> InvariantCheck {
    let mut c = InvariantCheck::new(name);
    for (flag, value) in recomputed {
        let reported = cert.flag(flag);
        c.record(reported == Some(*value), || format!("{flag}: reported {reported:?}, recomputed {value}"));
    }
    c
}

/// Greedy along an ordering succeeds with lists of size `fwddeg(e) + 1`.
pub fn greedy_guarantee(h: &Hypergraph, ord: &EdgeOrdering) -> Result<InvariantCheck> {
    let mut c = InvariantCheck::new("greedy_guarantee");
    let fwd = naive_forward(h, ord.perm());
    let lists = hypercore::ListAssignment::new(fwd.iter().map(|&d| (0..=d as u32).collect()).collect());
    let out = ordering::greedy_list_colour(h, ord, &lists)?;
    let ok = match out.colouring() {
        Some(col) => h.validate_colouring(col, Some(&lists))?.valid,
        None => false,
    };
    c.record(ok, || "greedy failed with lists of size fwddeg + 1".into());
    Ok(c)
}

/// `dual(dual(H)) ≅ H` for hypergraphs without isolated vertices.
pub fn double_dual(h: &Hypergraph) -> Result<InvariantCheck> {
    if h.degrees().contains(&0) {
        return Ok(InvariantCheck::skip("double_dual", "isolated vertex"));
    }
    if h.n() > hypercore::CANONICAL_MAX_VERTICES || h.edge_count() > hypercore::CANONICAL_MAX_EDGES {
        return Ok(InvariantCheck::skip("double_dual", "too large for canonical forms"));
    }
    let mut c = InvariantCheck::new("double_dual");
    let dd = h.dual()?.dual()?;
    c.record(hypercore::is_isomorphic(h, &dd)?, || "dual of the dual is not isomorphic".into());
    Ok(c)
}

/// Chromatic number of a simple graph by iterative deepening over `k`.
pub fn chromatic_number(g: &SimpleGraph) -> usize {
    let k_max = g.vertex_count();
    let mut order: Vec<usize> = (0..k_max).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    (0..=k_max).find(|&k| k_colourable(g, &order, k)).unwrap_or(k_max)
}

fn k_colourable(g: &SimpleGraph, order: &[usize], k: usize) -> bool {
    fn go(g: &SimpleGraph, order: &[usize], k: usize, i: usize, col: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        // Symmetry: the first vertex of each new colour uses the lowest unused colour.
        let used = order[..i].iter().map(|&u| col[u] + 1).max().unwrap_or(0);
        for c in 0..k.min(used + 1) {
            if g.adj[v].iter().all(|&u| col[u] != c) {
                col[v] = c;
                if go(g, order, k, i + 1, col) {
                    return true;
                }
            }
        }
        col[v] = usize::MAX;
        false
    }
    let mut col = vec![usize::MAX; g.vertex_count()];
    go(g, order, k, 0, &mut col)
}

/// `χ'(H) = χ(L(H))`, the edge oracle against a plain vertex colouring.
pub fn line_graph_identity(h: &Hypergraph, budget: &OracleBudget) -> Result<InvariantCheck> {
    if h.edge_count() > 12 {
        return Ok(InvariantCheck::skip("line_graph_identity", "more than 12 edges"));
    }
    let mut c = InvariantCheck::new("line_graph_identity");
    match oracle::exact_chromatic_index(h, budget)? {
        ChromaticIndex::Exact(k) => {
            let chi = chromatic_number(&h.line_graph());
            c.record(k == chi, || format!("chromatic index {k}, line graph chromatic number {chi}"));
        }
        ChromaticIndex::BudgetExceeded => c.skipped = Some("oracle budget exceeded".into()),
    }
    Ok(c)
}

/// Colouring from a maximum complement matching `N` uses at most `e(H) − |N|`
/// colours and is proper.
pub fn matching_colouring(h: &Hypergraph) -> Result<InvariantCheck> {
    let mut c = InvariantCheck::new("matching_colouring");
    let n_match = extremal::maximal_complement_matching(h, MatchingStrategy::Maximum);
    let lists = hypercore::ListAssignment::uniform(h.edge_count(), h.edge_count() as u32);
    let col = extremal::colour_from_matching(h, &n_match, &lists)?;
    let report = h.validate_colouring(&col, Some(&lists))?;
    let bound = h.edge_count() - n_match.len();
    c.record(report.valid && report.colour_count <= bound, || format!("{} colours, bound {bound}", report.colour_count));
    Ok(c)
}

/// Parameters of [`verify_instance`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyParams {
    #[serde(serialize_with = "rational::serialize")]
    pub sigma: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub delta: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub gamma: Rational,
    pub r0: usize,
    pub budget: OracleBudget,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams { sigma: rat(1, 50), delta: rat(1, 10), gamma: rat(1, 4), r0: 2, budget: OracleBudget::default() }
    }
}

/// Runs every check on one instance.
pub fn verify_instance(h: &Hypergraph, t: usize, params: &VerifyParams) -> Result<VerifyReport> {
    let alphas = [int(0), rat(1, 4), rat(1, 2)];
    let heavy = [rat(1, 4), rat(1, 2), rat(3, 4)];
    let taus = [rat(1, 10), rat(1, 2), rat(9, 10)];
    let mut checks = vec![degree_by_size(h, t), heavy_intersections(h, t, &heavy)];
    let (weighted, far) = neighbourhood_bands(h, t, &alphas, &taus);
    checks.push(weighted);
    checks.push(far);
    let stab = ordering::partition_stability(h, t, &params.sigma, &params.delta, None)?;
    checks.push(compare_flags("stability_flags", &stab, &recheck_stability(h, t, &params.sigma, &params.delta, &stab)?));
    checks.push(greedy_guarantee(h, &stab.ordering)?);
    let ext = ordering::partition_extremal(h, t, &params.delta, &params.gamma, params.r0, None)?;
    checks.push(compare_flags("extremal_flags", &ext, &recheck_extremal(h, t, &params.delta, &params.gamma, params.r0, &ext)?));
    checks.push(greedy_guarantee(h, &ext.ordering)?);
    checks.push(double_dual(h)?);
    checks.push(line_graph_identity(h, &params.budget)?);
    checks.push(matching_colouring(h)?);
    let all_hold = checks.iter().all(|c| c.holds);
    Ok(VerifyReport { t, checks, all_hold })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{near_pencil, projective_plane, t_fold};

    #[test]
    fn chromatic_numbers() {
        let c5 = Hypergraph::new(5, (0..5).map(|i| vec![i, (i + 1) % 5])).unwrap().dual().unwrap();
        // The dual of C5 is C5 again; its line graph is C5.
        assert_eq!(chromatic_number(&c5.line_graph()), 3);
        let f = projective_plane(2).unwrap();
        assert_eq!(chromatic_number(&f.line_graph()), 7);
    }

    #[test]
    fn fano_passes_everything() {
        let f = projective_plane(2).unwrap();
        let r = verify_instance(&f, 1, &VerifyParams::default()).unwrap();
        assert!(r.all_hold, "{:?}", r.checks);
        let f2 = t_fold(&f, 2).unwrap();
        let r = verify_instance(&f2, 2, &VerifyParams::default()).unwrap();
        assert!(r.all_hold, "{:?}", r.checks);
    }

    #[test]
    fn wrong_t_is_caught() {
        let f2 = t_fold(&projective_plane(2).unwrap(), 2).unwrap();
        // Claiming codegree 1: each vertex lies in 6 edges of size 3, above 1·6/2.
        let c = degree_by_size(&f2, 1);
        assert!(!c.holds);
    }

    #[test]
    fn near_pencil_checks() {
        let np = near_pencil(6).unwrap();
        let r = verify_instance(&np, 1, &VerifyParams::default()).unwrap();
        assert!(r.all_hold, "{:?}", r.checks);
    }

    #[test]
    fn band_counts() {
        let np = near_pencil(5).unwrap();
        // Edge 1 = {0,1}: neighbours are the big edge and the other three pairs.
        assert_eq!(size_bands(&np, 1, &int(0), &int(0)), (4, 0));
        assert_eq!(size_bands(&np, 1, &rat(1, 2), &int(0)), (1, 3));
    }
}
