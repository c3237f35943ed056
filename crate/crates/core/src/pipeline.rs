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

//! small-scale stand-ins for the asymptotic colouring steps, and the two
//! desk-scale stand-ins for the asymptotic colouring theorems, and the two
//! scripted pipelines with per-stage reports.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::{self, ExtremalOutcome, ExtremalParams};
use crate::hypercore::{EdgeColouring, Hypergraph, ListAssignment};
use crate::oracle::{self, ListColourability, OracleBudget};
use crate::ordering::{self, PartitionCertificate};
use crate::rational::{self, int, rat, Rational};

/// Reservation draws before giving up.
pub const RESERVATION_RETRIES: usize = 100;
/// Random-order attempts in [`colour_small`] before the deterministic pass.
pub const SMALL_RANDOM_RETRIES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeSplit {
    pub sml: Vec<usize>,
    pub med: Vec<usize>,
    pub lrg: Vec<usize>,
    pub r0: usize,
    pub r1: usize,
}

pub fn split_by_size(h: &Hypergraph, r0: usize, r1: usize) -> Result<SizeSplit> {
    if r1 == 0 || r1 > r0 {
        return Err(Error::Domain(format!("size thresholds need 1 <= r1 <= r0, got r1 = {r1}, r0 = {r0}")));
    }
    let mut split = SizeSplit { sml: Vec::new(), med: Vec::new(), lrg: Vec::new(), r0, r1 };
    for e in 0..h.edge_count() {
        let s = h.edge_size(e);
        if s <= r1 {
            split.sml.push(e);
        } else if s <= r0 {
            split.med.push(e);
        } else {
            split.lrg.push(e);
        }
    }
    Ok(split)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReservedColours {
    /// Sorted reserved colours.
    pub colours: Vec<u32>,
    #[serde(serialize_with = "rational::serialize")]
    pub gamma: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub xi: Rational,
    pub seed: u64,
    pub retries_used: usize,
}

impl ReservedColours {
    pub fn contains(&self, c: u32) -> bool {
        self.colours.binary_search(&c).is_ok()
    }

    /// First edge whose reserved share leaves the window, if any.
    pub fn window_violation(&self, lists: &ListAssignment) -> Option<usize> {
        window_violation(&self.colours, lists, &self.gamma, &self.xi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Reservation {
    Accepted(ReservedColours),
    /// Every draw had an edge outside its window; `last` is the final draw.
    Failed { seed: u64, attempts: usize, last: Vec<u32>, edge: usize },
}

impl Reservation {
    pub fn accepted(&self) -> Option<&ReservedColours> {
        match self {
            Reservation::Accepted(r) => Some(r),
            Reservation::Failed { .. } => None,
        }
    }

    /// The accepted set, or the final rejected draw.
    pub fn colours(&self) -> &[u32] {
        match self {
            Reservation::Accepted(r) => &r.colours,
            Reservation::Failed { last, .. } => last,
        }
    }
}

fn window_violation(reserved: &[u32], lists: &ListAssignment, gamma: &Rational, xi: &Rational) -> Option<usize> {
    (0..lists.len()).find(|&e| {
        let list = lists.get(e);
        let hits = list.iter().filter(|c| reserved.binary_search(c).is_ok()).count();
        let k = int(list.len());
        let lo = (gamma - xi) * &k;
        let hi = (gamma + xi) * &k;
        let h = int(hits);
        h < lo || h > hi
    })
}

fn as_u64_fraction(x: &Rational) -> Result<(u64, u64)> {
    match (x.numer().to_u64(), x.denom().to_u64()) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(Error::Domain(format!("probability {} has too large a denominator", rational::display(x)))),
    }
}

/// Includes each colour of the palette independently with probability `γ`
/// and accepts the draw iff `|R ∩ C(e)| ∈ [(γ−ξ)|C(e)|, (γ+ξ)|C(e)|]` for
/// every edge. Draw `i` uses sub-seed `seed + i`.
pub fn reserve_colours(lists: &ListAssignment, gamma: &Rational, xi: &Rational, seed: u64) -> Result<Reservation> {
    if gamma.is_negative() || *gamma > Rational::one() {
        return Err(Error::Domain(format!("gamma must lie in [0,1], got {}", rational::display(gamma))));
    }
    if !xi.is_positive() || *xi >= Rational::one() {
        return Err(Error::Domain(format!("xi must lie in (0,1), got {}", rational::display(xi))));
    }
    let (num, den) = as_u64_fraction(gamma)?;
    let palette = lists.palette();
    let mut last = Vec::new();
    let mut edge = 0;
    for attempt in 0..RESERVATION_RETRIES {
        let sub = seed.wrapping_add(attempt as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(sub);
        let reserved: Vec<u32> = palette.iter().copied().filter(|_| rng.gen_range(0..den) < num).collect();
        match window_violation(&reserved, lists, gamma, xi) {
            None => {
                return Ok(Reservation::Accepted(ReservedColours {
                    colours: reserved,
                    gamma: gamma.clone(),
                    xi: xi.clone(),
                    seed: sub,
                    retries_used: attempt,
                }))
            }
            Some(e) => {
                last = reserved;
                edge = e;
            }
        }
    }
    Ok(Reservation::Failed { seed, attempts: RESERVATION_RETRIES, last, edge })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SmallMethod {
    RandomGreedy,
    DegreeGreedy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallOutcome {
    /// Colours aligned with the requested ids.
    pub colours: Option<Vec<u32>>,
    pub method: Option<SmallMethod>,
    pub attempts: usize,
    pub seed: u64,
}

/// Lists the edges of `ids` that intersect `e`, excluding `e`.
fn local_neighbours(h: &Hypergraph, ids: &[usize]) -> Vec<Vec<usize>> {
    (0..ids.len())
        .map(|i| (0..ids.len()).filter(|&j| j != i && h.intersects(ids[i], ids[j])).collect())
        .collect()
}

fn check_lists(h: &Hypergraph, lists: &ListAssignment) -> Result<()> {
    if lists.len() != h.edge_count() {
        return Err(Error::ListSize { expected: h.edge_count(), got: lists.len() });
    }
    Ok(())
}

fn check_ids(h: &Hypergraph, ids: &[usize]) -> Result<()> {
    match ids.iter().find(|&&e| e >= h.edge_count()) {
        Some(&e) => Err(Error::EdgeOutOfRange(e)),
        None => Ok(()),
    }
}

/// Colours the edges `ids` of `h` from `C(e) \ forbidden[e]`, properly among
/// themselves. First tries random edge orders with a uniformly random free
/// colour per edge, then a deterministic smallest-free-colour pass in order
/// of descending line-graph degree. `forbidden` is indexed by edge id.
pub fn colour_small(
    h: &Hypergraph,
    ids: &[usize],
    lists: &ListAssignment,
    forbidden: &[Vec<u32>],
    seed: u64,
) -> Result<SmallOutcome> {
    check_lists(h, lists)?;
    check_ids(h, ids)?;
    if forbidden.len() != h.edge_count() {
        return Err(Error::ListSize { expected: h.edge_count(), got: forbidden.len() });
    }
    let avail: Vec<Vec<u32>> = ids
        .iter()
        .map(|&e| lists.get(e).iter().copied().filter(|c| !forbidden[e].contains(c)).collect())
        .collect();
    let nbrs = local_neighbours(h, ids);
    let mut out = SmallOutcome { colours: None, method: None, attempts: 0, seed };
    if avail.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    let free = |i: usize, col: &[Option<u32>]| -> Vec<u32> {
        avail[i].iter().copied().filter(|c| nbrs[i].iter().all(|&j| col[j] != Some(*c))).collect()
    };
    for attempt in 0..SMALL_RANDOM_RETRIES {
        out.attempts += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.shuffle(&mut rng);
        let mut col: Vec<Option<u32>> = vec![None; ids.len()];
        let mut stuck = false;
        for i in order {
            let choices = free(i, &col);
            match choices.choose(&mut rng) {
                Some(&c) => col[i] = Some(c),
                None => {
                    stuck = true;
                    break;
                }
            }
        }
        if !stuck {
            out.colours = Some(col.into_iter().map(Option::unwrap).collect());
            out.method = Some(SmallMethod::RandomGreedy);
            return Ok(out);
        }
    }
    out.attempts += 1;
    let mut order: Vec<usize> = (0..ids.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(nbrs[i].len()), i));
    let mut col: Vec<Option<u32>> = vec![None; ids.len()];
    for i in order {
        match free(i, &col).first() {
            Some(&c) => col[i] = Some(c),
            None => return Ok(out),
        }
    }
    out.colours = Some(col.into_iter().map(Option::unwrap).collect());
    out.method = Some(SmallMethod::DegreeGreedy);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseParams {
    pub t: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub zeta: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub alpha: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparsePremise {
    /// Smallest edge size in the block.
    pub r: usize,
    pub max_size: usize,
    /// `max ≤ (1+α)·r`.
    pub size_window: bool,
    /// `r ≤ (1−ζ)√n`.
    pub small_enough: bool,
    pub codegree_ok: bool,
    #[serde(serialize_with = "rational::serialize")]
    pub target: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseBlock {
    /// Colours aligned with the requested ids.
    pub colours: Option<Vec<u32>>,
    /// `None` for an empty block.
    pub premise: Option<SparsePremise>,
    pub colours_used: usize,
    pub within_target: bool,
}

/// Smallest-last order of the line graph restricted to `ids`: repeatedly
/// removes a vertex of minimum remaining degree; the result lists the last
/// removed first.
fn smallest_last(nbrs: &[Vec<usize>]) -> Vec<usize> {
    let k = nbrs.len();
    let mut deg: Vec<usize> = nbrs.iter().map(Vec::len).collect();
    let mut gone = vec![false; k];
    let mut removed = Vec::with_capacity(k);
    for _ in 0..k {
        let v = (0..k).filter(|&v| !gone[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        gone[v] = true;
        removed.push(v);
        for &u in &nbrs[v] {
            if !gone[u] {
                deg[u] -= 1;
            }
        }
    }
    removed.reverse();
    removed
}

/// Colours the block `ids` greedily along a smallest-last order of its line
/// graph and reports the sparse-block premises and the `(1 − ζ/500)tn`
/// target without asserting either.
pub fn colour_sparse_block(
    h: &Hypergraph,
    ids: &[usize],
    lists: &ListAssignment,
    params: &SparseParams,
) -> Result<SparseBlock> {
    check_lists(h, lists)?;
    check_ids(h, ids)?;
    if ids.is_empty() {
        return Ok(SparseBlock { colours: Some(Vec::new()), premise: None, colours_used: 0, within_target: true });
    }
    let n = h.n();
    let r = ids.iter().map(|&e| h.edge_size(e)).min().unwrap();
    let max_size = ids.iter().map(|&e| h.edge_size(e)).max().unwrap();
    let block = h.edge_subset(ids)?;
    let target = (Rational::one() - &params.zeta / int(500)) * int(params.t * n);
    let premise = SparsePremise {
        r,
        max_size,
        size_window: int(max_size) <= (Rational::one() + &params.alpha) * int(r),
        small_enough: rational::at_most_scaled_sqrt(r, &(Rational::one() - &params.zeta), n),
        codegree_ok: block.max_codegree() <= params.t,
        target: target.clone(),
    };
    let nbrs = local_neighbours(h, ids);
    let mut col: Vec<Option<u32>> = vec![None; ids.len()];
    for i in smallest_last(&nbrs) {
        let pick = lists.get(ids[i]).iter().copied().find(|c| nbrs[i].iter().all(|&j| col[j] != Some(*c)));
        match pick {
            Some(c) => col[i] = Some(c),
            None => {
                return Ok(SparseBlock { colours: None, premise: Some(premise), colours_used: 0, within_target: false })
            }
        }
    }
    let colours: Vec<u32> = col.into_iter().map(Option::unwrap).collect();
    let used = EdgeColouring::new(colours.clone()).colour_count();
    Ok(SparseBlock { colours: Some(colours), premise: Some(premise), colours_used: used, within_target: int(used) <= target })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineParams {
    #[serde(serialize_with = "rational::serialize")]
    pub epsilon: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub delta: Rational,
    /// Reservation scale of the main script.
    #[serde(serialize_with = "rational::serialize")]
    pub gamma: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub sigma: Rational,
    /// `None` means `⌈√n⌉ + 2`, raised to `r1` if smaller.
    pub r0: Option<usize>,
    pub r1: usize,
    /// Largest edge count handed to the exact fallback.
    pub exact_budget: usize,
    pub seed: u64,
    /// Target `tn − 1` colours; requires a non-intersecting hypergraph.
    pub moreover: bool,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            epsilon: rat(1, 4),
            delta: rat(1, 10),
            gamma: rat(1, 8),
            sigma: rat(1, 50),
            r0: None,
            r1: 4,
            exact_budget: 12,
            seed: 0,
            moreover: false,
        }
    }
}

impl PipelineParams {
    fn check(&self) -> Result<()> {
        for (name, x) in [("epsilon", &self.epsilon), ("delta", &self.delta), ("gamma", &self.gamma), ("sigma", &self.sigma)] {
            if !x.is_positive() || *x >= Rational::one() {
                return Err(Error::Domain(format!("{name} must lie in (0,1), got {}", rational::display(x))));
            }
        }
        if self.r1 == 0 {
            return Err(Error::Domain("r1 must be at least 1".into()));
        }
        if let Some(r0) = self.r0 {
            if r0 < self.r1 {
                return Err(Error::Domain(format!("r0 = {r0} is below r1 = {}", self.r1)));
            }
        }
        Ok(())
    }

    pub fn resolved_r0(&self, n: usize) -> usize {
        self.r0.unwrap_or_else(|| {
            let (_, hi) = rational::sqrt_enclosure(&int(n));
            (rational::ceil_to_usize(&hi) + 2).max(self.r1)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Ok,
    Skipped,
    Degraded,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StageCertificate {
    Split(SizeSplit),
    Reservation(Reservation),
    Partition(PartitionCertificate),
    Sparse(SparsePremise),
    Extremal(ExtremalOutcome),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub stage: String,
    pub status: StageStatus,
    /// Distinct colours on the whole hypergraph after the stage.
    pub colours_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<StageCertificate>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelinePremises {
    /// `Δ(H) ≤ (1 − slack)·tn` for the script's slack parameter.
    pub max_degree_ok: bool,
    pub codegree_ok: bool,
    /// Edges of size `(1 ± δ)√n`.
    pub near_root_edges: usize,
    /// `near_root_edges ≤ (1 − δ)tn`.
    pub few_near_root: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineOutcome {
    pub colouring: Option<EdgeColouring>,
    pub colours_used: usize,
    /// The stage that produced the colouring.
    pub finished_by: Option<String>,
    pub failed_stage: Option<String>,
    #[serde(serialize_with = "rational::serialize")]
    pub target: Rational,
    pub within_target: bool,
    pub premises: PipelinePremises,
    pub stages: Vec<StageReport>,
}

fn premises(h: &Hypergraph, t: usize, slack: &Rational, delta: &Rational) -> PipelinePremises {
    let n = h.n();
    let tn = int(t * n);
    let stats = h.degree_stats();
    let lo = Rational::one() - delta;
    let hi = Rational::one() + delta;
    let near_root_edges = (0..h.edge_count())
        .filter(|&e| {
            let s = h.edge_size(e);
            rational::at_least_scaled_sqrt(s, &lo, n) && rational::at_most_scaled_sqrt(s, &hi, n)
        })
        .count();
    PipelinePremises {
        max_degree_ok: int(stats.max_degree) <= (Rational::one() - slack) * &tn,
        codegree_ok: stats.max_codegree <= t,
        near_root_edges,
        few_near_root: int(near_root_edges) <= (Rational::one() - delta) * &tn,
    }
}

/// Working state shared by the scripted stages.
struct Run<'a> {
    h: &'a Hypergraph,
    partial: Vec<Option<u32>>,
    stages: Vec<StageReport>,
}

impl<'a> Run<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        Run { h, partial: vec![None; h.edge_count()], stages: Vec::new() }
    }

    fn used(&self) -> usize {
        let mut cs: Vec<u32> = self.partial.iter().flatten().copied().collect();
        cs.sort_unstable();
        cs.dedup();
        cs.len()
    }

    fn report(&mut self, stage: &str, status: StageStatus, seed: u64, certificate: Option<StageCertificate>, detail: Option<String>) {
        let colours_used = self.used();
        self.stages.push(StageReport { stage: stage.into(), status, colours_used, certificate, seed, detail });
    }

    fn assign(&mut self, ids: &[usize], colours: &[u32]) {
        for (&e, &c) in ids.iter().zip(colours) {
            self.partial[e] = Some(c);
        }
    }

    /// Colours of already-coloured edges intersecting `e`.
    fn blocked(&self, e: usize) -> Vec<u32> {
        (0..self.h.edge_count())
            .filter(|&f| f != e && self.h.intersects(e, f))
            .filter_map(|f| self.partial[f])
            .collect()
    }

    /// Greedy extension along `order`; reports and returns false on a stuck edge.
    fn extend(&mut self, stage: &str, order: &[usize], lists: &ListAssignment, seed: u64) -> bool {
        match ordering::greedy_extend(self.h, order, lists, &mut self.partial) {
            Ok(()) => {
                self.report(stage, if order.is_empty() { StageStatus::Skipped } else { StageStatus::Ok }, seed, None, None);
                true
            }
            Err(e) => {
                self.report(stage, StageStatus::Failed, seed, None, Some(format!("edge {e} has no free colour")));
                false
            }
        }
    }

    fn small(&mut self, stage: &str, ids: &[usize], lists: &ListAssignment, forbidden: &[Vec<u32>], seed: u64) -> Result<bool> {
        if ids.is_empty() {
            self.report(stage, StageStatus::Skipped, seed, None, None);
            return Ok(true);
        }
        let out = colour_small(self.h, ids, lists, forbidden, seed)?;
        match out.colours {
            Some(cs) => {
                self.assign(ids, &cs);
                let detail = format!("{:?} after {} attempts", out.method.unwrap(), out.attempts);
                self.report(stage, StageStatus::Ok, seed, None, Some(detail));
                Ok(true)
            }
            None => {
                self.report(stage, StageStatus::Failed, seed, None, Some(format!("no colouring after {} attempts", out.attempts)));
                Ok(false)
            }
        }
    }

    fn finish(&self) -> Option<EdgeColouring> {
        self.partial.iter().copied().collect::<Option<Vec<u32>>>().map(EdgeColouring::new)
    }
}

/// Stage sub-seeds, spaced so reservation retries never overlap.
fn sub_seed(seed: u64, stage: u64) -> u64 {
    seed.wrapping_add(stage.wrapping_mul(1 << 20))
}

fn reserve_stage(run: &mut Run, lists: &ListAssignment, gamma: &Rational, xi: &Rational, seed: u64, needed: bool) -> Result<Vec<u32>> {
    if !needed {
        run.report("reserve", StageStatus::Skipped, seed, None, Some("no small or medium edges".into()));
        return Ok(Vec::new());
    }
    let res = reserve_colours(lists, gamma, xi, seed)?;
    let status = if res.accepted().is_some() { StageStatus::Ok } else { StageStatus::Degraded };
    let colours = res.colours().to_vec();
    run.report("reserve", status, seed, Some(StageCertificate::Reservation(res)), None);
    Ok(colours)
}

/// Lists split by membership in the reserved set.
fn split_lists(lists: &ListAssignment, reserved: &[u32]) -> (ListAssignment, ListAssignment) {
    let inside = lists.filter(|_, c| reserved.binary_search(&c).is_ok());
    let outside = lists.filter(|_, c| reserved.binary_search(&c).is_err());
    (inside, outside)
}

/// Colours the small edges from `C \ R` minus the colours of intersecting
/// large edges, and asserts they never meet a medium edge's colour.
fn small_stage(run: &mut Run, split: &SizeSplit, outside: &ListAssignment, seed: u64) -> Result<bool> {
    let m = run.h.edge_count();
    let mut is_lrg = vec![false; m];
    for &e in &split.lrg {
        is_lrg[e] = true;
    }
    let mut forbidden = vec![Vec::new(); m];
    for &e in &split.sml {
        forbidden[e] = (0..m)
            .filter(|&f| is_lrg[f] && run.h.intersects(e, f))
            .filter_map(|f| run.partial[f])
            .collect();
    }
    if !run.small("small", &split.sml, outside, &forbidden, seed)? {
        return Ok(false);
    }
    for &e in &split.sml {
        let c = run.partial[e];
        if let Some(&f) = split.med.iter().find(|&&f| run.h.intersects(e, f) && run.partial[f] == c) {
            return Err(Error::Internal(format!("small edge {e} and medium edge {f} share a colour")));
        }
    }
    Ok(true)
}

fn validated(h: &Hypergraph, lists: &ListAssignment, c: EdgeColouring) -> Result<EdgeColouring> {
    let report = h.validate_colouring(&c, Some(lists))?;
    if report.valid {
        Ok(c)
    } else {
        Err(Error::Internal(format!("pipeline produced an invalid colouring: {:?}", report.violations)))
    }
}

fn outcome(h: &Hypergraph, lists: &ListAssignment, run: Run, target: Rational, premises: PipelinePremises, finished_by: Option<&str>) -> Result<PipelineOutcome> {
    let failed_stage = run.stages.iter().rev().find(|s| s.status == StageStatus::Failed).map(|s| s.stage.clone());
    let colouring = match (finished_by, run.finish()) {
        (Some(_), Some(c)) => Some(validated(h, lists, c)?),
        _ => None,
    };
    let colours_used = colouring.as_ref().map_or(0, EdgeColouring::colour_count);
    Ok(PipelineOutcome {
        within_target: colouring.is_some() && int(colours_used) <= target,
        colouring,
        colours_used,
        finished_by: finished_by.map(String::from),
        failed_stage: if finished_by.is_some() { None } else { failed_stage },
        target,
        premises,
        stages: run.stages,
    })
}

/// The stability script: split by size; reserve `R` with `(2σ, σ/2)`;
/// partition the large edges, colour the window block from `C \ R`, the
/// block before it greedily from `C ∩ R`, and the rest greedily from `C \ R`;
/// colour medium edges from `C ∩ R`; colour small edges from `C \ R` minus
/// the colours of intersecting large edges. Any stage may fail.
pub fn colour_stability(h: &Hypergraph, t: usize, lists: &ListAssignment, params: &PipelineParams) -> Result<PipelineOutcome> {
    params.check()?;
    check_lists(h, lists)?;
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    let n = h.n();
    let target = (Rational::one() - &params.sigma) * int(t * n);
    let prem = premises(h, t, &params.delta, &params.delta);
    let mut run = Run::new(h);
    let split = split_by_size(h, params.resolved_r0(n), params.r1)?;
    run.report("split", StageStatus::Ok, params.seed, Some(StageCertificate::Split(split.clone())), None);

    let seed = sub_seed(params.seed, 1);
    let needed = !split.sml.is_empty() || !split.med.is_empty();
    let reserved = reserve_stage(&mut run, lists, &(int(2) * &params.sigma), &(&params.sigma / int(2)), seed, needed)?;
    let (inside, outside) = split_lists(lists, &reserved);

    if split.lrg.is_empty() {
        run.report("large", StageStatus::Skipped, params.seed, None, None);
    } else {
        let sub = h.edge_subset(&split.lrg)?;
        let cert = ordering::partition_stability(&sub, t, &params.sigma, &params.delta, None)?;
        let map = |ids: &[usize]| -> Vec<usize> { ids.iter().map(|&i| split.lrg[i]).collect() };
        let w = map(cert.part("W"));
        let h2 = map(cert.part("H2"));
        let h2_order: Vec<usize> = map(cert.ordering.perm()).into_iter().filter(|e| h2.contains(e)).collect();
        let h1_order: Vec<usize> = {
            let h1 = map(cert.part("H1"));
            map(cert.ordering.perm()).into_iter().filter(|e| h1.contains(e)).collect()
        };
        run.report("partition", StageStatus::Ok, params.seed, Some(StageCertificate::Partition(cert)), None);

        let r_min = w.iter().map(|&e| h.edge_size(e)).min().unwrap_or(0);
        let (root_lo, _) = rational::sqrt_enclosure(&int(n));
        let zeta = if root_lo.is_zero() {
            Rational::zero()
        } else {
            (Rational::one() - int(r_min) / root_lo).max(Rational::zero())
        };
        let block = colour_sparse_block(h, &w, &outside, &SparseParams { t, zeta, alpha: params.delta.clone() })?;
        let cert = block.premise.clone().map(StageCertificate::Sparse);
        match block.colours {
            Some(cs) => {
                run.assign(&w, &cs);
                let status = if w.is_empty() { StageStatus::Skipped } else { StageStatus::Ok };
                run.report("window", status, params.seed, cert, None);
            }
            None => {
                run.report("window", StageStatus::Failed, params.seed, cert, Some("greedy ran out of colours".into()));
                return outcome(h, lists, run, target, prem, None);
            }
        }
        if !run.extend("before_window", &h2_order, &inside, params.seed) || !run.extend("after_window", &h1_order, &outside, params.seed) {
            return outcome(h, lists, run, target, prem, None);
        }
    }

    let forbidden: Vec<Vec<u32>> = (0..h.edge_count()).map(|e| if split.med.contains(&e) { run.blocked(e) } else { Vec::new() }).collect();
    if !run.small("medium", &split.med, &inside, &forbidden, sub_seed(params.seed, 2))? {
        return outcome(h, lists, run, target, prem, None);
    }
    if !small_stage(&mut run, &split, &outside, sub_seed(params.seed, 3))? {
        return outcome(h, lists, run, target, prem, None);
    }
    outcome(h, lists, run, target, prem, Some("stability"))
}

/// The extremal script on its own: split; reserve with `(2γ, γ/2)`;
/// partition medium and large edges; colour the extremal block with the
/// extremal ladder from full lists (reserved lists on medium edges); extend
/// greedily to the rest; colour small edges from `C \ R`.
fn extremal_script(h: &Hypergraph, t: usize, lists: &ListAssignment, params: &PipelineParams, run: &mut Run) -> Result<bool> {
    let n = h.n();
    let split = split_by_size(h, params.resolved_r0(n), params.r1)?;
    run.report("split", StageStatus::Ok, params.seed, Some(StageCertificate::Split(split.clone())), None);
    let seed = sub_seed(params.seed, 4);
    let needed = !split.sml.is_empty() || !split.med.is_empty();
    let reserved = reserve_stage(run, lists, &(int(2) * &params.gamma), &(&params.gamma / int(2)), seed, needed)?;
    let (inside, outside) = split_lists(lists, &reserved);
    let mut is_med = vec![false; h.edge_count()];
    for &e in &split.med {
        is_med[e] = true;
    }
    // Medium edges draw from C ∩ R, large edges from all of C.
    let first_lists = ListAssignment::new(
        (0..h.edge_count()).map(|e| if is_med[e] { inside.get(e).to_vec() } else { lists.get(e).to_vec() }).collect(),
    );

    let big: Vec<usize> = split.med.iter().chain(&split.lrg).copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    if big.is_empty() {
        run.report("partition", StageStatus::Skipped, params.seed, None, None);
    } else {
        let sub = h.edge_subset(&big)?;
        let cert = ordering::partition_extremal(&sub, t, &params.delta, &params.gamma, split.r0, None)?;
        let map = |ids: &[usize]| -> Vec<usize> { ids.iter().map(|&i| big[i]).collect() };
        let perm = map(cert.ordering.perm());
        let h3 = map(cert.part("H3"));
        let in_part = |part: &str| -> Vec<usize> {
            let p = map(cert.part(part));
            perm.iter().copied().filter(|e| p.contains(e)).collect()
        };
        let (h2_order, h1_order) = (in_part("H2"), in_part("H1"));
        run.report("partition", StageStatus::Ok, params.seed, Some(StageCertificate::Partition(cert)), None);

        if h3.is_empty() {
            run.report("extremal_block", StageStatus::Skipped, params.seed, None, None);
        } else if n < 2 {
            run.report("extremal_block", StageStatus::Failed, params.seed, None, Some("needs n >= 2".into()));
            return Ok(false);
        } else {
            let block = h.edge_subset(&h3)?;
            let ext = ExtremalParams {
                alpha: rat(1, 4),
                delta: params.delta.clone(),
                exact_budget: Some(OracleBudget { max_edges: params.exact_budget, ..OracleBudget::default() }),
            };
            let out = extremal::colour_extremal(&block, t, &first_lists.select(&h3), &ext)?;
            match out.colouring.clone() {
                Some(c) => {
                    run.assign(&h3, &c.colours);
                    run.report("extremal_block", StageStatus::Ok, params.seed, Some(StageCertificate::Extremal(out)), None);
                }
                None => {
                    run.report("extremal_block", StageStatus::Failed, params.seed, Some(StageCertificate::Extremal(out)), None);
                    return Ok(false);
                }
            }
        }
        if !run.extend("middle", &h2_order, &first_lists, params.seed) || !run.extend("rest", &h1_order, &first_lists, params.seed) {
            return Ok(false);
        }
    }
    small_stage(run, &split, &outside, sub_seed(params.seed, 5))
}

/// The main ladder: the stability script; then the extremal script; then the
/// extremal colouring ladder on the whole hypergraph; then the exact oracle
/// when `e(H)` is within the exact budget. The first success is validated and
/// returned. The target is `tn`, or `tn − 1` with `moreover`.
pub fn colour_main(h: &Hypergraph, t: usize, lists: &ListAssignment, params: &PipelineParams) -> Result<PipelineOutcome> {
    params.check()?;
    check_lists(h, lists)?;
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    if params.moreover && h.is_intersecting() {
        return Err(Error::Precondition("the tn - 1 target needs a non-intersecting hypergraph".into()));
    }
    let n = h.n();
    let target = int(t * n) - if params.moreover { int(1) } else { int(0) };
    let prem = premises(h, t, &params.epsilon, &params.delta);

    let stab = colour_stability(h, t, lists, params)?;
    let mut run = Run::new(h);
    for mut s in stab.stages {
        s.stage = format!("stability.{}", s.stage);
        run.stages.push(s);
    }
    if let Some(c) = stab.colouring {
        run.partial = c.colours.into_iter().map(Some).collect();
        return outcome(h, lists, run, target, prem, Some("stability"));
    }

    let mut script = Run::new(h);
    let ok = extremal_script(h, t, lists, params, &mut script)?;
    for mut s in std::mem::take(&mut script.stages) {
        s.stage = format!("main.{}", s.stage);
        run.stages.push(s);
    }
    if ok {
        run.partial = script.partial;
        return outcome(h, lists, run, target, prem, Some("main"));
    }

    if n >= 2 {
        let ext = ExtremalParams { alpha: rat(1, 4), delta: params.delta.clone(), exact_budget: None };
        let out = extremal::colour_extremal(h, t, lists, &ext)?;
        let found = out.colouring.clone();
        let status = if found.is_some() { StageStatus::Ok } else { StageStatus::Failed };
        run.partial = vec![None; h.edge_count()];
        if let Some(c) = &found {
            run.partial = c.colours.iter().copied().map(Some).collect();
        }
        run.report("whole_extremal", status, params.seed, Some(StageCertificate::Extremal(out)), None);
        if found.is_some() {
            return outcome(h, lists, run, target, prem, Some("whole_extremal"));
        }
    } else {
        run.report("whole_extremal", StageStatus::Skipped, params.seed, None, Some("needs n >= 2".into()));
    }

    if h.edge_count() > params.exact_budget {
        run.report("exact", StageStatus::Skipped, params.seed, None, Some(format!("{} edges exceed the exact budget", h.edge_count())));
        return outcome(h, lists, run, target, prem, None);
    }
    let budget = OracleBudget { max_edges: params.exact_budget, ..OracleBudget::default() };
    match oracle::exact_list_colourable(h, lists, &budget)? {
        ListColourability::Yes(c) => {
            run.partial = c.colours.into_iter().map(Some).collect();
            run.report("exact", StageStatus::Ok, params.seed, None, None);
            outcome(h, lists, run, target, prem, Some("exact"))
        }
        ListColourability::No => {
            run.report("exact", StageStatus::Failed, params.seed, None, Some("not colourable from these lists".into()));
            outcome(h, lists, run, target, prem, None)
        }
        ListColourability::BudgetExceeded => {
            run.report("exact", StageStatus::Failed, params.seed, None, Some("budget exceeded".into()));
            outcome(h, lists, run, target, prem, None)
        }
    }
}
