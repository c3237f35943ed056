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

//! Edge orderings with forward-degree guarantees.
//!
//! The forward degree of an edge is the number of intersecting edges placed
//! strictly before it. [`reorder`] runs an exchange-based local search that
//! either certifies every forward degree is at most `t(1−τ)n` (case A) or
//! stops at an edge `e*` whose predecessors all have many predecessors among
//! themselves, and reports the window `W` of edges just larger than `e*`
//! (case B). [`partition_stability`] and [`partition_extremal`] compose two
//! reorders into three-part partitions whose lettered properties are
//! evaluated exactly and reported, never assumed.

use std::collections::VecDeque;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercore::{EdgeColouring, Hypergraph, ListAssignment};
use crate::rational::{self, fourth_root_enclosure, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeOrdering {
    perm: Vec<usize>,
    #[serde(skip)]
    position: Vec<usize>,
}

impl EdgeOrdering {
    /// `perm[i]` is the edge at rank `i`.
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut position = vec![usize::MAX; perm.len()];
        for (rank, &e) in perm.iter().enumerate() {
            if e >= perm.len() {
                return Err(Error::InvalidOrdering(format!("edge id {e} out of range")));
            }
            if position[e] != usize::MAX {
                return Err(Error::InvalidOrdering(format!("edge id {e} appears twice")));
            }
            position[e] = rank;
        }
        Ok(EdgeOrdering { perm, position })
    }

    pub fn identity(m: usize) -> Self {
        EdgeOrdering { perm: (0..m).collect(), position: (0..m).collect() }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn position(&self) -> &[usize] {
        &self.position
    }

    pub fn rank(&self, e: usize) -> usize {
        self.position[e]
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    fn check(&self, h: &Hypergraph) -> Result<()> {
        if self.perm.len() != h.edge_count() {
            return Err(Error::InvalidOrdering(format!(
                "ordering covers {} edges but the hypergraph has {}",
                self.perm.len(),
                h.edge_count()
            )));
        }
        Ok(())
    }
}

/// Forward degree of every edge, indexed by edge id.
pub fn forward_degrees(h: &Hypergraph, ord: &EdgeOrdering) -> Result<Vec<usize>> {
    ord.check(h)?;
    let mut fwd = vec![0; h.edge_count()];
    for (rank, &e) in ord.perm.iter().enumerate() {
        fwd[e] = ord.perm[..rank].iter().filter(|&&f| h.intersects(e, f)).count();
    }
    Ok(fwd)
}

/// Larger edges first; ties by ascending id.
pub fn size_monotone_ordering(h: &Hypergraph) -> EdgeOrdering {
    let mut perm: Vec<usize> = (0..h.edge_count()).collect();
    perm.sort_by_key(|&e| std::cmp::Reverse(h.edge_size(e)));
    EdgeOrdering::new(perm).expect("sorted ids form a permutation")
}

/// `t(1−τ)n`.
pub fn forward_threshold(t: usize, tau: &Rational, n: usize) -> Rational {
    int(t) * (Rational::one() - tau) * int(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReorderCase {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReorderCertificates {
    /// `max_{W}|e| / min_{W}|e|`.
    #[serde(serialize_with = "rational::serialize")]
    pub w1_ratio: Rational,
    /// `max/min ≤ 1 + 3τ^{1/4}K³`, decided exactly by raising to the fourth power.
    pub w1_ok: bool,
    #[serde(serialize_with = "rational::serialize")]
    pub w2_volume: Rational,
    /// Rational upper bound on `t(1−τ−7τ^{1/4}/K)²/(1+3τ^{1/4}K³)`.
    #[serde(serialize_with = "rational::serialize")]
    pub w2_threshold: Rational,
    /// `w2_volume ≥ w2_threshold`; true only when the inequality certainly holds.
    pub w2_ok: bool,
    pub o1_ok: bool,
    pub o2_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReorderOutcome {
    pub ordering: EdgeOrdering,
    pub case: ReorderCase,
    /// Case B only: the window of edges ending at `e_star`, in ordering order.
    pub w: Vec<usize>,
    pub e_star: Option<usize>,
    pub certificates: Option<ReorderCertificates>,
    /// Whether `1 − τ − 7τ^{1/4}/K > 0` certainly holds.
    pub premise_holds: bool,
    pub max_forward_degree: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub threshold: Rational,
    pub iterations: usize,
}

/// Local search realising the exchange argument for orderings with forward
/// degree at most `t(1−τ)n`.
///
/// Starting from the size-monotone ordering with the whole edge set as
/// prefix, each step either drops the last prefix edge `e*` (when its forward
/// degree is at most the threshold) or moves the lowest-ranked prefix edge
/// with at most threshold neighbours in the prefix to just after `e*`. When
/// neither applies the prefix is stuck and case B is reported.
pub fn reorder(h: &Hypergraph, t: usize, tau: &Rational, k: &Rational) -> Result<ReorderOutcome> {
    if !(tau.is_positive() && *tau < Rational::one()) {
        return Err(Error::Domain(format!("tau must lie in (0,1), got {}", rational::display(tau))));
    }
    if *k < Rational::one() {
        return Err(Error::Domain(format!("K must be at least 1, got {}", rational::display(k))));
    }
    let m = h.edge_count();
    let n = h.n();
    let threshold = forward_threshold(t, tau, n);
    let (root_lo, root_hi) = fourth_root_enclosure(tau);
    let premise_holds =
        (Rational::one() - tau - int(7) * &root_hi / k).is_positive();

    let start = size_monotone_ordering(h);
    let mut prefix: Vec<usize> = start.perm.clone();
    let mut in_prefix = vec![true; m];
    let mut suffix: VecDeque<usize> = VecDeque::new();
    // cnt[e] = |N(e) ∩ prefix| for e in the prefix.
    let mut cnt: Vec<usize> = (0..m)
        .map(|e| (0..m).filter(|&f| f != e && h.intersects(e, f)).count())
        .collect();
    let within = |c: usize| int(c) <= threshold;

    let mut iterations = 0;
    let stuck = loop {
        iterations += 1;
        if iterations > m + 1 {
            return Err(Error::Internal("reorder local search exceeded e(H)+1 iterations".into()));
        }
        let Some(&e_star) = prefix.last() else { break None };
        let victim = if within(cnt[e_star]) {
            Some(prefix.len() - 1)
        } else {
            prefix[..prefix.len() - 1].iter().position(|&e| within(cnt[e]))
        };
        let Some(idx) = victim else { break Some(e_star) };
        let e = prefix.remove(idx);
        in_prefix[e] = false;
        // Either e* itself or a move to just after e*: both land in front of the suffix.
        suffix.push_front(e);
        for f in 0..m {
            if in_prefix[f] && h.intersects(e, f) {
                cnt[f] -= 1;
            }
        }
    };

    let perm: Vec<usize> = prefix.iter().copied().chain(suffix.iter().copied()).collect();
    let ordering = EdgeOrdering::new(perm)?;
    let fwd = forward_degrees(h, &ordering)?;
    let max_forward_degree = fwd.iter().copied().max().unwrap_or(0);

    let Some(e_star) = stuck else {
        return Ok(ReorderOutcome {
            ordering,
            case: ReorderCase::A,
            w: Vec::new(),
            e_star: None,
            certificates: None,
            premise_holds,
            max_forward_degree,
            threshold,
            iterations,
        });
    };

    let r = h.edge_size(e_star);
    // |f| < (1 + 3τ^{1/4}K³) r  ⇔  (|f|/r − 1)^4 < 81 τ K^12.
    let k12 = num_traits::pow(k.clone(), 12);
    let window_bound = int(81) * tau * &k12;
    let fourth = |x: &Rational| x * x * x * x;
    let w: Vec<usize> = prefix
        .iter()
        .copied()
        .filter(|&f| {
            let s = h.edge_size(f);
            s >= r && fourth(&(Rational::new(s.into(), r.into()) - Rational::one())) < window_bound
        })
        .collect();
    let max_w = w.iter().map(|&f| h.edge_size(f)).max().unwrap_or(r);
    let min_w = w.iter().map(|&f| h.edge_size(f)).min().unwrap_or(r);
    let w1_ratio = Rational::new(max_w.into(), min_w.into());
    let w1_ok = fourth(&(&w1_ratio - Rational::one())) <= window_bound;
    let w2_volume = h.volume(&w)?;
    let w2_threshold = w2_upper_threshold(t, tau, k, &root_lo, &root_hi);
    let w2_ok = w2_volume >= w2_threshold;

    let star_rank = ordering.rank(e_star);
    let o1_ok = ordering.perm[star_rank + 1..].iter().all(|&f| within(fwd[f]));
    let o2_ok = ordering.perm[..=star_rank]
        .windows(2)
        .all(|p| h.edge_size(p[0]) >= h.edge_size(p[1]));

    Ok(ReorderOutcome {
        ordering,
        case: ReorderCase::B,
        w,
        e_star: Some(e_star),
        certificates: Some(ReorderCertificates {
            w1_ratio,
            w1_ok,
            w2_volume,
            w2_threshold,
            w2_ok,
            o1_ok,
            o2_ok,
        }),
        premise_holds,
        max_forward_degree,
        threshold,
        iterations,
    })
}

/// Upper bound on `t(1−τ−7s/K)²/(1+3sK³)` over `s ∈ [lo, hi]`.
fn w2_upper_threshold(t: usize, tau: &Rational, k: &Rational, lo: &Rational, hi: &Rational) -> Rational {
    let base = |s: &Rational| Rational::one() - tau - int(7) * s / k;
    let (b_lo, b_hi) = (base(lo), base(hi));
    let sq = std::cmp::max(&b_lo * &b_lo, &b_hi * &b_hi);
    let denom = Rational::one() + int(3) * lo * k * k * k;
    int(t) * sq / denom
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedPart {
    pub name: String,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyFlag {
    pub name: String,
    pub holds: bool,
    /// The property quantifies over an empty part.
    pub vacuous: bool,
    /// An edge witnessing failure, when the property is per-edge.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub list_size: usize,
    pub max_forward_degree: usize,
    /// Greedy colouring along the ordering succeeds for any lists of this size.
    pub greedy_succeeds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    pub parts: Vec<NamedPart>,
    pub ordering: EdgeOrdering,
    pub flags: Vec<PropertyFlag>,
    /// The first reorder landed in case A, so the partition is trivial.
    pub trivial: bool,
    /// Cases of the two reorders (the second is absent when it was not run).
    pub first_case: ReorderCase,
    pub second_case: Option<ReorderCase>,
    pub probe: Option<ProbeReport>,
    pub notes: Vec<String>,
}

impl PartitionCertificate {
    pub fn part(&self, name: &str) -> &[usize] {
        self.parts
            .iter()
            .find(|p| p.name == name)
            .map(|p| p.edges.as_slice())
            .unwrap_or(&[])
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|f| f.name == name).map(|f| f.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.flags.iter().all(|f| f.holds)
    }
}

fn check_unit_interval(name: &str, x: &Rational) -> Result<()> {
    if x.is_positive() && *x < Rational::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must lie in (0,1), got {}", rational::display(x))))
    }
}

/// Runs `reorder` on the spanning sub-hypergraph with the given edge ids and
/// returns the resulting order of those ids together with the outcome.
fn reorder_subset(
    h: &Hypergraph,
    ids: &[usize],
    t: usize,
    tau: &Rational,
    k: &Rational,
) -> Result<(Vec<usize>, ReorderOutcome)> {
    let sub = h.edge_subset(ids)?;
    let out = reorder(&sub, t, tau, k)?;
    let order = out.ordering.perm.iter().map(|&i| ids[i]).collect();
    Ok((order, out))
}

fn per_edge_flag(name: &str, part: &[usize], ok: impl Fn(usize) -> bool) -> PropertyFlag {
    let witness = part.iter().copied().find(|&e| !ok(e));
    PropertyFlag { name: name.into(), holds: witness.is_none(), vacuous: part.is_empty(), witness }
}

/// `parts[0]` entirely before `parts[1]`, which is entirely before `parts[2]`, and so on.
fn order_flag(name: &str, ord: &EdgeOrdering, parts: &[&[usize]]) -> PropertyFlag {
    let mut witness = None;
    let mut floor = 0usize;
    let mut seen_any = false;
    for part in parts {
        if part.is_empty() {
            continue;
        }
        let lo = part.iter().map(|&e| ord.rank(e)).min().unwrap();
        let hi = part.iter().map(|&e| ord.rank(e)).max().unwrap();
        if seen_any && lo < floor && witness.is_none() {
            witness = Some(ord.perm[lo]);
        }
        floor = floor.max(hi);
        seen_any = true;
    }
    let nonempty = parts.iter().filter(|p| !p.is_empty()).count();
    PropertyFlag { name: name.into(), holds: witness.is_none(), vacuous: nonempty < 2, witness }
}

/// Three-part partition `(H1, W, H2)` for the stability regime.
///
/// The first reorder uses `(2σ, 1)`. In case A the partition is `H1 = H`.
/// Otherwise `H1` is everything after `e*`, `W` the window ending at `e*`,
/// and `H2` everything before the window; `H2` is reordered with
/// `(1 − 1/2000, 2000²)` and the final ordering is `H2` (second order), then
/// `W ∪ H1` (first order).
pub fn partition_stability(
    h: &Hypergraph,
    t: usize,
    sigma: &Rational,
    delta: &Rational,
    probe: Option<usize>,
) -> Result<PartitionCertificate> {
    check_unit_interval("sigma", sigma)?;
    check_unit_interval("delta", delta)?;
    let two_sigma = int(2) * sigma;
    let first = reorder(h, t, &two_sigma, &Rational::one())?;
    let mut notes = Vec::new();
    if !first.premise_holds {
        notes.push("first reorder premise 1 - tau - 7 tau^(1/4)/K > 0 fails".into());
    }
    let (h1, w, h2, ordering, second_case) = match first.case {
        ReorderCase::A => {
            let all: Vec<usize> = first.ordering.perm.clone();
            (all, Vec::new(), Vec::new(), first.ordering.clone(), None)
        }
        ReorderCase::B => {
            let e_star = first.e_star.expect("case B has e*");
            let star_rank = first.ordering.rank(e_star);
            let f_star = first.w[0];
            let f_rank = first.ordering.rank(f_star);
            let perm1 = &first.ordering.perm;
            let h2: Vec<usize> = perm1[..f_rank].to_vec();
            let w: Vec<usize> = perm1[f_rank..=star_rank].to_vec();
            let h1: Vec<usize> = perm1[star_rank + 1..].to_vec();
            let tau2 = Rational::one() - rat(1, 2000);
            let k2 = int(2000 * 2000);
            let (order2, out2) = reorder_subset(h, &h2, t, &tau2, &k2)?;
            if out2.case == ReorderCase::B {
                notes.push("second reorder on H2 landed in case B".into());
            }
            let perm: Vec<usize> = order2.into_iter().chain(perm1[f_rank..].iter().copied()).collect();
            (h1, w, h2, EdgeOrdering::new(perm)?, Some(out2.case))
        }
    };
    let fwd = forward_degrees(h, &ordering)?;
    let tn = int(t * h.n());

    let sizes = |part: &[usize]| part.iter().map(|&e| h.edge_size(e)).collect::<Vec<_>>();
    let w_sizes = sizes(&w);
    let (w_min, w_max) = (
        w_sizes.iter().copied().min().unwrap_or(0),
        w_sizes.iter().copied().max().unwrap_or(0),
    );
    let p1_holds = w.is_empty() || int(w_max) <= (Rational::one() + delta) * int(w_min);
    let p1 = PropertyFlag {
        name: "P1".into(),
        holds: p1_holds,
        vacuous: w.is_empty(),
        witness: (!p1_holds).then(|| *w.iter().max_by_key(|&&e| h.edge_size(e)).unwrap()),
    };
    let p2 = PropertyFlag {
        name: "P2".into(),
        holds: w.is_empty() || h.volume(&w)? >= (Rational::one() - delta) * int(t),
        vacuous: w.is_empty(),
        witness: None,
    };
    let p3 = if w.is_empty() {
        PropertyFlag { name: "P3".into(), holds: true, vacuous: true, witness: None }
    } else {
        per_edge_flag("P3", &h2, |e| h.edge_size(e) >= w_max)
    };
    let fd1_bound = (Rational::one() - &two_sigma) * &tn;
    let fd1 = per_edge_flag("FD1", &h1, |e| int(fwd[e]) <= fd1_bound);
    let fd2_bound = &tn / int(2000);
    let fd2 = per_edge_flag("FD2", &h2, |e| int(fwd[e]) <= fd2_bound);
    let fd3 = order_flag("FD3", &ordering, &[&h2, &w, &h1]);
    for f in [&p1, &p2, &p3, &fd1, &fd2, &fd3] {
        if f.vacuous {
            notes.push(format!("{} holds vacuously", f.name));
        }
    }

    let probe = probe.map(|list_size| {
        let max_fd = fwd.iter().copied().max().unwrap_or(0);
        ProbeReport {
            list_size,
            max_forward_degree: max_fd,
            greedy_succeeds: h.edge_count() == 0 || max_fd < list_size,
        }
    });

    Ok(PartitionCertificate {
        parts: vec![
            NamedPart { name: "H1".into(), edges: h1 },
            NamedPart { name: "W".into(), edges: w },
            NamedPart { name: "H2".into(), edges: h2 },
        ],
        ordering,
        flags: vec![p1, p2, p3, fd1, fd2, fd3],
        trivial: first.case == ReorderCase::A,
        first_case: first.case,
        second_case,
        probe,
        notes,
    })
}

/// Three-part partition `(H1, H2, H3)` for the extremal regime.
///
/// The first reorder uses `(1−γ, γ⁻²)`. In case A the partition is `H1 = H`.
/// Otherwise `H1` is everything after `e₁*` and the rest is reordered with
/// `(σ, 1)`; in its case B, `H3` is the prefix up to `e₂*` and `H2` the rest.
/// The final ordering lists the rest (second order) before `H1` (first order).
pub fn partition_extremal(
    h: &Hypergraph,
    t: usize,
    delta: &Rational,
    gamma: &Rational,
    r0: usize,
    sigma_inner: Option<&Rational>,
) -> Result<PartitionCertificate> {
    check_unit_interval("delta", delta)?;
    check_unit_interval("gamma", gamma)?;
    if r0 == 0 {
        return Err(Error::Domain("r0 must be at least 1".into()));
    }
    let sigma = sigma_inner.cloned().unwrap_or_else(|| delta / int(4));
    check_unit_interval("inner sigma", &sigma)?;
    let tau1 = Rational::one() - gamma;
    let k1 = Rational::one() / (gamma * gamma);
    let first = reorder(h, t, &tau1, &k1)?;
    let mut notes = Vec::new();
    if !first.premise_holds {
        notes.push("first reorder premise 1 - tau - 7 tau^(1/4)/K > 0 fails".into());
    }
    let (h1, h2, h3, ordering, second_case) = match first.case {
        ReorderCase::A => (first.ordering.perm.clone(), Vec::new(), Vec::new(), first.ordering.clone(), None),
        ReorderCase::B => {
            let e1 = first.e_star.expect("case B has e*");
            let rank1 = first.ordering.rank(e1);
            let perm1 = &first.ordering.perm;
            let left: Vec<usize> = perm1[..=rank1].to_vec();
            let h1: Vec<usize> = perm1[rank1 + 1..].to_vec();
            let (order2, out2) = reorder_subset(h, &left, t, &sigma, &Rational::one())?;
            if !out2.premise_holds {
                notes.push("second reorder premise 1 - tau - 7 tau^(1/4)/K > 0 fails".into());
            }
            let (h2, h3) = match out2.case {
                ReorderCase::A => (order2.clone(), Vec::new()),
                ReorderCase::B => {
                    let e2 = left[out2.e_star.expect("case B has e*")];
                    let cut = order2.iter().position(|&e| e == e2).unwrap();
                    (order2[cut + 1..].to_vec(), order2[..=cut].to_vec())
                }
            };
            let perm: Vec<usize> = order2.into_iter().chain(h1.iter().copied()).collect();
            (h1, h2, h3, EdgeOrdering::new(perm)?, Some(out2.case))
        }
    };
    let fwd = forward_degrees(h, &ordering)?;
    let n = h.n();
    let tn = (t * n) as i64;

    let in_h1 = {
        let mut v = vec![false; h.edge_count()];
        for &e in &h1 {
            v[e] = true;
        }
        v
    };
    let small: Vec<usize> = (0..h.edge_count()).filter(|&e| h.edge_size(e) <= r0).collect();
    let p1 = per_edge_flag("P'1", &small, |e| in_h1[e]);
    let factor = Rational::one() - int(2) * delta;
    let p2 = per_edge_flag("P'2", &h3, |e| rational::at_least_scaled_sqrt(h.edge_size(e), &factor, n));
    let fd1 = per_edge_flag("FD'1", &h2, |e| (fwd[e] as i64) <= tn - 2);
    let gamma_tn = gamma * int(t * n);
    let fd2 = per_edge_flag("FD'2", &h1, |e| int(fwd[e]) <= gamma_tn);
    let fd3 = order_flag("FD'3", &ordering, &[&h3, &h2, &h1]);
    for f in [&p1, &p2, &fd1, &fd2, &fd3] {
        if f.vacuous {
            notes.push(format!("{} holds vacuously", f.name));
        }
    }
    Ok(PartitionCertificate {
        parts: vec![
            NamedPart { name: "H1".into(), edges: h1 },
            NamedPart { name: "H2".into(), edges: h2 },
            NamedPart { name: "H3".into(), edges: h3 },
        ],
        ordering,
        flags: vec![p1, p2, fd1, fd2, fd3],
        trivial: first.case == ReorderCase::A,
        first_case: first.case,
        second_case,
        probe: None,
        notes,
    })
}

fn rat(p: i64, q: i64) -> Rational {
    rational::rat(p, q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GreedyOutcome {
    Coloured { colouring: EdgeColouring },
    /// Every colour of `edge`'s list is used by an earlier intersecting edge.
    Stuck { edge: usize, rank: usize, partial: Vec<Option<u32>> },
}

impl GreedyOutcome {
    pub fn colouring(&self) -> Option<&EdgeColouring> {
        match self {
            GreedyOutcome::Coloured { colouring } => Some(colouring),
            GreedyOutcome::Stuck { .. } => None,
        }
    }
}

/// Colours edges in `ord` order, each with its smallest list colour not used
/// by an already-coloured intersecting edge.
pub fn greedy_list_colour(h: &Hypergraph, ord: &EdgeOrdering, lists: &ListAssignment) -> Result<GreedyOutcome> {
    ord.check(h)?;
    if lists.len() != h.edge_count() {
        return Err(Error::ListSize { expected: h.edge_count(), got: lists.len() });
    }
    let mut partial = vec![None; h.edge_count()];
    match greedy_extend(h, &ord.perm, lists, &mut partial) {
        Ok(()) => Ok(GreedyOutcome::Coloured {
            colouring: EdgeColouring::new(partial.into_iter().map(|c| c.unwrap()).collect()),
        }),
        Err(edge) => Ok(GreedyOutcome::Stuck { edge, rank: ord.rank(edge), partial }),
    }
}

/// Extends a partial colouring greedily over `order`, avoiding the colours of
/// every already-coloured intersecting edge. Returns the first stuck edge.
pub fn greedy_extend(
    h: &Hypergraph,
    order: &[usize],
    lists: &ListAssignment,
    partial: &mut [Option<u32>],
) -> std::result::Result<(), usize> {
    for &e in order {
        let used: Vec<u32> = (0..h.edge_count())
            .filter(|&f| f != e && h.intersects(e, f))
            .filter_map(|f| partial[f])
            .collect();
        match lists.get(e).iter().copied().find(|c| !used.contains(c)) {
            Some(c) => partial[e] = Some(c),
            None => return Err(e),
        }
    }
    Ok(())
}

/// `max forward degree ≤ t(1−τ)n`, the literal case-A postcondition.
pub fn case_a_holds(h: &Hypergraph, ord: &EdgeOrdering, t: usize, tau: &Rational) -> Result<bool> {
    let bound = forward_threshold(t, tau, h.n());
    Ok(forward_degrees(h, ord)?.into_iter().all(|d| int(d) <= bound))
}

/// Largest forward degree, or zero for the empty hypergraph.
pub fn max_forward_degree(h: &Hypergraph, ord: &EdgeOrdering) -> Result<usize> {
    Ok(forward_degrees(h, ord)?.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{near_pencil, projective_plane, t_fold};

    fn disjoint3() -> Hypergraph {
        Hypergraph::new(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap()
    }

    #[test]
    fn ordering_validation() {
        assert!(EdgeOrdering::new(vec![0, 0]).is_err());
        assert!(EdgeOrdering::new(vec![0, 2]).is_err());
        let o = EdgeOrdering::new(vec![2, 0, 1]).unwrap();
        assert_eq!(o.position(), &[1, 2, 0]);
    }

    #[test]
    fn forward_degree_examples() {
        let f = projective_plane(2).unwrap();
        let o = EdgeOrdering::new(vec![3, 1, 4, 0, 6, 5, 2]).unwrap();
        let fwd = forward_degrees(&f, &o).unwrap();
        for (rank, &e) in o.perm().iter().enumerate() {
            assert_eq!(fwd[e], rank);
        }
        assert_eq!(forward_degrees(&disjoint3(), &EdgeOrdering::identity(3)).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn size_monotone_examples() {
        let np5 = near_pencil(5).unwrap();
        assert_eq!(size_monotone_ordering(&np5).perm(), &[0, 1, 2, 3, 4]);
        let h = Hypergraph::new(10, vec![(0..5).collect::<Vec<_>>(), vec![5, 6], (0..7).collect()]).unwrap();
        assert_eq!(size_monotone_ordering(&h).perm(), &[2, 0, 1]);
    }

    #[test]
    fn reorder_domain_errors() {
        let h = disjoint3();
        assert!(reorder(&h, 1, &int(0), &int(1)).is_err());
        assert!(reorder(&h, 1, &int(1), &int(1)).is_err());
        assert!(reorder(&h, 1, &rat(1, 2), &rat(1, 2)).is_err());
    }

    #[test]
    fn reorder_trivial_cases() {
        let out = reorder(&disjoint3(), 1, &rat(1, 2), &int(8)).unwrap();
        assert_eq!(out.case, ReorderCase::A);
        let single = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(reorder(&single, 1, &rat(1, 2), &int(8)).unwrap().case, ReorderCase::A);
    }

    #[test]
    fn reorder_on_fano_gets_stuck() {
        let f = projective_plane(2).unwrap();
        let out = reorder(&f, 1, &rat(1, 2), &int(8)).unwrap();
        // Any prefix of k lines has every line with k-1 > 3.5 neighbours for k >= 5.
        assert_eq!(out.case, ReorderCase::B);
        assert!(!out.premise_holds);
        let cert = out.certificates.unwrap();
        assert!(cert.o1_ok && cert.o2_ok);
        let fwd = forward_degrees(&f, &out.ordering).unwrap();
        let star = out.e_star.unwrap();
        assert!(int(fwd[star]) > out.threshold);
        assert_eq!(*out.w.last().unwrap(), star);
        assert_eq!(cert.w2_volume, f.volume(&out.w).unwrap());
    }

    #[test]
    fn partition_stability_trivial() {
        let c = partition_stability(&disjoint3(), 1, &rat(1, 100), &rat(1, 10), Some(1)).unwrap();
        assert!(c.trivial);
        assert!(c.all_hold());
        assert_eq!(c.part("H1").len(), 3);
        assert!(c.probe.unwrap().greedy_succeeds);
    }

    #[test]
    fn partition_stability_on_doubled_fano() {
        let f2 = t_fold(&projective_plane(2).unwrap(), 2).unwrap();
        let c = partition_stability(&f2, 2, &rat(1, 100), &rat(1, 10), None).unwrap();
        let mut all: Vec<usize> = c.parts.iter().flat_map(|p| p.edges.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..14).collect::<Vec<_>>());
        assert_eq!(c.flag("FD3"), Some(true));
    }

    #[test]
    fn partition_extremal_examples() {
        let h = disjoint3();
        let c = partition_extremal(&h, 1, &rat(1, 10), &rat(1, 4), 2, None).unwrap();
        assert_eq!(c.part("H1").len(), 3);
        assert!(c.all_hold());

        let f2 = t_fold(&projective_plane(2).unwrap(), 2).unwrap();
        let c = partition_extremal(&f2, 2, &rat(1, 10), &rat(1, 4), 2, None).unwrap();
        assert_eq!(c.flag("FD'3"), Some(true));
        assert!(partition_extremal(&f2, 2, &rat(1, 10), &rat(1, 4), 0, None).is_err());
    }

    #[test]
    fn greedy_examples() {
        let h = disjoint3();
        let out = greedy_list_colour(&h, &EdgeOrdering::identity(3), &ListAssignment::uniform(3, 1)).unwrap();
        assert_eq!(out.colouring().unwrap().colours, vec![0, 0, 0]);

        let f = projective_plane(2).unwrap();
        let ord = EdgeOrdering::identity(7);
        let out = greedy_list_colour(&f, &ord, &ListAssignment::uniform(7, 7)).unwrap();
        assert_eq!(out.colouring().unwrap().colour_count(), 7);
        match greedy_list_colour(&f, &ord, &ListAssignment::uniform(7, 6)).unwrap() {
            GreedyOutcome::Stuck { rank, .. } => assert_eq!(rank, 6),
            other => panic!("unexpected {other:?}"),
        }
    }
}
