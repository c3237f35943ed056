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

//! The bound `e(H) ≤ t·max_v |N[v]|` for intersecting hypergraphs with
//! codegree at most `t` and no singleton edges, and the structure of the
//! instances attaining it: `t`-fold projective planes and `t`-fold
//! near-pencils.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotzkinReport {
    #[serde(serialize_with = "rational::serialize")]
    pub sum: Rational,
    pub holds: bool,
}

/// Evaluates `Σ (|X|d(x) − |Y|d(y)) / ((|X| − d(y))(|Y| − d(x)))` over the
/// non-adjacent pairs `x ∈ X`, `y ∈ Y` of a bipartite relation given as
/// `(x, y)` index pairs. Requires that no `x` is adjacent to all of `Y`.
pub fn motzkin_check(x_size: usize, y_size: usize, adjacency: &[(usize, usize)]) -> Result<MotzkinReport> {
    let mut adj = vec![vec![false; y_size]; x_size];
    for &(x, y) in adjacency {
        if x >= x_size || y >= y_size {
            return Err(Error::Domain(format!("pair ({x}, {y}) outside {x_size} x {y_size}")));
        }
        adj[x][y] = true;
    }
    let dx: Vec<usize> = adj.iter().map(|row| row.iter().filter(|&&b| b).count()).collect();
    let dy: Vec<usize> = (0..y_size).map(|y| (0..x_size).filter(|&x| adj[x][y]).count()).collect();
    if let Some(x) = (0..x_size).find(|&x| dx[x] == y_size) {
        return Err(Error::Precondition(format!("x = {x} is adjacent to every vertex of Y")));
    }
    let (nx, ny) = (x_size as i64, y_size as i64);
    let mut sum = Rational::zero();
    for x in 0..x_size {
        for y in 0..y_size {
            if adj[x][y] {
                continue;
            }
            let denom = (nx - dy[y] as i64) * (ny - dx[x] as i64);
            if denom == 0 {
                return Err(Error::Internal(format!("zero denominator at ({x}, {y})")));
            }
            sum += Rational::new((nx * dx[x] as i64 - ny * dy[y] as i64).into(), denom.into());
        }
    }
    let holds = !sum.is_negative();
    Ok(MotzkinReport { sum, holds })
}

/// The Motzkin sum for the incidence relation between `N[v]` and the edges.
pub fn incidence_motzkin(h: &Hypergraph, v: usize) -> Result<MotzkinReport> {
    if v >= h.n() {
        return Err(Error::VertexOutOfRange { edge: usize::MAX, vertex: v, n: h.n() });
    }
    let closed = h.closed_neighbourhood(v);
    let pairs: Vec<(usize, usize)> = closed
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| (0..h.edge_count()).filter(move |&e| h.contains(e, x as usize)).map(move |e| (i, e)))
        .collect();
    motzkin_check(closed.len(), h.edge_count(), &pairs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub applies: bool,
    /// Why the bound does not apply.
    pub reason: Option<String>,
    pub e_count: usize,
    /// `t·max|N[v]|` over vertices of positive degree.
    pub bound: usize,
    pub tight: bool,
    pub witness_vertex: Option<usize>,
}

/// Evaluates the bound. It applies to non-empty intersecting hypergraphs with
/// codegree at most `t` and every edge of size at least 2; isolated vertices
/// are allowed and ignored when maximising `|N[v]|`.
pub fn intersecting_bound(h: &Hypergraph, t: usize) -> BoundReport {
    let e_count = h.edge_count();
    let mut report = BoundReport { applies: false, reason: None, e_count, bound: 0, tight: false, witness_vertex: None };
    let reason = if e_count == 0 {
        Some("no edges".to_string())
    } else if let Some(e) = (0..e_count).find(|&e| h.edge_size(e) < 2) {
        Some(format!("edge {e} has size one"))
    } else if h.max_codegree() > t {
        Some(format!("codegree {} exceeds t = {t}", h.max_codegree()))
    } else if !h.is_intersecting() {
        Some("not intersecting".to_string())
    } else {
        None
    };
    if reason.is_some() {
        report.reason = reason;
        return report;
    }
    let degrees = h.degrees();
    let (best, witness) = (0..h.n())
        .filter(|&v| degrees[v] > 0)
        .map(|v| (h.closed_neighbourhood(v).len(), v))
        .fold((0, None), |(b, w), (s, v)| if s > b { (s, Some(v)) } else { (b, w) });
    report.applies = true;
    report.bound = t * best;
    report.tight = e_count == report.bound;
    report.witness_vertex = witness;
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassificationKind {
    TFoldProjectivePlane { k: usize, t: usize },
    TFoldNearPencil { t: usize },
    NotExtremal,
    NotApplicable { reason: String },
    /// Tight, but the structure check failed. The bound's equality analysis
    /// rules this out, so it signals a bug or a malformed input.
    Anomalous { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: ClassificationKind,
    pub bound: BoundReport,
    pub witness_vertex: Option<usize>,
    /// Isolated vertices outside `N[v]`.
    pub isolated_outside: Vec<usize>,
    pub remarks: Vec<String>,
}

pub fn classify_extremal(h: &Hypergraph, t: usize) -> Classification {
    let bound = intersecting_bound(h, t);
    let mut out = Classification {
        kind: ClassificationKind::NotExtremal,
        bound: bound.clone(),
        witness_vertex: None,
        isolated_outside: Vec::new(),
        remarks: Vec::new(),
    };
    if !bound.applies {
        out.kind = ClassificationKind::NotApplicable { reason: bound.reason.clone().unwrap_or_default() };
        return out;
    }
    if !bound.tight {
        return out;
    }
    let degrees = h.degrees();
    let v = (0..h.n())
        .find(|&v| degrees[v] > 0 && t * h.closed_neighbourhood(v).len() == h.edge_count())
        .expect("tight bound has a witness");
    out.witness_vertex = Some(v);
    let closed: Vec<usize> = h.closed_neighbourhood(v).iter().map(|&x| x as usize).collect();
    let mut inside = vec![false; h.n()];
    for &x in &closed {
        inside[x] = true;
    }
    let outside: Vec<usize> = (0..h.n()).filter(|&x| !inside[x]).collect();
    if let Some(&x) = outside.iter().find(|&&x| degrees[x] > 0) {
        out.kind = ClassificationKind::Anomalous { reason: format!("vertex {x} outside N[{v}] has positive degree") };
        return out;
    }
    out.isolated_outside = outside.clone();
    if !outside.is_empty() {
        out.remarks.push(format!("{} isolated vertices outside N[{v}]", outside.len()));
    }
    let sub = h.induced(&closed).expect("closed neighbourhood is in range").hypergraph;
    let mut groups: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for e in sub.edges() {
        *groups.entry(e.clone()).or_insert(0) += 1;
    }
    if let Some((set, &mult)) = groups.iter().find(|(_, &c)| c != t) {
        out.kind = ClassificationKind::Anomalous {
            reason: format!("edge {set:?} has multiplicity {mult}, expected {t}"),
        };
        return out;
    }
    let base = Hypergraph::new(sub.n(), groups.keys().map(|e| e.iter().map(|&x| x as usize).collect::<Vec<_>>()))
        .expect("groups are valid edges");
    out.kind = match base_shape(&base) {
        Some(BaseShape::Plane(k)) => ClassificationKind::TFoldProjectivePlane { k, t },
        Some(BaseShape::NearPencil) => {
            if base.n() == 3 {
                out.remarks.push("the triangle is also the projective plane of order 1".into());
            }
            ClassificationKind::TFoldNearPencil { t }
        }
        None => ClassificationKind::Anomalous { reason: "base is neither a projective plane nor a near-pencil".into() },
    };
    out
}

enum BaseShape {
    Plane(usize),
    NearPencil,
}

fn base_shape(base: &Hypergraph) -> Option<BaseShape> {
    let n0 = base.n();
    let p = base.predicates();
    if !(p.is_linear && p.is_intersecting) || base.edge_count() != n0 {
        return None;
    }
    if is_near_pencil(base) {
        return Some(BaseShape::NearPencil);
    }
    let k = (2..n0).find(|&k| k * k + k + 1 == n0)?;
    let degrees = base.degrees();
    let plane = base.edges().iter().all(|e| e.len() == k + 1) && degrees.iter().all(|&d| d == k + 1);
    plane.then_some(BaseShape::Plane(k))
}

/// One edge of size `n − 1` and `n − 1` pairs through the remaining vertex.
fn is_near_pencil(base: &Hypergraph) -> bool {
    let n0 = base.n();
    if n0 < 3 || base.edge_count() != n0 {
        return false;
    }
    let candidates: Vec<usize> = (0..base.edge_count()).filter(|&e| base.edge_size(e) == n0 - 1).collect();
    candidates.iter().any(|&big| {
        let apex = (0..n0).find(|&x| !base.contains(big, x)).unwrap();
        (0..base.edge_count()).filter(|&e| e != big).all(|e| base.edge_size(e) == 2 && base.contains(e, apex))
    })
}

/// On a tight instance, every non-isolated vertex `x` and edge `e` missing
/// `x` have codegree `d(x, w) = t` for all `w ∈ e`. Returns the first
/// violating triple `(x, e, w)`.
pub fn tight_codegree_violation(h: &Hypergraph, t: usize) -> Option<(usize, usize, usize)> {
    let stats = h.degree_stats();
    for x in (0..h.n()).filter(|&x| stats.degree[x] > 0) {
        for e in 0..h.edge_count() {
            if h.contains(e, x) {
                continue;
            }
            if let Some(&w) = h.edge(e).iter().find(|&&w| stats.codegree(x, w as usize) != t) {
                return Some((x, e, w as usize));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeBruijnErdos {
    pub applies: bool,
    pub reason: Option<String>,
    /// `e(H) ≤ n`.
    pub bound_holds: bool,
    pub tight: bool,
    pub classification: Option<Classification>,
}

/// `e(H) ≤ n` for linear intersecting hypergraphs without singleton edges,
/// with the equality cases classified.
pub fn debruijn_erdos_check(h: &Hypergraph) -> DeBruijnErdos {
    let p = h.predicates();
    let reason = if h.edge_count() == 0 {
        Some("no edges".to_string())
    } else if !p.is_linear {
        Some("not linear".to_string())
    } else if !p.is_intersecting {
        Some("not intersecting".to_string())
    } else {
        (0..h.edge_count()).find(|&e| h.edge_size(e) < 2).map(|e| format!("edge {e} has size one"))
    };
    if reason.is_some() {
        return DeBruijnErdos { applies: false, reason, bound_holds: false, tight: false, classification: None };
    }
    let m = h.edge_count();
    let tight = m == h.n();
    DeBruijnErdos {
        applies: true,
        reason: None,
        bound_holds: m <= h.n(),
        tight,
        classification: tight.then(|| classify_extremal(h, 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{near_pencil, projective_plane, t_fold};
    use crate::rational::int;

    #[test]
    fn motzkin_examples() {
        let r = motzkin_check(2, 2, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(r.sum, int(0));
        assert!(r.holds);
        let r = motzkin_check(1, 2, &[(0, 0)]).unwrap();
        assert_eq!(r.sum, int(1));
        assert!(motzkin_check(1, 2, &[(0, 0), (0, 1)]).is_err());
        let f = projective_plane(2).unwrap();
        assert!(incidence_motzkin(&f, 0).unwrap().holds);
    }

    #[test]
    fn bound_examples() {
        let f = projective_plane(2).unwrap();
        let b = intersecting_bound(&f, 1);
        assert!(b.applies && b.tight);
        assert_eq!((b.e_count, b.bound), (7, 7));
        let np5 = near_pencil(5).unwrap();
        let b = intersecting_bound(&np5, 1);
        assert_eq!((b.e_count, b.bound, b.tight), (5, 5, true));
        let minus = f.without_edge(0).unwrap();
        let b = intersecting_bound(&minus, 1);
        assert_eq!((b.e_count, b.bound, b.tight), (6, 7, false));
        assert!(!intersecting_bound(&Hypergraph::empty(3), 1).applies);
    }

    #[test]
    fn classification_examples() {
        let f3 = t_fold(&projective_plane(2).unwrap(), 3).unwrap();
        assert_eq!(classify_extremal(&f3, 3).kind, ClassificationKind::TFoldProjectivePlane { k: 2, t: 3 });
        let np2 = t_fold(&near_pencil(5).unwrap(), 2).unwrap();
        assert_eq!(classify_extremal(&np2, 2).kind, ClassificationKind::TFoldNearPencil { t: 2 });
        let tri = near_pencil(3).unwrap();
        let c = classify_extremal(&tri, 1);
        assert_eq!(c.kind, ClassificationKind::TFoldNearPencil { t: 1 });
        assert!(!c.remarks.is_empty());
        let minus = projective_plane(2).unwrap().without_edge(0).unwrap();
        assert_eq!(classify_extremal(&minus, 1).kind, ClassificationKind::NotExtremal);
        let disjoint = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(classify_extremal(&disjoint, 1).kind, ClassificationKind::NotApplicable { .. }));
    }

    #[test]
    fn isolated_vertices_are_reported() {
        let tri = Hypergraph::new(5, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let c = classify_extremal(&tri, 1);
        assert_eq!(c.kind, ClassificationKind::TFoldNearPencil { t: 1 });
        assert_eq!(c.isolated_outside, vec![3, 4]);
    }

    #[test]
    fn tight_codegrees() {
        let f2 = t_fold(&projective_plane(3).unwrap(), 2).unwrap();
        assert_eq!(tight_codegree_violation(&f2, 2), None);
        let np = t_fold(&near_pencil(6).unwrap(), 3).unwrap();
        assert_eq!(tight_codegree_violation(&np, 3), None);
    }

    #[test]
    fn debruijn_erdos_examples() {
        let d = debruijn_erdos_check(&projective_plane(2).unwrap());
        assert!(d.tight && d.bound_holds);
        assert_eq!(d.classification.unwrap().kind, ClassificationKind::TFoldProjectivePlane { k: 2, t: 1 });
        for n in 3..=8 {
            let d = debruijn_erdos_check(&near_pencil(n).unwrap());
            assert!(d.tight);
            assert_eq!(d.classification.unwrap().kind, ClassificationKind::TFoldNearPencil { t: 1 });
        }
        let minus = projective_plane(2).unwrap().without_edge(3).unwrap();
        let d = debruijn_erdos_check(&minus);
        assert!(d.bound_holds && !d.tight);
    }
}
