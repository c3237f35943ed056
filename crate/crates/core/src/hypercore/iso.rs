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

//! Canonical labelling by colour refinement and individualisation.
//!
//! Vertices are coloured by a label-invariant refinement (a vertex's colour
//! together with the multiset of colour multisets of its edges) until the
//! partition is stable. The first non-singleton cell is then split by trying
//! each of its vertices in turn, skipping vertices that are twins (same set of
//! incident edges) of one already tried, since swapping twins is an
//! automorphism. Each discrete partition gives a relabelling; the certificate
//! is the lexicographically least relabelled edge list over all leaves.

use std::collections::BTreeMap;

use serde::Serialize;

use super::Hypergraph;
use crate::error::{Error, Result};

pub const CANONICAL_MAX_VERTICES: usize = 16;
pub const CANONICAL_MAX_EDGES: usize = 20;

/// Isomorphism-invariant certificate: two hypergraphs are isomorphic iff
/// their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub edges: Vec<Vec<u32>>,
}

impl CanonicalForm {
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::from_sorted(self.n, self.edges.clone())
    }
}

pub fn canonical_form(h: &Hypergraph) -> Result<CanonicalForm> {
    if h.n() > CANONICAL_MAX_VERTICES || h.edge_count() > CANONICAL_MAX_EDGES {
        return Err(Error::TooLarge(format!(
            "canonical form supports at most {CANONICAL_MAX_VERTICES} vertices and \
             {CANONICAL_MAX_EDGES} edges, got {} and {}",
            h.n(),
            h.edge_count()
        )));
    }
    let inc = h.incidence();
    let colours = refine(h, &inc, vec![0; h.n()]);
    let mut best: Option<Vec<Vec<u32>>> = None;
    search(h, &inc, colours, &mut best);
    Ok(CanonicalForm { n: h.n(), edges: best.unwrap_or_default() })
}

pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> Result<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let mut sa: Vec<usize> = a.edges().iter().map(Vec::len).collect();
    let mut sb: Vec<usize> = b.edges().iter().map(Vec::len).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Refines a colouring to a stable one. Colours are dense ranks `0..k` and
/// the refined order extends the previous order.
fn refine(h: &Hypergraph, inc: &[Vec<usize>], mut colours: Vec<usize>) -> Vec<usize> {
    let n = h.n();
    let mut classes = count_classes(&colours);
    loop {
        let edge_sig: Vec<Vec<usize>> = h
            .edges()
            .iter()
            .map(|vs| {
                let mut s: Vec<usize> = vs.iter().map(|&v| colours[v as usize]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        let keys: Vec<(usize, Vec<&Vec<usize>>)> = (0..n)
            .map(|v| {
                let mut sigs: Vec<&Vec<usize>> = inc[v].iter().map(|&e| &edge_sig[e]).collect();
                sigs.sort_unstable();
                (colours[v], sigs)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<&Vec<usize>>)> = keys.iter().collect();
        distinct.sort_unstable();
        distinct.dedup();
        let rank: BTreeMap<&(usize, Vec<&Vec<usize>>), usize> =
            distinct.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let next: Vec<usize> = keys.iter().map(|k| rank[k]).collect();
        let next_classes = distinct.len();
        colours = next;
        if next_classes == classes {
            return colours;
        }
        classes = next_classes;
    }
}

fn count_classes(colours: &[usize]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(h: &Hypergraph, inc: &[Vec<usize>], colours: Vec<usize>, best: &mut Option<Vec<Vec<u32>>>) {
    let n = h.n();
    let mut cell_size = vec![0usize; n.max(1)];
    for &c in &colours {
        cell_size[c] += 1;
    }
    let target = (0..n).map(|v| colours[v]).filter(|&c| cell_size[c] > 1).min();
    let Some(cell) = target else {
        let relabelled = relabel(h, &colours);
        if best.as_ref().is_none_or(|b| relabelled < *b) {
            *best = Some(relabelled);
        }
        return;
    };
    let mut tried: Vec<&Vec<usize>> = Vec::new();
    for v in (0..n).filter(|&v| colours[v] == cell) {
        if tried.contains(&&inc[v]) {
            continue;
        }
        tried.push(&inc[v]);
        let mut split: Vec<usize> = colours
            .iter()
            .enumerate()
            .map(|(u, &c)| 2 * c + usize::from(c == cell && u != v))
            .collect();
        densify(&mut split);
        let refined = refine(h, inc, split);
        search(h, inc, refined, best);
    }
}

fn densify(colours: &mut [usize]) {
    let mut distinct = colours.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for c in colours.iter_mut() {
        *c = distinct.binary_search(c).unwrap();
    }
}

fn relabel(h: &Hypergraph, colours: &[usize]) -> Vec<Vec<u32>> {
    let mut edges: Vec<Vec<u32>> = h
        .edges()
        .iter()
        .map(|vs| {
            let mut e: Vec<u32> = vs.iter().map(|&v| colours[v as usize] as u32).collect();
            e.sort_unstable();
            e
        })
        .collect();
    edges.sort_unstable();
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano_from(diffs: [usize; 3]) -> Hypergraph {
        Hypergraph::new(7, (0..7).map(|i| diffs.iter().map(move |d| (i + d) % 7))).unwrap()
    }

    #[test]
    fn relabelled_copies_agree() {
        let a = fano_from([1, 2, 4]);
        let b = fano_from([3, 5, 6]);
        assert!(is_isomorphic(&a, &b).unwrap());
        let perm = [3usize, 0, 6, 1, 5, 2, 4];
        let c = Hypergraph::new(
            7,
            a.edges().iter().rev().map(|e| e.iter().map(|&v| perm[v as usize]).collect::<Vec<_>>()),
        )
        .unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&c).unwrap());
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let path = Hypergraph::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let star = Hypergraph::new(4, vec![vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        assert!(!is_isomorphic(&path, &star).unwrap());
        let c6 = Hypergraph::new(6, (0..6).map(|i| vec![i, (i + 1) % 6])).unwrap();
        let two_triangles =
            Hypergraph::new(6, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]])
                .unwrap();
        assert!(!is_isomorphic(&c6, &two_triangles).unwrap());
    }

    #[test]
    fn multiplicity_matters() {
        let a = Hypergraph::new(3, vec![vec![0, 1], vec![0, 1], vec![1, 2]]).unwrap();
        let b = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![1, 2]]).unwrap();
        let c = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        assert!(!is_isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn size_guard() {
        let big = Hypergraph::empty(17);
        assert!(matches!(canonical_form(&big), Err(Error::TooLarge(_))));
    }
}
