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

use std::collections::BTreeSet;

use hyperchrom::format::{parse_hg, serialize_hg};
use hyperchrom::hypercore::{is_isomorphic, volume_at_most};
use hyperchrom::oracle::{self, ChromaticIndex, OracleBudget};
use hyperchrom::ordering::{self, EdgeOrdering};
use hyperchrom::pipeline::{self, PipelineParams};
use hyperchrom::rational::rat;
use hyperchrom::{Hypergraph, ListAssignment};
use proptest::prelude::*;

fn hypergraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let edge = proptest::collection::btree_set(0..n, 1..=n.min(5));
        proptest::collection::vec(edge, 0..=max_m)
            .prop_map(move |edges| Hypergraph::new(n, edges).unwrap())
    })
}

fn with_permutation(max_n: usize, max_m: usize) -> impl Strategy<Value = (Hypergraph, Vec<usize>)> {
    hypergraph(max_n, max_m).prop_flat_map(|h| {
        let m = h.edge_count();
        (Just(h), Just((0..m).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hg_text_round_trips(h in hypergraph(12, 20)) {
        let text = serialize_hg(&h);
        prop_assert_eq!(parse_hg(&text).unwrap(), h);
    }

    #[test]
    fn forward_degrees_count_earlier_neighbours((h, perm) in with_permutation(10, 16)) {
        let ord = EdgeOrdering::new(perm.clone()).unwrap();
        let fwd = ordering::forward_degrees(&h, &ord).unwrap();
        for (i, &e) in perm.iter().enumerate() {
            let naive = perm[..i].iter().filter(|&&f| h.intersects(e, f)).count();
            prop_assert_eq!(fwd[e], naive);
        }
    }

    #[test]
    fn greedy_succeeds_with_forward_degree_plus_one((h, perm) in with_permutation(10, 16), shift in 0u32..5) {
        let ord = EdgeOrdering::new(perm).unwrap();
        let fwd = ordering::forward_degrees(&h, &ord).unwrap();
        let lists = ListAssignment::new(
            fwd.iter().enumerate().map(|(e, &d)| (0..=d as u32).map(|c| c + shift * e as u32).collect()).collect(),
        );
        let out = ordering::greedy_list_colour(&h, &ord, &lists).unwrap();
        let colouring = out.colouring().expect("greedy must succeed");
        prop_assert!(h.validate_colouring(colouring, Some(&lists)).unwrap().valid);
    }

    #[test]
    fn total_volume_is_at_most_the_codegree(h in hypergraph(10, 20)) {
        let all: Vec<usize> = (0..h.edge_count()).collect();
        prop_assert!(volume_at_most(&h, &all, h.max_codegree()).unwrap());
    }

    #[test]
    fn double_dual_is_isomorphic(h in hypergraph(7, 8)) {
        let used: Vec<usize> = (0..h.n()).filter(|&v| h.degrees()[v] > 0).collect();
        prop_assume!(!used.is_empty());
        let h = h.induced(&used).unwrap().hypergraph;
        let dd = h.dual().unwrap().dual().unwrap();
        prop_assert!(is_isomorphic(&h, &dd).unwrap());
    }

    #[test]
    fn chromatic_index_is_between_max_degree_and_edge_count(h in hypergraph(8, 10)) {
        let budget = OracleBudget::default();
        let ChromaticIndex::Exact(chi) = oracle::exact_chromatic_index(&h, &budget).unwrap() else {
            return Err(TestCaseError::fail("budget exceeded on a tiny instance"));
        };
        let max_deg = h.degrees().into_iter().max().unwrap_or(0);
        prop_assert!(max_deg <= chi && chi <= h.edge_count());
    }

    #[test]
    fn partitions_cover_every_edge_once(h in hypergraph(10, 16)) {
        let t = h.max_codegree().max(1);
        let stab = ordering::partition_stability(&h, t, &rat(1, 50), &rat(1, 10), None).unwrap();
        let ext = ordering::partition_extremal(&h, t, &rat(1, 10), &rat(1, 4), 2, None).unwrap();
        for cert in [stab, ext] {
            let mut seen = BTreeSet::new();
            for part in &cert.parts {
                for &e in &part.edges {
                    prop_assert!(seen.insert(e));
                }
            }
            prop_assert_eq!(seen.len(), h.edge_count());
        }
    }

    #[test]
    fn pipeline_colourings_are_proper(h in hypergraph(8, 12), seed in 0u64..1000) {
        let t = h.max_codegree().max(1);
        let lists = ListAssignment::uniform(h.edge_count(), (t * h.n()) as u32);
        let params = PipelineParams { seed, ..PipelineParams::default() };
        let out = pipeline::colour_main(&h, t, &lists, &params).unwrap();
        if let Some(c) = &out.colouring {
            prop_assert!(h.validate_colouring(c, Some(&lists)).unwrap().valid);
        }
    }
}
