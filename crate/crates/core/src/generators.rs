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

//! Named instances and seeded random corpora.

use std::collections::HashMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;

/// Plane orders with a built-in field table.
pub const SUPPORTED_ORDERS: &[u32] = &[2, 3, 4, 5, 7, 8, 9, 11, 13];

/// Finite field `GF(p^e)` with elements encoded as base-`p` digit strings of
/// polynomial coefficients (lowest degree first).
struct Field {
    q: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl Field {
    fn new(q: u32) -> Result<Field> {
        // (characteristic, degree, monic modulus coefficients lowest first)
        let (p, e, modulus): (usize, usize, &[usize]) = match q {
            2 | 3 | 5 | 7 | 11 | 13 => (q as usize, 1, &[0, 1]),
            4 => (2, 2, &[1, 1, 1]),
            8 => (2, 3, &[1, 1, 0, 1]),
            9 => (3, 2, &[1, 0, 1]),
            _ => return Err(Error::UnsupportedOrder { q, supported: SUPPORTED_ORDERS }),
        };
        let q = q as usize;
        let digits = |mut x: usize| -> Vec<usize> {
            (0..e)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![vec![0; q]; q];
        let mut mul = vec![vec![0; q]; q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = (0..e).map(|i| (da[i] + db[i]) % p).collect();
                add[a][b] = encode(&sum);
                let mut prod = vec![0; 2 * e];
                for i in 0..e {
                    for j in 0..e {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                // Reduce modulo the monic modulus of degree e.
                for deg in (e..2 * e).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (k, &m) in modulus.iter().enumerate() {
                            let idx = deg - e + k;
                            prod[idx] = (prod[idx] + (p - c) * m) % p;
                        }
                    }
                }
                mul[a][b] = encode(&prod[..e]);
            }
        }
        Ok(Field { q, add, mul })
    }
}

/// Point-line incidence hypergraph of `PG(2, q)`.
pub fn projective_plane(q: u32) -> Result<Hypergraph> {
    let field = Field::new(q)?;
    let q = field.q;
    // Normalised homogeneous triples: first non-zero coordinate is 1.
    let mut triples = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            triples.push([1, a, b]);
        }
    }
    for b in 0..q {
        triples.push([0, 1, b]);
    }
    triples.push([0, 0, 1]);
    let dot = |x: &[usize; 3], y: &[usize; 3]| {
        let t0 = field.mul[x[0]][y[0]];
        let t1 = field.mul[x[1]][y[1]];
        let t2 = field.mul[x[2]][y[2]];
        field.add[field.add[t0][t1]][t2]
    };
    let edges = triples.iter().map(|line| {
        triples
            .iter()
            .enumerate()
            .filter(|(_, pt)| dot(line, pt) == 0)
            .map(|(i, _)| i)
            .collect::<Vec<_>>()
    });
    Hypergraph::new(triples.len(), edges)
}

/// Near-pencil on `n ≥ 3` vertices: edge 0 is `{1, …, n−1}` and edge `i` is `{0, i}`.
pub fn near_pencil(n: usize) -> Result<Hypergraph> {
    if n < 3 {
        return Err(Error::Domain(format!("near-pencil needs n >= 3, got {n}")));
    }
    let mut edges: Vec<Vec<usize>> = vec![(1..n).collect()];
    edges.extend((1..n).map(|i| vec![0, i]));
    Hypergraph::new(n, edges)
}

/// Replaces every edge by `t` consecutive copies; copy `j` of edge `i` has id `i·t + j`.
pub fn t_fold(h: &Hypergraph, t: usize) -> Result<Hypergraph> {
    if t == 0 {
        return Err(Error::Domain("t-fold needs t >= 1".into()));
    }
    let mut edges = Vec::with_capacity(h.edge_count() * t);
    for e in h.edges() {
        for _ in 0..t {
            edges.push(e.clone());
        }
    }
    Ok(Hypergraph::from_sorted(h.n(), edges))
}

/// The hypergraph whose line graph is the union of the given cliques: one
/// vertex per clique and one edge per ground vertex, listing the cliques
/// that contain it. Ground vertices are `0..=max` over all sets.
pub fn from_cliques(family: &[Vec<usize>]) -> Result<Hypergraph> {
    if family.is_empty() {
        return Err(Error::Domain("clique family is empty".into()));
    }
    let ground = family.iter().flatten().copied().max().map_or(0, |m| m + 1);
    let cliques = Hypergraph::new(ground, family.iter().cloned())?;
    cliques.dual().map_err(|err| match err {
        Error::IsolatedVertex(v) => Error::Precondition(format!("ground vertex {v} lies in no clique")),
        other => other,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorParams {
    pub seed: u64,
    pub n: usize,
    pub t: usize,
    pub size_min: usize,
    pub size_max: usize,
    /// Target edge count.
    pub density: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub hypergraph: Hypergraph,
    /// `density − e(H)`: how many requested edges could not be placed.
    pub shortfall: usize,
    pub attempts: usize,
}

/// Rejection sampler: draws a uniform size in the size range and a uniform
/// vertex subset of that size, keeping it iff no pair codegree would exceed
/// `t`. Stops at `density` edges or after `50·density` draws.
pub fn random_bounded_codegree(p: &GeneratorParams) -> Result<GeneratedInstance> {
    if p.size_min == 0 || p.size_min > p.size_max {
        return Err(Error::Domain(format!(
            "size range [{}, {}] must satisfy 1 <= min <= max",
            p.size_min, p.size_max
        )));
    }
    if p.size_min > p.n {
        return Err(Error::Domain(format!(
            "minimum edge size {} exceeds n = {}",
            p.size_min, p.n
        )));
    }
    let size_max = p.size_max.min(p.n);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut codegree: HashMap<(u32, u32), usize> = HashMap::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let budget = 50 * p.density;
    let mut attempts = 0;
    while edges.len() < p.density && attempts < budget {
        attempts += 1;
        let size = rng.gen_range(p.size_min..=size_max);
        let mut vs = sample(&mut rng, p.n, size).into_vec();
        vs.sort_unstable();
        let pairs: Vec<(u32, u32)> = vs
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| vs[i + 1..].iter().map(move |&v| (u as u32, v as u32)))
            .collect();
        if pairs.iter().any(|pr| codegree.get(pr).copied().unwrap_or(0) >= p.t) {
            continue;
        }
        for pr in pairs {
            *codegree.entry(pr).or_insert(0) += 1;
        }
        edges.push(vs);
    }
    let shortfall = p.density - edges.len();
    Ok(GeneratedInstance { hypergraph: Hypergraph::new(p.n, edges)?, shortfall, attempts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::is_isomorphic;

    #[test]
    fn fano_matches_difference_set() {
        let pg = projective_plane(2).unwrap();
        assert_eq!((pg.n(), pg.edge_count()), (7, 7));
        assert!(pg.edges().iter().all(|e| e.len() == 3));
        let fano = Hypergraph::new(7, (0..7).map(|i| [1, 2, 4].iter().map(move |d| (i + d) % 7))).unwrap();
        assert!(is_isomorphic(&pg, &fano).unwrap());
    }

    #[test]
    fn plane_axioms_for_every_supported_order() {
        for &q in SUPPORTED_ORDERS {
            let h = projective_plane(q).unwrap();
            let q = q as usize;
            let n = q * q + q + 1;
            assert_eq!((h.n(), h.edge_count()), (n, n), "q = {q}");
            assert!(h.edges().iter().all(|e| e.len() == q + 1));
            let s = h.degree_stats();
            assert!(s.degree.iter().all(|&d| d == q + 1));
            assert_eq!(s.max_codegree, 1);
            assert_eq!(s.codegree.len(), n * (n - 1) / 2, "every pair covered");
            assert!(h.predicates().is_intersecting);
        }
    }

    #[test]
    fn unsupported_orders() {
        for q in [0, 1, 6, 10, 16] {
            assert!(matches!(projective_plane(q), Err(Error::UnsupportedOrder { .. })));
        }
    }

    #[test]
    fn near_pencils() {
        let np3 = near_pencil(3).unwrap();
        assert!(np3.edges().iter().all(|e| e.len() == 2));
        let np5 = near_pencil(5).unwrap();
        assert_eq!(np5.edges(), &[vec![1, 2, 3, 4], vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 4]]);
        let np7 = near_pencil(7).unwrap();
        let p = np7.predicates();
        assert!(p.is_linear && p.is_intersecting);
        assert_eq!(np7.degree_stats().max_degree, 6);
        assert!(near_pencil(2).is_err());
    }

    #[test]
    fn folding() {
        let f = projective_plane(2).unwrap();
        assert_eq!(t_fold(&f, 1).unwrap(), f);
        let f2 = t_fold(&f, 2).unwrap();
        assert_eq!(f2.edge_count(), 14);
        assert_eq!(f2.max_codegree(), 2);
        assert_eq!(t_fold(&f, 3).unwrap().total_volume().unwrap(), crate::rational::int(3));
        assert!(t_fold(&f, 0).is_err());
    }

    #[test]
    fn cliques_to_hypergraph() {
        // Triangles {0,1,2} and {2,3,4} glued at ground vertex 2.
        let h = from_cliques(&[vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        assert_eq!((h.n(), h.edge_count()), (2, 5));
        let lg = h.line_graph();
        let expected = [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)];
        assert_eq!(lg.edge_count(), expected.len());
        assert!(expected.iter().all(|&(a, b)| lg.has_edge(a, b)));

        let single = from_cliques(&[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.line_graph().edge_count(), 6);

        assert!(from_cliques(&[]).is_err());
        assert!(matches!(from_cliques(&[vec![0, 2]]), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_is_reproducible_and_bounded() {
        let p = GeneratorParams { seed: 7, n: 6, t: 1, size_min: 2, size_max: 2, density: 15 };
        let a = random_bounded_codegree(&p).unwrap();
        let b = random_bounded_codegree(&p).unwrap();
        assert_eq!(a, b);
        assert!(a.hypergraph.max_codegree() <= 1);
        assert_eq!(a.hypergraph.edge_count() + a.shortfall, 15);
        for seed in 0..20 {
            let p = GeneratorParams { seed, n: 20, t: 2, size_min: 2, size_max: 7, density: 40 };
            let g = random_bounded_codegree(&p).unwrap();
            assert!(g.hypergraph.max_codegree() <= 2);
        }
    }
}
