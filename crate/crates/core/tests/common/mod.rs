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

//! Independent reference computations for the integration tests. Nothing
//! here calls into the code paths it is used to check.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashSet};

use qbatch::{CouplingMap, Layout};
use rand::seq::SliceRandom;
use rand::Rng;

pub const INF: u64 = u64::MAX / 4;

/// Floyd–Warshall over the edge list.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<u64>> {
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b) in edges {
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn random_edges(rng: &mut impl Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Random graph that is a spanning tree plus extra edges, so it is
/// connected and sparse like real devices.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: usize) -> Vec<(usize, usize)> {
    let mut set = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        set.insert((u, v));
    }
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            set.insert((a.min(b), a.max(b)));
        }
    }
    set.into_iter().collect()
}

pub fn random_subset(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    all
}

/// Minimum hop distance over every cross pair, by Floyd–Warshall.
pub fn min_cross_distance(dist: &[Vec<u64>], a: &[usize], b: &[usize]) -> u64 {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| dist[x][y]))
        .min()
        .unwrap_or(INF)
}

pub fn overlap_oracle(dist: &[Vec<u64>], a: &[usize], b: &[usize], buffer: u32) -> bool {
    min_cross_distance(dist, a, b) <= buffer as u64
}

/// Qubits of `layout` with a neighbour outside it, straight from the
/// definition.
pub fn boundary_oracle(n: usize, edges: &[(usize, usize)], layout: &[usize]) -> BTreeSet<usize> {
    let inside: HashSet<usize> = layout.iter().copied().collect();
    let mut out = BTreeSet::new();
    for &(a, b) in edges {
        if inside.contains(&a) && !inside.contains(&b) {
            out.insert(a);
        }
        if inside.contains(&b) && !inside.contains(&a) {
            out.insert(b);
        }
    }
    let _ = n;
    out
}

/// Every injective map of `k` virtual qubits into `n` physical qubits, in
/// lexicographic order.
pub fn injective_maps(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in 0..n {
            if !cur.contains(&p) {
                cur.push(p);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// A small 0/1 program in plain form: `coef[i][j]` is `q_ij * A_i - 1`.
pub struct PlainIlp {
    pub coef: Vec<Vec<f64>>,
    pub qubits: Vec<usize>,
    pub capacity: usize,
    /// `conflict[i][j][k][l]`
    pub conflict: Vec<Vec<Vec<Vec<bool>>>>,
}

/// Enumerates every choice vector and returns the best feasible objective,
/// summed in circuit order.
pub fn exhaustive_ilp(p: &PlainIlp) -> f64 {
    let n = p.coef.len();
    let mut choice = vec![0usize; n]; // 0 = unassigned, j + 1 = layout j
    let mut best = f64::INFINITY;
    loop {
        let feasible = {
            let used: usize = (0..n).filter(|&i| choice[i] > 0).map(|i| p.qubits[i]).sum();
            used <= p.capacity
                && (0..n).all(|i| {
                    (0..n).all(|k| {
                        i == k
                            || choice[i] == 0
                            || choice[k] == 0
                            || !p.conflict[i][choice[i] - 1][k][choice[k] - 1]
                    })
                })
        };
        if feasible {
            let mut value = 0.0;
            for i in 0..n {
                if choice[i] > 0 {
                    value += p.coef[i][choice[i] - 1];
                }
            }
            if value < best {
                best = value;
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            choice[i] += 1;
            if choice[i] <= p.coef[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// All maximal cliques of a small graph given as an adjacency predicate.
pub fn all_cliques(n: usize, adj: &dyn Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let is_clique = members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| adj(a, b)));
        if is_clique {
            out.push(members);
        }
    }
    out
}

pub fn layout(map: &CouplingMap, id: &str, qubits: Vec<usize>) -> Layout {
    Layout::new(id, qubits, map).unwrap()
}
