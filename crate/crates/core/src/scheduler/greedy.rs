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

//! Greedy maximal clique over the compatibility graph.
//!
//! Each connected component is handled on its own: edges are visited from
//! the heaviest down, the first edge seeds the clique, and later edges are
//! taken when every vertex they introduce comes from a new circuit and is
//! adjacent to everything already chosen. The result is maximal: an edge
//! from an outside vertex to a member was scanned at some point, and at that
//! time both endpoints were adjacent to every member chosen so far. The
//! component clique with the largest summed edge weight wins.

use std::cmp::Ordering;

use crate::compat::{CompatEdge, CompatibilityGraph};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Clique {
    /// Vertex indices, ascending.
    pub vertices: Vec<usize>,
    /// Sum of the weights of the edges that grew the clique.
    pub weight: f64,
}

impl Clique {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }
}

/// Rank of every vertex in `(circuit_id, layout_index)` order.
fn vertex_ranks(graph: &CompatibilityGraph) -> Vec<usize> {
    let vs = graph.vertices();
    let mut order: Vec<usize> = (0..vs.len()).collect();
    order.sort_by(|&a, &b| {
        (vs[a].circuit_id.as_str(), vs[a].layout_index)
            .cmp(&(vs[b].circuit_id.as_str(), vs[b].layout_index))
    });
    let mut rank = vec![0; vs.len()];
    for (r, v) in order.into_iter().enumerate() {
        rank[v] = r;
    }
    rank
}

fn endpoint_ranks(rank: &[usize], e: &CompatEdge) -> (usize, usize) {
    let (a, b) = (rank[e.u], rank[e.v]);
    (a.min(b), a.max(b))
}

fn grow(
    graph: &CompatibilityGraph,
    edges: Vec<CompatEdge>,
    capacity: usize,
    rank: &[usize],
) -> Clique {
    // heaviest first, ties by the endpoints' (circuit_id, layout_index);
    // final weights are non-negative so their bit patterns sort like the values
    let mut keyed: Vec<(std::cmp::Reverse<u64>, (usize, usize), usize)> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| {
            (
                std::cmp::Reverse(e.weight.max(0.0).to_bits()),
                endpoint_ranks(rank, e),
                i,
            )
        })
        .collect();
    keyed.sort_unstable();
    let edges: Vec<CompatEdge> = keyed.into_iter().map(|(_, _, i)| edges[i]).collect();
    let vertices = graph.vertices();
    let mut chosen: Vec<usize> = Vec::new();
    let mut circuits: Vec<usize> = Vec::new();
    let mut qubits = 0usize;
    let mut weight = 0.0;

    for e in &edges {
        let fresh = [e.u, e.v].map(|x| !chosen.contains(&x));
        if fresh == [false, false] {
            continue;
        }
        let fresh = [e.u, e.v]
            .into_iter()
            .zip(fresh)
            .filter_map(|(x, f)| f.then_some(x));
        let extra: usize = fresh.clone().map(|x| vertices[x].layout.num_qubits()).sum();
        let admissible = qubits + extra <= capacity
            && fresh.clone().all(|x| {
                !circuits.contains(&vertices[x].circuit)
                    && chosen.iter().all(|&c| graph.adjacent(x, c))
            });
        if !admissible {
            continue;
        }
        for x in fresh {
            chosen.push(x);
            circuits.push(vertices[x].circuit);
        }
        qubits += extra;
        weight += e.weight;
    }
    chosen.sort_unstable();
    Clique {
        vertices: chosen,
        weight,
    }
}

/// Greedy maximal clique whose total layout size fits in `capacity` qubits.
pub fn greedy_clique(graph: &CompatibilityGraph, capacity: usize) -> Clique {
    let rank = vertex_ranks(graph);
    let labels = graph.component_labels();
    let count = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
    let mut per_component: Vec<Vec<CompatEdge>> = vec![Vec::new(); count];
    for e in graph.edges() {
        per_component[labels[e.u]].push(*e);
    }
    let mut best = Clique::default();
    for edges in per_component {
        if edges.is_empty() {
            continue;
        }
        let clique = grow(graph, edges, capacity, &rank);
        let better = match clique.weight.total_cmp(&best.weight) {
            Ordering::Greater => true,
            Ordering::Equal => clique.len() > best.len(),
            Ordering::Less => best.is_empty() && !clique.is_empty(),
        };
        if better {
            best = clique;
        }
    }
    assert!(
        is_clique(graph, &best.vertices),
        "greedy selection is not a clique"
    );
    best
}

/// Pairwise adjacent (which also rules out two layouts of one circuit).
pub fn is_clique(graph: &CompatibilityGraph, vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| graph.adjacent(u, v)))
}

/// No outside vertex is adjacent to every member.
pub fn is_maximal_clique(graph: &CompatibilityGraph, vertices: &[usize]) -> bool {
    is_clique(graph, vertices)
        && !vertices.is_empty()
        && (0..graph.vertices().len())
            .filter(|x| !vertices.contains(x))
            .all(|x| !vertices.iter().all(|&v| graph.adjacent(x, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{CircuitSet, CircuitSpec};
    use crate::compat::build_graph;
    use crate::hardware::CouplingMap;
    use crate::layout::{filter_layouts, Layout, LayoutFilter, LayoutList};

    fn path(n: usize) -> CouplingMap {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        CouplingMap::new(n, &edges).unwrap()
    }

    fn single_qubit_lists(
        map: &CouplingMap,
        spec: &[(&str, &[(usize, f64)])],
    ) -> (CircuitSet, Vec<LayoutList>) {
        let set = CircuitSet::new(
            spec.iter()
                .map(|(id, _)| CircuitSpec::chain(*id, 1, 1))
                .collect(),
        )
        .unwrap();
        let lists = spec
            .iter()
            .map(|(id, ls)| {
                let layouts = ls
                    .iter()
                    .map(|&(q, s)| {
                        Layout::new(*id, vec![q], map)
                            .unwrap()
                            .with_score(s)
                            .unwrap()
                    })
                    .collect();
                filter_layouts(layouts, LayoutFilter::Absolute(1.0)).unwrap()
            })
            .collect();
        (set, lists)
    }

    #[test]
    fn edgeless_graph_gives_empty_clique() {
        let map = path(3);
        let (set, lists) = single_qubit_lists(&map, &[("a", &[(0, 0.1)]), ("b", &[(1, 0.1)])]);
        let g = build_graph(&set, &lists, &map, 1).unwrap();
        assert!(greedy_clique(&g, 3).is_empty());
    }

    #[test]
    fn single_zero_weight_edge_is_still_selected() {
        let map = path(5);
        let (set, lists) = single_qubit_lists(&map, &[("a", &[(0, 0.1)]), ("b", &[(4, 0.2)])]);
        let g = build_graph(&set, &lists, &map, 1).unwrap();
        let clique = greedy_clique(&g, 5);
        assert_eq!(clique.vertices, vec![0, 1]);
        assert_eq!(clique.weight, 0.0);
    }

    #[test]
    fn picks_one_layout_per_circuit() {
        let map = path(13);
        let (set, lists) = single_qubit_lists(
            &map,
            &[
                ("a", &[(0, 0.0)]),
                ("b", &[(4, 0.0), (6, 0.5)]),
                ("c", &[(8, 0.3)]),
                ("d", &[(12, 0.9)]),
            ],
        );
        let g = build_graph(&set, &lists, &map, 1).unwrap();
        let clique = greedy_clique(&g, 13);
        assert!(is_maximal_clique(&g, &clique.vertices));
        assert_eq!(clique.len(), 4);
        let circuits: Vec<usize> = clique
            .vertices
            .iter()
            .map(|&v| g.vertices()[v].circuit)
            .collect();
        assert_eq!(circuits, vec![0, 1, 2, 3]);
    }

    #[test]
    fn capacity_limits_clique() {
        let map = path(9);
        let (set, lists) = single_qubit_lists(
            &map,
            &[("a", &[(0, 0.1)]), ("b", &[(4, 0.2)]), ("c", &[(8, 0.3)])],
        );
        let g = build_graph(&set, &lists, &map, 1).unwrap();
        assert_eq!(greedy_clique(&g, 9).len(), 3);
        assert_eq!(greedy_clique(&g, 2).len(), 2);
    }
}
