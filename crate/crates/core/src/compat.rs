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

//! Compatibility graph over (circuit, layout) vertices. Two vertices are
//! joined when they belong to different circuits and their layouts keep the
//! buffer distance; a clique is therefore a batch that can run together.

use serde::{Deserialize, Serialize};

use crate::circuit::CircuitSet;
use crate::error::{Error, Result};
use crate::hardware::CouplingMap;
use crate::layout::{b_overlap_prepared, Footprint, Layout, LayoutList};

#[derive(Debug, Clone, PartialEq)]
pub struct CompatVertex {
    /// Position of the circuit in the [`CircuitSet`].
    pub circuit: usize,
    pub circuit_id: String,
    /// Position of the layout in the circuit's [`LayoutList`].
    pub layout_index: usize,
    pub layout: Layout,
    /// `q_ij * A_i`.
    pub weighted_score: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompatEdge {
    pub u: usize,
    pub v: usize,
    pub raw_weight: f64,
    /// `max_raw_weight - raw_weight`; better layout pairs weigh more.
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct CompatibilityGraph {
    vertices: Vec<CompatVertex>,
    edges: Vec<CompatEdge>,
    adjacency: Vec<Vec<bool>>,
    max_raw_weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphVertexEntry {
    pub circuit_id: String,
    pub layout_index: usize,
    pub mapping: Vec<usize>,
    pub score: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphEdgeEntry {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<GraphVertexEntry>,
    pub edges: Vec<GraphEdgeEntry>,
}

/// `lists[i]` holds the layouts of `circuits.circuits()[i]`.
pub fn build_graph(
    circuits: &CircuitSet,
    lists: &[LayoutList],
    map: &CouplingMap,
    b: u32,
) -> Result<CompatibilityGraph> {
    if lists.len() != circuits.len() {
        return Err(Error::Malformed(format!(
            "{} layout lists for {} circuits",
            lists.len(),
            circuits.len()
        )));
    }
    let mut vertices = Vec::new();
    for (i, (circuit, list)) in circuits.circuits().iter().zip(lists).enumerate() {
        if list.circuit_id != circuit.id() {
            return Err(Error::InvalidLayout {
                id: list.circuit_id.clone(),
                reason: format!("layout list out of order, expected `{}`", circuit.id()),
            });
        }
        let area = circuits.area_at(i);
        for (j, layout) in list.layouts.iter().enumerate() {
            vertices.push(CompatVertex {
                circuit: i,
                circuit_id: circuit.id().to_string(),
                layout_index: j,
                layout: layout.clone(),
                weighted_score: layout.score() * area,
            });
        }
    }

    if vertices
        .iter()
        .any(|v| v.layout.device() != map.fingerprint())
    {
        return Err(Error::DeviceMismatch);
    }
    let footprints: Vec<Footprint> = vertices
        .iter()
        .map(|v| Footprint::new(&v.layout, map.num_qubits()))
        .collect();

    let n = vertices.len();
    let mut adjacency = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (a, c) = (&vertices[u], &vertices[v]);
            if a.circuit == c.circuit
                || b_overlap_prepared(&a.layout, &footprints[u], &c.layout, &footprints[v], map, b)
            {
                continue;
            }
            adjacency[u][v] = true;
            adjacency[v][u] = true;
            let raw_weight = a.weighted_score + c.weighted_score;
            edges.push(CompatEdge {
                u,
                v,
                raw_weight,
                weight: 0.0,
            });
        }
    }
    let max_raw_weight = edges
        .iter()
        .map(|e| e.raw_weight)
        .fold(f64::NEG_INFINITY, f64::max);
    let max_raw_weight = if edges.is_empty() {
        0.0
    } else {
        max_raw_weight
    };
    for e in &mut edges {
        e.weight = max_raw_weight - e.raw_weight;
    }
    Ok(CompatibilityGraph {
        vertices,
        edges,
        adjacency,
        max_raw_weight,
    })
}

impl CompatibilityGraph {
    pub fn vertices(&self) -> &[CompatVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[CompatEdge] {
        &self.edges
    }

    pub fn max_raw_weight(&self) -> f64 {
        self.max_raw_weight
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u][v]
    }

    /// Vertex index of `(circuit_id, layout_index)`.
    pub fn find(&self, circuit_id: &str, layout_index: usize) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.circuit_id == circuit_id && v.layout_index == layout_index)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<&CompatEdge> {
        let (u, v) = (u.min(v), u.max(v));
        self.edges.iter().find(|e| e.u == u && e.v == v)
    }

    /// Component label of every vertex; labels count up from 0 in order of
    /// each component's smallest vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (root(&mut parent, e.u), root(&mut parent, e.v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            let r = root(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            label[v] = label[r];
        }
        label
    }

    /// Connected components as sorted vertex lists, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let labels = self.component_labels();
        let count = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
        let mut components = vec![Vec::new(); count];
        for (v, &l) in labels.iter().enumerate() {
            components[l].push(v);
        }
        components
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self
                .vertices
                .iter()
                .map(|v| GraphVertexEntry {
                    circuit_id: v.circuit_id.clone(),
                    layout_index: v.layout_index,
                    mapping: v.layout.mapping().to_vec(),
                    score: v.layout.score(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| GraphEdgeEntry {
                    u: e.u,
                    v: e.v,
                    w: e.weight,
                })
                .collect(),
        }
    }
}
