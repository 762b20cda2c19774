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

//! Exact branch-and-bound for the batch selection integer program:
//!
//! ```text
//! minimize   sum_ij (q_ij * A_i - 1) * x_ij
//! subject to x_ij in {0, 1}
//!            sum_j x_ij <= 1                     for every circuit i
//!            x_ij + x_kl <= 1                    for b-overlapping (ij, kl), k != i
//!            sum_ij n_i * x_ij <= m
//! ```

use crate::circuit::CircuitSet;
use crate::compat::CompatibilityGraph;
use crate::error::{Error, Result};
use crate::layout::Layout;

/// Largest product of per-circuit branch counts the exact solver accepts.
pub const EXACT_SEARCH_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone)]
pub struct IlpCircuit {
    pub id: String,
    pub num_qubits: usize,
    pub area: f64,
    pub layouts: Vec<Layout>,
}

/// One 0/1 variable per (circuit, layout), with pairwise conflicts.
#[derive(Debug, Clone)]
pub struct IlpInstance {
    circuits: Vec<IlpCircuit>,
    /// Variable index of `(i, 0)`.
    offsets: Vec<usize>,
    conflicts: Vec<Vec<bool>>,
    capacity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IlpSolution {
    /// Chosen layout index per circuit, `None` when left out.
    pub choice: Vec<Option<usize>>,
    pub objective: f64,
}

impl IlpInstance {
    /// `conflict(i, j, k, l)` must be symmetric; it is only consulted for
    /// `i != k`.
    pub fn new(
        circuits: Vec<IlpCircuit>,
        capacity: usize,
        mut conflict: impl FnMut(usize, usize, usize, usize) -> bool,
    ) -> Self {
        let mut offsets = Vec::with_capacity(circuits.len());
        let mut vars = Vec::new();
        for (i, c) in circuits.iter().enumerate() {
            offsets.push(vars.len());
            vars.extend((0..c.layouts.len()).map(|j| (i, j)));
        }
        let n = vars.len();
        let mut conflicts = vec![vec![false; n]; n];
        for a in 0..n {
            for b in a + 1..n {
                let ((i, j), (k, l)) = (vars[a], vars[b]);
                if i != k && conflict(i, j, k, l) {
                    conflicts[a][b] = true;
                    conflicts[b][a] = true;
                }
            }
        }
        IlpInstance {
            circuits,
            offsets,
            conflicts,
            capacity,
        }
    }

    /// Reads conflicts off a compatibility graph: two vertices of different
    /// circuits conflict exactly when they are not adjacent.
    pub fn from_graph(graph: &CompatibilityGraph, circuits: &CircuitSet, capacity: usize) -> Self {
        let mut ilp: Vec<IlpCircuit> = circuits
            .circuits()
            .iter()
            .enumerate()
            .map(|(i, c)| IlpCircuit {
                id: c.id().to_string(),
                num_qubits: c.num_qubits(),
                area: circuits.area_at(i),
                layouts: Vec::new(),
            })
            .collect();
        // graph vertices are laid out circuit by circuit, layout by layout
        let mut first_vertex = vec![0; ilp.len()];
        for (v, vx) in graph.vertices().iter().enumerate() {
            let slot = &mut ilp[vx.circuit].layouts;
            if slot.is_empty() {
                first_vertex[vx.circuit] = v;
            }
            debug_assert_eq!(slot.len(), vx.layout_index);
            slot.push(vx.layout.clone());
        }
        IlpInstance::new(ilp, capacity, |i, j, k, l| {
            !graph.adjacent(first_vertex[i] + j, first_vertex[k] + l)
        })
    }

    pub fn circuits(&self) -> &[IlpCircuit] {
        &self.circuits
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn conflicts(&self, i: usize, j: usize, k: usize, l: usize) -> bool {
        self.conflicts[self.offsets[i] + j][self.offsets[k] + l]
    }

    /// `q_ij * A_i - 1`.
    pub fn coefficient(&self, i: usize, j: usize) -> f64 {
        let c = &self.circuits[i];
        c.layouts[j].score() * c.area - 1.0
    }

    /// Number of complete assignments, `prod_i (|L_i| + 1)`.
    pub fn search_space(&self) -> u128 {
        self.circuits.iter().fold(1u128, |acc, c| {
            acc.saturating_mul(c.layouts.len() as u128 + 1)
        })
    }

    /// Objective of a choice vector, summed in circuit order.
    pub fn objective(&self, choice: &[Option<usize>]) -> f64 {
        choice
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|j| self.coefficient(i, j)))
            .sum()
    }
}

struct Search<'a> {
    inst: &'a IlpInstance,
    /// Most negative coefficient still available to circuits `i..`.
    tail_bound: Vec<f64>,
    /// Layout indices per circuit, best coefficient first.
    branch_order: Vec<Vec<usize>>,
    current: Vec<Option<usize>>,
    best: Vec<Option<usize>>,
    best_value: f64,
}

impl Search<'_> {
    fn compatible(&self, i: usize, j: usize) -> bool {
        self.current[..i]
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_none_or(|l| !self.inst.conflicts(i, j, k, l)))
    }

    fn visit(&mut self, i: usize, value: f64, qubits: usize) {
        if i == self.inst.circuits.len() {
            if value < self.best_value {
                self.best_value = value;
                self.best = self.current.clone();
            }
            return;
        }
        if value + self.tail_bound[i] >= self.best_value {
            return;
        }
        let n_i = self.inst.circuits[i].num_qubits;
        for idx in 0..self.branch_order[i].len() {
            let j = self.branch_order[i][idx];
            if qubits + n_i > self.inst.capacity || !self.compatible(i, j) {
                continue;
            }
            self.current[i] = Some(j);
            self.visit(i + 1, value + self.inst.coefficient(i, j), qubits + n_i);
            self.current[i] = None;
        }
        self.visit(i + 1, value, qubits);
    }
}

/// Globally optimal assignment. Leaving every circuit out (objective 0) is
/// the starting incumbent, so the result is empty only when no placement
/// improves on it.
pub fn solve_ilp_exact(instance: &IlpInstance) -> Result<IlpSolution> {
    let size = instance.search_space();
    if size > EXACT_SEARCH_LIMIT {
        return Err(Error::InstanceTooLarge {
            size,
            limit: EXACT_SEARCH_LIMIT,
        });
    }
    let n = instance.circuits.len();
    let mut branch_order = Vec::with_capacity(n);
    let mut best_per_circuit = Vec::with_capacity(n);
    for (i, c) in instance.circuits.iter().enumerate() {
        let mut order: Vec<usize> = (0..c.layouts.len()).collect();
        order.sort_by(|&a, &b| {
            instance
                .coefficient(i, a)
                .total_cmp(&instance.coefficient(i, b))
        });
        best_per_circuit.push(
            order
                .first()
                .map_or(0.0, |&j| instance.coefficient(i, j).min(0.0)),
        );
        branch_order.push(order);
    }
    let mut tail_bound = vec![0.0; n + 1];
    for i in (0..n).rev() {
        tail_bound[i] = tail_bound[i + 1] + best_per_circuit[i];
    }

    let mut search = Search {
        inst: instance,
        tail_bound,
        branch_order,
        current: vec![None; n],
        best: vec![None; n],
        best_value: 0.0,
    };
    search.visit(0, 0.0, 0);
    // re-sum in circuit order so equal choices give bit-identical objectives
    let objective = instance.objective(&search.best);
    Ok(IlpSolution {
        choice: search.best,
        objective,
    })
}
