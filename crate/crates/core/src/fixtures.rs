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

//! Small worked scenarios on the bundled devices, shared by the examples
//! and the test suites.

use crate::circuit::{CircuitSet, CircuitSpec};
use crate::compat::CompatibilityGraph;
use crate::devices::{eagle_127, falcon_27};
use crate::hardware::CouplingMap;
use crate::layout::{filter_layouts, Layout, LayoutFilter, LayoutList};

/// Seed of the calibration written to `fixtures/*_calibration.json`.
pub const CALIBRATION_SEED: u64 = 0;

/// A 13-qubit and an 8-qubit region of the 27-qubit device separated by six
/// idle qubits. Each region has exactly two boundary qubits (11, 12 and 19,
/// 21) and the closest cross pair is three hops apart.
pub fn split_13_8() -> (CouplingMap, Layout, Layout) {
    let map = falcon_27();
    let left = Layout::new("left", vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12], &map).unwrap();
    let right = Layout::new("right", vec![19, 20, 21, 22, 23, 24, 25, 26], &map).unwrap();
    (map, left, right)
}

/// Scores of the three-circuit example, indexed `[circuit][layout]`.
pub const THREE_CIRCUIT_SCORES: [[f64; 2]; 3] =
    [[0.0932, 0.0905], [0.0900, 0.0833], [0.0850, 0.0862]];

const THREE_CIRCUIT_MAPPINGS: [[[usize; 4]; 2]; 3] = [
    [[20, 33, 39, 38], [0, 1, 2, 3]],
    [[39, 40, 41, 42], [113, 114, 115, 116]],
    [[75, 76, 77, 78], [94, 95, 96, 97]],
];

/// Three identical 4-qubit chains with two layouts each on the 127-qubit
/// device. Layout 0 of circuits 0 and 1 share qubit 39; every other pair of
/// layouts from different circuits is at least two hops apart.
pub fn three_circuits() -> (CouplingMap, CircuitSet, Vec<LayoutList>) {
    let map = eagle_127();
    let circuits: Vec<CircuitSpec> = (0..3)
        .map(|i| CircuitSpec::chain(format!("{i}"), 4, 2))
        .collect();
    let lists = circuits
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let layouts = (0..2)
                .map(|j| {
                    Layout::for_circuit(c, THREE_CIRCUIT_MAPPINGS[i][j].to_vec(), &map)
                        .and_then(|l| l.with_score(THREE_CIRCUIT_SCORES[i][j]))
                        .unwrap()
                })
                .collect();
            filter_layouts(layouts, LayoutFilter::Absolute(1.0)).unwrap()
        })
        .collect();
    (map, CircuitSet::new(circuits).unwrap(), lists)
}

/// Graph vertex holding layout `j` of circuit `i` as listed in
/// [`THREE_CIRCUIT_SCORES`]; lists are sorted by score, so list positions
/// differ from these labels.
pub fn three_circuit_vertex(graph: &CompatibilityGraph, i: usize, j: usize) -> usize {
    graph
        .vertices()
        .iter()
        .position(|v| v.circuit == i && v.layout.mapping() == THREE_CIRCUIT_MAPPINGS[i][j])
        .expect("vertex exists")
}

/// `count` identical `width`-qubit chain circuits (three entangling layers).
pub fn chain_batch(count: usize, width: usize) -> CircuitSet {
    CircuitSet::new(
        (0..count)
            .map(|i| CircuitSpec::chain(format!("chain{width}_{i}"), width, 3))
            .collect(),
    )
    .unwrap()
}
