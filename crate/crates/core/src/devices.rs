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

//! Bundled device topologies and a reproducible synthetic calibration.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hardware::{CalibrationData, CouplingMap};

const FALCON_27_EDGES: [(usize, usize); 28] = [
    (0, 1),
    (1, 2),
    (1, 4),
    (2, 3),
    (3, 5),
    (4, 7),
    (5, 8),
    (6, 7),
    (7, 10),
    (8, 9),
    (8, 11),
    (10, 12),
    (11, 14),
    (12, 13),
    (12, 15),
    (13, 14),
    (14, 16),
    (15, 18),
    (16, 19),
    (17, 18),
    (18, 21),
    (19, 20),
    (19, 22),
    (21, 23),
    (22, 25),
    (23, 24),
    (24, 25),
    (25, 26),
];

/// 27-qubit heavy-hex device (two fused 12-rings plus six pendant qubits).
pub fn falcon_27() -> CouplingMap {
    CouplingMap::new(27, &FALCON_27_EDGES).expect("static edge list is valid")
}

/// Heavy-hex lattice of `rows` horizontal chains of `width` qubits joined by
/// bridge qubits every fourth column, alternating between offsets 0 and 2.
/// The first and last rows drop the end column that no bridge touches. `heavy_hex(7, 15)` is the 127-qubit Eagle layout.
///
/// `width` must be `4k + 3` so that both bridge patterns land on real columns.
pub fn heavy_hex(rows: usize, width: usize) -> CouplingMap {
    assert!(rows >= 2, "need at least two rows");
    assert!(width >= 3 && width % 4 == 3, "width must be 4k + 3");

    let bridge_cols = |r: usize| -> Vec<usize> {
        let start = if r.is_multiple_of(2) { 0 } else { 2 };
        (start..width).step_by(4).collect()
    };
    // the outer rows lose the one end column that has no bridge
    let row_cols = |r: usize| -> Vec<usize> {
        let mut cols: Vec<usize> = (0..width).collect();
        if r == 0 {
            cols.pop();
        }
        if r == rows - 1 {
            if bridge_cols(r - 1)[0] == 0 {
                cols.pop();
            } else {
                cols.remove(0);
            }
        }
        cols
    };

    let mut next = 0usize;
    let mut row_index: Vec<BTreeMap<usize, usize>> = Vec::with_capacity(rows);
    let mut edges = Vec::new();
    let mut pending: Vec<(usize, usize)> = Vec::new(); // (bridge qubit, column)
    for r in 0..rows {
        let mut index = BTreeMap::new();
        for c in row_cols(r) {
            index.insert(c, next);
            next += 1;
        }
        let qubits: Vec<usize> = index.values().copied().collect();
        edges.extend(qubits.windows(2).map(|w| (w[0], w[1])));
        for (bridge, col) in pending.drain(..) {
            edges.push((bridge, index[&col]));
        }
        if r + 1 < rows {
            for col in bridge_cols(r) {
                edges.push((index[&col], next));
                pending.push((next, col));
                next += 1;
            }
        }
        row_index.push(index);
    }
    CouplingMap::new(next, &edges).expect("generated lattice is valid")
}

pub fn eagle_127() -> CouplingMap {
    heavy_hex(7, 15)
}

/// Calibration with rates drawn from ranges typical of current
/// superconducting devices. Deterministic for a given `seed`.
pub fn synthetic_calibration(map: &CouplingMap, seed: u64) -> CalibrationData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = map.num_qubits();
    let readout = (0..m).map(|_| rng.gen_range(0.005..0.04)).collect();
    let single = (0..m).map(|_| rng.gen_range(1e-4..8e-4)).collect();
    let two = map
        .edges()
        .iter()
        .map(|&e| (e, rng.gen_range(0.004..0.02)))
        .collect();
    CalibrationData::new(map, readout, single, two).expect("rates are probabilities")
}
