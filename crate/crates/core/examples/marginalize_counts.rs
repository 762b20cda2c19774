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

//! Splits the joint measurement counts of a batch into per-circuit counts
//! and compares each with its ideal outcome.
//!
//! ```bash
//! cargo run -p qbatch --example marginalize_counts
//! ```

use std::collections::BTreeMap;

use qbatch::devices::{falcon_27, synthetic_calibration};
use qbatch::fixtures::CALIBRATION_SEED;
use qbatch::results::{batch_register, batch_spans, fidelity_vs_ideal, point_mass, JointCounts};
use qbatch::{schedule_all, CircuitSet, CircuitSpec, ScheduleConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> qbatch::Result<()> {
    let map = falcon_27();
    let calib = synthetic_calibration(&map, CALIBRATION_SEED);
    let circuits = CircuitSet::new(vec![
        CircuitSpec::chain("x", 3, 1),
        CircuitSpec::chain("y", 4, 1),
    ])?;
    let schedule = schedule_all(&circuits, &map, &calib, &ScheduleConfig::default())?;
    let batch = &schedule.batches[0];
    let register = batch_register(batch);
    let spans = batch_spans(batch);
    println!("measured physical qubits {register:?}");

    // fake readout: the all-zero outcome with independent bit flips at each
    // qubit's readout error rate
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut joint: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..4000 {
        let bits: String = register
            .iter()
            .map(|&q| {
                if rng.gen_bool(calib.readout_error(q).unwrap()) {
                    '1'
                } else {
                    '0'
                }
            })
            .collect();
        *joint.entry(bits).or_default() += 1;
    }
    let counts = JointCounts::new(spans.clone(), joint)?;

    for (id, span) in &spans {
        let marginal = counts.marginalize(id)?;
        let ideal = point_mass(&"0".repeat(span.len()));
        println!(
            "`{id}` on bits {span:?}: {} outcomes, {} shots, fidelity {:.4}",
            marginal.len(),
            marginal.values().sum::<u64>(),
            fidelity_vs_ideal(&marginal, &ideal)?
        );
    }
    Ok(())
}
