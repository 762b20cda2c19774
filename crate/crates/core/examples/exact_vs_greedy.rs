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

//! Schedules the same queue with the greedy clique heuristic and with the
//! exact branch-and-bound, and compares the batches.
//!
//! ```bash
//! cargo run --release -p qbatch --example exact_vs_greedy
//! ```

use qbatch::devices::{falcon_27, synthetic_calibration};
use qbatch::fixtures::CALIBRATION_SEED;
use qbatch::{schedule_all, CircuitSet, CircuitSpec, LayoutFilter, ScheduleConfig, Solver};

fn main() -> qbatch::Result<()> {
    let map = falcon_27();
    let calib = synthetic_calibration(&map, CALIBRATION_SEED);
    let circuits = CircuitSet::new(vec![
        CircuitSpec::chain("a", 6, 2),
        CircuitSpec::chain("b", 5, 3),
        CircuitSpec::chain("c", 4, 1),
        CircuitSpec::chain("d", 3, 2),
    ])?;

    for solver in [Solver::Greedy, Solver::Exact] {
        // a tight filter keeps the exact search space manageable
        let config = ScheduleConfig {
            solver,
            filter: LayoutFilter::TopFraction(0.1),
            ..ScheduleConfig::default()
        };
        let schedule = schedule_all(&circuits, &map, &calib, &config)?;
        println!(
            "{solver:?}: {} batches, gain {:.2}",
            schedule.batches.len(),
            schedule.gain()
        );
        for batch in &schedule.batches {
            let ids: Vec<&str> = batch
                .assignments
                .iter()
                .map(|(id, _)| id.as_str())
                .collect();
            println!(
                "  {ids:?} objective {:.4}, {} qubits",
                batch.objective, batch.total_qubits
            );
        }
    }
    Ok(())
}
