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

//! Throughput of batching seven 10-qubit chain circuits on the bundled
//! 27- and 127-qubit devices with buffer 1 and the top half of layouts.
//!
//! ```bash
//! cargo run --release -p qbatch --example throughput
//! ```

use std::time::Instant;

use qbatch::devices::{eagle_127, falcon_27, synthetic_calibration};
use qbatch::fixtures::{chain_batch, CALIBRATION_SEED};
use qbatch::{schedule_all, ScheduleConfig};

fn main() -> qbatch::Result<()> {
    let circuits = chain_batch(7, 10);
    let config = ScheduleConfig::default();
    println!(
        "{:<10} {:>8} {:>14} {:>6} {:>12} {:>10}",
        "device", "batches", "sizes", "gain", "utilization", "time"
    );
    for (name, map) in [("falcon27", falcon_27()), ("eagle127", eagle_127())] {
        let calib = synthetic_calibration(&map, CALIBRATION_SEED);
        let start = Instant::now();
        let schedule = schedule_all(&circuits, &map, &calib, &config)?;
        let elapsed = start.elapsed();
        let sizes: Vec<String> = schedule
            .batches
            .iter()
            .map(|b| b.len().to_string())
            .collect();
        let metrics = schedule.metrics();
        println!(
            "{name:<10} {:>8} {:>14} {:>5.2}x {:>11.1}% {:>10.2?}",
            metrics.num_batches,
            sizes.join("+"),
            metrics.gain,
            100.0 * metrics.mean_qubit_utilization,
            elapsed
        );
    }
    Ok(())
}
