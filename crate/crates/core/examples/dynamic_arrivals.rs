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

//! Circuits that arrive over time. Each batch occupies one time step and
//! draws only on circuits already in the queue.
//!
//! ```bash
//! cargo run --release -p qbatch --example dynamic_arrivals
//! ```

use qbatch::devices::{eagle_127, synthetic_calibration};
use qbatch::fixtures::{chain_batch, CALIBRATION_SEED};
use qbatch::scheduler::Arrival;
use qbatch::{schedule_dynamic, ScheduleConfig};

fn main() -> qbatch::Result<()> {
    let map = eagle_127();
    let calib = synthetic_calibration(&map, CALIBRATION_SEED);
    let times = [0, 0, 0, 1, 1, 4, 4, 4, 4];
    let arrivals: Vec<Arrival> = chain_batch(times.len(), 8)
        .circuits()
        .iter()
        .zip(times)
        .map(|(c, time)| Arrival {
            time,
            circuit: c.clone(),
        })
        .collect();

    let schedule = schedule_dynamic(&arrivals, &map, &calib, &ScheduleConfig::default())?;
    for batch in &schedule.batches {
        let ids: Vec<&str> = batch
            .assignments
            .iter()
            .map(|(id, _)| id.as_str())
            .collect();
        println!("t={} {ids:?}", batch.start_time.unwrap_or(0));
    }
    println!(
        "{} circuits in {} batches",
        schedule.num_scheduled(),
        schedule.batches.len()
    );
    Ok(())
}
