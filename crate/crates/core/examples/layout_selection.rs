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

//! Enumerates the embeddings of a circuit, scores them against calibration
//! data and shows which survive each filter.
//!
//! ```bash
//! cargo run -p qbatch --example layout_selection
//! ```

use qbatch::devices::{falcon_27, synthetic_calibration};
use qbatch::fixtures::CALIBRATION_SEED;
use qbatch::layout::{scored_layouts, DEFAULT_LAYOUT_CAP};
use qbatch::{filter_layouts, CircuitSpec, LayoutFilter};

fn main() -> qbatch::Result<()> {
    let map = falcon_27();
    let calib = synthetic_calibration(&map, CALIBRATION_SEED);
    let circuit = CircuitSpec::chain("ghz5", 5, 1);
    println!(
        "`{}`: {} qubits, depth {}, {} ops, interactions {:?}",
        circuit.id(),
        circuit.num_qubits(),
        circuit.depth(),
        circuit.ops().len(),
        circuit.interactions()
    );

    let layouts = scored_layouts(&circuit, &map, &calib, DEFAULT_LAYOUT_CAP)?;
    println!("{} embeddings on the 27-qubit device", layouts.len());

    for filter in [
        LayoutFilter::TopFraction(0.5),
        LayoutFilter::TopFraction(0.1),
        LayoutFilter::Absolute(0.005),
    ] {
        let kept = filter_layouts(layouts.clone(), filter)?;
        println!("\n{filter:?} keeps {}", kept.len());
        for l in kept.layouts.iter().take(5) {
            println!("  {:.5}  {:?}", l.score(), l.mapping());
        }
        if kept.len() > 5 {
            println!("  ...");
        }
    }
    Ok(())
}
