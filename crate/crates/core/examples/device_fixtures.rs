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

//! Generates the bundled device, calibration and circuit documents.
//!
//! ```bash
//! cargo run -p qbatch --example device_fixtures -- crates/core/fixtures
//! ```

use std::path::{Path, PathBuf};

use qbatch::devices::{eagle_127, falcon_27, synthetic_calibration};
use qbatch::fixtures::{chain_batch, CALIBRATION_SEED};

fn write<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    std::fs::write(dir.join(name), text)
}

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    for (name, map) in [("falcon27", falcon_27()), ("eagle127", eagle_127())] {
        let calib = synthetic_calibration(&map, CALIBRATION_SEED);
        write(&dir, &format!("{name}.json"), &map.to_document())?;
        write(
            &dir,
            &format!("{name}_calibration.json"),
            &calib.to_document(),
        )?;
        println!(
            "{name}: {} qubits, {} couplings, longest shortest path {}",
            map.num_qubits(),
            map.edges().len(),
            (0..map.num_qubits())
                .flat_map(|a| (0..map.num_qubits()).map(move |b| (a, b)))
                .map(|(a, b)| map.distance(a, b).unwrap())
                .max()
                .unwrap()
        );
    }
    write(&dir, "chain10_x7.json", &chain_batch(7, 10).to_document())?;
    println!("wrote documents to {}", dir.display());
    Ok(())
}
