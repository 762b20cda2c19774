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

//! Loads a coupling map, prints hop distances from one qubit and the
//! boundary of a region.
//!
//! ```bash
//! cargo run -p qbatch --example device_topology
//! cargo run -p qbatch --example device_topology -- crates/core/fixtures/eagle127.json 62
//! ```

use qbatch::devices::falcon_27;
use qbatch::{find_boundary, CouplingMap, Layout};

fn main() -> qbatch::Result<()> {
    let mut args = std::env::args().skip(1);
    let map = match args.next() {
        Some(path) => CouplingMap::from_json(&std::fs::read_to_string(path)?)?,
        None => falcon_27(),
    };
    let source: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    println!(
        "{} qubits, {} couplings",
        map.num_qubits(),
        map.edges().len()
    );
    let mut by_distance: Vec<Vec<usize>> = Vec::new();
    for q in 0..map.num_qubits() {
        let d = map.distance(source, q)? as usize;
        if d >= by_distance.len() {
            by_distance.resize(d + 1, Vec::new());
        }
        by_distance[d].push(q);
    }
    for (d, qubits) in by_distance.iter().enumerate() {
        println!("  {d:>2} hops from {source}: {qubits:?}");
    }

    // the qubits within two hops of the source form a region
    let region: Vec<usize> = by_distance.iter().take(3).flatten().copied().collect();
    let layout = Layout::new("region", region.clone(), &map)?;
    println!("region {region:?}");
    println!("boundary {:?}", find_boundary(&layout, &map));
    Ok(())
}
