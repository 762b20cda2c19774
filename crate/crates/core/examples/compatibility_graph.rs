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

//! Builds the compatibility graph of three small circuits with two layouts
//! each, lists its weighted edges and picks a batch greedily.
//!
//! ```bash
//! cargo run -p qbatch --example compatibility_graph
//! ```

use qbatch::build_graph;
use qbatch::fixtures::{three_circuit_vertex, three_circuits};
use qbatch::scheduler::greedy_clique;

fn main() -> qbatch::Result<()> {
    let (map, circuits, lists) = three_circuits();
    let graph = build_graph(&circuits, &lists, &map, 1)?;

    // label vertices as (circuit, layout) in the order the layouts were given
    let mut labels = vec![String::new(); graph.vertices().len()];
    for i in 0..3 {
        for j in 0..2 {
            labels[three_circuit_vertex(&graph, i, j)] = format!("({i},{j})");
        }
    }
    for (v, vx) in graph.vertices().iter().enumerate() {
        println!(
            "{} score {:.4} on {:?}",
            labels[v],
            vx.layout.score(),
            vx.layout.mapping()
        );
    }
    println!(
        "\n{} edges, heaviest raw weight {:.4}",
        graph.edges().len(),
        graph.max_raw_weight()
    );
    for e in graph.edges() {
        println!(
            "  {} - {}  raw {:.4}  weight {:.4}",
            labels[e.u], labels[e.v], e.raw_weight, e.weight
        );
    }

    let clique = greedy_clique(&graph, map.num_qubits());
    let picked: Vec<&str> = clique
        .vertices
        .iter()
        .map(|&v| labels[v].as_str())
        .collect();
    println!("\ngreedy batch {picked:?} with weight {:.4}", clique.weight);
    Ok(())
}
