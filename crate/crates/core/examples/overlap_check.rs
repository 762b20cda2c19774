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

//! Buffer-distance checks between two regions of the 27-qubit device,
//! comparing boundary-only lookups with checking every qubit pair.
//!
//! ```bash
//! cargo run -p qbatch --example overlap_check
//! ```

use qbatch::fixtures::split_13_8;
use qbatch::layout::{b_overlap_all_pairs_counted, b_overlap_counted};

fn main() -> qbatch::Result<()> {
    let (map, left, right) = split_13_8();
    println!("left  {:?} boundary {:?}", left.mapping(), left.boundary());
    println!(
        "right {:?} boundary {:?}",
        right.mapping(),
        right.boundary()
    );
    println!(
        "\n{:>6} {:>9} {:>9} {:>9}",
        "buffer", "overlap", "boundary", "naive"
    );
    for b in 0..=4 {
        let (overlap, fast) = b_overlap_counted(&left, &right, &map, b)?;
        let (_, naive) = b_overlap_all_pairs_counted(&left, &right, &map, b)?;
        println!("{b:>6} {overlap:>9} {fast:>9} {naive:>9}");
    }
    Ok(())
}
