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

//! Packs several routed quantum circuits onto one device at once.
//!
//! For every circuit the crate enumerates the embeddings of its interaction
//! graph into the device coupling graph, scores them from calibration data
//! and keeps the near-best ones. Layouts of different circuits that keep a
//! buffer distance from each other become edges of a compatibility graph;
//! a greedy maximal clique (or an exact branch-and-bound over the same
//! constraints) picks the circuits to run together. Batches are formed
//! until the queue is empty, and joint measurement counts are split back
//! into per-circuit distributions by marginalization.

pub mod circuit;
pub mod cli;
pub mod compat;
pub mod devices;
pub mod error;
pub mod fixtures;
pub mod hardware;
pub mod layout;
pub mod results;
pub mod scheduler;

pub use circuit::{CircuitSet, CircuitSpec, Op, OpKind};
pub use compat::{build_graph, CompatibilityGraph};
pub use error::{Error, Result};
pub use hardware::{CalibrationData, CouplingMap, UNREACHABLE};
pub use layout::{
    b_overlap, enumerate_layouts, filter_layouts, find_boundary, score_layout, Layout,
    LayoutFilter, LayoutList,
};
pub use scheduler::{schedule_all, schedule_dynamic, Batch, Schedule, ScheduleConfig, Solver};
