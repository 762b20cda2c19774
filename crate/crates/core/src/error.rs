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

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("qubit index {index} out of range for a device with {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("duplicate coupling edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop on qubit {0}")]
    SelfLoop(usize),
    #[error("calibration: {0}")]
    Calibration(String),
    #[error("invalid circuit `{id}`: {reason}")]
    InvalidCircuit { id: String, reason: String },
    #[error("duplicate circuit id `{0}`")]
    DuplicateCircuit(String),
    #[error("unknown circuit `{0}`")]
    UnknownCircuit(String),
    #[error("invalid layout for `{id}`: {reason}")]
    InvalidLayout { id: String, reason: String },
    #[error("layouts belong to different coupling maps")]
    DeviceMismatch,
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
    #[error("exact search space of {size} assignments exceeds the limit of {limit}")]
    InstanceTooLarge { size: u128, limit: u128 },
    #[error("invalid counts: {0}")]
    InvalidCounts(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
