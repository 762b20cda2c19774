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

//! End-to-end runs of the `qbatch` binary on the bundled fixtures.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qbatch::scheduler::ScheduleDocument;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn qbatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbatch"))
        .args(args)
        .output()
        .unwrap()
}

fn device_args(device: &str, circuits: &Path) -> Vec<String> {
    vec![
        "--coupling".into(),
        fixture(&format!("{device}.json")).display().to_string(),
        "--calibration".into(),
        fixture(&format!("{device}_calibration.json"))
            .display()
            .to_string(),
        "--circuits".into(),
        circuits.display().to_string(),
    ]
}

fn run(sub: &str, device: &str, circuits: &Path, extra: &[&str]) -> Output {
    let mut args: Vec<String> = vec![sub.into()];
    args.extend(device_args(device, circuits));
    args.extend(extra.iter().map(|s| s.to_string()));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    qbatch(&refs)
}

#[test]
fn schedule_writes_document_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("schedule.json");
    let result = run(
        "schedule",
        "falcon27",
        &fixture("chain10_x7.json"),
        &["--out", out.to_str().unwrap()],
    );
    assert!(
        result.status.success(),
        "{}",
        String::from_utf8_lossy(&result.stderr)
    );
    let summary = String::from_utf8(result.stdout).unwrap();
    assert!(summary.contains("gain"), "{summary}");
    let doc: ScheduleDocument =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let sizes: Vec<usize> = doc.batches.iter().map(|b| b.assignments.len()).collect();
    assert_eq!(sizes, [2, 2, 2, 1]);
    assert!((doc.metrics.gain - 1.75).abs() < 1e-12);
    assert!(doc.unschedulable.is_empty());
}

#[test]
fn schedule_to_stdout_is_deterministic() {
    let a = run("schedule", "eagle127", &fixture("chain10_x7.json"), &[]);
    let b = run("schedule", "eagle127", &fixture("chain10_x7.json"), &[]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: ScheduleDocument = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc.metrics.num_batches, 3);
}

#[test]
fn empty_and_oversized_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"circuits": []}"#).unwrap();
    let result = run("schedule", "falcon27", &empty, &[]);
    assert!(result.status.success());
    let doc: ScheduleDocument = serde_json::from_slice(&result.stdout).unwrap();
    assert!(doc.batches.is_empty());
    assert_eq!(doc.metrics.gain, 0.0);

    let big = dir.path().join("big.json");
    let set = qbatch::CircuitSet::new(vec![qbatch::CircuitSpec::chain("wide", 30, 1)]).unwrap();
    std::fs::write(&big, serde_json::to_string(&set.to_document()).unwrap()).unwrap();
    let result = run("schedule", "falcon27", &big, &[]);
    assert!(result.status.success());
    let doc: ScheduleDocument = serde_json::from_slice(&result.stdout).unwrap();
    assert_eq!(doc.unschedulable, ["wide"]);
}

#[test]
fn input_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "not json").unwrap();
    let result = run("schedule", "falcon27", &bad, &[]);
    assert_eq!(result.status.code(), Some(1));
    assert!(!result.stderr.is_empty());

    let result = run(
        "schedule",
        "falcon27",
        &fixture("chain10_x7.json"),
        &["--epsilon-mode", "absolute"],
    );
    assert_eq!(result.status.code(), Some(1));
}

#[test]
fn exact_solver_guard_exits_with_two() {
    let result = run(
        "schedule",
        "falcon27",
        &fixture("chain10_x7.json"),
        &["--solver", "exact"],
    );
    assert_eq!(
        result.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&result.stderr)
    );
}

#[test]
fn layouts_and_graph_dump() {
    let result = run(
        "layouts",
        "falcon27",
        &fixture("chain10_x7.json"),
        &["--layout-cap", "50"],
    );
    assert!(result.status.success());
    let docs: Vec<qbatch::layout::LayoutDocument> = serde_json::from_slice(&result.stdout).unwrap();
    assert_eq!(docs.len(), 7);
    for doc in &docs {
        assert_eq!(doc.layouts.len(), 25);
        assert!(doc.layouts.windows(2).all(|w| w[0].score <= w[1].score));
    }

    let result = run(
        "graph-dump",
        "eagle127",
        &fixture("chain10_x7.json"),
        &["--layout-cap", "20"],
    );
    assert!(result.status.success());
    let graph: qbatch::compat::GraphDocument = serde_json::from_slice(&result.stdout).unwrap();
    assert_eq!(graph.vertices.len(), 70);
    assert!(graph.edges.iter().all(|e| e.w >= 0.0));
}

#[test]
fn supplied_layouts_replace_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let layouts = dir.path().join("layouts.json");
    let listed = run(
        "layouts",
        "falcon27",
        &fixture("chain10_x7.json"),
        &["--layout-cap", "10"],
    );
    std::fs::write(&layouts, &listed.stdout).unwrap();
    let result = run(
        "schedule",
        "falcon27",
        &fixture("chain10_x7.json"),
        &[
            "--layouts",
            layouts.to_str().unwrap(),
            "--epsilon-mode",
            "absolute",
            "--epsilon",
            "1",
        ],
    );
    assert!(
        result.status.success(),
        "{}",
        String::from_utf8_lossy(&result.stderr)
    );
    let docs: Vec<qbatch::layout::LayoutDocument> = serde_json::from_slice(&listed.stdout).unwrap();
    let doc: ScheduleDocument = serde_json::from_slice(&result.stdout).unwrap();
    for batch in &doc.batches {
        for (id, entry) in &batch.assignments {
            let mine = docs.iter().find(|d| &d.circuit_id == id).unwrap();
            assert!(mine.layouts.iter().any(|l| l.mapping == entry.mapping));
        }
    }
}

#[test]
fn arrivals_add_start_times() {
    let dir = tempfile::tempdir().unwrap();
    let arrivals = dir.path().join("arrivals.json");
    let entries: Vec<String> = (0..7)
        .map(|i| format!(r#"{{"time": {}, "circuit": "chain10_{i}"}}"#, i / 3))
        .collect();
    std::fs::write(
        &arrivals,
        format!(r#"{{"arrivals": [{}]}}"#, entries.join(",")),
    )
    .unwrap();
    let result = run(
        "schedule",
        "falcon27",
        &fixture("chain10_x7.json"),
        &["--arrivals", arrivals.to_str().unwrap()],
    );
    assert!(
        result.status.success(),
        "{}",
        String::from_utf8_lossy(&result.stderr)
    );
    let doc: ScheduleDocument = serde_json::from_slice(&result.stdout).unwrap();
    assert!(doc.batches.iter().all(|b| b.start_time.is_some()));
    assert_eq!(
        doc.batches
            .iter()
            .map(|b| b.assignments.len())
            .sum::<usize>(),
        7
    );
}

#[test]
fn marginalize_counts() {
    let dir = tempfile::tempdir().unwrap();
    let counts = dir.path().join("counts.json");
    std::fs::write(
        &counts,
        r#"{"spans": {"a": [0, 1], "b": [2]}, "counts": {"001": 10, "000": 5, "111": 3}}"#,
    )
    .unwrap();
    let result = qbatch(&[
        "marginalize",
        "--counts",
        counts.to_str().unwrap(),
        "--circuit",
        "a",
    ]);
    assert!(result.status.success());
    let marginal: std::collections::BTreeMap<String, u64> =
        serde_json::from_slice(&result.stdout).unwrap();
    assert_eq!(
        marginal,
        [("00".to_string(), 15), ("11".to_string(), 3)]
            .into_iter()
            .collect()
    );

    let result = qbatch(&[
        "marginalize",
        "--counts",
        counts.to_str().unwrap(),
        "--circuit",
        "zz",
    ]);
    assert_eq!(result.status.code(), Some(1));
}
