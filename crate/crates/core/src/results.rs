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

//! Splitting joint measurement counts back into per-circuit counts.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheduler::Batch;

/// Counts over the concatenated classical register of a batch. Position 0
/// is the leftmost character of every outcome string.
#[derive(Debug, Clone, PartialEq)]
pub struct JointCounts {
    num_bits: usize,
    counts: BTreeMap<String, u64>,
    spans: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JointCountsDocument {
    pub spans: BTreeMap<String, Vec<usize>>,
    pub counts: BTreeMap<String, u64>,
}

impl JointCounts {
    pub fn new(spans: BTreeMap<String, Vec<usize>>, counts: BTreeMap<String, u64>) -> Result<Self> {
        let num_bits = match counts.keys().next() {
            Some(k) => k.len(),
            None => return Err(Error::InvalidCounts("no outcomes".into())),
        };
        for key in counts.keys() {
            if key.len() != num_bits || !key.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::InvalidCounts(format!(
                    "outcome `{key}` is not a {num_bits}-bit string"
                )));
            }
        }
        if counts.values().sum::<u64>() == 0 {
            return Err(Error::InvalidCounts("total shots must be positive".into()));
        }
        let mut covered = BTreeSet::new();
        for (id, span) in &spans {
            if span.is_empty() {
                return Err(Error::InvalidCounts(format!("span of `{id}` is empty")));
            }
            for &p in span {
                if p >= num_bits {
                    return Err(Error::InvalidCounts(format!(
                        "span of `{id}` has position {p} of {num_bits}"
                    )));
                }
                if !covered.insert(p) {
                    return Err(Error::InvalidCounts(format!(
                        "position {p} appears in two spans"
                    )));
                }
            }
        }
        if covered.len() != num_bits {
            return Err(Error::InvalidCounts(format!(
                "spans cover {} of {num_bits} positions",
                covered.len()
            )));
        }
        Ok(JointCounts {
            num_bits,
            counts,
            spans,
        })
    }

    pub fn from_document(doc: JointCountsDocument) -> Result<Self> {
        Self::new(doc.spans, doc.counts)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: JointCountsDocument =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn spans(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.spans
    }

    pub fn total_shots(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Counts of one circuit, summed over every bit outside its span. Bits
    /// of the result follow the span's order.
    pub fn marginalize(&self, circuit_id: &str) -> Result<BTreeMap<String, u64>> {
        let span = self
            .spans
            .get(circuit_id)
            .ok_or_else(|| Error::UnknownCircuit(circuit_id.to_string()))?;
        let mut out = BTreeMap::new();
        for (key, &count) in &self.counts {
            let bytes = key.as_bytes();
            let sub: String = span.iter().map(|&p| bytes[p] as char).collect();
            *out.entry(sub).or_insert(0) += count;
        }
        Ok(out)
    }
}

/// Contiguous spans for a batch: circuits in assignment order, and within a
/// circuit its qubits by ascending physical index.
pub fn batch_spans(batch: &Batch) -> BTreeMap<String, Vec<usize>> {
    let mut next = 0;
    batch
        .assignments
        .iter()
        .map(|(id, layout)| {
            let span: Vec<usize> = (next..next + layout.num_qubits()).collect();
            next += layout.num_qubits();
            (id.clone(), span)
        })
        .collect()
}

/// Physical qubit read into each joint position by [`batch_spans`].
pub fn batch_register(batch: &Batch) -> Vec<usize> {
    batch
        .assignments
        .iter()
        .flat_map(|(_, layout)| {
            let mut qs = layout.mapping().to_vec();
            qs.sort_unstable();
            qs
        })
        .collect()
}

/// Squared Bhattacharyya coefficient between measured counts and an ideal
/// distribution. With a point-mass ideal this is the measured probability
/// of that outcome.
pub fn fidelity_vs_ideal(
    marginal: &BTreeMap<String, u64>,
    ideal: &BTreeMap<String, f64>,
) -> Result<f64> {
    let width = |keys: &mut dyn Iterator<Item = &String>| -> Result<Option<usize>> {
        let mut w = None;
        for k in keys {
            match w {
                None => w = Some(k.len()),
                Some(n) if n != k.len() => {
                    return Err(Error::InvalidCounts(format!(
                        "mixed widths {n} and {}",
                        k.len()
                    )))
                }
                _ => {}
            }
        }
        Ok(w)
    };
    let wm = width(&mut marginal.keys())?;
    let wi = width(&mut ideal.keys())?;
    if let (Some(a), Some(b)) = (wm, wi) {
        if a != b {
            return Err(Error::InvalidCounts(format!(
                "width {a} against ideal width {b}"
            )));
        }
    }
    let shots: u64 = marginal.values().sum();
    if shots == 0 {
        return Err(Error::InvalidCounts("no shots".into()));
    }
    let overlap: f64 = ideal
        .iter()
        .map(|(k, &q)| {
            let p = marginal.get(k).copied().unwrap_or(0) as f64 / shots as f64;
            (p * q).sqrt()
        })
        .sum();
    Ok((overlap * overlap).clamp(0.0, 1.0))
}

pub fn point_mass(outcome: &str) -> BTreeMap<String, f64> {
    BTreeMap::from([(outcome.to_string(), 1.0)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(pairs: &[(&str, u64)]) -> BTreeMap<String, u64> {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    fn spans(pairs: &[(&str, &[usize])]) -> BTreeMap<String, Vec<usize>> {
        pairs
            .iter()
            .map(|&(k, v)| (k.to_string(), v.to_vec()))
            .collect()
    }

    #[test]
    fn collapse_last_bit() {
        let joint = JointCounts::new(
            spans(&[("a", &[0, 1]), ("b", &[2])]),
            counts(&[("000", 5), ("001", 5)]),
        )
        .unwrap();
        assert_eq!(joint.marginalize("a").unwrap(), counts(&[("00", 10)]));
        assert_eq!(
            joint.marginalize("b").unwrap(),
            counts(&[("0", 5), ("1", 5)])
        );
        assert!(matches!(
            joint.marginalize("c"),
            Err(Error::UnknownCircuit(_))
        ));
    }

    #[test]
    fn single_circuit_identity() {
        let c = counts(&[("010", 3), ("111", 9)]);
        let joint = JointCounts::new(spans(&[("a", &[0, 1, 2])]), c.clone()).unwrap();
        assert_eq!(joint.marginalize("a").unwrap(), c);
    }

    #[test]
    fn malformed_joints() {
        let s = spans(&[("a", &[0, 1])]);
        assert!(JointCounts::new(s.clone(), counts(&[("00", 1), ("001", 1)])).is_err());
        assert!(JointCounts::new(s.clone(), counts(&[("0x", 1)])).is_err());
        assert!(JointCounts::new(s.clone(), counts(&[("00", 0)])).is_err());
        assert!(JointCounts::new(s, BTreeMap::new()).is_err());
        assert!(
            JointCounts::new(spans(&[("a", &[0]), ("b", &[0, 1])]), counts(&[("00", 1)])).is_err()
        );
        assert!(JointCounts::new(spans(&[("a", &[0])]), counts(&[("00", 1)])).is_err());
        assert!(JointCounts::new(spans(&[("a", &[0, 2])]), counts(&[("00", 1)])).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let ideal = point_mass("000");
        assert_eq!(
            fidelity_vs_ideal(&counts(&[("000", 100)]), &ideal).unwrap(),
            1.0
        );
        assert_eq!(
            fidelity_vs_ideal(&counts(&[("111", 100)]), &ideal).unwrap(),
            0.0
        );
        let uniform = counts(&[("00", 25), ("01", 25), ("10", 25), ("11", 25)]);
        assert!((fidelity_vs_ideal(&uniform, &point_mass("00")).unwrap() - 0.25).abs() < 1e-15);
        assert!(fidelity_vs_ideal(&uniform, &ideal).is_err());
    }

    #[test]
    fn document_format() {
        let joint =
            JointCounts::from_json(r#"{"spans":{"a":[0,1],"b":[2]},"counts":{"000":5,"001":5}}"#)
                .unwrap();
        assert_eq!(joint.total_shots(), 10);
        assert_eq!(joint.num_bits(), 3);
    }
}
