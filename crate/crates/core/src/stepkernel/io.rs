//! JSON forms.
//!
//! Kernel: `{"k": 2, "measures": [..], "values": [[..],..], "bound": 1.0}`.
//! Digraphon: the same with `"type": "digraphon"`.
//! Bidirected pair: `{"measures": [..], "W1": [[..]], "W2": [[..]]}`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BidirectedStepPair, StepDigraphon, StepKernel};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelWire {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    k: usize,
    measures: Vec<f64>,
    values: Vec<Vec<f64>>,
    bound: f64,
}

impl KernelWire {
    fn of(k: &StepKernel, kind: Option<&str>) -> Self {
        KernelWire {
            kind: kind.map(str::to_owned),
            k: k.k(),
            measures: k.measures().to_vec(),
            values: k.values().to_rows(),
            bound: k.bound(),
        }
    }

    fn build(self) -> Result<StepKernel> {
        if self.k != self.measures.len() {
            return Err(Error::Schema(format!(
                "k = {} but {} measures given",
                self.k,
                self.measures.len()
            )));
        }
        StepKernel::with_bound(self.values, self.measures, self.bound)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairWire {
    measures: Vec<f64>,
    #[serde(rename = "W1")]
    w1: Vec<Vec<f64>>,
    #[serde(rename = "W2")]
    w2: Vec<Vec<f64>>,
}

impl Serialize for StepKernel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KernelWire::of(self, None).serialize(s)
    }
}

impl<'de> Deserialize<'de> for StepKernel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        KernelWire::deserialize(d)?
            .build()
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for StepDigraphon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KernelWire::of(self, Some("digraphon")).serialize(s)
    }
}

impl<'de> Deserialize<'de> for StepDigraphon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = KernelWire::deserialize(d)?;
        if wire.kind.as_deref() != Some("digraphon") {
            return Err(D::Error::custom("expected \"type\": \"digraphon\""));
        }
        StepDigraphon::new(wire.build().map_err(D::Error::custom)?).map_err(D::Error::custom)
    }
}

impl Serialize for BidirectedStepPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PairWire {
            measures: self.measures().to_vec(),
            w1: self.w1_matrix().to_rows(),
            w2: self.w2_matrix().to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BidirectedStepPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PairWire::deserialize(d)?;
        BidirectedStepPair::new(w.w1, w.w2, w.measures).map_err(serde::de::Error::custom)
    }
}

/// Any of the three kernel files the command line accepts.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelDocument {
    Kernel(StepKernel),
    Digraphon(StepDigraphon),
    Pair(BidirectedStepPair),
}

impl KernelDocument {
    /// Dispatches on the presence of `"W1"` and on `"type"`.
    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Schema(format!("kernel JSON: {e}")))?;
        let schema = |e: serde_json::Error| Error::Schema(format!("kernel JSON: {e}"));
        if value.get("W1").is_some() {
            serde_json::from_value(value)
                .map(Self::Pair)
                .map_err(schema)
        } else if value.get("type").is_some() {
            serde_json::from_value(value)
                .map(Self::Digraphon)
                .map_err(schema)
        } else {
            serde_json::from_value(value)
                .map(Self::Kernel)
                .map_err(schema)
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Self::Kernel(k) => serde_json::to_string(k),
            Self::Digraphon(w) => serde_json::to_string(w),
            Self::Pair(p) => serde_json::to_string(p),
        }
        .expect("kernels serialize")
    }

    /// The kernel seen by digraphs without antiparallel pairs.
    pub fn kernel(&self) -> StepKernel {
        match self {
            Self::Kernel(k) => k.clone(),
            Self::Digraphon(w) => w.kernel().clone(),
            Self::Pair(p) => super::collapse(p),
        }
    }
}
