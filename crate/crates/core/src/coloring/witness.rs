use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::planar::{load_rotation_system, DocumentError, VertexId};
use crate::spiral::SpiralDecomposition;

use super::color::{Color, Coloring};
use super::kittell::{kempe_kittell_color, KittellCaps, KittellTrace};
use super::spiral::{spiral_color, SegmentPlan, SpiralOptions, Stage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Spiral,
    KempeKittell,
    Exact,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Spiral => "spiral",
            Algorithm::KempeKittell => "kempe-kittell",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spiral" => Ok(Algorithm::Spiral),
            "kempe-kittell" => Ok(Algorithm::KempeKittell),
            "exact" => Ok(Algorithm::Exact),
            other => Err(format!("unknown algorithm '{other}' (spiral, kempe-kittell, exact)")),
        }
    }
}

/// Everything needed to rerun the engine that got stuck.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spiral: Option<SpiralOptions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<KittellCaps>,
}

/// The state of a coloring impasse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureWitness {
    pub algorithm: Algorithm,
    pub params: WitnessParams,
    /// Rotation-system document of the input graph, verbatim.
    pub graph: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<SpiralDecomposition>,
    /// Palettes of the segments handled so far, the stuck one last.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub schedule: Vec<SegmentPlan>,
    pub partial: Coloring,
    pub stuck_vertex: VertexId,
    /// Distinct colors on the colored neighbours of the stuck vertex.
    pub blocking: Vec<Color>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stages_tried: Vec<Stage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<KittellTrace>,
}

impl FailureWitness {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Hex SHA-256 of the JSON form, used as the file name.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }

    pub fn file_name(&self) -> String {
        format!("witness-{}.json", &self.content_hash()[..16])
    }
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("embedded graph: {0}")]
    Graph(#[from] DocumentError),
    #[error("{0} runs do not produce witnesses")]
    NotReplayable(Algorithm),
    #[error("witness lacks the parameters needed to rerun {0}")]
    MissingParams(Algorithm),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum ReplayOutcome {
    /// The rerun stopped at the identical state.
    Reproduced { stuck_vertex: VertexId, blocking: Vec<Color> },
    /// The rerun stopped elsewhere.
    Diverged { stuck_vertex: VertexId, blocking: Vec<Color> },
    /// The rerun colored the graph.
    Colored,
}

/// Reruns the recorded engine on the embedded graph and compares the result
/// with the recorded witness field by field.
pub fn replay_witness(w: &FailureWitness) -> Result<ReplayOutcome, ReplayError> {
    let g = load_rotation_system(&w.graph)?;
    let rerun = match w.algorithm {
        Algorithm::Spiral => {
            let opts = w.params.spiral.ok_or(ReplayError::MissingParams(w.algorithm))?;
            spiral_color(&g, &opts).err()
        }
        Algorithm::KempeKittell => {
            let seed = w.params.seed.ok_or(ReplayError::MissingParams(w.algorithm))?;
            let caps = w.params.caps.ok_or(ReplayError::MissingParams(w.algorithm))?;
            kempe_kittell_color(&g, seed, &caps).err()
        }
        Algorithm::Exact => return Err(ReplayError::NotReplayable(w.algorithm)),
    };
    Ok(match rerun {
        None => ReplayOutcome::Colored,
        Some(r) if *r == *w => ReplayOutcome::Reproduced { stuck_vertex: r.stuck_vertex, blocking: r.blocking },
        Some(r) => ReplayOutcome::Diverged { stuck_vertex: r.stuck_vertex, blocking: r.blocking },
    })
}
