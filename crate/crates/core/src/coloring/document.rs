use serde::{Deserialize, Serialize};

use crate::planar::PlanarTriangulation;

use super::color::Coloring;
use super::kittell::{KittellColoring, KittellStats};
use super::spiral::{SegmentPlan, SpiralColoring, SpiralOptions, SpiralStats};
use super::verify::{verify_coloring, VerificationReport};
use super::witness::Algorithm;

/// JSON form of a finished coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDocument {
    pub algorithm: Algorithm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<SpiralOptions>,
    pub n: usize,
    /// `colors[v]` is the color of vertex `v`.
    pub colors: Coloring,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub palette_schedule: Vec<SegmentPlan>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spiral_stats: Option<SpiralStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kittell_stats: Option<KittellStats>,
    pub verification: VerificationReport,
}

impl ColoringDocument {
    pub fn from_spiral(g: &PlanarTriangulation, out: &SpiralColoring, options: SpiralOptions) -> Self {
        ColoringDocument {
            algorithm: Algorithm::Spiral,
            seed: None,
            options: Some(options),
            n: g.n(),
            colors: out.coloring.clone(),
            palette_schedule: out.schedule.clone(),
            spiral_stats: Some(out.stats),
            kittell_stats: None,
            verification: verify_coloring(g, &out.coloring),
        }
    }

    pub fn from_kittell(g: &PlanarTriangulation, out: &KittellColoring) -> Self {
        ColoringDocument {
            algorithm: Algorithm::KempeKittell,
            seed: Some(out.seed),
            options: None,
            n: g.n(),
            colors: out.coloring.clone(),
            palette_schedule: Vec::new(),
            spiral_stats: None,
            kittell_stats: Some(out.stats),
            verification: verify_coloring(g, &out.coloring),
        }
    }

    pub fn from_exact(g: &PlanarTriangulation, coloring: Coloring) -> Self {
        ColoringDocument {
            algorithm: Algorithm::Exact,
            seed: None,
            options: None,
            n: g.n(),
            verification: verify_coloring(g, &coloring),
            colors: coloring,
            palette_schedule: Vec::new(),
            spiral_stats: None,
            kittell_stats: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}
