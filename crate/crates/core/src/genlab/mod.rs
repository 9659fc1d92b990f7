//! Instance supply and empirical campaigns.

mod corpus;
mod fuzz;
mod generate;

pub use corpus::{corpus, corpus_document, corpus_entry, CorpusEntry};
pub use fuzz::{
    chains_partition, check_structure, fuzz, fuzz_instance, segments_rescan, ExactTally, FuzzConfig, FuzzReport,
    StageCounts, Stratum, StructureTally, Tally,
};
pub use generate::{flip_edge, generate_triangulation, FlipRefusal, GenConfig};
