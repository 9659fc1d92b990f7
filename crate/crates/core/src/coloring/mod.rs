//! Coloring engines and the independent verifier.

mod color;
mod document;
mod exact;
mod kempe;
mod kittell;
mod spiral;
mod verify;
mod witness;

pub use color::{choose_palette, Color, ColorSet, Coloring, Palette, PaletteError};
pub use document::ColoringDocument;
pub use exact::{
    exact_color, exact_color_adjacency, exact_four_color, ExactConfig, ExactError, ExactOutcome, DEFAULT_EXACT_BOUND,
};
pub use kempe::{kempe_chain, kempe_switch, KempeChain, KempeError};
pub use kittell::{kempe_kittell_color, AttemptTrace, KittellCaps, KittellColoring, KittellStats, KittellTrace};
pub use spiral::{
    color_segment, ctype_switch, spiral_color, CtypeSwitch, KempeRepair, PaletteSwitch, SegmentConflict, SegmentPlan,
    SpiralColoring, SpiralOptions, SpiralStats, Stage,
};
pub use verify::{is_proper_partial, verify_coloring, ColoringViolation, VerificationReport};
pub use witness::{replay_witness, Algorithm, FailureWitness, ReplayError, ReplayOutcome, WitnessParams};
