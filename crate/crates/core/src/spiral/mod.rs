//! Spiral chains, full-revolution segments and the strip structures between them.

mod extract;
mod ladder;
mod schedule;
mod segment;
mod theta;

pub use extract::{extract_spiral_chains, SpiralChain, SpiralDecomposition};
pub use ladder::{
    fan_decomposition, induced_is_outerplanar, interior_faces, ladder_fan_between, ladder_three_colorable,
    strip_is_outerplanar, Fan, FanDecomposition, FanSide, FanTriangle, LadderFan, ThreeColorCheck,
};
pub use schedule::Schedule;
pub use segment::{segment_chain, SpiralSegment};
pub use theta::{detect_theta_separator, ThetaSeparator};
