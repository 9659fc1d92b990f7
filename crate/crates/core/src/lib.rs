//! Spiral-chain four-coloring of maximal planar graphs.
//!
//! * [`planar`]: rotation-system triangulations, validation, documents.
//! * [`spiral`]: spiral chains, full-revolution segments, ladder-fans.
//! * [`coloring`]: the spiral colorer, Kempe machinery, the Kempe-Kittell
//!   baseline, an exact solver and the independent verifier.
//! * [`genlab`]: random triangulations, the bundled corpus, fuzz campaigns.
//! * [`cli`]: the `spiralcolor` command line.

pub mod cli;
pub mod coloring;
pub mod genlab;
pub mod planar;
pub mod spiral;
