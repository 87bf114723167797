//! Exact counting of one-line ("infinite") Kolam drawings.
//!
//! A Kolam on a dot grid is translated into a Morse link presentation: an even
//! number of vertical strands closed by caps on top and cups at the bottom,
//! with rows of black and white sites in between. Every site is a binary
//! choice, so a program with `D` sites describes `2^D` drawings. This crate
//! counts how many of them consist of a single closed curve.
//!
//! Two routes are provided and cross-checked against each other:
//!
//! * an algebraic one, which evolves a sparse linear combination of
//!   perfect matchings ([`StateVector`]) row by row and reads the answer off
//!   the coefficient of `a^1` of the loop polynomial ([`LoopPoly`]);
//! * a brute-force one, which traces every assignment individually.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, rendering to
//! SVG, parallel brute force and the command line live in the `kolam` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod engine;
mod error;
pub mod layout;
pub mod metric;
pub mod morse;
pub mod pairing;
pub mod poly;
pub mod state;

pub use engine::{
    brute_distribution, brute_distribution_range, check_brute_limit, component_polynomial, count_infinite,
    count_infinite_with_peak, enumerate_solutions, evaluate_assignment, evolution_stats, evolve, Assignment,
    ComponentDistribution, CountOptions, EvolutionStats, Solutions,
};
pub use error::{Error, Result};
pub use layout::{layout, Curve, KolamLayout, Pass, Port};
pub use metric::{metric_report, MetricReport};
pub use morse::{boundary_reduce, Color, MorseProgram, ReducedProgram, Row, Site, Violation};
pub use pairing::{all_pairings, double_factorial, glue_cycles, Pairing};
pub use poly::{Count, LoopPoly};
pub use state::{Mode, StateVector};
