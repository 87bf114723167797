//! File formats, SVG rendering, reports and parallel search on top of
//! [`kolam_core`].

pub mod parallel;
pub mod program_file;
pub mod ratio;
pub mod report;
pub mod svg;
