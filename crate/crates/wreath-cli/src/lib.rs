//! JSON wire formats, verdict reports, and graph dumps for the wreath
//! decision command line. All decision arithmetic lives in `wreath-core`;
//! this crate only parses input, shapes output, and talks to the filesystem.

pub mod dump;
pub mod input;
pub mod report;
