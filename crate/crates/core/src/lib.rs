//! Exact symbolic tools for weighted complete intersections, weighted
//! blowups, 2-ray games and Sarkisov-link certificates.

pub mod qpoly;
pub mod ambient;
pub mod report;
pub mod singular;
pub mod links;
