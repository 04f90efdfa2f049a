//! Verification suites, sweeps and corpus scans.

pub mod enumerate;
pub mod scan;
pub mod sweeps;
pub mod verify;
