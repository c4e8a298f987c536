//! Tilings of `Z^n` and its tori by the half-cross `Υ_n`, and their
//! correspondence with binary and ternary perfect codes.
//!
//! The crate covers distances and the shape itself ([`geometry`]), perfect
//! codes ([`codes`]), integer lattices ([`lattice`]), periodic tilings with
//! an exact verifier and audits ([`tiling`]), the code-to-tiling
//! constructions ([`constructions`]) and a small exhaustive search
//! ([`search`]). [`format`], [`report`] and [`svg`] handle I/O.

pub mod codes;
pub mod constructions;
pub mod error;
pub mod format;
pub mod geometry;
pub mod lattice;
pub mod report;
pub mod search;
pub mod svg;
pub mod tiling;

pub use codes::{binary_hamming, ternary_hamming, BlockCode, PerfectCheck};
pub use error::{Error, Result};
pub use geometry::{covers, cross_distance, upsilon_offsets, Point, UpsilonShape};
pub use lattice::{is_lattice_tiling, lambda_n, IntegerLattice};
pub use search::{search_tilings, SearchConfig, SearchOutcome, SearchStatus};
pub use tiling::{verify, PeriodicTiling, VerificationReport};
