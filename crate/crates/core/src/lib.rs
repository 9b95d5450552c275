//! Exact minimum weight distribution (MWD) analysis for polar codes and
//! CRC-polar concatenated codes.
//!
//! The minimum-weight codewords of a code all lie on one Hamming sphere
//! around the all-zero word. The enumerators in this crate walk the
//! encoder's lower-triangular structure from the last bit to the first and
//! prune every partial path whose codeword suffix is already heavier than
//! the sphere radius:
//!
//! * [`scem`] enumerates the minimum-weight shell of a polar code directly.
//! * [`screm`] splits the code with the `(u ⊕ v | v)` construction and
//!   rebuilds the shell from the shells of the two half-length codes.
//! * [`pc_scem`] adds the outer code's parity-check equations so that only
//!   codewords of a concatenated code are visited.
//!
//! The [`oracle`] module holds exhaustive reference enumerators used by the
//! test suites.

pub mod analysis;
pub mod bits;
pub mod concat;
pub mod construct;
pub mod enumeration;
mod error;
pub mod io;
pub mod oracle;
pub mod polar;
mod search;

pub use analysis::{
    aub, crc_optimize, q_function, scl_avn, union_bound, BoundPoint, CrcCandidate, CrcSearchReport,
};
pub use bits::Codeword;
pub use concat::{
    derive_parity_sets, pc_scem, pc_scem_system, transform_parity_sets, ConcatSpec, CrcPolynomial,
    Mapping, ParityCheckSystem,
};
pub use construct::{construct_ga, construct_pw, PW_BETA};
pub use enumeration::{
    build_t4, scem, screm, screm_with, Mode, MwdResult, ResultFlag, ScremOptions,
};
pub use error::{Error, Result};
pub use polar::{
    bit_reversal, encode, generator_row_weight, min_weight_lower_bound, plotkin_split, CodeSpec,
    Construction, PlotkinSplit,
};
