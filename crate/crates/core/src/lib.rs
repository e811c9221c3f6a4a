//! Finite quasigroups given by Cayley tables.
//!
//! Elements of an order-`n` quasigroup are the indices `0..n`, with
//! `n ≤ 64`. The crate covers
//!
//! - [`table`]: validated tables, division, translation maps, associativity;
//! - [`parastrophe`]: the six conjugate operations and the identities
//!   between their translation maps;
//! - [`substructure`]: subquasigroups and Smarandache detection;
//! - [`isotopy`]: isotopisms, isotopism search and group-isotopy;
//! - [`verify`]: the triple characterization of associative subquasigroups
//!   across all six parastrophes;
//! - [`generate`] and [`enumerate`]: random and exhaustive Latin squares.

pub mod enumerate;
pub mod error;
pub mod explore;
pub mod format;
pub mod generate;
pub mod isotopy;
pub mod parastrophe;
pub mod permutation;
pub mod substructure;
pub mod table;
pub mod verify;

/// An element of a quasigroup, as a dense index `0..n`.
pub type Element = usize;

pub use error::{Error, Line, Result};
pub use format::{format_table, parse_table};
pub use isotopy::{
    apply_isotopism, find_isotopism, find_isotopism_parallel, is_group_isotope, is_isotopism,
    principal_loop_isotope, Isotopism, IsotopySearchResult,
};
pub use parastrophe::{
    check_translation_identities, compose_parastrophes, parastrophe, ParastropheIndex,
};
pub use permutation::Permutation;
pub use substructure::{
    analyze_subset, closure, enumerate_subquasigroups, find_smarandache, SmarandacheCertificate,
    Subset,
};
pub use table::{AssociativityVerdict, QuasigroupTable, MAX_ORDER};
pub use verify::{
    check_all_parastrophes, check_parastrophe_corollaries, check_triple_characterization,
    VerificationReport,
};
