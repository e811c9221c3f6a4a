//! Empirical look at the converse of the triple characterization: does an
//! arbitrary isotopism `(S, θ) → (S, (θ⁻¹)*)` force associativity?
//!
//! Nothing here is asserted; the summary is data.

use serde::Serialize;

use crate::enumerate::enumerate_all;
use crate::error::Result;
use crate::isotopy::{find_isotopism, IsotopySearchResult};
use crate::parastrophe::{parastrophe, ParastropheIndex};
use crate::table::QuasigroupTable;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConverseSummary {
    pub order: usize,
    pub squares: u64,
    pub associative: u64,
    /// Squares isotopic to their `(θ⁻¹)*` parastrophe.
    pub isotopic_to_linv_star: u64,
    /// Isotopic to `(θ⁻¹)*` yet not associative: counterexamples to the
    /// literal converse.
    pub isotopic_but_not_associative: u64,
    /// Searches that ran out of budget.
    pub undecided: u64,
    pub first_counterexample: Option<QuasigroupTable>,
}

/// Examines every Latin square of order `n` (at most 5).
pub fn explore_converse(n: usize, budget: u64) -> Result<ConverseSummary> {
    let mut summary = ConverseSummary {
        order: n,
        squares: 0,
        associative: 0,
        isotopic_to_linv_star: 0,
        isotopic_but_not_associative: 0,
        undecided: 0,
        first_counterexample: None,
    };
    enumerate_all(n, |q| {
        summary.squares += 1;
        let associative = q.is_associative().associative;
        summary.associative += u64::from(associative);
        let target = parastrophe(q, ParastropheIndex::P5);
        match find_isotopism(q, &target, budget).expect("same order") {
            IsotopySearchResult::Witness { .. } => {
                summary.isotopic_to_linv_star += 1;
                if !associative {
                    summary.isotopic_but_not_associative += 1;
                    summary
                        .first_counterexample
                        .get_or_insert_with(|| q.clone());
                }
            }
            IsotopySearchResult::NotIsotopic { .. } => {}
            IsotopySearchResult::BudgetExhausted { .. } => summary.undecided += 1,
        }
    })?;
    Ok(summary)
}
