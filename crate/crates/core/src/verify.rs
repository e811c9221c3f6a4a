//! Mechanical checks of the parastrophic characterization of associative
//! subquasigroups.
//!
//! For a closed subset `S` with induced operation θ, let `𝓡_s` be the right
//! translation by `s` in `(S, θ⁻¹)` and `𝕃_s` the left translation by `s` in
//! `(S, ⁻¹θ)`. The four triple families
//!
//! 1. `(𝓡_s, I, 𝓡_s) : (S, θ)  → (S, (θ⁻¹)*)`
//! 2. `(I, 𝓡_s, 𝓡_s) : (S, θ*) → (S, θ⁻¹)`
//! 3. `(I, 𝕃_s, 𝕃_s) : (S, θ)  → (S, (⁻¹θ)*)`
//! 4. `(𝕃_s, I, 𝕃_s) : (S, θ*) → (S, ⁻¹θ)`
//!
//! are isotopisms for every `s ∈ S` exactly when `(S, θ)` is associative.
//! Each family is checked separately and each family's verdict must agree
//! with the associativity verdict.

use serde::Serialize;

use crate::error::Result;
use crate::isotopy::{is_group_isotope, is_isotopism, Isotopism};
use crate::parastrophe::{
    compose_parastrophes, parastrophe, ParastropheIndex, ParastropheTranslations,
};
use crate::permutation::Permutation;
use crate::substructure::{induced_table, Subset};
use crate::table::{AssociativityVerdict, QuasigroupTable};
use crate::Element;

use ParastropheIndex::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    RightLinvAia,
    RightLinvIbb,
    LeftRinvIbb,
    LeftRinvAia,
}

impl Family {
    const ALL: [Family; 4] = [
        Family::RightLinvAia,
        Family::RightLinvIbb,
        Family::LeftRinvIbb,
        Family::LeftRinvAia,
    ];

    fn statement(self) -> u8 {
        self as u8 + 1
    }

    fn source(self) -> ParastropheIndex {
        match self {
            Family::RightLinvAia | Family::LeftRinvIbb => P1,
            Family::RightLinvIbb | Family::LeftRinvAia => P2,
        }
    }

    fn target(self) -> ParastropheIndex {
        match self {
            Family::RightLinvAia => P5,
            Family::RightLinvIbb => P3,
            Family::LeftRinvIbb => P6,
            Family::LeftRinvAia => P4,
        }
    }

    fn description(self) -> &'static str {
        match self {
            Family::RightLinvAia => "(R[linv]_s, I, R[linv]_s)",
            Family::RightLinvIbb => "(I, R[linv]_s, R[linv]_s)",
            Family::LeftRinvIbb => "(I, L[rinv]_s, L[rinv]_s)",
            Family::LeftRinvAia => "(L[rinv]_s, I, L[rinv]_s)",
        }
    }

    fn triple(self, t: &ParastropheTranslations, s: Element) -> Isotopism {
        let id = Permutation::identity(t.table(P1).order());
        let map = match self {
            Family::RightLinvAia | Family::RightLinvIbb => t.right(P3, s),
            Family::LeftRinvIbb | Family::LeftRinvAia => t.left(P4, s),
        };
        match self {
            Family::RightLinvAia | Family::LeftRinvAia => Isotopism {
                a: map.clone(),
                b: id,
                c: map,
            },
            Family::RightLinvIbb | Family::LeftRinvIbb => Isotopism {
                a: id,
                b: map.clone(),
                c: map,
            },
        }
    }
}

/// One triple family of one characterization, evaluated for every parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleCheckItem {
    /// 1–4, in the order listed in the module docs.
    pub statement: u8,
    /// Source and target operations, as parastrophes of the subset's own
    /// operation (the `p1` of the top-level report).
    pub source: ParastropheIndex,
    pub target: ParastropheIndex,
    pub family: String,
    pub holds: bool,
    /// First parameter, as an element of the ambient table, for which the
    /// triple is not an isotopism.
    pub failing_parameter: Option<Element>,
    /// The triple for every parameter, over subset ranks `0..|S|`, when the
    /// family holds.
    pub witnesses: Vec<(Element, Isotopism)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subset: Subset,
    /// The operation on `S` taken as base, relative to the subset's own
    /// operation.
    pub base: ParastropheIndex,
    pub associativity: AssociativityVerdict,
    pub items: Vec<TripleCheckItem>,
    /// Every family's verdict matches the associativity verdict.
    pub biconditional_consistent: bool,
}

impl VerificationReport {
    pub fn all_families_hold(&self) -> bool {
        self.items.iter().all(|i| i.holds)
    }

    /// The four `(source, target)` pairs, relative to the subset's operation.
    pub fn pairs(&self) -> Vec<(ParastropheIndex, ParastropheIndex)> {
        self.items.iter().map(|i| (i.source, i.target)).collect()
    }
}

/// Runs the four families on `base_table` (an operation on the ranks of `s`)
/// and labels the result relative to `base`.
fn characterize(
    base_table: &QuasigroupTable,
    s: &Subset,
    base: ParastropheIndex,
) -> VerificationReport {
    let t = ParastropheTranslations::new(base_table);
    let elems = s.to_vec();
    let associativity = base_table.is_associative();
    let items: Vec<TripleCheckItem> = Family::ALL
        .iter()
        .map(|&family| {
            let (src, dst) = (t.table(family.source()), t.table(family.target()));
            let mut witnesses = Vec::with_capacity(elems.len());
            let mut failing_parameter = None;
            for (p, &element) in elems.iter().enumerate() {
                let triple = family.triple(&t, p);
                if is_isotopism(src, dst, &triple).expect("orders agree") {
                    witnesses.push((element, triple));
                } else {
                    failing_parameter = Some(element);
                    break;
                }
            }
            let holds = failing_parameter.is_none();
            if !holds {
                witnesses.clear();
            }
            TripleCheckItem {
                statement: family.statement(),
                source: compose_parastrophes(base, family.source()),
                target: compose_parastrophes(base, family.target()),
                family: family.description().to_string(),
                holds,
                failing_parameter,
                witnesses,
            }
        })
        .collect();
    let biconditional_consistent = items.iter().all(|i| i.holds == associativity.associative);
    VerificationReport {
        subset: *s,
        base,
        associativity,
        items,
        biconditional_consistent,
    }
}

/// Checks the triple characterization on the subquasigroup `s` of `q`.
///
/// Fails with `NotClosed` when `s` is not closed under multiplication.
pub fn check_triple_characterization(
    q: &QuasigroupTable,
    s: &Subset,
) -> Result<VerificationReport> {
    let induced = induced_table(q, s)?;
    Ok(characterize(&induced, s, P1))
}

/// Re-evaluates one family at one parameter (both given relative to the
/// report) for audit purposes.
pub fn recheck_item(
    q: &QuasigroupTable,
    report: &VerificationReport,
    statement: u8,
    parameter: Element,
) -> Result<bool> {
    let induced = induced_table(q, &report.subset)?;
    let base_table = parastrophe(&induced, report.base);
    let family = Family::ALL[usize::from(statement) - 1];
    let t = ParastropheTranslations::new(&base_table);
    let rank = report
        .subset
        .rank(parameter)
        .expect("parameter lies in the subset");
    is_isotopism(
        t.table(family.source()),
        t.table(family.target()),
        &family.triple(&t, rank),
    )
}

/// Runs the characterization with each of the six parastrophes of `(S, ·)`
/// as the base operation, in order `p1..p6`.
pub fn check_all_parastrophes(q: &QuasigroupTable, s: &Subset) -> Result<Vec<VerificationReport>> {
    let induced = induced_table(q, s)?;
    Ok(ParastropheIndex::ALL
        .iter()
        .map(|&base| characterize(&parastrophe(&induced, base), s, base))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub subset: Subset,
    /// False when `(S, ·)` is not associative; nothing further is claimed.
    pub applicable: bool,
    pub star_associative: Option<bool>,
    /// Group-isotopy verdict for each parastrophe of `(S, ·)`, `p1..p6`.
    pub group_isotopes: Vec<(ParastropheIndex, bool)>,
    pub holds: bool,
}

/// When `(S, ·)` is a group: `(S, ·*)` is a group too and every parastrophe
/// of `(S, ·)` is isotopic to a group.
pub fn check_parastrophe_corollaries(q: &QuasigroupTable, s: &Subset) -> Result<CorollaryReport> {
    let induced = induced_table(q, s)?;
    if !induced.is_associative().associative {
        return Ok(CorollaryReport {
            subset: *s,
            applicable: false,
            star_associative: None,
            group_isotopes: Vec::new(),
            holds: true,
        });
    }
    let star_associative = parastrophe(&induced, P2).is_associative().associative;
    let group_isotopes: Vec<_> = ParastropheIndex::ALL
        .iter()
        .map(|&k| (k, is_group_isotope(&parastrophe(&induced, k))))
        .collect();
    let holds = star_associative && group_isotopes.iter().all(|&(_, g)| g);
    Ok(CorollaryReport {
        subset: *s,
        applicable: true,
        star_associative: Some(star_associative),
        group_isotopes,
        holds,
    })
}
