//! The six parastrophes (conjugates) of a quasigroup and the translation-map
//! identities relating them.
//!
//! Numbering is fixed as
//!
//! | index | alias       | operation | defining rule (`x·y = z`) |
//! |-------|-------------|-----------|---------------------------|
//! | `p1`  |             | θ         | `x θ y = z`               |
//! | `p2`  | `star`      | θ*        | `y θ* x = z`              |
//! | `p3`  | `linv`      | θ⁻¹       | `x θ⁻¹ z = y`             |
//! | `p4`  | `rinv`      | ⁻¹θ       | `z ⁻¹θ y = x`             |
//! | `p5`  | `linv-star` | (θ⁻¹)*    | `z (θ⁻¹)* x = y`          |
//! | `p6`  | `rinv-star` | (⁻¹θ)*    | `y (⁻¹θ)* z = x`          |

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::permutation::Permutation;
use crate::table::QuasigroupTable;
use crate::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParastropheIndex {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
}

use ParastropheIndex::*;

impl ParastropheIndex {
    pub const ALL: [ParastropheIndex; 6] = [P1, P2, P3, P4, P5, P6];

    /// Zero-based position in [`ParastropheIndex::ALL`].
    pub fn position(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["p1", "p2", "p3", "p4", "p5", "p6"][self.position()]
    }

    pub fn symbol(self) -> &'static str {
        ["θ", "θ*", "θ⁻¹", "⁻¹θ", "(θ⁻¹)*", "(⁻¹θ)*"][self.position()]
    }

    /// For each slot of the new operation `a ∘ b = c`, which coordinate of an
    /// original triple `(x, y, z)` with `x·y = z` fills it.
    fn roles(self) -> [usize; 3] {
        match self {
            P1 => [0, 1, 2],
            P2 => [1, 0, 2],
            P3 => [0, 2, 1],
            P4 => [2, 1, 0],
            P5 => [2, 0, 1],
            P6 => [1, 2, 0],
        }
    }

    pub fn is_involution(self) -> bool {
        compose_parastrophes(self, self) == P1
    }
}

impl fmt::Display for ParastropheIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ParastropheIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "p1" => P1,
            "p2" | "star" => P2,
            "p3" | "linv" => P3,
            "p4" | "rinv" => P4,
            "p5" | "linv-star" => P5,
            "p6" | "rinv-star" => P6,
            other => {
                return Err(Error::MalformedInput(format!(
                    "unknown parastrophe index {other:?}"
                )))
            }
        })
    }
}

/// Materializes the parastrophe `idx` of `q`.
pub fn parastrophe(q: &QuasigroupTable, idx: ParastropheIndex) -> QuasigroupTable {
    if idx == P1 {
        return q.clone();
    }
    let n = q.order();
    let roles = idx.roles();
    let mut grid = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let t = [x, y, q.multiply(x, y)];
            grid[t[roles[0]]][t[roles[1]]] = t[roles[2]];
        }
    }
    QuasigroupTable::from_rows(grid).expect("parastrophe of a Latin square is Latin")
}

/// The reference table used to derive the composition law. Its six
/// parastrophes are pairwise distinct.
pub fn reference_table() -> QuasigroupTable {
    QuasigroupTable::from_rows(vec![
        vec![0, 1, 2, 3],
        vec![1, 2, 3, 0],
        vec![3, 0, 1, 2],
        vec![2, 3, 0, 1],
    ])
    .expect("reference table is Latin")
}

fn composition_table() -> &'static [[ParastropheIndex; 6]; 6] {
    static TABLE: OnceLock<[[ParastropheIndex; 6]; 6]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let q = reference_table();
        let images: Vec<QuasigroupTable> = ParastropheIndex::ALL
            .iter()
            .map(|&k| parastrophe(&q, k))
            .collect();
        let mut table = [[P1; 6]; 6];
        for i in ParastropheIndex::ALL {
            for j in ParastropheIndex::ALL {
                let twice = parastrophe(&images[i.position()], j);
                let mut matches = ParastropheIndex::ALL
                    .into_iter()
                    .filter(|k| images[k.position()] == twice);
                let k = matches
                    .next()
                    .expect("composite is one of the six parastrophes");
                assert!(
                    matches.next().is_none(),
                    "reference table must separate parastrophes"
                );
                table[i.position()][j.position()] = k;
            }
        }
        table
    })
}

/// The index `k` with `parastrophe(parastrophe(q, i), j) == parastrophe(q, k)`
/// for every table `q`.
pub fn compose_parastrophes(i: ParastropheIndex, j: ParastropheIndex) -> ParastropheIndex {
    composition_table()[i.position()][j.position()]
}

pub fn inverse_parastrophe(i: ParastropheIndex) -> ParastropheIndex {
    ParastropheIndex::ALL
        .into_iter()
        .find(|&j| compose_parastrophes(i, j) == P1)
        .expect("every parastrophe index has an inverse")
}

/// The left and right translation maps of all six parastrophes of a table.
#[derive(Debug, Clone)]
pub struct ParastropheTranslations {
    tables: Vec<QuasigroupTable>,
}

impl ParastropheTranslations {
    pub fn new(q: &QuasigroupTable) -> Self {
        Self {
            tables: ParastropheIndex::ALL
                .iter()
                .map(|&k| parastrophe(q, k))
                .collect(),
        }
    }

    pub fn table(&self, idx: ParastropheIndex) -> &QuasigroupTable {
        &self.tables[idx.position()]
    }

    pub fn left(&self, idx: ParastropheIndex, x: Element) -> Permutation {
        self.table(idx).left_translation(x)
    }

    pub fn right(&self, idx: ParastropheIndex, x: Element) -> Permutation {
        self.table(idx).right_translation(x)
    }
}

/// A translation map, possibly inverted, in one of the parastrophes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct MapTerm {
    side: Side,
    idx: ParastropheIndex,
    inverted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

const fn term(side: Side, idx: ParastropheIndex, inverted: bool) -> MapTerm {
    MapTerm {
        side,
        idx,
        inverted,
    }
}

impl MapTerm {
    fn evaluate(&self, t: &ParastropheTranslations, x: Element) -> Permutation {
        let p = match self.side {
            Side::Left => t.left(self.idx, x),
            Side::Right => t.right(self.idx, x),
        };
        if self.inverted {
            p.inverse()
        } else {
            p
        }
    }
}

/// Each identity is a chain `t0 = t1 (= t2)` of translation maps.
const TRANSLATION_IDENTITIES: [(&str, &[MapTerm]); 10] = {
    use Side::{Left as L, Right as R};
    [
        ("R[star]_x = L_x", &[term(R, P2, false), term(L, P1, false)]),
        ("L[star]_x = R_x", &[term(L, P2, false), term(R, P1, false)]),
        (
            "L[linv]_x = L_x^-1",
            &[term(L, P3, false), term(L, P1, true)],
        ),
        (
            "R[rinv]_x = R_x^-1",
            &[term(R, P4, false), term(R, P1, true)],
        ),
        (
            "R[linv-star]_x = L_x^-1",
            &[term(R, P5, false), term(L, P1, true)],
        ),
        (
            "L[rinv-star]_x = R_x^-1",
            &[term(L, P6, false), term(R, P1, true)],
        ),
        (
            "L[linv]_x = R[star]_x^-1",
            &[term(L, P3, false), term(R, P2, true)],
        ),
        (
            "R[rinv]_x = L[star]_x^-1",
            &[term(R, P4, false), term(L, P2, true)],
        ),
        (
            "R[linv-star]_x = R[star]_x^-1 = L[linv]_x",
            &[term(R, P5, false), term(R, P2, true), term(L, P3, false)],
        ),
        (
            "L[rinv-star]_x = L[star]_x^-1 = R[rinv]_x",
            &[term(L, P6, false), term(L, P2, true), term(R, P4, false)],
        ),
    ]
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub failing_x: Option<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationIdentityReport {
    pub identities: Vec<IdentityCheck>,
}

impl TranslationIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }
}

/// Names of the ten identities in report order.
pub fn translation_identity_names() -> impl Iterator<Item = &'static str> {
    TRANSLATION_IDENTITIES.iter().map(|(name, _)| *name)
}

/// Re-evaluates the named identity at a single element.
pub fn translation_identity_holds_at(q: &QuasigroupTable, name: &str, x: Element) -> Option<bool> {
    let (_, chain) = TRANSLATION_IDENTITIES.iter().find(|(n, _)| *n == name)?;
    let t = ParastropheTranslations::new(q);
    Some(chain_holds(chain, &t, x))
}

fn chain_holds(chain: &[MapTerm], t: &ParastropheTranslations, x: Element) -> bool {
    let first = chain[0].evaluate(t, x);
    chain[1..].iter().all(|m| m.evaluate(t, x) == first)
}

/// Evaluates every translation-map identity for every `x`, comparing the
/// permutations read off the parastrophe tables.
pub fn check_translation_identities(q: &QuasigroupTable) -> TranslationIdentityReport {
    let t = ParastropheTranslations::new(q);
    let identities = TRANSLATION_IDENTITIES
        .iter()
        .map(|(name, chain)| {
            let failing_x = (0..q.order()).find(|&x| !chain_holds(chain, &t, x));
            IdentityCheck {
                name: (*name).to_string(),
                holds: failing_x.is_none(),
                failing_x,
            }
        })
        .collect();
    TranslationIdentityReport { identities }
}
