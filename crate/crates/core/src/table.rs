use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Line, Result};
use crate::permutation::Permutation;
use crate::Element;

/// Largest order accepted anywhere in the crate.
pub const MAX_ORDER: usize = 64;

/// The Cayley table of a finite quasigroup: an order-`n` Latin square with
/// `grid[x][y] = x·y`.
///
/// Both division tables are precomputed at construction, so multiplication
/// and the two divisions are single lookups. Tables are immutable once built.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct QuasigroupTable {
    order: usize,
    cells: Vec<u8>,
    // ldiv[x*n + z] = y  with x·y = z
    ldiv: Vec<u8>,
    // rdiv[z*n + y] = x  with x·y = z
    rdiv: Vec<u8>,
}

/// JSON mirror of a table: `{"order": n, "grid": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableJson {
    pub order: usize,
    pub grid: Vec<Vec<usize>>,
}

/// Result of an exhaustive associativity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityVerdict {
    pub associative: bool,
    /// First `(x, y, z)` in lexicographic order with `(x·y)·z ≠ x·(y·z)`.
    pub counterexample: Option<[Element; 3]>,
}

impl AssociativityVerdict {
    pub fn holds() -> Self {
        Self {
            associative: true,
            counterexample: None,
        }
    }

    pub fn violated(x: Element, y: Element, z: Element) -> Self {
        Self {
            associative: false,
            counterexample: Some([x, y, z]),
        }
    }
}

impl QuasigroupTable {
    /// Builds a table from rows of element indices, checking shape, range
    /// and the Latin property (rows first, then columns).
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedInput(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::MalformedInput(format!(
                        "unknown symbol {v} in row {r} (order {n})"
                    )));
                }
                cells.push(v as u8);
            }
        }
        Self::from_cells(n, cells)
    }

    /// Builds a table of order `n` from `f(x, y) = x·y`.
    pub fn from_fn(n: usize, mut f: impl FnMut(Element, Element) -> Element) -> Result<Self> {
        check_order(n)?;
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                if v >= n {
                    return Err(Error::MalformedInput(format!(
                        "product {x}*{y} = {v} out of range for order {n}"
                    )));
                }
                cells.push(v as u8);
            }
        }
        Self::from_cells(n, cells)
    }

    fn from_cells(n: usize, cells: Vec<u8>) -> Result<Self> {
        const UNSET: u8 = u8::MAX;
        let mut ldiv = vec![UNSET; n * n];
        let mut rdiv = vec![UNSET; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = cells[x * n + y] as usize;
                let slot = &mut ldiv[x * n + z];
                if *slot != UNSET {
                    return Err(Error::NotLatin {
                        line: Line::Row,
                        index: x,
                    });
                }
                *slot = y as u8;
            }
        }
        for y in 0..n {
            for x in 0..n {
                let z = cells[x * n + y] as usize;
                let slot = &mut rdiv[z * n + y];
                if *slot != UNSET {
                    return Err(Error::NotLatin {
                        line: Line::Column,
                        index: y,
                    });
                }
                *slot = x as u8;
            }
        }
        Ok(Self {
            order: n,
            cells,
            ldiv,
            rdiv,
        })
    }

    /// The cyclic group `Z_n` under addition.
    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |x, y| (x + y) % n).expect("cyclic group table is Latin")
    }

    /// Direct product: element `(a, b)` is encoded as `a * other.order() + b`.
    pub fn direct_product(&self, other: &QuasigroupTable) -> Result<Self> {
        let m = other.order;
        Self::from_fn(self.order * m, |u, v| {
            self.multiply(u / m, v / m) * m + other.multiply(u % m, v % m)
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn multiply(&self, x: Element, y: Element) -> Element {
        self.cells[x * self.order + y] as usize
    }

    /// The unique `y` with `x·y = z`.
    #[inline]
    pub fn left_divide(&self, x: Element, z: Element) -> Element {
        self.ldiv[x * self.order + z] as usize
    }

    /// The unique `x` with `x·y = z`.
    #[inline]
    pub fn right_divide(&self, z: Element, y: Element) -> Element {
        self.rdiv[z * self.order + y] as usize
    }

    /// `L_x : y ↦ x·y`, i.e. row `x` of the grid.
    pub fn left_translation(&self, x: Element) -> Permutation {
        Permutation::from_images_unchecked(self.row(x).collect())
    }

    /// `R_x : y ↦ y·x`, i.e. column `x` of the grid.
    pub fn right_translation(&self, x: Element) -> Permutation {
        Permutation::from_images_unchecked(self.column(x).collect())
    }

    pub fn row(&self, x: Element) -> impl Iterator<Item = Element> + '_ {
        self.cells[x * self.order..(x + 1) * self.order]
            .iter()
            .map(|&v| v as usize)
    }

    pub fn column(&self, y: Element) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(move |x| self.multiply(x, y))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|x| self.row(x).collect()).collect()
    }

    /// Two-sided identity, if the quasigroup is a loop.
    pub fn find_identity(&self) -> Option<Element> {
        (0..self.order).find(|&e| {
            (0..self.order).all(|x| self.multiply(e, x) == x && self.multiply(x, e) == x)
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order)
            .all(|x| (x + 1..self.order).all(|y| self.multiply(x, y) == self.multiply(y, x)))
    }

    /// Exhaustive triple check; the first violation in lexicographic order
    /// is reported.
    pub fn is_associative(&self) -> AssociativityVerdict {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let xy = self.multiply(x, y);
                for z in 0..n {
                    if self.multiply(xy, z) != self.multiply(x, self.multiply(y, z)) {
                        return AssociativityVerdict::violated(x, y, z);
                    }
                }
            }
        }
        AssociativityVerdict::holds()
    }

    /// Relabels every element through `p`: the result is `p` applied as an
    /// isomorphism.
    pub fn relabel(&self, p: &Permutation) -> Self {
        let inv = p.inverse();
        Self::from_fn(self.order, |u, v| {
            p.apply(self.multiply(inv.apply(u), inv.apply(v)))
        })
        .expect("isomorphic image of a Latin square is Latin")
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::MalformedInput("order must be positive".into()));
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

impl fmt::Debug for QuasigroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuasigroupTable")
            .field("order", &self.order)
            .field("grid", &self.rows())
            .finish()
    }
}

impl From<QuasigroupTable> for TableJson {
    fn from(q: QuasigroupTable) -> Self {
        TableJson {
            order: q.order,
            grid: q.rows(),
        }
    }
}

impl TryFrom<TableJson> for QuasigroupTable {
    type Error = Error;

    fn try_from(json: TableJson) -> Result<Self> {
        if json.grid.len() != json.order {
            return Err(Error::MalformedInput(format!(
                "declared order {} but grid has {} rows",
                json.order,
                json.grid.len()
            )));
        }
        Self::from_rows(json.grid)
    }
}
