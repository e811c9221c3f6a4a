//! Isotopisms between quasigroups, isotopism search and group-isotopy.
//!
//! A triple `(A, B, C)` of bijections is an isotopism `G → H` when
//! `H[A(x)][B(y)] = C(G[x][y])` for all `x, y`.

use std::thread;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::table::QuasigroupTable;
use crate::Element;

/// Default node budget for [`find_isotopism`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Isotopism {
    #[serde(rename = "A")]
    pub a: Permutation,
    #[serde(rename = "B")]
    pub b: Permutation,
    #[serde(rename = "C")]
    pub c: Permutation,
}

impl Isotopism {
    pub fn new(a: Permutation, b: Permutation, c: Permutation) -> Result<Self> {
        if a.order() != b.order() || a.order() != c.order() {
            return Err(Error::OrderMismatch {
                left: a.order(),
                right: if a.order() != b.order() {
                    b.order()
                } else {
                    c.order()
                },
            });
        }
        Ok(Self { a, b, c })
    }

    pub fn identity(n: usize) -> Self {
        let i = Permutation::identity(n);
        Self {
            a: i.clone(),
            b: i.clone(),
            c: i,
        }
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.a.inverse(),
            b: self.b.inverse(),
            c: self.c.inverse(),
        }
    }

    /// Componentwise `self` followed by `next`.
    pub fn then(&self, next: &Isotopism) -> Self {
        Self {
            a: self.a.then(&next.a),
            b: self.b.then(&next.b),
            c: self.c.then(&next.c),
        }
    }

    /// `(A, I, A)`: first and third components equal, second the identity.
    pub fn is_shape_aia(&self) -> bool {
        self.b.is_identity() && self.a == self.c
    }

    /// `(I, B, B)`: second and third components equal, first the identity.
    pub fn is_shape_ibb(&self) -> bool {
        self.a.is_identity() && self.b == self.c
    }
}

fn check_orders(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::OrderMismatch { left, right });
    }
    Ok(())
}

pub fn is_isotopism(g: &QuasigroupTable, h: &QuasigroupTable, iso: &Isotopism) -> Result<bool> {
    check_orders(g.order(), h.order())?;
    check_orders(g.order(), iso.order())?;
    let n = g.order();
    Ok((0..n).all(|x| {
        (0..n).all(|y| h.multiply(iso.a.apply(x), iso.b.apply(y)) == iso.c.apply(g.multiply(x, y)))
    }))
}

/// The isotope `H` of `g` under `iso`: `H[u][v] = C(G[A⁻¹u][B⁻¹v])`.
pub fn apply_isotopism(g: &QuasigroupTable, iso: &Isotopism) -> Result<QuasigroupTable> {
    check_orders(g.order(), iso.order())?;
    let (ai, bi) = (iso.a.inverse(), iso.b.inverse());
    Ok(QuasigroupTable::from_fn(g.order(), |u, v| {
        iso.c.apply(g.multiply(ai.apply(u), bi.apply(v)))
    })
    .expect("isotope of a Latin square is Latin"))
}

/// Outcome of [`find_isotopism`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum IsotopySearchResult {
    Witness { isotopism: Isotopism, nodes: u64 },
    NotIsotopic { nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

impl IsotopySearchResult {
    pub fn witness(&self) -> Option<&Isotopism> {
        match self {
            IsotopySearchResult::Witness { isotopism, .. } => Some(isotopism),
            _ => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match *self {
            IsotopySearchResult::Witness { nodes, .. }
            | IsotopySearchResult::NotIsotopic { nodes }
            | IsotopySearchResult::BudgetExhausted { nodes } => nodes,
        }
    }
}

const NONE: u8 = u8::MAX;

/// A partial bijection with its partial inverse.
#[derive(Clone)]
struct PartialMap {
    fwd: Vec<u8>,
    inv: Vec<u8>,
}

impl PartialMap {
    fn new(n: usize) -> Self {
        Self {
            fwd: vec![NONE; n],
            inv: vec![NONE; n],
        }
    }

    fn get(&self, x: usize) -> Option<usize> {
        let v = self.fwd[x];
        (v != NONE).then_some(v as usize)
    }

    fn used(&self, v: usize) -> bool {
        self.inv[v] != NONE
    }

    fn into_permutation(self) -> Permutation {
        Permutation::from_images_unchecked(self.fwd.into_iter().map(usize::from).collect())
    }
}

#[derive(Clone, Copy)]
enum Var {
    A,
    B,
    C,
}

/// Search state: partial `A`, `B`, `C` kept arc-consistent with the
/// constraint `H[A(x)][B(y)] = C(G[x][y])`.
#[derive(Clone)]
struct State<'a> {
    g: &'a QuasigroupTable,
    h: &'a QuasigroupTable,
    maps: [PartialMap; 3],
}

impl<'a> State<'a> {
    fn new(g: &'a QuasigroupTable, h: &'a QuasigroupTable) -> Self {
        let n = g.order();
        Self {
            g,
            h,
            maps: [PartialMap::new(n), PartialMap::new(n), PartialMap::new(n)],
        }
    }

    /// Assigns `var(x) = v` and propagates every forced consequence.
    /// Returns false on contradiction.
    fn assign(&mut self, var: Var, x: usize, v: usize) -> bool {
        let mut queue = vec![(var, x, v)];
        while let Some((var, x, v)) = queue.pop() {
            let map = &mut self.maps[var as usize];
            match map.get(x) {
                Some(existing) if existing == v => continue,
                Some(_) => return false,
                None if map.used(v) => return false,
                None => {
                    map.fwd[x] = v as u8;
                    map.inv[v] = x as u8;
                }
            }
            let (g, h) = (self.g, self.h);
            let n = g.order();
            let [a, b, c] = &self.maps;
            match var {
                Var::A => {
                    for y in 0..n {
                        let z = g.multiply(x, y);
                        if let Some(by) = b.get(y) {
                            queue.push((Var::C, z, h.multiply(v, by)));
                        } else if let Some(cz) = c.get(z) {
                            queue.push((Var::B, y, h.left_divide(v, cz)));
                        }
                    }
                }
                Var::B => {
                    for xx in 0..n {
                        let z = g.multiply(xx, x);
                        if let Some(ax) = a.get(xx) {
                            queue.push((Var::C, z, h.multiply(ax, v)));
                        } else if let Some(cz) = c.get(z) {
                            queue.push((Var::A, xx, h.right_divide(cz, v)));
                        }
                    }
                }
                Var::C => {
                    for xx in 0..n {
                        let y = g.left_divide(xx, x);
                        match (a.get(xx), b.get(y)) {
                            (Some(ax), None) => queue.push((Var::B, y, h.left_divide(ax, v))),
                            (None, Some(by)) => queue.push((Var::A, xx, h.right_divide(v, by))),
                            _ => {}
                        }
                    }
                }
            }
        }
        true
    }

    fn next_unassigned(&self) -> Option<(Var, usize)> {
        let n = self.g.order();
        for (var, map) in [
            (Var::A, &self.maps[0]),
            (Var::B, &self.maps[1]),
            (Var::C, &self.maps[2]),
        ] {
            if let Some(x) = (0..n).find(|&x| map.get(x).is_none()) {
                return Some((var, x));
            }
        }
        None
    }

    fn into_isotopism(self) -> Isotopism {
        let [a, b, c] = self.maps;
        Isotopism {
            a: a.into_permutation(),
            b: b.into_permutation(),
            c: c.into_permutation(),
        }
    }
}

enum Outcome {
    Found(Isotopism),
    Exhausted,
    OutOfBudget,
}

struct Search {
    nodes: u64,
    budget: u64,
}

impl Search {
    fn run(&mut self, state: State<'_>) -> Outcome {
        let Some((var, x)) = state.next_unassigned() else {
            return Outcome::Found(state.into_isotopism());
        };
        let n = state.g.order();
        let map = &state.maps[var as usize];
        for v in (0..n).filter(|&v| !map.used(v)) {
            if self.nodes >= self.budget {
                return Outcome::OutOfBudget;
            }
            self.nodes += 1;
            let mut child = state.clone();
            if !child.assign(var, x, v) {
                continue;
            }
            match self.run(child) {
                Outcome::Exhausted => {}
                other => return other,
            }
        }
        Outcome::Exhausted
    }
}

/// Backtracking isotopism search from `g` to `h`.
///
/// `A` is assigned pointwise in increasing domain order with values tried in
/// increasing order; `B` and `C` are filled by propagation, with `B` branched
/// on only when propagation leaves it open. Each tentative assignment counts
/// as one node. The first witness in this order is returned, so the result
/// is the lexicographically least isotopism by `A` then `B`.
pub fn find_isotopism(
    g: &QuasigroupTable,
    h: &QuasigroupTable,
    budget: u64,
) -> Result<IsotopySearchResult> {
    check_orders(g.order(), h.order())?;
    let mut search = Search { nodes: 0, budget };
    Ok(match search.run(State::new(g, h)) {
        Outcome::Found(isotopism) => {
            debug_assert!(is_isotopism(g, h, &isotopism).unwrap());
            IsotopySearchResult::Witness {
                isotopism,
                nodes: search.nodes,
            }
        }
        Outcome::Exhausted => IsotopySearchResult::NotIsotopic {
            nodes: search.nodes,
        },
        Outcome::OutOfBudget => IsotopySearchResult::BudgetExhausted {
            nodes: search.nodes,
        },
    })
}

/// Parallel variant of [`find_isotopism`] splitting the top-level choice of
/// `A(0)` across at most `threads` workers.
///
/// Each of the `n` subtrees gets an equal share of `budget`, so the outcome
/// does not depend on scheduling: the witness comes from the smallest `A(0)`
/// whose subtree found one, and node counts are summed over all subtrees.
pub fn find_isotopism_parallel(
    g: &QuasigroupTable,
    h: &QuasigroupTable,
    budget: u64,
    threads: usize,
) -> Result<IsotopySearchResult> {
    check_orders(g.order(), h.order())?;
    let n = g.order();
    if threads <= 1 || n == 1 {
        return find_isotopism(g, h, budget);
    }
    let share = (budget / n as u64).max(1);
    let run_branch = |a0: usize| -> (Outcome, u64) {
        let mut search = Search {
            nodes: 1,
            budget: share,
        };
        let mut state = State::new(g, h);
        if !state.assign(Var::A, 0, a0) {
            return (Outcome::Exhausted, search.nodes);
        }
        let outcome = search.run(state);
        (outcome, search.nodes)
    };

    let workers = threads.min(n);
    let mut results: Vec<Option<(Outcome, u64)>> = (0..n).map(|_| None).collect();
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let run_branch = &run_branch;
                scope.spawn(move || {
                    (w..n)
                        .step_by(workers)
                        .map(|a0| (a0, run_branch(a0)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            for (a0, r) in handle.join().expect("isotopy worker panicked") {
                results[a0] = Some(r);
            }
        }
    });

    let mut nodes = 0;
    let mut exhausted = false;
    let mut witness = None;
    for (outcome, used) in results.into_iter().flatten() {
        nodes += used;
        match outcome {
            Outcome::Found(iso) if witness.is_none() => witness = Some(iso),
            Outcome::OutOfBudget => exhausted = true,
            _ => {}
        }
    }
    Ok(match (witness, exhausted) {
        (Some(isotopism), _) => IsotopySearchResult::Witness { isotopism, nodes },
        (None, true) => IsotopySearchResult::BudgetExhausted { nodes },
        (None, false) => IsotopySearchResult::NotIsotopic { nodes },
    })
}

/// The principal loop isotope `x ∘ y = R_b⁻¹(x) · L_a⁻¹(y)`.
///
/// Its identity is `a·b`, and `(R_b, L_a, I)` is an isotopism from `q` onto it.
pub fn principal_loop_isotope(q: &QuasigroupTable, a: Element, b: Element) -> QuasigroupTable {
    QuasigroupTable::from_fn(q.order(), |x, y| {
        q.multiply(q.right_divide(x, b), q.left_divide(a, y))
    })
    .expect("principal isotope of a Latin square is Latin")
}

/// The triple `(R_b, L_a, I)` carrying `q` onto its principal loop isotope.
pub fn principal_isotopism(q: &QuasigroupTable, a: Element, b: Element) -> Isotopism {
    Isotopism {
        a: q.right_translation(b),
        b: q.left_translation(a),
        c: Permutation::identity(q.order()),
    }
}

/// Whether `q` is isotopic to a group.
///
/// A quasigroup is a group isotope exactly when one (equivalently every)
/// principal loop isotope is associative; `(a, b) = (0, 0)` is used.
pub fn is_group_isotope(q: &QuasigroupTable) -> bool {
    principal_loop_isotope(q, 0, 0).is_associative().associative
}
