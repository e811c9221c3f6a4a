//! Subquasigroups and Smarandache detection.
//!
//! In a finite quasigroup a non-empty subset closed under multiplication is
//! already a subquasigroup: restricted translations are injective maps of a
//! finite set into itself. Only multiplicative closure is checked here.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::{AssociativityVerdict, QuasigroupTable};
use crate::Element;

/// A non-empty subset of `{0..n-1}`, `n ≤ 64`, stored as a bitmask.
///
/// Ordering is by size, then lexicographically by the sorted element list.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    bits: u64,
    order: usize,
}

impl Subset {
    pub fn new(order: usize, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        if order == 0 || order > crate::MAX_ORDER {
            return Err(Error::InvalidSubset(format!(
                "unsupported ambient order {order}"
            )));
        }
        let mut bits = 0u64;
        for x in elements {
            if x >= order {
                return Err(Error::InvalidSubset(format!(
                    "element {x} out of range for order {order}"
                )));
            }
            bits |= 1 << x;
        }
        if bits == 0 {
            return Err(Error::InvalidSubset("subset is empty".into()));
        }
        Ok(Self { bits, order })
    }

    pub fn full(order: usize) -> Self {
        Self {
            bits: mask_below(order),
            order,
        }
    }

    pub fn singleton(order: usize, x: Element) -> Self {
        debug_assert!(x < order);
        Self {
            bits: 1 << x,
            order,
        }
    }

    /// Parses `"0,2,4"`.
    pub fn parse(order: usize, text: &str) -> Result<Self> {
        let elements = text
            .split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidSubset(format!("bad element {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(order, elements)
    }

    pub fn ambient_order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: Element) -> bool {
        x < self.order && self.bits & (1 << x) != 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == mask_below(self.order)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset {
            bits: self.bits | other.bits,
            order: self.order,
        }
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let bits = self.bits;
        (0..self.order).filter(move |&x| bits & (1 << x) != 0)
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.elements().collect()
    }

    /// Position of `x` within the sorted element list.
    pub fn rank(&self, x: Element) -> Option<usize> {
        self.contains(x)
            .then(|| (self.bits & mask_below(x)).count_ones() as usize)
    }
}

fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements().cmp(other.elements()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses a comma-separated subset whose ambient order is unknown; the order
/// is taken as one more than the largest element.
impl FromStr for Subset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let max = s
            .split(',')
            .filter_map(|t| t.trim().parse::<usize>().ok())
            .max()
            .ok_or_else(|| Error::InvalidSubset(format!("no elements in {s:?}")))?;
        Subset::parse(max + 1, s)
    }
}

/// Smallest superset of `seed` closed under multiplication.
pub fn closure(q: &QuasigroupTable, seed: &Subset) -> Subset {
    let mut current = *seed;
    loop {
        let mut bits = current.bits;
        for x in current.elements() {
            for y in current.elements() {
                bits |= 1 << q.multiply(x, y);
            }
        }
        if bits == current.bits {
            return current;
        }
        current.bits = bits;
    }
}

fn first_escape(q: &QuasigroupTable, s: &Subset) -> Option<(Element, Element, Element)> {
    s.elements()
        .flat_map(|x| s.elements().map(move |y| (x, y)))
        .map(|(x, y)| (x, y, q.multiply(x, y)))
        .find(|&(_, _, p)| !s.contains(p))
}

pub fn is_closed(q: &QuasigroupTable, s: &Subset) -> bool {
    first_escape(q, s).is_none()
}

/// The table induced on a closed subset, re-indexed to `0..|S|` by rank.
pub fn induced_table(q: &QuasigroupTable, s: &Subset) -> Result<QuasigroupTable> {
    if s.ambient_order() != q.order() {
        return Err(Error::OrderMismatch {
            left: q.order(),
            right: s.ambient_order(),
        });
    }
    if let Some((x, y, product)) = first_escape(q, s) {
        return Err(Error::NotClosed {
            subset: s.to_string(),
            x,
            y,
            product,
        });
    }
    let elems = s.to_vec();
    QuasigroupTable::from_fn(elems.len(), |i, j| {
        s.rank(q.multiply(elems[i], elems[j]))
            .expect("closed subset")
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubquasigroupReport {
    pub subset: Subset,
    pub closed: bool,
    pub associative: Option<AssociativityVerdict>,
    /// Identity of the induced table, as an element of the ambient table.
    pub identity: Option<Element>,
    pub is_group: bool,
}

pub fn analyze_subset(q: &QuasigroupTable, s: &Subset) -> SubquasigroupReport {
    match induced_table(q, s) {
        Ok(induced) => {
            let verdict = induced.is_associative();
            let elems = s.to_vec();
            let identity = induced.find_identity().map(|e| elems[e]);
            SubquasigroupReport {
                subset: *s,
                closed: true,
                associative: Some(verdict),
                identity,
                is_group: verdict.associative,
            }
        }
        Err(_) => SubquasigroupReport {
            subset: *s,
            closed: false,
            associative: None,
            identity: None,
            is_group: false,
        },
    }
}

/// Every non-empty closed subset of `q`, sorted by size then lexicographically.
///
/// Computed as a join-closure fixpoint: start from the closures of all
/// singletons and pairs, then keep adding `closure(A ∪ B)` for members `A`,
/// `B` until nothing new appears.
pub fn enumerate_subquasigroups(q: &QuasigroupTable) -> Vec<Subset> {
    let n = q.order();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut members: Vec<Subset> = Vec::new();
    let mut push = |s: Subset, members: &mut Vec<Subset>| {
        if seen.insert(s.bits) {
            members.push(s);
        }
    };

    for x in 0..n {
        push(closure(q, &Subset::singleton(n, x)), &mut members);
    }
    for x in 0..n {
        for y in x + 1..n {
            let seed = Subset::singleton(n, x).union(&Subset::singleton(n, y));
            push(closure(q, &seed), &mut members);
        }
    }

    // Pairs (i, j) with j < processed have already been joined.
    let mut processed = 0;
    while processed < members.len() {
        let b = members[processed];
        for i in 0..processed {
            let a = members[i];
            if a.is_subset_of(&b) || b.is_subset_of(&a) {
                continue;
            }
            push(closure(q, &a.union(&b)), &mut members);
        }
        processed += 1;
    }

    members.sort();
    members
}

/// Evidence that a quasigroup is Smarandache: a proper closed subset of size
/// at least two whose induced operation is associative, hence a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmarandacheCertificate {
    pub subset: Subset,
    pub induced: QuasigroupTable,
    /// Identity of the subgroup, as an element of the ambient table.
    pub identity: Element,
}

impl SmarandacheCertificate {
    /// Rechecks every claim of the certificate against `q` from scratch.
    pub fn validate(&self, q: &QuasigroupTable) -> bool {
        let s = &self.subset;
        let k = s.len();
        if s.ambient_order() != q.order() || k < 2 || k >= q.order() || !s.contains(self.identity) {
            return false;
        }
        let elems = s.to_vec();
        let closed = elems
            .iter()
            .all(|&x| elems.iter().all(|&y| s.contains(q.multiply(x, y))));
        if !closed || self.induced.order() != k {
            return false;
        }
        let induced_matches = (0..k).all(|i| {
            (0..k).all(|j| elems[self.induced.multiply(i, j)] == q.multiply(elems[i], elems[j]))
        });
        let associative = elems.iter().all(|&x| {
            elems.iter().all(|&y| {
                elems
                    .iter()
                    .all(|&z| q.multiply(q.multiply(x, y), z) == q.multiply(x, q.multiply(y, z)))
            })
        });
        let e = self.identity;
        let identity = elems
            .iter()
            .all(|&x| q.multiply(e, x) == x && q.multiply(x, e) == x);
        induced_matches && associative && identity
    }
}

/// The smallest (then lexicographically first) proper closed subset with at
/// least two elements whose induced operation is associative.
pub fn find_smarandache(q: &QuasigroupTable) -> Option<SmarandacheCertificate> {
    enumerate_subquasigroups(q)
        .into_iter()
        .filter(|s| s.len() >= 2 && !s.is_full())
        .find_map(|s| {
            let induced = induced_table(q, &s).ok()?;
            if !induced.is_associative().associative {
                return None;
            }
            let elems = s.to_vec();
            let identity = elems[induced
                .find_identity()
                .expect("associative quasigroup has an identity")];
            Some(SmarandacheCertificate {
                subset: s,
                induced,
                identity,
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::q4;

    fn set(n: usize, xs: &[usize]) -> Subset {
        Subset::new(n, xs.iter().copied()).unwrap()
    }

    /// Every non-empty closed subset, by testing all 2^n - 1 candidates.
    fn brute_force_closed(q: &QuasigroupTable) -> Vec<Subset> {
        let n = q.order();
        let mut out: Vec<Subset> = (1u64..(1 << n))
            .map(|bits| Subset { bits, order: n })
            .filter(|s| {
                s.elements()
                    .all(|x| s.elements().all(|y| s.contains(q.multiply(x, y))))
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn subset_basics() {
        let s = set(6, &[4, 0, 2]);
        assert_eq!(s.to_string(), "0,2,4");
        assert_eq!(s.len(), 3);
        assert_eq!(s.rank(4), Some(2));
        assert_eq!(s.rank(3), None);
        assert_eq!(Subset::parse(6, "0, 2,4").unwrap(), s);
        assert!(Subset::new(6, []).is_err());
        assert!(Subset::new(6, [6]).is_err());
        assert!(Subset::full(64).is_full());
        assert_eq!(Subset::full(64).len(), 64);
        assert_eq!("0,3".parse::<Subset>().unwrap().ambient_order(), 4);
    }

    #[test]
    fn subset_ordering() {
        let mut v = vec![
            set(4, &[1, 2]),
            set(4, &[0]),
            set(4, &[0, 3]),
            set(4, &[0, 1, 2]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                set(4, &[0]),
                set(4, &[0, 3]),
                set(4, &[1, 2]),
                set(4, &[0, 1, 2])
            ]
        );
    }

    #[test]
    fn closure_examples() {
        let z6 = QuasigroupTable::cyclic(6);
        assert_eq!(closure(&z6, &set(6, &[2])), set(6, &[0, 2, 4]));
        assert_eq!(closure(&q4(), &set(4, &[0, 1])), set(4, &[0, 1]));
        let z5 = QuasigroupTable::cyclic(5);
        assert_eq!(closure(&z5, &set(5, &[1])), Subset::full(5));
    }

    #[test]
    fn analyze_examples() {
        let q = q4();
        let r = analyze_subset(&q, &set(4, &[0, 1]));
        assert!(r.closed && r.is_group);
        assert_eq!(r.identity, Some(0));
        assert_eq!(r.associative, Some(AssociativityVerdict::holds()));

        let r = analyze_subset(&q, &set(4, &[0, 2]));
        assert!(!r.closed && !r.is_group);
        assert_eq!(r.associative, None);
        assert!(matches!(
            induced_table(&q, &set(4, &[0, 2])),
            Err(Error::NotClosed {
                x: 2,
                y: 0,
                product: 3,
                ..
            })
        ));

        let r = analyze_subset(&QuasigroupTable::cyclic(3), &Subset::full(3));
        assert!(r.closed && r.is_group);
    }

    #[test]
    fn enumerate_examples() {
        let z6 = QuasigroupTable::cyclic(6);
        let subs = enumerate_subquasigroups(&z6);
        for s in [
            set(6, &[0]),
            set(6, &[0, 3]),
            set(6, &[0, 2, 4]),
            Subset::full(6),
        ] {
            assert!(subs.contains(&s));
        }
        assert_eq!(subs.len(), 4);

        assert_eq!(
            enumerate_subquasigroups(&QuasigroupTable::cyclic(5)),
            vec![set(5, &[0]), Subset::full(5)]
        );

        let q = q4();
        let subs = enumerate_subquasigroups(&q);
        assert_eq!(subs, brute_force_closed(&q));
        assert!(subs.contains(&set(4, &[0])));
        assert!(subs.contains(&set(4, &[0, 1])));
        assert!(subs.contains(&Subset::full(4)));
    }

    #[test]
    fn enumeration_matches_brute_force_on_groups() {
        let z = QuasigroupTable::cyclic;
        let k8 = z(2)
            .direct_product(&z(2))
            .unwrap()
            .direct_product(&z(2))
            .unwrap();
        for q in [z(1), z(4), z(6), z(8), k8] {
            assert_eq!(enumerate_subquasigroups(&q), brute_force_closed(&q));
        }
    }

    #[test]
    fn smarandache_examples() {
        let q = q4();
        let cert = find_smarandache(&q).unwrap();
        assert_eq!(cert.subset, set(4, &[0, 1]));
        assert_eq!(cert.induced, QuasigroupTable::cyclic(2));
        assert!(cert.validate(&q));

        assert!(find_smarandache(&QuasigroupTable::cyclic(5)).is_none());

        let z6 = QuasigroupTable::cyclic(6);
        let cert = find_smarandache(&z6).unwrap();
        assert_eq!(cert.subset, set(6, &[0, 3]));
        assert_eq!(cert.identity, 0);
        assert!(cert.validate(&z6));
    }

    #[test]
    fn tampered_certificates_fail() {
        let q = q4();
        let cert = find_smarandache(&q).unwrap();
        let mut bad = cert.clone();
        bad.subset = set(4, &[0, 2]);
        assert!(!bad.validate(&q));
        let mut bad = cert.clone();
        bad.identity = 1;
        assert!(!bad.validate(&q));
        let mut bad = cert;
        bad.subset = Subset::full(4);
        assert!(!bad.validate(&q));
    }
}
