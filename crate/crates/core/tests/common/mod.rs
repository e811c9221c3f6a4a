#![allow(dead_code)]

use quasigroup::generate::{generate_random, GeneratorConfig};
use quasigroup::{Isotopism, Permutation, QuasigroupTable};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn table(rows: &[&[usize]]) -> QuasigroupTable {
    QuasigroupTable::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

pub fn q4() -> QuasigroupTable {
    table(&[&[0, 1, 2, 3], &[1, 0, 3, 2], &[3, 2, 1, 0], &[2, 3, 0, 1]])
}

/// First square from the sampler (order 5, seed 0) that is not a group isotope.
pub fn nongroup5() -> QuasigroupTable {
    table(&[
        &[1, 0, 4, 2, 3],
        &[3, 2, 0, 1, 4],
        &[4, 3, 1, 0, 2],
        &[0, 4, 2, 3, 1],
        &[2, 1, 3, 4, 0],
    ])
}

pub fn random_table(order: usize, seed: u64) -> QuasigroupTable {
    generate_random(&GeneratorConfig::new(order, seed)).unwrap()
}

pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

pub fn random_isotopism(n: usize, rng: &mut impl Rng) -> Isotopism {
    Isotopism::new(
        random_permutation(n, rng),
        random_permutation(n, rng),
        random_permutation(n, rng),
    )
    .unwrap()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Isotopy by brute force over every `(A, B)` with `C` read off the
/// constraint; independent of the library's search.
#[allow(clippy::needless_range_loop)]
pub fn brute_force_isotopic(g: &QuasigroupTable, h: &QuasigroupTable) -> bool {
    let n = g.order();
    let perms = all_permutations(n);
    perms.iter().any(|a| {
        perms.iter().any(|b| {
            let mut c = vec![usize::MAX; n];
            for x in 0..n {
                for y in 0..n {
                    let z = g.multiply(x, y);
                    let w = h.multiply(a[x], b[y]);
                    if c[z] == usize::MAX {
                        c[z] = w;
                    } else if c[z] != w {
                        return false;
                    }
                }
            }
            let mut seen = vec![false; n];
            c.iter().all(|&w| !std::mem::replace(&mut seen[w], true))
        })
    })
}

/// Latin squares of order `n` counted by brute force over `n`-tuples of row
/// permutations with distinct columns.
pub fn count_by_row_tuples(n: usize) -> u64 {
    let perms = all_permutations(n);
    fn go(rows: &mut Vec<usize>, perms: &[Vec<usize>], n: usize) -> u64 {
        if rows.len() == n {
            return 1;
        }
        let mut total = 0;
        for (i, p) in perms.iter().enumerate() {
            let compatible = rows.iter().all(|&r| (0..n).all(|c| perms[r][c] != p[c]));
            if compatible {
                rows.push(i);
                total += go(rows, perms, n);
                rows.pop();
            }
        }
        total
    }
    go(&mut Vec::new(), &perms, n)
}
