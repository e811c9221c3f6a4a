//! Exhaustive generation of all Latin squares of small order.

use crate::error::{Error, Result};
use crate::table::QuasigroupTable;

/// Largest order [`enumerate_all`] accepts.
pub const MAX_ENUMERATION_ORDER: usize = 5;

/// Calls `sink` once for every Latin square of order `n`, in lexicographic
/// row-major order, and returns how many there were.
pub fn enumerate_all(n: usize, mut sink: impl FnMut(&QuasigroupTable)) -> Result<u64> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    if n == 0 {
        return Err(Error::MalformedInput("order must be positive".into()));
    }
    let mut grid = vec![0usize; n * n];
    let mut row_used = vec![0u32; n];
    let mut col_used = vec![0u32; n];
    let mut count = 0;
    fill(0, n, &mut grid, &mut row_used, &mut col_used, &mut |g| {
        count += 1;
        let q = QuasigroupTable::from_fn(n, |x, y| g[x * n + y])
            .expect("backtracking yields Latin squares");
        sink(&q);
    });
    Ok(count)
}

fn fill(
    cell: usize,
    n: usize,
    grid: &mut [usize],
    row_used: &mut [u32],
    col_used: &mut [u32],
    emit: &mut dyn FnMut(&[usize]),
) {
    if cell == n * n {
        emit(grid);
        return;
    }
    let (r, c) = (cell / n, cell % n);
    for v in 0..n {
        let bit = 1 << v;
        if row_used[r] & bit != 0 || col_used[c] & bit != 0 {
            continue;
        }
        row_used[r] |= bit;
        col_used[c] |= bit;
        grid[cell] = v;
        fill(cell + 1, n, grid, row_used, col_used, emit);
        row_used[r] &= !bit;
        col_used[c] &= !bit;
    }
}

/// Every Latin square of order `n`, collected.
pub fn all_latin_squares(n: usize) -> Result<Vec<QuasigroupTable>> {
    let mut out = Vec::new();
    enumerate_all(n, |q| out.push(q.clone()))?;
    Ok(out)
}
