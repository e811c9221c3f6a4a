//! Random Latin squares via the Jacobson–Matthews Markov chain.
//!
//! The chain walks over incidence cubes: `cube[r][c][s] = 1` when cell
//! `(r, c)` holds symbol `s`. A ±1 move adjusts an axis-aligned 2×2×2
//! sub-cube; when it leaves a `-1` entry the cube is "improper" and the next
//! move is forced to start from that entry. Only proper cubes are returned.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{QuasigroupTable, MAX_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub order: usize,
    pub seed: u64,
    /// Number of moves before the first proper square is emitted.
    pub burn_in: u64,
}

impl GeneratorConfig {
    /// Uses the default burn-in of `10 n³` moves.
    pub fn new(order: usize, seed: u64) -> Self {
        Self {
            order,
            seed,
            burn_in: 10 * (order as u64).pow(3),
        }
    }

    pub fn with_burn_in(mut self, burn_in: u64) -> Self {
        self.burn_in = burn_in;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.order < 2 {
            return Err(Error::InvalidConfig(format!(
                "order {} is below 2",
                self.order
            )));
        }
        if self.order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order: self.order,
                max: MAX_ORDER,
            });
        }
        if self.burn_in == 0 {
            return Err(Error::InvalidConfig("burn-in must be at least 1".into()));
        }
        Ok(())
    }
}

/// Incidence cube of an order-`n` Latin square, possibly improper.
struct Cube {
    n: usize,
    cells: Vec<i8>,
    /// Set while the cube holds a `-1` entry.
    improper: Option<(usize, usize, usize)>,
}

impl Cube {
    fn cyclic(n: usize) -> Self {
        let mut cells = vec![0; n * n * n];
        for r in 0..n {
            for c in 0..n {
                cells[(r * n + c) * n + (r + c) % n] = 1;
            }
        }
        Self {
            n,
            cells,
            improper: None,
        }
    }

    fn idx(&self, r: usize, c: usize, s: usize) -> usize {
        (r * self.n + c) * self.n + s
    }

    fn get(&self, r: usize, c: usize, s: usize) -> i8 {
        self.cells[self.idx(r, c, s)]
    }

    fn add(&mut self, r: usize, c: usize, s: usize, delta: i8) {
        let i = self.idx(r, c, s);
        self.cells[i] += delta;
    }

    /// Positions along one axis through `(r, c, s)` holding a 1.
    fn ones_along(&self, axis: usize, r: usize, c: usize, s: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&k| {
                let v = match axis {
                    0 => self.get(k, c, s),
                    1 => self.get(r, k, s),
                    _ => self.get(r, c, k),
                };
                v == 1
            })
            .collect()
    }

    fn step(&mut self, rng: &mut impl Rng) {
        let n = self.n;
        let (r, c, s, r1, c1, s1) = match self.improper {
            None => {
                // uniform zero cell: any (r, c) and any symbol other than its own
                let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let own = (0..n)
                    .find(|&k| self.get(r, c, k) == 1)
                    .expect("proper cube");
                let mut s = rng.gen_range(0..n - 1);
                if s >= own {
                    s += 1;
                }
                let r1 = self.ones_along(0, r, c, s)[0];
                let c1 = self.ones_along(1, r, c, s)[0];
                (r, c, s, r1, c1, own)
            }
            Some((r, c, s)) => {
                let pick =
                    |v: Vec<usize>, rng: &mut dyn rand::RngCore| v[rng.gen_range(0..v.len())];
                let r1 = pick(self.ones_along(0, r, c, s), rng);
                let c1 = pick(self.ones_along(1, r, c, s), rng);
                let s1 = pick(self.ones_along(2, r, c, s), rng);
                (r, c, s, r1, c1, s1)
            }
        };

        self.add(r, c, s, 1);
        self.add(r, c1, s1, 1);
        self.add(r1, c, s1, 1);
        self.add(r1, c1, s, 1);
        self.add(r, c, s1, -1);
        self.add(r, c1, s, -1);
        self.add(r1, c, s, -1);
        self.add(r1, c1, s1, -1);

        self.improper = (self.get(r1, c1, s1) == -1).then_some((r1, c1, s1));
    }

    fn to_table(&self) -> QuasigroupTable {
        debug_assert!(self.improper.is_none());
        let n = self.n;
        QuasigroupTable::from_fn(n, |r, c| {
            (0..n)
                .find(|&s| self.get(r, c, s) == 1)
                .expect("proper cube")
        })
        .expect("proper incidence cube is a Latin square")
    }
}

/// A Latin square drawn by running the chain from the cyclic group table.
///
/// Identical configurations give identical squares.
pub fn generate_random(config: &GeneratorConfig) -> Result<QuasigroupTable> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cube = Cube::cyclic(config.order);
    for _ in 0..config.burn_in {
        cube.step(&mut rng);
    }
    while cube.improper.is_some() {
        cube.step(&mut rng);
    }
    Ok(cube.to_table())
}

/// Draws `count` squares from one chain, spacing samples `gap` moves apart
/// after the burn-in.
pub fn sample_chain(
    config: &GeneratorConfig,
    gap: u64,
    count: usize,
) -> Result<Vec<QuasigroupTable>> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cube = Cube::cyclic(config.order);
    let mut out = Vec::with_capacity(count);
    let mut pending = config.burn_in;
    while out.len() < count {
        for _ in 0..pending {
            cube.step(&mut rng);
        }
        while cube.improper.is_some() {
            cube.step(&mut rng);
        }
        out.push(cube.to_table());
        pending = gap.max(1);
    }
    Ok(out)
}
