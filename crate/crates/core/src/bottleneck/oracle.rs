//! Exhaustive reference solver for tiny diagrams.
//!
//! Enumerates every nonnegative integer transport plan of each generator
//! component and keeps the cheapest one. Exponential; only used to check the
//! flow-based solver.

use super::{check_inputs, multiplicities, pair_cost};
use crate::diagram::{Interval, PersistenceDiagram};
use crate::error::{Error, Result};

/// Largest total multiplicity per side and component the oracle accepts.
pub const ORACLE_MASS_LIMIT: u64 = 6;

pub fn bottleneck_oracle(y1: &PersistenceDiagram, y2: &PersistenceDiagram) -> Result<f64> {
    let keys = check_inputs(y1, y2)?;
    let mut best: f64 = 0.0;
    for key in keys {
        let a = multiplicities(y1, key)?;
        let b = multiplicities(y2, key)?;
        for side in [&a, &b] {
            let mass: u64 = side.iter().map(|x| x.1).sum();
            if mass > ORACLE_MASS_LIMIT {
                return Err(Error::SizeBound(format!(
                    "component {key:?} has mass {mass}, oracle limit is {ORACLE_MASS_LIMIT}"
                )));
            }
        }
        best = best.max(component_oracle(&a, &b));
    }
    Ok(best)
}

struct Search<'a> {
    a: &'a [(Interval, u64)],
    b: &'a [(Interval, u64)],
    best: f64,
}

impl Search<'_> {
    /// Distributes the remaining mass of row `i` (starting at column `j`),
    /// then moves on to the next row. `cost` is the plan's cost so far.
    fn rows(&mut self, i: usize, j: usize, left: u64, capacity: &mut [u64], cost: f64) {
        if cost >= self.best {
            return;
        }
        if i == self.a.len() {
            // leftover column mass goes to the diagonal
            let mut total = cost;
            for (k, c) in capacity.iter().enumerate() {
                if *c > 0 {
                    total = total.max(self.b[k].0.half_length());
                }
            }
            self.best = self.best.min(total);
            return;
        }
        if j == self.b.len() {
            let c = if left > 0 { cost.max(self.a[i].0.half_length()) } else { cost };
            let next = self.a.get(i + 1).map_or(0, |x| x.1);
            self.rows(i + 1, 0, next, capacity, c);
            return;
        }
        let most = left.min(capacity[j]);
        for x in (0..=most).rev() {
            let c = if x > 0 { cost.max(pair_cost(&self.a[i].0, &self.b[j].0)) } else { cost };
            capacity[j] -= x;
            self.rows(i, j + 1, left - x, capacity, c);
            capacity[j] += x;
        }
    }
}

fn component_oracle(a: &[(Interval, u64)], b: &[(Interval, u64)]) -> f64 {
    // sending everything to the diagonal is always a plan
    let seed = a.iter().chain(b).map(|(i, _)| i.half_length()).fold(0.0, f64::max);
    let mut search = Search { a, b, best: seed };
    let mut capacity: Vec<u64> = b.iter().map(|x| x.1).collect();
    let first = a.first().map_or(0, |x| x.1);
    search.rows(0, 0, first, &mut capacity, 0.0);
    search.best
}
