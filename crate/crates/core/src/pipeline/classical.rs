use std::collections::BTreeMap;

use crate::backends::field::inv_mod;
use crate::diagram::{Interval, PersistenceDiagram};
use crate::error::Result;
use crate::grocat::{Backend, GroupElement};

use super::complex::FilteredComplex;
use super::homology::check_prime;

type Column = BTreeMap<usize, u64>;

fn low(c: &Column) -> Option<usize> {
    c.keys().next_back().copied()
}

/// `target -= factor * source` over `GF(p)`.
fn subtract(target: &mut Column, source: &Column, factor: u64, p: u64) {
    for (row, x) in source {
        let cur = target.get(row).copied().unwrap_or(0);
        let next = (cur + p - factor * x % p) % p;
        if next == 0 {
            target.remove(row);
        } else {
            target.insert(*row, next);
        }
    }
}

/// Degree-`degree` persistence pairs by standard column reduction of the
/// boundary matrix over `GF(p)`, simplices ordered by (value, dimension, id).
/// Zero-length pairs are dropped; unpaired classes die at infinity.
pub fn classical_diagram(complex: &FilteredComplex, degree: usize, p: u64) -> Result<PersistenceDiagram> {
    check_prime(p)?;
    let simplices = complex.simplices();
    let mut order: Vec<usize> = (0..simplices.len()).collect();
    order.sort_by(|a, b| {
        let (x, y) = (&simplices[*a], &simplices[*b]);
        x.value
            .total_cmp(&y.value)
            .then(x.dim().cmp(&y.dim()))
            .then(x.id.cmp(&y.id))
    });
    let mut rank = vec![0; simplices.len()];
    for (r, pos) in order.iter().enumerate() {
        rank[*pos] = r;
    }
    let mut columns: Vec<Column> = order
        .iter()
        .map(|pos| {
            complex
                .boundary(*pos)
                .into_iter()
                .map(|(face, sign)| (rank[face], if sign > 0 { 1 } else { p - 1 }))
                .collect()
        })
        .collect();

    let mut pivot_owner: Vec<Option<usize>> = vec![None; columns.len()];
    for j in 0..columns.len() {
        while let Some(l) = low(&columns[j]) {
            let Some(k) = pivot_owner[l] else {
                pivot_owner[l] = Some(j);
                break;
            };
            let factor = columns[j][&l] * inv_mod(columns[k][&l], p) % p;
            let (head, tail) = columns.split_at_mut(j);
            subtract(&mut tail[0], &head[k], factor, p);
        }
    }

    let mut out = PersistenceDiagram::new(Backend::Vect);
    let one = GroupElement::dim(1);
    let value = |r: usize| simplices[order[r]].value;
    let dim = |r: usize| simplices[order[r]].dim();
    for (r, owner) in pivot_owner.iter().enumerate() {
        if dim(r) != degree {
            continue;
        }
        match owner {
            Some(j) => {
                if value(r) < value(*j) {
                    out.add(Interval::new(value(r), value(*j))?, &one)?;
                }
            }
            None if columns[r].is_empty() => {
                out.add(Interval::new(value(r), f64::INFINITY)?, &one)?;
            }
            None => {}
        }
    }
    Ok(out)
}
