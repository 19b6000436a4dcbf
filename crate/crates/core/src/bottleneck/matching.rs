use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::diagram::{Interval, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::grocat::{Backend, GroupElement};

/// `max(|p1 - p2|, |q1 - q2|)`, where two infinite deaths are at distance 0
/// and one infinite death against a finite one is at distance infinity.
pub fn pair_cost(a: &Interval, b: &Interval) -> f64 {
    let births = (a.birth() - b.birth()).abs();
    let deaths = match (a.is_essential(), b.is_essential()) {
        (true, true) => 0.0,
        (false, false) => (a.death() - b.death()).abs(),
        _ => f64::INFINITY,
    };
    births.max(deaths)
}

/// A finitely supported group-valued map on pairs of intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    backend: Backend,
    entries: BTreeMap<(Interval, Interval), GroupElement>,
}

impl Matching {
    pub fn new(backend: Backend) -> Self {
        Matching {
            backend,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, from: Interval, to: Interval, value: &GroupElement) -> Result<()> {
        if value.backend() != self.backend {
            return Err(Error::BackendMismatch {
                left: self.backend,
                right: value.backend(),
            });
        }
        let key = (from, to);
        let sum = match self.entries.get(&key) {
            Some(old) => old + value,
            None => value.clone(),
        };
        if sum.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, sum);
        }
        Ok(())
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Interval, Interval), &GroupElement)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `||γ||`: the largest pair cost over the support, 0 when empty.
pub fn matching_norm(matching: &Matching) -> f64 {
    matching
        .iter()
        .map(|((a, b), _)| pair_cost(a, b))
        .fold(0.0, f64::max)
}

/// A marginal constraint that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Row {
        interval: Interval,
        expected: GroupElement,
        found: GroupElement,
    },
    Column {
        interval: Interval,
        expected: GroupElement,
        found: GroupElement,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Row {
                interval,
                expected,
                found,
            } => write!(f, "row {interval}: sum {found}, diagram has {expected}"),
            Violation::Column {
                interval,
                expected,
                found,
            } => write!(f, "column {interval}: sum {found}, diagram has {expected}"),
        }
    }
}

/// Checks both marginal conditions on every off-diagonal interval.
pub fn validate_matching(
    y1: &PersistenceDiagram,
    y2: &PersistenceDiagram,
    matching: &Matching,
) -> Result<Vec<Violation>> {
    let backend = y1.backend();
    for other in [y2.backend(), matching.backend()] {
        if other != backend {
            return Err(Error::BackendMismatch {
                left: backend,
                right: other,
            });
        }
    }
    let mut rows: BTreeMap<Interval, GroupElement> = BTreeMap::new();
    let mut cols: BTreeMap<Interval, GroupElement> = BTreeMap::new();
    for ((a, b), v) in matching.iter() {
        let r = rows.entry(*a).or_insert_with(|| GroupElement::zero(backend));
        *r = &*r + v;
        let c = cols.entry(*b).or_insert_with(|| GroupElement::zero(backend));
        *c = &*c + v;
    }
    let zero = GroupElement::zero(backend);
    let mut violations = Vec::new();
    let row_keys: BTreeSet<Interval> = y1.iter().map(|(i, _)| *i).chain(rows.keys().copied()).collect();
    for i in row_keys.into_iter().filter(|i| !i.is_diagonal()) {
        let expected = y1.get(&i);
        let found = rows.get(&i).unwrap_or(&zero);
        if *found != expected {
            violations.push(Violation::Row {
                interval: i,
                expected,
                found: found.clone(),
            });
        }
    }
    let col_keys: BTreeSet<Interval> = y2.iter().map(|(i, _)| *i).chain(cols.keys().copied()).collect();
    for j in col_keys.into_iter().filter(|j| !j.is_diagonal()) {
        let expected = y2.get(&j);
        let found = cols.get(&j).unwrap_or(&zero);
        if *found != expected {
            violations.push(Violation::Column {
                interval: j,
                expected,
                found: found.clone(),
            });
        }
    }
    Ok(violations)
}
