//! Bottleneck distance between positive group-valued diagrams.
//!
//! `G(Vect) = Z` and `G(FinAb) = ⊕_p Z` are free, so the marginal constraints
//! of a matching split generator by generator. Each component is a transport
//! problem between integer multiplicities, solved by searching the sorted
//! candidate thresholds for the least one whose capacitated bipartite network
//! saturates. Any finite point may also be absorbed by the diagonal at cost
//! half its length; essential points can only pair with essential points.

pub mod flow;
pub mod matching;
pub mod oracle;

use crate::diagram::{Interval, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::grocat::{GeneratorKey, GroupElement};

pub use matching::{matching_norm, pair_cost, validate_matching, Matching, Violation};
pub use oracle::bottleneck_oracle;

use flow::FlowNetwork;

/// A distance together with a matching that attains it.
#[derive(Debug, Clone)]
pub struct Bottleneck {
    pub distance: f64,
    pub witness: Matching,
}

/// Integer transport plan of one generator component.
#[derive(Debug, Clone, Default)]
pub struct Plan {
    pub pairs: Vec<(usize, usize, u64)>,
    pub to_diagonal: Vec<(usize, u64)>,
    pub from_diagonal: Vec<(usize, u64)>,
}

/// One generator's share of a diagram, as nonnegative multiplicities.
pub(crate) fn multiplicities(diagram: &PersistenceDiagram, key: GeneratorKey) -> Result<Vec<(Interval, u64)>> {
    diagram
        .component(key)
        .into_iter()
        .map(|(i, c)| {
            u64::try_from(c)
                .map(|m| (i, m))
                .map_err(|_| Error::Precondition(format!("diagram value at {i} is not positive")))
        })
        .collect()
}

fn keys(y1: &PersistenceDiagram, y2: &PersistenceDiagram) -> Vec<GeneratorKey> {
    let mut keys = y1.generators();
    keys.extend(y2.generators());
    keys.sort_unstable();
    keys.dedup();
    keys
}

pub(crate) fn check_inputs(y1: &PersistenceDiagram, y2: &PersistenceDiagram) -> Result<Vec<GeneratorKey>> {
    if y1.backend() != y2.backend() {
        return Err(Error::BackendMismatch {
            left: y1.backend(),
            right: y2.backend(),
        });
    }
    for (name, y) in [("first", y1), ("second", y2)] {
        if !y.is_positive() {
            return Err(Error::Precondition(format!("{name} diagram is not positive")));
        }
    }
    Ok(keys(y1, y2))
}

/// Sorted, deduplicated thresholds at which feasibility can change.
pub fn candidate_thresholds(a: &[(Interval, u64)], b: &[(Interval, u64)]) -> Vec<f64> {
    let mut out = vec![0.0, f64::INFINITY];
    for (i, _) in a {
        for (j, _) in b {
            out.push(pair_cost(i, j));
        }
    }
    out.extend(a.iter().chain(b).map(|(i, _)| i.half_length()));
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// Tries to route all mass of `a` and `b` using only pairs of cost `<= eps`.
pub fn feasible_plan(a: &[(Interval, u64)], b: &[(Interval, u64)], eps: f64) -> Option<Plan> {
    let (n, m) = (a.len(), b.len());
    let mass_a: u64 = a.iter().map(|x| x.1).sum();
    let mass_b: u64 = b.iter().map(|x| x.1).sum();
    let unbounded = mass_a + mass_b;
    let source = 0;
    let sink = 1;
    let left = |i: usize| 2 + i;
    let diag_left = 2 + n;
    let right = |j: usize| 3 + n + j;
    let diag_right = 3 + n + m;
    let mut net = FlowNetwork::new(4 + n + m);
    for (i, (_, mult)) in a.iter().enumerate() {
        net.add_edge(source, left(i), *mult);
    }
    net.add_edge(source, diag_left, mass_b);
    for (j, (_, mult)) in b.iter().enumerate() {
        net.add_edge(right(j), sink, *mult);
    }
    net.add_edge(diag_right, sink, mass_a);
    net.add_edge(diag_left, diag_right, unbounded);

    let mut pair_edges = Vec::new();
    let mut out_edges = Vec::new();
    let mut in_edges = Vec::new();
    for (i, (x, _)) in a.iter().enumerate() {
        for (j, (y, _)) in b.iter().enumerate() {
            if pair_cost(x, y) <= eps {
                pair_edges.push((i, j, net.add_edge(left(i), right(j), unbounded)));
            }
        }
        if x.half_length() <= eps {
            out_edges.push((i, net.add_edge(left(i), diag_right, unbounded)));
        }
    }
    for (j, (y, _)) in b.iter().enumerate() {
        if y.half_length() <= eps {
            in_edges.push((j, net.add_edge(diag_left, right(j), unbounded)));
        }
    }
    if net.max_flow(source, sink) != mass_a + mass_b {
        return None;
    }
    let keep = |(k, e): (usize, usize)| {
        let f = net.flow(e);
        (f > 0).then_some((k, f))
    };
    Some(Plan {
        pairs: pair_edges
            .into_iter()
            .filter_map(|(i, j, e)| {
                let f = net.flow(e);
                (f > 0).then_some((i, j, f))
            })
            .collect(),
        to_diagonal: out_edges.into_iter().filter_map(keep).collect(),
        from_diagonal: in_edges.into_iter().filter_map(keep).collect(),
    })
}

/// Least feasible candidate threshold for one component, with its plan.
pub(crate) fn solve_component(a: &[(Interval, u64)], b: &[(Interval, u64)]) -> (f64, Plan) {
    let candidates = candidate_thresholds(a, b);
    // feasibility is monotone in the threshold and always holds at infinity
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    let mut best = feasible_plan(a, b, candidates[hi]).expect("everything is allowed at infinity");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match feasible_plan(a, b, candidates[mid]) {
            Some(plan) => {
                hi = mid;
                best = plan;
            }
            None => lo = mid + 1,
        }
    }
    (candidates[hi], best)
}

/// Closest diagonal interval; an essential point (only sent there when the
/// distance is infinite) goes to its birth.
fn diagonal_partner(i: &Interval) -> Result<Interval> {
    if i.is_essential() {
        Interval::diagonal(i.birth())
    } else {
        Interval::diagonal(i.midpoint())
    }
}

/// The bottleneck distance between two positive diagrams, with a witness
/// matching whose norm equals the distance. Returns `inf` when no
/// finite-cost matching exists.
pub fn bottleneck_distance(y1: &PersistenceDiagram, y2: &PersistenceDiagram) -> Result<Bottleneck> {
    let keys = check_inputs(y1, y2)?;
    let backend = y1.backend();
    let mut witness = Matching::new(backend);
    let mut distance: f64 = 0.0;
    for key in keys {
        let a = multiplicities(y1, key)?;
        let b = multiplicities(y2, key)?;
        let (d, plan) = solve_component(&a, &b);
        distance = distance.max(d);
        let unit = GroupElement::from_terms(backend, [(key, 1)])?;
        for (i, j, f) in plan.pairs {
            witness.add(a[i].0, b[j].0, &unit.scale(f as i64))?;
        }
        for (i, f) in plan.to_diagonal {
            let diag = diagonal_partner(&a[i].0)?;
            witness.add(a[i].0, diag, &unit.scale(f as i64))?;
        }
        for (j, f) in plan.from_diagonal {
            let diag = diagonal_partner(&b[j].0)?;
            witness.add(diag, b[j].0, &unit.scale(f as i64))?;
        }
    }
    Ok(Bottleneck { distance, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grocat::Backend;

    const INF: f64 = f64::INFINITY;

    fn iv(p: f64, q: f64) -> Interval {
        Interval::new(p, q).unwrap()
    }

    fn dgm(points: &[((f64, f64), GroupElement)]) -> PersistenceDiagram {
        let backend = points.first().map_or(Backend::Vect, |p| p.1.backend());
        PersistenceDiagram::from_points(backend, points.iter().map(|((p, q), v)| (iv(*p, *q), v.clone())))
            .unwrap()
    }

    fn check(y1: &PersistenceDiagram, y2: &PersistenceDiagram) -> f64 {
        let r = bottleneck_distance(y1, y2).unwrap();
        assert!(validate_matching(y1, y2, &r.witness).unwrap().is_empty());
        assert_eq!(matching_norm(&r.witness), r.distance);
        r.distance
    }

    #[test]
    fn single_point_against_empty() {
        let y1 = dgm(&[((0.0, 2.0), GroupElement::dim(1))]);
        let y2 = PersistenceDiagram::new(Backend::Vect);
        let r = bottleneck_distance(&y1, &y2).unwrap();
        assert_eq!(r.distance, 1.0);
        let entries: Vec<_> = r.witness.iter().collect();
        assert_eq!(entries.len(), 1);
        assert_eq!(*entries[0].0, (iv(0.0, 2.0), iv(1.0, 1.0)));
        check(&y1, &y2);
    }

    #[test]
    fn identical_diagrams() {
        let y = dgm(&[
            ((0.0, 2.0), GroupElement::dim(2)),
            ((1.0, INF), GroupElement::dim(1)),
            ((0.5, 0.75), GroupElement::dim(3)),
        ]);
        let r = bottleneck_distance(&y, &y).unwrap();
        assert_eq!(r.distance, 0.0);
        let expected: Vec<_> = y.iter().map(|(i, v)| ((*i, *i), v.clone())).collect();
        let got: Vec<_> = r.witness.iter().map(|(k, v)| (*k, v.clone())).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn essential_against_empty_is_infinite() {
        let y1 = dgm(&[((0.0, INF), GroupElement::dim(1))]);
        let y2 = PersistenceDiagram::new(Backend::Vect);
        assert_eq!(check(&y1, &y2), INF);
    }

    #[test]
    fn per_prime_components() {
        let e2 = GroupElement::prime(2, 1);
        let e3 = GroupElement::prime(3, 1);
        let y1 = dgm(&[((0.0, 3.0), &e2 + &e3)]);
        let y2 = dgm(&[((0.0, 3.0), e2), ((0.5, 3.5), e3)]);
        assert_eq!(check(&y1, &y2), 0.5);
    }

    #[test]
    fn rejects_non_positive_input() {
        let y1 = dgm(&[((0.0, 3.0), GroupElement::dim(-1))]);
        let y2 = PersistenceDiagram::new(Backend::Vect);
        assert!(matches!(bottleneck_distance(&y1, &y2), Err(Error::Precondition(_))));
    }

    #[test]
    fn feasibility_is_monotone_on_a_sweep() {
        let a = vec![(iv(0.0, 10.0), 1), (iv(2.0, 3.0), 2), (iv(1.0, INF), 1)];
        let b = vec![(iv(1.0, 11.0), 1), (iv(2.5, 3.0), 1), (iv(0.0, INF), 1)];
        let c = candidate_thresholds(&a, &b);
        let feasible: Vec<bool> = c.iter().map(|e| feasible_plan(&a, &b, *e).is_some()).collect();
        let first = feasible.iter().position(|f| *f).unwrap();
        assert!(feasible[first..].iter().all(|f| *f));
        assert_eq!(solve_component(&a, &b).0, c[first]);
    }
}
