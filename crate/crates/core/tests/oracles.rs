use grodiag::bottleneck::{bottleneck_distance, bottleneck_oracle, validate_matching};
use grodiag::diagram::{mobius_inversion, rank_from_diagram, Interval};
use grodiag::grocat::{Backend, GroupElement};
use grodiag::random::{probe_points, random_diagram, random_interval, random_module, rng};
use proptest::prelude::*;

#[test]
fn summing_the_diagram_recovers_the_rank_function() {
    let mut r = rng(41);
    for backend in [Backend::Vect, Backend::FinAb] {
        for _ in 0..150 {
            let m = random_module(&mut r, backend, 6);
            let d = mobius_inversion(&m);
            assert!(d.is_positive());
            let s = m.criticals().values().to_vec();
            for (i, p) in s.iter().enumerate() {
                for q in s[i + 1..].iter().copied().chain([f64::INFINITY]) {
                    let interval = Interval::new(*p, q).unwrap();
                    assert_eq!(rank_from_diagram(&d, &interval), m.rank_function(&interval).unwrap());
                }
            }
            let probes = probe_points(&m);
            for _ in 0..20 {
                let interval = random_interval(&mut r, &probes);
                assert_eq!(rank_from_diagram(&d, &interval), m.rank_function(&interval).unwrap());
            }
        }
    }
}

#[test]
fn solver_matches_exhaustive_search() {
    let mut r = rng(43);
    for backend in [Backend::Vect, Backend::FinAb] {
        for _ in 0..300 {
            let a = random_diagram(&mut r, backend, 4, 4);
            let b = random_diagram(&mut r, backend, 4, 4);
            let fast = bottleneck_distance(&a, &b).unwrap();
            assert_eq!(fast.distance, bottleneck_oracle(&a, &b).unwrap());
            assert!(validate_matching(&a, &b, &fast.witness).unwrap().is_empty());
        }
    }
}

fn element() -> impl Strategy<Value = GroupElement> {
    proptest::collection::vec((prop::sample::select(vec![2u64, 3, 5, 7]), -5i64..5), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(GroupElement::zero(Backend::FinAb), |acc, (p, n)| &acc + &GroupElement::prime(p, n))
    })
}

proptest! {
    #[test]
    fn group_laws(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &GroupElement::zero(Backend::FinAb), a.clone());
    }

    #[test]
    fn order_is_compatible_with_addition(a in element(), b in element(), c in element()) {
        if a.partial_leq(&b).unwrap() {
            prop_assert!((&a + &c).partial_leq(&(&b + &c)).unwrap());
        }
        prop_assert_eq!(a.partial_leq(&b).unwrap() && b.partial_leq(&a).unwrap(), a == b);
    }

    #[test]
    fn bottleneck_is_a_metric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let backend = if seed % 2 == 0 { Backend::Vect } else { Backend::FinAb };
        let x = random_diagram(&mut r, backend, 5, 6);
        let y = random_diagram(&mut r, backend, 5, 6);
        let z = random_diagram(&mut r, backend, 5, 6);
        let d = |a, b| bottleneck_distance(a, b).unwrap().distance;
        prop_assert_eq!(d(&x, &x), 0.0);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
    }
}

/// Exhaustive search over matchings with entries in {-1, 0, 1} supported on
/// the points of both diagrams and their diagonal partners. Only reports
/// whether a signed matching beat the nonnegative optimum; asserts nothing
/// beyond the nonnegative distance being an upper bound on what it finds.
#[test]
fn signed_matchings_probe() {
    use grodiag::bottleneck::pair_cost;
    use grodiag::diagram::PersistenceDiagram;

    let mut r = rng(47);
    let (mut tried, mut strictly_better) = (0, 0);
    for _ in 0..150 {
        let a = random_diagram(&mut r, Backend::Vect, 1, 1);
        let b = random_diagram(&mut r, Backend::Vect, 1, 1);
        let points = |d: &PersistenceDiagram| -> Vec<(Interval, i64)> {
            d.iter().filter(|(i, _)| !i.is_essential()).map(|(i, v)| (*i, v.coeff(grodiag::grocat::GeneratorKey::Dim))).collect()
        };
        let (pa, pb) = (points(&a), points(&b));
        if pa.len() + pb.len() != 2 || a.iter().any(|(i, _)| i.is_essential()) || b.iter().any(|(i, _)| i.is_essential()) {
            continue;
        }
        let mut nodes: Vec<Interval> = pa.iter().chain(&pb).map(|x| x.0).collect();
        nodes.sort_by(|x, y| (x.birth(), x.death()).partial_cmp(&(y.birth(), y.death())).unwrap());
        nodes.dedup();
        let diagonals: Vec<Interval> = nodes.iter().map(|i| Interval::diagonal(i.midpoint()).unwrap()).collect();
        let all: Vec<Interval> = nodes.iter().chain(&diagonals).copied().collect();
        let cells: Vec<(usize, usize)> = (0..all.len())
            .flat_map(|i| (0..all.len()).map(move |j| (i, j)))
            .filter(|(i, j)| *i < nodes.len() || *j < nodes.len())
            .collect();
        if cells.len() > 12 {
            continue;
        }
        let mass = |pts: &[(Interval, i64)], i: &Interval| pts.iter().filter(|x| x.0 == *i).map(|x| x.1).sum::<i64>();
        let mut best = f64::INFINITY;
        let mut values = vec![-1i64; cells.len()];
        loop {
            let feasible = (0..nodes.len()).all(|k| {
                let row: i64 = cells.iter().zip(&values).filter(|((i, _), _)| *i == k).map(|(_, v)| v).sum();
                let col: i64 = cells.iter().zip(&values).filter(|((_, j), _)| *j == k).map(|(_, v)| v).sum();
                row == mass(&pa, &nodes[k]) && col == mass(&pb, &nodes[k])
            });
            if feasible {
                let norm = cells
                    .iter()
                    .zip(&values)
                    .filter(|(_, v)| **v != 0)
                    .map(|((i, j), _)| pair_cost(&all[*i], &all[*j]))
                    .fold(0.0, f64::max);
                best = best.min(norm);
            }
            let Some(k) = values.iter().position(|v| *v < 1) else { break };
            values[k] += 1;
            values[..k].iter_mut().for_each(|v| *v = -1);
        }
        let nonnegative = bottleneck_distance(&a, &b).unwrap().distance;
        assert!(best <= nonnegative);
        tried += 1;
        if best < nonnegative {
            strictly_better += 1;
            println!("signed matching of norm {best} beats {nonnegative} for {pa:?} vs {pb:?}");
        }
    }
    println!("signed probe: {strictly_better} of {tried} instances improved by signed entries");
}
