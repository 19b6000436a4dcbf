//! Seeded random instances for the property suites.
//!
//! Every real number produced is a small multiple of a power of two, so
//! sums and differences such as `s - ε` or `p + εt` (with `t` a multiple of
//! 1/4) are computed exactly in floating point.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::backends::{FinAbObject, Morphism, Object};
use crate::diagram::{Interval, PersistenceDiagram};
use crate::grocat::{Backend, GroupElement};
use crate::pipeline::{FilteredComplex, Simplex};
use crate::pmodule::ConstructibleModule;

pub const PRIMES: [u64; 3] = [2, 3, 5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k / 8` for a random `k` in `lo..hi`.
pub fn eighth<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> f64 {
    rng.gen_range(lo..hi) as f64 / 8.0
}

/// `count` distinct sorted values `k / 8` with `0 <= k < 8 * span`.
pub fn distinct_eighths<R: Rng>(rng: &mut R, count: usize, span: i64) -> Vec<f64> {
    let pool: Vec<i64> = (0..8 * span).collect();
    let mut picked: Vec<i64> = pool.choose_multiple(rng, count).copied().collect();
    picked.sort_unstable();
    picked.into_iter().map(|k| k as f64 / 8.0).collect()
}

#[derive(Debug, Clone, Copy)]
pub struct ComplexShape {
    pub max_simplices: usize,
    pub max_values: usize,
    /// Largest simplex dimension.
    pub max_dim: usize,
    pub max_vertices: usize,
}

impl Default for ComplexShape {
    fn default() -> Self {
        ComplexShape {
            max_simplices: 200,
            max_values: 20,
            max_dim: 3,
            max_vertices: 14,
        }
    }
}

/// A random flag-like complex: random edges, then each clique of the next
/// size is filled with probability 0.6, up to `max_dim`. Values come
/// from a pool of at most `max_values` numbers and never drop below a face.
pub fn random_complex<R: Rng>(rng: &mut R, shape: ComplexShape) -> FilteredComplex {
    let n = rng.gen_range(shape.max_vertices.min(3)..=shape.max_vertices.max(1));
    let count = rng.gen_range(1..=shape.max_values.max(1));
    let pool = distinct_eighths(rng, count, 4);
    let density: f64 = rng.gen_range(0.3..0.9);
    let mut cells: Vec<Vec<i64>> = (0..n as i64).map(|v| vec![v]).collect();
    let mut last: Vec<Vec<i64>> = cells.clone();
    let mut present: BTreeSet<Vec<i64>> = cells.iter().cloned().collect();
    for dim in 1..=shape.max_dim {
        let mut next = Vec::new();
        for s in &last {
            let top = *s.last().expect("nonempty");
            for v in top + 1..n as i64 {
                if cells.len() + next.len() >= shape.max_simplices {
                    break;
                }
                let mut t = s.clone();
                t.push(v);
                let faces_present = (0..t.len()).all(|i| {
                    let mut f = t.clone();
                    f.remove(i);
                    present.contains(&f)
                });
                let p = if dim == 1 { density } else { 0.6 };
                if faces_present && rng.gen_bool(p) {
                    next.push(t);
                }
            }
        }
        present.extend(next.iter().cloned());
        cells.extend(next.iter().cloned());
        last = next;
    }
    let mut value: HashMap<Vec<i64>, f64> = HashMap::new();
    let mut simplices = Vec::with_capacity(cells.len());
    for c in &cells {
        let floor = if c.len() == 1 {
            f64::NEG_INFINITY
        } else {
            (0..c.len())
                .map(|i| {
                    let mut f = c.clone();
                    f.remove(i);
                    value[&f]
                })
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let allowed: Vec<f64> = pool.iter().copied().filter(|x| *x >= floor).collect();
        let v = if floor.is_finite() && rng.gen_bool(0.4) {
            floor
        } else {
            *allowed.choose(rng).expect("the floor comes from the pool")
        };
        value.insert(c.clone(), v);
        simplices.push(Simplex {
            id: 0,
            vertices: c.clone(),
            value: v,
        });
    }
    // ids in a shuffled order so that id order differs from filtration order
    let mut ids: Vec<i64> = (0..simplices.len() as i64).collect();
    ids.shuffle(rng);
    for (s, id) in simplices.iter_mut().zip(ids) {
        s.id = id;
    }
    FilteredComplex::new(simplices).expect("generated complexes are valid")
}

/// A second filtration `g` of the same complex with `|f - g| <= max_shift`.
/// `max_shift` should be a multiple of 1/16.
pub fn perturb<R: Rng>(rng: &mut R, complex: &FilteredComplex, max_shift: f64) -> FilteredComplex {
    let steps = (max_shift * 16.0).round() as i64;
    let simplices = complex.simplices();
    let mut order: Vec<usize> = (0..simplices.len()).collect();
    order.sort_by_key(|i| simplices[*i].dim());
    let mut g = vec![0.0; simplices.len()];
    for pos in order {
        let shifted = simplices[pos].value + rng.gen_range(-steps..=steps) as f64 / 16.0;
        g[pos] = complex
            .boundary(pos)
            .into_iter()
            .map(|(face, _)| g[face])
            .fold(shifted, f64::max);
    }
    complex.with_values(&g).expect("perturbation keeps faces below cofaces")
}

fn random_field_map<R: Rng>(rng: &mut R, p: u64, source: usize, target: usize) -> Morphism {
    let rows: Vec<Vec<i64>> = (0..target)
        .map(|_| (0..source).map(|_| rng.gen_range(0..p as i64)).collect())
        .collect();
    Morphism::from_rows(&Object::field(p, source), &Object::field(p, target), &rows).expect("shape")
}

pub fn random_finab_object<R: Rng>(rng: &mut R, max_rank: usize) -> FinAbObject {
    let rank = rng.gen_range(0..=max_rank);
    let factors = (0..rank)
        .map(|_| (*PRIMES.choose(rng).expect("nonempty"), rng.gen_range(1..=3)))
        .collect();
    FinAbObject::new(factors).expect("small factors")
}

/// A random well-defined homomorphism: entry `(i, j)` is a multiple of
/// `n_i / gcd(n_i, o_j)` where `o_j` is the order of source generator `j`
/// and `n_i` that of target generator `i`.
pub fn random_finab_map<R: Rng>(rng: &mut R, source: &FinAbObject, target: &FinAbObject) -> Morphism {
    let rows: Vec<Vec<i64>> = (0..target.rank())
        .map(|i| {
            let n = target.generator_order(i);
            (0..source.rank())
                .map(|j| {
                    let step = n / n.gcd(&source.generator_order(j));
                    step * rng.gen_range(0..n / step)
                })
                .collect()
        })
        .collect();
    Morphism::from_rows(&Object::FinAb(source.clone()), &Object::FinAb(target.clone()), &rows)
        .expect("well-defined by construction")
}

/// A random module with up to `max_levels` critical values.
pub fn random_module<R: Rng>(rng: &mut R, backend: Backend, max_levels: usize) -> ConstructibleModule {
    let k = rng.gen_range(1..=max_levels.max(1));
    let criticals = distinct_eighths(rng, k, 4);
    let (objects, maps): (Vec<Object>, Vec<Morphism>) = match backend {
        Backend::Vect => {
            let p = *PRIMES.choose(rng).expect("nonempty");
            let dims: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
            let maps = dims.windows(2).map(|w| random_field_map(rng, p, w[0], w[1])).collect();
            (dims.iter().map(|d| Object::field(p, *d)).collect(), maps)
        }
        Backend::FinAb => {
            let objs: Vec<FinAbObject> = (0..k).map(|_| random_finab_object(rng, 3)).collect();
            let maps = objs.windows(2).map(|w| random_finab_map(rng, &w[0], &w[1])).collect();
            (objs.into_iter().map(Object::FinAb).collect(), maps)
        }
    };
    ConstructibleModule::new(criticals, objects, maps).expect("generated modules are valid")
}

/// Parameters worth probing for a module: its critical values, midpoints
/// between them, and points just outside.
pub fn probe_points(module: &ConstructibleModule) -> Vec<f64> {
    let s = module.criticals().values();
    let mut out: Vec<f64> = s.to_vec();
    out.extend(s.windows(2).map(|w| w[0] / 2.0 + w[1] / 2.0));
    out.push(s[0] - 0.5);
    out.push(s[s.len() - 1] + 0.5);
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// A random off-diagonal interval with endpoints among `points` or `+inf`.
pub fn random_interval<R: Rng>(rng: &mut R, points: &[f64]) -> Interval {
    loop {
        let p = *points.choose(rng).expect("nonempty");
        let q = if rng.gen_bool(0.25) {
            f64::INFINITY
        } else {
            *points.choose(rng).expect("nonempty")
        };
        if p < q {
            return Interval::new(p, q).expect("p < q");
        }
    }
}

/// `(outer, inner)` with `inner ⊆ outer`, both off-diagonal.
pub fn random_nested_intervals<R: Rng>(rng: &mut R, points: &[f64]) -> (Interval, Interval) {
    loop {
        let a = random_interval(rng, points);
        let b = random_interval(rng, points);
        if a.contains(&b) {
            return (a, b);
        }
        if b.contains(&a) {
            return (b, a);
        }
    }
}

/// A random positive diagram with per-generator total mass at most `max_mass`.
pub fn random_diagram<R: Rng>(rng: &mut R, backend: Backend, max_points: usize, max_mass: i64) -> PersistenceDiagram {
    let keys: Vec<GroupElement> = match backend {
        Backend::Vect => vec![GroupElement::dim(1)],
        Backend::FinAb => PRIMES.iter().map(|p| GroupElement::prime(*p, 1)).collect(),
    };
    let mut mass = vec![0i64; keys.len()];
    let mut d = PersistenceDiagram::new(backend);
    for _ in 0..rng.gen_range(0..=max_points) {
        let p = eighth(rng, 0, 32);
        let q = if rng.gen_bool(0.05) {
            f64::INFINITY
        } else {
            p + eighth(rng, 1, 24)
        };
        let interval = Interval::new(p, q).expect("p < q");
        let mut value = GroupElement::zero(backend);
        for (k, key) in keys.iter().enumerate() {
            let room = max_mass - mass[k];
            if room > 0 && rng.gen_bool(0.6) {
                let m = rng.gen_range(1..=room.min(2));
                mass[k] += m;
                value = &value + &key.scale(m);
            }
        }
        d.add(interval, &value).expect("same backend");
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complexes_respect_the_shape() {
        let mut r = rng(7);
        for _ in 0..50 {
            let k = random_complex(&mut r, ComplexShape::default());
            assert!(k.len() <= 200);
            assert!(k.distinct_values().len() <= 20);
            let g = perturb(&mut r, &k, 0.5);
            for (a, b) in k.simplices().iter().zip(g.simplices()) {
                assert!((a.value - b.value).abs() <= 0.5);
            }
        }
    }

    #[test]
    fn modules_and_diagrams_are_valid() {
        let mut r = rng(11);
        for backend in [Backend::Vect, Backend::FinAb] {
            for _ in 0..50 {
                random_module(&mut r, backend, 5);
                let d = random_diagram(&mut r, backend, 5, 6);
                assert!(d.is_positive());
                for key in d.generators() {
                    let mass: i64 = d.component(key).iter().map(|x| x.1).sum();
                    assert!(mass <= 6);
                }
            }
        }
    }

    #[test]
    fn same_seed_same_output() {
        let a = random_complex(&mut rng(3), ComplexShape::default());
        let b = random_complex(&mut rng(3), ComplexShape::default());
        assert_eq!(a, b);
    }
}
