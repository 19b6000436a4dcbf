use crate::backends::field::check_characteristic;
use crate::backends::{FieldMatrix, FieldMorphism, FieldObject, Morphism, Object, TrackedBasis};
use crate::error::{Error, Result};
use crate::grocat::is_prime;
use crate::pmodule::ConstructibleModule;

use super::complex::FilteredComplex;

/// `H_k` of one sublevel complex: chosen cycle representatives plus a solver
/// that writes any cycle in terms of boundaries and those representatives.
#[derive(Debug, Clone)]
struct Level {
    value: f64,
    reps: Vec<Vec<u64>>,
    solver: TrackedBasis,
    rep_generators: Vec<usize>,
}

/// Degree-`k` homology over `GF(p)` of every sublevel complex of a filtration.
///
/// Chains are vectors indexed by the `k`-simplices in id order.
#[derive(Debug, Clone)]
pub struct HomologyLevels {
    p: u64,
    levels: Vec<Level>,
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    check_characteristic(p)?;
    if !is_prime(p) {
        return Err(Error::Precondition(format!("field characteristic {p} is not prime")));
    }
    Ok(())
}

/// Boundary of each `dim`-simplex (id order) as a dense vector over the
/// `(dim - 1)`-simplices, together with its value.
fn boundary_columns(complex: &FilteredComplex, dim: usize, p: u64) -> Vec<(f64, Vec<u64>)> {
    let mut index = vec![usize::MAX; complex.len()];
    let mut count = 0;
    if dim > 0 {
        for (pos, s) in complex.simplices().iter().enumerate() {
            if s.dim() == dim - 1 {
                index[pos] = count;
                count += 1;
            }
        }
    }
    complex
        .simplices()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.dim() == dim)
        .map(|(pos, s)| {
            let mut v = vec![0u64; count];
            for (face, sign) in complex.boundary(pos) {
                v[index[face]] = if sign > 0 { 1 } else { p - 1 };
            }
            (s.value, v)
        })
        .collect()
}

impl HomologyLevels {
    pub fn compute(complex: &FilteredComplex, degree: usize, p: u64) -> Result<Self> {
        check_prime(p)?;
        if complex.is_empty() {
            return Err(Error::Precondition("the complex has no simplices".into()));
        }
        let cycles_of = boundary_columns(complex, degree, p);
        let bounding = boundary_columns(complex, degree + 1, p);
        let n = cycles_of.len();
        let face_len = cycles_of.first().map_or(0, |c| c.1.len());
        let levels = complex
            .distinct_values()
            .into_iter()
            .map(|value| {
                // cycles: relations among the boundaries of present k-simplices
                let present: Vec<usize> = (0..n).filter(|i| cycles_of[*i].0 <= value).collect();
                let mut z = TrackedBasis::new(p, face_len);
                let mut cycles = Vec::new();
                for &i in &present {
                    if let Some(rel) = z.insert(&cycles_of[i].1) {
                        let mut c = vec![0u64; n];
                        for (j, r) in present.iter().zip(rel) {
                            c[*j] = r;
                        }
                        cycles.push(c);
                    }
                }
                let mut solver = TrackedBasis::new(p, n);
                for (v, col) in &bounding {
                    if *v <= value {
                        solver.insert(col);
                    }
                }
                let mut reps = Vec::new();
                let mut rep_generators = Vec::new();
                for c in cycles {
                    let g = solver.generators();
                    if solver.insert(&c).is_none() {
                        reps.push(c);
                        rep_generators.push(g);
                    }
                }
                Level {
                    value,
                    reps,
                    solver,
                    rep_generators,
                }
            })
            .collect();
        Ok(HomologyLevels { p, levels })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.value).collect()
    }

    pub fn dim(&self, level: usize) -> usize {
        self.levels[level].reps.len()
    }

    pub fn object(&self, level: usize) -> Object {
        Object::field(self.p, self.dim(level))
    }

    /// Largest level whose value is `<= x`.
    pub fn level_at(&self, x: f64) -> Option<usize> {
        self.levels.partition_point(|l| l.value <= x).checked_sub(1)
    }

    pub fn representatives(&self, level: usize) -> &[Vec<u64>] {
        &self.levels[level].reps
    }

    /// Coordinates of the class of `cycle` in the basis of `level`.
    pub fn coordinates(&self, level: usize, cycle: &[u64]) -> Result<Vec<u64>> {
        let l = &self.levels[level];
        let combo = l.solver.solve(cycle).ok_or_else(|| {
            Error::Precondition(format!("chain is not a cycle of the sublevel complex at {}", l.value))
        })?;
        Ok(l.rep_generators.iter().map(|g| combo[*g]).collect())
    }

    /// The map `H_k(K_i) -> H_k(K_j)` induced by inclusion, computed directly.
    pub fn induced_map(&self, i: usize, j: usize) -> Result<Morphism> {
        if i > j {
            return Err(Error::Order {
                p: self.levels[i].value,
                q: self.levels[j].value,
            });
        }
        let columns = self.levels[i]
            .reps
            .iter()
            .map(|z| self.coordinates(j, z))
            .collect::<Result<Vec<_>>>()?;
        self.morphism(i, self.dim(j), &columns)
    }

    /// Field morphism out of level `i` with the given image columns.
    pub(crate) fn morphism(&self, i: usize, target_dim: usize, columns: &[Vec<u64>]) -> Result<Morphism> {
        let source = FieldObject {
            p: self.p,
            dim: self.dim(i),
        };
        let target = FieldObject {
            p: self.p,
            dim: target_dim,
        };
        let matrix = FieldMatrix::from_columns(self.p, target_dim, columns);
        Ok(Morphism::Field(FieldMorphism::new(source, target, matrix)?))
    }

    pub fn module(&self) -> Result<ConstructibleModule> {
        let objects = (0..self.len()).map(|i| self.object(i)).collect();
        let maps = (1..self.len())
            .map(|j| self.induced_map(j - 1, j))
            .collect::<Result<Vec<_>>>()?;
        ConstructibleModule::new(self.values(), objects, maps)
    }
}

/// Degree-`degree` sublevel homology over `GF(p)` as a constructible module
/// with one critical value per distinct filtration value.
pub fn homology_module(complex: &FilteredComplex, degree: usize, p: u64) -> Result<ConstructibleModule> {
    HomologyLevels::compute(complex, degree, p)?.module()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::complex::Simplex;

    fn triangle() -> FilteredComplex {
        let s = |id, v: &[i64], value| Simplex {
            id,
            vertices: v.to_vec(),
            value,
        };
        FilteredComplex::new(vec![
            s(0, &[0], 0.0),
            s(1, &[1], 0.0),
            s(2, &[2], 0.0),
            s(3, &[0, 1], 1.0),
            s(4, &[1, 2], 1.0),
            s(5, &[0, 2], 2.0),
        ])
        .unwrap()
    }

    fn rank(m: &Morphism) -> usize {
        match m {
            Morphism::Field(f) => f.matrix().rank(),
            Morphism::FinAb(_) => unreachable!(),
        }
    }

    #[test]
    fn single_vertex() {
        let k = FilteredComplex::new(vec![Simplex {
            id: 0,
            vertices: vec![0],
            value: 0.0,
        }])
        .unwrap();
        let m = homology_module(&k, 0, 3).unwrap();
        assert_eq!(m.criticals().values(), &[0.0]);
        assert_eq!(m.objects(), &[Object::field(3, 1)]);
    }

    #[test]
    fn triangle_degree_zero() {
        let m = homology_module(&triangle(), 0, 2).unwrap();
        assert_eq!(m.criticals().values(), &[0.0, 1.0, 2.0]);
        let dims: Vec<usize> = m.objects().iter().map(Object::rank).collect();
        assert_eq!(dims, vec![3, 1, 1]);
        let ranks: Vec<usize> = m.maps().iter().map(rank).collect();
        assert_eq!(ranks, vec![1, 1]);
    }

    #[test]
    fn triangle_degree_one() {
        for p in [2, 3, 5] {
            let m = homology_module(&triangle(), 1, p).unwrap();
            let dims: Vec<usize> = m.objects().iter().map(Object::rank).collect();
            assert_eq!(dims, vec![0, 0, 1]);
        }
    }

    #[test]
    fn induced_maps_compose() {
        let h = HomologyLevels::compute(&triangle(), 0, 3).unwrap();
        let direct = h.induced_map(0, 2).unwrap();
        let composed = h.induced_map(1, 2).unwrap().after(&h.induced_map(0, 1).unwrap()).unwrap();
        assert_eq!(direct, composed);
    }

    #[test]
    fn rejects_empty_and_non_prime() {
        assert!(HomologyLevels::compute(&FilteredComplex::new(vec![]).unwrap(), 0, 2).is_err());
        assert!(HomologyLevels::compute(&triangle(), 0, 4).is_err());
    }
}
