use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub id: i64,
    /// Strictly increasing vertex labels.
    pub vertices: Vec<i64>,
    pub value: f64,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// A simplicial complex with a monotone filtration value on each simplex.
///
/// Simplices are kept sorted by id; that order fixes chain coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    by_vertices: HashMap<Vec<i64>, usize>,
}

fn invalid(id: i64, reason: impl Into<String>) -> Error {
    Error::InvalidComplex {
        id,
        reason: reason.into(),
    }
}

impl FilteredComplex {
    /// Checks unique ids, sorted vertex lists, finite values, closure under
    /// faces and `value(face) <= value(coface)`.
    pub fn new(mut simplices: Vec<Simplex>) -> Result<Self> {
        simplices.sort_by_key(|s| s.id);
        if let Some(w) = simplices.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(invalid(w[1].id, "duplicate id"));
        }
        let mut by_vertices = HashMap::with_capacity(simplices.len());
        for (pos, s) in simplices.iter().enumerate() {
            if s.vertices.is_empty() {
                return Err(invalid(s.id, "empty vertex list"));
            }
            if s.vertices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid(s.id, "vertex list is not strictly increasing"));
            }
            if !s.value.is_finite() {
                return Err(invalid(s.id, format!("filtration value {} is not finite", s.value)));
            }
            if let Some(other) = by_vertices.insert(s.vertices.clone(), pos) {
                return Err(invalid(
                    s.id,
                    format!("same vertices as simplex {}", simplices[other].id),
                ));
            }
        }
        for s in &simplices {
            if s.vertices.len() == 1 {
                continue;
            }
            for face in facets(&s.vertices) {
                let Some(&f) = by_vertices.get(&face) else {
                    return Err(invalid(s.id, format!("face {face:?} is missing")));
                };
                let f = &simplices[f];
                if f.value > s.value {
                    return Err(invalid(
                        s.id,
                        format!("face {} has value {} above {}", f.id, f.value, s.value),
                    ));
                }
            }
        }
        Ok(FilteredComplex {
            simplices,
            by_vertices,
        })
    }

    /// Lower-star filtration: each simplex gets the largest value of its vertices.
    /// `cells` must be closed under faces; `vertex_value` is indexed by vertex label.
    pub fn lower_star(cells: &[Vec<i64>], vertex_value: &HashMap<i64, f64>) -> Result<Self> {
        let mut simplices = Vec::with_capacity(cells.len());
        for (id, vertices) in cells.iter().enumerate() {
            let id = id as i64;
            let mut value = f64::NEG_INFINITY;
            for v in vertices {
                let x = vertex_value
                    .get(v)
                    .ok_or_else(|| invalid(id, format!("vertex {v} has no value")))?;
                value = value.max(*x);
            }
            simplices.push(Simplex {
                id,
                vertices: vertices.clone(),
                value,
            });
        }
        Self::new(simplices)
    }

    /// Same complex with new filtration values, given in id order.
    pub fn with_values(&self, values: &[f64]) -> Result<Self> {
        if values.len() != self.simplices.len() {
            return Err(Error::Precondition(format!(
                "{} values for {} simplices",
                values.len(),
                self.simplices.len()
            )));
        }
        let simplices = self
            .simplices
            .iter()
            .zip(values)
            .map(|(s, v)| Simplex { value: *v, ..s.clone() })
            .collect();
        Self::new(simplices)
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.simplices.iter().map(|s| s.value).collect()
    }

    /// Sorted distinct filtration values.
    pub fn distinct_values(&self) -> Vec<f64> {
        let mut v = self.values();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// Position (in id order) of the simplex with these vertices.
    pub fn position(&self, vertices: &[i64]) -> Option<usize> {
        self.by_vertices.get(vertices).copied()
    }

    /// Whether both complexes have the same simplices, ignoring values.
    pub fn same_cells(&self, other: &FilteredComplex) -> bool {
        self.simplices.len() == other.simplices.len()
            && self
                .simplices
                .iter()
                .zip(&other.simplices)
                .all(|(a, b)| a.id == b.id && a.vertices == b.vertices)
    }

    /// Signed codimension-one faces of simplex `pos`, as (face position, ±1).
    pub fn boundary(&self, pos: usize) -> Vec<(usize, i64)> {
        let s = &self.simplices[pos];
        if s.vertices.len() == 1 {
            return Vec::new();
        }
        facets(&s.vertices)
            .enumerate()
            .map(|(i, f)| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                (self.by_vertices[&f], sign)
            })
            .collect()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }
}

/// Faces obtained by dropping vertex 0, 1, ... in turn.
fn facets(vertices: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    (0..vertices.len()).map(move |i| {
        let mut f = vertices.to_vec();
        f.remove(i);
        f
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(id: i64, vertices: &[i64], value: f64) -> Simplex {
        Simplex {
            id,
            vertices: vertices.to_vec(),
            value,
        }
    }

    #[test]
    fn triangle_boundary_is_valid() {
        let k = FilteredComplex::new(vec![
            s(0, &[0], 0.0),
            s(1, &[1], 0.0),
            s(2, &[2], 0.0),
            s(3, &[0, 1], 1.0),
            s(4, &[1, 2], 1.0),
            s(5, &[0, 2], 2.0),
        ])
        .unwrap();
        assert_eq!(k.distinct_values(), vec![0.0, 1.0, 2.0]);
        assert_eq!(k.boundary(5), vec![(2, 1), (0, -1)]);
    }

    #[test]
    fn missing_face_names_the_simplex() {
        let err = FilteredComplex::new(vec![s(0, &[0], 0.0), s(7, &[0, 1], 1.0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidComplex { id: 7, .. }), "{err}");
    }

    #[test]
    fn face_value_above_coface() {
        let err = FilteredComplex::new(vec![s(0, &[0], 2.0), s(1, &[1], 0.0), s(2, &[0, 1], 1.0)])
            .unwrap_err();
        assert!(matches!(err, Error::InvalidComplex { id: 2, .. }), "{err}");
    }

    #[test]
    fn other_rejections() {
        assert!(FilteredComplex::new(vec![s(0, &[0], 0.0), s(0, &[1], 0.0)]).is_err());
        assert!(FilteredComplex::new(vec![s(0, &[1], 0.0), s(1, &[1], 0.0)]).is_err());
        assert!(FilteredComplex::new(vec![s(0, &[], 0.0)]).is_err());
        assert!(FilteredComplex::new(vec![s(0, &[0], f64::NAN)]).is_err());
        assert!(FilteredComplex::new(vec![
            s(0, &[0], 0.0),
            s(1, &[1], 0.0),
            s(2, &[1, 0], 0.0)
        ])
        .is_err());
    }

    #[test]
    fn lower_star_takes_vertex_maximum() {
        let values = HashMap::from([(0, 1.0), (1, 3.0)]);
        let k = FilteredComplex::lower_star(&[vec![0], vec![1], vec![0, 1]], &values).unwrap();
        assert_eq!(k.values(), vec![1.0, 3.0, 3.0]);
    }
}
