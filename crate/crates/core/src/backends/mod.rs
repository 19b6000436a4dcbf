//! Concrete abelian categories: vector spaces over GF(p) and finite abelian groups.

pub mod field;
pub mod finab;
pub mod snf;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grocat::{Backend, GroupElement};

pub use field::{FieldMatrix, TrackedBasis};
pub use finab::{FinAbMorphism, FinAbObject};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};

/// `GF(p)^dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldObject {
    pub p: u64,
    pub dim: usize,
}

/// A linear map `source -> target`, as a `target.dim x source.dim` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldMorphism {
    source: FieldObject,
    target: FieldObject,
    matrix: FieldMatrix,
}

impl FieldMorphism {
    pub fn new(source: FieldObject, target: FieldObject, matrix: FieldMatrix) -> Result<Self> {
        if source.p != target.p || matrix.characteristic() != source.p {
            return Err(Error::InvalidMorphism("mixed field characteristics".into()));
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::InvalidMorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        Ok(FieldMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> FieldObject {
        self.source
    }

    pub fn target(&self) -> FieldObject {
        self.target
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }
}

/// An object of one of the supported categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Object {
    Field(FieldObject),
    FinAb(FinAbObject),
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Field(o) => write!(f, "GF({})^{}", o.p, o.dim),
            Object::FinAb(o) if o.is_trivial() => write!(f, "0"),
            Object::FinAb(o) => {
                let parts: Vec<String> = o.factors().iter().map(|(p, k)| format!("Z/{}", p.pow(*k))).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

impl Object {
    pub fn field(p: u64, dim: usize) -> Object {
        Object::Field(FieldObject { p, dim })
    }

    pub fn backend(&self) -> Backend {
        match self {
            Object::Field(_) => Backend::Vect,
            Object::FinAb(_) => Backend::FinAb,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Object::Field(o) => o.dim == 0,
            Object::FinAb(o) => o.is_trivial(),
        }
    }

    /// The zero object of the same category (same characteristic for fields).
    pub fn zero_like(&self) -> Object {
        match self {
            Object::Field(o) => Object::field(o.p, 0),
            Object::FinAb(_) => Object::FinAb(FinAbObject::trivial()),
        }
    }

    /// Number of generators in the chosen presentation.
    pub fn rank(&self) -> usize {
        match self {
            Object::Field(o) => o.dim,
            Object::FinAb(o) => o.rank(),
        }
    }

    /// Grothendieck class `[self]`.
    pub fn class(&self) -> GroupElement {
        match self {
            Object::Field(o) => GroupElement::dim(o.dim as i64),
            Object::FinAb(o) => o.classify(),
        }
    }

    /// Compatible with `other` (same category and, for fields, same characteristic).
    pub fn same_category(&self, other: &Object) -> bool {
        match (self, other) {
            (Object::Field(a), Object::Field(b)) => a.p == b.p,
            (Object::FinAb(_), Object::FinAb(_)) => true,
            _ => false,
        }
    }
}

/// A morphism in one of the supported categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Morphism {
    Field(FieldMorphism),
    FinAb(FinAbMorphism),
}

impl Morphism {
    pub fn identity(obj: &Object) -> Morphism {
        match obj {
            Object::Field(o) => Morphism::Field(FieldMorphism {
                source: *o,
                target: *o,
                matrix: FieldMatrix::identity(o.p, o.dim),
            }),
            Object::FinAb(o) => Morphism::FinAb(FinAbMorphism::identity(o)),
        }
    }

    pub fn zero(source: &Object, target: &Object) -> Result<Morphism> {
        match (source, target) {
            (Object::Field(s), Object::Field(t)) if s.p == t.p => Ok(Morphism::Field(FieldMorphism {
                source: *s,
                target: *t,
                matrix: FieldMatrix::zeros(s.p, t.dim, s.dim),
            })),
            (Object::FinAb(s), Object::FinAb(t)) => {
                Ok(Morphism::FinAb(FinAbMorphism::zero(s.clone(), t.clone())))
            }
            _ => Err(Error::Composition("zero map between different categories".into())),
        }
    }

    /// Builds a morphism from integer rows (`target.rank()` rows of
    /// `source.rank()` entries).
    pub fn from_rows(source: &Object, target: &Object, rows: &[Vec<i64>]) -> Result<Morphism> {
        match (source, target) {
            (Object::Field(s), Object::Field(t)) => {
                let m = FieldMatrix::from_rows(s.p, t.dim, s.dim, rows)?;
                Ok(Morphism::Field(FieldMorphism::new(*s, *t, m)?))
            }
            (Object::FinAb(s), Object::FinAb(t)) => Ok(Morphism::FinAb(FinAbMorphism::new(
                s.clone(),
                t.clone(),
                rows.to_vec(),
            )?)),
            _ => Err(Error::InvalidMorphism("source and target categories differ".into())),
        }
    }

    pub fn backend(&self) -> Backend {
        match self {
            Morphism::Field(_) => Backend::Vect,
            Morphism::FinAb(_) => Backend::FinAb,
        }
    }

    pub fn source(&self) -> Object {
        match self {
            Morphism::Field(f) => Object::Field(f.source),
            Morphism::FinAb(f) => Object::FinAb(f.source().clone()),
        }
    }

    pub fn target(&self) -> Object {
        match self {
            Morphism::Field(f) => Object::Field(f.target),
            Morphism::FinAb(f) => Object::FinAb(f.target().clone()),
        }
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        match self {
            Morphism::Field(f) => f.matrix.to_rows(),
            Morphism::FinAb(f) => f.matrix().to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Morphism::Field(f) => f.matrix.is_zero(),
            Morphism::FinAb(f) => f.is_zero(),
        }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &Morphism) -> Result<Morphism> {
        match (self, f) {
            (Morphism::Field(g), Morphism::Field(f)) => {
                if g.source != f.target {
                    return Err(Error::Composition(format!(
                        "target {:?} does not match source {:?}",
                        f.target, g.source
                    )));
                }
                Ok(Morphism::Field(FieldMorphism {
                    source: f.source,
                    target: g.target,
                    matrix: g.matrix.mul(&f.matrix)?,
                }))
            }
            (Morphism::FinAb(g), Morphism::FinAb(f)) => Ok(Morphism::FinAb(g.after(f)?)),
            _ => Err(Error::Composition("morphisms from different categories".into())),
        }
    }

    /// `[im self]` in the Grothendieck group.
    pub fn image_class(&self) -> GroupElement {
        match self {
            Morphism::Field(f) => GroupElement::dim(f.matrix.rank() as i64),
            Morphism::FinAb(f) => f.image_class(),
        }
    }
}

/// `g ∘ f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    g.after(f)
}

/// The limit of two objects `A`, `B` over the two cospans
/// `A -f0-> C0 <-g0- B` and `A -f1-> C1 <-g1- B`.
#[derive(Debug, Clone)]
pub struct PairLimit {
    pub object: Object,
    pub proj_a: Morphism,
    pub proj_b: Morphism,
}

/// `L = {(x, y) ∈ A ⊕ B : f0 x = g0 y, f1 x = g1 y}` with its projections.
/// Field backend only.
pub fn limit_pair(f0: &Morphism, g0: &Morphism, f1: &Morphism, g1: &Morphism) -> Result<PairLimit> {
    let (Morphism::Field(f0), Morphism::Field(g0), Morphism::Field(f1), Morphism::Field(g1)) =
        (f0, g0, f1, g1)
    else {
        return Err(Error::Unsupported {
            backend: Backend::FinAb,
            what: "limits".into(),
        });
    };
    if f0.source != f1.source || g0.source != g1.source {
        return Err(Error::Composition("cospans do not share their feet".into()));
    }
    if f0.target != g0.target || f1.target != g1.target {
        return Err(Error::Composition("cospans do not share their apexes".into()));
    }
    let p = f0.source.p;
    let a = f0.source.dim;
    let neg_g0 = g0.matrix.negated();
    let neg_g1 = g1.matrix.negated();
    let stacked = FieldMatrix::block(
        p,
        &[vec![&f0.matrix, &neg_g0], vec![&f1.matrix, &neg_g1]],
    )?;
    let kernel = stacked.kernel();
    let l = FieldObject {
        p,
        dim: kernel.cols(),
    };
    let proj_a = FieldMorphism::new(l, f0.source, kernel.row_range(0, a))?;
    let proj_b = FieldMorphism::new(l, g0.source, kernel.row_range(a, kernel.rows()))?;
    Ok(PairLimit {
        object: Object::Field(l),
        proj_a: Morphism::Field(proj_a),
        proj_b: Morphism::Field(proj_b),
    })
}

/// Object description used in module files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ObjectRepr {
    Field { p: u64, dim: usize },
    Finab { factors: Vec<(u64, u32)> },
}

impl TryFrom<&ObjectRepr> for Object {
    type Error = Error;

    fn try_from(r: &ObjectRepr) -> Result<Object> {
        match r {
            ObjectRepr::Field { p, dim } => {
                field::check_characteristic(*p)?;
                Ok(Object::field(*p, *dim))
            }
            ObjectRepr::Finab { factors } => Ok(Object::FinAb(FinAbObject::new(factors.clone())?)),
        }
    }
}

impl From<&Object> for ObjectRepr {
    fn from(o: &Object) -> ObjectRepr {
        match o {
            Object::Field(f) => ObjectRepr::Field { p: f.p, dim: f.dim },
            Object::FinAb(g) => ObjectRepr::Finab {
                factors: g.factors().to_vec(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2(rows: usize, cols: usize, m: &[Vec<i64>]) -> Morphism {
        Morphism::from_rows(&Object::field(2, cols), &Object::field(2, rows), m).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let f = gf2(2, 1, &[vec![1], vec![0]]);
        let id = Morphism::identity(&f.target());
        assert_eq!(compose(&id, &f).unwrap(), f);
        let id = Morphism::identity(&f.source());
        assert_eq!(compose(&f, &id).unwrap(), f);
    }

    #[test]
    fn composition_examples() {
        let g = gf2(1, 2, &[vec![0, 1]]);
        let f = gf2(2, 1, &[vec![1], vec![0]]);
        assert!(compose(&g, &f).unwrap().is_zero());
        assert!(compose(&f, &f).is_err());
    }

    #[test]
    fn image_class_of_identity() {
        let id = Morphism::identity(&Object::field(2, 3));
        assert_eq!(id.image_class(), GroupElement::dim(3));
    }

    #[test]
    fn limit_of_identities_is_diagonal() {
        let id = gf2(1, 1, &[vec![1]]);
        let lim = limit_pair(&id, &id, &id, &id).unwrap();
        assert_eq!(lim.object, Object::field(2, 1));
        assert_eq!(lim.proj_a, id);
        assert_eq!(lim.proj_b, id);
    }

    #[test]
    fn limit_with_zero_legs() {
        let id = gf2(1, 1, &[vec![1]]);
        let zero = gf2(1, 1, &[vec![0]]);
        let lim = limit_pair(&id, &zero, &id, &zero).unwrap();
        assert_eq!(lim.object, Object::field(2, 1));
        assert!(lim.proj_a.is_zero());
        assert_eq!(lim.proj_b.image_class(), GroupElement::dim(1));

        let lim = limit_pair(&zero, &zero, &zero, &zero).unwrap();
        assert_eq!(lim.object, Object::field(2, 2));
    }

    #[test]
    fn limit_rejects_finab() {
        let z2 = Object::FinAb(FinAbObject::new(vec![(2, 1)]).unwrap());
        let id = Morphism::identity(&z2);
        let err = limit_pair(&id, &id, &id, &id).unwrap_err();
        assert!(matches!(err, Error::Unsupported { .. }));
    }
}
