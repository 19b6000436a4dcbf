//! Small hand-checkable inputs used by the examples, the suites and the tests.

use crate::backends::{FinAbObject, Morphism, Object};
use crate::diagram::{Interval, PersistenceDiagram};
use crate::grocat::{Backend, GroupElement};
use crate::pipeline::{FilteredComplex, Simplex};
use crate::pmodule::ConstructibleModule;

/// `GF(2) -> GF(2)^2 -> GF(2)` at `1, 2, 3` with maps `[1; 0]` and `[0 1]`.
pub fn m1() -> ConstructibleModule {
    let obj = |d| Object::field(2, d);
    let a = Morphism::from_rows(&obj(1), &obj(2), &[vec![1], vec![0]]).expect("2x1");
    let b = Morphism::from_rows(&obj(2), &obj(1), &[vec![0, 1]]).expect("1x2");
    ConstructibleModule::new(vec![1.0, 2.0, 3.0], vec![obj(1), obj(2), obj(1)], vec![a, b]).expect("valid")
}

/// `{[1, 3): 1, [2, inf): 1}`.
pub fn m1_diagram() -> PersistenceDiagram {
    PersistenceDiagram::from_points(
        Backend::Vect,
        [
            (Interval::new(1.0, 3.0).expect("interval"), GroupElement::dim(1)),
            (Interval::new(2.0, f64::INFINITY).expect("interval"), GroupElement::dim(1)),
        ],
    )
    .expect("valid")
}

/// The quotient `Z/4 -> Z/2` at `1, 2`.
pub fn m2() -> ConstructibleModule {
    let z4 = Object::FinAb(FinAbObject::new(vec![(2, 2)]).expect("Z/4"));
    let z2 = Object::FinAb(FinAbObject::new(vec![(2, 1)]).expect("Z/2"));
    let q = Morphism::from_rows(&z4, &z2, &[vec![1]]).expect("quotient");
    ConstructibleModule::new(vec![1.0, 2.0], vec![z4, z2], vec![q]).expect("valid")
}

/// `{[1, 2): e_2, [1, inf): e_2}`.
pub fn m2_diagram() -> PersistenceDiagram {
    let e2 = GroupElement::prime(2, 1);
    PersistenceDiagram::from_points(
        Backend::FinAb,
        [
            (Interval::new(1.0, 2.0).expect("interval"), e2.clone()),
            (Interval::new(1.0, f64::INFINITY).expect("interval"), e2),
        ],
    )
    .expect("valid")
}

/// Boundary of a triangle: vertices at 0, edges `ab`, `bc` at 1, edge `ca` at 2,
/// all shifted by `shift`.
pub fn triangle_boundary(shift: f64) -> FilteredComplex {
    let s = |id, vertices: &[i64], value: f64| Simplex {
        id,
        vertices: vertices.to_vec(),
        value: value + shift,
    };
    FilteredComplex::new(vec![
        s(0, &[0], 0.0),
        s(1, &[1], 0.0),
        s(2, &[2], 0.0),
        s(3, &[0, 1], 1.0),
        s(4, &[1, 2], 1.0),
        s(5, &[0, 2], 2.0),
    ])
    .expect("valid")
}
