//! Classes in G(Vect) = Z and G(FinAb) = ⊕_p Z, and the positive-cone order.

use grodiag::backends::{FinAbObject, Object};
use grodiag::error::Result;
use grodiag::grocat::{Backend, GroupElement};

pub fn run() -> Result<()> {
    let v = Object::field(3, 4).class();
    println!("[GF(3)^4] = {v}");
    assert_eq!(v, GroupElement::dim(4));

    // Z/12 has length 3: two factors of 2 and one of 3.
    let z12 = FinAbObject::cyclic(12)?.classify();
    println!("[Z/12] = {z12}");
    assert_eq!(z12, &GroupElement::prime(2, 2) + &GroupElement::prime(3, 1));

    let z4 = FinAbObject::cyclic(4)?.classify();
    let z2xz2 = FinAbObject::new(vec![(2, 1), (2, 1)])?.classify();
    println!("[Z/4] = {z4}, [Z/2 + Z/2] = {z2xz2}");
    assert_eq!(z4, z2xz2);

    let diff = &z12 - &z4;
    println!("[Z/12] - [Z/4] = {diff}, nonnegative: {}", diff.is_nonnegative());
    assert!(z4.partial_leq(&z12)?);
    assert!(!z12.partial_leq(&z4)?);

    let mixed = GroupElement::from_terms(Backend::FinAb, [(grodiag::grocat::GeneratorKey::prime(2)?, 1), (grodiag::grocat::GeneratorKey::prime(5)?, -1)])?;
    println!("{mixed} is comparable with 0: {}", mixed.is_nonnegative() || mixed.negate().is_nonnegative());
    assert!(GroupElement::dim(1).checked_add(&z4).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
