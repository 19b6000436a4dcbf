//! Smith normal form and image classes of homomorphisms between finite abelian groups.

use grodiag::backends::{smith_normal_form, FinAbMorphism, FinAbObject, IntMatrix};
use grodiag::error::Result;
use grodiag::grocat::GroupElement;

pub fn run() -> Result<()> {
    let m = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m);
    let factors: Vec<String> = snf.invariant_factors().iter().map(ToString::to_string).collect();
    println!("invariant factors: {}", factors.join(", "));
    assert_eq!(factors, ["2", "6", "12"]);

    // Z/12 is stored as Z/4 + Z/3; multiplication by 2 has image Z/6
    let z12 = FinAbObject::cyclic(12)?;
    println!("Z/12 has {} generators of orders {:?}", z12.rank(), (0..z12.rank()).map(|i| z12.generator_order(i)).collect::<Vec<_>>());
    let double = FinAbMorphism::new(z12.clone(), z12.clone(), vec![vec![2, 0], vec![0, 2]])?;
    println!("|im(2: Z/12 -> Z/12)| = {}, class {}", double.image_order(), double.image_class());
    assert_eq!(double.image_class(), FinAbObject::cyclic(6)?.classify());

    // Z/4 -> Z/2 + Z/4, 1 -> (1, 1), has image of order 4
    let z4 = FinAbObject::cyclic(4)?;
    let target = FinAbObject::new(vec![(2, 1), (2, 2)])?;
    let f = FinAbMorphism::new(z4, target, vec![vec![1], vec![1]])?;
    println!("image class of 1 -> (1, 1): {}", f.image_class());
    assert_eq!(f.image_class(), GroupElement::prime(2, 2));

    // 1 -> 1 is not well defined from Z/2 to Z/4
    let bad = FinAbMorphism::new(FinAbObject::cyclic(2)?, FinAbObject::cyclic(4)?, vec![vec![1]]);
    println!("Z/2 -> Z/4, 1 -> 1: {}", bad.as_ref().map(|_| "ok".to_string()).unwrap_or_else(|e| e.to_string()));
    assert!(bad.is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
