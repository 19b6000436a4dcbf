//! Evaluating a constructible module and its rank function.

use grodiag::diagram::Interval;
use grodiag::error::Result;
use grodiag::grocat::GroupElement;
use grodiag::samples::m1;

pub fn run() -> Result<()> {
    let m = m1();
    for x in [0.5, 1.0, 1.5, 2.0, 3.0, 10.0] {
        println!("M({x}) = {}", m.evaluate(x));
    }
    let a = m.evaluate_map(1.0, 3.0)?;
    println!("M(1 <= 3) = {:?}", a.rows());
    assert!(a.is_zero());

    for (p, q) in [(1.0, 2.0), (1.0, 3.0), (2.0, 3.0), (2.0, f64::INFINITY), (0.0, 1.5)] {
        let r = m.rank_function(&Interval::new(p, q)?)?;
        println!("rk M[{p}, {q}) = {r}");
    }
    assert_eq!(m.rank_function(&Interval::new(1.0, 3.0)?)?, GroupElement::dim(1));
    assert_eq!(m.rank_function(&Interval::new(2.0, f64::INFINITY)?)?, GroupElement::dim(1));
    assert_eq!(m.rank_function(&Interval::new(0.0, 1.5)?)?, GroupElement::dim(0));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
