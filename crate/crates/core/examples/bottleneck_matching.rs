//! Bottleneck distance between group-valued diagrams, with an optimal matching.

use grodiag::bottleneck::{bottleneck_distance, bottleneck_oracle, matching_norm, validate_matching};
use grodiag::diagram::{Interval, PersistenceDiagram};
use grodiag::error::Result;
use grodiag::grocat::{Backend, GroupElement};

fn diagram(points: &[(f64, f64, i64)]) -> Result<PersistenceDiagram> {
    let mut d = PersistenceDiagram::new(Backend::Vect);
    for (p, q, n) in points {
        d.add(Interval::new(*p, *q)?, &GroupElement::dim(*n))?;
    }
    Ok(d)
}

pub fn run() -> Result<()> {
    let a = diagram(&[(0.0, 4.0, 2), (1.0, 1.5, 1)])?;
    let b = diagram(&[(0.25, 4.0, 1), (0.0, 3.5, 1)])?;
    let r = bottleneck_distance(&a, &b)?;
    println!("d_B = {}", r.distance);
    for ((from, to), value) in r.witness.iter() {
        println!("  {from} -> {to}: {value}");
    }
    assert_eq!(r.distance, 0.5);
    assert!(validate_matching(&a, &b, &r.witness)?.is_empty());
    assert_eq!(matching_norm(&r.witness), r.distance);
    assert_eq!(bottleneck_oracle(&a, &b)?, r.distance);

    let essential = diagram(&[(0.0, f64::INFINITY, 1)])?;
    let finite = diagram(&[(0.0, 100.0, 1)])?;
    println!("essential vs finite: {}", bottleneck_distance(&essential, &finite)?.distance);

    // over FinAb each prime is matched on its own
    let mut c = PersistenceDiagram::new(Backend::FinAb);
    c.add(Interval::new(0.0, 2.0)?, &GroupElement::prime(2, 1))?;
    c.add(Interval::new(0.0, 1.0)?, &GroupElement::prime(3, 1))?;
    let mut e = PersistenceDiagram::new(Backend::FinAb);
    e.add(Interval::new(0.0, 1.0)?, &GroupElement::prime(2, 1))?;
    e.add(Interval::new(0.0, 2.0)?, &GroupElement::prime(3, 1))?;
    let r = bottleneck_distance(&c, &e)?;
    println!("Z/2 and Z/3 bars swapped: d_B = {}", r.distance);
    assert_eq!(r.distance, 1.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
