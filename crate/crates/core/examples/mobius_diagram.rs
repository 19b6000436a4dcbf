//! Persistence diagrams by Möbius inversion of the rank function, over a
//! field and over finite abelian groups.

use grodiag::diagram::{mobius_inversion, rank_from_diagram, Interval};
use grodiag::error::Result;
use grodiag::samples::{m1, m1_diagram, m2, m2_diagram};

pub fn run() -> Result<()> {
    for (name, module, expected) in [("M1", m1(), m1_diagram()), ("M2", m2(), m2_diagram())] {
        let d = mobius_inversion(&module);
        println!("{name}:");
        for (interval, value) in d.iter() {
            println!("  {interval}: {value}");
        }
        assert_eq!(d, expected);
        assert!(d.is_positive());
        // summing the diagram over intervals containing [p, q) gives the rank back
        let s = module.criticals().values().to_vec();
        for (i, p) in s.iter().enumerate() {
            for q in s[i + 1..].iter().copied().chain([f64::INFINITY]) {
                let interval = Interval::new(*p, q)?;
                assert_eq!(rank_from_diagram(&d, &interval), module.rank_function(&interval)?);
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
