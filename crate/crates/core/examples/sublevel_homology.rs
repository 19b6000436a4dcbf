//! Sublevel-set homology of a filtered complex as a constructible module,
//! and its diagram next to the one from the standard column reduction.

use grodiag::diagram::mobius_inversion;
use grodiag::error::Result;
use grodiag::pipeline::{classical_diagram, homology_module, FilteredComplex, Simplex};

pub fn run() -> Result<()> {
    // a filled triangle whose 2-cell arrives late, plus a pendant edge
    let s = |id, vertices: &[i64], value| Simplex {
        id,
        vertices: vertices.to_vec(),
        value,
    };
    let k = FilteredComplex::new(vec![
        s(0, &[0], 0.0),
        s(1, &[1], 0.0),
        s(2, &[2], 0.5),
        s(3, &[3], 1.0),
        s(4, &[0, 1], 1.0),
        s(5, &[1, 2], 1.0),
        s(6, &[0, 2], 1.5),
        s(7, &[2, 3], 2.0),
        s(8, &[0, 1, 2], 3.0),
    ])?;
    for p in [2, 3] {
        for degree in 0..=2 {
            let module = homology_module(&k, degree, p)?;
            let d = mobius_inversion(&module);
            let bars: Vec<String> = d.iter().map(|(i, v)| format!("{i}: {v}")).collect();
            println!("H_{degree} over GF({p}): {{{}}}", bars.join(", "));
            assert_eq!(d, classical_diagram(&k, degree, p)?);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
