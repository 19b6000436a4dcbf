//! Checking hand-written ε-interleavings between two interval modules.

use grodiag::backends::{Morphism, Object};
use grodiag::error::Result;
use grodiag::interleave::{verify_interleaving, InterleavingData};
use grodiag::pmodule::ConstructibleModule;

pub fn run() -> Result<()> {
    // [1, 3) and [1.5, 3) are 0.5-interleaved but not 0.25-interleaved
    let f = ConstructibleModule::field_interval(2, 1.0, 3.0)?;
    let g = ConstructibleModule::field_interval(2, 1.5, 3.0)?;
    let one = Object::field(2, 1);
    let zero = Object::field(2, 0);
    let id = Morphism::identity(&one);
    let kill = Morphism::zero(&one, &zero)?;
    let idle = Morphism::identity(&zero);

    let data = InterleavingData::new(
        0.5,
        vec![(1.0, id.clone()), (2.5, kill.clone()), (3.0, idle.clone())],
        vec![(1.5, id.clone()), (2.5, kill.clone()), (3.0, idle.clone())],
    )?;
    let violations = verify_interleaving(&f, &g, &data)?;
    println!("0.5: {} violations", violations.len());
    assert!(violations.is_empty());

    let short = InterleavingData::new(
        0.25,
        vec![(1.0, Morphism::zero(&one, &zero)?), (1.25, id.clone()), (2.75, kill.clone()), (3.0, idle.clone())],
        vec![(1.5, id), (2.75, kill), (3.0, idle)],
    )?;
    let violations = verify_interleaving(&f, &g, &short)?;
    println!("0.25: {} violations", violations.len());
    for v in &violations {
        println!("  {v}");
    }
    assert!(!violations.is_empty());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
