//! Two filtrations of one random complex: the bottleneck distance of their
//! diagrams never exceeds the sup distance of the filtrations.

use grodiag::bottleneck::bottleneck_distance;
use grodiag::diagram::mobius_inversion;
use grodiag::error::Result;
use grodiag::interleave::{interleaving_from_functions, verify_interleaving};
use grodiag::random::{perturb, random_complex, rng, ComplexShape};

pub fn run() -> Result<()> {
    let mut r = rng(5);
    let shape = ComplexShape {
        max_simplices: 60,
        ..ComplexShape::default()
    };
    for _ in 0..5 {
        let kf = random_complex(&mut r, shape);
        let kg = perturb(&mut r, &kf, 0.5);
        for degree in 0..=1 {
            let (f, g, data) = interleaving_from_functions(&kf, &kg, degree, 3)?;
            assert!(verify_interleaving(&f, &g, &data)?.is_empty());
            let d = bottleneck_distance(&mobius_inversion(&f), &mobius_inversion(&g))?.distance;
            println!("{} simplices, degree {degree}: d_B = {d} <= {}", kf.len(), data.epsilon());
            assert!(d <= data.epsilon());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
