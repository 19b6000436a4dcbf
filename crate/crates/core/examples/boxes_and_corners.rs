//! ε-boxes around an interval: the diagram mass inside equals the
//! alternating sum of ranks at the corners.

use grodiag::diagram::{box_is_empty, box_sum, corner_sum, injectivity_radius, mobius_inversion, Interval};
use grodiag::error::Result;
use grodiag::samples::m1;

pub fn run() -> Result<()> {
    let m = m1();
    let d = mobius_inversion(&m);
    let rho = injectivity_radius(m.criticals());
    println!("injectivity radius of {:?}: {rho}", m.criticals().values());

    for (p, q, eps) in [(1.0, 3.0, 0.25), (2.0, f64::INFINITY, 0.5), (1.5, 2.5, 0.25), (1.0, 3.0, 1.0)] {
        let interval = Interval::new(p, q)?;
        if box_is_empty(&interval, eps) {
            println!("box of radius {eps} around {interval} is empty");
            continue;
        }
        let inside = box_sum(&d, &interval, eps);
        let corners = corner_sum(&m, &interval, eps)?;
        println!("radius {eps} around {interval}: box sum {inside}, corner sum {corners}");
        assert_eq!(inside, corners);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
