//! Modules interpolating between two interleaved modules, with the
//! bottleneck distance to each end bounded by the fraction of ε travelled.

use grodiag::bottleneck::bottleneck_distance;
use grodiag::diagram::mobius_inversion;
use grodiag::error::Result;
use grodiag::interleave::{interleaving_from_functions, interpolate};
use grodiag::samples::triangle_boundary;

pub fn run() -> Result<()> {
    let kf = triangle_boundary(0.0);
    let kg = triangle_boundary(0.5);
    let (f, g, data) = interleaving_from_functions(&kf, &kg, 0, 2)?;
    let e = data.epsilon();
    let (df, dg) = (mobius_inversion(&f), mobius_inversion(&g));
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let k = interpolate(&f, &g, &data, t)?;
        let dk = mobius_inversion(&k);
        let to_f = bottleneck_distance(&df, &dk)?.distance;
        let to_g = bottleneck_distance(&dk, &dg)?.distance;
        let bars: Vec<String> = dk.iter().map(|(i, v)| format!("{i}: {v}")).collect();
        println!("t = {t}: {{{}}}, d(F, K) = {to_f}, d(K, G) = {to_g}", bars.join(", "));
        assert!(to_f <= t * e && to_g <= (1.0 - t) * e);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
