//! Seeded property suites, shared by `grodiag selftest` and the acceptance tests.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::backends::FinAbObject;
use crate::bottleneck::{bottleneck_distance, bottleneck_oracle, matching_norm, validate_matching};
use crate::diagram::{box_is_empty, box_sum, corner_sum, injectivity_radius, mobius_inversion, Interval};
use crate::error::Result;
use crate::grocat::{Backend, GroupElement};
use crate::interleave::{interleaving_from_functions, interpolate, verify_interleaving};
use crate::pipeline::{classical_diagram, homology_module, FilteredComplex, HomologyLevels};
use crate::random::{self, ComplexShape, PRIMES};
use crate::samples;

/// Outcome of one suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failed: usize,
    /// The first few failure descriptions.
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

const KEPT_FAILURES: usize = 5;

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {}/{} cases ok in {:.2}s",
            self.name,
            self.cases - self.failed,
            self.cases,
            self.elapsed.as_secs_f64()
        )?;
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

struct Run {
    report: SuiteReport,
    start: Instant,
}

impl Run {
    fn new(name: &'static str) -> Self {
        Run {
            report: SuiteReport {
                name,
                cases: 0,
                failed: 0,
                failures: Vec::new(),
                elapsed: Duration::ZERO,
            },
            start: Instant::now(),
        }
    }

    /// Records one case; an `Err` counts as a failure too.
    fn case(&mut self, outcome: Result<Option<String>>) {
        self.report.cases += 1;
        let msg = match outcome {
            Ok(None) => return,
            Ok(Some(msg)) => msg,
            Err(e) => format!("error: {e}"),
        };
        self.report.failed += 1;
        if self.report.failures.len() < KEPT_FAILURES {
            self.report.failures.push(msg);
        }
    }

    fn finish(mut self) -> SuiteReport {
        self.report.elapsed = self.start.elapsed();
        self.report
    }
}

fn suite_rng(seed: u64, salt: u64) -> rand_chacha::ChaCha8Rng {
    random::rng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt)
}

/// Möbius inversion of sublevel homology equals the classical diagram, for
/// degrees 0, 1 and 2 of every complex.
pub fn mobius_matches_classical(seed: u64, complexes: usize) -> SuiteReport {
    let mut run = Run::new("mobius inversion = classical reduction");
    let mut rng = suite_rng(seed, 1);
    for n in 0..complexes {
        let k = random::random_complex(&mut rng, ComplexShape::default());
        let p = *PRIMES.choose(&mut rng).expect("nonempty");
        for degree in 0..=2 {
            run.case((|| {
                let ours = mobius_inversion(&homology_module(&k, degree, p)?);
                let theirs = classical_diagram(&k, degree, p)?;
                Ok((ours != theirs).then(|| {
                    format!("complex {n} (p = {p}, degree {degree}): {ours:?} != {theirs:?}")
                }))
            })());
        }
    }
    run.finish()
}

fn backend_name(b: Backend) -> &'static str {
    match b {
        Backend::Vect => "vect",
        Backend::FinAb => "finab",
    }
}

/// `0 ⪯ Y(I)` for every point of the diagram of a random module.
pub fn positivity(seed: u64, modules_per_backend: usize) -> SuiteReport {
    let mut run = Run::new("positivity");
    let mut rng = suite_rng(seed, 2);
    for backend in [Backend::Vect, Backend::FinAb] {
        for n in 0..modules_per_backend {
            let m = random::random_module(&mut rng, backend, 6);
            let d = mobius_inversion(&m);
            let bad: Vec<String> = d
                .iter()
                .filter(|(_, v)| !v.is_nonnegative())
                .map(|(i, v)| format!("{i}: {v}"))
                .collect();
            run.case(Ok((!bad.is_empty()).then(|| {
                format!("{} module {n}: negative values {}", backend_name(backend), bad.join(", "))
            })));
        }
    }
    run.finish()
}

/// `dF(outer) ⪯ dF(inner)` for nested off-diagonal intervals.
pub fn order_reversing(seed: u64, cases: usize) -> SuiteReport {
    let mut run = Run::new("rank function reverses order");
    let mut rng = suite_rng(seed, 3);
    for n in 0..cases {
        let backend = if n % 2 == 0 { Backend::Vect } else { Backend::FinAb };
        let m = random::random_module(&mut rng, backend, 6);
        let points = random::probe_points(&m);
        let (outer, inner) = random::random_nested_intervals(&mut rng, &points);
        run.case((|| {
            let a = m.rank_function(&outer)?;
            let b = m.rank_function(&inner)?;
            Ok((!a.partial_leq(&b)?).then(|| format!("case {n}: dF({outer}) = {a} but dF({inner}) = {b}")))
        })());
    }
    run.finish()
}

/// Random interval and radius with a nonempty box.
fn random_box<R: Rng>(rng: &mut R, points: &[f64]) -> (Interval, f64) {
    loop {
        let i = random::random_interval(rng, points);
        let eps = random::eighth(rng, 0, 9);
        if !box_is_empty(&i, eps) {
            return (i, eps);
        }
    }
}

/// Box sums of the diagram equal the alternating corner sums of the rank function.
pub fn corner_sums(seed: u64, cases: usize) -> SuiteReport {
    let mut run = Run::new("corner-sum identity");
    let mut rng = suite_rng(seed, 4);
    for n in 0..cases {
        let backend = if n % 2 == 0 { Backend::Vect } else { Backend::FinAb };
        let m = random::random_module(&mut rng, backend, 6);
        let d = mobius_inversion(&m);
        let (i, eps) = random_box(&mut rng, &random::probe_points(&m));
        run.case((|| {
            let lhs = box_sum(&d, &i, eps);
            let rhs = corner_sum(&m, &i, eps)?;
            Ok((lhs != rhs).then(|| format!("case {n}: box {i} radius {eps}: {lhs} != {rhs}")))
        })());
    }
    run.finish()
}

fn small_shape() -> ComplexShape {
    ComplexShape {
        max_simplices: 60,
        max_values: 10,
        max_dim: 2,
        max_vertices: 8,
    }
}

/// For interleaved `F`, `G`: box sum of `F` at radius `μ` is below the box
/// sum of `G` at radius `μ + ε` whenever that box is nonempty.
pub fn interleaved_box_mass(seed: u64, cases: usize) -> SuiteReport {
    let mut run = Run::new("box mass under interleaving");
    let mut rng = suite_rng(seed, 5);
    for n in 0..cases {
        let k = random::random_complex(&mut rng, small_shape());
        let g = random::perturb(&mut rng, &k, 0.5);
        let p = *PRIMES.choose(&mut rng).expect("nonempty");
        let degree = rng.gen_range(0..=1);
        let (fm, gm, data) = match interleaving_from_functions(&k, &g, degree, p) {
            Ok(x) => x,
            Err(e) => {
                run.case(Err(e));
                continue;
            }
        };
        let eps = data.epsilon();
        let mut points = random::probe_points(&fm);
        points.extend(random::probe_points(&gm));
        let (i, mu) = loop {
            let i = random::random_interval(&mut rng, &points);
            let mu = random::eighth(&mut rng, 0, 9);
            if !box_is_empty(&i, mu + eps) {
                break (i, mu);
            }
        };
        run.case((|| {
            let violations = verify_interleaving(&fm, &gm, &data)?;
            if let Some(v) = violations.first() {
                return Ok(Some(format!("case {n}: induced data is not an interleaving: {v}")));
            }
            let lhs = box_sum(&mobius_inversion(&fm), &i, mu);
            let rhs = box_sum(&mobius_inversion(&gm), &i, mu + eps);
            Ok((!lhs.partial_leq(&rhs)?).then(|| {
                format!("case {n}: box {i}: {lhs} at radius {mu} exceeds {rhs} at radius {}", mu + eps)
            }))
        })());
    }
    run.finish()
}

/// The flow solver agrees with exhaustive search, and its witness is a valid
/// matching whose norm is the distance.
pub fn bottleneck_vs_oracle(seed: u64, pairs_per_backend: usize) -> SuiteReport {
    let mut run = Run::new("bottleneck solver = exhaustive oracle");
    let mut rng = suite_rng(seed, 6);
    for backend in [Backend::Vect, Backend::FinAb] {
        for n in 0..pairs_per_backend {
            let y1 = random::random_diagram(&mut rng, backend, 5, 6);
            let y2 = random::random_diagram(&mut rng, backend, 5, 6);
            run.case((|| {
                let r = bottleneck_distance(&y1, &y2)?;
                let oracle = bottleneck_oracle(&y1, &y2)?;
                if r.distance != oracle {
                    return Ok(Some(format!(
                        "{} pair {n}: solver {} vs oracle {oracle}",
                        backend_name(backend),
                        r.distance
                    )));
                }
                let violations = validate_matching(&y1, &y2, &r.witness)?;
                if let Some(v) = violations.first() {
                    return Ok(Some(format!("{} pair {n}: witness violates {v}", backend_name(backend))));
                }
                let norm = matching_norm(&r.witness);
                Ok((norm != r.distance).then(|| {
                    format!("{} pair {n}: witness norm {norm} != distance {}", backend_name(backend), r.distance)
                }))
            })());
        }
    }
    run.finish()
}

fn max_difference(f: &FilteredComplex, g: &FilteredComplex) -> f64 {
    f.simplices()
        .iter()
        .zip(g.simplices())
        .map(|(a, b)| (a.value - b.value).abs())
        .fold(0.0, f64::max)
}

/// `d_B(F̃, G̃) <= max |f - g|` for sublevel homology of two filtrations,
/// plus the two worked diagrams.
pub fn stability(seed: u64, cases: usize) -> SuiteReport {
    let mut run = Run::new("stability");
    let mut rng = suite_rng(seed, 7);
    for n in 0..cases {
        let k = random::random_complex(&mut rng, ComplexShape::default());
        let shift = random::eighth(&mut rng, 0, 9);
        let g = random::perturb(&mut rng, &k, shift);
        let p = *PRIMES.choose(&mut rng).expect("nonempty");
        let degree = rng.gen_range(0..=2);
        run.case((|| {
            let eps = max_difference(&k, &g);
            let a = mobius_inversion(&homology_module(&k, degree, p)?);
            let b = mobius_inversion(&homology_module(&g, degree, p)?);
            let d = bottleneck_distance(&a, &b)?.distance;
            Ok((d > eps).then(|| format!("case {n}: d_B = {d} > max|f - g| = {eps}")))
        })());
    }
    run.case(Ok((mobius_inversion(&samples::m1()) != samples::m1_diagram())
        .then(|| "worked example M1 has the wrong diagram".to_string())));
    run.case(Ok((mobius_inversion(&samples::m2()) != samples::m2_diagram())
        .then(|| "worked example M2 has the wrong diagram".to_string())));
    run.finish()
}

/// Perturbations smaller than half the injectivity radius: the optimal
/// matching has norm at most `max |f - g|`.
pub fn small_perturbations(seed: u64, cases: usize) -> SuiteReport {
    let mut run = Run::new("small perturbations");
    let mut rng = suite_rng(seed, 8);
    for n in 0..cases {
        let k = random::random_complex(&mut rng, small_shape());
        // spread values to multiples of 1/2 so the radius is at least 1/4
        let k = k.with_values(&k.values().iter().map(|v| v * 4.0).collect::<Vec<_>>()).expect("monotone");
        let g = random::perturb(&mut rng, &k, 1.0 / 16.0);
        let p = *PRIMES.choose(&mut rng).expect("nonempty");
        run.case((|| {
            let eps = max_difference(&k, &g);
            let fm = homology_module(&k, 0, p)?;
            let rho = injectivity_radius(fm.criticals());
            if eps >= rho / 2.0 {
                return Ok(Some(format!("case {n}: generator left the regime (eps {eps}, radius {rho})")));
            }
            let a = mobius_inversion(&fm);
            let b = mobius_inversion(&homology_module(&g, 0, p)?);
            let r = bottleneck_distance(&a, &b)?;
            let ok = validate_matching(&a, &b, &r.witness)?.is_empty() && matching_norm(&r.witness) <= eps;
            Ok((!ok).then(|| format!("case {n}: no matching of norm <= {eps} (found {})", r.distance)))
        })());
    }
    run.finish()
}

/// Structure maps of computed homology modules agree with the maps computed
/// directly from inclusions of sublevel sets.
pub fn functoriality(seed: u64, cases: usize) -> SuiteReport {
    let mut run = Run::new("homology functoriality");
    let mut rng = suite_rng(seed, 9);
    for n in 0..cases {
        let k = random::random_complex(&mut rng, small_shape());
        let p = *PRIMES.choose(&mut rng).expect("nonempty");
        let degree = rng.gen_range(0..=1);
        run.case((|| {
            let h = HomologyLevels::compute(&k, degree, p)?;
            let m = h.module()?;
            let i = rng.gen_range(0..h.len());
            let j = rng.gen_range(i..h.len());
            let values = h.values();
            let composed = m.evaluate_map(values[i], values[j])?;
            let direct = h.induced_map(i, j)?;
            Ok((composed != direct).then(|| format!("case {n}: levels {i} -> {j} differ")))
        })());
    }
    run.finish()
}

pub const INTERPOLATION_SLACK: f64 = 1e-9;

/// Interpolating modules between interleaved pairs: endpoint diagrams, and
/// `d_B(K_t, K_s) <= ε |t - s|` on the quarter grid.
pub fn interpolation(seed: u64, pairs: usize) -> SuiteReport {
    let mut run = Run::new("interpolation");
    let mut rng = suite_rng(seed, 10);
    let ts = [0.0, 0.25, 0.5, 0.75, 1.0];
    let shape = ComplexShape {
        max_simplices: 30,
        max_values: 8,
        max_dim: 2,
        max_vertices: 6,
    };
    for n in 0..pairs {
        let k = random::random_complex(&mut rng, shape);
        let g = random::perturb(&mut rng, &k, 0.5);
        let p = *PRIMES.choose(&mut rng).expect("nonempty");
        let degree = rng.gen_range(0..=1);
        run.case((|| {
            let (fm, gm, data) = interleaving_from_functions(&k, &g, degree, p)?;
            let eps = data.epsilon();
            let mut diagrams = Vec::new();
            for t in ts {
                let kt = interpolate(&fm, &gm, &data, t)?;
                // rebuilt through the validating constructor
                let kt = crate::pmodule::ConstructibleModule::new(
                    kt.criticals().values().to_vec(),
                    kt.objects().to_vec(),
                    kt.maps().to_vec(),
                )?;
                diagrams.push(mobius_inversion(&kt));
            }
            if diagrams[0] != mobius_inversion(&fm) {
                return Ok(Some(format!("pair {n}: K_0 differs from F")));
            }
            if diagrams[4] != mobius_inversion(&gm) {
                return Ok(Some(format!("pair {n}: K_1 differs from G")));
            }
            for a in 0..ts.len() {
                for b in a + 1..ts.len() {
                    let d = bottleneck_distance(&diagrams[a], &diagrams[b])?.distance;
                    let bound = eps * (ts[b] - ts[a]) + INTERPOLATION_SLACK;
                    if d > bound {
                        return Ok(Some(format!(
                            "pair {n}: d_B(K_{}, K_{}) = {d} > {bound}",
                            ts[a], ts[b]
                        )));
                    }
                }
            }
            Ok(None)
        })());
    }
    run.finish()
}

/// The `Z/4 -> Z/2` diagram and `[Z/p^n] = n e_p`.
pub fn finab_golden() -> SuiteReport {
    let mut run = Run::new("finite abelian golden case");
    run.case(Ok((mobius_inversion(&samples::m2()) != samples::m2_diagram())
        .then(|| format!("M2 diagram is {:?}", mobius_inversion(&samples::m2())))));
    for p in PRIMES {
        for n in 1..=5u32 {
            run.case((|| {
                let class = FinAbObject::new(vec![(p, n)])?.classify();
                let expected = GroupElement::prime(p, i64::from(n));
                Ok((class != expected).then(|| format!("[Z/{p}^{n}] = {class}, expected {expected}")))
            })());
        }
    }
    run.finish()
}

/// Case counts for every suite; `full()` is the acceptance scale.
#[derive(Debug, Clone, Copy)]
pub struct Scale {
    pub complexes: usize,
    pub modules: usize,
    pub box_pairs: usize,
    pub diagram_pairs: usize,
    pub stability: usize,
    pub interpolation: usize,
}

impl Scale {
    pub fn full() -> Self {
        Scale {
            complexes: 200,
            modules: 1000,
            box_pairs: 200,
            diagram_pairs: 500,
            stability: 200,
            interpolation: 50,
        }
    }

    pub fn quick() -> Self {
        Scale {
            complexes: 20,
            modules: 100,
            box_pairs: 20,
            diagram_pairs: 50,
            stability: 20,
            interpolation: 5,
        }
    }
}

/// Every suite, in a fixed order.
pub fn run_all(seed: u64, scale: Scale) -> Vec<SuiteReport> {
    vec![
        mobius_matches_classical(seed, scale.complexes),
        positivity(seed, scale.modules),
        order_reversing(seed, scale.modules),
        corner_sums(seed, scale.modules),
        interleaved_box_mass(seed, scale.box_pairs),
        bottleneck_vs_oracle(seed, scale.diagram_pairs),
        stability(seed, scale.stability),
        small_perturbations(seed, scale.box_pairs),
        functoriality(seed, scale.box_pairs),
        interpolation(seed, scale.interpolation),
        finab_golden(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_scale_passes() {
        for report in run_all(1, Scale::quick()) {
            assert!(report.passed(), "{report}");
        }
    }
}
