//! ε-interleavings between constructible modules.
//!
//! An interleaving is stored as finitely many component maps
//! `φ_s: F(s) -> G(s + ε)` and `ψ_s: G(s) -> F(s + ε)`. The component at any
//! `t` is the stored one with the largest `at <= t`, or zero below all of
//! them. Because every module involved is constant between consecutive
//! points of a finite grid, checking the commutation conditions at grid
//! points and consecutive grid pairs checks them everywhere.

use std::fmt;

use crate::backends::{limit_pair, FieldMatrix, Morphism, Object, TrackedBasis};
use crate::error::{Error, Result};
use crate::grocat::Backend;
use crate::pipeline::{FilteredComplex, HomologyLevels};
use crate::pmodule::ConstructibleModule;

#[derive(Debug, Clone, PartialEq)]
pub struct InterleavingData {
    epsilon: f64,
    phi: Vec<(f64, Morphism)>,
    psi: Vec<(f64, Morphism)>,
}

fn check_points(name: &str, entries: &[(f64, Morphism)]) -> Result<()> {
    for (i, (at, _)) in entries.iter().enumerate() {
        if !at.is_finite() {
            return Err(Error::Precondition(format!("{name}[{i}].at = {at} is not finite")));
        }
    }
    if let Some(i) = entries.windows(2).position(|w| w[0].0 >= w[1].0) {
        return Err(Error::Precondition(format!(
            "{name}[{}].at is not below {name}[{}].at",
            i,
            i + 1
        )));
    }
    Ok(())
}

impl InterleavingData {
    /// `phi` and `psi` are `(at, map)` lists with strictly increasing `at`.
    pub fn new(epsilon: f64, phi: Vec<(f64, Morphism)>, psi: Vec<(f64, Morphism)>) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(Error::Precondition(format!("epsilon {epsilon} must be finite and nonnegative")));
        }
        check_points("phi", &phi)?;
        check_points("psi", &psi)?;
        Ok(InterleavingData { epsilon, phi, psi })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn phi(&self) -> &[(f64, Morphism)] {
        &self.phi
    }

    pub fn psi(&self) -> &[(f64, Morphism)] {
        &self.psi
    }
}

fn lookup(entries: &[(f64, Morphism)], t: f64) -> Option<&Morphism> {
    let n = entries.partition_point(|(at, _)| *at <= t);
    n.checked_sub(1).map(|i| &entries[i].1)
}

/// The component at `t`, or the zero map `source -> target` below every entry.
/// `source -> target: rows`, so that empty matrices of different sizes read apart.
fn shown(m: &Morphism) -> String {
    format!("{} -> {}: {:?}", m.source(), m.target(), m.rows())
}

fn component(entries: &[(f64, Morphism)], t: f64, source: &Object, target: &Object) -> Result<Morphism> {
    match lookup(entries, t) {
        Some(m) => Ok(m.clone()),
        None => Morphism::zero(source, target),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// A component map has the wrong source or target.
    Shape,
    NaturalityPhi,
    NaturalityPsi,
    /// `ψ(t + ε) ∘ φ(t) != F(t <= t + 2ε)`.
    TriangleF,
    /// `φ(t + ε) ∘ ψ(t) != G(t <= t + 2ε)`.
    TriangleG,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterleavingViolation {
    pub kind: ViolationKind,
    pub at: f64,
    /// Second grid value of a naturality check.
    pub to: Option<f64>,
    pub detail: String,
}

impl fmt::Display for InterleavingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::Shape => "shape",
            ViolationKind::NaturalityPhi => "phi naturality",
            ViolationKind::NaturalityPsi => "psi naturality",
            ViolationKind::TriangleF => "triangle on F",
            ViolationKind::TriangleG => "triangle on G",
        };
        match self.to {
            Some(to) => write!(f, "{what} at {} <= {}: {}", self.at, to, self.detail),
            None => write!(f, "{what} at {}: {}", self.at, self.detail),
        }
    }
}

/// Points where some component or structure map used by the checks can change.
fn check_grid(f: &ConstructibleModule, g: &ConstructibleModule, data: &InterleavingData) -> Vec<f64> {
    let e = data.epsilon;
    let mut base: Vec<f64> = Vec::new();
    for s in f.criticals().values().iter().chain(g.criticals().values()) {
        base.extend([*s, s - e, s - 2.0 * e]);
    }
    for (at, _) in data.phi.iter().chain(&data.psi) {
        base.push(*at);
    }
    let mut grid: Vec<f64> = base.iter().flat_map(|x| [*x, x - e]).collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

struct Checker<'a> {
    f: &'a ConstructibleModule,
    g: &'a ConstructibleModule,
    data: &'a InterleavingData,
    out: Vec<InterleavingViolation>,
}

impl Checker<'_> {
    fn report(&mut self, kind: ViolationKind, at: f64, to: Option<f64>, detail: String) {
        let v = InterleavingViolation { kind, at, to, detail };
        // a bad shape is met by every check that touches it
        if kind != ViolationKind::Shape || !self.out.contains(&v) {
            self.out.push(v);
        }
    }

    /// φ_t (forward) or ψ_t (backward), if its shape is right.
    fn map(&mut self, forward: bool, t: f64) -> Option<Morphism> {
        let e = self.data.epsilon;
        let (from, to, entries) = if forward {
            (self.f, self.g, &self.data.phi)
        } else {
            (self.g, self.f, &self.data.psi)
        };
        let source = from.evaluate(t);
        let target = to.evaluate(t + e);
        let name = if forward { "phi" } else { "psi" };
        match component(entries, t, &source, &target) {
            Ok(m) if m.source() == source && m.target() == target => Some(m),
            Ok(m) => {
                self.report(
                    ViolationKind::Shape,
                    t,
                    None,
                    format!(
                        "{name} goes {} -> {}, expected {} -> {}",
                        m.source(),
                        m.target(),
                        source,
                        target
                    ),
                );
                None
            }
            Err(err) => {
                self.report(ViolationKind::Shape, t, None, format!("{name}: {err}"));
                None
            }
        }
    }

    fn equal(&mut self, kind: ViolationKind, at: f64, to: Option<f64>, lhs: Result<Morphism>, rhs: Result<Morphism>) {
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => self.report(kind, at, to, format!("{} != {}", shown(&a), shown(&b))),
            (Err(err), _) | (_, Err(err)) => self.report(kind, at, to, err.to_string()),
        }
    }

    fn triangles(&mut self, t: f64) {
        let e = self.data.epsilon;
        for forward in [true, false] {
            let (Some(first), Some(second)) = (self.map(forward, t), self.map(!forward, t + e)) else {
                continue;
            };
            let (module, kind) = if forward {
                (self.f, ViolationKind::TriangleF)
            } else {
                (self.g, ViolationKind::TriangleG)
            };
            let lhs = second.after(&first);
            let rhs = module.evaluate_map(t, t + 2.0 * e);
            self.equal(kind, t, None, lhs, rhs);
        }
    }

    fn naturality(&mut self, t: f64, u: f64) {
        let e = self.data.epsilon;
        for forward in [true, false] {
            let (Some(at_t), Some(at_u)) = (self.map(forward, t), self.map(forward, u)) else {
                continue;
            };
            let (from, to, kind) = if forward {
                (self.f, self.g, ViolationKind::NaturalityPhi)
            } else {
                (self.g, self.f, ViolationKind::NaturalityPsi)
            };
            let lhs = from.evaluate_map(t, u).and_then(|m| at_u.after(&m));
            let rhs = to.evaluate_map(t + e, u + e).and_then(|m| m.after(&at_t));
            self.equal(kind, t, Some(u), lhs, rhs);
        }
    }
}

/// All failed commutation conditions; empty iff `data` is an ε-interleaving.
pub fn verify_interleaving(
    f: &ConstructibleModule,
    g: &ConstructibleModule,
    data: &InterleavingData,
) -> Result<Vec<InterleavingViolation>> {
    if f.backend() != g.backend() {
        return Err(Error::BackendMismatch {
            left: f.backend(),
            right: g.backend(),
        });
    }
    let grid = check_grid(f, g, data);
    let mut checker = Checker {
        f,
        g,
        data,
        out: Vec::new(),
    };
    for &t in &grid {
        checker.triangles(t);
    }
    for w in grid.windows(2) {
        checker.naturality(w[0], w[1]);
    }
    Ok(checker.out)
}

/// Sublevel homology of two filtrations of one complex with the interleaving
/// induced by the identity on chains, `ε = max |f - g|`.
pub fn interleaving_from_functions(
    f: &FilteredComplex,
    g: &FilteredComplex,
    degree: usize,
    p: u64,
) -> Result<(ConstructibleModule, ConstructibleModule, InterleavingData)> {
    if !f.same_cells(g) {
        return Err(Error::Precondition("the two filtrations are on different complexes".into()));
    }
    let epsilon = f
        .simplices()
        .iter()
        .zip(g.simplices())
        .map(|(a, b)| (a.value - b.value).abs())
        .fold(0.0, f64::max);
    let hf = HomologyLevels::compute(f, degree, p)?;
    let hg = HomologyLevels::compute(g, degree, p)?;
    let mut grid: Vec<f64> = Vec::new();
    for s in hf.values().into_iter().chain(hg.values()) {
        grid.extend([s, s - epsilon]);
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let phi = induced_components(&hf, &hg, &grid, epsilon)?;
    let psi = induced_components(&hg, &hf, &grid, epsilon)?;
    let data = InterleavingData::new(epsilon, phi, psi)?;
    Ok((hf.module()?, hg.module()?, data))
}

/// `H(K_s) -> H(L_{s + ε})` for each grid value `s`, from inclusion of chains.
fn induced_components(
    from: &HomologyLevels,
    to: &HomologyLevels,
    grid: &[f64],
    epsilon: f64,
) -> Result<Vec<(f64, Morphism)>> {
    let p = from.characteristic();
    grid.iter()
        .map(|&s| {
            let target_level = to.level_at(s + epsilon);
            let target = target_level.map_or(Object::field(p, 0), |j| to.object(j));
            let map = match (from.level_at(s), target_level) {
                (None, _) => Morphism::zero(&Object::field(p, 0), &target)?,
                (Some(i), Some(j)) => {
                    let columns = from
                        .representatives(i)
                        .iter()
                        .map(|z| to.coordinates(j, z))
                        .collect::<Result<Vec<_>>>()?;
                    from.morphism(i, to.dim(j), &columns)?
                }
                (Some(_), None) => {
                    return Err(Error::Precondition(format!(
                        "second filtration is empty at {} although the first is not at {s}",
                        s + epsilon
                    )))
                }
            };
            Ok((s, map))
        })
        .collect()
}

fn matrix(m: &Morphism) -> &FieldMatrix {
    match m {
        Morphism::Field(f) => f.matrix(),
        Morphism::FinAb(_) => unreachable!("field backend checked"),
    }
}

/// One member `K_t` of the family joining `F` (at `t = 0`) to `G` (at `t = 1`).
///
/// At each parameter `c`, `K_t(c)` is the limit of `F(c + εt)` and
/// `G(c + ε(1 - t))` over their two minimal common upper bounds
/// `F(c + ε(2 - t))` and `G(c + ε(1 + t))`.
pub fn interpolate(
    f: &ConstructibleModule,
    g: &ConstructibleModule,
    data: &InterleavingData,
    t: f64,
) -> Result<ConstructibleModule> {
    for m in [f, g] {
        if m.backend() == Backend::FinAb {
            return Err(Error::Unsupported {
                backend: Backend::FinAb,
                what: "interpolation".into(),
            });
        }
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("interpolation parameter {t} is outside [0, 1]")));
    }
    if let Some(v) = verify_interleaving(f, g, data)?.into_iter().next() {
        return Err(Error::Precondition(format!("not an interleaving: {v}")));
    }
    let e = data.epsilon;
    let (ta, tb, tc, td) = (e * t, e * (1.0 - t), e * (2.0 - t), e * (1.0 + t));
    let mut criticals: Vec<f64> = Vec::new();
    for s in f.criticals().values() {
        criticals.extend([s - ta, s - tc]);
    }
    for s in g.criticals().values() {
        criticals.extend([s - tb, s - td]);
    }
    criticals.extend(data.phi.iter().map(|(at, _)| at - ta));
    criticals.extend(data.psi.iter().map(|(at, _)| at - tb));
    criticals.sort_by(f64::total_cmp);
    criticals.dedup();

    struct Cell {
        a: f64,
        b: f64,
        dim_a: usize,
        len: usize,
        basis: Vec<Vec<u64>>,
        object: Object,
    }
    let cells = criticals
        .iter()
        .map(|&c| {
            let (a, b) = (c + ta, c + tb);
            let f0 = f.evaluate_map(a, c + tc)?;
            let g0 = component(&data.psi, b, &g.evaluate(b), &f.evaluate(b + e))?;
            let f1 = component(&data.phi, a, &f.evaluate(a), &g.evaluate(a + e))?;
            let g1 = g.evaluate_map(b, c + td)?;
            let limit = limit_pair(&f0, &g0, &f1, &g1)?;
            let (pa, pb) = (matrix(&limit.proj_a), matrix(&limit.proj_b));
            let basis = (0..pa.cols())
                .map(|j| {
                    let mut v = pa.column(j);
                    v.extend(pb.column(j));
                    v
                })
                .collect();
            Ok(Cell {
                a,
                b,
                dim_a: pa.rows(),
                len: pa.rows() + pb.rows(),
                basis,
                object: limit.object,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut maps = Vec::with_capacity(cells.len().saturating_sub(1));
    for w in cells.windows(2) {
        let (from, to) = (&w[0], &w[1]);
        let fa = f.evaluate_map(from.a, to.a)?;
        let gb = g.evaluate_map(from.b, to.b)?;
        let Object::Field(target) = &to.object else {
            unreachable!("field backend checked")
        };
        let mut solver = TrackedBasis::new(target.p, to.len);
        for v in &to.basis {
            solver.insert(v);
        }
        let columns = from
            .basis
            .iter()
            .map(|v| {
                let mut image = matrix(&fa).apply(&v[..from.dim_a]);
                image.extend(matrix(&gb).apply(&v[from.dim_a..]));
                solver.solve(&image).ok_or_else(|| {
                    Error::Precondition("connecting map leaves the limit; data is not an interleaving".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let m = FieldMatrix::from_columns(target.p, target.dim, &columns);
        maps.push(Morphism::from_rows(&from.object, &to.object, &m.to_rows())?);
    }
    let objects = cells.into_iter().map(|c| c.object).collect();
    ConstructibleModule::new(criticals, objects, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{mobius_inversion, Interval, PersistenceDiagram};
    use crate::grocat::GroupElement;
    use crate::pipeline::Simplex;

    fn one() -> Object {
        Object::field(2, 1)
    }

    fn zero() -> Object {
        Object::field(2, 0)
    }

    fn id() -> Morphism {
        Morphism::identity(&one())
    }

    /// Identity where both sides are nonzero, zero elsewhere, on the grid of
    /// both modules shifted down by ε.
    fn interval_data(f: &ConstructibleModule, g: &ConstructibleModule, e: f64) -> InterleavingData {
        let mut grid: Vec<f64> = Vec::new();
        for s in f.criticals().values().iter().chain(g.criticals().values()) {
            grid.extend([*s, s - e]);
        }
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let side = |a: &ConstructibleModule, b: &ConstructibleModule| {
            grid.iter()
                .map(|s| {
                    let (x, y) = (a.evaluate(*s), b.evaluate(s + e));
                    let m = if x.is_zero() || y.is_zero() {
                        Morphism::zero(&x, &y).unwrap()
                    } else {
                        id()
                    };
                    (*s, m)
                })
                .collect()
        };
        InterleavingData::new(e, side(f, g), side(g, f)).unwrap()
    }

    #[test]
    fn identity_interleaving() {
        let f = ConstructibleModule::field_interval(2, 1.0, 3.0).unwrap();
        let data = InterleavingData::new(0.0, vec![(1.0, id()), (3.0, Morphism::identity(&zero()))], vec![
            (1.0, id()),
            (3.0, Morphism::identity(&zero())),
        ])
        .unwrap();
        assert!(verify_interleaving(&f, &f, &data).unwrap().is_empty());
    }

    #[test]
    fn shifted_intervals() {
        let f = ConstructibleModule::field_interval(2, 1.0, 3.0).unwrap();
        let g = ConstructibleModule::field_interval(2, 1.5, 3.0).unwrap();
        let good = interval_data(&f, &g, 0.5);
        assert!(verify_interleaving(&f, &g, &good).unwrap().is_empty());
        let bad = interval_data(&f, &g, 0.1);
        let v = verify_interleaving(&f, &g, &bad).unwrap();
        assert!(v.iter().any(|x| x.kind == ViolationKind::TriangleF && x.at == 1.0), "{v:?}");
    }

    #[test]
    fn wrong_shape_is_reported() {
        let f = ConstructibleModule::field_interval(2, 1.0, 3.0).unwrap();
        let two = Object::field(2, 2);
        let data = InterleavingData::new(0.0, vec![(1.0, Morphism::identity(&two))], vec![]).unwrap();
        let v = verify_interleaving(&f, &f, &data).unwrap();
        assert!(v.iter().any(|x| x.kind == ViolationKind::Shape));
    }

    fn triangle(shift: f64) -> FilteredComplex {
        let s = |id, v: &[i64], value: f64| Simplex {
            id,
            vertices: v.to_vec(),
            value: value + shift,
        };
        FilteredComplex::new(vec![
            s(0, &[0], 0.0),
            s(1, &[1], 0.0),
            s(2, &[2], 0.0),
            s(3, &[0, 1], 1.0),
            s(4, &[1, 2], 1.0),
            s(5, &[0, 2], 2.0),
        ])
        .unwrap()
    }

    #[test]
    fn equal_functions() {
        let k = triangle(0.0);
        for degree in [0, 1] {
            let (f, g, data) = interleaving_from_functions(&k, &k, degree, 2).unwrap();
            assert_eq!(data.epsilon(), 0.0);
            assert_eq!(f, g);
            assert!(verify_interleaving(&f, &g, &data).unwrap().is_empty());
        }
    }

    #[test]
    fn uniform_shift() {
        for degree in [0, 1] {
            let (f, g, data) = interleaving_from_functions(&triangle(0.0), &triangle(0.25), degree, 3).unwrap();
            assert_eq!(data.epsilon(), 0.25);
            assert!(verify_interleaving(&f, &g, &data).unwrap().is_empty());
        }
    }

    #[test]
    fn single_vertex() {
        let k = |value| {
            FilteredComplex::new(vec![Simplex {
                id: 0,
                vertices: vec![0],
                value,
            }])
            .unwrap()
        };
        let (f, g, data) = interleaving_from_functions(&k(0.0), &k(1.0), 0, 2).unwrap();
        assert_eq!(data.epsilon(), 1.0);
        let inf = f64::INFINITY;
        assert_eq!(f, ConstructibleModule::field_interval(2, 0.0, inf).unwrap());
        assert_eq!(g, ConstructibleModule::field_interval(2, 1.0, inf).unwrap());
        assert!(verify_interleaving(&f, &g, &data).unwrap().is_empty());
    }

    #[test]
    fn mismatched_complexes() {
        let k = triangle(0.0);
        let small = FilteredComplex::new(k.simplices()[..3].to_vec()).unwrap();
        assert!(interleaving_from_functions(&k, &small, 0, 2).is_err());
    }

    #[test]
    fn interpolating_two_intervals() {
        let f = ConstructibleModule::field_interval(2, 0.0, 2.0).unwrap();
        let g = ConstructibleModule::field_interval(2, 1.0, 3.0).unwrap();
        let data = interval_data(&f, &g, 1.0);
        assert!(verify_interleaving(&f, &g, &data).unwrap().is_empty());
        let k = interpolate(&f, &g, &data, 0.5).unwrap();
        let expected = PersistenceDiagram::from_points(
            Backend::Vect,
            [(Interval::new(0.5, 2.5).unwrap(), GroupElement::dim(1))],
        )
        .unwrap();
        assert_eq!(mobius_inversion(&k), expected);
        assert_eq!(mobius_inversion(&interpolate(&f, &g, &data, 0.0).unwrap()), mobius_inversion(&f));
        assert_eq!(mobius_inversion(&interpolate(&f, &g, &data, 1.0).unwrap()), mobius_inversion(&g));
    }

    #[test]
    fn interpolation_errors() {
        let f = ConstructibleModule::field_interval(2, 1.0, 3.0).unwrap();
        let g = ConstructibleModule::field_interval(2, 1.5, 3.0).unwrap();
        let good = interval_data(&f, &g, 0.5);
        assert!(matches!(interpolate(&f, &g, &good, 1.5), Err(Error::Domain(_))));
        let bad = interval_data(&f, &g, 0.1);
        assert!(matches!(interpolate(&f, &g, &bad, 0.5), Err(Error::Precondition(_))));
    }
}
