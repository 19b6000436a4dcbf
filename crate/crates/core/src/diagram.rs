//! Intervals, group-valued persistence diagrams and Möbius inversion.
//!
//! An interval `[p, q)` is drawn as the point `(p, q)` above the diagonal.
//! The diagram of a module is the unique `Y` with
//! `dF(I) = sum over J ⊇ I of Y(J)`, which on the grid of critical values
//! reduces to an alternating sum of four rank values.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::grocat::{Backend, GeneratorKey, GroupElement};
use crate::pmodule::{ConstructibleModule, CriticalSet};

/// Half-open interval `[birth, death)`; `death` may be `+inf`.
#[derive(Debug, Clone, Copy)]
pub struct Interval {
    birth: f64,
    death: f64,
}

impl Interval {
    pub fn new(birth: f64, death: f64) -> Result<Self> {
        if !birth.is_finite() {
            return Err(Error::Domain(format!("birth {birth} must be finite")));
        }
        if death.is_nan() || death == f64::NEG_INFINITY || death < birth {
            return Err(Error::Domain(format!("[{birth}, {death}) is not an interval")));
        }
        Ok(Interval { birth, death })
    }

    /// The diagonal point `[x, x)`.
    pub fn diagonal(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    pub fn birth(&self) -> f64 {
        self.birth
    }

    pub fn death(&self) -> f64 {
        self.death
    }

    pub fn is_diagonal(&self) -> bool {
        self.birth == self.death
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &Interval) -> bool {
        self.birth <= other.birth && self.death >= other.death
    }

    /// Half the length; the cost of matching this interval to the diagonal.
    pub fn half_length(&self) -> f64 {
        if self.is_essential() {
            return f64::INFINITY;
        }
        let m = self.midpoint();
        (m - self.birth).max(self.death - m)
    }

    pub fn midpoint(&self) -> f64 {
        self.birth / 2.0 + self.death / 2.0
    }
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Interval {}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.birth
            .total_cmp(&other.birth)
            .then(self.death.total_cmp(&other.death))
    }
}

impl std::hash::Hash for Interval {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // -0.0 and 0.0 compare equal under `==` but not under total_cmp; normalise
        (self.birth + 0.0).to_bits().hash(state);
        (self.death + 0.0).to_bits().hash(state);
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_essential() {
            write!(f, "[{}, inf)", self.birth)
        } else {
            write!(f, "[{}, {})", self.birth, self.death)
        }
    }
}

/// A finitely supported map from off-diagonal intervals to a Grothendieck group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceDiagram {
    backend: Backend,
    points: BTreeMap<Interval, GroupElement>,
}

impl PersistenceDiagram {
    pub fn new(backend: Backend) -> Self {
        PersistenceDiagram {
            backend,
            points: BTreeMap::new(),
        }
    }

    /// Builds a diagram from `(interval, value)` pairs, summing repeats.
    pub fn from_points<I>(backend: Backend, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Interval, GroupElement)>,
    {
        let mut d = Self::new(backend);
        for (i, v) in points {
            d.add(i, &v)?;
        }
        Ok(d)
    }

    /// Adds `value` at `interval`. Diagonal intervals are rejected unless `value` is zero.
    pub fn add(&mut self, interval: Interval, value: &GroupElement) -> Result<()> {
        if value.backend() != self.backend {
            return Err(Error::BackendMismatch {
                left: self.backend,
                right: value.backend(),
            });
        }
        if value.is_zero() {
            return Ok(());
        }
        if interval.is_diagonal() {
            return Err(Error::Domain(format!(
                "diagram value on the diagonal interval {interval}"
            )));
        }
        let sum = match self.points.get(&interval) {
            Some(old) => old + value,
            None => value.clone(),
        };
        if sum.is_zero() {
            self.points.remove(&interval);
        } else {
            self.points.insert(interval, sum);
        }
        Ok(())
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn get(&self, interval: &Interval) -> GroupElement {
        self.points
            .get(interval)
            .cloned()
            .unwrap_or_else(|| GroupElement::zero(self.backend))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Interval, &GroupElement)> {
        self.points.iter()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `0 ⪯ Y(I)` for every stored interval.
    pub fn is_positive(&self) -> bool {
        self.points.values().all(GroupElement::is_nonnegative)
    }

    /// Restriction to one generator: intervals with their integer coefficient.
    pub fn component(&self, key: GeneratorKey) -> Vec<(Interval, i64)> {
        self.points
            .iter()
            .filter_map(|(i, v)| {
                let c = v.coeff(key);
                (c != 0).then_some((*i, c))
            })
            .collect()
    }

    /// Generators that appear in any value.
    pub fn generators(&self) -> Vec<GeneratorKey> {
        let mut keys: Vec<GeneratorKey> = self.points.values().flat_map(|v| v.support()).collect();
        keys.sort_unstable();
        keys.dedup();
        keys
    }
}

/// The persistence diagram of `module`.
pub fn mobius_inversion(module: &ConstructibleModule) -> PersistenceDiagram {
    let backend = module.backend();
    let k = module.criticals().len();
    let s = module.criticals().values();
    let images: Vec<Vec<GroupElement>> = (0..k).map(|i| module.image_classes_from(i)).collect();
    let zero = GroupElement::zero(backend);
    // rank of [s_i, s_j) for i < j <= k, where j == k stands for infinity;
    // i == None stands for a birth below s_1
    let rank = |i: Option<usize>, j: usize| -> &GroupElement {
        match i {
            None => &zero,
            Some(i) => &images[i][j - 1 - i],
        }
    };
    let mut out = PersistenceDiagram::new(backend);
    for i in 0..k {
        let below = i.checked_sub(1);
        for j in i + 1..k {
            let v = rank(Some(i), j) - rank(Some(i), j + 1) + (rank(below, j + 1) - rank(below, j));
            let interval = Interval::new(s[i], s[j]).expect("grid interval");
            out.add(interval, &v).expect("same backend");
        }
        let v = rank(Some(i), k) - rank(below, k);
        let interval = Interval::new(s[i], f64::INFINITY).expect("grid interval");
        out.add(interval, &v).expect("same backend");
    }
    out
}

/// `sum over stored J ⊇ interval of Y(J)`.
pub fn rank_from_diagram(diagram: &PersistenceDiagram, interval: &Interval) -> GroupElement {
    GroupElement::sum(
        diagram.backend(),
        diagram
            .iter()
            .filter(|(j, _)| j.contains(interval))
            .map(|(_, v)| v),
    )
    .expect("diagram values share its backend")
}

/// Whether the `eps`-box around `interval` is empty (it would touch the diagonal).
pub fn box_is_empty(interval: &Interval, eps: f64) -> bool {
    !interval.is_essential() && interval.death() - eps <= interval.birth() + eps
}

/// Membership in the `eps`-box around `interval`: open on the left and top,
/// closed on the right and bottom.
pub fn box_contains(interval: &Interval, eps: f64, candidate: &Interval) -> bool {
    if box_is_empty(interval, eps) {
        return false;
    }
    let (p, q) = (interval.birth(), interval.death());
    let r = candidate.birth();
    let s = candidate.death();
    if !(p - eps < r && r <= p + eps) {
        return false;
    }
    if interval.is_essential() {
        candidate.is_essential()
    } else {
        q - eps <= s && s < q + eps
    }
}

/// `sum over J in the eps-box around interval of Y(J)`.
pub fn box_sum(diagram: &PersistenceDiagram, interval: &Interval, eps: f64) -> GroupElement {
    GroupElement::sum(
        diagram.backend(),
        diagram
            .iter()
            .filter(|(j, _)| box_contains(interval, eps, j))
            .map(|(_, v)| v),
    )
    .expect("diagram values share its backend")
}

/// The box sum of the module's diagram expressed through four (or two) rank values.
pub fn corner_sum(module: &ConstructibleModule, interval: &Interval, eps: f64) -> Result<GroupElement> {
    if eps < 0.0 || eps.is_nan() {
        return Err(Error::Domain(format!("box radius {eps} must be nonnegative")));
    }
    if box_is_empty(interval, eps) {
        return Err(Error::Domain(format!("the {eps}-box around {interval} is empty")));
    }
    let (p, q) = (interval.birth(), interval.death());
    let d = |a: f64, b: f64| module.rank_function(&Interval::new(a, b)?);
    if interval.is_essential() {
        let inf = f64::INFINITY;
        return Ok(d(p + eps, inf)? - d(p - eps, inf)?);
    }
    Ok(d(p + eps, q - eps)? - d(p + eps, q + eps)? + d(p - eps, q + eps)? - d(p - eps, q - eps)?)
}

/// Half the smallest gap between consecutive critical values; `+inf` for one value.
pub fn injectivity_radius(criticals: &CriticalSet) -> f64 {
    criticals
        .values()
        .windows(2)
        .map(|w| (w[1] - w[0]) / 2.0)
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::{FinAbObject, Morphism, Object};

    const INF: f64 = f64::INFINITY;

    fn iv(p: f64, q: f64) -> Interval {
        Interval::new(p, q).unwrap()
    }

    fn gf2(rows: usize, cols: usize, m: &[Vec<i64>]) -> Morphism {
        Morphism::from_rows(&Object::field(2, cols), &Object::field(2, rows), m).unwrap()
    }

    fn m1() -> ConstructibleModule {
        ConstructibleModule::new(
            vec![1.0, 2.0, 3.0],
            vec![Object::field(2, 1), Object::field(2, 2), Object::field(2, 1)],
            vec![gf2(2, 1, &[vec![1], vec![0]]), gf2(1, 2, &[vec![0, 1]])],
        )
        .unwrap()
    }

    fn m2() -> ConstructibleModule {
        let z4 = Object::FinAb(FinAbObject::new(vec![(2, 2)]).unwrap());
        let z2 = Object::FinAb(FinAbObject::new(vec![(2, 1)]).unwrap());
        let q = Morphism::from_rows(&z4, &z2, &[vec![1]]).unwrap();
        ConstructibleModule::new(vec![1.0, 2.0], vec![z4, z2], vec![q]).unwrap()
    }

    fn dgm(points: &[((f64, f64), GroupElement)]) -> PersistenceDiagram {
        let backend = points.first().map_or(Backend::Vect, |p| p.1.backend());
        PersistenceDiagram::from_points(backend, points.iter().map(|((p, q), v)| (iv(*p, *q), v.clone())))
            .unwrap()
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(
            mobius_inversion(&m1()),
            dgm(&[((1.0, 3.0), GroupElement::dim(1)), ((2.0, INF), GroupElement::dim(1))])
        );
        let interval = ConstructibleModule::field_interval(2, 1.0, INF).unwrap();
        assert_eq!(mobius_inversion(&interval), dgm(&[((1.0, INF), GroupElement::dim(1))]));
        assert_eq!(
            mobius_inversion(&m2()),
            dgm(&[((1.0, 2.0), GroupElement::prime(2, 1)), ((1.0, INF), GroupElement::prime(2, 1))])
        );
    }

    #[test]
    fn rank_from_diagram_examples() {
        let y = mobius_inversion(&m1());
        assert_eq!(rank_from_diagram(&y, &iv(1.0, 3.0)), GroupElement::dim(1));
        assert_eq!(rank_from_diagram(&y, &iv(2.0, 4.0)), GroupElement::dim(1));
        assert!(rank_from_diagram(&PersistenceDiagram::new(Backend::Vect), &iv(0.0, 1.0)).is_zero());
    }

    #[test]
    fn box_sum_examples() {
        let y = dgm(&[((1.0, 3.0), GroupElement::dim(1))]);
        assert_eq!(box_sum(&y, &iv(1.0, 3.0), 0.5), GroupElement::dim(1));
        assert!(box_is_empty(&iv(1.0, 1.5), 0.3));
        assert!(box_sum(&y, &iv(1.0, 1.5), 0.3).is_zero());
        let y = dgm(&[((2.0, INF), GroupElement::dim(1))]);
        assert_eq!(box_sum(&y, &iv(1.8, INF), 0.25), GroupElement::dim(1));
    }

    #[test]
    fn box_edges_are_half_open() {
        let i = iv(1.0, 3.0);
        // left edge open, right edge closed
        assert!(!box_contains(&i, 0.5, &iv(0.5, 3.0)));
        assert!(box_contains(&i, 0.5, &iv(1.5, 3.0)));
        // bottom edge closed, top edge open
        assert!(box_contains(&i, 0.5, &iv(1.0, 2.5)));
        assert!(!box_contains(&i, 0.5, &iv(1.0, 3.5)));
        assert!(!box_contains(&i, 0.5, &iv(1.0, INF)));
    }

    #[test]
    fn corner_sum_examples() {
        let m = m1();
        assert_eq!(corner_sum(&m, &iv(2.0, INF), 0.5).unwrap(), GroupElement::dim(1));
        assert_eq!(corner_sum(&m, &iv(1.0, 3.0), 0.4).unwrap(), GroupElement::dim(1));
        let zero = ConstructibleModule::zero(&Object::field(2, 0), 0.0).unwrap();
        assert!(corner_sum(&zero, &iv(1.0, 3.0), 0.4).unwrap().is_zero());
        assert!(corner_sum(&m, &iv(1.0, 1.5), 0.3).is_err());
    }

    #[test]
    fn injectivity_radius_examples() {
        assert_eq!(injectivity_radius(&CriticalSet::new(vec![1.0, 2.0, 3.0]).unwrap()), 0.5);
        assert_eq!(injectivity_radius(&CriticalSet::new(vec![0.0, 10.0]).unwrap()), 5.0);
        assert_eq!(injectivity_radius(&CriticalSet::new(vec![4.0]).unwrap()), INF);
    }

    #[test]
    fn positivity_examples() {
        assert!(mobius_inversion(&m1()).is_positive());
        assert!(PersistenceDiagram::new(Backend::Vect).is_positive());
        assert!(!dgm(&[((0.0, 1.0), GroupElement::dim(-1))]).is_positive());
    }

    #[test]
    fn diagonal_values_rejected() {
        let mut y = PersistenceDiagram::new(Backend::Vect);
        assert!(y.add(iv(1.0, 1.0), &GroupElement::dim(1)).is_err());
        assert!(y.add(iv(1.0, 1.0), &GroupElement::dim(0)).is_ok());
        assert!(y.add(iv(0.0, 1.0), &GroupElement::prime(2, 1)).is_err());
    }
}
