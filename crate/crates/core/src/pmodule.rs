//! Constructible persistence modules.
//!
//! A module is stored by its critical values `s_1 < ... < s_k`, the object at
//! each critical value, and the structure map between consecutive ones. It is
//! zero below `s_1`, constant on each cell `[s_i, s_{i+1})`, and constant from
//! `s_k` up to and including infinity.

use crate::backends::{Morphism, Object};
use crate::diagram::Interval;
use crate::error::{Error, Result};
use crate::grocat::{Backend, GroupElement};

/// Strictly increasing, nonempty list of finite critical values.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSet(Vec<f64>);

impl CriticalSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidModule("critical set is empty".into()));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidModule(format!("criticals[{i}] = {v} is not finite")));
            }
        }
        if let Some(i) = values.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidModule(format!(
                "criticals[{}] = {} is not below criticals[{}] = {}",
                i,
                values[i],
                i + 1,
                values[i + 1]
            )));
        }
        Ok(CriticalSet(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index `i` with `s_i <= x < s_{i+1}`, or `None` below `s_1`.
    pub fn level(&self, x: f64) -> Option<usize> {
        let n = self.0.partition_point(|s| *s <= x);
        n.checked_sub(1)
    }

    /// Index of the smallest critical value `>= x`.
    fn ceiling(&self, x: f64) -> Option<usize> {
        let n = self.0.partition_point(|s| *s < x);
        (n < self.0.len()).then_some(n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructibleModule {
    criticals: CriticalSet,
    objects: Vec<Object>,
    maps: Vec<Morphism>,
}

impl ConstructibleModule {
    /// Validates that `maps[i]` goes from `objects[i]` to `objects[i + 1]`
    /// and that every object lives in one category.
    pub fn new(criticals: Vec<f64>, objects: Vec<Object>, maps: Vec<Morphism>) -> Result<Self> {
        let criticals = CriticalSet::new(criticals)?;
        let k = criticals.len();
        if objects.len() != k {
            return Err(Error::InvalidModule(format!(
                "{} objects for {k} critical values",
                objects.len()
            )));
        }
        if maps.len() != k - 1 {
            return Err(Error::InvalidModule(format!(
                "{} maps for {k} critical values (expected {})",
                maps.len(),
                k - 1
            )));
        }
        for (i, o) in objects.iter().enumerate() {
            if !o.same_category(&objects[0]) {
                return Err(Error::InvalidModule(format!(
                    "objects[{i}] is in a different category from objects[0]"
                )));
            }
        }
        for (i, m) in maps.iter().enumerate() {
            if m.source() != objects[i] {
                return Err(Error::InvalidModule(format!(
                    "maps[{i}] source {:?} does not match objects[{i}] {:?}",
                    m.source(),
                    objects[i]
                )));
            }
            if m.target() != objects[i + 1] {
                return Err(Error::InvalidModule(format!(
                    "maps[{i}] target {:?} does not match objects[{}] {:?}",
                    m.target(),
                    i + 1,
                    objects[i + 1]
                )));
            }
        }
        Ok(ConstructibleModule {
            criticals,
            objects,
            maps,
        })
    }

    /// The zero module over the category of `like`, with a single critical value.
    pub fn zero(like: &Object, at: f64) -> Result<Self> {
        Self::new(vec![at], vec![like.zero_like()], vec![])
    }

    /// The interval module `GF(p)` on `[birth, death)`; `death` may be infinite.
    pub fn field_interval(p: u64, birth: f64, death: f64) -> Result<Self> {
        let one = Object::field(p, 1);
        if death == f64::INFINITY {
            return Self::new(vec![birth], vec![one], vec![]);
        }
        let zero = one.zero_like();
        let map = Morphism::zero(&one, &zero)?;
        Self::new(vec![birth, death], vec![one, zero], vec![map])
    }

    pub fn criticals(&self) -> &CriticalSet {
        &self.criticals
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn maps(&self) -> &[Morphism] {
        &self.maps
    }

    pub fn backend(&self) -> Backend {
        self.objects[0].backend()
    }

    pub fn zero_object(&self) -> Object {
        self.objects[0].zero_like()
    }

    /// The object at parameter `x` (`x` may be `+inf`).
    pub fn evaluate(&self, x: f64) -> Object {
        match self.criticals.level(x) {
            Some(i) => self.objects[i].clone(),
            None => self.zero_object(),
        }
    }

    /// Composite of structure maps from level `i` to level `j >= i`.
    pub fn level_map(&self, i: usize, j: usize) -> Morphism {
        assert!(i <= j && j < self.objects.len(), "bad level range {i}..{j}");
        let mut acc = Morphism::identity(&self.objects[i]);
        for m in &self.maps[i..j] {
            acc = m.after(&acc).expect("validated module");
        }
        acc
    }

    /// `F(x <= y)`.
    pub fn evaluate_map(&self, x: f64, y: f64) -> Result<Morphism> {
        if x.is_nan() || y.is_nan() || x > y {
            return Err(Error::Order { p: x, q: y });
        }
        match (self.criticals.level(x), self.criticals.level(y)) {
            (Some(i), Some(j)) => Ok(self.level_map(i, j)),
            (None, _) => Morphism::zero(&self.zero_object(), &self.evaluate(y)),
            (Some(_), None) => unreachable!("x <= y"),
        }
    }

    /// Level of the object that represents `F(q - δ)` for small `δ`:
    /// the level just below the first critical value `>= q`, or the top level.
    fn death_level(&self, q: f64) -> Option<usize> {
        if q == f64::INFINITY {
            return Some(self.objects.len() - 1);
        }
        match self.criticals.ceiling(q) {
            Some(j) => j.checked_sub(1),
            None => Some(self.objects.len() - 1),
        }
    }

    /// `dF([p, q))`: the class of the image of `F(p <= q-)`.
    pub fn rank_function(&self, interval: &Interval) -> Result<GroupElement> {
        if interval.is_diagonal() {
            return Err(Error::Domain(format!(
                "rank function is not defined on the diagonal interval {interval}"
            )));
        }
        let zero = GroupElement::zero(self.backend());
        let Some(a) = self.criticals.level(interval.birth()) else {
            return Ok(zero);
        };
        let b = self
            .death_level(interval.death())
            .expect("birth level exists so death level does too");
        debug_assert!(a <= b);
        Ok(self.level_map(a, b).image_class())
    }

    /// `image_classes_from(i)[j - i]` is the class of the image of the level
    /// map `i -> j`, for `j = i..k`.
    pub fn image_classes_from(&self, i: usize) -> Vec<GroupElement> {
        let mut acc = Morphism::identity(&self.objects[i]);
        let mut out = vec![acc.image_class()];
        for m in &self.maps[i..] {
            acc = m.after(&acc).expect("validated module");
            out.push(acc.image_class());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn iv(p: f64, q: f64) -> Interval {
        Interval::new(p, q).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let m = m1();
        assert!(m.evaluate(0.5).is_zero());
        assert_eq!(m.evaluate(7.0), Object::field(2, 1));
        assert_eq!(m.evaluate(2.9), Object::field(2, 2));
        assert_eq!(m.evaluate(f64::INFINITY), Object::field(2, 1));
    }

    #[test]
    fn evaluate_map_examples() {
        let m = m1();
        assert_eq!(m.evaluate_map(1.0, 1.0).unwrap(), Morphism::identity(&Object::field(2, 1)));
        let f = m.evaluate_map(1.0, 3.0).unwrap();
        assert!(f.is_zero());
        assert_eq!((f.source(), f.target()), (Object::field(2, 1), Object::field(2, 1)));
        let f = m.evaluate_map(0.0, 5.0).unwrap();
        assert!(f.source().is_zero() && f.is_zero());
        assert!(matches!(m.evaluate_map(2.0, 1.0), Err(Error::Order { .. })));
    }

    #[test]
    fn rank_function_examples() {
        let m = m1();
        let inf = f64::INFINITY;
        assert_eq!(m.rank_function(&iv(1.0, 3.0)).unwrap(), GroupElement::dim(1));
        assert!(m.rank_function(&iv(1.0, inf)).unwrap().is_zero());
        assert!(m.rank_function(&iv(0.5, 1.2)).unwrap().is_zero());
        assert_eq!(m.rank_function(&iv(2.5, inf)).unwrap(), GroupElement::dim(1));
        assert!(matches!(m.rank_function(&iv(2.0, 2.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn rank_is_constant_within_cells() {
        let m = m1();
        let cases = [
            ((1.0, 3.0), (1.5, 2.5)),
            ((2.0, 3.0), (2.5, 2.75)),
            ((1.0, 2.0), (1.5, 1.75)),
            ((2.0, f64::INFINITY), (2.9, 5.0)),
        ];
        for ((p, q), (p2, q2)) in cases {
            assert_eq!(
                m.rank_function(&iv(p, q)).unwrap(),
                m.rank_function(&iv(p2, q2)).unwrap()
            );
        }
    }

    #[test]
    fn validation_messages_are_positional() {
        let err = ConstructibleModule::new(
            vec![1.0, 2.0],
            vec![Object::field(2, 1), Object::field(2, 2)],
            vec![gf2(1, 1, &[vec![1]])],
        )
        .unwrap_err();
        assert!(err.to_string().contains("maps[0] target"), "{err}");
        let err = CriticalSet::new(vec![1.0, 1.0]).unwrap_err();
        assert!(err.to_string().contains("criticals[0]"), "{err}");
        assert!(CriticalSet::new(vec![]).is_err());
        assert!(CriticalSet::new(vec![f64::INFINITY]).is_err());
    }
}
