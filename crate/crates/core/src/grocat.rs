//! Grothendieck-group elements for the two supported backends.
//!
//! Finite-dimensional vector spaces have `G(Vect) = Z`, generated by the class
//! of the one-dimensional space. Finite abelian groups have `G(FinAb)` free on
//! the classes `[Z/p]`, since `[Z/p^n] = n [Z/p]`. Elements are kept in the
//! quotient form directly, as sparse integer vectors over generator keys.
//!
//! The partial order is componentwise. It is translation invariant, and a
//! value `v` is positive when `0 ⪯ v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which abelian category a value's Grothendieck group comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Finite-dimensional vector spaces over a prime field.
    Vect,
    /// Finite abelian groups.
    FinAb,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Vect => f.write_str("vect"),
            Backend::FinAb => f.write_str("finab"),
        }
    }
}

/// A free generator of a Grothendieck group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKey {
    /// The class of a one-dimensional vector space.
    Dim,
    /// The class of `Z/p` for a prime `p`.
    Prime(u64),
}

impl GeneratorKey {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(GeneratorKey::Prime(p))
        } else {
            Err(Error::Domain(format!("{p} is not prime")))
        }
    }

    pub fn backend(&self) -> Backend {
        match self {
            GeneratorKey::Dim => Backend::Vect,
            GeneratorKey::Prime(_) => Backend::FinAb,
        }
    }
}

impl fmt::Display for GeneratorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKey::Dim => f.write_str("dim"),
            GeneratorKey::Prime(p) => write!(f, "Z/{p}"),
        }
    }
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `G(Vect)` or `G(FinAb)` in canonical sparse form.
///
/// Zero coefficients are never stored, so structural equality is group
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    backend: Backend,
    coeffs: BTreeMap<GeneratorKey, i64>,
}

impl GroupElement {
    pub fn zero(backend: Backend) -> Self {
        GroupElement {
            backend,
            coeffs: BTreeMap::new(),
        }
    }

    /// `n` times the class of the one-dimensional vector space.
    pub fn dim(n: i64) -> Self {
        Self::zero(Backend::Vect).with_term(GeneratorKey::Dim, n)
    }

    /// `n [Z/p]`. Panics if `p` is not prime.
    pub fn prime(p: u64, n: i64) -> Self {
        let key = GeneratorKey::prime(p).expect("prime generator");
        Self::zero(Backend::FinAb).with_term(key, n)
    }

    /// Builds an element from `(key, coefficient)` terms, summing repeats.
    pub fn from_terms<I>(backend: Backend, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GeneratorKey, i64)>,
    {
        let mut out = Self::zero(backend);
        for (key, c) in terms {
            if key.backend() != backend {
                return Err(Error::BackendMismatch {
                    left: backend,
                    right: key.backend(),
                });
            }
            out.add_term(key, c);
        }
        Ok(out)
    }

    fn with_term(mut self, key: GeneratorKey, c: i64) -> Self {
        self.add_term(key, c);
        self
    }

    fn add_term(&mut self, key: GeneratorKey, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(key).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&key);
        }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, key: GeneratorKey) -> i64 {
        self.coeffs.get(&key).copied().unwrap_or(0)
    }

    /// Nonzero terms in key order.
    pub fn terms(&self) -> impl Iterator<Item = (GeneratorKey, i64)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = GeneratorKey> + '_ {
        self.coeffs.keys().copied()
    }

    fn check_backend(&self, other: &Self) -> Result<()> {
        if self.backend == other.backend {
            Ok(())
        } else {
            Err(Error::BackendMismatch {
                left: self.backend,
                right: other.backend,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_backend(other)?;
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        GroupElement {
            backend: self.backend,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, factor: i64) -> Self {
        if factor == 0 {
            return Self::zero(self.backend);
        }
        GroupElement {
            backend: self.backend,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * factor)).collect(),
        }
    }

    /// The componentwise order `self ⪯ other`.
    pub fn partial_leq(&self, other: &Self) -> Result<bool> {
        self.check_backend(other)?;
        let keys = self.coeffs.keys().chain(other.coeffs.keys());
        Ok(keys.into_iter().all(|k| self.coeff(*k) <= other.coeff(*k)))
    }

    /// `0 ⪯ self`.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| *c > 0)
    }

    /// Sums an iterator of elements, all of which must carry `backend`.
    pub fn sum<'a, I>(backend: Backend, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        let mut out = Self::zero(backend);
        for item in items {
            if item.backend != backend {
                return Err(Error::BackendMismatch {
                    left: backend,
                    right: item.backend,
                });
            }
            for (k, c) in item.terms() {
                out.add_term(k, c);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            if a == 1 {
                write!(f, "[{k}]")?;
            } else {
                write!(f, "{a}[{k}]")?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on backend mismatch; use the `checked_*` methods when
// the operands come from unvalidated input.

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        self.checked_add(rhs).expect("group elements from different backends")
    }
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: GroupElement) -> GroupElement {
        &self + &rhs
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self.checked_sub(rhs).expect("group elements from different backends")
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: GroupElement) -> GroupElement {
        &self - &rhs
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        self.negate()
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        self.negate()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum KeyRepr {
    Name(String),
    Prime(u64),
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    backend: Backend,
    coeffs: Vec<(KeyRepr, i64)>,
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .terms()
            .map(|(k, c)| match k {
                GeneratorKey::Dim => (KeyRepr::Name("dim".into()), c),
                GeneratorKey::Prime(p) => (KeyRepr::Prime(p), c),
            })
            .collect();
        ElementRepr {
            backend: self.backend,
            coeffs,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(repr.coeffs.len());
        for (k, c) in repr.coeffs {
            let key = match k {
                KeyRepr::Name(s) if s == "dim" => GeneratorKey::Dim,
                KeyRepr::Name(s) => {
                    return Err(D::Error::custom(format!("unknown generator key {s:?}")))
                }
                KeyRepr::Prime(p) => GeneratorKey::prime(p).map_err(D::Error::custom)?,
            };
            terms.push((key, c));
        }
        GroupElement::from_terms(repr.backend, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn finab(terms: &[(u64, i64)]) -> GroupElement {
        GroupElement::from_terms(
            Backend::FinAb,
            terms.iter().map(|(p, c)| (GeneratorKey::prime(*p).unwrap(), *c)),
        )
        .unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&finab(&[(2, 1)]) + &finab(&[(2, 1)]), finab(&[(2, 2)]));
        assert!((GroupElement::dim(3) + GroupElement::dim(-3)).is_zero());
        assert_eq!(
            &finab(&[(2, 1)]) + &finab(&[(3, 2)]),
            finab(&[(2, 1), (3, 2)])
        );
    }

    #[test]
    fn mixed_backends_rejected() {
        let err = GroupElement::dim(1).checked_add(&finab(&[(2, 1)]));
        assert!(matches!(err, Err(Error::BackendMismatch { .. })));
        assert!(GroupElement::dim(1).partial_leq(&finab(&[])).is_err());
    }

    #[test]
    fn negate_examples() {
        assert_eq!(GroupElement::dim(2).negate(), GroupElement::dim(-2));
        assert_eq!(GroupElement::zero(Backend::Vect).negate(), GroupElement::zero(Backend::Vect));
        assert_eq!(finab(&[(5, -1)]).negate(), finab(&[(5, 1)]));
    }

    #[test]
    fn partial_leq_examples() {
        assert!(finab(&[]).partial_leq(&finab(&[(2, 3)])).unwrap());
        assert!(!GroupElement::dim(2).partial_leq(&GroupElement::dim(1)).unwrap());
        assert!(!finab(&[(2, 1), (3, 1)]).partial_leq(&finab(&[(2, 2)])).unwrap());
    }

    #[test]
    fn prime_keys_checked() {
        assert!(GeneratorKey::prime(4).is_err());
        assert!(GeneratorKey::prime(1).is_err());
        assert!(GeneratorKey::prime(97).is_ok());
    }

    #[test]
    fn json_shape() {
        let e = finab(&[(3, 2), (2, -1)]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"backend":"finab","coeffs":[[2,-1],[3,2]]}"#);
        let back: GroupElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        let v = serde_json::to_string(&GroupElement::dim(4)).unwrap();
        assert_eq!(v, r#"{"backend":"vect","coeffs":[["dim",4]]}"#);
        assert!(serde_json::from_str::<GroupElement>(r#"{"backend":"finab","coeffs":[[6,1]]}"#).is_err());
        assert!(serde_json::from_str::<GroupElement>(r#"{"backend":"vect","coeffs":[[2,1]]}"#).is_err());
    }

    fn element() -> impl Strategy<Value = GroupElement> {
        proptest::collection::vec((prop::sample::select(vec![2u64, 3, 5, 7]), -4i64..5), 0..5)
            .prop_map(|t| finab(&t))
    }

    proptest! {
        #[test]
        fn abelian_group_laws(a in element(), b in element(), c in element()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a + &a.negate()).is_zero());
            let zero = GroupElement::zero(Backend::FinAb);
            let same = &a + &zero;
            prop_assert_eq!(&same, &a);
            prop_assert!(same.terms().all(|(_, c)| c != 0));
        }

        #[test]
        fn partial_order_laws(a in element(), b in element(), c in element()) {
            prop_assert!(a.partial_leq(&a).unwrap());
            if a.partial_leq(&b).unwrap() && b.partial_leq(&a).unwrap() {
                prop_assert_eq!(&a, &b);
            }
            if a.partial_leq(&b).unwrap() && b.partial_leq(&c).unwrap() {
                prop_assert!(a.partial_leq(&c).unwrap());
            }
            if a.partial_leq(&b).unwrap() {
                prop_assert!((&a + &c).partial_leq(&(&b + &c)).unwrap());
            }
        }
    }
}
