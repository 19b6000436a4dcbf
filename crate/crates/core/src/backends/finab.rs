//! Finite abelian groups in primary decomposition and homomorphisms between them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::snf::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};
use crate::grocat::{is_prime, Backend, GeneratorKey, GroupElement};

/// `⊕ Z/p^k`, stored as sorted `(p, k)` pairs with `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinAbObject {
    factors: Vec<(u64, u32)>,
}

impl FinAbObject {
    pub fn trivial() -> Self {
        FinAbObject { factors: Vec::new() }
    }

    pub fn new(mut factors: Vec<(u64, u32)>) -> Result<Self> {
        for &(p, k) in &factors {
            if !is_prime(p) {
                return Err(Error::InvalidObject(format!("factor base {p} is not prime")));
            }
            if k == 0 {
                return Err(Error::InvalidObject(format!("factor Z/{p}^0 has exponent 0")));
            }
            if p.checked_pow(k).map_or(true, |o| o > i64::MAX as u64 / 2) {
                return Err(Error::InvalidObject(format!("factor {p}^{k} too large")));
            }
        }
        factors.sort_unstable();
        Ok(FinAbObject { factors })
    }

    /// `Z/n`, split into its primary parts.
    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidObject("Z/0 is not finite".into()));
        }
        let mut factors = Vec::new();
        let mut rest = n;
        let mut d = 2u64;
        while d * d <= rest {
            let mut k = 0;
            while rest % d == 0 {
                rest /= d;
                k += 1;
            }
            if k > 0 {
                factors.push((d, k));
            }
            d += 1;
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Order of the i-th generator.
    pub fn generator_order(&self, i: usize) -> i64 {
        let (p, k) = self.factors[i];
        p.pow(k) as i64
    }

    pub fn order(&self) -> BigInt {
        (0..self.rank()).fold(BigInt::one(), |acc, i| acc * self.generator_order(i))
    }

    /// The class `sum k [Z/p]`.
    pub fn classify(&self) -> GroupElement {
        GroupElement::from_terms(
            Backend::FinAb,
            self.factors
                .iter()
                .map(|&(p, k)| (GeneratorKey::Prime(p), k as i64)),
        )
        .expect("prime keys")
    }
}

/// A homomorphism given on generators: column `j` is the image of source
/// generator `j`, entry `i` reduced modulo the order of target generator `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinAbMorphism {
    source: FinAbObject,
    target: FinAbObject,
    matrix: Vec<Vec<i64>>,
}

impl FinAbMorphism {
    /// Checks shape and well-definedness: `ord(s_j) * column_j ≡ 0` in the target.
    pub fn new(source: FinAbObject, target: FinAbObject, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != target.rank() {
            return Err(Error::InvalidMorphism(format!(
                "expected {} rows, found {}",
                target.rank(),
                matrix.len()
            )));
        }
        let mut reduced = matrix;
        for (i, row) in reduced.iter_mut().enumerate() {
            if row.len() != source.rank() {
                return Err(Error::InvalidMorphism(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    source.rank()
                )));
            }
            let n = target.generator_order(i);
            for x in row.iter_mut() {
                *x = x.rem_euclid(n);
            }
        }
        for j in 0..source.rank() {
            let m = source.generator_order(j) as i128;
            for (i, row) in reduced.iter().enumerate() {
                let n = target.generator_order(i) as i128;
                if (m * row[j] as i128) % n != 0 {
                    return Err(Error::InvalidMorphism(format!(
                        "generator {j} of order {m} cannot map to {} in Z/{n}",
                        row[j]
                    )));
                }
            }
        }
        Ok(FinAbMorphism {
            source,
            target,
            matrix: reduced,
        })
    }

    pub fn zero(source: FinAbObject, target: FinAbObject) -> Self {
        let matrix = vec![vec![0; source.rank()]; target.rank()];
        FinAbMorphism {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(obj: &FinAbObject) -> Self {
        let n = obj.rank();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        FinAbMorphism {
            source: obj.clone(),
            target: obj.clone(),
            matrix,
        }
    }

    pub fn source(&self) -> &FinAbObject {
        &self.source
    }

    pub fn target(&self) -> &FinAbObject {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|x| *x == 0)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinAbMorphism) -> Result<FinAbMorphism> {
        if f.target != self.source {
            return Err(Error::Composition(format!(
                "target {:?} does not match source {:?}",
                f.target.factors, self.source.factors
            )));
        }
        let rows = self.target.rank();
        let cols = f.source.rank();
        let mid = self.source.rank();
        let mut matrix = vec![vec![0i64; cols]; rows];
        for (i, row) in matrix.iter_mut().enumerate() {
            let n = self.target.generator_order(i) as i128;
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc: i128 = 0;
                for l in 0..mid {
                    acc = (acc + self.matrix[i][l] as i128 * f.matrix[l][j] as i128) % n;
                }
                *slot = acc.rem_euclid(n) as i64;
            }
        }
        Ok(FinAbMorphism {
            source: f.source.clone(),
            target: self.target.clone(),
            matrix,
        })
    }

    /// Order of the image subgroup: `|target| / |target / image|`, with the
    /// cokernel order read off the Smith form of `[matrix | diag(orders)]`.
    pub fn image_order(&self) -> BigInt {
        let r = self.target.rank();
        if r == 0 {
            return BigInt::one();
        }
        let c = self.source.rank();
        let mut rows = vec![vec![0i64; c + r]; r];
        for i in 0..r {
            rows[i][..c].copy_from_slice(&self.matrix[i]);
            rows[i][c + i] = self.target.generator_order(i);
        }
        let snf = smith_normal_form(&IntMatrix::from_i64(&rows));
        let coker: BigInt = snf.invariant_factors().iter().product();
        debug_assert!(!coker.is_zero());
        let (q, rem) = self.target.order().div_rem(&coker);
        debug_assert!(rem.is_zero());
        q
    }

    /// Grothendieck class of the image: the prime factorisation of its order.
    pub fn image_class(&self) -> GroupElement {
        let mut order = self.image_order();
        let mut primes: Vec<u64> = self.target.factors.iter().map(|f| f.0).collect();
        primes.dedup();
        let mut terms = Vec::new();
        for p in primes {
            let bp = BigInt::from(p);
            let mut k = 0i64;
            loop {
                let (q, rem) = order.div_rem(&bp);
                if !rem.is_zero() {
                    break;
                }
                order = q;
                k += 1;
            }
            terms.push((GeneratorKey::Prime(p), k));
        }
        debug_assert_eq!(order.to_u64(), Some(1));
        GroupElement::from_terms(Backend::FinAb, terms).expect("prime keys")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(f: &[(u64, u32)]) -> FinAbObject {
        FinAbObject::new(f.to_vec()).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(obj(&[(2, 3)]).classify(), GroupElement::prime(2, 3));
        assert!(FinAbObject::trivial().classify().is_zero());
        assert_eq!(
            obj(&[(2, 2), (3, 1)]).classify(),
            &GroupElement::prime(2, 2) + &GroupElement::prime(3, 1)
        );
        assert_eq!(FinAbObject::cyclic(12).unwrap(), obj(&[(2, 2), (3, 1)]));
    }

    #[test]
    fn rejects_ill_defined_maps() {
        // Z/2 -> Z/4, 1 |-> 1 is not a homomorphism
        assert!(FinAbMorphism::new(obj(&[(2, 1)]), obj(&[(2, 2)]), vec![vec![1]]).is_err());
        assert!(FinAbMorphism::new(obj(&[(2, 1)]), obj(&[(2, 2)]), vec![vec![2]]).is_ok());
        // Z/3 -> Z/2 must be zero
        assert!(FinAbMorphism::new(obj(&[(3, 1)]), obj(&[(2, 1)]), vec![vec![1]]).is_err());
        assert!(FinAbObject::new(vec![(4, 1)]).is_err());
    }

    #[test]
    fn compose_quotient_after_doubling() {
        let z2 = obj(&[(2, 1)]);
        let z4 = obj(&[(2, 2)]);
        let double = FinAbMorphism::new(z2.clone(), z4.clone(), vec![vec![2]]).unwrap();
        let quotient = FinAbMorphism::new(z4, z2, vec![vec![1]]).unwrap();
        assert!(quotient.after(&double).unwrap().is_zero());
    }

    #[test]
    fn image_classes() {
        let z2 = obj(&[(2, 1)]);
        let z4 = obj(&[(2, 2)]);
        let double = FinAbMorphism::new(z2.clone(), z4.clone(), vec![vec![2]]).unwrap();
        assert_eq!(double.image_class(), GroupElement::prime(2, 1));
        let quotient = FinAbMorphism::new(z4.clone(), z2, vec![vec![1]]).unwrap();
        assert_eq!(quotient.image_class(), GroupElement::prime(2, 1));
        assert_eq!(FinAbMorphism::identity(&z4).image_class(), GroupElement::prime(2, 2));
    }
}
