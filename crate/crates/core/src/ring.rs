//! Coefficient rings for Witt vectors and bispan evaluation.
//!
//! Rings are values (so `ℤ/n` can carry its modulus) with an associated
//! element type.

use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::gset::GSet;
use crate::poly::{IntPoly, MultiPoly};

pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn scale_int(&self, n: &BigInt, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_int(n), a)
    }

    /// Evaluates an integer polynomial at ring elements.
    fn eval_poly(&self, p: &IntPoly, values: &[Self::Elem]) -> Self::Elem {
        let mut acc = self.zero();
        for (m, c) in p.terms() {
            let mut t = self.from_int(c);
            for (i, e) in m.support() {
                t = self.mul(&t, &self.pow(&values[i], e as u64));
            }
            acc = self.add(&acc, &t);
        }
        acc
    }
}

/// Torsion-free rings where division by a nonzero integer can be tested.
pub trait ExactDivision: Ring {
    fn div_int(&self, a: &Self::Elem, d: &BigInt) -> Option<Self::Elem>;
}

/// Rings with a left action of the ambient group by ring automorphisms.
pub trait GRing: Ring {
    fn act(&self, g: usize, a: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
}

impl ExactDivision for Integers {
    fn div_int(&self, a: &BigInt, d: &BigInt) -> Option<BigInt> {
        let (q, r) = a.div_rem(d);
        r.is_zero().then_some(q)
    }
}

impl GRing for Integers {
    fn act(&self, _g: usize, a: &BigInt) -> BigInt {
        a.clone()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
}

impl ExactDivision for Rationals {
    fn div_int(&self, a: &BigRational, d: &BigInt) -> Option<BigRational> {
        (!d.is_zero()).then(|| a / BigRational::from_integer(d.clone()))
    }
}

/// `ℤ/n` with canonical representatives in `0..n`, trivial group action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    modulus: BigInt,
}

impl IntegersMod {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "modulus must be positive");
        IntegersMod { modulus: BigInt::from(n) }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    fn reduce(&self, a: BigInt) -> BigInt {
        a.mod_floor(&self.modulus)
    }
}

impl Ring for IntegersMod {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        self.reduce(BigInt::one())
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        self.reduce(n.clone())
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a + b)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a * b)
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(-a)
    }
}

impl GRing for IntegersMod {
    fn act(&self, _g: usize, a: &BigInt) -> BigInt {
        a.clone()
    }
}

/// `ℤ[x_i]`, optionally with variables indexed by a G-set so that the group
/// acts by `g·x_i = x_{g i}`.
#[derive(Clone, Debug, Default)]
pub struct PolyRing {
    action: Option<Arc<GSet>>,
}

impl PolyRing {
    /// Trivial group action.
    pub fn new() -> Self {
        PolyRing { action: None }
    }

    /// Variables indexed by the points of `x`.
    pub fn over_gset(x: Arc<GSet>) -> Self {
        PolyRing { action: Some(x) }
    }

    pub fn variables(&self) -> Option<&Arc<GSet>> {
        self.action.as_ref()
    }
}

impl Ring for PolyRing {
    type Elem = IntPoly;
    fn zero(&self) -> IntPoly {
        MultiPoly::zero()
    }
    fn one(&self) -> IntPoly {
        MultiPoly::one()
    }
    fn from_int(&self, n: &BigInt) -> IntPoly {
        MultiPoly::constant(n.clone())
    }
    fn add(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a.clone() + b.clone()
    }
    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a.mul_ref(b)
    }
    fn neg(&self, a: &IntPoly) -> IntPoly {
        -a.clone()
    }
    fn is_zero(&self, a: &IntPoly) -> bool {
        a.is_zero()
    }
}

impl ExactDivision for PolyRing {
    fn div_int(&self, a: &IntPoly, d: &BigInt) -> Option<IntPoly> {
        a.div_exact(d)
    }
}

impl GRing for PolyRing {
    fn act(&self, g: usize, a: &IntPoly) -> IntPoly {
        match &self.action {
            None => a.clone(),
            Some(x) => a.map_vars(|i| x.act(g, i)),
        }
    }
}

/// Polynomials over ℤ in variables `x_0, x_1, ...` with rational
/// coefficients allowed; used for exact division tests over ℚ.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalPolyRing;

impl Ring for RationalPolyRing {
    type Elem = MultiPoly<BigRational>;
    fn zero(&self) -> Self::Elem {
        MultiPoly::zero()
    }
    fn one(&self) -> Self::Elem {
        MultiPoly::one()
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        MultiPoly::constant(BigRational::from_integer(n.clone()))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.clone() + b.clone()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul_ref(b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        -a.clone()
    }
}

impl ExactDivision for RationalPolyRing {
    fn div_int(&self, a: &Self::Elem, d: &BigInt) -> Option<Self::Elem> {
        (!d.is_zero()).then(|| a.scale(&BigRational::new(BigInt::one(), d.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_arithmetic() {
        let r = IntegersMod::new(6);
        assert_eq!(r.add(&BigInt::from(4), &BigInt::from(5)), BigInt::from(3));
        assert_eq!(r.neg(&BigInt::from(1)), BigInt::from(5));
        assert_eq!(r.pow(&BigInt::from(5), 3), BigInt::from(5));
    }

    #[test]
    fn integer_division() {
        assert_eq!(Integers.div_int(&BigInt::from(-6), &BigInt::from(3)), Some(BigInt::from(-2)));
        assert_eq!(Integers.div_int(&BigInt::from(1), &BigInt::from(2)), None);
    }

    #[test]
    fn poly_eval() {
        let p = IntPoly::var(0).pow(2) + IntPoly::var(1);
        let r = IntegersMod::new(4);
        assert_eq!(r.eval_poly(&p, &[BigInt::from(3), BigInt::from(2)]), BigInt::from(3));
    }
}
