//! Sparse multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector with trailing zeros trimmed, so equal monomials compare
/// equal regardless of how many variables are in scope.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut v = vec![0; i + 1];
        v[i] = e;
        Monomial(v)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() { (self, other) } else { (other, self) };
        let mut v = long.0.clone();
        for (i, e) in short.0.iter().enumerate() {
            v[i] += e;
        }
        Monomial(v)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial::from_exponents(self.0.iter().map(|e| e * k).collect())
    }

    /// Renames variable `i` to `f(i)`.
    pub fn map_vars(&self, f: impl Fn(usize) -> usize) -> Monomial {
        let mut out: Vec<u32> = Vec::new();
        for (i, e) in self.support() {
            let j = f(i);
            if out.len() <= j {
                out.resize(j + 1, 0);
            }
            out[j] += e;
        }
        Monomial::from_exponents(out)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|i| format!("x{i}")))
    }
}

impl Monomial {
    fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.support()
            .map(|(i, e)| if e == 1 { name(i) } else { format!("{}^{}", name(i), e) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Coefficient types usable in [`MultiPoly`].
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Signed
{
}

impl Coeff for BigInt {}
impl Coeff for BigRational {}

/// A sparse polynomial: monomial to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<C = BigInt> {
    terms: BTreeMap<Monomial, C>,
}

pub type IntPoly = MultiPoly<BigInt>;

impl<C: Coeff> Default for MultiPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(i: usize) -> Self {
        Self::term(C::one(), Monomial::var(i))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Variables that occur with nonzero exponent.
    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().flat_map(|m| m.support().map(|(i, _)| i)).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect() }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    pub fn map_vars(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Substitutes polynomial `values[i]` for variable `i`.
    pub fn substitute(&self, values: &[Self]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, e) in m.support() {
                t = t.mul_ref(&values[i].pow(e));
            }
            out = out + t;
        }
        out
    }

    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&m.render(name));
            } else {
                s.push_str(&format!("{}*{}", abs, m.render(name)));
            }
        }
        s
    }
}

impl MultiPoly<BigInt> {
    /// Divides every coefficient by `d`, if all are divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if !(c % d).is_zero() {
                return None;
            }
            terms.insert(m.clone(), c / d);
        }
        Some(MultiPoly { terms })
    }

    pub fn to_rational(&self) -> MultiPoly<BigRational> {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))).collect() }
    }

    /// Evaluates at integer points.
    pub fn eval_int(&self, values: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.support() {
                t *= num_traits::pow(values[i].clone(), e as usize);
            }
            acc += t;
        }
        acc
    }
}

impl MultiPoly<BigRational> {
    /// The integer polynomial, if every coefficient is integral.
    pub fn to_integer(&self) -> Option<MultiPoly<BigInt>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            terms.insert(m.clone(), c.to_integer());
        }
        Some(MultiPoly { terms })
    }
}

impl<C: Coeff> Add for MultiPoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<C: Coeff> Sub for MultiPoly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coeff> Neg for MultiPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        MultiPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<C: Coeff> Mul for MultiPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a, C: Coeff> Mul<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        self.mul_ref(rhs)
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|i| format!("x{i}")))
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|i| format!("x{i}")))
    }
}

/// JSON form: a list of `[{variable: exponent}, "coefficient"]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyJson(pub Vec<(BTreeMap<String, u32>, String)>);

impl From<&MultiPoly<BigInt>> for PolyJson {
    fn from(p: &MultiPoly<BigInt>) -> Self {
        PolyJson(
            p.terms().map(|(m, c)| (m.support().map(|(i, e)| (i.to_string(), e)).collect(), c.to_string())).collect(),
        )
    }
}

impl TryFrom<&PolyJson> for MultiPoly<BigInt> {
    type Error = Error;
    fn try_from(j: &PolyJson) -> Result<Self> {
        let mut p = MultiPoly::zero();
        for (exps, c) in &j.0 {
            let c: BigInt = c.parse().map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            let mut m = Monomial::one();
            for (v, e) in exps {
                let i: usize = v.parse().map_err(|_| Error::Parse(format!("bad variable `{v}`")))?;
                m = m.mul(&Monomial::var_pow(i, *e));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn binomial_square() {
        let x = IntPoly::var(0);
        let y = IntPoly::var(1);
        let lhs = (x.clone() + y.clone()).pow(2);
        let rhs = x.pow(2) + x.mul_ref(&y).scale(&int(2)) + y.pow(2);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.num_terms(), 3);
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = IntPoly::var(3);
        assert!((x.clone() - x).is_zero());
        assert_eq!(Monomial::from_exponents(vec![1, 0, 0]), Monomial::var(0));
    }

    #[test]
    fn exact_division() {
        let p = IntPoly::var(0).scale(&int(4)) + IntPoly::constant(int(6));
        assert_eq!(p.div_exact(&int(2)).unwrap(), IntPoly::var(0).scale(&int(2)) + IntPoly::constant(int(3)));
        assert!(p.div_exact(&int(4)).is_none());
    }

    #[test]
    fn render_is_readable() {
        let p = IntPoly::var(0).pow(2) - IntPoly::var(1).scale(&int(3)) + IntPoly::one();
        assert_eq!(p.render(&|i| ["a", "b"][i].to_string()), "a^2 - 3*b + 1");
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 0..3), -5i64..5), 0..5)
            .prop_map(|ts| IntPoly::from_terms(ts.into_iter().map(|(e, c)| (Monomial::from_exponents(e), int(c)))))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * b.clone(), b * a);
        }

        #[test]
        fn json_round_trip(a in arb_poly()) {
            let j = PolyJson::from(&a);
            let text = serde_json::to_string(&j).unwrap();
            let back: PolyJson = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(IntPoly::try_from(&back).unwrap(), a);
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), v in prop::collection::vec(-4i64..4, 3)) {
            let v: Vec<BigInt> = v.into_iter().map(int).collect();
            prop_assert_eq!((a.clone() * b.clone()).eval_int(&v), a.eval_int(&v) * b.eval_int(&v));
        }
    }
}
