//! Laurent polynomials with exact integer coefficients in one variable.
//!
//! Exponents count powers of the Kauffman variable `A`; Jones polynomials
//! are stored in the same variable with `t = A^-4`, so `A^k` is
//! `t^(-k/4)` and a Jones exponent is always an even power of `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i128>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i128, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i128)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i128, exp: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = slot.checked_add(coeff).expect("coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i128 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Substitutes the variable by its inverse.
    pub fn invert_variable(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn shift(&self, by: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + by, c)).collect() }
    }

    pub fn scale(&self, k: i128) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c.checked_mul(k).expect("coefficient overflow"))))
    }

    /// Text form in the variable `A`: `c*A^(e)` terms by ascending exponent.
    pub fn format_in_a(&self) -> String {
        self.format_with(|e| format!("A^({e})"))
    }

    /// Text form in `t = A^-4`: `c*t^(p/2)` terms by ascending `p`.
    /// `None` when some exponent is not a multiple of 2 (not a half-integer
    /// power of `t`).
    pub fn format_in_t(&self) -> Option<String> {
        if self.terms.keys().any(|e| e % 2 != 0) {
            return None;
        }
        let flipped = Self { terms: self.terms.iter().map(|(&e, &c)| (-e / 2, c)).collect() };
        Some(flipped.format_with(|p| format!("t^({p}/2)")))
    }

    fn format_with(&self, var: impl Fn(i64) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms().map(|(e, c)| format!("{c}*{}", var(e))).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in_a())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(-c, e);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1.checked_mul(c2).expect("coefficient overflow"), e1 + e2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn loop_value() -> LaurentPoly {
        LaurentPoly::from_terms([(2, -1), (-2, -1)])
    }

    #[test]
    fn arithmetic() {
        let d = loop_value();
        let sq = &d * &d;
        assert_eq!(sq, LaurentPoly::from_terms([(4, 1), (0, 2), (-4, 1)]));
        assert_eq!(d.pow(2), sq);
        assert!((&d - &d).is_zero());
        assert_eq!(-&d, d.scale(-1));
        assert_eq!(d.pow(0), LaurentPoly::one());
    }

    #[test]
    fn text_forms() {
        let hopf_jones = LaurentPoly::from_terms([(-2, -1), (-10, -1)]);
        assert_eq!(hopf_jones.format_in_t().unwrap(), "-1*t^(1/2) + -1*t^(5/2)");
        assert_eq!(LaurentPoly::from_terms([(3, 1)]).format_in_t(), None);
        assert_eq!(LaurentPoly::from_terms([(-4, -1), (4, -1)]).format_in_a(), "-1*A^(-4) + -1*A^(4)");
        assert_eq!(LaurentPoly::zero().format_in_a(), "0");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i64..6, -5i128..5), 0..5).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).invert_variable(), &a.invert_variable() * &b.invert_variable());
            prop_assert!(a.terms().all(|(_, c)| c != 0));
        }
    }
}
