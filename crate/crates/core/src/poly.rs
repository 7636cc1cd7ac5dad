//! Laurent polynomials in one variable `A` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse exponent → coefficient map. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial::default()
    }

    pub fn one() -> Self {
        LaurentPolynomial::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = LaurentPolynomial::zero();
        p.add_term(coeff, exp);
        p
    }

    /// `-A^2 - A^-2`, the value of a closed loop.
    pub fn loop_value() -> Self {
        LaurentPolynomial::from_terms([(-1, 2), (-1, -2)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i32)>) -> Self {
        let mut p = LaurentPolynomial::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i32) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn shift(&self, by: i32) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (e + by, c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        LaurentPolynomial::from_terms(self.terms().map(|(e, c)| (c * k, e)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = LaurentPolynomial::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// The substitution `A -> A^-1`.
    pub fn invert_variable(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentPolynomial) -> Option<Self> {
        let (&dlow, _) = divisor.terms.iter().next()?;
        let (&dhigh, &dlead) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut q = LaurentPolynomial::zero();
        while let Some((&high, &lead)) = rem.terms.iter().next_back() {
            if lead % dlead != 0 {
                return None;
            }
            let shift = high - dhigh;
            let (&low, _) = rem.terms.iter().next().expect("nonempty");
            if shift + dlow < low {
                return None;
            }
            let t = LaurentPolynomial::monomial(lead / dlead, shift);
            rem = &rem - &(&t * divisor);
            q = &q + &t;
        }
        Some(q)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &-rhs
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    /// `coeff*A^exp` terms in increasing exponent order joined by ` + `;
    /// `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("{c}*A^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl std::str::FromStr for LaurentPolynomial {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPolynomial::zero());
        }
        let mut p = LaurentPolynomial::zero();
        for (k, part) in s.split(" + ").enumerate() {
            let bad = || crate::Error::parse(1, k + 1, format!("bad term `{part}`"));
            let (c, e) = part.trim().split_once("*A^").ok_or_else(bad)?;
            p.add_term(c.parse().map_err(|_| bad())?, e.parse().map_err(|_| bad())?);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let d = LaurentPolynomial::loop_value();
        let d2 = &d * &d;
        assert_eq!(d2, LaurentPolynomial::from_terms([(1, 4), (2, 0), (1, -4)]));
        assert_eq!(d2.div_exact(&d), Some(d.clone()));
        assert_eq!(LaurentPolynomial::one().div_exact(&d), None);
        assert_eq!(&d - &d, LaurentPolynomial::zero());
        assert_eq!(d.pow(0), LaurentPolynomial::one());
        assert_eq!(d.invert_variable(), d);
        assert_eq!(
            LaurentPolynomial::monomial(3, 2).invert_variable(),
            LaurentPolynomial::monomial(3, -2)
        );
        assert_eq!(LaurentPolynomial::monomial(0, 5).term_count(), 0);
    }

    #[test]
    fn text_round_trip() {
        let p = LaurentPolynomial::from_terms([(-1, -16), (1, -12), (1, -4)]);
        assert_eq!(p.to_string(), "-1*A^-16 + 1*A^-12 + 1*A^-4");
        assert_eq!(p.to_string().parse::<LaurentPolynomial>().unwrap(), p);
        assert_eq!("0".parse::<LaurentPolynomial>().unwrap(), LaurentPolynomial::zero());
        assert!("x".parse::<LaurentPolynomial>().is_err());
    }
}
