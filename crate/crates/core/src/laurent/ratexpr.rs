use std::fmt;

use num_traits::One;
use serde_json::{json, Value};

use super::poly::{Monomial, Poly, Q};
use crate::error::{Error, Result};

/// Quotient of two Laurent polynomials.
///
/// Monomial denominators are folded into the numerator, so a Laurent
/// polynomial always has denominator 1. Other denominators are scaled to
/// have leading coefficient 1 and no monomial factor. There is no
/// polynomial gcd; equality compares cross products.
#[derive(Clone, Debug)]
pub struct RatExpr {
    num: Poly,
    den: Poly,
}

impl RatExpr {
    pub fn new(num: Poly, den: Poly) -> Result<RatExpr> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatExpr::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> RatExpr {
        if num.is_zero() {
            return RatExpr::zero();
        }
        if let Some((m, c)) = den.as_monomial() {
            let num = num.mul_monomial(&m.inverse(), &c.recip());
            return RatExpr { num, den: Poly::one() };
        }
        let mm = den.min_monomial().inverse();
        let lead = den.leading().expect("non-zero").1.recip();
        RatExpr {
            num: num.mul_monomial(&mm, &lead),
            den: den.mul_monomial(&mm, &lead),
        }
    }

    pub fn zero() -> RatExpr {
        RatExpr::from(Poly::zero())
    }

    pub fn one() -> RatExpr {
        RatExpr::from(Poly::one())
    }

    pub fn constant(c: Q) -> RatExpr {
        RatExpr::from(Poly::constant(c))
    }

    pub fn var(name: &str) -> RatExpr {
        RatExpr::from(Poly::var(name))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial, when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<RatExpr> {
        RatExpr::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatExpr) -> Result<RatExpr> {
        Ok(self * &other.recip()?)
    }

    pub fn scale(&self, c: &Q) -> RatExpr {
        RatExpr::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, n: i32) -> Result<RatExpr> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut out = RatExpr::one();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// `var -> -var`.
    pub fn substitute_negate(&self, var: &str) -> RatExpr {
        let m1 = -Q::one();
        RatExpr::normalized(self.num.scale_var(var, &m1), self.den.scale_var(var, &m1))
    }

    pub fn rename(&self, from: &str, to: &str) -> RatExpr {
        RatExpr::normalized(self.num.rename(from, to), self.den.rename(from, to))
    }

    /// See [`Poly::map_vars`].
    pub fn map_vars(&self, f: &impl Fn(&str) -> (String, bool)) -> RatExpr {
        RatExpr::normalized(self.num.map_vars(f), self.den.map_vars(f))
    }

    pub fn vars(&self) -> Vec<String> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort();
        v.dedup();
        v
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }
}

impl From<Poly> for RatExpr {
    fn from(p: Poly) -> RatExpr {
        RatExpr { num: p, den: Poly::one() }
    }
}

impl From<Monomial> for RatExpr {
    fn from(m: Monomial) -> RatExpr {
        RatExpr::from(Poly::term(m, Q::one()))
    }
}

impl PartialEq for RatExpr {
    fn eq(&self, other: &RatExpr) -> bool {
        if self.den.is_one() && other.den.is_one() {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatExpr {}

impl std::ops::Add<&RatExpr> for &RatExpr {
    type Output = RatExpr;
    fn add(self, rhs: &RatExpr) -> RatExpr {
        if self.den == rhs.den {
            return RatExpr::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatExpr::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl std::ops::Sub<&RatExpr> for &RatExpr {
    type Output = RatExpr;
    fn sub(self, rhs: &RatExpr) -> RatExpr {
        self + &-rhs
    }
}

impl std::ops::Mul<&RatExpr> for &RatExpr {
    type Output = RatExpr;
    fn mul(self, rhs: &RatExpr) -> RatExpr {
        if self.den.is_one() && rhs.den.is_one() {
            return RatExpr::from(&self.num * &rhs.num);
        }
        RatExpr::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl std::ops::Neg for &RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        RatExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Default for RatExpr {
    fn default() -> Self {
        RatExpr::zero()
    }
}
