use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf::{parse_rational, Q};
use crate::laurent::{Monomial, Poly, RatExpr};

/// Local model of a spectral curve with one simple branch point:
/// `x = z^2`, `y = y1 z + y3 z^3 + ...`, conjugation `z -> -z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    y_odd: Vec<Q>,
}

impl CurveModel {
    pub fn new(y_odd: Vec<Q>) -> Result<CurveModel> {
        match y_odd.first() {
            Some(c) if !c.is_zero() => Ok(CurveModel { y_odd }),
            _ => Err(Error::InvalidCurve("the linear coefficient of y must be non-zero".into())),
        }
    }

    pub fn airy() -> CurveModel {
        CurveModel { y_odd: vec![Q::one()] }
    }

    /// `"airy"` or `"y: c1,c3,..."`.
    pub fn parse(text: &str) -> Result<CurveModel> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("airy") {
            return Ok(CurveModel::airy());
        }
        let Some(rest) = t.strip_prefix("y:") else {
            return Err(Error::InvalidCurve(format!("expected `airy` or `y: c1,c3,...`, got `{t}`")));
        };
        let coeffs = rest
            .split(',')
            .map(|c| parse_rational(c.trim()).map_err(|_| Error::InvalidCurve(format!("bad coefficient `{}`", c.trim()))))
            .collect::<Result<Vec<_>>>()?;
        CurveModel::new(coeffs)
    }

    pub fn y_odd(&self) -> &[Q] {
        &self.y_odd
    }

    pub fn is_airy(&self) -> bool {
        self.y_odd.len() == 1 && self.y_odd[0].is_one()
    }

    /// `y(var)`.
    pub fn y(&self, var: &str) -> Poly {
        let mut p = Poly::zero();
        for (j, c) in self.y_odd.iter().enumerate() {
            p.add_term(Monomial::var(var, 2 * j as i32 + 1), c.clone());
        }
        p
    }

    pub fn to_json(&self) -> Value {
        json!({ "y_odd": self.y_odd.iter().map(|c| c.to_string()).collect::<Vec<_>>() })
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_airy() {
            return write!(f, "airy");
        }
        let cs: Vec<String> = self.y_odd.iter().map(|c| c.to_string()).collect();
        write!(f, "y: {}", cs.join(","))
    }
}

/// `1/(v1 - v2)^2`.
pub fn bergmann(v1: &str, v2: &str) -> Result<RatExpr> {
    if v1 == v2 {
        return Err(Error::IdenticalVariables(v1.to_string()));
    }
    (&RatExpr::var(v1) - &RatExpr::var(v2)).pow(-2)
}

/// `(y(z) - y(-z)) dx(z) / dz = 4 z y(z)`.
pub fn vertex_omega(c: &CurveModel, z: &str) -> Poly {
    c.y(z).mul_monomial(&Monomial::var(z, 1), &Q::from_integer(4.into()))
}

/// Recursion kernel `(1/2) int_z^{-z} B(xi, p) dxi / omega(z)`, which is
/// `1/(4 y(z) (z^2 - p^2))`.
pub fn recursion_kernel(c: &CurveModel, z: &str, p: &str) -> RatExpr {
    let half_integral = RatExpr::new(
        Poly::var(z),
        &Poly::var(z).pow(2) - &Poly::var(p).pow(2),
    )
    .expect("distinct variables");
    let omega = RatExpr::from(vertex_omega(c, z));
    half_integral.div(&omega).expect("omega is non-zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{expand_local, residue_at_origin, valuation};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn parse_curves() {
        assert!(CurveModel::parse("airy").unwrap().is_airy());
        let c = CurveModel::parse("y: 1, 1/3").unwrap();
        assert_eq!(c.y_odd(), &[q(1, 1), q(1, 3)]);
        assert_eq!(c.to_string(), "y: 1,1/3");
        assert!(matches!(CurveModel::parse("y: 0,1"), Err(Error::InvalidCurve(_))));
        assert!(matches!(CurveModel::parse("x: 1"), Err(Error::InvalidCurve(_))));
    }

    #[test]
    fn omega_values() {
        let a = vertex_omega(&CurveModel::airy(), "z");
        assert_eq!(a, Poly::var("z").pow(2).scale(&q(4, 1)));
        let c = CurveModel::new(vec![q(1, 1), q(1, 1)]).unwrap();
        let want = &Poly::var("z").pow(2).scale(&q(4, 1)) + &Poly::var("z").pow(4).scale(&q(4, 1));
        assert_eq!(vertex_omega(&c, "z"), want);
    }

    #[test]
    fn bergmann_kernel() {
        let b = bergmann("p1", "p2").unwrap();
        assert_eq!(b, bergmann("p2", "p1").unwrap());
        assert!(matches!(bergmann("p", "p"), Err(Error::IdenticalVariables(_))));
        // p1 = p2 + t: double pole with unit coefficient, no residue
        let local = RatExpr::new(Poly::one(), Poly::var("t").pow(2)).unwrap();
        let sub = (&(&RatExpr::var("p2") + &RatExpr::var("t")) - &RatExpr::var("p2")).pow(-2).unwrap();
        assert_eq!(sub, local);
        assert!(residue_at_origin(&sub, "t").unwrap().is_zero());
        let at_conj = b.map_vars(&|v| ("q".into(), v == "p2"));
        assert_eq!(at_conj, RatExpr::new(Poly::one(), Poly::var("q").pow(2).scale(&q(4, 1))).unwrap());
    }

    #[test]
    fn airy_kernel() {
        let k = recursion_kernel(&CurveModel::airy(), "z", "p");
        let want = RatExpr::new(
            Poly::one(),
            (&Poly::var("z").pow(3) - &(&Poly::var("z") * &Poly::var("p").pow(2))).scale(&q(4, 1)),
        )
        .unwrap();
        assert_eq!(k, want);
        assert_eq!(k.substitute_negate("z"), -&k);
        assert_eq!(valuation(&k, "z"), Some(-1));
        let s = expand_local(&k, "z", 2).unwrap();
        assert_eq!(s.pole_order(), 1);
    }
}
