use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

pub type Q = BigRational;

/// Product of variable powers; exponents may be negative. Sorted by
/// variable name, zero exponents absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(String, i32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(name: &str, exp: i32) -> Monomial {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(name.to_string(), exp)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, i32)>) -> Monomial {
        let mut m: BTreeMap<String, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *m.entry(v).or_default() += e;
        }
        Monomial(m.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, var: &str) -> i32 {
        self.0.iter().find(|(v, _)| v == var).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(String, i32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    if a.1 + b.1 != 0 {
                        out.push((a.0.clone(), a.1 + b.1));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(a.clone());
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), -e)).collect())
    }

    /// The monomial with `var` removed, and the exponent it had.
    pub fn split(&self, var: &str) -> (Monomial, i32) {
        let e = self.exponent(var);
        (
            Monomial(self.0.iter().filter(|(v, _)| v != var).cloned().collect()),
            e,
        )
    }

    fn rename(&self, from: &str, to: &str) -> Monomial {
        Monomial::from_pairs(
            self.0
                .iter()
                .map(|(v, e)| (if v == from { to.to_string() } else { v.clone() }, *e)),
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A Laurent polynomial with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Poly {
        Poly::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Poly {
        Poly::constant(Q::from_integer(c.into()))
    }

    pub fn var(name: &str) -> Poly {
        Poly::term(Monomial::var(name, 1), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// The single term when the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Q)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn vars(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(x, _)| x.clone()))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Smallest exponent of `var`; `None` for the zero polynomial.
    pub fn valuation(&self, var: &str) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(var)).min()
    }

    /// Largest exponent of `var`; `None` for the zero polynomial.
    pub fn max_degree(&self, var: &str) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    /// Coefficients of the powers of `var`.
    pub fn split(&self, var: &str) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.split(var);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// `var -> factor * var`.
    pub fn scale_var(&self, var: &str, factor: &Q) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let f = if e >= 0 {
                num_traits::pow(factor.clone(), e as usize)
            } else {
                num_traits::pow(factor.recip(), (-e) as usize)
            };
            out.add_term(m.clone(), c * f);
        }
        out
    }

    pub fn rename(&self, from: &str, to: &str) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.rename(from, to), c.clone());
        }
        out
    }

    /// Simultaneous renaming: each variable `v` becomes `f(v).0`, negated
    /// when `f(v).1` is set. Renamed variables may merge.
    pub fn map_vars(&self, f: &impl Fn(&str) -> (String, bool)) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut odd = false;
            let pairs: Vec<(String, i32)> = m
                .0
                .iter()
                .map(|(v, e)| {
                    let (w, neg) = f(v);
                    odd ^= neg && e % 2 != 0;
                    (w, *e)
                })
                .collect();
            out.add_term(Monomial::from_pairs(pairs), if odd { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Substitutes polynomials for variables; each replaced variable must
    /// appear with non-negative exponents only, unless its replacement is a
    /// monomial.
    pub fn substitute(&self, subs: &BTreeMap<String, Poly>) -> Option<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::one();
            let mut kept = Vec::new();
            for (v, e) in &m.0 {
                match subs.get(v) {
                    None => kept.push((v.clone(), *e)),
                    Some(p) if *e >= 0 => t = &t * &p.pow(*e as u32),
                    Some(p) => {
                        let (pm, pc) = p.as_monomial()?;
                        let inv = Poly::term(pm.inverse(), pc.recip());
                        t = &t * &inv.pow((-e) as u32);
                    }
                }
            }
            let t = t.mul_monomial(&Monomial::from_pairs(kept), c);
            out = &out + &t;
        }
        Some(out)
    }

    /// Leading term in monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    /// Monomial gcd-like factor: each variable raised to its minimum
    /// exponent over the terms.
    pub fn min_monomial(&self) -> Monomial {
        let vars = self.vars();
        Monomial::from_pairs(vars.into_iter().map(|v| {
            let e = self.valuation(&v).unwrap_or(0);
            (v, e)
        }))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let mut vars = Map::new();
                    for (v, e) in &m.0 {
                        vars.insert(v.clone(), json!(e));
                    }
                    json!([crate::hopf::q_text(c), Value::Object(vars)])
                })
                .collect(),
        )
    }
}

impl std::ops::Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let coef = crate::hopf::q_text(&a);
            if m.is_one() {
                f.write_str(&coef)?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coef}*{m}")?;
            }
        }
        Ok(())
    }
}
