use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::poly::{Poly, Q};
use super::ratexpr::RatExpr;
use crate::error::{Error, Result};

/// Truncated Laurent series in one variable with rational-expression
/// coefficients in the others. Coefficients are exact for every exponent
/// below `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSeries {
    var: String,
    terms: BTreeMap<i64, RatExpr>,
    order: i64,
}

impl LocalSeries {
    pub fn zero(var: &str, order: i64) -> LocalSeries {
        LocalSeries {
            var: var.to_string(),
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn from_terms(var: &str, terms: impl IntoIterator<Item = (i64, RatExpr)>, order: i64) -> LocalSeries {
        let mut s = LocalSeries::zero(var, order);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    fn add_term(&mut self, k: i64, c: RatExpr) {
        if k >= self.order || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                let sum = &*v + &c;
                if sum.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &RatExpr)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, k: i64) -> Result<RatExpr> {
        if k >= self.order {
            return Err(Error::InsufficientTruncation(self.order));
        }
        Ok(self.terms.get(&k).cloned().unwrap_or_default())
    }

    /// Lowest exponent with a non-zero coefficient; `order` when none is
    /// known.
    pub fn valuation(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(self.order)
    }

    /// Order of the pole at the origin (0 when there is none).
    pub fn pole_order(&self) -> i64 {
        (-self.valuation()).max(0)
    }

    pub fn truncate(&self, order: i64) -> LocalSeries {
        let order = order.min(self.order);
        LocalSeries {
            var: self.var.clone(),
            terms: self.terms.range(..order).map(|(k, v)| (*k, v.clone())).collect(),
            order,
        }
    }

    fn check_var(&self, other: &LocalSeries) {
        assert_eq!(self.var, other.var, "series in different variables");
    }

    pub fn add(&self, other: &LocalSeries) -> LocalSeries {
        self.check_var(other);
        let mut out = self.truncate(other.order);
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LocalSeries) -> LocalSeries {
        self.add(&other.scale(&RatExpr::constant(-Q::from_integer(1.into()))))
    }

    pub fn mul(&self, other: &LocalSeries) -> LocalSeries {
        self.check_var(other);
        let order = (self.order + other.valuation()).min(other.order + self.valuation());
        let mut out = LocalSeries::zero(&self.var, order);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a + b < order {
                    out.add_term(a + b, ca * cb);
                }
            }
        }
        out
    }

    /// Multiplies every coefficient by `c`, which must not involve the
    /// series variable.
    pub fn scale(&self, c: &RatExpr) -> LocalSeries {
        let mut out = LocalSeries::zero(&self.var, self.order);
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i64) -> LocalSeries {
        LocalSeries {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
            order: self.order + k,
        }
    }

    /// `var -> -var`.
    pub fn substitute_negate(&self) -> LocalSeries {
        LocalSeries {
            var: self.var.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, if k % 2 == 0 { v.clone() } else { -v }))
                .collect(),
            order: self.order,
        }
    }

    /// Term-wise derivative in the series variable.
    pub fn derivative(&self) -> LocalSeries {
        let mut out = LocalSeries::zero(&self.var, self.order - 1);
        for (k, v) in &self.terms {
            out.add_term(k - 1, v.scale(&Q::from_integer((*k).into())));
        }
        out
    }

    /// Coefficient of `var^-1`.
    pub fn residue(&self) -> Result<RatExpr> {
        self.coefficient(-1)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "var": self.var,
            "order": self.order,
            "terms": self.terms.iter().map(|(k, v)| json!([k, v.to_json()])).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for LocalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.terms {
            write!(f, "({v})*{}^{k} + ", self.var)?;
        }
        write!(f, "O({}^{})", self.var, self.order)
    }
}

/// Valuation of `e` in `var`; `None` for zero.
pub fn valuation(e: &RatExpr, var: &str) -> Option<i64> {
    let n = e.num().valuation(var)?;
    let d = e.den().valuation(var).expect("non-zero denominator");
    Some((n - d) as i64)
}

/// Laurent expansion of `e` around `var = 0`, exact below `order`.
pub fn expand_local(e: &RatExpr, var: &str, order: i64) -> Result<LocalSeries> {
    let num = e.num().split(var);
    let den = e.den().split(var);
    let Some((&m, d0)) = den.iter().next() else {
        return Err(Error::DivisionByZero);
    };
    let Some(&n0) = num.keys().next() else {
        return Ok(LocalSeries::zero(var, order));
    };
    let m = m as i64;
    let n0 = n0 as i64;
    let count = order + m - n0;
    let mut out = LocalSeries::zero(var, order);
    if count <= 0 {
        return Ok(out);
    }
    let inv0 = RatExpr::new(Poly::one(), d0.clone())?;
    let d: Vec<RatExpr> = (0..count)
        .map(|j| {
            den.get(&((m + j) as i32))
                .map(|p| RatExpr::from(p.clone()))
                .unwrap_or_default()
        })
        .collect();
    let mut inv: Vec<RatExpr> = vec![inv0.clone()];
    for k in 1..count as usize {
        let mut acc = RatExpr::zero();
        for j in 1..=k {
            if d[j].is_zero() || inv[k - j].is_zero() {
                continue;
            }
            acc = &acc + &(&d[j] * &inv[k - j]);
        }
        inv.push(-&(&inv0 * &acc));
    }
    for (i, ni) in &num {
        let ni = RatExpr::from(ni.clone());
        for (k, ik) in inv.iter().enumerate() {
            let e = *i as i64 + k as i64 - m;
            if e >= order {
                break;
            }
            if !ik.is_zero() {
                out.add_term(e, &ni * ik);
            }
        }
    }
    Ok(out)
}

/// `Res_{var=0}` of a product, expanding each factor only as far as the
/// pole orders of the others require.
pub fn residue_of_product(factors: &[RatExpr], var: &str) -> Result<RatExpr> {
    let vals: Vec<i64> = match factors.iter().map(|f| valuation(f, var)).collect::<Option<Vec<_>>>() {
        Some(v) => v,
        None => return Ok(RatExpr::zero()),
    };
    let total: i64 = vals.iter().sum();
    let mut prod: Option<LocalSeries> = None;
    for (f, v) in factors.iter().zip(&vals) {
        let s = expand_local(f, var, -(total - v))?;
        prod = Some(match prod {
            None => s,
            Some(p) => p.mul(&s),
        });
    }
    prod.expect("at least one factor").residue()
}
