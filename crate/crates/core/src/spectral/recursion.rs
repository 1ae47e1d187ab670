use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use super::curve::{bergmann, recursion_kernel, CurveModel};
use crate::error::{Error, Result};
use crate::laurent::{residue_of_product, RatExpr};

/// Largest `2g + n` accepted by the evaluators.
pub const MAX_EULER: usize = 8;

/// Residue variable of the recursion.
pub(crate) const Q_VAR: &str = "q";

pub(crate) fn point(i: usize) -> String {
    format!("z{i}")
}

/// A correlation function `W_n^g`, as the coefficient of `dz0 ... dz(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correlator {
    pub genus: usize,
    pub vars: Vec<String>,
    pub value: RatExpr,
}

impl Correlator {
    pub fn points(&self) -> usize {
        self.vars.len()
    }

    /// Value with variable `vars[i]` replaced by `vars[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> RatExpr {
        let vars = &self.vars;
        self.value.map_vars(&|v| {
            let i = vars.iter().position(|w| w == v);
            (i.map_or(v.to_string(), |i| vars[perm[i]].clone()), false)
        })
    }

    /// Invariance under every permutation of the variables, checked on
    /// adjacent transpositions.
    pub fn is_symmetric(&self) -> bool {
        let n = self.points();
        (0..n.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(i, i + 1);
            self.permuted(&perm) == self.value
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "genus": self.genus,
            "points": self.points(),
            "vars": self.vars,
            "value": self.value.to_json(),
            "text": self.value.to_string(),
        })
    }
}

impl fmt::Display for Correlator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W_{}^{}({}) = {}", self.points(), self.genus, self.vars.join(","), self.value)
    }
}

pub(crate) fn check_bounds(g: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Usage("a correlator needs at least one point".into()));
    }
    if 2 * g + n > MAX_EULER {
        return Err(Error::ResourceLimit {
            what: format!("correlator W_{n}^{g}"),
            size: (2 * g + n) as u128,
            limit: MAX_EULER as u128,
        });
    }
    Ok(())
}

/// Memoized evaluator of the recursion on one curve. Values are stored in
/// the canonical variables `z0..z(n-1)`.
pub struct Recursion {
    curve: CurveModel,
    memo: RefCell<HashMap<(usize, usize), RatExpr>>,
}

impl Recursion {
    pub fn new(curve: CurveModel) -> Recursion {
        Recursion {
            curve,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn correlator(&self, g: usize, n: usize) -> Result<Correlator> {
        check_bounds(g, n)?;
        Ok(Correlator {
            genus: g,
            vars: (0..n).map(point).collect(),
            value: self.value(g, n)?,
        })
    }

    /// `W_n^g(z0..z(n-1))`.
    pub fn value(&self, g: usize, n: usize) -> Result<RatExpr> {
        if let Some(v) = self.memo.borrow().get(&(g, n)) {
            return Ok(v.clone());
        }
        let v = self.compute(g, n)?;
        self.memo.borrow_mut().insert((g, n), v.clone());
        Ok(v)
    }

    /// `W_n^g` with its first variable at `first` (negated when `neg`) and
    /// the rest renamed to `rest`.
    fn placed(&self, g: usize, first: (&str, bool), rest: &[&String]) -> Result<RatExpr> {
        let v = self.value(g, rest.len() + 1)?;
        Ok(v.map_vars(&|name| {
            let i: usize = name[1..].parse().expect("canonical variable");
            if i == 0 {
                (first.0.to_string(), first.1)
            } else {
                (rest[i - 1].to_string(), false)
            }
        }))
    }

    fn compute(&self, g: usize, n: usize) -> Result<RatExpr> {
        check_bounds(g, n)?;
        match (g, n) {
            (0, 1) => return Ok(RatExpr::zero()),
            (0, 2) => return bergmann("z0", "z1"),
            _ => {}
        }
        let mut total = self.handle_term(g, n)?;
        for m in 0..=g {
            for i in 0..n {
                total = &total + &self.split_term(g, n, m, i)?;
            }
        }
        Ok(total)
    }

    /// Part of `W_n^g` from `W^m(q, J) W^{g-m}(-q, K - J)` summed over
    /// `|J| = i`, with `K = {z1..z(n-1)}`.
    pub(crate) fn split_term(&self, g: usize, n: usize, m: usize, i: usize) -> Result<RatExpr> {
        let k = n - 1;
        // one factor would be W_1^0 = 0
        if m > g || i > k || (m, i) == (0, 0) || (m, i) == (g, k) {
            return Ok(RatExpr::zero());
        }
        let others: Vec<String> = (1..n).map(point).collect();
        let kernel = recursion_kernel(&self.curve, Q_VAR, "z0");
        let mut total = RatExpr::zero();
        for mask in 0u32..(1 << k) {
            if mask.count_ones() as usize != i {
                continue;
            }
            let (inside, outside) = split_mask(&others, mask);
            let a = self.placed(m, (Q_VAR, false), &inside)?;
            // the conjugate slot carries the -1 of dq' = -dq
            let b = -&self.placed(g - m, (Q_VAR, true), &outside)?;
            if a.is_zero() || b.is_zero() {
                continue;
            }
            total = &total + &residue_of_product(&[kernel.clone(), a, b], Q_VAR)?;
        }
        Ok(total)
    }

    /// Part of `W_n^g` from `W_{n+1}^{g-1}(q, -q, z1..z(n-1))`.
    pub(crate) fn handle_term(&self, g: usize, n: usize) -> Result<RatExpr> {
        if g == 0 {
            return Ok(RatExpr::zero());
        }
        let kernel = recursion_kernel(&self.curve, Q_VAR, "z0");
        let v = self.value(g - 1, n + 1)?;
        let h = -&v.map_vars(&|name| {
            let i: usize = name[1..].parse().expect("canonical variable");
            match i {
                0 => (Q_VAR.to_string(), false),
                1 => (Q_VAR.to_string(), true),
                _ => (point(i - 1), false),
            }
        });
        if h.is_zero() {
            return Ok(h);
        }
        residue_of_product(&[kernel, h], Q_VAR)
    }
}

/// Items whose bit is set in `mask`, and the rest.
fn split_mask(items: &[String], mask: u32) -> (Vec<&String>, Vec<&String>) {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (i, x) in items.iter().enumerate() {
        if mask & (1 << i) != 0 {
            inside.push(x);
        } else {
            outside.push(x);
        }
    }
    (inside, outside)
}

/// `W_n^g` evaluated by the recursion.
pub fn w_direct(curve: &CurveModel, g: usize, n: usize) -> Result<Correlator> {
    Recursion::new(curve.clone()).correlator(g, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::Q;
    use crate::laurent::{Monomial, Poly};

    fn monomial(c: Q, exps: &[(usize, i32)]) -> RatExpr {
        let m = Monomial::from_pairs(exps.iter().map(|(i, e)| (point(*i), *e)));
        RatExpr::from(Poly::term(m, c))
    }

    #[test]
    fn base_cases() {
        let r = Recursion::new(CurveModel::airy());
        assert!(r.value(0, 1).unwrap().is_zero());
        assert_eq!(r.value(0, 2).unwrap(), bergmann("z0", "z1").unwrap());
    }

    #[test]
    fn airy_three_point() {
        let w = w_direct(&CurveModel::airy(), 0, 3).unwrap();
        let want = monomial(Q::new(1.into(), 2.into()), &[(0, -2), (1, -2), (2, -2)]);
        assert_eq!(w.value, want);
    }

    #[test]
    fn airy_one_point_genus_one() {
        let w = w_direct(&CurveModel::airy(), 1, 1).unwrap();
        assert_eq!(w.value, monomial(Q::new(1.into(), 16.into()), &[(0, -4)]));
    }

    #[test]
    fn airy_correlators_are_symmetric_with_even_poles() {
        let r = Recursion::new(CurveModel::airy());
        for (g, n) in [(0, 3), (0, 4), (1, 2), (1, 3)] {
            let w = r.correlator(g, n).unwrap();
            assert!(w.is_symmetric(), "W_{n}^{g}");
            let p = w.value.as_poly().expect("Laurent polynomial");
            for (m, _) in p.terms() {
                for (_, e) in m.factors() {
                    assert!(*e <= -2 && e % 2 == 0, "W_{n}^{g}: {m}");
                }
            }
        }
    }

    #[test]
    fn deformed_curve_is_symmetric() {
        let c = CurveModel::parse("y: 1,1/2").unwrap();
        let r = Recursion::new(c);
        assert!(r.correlator(0, 4).unwrap().is_symmetric());
        assert!(r.correlator(1, 2).unwrap().is_symmetric());
    }

    #[test]
    fn bounds() {
        assert!(matches!(w_direct(&CurveModel::airy(), 4, 1), Err(Error::ResourceLimit { .. })));
        assert!(w_direct(&CurveModel::airy(), 0, 0).is_err());
    }
}
