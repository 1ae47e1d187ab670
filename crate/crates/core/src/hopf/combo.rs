use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{parse_graph, TaggedGraph};

pub type Q = BigRational;

/// Parses `p`, `p/q` or a decimal-free integer into an exact rational.
pub fn parse_rational(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = || Error::Syntax {
        pos: 0,
        msg: format!("invalid rational `{t}`"),
    };
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Q::new(n, d))
}

pub(crate) fn q_text(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn write_sum<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Q)>,
) -> fmt::Result {
    let mut terms: Vec<(String, &Q)> = terms.collect();
    if terms.is_empty() {
        return f.write_str("zero");
    }
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    for (i, (body, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let a = c.abs();
        if a.is_one() {
            f.write_str(&body)?;
        } else {
            write!(f, "{}*{}", q_text(&a), body)?;
        }
    }
    Ok(())
}

/// A finite rational linear combination of graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Combo {
    terms: BTreeMap<TaggedGraph, Q>,
}

impl Combo {
    pub fn zero() -> Combo {
        Combo::default()
    }

    pub fn from_graph(g: TaggedGraph) -> Combo {
        Combo::term(g, Q::one())
    }

    pub fn term(g: TaggedGraph, c: Q) -> Combo {
        let mut out = Combo::zero();
        out.add_term(g, c);
        out
    }

    pub fn add_term(&mut self, g: TaggedGraph, c: Q) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(g.clone()).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_scaled(&mut self, other: &Combo, c: &Q) {
        for (g, v) in &other.terms {
            self.add_term(g.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Combo {
        let mut out = Combo::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &TaggedGraph) -> Q {
        self.terms.get(g).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TaggedGraph, &Q)> {
        self.terms.iter()
    }

    /// Terms sorted by rendered text.
    pub fn sorted_terms(&self) -> Vec<(&TaggedGraph, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(g, _)| g.render());
        v
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(g, c)| json!({ "coefficient": q_text(c), "graph": g.render() }))
                .collect(),
        )
    }
}

impl From<TaggedGraph> for Combo {
    fn from(g: TaggedGraph) -> Combo {
        Combo::from_graph(g)
    }
}

impl std::ops::Add<&Combo> for &Combo {
    type Output = Combo;
    fn add(self, rhs: &Combo) -> Combo {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl std::ops::Sub<&Combo> for &Combo {
    type Output = Combo;
    fn sub(self, rhs: &Combo) -> Combo {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

impl std::ops::Neg for &Combo {
    type Output = Combo;
    fn neg(self) -> Combo {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for Combo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms.iter().map(|(g, c)| (g.render(), c)))
    }
}

/// Parses `c*G + c*G - G ...`. Graph text never contains `+` or `-`, so
/// terms split on them directly.
pub fn parse_combo(text: &str) -> Result<Combo> {
    let t = text.trim();
    if t == "zero" {
        return Ok(Combo::zero());
    }
    let mut out = Combo::zero();
    let mut start = 0;
    let mut sign = Q::one();
    let bytes = t.as_bytes();
    let mut pieces = Vec::new();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'+' || b == b'-' {
            pieces.push((start, &t[start..i], sign.clone()));
            sign = if b == b'-' { -Q::one() } else { Q::one() };
            start = i + 1;
        }
    }
    pieces.push((start, &t[start..], sign));
    for (i, (pos, piece, sign)) in pieces.into_iter().enumerate() {
        if piece.trim().is_empty() {
            if i == 0 {
                continue;
            }
            return Err(Error::Syntax {
                pos,
                msg: "empty term".into(),
            });
        }
        let (coef, graph) = match piece.split_once('*') {
            Some((c, g)) => (parse_rational(c)?, g),
            None => (Q::one(), piece),
        };
        let g = parse_graph(graph).map_err(|e| match e {
            Error::Syntax { pos: p, msg } => Error::Syntax {
                pos: pos + p,
                msg,
            },
            other => other,
        })?;
        out.add_term(g, sign * coef);
    }
    Ok(out)
}

/// A finite rational combination of ordered pairs of graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorCombo {
    terms: BTreeMap<(TaggedGraph, TaggedGraph), Q>,
}

impl TensorCombo {
    pub fn zero() -> TensorCombo {
        TensorCombo::default()
    }

    pub fn add_term(&mut self, left: TaggedGraph, right: TaggedGraph, c: Q) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let v = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorCombo, c: &Q) {
        for ((l, r), v) in &other.terms {
            self.add_term(l.clone(), r.clone(), v * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, left: &TaggedGraph, right: &TaggedGraph) -> Q {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TaggedGraph, &TaggedGraph, &Q)> {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    /// Swaps the two factors.
    pub fn transpose(&self) -> TensorCombo {
        let mut out = TensorCombo::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(r.clone(), l.clone(), c.clone());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|((l, r), _)| (l.render(), r.render()));
        Value::Array(
            v.into_iter()
                .map(|((l, r), c)| {
                    json!({ "coefficient": q_text(c), "left": l.render(), "right": r.render() })
                })
                .collect(),
        )
    }
}

impl fmt::Display for TensorCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(
            f,
            self.terms
                .iter()
                .map(|((l, r), c)| (format!("{l} ⊗ {r}"), c)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn module_laws() {
        let a = parse_combo("<1 2> + 2*<2 1>").unwrap();
        let b = parse_combo("-<1 2> + 1/2*0").unwrap();
        let s = &a + &b;
        assert_eq!(s.coefficient(&parse_graph("<1 2>").unwrap()), q(0, 1));
        assert_eq!(s.len(), 2);
        assert!((&a - &a).is_zero());
        assert_eq!(&(&a + &b) + &s, &a + &(&b + &s));
        assert_eq!(a.scale(&q(0, 1)), Combo::zero());
    }

    #[test]
    fn display_and_parse_round_trip() {
        let c = parse_combo("<<1 2> 3> + <1 <2 3>> - 3/4*<_ _> | 1~2").unwrap();
        assert_eq!(c.to_string(), "<1 <2 3>> + <<1 2> 3> - 3/4*<_ _> | 1~2");
        assert_eq!(parse_combo(&c.to_string()).unwrap(), c);
        assert_eq!(Combo::zero().to_string(), "zero");
        assert_eq!(parse_combo("zero").unwrap(), Combo::zero());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert!(matches!(parse_rational("1/0"), Err(Error::DivisionByZero)));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_shape() {
        let c = parse_combo("2/3*<1 2>").unwrap();
        assert_eq!(c.to_json(), json!([{ "coefficient": "2/3", "graph": "<1 2>" }]));
    }
}
