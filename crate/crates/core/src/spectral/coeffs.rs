use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::curve::{recursion_kernel, CurveModel};
use super::phi::phi_eval;
use super::recursion::{point, Recursion, Q_VAR};
use crate::error::{Error, Result};
use crate::graph::eo::{eo_weighted, recursion_term_count};
use crate::graph::{catalan, Limits, TaggedGraph};
use crate::hopf::{coproduct_graph, q_text, Q};
use crate::laurent::{residue_of_product, RatExpr};

/// `s_1 = 1`, `s_m = 2(3m - 4) s_{m-1} + sum_{n=1}^{m-1} s_n s_{m-n}`.
pub fn s_sequence(m: usize) -> BigInt {
    assert!(m >= 1, "s_m starts at m = 1");
    let mut s: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for j in 2..=m {
        let mut v = BigInt::from(2 * (3 * j as i64 - 4)) * &s[j - 1];
        for n in 1..j {
            v += &s[n] * &s[j - n];
        }
        s.push(v);
    }
    s[m].clone()
}

/// `x (x - 1) ... (x - i + 1) / i!` for rational `x`.
pub fn binomial_q(x: &Q, i: usize) -> Q {
    let mut c = Q::one();
    for j in 0..i {
        c = c * (x - Q::from_integer(j.into())) / Q::from_integer((j + 1).into());
    }
    c
}

fn int(n: impl Into<BigInt>) -> Q {
    Q::from_integer(n.into())
}

fn binom(n: usize, k: usize) -> Q {
    binomial_q(&int(n as i64), k)
}

fn catalan_q(n: usize) -> Q {
    Q::from_integer(BigInt::from(catalan(n as u32)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffMode {
    /// Closed forms as stated in the propositions.
    Statement,
    /// Closed forms as they come out of the counting arguments.
    Proof,
    /// Ratios counted by enumeration.
    Brute,
}

impl CoeffMode {
    pub fn parse(s: &str) -> Result<CoeffMode> {
        match s {
            "statement" => Ok(CoeffMode::Statement),
            "proof" => Ok(CoeffMode::Proof),
            "brute" => Ok(CoeffMode::Brute),
            _ => Err(Error::Usage(format!("unknown coefficient mode `{s}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CoeffMode::Statement => "formula-statement",
            CoeffMode::Proof => "formula-proof",
            CoeffMode::Brute => "brute-forced",
        }
    }
}

/// `A { m, i }`: left factor of genus `m` with `i` of the `k` labels.
/// `B`: the handle terms produced by the straddle rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffKind {
    A { m: usize, i: usize },
    B,
}

impl fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffKind::A { m, i } => write!(f, "a[m={m},i={i}]"),
            CoeffKind::B => write!(f, "b"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffEntry {
    pub kind: CoeffKind,
    /// `None` when the closed form is undefined or nothing was counted.
    pub value: Option<Q>,
    pub provenance: CoeffMode,
    /// Recursion-side term count (brute force only).
    pub recursion_count: Option<BigUint>,
    /// Weighted tagged tensor-term count in the summed reduced coproduct
    /// (brute force only).
    pub tagged_count: Option<Q>,
    pub note: Option<String>,
}

impl CoeffEntry {
    fn formula(kind: CoeffKind, mode: CoeffMode, value: std::result::Result<Q, &str>) -> CoeffEntry {
        let (value, note) = match value {
            Ok(v) => (Some(v), None),
            Err(n) => (None, Some(n.to_string())),
        };
        CoeffEntry {
            kind,
            value,
            provenance: mode,
            recursion_count: None,
            tagged_count: None,
            note,
        }
    }

    /// Whether `1/value` is an integer; `None` when there is no value.
    pub fn reciprocal_is_integer(&self) -> Option<bool> {
        let v = self.value.as_ref()?;
        Some(!v.is_zero() && v.recip().is_integer())
    }

    pub fn to_json(&self) -> Value {
        let (m, i) = match self.kind {
            CoeffKind::A { m, i } => (Some(m), Some(i)),
            CoeffKind::B => (None, None),
        };
        json!({
            "kind": match self.kind { CoeffKind::A { .. } => "a", CoeffKind::B => "b" },
            "m": m,
            "i": i,
            "value": self.value.as_ref().map(q_text),
            "provenance": self.provenance.name(),
            "recursion_count": self.recursion_count.as_ref().map(|c| c.to_string()),
            "tagged_count": self.tagged_count.as_ref().map(q_text),
            "reciprocal_integer": self.reciprocal_is_integer(),
            "note": self.note,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub genus: usize,
    pub k: usize,
    pub mode: CoeffMode,
    pub entries: Vec<CoeffEntry>,
}

impl CoeffTable {
    pub fn get(&self, kind: CoeffKind) -> Option<&CoeffEntry> {
        self.entries.iter().find(|e| e.kind == kind)
    }

    pub fn value(&self, kind: CoeffKind) -> Option<&Q> {
        self.get(kind)?.value.as_ref()
    }

    /// Brute-forced entries whose reciprocal is not an integer.
    pub fn integrality_violations(&self) -> Vec<&CoeffEntry> {
        self.entries
            .iter()
            .filter(|e| e.provenance == CoeffMode::Brute && e.reciprocal_is_integer() == Some(false))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "genus": self.genus,
            "k": self.k,
            "mode": self.mode.name(),
            "entries": self.entries.iter().map(CoeffEntry::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CoeffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "g={} k={} ({})", self.genus, self.k, self.mode.name())?;
        for e in &self.entries {
            let v = e.value.as_ref().map_or("undefined".to_string(), q_text);
            write!(f, "  {} = {v}", e.kind)?;
            if let (Some(r), Some(t)) = (&e.recursion_count, &e.tagged_count) {
                write!(f, "  ({r} recursion terms / {} tagged terms)", q_text(t))?;
            }
            if let Some(n) = &e.note {
                write!(f, "  [{n}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Types `(m, i)` that can occur: everything but an empty side.
fn split_types(g: usize, k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for m in 0..=g {
        for i in 0..=k {
            if (m, i) != (0, 0) && (m, i) != (g, k) {
                out.push((m, i));
            }
        }
    }
    out
}

fn s_q(m: usize) -> Q {
    Q::from_integer(s_sequence(m))
}

/// Genus-0 coefficient `a_i`.
fn a_genus0(k: usize, i: usize, mode: CoeffMode) -> std::result::Result<Q, &'static str> {
    if i == 0 || i >= k {
        return Err("outside 1 <= i <= k-1");
    }
    let first = match mode {
        CoeffMode::Statement => catalan_q(i),
        _ => catalan_q(i - 1),
    };
    Ok(first * catalan_q(k - i - 1) / (catalan_q(k - 1) * binom(k, i)))
}

/// Higher-genus coefficient `a_i^m`; the statement and the last line of
/// the proof agree.
fn a_higher(g: usize, k: usize, m: usize, i: usize) -> std::result::Result<Q, &'static str> {
    if m == 0 || m == g {
        return Err("needs s_0, which is not defined");
    }
    let three_halves = Q::new(3.into(), 2.into());
    let bm = |mm: usize, ii: usize| binomial_q(&(&three_halves * int(mm as i64 - 1) + int(ii as i64)), ii);
    let num = s_q(m) * s_q(g - m) * bm(m, i) * bm(g - m, k - i);
    let den = s_q(g) * binom(k, i) * binom(g, m) * bm(g, k);
    Ok(num / den)
}

fn b_formula(g: usize, k: usize, mode: CoeffMode) -> std::result::Result<Q, &'static str> {
    if g == 0 {
        return Err("no handle term in genus 0");
    }
    let den = int(BigInt::from(2).pow(k as u32)) * (int(BigInt::from(4).pow(g as u32)) - int(BigInt::from(2).pow(g as u32)));
    let num = match mode {
        CoeffMode::Statement => int(g as i64),
        _ => Q::one(),
    };
    Ok(num / den)
}

/// A weighted tensor term `left ⊗ right`.
pub type SplitTerm = (TaggedGraph, TaggedGraph, Q);

/// Reduced coproduct summed over the EO graphs with their weights, sorted
/// by term type.
pub struct CoproductSplit {
    pub by_type: BTreeMap<(usize, usize), Vec<SplitTerm>>,
    pub handles: Vec<(TaggedGraph, Q)>,
    /// Label given to the glued end in handle terms.
    pub fresh: String,
}

impl CoproductSplit {
    /// Weighted number of terms of one kind.
    pub fn count(&self, kind: CoeffKind) -> Q {
        match kind {
            CoeffKind::A { m, i } => self.by_type.get(&(m, i)).map_or(Q::zero(), |v| v.iter().map(|t| &t.2).sum()),
            CoeffKind::B => self.handles.iter().map(|t| &t.1).sum(),
        }
    }
}

fn check_size(g: usize, k: usize, limits: &Limits) -> Result<()> {
    if g > 2 || k > 5 {
        return Err(Error::ResourceLimit {
            what: format!("coefficient table g={g} k={k}"),
            size: (2 * g + k) as u128,
            limit: 9,
        });
    }
    let terms = recursion_term_count(g, k) * BigUint::from(1u32 << (k + 2 * g));
    limits.check("coproduct classification", terms.to_u128().unwrap_or(u128::MAX))
}

/// Sums `w(G) delta'(G)` over the weighted EO graphs for `W_{k+1}^g` and
/// sorts the terms.
pub fn coproduct_split(g: usize, k: usize, limits: &Limits) -> Result<CoproductSplit> {
    check_size(g, k, limits)?;
    let fresh = (k + 1).to_string();
    let mut by_type: BTreeMap<(usize, usize), BTreeMap<(TaggedGraph, TaggedGraph), Q>> = BTreeMap::new();
    let mut handles: BTreeMap<TaggedGraph, Q> = BTreeMap::new();
    for (graph, w) in eo_weighted(k, g)? {
        for (l, r, c) in coproduct_graph(&graph)?.iter() {
            let c = &(c * &w);
            if l.is_empty() || (r.is_empty() && l == &graph) {
                continue;
            }
            if r.is_empty() {
                *handles.entry(l.clone()).or_insert_with(Q::zero) += c;
                continue;
            }
            let key = (l.loop_count(), l.free_labels().len());
            *by_type
                .entry(key)
                .or_default()
                .entry((l.clone(), r.clone()))
                .or_insert_with(Q::zero) += c;
        }
    }
    Ok(CoproductSplit {
        by_type: by_type
            .into_iter()
            .map(|(t, v)| (t, v.into_iter().map(|((l, r), c)| (l, r, c)).collect()))
            .collect(),
        handles: handles.into_iter().collect(),
        fresh,
    })
}

/// Coefficient table for `W_{k+1}^g` in the given mode.
pub fn coeff_table(g: usize, k: usize, mode: CoeffMode, limits: &Limits) -> Result<CoeffTable> {
    let mut entries = Vec::new();
    if mode == CoeffMode::Brute {
        let split = coproduct_split(g, k, limits)?;
        let n = |gg: usize, kk: usize| recursion_term_count(gg, kk);
        let mut kinds: Vec<(CoeffKind, BigUint)> = split_types(g, k)
            .into_iter()
            .map(|(m, i)| {
                let r = binom(k, i).to_integer().to_biguint().expect("binomial") * n(m, i) * n(g - m, k - i);
                (CoeffKind::A { m, i }, r)
            })
            .collect();
        if g > 0 {
            kinds.push((CoeffKind::B, n(g - 1, k + 1)));
        }
        for (kind, r) in kinds {
            let t = split.count(kind);
            if r.is_zero() && t.is_zero() {
                continue;
            }
            let (value, note) = if t.is_zero() {
                (None, Some("no tagged terms of this type".to_string()))
            } else {
                (Some(Q::from_integer(BigInt::from(r.clone())) / &t), None)
            };
            entries.push(CoeffEntry {
                kind,
                value,
                provenance: mode,
                recursion_count: Some(r),
                tagged_count: Some(t),
                note,
            });
        }
    } else {
        check_size(g, k, limits)?;
        for (m, i) in split_types(g, k) {
            let v = if g == 0 { a_genus0(k, i, mode) } else { a_higher(g, k, m, i) };
            entries.push(CoeffEntry::formula(CoeffKind::A { m, i }, mode, v));
        }
        if g > 0 {
            entries.push(CoeffEntry::formula(CoeffKind::B, mode, b_formula(g, k, mode)));
        }
    }
    Ok(CoeffTable { genus: g, k, mode, entries })
}

/// Outcome of checking `phi(sum a T (x) T' + b T_handle) = W_{k+1}^g`.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub genus: usize,
    pub k: usize,
    pub table: CoeffTable,
    pub parts: Vec<IdentityPart>,
    pub lhs: RatExpr,
    pub rhs: RatExpr,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn to_json(&self) -> Value {
        json!({
            "genus": self.genus,
            "k": self.k,
            "holds": self.holds(),
            "table": self.table.to_json(),
            "parts": self.parts.iter().map(IdentityPart::to_json).collect::<Vec<_>>(),
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "difference": (&self.lhs - &self.rhs).to_string(),
        })
    }
}

/// One term type of the identity.
#[derive(Clone, Debug)]
pub struct IdentityPart {
    pub kind: CoeffKind,
    /// `phi` of the tagged terms of this type, before the coefficient.
    pub tagged: RatExpr,
    /// The tagged side times the brute-forced coefficient.
    pub weighted: RatExpr,
    /// The matching contribution to the recursion.
    pub recursion: RatExpr,
}

impl IdentityPart {
    pub fn holds(&self) -> bool {
        self.weighted == self.recursion
    }

    /// The constant `c` with `c * tagged = recursion`, if there is one.
    pub fn implied_coefficient(&self) -> Option<Q> {
        if self.tagged.is_zero() {
            return self.recursion.is_zero().then(Q::zero);
        }
        let (lead_t, ct) = self.tagged.num().leading()?;
        let c = self.recursion.num().coefficient(lead_t) / ct;
        (self.tagged.scale(&c) == self.recursion).then_some(c)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.to_string(),
            "equal": self.holds(),
            "implied_coefficient": self.implied_coefficient().as_ref().map(q_text),
            "tagged_side": self.weighted.to_string(),
            "recursion_side": self.recursion.to_string(),
        })
    }
}

struct PhiCache<'a> {
    curve: &'a CurveModel,
    fresh: String,
    memo: HashMap<TaggedGraph, RatExpr>,
}

impl PhiCache<'_> {
    /// `phi` rooted at `q`; the fresh label sits at `-q`, and a conjugate
    /// point carries `-1`.
    fn at_q(&mut self, g: &TaggedGraph) -> Result<RatExpr> {
        if let Some(v) = self.memo.get(g) {
            return Ok(v.clone());
        }
        let mut vars = BTreeMap::new();
        for l in g.free_labels() {
            let v = if l == self.fresh {
                "_fresh".to_string()
            } else {
                point(l.parse().map_err(|_| Error::LabelMismatch(l.to_string()))?)
            };
            vars.insert(l.to_string(), v);
        }
        let mut v = phi_eval(self.curve, g, Q_VAR, &vars)?.value;
        if vars.values().any(|v| v == "_fresh") {
            v = -&v.map_vars(&|name| {
                if name == "_fresh" {
                    (Q_VAR.to_string(), true)
                } else {
                    (name.to_string(), false)
                }
            });
        }
        self.memo.insert(g.clone(), v.clone());
        Ok(v)
    }
}

/// Evaluates the coproduct side with brute-forced coefficients and
/// compares it with the recursion.
pub fn verify_coproduct_identity(curve: &CurveModel, g: usize, k: usize, limits: &Limits) -> Result<IdentityReport> {
    let table = coeff_table(g, k, CoeffMode::Brute, limits)?;
    let split = coproduct_split(g, k, limits)?;
    let rec = Recursion::new(curve.clone());
    let n = k + 1;
    let kernel = recursion_kernel(curve, Q_VAR, "z0");
    let mut cache = PhiCache {
        curve,
        fresh: split.fresh.clone(),
        memo: HashMap::new(),
    };
    let mut parts = Vec::new();
    let mut lhs = RatExpr::zero();
    for entry in &table.entries {
        let a = entry.value.clone().unwrap_or_else(Q::zero);
        let mut tagged = RatExpr::zero();
        let recursion = match entry.kind {
            CoeffKind::A { m, i } => {
                for (l, r, c) in split.by_type.get(&(m, i)).into_iter().flatten() {
                    let left = cache.at_q(l)?;
                    let right = -&cache.at_q(r)?.substitute_negate(Q_VAR);
                    let t = residue_of_product(&[kernel.clone(), left, right], Q_VAR)?;
                    tagged = &tagged + &t.scale(c);
                }
                rec.split_term(g, n, m, i)?
            }
            CoeffKind::B => {
                for (h, c) in &split.handles {
                    let t = residue_of_product(&[kernel.clone(), cache.at_q(h)?], Q_VAR)?;
                    tagged = &tagged + &t.scale(c);
                }
                rec.handle_term(g, n)?
            }
        };
        let weighted = tagged.scale(&a);
        lhs = &lhs + &weighted;
        parts.push(IdentityPart {
            kind: entry.kind,
            tagged,
            weighted,
            recursion,
        });
    }
    Ok(IdentityReport {
        genus: g,
        k,
        table,
        parts,
        lhs,
        rhs: rec.value(g, n)?,
    })
}

/// Verdict on one statement-versus-proof discrepancy.
#[derive(Clone, Debug)]
pub struct AmbiguityVerdict {
    pub question: String,
    pub statement: Option<Q>,
    pub proof: Option<Q>,
    pub brute: Option<Q>,
    pub winner: &'static str,
}

impl AmbiguityVerdict {
    fn new(question: String, statement: Option<Q>, proof: Option<Q>, brute: Option<Q>) -> AmbiguityVerdict {
        let s = brute.is_some() && statement == brute;
        let p = brute.is_some() && proof == brute;
        let winner = match (s, p) {
            (true, true) => "both",
            (true, false) => "statement",
            (false, true) => "proof",
            (false, false) => "neither",
        };
        AmbiguityVerdict {
            question,
            statement,
            proof,
            brute,
            winner,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "question": self.question,
            "statement": self.statement.as_ref().map(q_text),
            "proof": self.proof.as_ref().map(q_text),
            "brute": self.brute.as_ref().map(q_text),
            "winner": self.winner,
        })
    }
}

impl fmt::Display for AmbiguityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |v: &Option<Q>| v.as_ref().map_or("undefined".to_string(), q_text);
        write!(
            f,
            "{}: statement {}, proof {}, brute force {} -> {}",
            self.question,
            t(&self.statement),
            t(&self.proof),
            t(&self.brute),
            self.winner
        )
    }
}

fn verdict(g: usize, k: usize, kind: CoeffKind, question: String, limits: &Limits) -> Result<AmbiguityVerdict> {
    let get = |mode| -> Result<Option<Q>> { Ok(coeff_table(g, k, mode, limits)?.value(kind).cloned()) };
    Ok(AmbiguityVerdict::new(
        question,
        get(CoeffMode::Statement)?,
        get(CoeffMode::Proof)?,
        get(CoeffMode::Brute)?,
    ))
}

/// Genus 0, `k = 4`, `i = 2`: `C_i` or `C_{i-1}` in `a_i`.
pub fn decide_catalan_index(limits: &Limits) -> Result<AmbiguityVerdict> {
    verdict(0, 4, CoeffKind::A { m: 0, i: 2 }, "a_2 at g=0, k=4".into(), limits)
}

/// Genus 2, `k = 0`: the factor `g` in `b`.
pub fn decide_handle_factor(limits: &Limits) -> Result<AmbiguityVerdict> {
    verdict(2, 0, CoeffKind::B, "b at g=2, k=0".into(), limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn s_values() {
        let s: Vec<i64> = (1..=4).map(|m| s_sequence(m).try_into().unwrap()).collect();
        assert_eq!(s, vec![1, 5, 60, 1105]);
    }

    #[test]
    fn s_counts_one_point_graphs() {
        for g in 1..=3 {
            assert_eq!(BigInt::from(recursion_term_count(g, 0)), s_sequence(g));
        }
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(binomial_q(&int(5), 2), int(10));
        assert_eq!(binomial_q(&q(3, 2), 2), q(3, 8));
        assert_eq!(binomial_q(&q(1, 2), 0), int(1));
    }

    #[test]
    fn formula_values() {
        let l = Limits::default();
        for mode in [CoeffMode::Statement, CoeffMode::Proof] {
            let t = coeff_table(0, 2, mode, &l).unwrap();
            assert_eq!(t.value(CoeffKind::A { m: 0, i: 1 }), Some(&q(1, 2)));
        }
        let s = coeff_table(0, 4, CoeffMode::Statement, &l).unwrap();
        let p = coeff_table(0, 4, CoeffMode::Proof, &l).unwrap();
        assert_eq!(s.value(CoeffKind::A { m: 0, i: 2 }), Some(&q(1, 15)));
        assert_eq!(p.value(CoeffKind::A { m: 0, i: 2 }), Some(&q(1, 30)));
        let b = coeff_table(1, 1, CoeffMode::Statement, &l).unwrap();
        assert_eq!(b.value(CoeffKind::B), Some(&q(1, 4)));
        let b = coeff_table(2, 0, CoeffMode::Proof, &l).unwrap();
        assert_eq!(b.value(CoeffKind::B), Some(&q(1, 12)));
    }

    #[test]
    fn genus_zero_brute_force() {
        let t = coeff_table(0, 2, CoeffMode::Brute, &Limits::default()).unwrap();
        assert_eq!(t.value(CoeffKind::A { m: 0, i: 1 }), Some(&q(1, 2)));
        assert!(t.integrality_violations().is_empty());
    }

    #[test]
    fn identity_small_cases() {
        let l = Limits::default();
        for (g, k) in [(0, 2), (0, 3), (1, 1)] {
            let r = verify_coproduct_identity(&CurveModel::airy(), g, k, &l).unwrap();
            assert!(r.holds(), "g={g} k={k}");
            assert!(r.parts.iter().all(|p| p.implied_coefficient() == r.table.value(p.kind).cloned()));
        }
    }

    #[test]
    fn higher_genus_split_matches_closed_form() {
        let l = Limits::default();
        let brute = coeff_table(2, 0, CoeffMode::Brute, &l).unwrap();
        let stated = coeff_table(2, 0, CoeffMode::Statement, &l).unwrap();
        let kind = CoeffKind::A { m: 1, i: 0 };
        assert_eq!(brute.value(kind), Some(&q(1, 10)));
        assert_eq!(brute.value(kind), stated.value(kind));
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            coeff_table(3, 0, CoeffMode::Brute, &Limits::default()),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
