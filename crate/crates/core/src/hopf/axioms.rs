//! Exhaustive check of the Hopf algebra laws on small graphs.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use super::combo::{Combo, TensorCombo, Q};
use super::ops::{antipode_graph, coproduct_graph, counit, multiply, star, star_graphs, unit};
use crate::error::Result;
use crate::graph::{contraction_patterns, Limits, Shape, Slot, TaggedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Law {
    Associativity,
    Unit,
    Coassociativity,
    Counit,
    Compatibility,
    CounitMultiplicative,
    Antipode,
}

impl Law {
    pub const ALL: [Law; 7] = [
        Law::Associativity,
        Law::Unit,
        Law::Coassociativity,
        Law::Counit,
        Law::Compatibility,
        Law::CounitMultiplicative,
        Law::Antipode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Associativity => "associativity",
            Law::Unit => "unit",
            Law::Coassociativity => "coassociativity",
            Law::Counit => "counit",
            Law::Compatibility => "compatibility",
            Law::CounitMultiplicative => "counit-multiplicative",
            Law::Antipode => "antipode",
        }
    }

    /// Whether the law involves the coproduct (and so the straddle rule).
    fn uses_coproduct(self) -> bool {
        !matches!(self, Law::Associativity | Law::Unit | Law::CounitMultiplicative)
    }

    fn arity(self) -> usize {
        match self {
            Law::Associativity => 3,
            Law::Compatibility | Law::CounitMultiplicative => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawStatus {
    Pass,
    /// First failing input. `attributed` is set when every input carries
    /// loops, the law uses the coproduct, and the same law holds on the
    /// underlying loop-free trees.
    Violation {
        counterexample: Vec<TaggedGraph>,
        attributed: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub law: Law,
    pub checked: usize,
    pub status: LawStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub max_leaves: usize,
    pub max_loops: usize,
    pub laws: Vec<LawResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.laws.iter().all(|l| l.status == LawStatus::Pass)
    }

    pub fn result(&self, law: Law) -> &LawResult {
        self.laws.iter().find(|l| l.law == law).expect("every law is checked")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_leaves": self.max_leaves,
            "max_loops": self.max_loops,
            "all_pass": self.all_pass(),
            "laws": self.laws.iter().map(|l| {
                let mut v = json!({ "law": l.law.name(), "checked": l.checked });
                match &l.status {
                    LawStatus::Pass => v["status"] = json!("pass"),
                    LawStatus::Violation { counterexample, attributed } => {
                        v["status"] = json!("violation");
                        v["counterexample"] = json!(counterexample.iter().map(|g| g.render()).collect::<Vec<_>>());
                        v["attributed_to_straddle_rule"] = json!(attributed);
                    }
                }
                v
            }).collect::<Vec<_>>(),
        })
    }
}

/// All valid basis graphs with at most `max_leaves` leaf slots and at most
/// `max_loops` loops, canonical labels, plus the empty graph.
pub fn basis_graphs(max_leaves: usize, max_loops: usize) -> Vec<TaggedGraph> {
    let mut out = vec![TaggedGraph::empty()];
    for n in 1..=max_leaves {
        let patterns: Vec<_> = contraction_patterns(n, None)
            .into_iter()
            .filter(|p| p.iter().filter(|s| s.is_some()).count() <= 2 * max_loops)
            .collect();
        for shape in Shape::all(n - 1) {
            for p in &patterns {
                let mut label = 0;
                let slots = p
                    .iter()
                    .map(|s| match s {
                        Some(id) => Slot::Loop(*id),
                        None => {
                            label += 1;
                            Slot::Free(label.to_string())
                        }
                    })
                    .collect();
                out.push(TaggedGraph::new(shape.clone(), slots).expect("balanced pattern"));
            }
        }
    }
    out
}

type Triple = BTreeMap<(TaggedGraph, TaggedGraph, TaggedGraph), Q>;

fn add3(m: &mut Triple, k: (TaggedGraph, TaggedGraph, TaggedGraph), c: Q) {
    let v = m.entry(k.clone()).or_insert_with(Q::zero);
    *v += c;
    if v.is_zero() {
        m.remove(&k);
    }
}

fn one(g: &TaggedGraph) -> Combo {
    Combo::from_graph(g.clone())
}

/// Shifts numeric labels of `b` past those of `a`, as the product does.
fn disjoint_copy(a: &TaggedGraph, b: &TaggedGraph) -> TaggedGraph {
    let n = a
        .free_labels()
        .iter()
        .filter_map(|l| l.parse::<u64>().ok())
        .max()
        .unwrap_or(0);
    b.map_free_labels(|l| match l.parse::<u64>() {
        Ok(v) => (v + n).to_string(),
        Err(_) => format!("{l}'"),
    })
}

fn holds(law: Law, xs: &[TaggedGraph]) -> Result<bool> {
    Ok(match law {
        Law::Associativity => {
            let (a, b, c) = (one(&xs[0]), one(&xs[1]), one(&xs[2]));
            star(&star(&a, &b)?, &c)? == star(&a, &star(&b, &c)?)?
        }
        Law::Unit => {
            let e = one(&TaggedGraph::empty());
            let a = one(&xs[0]);
            star(&e, &a)? == a && star(&a, &e)? == a
        }
        Law::Coassociativity => {
            let d = coproduct_graph(&xs[0])?;
            let mut left = Triple::new();
            let mut right = Triple::new();
            for (l, r, c) in d.iter() {
                for (ll, lr, c2) in coproduct_graph(l)?.iter() {
                    add3(&mut left, (ll.clone(), lr.clone(), r.clone()), c * c2);
                }
                for (rl, rr, c2) in coproduct_graph(r)?.iter() {
                    add3(&mut right, (l.clone(), rl.clone(), rr.clone()), c * c2);
                }
            }
            left == right
        }
        Law::Counit => {
            let d = coproduct_graph(&xs[0])?;
            let mut left = Combo::zero();
            let mut right = Combo::zero();
            for (l, r, c) in d.iter() {
                left.add_scaled(&one(r), &(c * counit(&one(l))));
                right.add_scaled(&one(l), &(c * counit(&one(r))));
            }
            left == one(&xs[0]) && right == one(&xs[0])
        }
        Law::Compatibility => {
            let a = &xs[0];
            let b = disjoint_copy(a, &xs[1]);
            let prod = star_graphs(a, &b)?;
            let mut lhs = TensorCombo::zero();
            for (g, c) in prod.iter() {
                lhs.add_scaled(&coproduct_graph(g)?, c);
            }
            let mut rhs = TensorCombo::zero();
            let da = coproduct_graph(a)?;
            let db = coproduct_graph(&b)?;
            for (a1, a2, ca) in da.iter() {
                for (b1, b2, cb) in db.iter() {
                    let left = star_graphs(a1, b1)?;
                    let right = star_graphs(a2, b2)?;
                    for (l, cl) in left.iter() {
                        for (r, cr) in right.iter() {
                            rhs.add_term(l.clone(), r.clone(), ca * cb * cl * cr);
                        }
                    }
                }
            }
            lhs == rhs
        }
        Law::CounitMultiplicative => {
            let (a, b) = (one(&xs[0]), one(&xs[1]));
            counit(&star(&a, &b)?) == counit(&a) * counit(&b)
        }
        Law::Antipode => {
            let d = coproduct_graph(&xs[0])?;
            let mut t = TensorCombo::zero();
            for (l, r, c) in d.iter() {
                for (s, cs) in antipode_graph(l)?.iter() {
                    t.add_term(s.clone(), r.clone(), c * cs);
                }
            }
            multiply(&t)? == unit(counit(&one(&xs[0])))
        }
    })
}

fn inputs(arity: usize, basis: &[TaggedGraph], max_leaves: usize, max_loops: usize) -> Vec<Vec<TaggedGraph>> {
    let mut out: Vec<Vec<TaggedGraph>> = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::new();
        for prefix in &out {
            let leaves: usize = prefix.iter().map(TaggedGraph::leaf_count).sum();
            let loops: usize = prefix.iter().map(TaggedGraph::loop_count).sum();
            for b in basis {
                if leaves + b.leaf_count() <= max_leaves && loops + b.loop_count() <= max_loops {
                    let mut v = prefix.clone();
                    v.push(b.clone());
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

fn attributed(law: Law, xs: &[TaggedGraph]) -> Result<bool> {
    if !law.uses_coproduct() || xs.iter().all(TaggedGraph::is_loop_free) {
        return Ok(false);
    }
    let trees: Vec<TaggedGraph> = xs.iter().map(|g| g.underlying_tree().0).collect();
    holds(law, &trees)
}

/// Checks every law on all basis inputs within the bounds. Binary and
/// ternary laws use tuples whose total leaf and loop counts stay within
/// the same bounds.
pub fn verify_axioms(max_leaves: usize, max_loops: usize, limits: &Limits) -> Result<AxiomReport> {
    let basis = basis_graphs(max_leaves, max_loops);
    let what = format!("verify-axioms({max_leaves},{max_loops})");
    limits.check(&what, basis.len() as u128)?;
    let all_cases: Vec<_> = Law::ALL
        .iter()
        .map(|law| inputs(law.arity(), &basis, max_leaves, max_loops))
        .collect();
    // each input expands into at most 2^leaves coproduct terms
    let tuples: u128 = all_cases.iter().map(|c| c.len() as u128).sum();
    limits.check(&what, tuples.saturating_mul(1u128 << max_leaves.min(100)))?;
    let mut laws = Vec::new();
    for (law, cases) in Law::ALL.into_iter().zip(all_cases) {
        let mut status = LawStatus::Pass;
        for xs in &cases {
            if !holds(law, xs)? {
                status = LawStatus::Violation {
                    attributed: attributed(law, xs)?,
                    counterexample: xs.clone(),
                };
                break;
            }
        }
        laws.push(LawResult {
            law,
            checked: cases.len(),
            status,
        });
    }
    Ok(AxiomReport {
        max_leaves,
        max_loops,
        laws,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(basis_graphs(3, 0).len(), 1 + 1 + 1 + 2);
        // 3 leaves with one loop: 2 shapes x 2 patterns
        assert_eq!(basis_graphs(3, 1).len(), 1 + 1 + 2 + 2 * 3);
    }

    #[test]
    fn loop_free_laws() {
        let r = verify_axioms(4, 0, &Limits::default()).unwrap();
        for l in &r.laws {
            assert!(l.checked > 0);
            if l.law == Law::Compatibility {
                continue;
            }
            assert_eq!(l.status, LawStatus::Pass, "{}", l.law.name());
        }
    }

    #[test]
    fn compatibility_counterexample() {
        // δ(<1> ⋆ <2 3>) holds <1 3> ⊗ <2> twice, the other side once.
        let xs = [TaggedGraph::leaf("1"), crate::graph::parse_graph("<1 2>").unwrap()];
        assert!(!holds(Law::Compatibility, &xs).unwrap());
        let r = verify_axioms(3, 0, &Limits::default()).unwrap();
        assert_eq!(
            r.result(Law::Compatibility).status,
            LawStatus::Violation {
                counterexample: xs.to_vec(),
                attributed: false
            }
        );
    }
}
