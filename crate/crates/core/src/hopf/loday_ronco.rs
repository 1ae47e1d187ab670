//! Loday-Ronco product and coproduct on unlabelled planar binary trees.
//! Outputs carry canonical labels `1..=n+1`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::combo::{Combo, TensorCombo, Q};
use crate::error::{Error, Result};
use crate::graph::{Shape, Slot, TaggedGraph};

type ShapeSum = BTreeMap<Shape, Q>;
type ShapeTensor = BTreeMap<(Shape, Shape), Q>;

fn add<K: Ord>(m: &mut BTreeMap<K, Q>, k: K, c: Q) {
    let v = m.entry(k).or_insert_with(Q::zero);
    *v += c;
}

fn product(t: &Shape, u: &Shape) -> ShapeSum {
    let mut out = ShapeSum::new();
    match (t, u) {
        (Shape::Leaf, _) => add(&mut out, u.clone(), Q::one()),
        (_, Shape::Leaf) => add(&mut out, t.clone(), Q::one()),
        (Shape::Node(t1, t2), Shape::Node(u1, u2)) => {
            for (s, c) in product(t2, u) {
                add(&mut out, Shape::node((**t1).clone(), s), c);
            }
            for (s, c) in product(t, u1) {
                add(&mut out, Shape::node(s, (**u2).clone()), c);
            }
        }
    }
    out
}

fn coproduct(t: &Shape) -> ShapeTensor {
    let mut out = ShapeTensor::new();
    match t {
        Shape::Leaf => add(&mut out, (Shape::Leaf, Shape::Leaf), Q::one()),
        Shape::Node(t1, t2) => {
            let d1 = coproduct(t1);
            let d2 = coproduct(t2);
            for ((a, b), c1) in &d1 {
                for ((x, y), c2) in &d2 {
                    for (p, c3) in product(a, x) {
                        add(&mut out, (p, Shape::node(b.clone(), y.clone())), c1 * c2 * c3);
                    }
                }
            }
            add(&mut out, (t.clone(), Shape::Leaf), Q::one());
        }
    }
    out
}

fn shape_of<'a>(g: &'a TaggedGraph, op: &'static str) -> Result<&'a Shape> {
    if !g.is_loop_free() {
        return Err(Error::LoopBearing(op));
    }
    g.shape().ok_or(Error::EmptyOperand(op))
}

/// The tree of `shape` with leaves labelled `1..=n+1`.
pub fn canonical_graph(shape: Shape) -> TaggedGraph {
    let slots = (1..=shape.leaves()).map(|i| Slot::Free(i.to_string())).collect();
    TaggedGraph::new(shape, slots).expect("distinct labels")
}

pub fn lr_product(x: &Combo, y: &Combo) -> Result<Combo> {
    let mut out = Combo::zero();
    for (a, ca) in x.iter() {
        let sa = shape_of(a, "lr_product")?;
        for (b, cb) in y.iter() {
            let sb = shape_of(b, "lr_product")?;
            for (s, c) in product(sa, sb) {
                out.add_term(canonical_graph(s), c * ca * cb);
            }
        }
    }
    Ok(out)
}

pub fn lr_coproduct(x: &Combo) -> Result<TensorCombo> {
    let mut out = TensorCombo::zero();
    for (a, ca) in x.iter() {
        for ((l, r), c) in coproduct(shape_of(a, "lr_coproduct")?) {
            out.add_term(canonical_graph(l), canonical_graph(r), c * ca);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_family, GraphFamilyId, Limits};
    use crate::hopf::{parse_combo, star};

    fn c(s: &str) -> Combo {
        parse_combo(s).unwrap()
    }

    #[test]
    fn unit_laws() {
        let bar = c("<1>");
        for n in 0..=5 {
            for t in enumerate_family(GraphFamilyId::Y(n), &Limits::default()).unwrap() {
                let t = Combo::from_graph(t);
                assert_eq!(lr_product(&t, &bar).unwrap(), t);
                assert_eq!(lr_product(&bar, &t).unwrap(), t);
            }
        }
    }

    #[test]
    fn coproduct_base_cases() {
        let d = lr_coproduct(&c("<1>")).unwrap();
        assert_eq!(d.to_string(), "<1> ⊗ <1>");
        let d = lr_coproduct(&c("<1 2>")).unwrap();
        assert_eq!(d.to_string(), "<1 2> ⊗ <1> + <1> ⊗ <1 2>");
    }

    #[test]
    fn coproduct_preserves_degree() {
        for t in enumerate_family(GraphFamilyId::Y(4), &Limits::default()).unwrap() {
            for (l, r, _) in lr_coproduct(&Combo::from_graph(t)).unwrap().iter() {
                assert_eq!(l.degree() + r.degree(), 4);
            }
        }
    }

    #[test]
    fn star_relation() {
        let one = c("<1 2>");
        let l = Limits::default();
        for n in 0..=3 {
            for m in 0..=(3 - n) {
                for a in enumerate_family(GraphFamilyId::Y(n), &l).unwrap() {
                    for b in enumerate_family(GraphFamilyId::Y(m), &l).unwrap() {
                        let (a, b) = (Combo::from_graph(a.clone()), Combo::from_graph(b));
                        let lhs = star(&a, &b).unwrap();
                        let rhs = lr_product(&lr_product(&a, &one).unwrap(), &b).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_loops_and_empty() {
        assert!(matches!(lr_product(&c("<_ _> | 1~2"), &c("<1>")), Err(Error::LoopBearing(_))));
        assert!(matches!(lr_coproduct(&c("0")), Err(Error::EmptyOperand(_))));
    }
}
