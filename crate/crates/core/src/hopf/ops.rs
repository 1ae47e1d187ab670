use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::combo::{Combo, TensorCombo, Q};
use crate::error::{Error, Result};
use crate::graph::{prune, Shape, Slot, TaggedGraph};

/// Shapes of `r ⋆ t` with multiplicity (as a list).
pub(crate) fn star_shapes(r: &Shape, t: &Shape) -> Vec<Shape> {
    let mut out = vec![Shape::node(r.clone(), t.clone())];
    if let Shape::Node(t1, t2) = t {
        for s in star_shapes(r, t1) {
            out.push(Shape::node(s, (**t2).clone()));
        }
    }
    if let Shape::Node(r1, r2) = r {
        for s in star_shapes(r2, t) {
            out.push(Shape::node((**r1).clone(), s));
        }
    }
    out
}

fn numeric_max(labels: &[&str]) -> u64 {
    labels.iter().filter_map(|l| l.parse::<u64>().ok()).max().unwrap_or(0)
}

/// Shifts the numeric labels of `right` past those of `left` when the two
/// label sets meet.
fn shift_for(left: &TaggedGraph, right: &TaggedGraph) -> Result<TaggedGraph> {
    let lset: BTreeSet<&str> = left.free_labels().into_iter().collect();
    if right.free_labels().iter().all(|l| !lset.contains(l)) {
        return Ok(right.clone());
    }
    let n = numeric_max(&left.free_labels());
    let shifted = right.map_free_labels(|l| match l.parse::<u64>() {
        Ok(v) => (v + n).to_string(),
        Err(_) => l.to_string(),
    });
    if let Some(l) = shifted.free_labels().into_iter().find(|l| lset.contains(l)) {
        return Err(Error::LabelCollision(l.to_string()));
    }
    Ok(shifted)
}

/// Product of two graphs.
pub fn star_graphs(a: &TaggedGraph, b: &TaggedGraph) -> Result<Combo> {
    let (Some((sa, la)), Some(_)) = (a.parts(), b.parts()) else {
        return Ok(Combo::from_graph(if a.is_empty() { b.clone() } else { a.clone() }));
    };
    let b = shift_for(a, b)?;
    let (sb, lb) = b.parts().expect("non-empty");
    let offset = la
        .iter()
        .filter_map(|s| match s {
            Slot::Loop(id) => Some(*id),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let slots: Vec<Slot> = la
        .iter()
        .cloned()
        .chain(lb.iter().map(|s| match s {
            Slot::Loop(id) => Slot::Loop(id + offset),
            other => other.clone(),
        }))
        .collect();
    let mut out = Combo::zero();
    for shape in star_shapes(sa, sb) {
        out.add_term(TaggedGraph::from_parts_relaxed(shape, slots.clone())?, Q::one());
    }
    Ok(out)
}

/// Bilinear product.
pub fn star(x: &Combo, y: &Combo) -> Result<Combo> {
    let mut out = Combo::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&star_graphs(a, b)?, &(ca * cb));
        }
    }
    Ok(out)
}

/// Product of a tensor's two factors.
pub fn multiply(t: &TensorCombo) -> Result<Combo> {
    let mut out = Combo::zero();
    for (l, r, c) in t.iter() {
        out.add_scaled(&star_graphs(l, r)?, c);
    }
    Ok(out)
}

fn substitute(
    shape: &Shape,
    slots: &[Slot],
    pos: usize,
    sub_shape: &Shape,
    sub_slots: &[Slot],
) -> (Shape, Vec<Slot>) {
    fn go(shape: &Shape, pos: usize, seen: &mut usize, sub: &Shape) -> Shape {
        match shape {
            Shape::Leaf => {
                let here = *seen;
                *seen += 1;
                if here == pos {
                    sub.clone()
                } else {
                    Shape::Leaf
                }
            }
            Shape::Node(l, r) => {
                let l = go(l, pos, seen, sub);
                let r = go(r, pos, seen, sub);
                Shape::node(l, r)
            }
        }
    }
    let new_shape = go(shape, pos, &mut 0, sub_shape);
    let new_slots = slots[..pos]
        .iter()
        .chain(sub_slots)
        .chain(&slots[pos + 1..])
        .cloned()
        .collect();
    (new_shape, new_slots)
}

fn fresh_label(g: &TaggedGraph) -> String {
    let taken: BTreeSet<&str> = g.free_labels().into_iter().collect();
    (1u64..)
        .map(|i| i.to_string())
        .find(|l| !taken.contains(l.as_str()))
        .expect("unbounded")
}

/// One term of the coproduct for the slot split `keep` (true = left).
fn split_term(g: &TaggedGraph, keep: &[bool]) -> Result<(TaggedGraph, TaggedGraph)> {
    let (shape, slots) = g.parts().expect("non-empty");
    let drop: Vec<bool> = keep.iter().map(|k| !k).collect();
    let left = prune(shape, slots, keep);
    let right = prune(shape, slots, &drop);
    let mut left_ids = BTreeSet::new();
    let mut right_ids = BTreeSet::new();
    for (s, k) in slots.iter().zip(keep) {
        if let Slot::Loop(id) = s {
            if *k {
                left_ids.insert(*id);
            } else {
                right_ids.insert(*id);
            }
        }
    }
    let straddled = left_ids.intersection(&right_ids).next().copied();
    let build = |p: Option<(Shape, Vec<Slot>)>| -> Result<TaggedGraph> {
        match p {
            None => Ok(TaggedGraph::empty()),
            Some((s, v)) => TaggedGraph::from_parts_relaxed(s, v),
        }
    };
    let Some(first) = straddled else {
        return Ok((build(left)?, build(right)?));
    };
    // Glue: the right component hangs from the left end of the first
    // straddled loop; its own end becomes a fresh free leaf. Other straddled
    // loops then close inside the glued graph.
    let (ls, lv) = left.expect("holds one end");
    let (rs, rv) = right.expect("holds one end");
    let fresh = fresh_label(g);
    let y = lv.iter().position(|s| *s == Slot::Loop(first)).expect("left end");
    let rv: Vec<Slot> = rv
        .into_iter()
        .map(|s| if s == Slot::Loop(first) { Slot::Free(fresh.clone()) } else { s })
        .collect();
    let (s, v) = substitute(&ls, &lv, y, &rs, &rv);
    Ok((TaggedGraph::from_parts_relaxed(s, v)?, TaggedGraph::empty()))
}

/// Coproduct of one graph: a sum over all splits of the leaf slots.
pub fn coproduct_graph(g: &TaggedGraph) -> Result<TensorCombo> {
    let mut out = TensorCombo::zero();
    let n = g.leaf_count();
    if n == 0 {
        out.add_term(TaggedGraph::empty(), TaggedGraph::empty(), Q::one());
        return Ok(out);
    }
    if n >= 63 {
        return Err(Error::ResourceLimit {
            what: "coproduct".into(),
            size: u128::MAX,
            limit: 1 << 62,
        });
    }
    for mask in 0u64..(1 << n) {
        let keep: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
        let (l, r) = split_term(g, &keep)?;
        out.add_term(l, r, Q::one());
    }
    Ok(out)
}

pub fn coproduct(x: &Combo) -> Result<TensorCombo> {
    let mut out = TensorCombo::zero();
    for (g, c) in x.iter() {
        out.add_scaled(&coproduct_graph(g)?, c);
    }
    Ok(out)
}

/// Coproduct minus `∅ ⊗ G` and `G ⊗ ∅` for every basis term.
pub fn reduced_coproduct(x: &Combo) -> Result<TensorCombo> {
    let mut out = coproduct(x)?;
    for (g, c) in x.iter() {
        out.add_term(TaggedGraph::empty(), g.clone(), -c.clone());
        out.add_term(g.clone(), TaggedGraph::empty(), -c.clone());
    }
    Ok(out)
}

/// Coefficient of the empty graph.
pub fn counit(x: &Combo) -> Q {
    x.coefficient(&TaggedGraph::empty())
}

thread_local! {
    static ANTIPODE_MEMO: RefCell<HashMap<TaggedGraph, Combo>> = RefCell::new(HashMap::new());
}

fn antipode_tree(g: &TaggedGraph) -> Result<Combo> {
    if g.is_empty() {
        return Ok(Combo::from_graph(TaggedGraph::empty()));
    }
    if let Some(v) = ANTIPODE_MEMO.with(|m| m.borrow().get(g).cloned()) {
        return Ok(v);
    }
    let mut out = -&Combo::from_graph(g.clone());
    let reduced = reduced_coproduct(&Combo::from_graph(g.clone()))?;
    for (l, r, c) in reduced.iter() {
        let s = antipode_tree(l)?;
        let prod = star(&s, &Combo::from_graph(r.clone()))?;
        out.add_scaled(&prod, &-c.clone());
    }
    ANTIPODE_MEMO.with(|m| m.borrow_mut().insert(g.clone(), out.clone()));
    Ok(out)
}

/// Antipode of one graph. Loops are opened into fresh labels, the
/// loop-free antipode is taken, and each term is contracted again.
pub fn antipode_graph(g: &TaggedGraph) -> Result<Combo> {
    if g.is_loop_free() {
        return antipode_tree(g);
    }
    let (tree, pairs) = g.underlying_tree();
    let mut out = Combo::zero();
    for (t, c) in antipode_tree(&tree)?.iter() {
        out.add_term(t.recontract(&pairs), c.clone());
    }
    Ok(out)
}

pub fn antipode(x: &Combo) -> Result<Combo> {
    let mut out = Combo::zero();
    for (g, c) in x.iter() {
        out.add_scaled(&antipode_graph(g)?, c);
    }
    Ok(out)
}

/// Unit map applied to a scalar.
pub fn unit(c: Q) -> Combo {
    if c.is_zero() {
        Combo::zero()
    } else {
        Combo::term(TaggedGraph::empty(), c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::hopf::parse_combo;

    fn g(s: &str) -> TaggedGraph {
        parse_graph(s).unwrap()
    }

    fn c(s: &str) -> Combo {
        parse_combo(s).unwrap()
    }

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&c("<1>"), &c("<1 2>")).unwrap(), c("<1 <2 3>> + <<1 2> 3>"));
        assert_eq!(
            star(&c("<1 2>"), &c("<1 2>")).unwrap(),
            c("<<1 2> <3 4>> + <<<1 2> 3> 4> + <<1 <2 3>> 4> + <1 <2 <3 4>>> + <1 <<2 3> 4>>")
        );
        assert_eq!(star(&c("0"), &c("<1>")).unwrap(), c("<1>"));
        assert_eq!(star(&c("<1>"), &c("0")).unwrap(), c("<1>"));
        assert_eq!(star(&c("<1>"), &c("<<1 2> 3>")).unwrap().len(), 3);
        assert_eq!(star(&c("<<1 2> 3>"), &c("<1>")).unwrap().len(), 2);
    }

    #[test]
    fn star_label_collision() {
        assert!(matches!(
            star(&c("<a 1>"), &c("<a 2>")),
            Err(Error::LabelCollision(_))
        ));
        assert_eq!(star(&c("<2>"), &c("<1>")).unwrap(), c("<2 1>"));
    }

    #[test]
    fn star_carries_loops() {
        let p = star(&c("<_ _> | 1~2"), &c("<_ _> | 1~2")).unwrap();
        for (t, _) in p.iter() {
            assert_eq!(t.loop_count(), 2);
            assert_eq!(t.loop_positions(), vec![(1, 2), (3, 4)]);
        }
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct(&c("<1 2>")).unwrap();
        let want = [("0", "<1 2>"), ("<1>", "<2>"), ("<2>", "<1>"), ("<1 2>", "0")];
        assert_eq!(d.len(), 4);
        for (l, r) in want {
            assert_eq!(d.coefficient(&g(l), &g(r)), q(1));
        }
        let d = coproduct(&c("<<1 2> 3>")).unwrap();
        assert_eq!(d.len(), 8);
        assert_eq!(d.coefficient(&g("<2>"), &g("<1 3>")), q(1));
        assert_eq!(d.coefficient(&g("<1 3>"), &g("<2>")), q(1));
        assert_eq!(coproduct(&c("0")).unwrap().coefficient(&g("0"), &g("0")), q(1));
    }

    #[test]
    fn coproduct_with_loops() {
        let h = g("<_ _> | 1~2");
        let d = coproduct(&Combo::from_graph(h.clone())).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.coefficient(&g("0"), &h), q(1));
        assert_eq!(d.coefficient(&h, &g("0")), q(1));
        assert_eq!(d.coefficient(&g("<1>"), &g("0")), q(2));

        let h = g("<1 <_ _>> | 2~3");
        let d = coproduct(&Combo::from_graph(h)).unwrap();
        assert_eq!(d.coefficient(&g("<1 2>"), &g("0")), q(4));
        assert_eq!(d.coefficient(&g("<1>"), &g("<_ _> | 1~2")), q(1));
        assert_eq!(d.coefficient(&g("<_ _> | 1~2"), &g("<1>")), q(1));
    }

    #[test]
    fn reduced_examples() {
        assert_eq!(
            reduced_coproduct(&c("<1 2>")).unwrap().to_string(),
            "<1> ⊗ <2> + <2> ⊗ <1>"
        );
        assert!(reduced_coproduct(&c("<1>")).unwrap().is_zero());
        let e = reduced_coproduct(&c("0")).unwrap();
        assert_eq!(e.coefficient(&g("0"), &g("0")), q(-1));
        assert_eq!(e.len(), 1);
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&c("0")), q(1));
        assert_eq!(counit(&c("<1 2>")), q(0));
        assert_eq!(counit(&c("3*0 + <1>")), q(3));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&c("<1 2>")).unwrap(), c("<2 1>"));
        assert_eq!(
            antipode(&c("<<1 2> 3>")).unwrap(),
            c("<1 <2 3>> - <<3 2> 1> - <3 <2 1>>")
        );
        assert_eq!(antipode(&c("0")).unwrap(), c("0"));
        assert_eq!(antipode(&c("<1>")).unwrap(), c("-<1>"));
        let s = antipode(&c("<_ _> | 1~2")).unwrap();
        assert_eq!(s, c("<_ _> | 1~2"));
    }

    #[test]
    fn antipode_of_small_star_powers() {
        let mut power = c("0");
        let mut reversed = c("0");
        for n in 1..=2u32 {
            power = star(&power, &c("<1>")).unwrap();
            reversed = star(&Combo::from_graph(TaggedGraph::leaf(n.to_string())), &reversed).unwrap();
            let sign = if n % 2 == 0 { q(1) } else { q(-1) };
            assert_eq!(antipode(&power).unwrap(), reversed.scale(&sign), "n={n}");
        }
    }

    #[test]
    fn antipode_of_cubic_star_power() {
        // Follows from S(<<1 2> 3>) and its mirror; not -(<3> ⋆ <2> ⋆ <1>).
        let p = star(&star(&c("<1>"), &c("<1>")).unwrap(), &c("<1>")).unwrap();
        assert_eq!(
            antipode(&p).unwrap(),
            c("<1 <2 3>> + <<1 2> 3> - 2*<3 <2 1>> - 2*<<3 2> 1>")
        );
    }
}
