//! Planar binary trees with tagged leaves and loop contractions.

mod enumerate;
pub mod eo;
mod permutation;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use enumerate::{catalan, contraction_patterns, enumerate_family, GraphFamilyId, Limits};
pub use permutation::{permutation_fiber, tree_from_permutation, Permutation};
pub use text::parse_graph;

/// Shape of a planar binary tree: a single leaf slot or a trivalent vertex
/// joining an ordered (left, right) pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn node(left: Shape, right: Shape) -> Shape {
        Shape::Node(Box::new(left), Box::new(right))
    }

    /// Number of trivalent vertices.
    pub fn degree(&self) -> usize {
        match self {
            Shape::Leaf => 0,
            Shape::Node(l, r) => 1 + l.degree() + r.degree(),
        }
    }

    pub fn leaves(&self) -> usize {
        self.degree() + 1
    }

    /// All shapes with `degree` vertices, in construction order.
    pub fn all(degree: usize) -> Vec<Shape> {
        let mut table: Vec<Vec<Shape>> = vec![vec![Shape::Leaf]];
        for n in 1..=degree {
            let mut row = Vec::new();
            for left in 0..n {
                let right = n - 1 - left;
                for l in &table[left] {
                    for r in &table[right] {
                        row.push(Shape::node(l.clone(), r.clone()));
                    }
                }
            }
            table.push(row);
        }
        table.swap_remove(degree)
    }

    /// Mirror image: children swapped at every vertex.
    pub fn mirror(&self) -> Shape {
        match self {
            Shape::Leaf => Shape::Leaf,
            Shape::Node(l, r) => Shape::node(r.mirror(), l.mirror()),
        }
    }
}

/// Content of one leaf slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Free(String),
    /// One end of a loop; the id appears in exactly two slots.
    Loop(u32),
}

impl Slot {
    pub fn free(label: impl Into<String>) -> Slot {
        Slot::Free(label.into())
    }
}

/// A tagged graph: either the empty element or a shape whose leaf slots
/// carry free labels or loop ends.
///
/// Loop ids are renumbered by first occurrence, so two graphs with the same
/// pairing compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedGraph {
    body: Option<(Shape, Vec<Slot>)>,
}

impl TaggedGraph {
    pub fn empty() -> TaggedGraph {
        TaggedGraph { body: None }
    }

    pub fn leaf(label: impl Into<String>) -> TaggedGraph {
        TaggedGraph {
            body: Some((Shape::Leaf, vec![Slot::Free(label.into())])),
        }
    }

    /// Builds a graph, checking slot count, loop multiplicities, label
    /// uniqueness and the nested-adjacency loop condition.
    pub fn new(shape: Shape, slots: Vec<Slot>) -> Result<TaggedGraph> {
        let g = Self::from_parts_relaxed(shape, slots)?;
        if !g.is_balanced() {
            return Err(Error::InvalidLoop(format!(
                "pairing of {} is not realizable by nearest-neighbour contractions",
                g
            )));
        }
        Ok(g)
    }

    /// Like [`TaggedGraph::new`] but without the nested-adjacency check.
    /// Straddle collapse in the coproduct and re-contraction after the
    /// antipode can produce such pairings.
    pub fn from_parts_relaxed(shape: Shape, slots: Vec<Slot>) -> Result<TaggedGraph> {
        if slots.len() != shape.leaves() {
            return Err(Error::InvalidLoop(format!(
                "shape has {} leaf slots but {} were given",
                shape.leaves(),
                slots.len()
            )));
        }
        let mut seen = BTreeSet::new();
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for s in &slots {
            match s {
                Slot::Free(l) => {
                    if !seen.insert(l.as_str()) {
                        return Err(Error::DuplicateLabel(l.clone()));
                    }
                }
                Slot::Loop(id) => *counts.entry(*id).or_default() += 1,
            }
        }
        if let Some((id, n)) = counts.iter().find(|(_, &n)| n != 2) {
            return Err(Error::InvalidLoop(format!("loop {id} has {n} ends")));
        }
        Ok(TaggedGraph {
            body: Some((shape, canonical_loop_ids(slots))),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.body.is_none()
    }

    pub fn shape(&self) -> Option<&Shape> {
        self.body.as_ref().map(|(s, _)| s)
    }

    pub fn slots(&self) -> &[Slot] {
        self.body.as_ref().map(|(_, s)| s.as_slice()).unwrap_or(&[])
    }

    pub(crate) fn parts(&self) -> Option<(&Shape, &[Slot])> {
        self.body.as_ref().map(|(s, v)| (s, v.as_slice()))
    }

    pub fn degree(&self) -> usize {
        self.shape().map_or(0, Shape::degree)
    }

    /// Number of leaf slots (free leaves plus loop ends).
    pub fn leaf_count(&self) -> usize {
        self.slots().len()
    }

    pub fn loop_count(&self) -> usize {
        self.slots().iter().filter(|s| matches!(s, Slot::Loop(_))).count() / 2
    }

    pub fn free_labels(&self) -> Vec<&str> {
        self.slots()
            .iter()
            .filter_map(|s| match s {
                Slot::Free(l) => Some(l.as_str()),
                Slot::Loop(_) => None,
            })
            .collect()
    }

    pub fn is_loop_free(&self) -> bool {
        self.loop_count() == 0
    }

    /// Free labels are exactly `1..=m` in left-to-right order.
    pub fn has_canonical_labels(&self) -> bool {
        self.free_labels()
            .iter()
            .enumerate()
            .all(|(i, l)| *l == (i + 1).to_string())
    }

    /// Nested-adjacency condition: no free leaf lies strictly inside a loop
    /// and no two loops cross.
    pub fn is_balanced(&self) -> bool {
        let mut stack: Vec<u32> = Vec::new();
        for s in self.slots() {
            match s {
                Slot::Free(_) if !stack.is_empty() => return false,
                Slot::Free(_) => {}
                Slot::Loop(id) => {
                    if stack.last() == Some(id) {
                        stack.pop();
                    } else if stack.contains(id) {
                        return false;
                    } else {
                        stack.push(*id);
                    }
                }
            }
        }
        stack.is_empty()
    }

    /// Loop pairs as 1-based slot positions `(i, j)`, `i < j`, sorted.
    pub fn loop_positions(&self) -> Vec<(usize, usize)> {
        let mut first: BTreeMap<u32, usize> = BTreeMap::new();
        let mut out = Vec::new();
        for (pos, s) in self.slots().iter().enumerate() {
            if let Slot::Loop(id) = s {
                match first.remove(id) {
                    Some(i) => out.push((i + 1, pos + 1)),
                    None => {
                        first.insert(*id, pos);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Same graph with free labels replaced by `1..=m` left to right.
    pub fn relabel_canonical(&self) -> TaggedGraph {
        let mut next = 0usize;
        self.map_free_labels(|_| {
            next += 1;
            next.to_string()
        })
    }

    pub(crate) fn map_free_labels(&self, mut f: impl FnMut(&str) -> String) -> TaggedGraph {
        match &self.body {
            None => TaggedGraph::empty(),
            Some((shape, slots)) => TaggedGraph {
                body: Some((
                    shape.clone(),
                    slots
                        .iter()
                        .map(|s| match s {
                            Slot::Free(l) => Slot::Free(f(l)),
                            other => other.clone(),
                        })
                        .collect(),
                )),
            },
        }
    }

    /// Loop ends replaced by fresh free labels; returns the tree and, per
    /// loop, the two labels used for its ends.
    pub fn underlying_tree(&self) -> (TaggedGraph, Vec<(String, String)>) {
        let taken: BTreeSet<&str> = self.free_labels().into_iter().collect();
        let mut fresh = (1usize..).map(|i| format!("l{i}")).filter(|l| !taken.contains(l.as_str()));
        let mut names: BTreeMap<u32, (String, Option<String>)> = BTreeMap::new();
        let Some((shape, slots)) = &self.body else {
            return (TaggedGraph::empty(), Vec::new());
        };
        let new_slots = slots
            .iter()
            .map(|s| match s {
                Slot::Free(l) => Slot::Free(l.clone()),
                Slot::Loop(id) => {
                    let name = fresh.next().expect("unbounded");
                    let entry = names.entry(*id).or_insert((name.clone(), None));
                    if entry.0 != name {
                        entry.1 = Some(name.clone());
                    }
                    Slot::Free(name)
                }
            })
            .collect();
        let pairs = names
            .into_values()
            .map(|(a, b)| (a, b.expect("loop with two ends")))
            .collect();
        (
            TaggedGraph {
                body: Some((shape.clone(), new_slots)),
            },
            pairs,
        )
    }

    /// Inverse of [`TaggedGraph::underlying_tree`]: the named label pairs
    /// become loops again. Pairings outside the nested-adjacency family are
    /// kept as they are.
    pub fn recontract(&self, pairs: &[(String, String)]) -> TaggedGraph {
        let mut ids: BTreeMap<&str, u32> = BTreeMap::new();
        for (i, (a, b)) in pairs.iter().enumerate() {
            ids.insert(a, i as u32 + 1);
            ids.insert(b, i as u32 + 1);
        }
        let Some((shape, slots)) = &self.body else {
            return TaggedGraph::empty();
        };
        let slots = slots
            .iter()
            .map(|s| match s {
                Slot::Free(l) => match ids.get(l.as_str()) {
                    Some(id) => Slot::Loop(*id),
                    None => s.clone(),
                },
                other => other.clone(),
            })
            .collect();
        TaggedGraph::from_parts_relaxed(shape.clone(), slots).expect("pairs come from the same graph")
    }

    /// Renders in the bracket grammar; see [`parse_graph`].
    pub fn render(&self) -> String {
        text::render(self)
    }

    /// JSON export: nested-array shape, leaf list and 1-based loop pairs.
    pub fn to_json(&self) -> Value {
        fn shape_json(s: &Shape) -> Value {
            match s {
                Shape::Leaf => json!(0),
                Shape::Node(l, r) => json!([shape_json(l), shape_json(r)]),
            }
        }
        match &self.body {
            None => json!({ "empty": true, "shape": null, "leaves": [], "loops": [] }),
            Some((shape, slots)) => json!({
                "empty": false,
                "shape": shape_json(shape),
                "leaves": slots.iter().map(|s| match s {
                    Slot::Free(l) => json!(l),
                    Slot::Loop(_) => Value::Null,
                }).collect::<Vec<_>>(),
                "loops": self.loop_positions().iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
                "text": self.render(),
            }),
        }
    }
}

impl fmt::Display for TaggedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn canonical_loop_ids(slots: Vec<Slot>) -> Vec<Slot> {
    let mut map: BTreeMap<u32, u32> = BTreeMap::new();
    slots
        .into_iter()
        .map(|s| match s {
            Slot::Loop(id) => {
                let next = map.len() as u32 + 1;
                Slot::Loop(*map.entry(id).or_insert(next))
            }
            free => free,
        })
        .collect()
}

/// Grafting: a new root vertex with `left` and `right` as branches.
pub fn graft(left: &TaggedGraph, right: &TaggedGraph) -> Result<TaggedGraph> {
    let (Some((ls, lslots)), Some((rs, rslots))) = (left.parts(), right.parts()) else {
        return Err(Error::EmptyOperand("graft"));
    };
    let offset = lslots
        .iter()
        .filter_map(|s| match s {
            Slot::Loop(id) => Some(*id),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let slots = lslots
        .iter()
        .cloned()
        .chain(rslots.iter().map(|s| match s {
            Slot::Loop(id) => Slot::Loop(id + offset),
            free => free.clone(),
        }))
        .collect();
    TaggedGraph::from_parts_relaxed(Shape::node(ls.clone(), rs.clone()), slots)
}

/// Joins the free leaves at 1-based positions `pos` and `pos + 1` of the
/// current free-leaf order into a loop. Canonically labelled graphs are
/// relabelled canonically afterwards.
pub fn contract(g: &TaggedGraph, pos: usize) -> Result<TaggedGraph> {
    let free: Vec<usize> = g
        .slots()
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s, Slot::Free(_)))
        .map(|(i, _)| i)
        .collect();
    if free.len() < 2 {
        return Err(Error::PositionOutOfRange { pos, free: free.len() });
    }
    if pos == 0 || pos >= free.len() {
        return Err(Error::PositionOutOfRange { pos, free: free.len() });
    }
    let canonical = g.has_canonical_labels();
    let (shape, slots) = g.parts().expect("non-empty");
    let id = g.loop_count() as u32 + 1;
    let mut slots = slots.to_vec();
    slots[free[pos - 1]] = Slot::Loop(id);
    slots[free[pos]] = Slot::Loop(id);
    let out = TaggedGraph::new(shape.clone(), slots)?;
    Ok(if canonical { out.relabel_canonical() } else { out })
}

/// Prunes `shape` to the slots with `keep[i]`, smoothing degree-two
/// vertices. Returns `None` when nothing is kept.
pub(crate) fn prune(shape: &Shape, slots: &[Slot], keep: &[bool]) -> Option<(Shape, Vec<Slot>)> {
    fn go(
        shape: &Shape,
        slots: &[Slot],
        keep: &[bool],
        pos: &mut usize,
        out: &mut Vec<Slot>,
    ) -> Option<Shape> {
        match shape {
            Shape::Leaf => {
                let i = *pos;
                *pos += 1;
                keep[i].then(|| {
                    out.push(slots[i].clone());
                    Shape::Leaf
                })
            }
            Shape::Node(l, r) => {
                let a = go(l, slots, keep, pos, out);
                let b = go(r, slots, keep, pos, out);
                match (a, b) {
                    (Some(a), Some(b)) => Some(Shape::node(a, b)),
                    (a, b) => a.or(b),
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut pos = 0;
    go(shape, slots, keep, &mut pos, &mut out).map(|s| (s, out))
}

/// The tree spanned by the leaves carrying `labels`.
pub fn induced_subgraph(g: &TaggedGraph, labels: &BTreeSet<String>) -> Result<TaggedGraph> {
    if !g.is_loop_free() {
        return Err(Error::LoopBearing("induced_subgraph"));
    }
    let present: BTreeSet<&str> = g.free_labels().into_iter().collect();
    if let Some(l) = labels.iter().find(|l| !present.contains(l.as_str())) {
        return Err(Error::UnknownLabel(l.clone()));
    }
    let Some((shape, slots)) = g.parts() else {
        return Ok(TaggedGraph::empty());
    };
    let keep: Vec<bool> = slots
        .iter()
        .map(|s| matches!(s, Slot::Free(l) if labels.contains(l)))
        .collect();
    Ok(match prune(shape, slots, &keep) {
        None => TaggedGraph::empty(),
        Some((s, v)) => TaggedGraph { body: Some((s, v)) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> TaggedGraph {
        parse_graph(s).unwrap()
    }

    fn set(ls: &[&str]) -> BTreeSet<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn graft_shapes() {
        let one = TaggedGraph::leaf("1");
        let two = TaggedGraph::leaf("2");
        assert_eq!(graft(&one, &two).unwrap().render(), "<1 2>");
        let t = graft(&g("<1 2>"), &TaggedGraph::leaf("3")).unwrap();
        assert_eq!(t.render(), "<<1 2> 3>");
        let t = graft(&one, &g("<2 3>")).unwrap();
        assert_eq!(t.render(), "<1 <2 3>>");
        assert_eq!(t.degree(), 2);
        assert!(graft(&TaggedGraph::empty(), &one).is_err());
    }

    #[test]
    fn contract_examples() {
        let c = contract(&g("<1 2>"), 1).unwrap();
        assert_eq!(c, g("<1 2> | 1~2"));
        assert_eq!(c.loop_count(), 1);
        let c = contract(&g("<1 <2 3>>"), 2).unwrap();
        assert_eq!(c, g("<1 <_ _>> | 2~3"));
        let c = contract(&contract(&g("<<1 2> <3 4>>"), 1).unwrap(), 1).unwrap();
        assert_eq!(c.free_labels().len(), 0);
        assert_eq!(c.loop_positions(), vec![(1, 2), (3, 4)]);
        assert!(c.is_balanced());
        let nested = contract(&contract(&g("<<1 2> <3 4>>"), 2).unwrap(), 1).unwrap();
        assert_eq!(nested.loop_positions(), vec![(1, 4), (2, 3)]);
    }

    #[test]
    fn contract_errors() {
        assert!(matches!(contract(&g("<1>"), 1), Err(Error::PositionOutOfRange { .. })));
        assert!(matches!(contract(&g("<1 2>"), 2), Err(Error::PositionOutOfRange { .. })));
        assert!(matches!(contract(&g("<1 2>"), 0), Err(Error::PositionOutOfRange { .. })));
    }

    #[test]
    fn induced_examples() {
        let t = g("<<1 2> 3>");
        assert_eq!(induced_subgraph(&t, &set(&["1", "3"])).unwrap(), g("<1 3>"));
        assert_eq!(induced_subgraph(&t, &set(&[])).unwrap(), TaggedGraph::empty());
        assert_eq!(induced_subgraph(&t, &set(&["1", "2"])).unwrap(), g("<1 2>"));
        assert_eq!(induced_subgraph(&t, &set(&["1", "2", "3"])).unwrap(), t);
        assert!(matches!(
            induced_subgraph(&t, &set(&["9"])),
            Err(Error::UnknownLabel(_))
        ));
        assert!(induced_subgraph(&g("<1 2> | 1~2"), &set(&[])).is_err());
    }

    #[test]
    fn balanced_condition() {
        assert!(TaggedGraph::new(Shape::all(2)[0].clone(), vec![Slot::Loop(1), Slot::free("a"), Slot::Loop(1)]).is_err());
        let crossing = TaggedGraph::new(
            Shape::all(3)[0].clone(),
            vec![Slot::Loop(1), Slot::Loop(2), Slot::Loop(1), Slot::Loop(2)],
        );
        assert!(matches!(crossing, Err(Error::InvalidLoop(_))));
    }

    #[test]
    fn underlying_tree_round_trip() {
        let h = g("<<_ _> <1 <_ _>>> | 1~2, 4~5");
        let (tree, pairs) = h.underlying_tree();
        assert!(tree.is_loop_free());
        assert_eq!(pairs.len(), 2);
        assert_eq!(tree.recontract(&pairs), h);
    }
}
