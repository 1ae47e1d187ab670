//! Graph families produced by the topological recursion.
//!
//! Recursion-form graphs are generated exactly as the terms of the
//! recursion: a root vertex whose children are either two smaller graphs
//! sharing the genus and the free labels, or a graph of genus one lower
//! with its extra leaf closed into a loop with a new right leaf. The loop
//! pairings produced by the second branch need not satisfy the
//! nested-adjacency condition; each such graph is traded for a balanced
//! member of its mirror class (children swapped at any set of vertices).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Shape, Slot, TaggedGraph};
use crate::error::{Error, Result};

fn binomial(n: usize, k: usize) -> BigUint {
    let mut c = BigUint::from(1u32);
    for i in 0..k {
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    c
}

/// Number of recursion-form graphs with genus `g` and `k` free leaves.
pub fn recursion_term_count(g: usize, k: usize) -> BigUint {
    let mut memo = BTreeMap::new();
    count(g, k, &mut memo)
}

fn count(g: usize, k: usize, memo: &mut BTreeMap<(usize, usize), BigUint>) -> BigUint {
    if g == 0 && k <= 1 {
        return BigUint::from(k);
    }
    if let Some(v) = memo.get(&(g, k)) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for m in 0..=g {
        for j in 0..=k {
            if (m, j) == (0, 0) || (g - m, k - j) == (0, 0) {
                continue;
            }
            total += binomial(k, j) * count(m, j, memo) * count(g - m, k - j, memo);
        }
    }
    if g > 0 {
        total += count(g - 1, k + 1, memo);
    }
    memo.insert((g, k), total.clone());
    total
}

type Memo = BTreeMap<(usize, Vec<String>), Vec<TaggedGraph>>;

fn join(a: &TaggedGraph, b: &TaggedGraph) -> TaggedGraph {
    super::graft(a, b).expect("non-empty operands")
}

fn close_handle(a: &TaggedGraph, marker: &str) -> TaggedGraph {
    let (shape, slots) = a.parts().expect("non-empty");
    let id = a.loop_count() as u32 + 1;
    let mut slots: Vec<Slot> = slots
        .iter()
        .map(|s| match s {
            Slot::Free(l) if l == marker => Slot::Loop(id),
            other => other.clone(),
        })
        .collect();
    slots.push(Slot::Loop(id));
    TaggedGraph::from_parts_relaxed(Shape::node(shape.clone(), Shape::Leaf), slots)
        .expect("marker occurs once")
}

/// Recursion-form graphs of genus `g` on the free labels `labels`.
pub fn recursion_form(g: usize, labels: &[String]) -> Vec<TaggedGraph> {
    let mut memo = Memo::new();
    let mut labels = labels.to_vec();
    labels.sort();
    rf(g, &labels, &mut memo)
}

fn rf(g: usize, labels: &[String], memo: &mut Memo) -> Vec<TaggedGraph> {
    if g == 0 && labels.len() <= 1 {
        return labels.iter().map(TaggedGraph::leaf).collect();
    }
    let key = (g, labels.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let n = labels.len();
    let mut out = Vec::new();
    for m in 0..=g {
        for mask in 0u64..(1 << n) {
            let (left, right): (Vec<_>, Vec<_>) =
                (0..n).partition(|i| mask & (1 << i) != 0);
            let left: Vec<String> = left.into_iter().map(|i| labels[i].clone()).collect();
            let right: Vec<String> = right.into_iter().map(|i| labels[i].clone()).collect();
            if (m == 0 && left.is_empty()) || (m == g && right.is_empty()) {
                continue;
            }
            let a = rf(m, &left, memo);
            let b = rf(g - m, &right, memo);
            for x in &a {
                for y in &b {
                    out.push(join(x, y));
                }
            }
        }
    }
    if g > 0 {
        let marker = format!("~h{g}");
        let mut extended = labels.to_vec();
        extended.push(marker.clone());
        extended.sort();
        for a in rf(g - 1, &extended, memo) {
            out.push(close_handle(&a, &marker));
        }
    }
    memo.insert(key, out.clone());
    out
}

fn variants(shape: &Shape, slots: &[Slot]) -> Vec<(Shape, Vec<Slot>)> {
    match shape {
        Shape::Leaf => vec![(Shape::Leaf, slots.to_vec())],
        Shape::Node(l, r) => {
            let n = l.leaves();
            let ls = variants(l, &slots[..n]);
            let rs = variants(r, &slots[n..]);
            let mut out = Vec::with_capacity(2 * ls.len() * rs.len());
            for (a, sa) in &ls {
                for (b, sb) in &rs {
                    out.push((
                        Shape::node(a.clone(), b.clone()),
                        sa.iter().chain(sb).cloned().collect(),
                    ));
                    out.push((
                        Shape::node(b.clone(), a.clone()),
                        sb.iter().chain(sa).cloned().collect(),
                    ));
                }
            }
            out
        }
    }
}

/// Every graph obtained by swapping children at some set of vertices.
pub fn mirror_orbit(g: &TaggedGraph) -> BTreeSet<TaggedGraph> {
    let Some((shape, slots)) = g.parts() else {
        return BTreeSet::from([TaggedGraph::empty()]);
    };
    variants(shape, slots)
        .into_iter()
        .map(|(s, v)| TaggedGraph::from_parts_relaxed(s, v).expect("permuted slots"))
        .collect()
}

fn label_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| i.to_string()).collect()
}

/// A mirror class of recursion-form graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EoClass {
    /// Smallest balanced member by rendered text.
    pub representative: TaggedGraph,
    /// Number of recursion-form graphs in the class.
    pub multiplicity: usize,
    /// All balanced members of the class, sorted by rendered text.
    pub members: Vec<TaggedGraph>,
}

impl EoClass {
    /// Weight carried by each balanced member so that the class total is
    /// its multiplicity.
    pub fn member_weight(&self) -> BigRational {
        BigRational::new(self.multiplicity.into(), self.members.len().into())
    }
}

/// Groups the recursion-form graphs for `W_{k+1}^g` by mirror class.
pub fn eo_classes(k: usize, g: usize) -> Result<Vec<EoClass>> {
    let forms = recursion_form(g, &label_names(k));
    let mut classes: BTreeMap<TaggedGraph, (BTreeSet<TaggedGraph>, usize)> = BTreeMap::new();
    for f in forms {
        let orbit = mirror_orbit(&f);
        let key = orbit.iter().next().expect("orbit contains the graph").clone();
        classes.entry(key).or_insert_with(|| (orbit, 0)).1 += 1;
    }
    let mut out = Vec::new();
    for (key, (orbit, multiplicity)) in classes {
        let mut members: Vec<TaggedGraph> = orbit.into_iter().filter(TaggedGraph::is_balanced).collect();
        if members.is_empty() {
            return Err(Error::NotEoGraph(format!("mirror class of {key} has no balanced member")));
        }
        members.sort_by_cached_key(TaggedGraph::render);
        out.push(EoClass {
            representative: members[0].clone(),
            multiplicity,
            members,
        });
    }
    out.sort_by_cached_key(|c| c.representative.render());
    Ok(out)
}

/// Balanced graphs with weights summing to the recursion-term count, free
/// leaves `1..=k`, sorted by rendered text.
pub fn eo_weighted(k: usize, g: usize) -> Result<Vec<(TaggedGraph, BigRational)>> {
    let mut out: Vec<(TaggedGraph, BigRational)> = eo_classes(k, g)?
        .into_iter()
        .flat_map(|c| {
            let w = c.member_weight();
            c.members.into_iter().map(move |m| (m, w.clone()))
        })
        .collect();
    out.sort_by_cached_key(|(m, _)| m.render());
    Ok(out)
}

/// The balanced members of all recursion classes for `W_{k+1}^g`.
pub fn eo_family(k: usize, g: usize) -> Result<Vec<TaggedGraph>> {
    Ok(eo_weighted(k, g)?.into_iter().map(|(m, _)| m).collect())
}

/// Recursion-form graphs with free labels forgotten, each unbalanced one
/// replaced by an unused balanced member of its mirror class (dropped when
/// the class has none left).
pub fn unlabelled_classes(k: usize, g: usize) -> Result<Vec<TaggedGraph>> {
    let forms: BTreeSet<TaggedGraph> = recursion_form(g, &label_names(k))
        .iter()
        .map(TaggedGraph::relabel_canonical)
        .collect();
    let mut classes: BTreeMap<TaggedGraph, (Vec<TaggedGraph>, Vec<TaggedGraph>)> = BTreeMap::new();
    for f in forms {
        let orbit: BTreeSet<TaggedGraph> = mirror_orbit(&f).iter().map(TaggedGraph::relabel_canonical).collect();
        let key = orbit.iter().next().expect("non-empty orbit").clone();
        let entry = classes.entry(key).or_insert_with(|| {
            let mut bal: Vec<TaggedGraph> = orbit.iter().filter(|m| m.is_balanced()).cloned().collect();
            bal.sort_by_cached_key(TaggedGraph::render);
            (bal, Vec::new())
        });
        entry.1.push(f);
    }
    let mut out = Vec::new();
    for (_, (balanced, forms)) in classes {
        let mut chosen: BTreeSet<TaggedGraph> = forms.iter().filter(|f| f.is_balanced()).cloned().collect();
        let pending = forms.iter().filter(|f| !f.is_balanced()).count();
        let spare: Vec<TaggedGraph> = balanced.into_iter().filter(|b| !chosen.contains(b)).take(pending).collect();
        chosen.extend(spare);
        out.extend(chosen);
    }
    out.sort_by_cached_key(TaggedGraph::render);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(g: usize, k: usize) -> usize {
        recursion_term_count(g, k).try_into().unwrap()
    }

    #[test]
    fn term_counts() {
        assert_eq!(n(0, 1), 1);
        assert_eq!(n(0, 2), 2);
        assert_eq!(n(0, 3), 12);
        assert_eq!(n(1, 0), 1);
        assert_eq!(n(1, 1), 4);
        assert_eq!(n(1, 2), 32);
        assert_eq!(n(2, 0), 5);
        assert_eq!(n(3, 0), 60);
    }

    #[test]
    fn generated_forms_match_counts() {
        for (g, k) in [(0, 2), (0, 3), (0, 4), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (3, 0)] {
            let forms = recursion_form(g, &label_names(k));
            assert_eq!(forms.len(), n(g, k), "g={g} k={k}");
            let distinct: BTreeSet<_> = forms.iter().collect();
            assert_eq!(distinct.len(), forms.len());
            assert!(forms.iter().all(|f| f.loop_count() == g && f.free_labels().len() == k));
        }
    }

    #[test]
    fn family_is_balanced_and_sized() {
        for (g, k) in [(0, 3), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (3, 0)] {
            let fam = eo_weighted(k, g).unwrap();
            let total: BigRational = fam.iter().map(|(_, w)| w.clone()).sum();
            assert_eq!(total, BigRational::from_integer(n(g, k).into()), "g={g} k={k}");
            assert!(fam.iter().all(|(m, _)| m.is_balanced()));
        }
    }

    #[test]
    fn small_unlabelled_families() {
        assert_eq!(unlabelled_classes(0, 1).unwrap().len(), 1);
        assert_eq!(unlabelled_classes(0, 1).unwrap()[0].render(), "<_ _> | 1~2");
        assert_eq!(unlabelled_classes(0, 2).unwrap().len(), 5);
        assert_eq!(unlabelled_classes(0, 3).unwrap().len(), 60);
    }

    #[test]
    fn class_multiplicities_sum() {
        let classes = eo_classes(1, 1).unwrap();
        assert_eq!(classes.iter().map(|c| c.multiplicity).sum::<usize>(), 4);
    }
}
