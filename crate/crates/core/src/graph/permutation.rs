use std::collections::BTreeSet;

use super::{Shape, Slot, TaggedGraph};
use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let distinct: BTreeSet<usize> = images.iter().copied().collect();
        if distinct.len() != n || images.iter().any(|&v| v == 0 || v > n) {
            return Err(Error::InvalidPermutation(format!("{images:?}")));
        }
        Ok(Permutation(images))
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            let n = used.len();
            if cur.len() == n {
                out.push(Permutation(cur.clone()));
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    cur.push(v + 1);
                    go(cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", body.join(" "))
    }
}

/// Builds the tree of a permutation: leaves `1..=n+1`, the gap between
/// leaves `j` and `j+1` receives the value `p_j`, and brackets are added in
/// increasing order of value.
pub fn tree_from_permutation(p: &Permutation) -> Result<TaggedGraph> {
    if p.is_empty() {
        return Err(Error::InvalidPermutation("empty permutation".into()));
    }
    let n = p.len();
    // blocks[i] = (first leaf, shape); gaps close between adjacent blocks.
    let mut blocks: Vec<(usize, Shape)> = (0..=n).map(|i| (i, Shape::Leaf)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| p.images()[j]);
    for gap in order {
        // the block containing leaf `gap` is followed by the block starting at `gap + 1`
        let right = blocks
            .iter()
            .position(|(first, _)| *first == gap + 1)
            .expect("gap boundary is a block start");
        let (_, rshape) = blocks.remove(right);
        let lshape = std::mem::replace(&mut blocks[right - 1].1, Shape::Leaf);
        blocks[right - 1].1 = Shape::node(lshape, rshape);
    }
    let (_, shape) = blocks.pop().expect("one block remains");
    let slots = (1..=n + 1).map(|i| Slot::Free(i.to_string())).collect();
    TaggedGraph::new(shape, slots)
}

/// All permutations whose tree has the shape of `t`.
pub fn permutation_fiber(t: &TaggedGraph) -> Result<Vec<Permutation>> {
    let Some(shape) = t.shape() else {
        return Err(Error::EmptyOperand("permutation_fiber"));
    };
    if !t.is_loop_free() {
        return Err(Error::LoopBearing("permutation_fiber"));
    }
    let n = shape.degree();
    if n == 0 {
        return Err(Error::InvalidPermutation("degree-zero tree has no permutation".into()));
    }
    Ok(Permutation::all(n)
        .into_iter()
        .filter(|p| tree_from_permutation(p).is_ok_and(|g| g.shape() == Some(shape)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn worked_example_231() {
        let t = tree_from_permutation(&perm(&[2, 3, 1])).unwrap();
        assert_eq!(t.render(), "<<1 2> <3 4>>");
        let u = tree_from_permutation(&perm(&[1, 3, 2])).unwrap();
        assert_eq!(t, u);
        assert_eq!(tree_from_permutation(&perm(&[1])).unwrap().render(), "<1 2>");
    }

    #[test]
    fn fibers() {
        let f = permutation_fiber(&parse_graph("<<1 2> <3 4>>").unwrap()).unwrap();
        assert!(f.contains(&perm(&[2, 3, 1])) && f.contains(&perm(&[1, 3, 2])));
        assert_eq!(permutation_fiber(&parse_graph("<1 2>").unwrap()).unwrap(), vec![perm(&[1])]);
        assert!(permutation_fiber(&parse_graph("<1 2> | 1~2").unwrap()).is_err());
        assert!(permutation_fiber(&TaggedGraph::empty()).is_err());
    }

    #[test]
    fn invalid_permutations() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(tree_from_permutation(&Permutation(vec![])).is_err());
    }
}
