use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::{eo, Shape, Slot, TaggedGraph};
use crate::error::{Error, Result};

/// Catalan number `(2n)! / (n! (n+1)!)`.
pub fn catalan(n: u32) -> BigUint {
    // C_{k+1} = C_k * 2(2k+1) / (k+2)
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

/// Named graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphFamilyId {
    /// Loop-free trees with `n` vertices, leaves labelled `1..=n+1`.
    Y(usize),
    /// Loop-free graphs with `n` leaves; `X(0)` is the empty element.
    X(usize),
    /// Every nearest-neighbour contraction pattern on graphs of `X(n)`.
    Xbar(usize),
    /// Unlabelled recursion graphs with `k` free leaves and `g` loops.
    Xg { k: usize, g: usize },
    /// Recursion graphs with `k` free leaves labelled `1..=k` and `g` loops.
    Eo { k: usize, g: usize },
}

impl std::fmt::Display for GraphFamilyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphFamilyId::Y(n) => write!(f, "Y({n})"),
            GraphFamilyId::X(n) => write!(f, "X({n})"),
            GraphFamilyId::Xbar(n) => write!(f, "Xbar({n})"),
            GraphFamilyId::Xg { k, g } => write!(f, "Xg({k},{g})"),
            GraphFamilyId::Eo { k, g } => write!(f, "EO({k},{g})"),
        }
    }
}

/// Work cap for enumerations, read from `HOPF_TR_MAX_WORK`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_work: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_work: 5_000_000 }
    }
}

impl Limits {
    pub const ENV_VAR: &'static str = "HOPF_TR_MAX_WORK";

    pub fn from_env() -> Limits {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(|max_work| Limits { max_work })
            .unwrap_or_default()
    }

    pub fn check(&self, what: impl std::fmt::Display, size: u128) -> Result<()> {
        if size > self.max_work {
            Err(Error::ResourceLimit {
                what: what.to_string(),
                size,
                limit: self.max_work,
            })
        } else {
            Ok(())
        }
    }
}

fn big(v: BigUint) -> u128 {
    v.to_u128().unwrap_or(u128::MAX)
}

/// All nested-adjacency pairings on `n` positions with exactly `loops`
/// pairs (any number when `None`). `None` entries are free positions.
pub fn contraction_patterns(n: usize, loops: Option<usize>) -> Vec<Vec<Option<u32>>> {
    fn go(
        n: usize,
        cur: &mut Vec<Option<u32>>,
        stack: &mut Vec<u32>,
        next: &mut u32,
        out: &mut Vec<Vec<Option<u32>>>,
    ) {
        let left = n - cur.len();
        if left == 0 {
            if stack.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        if stack.len() > left {
            return;
        }
        if stack.is_empty() {
            cur.push(None);
            go(n, cur, stack, next, out);
            cur.pop();
        }
        if let Some(&top) = stack.last() {
            stack.pop();
            cur.push(Some(top));
            go(n, cur, stack, next, out);
            cur.pop();
            stack.push(top);
        }
        *next += 1;
        let id = *next;
        stack.push(id);
        cur.push(Some(id));
        go(n, cur, stack, next, out);
        cur.pop();
        stack.pop();
        *next -= 1;
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut Vec::new(), &mut 0, &mut out);
    if let Some(g) = loops {
        out.retain(|p| p.iter().filter(|s| s.is_some()).count() == 2 * g);
    }
    out
}

fn canonical_tree(shape: Shape) -> TaggedGraph {
    let slots = (1..=shape.leaves()).map(|i| Slot::Free(i.to_string())).collect();
    TaggedGraph::new(shape, slots).expect("canonical labels are distinct")
}

fn sorted(mut v: Vec<TaggedGraph>) -> Vec<TaggedGraph> {
    v.sort_by_cached_key(TaggedGraph::render);
    v.dedup();
    v
}

/// Enumerates a family, sorted by rendered text.
pub fn enumerate_family(id: GraphFamilyId, limits: &Limits) -> Result<Vec<TaggedGraph>> {
    match id {
        GraphFamilyId::Y(n) => {
            limits.check(id, big(catalan(n as u32)))?;
            Ok(sorted(Shape::all(n).into_iter().map(canonical_tree).collect()))
        }
        GraphFamilyId::X(0) => Ok(vec![TaggedGraph::empty()]),
        GraphFamilyId::X(n) => enumerate_family(GraphFamilyId::Y(n - 1), limits),
        GraphFamilyId::Xbar(0) => Ok(vec![TaggedGraph::empty()]),
        GraphFamilyId::Xbar(n) => {
            limits.check(id, big(catalan(n as u32 - 1)).saturating_mul(1u128 << n.min(100)))?;
            let patterns = contraction_patterns(n, None);
            let mut out = Vec::new();
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
                    out.push(TaggedGraph::new(shape.clone(), slots)?);
                }
            }
            Ok(sorted(out))
        }
        GraphFamilyId::Xg { k, g } | GraphFamilyId::Eo { k, g } => {
            let vertices = (2 * g + k).saturating_sub(1).min(100);
            let size = big(eo::recursion_term_count(g, k)).saturating_mul(1u128 << vertices);
            limits.check(id, size)?;
            let family = eo::eo_family(k, g)?;
            Ok(match id {
                GraphFamilyId::Eo { .. } => sorted(family),
                _ => sorted(eo::unlabelled_classes(k, g)?),
            })
        }
    }
}
