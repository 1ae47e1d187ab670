use std::collections::BTreeMap;

use super::curve::{recursion_kernel, CurveModel};
use super::recursion::{check_bounds, point, Correlator};
use crate::error::{Error, Result};
use crate::graph::eo::{eo_classes, eo_weighted};
use crate::graph::{Shape, Slot, TaggedGraph};
use crate::hopf::Q;
use crate::laurent::{residue_of_product, RatExpr};

#[derive(Clone, Copy, Debug)]
enum Child {
    Vertex(usize),
    Slot(usize),
}

/// Vertices in preorder with their children and parents; slot `i` hangs
/// from `slot_parent[i] = (vertex, is_right)`.
struct Skeleton {
    children: Vec<[Child; 2]>,
    parent: Vec<Option<usize>>,
    slot_parent: Vec<(usize, bool)>,
}

impl Skeleton {
    fn new(shape: &Shape) -> Skeleton {
        let mut s = Skeleton {
            children: Vec::new(),
            parent: Vec::new(),
            slot_parent: Vec::new(),
        };
        s.visit(shape, None);
        s
    }

    fn visit(&mut self, shape: &Shape, parent: Option<(usize, bool)>) -> Child {
        match shape {
            Shape::Leaf => {
                let i = self.slot_parent.len();
                self.slot_parent.push(parent.expect("root is a vertex"));
                Child::Slot(i)
            }
            Shape::Node(l, r) => {
                let id = self.children.len();
                self.children.push([Child::Slot(0); 2]);
                self.parent.push(parent.map(|p| p.0));
                let lc = self.visit(l, Some((id, false)));
                let rc = self.visit(r, Some((id, true)));
                self.children[id] = [lc, rc];
                Child::Vertex(id)
            }
        }
    }

    fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        while let Some(p) = self.parent[v] {
            if p == a {
                return true;
            }
            v = p;
        }
        false
    }
}

fn vertex_var(id: usize) -> String {
    format!("_v{id}")
}

/// `B(s1 a, s2 b)` where `s = -1` when the flag is set.
fn propagator(a: (&str, bool), b: (&str, bool)) -> Result<RatExpr> {
    let side = |(v, neg): (&str, bool)| {
        let x = RatExpr::var(v);
        if neg {
            -&x
        } else {
            x
        }
    };
    if a.0 == b.0 && a.1 == b.1 {
        return Err(Error::IdenticalVariables(a.0.to_string()));
    }
    (&side(a) - &side(b)).pow(-2)
}

struct Evaluator<'a> {
    curve: &'a CurveModel,
    sk: Skeleton,
    slots: &'a [Slot],
    partner: BTreeMap<usize, usize>,
    leaf_vars: &'a BTreeMap<String, String>,
}

impl Evaluator<'_> {
    /// Residue at vertex `v`, whose incoming edge comes from the point
    /// `parent` (a variable name; its sign does not enter the kernel).
    fn eval(&self, v: usize, parent: &str) -> Result<RatExpr> {
        let var = vertex_var(v);
        let mut factors = vec![recursion_kernel(self.curve, &var, parent)];
        for (right, child) in [false, true].into_iter().zip(self.sk.children[v]) {
            let here = (var.as_str(), right);
            let mut f = match child {
                Child::Vertex(w) => self.eval(w, &var)?,
                Child::Slot(i) => match &self.slots[i] {
                    Slot::Free(label) => {
                        let z = self
                            .leaf_vars
                            .get(label)
                            .ok_or_else(|| Error::LabelMismatch(format!("no variable for label `{label}`")))?;
                        propagator(here, (z, false))?
                    }
                    Slot::Loop(_) => {
                        let (u, u_right) = self.sk.slot_parent[self.partner[&i]];
                        if u == v {
                            // self-loop: counted once, on the right end
                            if right {
                                propagator(here, (&var, !right))?
                            } else {
                                RatExpr::one()
                            }
                        } else if self.sk.is_ancestor(u, v) {
                            propagator(here, (&vertex_var(u), u_right))?
                        } else if self.sk.is_ancestor(v, u) {
                            RatExpr::one()
                        } else {
                            return Err(Error::NotEoGraph(
                                "a loop joins two vertices that are not nested".into(),
                            ));
                        }
                    }
                },
            };
            if right {
                // conjugate slot: dq' = -dq
                f = -&f;
            }
            factors.push(f);
        }
        residue_of_product(&factors, &var)
    }
}

/// Evaluates the weighted map on one graph: `K` on skeleton edges, `B` on
/// leaf and loop edges, residues from the leaves towards the root. The
/// root edge ends at `root`; free label `l` sits at `leaf_vars[l]`.
pub fn phi_eval(
    curve: &CurveModel,
    graph: &TaggedGraph,
    root: &str,
    leaf_vars: &BTreeMap<String, String>,
) -> Result<Correlator> {
    let labels = graph.free_labels();
    if labels.len() != leaf_vars.len() || labels.iter().any(|l| !leaf_vars.contains_key(*l)) {
        return Err(Error::LabelMismatch(format!(
            "graph labels {labels:?} do not match the given variables"
        )));
    }
    let mut vars = vec![root.to_string()];
    vars.extend(leaf_vars.values().cloned());
    let value = match graph.parts() {
        None => return Err(Error::NotEoGraph("the empty graph has no root edge".into())),
        Some((Shape::Leaf, slots)) => match &slots[0] {
            Slot::Free(l) => propagator((root, false), (&leaf_vars[l], false))?,
            Slot::Loop(_) => unreachable!("a lone slot cannot hold a loop"),
        },
        Some((shape, slots)) => {
            let mut partner = BTreeMap::new();
            for (a, b) in graph.loop_positions() {
                partner.insert(a - 1, b - 1);
                partner.insert(b - 1, a - 1);
            }
            let ev = Evaluator {
                curve,
                sk: Skeleton::new(shape),
                slots,
                partner,
                leaf_vars,
            };
            ev.eval(0, root)?
        }
    };
    Ok(Correlator {
        genus: graph.loop_count(),
        vars,
        value,
    })
}

/// Leaf `l` at `z{l}`, root at `z0`; labels must be positive integers.
pub fn phi(curve: &CurveModel, graph: &TaggedGraph) -> Result<Correlator> {
    let mut leaf_vars = BTreeMap::new();
    for l in graph.free_labels() {
        let i: usize = l
            .parse()
            .ok()
            .filter(|i| *i > 0)
            .ok_or_else(|| Error::LabelMismatch(format!("label `{l}` is not a positive integer")))?;
        leaf_vars.insert(l.to_string(), point(i));
    }
    let mut c = phi_eval(curve, graph, "z0", &leaf_vars)?;
    // numeric order, so z10 follows z9
    c.vars.sort_by_key(|v| v[1..].parse::<usize>().unwrap_or(usize::MAX));
    Ok(c)
}

fn correlator(g: usize, n: usize, value: RatExpr) -> Correlator {
    Correlator {
        genus: g,
        vars: (0..n).map(point).collect(),
        value,
    }
}

/// `W_n^g` as the weighted sum of `phi` over the balanced EO graphs.
pub fn w_graph_sum(curve: &CurveModel, g: usize, n: usize) -> Result<Correlator> {
    check_bounds(g, n)?;
    let mut total = RatExpr::zero();
    for (graph, w) in eo_weighted(n - 1, g)? {
        total = &total + &phi(curve, &graph)?.value.scale(&w);
    }
    Ok(correlator(g, n, total))
}

/// The same sum taken once per mirror class, weighted by the number of
/// recursion terms in the class.
pub fn w_class_sum(curve: &CurveModel, g: usize, n: usize) -> Result<Correlator> {
    check_bounds(g, n)?;
    let mut total = RatExpr::zero();
    for class in eo_classes(n - 1, g)? {
        let r = Q::from_integer(class.multiplicity.into());
        total = &total + &phi(curve, &class.representative)?.value.scale(&r);
    }
    Ok(correlator(g, n, total))
}
