//! Lists the planar binary trees with three vertices and the recursion
//! graphs behind W_1^2.

use hopf_tr::graph::{catalan, enumerate_family, GraphFamilyId, Limits};

fn main() -> hopf_tr::Result<()> {
    let limits = Limits::default();
    let trees = enumerate_family(GraphFamilyId::Y(3), &limits)?;
    println!("Y(3): {} trees (Catalan {})", trees.len(), catalan(3));
    for t in &trees {
        println!("  {t}");
    }
    for t in enumerate_family(GraphFamilyId::Xg { k: 0, g: 2 }, &limits)? {
        println!("Xg(0,2): {t}");
    }
    Ok(())
}
