//! W_n^g as a weighted sum over tagged graphs, against the recursion.

use hopf_tr::graph::eo::eo_weighted;
use hopf_tr::spectral::{phi, w_direct, w_graph_sum, CurveModel};

fn main() -> hopf_tr::Result<()> {
    let curve = CurveModel::airy();
    for (graph, weight) in eo_weighted(2, 0)? {
        println!("{weight} x phi({graph}) = {}", phi(&curve, &graph)?.value);
    }
    for (g, n) in [(0, 4), (1, 2), (2, 1)] {
        let by_graphs = w_graph_sum(&curve, g, n)?;
        let direct = w_direct(&curve, g, n)?;
        println!("W_{n}^{g}: graph sum equals recursion: {}", by_graphs == direct);
    }
    Ok(())
}
