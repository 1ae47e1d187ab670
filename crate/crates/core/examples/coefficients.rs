//! Coefficient tables in the three modes, the identity check, and the two
//! ambiguity verdicts.

use hopf_tr::graph::Limits;
use hopf_tr::spectral::{
    coeff_table, decide_catalan_index, decide_handle_factor, verify_coproduct_identity, CoeffMode, CurveModel,
};

fn main() -> hopf_tr::Result<()> {
    let limits = Limits::default();
    for mode in [CoeffMode::Statement, CoeffMode::Proof, CoeffMode::Brute] {
        print!("{}", coeff_table(0, 4, mode, &limits)?);
    }
    for (g, k) in [(0, 3), (1, 2)] {
        let report = verify_coproduct_identity(&CurveModel::airy(), g, k, &limits)?;
        for part in &report.parts {
            println!("({g},{k}) {}: {}", part.kind, if part.holds() { "holds" } else { "fails" });
        }
    }
    println!("{}", decide_catalan_index(&limits)?);
    println!("{}", decide_handle_factor(&limits)?);
    Ok(())
}
