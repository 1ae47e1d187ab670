//! Correlators of the Airy curve and of a deformed curve.

use hopf_tr::spectral::{CurveModel, Recursion};

fn main() -> hopf_tr::Result<()> {
    let airy = Recursion::new(CurveModel::airy());
    for (g, n) in [(0, 3), (1, 1), (0, 4), (1, 2), (2, 1)] {
        println!("{}", airy.correlator(g, n)?);
    }

    let deformed = Recursion::new(CurveModel::parse("y: 1, 1/2")?);
    let w = deformed.correlator(1, 2)?;
    println!("{w}\n  symmetric: {}", w.is_symmetric());
    Ok(())
}
