use hopf_tr::graph::Limits;
use hopf_tr::hopf::{verify_axioms, LawStatus};

fn main() -> hopf_tr::Result<()> {
    let report = verify_axioms(5, 1, &Limits::default())?;
    for law in &report.laws {
        match &law.status {
            LawStatus::Pass => println!("{:<22} pass ({} inputs)", law.law.name(), law.checked),
            LawStatus::Violation { counterexample, attributed } => {
                let inputs: Vec<String> = counterexample.iter().map(|g| g.render()).collect();
                let why = if *attributed { "straddle rule" } else { "unattributed" };
                println!("{:<22} violation on {inputs:?} ({why})", law.law.name());
            }
        }
    }
    Ok(())
}
