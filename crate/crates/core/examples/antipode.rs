//! Antipodes of small graphs. The sign law fails from the third power on;
//! this prints both sides.

use hopf_tr::graph::{contract, parse_graph};
use hopf_tr::hopf::{antipode, parse_combo, star, Q};
use hopf_tr::Combo;

fn main() -> hopf_tr::Result<()> {
    for text in ["<1>", "<1 2>", "<<1 2> 3>"] {
        println!("S({text}) = {}", antipode(&parse_combo(text)?)?);
    }

    let one = parse_combo("<1>")?;
    let cube = star(&star(&one, &one)?, &one)?;
    let reversed = star(&star(&parse_combo("<3>")?, &parse_combo("<2>")?)?, &one)?;
    println!("S(<1>^3)      = {}", antipode(&cube)?);
    println!("-<3>*<2>*<1>  = {}", reversed.scale(&Q::from_integer((-1).into())));

    let loop_graph = contract(&parse_graph("<1 2>")?, 1)?;
    println!("S({loop_graph}) = {}", antipode(&Combo::from_graph(loop_graph.clone()))?);
    Ok(())
}
