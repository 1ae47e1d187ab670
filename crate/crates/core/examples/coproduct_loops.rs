use hopf_tr::hopf::{coproduct, parse_combo, reduced_coproduct};

fn main() -> hopf_tr::Result<()> {
    for text in ["<<1 2> 3>", "<_ _> | 1~2", "<1 <_ _>> | 2~3"] {
        let x = parse_combo(text)?;
        println!("coproduct {text}\n  = {}", coproduct(&x)?);
        println!("  reduced: {}", reduced_coproduct(&x)?);
    }
    Ok(())
}
