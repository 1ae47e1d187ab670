//! The leaf-preserving product, and its relation to the Loday-Ronco product.

use hopf_tr::hopf::{lr_product, parse_combo, star};

fn main() -> hopf_tr::Result<()> {
    let a = parse_combo("<1 2>")?;
    let b = parse_combo("<1>")?;
    println!("<1 2> * <1> = {}", star(&a, &b)?);
    println!("<1> * <1 2> = {}", star(&b, &a)?);

    // the same product through the Loday-Ronco side
    let x = parse_combo("<1 2>")?;
    let via_lr = lr_product(&lr_product(&x, &parse_combo("<1 2>")?)?, &x)?;
    assert_eq!(star(&x, &x)?, via_lr);
    println!("<1 2> * <1 2> = {via_lr}");

    let mut power = b.clone();
    for _ in 1..4 {
        power = star(&power, &b)?;
    }
    println!("fourth power of <1> has {} terms", power.len());
    Ok(())
}
