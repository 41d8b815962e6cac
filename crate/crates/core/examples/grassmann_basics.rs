//! Grassmann arithmetic: anticommutation, nilpotency, inverse and logarithm.

use susy_gardner::{Grassmann, C64};

fn main() -> susy_gardner::Result<()> {
    let theta = Grassmann::generator(3, 0)?;
    let xi1 = Grassmann::generator(3, 1)?;
    let xi2 = Grassmann::generator(3, 2)?;

    let a = &theta * &xi1;
    let b = &xi1 * &theta;
    println!("θξ₁ + ξ₁θ = {:?}", (&a + &b).terms().collect::<Vec<_>>());
    println!("ξ₁ξ₁ is zero: {}", (&xi1 * &xi1).is_zero());

    // an even element with a nonzero body is invertible
    let x = &(&Grassmann::scalar(3, C64::new(2.0, 0.0)) + &(&xi1 * &xi2)) + &(&theta * &xi2).scale(C64::new(0.5, 0.0));
    let inv = x.inv()?;
    println!("x·x⁻¹ - 1 = {:.1e}", (&(&x * &inv) - &Grassmann::one(3)).max_abs());

    let roundtrip = x.log()?.exp()?;
    println!("exp(log x) - x = {:.1e}", (&roundtrip - &x).max_abs());

    for (mask, c) in inv.terms() {
        println!("  x⁻¹ mask {mask:03b}: {c}");
    }
    Ok(())
}
