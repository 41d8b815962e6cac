//! Defocusing shock and a soliton riding on it.

use susy_gardner::verify::{self, PdeForm, Superfield};
use susy_gardner::*;

fn main() -> Result<()> {
    let sigma = -2.0;
    let shock = build_shock_tau(sigma)?;
    let field = Superfield::new(&shock);
    println!("   X      θ-part      ξ-part");
    for i in -4..=4 {
        let x = i as f64;
        let v = field.value(x, 0.0)?;
        println!("{x:5.1}  {:10.6}  {:10.6}", v.coeff(0b01).re, v.coeff(0b10).re);
    }

    let mixed = build_mixed_shock_soliton_tau(sigma, 1.0, 0.0)?;
    for report in verify::bilinear_residual(&mixed, tolerances::EXACT)? {
        println!("{}", report.summary());
    }
    let points = verify::random_points(1, 16, -8.0, 8.0);
    let pde = verify::pde_residual(&mixed.to_frame(Frame::Xt), PdeForm::Potential, &points, tolerances::JET)?;
    println!("{}", pde.summary());
    Ok(())
}
