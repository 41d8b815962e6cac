//! One supersoliton in both regimes: bilinear check, PDE check and a profile.

use susy_gardner::verify::{self, PdeForm, Superfield};
use susy_gardner::*;

fn main() -> Result<()> {
    for (regime, k) in [(Regime::Focusing, 1.0), (Regime::Defocusing, 0.5)] {
        let spec = SolitonSpec::solitons(regime, 1.0, vec![SolitonEntry::new(k)]);
        let tau = build_soliton_tau(&spec)?;
        for report in verify::bilinear_residual(&tau, tolerances::EXACT)? {
            println!("{regime}: {}", report.summary());
        }
        let lab = tau.to_frame(Frame::Xt);
        let points = verify::random_points(0, 16, -10.0, 10.0);
        let pde = verify::pde_residual(&lab, PdeForm::Superfield, &points, tolerances::JET)?;
        println!("{regime}: {}", pde.summary());

        let field = Superfield::new(&tau);
        println!("   X      ξ-part       θ-part");
        for i in -4..=4 {
            let x = i as f64;
            let v = field.value(x, 0.0)?;
            println!("{x:5.1}  {:>11.6}  {:>11.6}", v.coeff(0b10).re, v.coeff(0b01).re);
        }
    }
    Ok(())
}
