//! The rational lump and its long-wave derivation from a one-soliton.

use susy_gardner::verify::{self, Grid, Superfield};
use susy_gardner::*;

fn main() -> Result<()> {
    let tau = build_rational_tau(1.0, 1.0, 1.0)?;
    for report in verify::bilinear_residual(&tau, tolerances::EXACT)? {
        println!("{}", report.summary());
    }
    let field = Superfield::new(&tau);
    for t in [-2.0, 0.0, 2.0] {
        // the peak rides along X = 3σ²T
        let v = field.value(3.0 * t, t)?;
        println!("T={t:4.1}: θ-part at peak {:.6}", v.coeff(0b01).re);
    }

    let grid = Grid::new(-5.0, 5.0, 21, -5.0, 5.0, 21)?;
    let table = verify::longwave_convergence(1.0, 1.0, &[1e-1, 1e-2, 1e-3], &grid)?;
    println!("   eps     deviation   ratio   order");
    for row in &table.rows {
        println!(
            "{:7.0e}  {:.4e}  {:>6}  {:>6}",
            row.eps,
            row.deviation,
            row.ratio.map_or("-".into(), |r| format!("{r:.2}")),
            row.order.map_or("-".into(), |p| format!("{p:.3}"))
        );
    }
    Ok(())
}
