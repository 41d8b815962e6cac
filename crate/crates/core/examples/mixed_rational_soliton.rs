//! Lump plus soliton: exactness and the asymptotic phase shift.

use susy_gardner::verify;
use susy_gardner::*;

fn main() -> Result<()> {
    let tau = build_mixed_rational_soliton_tau(1.0, 0.3, 1.0, 0.0)?;
    for report in verify::bilinear_residual(&tau, tolerances::EXACT)? {
        println!("{}", report.summary());
    }
    let report = verify::asymptotic_shift_check(&tau, &[-200.0, -50.0, 50.0, 200.0], 1e-6)?;
    println!("soliton frame (deviation decays like 1/|T|):");
    for row in &report.soliton_frame {
        println!("  T={:7.1}  {:.3e}", row.t, row.max_dev);
    }
    println!("lump frame:");
    for row in &report.rational_frame {
        println!("  T={:7.1}  {:.3e}", row.t, row.max_dev);
    }
    for s in &report.shifts {
        println!(
            "shift at T={}: 1: {:.4}, θξ10: {:.4}, θξ2: {:.4}, ξ10ξ2: {:.4}",
            s.t, s.scalar, s.theta_xi10, s.theta_xi2, s.xi10_xi2
        );
    }
    Ok(())
}
