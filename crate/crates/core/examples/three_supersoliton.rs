//! Three supersolitons: exact bilinear residuals in both frames and the
//! fermion-free reduction to the classical Gardner tau pair.

use susy_gardner::verify;
use susy_gardner::*;

fn main() -> Result<()> {
    let ks = [1.0, 2.0, 3.0];
    for regime in [Regime::Focusing, Regime::Defocusing] {
        let spec = SolitonSpec::solitons(regime, 1.0, ks.iter().map(|&k| SolitonEntry::new(k)).collect());
        let tau = build_soliton_tau(&spec)?;
        println!("{regime}: {} terms in g, {} in f", tau.g.terms().len(), tau.f.terms().len());
        for frame in [Frame::XT, Frame::Xt] {
            for report in verify::bilinear_residual(&tau.to_frame(frame), tolerances::EXACT)? {
                println!("  {}", report.summary());
            }
        }
    }

    let bosonic = SolitonSpec::solitons(Regime::Focusing, 1.0, ks.iter().map(|&k| SolitonEntry::bosonic(k)).collect());
    let tau = build(&bosonic)?;
    let worst = verify::classical_residuals(&tau)?
        .iter()
        .map(SuperPoly::max_abs)
        .fold(0.0, f64::max);
    println!("classical reduction residual: {worst:.1e}");
    Ok(())
}
