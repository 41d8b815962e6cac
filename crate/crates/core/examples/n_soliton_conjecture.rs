//! The generic N-soliton sum for N = 4 and 5, checked against the bilinear
//! system, plus the two pair-correction sign conventions at N = 2.

use susy_gardner::solitons::{Dressing, PairSign, SolitonSum};
use susy_gardner::verify;
use susy_gardner::*;

fn worst(tau: &TauPair) -> Result<f64> {
    Ok(verify::bilinear_residual(tau, tolerances::EXACT)?
        .iter()
        .map(|r| r.max_abs)
        .fold(0.0, f64::max))
}

fn main() -> Result<()> {
    for ks in [vec![0.5, 1.0, 1.5, 2.5], vec![0.4, 0.9, 1.3, 1.8, 2.2]] {
        let spec = SolitonSpec::solitons(Regime::Focusing, 1.0, ks.iter().map(|&k| SolitonEntry::new(k)).collect());
        let tau = build_soliton_tau(&spec)?;
        println!(
            "N={} k={ks:?}: XT {:.2e}, xt {:.2e}",
            ks.len(),
            worst(&tau)?,
            worst(&tau.to_frame(Frame::Xt))?
        );
    }

    let ks = [1.0, 2.0];
    let ones = [C64::new(1.0, 0.0); 2];
    for pair_sign in [PairSign::Consistent, PairSign::AsDisplayed] {
        let (g, f) = SolitonSum {
            regime: Regime::Focusing,
            sigma: 1.0,
            ks: &ks,
            phase_factors: &ones,
            fermions: &[true, true],
            dressing: Dressing::Active,
            pair_sign,
        }
        .build()?;
        let tau = TauPair::from_parts(g, f, Regime::Focusing, Frame::XT, 1.0);
        println!("N=2 {pair_sign:?}: residual {:.2e}", worst(&tau)?);
    }
    Ok(())
}
