//! Constructors for every closed-form solution family.
//!
//! All builders return tau pairs in the comoving `(X, T)` frame. Generator 0
//! is θ and soliton `i` (zero based) owns generator `i + 1`, whether or not
//! its fermionic parameter is switched on.
//!
//! The multi-soliton tau function is a sum over subsets `S` of the solitons:
//!
//! ```text
//! Σ_S  Π_{i∈S} a_i e^{η_i} Π_{i<j∈S} A_ij
//!      · exp[ θ Σ_{i∈S} ξ_i Π_{m∈S∖i} α_im + Σ_{i<j∈S} β_ij ξ_j ξ_i Π_{m∈S∖{i,j}} α_im α_jm ]
//! ```
//!
//! with the dressing products running over the solitons present in the
//! term ([`Dressing::Active`]). Note the order `ξ_j ξ_i` in the pair
//! correction: with `β_ij ξ_i ξ_j` the odd bilinear equation fails from two
//! solitons on ([`PairSign::AsDisplayed`] builds that variant). Reading the products over every index
//! ([`Dressing::AllIndices`]) is kept for comparison only; it does not
//! reproduce the three-soliton solution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{Grassmann, C64, THETA};
use crate::superpoly::{Frame, SuperPoly};
use crate::tau::{Regime, TauPair};

/// Two wave numbers closer than this are treated as coincident.
const K_COINCIDENCE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Soliton,
    Shock,
    Rational,
    MixedRationalSoliton,
    MixedShockSoliton,
}

fn default_fermion() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolitonEntry {
    pub k: f64,
    #[serde(default)]
    pub phase: f64,
    #[serde(default = "default_fermion")]
    pub fermion: bool,
}

impl SolitonEntry {
    pub fn new(k: f64) -> Self {
        SolitonEntry {
            k,
            phase: 0.0,
            fermion: true,
        }
    }

    pub fn bosonic(k: f64) -> Self {
        SolitonEntry {
            fermion: false,
            ..Self::new(k)
        }
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }
}

/// User-facing description of a solution to build.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolitonSpec {
    pub regime: Regime,
    pub sigma: f64,
    pub kind: Kind,
    #[serde(default)]
    pub entries: Vec<SolitonEntry>,
}

impl SolitonSpec {
    pub fn solitons(regime: Regime, sigma: f64, entries: Vec<SolitonEntry>) -> Self {
        SolitonSpec {
            regime,
            sigma,
            kind: Kind::Soliton,
            entries,
        }
    }

    pub fn ks(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.k).collect()
    }
}

/// Temporal rate of `e^{kX + ωT}` in the comoving frame.
pub fn dispersion(k: f64, sigma: f64, regime: Regime) -> C64 {
    let w = match regime {
        Regime::Focusing => -k * k * k - 3.0 * k * sigma * sigma,
        Regime::Defocusing => -k * k * k + 3.0 * k * sigma * sigma,
    };
    C64::new(w, 0.0)
}

/// Amplitudes and pairwise interaction coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionData {
    /// f-side amplitudes `a_i`.
    pub a: Vec<C64>,
    /// g-side amplitudes: `a_i*` (focusing) or `b_i = 1 − k_i/σ` (defocusing).
    pub b: Vec<C64>,
    /// `A_ij = ((k_i − k_j)/(k_i + k_j))²`.
    pub big_a: Vec<Vec<f64>>,
    /// `β_ij = 2/(k_i − k_j)`.
    pub beta: Vec<Vec<f64>>,
    /// `α_ij = (k_i + k_j)/(k_i − k_j)`.
    pub alpha: Vec<Vec<f64>>,
}

impl InteractionData {
    pub fn new(regime: Regime, sigma: f64, ks: &[f64]) -> Result<Self> {
        check_sigma(sigma)?;
        check_wave_numbers(ks)?;
        let n = ks.len();
        let (a, b) = ks
            .iter()
            .map(|&k| match regime {
                Regime::Focusing => {
                    let a = C64::new(1.0, k / sigma);
                    (a, a.conj())
                }
                Regime::Defocusing => (C64::new(1.0 + k / sigma, 0.0), C64::new(1.0 - k / sigma, 0.0)),
            })
            .unzip();
        let mut big_a = vec![vec![0.0; n]; n];
        let mut beta = vec![vec![0.0; n]; n];
        let mut alpha = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (ki, kj) = (ks[i], ks[j]);
                big_a[i][j] = ((ki - kj) / (ki + kj)).powi(2);
                beta[i][j] = 2.0 / (ki - kj);
                alpha[i][j] = (ki + kj) / (ki - kj);
            }
        }
        Ok(InteractionData {
            a,
            b,
            big_a,
            beta,
            alpha,
        })
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !sigma.is_finite() || sigma == 0.0 {
        return Err(Error::Parameter(format!(
            "sigma must be finite and nonzero, got {sigma}"
        )));
    }
    Ok(())
}

fn check_wave_numbers(ks: &[f64]) -> Result<()> {
    for (i, &k) in ks.iter().enumerate() {
        if !k.is_finite() || k == 0.0 {
            return Err(Error::Parameter(format!(
                "k[{i}] must be finite and nonzero, got {k}"
            )));
        }
        for (j, &kj) in ks.iter().enumerate().skip(i + 1) {
            if (k - kj).abs() < K_COINCIDENCE_TOL || (k + kj).abs() < K_COINCIDENCE_TOL {
                return Err(Error::Parameter(format!(
                    "k[{i}] = {k} and k[{j}] = {kj} must satisfy k_i != ±k_j"
                )));
            }
        }
    }
    Ok(())
}

/// Which indices the dressing products of the multi-soliton formula run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dressing {
    /// Only solitons present in the exponential term.
    Active,
    /// Every other soliton, present or not.
    AllIndices,
}

/// Sign of the fermionic pair correction `β ξ_i ξ_j` in the product terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSign {
    /// `β_ji ξ_i ξ_j`, the sign the odd bilinear equation requires.
    Consistent,
    /// `β_ij ξ_i ξ_j` as printed in the displayed formulas.
    AsDisplayed,
}

impl PairSign {
    fn factor(self) -> f64 {
        match self {
            PairSign::Consistent => -1.0,
            PairSign::AsDisplayed => 1.0,
        }
    }
}

/// Inputs of the generic multi-soliton sum.
#[derive(Debug, Clone)]
pub struct SolitonSum<'a> {
    pub regime: Regime,
    pub sigma: f64,
    pub ks: &'a [f64],
    /// `e^{η_i⁰}` for each soliton; may be negative or complex.
    pub phase_factors: &'a [C64],
    pub fermions: &'a [bool],
    pub dressing: Dressing,
    pub pair_sign: PairSign,
}

impl SolitonSum<'_> {
    /// Builds `(g, f)` in the comoving frame.
    pub fn build(&self) -> Result<(SuperPoly, SuperPoly)> {
        let n = self.ks.len();
        if n == 0 || n > 16 {
            return Err(Error::Parameter(format!(
                "between 1 and 16 solitons are supported, got {n}"
            )));
        }
        if self.phase_factors.len() != n || self.fermions.len() != n {
            return Err(Error::Parameter(
                "phase and fermion lists must match the wave numbers".into(),
            ));
        }
        let data = InteractionData::new(self.regime, self.sigma, self.ks)?;
        let gens = n + 1;
        let theta = Grassmann::generator(gens, THETA)?;
        let xi: Vec<Grassmann> = (0..n)
            .map(|i| {
                if self.fermions[i] {
                    Grassmann::generator(gens, i + 1)
                } else {
                    Ok(Grassmann::zero(gens))
                }
            })
            .collect::<Result<_>>()?;
        let omegas: Vec<C64> = self
            .ks
            .iter()
            .map(|&k| dispersion(k, self.sigma, self.regime))
            .collect();

        let pair_sign = self.pair_sign.factor();
        let mut f_terms = Vec::with_capacity(1 << n);
        let mut g_terms = Vec::with_capacity(1 << n);
        for subset in 0u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|i| subset & (1 << i) != 0).collect();
            let dressers = |exclude: &[usize]| -> Vec<usize> {
                match self.dressing {
                    Dressing::Active => members
                        .iter()
                        .copied()
                        .filter(|m| !exclude.contains(m))
                        .collect(),
                    Dressing::AllIndices => (0..n).filter(|m| !exclude.contains(m)).collect(),
                }
            };

            let mut k = C64::default();
            let mut w = C64::default();
            let mut amp_f = C64::new(1.0, 0.0);
            let mut amp_g = C64::new(1.0, 0.0);
            let mut odd = Grassmann::zero(gens);
            let mut even = Grassmann::zero(gens);
            for (pos, &i) in members.iter().enumerate() {
                k += self.ks[i];
                w += omegas[i];
                amp_f *= data.a[i] * self.phase_factors[i];
                amp_g *= data.b[i] * self.phase_factors[i];
                let dress: f64 = dressers(&[i]).iter().map(|&m| data.alpha[i][m]).product();
                odd = &odd + &xi[i].scale(C64::new(dress, 0.0));
                for &j in &members[pos + 1..] {
                    amp_f *= data.big_a[i][j];
                    amp_g *= data.big_a[i][j];
                    let dress: f64 = dressers(&[i, j])
                        .iter()
                        .map(|&m| data.alpha[i][m] * data.alpha[j][m])
                        .product();
                    let pair = &xi[i] * &xi[j];
                    even = &even + &pair.scale(C64::new(pair_sign * data.beta[i][j] * dress, 0.0));
                }
            }
            let exponent = &(&theta * &odd) + &even;
            let dressing = exponent.exp()?;
            f_terms.push(SuperPoly::exponential(k, w, dressing.scale(amp_f)));
            g_terms.push(SuperPoly::exponential(k, w, dressing.scale(amp_g)));
        }
        let sum = |terms: Vec<SuperPoly>| {
            terms
                .iter()
                .fold(SuperPoly::zero(gens), |acc, t| &acc + t)
        };
        Ok((sum(g_terms), sum(f_terms)))
    }
}

/// N-supersoliton tau pair (either regime).
pub fn build_soliton_tau(spec: &SolitonSpec) -> Result<TauPair> {
    if spec.entries.is_empty() {
        return Err(Error::Parameter("soliton spec has no entries".into()));
    }
    let ks = spec.ks();
    let phase_factors: Vec<C64> = spec
        .entries
        .iter()
        .map(|e| C64::new(e.phase.exp(), 0.0))
        .collect();
    let fermions: Vec<bool> = spec.entries.iter().map(|e| e.fermion).collect();
    let (g, f) = SolitonSum {
        regime: spec.regime,
        sigma: spec.sigma,
        ks: &ks,
        phase_factors: &phase_factors,
        fermions: &fermions,
        dressing: Dressing::Active,
        pair_sign: PairSign::Consistent,
    }
    .build()?;
    Ok(TauPair::from_parts(g, f, spec.regime, Frame::XT, spec.sigma).with_source(spec.clone()))
}

/// Super-shock of the defocusing equation: the one-soliton at `k = −σ`,
/// which gives `f = 1` and `g = 1 + 2e^{η+θξ}` with `η = −σX − 2σ³T`.
pub fn build_shock_tau(sigma: f64) -> Result<TauPair> {
    check_sigma(sigma)?;
    shock_from_entry(sigma, SolitonEntry::new(-sigma))
}

fn shock_from_entry(sigma: f64, entry: SolitonEntry) -> Result<TauPair> {
    if (entry.k + sigma).abs() > K_COINCIDENCE_TOL * sigma.abs().max(1.0) {
        return Err(Error::Parameter(format!(
            "shock waves exist only for k = -sigma (k = {}, sigma = {sigma})",
            entry.k
        )));
    }
    let spec = SolitonSpec {
        regime: Regime::Defocusing,
        sigma,
        kind: Kind::Shock,
        entries: vec![SolitonEntry { k: -sigma, ..entry }],
    };
    let tau = build_soliton_tau(&SolitonSpec {
        kind: Kind::Soliton,
        ..spec.clone()
    })?;
    Ok(tau.with_source(spec))
}

/// One-superrational (lump) solution of the focusing equation:
/// `g = −ik₀/σ + k₀X − 3k₀σ²T + s·θξ₀`, `f` the same with `+ik₀/σ`.
pub fn build_rational_tau(sigma: f64, k0: f64, xi_scale: f64) -> Result<TauPair> {
    check_sigma(sigma)?;
    if !k0.is_finite() || k0 == 0.0 {
        return Err(Error::Parameter(format!("k0 must be finite and nonzero, got {k0}")));
    }
    let gens = 2;
    let zero = C64::default();
    let scalar = |c: C64| Grassmann::scalar(gens, c);
    let theta_xi = &Grassmann::generator(gens, THETA)? * &Grassmann::generator(gens, 1)?;
    let moving = &SuperPoly::term(1, 0, zero, zero, scalar(C64::new(k0, 0.0)))
        + &SuperPoly::term(0, 1, zero, zero, scalar(C64::new(-3.0 * k0 * sigma * sigma, 0.0)));
    let fermion = SuperPoly::constant(theta_xi.scale(C64::new(xi_scale, 0.0)));
    let shift = C64::new(0.0, k0 / sigma);
    let base = &moving + &fermion;
    let g = &base - &SuperPoly::constant(scalar(shift));
    let f = &base + &SuperPoly::constant(scalar(shift));
    let spec = SolitonSpec {
        regime: Regime::Focusing,
        sigma,
        kind: Kind::Rational,
        entries: vec![SolitonEntry {
            k: k0,
            phase: 0.0,
            fermion: xi_scale != 0.0,
        }],
    };
    Ok(TauPair::from_parts(g, f, Regime::Focusing, Frame::XT, sigma).with_source(spec))
}

/// `Q = −k₁₀X + 3k₁₀σ²T − ik₁₀/σ` on the given number of generators.
pub fn rational_phase(gens: usize, sigma: f64, k10: f64) -> SuperPoly {
    let zero = C64::default();
    let scalar = |c: C64| Grassmann::scalar(gens, c);
    &(&SuperPoly::term(1, 0, zero, zero, scalar(C64::new(-k10, 0.0)))
        + &SuperPoly::term(0, 1, zero, zero, scalar(C64::new(3.0 * k10 * sigma * sigma, 0.0))))
        + &SuperPoly::constant(scalar(C64::new(0.0, -k10 / sigma)))
}

/// One side of the mixed rational–soliton tau:
/// `Q + a(4k₁₀/k₂ + Q)E + (2/k₂)aE ξ₂ξ₁₀ + θ((aE − 1)ξ₁₀ + a(2k₁₀/k₂ + Q)E ξ₂)`.
fn mixed_rational_side(q: &SuperPoly, amp: C64, e2: &SuperPoly, k10: f64, k2: f64) -> Result<SuperPoly> {
    let gens = 3;
    let theta = Grassmann::generator(gens, THETA)?;
    let xi10 = Grassmann::generator(gens, 1)?;
    let xi2 = Grassmann::generator(gens, 2)?;
    let scalar = |c: f64| SuperPoly::constant(Grassmann::scalar(gens, C64::new(c, 0.0)));
    let ae = e2.scale(amp);
    let body = &(q + &(&ae * &(&scalar(4.0 * k10 / k2) + q)))
        + &ae.left_mul(&(&xi10 * &xi2).scale(C64::new(-2.0 / k2, 0.0)));
    let along_xi10 = (&ae - &scalar(1.0)).left_mul(&(&theta * &xi10));
    let along_xi2 = (&ae * &(&scalar(2.0 * k10 / k2) + q)).left_mul(&(&theta * &xi2));
    Ok(&(&body + &along_xi10) + &along_xi2)
}

/// Superrational lump interacting with a supersoliton (focusing), obtained
/// from the two-soliton solution by the long-wave limit on the first soliton.
/// Generator 1 is ξ₁₀ and generator 2 is ξ₂.
pub fn build_mixed_rational_soliton_tau(sigma: f64, k10: f64, k2: f64, phase2: f64) -> Result<TauPair> {
    check_sigma(sigma)?;
    for (name, v) in [("k10", k10), ("k2", k2)] {
        if !v.is_finite() || v == 0.0 {
            return Err(Error::Parameter(format!("{name} must be finite and nonzero, got {v}")));
        }
    }
    let gens = 3;
    let q = rational_phase(gens, sigma, k10);
    let e2 = SuperPoly::exponential(
        C64::new(k2, 0.0),
        dispersion(k2, sigma, Regime::Focusing),
        Grassmann::scalar(gens, C64::new(phase2.exp(), 0.0)),
    );
    let a2 = C64::new(1.0, k2 / sigma);
    let f = mixed_rational_side(&q, a2, &e2, k10, k2)?;
    let g = mixed_rational_side(&q.conj(), a2.conj(), &e2, k10, k2)?;
    let spec = SolitonSpec {
        regime: Regime::Focusing,
        sigma,
        kind: Kind::MixedRationalSoliton,
        entries: vec![SolitonEntry::new(k10), SolitonEntry::new(k2).with_phase(phase2)],
    };
    Ok(TauPair::from_parts(g, f, Regime::Focusing, Frame::XT, sigma).with_source(spec))
}

/// Supersoliton riding on a super-shock (defocusing):
/// `g = 1 + b₁e^{η₁+θξ₁} + 2e^{η₂+θξ₂} + 2A₁₂b₁(1+β₁₂ξ₂ξ₁)e^{η₁+η₂+θ(α₁₂ξ₁+α₂₁ξ₂)}`,
/// `f = 1 + a₁e^{η₁+θξ₁}`, with `k₂ = −σ`.
pub fn build_mixed_shock_soliton_tau(sigma: f64, k1: f64, phase1: f64) -> Result<TauPair> {
    check_sigma(sigma)?;
    if (k1.abs() - sigma.abs()).abs() < K_COINCIDENCE_TOL {
        return Err(Error::Parameter(format!(
            "the soliton needs k1 != ±sigma (k1 = {k1}, sigma = {sigma})"
        )));
    }
    let k2 = -sigma;
    let data = InteractionData::new(Regime::Defocusing, sigma, &[k1, k2])?;
    let gens = 3;
    let theta = Grassmann::generator(gens, THETA)?;
    let xi1 = Grassmann::generator(gens, 1)?;
    let xi2 = Grassmann::generator(gens, 2)?;
    let one = Grassmann::one(gens);
    let r = |v: f64| C64::new(v, 0.0);
    let w1 = dispersion(k1, sigma, Regime::Defocusing);
    let w2 = dispersion(k2, sigma, Regime::Defocusing);
    let e1 = phase1.exp();

    let exp_theta = |odd: &Grassmann| &one + &(&theta * odd);
    let single1 = exp_theta(&xi1);
    let single2 = exp_theta(&xi2);
    let pair_odd = &xi1.scale(r(data.alpha[0][1])) + &xi2.scale(r(data.alpha[1][0]));
    let pair = &(&one + &(&xi1 * &xi2).scale(r(data.beta[1][0]))) * &exp_theta(&pair_odd);

    let b1 = data.b[0];
    let a1 = data.a[0];
    let g = [
        SuperPoly::one(gens),
        SuperPoly::exponential(r(k1), w1, single1.scale(b1 * e1)),
        SuperPoly::exponential(r(k2), w2, single2.scale(r(2.0))),
        SuperPoly::exponential(r(k1 + k2), w1 + w2, pair.scale(b1 * e1 * 2.0 * data.big_a[0][1])),
    ]
    .iter()
    .fold(SuperPoly::zero(gens), |acc, t| &acc + t);
    let f = &SuperPoly::one(gens) + &SuperPoly::exponential(r(k1), w1, single1.scale(a1 * e1));
    let spec = SolitonSpec {
        regime: Regime::Defocusing,
        sigma,
        kind: Kind::MixedShockSoliton,
        entries: vec![SolitonEntry::new(k1).with_phase(phase1), SolitonEntry::new(k2)],
    };
    Ok(TauPair::from_parts(g, f, Regime::Defocusing, Frame::XT, sigma).with_source(spec))
}

fn require_regime(spec: &SolitonSpec, regime: Regime) -> Result<()> {
    if spec.regime != regime {
        return Err(Error::Parameter(format!(
            "{:?} solutions belong to the {regime} regime",
            spec.kind
        )));
    }
    Ok(())
}

fn entry(spec: &SolitonSpec, i: usize) -> Result<SolitonEntry> {
    spec.entries.get(i).copied().ok_or_else(|| {
        Error::Parameter(format!("{:?} spec needs at least {} entries", spec.kind, i + 1))
    })
}

/// Kills the generators of entries whose fermion flag is off.
fn apply_fermion_flags(tau: TauPair, spec: &SolitonSpec) -> TauPair {
    spec.entries
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.fermion)
        .fold(tau, |t, (i, _)| t.map(|p| p.rescale_generator(i + 1, 0.0)))
}

/// Builds whatever the spec describes.
pub fn build(spec: &SolitonSpec) -> Result<TauPair> {
    check_sigma(spec.sigma)?;
    let tau = match spec.kind {
        Kind::Soliton => return build_soliton_tau(spec),
        Kind::Shock => {
            require_regime(spec, Regime::Defocusing)?;
            let e = spec
                .entries
                .first()
                .copied()
                .unwrap_or_else(|| SolitonEntry::new(-spec.sigma));
            return shock_from_entry(spec.sigma, e);
        }
        Kind::Rational => {
            require_regime(spec, Regime::Focusing)?;
            let e = entry(spec, 0)?;
            build_rational_tau(spec.sigma, e.k, if e.fermion { 1.0 } else { 0.0 })?
        }
        Kind::MixedRationalSoliton => {
            require_regime(spec, Regime::Focusing)?;
            let (lump, sol) = (entry(spec, 0)?, entry(spec, 1)?);
            build_mixed_rational_soliton_tau(spec.sigma, lump.k, sol.k, sol.phase)?
        }
        Kind::MixedShockSoliton => {
            require_regime(spec, Regime::Defocusing)?;
            let sol = entry(spec, 0)?;
            if let Some(shock) = spec.entries.get(1) {
                if (shock.k + spec.sigma).abs() > K_COINCIDENCE_TOL * spec.sigma.abs().max(1.0) {
                    return Err(Error::Parameter("the shock entry must have k = -sigma".into()));
                }
            }
            build_mixed_shock_soliton_tau(spec.sigma, sol.k, sol.phase)?
        }
    };
    Ok(apply_fermion_flags(tau, spec).with_source(spec.clone()))
}
