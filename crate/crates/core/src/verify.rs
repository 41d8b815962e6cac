//! Correctness checks for tau pairs.
//!
//! Exact checks work on [`SuperPoly`] residuals of the bilinear systems.
//! Nonlinear checks assemble the superfield equation from Taylor jets of
//! `Φ = c·D log(g/f)` at sample points. All random draws are seeded.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{monomial_name, Grassmann, C64, THETA};
use crate::hirota::{bilinear_system, hirota_d, super_s};
use crate::jet::{JetPlan, SuperJet};
use crate::solitons::{
    build_rational_tau, dispersion, rational_phase, Dressing, Kind, PairSign, SolitonSum,
};
use crate::superpoly::{Axis, Frame, SuperPoly, TermLocation};
use crate::tau::{Prefactor, Regime, TauPair};
use crate::tolerances;

/// Where the largest residual was found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Location {
    Term(TermLocation),
    Point {
        #[serde(rename = "X")]
        x: f64,
        #[serde(rename = "T")]
        t: f64,
        mask: u32,
        monomial: String,
    },
    Nowhere {},
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedPoint {
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub equation: String,
    pub frame: Frame,
    pub max_abs: f64,
    pub at: Location,
    pub tol: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<SkippedPoint>,
}

impl ResidualReport {
    fn from_poly(equation: String, frame: Frame, residual: &SuperPoly, tol: f64) -> Self {
        let check = residual.is_zero(tol);
        ResidualReport {
            equation,
            frame,
            max_abs: check.max_abs,
            at: check.at.map_or(Location::Nowhere {}, Location::Term),
            tol,
            pass: check.is_zero,
            skipped: Vec::new(),
        }
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{:<28} {} max_abs={:.3e} tol={:.0e}",
            self.equation,
            if self.pass { "PASS" } else { "FAIL" },
            self.max_abs,
            self.tol
        );
        if !self.skipped.is_empty() {
            let _ = write!(s, " ({} singular points skipped)", self.skipped.len());
        }
        s
    }
}

/// Residual polynomials of both bilinear equations in the tau's own frame.
pub fn bilinear_residual_polys(tau: &TauPair) -> Result<[SuperPoly; 2]> {
    let [even, odd] = bilinear_system(tau.regime, tau.sigma, tau.frame);
    Ok([
        crate::hirota::apply_bilinear(&even, tau)?,
        crate::hirota::apply_bilinear(&odd, tau)?,
    ])
}

/// Exact residuals of the superbilinear system.
pub fn bilinear_residual(tau: &TauPair, tol: f64) -> Result<[ResidualReport; 2]> {
    let [even, odd] = bilinear_system(tau.regime, tau.sigma, tau.frame);
    let [re, ro] = bilinear_residual_polys(tau)?;
    Ok([
        ResidualReport::from_poly(even.name, tau.frame, &re, tol),
        ResidualReport::from_poly(odd.name, tau.frame, &ro, tol),
    ])
}

/// Constant `c` of the odd equation `(S_X³ + c S_X) g·f = 0`.
fn odd_shift(regime: Regime, sigma: f64) -> C64 {
    match regime {
        Regime::Focusing => C64::new(0.0, -sigma),
        Regime::Defocusing => C64::new(sigma, 0.0),
    }
}

/// `(D_X + c) a·b`.
fn shifted_dx(a: &SuperPoly, b: &SuperPoly, c: C64) -> Result<SuperPoly> {
    Ok(&hirota_d(a, b, 1, 0)? + &(a * b).scale(c))
}

/// The bilinear system written on the components `g = G + θγ`, `f = F + θφ`:
///
/// ```text
/// E(G·F) = 0
/// E(γ·F) + E(G·φ) = 0
/// (D_X + c)γ·F − (D_X + c)G·φ = 0
/// D_X(D_X + c)G·F − 2(D_X + c)γ·φ = 0
/// ```
///
/// where `E` is the even operator of the regime and `c` the odd shift.
pub fn component_residuals(tau: &TauPair) -> Result<[SuperPoly; 4]> {
    let [even, _] = bilinear_system(tau.regime, tau.sigma, tau.frame);
    let c = odd_shift(tau.regime, tau.sigma);
    let (big_g, gamma) = tau.g.theta_split();
    let (big_f, phi) = tau.f.theta_split();
    let e1 = even.apply(&big_g, &big_f)?;
    let e2 = &even.apply(&gamma, &big_f)? + &even.apply(&big_g, &phi)?;
    let e3 = &shifted_dx(&gamma, &big_f, c)? - &shifted_dx(&big_g, &phi, c)?;
    let dxdx = &hirota_d(&big_g, &big_f, 2, 0)? + &hirota_d(&big_g, &big_f, 1, 0)?.scale(c);
    let e4 = &dxdx - &shifted_dx(&gamma, &phi, c)?.scale(C64::new(2.0, 0.0));
    Ok([e1, e2, e3, e4])
}

/// Classical pair `E(G·F) = 0`, `D_X(D_X + c)G·F = 0` on the θ-free parts.
pub fn classical_residuals(tau: &TauPair) -> Result<[SuperPoly; 2]> {
    let [even, _] = bilinear_system(tau.regime, tau.sigma, tau.frame);
    let c = odd_shift(tau.regime, tau.sigma);
    let (big_g, _) = tau.g.theta_split();
    let (big_f, _) = tau.f.theta_split();
    let second = &hirota_d(&big_g, &big_f, 2, 0)? + &hirota_d(&big_g, &big_f, 1, 0)?.scale(c);
    Ok([even.apply(&big_g, &big_f)?, second])
}

/// Evaluator for `Φ = c·D log(g/f)` and its potential `φ = c·log(g/f)`.
#[derive(Debug, Clone)]
pub struct Superfield {
    prefactor: C64,
    frame: Frame,
    g: SuperPoly,
    f: SuperPoly,
    dg: SuperPoly,
    df: SuperPoly,
    g_plan: JetPlan,
    f_plan: JetPlan,
    dg_plan: JetPlan,
    df_plan: JetPlan,
}

fn check_body(value: &Grassmann, x: f64, t: f64, which: &'static str) -> Result<()> {
    let body = value.body().norm();
    if body < tolerances::SINGULAR_BODY {
        return Err(Error::Singular { x, t, which, body });
    }
    Ok(())
}

impl Superfield {
    pub fn new(tau: &TauPair) -> Self {
        let dg = tau.g.super_d();
        let df = tau.f.super_d();
        Superfield {
            prefactor: tau.prefactor.value(),
            frame: tau.frame,
            g_plan: JetPlan::new(&tau.g, 3, 1),
            f_plan: JetPlan::new(&tau.f, 3, 1),
            dg_plan: JetPlan::new(&dg, 3, 1),
            df_plan: JetPlan::new(&df, 3, 1),
            g: tau.g.clone(),
            f: tau.f.clone(),
            dg,
            df,
        }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// Value of Φ at a point.
    pub fn value(&self, x: f64, t: f64) -> Result<Grassmann> {
        let g = self.g.eval(x, t)?;
        let f = self.f.eval(x, t)?;
        check_body(&g, x, t, "g")?;
        check_body(&f, x, t, "f")?;
        // divide by the bodies first so that inverses of large values are not pruned
        let (cg, cf) = (g.body().inv(), f.body().inv());
        let dg = self.dg.eval(x, t)?.scale(cg);
        let df = self.df.eval(x, t)?.scale(cf);
        let diff = &(&dg * &g.scale(cg).inv()?) - &(&df * &f.scale(cf).inv()?);
        Ok(diff.scale(self.prefactor))
    }

    /// Jets of g and f divided by their bodies, with the bodies.
    fn base_jets(&self, x: f64, t: f64) -> Result<(SuperJet, SuperJet, C64, C64)> {
        let g = self.g_plan.jet_at(x, t)?;
        let f = self.f_plan.jet_at(x, t)?;
        check_body(g.value(), x, t, "g")?;
        check_body(f.value(), x, t, "f")?;
        let (bg, bf) = (g.value().body(), f.value().body());
        Ok((g.scale(bg.inv()), f.scale(bf.inv()), bg, bf))
    }

    /// Orders-(3,1) jet of Φ, computed as `c[(Dg)g⁻¹ − (Df)f⁻¹]`.
    pub fn jet(&self, x: f64, t: f64) -> Result<SuperJet> {
        let (g, f, bg, bf) = self.base_jets(x, t)?;
        let dg = self.dg_plan.jet_at(x, t)?.scale(bg.inv());
        let df = self.df_plan.jet_at(x, t)?.scale(bf.inv());
        let phi = dg.try_mul(&g.inv()?)?.try_sub(&df.try_mul(&f.inv()?)?)?;
        Ok(phi.scale(self.prefactor))
    }

    /// Orders-(3,1) jet of the potential `φ = c(log g − log f)`.
    pub fn potential_jet(&self, x: f64, t: f64) -> Result<SuperJet> {
        let (g, f, bg, bf) = self.base_jets(x, t)?;
        let mut pot = g.log()?.try_sub(&f.log()?)?;
        let shift = Grassmann::scalar(pot.num_generators(), bg.ln() - bf.ln());
        pot.set_coeff(0, 0, pot.value() + &shift);
        Ok(pot.scale(self.prefactor))
    }
}

pub fn superfield(tau: &TauPair) -> Superfield {
    Superfield::new(tau)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PdeForm {
    Superfield,
    Potential,
}

impl std::str::FromStr for PdeForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "superfield" => Ok(PdeForm::Superfield),
            "potential" => Ok(PdeForm::Potential),
            other => Err(Error::Format(format!("unknown form `{other}`"))),
        }
    }
}

/// Residual of the nonlinear equation at one point, from jets.
///
/// Superfield form: `Φ_t + Φ_xxx + s[3(DΦ)(ΦDΦ)_x + 3σ(ΦDΦ)_x]`.
/// Potential form: `φ_t + φ_xxx + s[2φ_x³ − 3(Dφ)(Dφ_x)φ_x + 3σφ_x² − 3σ(Dφ)(Dφ_x)]`,
/// with `s = +1` focusing and `s = −1` defocusing.
pub fn pde_residual_at(
    field: &Superfield,
    regime: Regime,
    sigma: f64,
    form: PdeForm,
    x: f64,
    t: f64,
) -> Result<Grassmann> {
    let s = regime.nonlinear_sign();
    let r = |v: f64| C64::new(v, 0.0);
    match form {
        PdeForm::Superfield => {
            let phi = field.jet(x, t)?;
            let d_phi = phi.super_d();
            let product = phi.try_mul(&d_phi)?;
            let product_x = product.partial(1, 0);
            let cubic = d_phi.value() * &product_x;
            let linear = &phi.partial(0, 1) + &phi.partial(3, 0);
            let nonlinear = &cubic.scale(r(3.0)) + &product_x.scale(r(3.0 * sigma));
            Ok(&linear + &nonlinear.scale(r(s)))
        }
        PdeForm::Potential => {
            let pot = field.potential_jet(x, t)?;
            let phi_x = pot.partial(1, 0);
            let d_pot = pot.super_d();
            let d = d_pot.value().clone();
            let d_x = d_pot.partial(1, 0);
            let linear = &pot.partial(0, 1) + &pot.partial(3, 0);
            let phi_x2 = &phi_x * &phi_x;
            let d_dx = &d * &d_x;
            let nonlinear = [
                (&phi_x2 * &phi_x).scale(r(2.0)),
                (&d_dx * &phi_x).scale(r(-3.0)),
                phi_x2.scale(r(3.0 * sigma)),
                d_dx.scale(r(-3.0 * sigma)),
            ]
            .iter()
            .fold(Grassmann::zero(d.num_generators()), |acc, v| &acc + v);
            Ok(&linear + &nonlinear.scale(r(s)))
        }
    }
}

/// Seeded uniform points in `[lo, hi]²`.
pub fn random_points(seed: u64, n: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (rng.gen_range(lo..=hi), rng.gen_range(lo..=hi)))
        .collect()
}

/// Nonlinear residual over a list of laboratory-frame points.
pub fn pde_residual(tau: &TauPair, form: PdeForm, points: &[(f64, f64)], tol: f64) -> Result<ResidualReport> {
    if tau.frame != Frame::Xt {
        return Err(Error::FrameMismatch {
            expected: Frame::Xt,
            found: tau.frame,
        });
    }
    let field = Superfield::new(tau);
    let results: Vec<Result<Grassmann>> = points
        .par_iter()
        .map(|&(x, t)| pde_residual_at(&field, tau.regime, tau.sigma, form, x, t))
        .collect();
    let mut max_abs = 0.0;
    let mut at = Location::Nowhere {};
    let mut skipped = Vec::new();
    for (&(x, t), res) in points.iter().zip(results) {
        match res {
            Ok(value) => {
                if let Some((mask, c)) = value.argmax() {
                    if c.norm() > max_abs {
                        max_abs = c.norm();
                        at = Location::Point {
                            x,
                            t,
                            mask,
                            monomial: monomial_name(mask),
                        };
                    }
                }
            }
            Err(e @ (Error::Singular { .. } | Error::Range { .. })) => skipped.push(SkippedPoint {
                x,
                t,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    let name = match (form, tau.regime) {
        (PdeForm::Superfield, r) => format!("{r}/superfield"),
        (PdeForm::Potential, r) => format!("{r}/potential"),
    };
    Ok(ResidualReport {
        equation: name,
        frame: tau.frame,
        max_abs,
        at,
        tol,
        pass: max_abs <= tol && skipped.len() < points.len(),
        skipped,
    })
}

/// Rectangular sampling grid in the tau's frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub xmin: f64,
    pub xmax: f64,
    pub nx: usize,
    pub tmin: f64,
    pub tmax: f64,
    pub nt: usize,
}

impl Grid {
    pub fn new(xmin: f64, xmax: f64, nx: usize, tmin: f64, tmax: f64, nt: usize) -> Result<Self> {
        if nx < 2 || nt < 2 {
            return Err(Error::Parameter("grid counts must be at least 2".into()));
        }
        if !(xmin < xmax && tmin < tmax) || ![xmin, xmax, tmin, tmax].iter().all(|v| v.is_finite()) {
            return Err(Error::Parameter("grid ranges must be finite and increasing".into()));
        }
        Ok(Grid {
            xmin,
            xmax,
            nx,
            tmin,
            tmax,
            nt,
        })
    }

    pub fn xs(&self) -> Vec<f64> {
        linspace(self.xmin, self.xmax, self.nx)
    }

    pub fn ts(&self) -> Vec<f64> {
        linspace(self.tmin, self.tmax, self.nt)
    }

    /// Points in T-major, then X order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let xs = self.xs();
        self.ts()
            .into_iter()
            .flat_map(|t| xs.iter().map(move |&x| (x, t)))
            .collect()
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i == n - 1 {
                b
            } else {
                a + (b - a) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Component functions of Φ sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    pub grid: Grid,
    pub frame: Frame,
    /// Monomials present anywhere on the grid, ascending by mask.
    pub monomials: Vec<u32>,
    /// One array per monomial, T-major then X.
    pub values: Vec<Vec<C64>>,
    /// Finite-difference residual of the classical Gardner equation for the
    /// pure-θ component, evaluated at every grid point.
    pub gardner_fd_residual: f64,
}

impl FieldSample {
    pub fn component(&self, mask: u32) -> Option<&[C64]> {
        self.monomials
            .iter()
            .position(|&m| m == mask)
            .map(|i| self.values[i].as_slice())
    }

    pub fn max_imag(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .map(|c| c.im.abs())
            .fold(0.0, f64::max)
    }

    /// CSV with header `X,T,monomial,re,im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("X,T,monomial,re,im\n");
        let points = self.grid.points();
        for (mask, values) in self.monomials.iter().zip(&self.values) {
            let name = monomial_name(*mask);
            for (&(x, t), v) in points.iter().zip(values) {
                let _ = writeln!(out, "{x:.16e},{t:.16e},{name},{:.16e},{:.16e}", v.re, v.im);
            }
        }
        out
    }
}

/// Central-difference residual of `u_t + u_xxx + s(6u²u_x + 6σuu_x) = 0` for
/// the pure-θ component of Φ at a laboratory-frame point.
pub fn gardner_fd_residual_at(field: &Superfield, regime: Regime, sigma: f64, x: f64, t: f64, h: f64) -> Result<f64> {
    let u = |dx: f64, dt: f64| -> Result<C64> { Ok(field.value(x + dx, t + dt)?.coeff(1 << THETA)) };
    let u0 = u(0.0, 0.0)?;
    let ut = (u(0.0, h)? - u(0.0, -h)?) / (2.0 * h);
    let (up1, um1, up2, um2) = (u(h, 0.0)?, u(-h, 0.0)?, u(2.0 * h, 0.0)?, u(-2.0 * h, 0.0)?);
    let ux = (up1 - um1) / (2.0 * h);
    let uxxx = (up2 - up1 * 2.0 + um1 * 2.0 - um2) / (2.0 * h * h * h);
    let s = regime.nonlinear_sign();
    let r = ut + uxxx + (u0 * u0 * ux * 6.0 + u0 * ux * 6.0 * sigma) * s;
    Ok(r.norm())
}

/// Samples Φ's components on a grid in the tau's frame.
pub fn components(tau: &TauPair, grid: &Grid) -> Result<FieldSample> {
    let field = Superfield::new(tau);
    let points = grid.points();
    let values: Vec<Grassmann> = points
        .par_iter()
        .map(|&(x, t)| field.value(x, t))
        .collect::<Result<_>>()?;
    let mut monomials: Vec<u32> = values.iter().flat_map(|v| v.terms().map(|(m, _)| m)).collect();
    monomials.sort_unstable();
    monomials.dedup();
    let arrays = monomials
        .iter()
        .map(|&m| values.iter().map(|v| v.coeff(m)).collect())
        .collect();

    let lab = tau.to_frame(Frame::Xt);
    let lab_field = Superfield::new(&lab);
    let s = if tau.frame == Frame::XT {
        tau.regime.frame_velocity(tau.sigma)
    } else {
        0.0
    };
    let fd: Vec<f64> = points
        .par_iter()
        .map(|&(x, t)| {
            gardner_fd_residual_at(&lab_field, tau.regime, tau.sigma, x - s * t, t, tolerances::GARDNER_FD_STEP)
        })
        .collect::<Result<_>>()?;
    Ok(FieldSample {
        grid: *grid,
        frame: tau.frame,
        monomials,
        values: arrays,
        gardner_fd_residual: fd.into_iter().fold(0.0, f64::max),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub eps: f64,
    pub deviation: f64,
    /// Deviation of the previous (larger) ε divided by this one.
    pub ratio: Option<f64>,
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub sigma: f64,
    pub k0: f64,
    pub grid: Grid,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn min_order(&self) -> Option<f64> {
        self.rows.iter().filter_map(|r| r.order).reduce(f64::min)
    }

    /// Order fitted between the largest and the smallest ε.
    pub fn overall_order(&self) -> Option<f64> {
        let (first, last) = (self.rows.first()?, self.rows.last()?);
        if self.rows.len() < 2 {
            return None;
        }
        Some((first.deviation / last.deviation).ln() / (first.eps / last.eps).ln())
    }
}

/// One-soliton with `k = εk₀`, `ξ → εξ₀` and `e^{η⁰} = −1`, in the comoving frame.
pub fn longwave_soliton(sigma: f64, k0: f64, eps: f64) -> Result<TauPair> {
    let ks = [eps * k0];
    let (g, f) = SolitonSum {
        regime: Regime::Focusing,
        sigma,
        ks: &ks,
        phase_factors: &[C64::new(-1.0, 0.0)],
        fermions: &[true],
        dressing: Dressing::Active,
        pair_sign: PairSign::Consistent,
    }
    .build()?;
    let tau = TauPair::from_parts(g, f, Regime::Focusing, Frame::XT, sigma);
    Ok(tau.map(|p| p.rescale_generator(1, eps)))
}

/// Sweeps ε and measures how fast the long-wave soliton approaches the lump.
pub fn longwave_convergence(sigma: f64, k0: f64, eps_list: &[f64], grid: &Grid) -> Result<ConvergenceTable> {
    if eps_list.is_empty() {
        return Err(Error::Parameter("empty epsilon list".into()));
    }
    if eps_list.iter().any(|&e| !(e > 0.0 && e.is_finite()))
        || eps_list.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(Error::Parameter(
            "epsilons must be positive and strictly decreasing".into(),
        ));
    }
    let lump = Superfield::new(&build_rational_tau(sigma, k0, 1.0)?);
    let points = grid.points();
    let reference: Vec<Grassmann> = points
        .iter()
        .map(|&(x, t)| lump.value(x, t))
        .collect::<Result<_>>()?;
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &eps in eps_list {
        let field = Superfield::new(&longwave_soliton(sigma, k0, eps)?);
        let mut deviation: f64 = 0.0;
        for (&(x, t), want) in points.iter().zip(&reference) {
            deviation = deviation.max(field.value(x, t)?.distance(want));
        }
        let (ratio, order) = match rows.last() {
            Some(prev) => {
                let ratio = prev.deviation / deviation;
                (Some(ratio), Some(ratio.ln() / (prev.eps / eps).ln()))
            }
            None => (None, None),
        };
        rows.push(ConvergenceRow {
            eps,
            deviation,
            ratio,
            order,
        });
    }
    Ok(ConvergenceTable {
        sigma,
        k0,
        grid: *grid,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    #[serde(rename = "T")]
    pub t: f64,
    pub target: String,
    pub max_dev: f64,
    pub pass: bool,
}

/// Backward shift of the lump recovered from the tau function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftComponents {
    #[serde(rename = "T")]
    pub t: f64,
    pub scalar: f64,
    pub theta_xi10: f64,
    pub theta_xi2: f64,
    pub xi10_xi2: f64,
    /// Shift implied by the tau pair: `4k₁₀/k₂, 2, −2k₁₀/k₂, −2/k₂`.
    pub expected: [f64; 4],
    /// Shift as printed, whose `ξ₁₀ξ₂` part is `+2/k₂`.
    pub displayed: [f64; 4],
    pub max_dev: f64,
    pub max_dev_displayed: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub sigma: f64,
    pub k10: f64,
    pub k2: f64,
    pub tol: f64,
    pub soliton_frame: Vec<AsymptoticRow>,
    pub rational_frame: Vec<AsymptoticRow>,
    pub shifts: Vec<ShiftComponents>,
}

impl AsymptoticReport {
    pub fn soliton_frame_pass(&self) -> bool {
        self.soliton_frame.iter().all(|r| r.pass)
    }

    pub fn rational_frame_pass(&self) -> bool {
        self.rational_frame.iter().all(|r| r.pass) && self.shifts.iter().all(|s| s.pass)
    }
}

/// Offsets of the comoving coordinate at which each frame is probed.
const PROBE_OFFSETS: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];

/// `k₂³|T|` below this leaves `e^{η₂}` too close to one for a frame limit.
const MIN_ASYMPTOTIC_EXPONENT: f64 = 10.0;

/// Interaction asymptotics of the mixed lump–soliton solution.
///
/// Soliton frame: `η₂` held fixed, compared with the pure supersoliton.
/// Lump frame: `Q` held fixed, compared with the bare lump when `e^{η₂} → 0`
/// and with the lump shifted by
/// `4k₁₀/k₂ + 2θ(k₂ξ₁₀ − k₁₀ξ₂)/k₂ + 2ξ₂ξ₁₀/k₂` when `e^{η₂} → ∞`.
pub fn asymptotic_shift_check(tau: &TauPair, times: &[f64], tol: f64) -> Result<AsymptoticReport> {
    let spec = tau
        .source
        .as_ref()
        .filter(|s| s.kind == Kind::MixedRationalSoliton && s.entries.len() >= 2)
        .ok_or_else(|| Error::Parameter("asymptotics need a mixed-rational-soliton tau".into()))?;
    if tau.frame != Frame::XT {
        return Err(Error::FrameMismatch {
            expected: Frame::XT,
            found: tau.frame,
        });
    }
    let sigma = spec.sigma;
    let (k10, k2, phase2) = (spec.entries[0].k, spec.entries[1].k, spec.entries[1].phase);
    for &t in times {
        if k2.abs().powi(3) * t.abs() < MIN_ASYMPTOTIC_EXPONENT {
            return Err(Error::Parameter(format!(
                "|T| = {} is too small: need k2^3 |T| >= {MIN_ASYMPTOTIC_EXPONENT}",
                t.abs()
            )));
        }
    }
    let gens = 3;
    let theta = Grassmann::generator(gens, THETA)?;
    let xi10 = Grassmann::generator(gens, 1)?;
    let xi2 = Grassmann::generator(gens, 2)?;
    let one = Grassmann::one(gens);
    let w2 = dispersion(k2, sigma, Regime::Focusing);
    let a2 = C64::new(1.0, k2 / sigma);
    let r = |v: f64| C64::new(v, 0.0);
    let mixed = Superfield::new(tau);

    // pure supersoliton carried by ξ₂
    let e2 = &one + &(&theta * &xi2);
    let soliton_f = &SuperPoly::one(gens)
        + &SuperPoly::exponential(r(k2), w2, e2.scale(a2 * phase2.exp()));
    let soliton = Superfield::new(&TauPair::from_parts(
        soliton_f.conj(),
        soliton_f,
        Regime::Focusing,
        Frame::XT,
        sigma,
    ));

    // bare and shifted lumps
    let q = rational_phase(gens, sigma, k10);
    let bare_f = &q - &SuperPoly::constant(&theta * &xi10);
    let expected_shift = [
        one.scale(r(4.0 * k10 / k2)),
        (&theta * &xi10).scale(r(2.0)),
        (&theta * &xi2).scale(r(-2.0 * k10 / k2)),
        (&xi2 * &xi10).scale(r(2.0 / k2)),
    ]
    .iter()
    .fold(Grassmann::zero(gens), |acc, v| &acc + v);
    let shifted_f = &bare_f + &SuperPoly::constant(expected_shift.clone());
    let lump = |f: SuperPoly| {
        Superfield::new(&TauPair::from_parts(f.conj(), f, Regime::Focusing, Frame::XT, sigma))
    };
    let bare = lump(bare_f);
    let shifted = lump(shifted_f);

    let mut soliton_frame = Vec::new();
    let mut rational_frame = Vec::new();
    let mut shifts = Vec::new();
    for &t in times {
        let mut dev: f64 = 0.0;
        for &eta in &PROBE_OFFSETS {
            let x = (eta - phase2 - w2.re * t) / k2;
            dev = dev.max(mixed.value(x, t)?.distance(&soliton.value(x, t)?));
        }
        soliton_frame.push(AsymptoticRow {
            t,
            target: "supersoliton".into(),
            max_dev: dev,
            pass: dev <= tol,
        });

        // η₂ = k₂Y − k₂³T + η₂⁰ along Y = X − 3σ²T = const
        let soliton_dominates = -k2.powi(3) * t > 0.0;
        let target = if soliton_dominates { &shifted } else { &bare };
        let mut dev: f64 = 0.0;
        for &y in &PROBE_OFFSETS {
            let x = y + 3.0 * sigma * sigma * t;
            dev = dev.max(mixed.value(x, t)?.distance(&target.value(x, t)?));
        }
        rational_frame.push(AsymptoticRow {
            t,
            target: if soliton_dominates { "shifted lump" } else { "bare lump" }.into(),
            max_dev: dev,
            pass: dev <= tol,
        });

        if soliton_dominates {
            let x = 3.0 * sigma * sigma * t;
            let f = tau.f.eval(x, t)?;
            // divide by the scalar part of the carrier first; its inverse would be pruned
            let carrier = a2 * (k2 * x + w2.re * t + phase2).exp();
            let reduced = &f.scale(carrier.inv()) * &e2.inv()?;
            let shift = &reduced - &q.eval(x, t)?.try_sub(&(&theta * &xi10))?;
            let got = [
                shift.coeff(0).re,
                shift.coeff(0b011).re,
                shift.coeff(0b101).re,
                shift.coeff(0b110).re,
            ];
            let expected = [4.0 * k10 / k2, 2.0, -2.0 * k10 / k2, -2.0 / k2];
            let displayed = [4.0 * k10 / k2, 2.0, -2.0 * k10 / k2, 2.0 / k2];
            let max_dev = shift.distance(&expected_shift);
            let max_dev_displayed = got
                .iter()
                .zip(&displayed)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
                .max(max_dev);
            shifts.push(ShiftComponents {
                t,
                scalar: got[0],
                theta_xi10: got[1],
                theta_xi2: got[2],
                xi10_xi2: got[3],
                expected,
                displayed,
                max_dev,
                max_dev_displayed,
                pass: max_dev <= tol,
            });
        }
    }
    Ok(AsymptoticReport {
        sigma,
        k10,
        k2,
        tol,
        soliton_frame,
        rational_frame,
        shifts,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub max_abs: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub seed: u64,
    pub tol: f64,
    pub product_identity: Vec<IdentityCheck>,
    pub closed_forms: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.product_identity.iter().chain(&self.closed_forms).all(|c| c.pass)
    }

    pub fn count(checks: &[IdentityCheck]) -> (usize, usize) {
        (checks.iter().filter(|c| c.pass).count(), checks.len())
    }
}

/// Random even exponential polynomial on θ, ξ₁, ξ₂.
pub fn random_even_superpoly(rng: &mut impl Rng, max_terms: usize) -> SuperPoly {
    let gens = 3;
    let n_terms = rng.gen_range(1..=max_terms);
    let mut acc = SuperPoly::zero(gens);
    for _ in 0..n_terms {
        let coeff = Grassmann::from_terms(
            gens,
            [0u32, 0b011, 0b101, 0b110]
                .into_iter()
                .map(|m| (m, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))),
        )
        .expect("masks in range");
        let term = SuperPoly::term(
            rng.gen_range(0..=1),
            rng.gen_range(0..=1),
            C64::new(rng.gen_range(-1.0..1.0), 0.0),
            C64::new(rng.gen_range(-1.0..1.0), 0.0),
            coeff,
        );
        acc = &acc + &term;
    }
    acc
}

/// `gf(D_X g·f)D(S_X g·f) − D(gf)(S_X g·f)(D_X g·f) − gf(D_X g·f)²`.
pub fn product_identity_residual(g: &SuperPoly, f: &SuperPoly) -> Result<SuperPoly> {
    let gf = g * f;
    let dx = hirota_d(g, f, 1, 0)?;
    let s = super_s(g, f, 1)?;
    let lhs = &(&(&gf * &dx) * &s.super_d()) - &(&(&gf.super_d() * &s) * &dx);
    let rhs = &gf * &(&dx * &dx);
    Ok(&lhs - &rhs)
}

/// `e^{kX + θζ}` with odd constant ζ.
fn super_exponential(k: f64, zeta: &Grassmann) -> SuperPoly {
    let gens = zeta.num_generators();
    let theta = Grassmann::generator(gens, THETA).expect("theta exists");
    let coeff = &Grassmann::one(gens) + &(&theta * zeta);
    SuperPoly::exponential(C64::new(k, 0.0), C64::default(), coeff)
}

fn random_odd_constant(rng: &mut impl Rng, gens: usize) -> Grassmann {
    (1..gens).fold(Grassmann::zero(gens), |acc, i| {
        let xi = Grassmann::generator(gens, i).expect("generator in range");
        &acc + &xi.scale(C64::new(rng.gen_range(-1.0..1.0), 0.0))
    })
}

/// Number of random product-identity pairs in [`identity_suite`].
pub const PRODUCT_IDENTITY_DRAWS: usize = 20;

/// Random-parameter draws per closed-form identity and power.
const CLOSED_FORM_DRAWS: usize = 2;

/// The product identity on random even pairs and the closed forms of the
/// super-Hirota operator on exponentials, for `N = 0, 1, 2`.
pub fn identity_suite(seed: u64, tol: f64) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut product_identity = Vec::new();
    for i in 0..PRODUCT_IDENTITY_DRAWS {
        let g = random_even_superpoly(&mut rng, 3);
        let f = random_even_superpoly(&mut rng, 3);
        let res = product_identity_residual(&g, &f)?;
        let max_abs = res.max_abs();
        product_identity.push(IdentityCheck {
            name: format!("product-identity#{i}"),
            max_abs,
            pass: max_abs <= tol,
        });
    }

    let gens = 3;
    let theta = Grassmann::generator(gens, THETA)?;
    let mut closed_forms = Vec::new();
    let mut record = |name: String, residual: SuperPoly| {
        let max_abs = residual.max_abs();
        closed_forms.push(IdentityCheck {
            name,
            max_abs,
            pass: max_abs <= tol,
        });
    };
    for n in 0..=2usize {
        for draw in 0..CLOSED_FORM_DRAWS {
            let k1 = rng.gen_range(-2.0..2.0);
            let k2 = rng.gen_range(-2.0..2.0);
            let z1 = random_odd_constant(&mut rng, gens);
            let z2 = random_odd_constant(&mut rng, gens);
            let (e1, e2) = (super_exponential(k1, &z1), super_exponential(k2, &z2));
            let one = SuperPoly::one(gens);
            let odd_power = 2 * n + 1;
            let kn = |k: f64| C64::new(k.powi(n as i32), 0.0);

            // S^{2N+1} e^{η₁}·e^{η₂} = [ζ₁ − ζ₂ + θ(k₁ − k₂)](k₁ − k₂)^N e^{η₁+η₂}
            let prefactor = &(&z1 - &z2) + &theta.scale(C64::new(k1 - k2, 0.0));
            let expected = (&e1 * &e2).left_mul(&prefactor.scale(kn(k1 - k2)));
            record(
                format!("S^{odd_power} e1.e2 #{draw}"),
                &super_s(&e1, &e2, odd_power)? - &expected,
            );

            // S^{2N+1} 1·e^{η} = (−1)^{N+1}(ζ + θk)k^N e^{η}
            let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let zk = &z2 + &theta.scale(C64::new(k2, 0.0));
            let expected = e2.left_mul(&zk.scale(kn(k2) * sign));
            let lhs = super_s(&one, &e2, odd_power)?;
            record(format!("S^{odd_power} 1.e #{draw}"), &lhs - &expected);

            // = (−1)^{N+1} S^{2N+1} e^{η}·1
            let rhs = super_s(&e2, &one, odd_power)?.scale(C64::new(sign, 0.0));
            record(format!("S^{odd_power} e.1 #{draw}"), &lhs - &rhs);

            // S^{2N} = D^N on exponentials: (k₁ − k₂)^N e^{η₁+η₂}
            let expected = (&e1 * &e2).scale(kn(k1 - k2));
            record(
                format!("S^{} e1.e2 #{draw}", 2 * n),
                &super_s(&e1, &e2, 2 * n)? - &expected,
            );
        }
    }
    Ok(IdentityReport {
        seed,
        tol,
        product_identity,
        closed_forms,
    })
}

/// Largest distance between jet derivatives of Φ and central differences,
/// relative to the larger of the two magnitudes (floored at `floor`).
pub fn derivative_crosscheck(tau: &TauPair, points: &[(f64, f64)], h: f64, floor: f64) -> Result<f64> {
    let field = Superfield::new(tau);
    let mut worst: f64 = 0.0;
    for &(x, t) in points {
        let jet = field.jet(x, t)?;
        for axis in [Axis::X, Axis::T] {
            let (dx, dt) = match axis {
                Axis::X => (h, 0.0),
                Axis::T => (0.0, h),
            };
            let exact = match axis {
                Axis::X => jet.partial(1, 0),
                Axis::T => jet.partial(0, 1),
            };
            let fd = (&field.value(x + dx, t + dt)? - &field.value(x - dx, t - dt)?)
                .scale(C64::new(0.5 / h, 0.0));
            let scale = exact.max_abs().max(fd.max_abs()).max(floor);
            worst = worst.max(exact.distance(&fd) / scale);
        }
    }
    Ok(worst)
}

/// Prefactor sanity: the regime fixes it.
pub fn prefactor_matches(tau: &TauPair) -> bool {
    tau.prefactor == Prefactor::for_regime(tau.regime)
}
