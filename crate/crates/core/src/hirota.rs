//! Hirota bilinear derivatives and the super-Hirota operator.
//!
//! `D_X^m D_T^n a·b` uses the closed binomial sum. The odd operator is
//! `S_X a·b = (Da)b − (−1)^{|a|} a(Db)`, with `S_X^{2N} = D_X^N` and
//! `S_X^{2N+1} = S_X D_X^N`; arguments of mixed parity are split into their
//! even and odd parts and the sign rule is applied to each.

use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::C64;
use crate::superpoly::{binomial, Axis, Frame, SuperPoly};
use crate::tau::{Regime, TauPair};

/// Table of `∂_X^i ∂_T^j p` for `i ≤ m`, `j ≤ n`.
fn derivative_table(p: &SuperPoly, m: usize, n: usize) -> Vec<Vec<SuperPoly>> {
    let mut rows = Vec::with_capacity(m + 1);
    let mut along_x = p.clone();
    for _ in 0..=m {
        let mut row = Vec::with_capacity(n + 1);
        let mut along_t = along_x.clone();
        for _ in 0..=n {
            row.push(along_t.clone());
            along_t = along_t.deriv(Axis::T);
        }
        rows.push(row);
        along_x = along_x.deriv(Axis::X);
    }
    rows
}

/// `D_X^m D_T^n a·b`.
pub fn hirota_d(a: &SuperPoly, b: &SuperPoly, m: usize, n: usize) -> Result<SuperPoly> {
    if a.num_generators() != b.num_generators() {
        return Err(Error::Dimension {
            left: a.num_generators(),
            right: b.num_generators(),
        });
    }
    let da = derivative_table(a, m, n);
    let db = derivative_table(b, m, n);
    let mut acc = SuperPoly::zero(a.num_generators());
    for i in 0..=m {
        for j in 0..=n {
            let sign = if (m - i + n - j).is_multiple_of(2) { 1.0 } else { -1.0 };
            let weight = sign * binomial(m as u32, i as u32) * binomial(n as u32, j as u32);
            let prod = &da[i][j] * &db[m - i][n - j];
            acc = &acc + &prod.scale(C64::new(weight, 0.0));
        }
    }
    Ok(acc)
}

/// First-order `S_X a·b` with the parity rule applied per homogeneous part.
fn super_s1(a: &SuperPoly, b: &SuperPoly) -> SuperPoly {
    let db = b.super_d();
    let first = &a.super_d() * b;
    let even = &a.even_part() * &db;
    let odd = &a.odd_part() * &db;
    &(&first - &even) + &odd
}

/// `S_X^power a·b`.
pub fn super_s(a: &SuperPoly, b: &SuperPoly, power: usize) -> Result<SuperPoly> {
    if a.num_generators() != b.num_generators() {
        return Err(Error::Dimension {
            left: a.num_generators(),
            right: b.num_generators(),
        });
    }
    if power.is_multiple_of(2) {
        return hirota_d(a, b, power / 2, 0);
    }
    let n = power / 2;
    let da = derivative_table(a, n, 0);
    let db = derivative_table(b, n, 0);
    let mut acc = SuperPoly::zero(a.num_generators());
    for i in 0..=n {
        let sign = if (n - i).is_multiple_of(2) { 1.0 } else { -1.0 };
        let weight = sign * binomial(n as u32, i as u32);
        let part = super_s1(&da[i][0], &db[n - i][0]);
        acc = &acc + &part.scale(C64::new(weight, 0.0));
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BilinearOp {
    /// `D_X^x D_T^t`.
    Hirota { x: usize, t: usize },
    /// `S_X^power`.
    Super { power: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearTerm {
    pub weight: C64,
    pub op: BilinearOp,
}

/// A weighted sum of bilinear operators, applied to `g·f`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearEquation {
    pub name: String,
    pub frame: Frame,
    pub terms: Vec<BilinearTerm>,
}

impl BilinearEquation {
    pub fn new(name: impl Into<String>, frame: Frame) -> Self {
        BilinearEquation {
            name: name.into(),
            frame,
            terms: Vec::new(),
        }
    }

    pub fn hirota(mut self, weight: C64, x: usize, t: usize) -> Self {
        self.terms.push(BilinearTerm {
            weight,
            op: BilinearOp::Hirota { x, t },
        });
        self
    }

    pub fn sup(mut self, weight: C64, power: usize) -> Self {
        self.terms.push(BilinearTerm {
            weight,
            op: BilinearOp::Super { power },
        });
        self
    }

    /// Left side of the equation evaluated on `(g, f)`.
    pub fn apply(&self, g: &SuperPoly, f: &SuperPoly) -> Result<SuperPoly> {
        let mut acc = SuperPoly::zero(g.num_generators());
        for term in &self.terms {
            let value = match term.op {
                BilinearOp::Hirota { x, t } => hirota_d(g, f, x, t)?,
                BilinearOp::Super { power } => super_s(g, f, power)?,
            };
            acc = &acc + &value.scale(term.weight);
        }
        Ok(acc)
    }
}

impl fmt::Display for BilinearEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// The two superbilinear equations of a regime in the requested frame.
///
/// Comoving frame: focusing `(D_T + D_X³ − 3iσD_X²)`, `(S_X³ − iσS_X)`;
/// defocusing `(D_T + D_X³ + 3σD_X²)`, `(S_X³ + σS_X)`. In the laboratory
/// frame `D_T = D_t ∓ 3σ²D_x` adds the drift term.
pub fn bilinear_system(regime: Regime, sigma: f64, frame: Frame) -> [BilinearEquation; 2] {
    let one = C64::new(1.0, 0.0);
    let (quad, odd_weight, drift, tag) = match regime {
        Regime::Focusing => (
            C64::new(0.0, -3.0 * sigma),
            C64::new(0.0, -sigma),
            -3.0 * sigma * sigma,
            "focusing",
        ),
        Regime::Defocusing => (
            C64::new(3.0 * sigma, 0.0),
            C64::new(sigma, 0.0),
            3.0 * sigma * sigma,
            "defocusing",
        ),
    };
    let mut even = BilinearEquation::new(format!("{tag}/even/{frame}"), frame)
        .hirota(one, 0, 1)
        .hirota(one, 3, 0)
        .hirota(quad, 2, 0);
    if frame == Frame::Xt {
        even = even.hirota(C64::new(drift, 0.0), 1, 0);
    }
    let odd = BilinearEquation::new(format!("{tag}/odd/{frame}"), frame)
        .sup(one, 3)
        .sup(odd_weight, 1);
    [even, odd]
}

/// Applies an equation to a tau pair, insisting on matching frames.
pub fn apply_bilinear(eq: &BilinearEquation, tau: &TauPair) -> Result<SuperPoly> {
    if eq.frame != tau.frame {
        return Err(Error::FrameMismatch {
            expected: eq.frame,
            found: tau.frame,
        });
    }
    eq.apply(&tau.g, &tau.f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::Grassmann;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn e(n: usize, k: f64) -> SuperPoly {
        SuperPoly::exponential(c(k), c(0.0), Grassmann::one(n))
    }

    #[test]
    fn first_order_on_exponentials() {
        let r = hirota_d(&e(1, 1.5), &e(1, 0.25), 1, 0).unwrap();
        assert_eq!(r, e(1, 1.75).scale(c(1.25)));
    }

    #[test]
    fn self_pairing_vanishes() {
        let a = &SuperPoly::one(1) + &e(1, 0.3).scale(C64::new(0.2, 1.0));
        assert!(hirota_d(&a, &a, 1, 0).unwrap().is_empty());
    }

    #[test]
    fn second_order_on_one() {
        let k = 1.7;
        let r = hirota_d(&SuperPoly::one(1), &e(1, k), 2, 0).unwrap();
        assert_eq!(r, e(1, k).scale(c(k * k)));
    }

    #[test]
    fn s_one_one_vanishes() {
        assert!(super_s(&SuperPoly::one(2), &SuperPoly::one(2), 1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn even_powers_are_hirota() {
        let a = &SuperPoly::one(2) + &e(2, 0.3);
        let b = &e(2, -0.8) + &e(2, 1.1);
        assert_eq!(super_s(&a, &b, 2).unwrap(), hirota_d(&a, &b, 1, 0).unwrap());
        assert_eq!(super_s(&a, &b, 4).unwrap(), hirota_d(&a, &b, 2, 0).unwrap());
    }

    #[test]
    fn frame_mismatch_is_an_error() {
        let eq = BilinearEquation::new("empty", Frame::Xt);
        let tau = TauPair::from_parts(
            SuperPoly::one(1),
            SuperPoly::one(1),
            Regime::Focusing,
            Frame::XT,
            1.0,
        );
        assert!(matches!(
            apply_bilinear(&eq, &tau),
            Err(Error::FrameMismatch { .. })
        ));
        let eq = BilinearEquation::new("empty", Frame::XT);
        assert!(apply_bilinear(&eq, &tau).unwrap().is_empty());
    }
}
