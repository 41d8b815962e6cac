//! Exponential polynomials with Grassmann coefficients.
//!
//! A [`SuperPoly`] is a finite sum of terms `c · X^p · T^q · exp(kX + ωT)`
//! with `c` in the exterior algebra. The set is closed under sums, products,
//! `∂_X`, `∂_T`, the odd derivative `D = ∂_θ + θ∂_X` and Galilean frame
//! shifts, so every tau function and every bilinear residual in this crate is
//! represented exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{Grassmann, GrassmannTerm, Parity, C64, THETA};
use crate::jet::{JetPlan, SuperJet};

/// Two rates closer than this (per component) are the same exponential.
pub const RATE_MERGE_TOL: f64 = 1e-12;

/// Largest real exponent accepted by [`SuperPoly::eval`].
const MAX_EXPONENT: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Frame {
    /// Comoving coordinates in which the bilinear systems are simplest.
    #[serde(rename = "XT")]
    XT,
    /// Laboratory coordinates of the nonlinear equation.
    #[serde(rename = "xt")]
    Xt,
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Frame::XT => write!(f, "XT"),
            Frame::Xt => write!(f, "xt"),
        }
    }
}

impl std::str::FromStr for Frame {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "XT" => Ok(Frame::XT),
            "xt" => Ok(Frame::Xt),
            other => Err(Error::Format(format!("unknown frame `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub xpow: u32,
    pub tpow: u32,
    pub k: C64,
    pub w: C64,
    pub coeff: Grassmann,
}

impl Term {
    fn same_slot(&self, other: &Term) -> bool {
        self.xpow == other.xpow
            && self.tpow == other.tpow
            && (self.k.re - other.k.re).abs() <= RATE_MERGE_TOL
            && (self.k.im - other.k.im).abs() <= RATE_MERGE_TOL
            && (self.w.re - other.w.re).abs() <= RATE_MERGE_TOL
            && (self.w.im - other.w.im).abs() <= RATE_MERGE_TOL
    }

    fn order(&self, other: &Term) -> Ordering {
        self.xpow
            .cmp(&other.xpow)
            .then(self.tpow.cmp(&other.tpow))
            .then(self.k.re.total_cmp(&other.k.re))
            .then(self.k.im.total_cmp(&other.k.im))
            .then(self.w.re.total_cmp(&other.w.re))
            .then(self.w.im.total_cmp(&other.w.im))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperPoly {
    num_generators: usize,
    terms: Vec<Term>,
}

/// Where a residual is largest, for reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermLocation {
    pub mask: u32,
    pub monomial: String,
    pub xpow: u32,
    pub tpow: u32,
    pub k: [f64; 2],
    pub w: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCheck {
    pub is_zero: bool,
    pub max_abs: f64,
    pub at: Option<TermLocation>,
}

impl SuperPoly {
    pub fn zero(num_generators: usize) -> Self {
        SuperPoly {
            num_generators,
            terms: Vec::new(),
        }
    }

    pub fn constant(coeff: Grassmann) -> Self {
        Self::exponential(C64::default(), C64::default(), coeff)
    }

    pub fn one(num_generators: usize) -> Self {
        Self::constant(Grassmann::one(num_generators))
    }

    /// `coeff · exp(kX + ωT)`.
    pub fn exponential(k: C64, w: C64, coeff: Grassmann) -> Self {
        Self::term(0, 0, k, w, coeff)
    }

    pub fn term(xpow: u32, tpow: u32, k: C64, w: C64, coeff: Grassmann) -> Self {
        let n = coeff.num_generators();
        let mut out = SuperPoly::zero(n);
        if !coeff.is_zero() {
            out.terms.push(Term {
                xpow,
                tpow,
                k,
                w,
                coeff,
            });
        }
        out
    }

    pub fn from_terms(num_generators: usize, terms: Vec<Term>) -> Result<Self> {
        for t in &terms {
            if t.coeff.num_generators() != num_generators {
                return Err(Error::Dimension {
                    left: num_generators,
                    right: t.coeff.num_generators(),
                });
            }
        }
        Ok(Self::normalized(num_generators, terms))
    }

    fn normalized(num_generators: usize, terms: Vec<Term>) -> Self {
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if t.coeff.is_zero() {
                continue;
            }
            match merged.iter_mut().find(|m| m.same_slot(&t)) {
                Some(m) => m.coeff = &m.coeff + &t.coeff,
                None => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        merged.sort_by(|a, b| a.order(b));
        SuperPoly {
            num_generators,
            terms: merged,
        }
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.num_generators != other.num_generators {
            return Err(Error::Dimension {
                left: self.num_generators,
                right: other.num_generators,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        Ok(Self::normalized(self.num_generators, terms))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Termwise product: powers and rates add, coefficients multiply in order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Term {
                    xpow: a.xpow + b.xpow,
                    tpow: a.tpow + b.tpow,
                    k: a.k + b.k,
                    w: a.w + b.w,
                    coeff: &a.coeff * &b.coeff,
                });
            }
        }
        Ok(Self::normalized(self.num_generators, terms))
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map_coeffs(|g| g.scale(c))
    }

    /// Multiplies every coefficient by `g` from the left.
    pub fn left_mul(&self, g: &Grassmann) -> Self {
        self.map_coeffs(|c| g * c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Grassmann) -> Grassmann) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: f(&t.coeff),
                ..t.clone()
            })
            .collect();
        Self::normalized(self.num_generators, terms)
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(Grassmann::conj)
    }

    pub fn parity(&self) -> Parity {
        let mut acc: Option<Parity> = None;
        for t in &self.terms {
            let p = t.coeff.parity();
            acc = Some(match acc {
                None => p,
                Some(q) if q == p => q,
                Some(_) => Parity::Mixed,
            });
        }
        acc.unwrap_or(Parity::Even)
    }

    pub fn even_part(&self) -> Self {
        self.map_coeffs(Grassmann::even_part)
    }

    pub fn odd_part(&self) -> Self {
        self.map_coeffs(Grassmann::odd_part)
    }

    /// Splits `a = A + θ·α` into the θ-free part `A` and `α = ∂_θ a`.
    pub fn theta_split(&self) -> (Self, Self) {
        let bit = 1u32 << THETA;
        let free = self.map_coeffs(|c| c.filter(|m| m & bit == 0));
        let along = self.map_coeffs(|c| c.dtheta(THETA).expect("theta exists"));
        (free, along)
    }

    pub fn rescale_generator(&self, gen: usize, factor: f64) -> Self {
        self.map_coeffs(|c| c.rescale_generator(gen, factor))
    }

    /// Exact partial derivative along one axis.
    pub fn deriv(&self, axis: Axis) -> Self {
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            let (rate, pow) = match axis {
                Axis::X => (t.k, t.xpow),
                Axis::T => (t.w, t.tpow),
            };
            terms.push(Term {
                coeff: t.coeff.scale(rate),
                ..t.clone()
            });
            if pow > 0 {
                let mut lowered = t.clone();
                lowered.coeff = t.coeff.scale(C64::new(pow as f64, 0.0));
                match axis {
                    Axis::X => lowered.xpow -= 1,
                    Axis::T => lowered.tpow -= 1,
                }
                terms.push(lowered);
            }
        }
        Self::normalized(self.num_generators, terms)
    }

    pub fn deriv_n(&self, axis: Axis, n: usize) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.deriv(axis))
    }

    /// Super-derivative `D = ∂_θ + θ∂_X` along the current spatial axis.
    pub fn super_d(&self) -> Self {
        let theta = Grassmann::generator(self.num_generators, THETA).expect("theta exists");
        let odd = self.map_coeffs(|c| c.dtheta(THETA).expect("theta exists"));
        let shifted = self.deriv(Axis::X).left_mul(&theta);
        &odd + &shifted
    }

    /// Exact value at `(x, t)`.
    pub fn eval(&self, x: f64, t: f64) -> Result<Grassmann> {
        let mut acc = Grassmann::zero(self.num_generators);
        for term in &self.terms {
            let exponent = term.k * x + term.w * t;
            if exponent.re > MAX_EXPONENT {
                return Err(Error::Range {
                    x,
                    t,
                    k: format!("{}", term.k),
                    w: format!("{}", term.w),
                    re: exponent.re,
                });
            }
            let scale = exponent.exp() * x.powi(term.xpow as i32) * t.powi(term.tpow as i32);
            acc = &acc + &term.coeff.scale(scale);
        }
        Ok(acc)
    }

    /// Taylor jet of orders (3, 1) in (X, T) at the given base point.
    pub fn jet(&self, x0: f64, t0: f64) -> Result<SuperJet> {
        JetPlan::new(self, 3, 1).jet_at(x0, t0)
    }

    /// Substitutes `X = x + s·t`, `T = t`.
    pub fn frame_shift(&self, s: f64) -> Self {
        let mut terms = Vec::new();
        for t in &self.terms {
            let w = t.w + t.k * s;
            for j in 0..=t.xpow {
                let c = binomial(t.xpow, j) * s.powi(j as i32);
                terms.push(Term {
                    xpow: t.xpow - j,
                    tpow: t.tpow + j,
                    k: t.k,
                    w,
                    coeff: t.coeff.scale(C64::new(c, 0.0)),
                });
            }
        }
        Self::normalized(self.num_generators, terms)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.max_abs())
            .fold(0.0, f64::max)
    }

    /// Zero test with a report of the largest surviving coefficient.
    pub fn is_zero(&self, tol: f64) -> ZeroCheck {
        let mut max_abs = 0.0;
        let mut at = None;
        for t in &self.terms {
            if let Some((mask, c)) = t.coeff.argmax() {
                if c.norm() > max_abs {
                    max_abs = c.norm();
                    at = Some(TermLocation {
                        mask,
                        monomial: crate::grassmann::monomial_name(mask),
                        xpow: t.xpow,
                        tpow: t.tpow,
                        k: [t.k.re, t.k.im],
                        w: [t.w.re, t.w.im],
                    });
                }
            }
        }
        ZeroCheck {
            is_zero: max_abs <= tol,
            max_abs,
            at,
        }
    }

    pub fn to_doc(&self, frame: Frame) -> SuperPolyDoc {
        SuperPolyDoc {
            generators: self.num_generators,
            frame,
            terms: self
                .terms
                .iter()
                .map(|t| TermDoc {
                    xpow: t.xpow,
                    tpow: t.tpow,
                    k: [t.k.re, t.k.im],
                    w: [t.w.re, t.w.im],
                    coeff: t.coeff.to_terms(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &SuperPolyDoc) -> Result<(Self, Frame)> {
        if doc.generators == 0 || doc.generators > 31 {
            return Err(Error::Format(format!(
                "generator count {} out of range",
                doc.generators
            )));
        }
        let terms = doc
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    xpow: t.xpow,
                    tpow: t.tpow,
                    k: C64::new(t.k[0], t.k[1]),
                    w: C64::new(t.w[0], t.w[1]),
                    coeff: Grassmann::from_serialized(doc.generators, &t.coeff)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((Self::from_terms(doc.generators, terms)?, doc.frame))
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// JSON document form of a [`SuperPoly`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperPolyDoc {
    pub generators: usize,
    pub frame: Frame,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub xpow: u32,
    pub tpow: u32,
    pub k: [f64; 2],
    pub w: [f64; 2],
    pub coeff: Vec<GrassmannTerm>,
}

impl Add for &SuperPoly {
    type Output = SuperPoly;
    fn add(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_add(rhs).expect("generator count mismatch")
    }
}

impl Sub for &SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_sub(rhs).expect("generator count mismatch")
    }
}

impl Mul for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        self.try_mul(rhs).expect("generator count mismatch")
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        self.scale(C64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn exp_x(n: usize, k: f64) -> SuperPoly {
        SuperPoly::exponential(c(k, 0.0), c(0.0, 0.0), Grassmann::one(n))
    }

    fn x_poly(n: usize) -> SuperPoly {
        SuperPoly::term(1, 0, c(0.0, 0.0), c(0.0, 0.0), Grassmann::one(n))
    }

    #[test]
    fn reciprocal_exponentials_cancel() {
        assert_eq!(&exp_x(1, 1.3) * &exp_x(1, -1.3), SuperPoly::one(1));
    }

    #[test]
    fn polynomial_prefactors_add() {
        let lhs = &x_poly(1) * &(&x_poly(1) * &exp_x(1, 0.7));
        let rhs = SuperPoly::term(2, 0, c(0.7, 0.0), c(0.0, 0.0), Grassmann::one(1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugate_soliton_product() {
        let a = c(1.0, 1.0);
        let e = |amp: C64| SuperPoly::exponential(c(1.0, 0.0), c(-4.0, 0.0), Grassmann::scalar(1, amp));
        let f = &SuperPoly::one(1) + &e(a);
        let g = &SuperPoly::one(1) + &e(a.conj());
        let expected = &(&SuperPoly::one(1) + &e(a + a.conj()))
            + &SuperPoly::exponential(c(2.0, 0.0), c(-8.0, 0.0), Grassmann::scalar(1, c(a.norm_sqr(), 0.0)));
        assert_eq!(&f * &g, expected);
    }

    #[test]
    fn derivatives() {
        let p = &x_poly(1) * &exp_x(1, 2.0);
        let expected = &exp_x(1, 2.0) + &p.scale(c(2.0, 0.0));
        assert_eq!(p.deriv(Axis::X), expected);
        let e = SuperPoly::exponential(c(0.0, 0.0), c(-3.0, 0.0), Grassmann::one(1));
        assert_eq!(e.deriv(Axis::T), e.scale(c(-3.0, 0.0)));
    }

    #[test]
    fn super_derivative_examples() {
        let theta = Grassmann::generator(2, 0).unwrap();
        let xi = Grassmann::generator(2, 1).unwrap();
        assert_eq!(SuperPoly::constant(theta.clone()).super_d(), SuperPoly::one(2));

        let k = 1.7;
        let one_plus = &Grassmann::one(2) + &(&theta * &xi);
        let p = SuperPoly::exponential(c(k, 0.0), c(0.0, 0.0), one_plus);
        let expected = SuperPoly::exponential(
            c(k, 0.0),
            c(0.0, 0.0),
            &xi + &theta.scale(c(k, 0.0)),
        );
        assert_eq!(p.super_d(), expected);
    }

    #[test]
    fn evaluation() {
        let tx = &Grassmann::generator(2, 0).unwrap() * &Grassmann::generator(2, 1).unwrap();
        let a = &Grassmann::one(2) + &tx;
        assert_eq!(SuperPoly::constant(a.clone()).eval(3.0, -2.0).unwrap(), a);
        assert_eq!(exp_x(1, 1.0).eval(0.0, 5.0).unwrap(), Grassmann::one(1));
        assert!(matches!(
            exp_x(1, 1.0).eval(800.0, 0.0),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn jets() {
        let j = SuperPoly::constant(Grassmann::scalar(1, c(2.0, 0.0)))
            .jet(0.3, 0.4)
            .unwrap();
        for i in 0..=3 {
            for k in 0..=1 {
                let expect = if (i, k) == (0, 0) { 2.0 } else { 0.0 };
                assert_eq!(j.coeff(i, k).body(), c(expect, 0.0));
            }
        }
        let x2 = &x_poly(1) * &x_poly(1);
        let j = x2.jet(0.0, 0.0).unwrap();
        assert_eq!(j.coeff(2, 0).body(), c(1.0, 0.0));
        assert!(j.coeff(1, 0).is_zero());

        let k = 0.8;
        let x0 = 1.5;
        let j = exp_x(1, k).jet(x0, 0.0).unwrap();
        let mut fact = 1.0;
        for i in 0..=3 {
            if i > 0 {
                fact *= i as f64;
            }
            let expect = (k * x0).exp() * k.powi(i as i32) / fact;
            assert!((j.coeff(i, 0).body().re - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn frame_shift_examples() {
        let s = 3.0;
        let k = 0.5;
        let shifted = exp_x(1, k).frame_shift(s);
        assert_eq!(
            shifted,
            SuperPoly::exponential(c(k, 0.0), c(s * k, 0.0), Grassmann::one(1))
        );
        let expected = &x_poly(1)
            + &SuperPoly::term(0, 1, c(0.0, 0.0), c(0.0, 0.0), Grassmann::scalar(1, c(s, 0.0)));
        assert_eq!(x_poly(1).frame_shift(s), expected);
        let p = &(&x_poly(1) * &x_poly(1)) * &exp_x(1, k);
        let back = p.frame_shift(s).frame_shift(-s);
        assert!((&back - &p).is_zero(1e-12).is_zero);
    }

    #[test]
    fn zero_checks() {
        let z = SuperPoly::zero(1).is_zero(0.0);
        assert!(z.is_zero);
        assert_eq!(z.max_abs, 0.0);
        assert!((&exp_x(1, 2.0) - &exp_x(1, 2.0)).is_empty());
        let r = exp_x(1, 2.0).scale(c(0.0, 3.0)).is_zero(1e-10);
        assert!(!r.is_zero);
        assert_eq!(r.max_abs, 3.0);
        assert_eq!(r.at.unwrap().k, [2.0, 0.0]);
    }

    #[test]
    fn doc_round_trip_is_bit_exact() {
        let xi = Grassmann::generator(2, 1).unwrap();
        let p = &SuperPoly::term(1, 1, c(0.1, 0.0), c(-1.0 / 3.0, 0.0), xi.scale(c(0.7, 0.2)))
            + &exp_x(2, std::f64::consts::PI);
        let text = serde_json::to_string(&p.to_doc(Frame::XT)).unwrap();
        let doc: SuperPolyDoc = serde_json::from_str(&text).unwrap();
        let (back, frame) = SuperPoly::from_doc(&doc).unwrap();
        assert_eq!(frame, Frame::XT);
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back.to_doc(frame)).unwrap(), text);
    }
}
