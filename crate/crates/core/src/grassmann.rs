//! Finite-dimensional Grassmann (exterior) algebra over the complex numbers.
//!
//! Generators are ordered with θ at index 0 followed by ξ₁…ξ_N. A basis
//! monomial is a bitmask over generator indices, always read in ascending
//! index order, so every sign in the algebra comes from the permutation that
//! sorts a concatenation of two monomials back into that order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Coefficients below this magnitude are dropped at normalization.
pub const PRUNE_TOL: f64 = 1e-14;

/// Index of θ among the generators.
pub const THETA: usize = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn of_mask(mask: u32) -> Parity {
        if mask.count_ones().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Grading rule for products of homogeneous factors.
    pub fn product(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }
}

/// True when moving monomial `b` to the right of monomial `a` and sorting
/// requires an odd number of transpositions. Masks must be disjoint.
#[inline]
pub(crate) fn reorder_is_odd(a: u32, b: u32) -> bool {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> j >> 1).count_ones();
        rest &= rest - 1;
    }
    swaps % 2 == 1
}

/// Human-readable name of a basis monomial: `1`, `theta`, `xi1`, `theta*xi1*xi2`.
pub fn monomial_name(mask: u32) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        let g = rest.trailing_zeros();
        parts.push(generator_name(g as usize));
        rest &= rest - 1;
    }
    parts.join("*")
}

pub fn generator_name(index: usize) -> String {
    if index == THETA {
        "theta".to_string()
    } else {
        format!("xi{index}")
    }
}

/// An element of the exterior algebra, stored sparsely by monomial mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Grassmann {
    num_generators: usize,
    terms: BTreeMap<u32, C64>,
}

impl Grassmann {
    pub fn zero(num_generators: usize) -> Self {
        assert!(num_generators <= 31, "at most 31 generators are supported");
        Grassmann {
            num_generators,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_generators: usize) -> Self {
        Self::scalar(num_generators, C64::new(1.0, 0.0))
    }

    pub fn scalar(num_generators: usize, c: C64) -> Self {
        Self::monomial(num_generators, 0, c)
    }

    pub fn monomial(num_generators: usize, mask: u32, c: C64) -> Self {
        let mut out = Self::zero(num_generators);
        assert!(
            (mask as u64) < (1u64 << num_generators),
            "mask {mask:#b} out of range for {num_generators} generators"
        );
        if c.norm() >= PRUNE_TOL {
            out.terms.insert(mask, c);
        }
        out
    }

    /// The single generator with the given index.
    pub fn generator(num_generators: usize, index: usize) -> Result<Self> {
        if index >= num_generators {
            return Err(Error::GeneratorIndex {
                index,
                count: num_generators,
            });
        }
        Ok(Self::monomial(num_generators, 1 << index, C64::new(1.0, 0.0)))
    }

    /// Builds an element from (mask, coefficient) pairs, summing repeats.
    pub fn from_terms<I>(num_generators: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, C64)>,
    {
        let mut out = Self::zero(num_generators);
        for (mask, c) in terms {
            if (mask as u64) >= (1u64 << num_generators) {
                return Err(Error::Format(format!(
                    "mask {mask} out of range for {num_generators} generators"
                )));
            }
            *out.terms.entry(mask).or_insert(C64::new(0.0, 0.0)) += c;
        }
        out.normalize();
        Ok(out)
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    /// Iterates over (mask, coefficient) in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, C64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> C64 {
        self.terms.get(&mask).copied().unwrap_or_default()
    }

    /// Scalar part.
    pub fn body(&self) -> C64 {
        self.coeff(0)
    }

    /// Nilpotent part (everything except the scalar).
    pub fn soul(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&0);
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// The monomial carrying the largest coefficient, if any.
    pub fn argmax(&self) -> Option<(u32, C64)> {
        let mut best: Option<(u32, C64)> = None;
        for (m, c) in self.terms() {
            if best.is_none_or(|(_, b)| c.norm() > b.norm()) {
                best = Some((m, c));
            }
        }
        best
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for m in self.terms.keys() {
            match Parity::of_mask(*m) {
                Parity::Even => even = true,
                _ => odd = true,
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 1)
    }

    pub(crate) fn filter(&self, keep: impl Fn(u32) -> bool) -> Self {
        Grassmann {
            num_generators: self.num_generators,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, *c))
                .collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = Grassmann {
            num_generators: self.num_generators,
            terms: self.terms.iter().map(|(m, v)| (*m, *v * c)).collect(),
        };
        out.normalize();
        out
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
        let mut out = self.clone();
        for (m, c) in other.terms() {
            *out.terms.entry(m).or_default() += c;
        }
        out.normalize();
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Exterior product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut acc: BTreeMap<u32, C64> = BTreeMap::new();
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let v = ca * cb;
                let slot = acc.entry(ma | mb).or_default();
                if reorder_is_odd(ma, mb) {
                    *slot -= v;
                } else {
                    *slot += v;
                }
            }
        }
        let mut out = Grassmann {
            num_generators: self.num_generators,
            terms: acc,
        };
        out.normalize();
        Ok(out)
    }

    /// Left derivative with respect to generator `gen`.
    pub fn dtheta(&self, gen: usize) -> Result<Self> {
        if gen >= self.num_generators {
            return Err(Error::GeneratorIndex {
                index: gen,
                count: self.num_generators,
            });
        }
        let bit = 1u32 << gen;
        let lower = bit - 1;
        let mut out = Self::zero(self.num_generators);
        for (&m, &c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let v = if (m & lower).count_ones() % 2 == 1 {
                -c
            } else {
                c
            };
            out.terms.insert(m & !bit, v);
        }
        Ok(out)
    }

    /// Multiplicative inverse via the terminating Neumann series in the soul.
    pub fn inv(&self) -> Result<Self> {
        let body = self.body();
        if body.norm() < PRUNE_TOL {
            return Err(Error::NotInvertible { body: body.norm() });
        }
        let n = self.num_generators;
        let x = self.soul().scale(-1.0 / body);
        let mut sum = Self::one(n);
        let mut power = Self::one(n);
        for _ in 0..n {
            power = &power * &x;
            if power.is_zero() {
                break;
            }
            sum = &sum + &power;
        }
        Ok(sum.scale(1.0 / body))
    }

    /// Principal logarithm of an even invertible element.
    pub fn log(&self) -> Result<Self> {
        let parity = self.parity();
        if parity != Parity::Even {
            return Err(Error::Parity { op: "log", parity });
        }
        let body = self.body();
        if body.norm() < PRUNE_TOL {
            return Err(Error::LogDomain);
        }
        let n = self.num_generators;
        let x = self.soul().scale(1.0 / body);
        let mut sum = Self::scalar(n, body.ln());
        let mut power = Self::one(n);
        for m in 1..=n {
            power = &power * &x;
            if power.is_zero() {
                break;
            }
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            sum = &sum + &power.scale(C64::new(sign / m as f64, 0.0));
        }
        Ok(sum)
    }

    /// Exponential of an even element.
    pub fn exp(&self) -> Result<Self> {
        let parity = self.parity();
        if parity != Parity::Even {
            return Err(Error::Parity { op: "exp", parity });
        }
        let n = self.num_generators;
        let soul = self.soul();
        let mut sum = Self::one(n);
        let mut power = Self::one(n);
        let mut factorial = 1.0;
        for m in 1..=n {
            power = &power * &soul;
            if power.is_zero() {
                break;
            }
            factorial *= m as f64;
            sum = &sum + &power.scale(C64::new(1.0 / factorial, 0.0));
        }
        Ok(sum.scale(self.body().exp()))
    }

    /// Complex conjugation of every coefficient; monomials are untouched.
    pub fn conj(&self) -> Self {
        Grassmann {
            num_generators: self.num_generators,
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    /// Substitutes `gen -> factor * gen`, an algebra automorphism.
    pub fn rescale_generator(&self, gen: usize, factor: f64) -> Self {
        let bit = 1u32 << gen;
        let mut out = Grassmann {
            num_generators: self.num_generators,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m & bit != 0 { *c * factor } else { *c }))
                .collect(),
        };
        out.normalize();
        out
    }

    /// Largest coefficient-wise distance to `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for (m, c) in self.terms() {
            d = d.max((c - other.coeff(m)).norm());
        }
        for (m, c) in other.terms() {
            if !self.terms.contains_key(&m) {
                d = d.max(c.norm());
            }
        }
        d
    }

    pub fn to_terms(&self) -> Vec<GrassmannTerm> {
        self.terms()
            .map(|(mask, c)| GrassmannTerm {
                mask,
                re: c.re,
                im: c.im,
            })
            .collect()
    }

    pub fn from_serialized(num_generators: usize, terms: &[GrassmannTerm]) -> Result<Self> {
        Self::from_terms(
            num_generators,
            terms.iter().map(|t| (t.mask, C64::new(t.re, t.im))),
        )
    }
}

/// Serialized form of one monomial coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrassmannTerm {
    pub mask: u32,
    pub re: f64,
    pub im: f64,
}

impl fmt::Display for Grassmann {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            if m != 0 {
                write!(f, "*{}", monomial_name(m))?;
            }
        }
        Ok(())
    }
}

impl Add for &Grassmann {
    type Output = Grassmann;
    fn add(self, rhs: &Grassmann) -> Grassmann {
        self.try_add(rhs).expect("generator count mismatch")
    }
}

impl Sub for &Grassmann {
    type Output = Grassmann;
    fn sub(self, rhs: &Grassmann) -> Grassmann {
        self.try_sub(rhs).expect("generator count mismatch")
    }
}

impl Mul for &Grassmann {
    type Output = Grassmann;
    fn mul(self, rhs: &Grassmann) -> Grassmann {
        self.try_mul(rhs).expect("generator count mismatch")
    }
}

impl Neg for &Grassmann {
    type Output = Grassmann;
    fn neg(self) -> Grassmann {
        Grassmann {
            num_generators: self.num_generators,
            terms: self.terms.iter().map(|(m, c)| (*m, -*c)).collect(),
        }
    }
}
