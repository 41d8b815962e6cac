//! Truncated Taylor jets in (X, T) with Grassmann coefficients.
//!
//! A jet of orders `(mx, mt)` at `(X₀, T₀)` stores `c_ij` for `i ≤ mx`,
//! `j ≤ mt`, standing for `Σ c_ij (X−X₀)^i (T−T₀)^j`. Products truncate to
//! the smaller of the two boxes, and differentiation lowers the order of the
//! differentiated axis, so every stored coefficient is always exact.

use crate::error::{Error, Result};
use crate::grassmann::{Grassmann, C64, THETA};
use crate::superpoly::{Axis, SuperPoly};

#[derive(Debug, Clone, PartialEq)]
pub struct SuperJet {
    x0: f64,
    t0: f64,
    mx: usize,
    mt: usize,
    coeffs: Vec<Grassmann>,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

impl SuperJet {
    pub fn zero(num_generators: usize, x0: f64, t0: f64, mx: usize, mt: usize) -> Self {
        SuperJet {
            x0,
            t0,
            mx,
            mt,
            coeffs: vec![Grassmann::zero(num_generators); (mx + 1) * (mt + 1)],
        }
    }

    pub fn constant(value: Grassmann, x0: f64, t0: f64, mx: usize, mt: usize) -> Self {
        let mut out = Self::zero(value.num_generators(), x0, t0, mx, mt);
        out.coeffs[0] = value;
        out
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.mt + 1) + j
    }

    pub fn base(&self) -> (f64, f64) {
        (self.x0, self.t0)
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.mx, self.mt)
    }

    pub fn num_generators(&self) -> usize {
        self.coeffs[0].num_generators()
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Grassmann {
        assert!(i <= self.mx && j <= self.mt, "jet index ({i},{j}) beyond orders");
        &self.coeffs[self.idx(i, j)]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, value: Grassmann) {
        let k = self.idx(i, j);
        self.coeffs[k] = value;
    }

    /// Value at the base point.
    pub fn value(&self) -> &Grassmann {
        &self.coeffs[0]
    }

    /// `∂_X^i ∂_T^j` at the base point.
    pub fn partial(&self, i: usize, j: usize) -> Grassmann {
        self.coeff(i, j)
            .scale(C64::new(factorial(i) * factorial(j), 0.0))
    }

    fn truncated(&self, mx: usize, mt: usize) -> Self {
        let mut out = Self::zero(self.num_generators(), self.x0, self.t0, mx, mt);
        for i in 0..=mx {
            for j in 0..=mt {
                out.set_coeff(i, j, self.coeff(i, j).clone());
            }
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.num_generators() != other.num_generators() {
            return Err(Error::Dimension {
                left: self.num_generators(),
                right: other.num_generators(),
            });
        }
        assert!(
            self.x0 == other.x0 && self.t0 == other.t0,
            "jets must share a base point"
        );
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&Grassmann, &Grassmann) -> Grassmann) -> Result<Self> {
        self.check(other)?;
        let (mx, mt) = (self.mx.min(other.mx), self.mt.min(other.mt));
        let mut out = Self::zero(self.num_generators(), self.x0, self.t0, mx, mt);
        for i in 0..=mx {
            for j in 0..=mt {
                out.set_coeff(i, j, f(self.coeff(i, j), other.coeff(i, j)));
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    /// Truncated convolution; coefficient order is preserved (left · right).
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (mx, mt) = (self.mx.min(other.mx), self.mt.min(other.mt));
        let mut out = Self::zero(self.num_generators(), self.x0, self.t0, mx, mt);
        for i1 in 0..=mx {
            for j1 in 0..=mt {
                let a = self.coeff(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=(mx - i1) {
                    for j2 in 0..=(mt - j1) {
                        let b = other.coeff(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        let k = out.idx(i1 + i2, j1 + j2);
                        out.coeffs[k] = &out.coeffs[k] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = self.clone();
        for v in &mut out.coeffs {
            *v = v.scale(c);
        }
        out
    }

    pub fn left_mul(&self, g: &Grassmann) -> Self {
        let mut out = self.clone();
        for v in &mut out.coeffs {
            *v = g * v;
        }
        out
    }

    /// Derivative along one axis; the order along that axis drops by one.
    pub fn deriv(&self, axis: Axis) -> Self {
        let (mx, mt) = match axis {
            Axis::X => (self.mx.checked_sub(1).expect("jet exhausted along X"), self.mt),
            Axis::T => (self.mx, self.mt.checked_sub(1).expect("jet exhausted along T")),
        };
        let mut out = Self::zero(self.num_generators(), self.x0, self.t0, mx, mt);
        for i in 0..=mx {
            for j in 0..=mt {
                let (src, factor) = match axis {
                    Axis::X => (self.coeff(i + 1, j), (i + 1) as f64),
                    Axis::T => (self.coeff(i, j + 1), (j + 1) as f64),
                };
                out.set_coeff(i, j, src.scale(C64::new(factor, 0.0)));
            }
        }
        out
    }

    /// `D = ∂_θ + θ∂_X` applied coefficientwise.
    pub fn super_d(&self) -> Self {
        let theta = Grassmann::generator(self.num_generators(), THETA).expect("theta exists");
        let dx = self.deriv(Axis::X);
        let mut out = dx.left_mul(&theta);
        for i in 0..=out.mx {
            for j in 0..=out.mt {
                let v = self.coeff(i, j).dtheta(THETA).expect("theta exists");
                let sum = &v + out.coeff(i, j);
                out.set_coeff(i, j, sum);
            }
        }
        out
    }

    /// Splits into the base value `a₀` and the part vanishing at the base point.
    fn split(&self) -> (Grassmann, Self) {
        let mut rest = self.clone();
        rest.coeffs[0] = Grassmann::zero(self.num_generators());
        (self.coeffs[0].clone(), rest)
    }

    fn nil_degree(&self) -> usize {
        self.mx + self.mt
    }

    /// Inverse in the jet ring, `a⁻¹ = (1 + a₀⁻¹n)⁻¹ a₀⁻¹`.
    pub fn inv(&self) -> Result<Self> {
        let (a0, n) = self.split();
        let a0_inv = a0.inv()?;
        let u = n.left_mul(&a0_inv);
        let one = Self::constant(Grassmann::one(self.num_generators()), self.x0, self.t0, self.mx, self.mt);
        let mut sum = one.clone();
        let mut power = one;
        let minus_u = u.scale(C64::new(-1.0, 0.0));
        for _ in 0..self.nil_degree() {
            power = power.try_mul(&minus_u)?;
            sum = sum.try_add(&power)?;
        }
        let mut out = sum.clone();
        for v in &mut out.coeffs {
            *v = &*v * &a0_inv;
        }
        Ok(out)
    }

    /// Logarithm of a jet whose base value is even and invertible.
    pub fn log(&self) -> Result<Self> {
        let (a0, n) = self.split();
        let log0 = a0.log()?;
        let u = n.left_mul(&a0.inv()?);
        let mut sum = Self::constant(log0, self.x0, self.t0, self.mx, self.mt);
        let mut power = Self::constant(Grassmann::one(self.num_generators()), self.x0, self.t0, self.mx, self.mt);
        for m in 1..=self.nil_degree() {
            power = power.try_mul(&u)?;
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            sum = sum.try_add(&power.scale(C64::new(sign / m as f64, 0.0)))?;
        }
        Ok(sum)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(Grassmann::max_abs).fold(0.0, f64::max)
    }

    pub fn restrict(&self, mx: usize, mt: usize) -> Self {
        assert!(mx <= self.mx && mt <= self.mt);
        self.truncated(mx, mt)
    }
}

/// Cached derivative table of a [`SuperPoly`] for repeated jet evaluation.
#[derive(Debug, Clone)]
pub struct JetPlan {
    num_generators: usize,
    mx: usize,
    mt: usize,
    derivs: Vec<SuperPoly>,
}

impl JetPlan {
    pub fn new(poly: &SuperPoly, mx: usize, mt: usize) -> Self {
        let mut derivs = Vec::with_capacity((mx + 1) * (mt + 1));
        let mut along_x = poly.clone();
        for _ in 0..=mx {
            let mut along_t = along_x.clone();
            for _ in 0..=mt {
                derivs.push(along_t.clone());
                along_t = along_t.deriv(Axis::T);
            }
            along_x = along_x.deriv(Axis::X);
        }
        JetPlan {
            num_generators: poly.num_generators(),
            mx,
            mt,
            derivs,
        }
    }

    pub fn jet_at(&self, x0: f64, t0: f64) -> Result<SuperJet> {
        let mut out = SuperJet::zero(self.num_generators, x0, t0, self.mx, self.mt);
        for i in 0..=self.mx {
            for j in 0..=self.mt {
                let value = self.derivs[i * (self.mt + 1) + j].eval(x0, t0)?;
                let norm = 1.0 / (factorial(i) * factorial(j));
                out.set_coeff(i, j, value.scale(C64::new(norm, 0.0)));
            }
        }
        Ok(out)
    }
}
