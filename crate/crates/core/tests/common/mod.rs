#![allow(dead_code)]

use proptest::prelude::*;
use susy_gardner::{Grassmann, SuperPoly, C64};

pub const GENS: usize = 4;

pub fn coeff() -> impl Strategy<Value = C64> + Clone {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| C64::new(re, im))
}

/// Sparse element whose monomials all satisfy `keep`.
pub fn grassmann_where(keep: fn(u32) -> bool) -> impl Strategy<Value = Grassmann> + Clone {
    let masks: Vec<u32> = (0..1u32 << GENS).filter(|&m| keep(m)).collect();
    proptest::collection::vec((proptest::sample::select(masks), coeff()), 0..6)
        .prop_map(|terms| Grassmann::from_terms(GENS, terms).unwrap())
}

pub fn grassmann() -> impl Strategy<Value = Grassmann> + Clone {
    grassmann_where(|_| true)
}

pub fn even() -> impl Strategy<Value = Grassmann> + Clone {
    grassmann_where(|m| m.count_ones() % 2 == 0)
}

pub fn odd() -> impl Strategy<Value = Grassmann> + Clone {
    grassmann_where(|m| m.count_ones() % 2 == 1)
}

pub fn invertible_even() -> impl Strategy<Value = Grassmann> {
    (even(), 0.5f64..2.0).prop_map(|(g, b)| {
        let shift = Grassmann::scalar(GENS, C64::new(b, 0.0) - g.body());
        &g + &shift
    })
}

fn rate() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0).prop_map(|r| C64::new(r, 0.0))
}

pub fn term(coeffs: impl Strategy<Value = Grassmann>) -> impl Strategy<Value = SuperPoly> {
    (0u32..3, 0u32..2, rate(), rate(), coeffs)
        .prop_map(|(p, q, k, w, c)| SuperPoly::term(p, q, k, w, c))
}

pub fn superpoly_from(coeffs: impl Strategy<Value = Grassmann> + Clone) -> impl Strategy<Value = SuperPoly> {
    proptest::collection::vec(term(coeffs), 1..4)
        .prop_map(|ts| ts.iter().fold(SuperPoly::zero(GENS), |acc, t| &acc + t))
}

pub fn superpoly() -> impl Strategy<Value = SuperPoly> {
    superpoly_from(grassmann())
}

pub fn even_superpoly() -> impl Strategy<Value = SuperPoly> {
    superpoly_from(even())
}

pub fn odd_superpoly() -> impl Strategy<Value = SuperPoly> {
    superpoly_from(odd())
}

/// Coefficientwise distance between two polynomials.
pub fn poly_distance(a: &SuperPoly, b: &SuperPoly) -> f64 {
    (a - b).max_abs()
}
