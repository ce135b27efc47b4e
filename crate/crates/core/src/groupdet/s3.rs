//! Regression data for the symmetric group of order 6 in its sextic
//! transitive ordering `(1, τ, τσ, τσ², σ, σ²)` with
//! `τ = (1 4)(2 3)(5 6)` and `σ = (1 3 5)(2 4 6)`, acting on the left.
//!
//! Variables are `X_1, X_τ, X_τσ, X_τσ², X_σ, X_σ²` in that order.

use super::mpoly::MPoly;
use super::{sym_group_det, SymGroupDet};
use crate::error::Result;
use crate::exactmath::rational::{rat, Rational};
use crate::exactmath::{Field, Rationals};
use crate::galois::FiniteGroup;

pub const NAMES: [&str; 6] = ["X_1", "X_t", "X_ts", "X_ts2", "X_s", "X_s2"];

fn perm(cycles: &[&[usize]]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..6).collect();
    for c in cycles {
        for k in 0..c.len() {
            p[c[k] - 1] = c[(k + 1) % c.len()] - 1;
        }
    }
    p
}

/// The group with elements in the order above.
pub fn group() -> FiniteGroup {
    let perms = vec![
        (0..6).collect(),
        perm(&[&[1, 4], &[2, 3], &[5, 6]]),
        perm(&[&[1, 2], &[3, 6], &[4, 5]]),
        perm(&[&[1, 6], &[2, 5], &[3, 4]]),
        perm(&[&[1, 3, 5], &[2, 4, 6]]),
        perm(&[&[1, 5, 3], &[2, 6, 4]]),
    ];
    FiniteGroup::from_permutations(&perms).expect("the listed permutations form a group")
}

fn poly(terms: &[(i64, &[usize])]) -> MPoly<Rational> {
    let q = Rationals;
    let mut p = MPoly::zero(6);
    for &(c, vars) in terms {
        let mut t = MPoly::constant(&q, 6, q.from_i64(c));
        for &v in vars {
            t = t.mul_var(&q, v, false);
        }
        p = p.add(&q, &t);
    }
    p
}

pub fn delta_trivial() -> MPoly<Rational> {
    poly(&[(1, &[0]), (1, &[1]), (1, &[2]), (1, &[3]), (1, &[4]), (1, &[5])])
}

pub fn delta_sign() -> MPoly<Rational> {
    poly(&[(1, &[0]), (-1, &[1]), (-1, &[2]), (-1, &[3]), (1, &[4]), (1, &[5])])
}

pub fn delta_two_dim() -> MPoly<Rational> {
    poly(&[
        (1, &[0, 0]),
        (-1, &[0, 4]),
        (-1, &[0, 5]),
        (-1, &[1, 1]),
        (1, &[1, 2]),
        (1, &[1, 3]),
        (-1, &[2, 2]),
        (1, &[2, 3]),
        (-1, &[3, 3]),
        (1, &[4, 4]),
        (-1, &[4, 5]),
        (1, &[5, 5]),
    ])
}

/// The cubic cofactor in `∂_1 = (1/6) Δ(ψ) · cubic`.
pub fn partial_identity_cubic() -> MPoly<Rational> {
    poly(&[
        (1, &[0, 0, 0]),
        (1, &[0, 0, 4]),
        (1, &[0, 0, 5]),
        (-1, &[0, 1, 1]),
        (-1, &[0, 1, 2]),
        (-1, &[0, 1, 3]),
        (-1, &[0, 2, 2]),
        (-1, &[0, 2, 3]),
        (-1, &[0, 3, 3]),
        (-1, &[0, 4, 5]),
        (1, &[1, 2, 4]),
        (1, &[1, 2, 5]),
        (1, &[1, 3, 4]),
        (1, &[1, 3, 5]),
        (1, &[2, 3, 4]),
        (1, &[2, 3, 5]),
        (-1, &[4, 4, 5]),
        (-1, &[4, 5, 5]),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3Regression {
    /// `det Γ = Δ(1) Δ(χ) Δ(ψ)²`.
    pub factorization: bool,
    /// `∂_1 = (1/6) Δ(ψ) · cubic`, the prefactor taken literally.
    pub partial_as_printed: bool,
    /// `∂_1 = Δ(ψ) · cubic`. With `∂_σ = (1/|G|) ∂det Γ/∂X_σ` this is the
    /// identity that holds: `∂_1` is the (1,1) cofactor of `Γ`, whose
    /// `X_1^5` coefficient is 1.
    pub partial_unscaled: bool,
}

impl S3Regression {
    pub fn passed(&self) -> bool {
        self.factorization && self.partial_as_printed
    }
}

pub fn regression() -> Result<(S3Regression, SymGroupDet)> {
    let q = Rationals;
    let sym = sym_group_det(&group(), 6)?;
    let psi = delta_two_dim();
    let product = delta_trivial().mul(&q, &delta_sign()).mul(&q, &psi.pow(&q, 2));
    let unscaled = psi.mul(&q, &partial_identity_cubic());
    let report = S3Regression {
        factorization: sym.det == product,
        partial_as_printed: sym.partials[0] == unscaled.scale(&q, &rat(1, 6)),
        partial_unscaled: sym.partials[0] == unscaled,
    };
    Ok((report, sym))
}

pub fn names() -> Vec<String> {
    NAMES.iter().map(|s| s.to_string()).collect()
}

