//! High-precision complex roots of the defining polynomial.
//!
//! Used only to guess automorphism images, which are then verified exactly.
//! Roots are seeded by an f64 Aberth iteration and refined by Newton's
//! method in binary fixed point.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use super::NumberField;
use crate::error::{Error, Result};
use crate::exactmath::rational::Rational;

/// A complex number `(re + i·im) / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFixed {
    pub re: BigInt,
    pub im: BigInt,
}

fn to_f64_scaled(v: &BigInt, bits: u64) -> f64 {
    let excess = v.bits().saturating_sub(60);
    let shifted = v >> excess;
    shifted.to_f64().unwrap_or(0.0) * 2f64.powi(excess as i32 - bits as i32)
}

impl ComplexFixed {
    pub fn zero() -> Self {
        ComplexFixed { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn from_c64(z: Complex64, bits: u64) -> Self {
        let scale = |v: f64| -> BigInt {
            let (m, e) = frexp(v);
            let mant = BigInt::from((m * 2f64.powi(53)) as i64);
            let shift = e as i64 - 53 + bits as i64;
            if shift >= 0 {
                mant << shift as u64
            } else {
                mant >> (-shift) as u64
            }
        };
        ComplexFixed { re: scale(z.re), im: scale(z.im) }
    }

    pub fn from_rational(q: &Rational, bits: u64) -> Self {
        ComplexFixed { re: (q.numer() << bits) / q.denom(), im: BigInt::zero() }
    }

    pub fn to_c64(&self, bits: u64) -> Complex64 {
        Complex64::new(to_f64_scaled(&self.re, bits), to_f64_scaled(&self.im, bits))
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexFixed { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexFixed { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self, bits: u64) -> Self {
        ComplexFixed {
            re: (&self.re * &o.re - &self.im * &o.im) >> bits,
            im: (&self.re * &o.im + &self.im * &o.re) >> bits,
        }
    }

    pub fn div(&self, o: &Self, bits: u64) -> Option<Self> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = ((&self.re * &o.re + &self.im * &o.im) << bits) / &den;
        let im = ((&self.im * &o.re - &self.re * &o.im) << bits) / &den;
        Some(ComplexFixed { re, im })
    }

    /// Max-norm of the scaled integers.
    pub fn magnitude_bits(&self) -> u64 {
        self.re.abs().bits().max(self.im.abs().bits())
    }
}

fn frexp(v: f64) -> (f64, i32) {
    if v == 0.0 || !v.is_finite() {
        return (0.0, 0);
    }
    let e = v.abs().log2().floor() as i32 + 1;
    let m = v / 2f64.powi(e);
    (m, e)
}

/// The `d` complex roots of a number field's defining polynomial at a
/// common binary precision.
#[derive(Clone, Debug)]
pub struct EmbeddingSet {
    pub bits: u64,
    pub roots: Vec<ComplexFixed>,
}

impl EmbeddingSet {
    pub fn approx(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.to_c64(self.bits)).collect()
    }

    /// Index of the root closest to `z`.
    pub fn nearest(&self, z: &ComplexFixed) -> usize {
        let mut best = 0;
        let mut best_d = None;
        for (i, r) in self.roots.iter().enumerate() {
            let dz = r.sub(z);
            let d2 = &dz.re * &dz.re + &dz.im * &dz.im;
            if best_d.as_ref().is_none_or(|b| &d2 < b) {
                best = i;
                best_d = Some(d2);
            }
        }
        best
    }
}

/// Evaluates a rational polynomial at a fixed-point point.
pub fn eval_fixed(coeffs: &[Rational], z: &ComplexFixed, bits: u64) -> ComplexFixed {
    let mut acc = ComplexFixed::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, bits).add(&ComplexFixed::from_rational(c, bits));
    }
    acc
}

fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    // Fujiwara-type bound for the root radius.
    let radius = (0..d)
        .map(|k| monic[k].abs().powf(1.0 / (d - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, theta)
        })
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                max_step = max_step.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-14 {
            break;
        }
    }
    z
}

/// All `d` roots of the field's defining polynomial to `bits` bits. Fails
/// with [`Error::RootIsolation`] if the refined roots are not pairwise
/// separated or do not meet the residual bound; callers retry with more
/// precision.
pub fn embed_numeric(field: &NumberField, bits: u64) -> Result<EmbeddingSet> {
    let bits = bits.max(64);
    let coeffs = field.modulus().coeffs();
    let f64_coeffs: Vec<f64> = coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
    let deriv = field.modulus().derivative();
    let seeds = aberth(&f64_coeffs);
    let work = bits + 32;
    let mut roots = Vec::with_capacity(seeds.len());
    for seed in seeds {
        let mut z = ComplexFixed::from_c64(seed, work);
        let mut converged = false;
        for _ in 0..200 {
            let f = eval_fixed(coeffs, &z, work);
            let df = eval_fixed(deriv.coeffs(), &z, work);
            let Some(step) = f.div(&df, work) else { break };
            z = z.sub(&step);
            if step.magnitude_bits() <= 16 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::RootIsolation { bits });
        }
        roots.push(ComplexFixed { re: &z.re >> 32u32, im: &z.im >> 32u32 });
    }
    // Real roots come out with a tiny imaginary noise; snap it to zero.
    for r in &mut roots {
        if r.im.abs().bits() <= 8 {
            r.im = BigInt::zero();
        }
    }
    // Residual bound |F(a)| < 2^(-bits/2) * ||F||_1 * max(1,|a|)^d.
    let norm1: f64 = coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::MAX).abs()).sum();
    for r in &roots {
        let v = eval_fixed(coeffs, r, bits).to_c64(bits).norm();
        let mag = r.to_c64(bits).norm().max(1.0);
        let bound = 2f64.powf(-(bits as f64) / 2.0) * norm1 * mag.powi(coeffs.len() as i32);
        if v.is_nan() || v > bound.max(f64::MIN_POSITIVE) {
            return Err(Error::RootIsolation { bits });
        }
    }
    let sep_bits = bits - bits / 4;
    for i in 0..roots.len() {
        for j in 0..i {
            let dz = roots[i].sub(&roots[j]);
            if dz.magnitude_bits() < sep_bits / 2 {
                return Err(Error::RootIsolation { bits });
            }
        }
    }
    Ok(EmbeddingSet { bits, roots })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_roots() {
        let k = NumberField::from_ints(&[-1, -1, 1]).unwrap();
        let e = embed_numeric(&k, 64).unwrap();
        let mut re: Vec<f64> = e.approx().iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 0.618_033_988_749_894_8).abs() < 1e-12);
        assert!((re[1] - 1.618_033_988_749_895).abs() < 1e-12);
        assert!(e.roots.iter().all(|r| r.im.is_zero()));
    }

    #[test]
    fn gaussian_roots() {
        let k = NumberField::from_ints(&[1, 0, 1]).unwrap();
        let e = embed_numeric(&k, 128).unwrap();
        let mut im: Vec<f64> = e.approx().iter().map(|z| z.im).collect();
        im.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((im[0] + 1.0).abs() < 1e-15 && (im[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn high_precision_residual() {
        let k = NumberField::from_ints(&[-1, -3, 0, 1]).unwrap();
        let e = embed_numeric(&k, 512).unwrap();
        for r in &e.roots {
            let v = eval_fixed(k.modulus().coeffs(), r, 512);
            assert!(v.magnitude_bits() < 16, "residual too large");
        }
    }
}
