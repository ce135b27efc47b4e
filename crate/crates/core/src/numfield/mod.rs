//! Arithmetic in L = Q[x]/(F) for a monic integral separable F.
//!
//! Elements are stored as an integer coefficient vector over a single
//! positive denominator, kept in lowest terms. Products of such vectors
//! reduce modulo the monic integral F without introducing new
//! denominators, so only one gcd is taken per operation.

pub mod embed;

pub use embed::{embed_numeric, ComplexFixed, EmbeddingSet};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, ExactError, Result};
use crate::exactmath::matrix::{nullspace, Matrix};
use crate::exactmath::rational::Rational;
use crate::exactmath::{Field, PolyQ, Rationals};

/// A number field given by its defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: PolyQ,
    ints: Vec<BigInt>,
    degree: usize,
}

/// An element of a [`NumberField`]: `num / den` with `num` a coefficient
/// vector in the power basis, `deg num < d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NfElem {
    num: Vec<BigInt>,
    den: BigInt,
}

impl NfElem {
    fn canonical(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return NfElem { num, den: BigInt::one() };
        }
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in &mut num {
                *c = &*c / &g;
            }
            den /= &g;
        }
        NfElem { num, den }
    }

    pub fn zero() -> Self {
        NfElem { num: Vec::new(), den: BigInt::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn from_rational(q: &Rational) -> Self {
        Self::canonical(vec![q.numer().clone()], q.denom().clone())
    }

    /// The representative as a rational polynomial of degree < d.
    pub fn to_poly(&self) -> PolyQ {
        PolyQ::new(self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect())
    }

    /// Rational coefficients in ascending order, padded to `len`.
    pub fn coefficients(&self, len: usize) -> Vec<Rational> {
        (0..len)
            .map(|k| match self.num.get(k) {
                Some(c) => Rational::new(c.clone(), self.den.clone()),
                None => Rational::zero(),
            })
            .collect()
    }

    /// `Some(q)` when the representative is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.num.len() {
            0 => Some(Rational::zero()),
            1 => Some(Rational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    /// Lexicographic comparison of coefficient vectors, ascending degree.
    pub fn lex_cmp(&self, other: &Self, len: usize) -> std::cmp::Ordering {
        self.coefficients(len).cmp(&other.coefficients(len))
    }
}

impl NumberField {
    /// Builds `Q[x]/(F)`. `F` must be monic with integer coefficients and
    /// separable; irreducibility is only detected later, when an inversion
    /// meets a zero divisor.
    pub fn new(modulus: PolyQ) -> Result<Self> {
        let degree = modulus
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidPolynomial("degree must be at least 1".into()))?;
        if !modulus.is_monic() {
            return Err(Error::InvalidPolynomial(format!("{modulus} is not monic")));
        }
        if !modulus.has_integer_coeffs() {
            return Err(Error::InvalidPolynomial(format!("{modulus} has non-integer coefficients")));
        }
        let g = PolyQ::gcd(&modulus, &modulus.derivative());
        if g.degree() != Some(0) {
            return Err(Error::Inseparable(g.degree().unwrap_or(0)));
        }
        let ints = modulus.coeffs().iter().map(|c| c.to_integer()).collect();
        Ok(NumberField { modulus, ints, degree })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(PolyQ::from_ints(coeffs))
    }

    pub fn modulus(&self) -> &PolyQ {
        &self.modulus
    }

    pub fn modulus_ints(&self) -> &[BigInt] {
        &self.ints
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Reduces an integer vector of any length modulo F in place.
    fn reduce_ints(&self, v: &mut Vec<BigInt>) {
        let d = self.degree;
        while v.len() > d {
            let c = v.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let shift = v.len() - d;
            for i in 0..d {
                if !self.ints[i].is_zero() {
                    v[shift + i] -= &c * &self.ints[i];
                }
            }
        }
    }

    pub fn element(&self, rep: &PolyQ) -> NfElem {
        let den = crate::exactmath::rational::common_denominator(rep.coeffs());
        let mut num: Vec<BigInt> = rep.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
        self.reduce_ints(&mut num);
        NfElem::canonical(num, den)
    }

    pub fn element_from_coeffs(&self, coeffs: &[Rational]) -> NfElem {
        self.element(&PolyQ::new(coeffs.to_vec()))
    }

    /// The class of x.
    pub fn generator(&self) -> NfElem {
        self.element(&PolyQ::x())
    }

    pub fn rational(&self, q: &Rational) -> NfElem {
        NfElem::from_rational(q)
    }

    /// `g(a)` reduced mod F, by Horner's rule.
    pub fn compose(&self, g: &PolyQ, a: &NfElem) -> NfElem {
        let mut acc = NfElem::zero();
        for c in g.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, a), &NfElem::from_rational(c));
        }
        acc
    }

    /// `y(a)`: the representative of `y` evaluated at `a`. When `a` is the
    /// image of x under an automorphism this applies the automorphism.
    pub fn substitute(&self, y: &NfElem, a: &NfElem) -> NfElem {
        let mut acc = NfElem::zero();
        for c in y.num.iter().rev() {
            acc = self.mul(&acc, a);
            acc = self.add(&acc, &NfElem::canonical(vec![c.clone()], BigInt::one()));
        }
        self.scale(&acc, &Rational::new(BigInt::one(), y.den.clone()))
    }

    pub fn scale(&self, a: &NfElem, q: &Rational) -> NfElem {
        NfElem::canonical(a.num.iter().map(|c| c * q.numer()).collect(), &a.den * q.denom())
    }

    /// Minimal polynomial of `a` over Q, from the first linear dependence
    /// among `1, a, a^2, ...`.
    pub fn min_poly(&self, a: &NfElem) -> PolyQ {
        let d = self.degree;
        let mut powers = vec![self.one()];
        for k in 1..=d {
            powers.push(self.mul(&powers[k - 1], a));
            let m = Matrix::from_fn(d, k + 1, |i, j| powers[j].coefficients(d)[i].clone());
            let ns = nullspace(&Rationals, &m).expect("rational nullspace");
            if let Some(v) = ns.into_iter().next() {
                return PolyQ::new(v).monic();
            }
        }
        unreachable!("degree-d power is always dependent")
    }

    /// Multiplication-by-`a` matrix in the power basis (columns are images
    /// of basis vectors).
    pub fn mul_matrix(&self, a: &NfElem) -> Matrix<Rational> {
        let d = self.degree;
        let mut cols = Vec::with_capacity(d);
        let mut basis = self.one();
        let x = self.generator();
        for _ in 0..d {
            cols.push(self.mul(a, &basis).coefficients(d));
            basis = self.mul(&basis, &x);
        }
        Matrix::from_fn(d, d, |i, j| cols[j][i].clone())
    }

    pub fn trace(&self, a: &NfElem) -> Rational {
        let m = self.mul_matrix(a);
        (0..self.degree).map(|i| m.get(i, i).clone()).sum()
    }

    pub fn norm(&self, a: &NfElem) -> Rational {
        crate::exactmath::det_rational(&self.mul_matrix(a)).expect("square")
    }

    pub fn discriminant(&self) -> Rational {
        self.modulus.discriminant()
    }

    pub fn format_elem(&self, a: &NfElem, var: &str) -> String {
        a.to_poly().to_string_in(var)
    }
}

impl Field for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem::zero()
    }

    fn one(&self) -> NfElem {
        NfElem { num: vec![BigInt::one()], den: BigInt::one() }
    }

    fn is_zero(&self, a: &NfElem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let n = a.num.len().max(b.num.len());
        if a.den == b.den {
            let num = (0..n).map(|k| coeff(&a.num, k) + coeff(&b.num, k)).collect();
            return NfElem::canonical(num, a.den.clone());
        }
        let num = (0..n).map(|k| coeff(&a.num, k) * &b.den + coeff(&b.num, k) * &a.den).collect();
        NfElem::canonical(num, &a.den * &b.den)
    }

    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        if a.is_zero() || b.is_zero() {
            return NfElem::zero();
        }
        let mut out = vec![BigInt::zero(); a.num.len() + b.num.len() - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce_ints(&mut out);
        NfElem::canonical(out, &a.den * &b.den)
    }

    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem { num: a.num.iter().map(|c| -c).collect(), den: a.den.clone() }
    }

    fn inv(&self, a: &NfElem) -> Result<NfElem, ExactError> {
        if a.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let (g, s, _) = PolyQ::ext_gcd(&a.to_poly(), &self.modulus);
        if g.degree() != Some(0) {
            return Err(ExactError::ReducibleModulus);
        }
        Ok(self.element(&s))
    }

    fn from_i64(&self, n: i64) -> NfElem {
        NfElem::canonical(vec![BigInt::from(n)], BigInt::one())
    }
}

fn coeff(v: &[BigInt], k: usize) -> BigInt {
    v.get(k).cloned().unwrap_or_else(BigInt::zero)
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly().to_string_in("x"))
    }
}
