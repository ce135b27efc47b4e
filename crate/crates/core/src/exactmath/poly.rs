//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use crate::error::ExactError;

/// Coefficients in ascending degree order, never with a trailing zero. The
/// empty vector is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c·X^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `X^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyQ { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Division with remainder: `self = b·q + r`, `deg r < deg b`.
    pub fn divmod(&self, b: &PolyQ) -> Result<(PolyQ, PolyQ), ExactError> {
        let db = b.degree().ok_or(ExactError::ZeroPolynomialDivisor)?;
        let lc_inv = b.leading().unwrap().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &lc_inv;
            if !c.is_zero() {
                for (i, bc) in b.coeffs.iter().enumerate() {
                    r[k + i] -= &c * bc;
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, b: &PolyQ) -> Result<PolyQ, ExactError> {
        Ok(self.divmod(b)?.1)
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(a: &PolyQ, b: &PolyQ) -> PolyQ {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn ext_gcd(a: &PolyQ, b: &PolyQ) -> (PolyQ, PolyQ, PolyQ) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Resultant via the Euclidean remainder sequence over Q.
    pub fn resultant(a: &PolyQ, b: &PolyQ) -> Rational {
        let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
            return Rational::zero();
        };
        if db == 0 {
            return num_traits::pow(b.coeffs[0].clone(), da);
        }
        if da == 0 {
            return num_traits::pow(a.coeffs[0].clone(), db);
        }
        let r = a.rem(b).expect("nonzero divisor");
        let Some(dr) = r.degree() else {
            return Rational::zero();
        };
        let sign = if (da * db) % 2 == 1 { -Rational::one() } else { Rational::one() };
        sign * num_traits::pow(b.leading().unwrap().clone(), da - dr) * Self::resultant(b, &r)
    }

    /// `disc(F) = (-1)^(d(d-1)/2) Res(F, F') / lc(F)`.
    pub fn discriminant(&self) -> Rational {
        let d = self.degree().unwrap_or(0);
        if d == 0 {
            return Rational::one();
        }
        let res = Self::resultant(self, &self.derivative());
        let sign = if (d * (d - 1) / 2) % 2 == 1 { -Rational::one() } else { Rational::one() };
        sign * res / self.leading().unwrap()
    }

    /// Scales to a primitive integer polynomial with positive leading
    /// coefficient.
    pub fn primitive_integer_part(&self) -> Vec<BigInt> {
        use num_integer::Integer;
        let den = super::rational::common_denominator(self.coeffs.iter());
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return ints;
        }
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for PolyQ {
    /// Descending-degree text in the variable `X`, e.g. `X^2 - X - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("X"))
    }
}

impl PolyQ {
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag_s = super::rational::to_display_string(&mag);
            match k {
                0 => out.push_str(&mag_s),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&mag_s);
                        out.push('*');
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_ints(c)
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = p(&[-1, -1, 1]).divmod(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[0, 1]));
        assert_eq!(r, p(&[-1]));

        let a = p(&[3, 1, 4, 1]);
        let (q, r) = a.divmod(&a).unwrap();
        assert_eq!(q, PolyQ::one());
        assert!(r.is_zero());

        // X^3 - 3X - 1 = (X^2 + X)(X - 1) + (-2X - 1)
        let (q, r) = p(&[-1, -3, 0, 1]).divmod(&p(&[0, 1, 1])).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[-1, -2]));

        assert_eq!(p(&[1, 2]).divmod(&PolyQ::zero()), Err(ExactError::ZeroPolynomialDivisor));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(PolyQ::gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        let f = p(&[-1, -1, 1]);
        assert_eq!(PolyQ::gcd(&f, &f.derivative()), PolyQ::one());
        // (X-1)^2 (X+2) and (X-1)(X+3)
        let a = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(PolyQ::gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p(&[-1, -1, 1]);
        let b = p(&[1, 2]);
        let (g, s, t) = PolyQ::ext_gcd(&a, &b);
        assert_eq!(g, PolyQ::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn discriminants() {
        assert_eq!(p(&[-1, -1, 1]).discriminant(), int(5));
        assert_eq!(p(&[-1, -3, 0, 1]).discriminant(), int(81));
        assert_eq!(p(&[1, 0, 1]).discriminant(), int(-4));
        // X^3 - 2: -27·4 = -108
        assert_eq!(p(&[-2, 0, 0, 1]).discriminant(), int(-108));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, -1, 1]).to_string(), "X^2 - X - 1");
        assert_eq!(PolyQ::new(vec![rat(1, 2), int(0), int(-3)]).to_string(), "-3*X^2 + 1/2");
        assert_eq!(PolyQ::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = PolyQ> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..7)
            .prop_map(|v| PolyQ::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn divmod_reconstructs(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&b * &q) + &r, a);
            prop_assert!(r.degree().is_none_or(|dr| dr < b.degree().unwrap()));
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly()) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = PolyQ::gcd(&a, &b);
            prop_assert!(g.is_monic());
            prop_assert!(a.rem(&g).unwrap().is_zero());
            prop_assert!(b.rem(&g).unwrap().is_zero());
        }
    }
}
