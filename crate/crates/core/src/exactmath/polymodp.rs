//! Univariate polynomials over a prime field F_p, p < 2^63.

use std::fmt;

use super::modp::{add_mod, inv_mod, mul_mod, sub_mod};
use super::poly::PolyQ;
use super::rational::reduce_mod;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyModP { p, coeffs }
    }

    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect())
    }

    /// Reduces a rational polynomial; `None` if `p` divides a denominator.
    pub fn from_poly_q(p: u64, f: &PolyQ) -> Option<Self> {
        let coeffs = f.coeffs().iter().map(|c| reduce_mod(c, p)).collect::<Option<Vec<_>>>()?;
        Some(Self::new(p, coeffs))
    }

    pub fn zero(p: u64) -> Self {
        PolyModP { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.p, (0..n).map(|k| add_mod(self.get(k), other.get(k), self.p)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.p, (0..n).map(|k| sub_mod(self.get(k), other.get(k), self.p)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Self::new(p, out.into_iter().map(|c| c as u64).collect())
    }

    fn get(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn divmod(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by the zero polynomial");
        let p = self.p;
        let inv = inv_mod(b.leading(), p).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return (Self::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + db], inv, p);
            if c != 0 {
                for (i, &bc) in b.coeffs.iter().enumerate() {
                    r[k + i] = sub_mod(r[k + i], mul_mod(c, bc, p), p);
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.divmod(b).1
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| mul_mod(c, k as u64 % p, p))
                .collect(),
        )
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, e: &num_bigint::BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, e: u64, m: &Self) -> Self {
        self.pow_mod(&num_bigint::BigUint::from(e), m)
    }

    /// Horner evaluation of `self` at a residue class `x` modulo `m`.
    pub fn compose_mod(&self, x: &Self, m: &Self) -> Self {
        let mut acc = Self::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul_mod(x, m).add(&Self::new(self.p, vec![c]));
        }
        acc.rem(m)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }
}

impl fmt::Display for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}*X")?,
                (k, 1) => write!(f, "X^{k}")?,
                (k, c) => write!(f, "{c}*X^{k}")?,
            }
        }
        write!(f, " (mod {})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = 7;
        let a = PolyModP::from_signed(p, &[-1, -1, 1]);
        assert_eq!(a.coeffs(), &[6, 6, 1]);
        let (q, r) = a.divmod(&PolyModP::from_signed(p, &[-1, 1]));
        assert_eq!(q.mul(&PolyModP::from_signed(p, &[-1, 1])).add(&r), a);
        assert_eq!(a.eval(4), (16 - 4 - 1) % 7);
        let g = PolyModP::gcd(&a, &a.derivative());
        assert!(g.is_one());
    }

    #[test]
    fn frobenius_power_in_field() {
        // In F_7[x]/(x^2 - x - 1), x^7 is the conjugate 1 - x.
        let m = PolyModP::from_signed(7, &[-1, -1, 1]);
        let x7 = PolyModP::x(7).pow_mod_u64(7, &m);
        assert_eq!(x7, PolyModP::from_signed(7, &[1, -1]));
    }
}
