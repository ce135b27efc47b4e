//! Factorization over F_p: squarefree decomposition, distinct-degree and
//! equal-degree (Cantor–Zassenhaus) splitting.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactmath::PolyModP;

/// Complete factorization of `f` into monic irreducibles with multiplicity,
/// sorted by degree then coefficients. `f` must be nonzero.
pub fn factor_poly_mod_p(f: &PolyModP, seed: u64) -> Vec<(PolyModP, u32)> {
    let p = f.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.rotate_left(17));
    let mut out = Vec::new();
    for (g, m) in squarefree(&f.monic()) {
        for (h, k) in distinct_degree(&g) {
            let n = h.degree().unwrap_or(0) / k;
            for q in equal_degree(&h, k, n, &mut rng) {
                out.push((q, m));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    out
}

/// Squarefree decomposition `f = Π g_i^{m_i}` (Yun, with p-th roots for
/// vanishing derivatives). `f` is monic.
pub fn squarefree(f: &PolyModP) -> Vec<(PolyModP, u32)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = PolyModP::gcd(f, &f.derivative());
    let mut w = f.divmod(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = PolyModP::gcd(&w, &c);
        let z = w.divmod(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divmod(&w).0;
    }
    if c.degree().unwrap_or(0) > 0 {
        // c is a polynomial in x^p.
        let root = PolyModP::new(p, c.coeffs().iter().step_by(p as usize).copied().collect());
        for (g, m) in squarefree(&root.monic()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Splits a squarefree monic `f` into `(h_k, k)` where `h_k` is the product
/// of its irreducible factors of degree `k`.
pub fn distinct_degree(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.modulus();
    let x = PolyModP::x(p);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut k = 1;
    while rest.degree().unwrap_or(0) >= 2 * k {
        h = h.pow_mod_u64(p, &rest);
        let g = PolyModP::gcd(&h.sub(&x), &rest);
        if !g.is_one() {
            rest = rest.divmod(&g).0;
            h = h.rem(&rest);
            out.push((g, k));
        }
        k += 1;
    }
    if let Some(n) = rest.degree().filter(|&n| n > 0) {
        out.push((rest.monic(), n));
    }
    out
}

/// Splits a product of `n` distinct irreducibles of degree `k`.
fn equal_degree(f: &PolyModP, k: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<PolyModP> {
    if n <= 1 {
        return vec![f.monic()];
    }
    let p = f.modulus();
    let deg = f.degree().unwrap_or(0);
    let exponent = (BigUint::from(p).pow(k as u32) - 1u32) / 2u32;
    loop {
        let a = PolyModP::new(p, (0..deg).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map of F_{2^k} over F_2.
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..k {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            a.pow_mod(&exponent, f).sub(&PolyModP::one(p))
        };
        let g = PolyModP::gcd(&b, f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < deg {
            let h = f.divmod(&g).0;
            let mut out = equal_degree(&g, k, dg / k, rng);
            out.extend(equal_degree(&h, k, (deg - dg) / k, rng));
            return out;
        }
    }
}

/// `g` irreducible iff `gcd(x^{p^i} − x, g) = 1` for `i ≤ deg/2`.
pub fn is_irreducible(g: &PolyModP) -> bool {
    let Some(n) = g.degree() else { return false };
    if n == 0 {
        return false;
    }
    let p = g.modulus();
    let x = PolyModP::x(p);
    let mut h = x.rem(g);
    for _ in 0..n / 2 {
        h = h.pow_mod_u64(p, g);
        if !PolyModP::gcd(&h.sub(&x), g).is_one() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(factors: &[(PolyModP, u32)], p: u64) -> PolyModP {
        factors.iter().fold(PolyModP::one(p), |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(g)))
    }

    #[test]
    fn golden_mod_11_and_7() {
        let f = PolyModP::from_signed(11, &[-1, -1, 1]);
        let fac = factor_poly_mod_p(&f, 1);
        assert_eq!(fac, vec![(PolyModP::from_signed(11, &[-8, 1]), 1), (PolyModP::from_signed(11, &[-4, 1]), 1)]);
        let f = PolyModP::from_signed(7, &[-1, -1, 1]);
        assert_eq!(factor_poly_mod_p(&f, 1), vec![(f.clone(), 1)]);
    }

    #[test]
    fn ramified_mod_2() {
        let f = PolyModP::from_signed(2, &[1, 0, 1]);
        assert_eq!(factor_poly_mod_p(&f, 0), vec![(PolyModP::from_signed(2, &[1, 1]), 2)]);
    }

    #[test]
    fn products_and_irreducibility() {
        let mut s: u64 = 12345;
        for &p in &[2u64, 3, 5, 7, 13, 101] {
            for deg in 1..9 {
                let mut c: Vec<u64> = (0..deg)
                    .map(|_| {
                        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        (s >> 33) % p
                    })
                    .collect();
                c.push(1);
                let f = PolyModP::new(p, c);
                let g = f.mul(&f.rem(&PolyModP::from_signed(p, &[1, 1, 1])).add(&PolyModP::x(p)));
                for h in [f, g].into_iter().filter(|h| !h.is_zero()) {
                    let fac = factor_poly_mod_p(&h, 9);
                    assert_eq!(product(&fac, p), h.monic(), "p = {p}");
                    assert!(fac.iter().all(|(g, _)| is_irreducible(g)));
                }
            }
        }
    }
}
