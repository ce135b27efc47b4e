//! Integral LLL reduction (all-integer Gram-Schmidt bookkeeping, no
//! rationals), with reduction parameter 99/100.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `n / d` for `d > 0`, ties away from zero.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let two_n: BigInt = n * 2;
    let num: BigInt = &two_n + d;
    let den: BigInt = d * 2;
    let (q, _) = num.div_mod_floor(&den);
    q
}

/// Reduces the rows of `basis` in place. Rows must be linearly independent.
pub fn lll_reduce(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    if n < 2 {
        return;
    }
    // dd[i + 1] is the Gram determinant of the first i + 1 rows; dd[0] = 1.
    let mut dd = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    dd[0] = BigInt::from(1);
    dd[1] = dot(&basis[0], &basis[0]);
    let mut k = 1usize;
    let mut kmax = 0usize;

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&basis[k], &basis[j]);
                for i in 0..j {
                    u = (&dd[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &dd[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "lll_reduce: dependent rows");
                    dd[k + 1] = u;
                }
            }
        }
        loop {
            reduce(basis, &mut lam, &dd, k, k - 1);
            // Lovasz: 100(d_k d_{k-2} + lam^2) < 99 d_{k-1}^2 triggers a swap.
            let lhs = (&dd[k + 1] * &dd[k - 1] + &lam[k][k - 1] * &lam[k][k - 1]) * 100;
            let rhs = &dd[k] * &dd[k] * 99;
            if lhs < rhs {
                swap(basis, &mut lam, &mut dd, k, kmax);
                if k > 1 {
                    k -= 1;
                }
                continue;
            }
            break;
        }
        for l in (0..k - 1).rev() {
            reduce(basis, &mut lam, &dd, k, l);
        }
        k += 1;
    }
}

fn reduce(basis: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], dd: &[BigInt], k: usize, l: usize) {
    let dl = &dd[l + 1];
    let twice: BigInt = &lam[k][l] * 2;
    if twice.abs() <= *dl {
        return;
    }
    let q = round_div(&lam[k][l], dl);
    let bl = basis[l].clone();
    for (x, y) in basis[k].iter_mut().zip(&bl) {
        *x -= &q * y;
    }
    lam[k][l] -= &q * dl;
    for i in 0..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swap(basis: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], dd: &mut [BigInt], k: usize, kmax: usize) {
    basis.swap(k, k - 1);
    for j in 0..k.saturating_sub(1) {
        let t = lam[k][j].clone();
        lam[k][j] = lam[k - 1][j].clone();
        lam[k - 1][j] = t;
    }
    let l = lam[k][k - 1].clone();
    let b = (&dd[k - 1] * &dd[k + 1] + &l * &l) / &dd[k];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&dd[k + 1] * &lam[i][k - 1] - &l * &t) / &dd[k];
        lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &dd[k + 1];
    }
    dd[k] = b;
}

/// Searches for a small integer relation `Σ m_i x_i ≈ 0` among complex
/// numbers given as fixed-point pairs `(re, im)` scaled by a common power of
/// two. Returns the reduced coefficient vectors, shortest first.
pub fn integer_relations(values: &[(BigInt, BigInt)]) -> Vec<Vec<BigInt>> {
    let n = values.len();
    let use_imag = values.iter().any(|(_, im)| !im.is_zero());
    let mut basis: Vec<Vec<BigInt>> = values
        .iter()
        .enumerate()
        .map(|(i, (re, im))| {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::from(1);
            row.push(re.clone());
            if use_imag {
                row.push(im.clone());
            }
            row
        })
        .collect();
    lll_reduce(&mut basis);
    basis.into_iter().map(|mut row| {
        row.truncate(n);
        row
    }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_classic_example() {
        // Cohen's example lattice.
        let mut b: Vec<Vec<BigInt>> = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        lll_reduce(&mut b);
        let norms: Vec<BigInt> = b.iter().map(|r| dot(r, r)).collect();
        assert!(norms[0] <= BigInt::from(3));
        // Reduction is unimodular: the volume is preserved.
        let m = crate::exactmath::matrix::Matrix::from_vec(3, 3, b.concat());
        assert_eq!(crate::exactmath::matrix::bareiss_det(&m).abs(), BigInt::from(3));
    }

    #[test]
    fn finds_golden_ratio_relation() {
        // phi^2 - phi - 1 = 0 with phi at 40 bits.
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let fx = |v: f64| BigInt::from((v * 2f64.powi(40)).round() as i128);
        let vals = vec![
            (fx(1.0), BigInt::zero()),
            (fx(phi), BigInt::zero()),
            (fx(phi * phi), BigInt::zero()),
        ];
        let rel = &integer_relations(&vals)[0];
        let rel: Vec<i64> = rel.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert!(rel == vec![1, 1, -1] || rel == vec![-1, -1, 1], "{rel:?}");
    }
}
