//! Dense matrices over an exact field context.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{Field, Rationals};
use super::rational::{common_denominator, Rational};
use crate::error::ExactError;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

pub fn identity<F: Field>(ctx: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { ctx.one() } else { ctx.zero() })
}

pub fn zeros<F: Field>(ctx: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, ctx.zero())
}

pub fn mat_mul<F: Field>(
    ctx: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Result<Matrix<F::Elem>, ExactError> {
    if a.cols != b.rows {
        return Err(ExactError::Dimension(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = zeros(ctx, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if ctx.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if ctx.is_zero(bkj) {
                    continue;
                }
                let t = ctx.add(out.get(i, j), &ctx.mul(aik, bkj));
                out.set(i, j, t);
            }
        }
    }
    Ok(out)
}

pub fn mat_is_equal<F: Field>(ctx: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> bool {
    a.rows == b.rows
        && a.cols == b.cols
        && a.data.iter().zip(&b.data).all(|(x, y)| ctx.is_zero(&ctx.sub(x, y)))
}

/// Solves `M·X = B` by Gaussian elimination, taking the first nonzero entry
/// of each column as pivot.
pub fn mat_solve<F: Field>(
    ctx: &F,
    m: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Result<Matrix<F::Elem>, ExactError> {
    solve_with_det(ctx, m, b).map(|(x, _)| x)
}

/// `M⁻¹` together with `det M`, from a single elimination.
pub fn mat_inverse_det<F: Field>(
    ctx: &F,
    m: &Matrix<F::Elem>,
) -> Result<(Matrix<F::Elem>, F::Elem), ExactError> {
    solve_with_det(ctx, m, &identity(ctx, m.rows))
}

fn solve_with_det<F: Field>(
    ctx: &F,
    m: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Result<(Matrix<F::Elem>, F::Elem), ExactError> {
    if !m.is_square() || m.rows != b.rows {
        return Err(ExactError::Dimension(format!(
            "solve with {}x{} system and {}x{} right-hand side",
            m.rows, m.cols, b.rows, b.cols
        )));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut rhs = b.clone();
    let mut det = ctx.one();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !ctx.is_zero(a.get(r, col)))
            .ok_or(ExactError::SingularMatrix { column: col })?;
        if pivot != col {
            a.swap_rows(col, pivot);
            rhs.swap_rows(col, pivot);
            det = ctx.neg(&det);
        }
        det = ctx.mul(&det, a.get(col, col));
        let inv = ctx.inv(a.get(col, col))?;
        for j in col..n {
            let v = ctx.mul(a.get(col, j), &inv);
            a.set(col, j, v);
        }
        for j in 0..rhs.cols {
            let v = ctx.mul(rhs.get(col, j), &inv);
            rhs.set(col, j, v);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a.get(r, col).clone();
            if ctx.is_zero(&factor) {
                continue;
            }
            for j in col..n {
                let v = ctx.sub(a.get(r, j), &ctx.mul(&factor, a.get(col, j)));
                a.set(r, j, v);
            }
            for j in 0..rhs.cols {
                let v = ctx.sub(rhs.get(r, j), &ctx.mul(&factor, rhs.get(col, j)));
                rhs.set(r, j, v);
            }
        }
    }
    Ok((rhs, det))
}

pub fn mat_inverse<F: Field>(ctx: &F, m: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>, ExactError> {
    mat_solve(ctx, m, &identity(ctx, m.rows))
}

/// Determinant by plain elimination over a field context.
pub fn mat_det<F: Field>(ctx: &F, m: &Matrix<F::Elem>) -> Result<F::Elem, ExactError> {
    if !m.is_square() {
        return Err(ExactError::Dimension(format!("determinant of {}x{}", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut det = ctx.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !ctx.is_zero(a.get(r, col))) else {
            return Ok(ctx.zero());
        };
        if pivot != col {
            a.swap_rows(col, pivot);
            det = ctx.neg(&det);
        }
        let p = a.get(col, col).clone();
        det = ctx.mul(&det, &p);
        let inv = ctx.inv(&p)?;
        for r in col + 1..n {
            let factor = ctx.mul(a.get(r, col), &inv);
            if ctx.is_zero(&factor) {
                continue;
            }
            for j in col + 1..n {
                let v = ctx.sub(a.get(r, j), &ctx.mul(&factor, a.get(col, j)));
                a.set(r, j, v);
            }
        }
    }
    Ok(det)
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn bareiss_det(m: &Matrix<BigInt>) -> BigInt {
    assert!(m.is_square());
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

/// Determinant over Q: rows are scaled to integers and reduced with Bareiss.
pub fn det_rational(m: &Matrix<Rational>) -> Result<Rational, ExactError> {
    if !m.is_square() {
        return mat_det(&Rationals, m);
    }
    let mut scale = BigInt::one();
    let mut ints = Vec::with_capacity(m.data.len());
    for i in 0..m.rows {
        let den = common_denominator(m.row(i).iter());
        ints.extend(m.row(i).iter().map(|q| (q * &den).to_integer()));
        scale *= den;
    }
    let det = bareiss_det(&Matrix::from_vec(m.rows, m.cols, ints));
    Ok(Rational::new(det, scale))
}

/// Basis of the right nullspace, as column vectors.
pub fn nullspace<F: Field>(ctx: &F, m: &Matrix<F::Elem>) -> Result<Vec<Vec<F::Elem>>, ExactError> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ctx.is_zero(a.get(i, c))) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = ctx.inv(a.get(r, c))?;
        for j in 0..cols {
            let v = ctx.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if ctx.is_zero(&f) {
                continue;
            }
            for j in 0..cols {
                let v = ctx.sub(a.get(i, j), &ctx.mul(&f, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![ctx.zero(); cols];
        v[free] = ctx.one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = ctx.neg(a.get(row, free));
        }
        basis.push(v);
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::PrimeField;
    use crate::exactmath::rational::{int, rat};
    use proptest::prelude::*;

    fn q(rows: usize, cols: usize, v: &[i64]) -> Matrix<Rational> {
        Matrix::from_vec(rows, cols, v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn solve_examples() {
        let b = q(2, 2, &[3, 1, 4, 1]);
        assert_eq!(mat_solve(&Rationals, &identity(&Rationals, 2), &b).unwrap(), b);
        let m = q(2, 2, &[2, 0, 0, 4]);
        let x = mat_inverse(&Rationals, &m).unwrap();
        assert_eq!(x, Matrix::from_vec(2, 2, vec![rat(1, 2), int(0), int(0), rat(1, 4)]));
        let singular = q(2, 2, &[1, 2, 2, 4]);
        assert_eq!(
            mat_solve(&Rationals, &singular, &identity(&Rationals, 2)),
            Err(ExactError::SingularMatrix { column: 1 })
        );
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(mat_det(&Rationals, &identity(&Rationals, 5)).unwrap(), int(1));
        assert_eq!(mat_det(&Rationals, &q(2, 2, &[1, 2, 2, 4])).unwrap(), int(0));
        let m = q(3, 3, &[0, 2, 1, 3, 1, 0, 1, 1, 1]);
        assert_eq!(mat_det(&Rationals, &m).unwrap(), int(-4));
        assert_eq!(det_rational(&m).unwrap(), int(-4));
        let f = PrimeField::new(5);
        let mm = m.map(|x| f.from_i64(x.to_integer().try_into().unwrap()));
        assert_eq!(mat_det(&f, &mm).unwrap(), 1);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = q(2, 3, &[1, 2, 3, 2, 4, 6]);
        let ns = nullspace(&Rationals, &m).unwrap();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let col = Matrix::from_vec(3, 1, v);
            let prod = mat_mul(&Rationals, &m, &col).unwrap();
            assert!(prod.entries().iter().all(|x| x.is_zero()));
        }
    }

    fn int_matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
        prop::collection::vec(-100i64..=100, n * n)
            .prop_map(move |v| Matrix::from_vec(n, n, v.into_iter().map(int).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn solve_satisfies_system(n in 1usize..=8, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-100..=100)));
            let b = Matrix::from_fn(n, 2, |_, _| rat(rng.gen_range(-100..=100), rng.gen_range(1..=9)));
            prop_assume!(!det_rational(&m).unwrap().is_zero());
            let x = mat_solve(&Rationals, &m, &b).unwrap();
            prop_assert_eq!(mat_mul(&Rationals, &m, &x).unwrap(), b);
        }

        #[test]
        fn det_is_multiplicative(a in int_matrix(4), b in int_matrix(4)) {
            let ab = mat_mul(&Rationals, &a, &b).unwrap();
            let lhs = det_rational(&ab).unwrap();
            prop_assert_eq!(&lhs, &(det_rational(&a).unwrap() * det_rational(&b).unwrap()));
            prop_assert_eq!(lhs, mat_det(&Rationals, &ab).unwrap());
        }
    }
}
