//! Exact character tables by the Burnside–Dixon method.
//!
//! Central characters `ω_χ(K_i) = |K_i| χ(ρ_i) / χ(1)` are the common
//! eigenvectors of the class-constant matrices. They are found over a prime
//! field `F_ℓ` with `ℓ ≡ 1 (mod e)`, where the character values reduce
//! faithfully, and lifted back to `Q(ζ_e)` through the eigenvalue
//! multiplicities on each cyclic subgroup.

use std::cmp::Ordering;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::modp::{inv_mod, is_prime, pow_mod};
use crate::exactmath::rational::Rational;
use crate::exactmath::{matrix::nullspace, Field, Matrix, PolyQ, PrimeField};
use crate::galois::FiniteGroup;
use crate::numfield::{NfElem, NumberField};

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> PolyQ {
    assert!(n >= 1);
    let mut p = &PolyQ::monomial(Rational::from_integer(1.into()), n) - &PolyQ::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.divmod(&cyclotomic_polynomial(d)).expect("nonzero divisor").0;
        }
    }
    p
}

/// `Q(ζ_e)` as a number field in the variable `z = ζ_e`.
pub fn cyclotomic_field(e: usize) -> NumberField {
    NumberField::new(cyclotomic_polynomial(e)).expect("cyclotomic polynomials are separable")
}

/// `a[i][j][k]`: the coefficient of the class sum `k_k` in `k_i · k_j`.
pub fn class_constants(group: &FiniteGroup) -> Vec<Vec<Vec<u64>>> {
    let r = group.class_count();
    let classes = group.classes();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (i, ki) in classes.iter().enumerate() {
        for &x in &ki.members {
            for (j, kj) in classes.iter().enumerate() {
                for &y in &kj.members {
                    let z = group.mul(x, y);
                    let k = group.class_of(z);
                    if z == classes[k].representative {
                        a[i][j][k] += 1;
                    }
                }
            }
        }
    }
    a
}

/// Irreducible characters, rows in a fixed order: by degree, then by the
/// value vector under `ζ_e ↦ exp(2πi/e)` in descending lexicographic order
/// (real part first). The trivial character is always the first row.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    exponent: usize,
    field: NumberField,
    prime: u64,
    degrees: Vec<usize>,
    values: Vec<Vec<NfElem>>,
}

impl CharacterTable {
    /// Exponent `e` of the group; values lie in `Q(ζ_e)`.
    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// The auxiliary prime `ℓ` used for the eigenvector computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// `ψ(ρ_j)` for character row `psi` and class `j`.
    pub fn value(&self, psi: usize, class: usize) -> &NfElem {
        &self.values[psi][class]
    }

    pub fn rows(&self) -> &[Vec<NfElem>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entry formatted as a polynomial in `z = ζ_e`.
    pub fn format_value(&self, psi: usize, class: usize) -> String {
        self.field.format_elem(&self.values[psi][class], "z")
    }

    /// `C = [ψ(ρ_j⁻¹)]`, rows indexed by characters.
    pub fn matrix_c(&self, group: &FiniteGroup) -> Matrix<NfElem> {
        let r = self.len();
        Matrix::from_fn(r, r, |psi, j| self.values[psi][group.inverse_class(j)].clone())
    }

    /// `C′ = [ψ(ρ_i)]`, rows indexed by classes.
    pub fn matrix_c_prime(&self) -> Matrix<NfElem> {
        let r = self.len();
        Matrix::from_fn(r, r, |i, psi| self.values[psi][i].clone())
    }
}

fn dixon_prime(e: usize, order: usize) -> u64 {
    let bound = 2.0 * (order as f64).sqrt();
    let mut l = e as u64 + 1;
    loop {
        if is_prime(l) && l as f64 > bound {
            return l;
        }
        l += e as u64;
    }
}

fn primitive_root(l: u64) -> u64 {
    let mut m = l - 1;
    let mut factors = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            factors.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..l).find(|&g| factors.iter().all(|&q| pow_mod(g, (l - 1) / q, l) != 1)).unwrap_or(1)
}

/// Splits `F_ℓ^r` into the common eigenlines of the class matrices.
fn common_eigenvectors(a: &[Vec<Vec<u64>>], fp: &PrimeField) -> Result<Vec<Vec<u64>>> {
    let r = a.len();
    let l = fp.p;
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()];
    for (i, ai) in a.iter().enumerate().skip(1) {
        let m = Matrix::from_fn(r, r, |j, k| ai[j][k] % l);
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let b = Matrix::from_fn(r, basis.len(), |row, c| basis[c][row]);
            let mb = crate::exactmath::mat_mul(fp, &m, &b)?;
            let mut covered = 0;
            for lambda in 0..l {
                let shifted = Matrix::from_fn(r, basis.len(), |row, c| fp.sub(mb.get(row, c), &fp.mul(&lambda, b.get(row, c))));
                let ns = nullspace(fp, &shifted)?;
                if ns.is_empty() {
                    continue;
                }
                covered += ns.len();
                next.push(
                    ns.iter()
                        .map(|c| (0..r).map(|row| fp.sum(c.iter().enumerate().map(|(k, ck)| fp.mul(ck, b.get(row, k))).collect::<Vec<_>>().iter())).collect())
                        .collect(),
                );
                if covered == basis.len() {
                    break;
                }
            }
            if covered != basis.len() {
                return Err(Error::CharacterTable(format!("class matrix {i} is not diagonalizable mod {l}")));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) || spaces.len() != r {
        return Err(Error::CharacterTable(format!("eigenspaces did not split into lines mod {l}")));
    }
    Ok(spaces.into_iter().map(|mut s| s.remove(0)).collect())
}

fn embed(field: &NumberField, a: &NfElem, e: usize) -> Complex64 {
    let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / e as f64);
    let coeffs = a.coefficients(field.degree());
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * zeta + c.to_f64().unwrap_or(0.0))
}

fn cmp_desc(x: &[Complex64], y: &[Complex64]) -> Ordering {
    const EPS: f64 = 1e-9;
    for (a, b) in x.iter().zip(y) {
        for (u, v) in [(a.re, b.re), (a.im, b.im)] {
            if (u - v).abs() > EPS {
                return v.partial_cmp(&u).unwrap_or(Ordering::Equal);
            }
        }
    }
    Ordering::Equal
}

/// Computes the character table of `group`, verified by both orthogonality
/// relations before it is returned.
pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    let n = group.order();
    let e = group.exponent();
    let a = class_constants(group);
    let field = cyclotomic_field(e);
    let mut l = dixon_prime(e, n);
    let mut last_err = None;
    for _ in 0..8 {
        match table_mod(group, &a, &field, e, l) {
            Ok(t) => {
                let report = verify_orthogonality(&t, group);
                if !report.passed() {
                    return Err(Error::CharacterTable("orthogonality check failed".into()));
                }
                return Ok(t);
            }
            Err(err) => last_err = Some(err),
        }
        l += e as u64;
        while !is_prime(l) {
            l += e as u64;
        }
    }
    Err(last_err.unwrap_or_else(|| Error::CharacterTable("lift failed".into())))
}

fn table_mod(group: &FiniteGroup, a: &[Vec<Vec<u64>>], field: &NumberField, e: usize, l: u64) -> Result<CharacterTable> {
    let n = group.order() as u64;
    let r = group.class_count();
    let fp = PrimeField::new(l);
    let sizes: Vec<u64> = group.classes().iter().map(|c| c.size() as u64).collect();
    let z = pow_mod(primitive_root(l), (l - 1) / e as u64, l);
    let lift_fail = || Error::CharacterTable(format!("lift failed mod {l}"));

    let mut rows = Vec::with_capacity(r);
    for mut w in common_eigenvectors(a, &fp)? {
        let w0 = inv_mod(w[0], l).ok_or_else(lift_fail)?;
        for x in &mut w {
            *x = fp.mul(x, &w0);
        }
        // χ(1)^2 = |G| / Σ_i w_i w_i' / |K_i|.
        let mut s = 0;
        for i in 0..r {
            let t = fp.mul(&w[i], &w[group.inverse_class(i)]);
            s = fp.add(&s, &fp.mul(&t, &inv_mod(sizes[i] % l, l).ok_or_else(lift_fail)?));
        }
        let sq = fp.mul(&(n % l), &inv_mod(s, l).ok_or_else(lift_fail)?);
        let deg = (1..=n).take_while(|k| k * k <= n).find(|k| k * k % l == sq).ok_or_else(lift_fail)?;
        let chi_mod: Vec<u64> = (0..r)
            .map(|i| fp.mul(&fp.mul(&w[i], &deg), &inv_mod(sizes[i] % l, l).unwrap()))
            .collect();
        let mut values = Vec::with_capacity(r);
        for i in 0..r {
            let inv_e = inv_mod(e as u64 % l, l).ok_or_else(lift_fail)?;
            let mut coeffs = vec![Rational::zero(); e];
            let mut total = 0u64;
            for (k, ck) in coeffs.iter_mut().enumerate() {
                let mut m = 0;
                for t in 0..e {
                    let val = chi_mod[group.power_class(i, t)];
                    let zp = pow_mod(z, ((e - (k * t) % e) % e) as u64, l);
                    m = fp.add(&m, &fp.mul(&val, &zp));
                }
                let m = fp.mul(&m, &inv_e);
                if m > deg {
                    return Err(lift_fail());
                }
                total += m;
                *ck = Rational::from_integer(m.into());
            }
            if total != deg {
                return Err(lift_fail());
            }
            values.push(field.element(&PolyQ::new(coeffs)));
        }
        rows.push((deg as usize, values));
    }
    let mut keyed: Vec<(usize, Vec<Complex64>, Vec<NfElem>)> = rows
        .into_iter()
        .map(|(d, v)| {
            let c = v.iter().map(|x| embed(field, x, e)).collect();
            (d, c, v)
        })
        .collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| cmp_desc(&x.1, &y.1)));
    Ok(CharacterTable {
        exponent: e,
        field: field.clone(),
        prime: l,
        degrees: keyed.iter().map(|k| k.0).collect(),
        values: keyed.into_iter().map(|k| k.2).collect(),
    })
}

/// Outcome of the orthogonality checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityReport {
    /// `Σ ψ(1)^2 = |G|`.
    pub degree_sum: bool,
    /// `C′C = diag(|Z_G(ρ_j)|)`.
    pub column: bool,
    /// `Σ_σ ψ(σ) ψ′(σ⁻¹) = |G| δ_{ψψ′}`.
    pub row: bool,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.degree_sum && self.column && self.row
    }
}

pub fn verify_orthogonality(table: &CharacterTable, group: &FiniteGroup) -> OrthogonalityReport {
    let k = table.field();
    let r = group.class_count();
    let n = group.order() as i64;
    let degree_sum = table.len() == r && table.degrees().iter().map(|d| d * d).sum::<usize>() == group.order();
    if table.len() != r {
        return OrthogonalityReport { degree_sum, column: false, row: false };
    }
    let product = crate::exactmath::mat_mul(k, &table.matrix_c_prime(), &table.matrix_c(group));
    let column = product.is_ok_and(|p| {
        (0..r).all(|i| {
            (0..r).all(|j| {
                let want = if i == j { group.classes()[i].centralizer_order as i64 } else { 0 };
                *p.get(i, j) == k.from_i64(want)
            })
        })
    });
    let row = (0..r).all(|a| {
        (0..r).all(|b| {
            let s = (0..r).fold(k.zero(), |acc, i| {
                let t = k.mul(table.value(a, i), table.value(b, group.inverse_class(i)));
                k.add(&acc, &k.mul(&t, &k.from_i64(group.classes()[i].size() as i64)))
            });
            s == k.from_i64(if a == b { n } else { 0 })
        })
    });
    OrthogonalityReport { degree_sum, column, row }
}

/// The class indicators `k_j* = (1/|Z_G(ρ_j)|) Σ_ψ ψ(ρ_j⁻¹) ψ`, evaluated on
/// every class: entry `[j][i] = k_j*(ρ_i)`. Fails unless the result is the
/// exact 0/1 indicator.
pub fn indicator_functions(table: &CharacterTable, group: &FiniteGroup) -> Result<Vec<Vec<Rational>>> {
    let k = table.field();
    let r = group.class_count();
    let mut out = Vec::with_capacity(r);
    for j in 0..r {
        let jinv = group.inverse_class(j);
        let z = Rational::new(1.into(), group.classes()[j].centralizer_order.into());
        let mut row = Vec::with_capacity(r);
        for i in 0..r {
            let s = (0..table.len()).fold(k.zero(), |acc, psi| {
                k.add(&acc, &k.mul(table.value(psi, jinv), table.value(psi, i)))
            });
            let v = k.scale(&s, &z).as_rational().ok_or_else(|| Error::Irrational(format!("k_{}*(class {})", j + 1, i + 1)))?;
            let want = Rational::from_integer(u8::from(i == j).into());
            if v != want {
                return Err(Error::Consistency(format!("k_{}* takes value {v} on class {}", j + 1, i + 1)));
            }
            row.push(v);
        }
        out.push(row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        // Symmetric group on three points, identity first.
        let perms = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 1, 0], vec![0, 2, 1], vec![1, 2, 0], vec![2, 0, 1]];
        FiniteGroup::from_permutations(&perms).unwrap()
    }

    fn a4() -> FiniteGroup {
        let mut perms = Vec::new();
        for p in permutations(4) {
            let inv = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            if inv % 2 == 0 {
                perms.push(p);
            }
        }
        FiniteGroup::from_permutations(&perms).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).to_string(), "X - 1");
        assert_eq!(cyclotomic_polynomial(3).to_string(), "X^2 + X + 1");
        assert_eq!(cyclotomic_polynomial(4).to_string(), "X^2 + 1");
        assert_eq!(cyclotomic_polynomial(6).to_string(), "X^2 - X + 1");
        assert_eq!(cyclotomic_polynomial(12).to_string(), "X^4 - X^2 + 1");
    }

    #[test]
    fn class_constants_s3() {
        let g = s3();
        let a = class_constants(&g);
        let involutions = g.class_of(1);
        let rotations = g.class_of(4);
        assert_eq!(a[involutions][involutions][0], 3);
        assert_eq!(a[involutions][involutions][rotations], 3);
        assert_eq!(a[involutions][involutions][involutions], 0);
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(a[0][j][k], u64::from(j == k));
            }
        }
    }

    #[test]
    fn z2_table() {
        let g = FiniteGroup::cyclic(2);
        let t = character_table(&g).unwrap();
        let vals: Vec<Vec<String>> = (0..2).map(|p| (0..2).map(|c| t.format_value(p, c)).collect()).collect();
        assert_eq!(vals, vec![vec!["1", "1"], vec!["1", "-1"]]);
    }

    #[test]
    fn z3_table() {
        let g = FiniteGroup::cyclic(3);
        let t = character_table(&g).unwrap();
        let k = t.field();
        let w = k.generator();
        let w2 = k.mul(&w, &w);
        assert_eq!(t.rows()[0], vec![k.one(), k.one(), k.one()]);
        // Rows 1 and 2 are (1, ω, ω²) and (1, ω², ω) in descending order.
        let rows = &t.rows()[1..];
        assert!(rows.contains(&vec![k.one(), w.clone(), w2.clone()]));
        assert!(rows.contains(&vec![k.one(), w2, w]));
    }

    #[test]
    fn s3_and_a4_tables() {
        let g = s3();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        let sign: Vec<String> = (0..3).map(|c| t.format_value(1, c)).collect();
        assert_eq!(sign, vec!["1", "-1", "1"]);
        let g = a4();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 3]);
        assert_eq!(t.exponent(), 6);
        assert!(verify_orthogonality(&t, &g).passed());
    }

    #[test]
    fn indicators_are_deltas() {
        for g in [s3(), a4(), FiniteGroup::cyclic(4), FiniteGroup::cyclic(5)] {
            let t = character_table(&g).unwrap();
            let ind = indicator_functions(&t, &g).unwrap();
            let r = g.class_count();
            for i in 0..r {
                let col_sum: Rational = (0..r).map(|j| ind[j][i].clone()).sum();
                assert_eq!(col_sum, Rational::from_integer(1.into()));
            }
        }
    }

    #[test]
    fn centralizer_diagonal() {
        let g = a4();
        let t = character_table(&g).unwrap();
        let k = t.field();
        let p = crate::exactmath::mat_mul(k, &t.matrix_c_prime(), &t.matrix_c(&g)).unwrap();
        let mut diag: Vec<i64> = (0..4).map(|i| p.get(i, i).as_rational().unwrap().to_integer().try_into().unwrap()).collect();
        diag.sort();
        assert_eq!(diag, vec![3, 3, 4, 12]);
    }
}
