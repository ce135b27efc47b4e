//! The group matrix `Γ(σ, τ) = X_{στ⁻¹}`: evaluated at a field element,
//! and symbolically for small groups.

pub mod mpoly;
pub mod s3;

use std::collections::HashMap;

use crate::chartab::CharacterTable;
use crate::error::{Error, ExactError, Result};
use crate::exactmath::rational::Rational;
use crate::exactmath::{mat_inverse_det, mat_mul, Field, Matrix, Rationals};
use crate::galois::{FiniteGroup, GaloisGroup};
use crate::numfield::{NfElem, NumberField};

pub use mpoly::MPoly;

/// Default order limit for the symbolic determinant.
pub const SYMBOLIC_CAP: usize = 8;

/// `Γ` as indices: entry `(σ, τ)` is the element `στ⁻¹`.
pub fn group_matrix_indices(group: &FiniteGroup) -> Matrix<usize> {
    let n = group.order();
    Matrix::from_fn(n, n, |s, t| group.mul(s, group.inv(t)))
}

/// `Γ_ξ`, the determinant and the values `∂_ρ(ξ)`.
#[derive(Clone, Debug)]
pub struct GroupMatrixEval {
    pub gamma: Matrix<NfElem>,
    pub det: NfElem,
    pub inverse: Matrix<NfElem>,
    /// `∂_ρ(ξ)` indexed by group element.
    pub partials: Vec<NfElem>,
}

impl GroupMatrixEval {
    /// `adj Γ_ξ = det Γ_ξ · Γ_ξ⁻¹`.
    pub fn adjugate(&self, field: &NumberField) -> Matrix<NfElem> {
        self.inverse.map(|x| field.mul(x, &self.det))
    }

    /// `Γ_ξ · adj Γ_ξ = det Γ_ξ · I`, with the adjugate rebuilt from the
    /// partials as `[∂_{τσ⁻¹}(ξ)]`.
    pub fn check_adjugate(&self, field: &NumberField, group: &FiniteGroup) -> bool {
        let n = group.order();
        let adj = Matrix::from_fn(n, n, |s, t| self.partials[group.mul(t, group.inv(s))].clone());
        let Ok(prod) = mat_mul(field, &self.gamma, &adj) else { return false };
        (0..n).all(|i| (0..n).all(|j| *prod.get(i, j) == if i == j { self.det.clone() } else { NfElem::zero() }))
    }
}

/// Builds `Γ_ξ` and inverts it. Fails with [`Error::NotNormalBasis`] when the
/// conjugates of `ξ` are linearly dependent.
pub fn gamma_eval(gal: &GaloisGroup, xi: &NfElem) -> Result<GroupMatrixEval> {
    let field = gal.field();
    let group = gal.group();
    let n = gal.order();
    if n != field.degree() {
        return Err(Error::Automorphisms { expected: field.degree(), found: n });
    }
    let conj = gal.conjugates(xi);
    let idx = group_matrix_indices(group);
    let gamma = idx.map(|&k| conj[k].clone());
    let (inverse, det) = match mat_inverse_det(field, &gamma) {
        Ok(v) => v,
        Err(ExactError::SingularMatrix { .. }) => return Err(Error::NotNormalBasis),
        Err(e) => return Err(e.into()),
    };
    // adj(σ, τ) = ∂_{τσ⁻¹}; the identity row gives every ∂_ρ.
    let id = group.identity();
    let partials = (0..n).map(|rho| field.mul(inverse.get(id, rho), &det)).collect();
    Ok(GroupMatrixEval { gamma, det, inverse, partials })
}

/// Symbolic group determinant and `∂_σ = (1/|G|) ∂ det / ∂X_σ`.
#[derive(Clone, Debug)]
pub struct SymGroupDet {
    pub det: MPoly<Rational>,
    pub partials: Vec<MPoly<Rational>>,
}

/// Cofactor expansion along rows with minors memoized by column set.
pub fn sym_group_det(group: &FiniteGroup, cap: usize) -> Result<SymGroupDet> {
    let n = group.order();
    if n > cap || n > 20 {
        return Err(Error::SymbolicCap { cap, order: n });
    }
    let q = Rationals;
    let idx = group_matrix_indices(group);
    let mut memo: HashMap<u32, MPoly<Rational>> = HashMap::new();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let det = minor(&q, &idx, n, full, &mut memo);
    let scale = Rational::new(1.into(), (n as i64).into());
    let partials = (0..n).map(|s| det.derivative(&q, s).scale(&q, &scale)).collect();
    Ok(SymGroupDet { det, partials })
}

fn minor(q: &Rationals, idx: &Matrix<usize>, n: usize, cols: u32, memo: &mut HashMap<u32, MPoly<Rational>>) -> MPoly<Rational> {
    if cols == 0 {
        return MPoly::constant(q, n, q.one());
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let row = n - cols.count_ones() as usize;
    let mut acc = MPoly::zero(n);
    let mut position = 0;
    for c in 0..n {
        if cols & (1 << c) == 0 {
            continue;
        }
        let sub = minor(q, idx, n, cols & !(1 << c), memo);
        acc = acc.add(q, &sub.mul_var(q, *idx.get(row, c), position % 2 == 1));
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Results of the relabeling identities `γ∂_τ = sgn(γ) ∂_{γτ}` and
/// `det(γΓ) = sgn(γ) det Γ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignActionReport {
    pub pairs_checked: usize,
    /// Failing `(γ, τ)` pairs.
    pub failures: Vec<(usize, usize)>,
    /// Elements `γ` for which the determinant identity fails.
    pub det_failures: Vec<usize>,
}

impl SignActionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.det_failures.is_empty()
    }
}

pub fn sign_action_check(sym: &SymGroupDet, group: &FiniteGroup) -> SignActionReport {
    let q = Rationals;
    let n = group.order();
    let mut report = SignActionReport::default();
    for gamma in 0..n {
        let map: Vec<usize> = (0..n).map(|rho| group.mul(gamma, rho)).collect();
        let sign = q.from_i64(group.sign(gamma) as i64);
        if sym.det.relabel(&map) != sym.det.scale(&q, &sign) {
            report.det_failures.push(gamma);
        }
        for tau in 0..n {
            report.pairs_checked += 1;
            let lhs = sym.partials[tau].relabel(&map);
            let rhs = sym.partials[group.mul(gamma, tau)].scale(&q, &sign);
            if lhs != rhs {
                report.failures.push((gamma, tau));
            }
        }
    }
    report
}

/// For abelian groups, the linear forms `Δ(ψ) = Σ_σ ψ(σ) X_σ` over `Q(ζ_e)`.
pub fn abelian_factorization(group: &FiniteGroup, table: &CharacterTable) -> Result<Vec<MPoly<NfElem>>> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let k = table.field();
    let n = group.order();
    Ok((0..table.len())
        .map(|psi| {
            let coeffs: Vec<NfElem> = (0..n).map(|s| table.value(psi, group.class_of(s)).clone()).collect();
            MPoly::linear(k, &coeffs)
        })
        .collect())
}

/// `Π Δ(ψ) = det Γ` as polynomials over `Q(ζ_e)`.
pub fn abelian_product_matches(sym: &SymGroupDet, forms: &[MPoly<NfElem>], table: &CharacterTable) -> bool {
    let k = table.field();
    let n = sym.det.nvars();
    let prod = forms.iter().fold(MPoly::constant(k, n, k.one()), |acc, f| acc.mul(k, f));
    prod == sym.det.map_coeffs(|c| k.rational(c))
}

/// Elements of `L ⊗ Q(ζ_e)` as polynomials in `ζ` with coefficients in `L`,
/// reduced by the cyclotomic polynomial.
struct Tensor<'a> {
    l: &'a NumberField,
    cyclo: Vec<Rational>,
}

impl Tensor<'_> {
    fn mul(&self, a: &[NfElem], b: &[NfElem]) -> Vec<NfElem> {
        let m = self.cyclo.len() - 1;
        let mut prod = vec![NfElem::zero(); (2 * m).saturating_sub(1).max(1)];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = self.l.add(&prod[i + j], &self.l.mul(x, y));
            }
        }
        // ζ^m = -Σ_{k<m} c_k ζ^k, applied from the top down.
        for top in (m..prod.len()).rev() {
            let t = std::mem::replace(&mut prod[top], NfElem::zero());
            for k in 0..m {
                let adj = self.l.scale(&t, &self.cyclo[k]);
                prod[top - m + k] = self.l.sub(&prod[top - m + k], &adj);
            }
        }
        prod.truncate(m);
        prod
    }
}

/// Evaluates `Π_ψ Σ_σ ψ(σ) σ(ξ)` in `L ⊗ Q(ζ_e)` and compares it with
/// `det Γ_ξ`.
pub fn abelian_product_eval(gal: &GaloisGroup, table: &CharacterTable, xi: &NfElem, det: &NfElem) -> Result<bool> {
    let group = gal.group();
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let l = gal.field();
    let zf = table.field();
    let m = zf.degree();
    let t = Tensor { l, cyclo: zf.modulus().coeffs().to_vec() };
    let conj = gal.conjugates(xi);
    let mut acc: Vec<NfElem> = (0..m).map(|k| if k == 0 { l.one() } else { NfElem::zero() }).collect();
    for psi in 0..table.len() {
        let mut form = vec![NfElem::zero(); m];
        for (s, c) in conj.iter().enumerate() {
            let v = table.value(psi, group.class_of(s)).coefficients(m);
            for k in 0..m {
                form[k] = l.add(&form[k], &l.scale(c, &v[k]));
            }
        }
        acc = t.mul(&acc, &form);
    }
    Ok(acc[0] == *det && acc[1..].iter().all(NfElem::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::exactmath::rational::int;

    #[test]
    fn z2_symbolic() {
        let g = FiniteGroup::cyclic(2);
        let sym = sym_group_det(&g, SYMBOLIC_CAP).unwrap();
        let names = vec!["X_1".to_string(), "X_s".to_string()];
        assert_eq!(sym.det.format(&names, |c| c.to_string()), "X_1^2 - X_s^2");
        assert_eq!(sym.partials[0].format(&names, |c| c.to_string()), "X_1");
        assert_eq!(sym.partials[1].format(&names, |c| c.to_string()), "-X_s");
        let t = character_table(&g).unwrap();
        let forms = abelian_factorization(&g, &t).unwrap();
        assert!(abelian_product_matches(&sym, &forms, &t));
        assert!(sign_action_check(&sym, &g).passed());
    }

    #[test]
    fn s3_regression() {
        let (report, sym) = s3::regression().unwrap();
        assert!(report.factorization, "det {}", sym.det.format(&s3::names(), |c| c.to_string()));
        assert!(report.partial_unscaled);
        assert!(!report.partial_as_printed);
        let r = sign_action_check(&sym, &s3::group());
        assert_eq!(r.pairs_checked, 36);
        assert!(r.passed(), "{r:?}");
        assert_eq!(sym.det.homogeneous_degree(), Some(6));
    }

    #[test]
    fn cyclic_symbolic_factorizations() {
        for n in [3, 4, 5] {
            let g = FiniteGroup::cyclic(n);
            let sym = sym_group_det(&g, SYMBOLIC_CAP).unwrap();
            let t = character_table(&g).unwrap();
            let forms = abelian_factorization(&g, &t).unwrap();
            assert!(abelian_product_matches(&sym, &forms, &t), "Z/{n}");
            assert!(sign_action_check(&sym, &g).passed());
        }
        assert!(matches!(abelian_factorization(&s3::group(), &character_table(&s3::group()).unwrap()), Err(Error::NotAbelian)));
        assert!(matches!(sym_group_det(&FiniteGroup::cyclic(9), SYMBOLIC_CAP), Err(Error::SymbolicCap { .. })));
    }

    #[test]
    fn golden_gamma() {
        let k = NumberField::from_ints(&[-1, -1, 1]).unwrap();
        let gal = GaloisGroup::discover(&k, 1 << 16, None).unwrap();
        let xi = k.generator();
        let ev = gamma_eval(&gal, &xi).unwrap();
        // det = ξ² - (σξ)² = 2x - 1, ∂_1 = ξ, ∂_σ = -σξ.
        assert_eq!(ev.det, k.element_from_coeffs(&[int(-1), int(2)]));
        assert_eq!(ev.partials[0], xi);
        assert_eq!(ev.partials[1], k.element_from_coeffs(&[int(-1), int(1)]));
        assert!(ev.check_adjugate(&k, gal.group()));
        assert!(matches!(gamma_eval(&gal, &k.one()), Err(Error::NotNormalBasis)));
    }

    #[test]
    fn evaluated_partials_match_symbolic() {
        // Sextic S3 field, generator x + 1.
        let k = NumberField::from_ints(&[31, 36, 27, -4, 9, 0, 1]).unwrap();
        let gal = GaloisGroup::discover(&k, 1 << 16, None).unwrap();
        let xi = gal.find_normal_basis_generator(7, 50).unwrap();
        let ev = gamma_eval(&gal, &xi).unwrap();
        assert!(ev.check_adjugate(&k, gal.group()));
        let sym = sym_group_det(gal.group(), SYMBOLIC_CAP).unwrap();
        let conj = gal.conjugates(&xi);
        let lift = |p: &MPoly<Rational>| p.map_coeffs(|c| k.rational(c)).eval(&k, &conj);
        assert_eq!(lift(&sym.det), ev.det);
        for rho in 0..6 {
            assert_eq!(lift(&sym.partials[rho]), ev.partials[rho]);
        }
    }

    #[test]
    fn cyclic_quartic_evaluated_product() {
        // Q(ζ_5) is cyclic of degree 4.
        let k = NumberField::from_ints(&[1, 1, 1, 1, 1]).unwrap();
        let gal = GaloisGroup::discover(&k, 1 << 16, None).unwrap();
        let xi = k.generator();
        let ev = gamma_eval(&gal, &xi).unwrap();
        let t = character_table(gal.group()).unwrap();
        assert!(abelian_product_eval(&gal, &t, &xi, &ev.det).unwrap());
        let wrong = k.add(&ev.det, &k.one());
        assert!(!abelian_product_eval(&gal, &t, &xi, &wrong).unwrap());
    }
}
