//! The sequence family `(a_{K_j,i})`: initial terms from the group matrix,
//! continuation by the recurrence with characteristic polynomial
//! `F = min_poly(ξ)`, closed forms, and the coordinate identities they rest
//! on.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::rational::Rational;
use crate::exactmath::{mat_mul, mat_solve, Field, Matrix, PolyQ};
use crate::galois::GaloisGroup;
use crate::groupdet::{gamma_eval, GroupMatrixEval};
use crate::numfield::{NfElem, NumberField};

/// Which formula produces a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Initial terms continued by the recurrence.
    Matrix,
    /// The double sum over `σ ∈ G, τ ∈ K_j`.
    Direct,
    /// The trace form, `Tr_G` or `Tr_{G⁺} − δ Tr_{G⁺}`.
    Trace,
}

/// `F`'s coefficients and its companion matrix, acting on column vectors
/// `(a_n, …, a_{n+d−1}) ↦ (a_{n+1}, …, a_{n+d})`.
#[derive(Clone, Debug)]
pub struct RecurrenceSpec {
    pub coeffs: Vec<Rational>,
    pub companion: Matrix<Rational>,
}

impl RecurrenceSpec {
    pub fn new(f: &PolyQ) -> Self {
        let d = f.degree().unwrap_or(0);
        let coeffs: Vec<Rational> = f.coeffs()[..d].to_vec();
        let companion = Matrix::from_fn(d, d, |i, j| {
            if i + 1 < d {
                if j == i + 1 { Rational::one() } else { Rational::zero() }
            } else {
                -coeffs[j].clone()
            }
        });
        RecurrenceSpec { coeffs, companion }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_{n+d} = −Σ c_k a_{n+k}` for a window `a_n..a_{n+d−1}`.
    pub fn next(&self, window: &[Rational]) -> Rational {
        -window.iter().zip(&self.coeffs).map(|(a, c)| a * c).sum::<Rational>()
    }
}

#[derive(Debug)]
pub struct SequenceFamily {
    gal: GaloisGroup,
    xi: NfElem,
    min_poly: PolyQ,
    recurrence: RecurrenceSpec,
    gamma: GroupMatrixEval,
    /// `σ(ξ)` in group order.
    conj: Vec<NfElem>,
    p: Matrix<NfElem>,
    a: Matrix<Rational>,
    z: OnceLock<Result<Matrix<NfElem>>>,
}

impl SequenceFamily {
    /// Computes `A = P Γ_ξ⁻¹ κ`, asserting every entry is rational.
    pub fn new(gal: GaloisGroup, xi: NfElem) -> Result<Self> {
        let field = gal.field().clone();
        let d = gal.order();
        let min_poly = field.min_poly(&xi);
        if min_poly.degree() != Some(d) {
            return Err(Error::NotNormalBasis);
        }
        let recurrence = RecurrenceSpec::new(&min_poly);
        let gamma = gamma_eval(&gal, &xi)?;
        let conj = gal.conjugates(&xi);
        let group = gal.group();
        let p = Matrix::from_fn(d, d, |_, _| NfElem::zero());
        let mut p = p;
        for s in 0..d {
            let v = &conj[group.inv(s)];
            let mut pw = field.one();
            for i in 0..d {
                p.set(i, s, pw.clone());
                pw = field.mul(&pw, v);
            }
        }
        let r = group.class_count();
        let kappa = Matrix::from_fn(d, r, |t, j| if group.class_of(t) == j { field.one() } else { NfElem::zero() });
        let inv_kappa = mat_mul(&field, &gamma.inverse, &kappa)?;
        let full = mat_mul(&field, &p, &inv_kappa)?;
        let mut entries = Vec::with_capacity(d * r);
        for i in 0..d {
            for j in 0..r {
                let v = full.get(i, j);
                entries.push(v.as_rational().ok_or_else(|| {
                    Error::Irrational(format!("initial term a_(K{},{i}) = {}", j + 1, field.format_elem(v, "x")))
                })?);
            }
        }
        let a = Matrix::from_vec(d, r, entries);
        Ok(SequenceFamily { gal, xi, min_poly, recurrence, gamma, conj, p, a, z: OnceLock::new() })
    }

    pub fn galois(&self) -> &GaloisGroup {
        &self.gal
    }

    pub fn field(&self) -> &NumberField {
        self.gal.field()
    }

    pub fn xi(&self) -> &NfElem {
        &self.xi
    }

    /// `F = min_poly(ξ)`, the characteristic polynomial of every sequence.
    pub fn min_poly(&self) -> &PolyQ {
        &self.min_poly
    }

    pub fn recurrence(&self) -> &RecurrenceSpec {
        &self.recurrence
    }

    pub fn gamma(&self) -> &GroupMatrixEval {
        &self.gamma
    }

    pub fn p_matrix(&self) -> &Matrix<NfElem> {
        &self.p
    }

    pub fn degree(&self) -> usize {
        self.a.rows()
    }

    pub fn class_count(&self) -> usize {
        self.a.cols()
    }

    /// The `d × r` matrix of initial terms.
    pub fn initial_terms(&self) -> &Matrix<Rational> {
        &self.a
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.a.column(j)
    }

    /// Terms `a_{K_j,from..to}` (end exclusive) by the recurrence.
    pub fn terms_by_recurrence(&self, j: usize, from: usize, to: usize) -> Vec<Rational> {
        let d = self.degree();
        let mut seq = self.column(j);
        while seq.len() < to {
            let n = seq.len();
            let next = self.recurrence.next(&seq[n - d..]);
            seq.push(next);
        }
        seq.into_iter().skip(from).take(to.saturating_sub(from)).collect()
    }

    pub fn term_by_recurrence(&self, j: usize, i: usize) -> Rational {
        self.terms_by_recurrence(j, i, i + 1).remove(0)
    }

    fn finish(&self, num: &NfElem, what: &str) -> Result<Rational> {
        let f = self.field();
        let v = f.div(num, &self.gamma.det)?;
        v.as_rational().ok_or_else(|| Error::Irrational(format!("{what} = {}", f.format_elem(&v, "x"))))
    }

    /// `(1/det Γ_ξ) Σ_{σ ∈ G, τ ∈ K_j} σ(ξ^i) ∂_{στ}(ξ)`.
    pub fn term_direct(&self, j: usize, i: usize) -> Result<Rational> {
        let f = self.field();
        let group = self.gal.group();
        let class = &group.classes()[j].members;
        let mut acc = NfElem::zero();
        for (s, c) in self.conj.iter().enumerate() {
            let inner = f.sum(class.iter().map(|&t| &self.gamma.partials[group.mul(s, t)]));
            acc = f.add(&acc, &f.mul(&f.pow(c, i as u64), &inner));
        }
        self.finish(&acc, &format!("direct a_(K{},{i})", j + 1))
    }

    /// `(1/det Γ_ξ) Tr_G(ξ^i Σ_{τ∈K_j} ∂_τ(ξ))` when every element is even,
    /// `(1/det Γ_ξ)(Tr_{G⁺} − δ Tr_{G⁺})(…)` otherwise.
    pub fn term_trace_form(&self, j: usize, i: usize) -> Result<Rational> {
        let f = self.field();
        let group = self.gal.group();
        let class = &group.classes()[j].members;
        let inner = f.sum(class.iter().map(|&t| &self.gamma.partials[t]));
        let y = f.mul(&f.pow(&self.xi, i as u64), &inner);
        let (even, delta) = group.even_subgroup();
        let tr_even = f.sum(even.iter().map(|&s| self.gal.apply(s, &y)).collect::<Vec<_>>().iter());
        let num = match delta {
            None => tr_even,
            Some(d) => f.sub(&tr_even, &self.gal.apply(d, &tr_even)),
        };
        self.finish(&num, &format!("trace-form a_(K{},{i})", j + 1))
    }

    pub fn term(&self, method: Method, j: usize, i: usize) -> Result<Rational> {
        match method {
            Method::Matrix => Ok(self.term_by_recurrence(j, i)),
            Method::Direct => self.term_direct(j, i),
            Method::Trace => self.term_trace_form(j, i),
        }
    }

    fn z_matrix(&self) -> Result<&Matrix<NfElem>> {
        self.z
            .get_or_init(|| {
                let f = self.field();
                let a = self.a.map(|q| f.rational(q));
                mat_solve(f, &self.p, &a).map_err(Error::from)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `z = P⁻¹ (a_{K_j,0}, …, a_{K_j,d−1})`, indexed by group element.
    pub fn coordinates_z(&self, j: usize) -> Result<Vec<NfElem>> {
        Ok(self.z_matrix()?.column(j))
    }

    /// `τ ↦ Σ_σ z_σ (τσ⁻¹)(ξ)`, i.e. `(Γ_ξ z)_τ`; expected to be the
    /// indicator of `K_j`.
    pub fn class_function_values(&self, j: usize) -> Result<Vec<NfElem>> {
        let f = self.field();
        let group = self.gal.group();
        let z = self.coordinates_z(j)?;
        let d = self.degree();
        Ok((0..d)
            .map(|t| {
                let terms: Vec<NfElem> =
                    (0..d).map(|s| f.mul(&z[s], &self.conj[group.mul(t, group.inv(s))])).collect();
                f.sum(terms.iter())
            })
            .collect())
    }

    /// `class_function_values(j)` is exactly the 0/1 indicator of `K_j`.
    pub fn check_indicator(&self, j: usize) -> Result<bool> {
        let f = self.field();
        let group = self.gal.group();
        let vals = self.class_function_values(j)?;
        Ok(vals.iter().enumerate().all(|(t, v)| *v == if group.class_of(t) == j { f.one() } else { NfElem::zero() }))
    }

    /// `P⁻¹ R_F P = diag(σ⁻¹ξ)`, checked as `R_F P = P diag(σ⁻¹ξ)` (P is
    /// invertible, certified by the solve in [`Self::coordinates_z`]).
    pub fn check_diagonalization(&self) -> Result<bool> {
        let f = self.field();
        let group = self.gal.group();
        let d = self.degree();
        let rf = self.recurrence.companion.map(|q| f.rational(q));
        let lhs = mat_mul(f, &rf, &self.p)?;
        let rhs = Matrix::from_fn(d, d, |i, s| f.mul(self.p.get(i, s), &self.conj[group.inv(s)]));
        self.z_matrix()?;
        Ok(lhs == rhs)
    }

    /// Shifting the sequence multiplies each coordinate `z_σ` by `σ⁻¹ξ`:
    /// `P (z_σ σ⁻¹ξ)_σ = (a_1, …, a_d)`.
    pub fn check_shift(&self, j: usize) -> Result<bool> {
        let f = self.field();
        let group = self.gal.group();
        let d = self.degree();
        let z = self.coordinates_z(j)?;
        let shifted = self.terms_by_recurrence(j, 1, d + 1);
        let zs: Vec<NfElem> = (0..d).map(|s| f.mul(&z[s], &self.conj[group.inv(s)])).collect();
        Ok((0..d).all(|i| {
            let row: Vec<NfElem> = (0..d).map(|s| f.mul(self.p.get(i, s), &zs[s])).collect();
            f.sum(row.iter()) == f.rational(&shifted[i])
        }))
    }

    /// `Σ_j A[:, j]` equals `P Γ_ξ⁻¹ (1, …, 1)ᵀ`.
    pub fn check_partition(&self) -> Result<bool> {
        let f = self.field();
        let d = self.degree();
        let ones = Matrix::from_fn(d, 1, |_, _| f.one());
        let v = mat_mul(f, &self.p, &mat_mul(f, &self.gamma.inverse, &ones)?)?;
        Ok((0..d).all(|i| *v.get(i, 0) == f.rational(&self.a.row(i).iter().sum())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, rat};

    fn golden() -> SequenceFamily {
        let k = NumberField::from_ints(&[-1, -1, 1]).unwrap();
        let gal = GaloisGroup::discover(&k, 1 << 16, None).unwrap();
        SequenceFamily::new(gal, k.generator()).unwrap()
    }

    fn cubic() -> SequenceFamily {
        let k = NumberField::from_ints(&[-1, -3, 0, 1]).unwrap();
        let gal = GaloisGroup::discover(&k, 1 << 16, None).unwrap();
        let xi = gal.find_normal_basis_generator(1, 20).unwrap();
        SequenceFamily::new(gal, xi).unwrap()
    }

    #[test]
    fn golden_initial_terms() {
        let fam = golden();
        let a = fam.initial_terms();
        assert_eq!(a.row(0), &[int(1), int(1)]);
        assert_eq!(a.row(1), &[int(1), int(0)]);
        assert_eq!(fam.term_by_recurrence(0, 5), int(8));
        let k2: Vec<Rational> = fam.terms_by_recurrence(1, 0, 5);
        assert_eq!(k2, vec![int(1), int(0), int(1), int(1), int(2)]);
        assert_eq!(fam.term_direct(0, 0).unwrap(), int(1));
        assert_eq!(fam.term_trace_form(1, 2).unwrap(), int(1));
    }

    #[test]
    fn golden_coordinates() {
        let fam = golden();
        let f = fam.field();
        let z = fam.coordinates_z(0).unwrap();
        // z_1 + z_σ = 1 and z_1 ξ + z_σ σξ = 1, with P's columns at σ⁻¹.
        assert_eq!(f.add(&z[0], &z[1]), f.one());
        let conj = fam.galois().conjugates(fam.xi());
        assert_eq!(f.add(&f.mul(&z[0], &conj[0]), &f.mul(&z[1], &conj[1])), f.one());
        // z = ((5 + √5)/10, (5 − √5)/10) with √5 = 2x − 1.
        assert_eq!(z[0], f.element_from_coeffs(&[rat(2, 5), rat(1, 5)]));
        assert!(fam.check_indicator(0).unwrap() && fam.check_indicator(1).unwrap());
        let vals = fam.class_function_values(1).unwrap();
        assert_eq!(vals, vec![NfElem::zero(), f.one()]);
    }

    #[test]
    fn theorem_agreement_small_fields() {
        for fam in [golden(), cubic()] {
            for j in 0..fam.class_count() {
                let rec = fam.terms_by_recurrence(j, 0, 31);
                for (i, want) in rec.iter().enumerate() {
                    assert_eq!(&fam.term_direct(j, i).unwrap(), want);
                    assert_eq!(&fam.term_trace_form(j, i).unwrap(), want);
                }
                assert!(fam.check_shift(j).unwrap());
                assert!(fam.check_indicator(j).unwrap());
            }
            assert!(fam.check_diagonalization().unwrap());
            assert!(fam.check_partition().unwrap());
            assert!(fam.gamma().check_adjugate(fam.field(), fam.galois().group()));
        }
    }

    #[test]
    fn companion_characteristic_polynomial() {
        let fam = cubic();
        let r = &fam.recurrence().companion;
        assert_eq!(r.row(2), &[-fam.recurrence().coeffs[0].clone(), -fam.recurrence().coeffs[1].clone(), -fam.recurrence().coeffs[2].clone()]);
        assert_eq!(fam.min_poly().to_string(), "X^3 - 3*X^2 + 1");
    }

    #[test]
    fn rejects_non_generator() {
        let k = NumberField::from_ints(&[-1, -3, 0, 1]).unwrap();
        let gal = GaloisGroup::discover(&k, 1 << 16, None).unwrap();
        assert!(matches!(SequenceFamily::new(gal.clone(), k.generator()), Err(Error::NotNormalBasis)));
        assert!(matches!(SequenceFamily::new(gal, k.one()), Err(Error::NotNormalBasis)));
    }
}
