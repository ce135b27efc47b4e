//! The decomposition law: residues `a_{K_j,p} mod p` by companion-matrix
//! exponentiation, an independent Frobenius oracle working in
//! `F_p[x]/(g)`, prime classification and exceptional-prime reporting.

pub mod factor;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

pub use factor::{distinct_degree, factor_poly_mod_p, is_irreducible, squarefree};

use crate::error::{Error, Result};
use crate::exactmath::modp::{add_mod, inv_mod, mul_mod, primes_up_to, sub_mod, trial_factor, TrialFactorization};
use crate::exactmath::rational::{common_denominator, reduce_mod, Rational};
use crate::exactmath::{mat_mul, mat_solve, Matrix, PolyModP, PolyQ, PrimeField, Rationals};
use crate::numfield::NfElem;
use crate::sequences::SequenceFamily;

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Factors `F mod p`; `None` when `p` divides a denominator of `F` or its
/// leading coefficient.
pub fn factor_mod_p(f: &PolyQ, p: u64, seed: u64) -> Option<Vec<(PolyModP, u32)>> {
    let fp = PolyModP::from_poly_q(p, f)?;
    if fp.degree() != f.degree() {
        return None;
    }
    Some(factor_poly_mod_p(&fp, seed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SkipReason {
    /// `p` divides denominators of `F` or of the initial terms, and the
    /// residues that remain do not determine a class.
    DividesDenominator,
    /// `p` divides `disc(F)`; residues are still reported.
    DividesDiscriminant,
}

impl SkipReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            SkipReason::DividesDenominator => "divides denominators",
            SkipReason::DividesDiscriminant => "divides disc(F)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceClass {
    Class(usize),
    /// Residues are not a 0/1 vector with a single 1.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Class(usize),
    Unavailable(String),
    NoMatch,
    MultipleMatches,
    /// Two irreducible factors gave non-conjugate Frobenius elements.
    FactorDisagreement(usize, usize),
}

impl OracleOutcome {
    pub fn class(&self) -> Option<usize> {
        match self {
            OracleOutcome::Class(c) => Some(*c),
            _ => None,
        }
    }

    /// The oracle ran and found no well-defined Frobenius class.
    pub fn is_anomalous(&self) -> bool {
        matches!(self, OracleOutcome::NoMatch | OracleOutcome::MultipleMatches | OracleOutcome::FactorDisagreement(..))
    }

    pub fn describe(&self) -> String {
        match self {
            OracleOutcome::Class(c) => format!("K{}", c + 1),
            OracleOutcome::Unavailable(why) => format!("unavailable ({why})"),
            OracleOutcome::NoMatch => "no match".into(),
            OracleOutcome::MultipleMatches => "multiple matches".into(),
            OracleOutcome::FactorDisagreement(a, b) => format!("factors disagree (K{} vs K{})", a + 1, b + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeVerdict {
    pub p: u64,
    pub skipped: Option<SkipReason>,
    /// `a_{K_j,p} mod p`; `None` where `p` divides that column's
    /// denominators. Empty when `p` divides a denominator of `F`.
    pub residues: Vec<Option<u64>>,
    /// Some residues were missing and the class was completed through the
    /// column sum.
    pub partial: bool,
    pub sequence_class: Option<SequenceClass>,
    pub oracle: OracleOutcome,
    /// Set when both the sequence class and the oracle class are defined.
    pub agree: Option<bool>,
}

impl PrimeVerdict {
    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }

    pub fn class(&self) -> Option<usize> {
        match self.sequence_class {
            Some(SequenceClass::Class(j)) => Some(j),
            _ => None,
        }
    }

    /// Not skipped, and either the residues are inconsistent, the oracle
    /// is anomalous, or the two classes disagree.
    pub fn is_observed_exception(&self) -> bool {
        !self.is_skipped()
            && (self.sequence_class == Some(SequenceClass::Inconsistent)
                || self.oracle.is_anomalous()
                || self.agree == Some(false))
    }
}

/// Prime divisors of one predicted source, by trial division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedSource {
    pub name: &'static str,
    pub value: BigInt,
    pub factorization: TrialFactorization,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalReport {
    pub max_prime: u64,
    pub trial_bound: u64,
    /// `det Γ_ξ` is rational exactly when every element is even; otherwise
    /// its square is used.
    pub det_power: u32,
    pub sources: Vec<PredictedSource>,
    /// Union of all trial-division primes over the sources.
    pub predicted: BTreeSet<u64>,
    /// Cofactors left after trial division (not 1).
    pub unfactored: Vec<BigInt>,
    pub observed: Vec<u64>,
    pub skipped: Vec<u64>,
}

impl ExceptionalReport {
    pub fn is_predicted(&self, p: u64) -> bool {
        self.predicted.contains(&p)
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub verdicts: Vec<PrimeVerdict>,
    pub report: ExceptionalReport,
}

impl Classification {
    /// Non-skipped primes whose residues pick out class `j`.
    pub fn primes_in_class(&self, j: usize) -> Vec<u64> {
        self.verdicts.iter().filter(|v| !v.is_skipped() && v.class() == Some(j)).map(|v| v.p).collect()
    }

    /// Primes where both classes are defined, they disagree, and `p` lies
    /// outside the predicted superset.
    pub fn unexplained_disagreements(&self) -> Vec<u64> {
        self.verdicts
            .iter()
            .filter(|v| v.agree == Some(false) && !self.report.is_predicted(v.p))
            .map(|v| v.p)
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub jobs: usize,
    pub seed: u64,
    pub trial_bound: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { jobs: 1, seed: 0, trial_bound: DEFAULT_TRIAL_BOUND }
    }
}

/// `a_{K_j,p} mod p` for every class: clears the denominators `D_j` of each
/// column of initial terms, raises the companion matrix to the `p`-th power
/// over F_p, reads the first entry and multiplies by `D_j⁻¹`.
pub fn term_mod_p(family: &SequenceFamily, p: u64) -> std::result::Result<Vec<u64>, SkipReason> {
    let cols = column_residues(family, p)?;
    cols.columns.into_iter().collect::<Option<Vec<_>>>().ok_or(SkipReason::DividesDenominator)
}

/// Per-column residues (`None` where `p` divides that column's
/// denominator) and the residue of the column sum `Σ_j a_{K_j,p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnResidues {
    pub columns: Vec<Option<u64>>,
    pub sum: Option<u64>,
}

pub fn column_residues(family: &SequenceFamily, p: u64) -> std::result::Result<ColumnResidues, SkipReason> {
    let fp = PrimeField::new(p);
    let companion = family.recurrence().companion.map(|q| reduce_mod(q, p));
    if companion.entries().iter().any(Option::is_none) {
        return Err(SkipReason::DividesDenominator);
    }
    let power = matrix_pow(&fp, &companion.map(|v| v.unwrap()), p);
    let first_entry = |col: &[Rational]| -> Option<u64> {
        let den = common_denominator(col);
        let dinv = inv_mod(reduce_mod(&Rational::from_integer(den.clone()), p)?, p)?;
        let mut acc = 0u64;
        for (&m, a) in power.row(0).iter().zip(col) {
            let n = (a * Rational::from_integer(den.clone())).to_integer();
            let v = reduce_mod(&Rational::from_integer(n), p).expect("integer");
            acc = add_mod(acc, mul_mod(m, v, p), p);
        }
        Some(mul_mod(acc, dinv, p))
    };
    let r = family.class_count();
    let columns = (0..r).map(|j| first_entry(&family.column(j))).collect();
    let a = family.initial_terms();
    let sums: Vec<Rational> = (0..a.rows()).map(|i| a.row(i).iter().sum()).collect();
    Ok(ColumnResidues { columns, sum: first_entry(&sums) })
}

fn matrix_pow(fp: &PrimeField, m: &Matrix<u64>, e: u64) -> Matrix<u64> {
    let n = m.rows();
    let mut acc = Matrix::from_fn(n, n, |i, j| u64::from(i == j));
    let mut base = m.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(fp, &acc, &base).expect("square");
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(fp, &base, &base).expect("square");
        }
    }
    acc
}

/// The class whose residue is 1, provided the residues are 0/1 with one 1.
pub fn sequence_class(residues: &[u64]) -> SequenceClass {
    let ones: Vec<usize> = residues.iter().enumerate().filter(|(_, &r)| r == 1).map(|(j, _)| j).collect();
    if ones.len() == 1 && residues.iter().all(|&r| r <= 1) {
        SequenceClass::Class(ones[0])
    } else {
        SequenceClass::Inconsistent
    }
}

/// Class from partially known residues. The unknown columns together
/// contribute `sum − Σ known`; a single unknown column is recovered from
/// that, and several unknown columns must contribute 0 for a known 1 to
/// decide the class. `None` when the residues do not determine a class.
pub fn sequence_class_partial(res: &ColumnResidues, p: u64) -> Option<SequenceClass> {
    if let Some(all) = res.columns.iter().copied().collect::<Option<Vec<_>>>() {
        return Some(sequence_class(&all));
    }
    let sum = res.sum?;
    let known = res.columns.iter().flatten().fold(0, |acc, &v| add_mod(acc, v, p));
    let rest = sub_mod(sum, known, p);
    let missing: Vec<usize> = (0..res.columns.len()).filter(|&j| res.columns[j].is_none()).collect();
    if missing.len() == 1 {
        let mut all: Vec<u64> = res.columns.iter().map(|v| v.unwrap_or(0)).collect();
        all[missing[0]] = rest;
        return Some(sequence_class(&all));
    }
    let known: Vec<u64> = res.columns.iter().flatten().copied().collect();
    if known.iter().all(|&v| v <= 1) && known.iter().filter(|&&v| v == 1).count() == 1 && rest == 0 {
        let j = res.columns.iter().position(|v| *v == Some(1))?;
        return Some(SequenceClass::Class(j));
    }
    None
}

/// A model of the field as `Q[y]/(m)` with automorphisms `y ↦ h_σ(y)`.
#[derive(Clone, Debug)]
struct OracleModel {
    name: &'static str,
    modulus: PolyQ,
    images: Vec<PolyQ>,
}

/// Frobenius classes from the action of `y ↦ y^p` on a residue field
/// `F_p[y]/(g)`. Two models are tried: the working modulus with its
/// automorphism images, then `F = min_poly(ξ)` with the automorphisms
/// rewritten as polynomials in `ξ`.
#[derive(Clone, Debug)]
pub struct FrobeniusOracle {
    models: Vec<OracleModel>,
    class_of: Vec<usize>,
    seed: u64,
}

impl FrobeniusOracle {
    pub fn new(family: &SequenceFamily, seed: u64) -> Result<Self> {
        let gal = family.galois();
        let field = gal.field();
        let d = gal.order();
        let working = OracleModel {
            name: "working modulus",
            modulus: field.modulus().clone(),
            images: gal.images().iter().map(NfElem::to_poly).collect(),
        };
        // Express σ(ξ) in the power basis of ξ.
        let powers: Vec<Vec<Rational>> = {
            let mut out = Vec::with_capacity(d);
            let mut pw = NfElem::from_rational(&Rational::one());
            for _ in 0..d {
                out.push(pw.coefficients(d));
                pw = crate::exactmath::Field::mul(field, &pw, family.xi());
            }
            out
        };
        let basis = Matrix::from_fn(d, d, |i, k| powers[k][i].clone());
        let conj = gal.conjugates(family.xi());
        let rhs = Matrix::from_fn(d, d, |i, s| conj[s].coefficients(d)[i].clone());
        let sol = mat_solve(&Rationals, &basis, &rhs).map_err(|_| Error::NotNormalBasis)?;
        let via_xi =
            OracleModel { name: "min_poly(xi)", modulus: family.min_poly().clone(), images: (0..d).map(|s| PolyQ::new(sol.column(s))).collect() };
        let class_of = (0..d).map(|s| gal.group().class_of(s)).collect();
        Ok(FrobeniusOracle { models: vec![working, via_xi], class_of, seed })
    }

    pub fn frobenius_class(&self, p: u64) -> OracleOutcome {
        let mut reasons = Vec::new();
        for m in &self.models {
            match self.try_model(m, p) {
                OracleOutcome::Unavailable(why) => reasons.push(format!("{}: {why}", m.name)),
                other => return other,
            }
        }
        OracleOutcome::Unavailable(reasons.join("; "))
    }

    fn try_model(&self, m: &OracleModel, p: u64) -> OracleOutcome {
        let unavailable = |s: &str| OracleOutcome::Unavailable(s.to_string());
        let Some(fp) = PolyModP::from_poly_q(p, &m.modulus) else { return unavailable("denominator clash") };
        if !PolyModP::gcd(&fp, &fp.derivative()).is_one() {
            return unavailable("not squarefree mod p");
        }
        let Some(images) = m.images.iter().map(|h| PolyModP::from_poly_q(p, h)).collect::<Option<Vec<_>>>() else {
            return unavailable("denominator clash in an automorphism image");
        };
        let factors = factor_poly_mod_p(&fp, self.seed ^ p);
        let mut picks = vec![&factors[0].0];
        if factors.len() > 1 {
            picks.push(&factors[factors.len() - 1].0);
        }
        let mut classes = Vec::new();
        for g in picks {
            let x = PolyModP::x(p).rem(g);
            let xp = x.pow_mod_u64(p, g);
            let hits: Vec<usize> = (0..images.len()).filter(|&s| images[s].compose_mod(&x, g) == xp).collect();
            match hits.len() {
                0 => return OracleOutcome::NoMatch,
                1 => classes.push(self.class_of[hits[0]]),
                _ => return OracleOutcome::MultipleMatches,
            }
        }
        if classes.len() == 2 && classes[0] != classes[1] {
            return OracleOutcome::FactorDisagreement(classes[0], classes[1]);
        }
        OracleOutcome::Class(classes[0])
    }
}

/// Integer value for trial division: `|num · den|` of a rational.
fn rational_support(q: &Rational) -> BigInt {
    q.numer() * q.denom()
}

fn predicted_sources(family: &SequenceFamily, trial_bound: u64) -> Result<(Vec<PredictedSource>, u32)> {
    let field = family.field();
    let disc = family.min_poly().discriminant();
    let det = &family.gamma().det;
    let (det_value, det_power) = match det.as_rational() {
        Some(q) => (q, 1),
        None => {
            let sq = crate::exactmath::Field::mul(field, det, det);
            let q = sq.as_rational().ok_or_else(|| Error::Irrational("det(Gamma)^2".into()))?;
            (q, 2)
        }
    };
    let a = family.initial_terms();
    let f_dens = family.min_poly().coeffs().iter().map(|c| c.denom().clone());
    let den = f_dens.fold(common_denominator(a.entries()), |acc, d| num_integer::Integer::lcm(&acc, &d));
    let make = |name, value: BigInt| PredictedSource { name, factorization: trial_factor(&value, trial_bound), value };
    Ok((
        vec![
            make("disc(F)", rational_support(&disc)),
            make(if det_power == 1 { "det(Gamma)" } else { "det(Gamma)^2" }, rational_support(&det_value)),
            make("denominators", den),
        ],
        det_power,
    ))
}

/// Classifies every prime up to `max_prime`, in parallel over `jobs`
/// workers; verdicts come back sorted by `p`.
pub fn classify_primes(family: &SequenceFamily, max_prime: u64, opts: ClassifyOptions) -> Result<Classification> {
    if max_prime < 2 {
        return Err(Error::config("maxPrime", "must be at least 2"));
    }
    let oracle = FrobeniusOracle::new(family, opts.seed)?;
    let (sources, det_power) = predicted_sources(family, opts.trial_bound)?;
    let disc = &sources[0].value;
    let primes = primes_up_to(max_prime);
    let verdict = |p: u64| {
        let cols = column_residues(family, p).ok();
        let sequence_class = cols.as_ref().and_then(|c| sequence_class_partial(c, p));
        let skipped = if sequence_class.is_none() {
            Some(SkipReason::DividesDenominator)
        } else if (disc % BigInt::from(p)).is_zero() {
            Some(SkipReason::DividesDiscriminant)
        } else {
            None
        };
        let (residues, partial) = match cols {
            Some(c) => {
                let partial = c.columns.iter().any(Option::is_none);
                (c.columns, partial)
            }
            None => (Vec::new(), false),
        };
        let oracle = oracle.frobenius_class(p);
        let agree = match (&sequence_class, oracle.class()) {
            (Some(SequenceClass::Class(j)), Some(k)) => Some(*j == k),
            _ => None,
        };
        PrimeVerdict { p, skipped, residues, partial, sequence_class, oracle, agree }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Consistency(format!("thread pool: {e}")))?;
    let mut verdicts: Vec<PrimeVerdict> = pool.install(|| primes.par_iter().map(|&p| verdict(p)).collect());
    verdicts.sort_by_key(|v| v.p);

    let predicted = sources.iter().flat_map(|s| s.factorization.primes()).collect();
    let unfactored = sources.iter().map(|s| s.factorization.cofactor.clone()).filter(|c| !c.is_one()).collect();
    let report = ExceptionalReport {
        max_prime,
        trial_bound: opts.trial_bound,
        det_power,
        sources,
        predicted,
        unfactored,
        observed: verdicts.iter().filter(|v| v.is_observed_exception()).map(|v| v.p).collect(),
        skipped: verdicts.iter().filter(|v| v.is_skipped()).map(|v| v.p).collect(),
    };
    Ok(Classification { verdicts, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::GaloisGroup;
    use crate::numfield::NumberField;

    fn golden() -> SequenceFamily {
        let k = NumberField::from_ints(&[-1, -1, 1]).unwrap();
        let gal = GaloisGroup::discover(&k, 1 << 12, None).unwrap();
        let xi = k.generator();
        SequenceFamily::new(gal, xi).unwrap()
    }

    fn fib(n: usize) -> u128 {
        (0..n).fold((0u128, 1u128), |(a, b), _| (b, a + b)).0
    }

    #[test]
    fn golden_residues() {
        let fam = golden();
        // a_{K1,n} = F_{n+1}, a_{K2,n} = F_{n-1}.
        assert_eq!(term_mod_p(&fam, 11).unwrap(), vec![(fib(12) % 11) as u64, (fib(10) % 11) as u64]);
        assert_eq!(term_mod_p(&fam, 11).unwrap()[0], 1);
        assert_eq!(term_mod_p(&fam, 7).unwrap(), vec![0, 1]);
    }

    #[test]
    fn golden_oracle() {
        let fam = golden();
        let oracle = FrobeniusOracle::new(&fam, 0).unwrap();
        assert_eq!(oracle.frobenius_class(11), OracleOutcome::Class(0));
        assert_eq!(oracle.frobenius_class(7), OracleOutcome::Class(1));
        assert!(matches!(oracle.frobenius_class(5), OracleOutcome::Unavailable(_)));
    }

    #[test]
    fn golden_classification_follows_reciprocity() {
        let fam = golden();
        let c = classify_primes(&fam, 1000, ClassifyOptions { jobs: 3, ..Default::default() }).unwrap();
        assert!(c.report.is_predicted(5));
        for v in &c.verdicts {
            if c.report.is_predicted(v.p) {
                continue;
            }
            let split = v.p % 5 == 1 || v.p % 5 == 4;
            assert_eq!(v.class(), Some(if split { 0 } else { 1 }), "p = {}", v.p);
            assert_eq!(v.agree, Some(true));
        }
        assert!(c.report.observed.iter().all(|p| c.report.is_predicted(*p)));
    }

    #[test]
    fn factor_mod_p_rejects_denominators() {
        let f = PolyQ::new(vec![Rational::new(1.into(), 3.into()), Rational::one()]);
        assert!(factor_mod_p(&f, 3, 0).is_none());
        assert_eq!(factor_mod_p(&f, 5, 0).unwrap().len(), 1);
    }
}
