//! Galois groups of normal number fields, as explicit automorphisms
//! `x ↦ image` with an abstract multiplication table.

mod discover;
pub mod group;

use std::cmp::Ordering;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use discover::discover_automorphisms;
pub use group::{ConjugacyClass, FiniteGroup};

use crate::error::{Error, Result};
use crate::exactmath::rational::{to_display_string, Rational};
use crate::exactmath::{det_rational, Field, Matrix};
use crate::numfield::{NfElem, NumberField};

/// Checks `F(image) = 0` in the field, i.e. that `x ↦ image` defines an
/// automorphism.
pub fn verify_automorphism(field: &NumberField, image: &NfElem) -> Result<()> {
    let residual = field.compose(field.modulus(), image);
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::NotARoot { residual: field.format_elem(&residual, "x") })
    }
}

/// The Galois group of a normal field: automorphism images indexed
/// consistently with an abstract [`FiniteGroup`].
#[derive(Clone, Debug)]
pub struct GaloisGroup {
    field: NumberField,
    images: Vec<NfElem>,
    group: FiniteGroup,
}

impl GaloisGroup {
    /// Closes a list of verified automorphisms into a group and puts it in
    /// canonical order: identity first, then classes by (size, smallest
    /// member image), members by image. `class_order` optionally permutes
    /// the canonical classes; its first entry must be 0.
    pub fn from_automorphisms(field: &NumberField, images: Vec<NfElem>, class_order: Option<&[usize]>) -> Result<Self> {
        let d = field.degree();
        let mut images = images;
        let mut seen = std::collections::HashSet::new();
        images.retain(|a| seen.insert(a.clone()));
        for a in &images {
            verify_automorphism(field, a)?;
        }
        if images.len() != d {
            return Err(Error::Automorphisms { expected: d, found: images.len() });
        }
        let index: HashMap<&NfElem, usize> = images.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut table = vec![vec![0; d]; d];
        for i in 0..d {
            for j in 0..d {
                let c = field.substitute(&images[j], &images[i]);
                table[i][j] = *index.get(&c).ok_or(Error::NotClosed(i, j))?;
            }
        }
        let raw = FiniteGroup::from_table(table)?;

        let cmp = |a: usize, b: usize| -> Ordering { images[a].lex_cmp(&images[b], d) };
        let id = raw.identity();
        let mut classes: Vec<Vec<usize>> = raw.classes().iter().map(|c| {
            let mut m = c.members.clone();
            m.sort_by(|&a, &b| cmp(a, b));
            m
        }).collect();
        classes.sort_by(|a, b| {
            let ida = a.contains(&id);
            let idb = b.contains(&id);
            idb.cmp(&ida).then(a.len().cmp(&b.len())).then_with(|| cmp(a[0], b[0]))
        });
        if let Some(order) = class_order {
            let r = classes.len();
            let mut sorted = order.to_vec();
            sorted.sort_unstable();
            if sorted != (0..r).collect::<Vec<_>>() || order.first() != Some(&0) {
                return Err(Error::config(
                    "classOrder",
                    format!("must be a permutation of 0..{r} starting with 0"),
                ));
            }
            classes = order.iter().map(|&k| classes[k].clone()).collect();
        }
        let order: Vec<usize> = classes.concat();
        let group = raw.reordered(&order)?;
        let images = order.iter().map(|&k| images[k].clone()).collect();
        Ok(GaloisGroup { field: field.clone(), images, group })
    }

    /// Discovers the automorphisms numerically (exact verification of each)
    /// and builds the group.
    pub fn discover(field: &NumberField, precision_cap: u64, class_order: Option<&[usize]>) -> Result<Self> {
        let images = discover_automorphisms(field, precision_cap)?;
        Self::from_automorphisms(field, images, class_order)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[NfElem] {
        &self.images
    }

    pub fn image(&self, sigma: usize) -> &NfElem {
        &self.images[sigma]
    }

    /// `σ(a)`.
    pub fn apply(&self, sigma: usize, a: &NfElem) -> NfElem {
        self.field.substitute(a, &self.images[sigma])
    }

    /// Conjugates `σ(a)` for all σ in group order.
    pub fn conjugates(&self, a: &NfElem) -> Vec<NfElem> {
        (0..self.order()).map(|s| self.apply(s, a)).collect()
    }

    /// Whether the conjugates of `a` are a Q-basis of the field. Equivalent
    /// to the group matrix of `a` being invertible, but decided by a
    /// rational determinant.
    pub fn is_normal_basis_generator(&self, a: &NfElem) -> bool {
        let d = self.order();
        let conj = self.conjugates(a);
        let m = Matrix::from_fn(d, d, |i, j| conj[j].coefficients(d)[i].clone());
        det_rational(&m).map(|v| v != Rational::from_integer(0.into())).unwrap_or(false)
    }

    /// Tries `x`, `x + 1`, ..., `x + 4`, then random elements with small
    /// integer coefficients drawn from a seeded generator.
    pub fn find_normal_basis_generator(&self, seed: u64, trials: usize) -> Result<NfElem> {
        let d = self.order();
        let f = &self.field;
        let x = f.generator();
        for c in 0..5 {
            let cand = f.add(&x, &f.from_i64(c));
            if self.is_normal_basis_generator(&cand) {
                return Ok(cand);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let coeffs: Vec<Rational> = (0..d).map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into())).collect();
            let cand = f.element_from_coeffs(&coeffs);
            if self.is_normal_basis_generator(&cand) {
                return Ok(cand);
            }
        }
        Err(Error::NoGenerator(trials + 5))
    }

    /// Human-readable image of x under `σ`.
    pub fn format_image(&self, sigma: usize) -> String {
        self.field.format_elem(&self.images[sigma], "x")
    }

    /// Image coefficients as display strings.
    pub fn image_coefficients(&self, sigma: usize) -> Vec<String> {
        self.images[sigma].coefficients(self.order()).iter().map(to_display_string).collect()
    }
}
