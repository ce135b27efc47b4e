//! Numerical discovery of automorphisms.
//!
//! For a fixed root `α` and each other root `β`, an integer relation among
//! `1, α, ..., α^(d-1), β` gives a candidate polynomial `h` with `h(α) = β`.
//! A candidate is accepted only if `F(h) ≡ 0 mod F` holds exactly, so the
//! numerics can fail to find an automorphism but never produce a wrong one.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::lll::integer_relations;
use crate::exactmath::rational::Rational;
use crate::numfield::embed::{embed_numeric, eval_fixed, ComplexFixed, EmbeddingSet};
use crate::numfield::{NfElem, NumberField};

use super::verify_automorphism;

const START_BITS: u64 = 256;

/// All `d` automorphism images of x, identity first, in discovery order.
/// Precision starts at 256 bits and doubles up to `precision_cap`.
pub fn discover_automorphisms(field: &NumberField, precision_cap: u64) -> Result<Vec<NfElem>> {
    let d = field.degree();
    let mut found = vec![field.generator()];
    if d == 1 {
        return Ok(found);
    }
    let mut bits = START_BITS.min(precision_cap.max(64));
    loop {
        match embed_numeric(field, bits) {
            Ok(emb) => {
                search_at(field, &emb, &mut found)?;
                if found.len() == d {
                    return Ok(found);
                }
            }
            Err(Error::RootIsolation { .. }) => {}
            Err(e) => return Err(e),
        }
        if bits >= precision_cap {
            return Err(Error::Automorphisms { expected: d, found: found.len() });
        }
        bits = (bits * 2).min(precision_cap);
    }
}

fn image_at(field: &NumberField, img: &NfElem, alpha: &ComplexFixed, bits: u64) -> ComplexFixed {
    eval_fixed(&img.coefficients(field.degree()), alpha, bits)
}

fn search_at(field: &NumberField, emb: &EmbeddingSet, found: &mut Vec<NfElem>) -> Result<()> {
    let d = field.degree();
    let bits = emb.bits;
    let alpha = &emb.roots[0];
    let mut powers = vec![ComplexFixed::from_rational(&Rational::from_integer(1.into()), bits)];
    for k in 1..d {
        powers.push(powers[k - 1].mul(alpha, bits));
    }
    let mut covered: HashSet<usize> = found.iter().map(|g| emb.nearest(&image_at(field, g, alpha, bits))).collect();
    for j in 0..d {
        if covered.contains(&j) || found.len() == d {
            continue;
        }
        let beta = &emb.roots[j];
        let values: Vec<(BigInt, BigInt)> =
            powers.iter().chain(std::iter::once(beta)).map(|z| (z.re.clone(), z.im.clone())).collect();
        for rel in integer_relations(&values) {
            if rel[d].is_zero() {
                continue;
            }
            let lead = -rel[d].clone();
            let coeffs: Vec<Rational> = rel[..d].iter().map(|m| Rational::new(m.clone(), lead.clone())).collect();
            let cand = field.element_from_coeffs(&coeffs);
            if verify_automorphism(field, &cand).is_err() {
                continue;
            }
            if emb.nearest(&image_at(field, &cand, alpha, bits)) != j {
                continue;
            }
            close(field, found, cand)?;
            covered = found.iter().map(|g| emb.nearest(&image_at(field, g, alpha, bits))).collect();
            break;
        }
    }
    Ok(())
}

/// Adds `gen` and closes the set under composition.
fn close(field: &NumberField, found: &mut Vec<NfElem>, gen: NfElem) -> Result<()> {
    let d = field.degree();
    let mut set: HashSet<NfElem> = found.iter().cloned().collect();
    let mut gens: Vec<NfElem> = found.clone();
    gens.push(gen.clone());
    if set.insert(gen.clone()) {
        found.push(gen);
    }
    let mut i = 0;
    while i < found.len() {
        for g in gens.clone() {
            let c = field.substitute(&g, &found[i]);
            if set.insert(c.clone()) {
                if found.len() == d {
                    return Err(Error::Consistency("more automorphisms than the field degree".into()));
                }
                found.push(c);
            }
        }
        i += 1;
    }
    Ok(())
}
