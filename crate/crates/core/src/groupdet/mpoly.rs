//! Sparse multivariate polynomials keyed by dense exponent vectors.

use std::collections::BTreeMap;

use crate::exactmath::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<E> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> MPoly<E> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant<F: Field<Elem = E>>(ctx: &F, nvars: usize, c: E) -> Self {
        let mut p = Self::zero(nvars);
        if !ctx.is_zero(&c) {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var<F: Field<Elem = E>>(ctx: &F, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, ctx.one());
        p
    }

    /// `Σ c_i X_i`.
    pub fn linear<F: Field<Elem = E>>(ctx: &F, coeffs: &[E]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p = p.add(ctx, &Self::var(ctx, n, i).scale(ctx, c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree if homogeneous, `None` otherwise (or when zero).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn add_term<F: Field<Elem = E>>(&mut self, ctx: &F, e: Vec<u32>, c: E) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !ctx.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = ctx.add(o.get(), &c);
                if ctx.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, ctx: &F, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(ctx, e.clone(), c.clone());
        }
        out
    }

    pub fn neg<F: Field<Elem = E>>(&self, ctx: &F) -> Self {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), ctx.neg(c))).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, ctx: &F, o: &Self) -> Self {
        self.add(ctx, &o.neg(ctx))
    }

    pub fn scale<F: Field<Elem = E>>(&self, ctx: &F, c: &E) -> Self {
        if ctx.is_zero(c) {
            return Self::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), ctx.mul(v, c))).collect() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, ctx: &F, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(ctx, e, ctx.mul(ca, cb));
            }
        }
        out
    }

    /// Product with `sign · X_i`.
    pub fn mul_var<F: Field<Elem = E>>(&self, ctx: &F, i: usize, negate: bool) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] += 1;
                    (e, if negate { ctx.neg(c) } else { c.clone() })
                })
                .collect(),
        }
    }

    pub fn pow<F: Field<Elem = E>>(&self, ctx: &F, k: u32) -> Self {
        let mut acc = Self::constant(ctx, self.nvars, ctx.one());
        for _ in 0..k {
            acc = acc.mul(ctx, self);
        }
        acc
    }

    /// `∂/∂X_i`.
    pub fn derivative<F: Field<Elem = E>>(&self, ctx: &F, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let k = ctx.from_i64(e[i] as i64);
            let mut e = e.clone();
            e[i] -= 1;
            out.add_term(ctx, e, ctx.mul(c, &k));
        }
        out
    }

    /// Renames `X_i` to `X_{map[i]}`; `map` must be a permutation.
    pub fn relabel(&self, map: &[usize]) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = vec![0; self.nvars];
                    for (i, &k) in e.iter().enumerate() {
                        f[map[i]] = k;
                    }
                    (f, c.clone())
                })
                .collect(),
        }
    }

    pub fn map_coeffs<T: Clone + PartialEq + std::fmt::Debug>(&self, f: impl Fn(&E) -> T) -> MPoly<T> {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect() }
    }

    /// Substitutes `X_i = values[i]`.
    pub fn eval<F: Field<Elem = E>>(&self, ctx: &F, values: &[E]) -> E {
        let mut acc = ctx.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = ctx.mul(&t, &ctx.pow(&values[i], k as u64));
                }
            }
            acc = ctx.add(&acc, &t);
        }
        acc
    }

    /// Formats with the given variable names and coefficient printer, terms
    /// in descending exponent order.
    pub fn format(&self, names: &[String], coeff: impl Fn(&E) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mut c = coeff(c);
            let neg = c.starts_with('-');
            if neg {
                c.remove(0);
            }
            let mon: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            let body = match (c.as_str(), mon.is_empty()) {
                (_, true) => c,
                ("1", false) => mon.join("*"),
                (_, false) => format!("{c}*{}", mon.join("*")),
            };
            if out.is_empty() {
                out = if neg { format!("-{body}") } else { body };
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::int;
    use crate::exactmath::Rationals;

    #[test]
    fn arithmetic_and_derivative() {
        let q = Rationals;
        let x = MPoly::var(&q, 2, 0);
        let y = MPoly::var(&q, 2, 1);
        let p = x.add(&q, &y).mul(&q, &x.sub(&q, &y));
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(p.format(&names, |c| c.to_string()), "x^2 - y^2");
        assert_eq!(p.derivative(&q, 1).format(&names, |c| c.to_string()), "-2*y");
        assert_eq!(p.relabel(&[1, 0]), p.neg(&q));
        assert_eq!(p.eval(&q, &[int(3), int(2)]), int(5));
        assert_eq!(p.homogeneous_degree(), Some(2));
    }
}
