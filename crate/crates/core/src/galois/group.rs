//! Finite groups given by a multiplication table.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Element indices, ascending.
    pub members: Vec<usize>,
    /// The first member.
    pub representative: usize,
    /// `|Z_G(representative)| = |G| / |class|`.
    pub centralizer_order: usize,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A finite group on the indices `0..n`.
///
/// Classes are listed in order of their first member, so an element order
/// that lists each class contiguously yields classes in that same order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    signs: Vec<i8>,
}

impl FiniteGroup {
    /// Builds a group from `table[a][b] = a·b`, checking the group axioms.
    /// Associativity is checked on every triple for order up to 64 and on a
    /// deterministic sample beyond that.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |m: String| Error::Consistency(format!("group table: {m}"));
        if n == 0 {
            return Err(bad("empty".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(bad("not an n x n table over 0..n".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| bad("no identity".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a][b] == identity)
                .ok_or_else(|| bad(format!("element {a} has no inverse")))?;
            if table[b][a] != identity {
                return Err(bad(format!("left and right inverse of {a} differ")));
            }
            inverse[a] = b;
        }
        let check = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return Err(bad(format!("({a}{b}){c} != {a}({b}{c})")));
                        }
                    }
                }
            }
        } else {
            let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
            for _ in 0..20_000 {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                let (a, b, c) = ((s % n as u64) as usize, ((s >> 20) % n as u64) as usize, ((s >> 40) % n as u64) as usize);
                if !check(a, b, c) {
                    return Err(bad(format!("({a}{b}){c} != {a}({b}{c})")));
                }
            }
        }
        let mut g = FiniteGroup { table, identity, inverse, classes: Vec::new(), class_of: vec![0; n], signs: Vec::new() };
        g.compute_classes();
        g.signs = (0..n).map(|x| g.regular_sign(x)).collect();
        Ok(g)
    }

    /// Group of permutations of `0..m`, composed right to left:
    /// `(a·b)(i) = a(b(i))`. Elements keep the given order.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut table = vec![vec![0; perms.len()]; perms.len()];
        for (i, a) in perms.iter().enumerate() {
            for (j, b) in perms.iter().enumerate() {
                let c: Vec<usize> = b.iter().map(|&k| a[k]).collect();
                table[i][j] = *index.get(c.as_slice()).ok_or(Error::NotClosed(i, j))?;
            }
        }
        Self::from_table(table)
    }

    /// Cyclic group of order `n`, element `k` being the `k`-th power of a
    /// generator.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table")
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut assigned = vec![false; n];
        self.classes.clear();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| self.mul(self.mul(g, x), self.inverse[g])).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                assigned[m] = true;
                self.class_of[m] = self.classes.len();
            }
            self.classes.push(ConjugacyClass {
                representative: members[0],
                centralizer_order: n / members.len(),
                members,
            });
        }
    }

    /// Sign of the permutation `ρ ↦ γρ` of the group's elements.
    fn regular_sign(&self, gamma: usize) -> i8 {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.mul(gamma, x);
            }
        }
        if (n - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// Sign of left translation by `a` on the group's elements.
    pub fn sign(&self, a: usize) -> i8 {
        self.signs[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of sign +1, and the lowest-index odd element if any.
    pub fn even_subgroup(&self) -> (Vec<usize>, Option<usize>) {
        let even = (0..self.order()).filter(|&a| self.sign(a) == 1).collect();
        let delta = (0..self.order()).find(|&a| self.sign(a) == -1);
        (even, delta)
    }

    /// The same group with element `i` of the result being `order[i]` of
    /// `self`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let n = self.order();
        let mut pos = vec![usize::MAX; n];
        for (i, &old) in order.iter().enumerate() {
            pos[old] = i;
        }
        if order.len() != n || pos.contains(&usize::MAX) {
            return Err(Error::Consistency("reordering is not a permutation".into()));
        }
        let table = (0..n).map(|i| (0..n).map(|j| pos[self.mul(order[i], order[j])]).collect()).collect();
        Self::from_table(table)
    }

    /// Class index of `a^k`.
    pub fn power_class(&self, class: usize, k: usize) -> usize {
        self.class_of(self.pow(self.classes[class].representative, k))
    }

    /// Class index of the inverses of a class.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.class_of(self.inv(self.classes[class].representative))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_6t2() -> FiniteGroup {
        crate::groupdet::s3::group()
    }

    fn a4_regular() -> FiniteGroup {
        // Even permutations of four points.
        let mut perms = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = vec![a, b, c, d];
                        let mut s = p.clone();
                        s.sort();
                        s.dedup();
                        if s.len() != 4 {
                            continue;
                        }
                        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                        if inversions % 2 == 0 {
                            perms.push(p);
                        }
                    }
                }
            }
        }
        FiniteGroup::from_permutations(&perms).unwrap()
    }

    #[test]
    fn s3_classes_and_signs() {
        let g = s3_6t2();
        let sizes: Vec<usize> = g.classes().iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let cent: Vec<usize> = g.classes().iter().map(|c| c.centralizer_order).collect();
        assert_eq!(cent, vec![6, 2, 3]);
        assert_eq!(g.sign(0), 1);
        assert_eq!(g.sign(1), -1);
        assert_eq!(g.sign(4), 1);
        let (even, delta) = g.even_subgroup();
        assert_eq!(even, vec![0, 4, 5]);
        assert_eq!(delta, Some(1));
    }

    #[test]
    fn a4_classes_and_signs() {
        let g = a4_regular();
        let mut sizes: Vec<usize> = g.classes().iter().map(|c| c.size()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
        assert!((0..12).all(|a| g.sign(a) == 1));
        assert_eq!(g.even_subgroup().1, None);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn class_equation_and_sign_homomorphism() {
        for g in [s3_6t2(), a4_regular(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::cyclic(5)] {
            let n = g.order();
            assert_eq!(g.classes().iter().map(|c| c.size()).sum::<usize>(), n);
            for c in g.classes() {
                assert_eq!(n % c.size(), 0);
                assert_eq!(c.size() * c.centralizer_order, n);
            }
            for a in 0..n {
                let o = g.element_order(a);
                let expected = if (o - 1) * (n / o) % 2 == 0 { 1 } else { -1 };
                assert_eq!(g.sign(a), expected);
                for b in 0..n {
                    assert_eq!(g.sign(g.mul(a, b)), g.sign(a) * g.sign(b));
                }
            }
        }
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn reorder_preserves_structure() {
        let g = s3_6t2();
        let h = g.reordered(&[0, 4, 5, 1, 2, 3]).unwrap();
        let sizes: Vec<usize> = h.classes().iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(h.sign(1), 1);
        assert_eq!(h.sign(3), -1);
    }
}
