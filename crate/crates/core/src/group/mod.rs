//! Finite groups given by dense multiplication tables.
//!
//! Elements are the indices `0..order`, the identity is always index `0`,
//! and `table[a * order + b]` is the index of `a·b`. Everything downstream
//! (subgroups, quotients, bisets, genomes) works on these indices.

mod map;
mod perm;
mod subgroup;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use map::{abelianization, quotient, section, GroupMap, Quotient, Section};
pub use perm::Permutation;
pub use subgroup::{Subgroup, DEFAULT_ENUMERATION_CAP};

/// Closure cap used by [`Group::from_permutations`].
pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

/// Above this order associativity is checked on random triples only.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;

const ASSOCIATIVITY_SAMPLES: usize = 200_000;

/// The two presentations of extraspecial groups of order `p³` we build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtraspecialKind {
    /// Heisenberg group, exponent `p`.
    ExponentP,
    /// `⟨x, y | x^{p²} = y^p = 1, y x y⁻¹ = x^{1+p}⟩`.
    ExponentP2,
}

#[derive(Clone)]
pub struct Group {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    labels: Option<Vec<String>>,
    prime: Option<u64>,
}

// Two groups are the same group when their tables agree; labels are cosmetic.
impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for Group {}

impl Hash for Group {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("order", &self.order).field("prime", &self.prime).finish_non_exhaustive()
    }
}

impl Group {
    /// Validates a row-major table and builds the group.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!("expected {} entries, got {}", order * order, table.len())));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        for x in 0..order {
            if table[x] != x || table[x * order] != x {
                return Err(Error::InvalidTable(format!("index 0 is not an identity (fails at {x})")));
            }
        }
        let mut inverses = vec![usize::MAX; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            let mut found = None;
            for (y, &xy) in row.iter().enumerate() {
                if xy == 0 {
                    if found.is_some() {
                        return Err(Error::InvalidTable(format!("{x} has two right inverses")));
                    }
                    found = Some(y);
                }
            }
            match found {
                Some(y) if table[y * order + x] == 0 => inverses[x] = y,
                _ => return Err(Error::InvalidTable(format!("{x} has no two-sided inverse"))),
            }
        }
        let group = Group { order, table, inverses, labels: None, prime: None };
        group.check_associative()?;
        Ok(group)
    }

    /// Builds a group from a table already known to satisfy the axioms
    /// (subgroup and quotient tables of a valid group).
    pub(crate) fn from_table_trusted(order: usize, table: Vec<usize>) -> Self {
        let mut inverses = vec![0; order];
        for x in 0..order {
            inverses[x] = (0..order).find(|&y| table[x * order + y] == 0).expect("inverse");
        }
        let group = Group { order, table, inverses, labels: None, prime: None };
        debug_assert!(group.check_associative().is_ok());
        group
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let fail = |a, b, c| Err(Error::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return fail(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a550c);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    /// Tags the group with a prime; fails unless the order is a power of it.
    pub fn with_prime(mut self, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::UnsupportedPrime(p));
        }
        if !is_power_of(self.order, p) {
            return Err(Error::NotPGroup { order: self.order, prime: p });
        }
        self.prime = Some(p);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::InvalidTable(format!("{} labels for {} elements", labels.len(), self.order)));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Cyclic group `C_n` on `0..n` with addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("cyclic group of order 0".into()));
        }
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let g = Group::from_table(n, table)?;
        Ok(match prime_of_power(n as u64) {
            Some(p) => g.with_prime(p)?,
            None => g,
        })
    }

    /// `G × H`, pair `(g, h)` at index `g·|H| + h`.
    pub fn direct_product(g: &Group, h: &Group) -> Group {
        let (m, n) = (g.order, h.order);
        let order = m * n;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            let (a1, a2) = (a / n, a % n);
            for b in 0..order {
                let (b1, b2) = (b / n, b % n);
                table.push(g.mul(a1, b1) * n + h.mul(a2, b2));
            }
        }
        let inverses = (0..order).map(|a| g.inv(a / n) * n + h.inv(a % n)).collect();
        let prime = match (g.prime, h.prime) {
            (Some(p), Some(q)) if p == q => Some(p),
            (Some(p), None) | (None, Some(p)) if m == 1 || n == 1 => Some(p),
            _ => prime_of_power(order as u64),
        };
        let labels = match (&g.labels, &h.labels) {
            (None, None) => None,
            _ => Some((0..order).map(|a| format!("({}, {})", g.label(a / n), h.label(a % n))).collect()),
        };
        // Componentwise product of two groups is a group; no revalidation needed.
        Group { order, table, inverses, labels, prime }
    }

    /// Closes permutation generators under composition.
    ///
    /// The product `a·b` applies `a` first, then `b`. Elements are indexed in
    /// breadth-first discovery order starting from the identity, expanding
    /// each element by left multiplication with the generators in the order
    /// given.
    pub fn from_permutations(degree: usize, generators: &[Permutation]) -> Result<Self> {
        Self::from_permutations_capped(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn from_permutations_capped(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(identity, 0)]);
        let mut next = 0;
        while next < elements.len() {
            for g in generators {
                let candidate = g.then(&elements[next]);
                if !index.contains_key(&candidate) {
                    if elements.len() == cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    index.insert(candidate.clone(), elements.len());
                    elements.push(candidate);
                }
            }
            next += 1;
        }
        let order = elements.len();
        let mut table = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                table.push(index[&a.then(b)]);
            }
        }
        let labels = elements.iter().map(|e| e.to_string()).collect();
        let g = Group::from_table(order, table)?.with_labels(labels)?;
        Ok(match prime_of_power(order as u64) {
            Some(p) => g.with_prime(p)?,
            None => g,
        })
    }

    /// Extraspecial group of order `p³` for an odd prime `p`.
    pub fn extraspecial(p: u64, kind: ExtraspecialKind) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::UnsupportedPrime(p));
        }
        let p = p as usize;
        let order = p * p * p;
        let mut table = Vec::with_capacity(order * order);
        match kind {
            ExtraspecialKind::ExponentP => {
                // (a, b, c) at a·p² + b·p + c; (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')
                let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
                for x in 0..order {
                    let (a, b, c) = split(x);
                    for y in 0..order {
                        let (a2, b2, c2) = split(y);
                        let r = ((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                        table.push(r.0 * p * p + r.1 * p + r.2);
                    }
                }
            }
            ExtraspecialKind::ExponentP2 => {
                // x^i y^j at i·p + j; y^j x^k y^{-j} = x^{k(1+p)^j}
                let m = p * p;
                let twist: Vec<usize> = (0..p)
                    .scan(1usize, |acc, _| {
                        let cur = *acc;
                        *acc = *acc * (1 + p) % m;
                        Some(cur)
                    })
                    .collect();
                for x in 0..order {
                    let (i, j) = (x / p, x % p);
                    for y in 0..order {
                        let (k, l) = (y / p, y % p);
                        let ii = (i + k * twist[j]) % m;
                        table.push(ii * p + (j + l) % p);
                    }
                }
            }
        }
        Group::from_table(order, table)?.with_prime(p as u64)
    }

    /// Same abstract group with element `a` renamed to `relabel[a]`.
    pub fn relabeled(&self, relabel: &[usize]) -> Result<Group> {
        let n = self.order;
        if relabel.len() != n || relabel.first() != Some(&0) {
            return Err(Error::InvalidTable("relabeling must fix the identity".into()));
        }
        let mut seen = vec![false; n];
        for &r in relabel {
            if r >= n || std::mem::replace(&mut seen[r], true) {
                return Err(Error::InvalidTable("relabeling is not a bijection".into()));
            }
        }
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel[a] * n + relabel[b]] = relabel[self.mul(a, b)];
            }
        }
        let mut g = Group::from_table(n, table)?;
        g.prime = self.prime;
        if let Some(labels) = &self.labels {
            let mut new = vec![String::new(); n];
            for a in 0..n {
                new[relabel[a]] = labels[a].clone();
            }
            g.labels = Some(new);
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x⁻¹ a x`
    #[inline]
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), a), x)
    }

    /// `a⁻¹ b⁻¹ a b`
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = 0;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn check_element(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::InvalidElement { index: a, order: self.order })
        }
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    /// Returns `p` when `|G| = p^k`, `k ≥ 1`; `None` for the trivial group or
    /// orders with two prime factors.
    pub fn p_group_prime(&self) -> Option<u64> {
        self.prime.or_else(|| prime_of_power(self.order as u64))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        is_power_of(self.order, p)
    }

    /// Fails unless `p` is prime and `|G|` is a power of `p`.
    pub fn require_p_group(&self, p: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::UnsupportedPrime(p));
        }
        if !self.is_p_group(p) {
            return Err(Error::NotPGroup { order: self.order, prime: p });
        }
        Ok(())
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|x| self.conj(a, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Greedy generating set: scan indices upward, keep each element not in
    /// the span of those already kept.
    pub fn generators(&self) -> Vec<usize> {
        self.whole().generators(self)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.order, (0..self.order).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.order, vec![0])
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `n = p^k` for some `k ≥ 0`.
pub fn is_power_of(n: usize, p: u64) -> bool {
    if p < 2 || n == 0 {
        return false;
    }
    let mut n = n as u64;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// The prime `p` with `n = p^k`, `k ≥ 1`.
pub fn prime_of_power(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    is_power_of(n as usize, p).then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(kind: ExtraspecialKind) -> Group {
        Group::extraspecial(3, kind).unwrap()
    }

    #[test]
    fn cyclic_basics() {
        let c1 = Group::cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        let c9 = Group::cyclic(9).unwrap();
        assert_eq!(c9.mul(4, 7), 2);
        assert_eq!(c9.element_order(3), 3);
        for k in 0..9 {
            assert_eq!(c9.element_order(k), 9 / gcd(9, k));
        }
        assert_eq!(c9.prime(), Some(3));
    }

    #[test]
    fn products() {
        let c3 = Group::cyclic(3).unwrap();
        let c9 = Group::cyclic(9).unwrap();
        let c3c3 = Group::direct_product(&c3, &c3);
        assert_eq!(c3c3.order(), 9);
        assert_eq!(c3c3.exponent(), 3);
        let c3c9 = Group::direct_product(&c3, &c9);
        assert_eq!(c3c9.element_order(9 + 1), 9);
        let c1 = Group::cyclic(1).unwrap();
        assert_eq!(Group::direct_product(&c1, &c9), c9);
        assert!(Group::from_table(c3c9.order(), c3c9.table().to_vec()).is_ok());
    }

    #[test]
    fn permutation_groups() {
        let c3 = Group::from_permutations(3, &[Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap()]).unwrap();
        assert_eq!(c3.order(), 3);
        assert!(c3.is_cyclic());
        let a = Permutation::from_cycles(9, &[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
        let b = Permutation::from_cycles(9, &[vec![1, 4, 7], vec![2, 5, 8], vec![3, 6, 9]]).unwrap();
        let g = Group::from_permutations(9, &[a, b]).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.exponent(), 3);
        assert!(g.is_abelian());
        let t = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let c2 = Group::from_permutations(3, &[t]).unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.require_p_group(3), Err(Error::NotPGroup { order: 2, prime: 3 }));
    }

    #[test]
    fn permutation_cap() {
        let a = Permutation::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap();
        let b = Permutation::from_cycles(5, &[vec![1, 2]]).unwrap();
        assert_eq!(Group::from_permutations_capped(5, &[a, b], 100), Err(Error::GroupTooLarge { cap: 100 }));
    }

    #[test]
    fn extraspecial_exponent_p() {
        let g = es(ExtraspecialKind::ExponentP);
        assert_eq!(g.order(), 27);
        assert!((1..27).all(|a| g.element_order(a) == 3));
        assert!(!g.is_abelian());
    }

    #[test]
    fn extraspecial_exponent_p2() {
        let g = es(ExtraspecialKind::ExponentP2);
        assert_eq!(g.order(), 27);
        // x = (1, 0) sits at index 1·p + 0
        assert_eq!(g.element_order(3), 9);
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 9);
    }

    #[test]
    fn extraspecial_rejects_bad_primes() {
        assert_eq!(Group::extraspecial(2, ExtraspecialKind::ExponentP).unwrap_err(), Error::UnsupportedPrime(2));
        assert_eq!(Group::extraspecial(9, ExtraspecialKind::ExponentP2).unwrap_err(), Error::UnsupportedPrime(9));
    }

    #[test]
    fn class_equation() {
        for g in [es(ExtraspecialKind::ExponentP), es(ExtraspecialKind::ExponentP2), Group::cyclic(27).unwrap()] {
            let classes = g.conjugacy_classes();
            assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
        }
        // 3 central classes plus 8 of size 3
        assert_eq!(es(ExtraspecialKind::ExponentP).conjugacy_classes().len(), 11);
    }

    #[test]
    fn rejects_broken_tables() {
        assert!(Group::from_table(2, vec![0, 1, 1, 1]).is_err());
        // identity law fails
        assert!(Group::from_table(2, vec![1, 0, 0, 1]).is_err());
        // a loop that is not associative: order 5 Latin square with identity
        #[rustfmt::skip]
        let loop5 = vec![
            0, 1, 2, 3, 4,
            1, 0, 3, 4, 2,
            2, 4, 0, 1, 3,
            3, 2, 4, 0, 1,
            4, 3, 1, 2, 0,
        ];
        assert!(matches!(Group::from_table(5, loop5), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn relabel_roundtrip() {
        let g = es(ExtraspecialKind::ExponentP2);
        let mut relabel: Vec<usize> = (0..27).collect();
        relabel[1..].reverse();
        let h = g.relabeled(&relabel).unwrap();
        assert_ne!(g, h);
        assert_eq!(h.exponent(), 9);
        assert_eq!(h.conjugacy_classes().len(), g.conjugacy_classes().len());
    }

    #[test]
    fn prime_helpers() {
        assert!(is_power_of(1, 3));
        assert!(is_power_of(81, 3));
        assert!(!is_power_of(18, 3));
        assert_eq!(prime_of_power(125), Some(5));
        assert_eq!(prime_of_power(12), None);
        assert_eq!(prime_of_power(1), None);
    }
}
