use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use super::Group;
use crate::error::{Error, Result};

/// Largest order [`Group::all_subgroups`] accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 243;

/// A subgroup as a sorted list of element indices of its ambient group.
///
/// Subgroups do not hold a reference to the ambient group; every operation
/// that needs the multiplication takes it explicitly. Canonical order is by
/// size, then lexicographically by element list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    members: FixedBitSet,
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements.len().cmp(&other.elements.len()).then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.elements).finish()
    }
}

impl Subgroup {
    pub(crate) fn from_sorted_unchecked(ambient_order: usize, elements: Vec<usize>) -> Self {
        let mut members = FixedBitSet::with_capacity(ambient_order);
        for &e in &elements {
            members.insert(e);
        }
        Subgroup { elements, members }
    }

    fn from_members(members: FixedBitSet) -> Self {
        let elements = members.ones().collect();
        Subgroup { elements, members }
    }

    /// Validates that `elements` form a subgroup of `g`.
    pub fn new(g: &Group, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elements: Vec<usize> = elements.into_iter().collect();
        for &e in &elements {
            g.check_element(e)?;
        }
        elements.sort_unstable();
        elements.dedup();
        let s = Subgroup::from_sorted_unchecked(g.order(), elements);
        if !s.contains(0) {
            return Err(Error::NotSubgroup("missing the identity".into()));
        }
        for &a in &s.elements {
            if !s.contains(g.inv(a)) {
                return Err(Error::NotSubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &s.elements {
                if !s.contains(g.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("not closed at {a}·{b}")));
                }
            }
        }
        assert_eq!(g.order() % s.len(), 0, "Lagrange");
        Ok(s)
    }

    /// Smallest subgroup of `g` containing `seeds`.
    pub fn generated(g: &Group, seeds: &[usize]) -> Result<Self> {
        for &s in seeds {
            g.check_element(s)?;
        }
        Ok(closure(g, std::iter::once(0), seeds))
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    #[inline]
    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    /// `self ≤ other`
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.len() <= other.len() && self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_members(&self.members & &other.members)
    }

    /// `|self ∩ other| = 1`
    pub fn meets_trivially(&self, other: &Subgroup) -> bool {
        self.members.intersection_count(&other.members) == 1
    }

    /// `S^x = x⁻¹ S x`
    pub fn conjugate(&self, g: &Group, x: usize) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(g.order());
        for &s in &self.elements {
            members.insert(g.conj(s, x));
        }
        Subgroup::from_members(members)
    }

    /// `ˣS = x S x⁻¹`
    pub fn left_conjugate(&self, g: &Group, x: usize) -> Subgroup {
        self.conjugate(g, g.inv(x))
    }

    pub fn join(&self, g: &Group, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators(g);
        gens.extend(other.generators(g));
        closure(g, self.elements.iter().copied(), &gens)
    }

    /// Greedy generating set, scanning elements in increasing index order.
    pub fn generators(&self, g: &Group) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::from_sorted_unchecked(g.order(), vec![0]);
        for &a in &self.elements {
            if !span.contains(a) {
                gens.push(a);
                span = closure(g, span.elements.iter().copied(), &gens);
                if span.len() == self.len() {
                    break;
                }
            }
        }
        gens
    }

    /// `N_G(S) = {x : S^x = S}`
    pub fn normalizer(&self, g: &Group) -> Subgroup {
        let gens = self.generators(g);
        let elements = (0..g.order()).filter(|&x| gens.iter().all(|&s| self.contains(g.conj(s, x)))).collect();
        Subgroup::from_sorted_unchecked(g.order(), elements)
    }

    pub fn is_normal_in(&self, g: &Group) -> bool {
        let gens = self.generators(g);
        let ggens = g.generators();
        ggens.iter().all(|&x| gens.iter().all(|&s| self.contains(g.conj(s, x))))
    }

    pub fn is_cyclic(&self, g: &Group) -> bool {
        self.elements.iter().any(|&a| g.element_order(a) == self.len())
    }

    pub fn is_abelian(&self, g: &Group) -> bool {
        let gens = self.generators(g);
        gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// The subgroup as a group in its own right: element `i` of the result
    /// is `self.elements()[i]`. Index 0 stays the identity.
    pub fn to_group(&self, g: &Group) -> Group {
        let n = self.len();
        let mut position = vec![usize::MAX; g.order()];
        for (i, &a) in self.elements.iter().enumerate() {
            position[a] = i;
        }
        let table = (0..n * n).map(|k| position[g.mul(self.elements[k / n], self.elements[k % n])]).collect();
        let sub = Group::from_table_trusted(n, table);
        let sub = match (g.prime(), n) {
            (Some(p), _) => sub.with_prime(p).expect("subgroup of a p-group"),
            _ => sub,
        };
        match g.labels() {
            Some(labels) => {
                sub.with_labels(self.elements.iter().map(|&a| labels[a].clone()).collect()).expect("label count")
            }
            None => sub,
        }
    }
}

/// Closes `start ∪ gens` under right multiplication by `gens`. `start` must
/// already be closed (or be `{1}`) for the result to be the generated subgroup.
fn closure(g: &Group, start: impl IntoIterator<Item = usize>, gens: &[usize]) -> Subgroup {
    let mut members = FixedBitSet::with_capacity(g.order());
    let mut queue: Vec<usize> = Vec::new();
    for s in start {
        if !members.put(s) {
            queue.push(s);
        }
    }
    let mut next = 0;
    while next < queue.len() {
        let a = queue[next];
        next += 1;
        for &s in gens {
            let b = g.mul(a, s);
            if !members.put(b) {
                queue.push(b);
            }
        }
    }
    Subgroup::from_members(members)
}

impl Group {
    /// `Z(G)`
    pub fn center(&self) -> Subgroup {
        let gens = self.generators();
        let elements = (0..self.order()).filter(|&z| gens.iter().all(|&x| self.mul(z, x) == self.mul(x, z))).collect();
        Subgroup::from_sorted_unchecked(self.order(), elements)
    }

    /// `[G, G]`, generated by all commutators.
    pub fn derived_subgroup(&self) -> Subgroup {
        let gens = self.generators();
        let mut commutators: Vec<usize> = gens
            .iter()
            .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .filter(|&c| c != 0)
            .collect();
        commutators.sort_unstable();
        commutators.dedup();
        // Normal closure of the generator commutators.
        let mut current = closure(self, std::iter::once(0), &commutators);
        loop {
            let conjugates: Vec<usize> = current
                .generators(self)
                .into_iter()
                .flat_map(|c| gens.iter().map(move |&x| (c, x)))
                .map(|(c, x)| self.conj(c, x))
                .filter(|&c| !current.contains(c))
                .collect();
            if conjugates.is_empty() {
                return current;
            }
            let mut all = current.generators(self);
            all.extend(conjugates);
            current = closure(self, current.elements.iter().copied(), &all);
        }
    }

    /// One subgroup per cyclic subgroup, canonical order.
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for a in 0..self.order() {
            let c = closure(self, std::iter::once(0), &[a]);
            if seen.insert(c.members.clone()) {
                out.push(c);
            }
        }
        out.sort();
        out
    }

    /// Every subgroup exactly once, canonical order, with the default cap.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.all_subgroups_capped(DEFAULT_ENUMERATION_CAP)
    }

    /// Iterated join-closure starting from the cyclic subgroups.
    pub fn all_subgroups_capped(&self, cap: usize) -> Result<Vec<Subgroup>> {
        if self.order() > cap {
            return Err(Error::EnumerationTooLarge { order: self.order(), cap });
        }
        let cyclic: Vec<(usize, Subgroup)> = self
            .cyclic_subgroups()
            .into_iter()
            .map(|c| {
                let gen = *c.elements.iter().find(|&&a| self.element_order(a) == c.len()).unwrap();
                (gen, c)
            })
            .collect();
        let mut seen: HashSet<FixedBitSet> = cyclic.iter().map(|(_, c)| c.members.clone()).collect();
        let mut all: Vec<(Subgroup, Vec<usize>)> = cyclic.iter().map(|(g, c)| (c.clone(), vec![*g])).collect();
        let mut frontier = 0..all.len();
        loop {
            let mut fresh = Vec::new();
            for idx in frontier.clone() {
                let (a, gens) = &all[idx];
                for (g, _) in &cyclic {
                    if a.contains(*g) {
                        continue;
                    }
                    let mut joined_gens = gens.clone();
                    joined_gens.push(*g);
                    let b = closure(self, a.elements.iter().copied(), &joined_gens);
                    if seen.insert(b.members.clone()) {
                        fresh.push((b, joined_gens));
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            let start = all.len();
            all.extend(fresh);
            frontier = start..all.len();
        }
        let mut subgroups: Vec<Subgroup> = all.into_iter().map(|(s, _)| s).collect();
        subgroups.sort();
        Ok(subgroups)
    }

    pub fn normal_subgroups(&self) -> Result<Vec<Subgroup>> {
        Ok(self.all_subgroups()?.into_iter().filter(|s| s.is_normal_in(self)).collect())
    }

    /// Normal rank 1: every normal abelian subgroup is cyclic.
    ///
    /// Computed from the subgroup lattice; for odd `p` the answer is also
    /// checked against cyclicity of `G`, which is equivalent.
    pub fn is_roquette(&self, p: u64) -> Result<bool> {
        self.require_p_group(p)?;
        let by_lattice = self
            .all_subgroups_capped(usize::MAX)?
            .iter()
            .filter(|s| s.is_normal_in(self) && s.is_abelian(self))
            .all(|s| s.is_cyclic(self));
        if p != 2 {
            let by_cyclicity = self.is_cyclic();
            if by_lattice != by_cyclicity {
                return Err(Error::InvariantViolation(format!(
                    "odd Roquette test disagrees with cyclicity for a group of order {}",
                    self.order()
                )));
            }
        }
        Ok(by_lattice)
    }
}
