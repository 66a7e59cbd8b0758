//! Genetic subgroups of p-groups and the linkage relation between them.
//!
//! A subgroup `S ≤ P` is genetic when
//!
//! 1. for every `x ∈ P`, `S^x ∩ Z_P(S) ≤ S` holds exactly when `S^x = S`, and
//! 2. `N_P(S)/S` has normal rank 1 (for odd `p`: is cyclic),
//!
//! where `Z_P(S)` is the preimage in `N_P(S)` of the center of `N_P(S)/S`.
//! Genetic subgroups `S`, `T` are linked when some `x` satisfies
//! `S^x ∩ Z_P(T) ≤ T` and `ˣT ∩ Z_P(S) ≤ S`. Linkage classes are in bijection
//! with the simple rational representations of `P`.

use crate::error::{Error, Result};
use crate::group::{section, Group, Subgroup};

/// Preimage in `N_G(S)` of the center of `N_G(S)/S`.
pub fn relative_center(g: &Group, s: &Subgroup) -> Subgroup {
    relative_center_in(g, s, &s.normalizer(g))
}

fn relative_center_in(g: &Group, s: &Subgroup, normalizer: &Subgroup) -> Subgroup {
    let gens = normalizer.generators(g);
    let elements = normalizer
        .elements()
        .iter()
        .copied()
        .filter(|&n| gens.iter().all(|&m| s.contains(g.commutator(n, m))))
        .collect::<Vec<_>>();
    Subgroup::new(g, elements).expect("relative center is a subgroup")
}

/// Everything the genetic conditions need about one subgroup.
#[derive(Clone, Debug)]
pub(crate) struct SubgroupData {
    pub subgroup: Subgroup,
    pub normalizer: Subgroup,
    pub relative_center: Subgroup,
}

impl SubgroupData {
    pub fn new(g: &Group, s: &Subgroup) -> Self {
        let normalizer = s.normalizer(g);
        let relative_center = relative_center_in(g, s, &normalizer);
        SubgroupData { subgroup: s.clone(), normalizer, relative_center }
    }

    /// Order of the class of `n ∈ N_G(S)` in `N_G(S)/S`.
    fn class_order(&self, g: &Group, n: usize) -> usize {
        let mut k = 1;
        let mut x = n;
        while !self.subgroup.contains(x) {
            x = g.mul(x, n);
            k += 1;
        }
        k
    }

    pub fn quotient_order(&self) -> usize {
        self.normalizer.len() / self.subgroup.len()
    }

    /// Smallest element of `N_G(S)` whose class generates `N_G(S)/S`, if the
    /// quotient is cyclic.
    pub fn cyclic_generator(&self, g: &Group) -> Option<usize> {
        let m = self.quotient_order();
        self.normalizer.elements().iter().copied().find(|&n| self.class_order(g, n) == m)
    }

    pub fn generates_quotient(&self, g: &Group, n: usize) -> bool {
        self.normalizer.contains(n) && self.class_order(g, n) == self.quotient_order()
    }

    fn quotient_is_roquette(&self, g: &Group, p: u64) -> Result<bool> {
        if p != 2 {
            return Ok(self.cyclic_generator(g).is_some());
        }
        let q = section(g, &self.normalizer, &self.subgroup)?;
        q.group().is_roquette(p)
    }

    fn satisfies_conjugation_condition(&self, g: &Group) -> bool {
        (0..g.order()).all(|x| {
            let normalizes = self.normalizer.contains(x);
            let small_meet = self.subgroup.elements().iter().all(|&s| {
                let y = g.conj(s, x);
                !self.relative_center.contains(y) || self.subgroup.contains(y)
            });
            small_meet == normalizes
        })
    }

    pub fn is_genetic(&self, g: &Group, p: u64) -> Result<bool> {
        Ok(self.satisfies_conjugation_condition(g) && self.quotient_is_roquette(g, p)?)
    }

    /// `Sˣ ∩ Z(T) ≤ T` and `ˣT ∩ Z(S) ≤ S`.
    pub fn linked_by(&self, other: &SubgroupData, g: &Group, x: usize) -> bool {
        let (s, t) = (self, other);
        let xinv = g.inv(x);
        s.subgroup.elements().iter().all(|&a| {
            let y = g.conj(a, x);
            !t.relative_center.contains(y) || t.subgroup.contains(y)
        }) && t.subgroup.elements().iter().all(|&b| {
            let y = g.conj(b, xinv);
            !s.relative_center.contains(y) || s.subgroup.contains(y)
        })
    }

    pub fn linkage_witness(&self, other: &SubgroupData, g: &Group) -> Option<usize> {
        (0..g.order()).find(|&x| self.linked_by(other, g, x))
    }

    pub fn linkage_witnesses(&self, other: &SubgroupData, g: &Group) -> Vec<usize> {
        (0..g.order()).filter(|&x| self.linked_by(other, g, x)).collect()
    }
}

/// Whether `s` is a genetic subgroup of the `p`-group `g`.
pub fn is_genetic(g: &Group, s: &Subgroup, p: u64) -> Result<bool> {
    g.require_p_group(p)?;
    SubgroupData::new(g, s).is_genetic(g, p)
}

/// Smallest `x` linking `s` and `t` modulo `g`, if any.
pub fn linked(g: &Group, s: &Subgroup, t: &Subgroup) -> Option<usize> {
    SubgroupData::new(g, s).linkage_witness(&SubgroupData::new(g, t), g)
}

/// All genetic subgroups partitioned into linkage classes.
#[derive(Clone, Debug)]
pub struct LinkageClasses {
    pub(crate) genetic: Vec<SubgroupData>,
    /// Indices into `genetic`; each class is sorted and the classes are
    /// ordered by their first (canonically smallest) member.
    pub classes: Vec<Vec<usize>>,
}

impl LinkageClasses {
    /// Genetic subgroups in canonical order.
    pub fn genetic_subgroups(&self) -> impl Iterator<Item = &Subgroup> {
        self.genetic.iter().map(|d| &d.subgroup)
    }

    pub fn representatives(&self) -> Vec<Subgroup> {
        self.classes.iter().map(|c| self.genetic[c[0]].subgroup.clone()).collect()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Index of the class containing `s`, if `s` is genetic.
    pub fn class_of(&self, s: &Subgroup) -> Option<usize> {
        let i = self.genetic.iter().position(|d| d.subgroup == *s)?;
        self.classes.iter().position(|c| c.contains(&i))
    }
}

/// Filters the subgroup lattice by the genetic conditions and partitions the
/// result by linkage. Reflexivity, symmetry and transitivity of linkage are
/// checked rather than assumed.
pub fn linkage_classes(g: &Group, p: u64) -> Result<LinkageClasses> {
    g.require_p_group(p)?;
    let mut genetic = Vec::new();
    for s in g.all_subgroups()? {
        let data = SubgroupData::new(g, &s);
        if data.is_genetic(g, p)? {
            genetic.push(data);
        }
    }
    let k = genetic.len();
    let mut link = vec![false; k * k];
    for i in 0..k {
        if genetic[i].linkage_witness(&genetic[i], g) != Some(0) {
            return Err(Error::InvariantViolation("linkage is not reflexive".into()));
        }
        link[i * k + i] = true;
        for j in i + 1..k {
            let w = genetic[i].linkage_witness(&genetic[j], g);
            if let Some(x) = w {
                if !genetic[j].linked_by(&genetic[i], g, g.inv(x)) {
                    return Err(Error::InvariantViolation("linkage is not symmetric".into()));
                }
            }
            link[i * k + j] = w.is_some();
            link[j * k + i] = w.is_some();
        }
    }
    for i in 0..k {
        for j in 0..k {
            if !link[i * k + j] {
                continue;
            }
            for l in 0..k {
                if link[j * k + l] && !link[i * k + l] {
                    return Err(Error::InvariantViolation(format!(
                        "linkage is not transitive on a group of order {}",
                        g.order()
                    )));
                }
            }
        }
    }
    let mut assigned = vec![false; k];
    let mut classes = Vec::new();
    for i in 0..k {
        if assigned[i] {
            continue;
        }
        let class: Vec<usize> = (i..k).filter(|&j| link[i * k + j]).collect();
        for &j in &class {
            assigned[j] = true;
        }
        classes.push(class);
    }
    Ok(LinkageClasses { genetic, classes })
}

/// Canonical genetic basis: the smallest member of each linkage class.
pub fn genetic_basis(g: &Group, p: u64) -> Result<Vec<Subgroup>> {
    require_odd_prime(p)?;
    Ok(linkage_classes(g, p)?.representatives())
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::OddPrimesOnly(p));
    }
    if !crate::group::is_prime(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    Ok(())
}
