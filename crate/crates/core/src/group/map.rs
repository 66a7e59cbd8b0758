use std::sync::Arc;

use super::{Group, Subgroup};
use crate::error::{Error, Result};

/// A homomorphism between two table groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    source: Arc<Group>,
    target: Arc<Group>,
    images: Vec<usize>,
}

impl GroupMap {
    pub fn new(source: Arc<Group>, target: Arc<Group>, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::NotHomomorphism(format!(
                "{} images for a source of order {}",
                images.len(),
                source.order()
            )));
        }
        for &i in &images {
            target.check_element(i)?;
        }
        if images[0] != 0 {
            return Err(Error::NotHomomorphism("identity not preserved".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(Error::NotHomomorphism(format!("fails at ({a}, {b})")));
                }
            }
        }
        Ok(GroupMap { source, target, images })
    }

    pub(crate) fn new_unchecked(source: Arc<Group>, target: Arc<Group>, images: Vec<usize>) -> Self {
        debug_assert_eq!(images.len(), source.order());
        GroupMap { source, target, images }
    }

    pub fn identity(g: Arc<Group>) -> Self {
        let images = (0..g.order()).collect();
        GroupMap { source: g.clone(), target: g, images }
    }

    /// Extends `gens[i] ↦ imgs[i]` to a homomorphism, if one exists.
    ///
    /// Walks the Cayley graph of `source` on `gens`; the assignment is a
    /// homomorphism exactly when every edge is consistent.
    pub fn from_generator_images(
        source: Arc<Group>,
        target: Arc<Group>,
        gens: &[usize],
        imgs: &[usize],
    ) -> Result<Self> {
        if gens.len() != imgs.len() {
            return Err(Error::NotHomomorphism("generator/image count mismatch".into()));
        }
        for (&g, &i) in gens.iter().zip(imgs) {
            source.check_element(g)?;
            target.check_element(i)?;
        }
        let mut images = vec![usize::MAX; source.order()];
        images[0] = 0;
        let mut queue = vec![0];
        let mut next = 0;
        while next < queue.len() {
            let a = queue[next];
            next += 1;
            for (&g, &i) in gens.iter().zip(imgs) {
                let b = source.mul(a, g);
                let fb = target.mul(images[a], i);
                if images[b] == usize::MAX {
                    images[b] = fb;
                    queue.push(b);
                } else if images[b] != fb {
                    return Err(Error::NotHomomorphism(format!("generator images are inconsistent at element {b}")));
                }
            }
        }
        if queue.len() != source.order() {
            return Err(Error::NotHomomorphism("generators do not generate the source".into()));
        }
        Ok(GroupMap { source, target, images })
    }

    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Group> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn kernel(&self) -> Subgroup {
        let ker = (0..self.source.order()).filter(|&a| self.images[a] == 0).collect();
        Subgroup::from_sorted_unchecked(self.source.order(), ker)
    }

    pub fn image(&self) -> Subgroup {
        let mut im = self.images.clone();
        im.sort_unstable();
        im.dedup();
        Subgroup::from_sorted_unchecked(self.target.order(), im)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// `next ∘ self`
    pub fn then(&self, next: &GroupMap) -> Result<GroupMap> {
        if *self.target != *next.source {
            return Err(Error::GroupMismatch("composed maps do not meet".into()));
        }
        let images = self.images.iter().map(|&a| next.images[a]).collect();
        Ok(GroupMap { source: self.source.clone(), target: next.target.clone(), images })
    }

    pub fn inverse(&self) -> Result<GroupMap> {
        if !self.is_isomorphism() {
            return Err(Error::NotIsomorphism("map is not bijective".into()));
        }
        let mut images = vec![0; self.images.len()];
        for (a, &b) in self.images.iter().enumerate() {
            images[b] = a;
        }
        Ok(GroupMap { source: self.target.clone(), target: self.source.clone(), images })
    }
}

/// A quotient group with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Arc<Group>,
    pub projection: GroupMap,
}

/// The section `N/S` of an ambient group, for `S ⊴ N`.
///
/// Cosets are indexed in increasing order of their smallest element, which is
/// also the coset representative, so the identity coset is index 0.
#[derive(Clone, Debug)]
pub struct Section {
    upper: Subgroup,
    lower: Subgroup,
    group: Arc<Group>,
    class_of: Vec<usize>,
    reps: Vec<usize>,
}

impl Section {
    pub fn upper(&self) -> &Subgroup {
        &self.upper
    }

    pub fn lower(&self) -> &Subgroup {
        &self.lower
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// Coset index of an ambient element of `N`.
    #[inline]
    pub fn class_of(&self, a: usize) -> Option<usize> {
        self.class_of.get(a).copied().filter(|&c| c != usize::MAX)
    }

    /// Smallest ambient element of the coset.
    #[inline]
    pub fn rep(&self, class: usize) -> usize {
        self.reps[class]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }
}

/// Builds `upper/lower`; `lower` must be a normal subgroup of `upper`.
pub fn section(g: &Group, upper: &Subgroup, lower: &Subgroup) -> Result<Section> {
    if !lower.is_subgroup_of(upper) {
        return Err(Error::NotSubgroup("lower term is not contained in the upper term".into()));
    }
    let lower_gens = lower.generators(g);
    let upper_gens = upper.generators(g);
    if !upper_gens.iter().all(|&x| lower_gens.iter().all(|&s| lower.contains(g.conj(s, x)))) {
        return Err(Error::NotNormal);
    }
    let mut class_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for &a in upper.elements() {
        if class_of[a] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(a);
        for &s in lower.elements() {
            class_of[g.mul(a, s)] = c;
        }
    }
    let n = reps.len();
    let table = (0..n * n).map(|k| class_of[g.mul(reps[k / n], reps[k % n])]).collect();
    let mut q = Group::from_table_trusted(n, table);
    if let Some(p) = g.prime() {
        q = q.with_prime(p)?;
    }
    Ok(Section { upper: upper.clone(), lower: lower.clone(), group: Arc::new(q), class_of, reps })
}

/// `G/N` with its projection.
pub fn quotient(g: &Arc<Group>, n: &Subgroup) -> Result<Quotient> {
    let s = section(g, &g.whole(), n)?;
    let images = (0..g.order()).map(|a| s.class_of[a]).collect();
    let projection = GroupMap::new_unchecked(g.clone(), s.group.clone(), images);
    Ok(Quotient { group: s.group, projection })
}

/// `G/[G, G]` with its projection.
pub fn abelianization(g: &Arc<Group>) -> Result<Quotient> {
    quotient(g, &g.derived_subgroup())
}
