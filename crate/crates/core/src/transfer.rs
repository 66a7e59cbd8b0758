//! Generalized transfer along left-free bisets and the action of bisets on
//! genomes.
//!
//! For a left-free `(H, G)`-biset `Ω` with `H`-orbit representatives `[H\Ω]`,
//! each `g ∈ G` and representative `x` give a unique factorization
//! `x·g = h_{g,x}·σ_g(x)`. The transfer `Ver_Ω(g)` is the image of
//! `∏_x h_{g,x}` in `H/[H,H]`.
//!
//! A `(Q, P)`-biset `U` acts on genomes factorwise: the component from the
//! factor at `S ≤ P` to the factor at `T ≤ Q` is the product over the
//! `(N_Q(T), N_P(S))`-orbits `ω` of `U` with `Tᵘ ∩ N_P(S) ≤ S` and
//! `ᵘS ∩ N_Q(T) ≤ T` of the transfers along `T\ω/S`.

use std::sync::Arc;

use crate::biset::Biset;
use crate::error::{Error, Result};
use crate::genome::{GenomeDescriptor, GenomeMap};
use crate::group::{abelianization, Group, Quotient};

/// A homomorphism `G → H/[H,H]`, stored by its value on every `g ∈ G`.
#[derive(Clone, Debug)]
pub struct AbelianHom {
    source: Arc<Group>,
    target: Arc<Group>,
    abelianization: Quotient,
    images: Vec<usize>,
}

impl PartialEq for AbelianHom {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.images == other.images
    }
}

impl Eq for AbelianHom {}

impl AbelianHom {
    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    /// The group `H`; images live in its abelianization.
    pub fn target(&self) -> &Arc<Group> {
        &self.target
    }

    pub fn abelianization(&self) -> &Quotient {
        &self.abelianization
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    /// Smallest element of `H` in the class `c` of `H/[H,H]`.
    pub fn lift(&self, c: usize) -> usize {
        let pi = &self.abelianization.projection;
        (0..self.target.order()).find(|&h| pi.apply(h) == c).expect("projection is onto")
    }

    /// Smallest element of `H` in each class of `H/[H,H]`.
    fn lifts(&self) -> Vec<usize> {
        let pi = &self.abelianization.projection;
        let mut lift = vec![usize::MAX; self.abelianization.group.order()];
        for h in (0..self.target.order()).rev() {
            lift[pi.apply(h)] = h;
        }
        lift
    }

    /// `next ∘ self`, where `next` is defined on the group `self` maps into.
    pub fn then(&self, next: &AbelianHom) -> Result<AbelianHom> {
        if *self.target != *next.source {
            return Err(Error::GroupMismatch("composed transfers do not meet".into()));
        }
        let lift = self.lifts();
        let images = self.images.iter().map(|&c| next.images[lift[c]]).collect();
        Ok(AbelianHom {
            source: self.source.clone(),
            target: next.target.clone(),
            abelianization: next.abelianization.clone(),
            images,
        })
    }

    /// Pointwise product `g ↦ self(g)·other(g)`.
    pub fn add(&self, other: &AbelianHom) -> Result<AbelianHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::GroupMismatch("sum of transfers over different groups".into()));
        }
        let ab = &self.abelianization.group;
        let images = self.images.iter().zip(&other.images).map(|(&a, &b)| ab.mul(a, b)).collect();
        Ok(AbelianHom { images, ..self.clone() })
    }
}

/// `Ver_Ω` with the smallest point of each `H`-orbit as representative.
pub fn verlagerung(omega: &Biset) -> Result<AbelianHom> {
    if !omega.is_left_free() {
        return Err(Error::NotLeftFree);
    }
    let reps = omega.double_cosets(&omega.left().whole(), &omega.right().trivial());
    verlagerung_with_representatives(omega, &reps)
}

/// `Ver_Ω` computed from the given `H`-orbit representatives, one per orbit,
/// multiplying the `h_{g,x}` in the order given.
pub fn verlagerung_with_representatives(omega: &Biset, reps: &[usize]) -> Result<AbelianHom> {
    if !omega.is_left_free() {
        return Err(Error::NotLeftFree);
    }
    let (h, g) = (omega.left(), omega.right());
    let mut coord = vec![(usize::MAX, usize::MAX); omega.size()];
    for (i, &r) in reps.iter().enumerate() {
        if r >= omega.size() {
            return Err(Error::InvalidElement { index: r, order: omega.size() });
        }
        for a in 0..h.order() {
            let y = omega.act_left(a, r);
            if coord[y].0 != usize::MAX {
                return Err(Error::InvalidBiset("two representatives share an orbit".into()));
            }
            coord[y] = (a, i);
        }
    }
    if coord.iter().any(|c| c.0 == usize::MAX) {
        return Err(Error::InvalidBiset("representatives miss an orbit".into()));
    }
    let ab = abelianization(h)?;
    let images: Vec<usize> = (0..g.order())
        .map(|x| {
            let product = reps.iter().fold(0, |acc, &r| h.mul(acc, coord[omega.act_right(r, x)].0));
            ab.projection.apply(product)
        })
        .collect();
    let abg = &ab.group;
    for a in 0..g.order() {
        for &s in &g.generators() {
            if images[g.mul(a, s)] != abg.mul(images[a], images[s]) {
                return Err(Error::InvariantViolation("transfer is not a homomorphism".into()));
            }
        }
    }
    Ok(AbelianHom { source: g.clone(), target: h.clone(), abelianization: ab, images })
}

/// The component `Γ(U)_{T,S}` as an exponent against the pinned generators,
/// where `S` is source factor `s` and `T` is target factor `t`.
pub fn genome_component(
    u: &Biset,
    source: &GenomeDescriptor,
    s: usize,
    target: &GenomeDescriptor,
    t: usize,
) -> Result<u64> {
    check_descriptors(u, source, target)?;
    let (fs, ft) = (&source.factors()[s], &target.factors()[t]);
    if ft.order() == 1 || fs.order() == 1 {
        return Ok(0);
    }
    let mut exponent = 0;
    for w in u.double_cosets(ft.normalizer(), fs.normalizer()) {
        let tu = u.transport_right(w, ft.subgroup())?;
        if !tu.intersection(fs.normalizer()).is_subgroup_of(fs.subgroup()) {
            continue;
        }
        let us = u.transport_left(w, fs.subgroup())?;
        if !us.intersection(ft.normalizer()).is_subgroup_of(ft.subgroup()) {
            continue;
        }
        let q = u.quotient_biset(ft.section(), fs.section(), w)?;
        if !q.is_left_free() || !q.is_right_free() {
            return Err(Error::InvariantViolation(format!(
                "contributing orbit of point {w} is not left and right free"
            )));
        }
        let ver = verlagerung(&q)?;
        let a = fs.section().class_of(fs.generator()).expect("generator normalizes S");
        let lifted = ft.section().rep(ver.lift(ver.apply(a)));
        exponent = (exponent + ft.exponent_of(lifted).expect("section representative")) % ft.order();
    }
    Ok(exponent)
}

/// `Γ(U): Γ(P) → Γ(Q)` for a `(Q, P)`-biset `U`.
pub fn genome_map(u: &Biset, source: &Arc<GenomeDescriptor>, target: &Arc<GenomeDescriptor>) -> Result<GenomeMap> {
    check_descriptors(u, source, target)?;
    let entries = (0..target.len())
        .map(|t| (0..source.len()).map(|s| genome_component(u, source, s, target, t)).collect())
        .collect::<Result<Vec<Vec<u64>>>>()?;
    GenomeMap::new(source.clone(), target.clone(), entries)
}

fn check_descriptors(u: &Biset, source: &GenomeDescriptor, target: &GenomeDescriptor) -> Result<()> {
    if **source.group() != **u.right() || **target.group() != **u.left() {
        return Err(Error::DescriptorMismatch("descriptors do not match the biset's groups".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genome::genome;
    use crate::group::{ExtraspecialKind, Subgroup};

    fn c(n: usize) -> Arc<Group> {
        Arc::new(Group::cyclic(n).unwrap())
    }

    #[test]
    fn classical_transfer_is_power_map() {
        let g = c(9);
        let h = Subgroup::generated(&g, &[3]).unwrap();
        let omega = Biset::restriction(&g, &h);
        let ver = verlagerung(&omega).unwrap();
        // H ≅ C3 with element i standing for 3i; 1 ↦ 1³ = 3, i.e. element 1 of H
        assert_eq!(h.elements()[ver.lift(ver.apply(1))], 3);
        for x in 0..9 {
            assert_eq!(h.elements()[ver.lift(ver.apply(x))], g.pow(x, 3));
        }
    }

    #[test]
    fn identity_transfer_is_projection() {
        let g = Arc::new(Group::extraspecial(3, ExtraspecialKind::ExponentP).unwrap());
        let ver = verlagerung(&Biset::identity(g.clone())).unwrap();
        assert_eq!(ver.images(), abelianization(&g).unwrap().projection.images());
    }

    #[test]
    fn subgroup_pair_transfer() {
        // D = C3, C = C9, E = {0,3,6}, φ(3) = 1: Ver(1) = φ(3) = 1
        let (d, cc) = (c(3), c(9));
        let prod = Group::direct_product(&d, &cc);
        let b = Subgroup::generated(&prod, &[9 + 3]).unwrap();
        let omega = Biset::from_subgroup_pair(d, cc, &b).unwrap();
        let ver = verlagerung(&omega).unwrap();
        assert_eq!(ver.apply(1), 1);
        assert_eq!(ver.apply(2), 2);
    }

    #[test]
    fn not_left_free() {
        let g = c(9);
        let n = Subgroup::generated(&g, &[3]).unwrap();
        let inf = Biset::inflation(&g, &n).unwrap();
        assert_eq!(verlagerung(&inf).unwrap_err(), Error::NotLeftFree);
    }

    #[test]
    fn identity_genome_map() {
        for g in [c(27), Arc::new(Group::extraspecial(3, ExtraspecialKind::ExponentP2).unwrap())] {
            let d = Arc::new(genome(&g, 3).unwrap());
            let m = genome_map(&Biset::identity(g.clone()), &d, &d).unwrap();
            assert_eq!(m, GenomeMap::identity(d));
        }
    }

    #[test]
    fn inflation_and_deflation_on_c9() {
        let g = c(9);
        let n = Subgroup::generated(&g, &[3]).unwrap();
        let inf = Biset::inflation(&g, &n).unwrap();
        let dp = Arc::new(genome(&g, 3).unwrap());
        let dq = Arc::new(genome(inf.right(), 3).unwrap());
        let m = genome_map(&inf, &dq, &dp).unwrap();
        // Γ(C3) = C3 × 1 at S̄ = 1, C3; Γ(C9) = C9 × C3 × 1 at S = 1, N, C9
        assert_eq!(m.entries(), &[vec![0, 0], vec![1, 0], vec![0, 0]]);
        let def = Biset::deflation(&g, &n).unwrap();
        let m = genome_map(&def, &dp, &dq).unwrap();
        assert_eq!(m.entries(), &[vec![0, 1, 0], vec![0, 0, 0]]);
    }
}
