//! The genome `Γ(P) = ∏_{S ∈ B} N_P(S)/S` of an odd p-group and
//! homomorphisms between genomes.
//!
//! For odd `p` every factor is cyclic, so a genome is presented by its basis
//! together with one pinned generator per factor. Elements are exponent
//! vectors and homomorphisms are exponent matrices.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::genetic::{linkage_classes, require_odd_prime, SubgroupData};
use crate::group::{section, Group, Section, Subgroup};

/// One cyclic factor `N_P(S)/S` of a genome.
#[derive(Clone)]
pub struct GenomeFactor {
    data: SubgroupData,
    order: u64,
    generator: usize,
    section: Section,
    /// Exponent of the class of each element of `N_P(S)`, `u64::MAX` outside.
    exponent: Vec<u64>,
}

impl GenomeFactor {
    fn new(g: &Group, data: SubgroupData, generator: usize) -> Result<Self> {
        let order = data.quotient_order() as u64;
        let section = section(g, &data.normalizer, &data.subgroup)?;
        let mut exponent = vec![u64::MAX; g.order()];
        let mut power = 0;
        for k in 0..order {
            for &s in data.subgroup.elements() {
                exponent[g.mul(power, s)] = k;
            }
            power = g.mul(power, generator);
        }
        Ok(GenomeFactor { data, order, generator, section, exponent })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.data.subgroup
    }

    pub fn normalizer(&self) -> &Subgroup {
        &self.data.normalizer
    }

    pub fn relative_center(&self) -> &Subgroup {
        &self.data.relative_center
    }

    /// `|N_P(S)/S|`
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Element of `N_P(S)` whose class is the pinned generator.
    pub fn generator(&self) -> usize {
        self.generator
    }

    /// The quotient `N_P(S)/S` as a group.
    pub fn section(&self) -> &Section {
        &self.section
    }

    /// `k` with `nS = g^k S`, for `n ∈ N_P(S)`.
    pub fn exponent_of(&self, n: usize) -> Option<u64> {
        self.exponent.get(n).copied().filter(|&e| e != u64::MAX)
    }
}

impl PartialEq for GenomeFactor {
    fn eq(&self, other: &Self) -> bool {
        self.data.subgroup == other.data.subgroup && self.generator == other.generator
    }
}

impl Eq for GenomeFactor {}

impl fmt::Debug for GenomeFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenomeFactor")
            .field("subgroup", &self.data.subgroup)
            .field("order", &self.order)
            .field("generator", &self.generator)
            .finish()
    }
}

/// A presentation of `Γ(P)`: a genetic basis with pinned generators.
#[derive(Clone, PartialEq, Eq)]
pub struct GenomeDescriptor {
    group: Arc<Group>,
    prime: u64,
    factors: Vec<GenomeFactor>,
}

impl fmt::Debug for GenomeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenomeDescriptor")
            .field("order", &self.group.order())
            .field("prime", &self.prime)
            .field("factors", &self.factors)
            .finish()
    }
}

/// The genome of `g` over its canonical genetic basis, with each factor's
/// generator the smallest element index whose class generates it.
pub fn genome(g: &Arc<Group>, p: u64) -> Result<GenomeDescriptor> {
    require_odd_prime(p)?;
    let classes = linkage_classes(g, p)?;
    let mut factors = Vec::with_capacity(classes.classes.len());
    for class in &classes.classes {
        let data = classes.genetic[class[0]].clone();
        let generator = data
            .cyclic_generator(g)
            .ok_or_else(|| Error::InvariantViolation("genetic quotient is not cyclic for odd p".into()))?;
        factors.push(GenomeFactor::new(g, data, generator)?);
    }
    Ok(GenomeDescriptor { group: g.clone(), prime: p, factors })
}

impl GenomeDescriptor {
    /// Builds a descriptor from a user-chosen basis, validating that it is a
    /// genetic basis. Missing generators get the canonical choice.
    pub fn from_factors(
        g: &Arc<Group>,
        p: u64,
        factors: impl IntoIterator<Item = (Subgroup, Option<usize>)>,
    ) -> Result<Self> {
        require_odd_prime(p)?;
        g.require_p_group(p)?;
        let mut built: Vec<GenomeFactor> = Vec::new();
        for (s, generator) in factors {
            let data = SubgroupData::new(g, &s);
            if !data.is_genetic(g, p)? {
                return Err(Error::NotGenetic(format!("{:?}", s.elements())));
            }
            if let Some(other) = built.iter().find(|f| f.data.linkage_witness(&data, g).is_some()) {
                return Err(Error::NotGeneticBasis(format!(
                    "{:?} and {:?} are linked",
                    other.subgroup().elements(),
                    s.elements()
                )));
            }
            let generator = match generator {
                Some(n) => {
                    g.check_element(n)?;
                    if !data.generates_quotient(g, n) {
                        return Err(Error::NotGeneticBasis(format!(
                            "{n} does not generate N(S)/S for S = {:?}",
                            s.elements()
                        )));
                    }
                    n
                }
                None => data.cyclic_generator(g).expect("genetic quotient is cyclic"),
            };
            built.push(GenomeFactor::new(g, data, generator)?);
        }
        let expected = linkage_classes(g, p)?.classes.len();
        if built.len() != expected {
            return Err(Error::NotGeneticBasis(format!(
                "{} factors, but there are {expected} linkage classes",
                built.len()
            )));
        }
        Ok(GenomeDescriptor { group: g.clone(), prime: p, factors: built })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn factors(&self) -> &[GenomeFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor_orders(&self) -> Vec<u64> {
        self.factors.iter().map(GenomeFactor::order).collect()
    }

    /// `|Γ(P)|`
    pub fn genome_order(&self) -> u64 {
        self.factors.iter().map(GenomeFactor::order).product()
    }

    /// Position of the factor whose subgroup is `s`.
    pub fn position(&self, s: &Subgroup) -> Option<usize> {
        self.factors.iter().position(|f| f.subgroup() == s)
    }

    pub fn element(&self, exponents: Vec<u64>) -> Result<GenomeElement> {
        if exponents.len() != self.len() {
            return Err(Error::DescriptorMismatch(format!("{} exponents for {} factors", exponents.len(), self.len())));
        }
        if let Some((i, _)) = exponents.iter().zip(&self.factors).enumerate().find(|(_, (&e, f))| e >= f.order.max(1)) {
            return Err(Error::DescriptorMismatch(format!("exponent {i} out of range")));
        }
        Ok(GenomeElement { exponents })
    }

    /// The same basis with each generator replaced by `generators[i]`.
    pub fn with_generators(&self, generators: &[usize]) -> Result<Self> {
        let factors = self.factors.iter().zip(generators).map(|(f, &n)| (f.subgroup().clone(), Some(n)));
        GenomeDescriptor::from_factors(&self.group, self.prime, factors)
    }
}

/// Indices of the factors whose subgroup meets `Z(P)` trivially.
pub fn faithful_part(descriptor: &GenomeDescriptor) -> Vec<usize> {
    let center = descriptor.group.center();
    (0..descriptor.len()).filter(|&i| descriptor.factors[i].subgroup().meets_trivially(&center)).collect()
}

/// An element of `Γ(P)` as exponents against the pinned generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenomeElement {
    exponents: Vec<u64>,
}

impl GenomeElement {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }
}

/// A homomorphism `Γ(P) → Γ(Q)`: `entries[t][s] = e` means the generator of
/// source factor `s` contributes `generator_t^e` to target factor `t`.
#[derive(Clone, PartialEq, Eq)]
pub struct GenomeMap {
    source: Arc<GenomeDescriptor>,
    target: Arc<GenomeDescriptor>,
    entries: Vec<Vec<u64>>,
}

impl fmt::Debug for GenomeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenomeMap")
            .field("source_orders", &self.source.factor_orders())
            .field("target_orders", &self.target.factor_orders())
            .field("entries", &self.entries)
            .finish()
    }
}

impl GenomeMap {
    /// Validates shape, ranges, and `e·|source_s| ≡ 0 (mod |target_t|)`.
    pub fn new(source: Arc<GenomeDescriptor>, target: Arc<GenomeDescriptor>, entries: Vec<Vec<u64>>) -> Result<Self> {
        if entries.len() != target.len() || entries.iter().any(|row| row.len() != source.len()) {
            return Err(Error::DescriptorMismatch(format!("entry matrix is not {}×{}", target.len(), source.len())));
        }
        for (t, row) in entries.iter().enumerate() {
            let ot = target.factors[t].order;
            for (s, &e) in row.iter().enumerate() {
                let os = source.factors[s].order;
                if e >= ot.max(1) || !(e as u128 * os as u128).is_multiple_of(ot as u128) {
                    return Err(Error::NotHomomorphism(format!(
                        "entry ({t}, {s}) = {e} between cyclic groups of orders {os} → {ot}"
                    )));
                }
            }
        }
        Ok(GenomeMap { source, target, entries })
    }

    pub fn identity(descriptor: Arc<GenomeDescriptor>) -> Self {
        let n = descriptor.len();
        let entries =
            (0..n).map(|t| (0..n).map(|s| u64::from(s == t) % descriptor.factors[t].order).collect()).collect();
        GenomeMap { source: descriptor.clone(), target: descriptor, entries }
    }

    pub fn source(&self) -> &Arc<GenomeDescriptor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GenomeDescriptor> {
        &self.target
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn entry(&self, t: usize, s: usize) -> u64 {
        self.entries[t][s]
    }

    pub fn apply(&self, a: &GenomeElement) -> Result<GenomeElement> {
        if a.exponents.len() != self.source.len() {
            return Err(Error::DescriptorMismatch("element does not belong to the source".into()));
        }
        let exponents = self
            .entries
            .iter()
            .zip(&self.target.factors)
            .map(|(row, f)| {
                let m = f.order as u128;
                let sum: u128 = row.iter().zip(&a.exponents).map(|(&e, &x)| e as u128 * x as u128 % m).sum();
                (sum % m) as u64
            })
            .collect();
        Ok(GenomeElement { exponents })
    }

    /// `next ∘ self`
    pub fn then(&self, next: &GenomeMap) -> Result<GenomeMap> {
        if self.target != next.source {
            return Err(Error::DescriptorMismatch("target of the first map is not the source of the second".into()));
        }
        let entries = next
            .entries
            .iter()
            .zip(&next.target.factors)
            .map(|(row, f)| {
                let m = f.order as u128;
                (0..self.source.len())
                    .map(|s| {
                        let sum: u128 =
                            row.iter().zip(&self.entries).map(|(&e2, r1)| e2 as u128 * r1[s] as u128 % m).sum();
                        (sum % m) as u64
                    })
                    .collect()
            })
            .collect();
        GenomeMap::new(self.source.clone(), next.target.clone(), entries)
    }

    /// Whether the map is injective, decided on the socle (the elements of
    /// order dividing `p`): a homomorphism of finite abelian p-groups is
    /// injective exactly when its restriction to the socle is, and that
    /// restriction is a linear map over `F_p`.
    pub fn is_injective(&self) -> bool {
        injective_on_factors(
            self.source.prime,
            &self.source.factor_orders(),
            &self.target.factor_orders(),
            &self.entries,
        )
    }

    pub fn is_bijective(&self) -> bool {
        self.source.genome_order() == self.target.genome_order() && self.is_injective()
    }
}

/// Injectivity of the homomorphism `∏ C_{source[s]} → ∏ C_{target[t]}` with
/// exponent matrix `entries[t][s]`, for p-power orders.
pub fn injective_on_factors(p: u64, source: &[u64], target: &[u64], entries: &[Vec<u64>]) -> bool {
    let cols: Vec<usize> = (0..source.len()).filter(|&s| source[s] > 1).collect();
    let rows: Vec<usize> = (0..target.len()).filter(|&t| target[t] > 1).collect();
    let mut matrix: Vec<Vec<u64>> = rows
        .iter()
        .map(|&t| {
            let ot = target[t];
            cols.iter()
                .map(|&s| {
                    let image = (entries[t][s] as u128 * (source[s] / p) as u128 % ot as u128) as u64;
                    image / (ot / p) % p
                })
                .collect()
        })
        .collect();
    rank_mod_p(&mut matrix, cols.len(), p) == cols.len()
}

fn rank_mod_p(matrix: &mut [Vec<u64>], cols: usize, p: u64) -> usize {
    let inverse = |a: u64| (1..p).find(|&b| a * b % p == 1).expect("nonzero mod p");
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..matrix.len()).find(|&r| matrix[r][c] != 0) else {
            continue;
        };
        matrix.swap(rank, pivot);
        let inv = inverse(matrix[rank][c]);
        for x in matrix[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..matrix.len() {
            if r != rank && matrix[r][c] != 0 {
                let f = matrix[r][c];
                let pivot_row = matrix[rank].clone();
                for (x, &y) in matrix[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The canonical isomorphism `Γ_B(P) → Γ_{B'}(P)` between two presentations
/// of the same genome.
///
/// For `S ∈ B` linked to `S' ∈ B'` by `x`, the class of `n ∈ N_P(S)` goes to
/// the class of the `n' ∈ N_P(S')` with `S·n·x·S' = S·x·n'·S'`. The result is
/// computed with the smallest and the largest witness and both must agree.
pub fn change_of_basis(from: &Arc<GenomeDescriptor>, to: &Arc<GenomeDescriptor>) -> Result<GenomeMap> {
    if from.group != to.group || from.prime != to.prime {
        return Err(Error::DescriptorMismatch("bases of different groups".into()));
    }
    let g = &from.group;
    let mut entries = vec![vec![0u64; from.len()]; to.len()];
    for (i, f) in from.factors.iter().enumerate() {
        let matches: Vec<(usize, Vec<usize>)> = to
            .factors
            .iter()
            .enumerate()
            .map(|(j, f2)| (j, f.data.linkage_witnesses(&f2.data, g)))
            .filter(|(_, w)| !w.is_empty())
            .collect();
        let [(j, witnesses)] = matches.as_slice() else {
            return Err(Error::NotGeneticBasis(format!(
                "{:?} is linked to {} members of the target basis",
                f.subgroup().elements(),
                matches.len()
            )));
        };
        let target = &to.factors[*j];
        let first = transported_exponent(g, f, target, witnesses[0])?;
        let last = transported_exponent(g, f, target, *witnesses.last().unwrap())?;
        if first != last {
            return Err(Error::InvariantViolation("change of basis depends on the linking element".into()));
        }
        entries[*j][i] = first;
    }
    GenomeMap::new(from.clone(), to.clone(), entries)
}

/// Exponent of `n'` with `S·n·x·S' = S·x·n'·S'`, `n` the generator of `from`.
fn transported_exponent(g: &Group, from: &GenomeFactor, to: &GenomeFactor, x: usize) -> Result<u64> {
    let (s, s2) = (from.subgroup(), to.subgroup());
    let nx = g.mul(from.generator, x);
    let mut double_coset = fixedbitset::FixedBitSet::with_capacity(g.order());
    for &a in s.elements() {
        let anx = g.mul(a, nx);
        for &b in s2.elements() {
            double_coset.insert(g.mul(anx, b));
        }
    }
    let mut found: Option<u64> = None;
    for &y in to.normalizer().elements() {
        if double_coset.contains(g.mul(x, y)) {
            let e = to.exponent_of(y).expect("y normalizes S'");
            match found {
                None => found = Some(e),
                Some(prev) if prev != e => {
                    return Err(Error::InvariantViolation("transported class is not unique".into()))
                }
                _ => {}
            }
        }
    }
    found.ok_or_else(|| Error::InvariantViolation("no transported class found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ExtraspecialKind;

    fn arc(g: Group) -> Arc<Group> {
        Arc::new(g)
    }

    fn sorted(mut v: Vec<u64>) -> Vec<u64> {
        v.sort_unstable();
        v
    }

    #[test]
    fn cyclic_genomes() {
        for n in 0..=3u32 {
            let g = arc(Group::cyclic(3usize.pow(n)).unwrap());
            let d = genome(&g, 3).unwrap();
            assert_eq!(d.factor_orders(), (0..=n).rev().map(|k| 3u64.pow(k)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn small_genomes() {
        let c3 = Group::cyclic(3).unwrap();
        let d = genome(&arc(Group::direct_product(&c3, &c3)), 3).unwrap();
        assert_eq!(sorted(d.factor_orders()), vec![1, 3, 3, 3, 3]);
        assert!(faithful_part(&d).is_empty());

        let g = arc(Group::extraspecial(3, ExtraspecialKind::ExponentP).unwrap());
        let d = genome(&g, 3).unwrap();
        assert_eq!(sorted(d.factor_orders()), vec![1, 3, 3, 3, 3, 3]);
        let faithful = faithful_part(&d);
        assert_eq!(faithful.len(), 1);
        assert_eq!(d.factors()[faithful[0]].subgroup().len(), 3);

        let c9 = arc(Group::cyclic(9).unwrap());
        let d = genome(&c9, 3).unwrap();
        assert_eq!(faithful_part(&d), vec![0]);
        assert_eq!(d.factors()[0].order(), 9);
    }

    #[test]
    fn generators_are_canonical() {
        let c9 = arc(Group::cyclic(9).unwrap());
        let d = genome(&c9, 3).unwrap();
        assert_eq!(d.factors().iter().map(GenomeFactor::generator).collect::<Vec<_>>(), vec![1, 1, 0]);
        let f = &d.factors()[1];
        assert_eq!(f.exponent_of(4), Some(1));
        assert_eq!(f.exponent_of(8), Some(2));
    }

    #[test]
    fn user_bases_are_validated() {
        let g = arc(Group::extraspecial(3, ExtraspecialKind::ExponentP).unwrap());
        let d = genome(&g, 3).unwrap();
        let subs: Vec<Subgroup> = d.factors().iter().map(|f| f.subgroup().clone()).collect();
        assert!(GenomeDescriptor::from_factors(&g, 3, subs.iter().cloned().map(|s| (s, None))).is_ok());
        let short = subs[1..].iter().cloned().map(|s| (s, None));
        assert!(matches!(GenomeDescriptor::from_factors(&g, 3, short), Err(Error::NotGeneticBasis(_))));
        let with_center = std::iter::once((g.center(), None));
        assert!(matches!(GenomeDescriptor::from_factors(&g, 3, with_center), Err(Error::NotGenetic(_))));
        let twice = [subs[0].clone(), subs[0].clone()].into_iter().map(|s| (s, None));
        assert!(matches!(GenomeDescriptor::from_factors(&g, 3, twice), Err(Error::NotGeneticBasis(_))));
    }

    #[test]
    fn genome_map_arithmetic() {
        let c9 = arc(Group::cyclic(9).unwrap());
        let d = Arc::new(genome(&c9, 3).unwrap());
        let id = GenomeMap::identity(d.clone());
        let a = d.element(vec![5, 2, 0]).unwrap();
        assert_eq!(id.apply(&a).unwrap(), a);
        // C9 → C3 factor: 1 ↦ 1 is a homomorphism, C3 → C9: 1 ↦ 1 is not
        assert!(GenomeMap::new(d.clone(), d.clone(), vec![vec![0; 3], vec![1, 0, 0], vec![0; 3]]).is_ok());
        assert!(GenomeMap::new(d.clone(), d.clone(), vec![vec![0, 1, 0], vec![0; 3], vec![0; 3]]).is_err());
        let m = GenomeMap::new(d.clone(), d.clone(), vec![vec![2, 3, 0], vec![1, 2, 0], vec![0; 3]]).unwrap();
        assert_eq!(id.then(&m).unwrap(), m);
        assert_eq!(m.then(&id).unwrap(), m);
        let mm = m.then(&m).unwrap();
        assert_eq!(mm.apply(&a).unwrap(), m.apply(&m.apply(&a).unwrap()).unwrap());
        assert!(id.is_bijective());
        // (a, b) ↦ (2a + 3b, a + 2b) has trivial kernel
        assert!(m.is_bijective());
        let k = GenomeMap::new(d.clone(), d.clone(), vec![vec![3, 0, 0], vec![0, 1, 0], vec![0; 3]]).unwrap();
        assert!(!k.is_injective());
    }

    #[test]
    fn change_of_basis_identity_and_conjugate() {
        let g = arc(Group::extraspecial(3, ExtraspecialKind::ExponentP).unwrap());
        let d = Arc::new(genome(&g, 3).unwrap());
        assert_eq!(change_of_basis(&d, &d).unwrap(), GenomeMap::identity(d.clone()));

        let i = faithful_part(&d)[0];
        let s = d.factors()[i].subgroup().clone();
        let x = (0..27).find(|&x| s.conjugate(&g, x) != s).unwrap();
        let moved: Vec<(Subgroup, Option<usize>)> = d
            .factors()
            .iter()
            .enumerate()
            .map(|(k, f)| {
                if k == i {
                    (f.subgroup().conjugate(&g, x), Some(g.conj(f.generator(), x)))
                } else {
                    (f.subgroup().clone(), Some(f.generator()))
                }
            })
            .collect();
        let d2 = Arc::new(GenomeDescriptor::from_factors(&g, 3, moved).unwrap());
        let gamma = change_of_basis(&d, &d2).unwrap();
        let back = change_of_basis(&d2, &d).unwrap();
        assert!(gamma.is_bijective());
        assert_eq!(gamma.then(&back).unwrap(), GenomeMap::identity(d.clone()));
        // conjugating the generator along with the subgroup transports it to itself
        assert_eq!(gamma.entry(i, i), 1);
    }
}
