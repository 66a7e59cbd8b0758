//! Seeded self-checks of the transfer and genome machinery.
//!
//! Every suite compares a computed object against an independent
//! description of the same object and tallies the outcome per identity.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::biset::Biset;
use crate::catalog::{catalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::genome::{change_of_basis, faithful_part, genome, injective_on_factors, GenomeDescriptor, GenomeMap};
use crate::group::{gcd, quotient, Group, GroupMap, Subgroup};
use crate::transfer::{genome_map, verlagerung, verlagerung_with_representatives};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Transfer,
    Functoriality,
    InfDef,
    Rationality,
    BasisIndependence,
    Faithful,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] =
        ["transfer", "functoriality", "infdef", "rationality", "basis-independence", "faithful", "all"];

    fn members(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![Transfer, Functoriality, InfDef, Rationality, BasisIndependence, Faithful],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        use Suite::*;
        Ok(match s {
            "transfer" => Transfer,
            "functoriality" => Functoriality,
            "infdef" => InfDef,
            "rationality" => Rationality,
            "basis-independence" => BasisIndependence,
            "faithful" => Faithful,
            "all" => All,
            _ => return Err(format!("unknown suite `{s}`; expected one of {}", Suite::NAMES.join(", "))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Suite::*;
        let i = [Transfer, Functoriality, InfDef, Rationality, BasisIndependence, Faithful, All]
            .iter()
            .position(|s| s == self)
            .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub prime: u64,
    pub max_order: usize,
    pub seed: u64,
    /// Random samples per sampled identity.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { prime: 3, max_order: 81, seed: 0, samples: 100 }
    }
}

/// Tally of one checked identity.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Check {
    pub suite: String,
    pub identity: String,
    pub passed: usize,
    pub failed: usize,
    /// The first few failures, described.
    pub failures: Vec<String>,
}

const MAX_REPORTED_FAILURES: usize = 5;

impl Check {
    fn new(suite: Suite, identity: &str) -> Self {
        Check { suite: suite.to_string(), identity: identity.into(), passed: 0, failed: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    /// Records a computation that may itself fail; an error counts as a
    /// failed check.
    fn record_result(&mut self, r: Result<bool>, describe: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, describe),
            Err(e) => {
                let d = describe();
                self.record(false, || format!("{d}: {e}"));
            }
        }
    }

    pub fn is_success(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub prime: u64,
    pub max_order: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn is_success(&self) -> bool {
        self.checks.iter().all(Check::is_success)
    }
}

pub fn run(suite: Suite, config: &VerifyConfig) -> Result<Report> {
    crate::genetic::require_odd_prime(config.prime)?;
    let mut checks = Vec::new();
    for s in suite.members() {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        checks.extend(match s {
            Suite::Transfer => transfer_suite(config, &mut rng)?,
            Suite::Functoriality => functoriality_suite(config, &mut rng)?,
            Suite::InfDef => infdef_suite(config)?,
            Suite::Rationality => rationality_suite(config)?,
            Suite::BasisIndependence => basis_independence_suite(config, &mut rng)?,
            Suite::Faithful => faithful_suite(config)?,
            Suite::All => unreachable!(),
        });
    }
    Ok(Report { prime: config.prime, max_order: config.max_order, seed: config.seed, checks })
}

// ---------------------------------------------------------------------------
// random bisets

/// The transitive `(H, G)`-biset `(H × G)/{(φ(e), e) : e ∈ E}`, which is left
/// free. `phi` is defined on `E` as returned by [`Subgroup::to_group`].
pub fn graph_biset(h: &Arc<Group>, g: &Arc<Group>, e: &Subgroup, phi: &GroupMap) -> Result<Biset> {
    let product = Group::direct_product(h, g);
    let graph = e.elements().iter().enumerate().map(|(i, &x)| phi.apply(i) * g.order() + x);
    let b = Subgroup::new(&product, graph)?;
    Biset::from_subgroup_pair(h.clone(), g.clone(), &b)
}

/// A uniformly chosen homomorphism on generators, falling back to the
/// trivial map after a few inconsistent draws.
pub fn random_hom(rng: &mut impl Rng, source: &Arc<Group>, target: &Arc<Group>) -> GroupMap {
    let gens = source.generators();
    for _ in 0..16 {
        let imgs: Vec<usize> = gens.iter().map(|_| rng.random_range(0..target.order())).collect();
        if let Ok(f) = GroupMap::from_generator_images(source.clone(), target.clone(), &gens, &imgs) {
            return f;
        }
    }
    let zeros = vec![0; gens.len()];
    GroupMap::from_generator_images(source.clone(), target.clone(), &gens, &zeros).expect("trivial map")
}

/// A random transitive left-free `(H, G)`-biset.
pub fn random_transitive_left_free(rng: &mut impl Rng, h: &Arc<Group>, g: &Arc<Group>) -> Result<Biset> {
    let subs = g.all_subgroups()?;
    let e = subs.choose(rng).expect("at least the trivial subgroup");
    let eg = Arc::new(e.to_group(g));
    let phi = random_hom(rng, &eg, h);
    graph_biset(h, g, e, &phi)
}

/// A random left-free `(H, G)`-biset with one or two transitive components.
pub fn random_left_free(rng: &mut impl Rng, h: &Arc<Group>, g: &Arc<Group>) -> Result<Biset> {
    let first = random_transitive_left_free(rng, h, g)?;
    if rng.random_bool(0.5) {
        first.disjoint_union(&random_transitive_left_free(rng, h, g)?)
    } else {
        Ok(first)
    }
}

fn groups_up_to(config: &VerifyConfig, bound: usize) -> Result<Vec<CatalogEntry>> {
    catalog(config.prime, config.max_order.min(bound))
}

// ---------------------------------------------------------------------------
// transfer

/// `Ver` on `(D × C)/{(φ(e), e)}` for cyclic `C`, `D` against
/// `a ↦ φ(a^{|C:E|})`, over every injective `φ: E → D`, `E ≤ C`.
pub fn closed_form_check(p: u64, max_order: usize) -> Result<Check> {
    let mut check = Check::new(Suite::Transfer, "Ver closed form on cyclic (D,C)-bisets");
    let orders: Vec<usize> = (0..).map(|k| (p as usize).pow(k)).take_while(|&n| n <= max_order).collect();
    for &nc in &orders {
        for &nd in &orders {
            let (c, d) = (Arc::new(Group::cyclic(nc)?), Arc::new(Group::cyclic(nd)?));
            for &ne in orders.iter().filter(|&&ne| ne <= nc.min(nd)) {
                let index = nc / ne;
                // E = ⟨index⟩ ≤ C; φ(index) runs over the elements of order ne in D
                for img in (0..nd).filter(|&y| d.element_order(y) == ne) {
                    let product = Group::direct_product(&d, &c);
                    let graph = (0..ne).map(|k| (k * img % nd) * nc + k * index % nc);
                    let b = Subgroup::new(&product, graph)?;
                    let omega = Biset::from_subgroup_pair(d.clone(), c.clone(), &b)?;
                    let describe = || format!("|C| = {nc}, |D| = {nd}, |E| = {ne}, φ({index}) = {img}");
                    let r = (|| {
                        if !(omega.is_transitive() && omega.is_left_free() && omega.is_right_free()) {
                            return Ok(false);
                        }
                        let ver = verlagerung(&omega)?;
                        Ok((0..nc).all(|a| {
                            let k = (a * index % nc) / index;
                            ver.lift(ver.apply(a)) == k * img % nd
                        }))
                    })();
                    check.record_result(r, describe);
                }
            }
        }
    }
    Ok(check)
}

fn transfer_suite(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let groups = groups_up_to(config, 27)?;
    let pick = |rng: &mut ChaCha8Rng| groups.choose(rng).expect("catalog is nonempty").group.clone();
    let closed = closed_form_check(config.prime, config.max_order.min(27))?;

    let mut reps = Check::new(Suite::Transfer, "Ver independent of orbit representatives");
    let mut iso = Check::new(Suite::Transfer, "Ver invariant under biset isomorphism");
    let mut additive = Check::new(Suite::Transfer, "Ver additive over disjoint unions");
    let samples = config.samples.max(50);
    for i in 0..samples {
        let (h, g) = (pick(rng), pick(rng));
        let omega = random_left_free(rng, &h, &g)?;
        let describe = || format!("sample {i}: (|H|, |G|, |Ω|) = ({}, {}, {})", h.order(), g.order(), omega.size());
        let canonical = verlagerung(&omega)?;

        let (_, orbit) = omega.orbits(&h.whole(), &g.trivial());
        let mut chosen: Vec<usize> = Vec::new();
        for id in 0..=orbit.iter().copied().max().unwrap_or(0) {
            let members: Vec<usize> = (0..omega.size()).filter(|&x| orbit[x] == id).collect();
            chosen.push(*members.choose(rng).expect("orbits are nonempty"));
        }
        chosen.shuffle(rng);
        reps.record_result(verlagerung_with_representatives(&omega, &chosen).map(|v| v == canonical), describe);

        let mut perm: Vec<usize> = (0..omega.size()).collect();
        perm.shuffle(rng);
        iso.record_result(omega.permuted(&perm).and_then(|o| verlagerung(&o)).map(|v| v == canonical), describe);

        let other = random_left_free(rng, &h, &g)?;
        let r = (|| Ok(verlagerung(&omega.disjoint_union(&other)?)? == canonical.add(&verlagerung(&other)?)?))();
        additive.record_result(r, describe);
    }

    let mut transitive = Check::new(Suite::Transfer, "Ver(Ω') ∘ Ver(Ω) = Ver(Ω' ×_H Ω)");
    for i in 0..config.samples.max(100) {
        let (k, h, g) = (pick(rng), pick(rng), pick(rng));
        let omega = random_transitive_left_free(rng, &h, &g)?;
        let omega2 = random_transitive_left_free(rng, &k, &h)?;
        let describe = || format!("sample {i}: (|K|, |H|, |G|) = ({}, {}, {})", k.order(), h.order(), g.order());
        let r = (|| {
            let composed = verlagerung(&omega2.compose(&omega)?)?;
            Ok(verlagerung(&omega)?.then(&verlagerung(&omega2)?)? == composed)
        })();
        transitive.record_result(r, describe);
    }
    Ok(vec![closed, reps, iso, additive, transitive])
}

// ---------------------------------------------------------------------------
// functoriality

/// One step of an elementary chain: a `(Y, X)`-biset for the current `X`.
struct Step {
    name: String,
    biset: Biset,
}

fn elementary_step(rng: &mut impl Rng, x: &Arc<Group>, config: &VerifyConfig) -> Result<Step> {
    let p = config.prime as usize;
    let grow = x.order() * p <= config.max_order;
    let kinds: &[&str] = if grow { &["id", "res", "def", "iso", "inf", "ind"] } else { &["id", "res", "def", "iso"] };
    let kind = *kinds.choose(rng).expect("nonempty");
    Ok(match kind {
        "id" => Step { name: "id".into(), biset: Biset::identity(x.clone()) },
        "res" => {
            let subs = x.all_subgroups()?;
            let h = subs.choose(rng).expect("nonempty");
            Step { name: format!("res[{}]", h.len()), biset: Biset::restriction(x, h) }
        }
        "def" => {
            let normals = x.normal_subgroups()?;
            let n = normals.choose(rng).expect("nonempty");
            Step { name: format!("def[{}]", n.len()), biset: Biset::deflation(x, n)? }
        }
        "iso" => {
            let mut perm: Vec<usize> = (1..x.order()).collect();
            perm.shuffle(rng);
            perm.insert(0, 0);
            let y = Arc::new(x.relabeled(&perm)?);
            let f = GroupMap::new(x.clone(), y, perm)?;
            Step { name: "iso".into(), biset: Biset::iso(&f)? }
        }
        _ => {
            // X × C_p; its quotient by 1 × C_p and its subgroup X × 1 both
            // carry exactly the multiplication table of X
            let cp = Group::cyclic(p)?;
            let y = Arc::new(Group::direct_product(x, &cp));
            if kind == "inf" {
                let n = Subgroup::generated(&y, &[1])?;
                Step { name: "inf".into(), biset: Biset::inflation(&y, &n)? }
            } else {
                let h = Subgroup::generated(&y, &x.generators().iter().map(|&a| a * p).collect::<Vec<_>>())?;
                Step { name: "ind".into(), biset: Biset::induction(&y, &h) }
            }
        }
    })
}

fn functoriality_suite(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let groups = groups_up_to(config, config.max_order)?;
    let mut check = Check::new(Suite::Functoriality, "Γ(V ×_H U) = Γ(V) ∘ Γ(U)");
    let mut identity = Check::new(Suite::Functoriality, "Γ(id) = id");
    for entry in &groups {
        let d = Arc::new(genome(&entry.group, config.prime)?);
        let r = genome_map(&Biset::identity(entry.group.clone()), &d, &d).map(|m| m == GenomeMap::identity(d.clone()));
        identity.record_result(r, || entry.spec.clone());
    }
    for i in 0..config.samples.max(100) {
        let start = groups.choose(rng).expect("catalog is nonempty");
        let mut x = start.group.clone();
        let mut steps = Vec::new();
        for _ in 0..rng.random_range(2..=3) {
            let step = elementary_step(rng, &x, config)?;
            x = step.biset.left().clone();
            steps.push(step);
        }
        let names: Vec<&str> = steps.iter().rev().map(|s| s.name.as_str()).collect();
        let describe = || format!("sample {i}: {} on {}", names.join(" * "), start.spec);
        let r = (|| {
            let mut descriptor = Arc::new(genome(steps[0].biset.right(), config.prime)?);
            let first = descriptor.clone();
            let mut composite: Option<(Biset, GenomeMap)> = None;
            for step in &steps {
                let next = Arc::new(genome(step.biset.left(), config.prime)?);
                let m = genome_map(&step.biset, &descriptor, &next)?;
                composite = Some(match composite {
                    None => (step.biset.clone(), m),
                    Some((u, mu)) => (step.biset.compose(&u)?, mu.then(&m)?),
                });
                descriptor = next;
            }
            let (u, expected) = composite.expect("chains are nonempty");
            Ok(genome_map(&u, &first, &descriptor)? == expected)
        })();
        check.record_result(r, describe);
    }
    Ok(vec![identity, check])
}

// ---------------------------------------------------------------------------
// inflation and deflation

/// The basis of `P/N` induced from `{S ∈ B : S ≥ N}`, with generators
/// transported along the projection. Returns the descriptor of `P/N` and,
/// for each of its factors, the index of the factor of `B` it came from.
pub fn induced_quotient_descriptor(
    descriptor: &GenomeDescriptor,
    n: &Subgroup,
) -> Result<(Arc<GenomeDescriptor>, Vec<usize>)> {
    let g = descriptor.group();
    let q = quotient(g, n)?;
    let pi = &q.projection;
    let mut origin = Vec::new();
    let mut factors = Vec::new();
    for (i, f) in descriptor.factors().iter().enumerate() {
        if n.is_subgroup_of(f.subgroup()) {
            let image = Subgroup::new(&q.group, f.subgroup().elements().iter().map(|&s| pi.apply(s)))?;
            factors.push((image, Some(pi.apply(f.generator()))));
            origin.push(i);
        }
    }
    let d = GenomeDescriptor::from_factors(&q.group, descriptor.prime(), factors)?;
    Ok((Arc::new(d), origin))
}

fn infdef_suite(config: &VerifyConfig) -> Result<Vec<Check>> {
    let mut inf = Check::new(Suite::InfDef, "Γ(Inf) embeds onto the factors with S ≥ N");
    let mut def = Check::new(Suite::InfDef, "Γ(Def) projects onto the factors with S ≥ N");
    let mut both = Check::new(Suite::InfDef, "Γ(Def) ∘ Γ(Inf) = id");
    for entry in groups_up_to(config, config.max_order)? {
        let g = &entry.group;
        let d = Arc::new(genome(g, config.prime)?);
        for n in g.normal_subgroups()? {
            let describe = || format!("{} with |N| = {} ({:?})", entry.spec, n.len(), n.elements());
            let (dq, origin) = match induced_quotient_descriptor(&d, &n) {
                Ok(x) => x,
                Err(e) => {
                    inf.record(false, || format!("{}: {e}", describe()));
                    continue;
                }
            };
            let embedding: Vec<Vec<u64>> = (0..d.len())
                .map(|t| (0..dq.len()).map(|s| u64::from(origin[s] == t) % d.factors()[t].order()).collect())
                .collect();
            let projection: Vec<Vec<u64>> =
                (0..dq.len()).map(|s| (0..d.len()).map(|t| embedding[t][s]).collect()).collect();
            let mi = Biset::inflation(g, &n).and_then(|u| genome_map(&u, &dq, &d));
            let md = Biset::deflation(g, &n).and_then(|u| genome_map(&u, &d, &dq));
            inf.record_result(mi.as_ref().map(|m| m.entries() == embedding).map_err(Clone::clone), describe);
            def.record_result(md.as_ref().map(|m| m.entries() == projection).map_err(Clone::clone), describe);
            let r = mi.and_then(|mi| Ok(mi.then(&md?)? == GenomeMap::identity(dq.clone())));
            both.record_result(r, describe);
        }
    }
    Ok(vec![inf, def, both])
}

// ---------------------------------------------------------------------------
// rationality

fn rationality_suite(config: &VerifyConfig) -> Result<Vec<Check>> {
    let mut column = Check::new(Suite::Rationality, "Γ(Indinf) embeds N(S)/S identically at S");
    let mut bijective = Check::new(Suite::Rationality, "assembled Indinf map is a bijection");
    for entry in groups_up_to(config, config.max_order)? {
        let g = &entry.group;
        let d = Arc::new(genome(g, config.prime)?);
        let mut assembled = vec![vec![0u64; d.len()]; d.len()];
        let mut complete = true;
        for (i, f) in d.factors().iter().enumerate() {
            let describe = || format!("{} at S = {:?}", entry.spec, f.subgroup().elements());
            let r = (|| {
                let (u, sec) = Biset::indinf(g, f.normalizer(), f.subgroup())?;
                let local = genome(sec.group(), config.prime)?;
                let trivial = local.position(&sec.group().trivial()).ok_or_else(|| {
                    Error::InvariantViolation("trivial subgroup is not in the basis of a cyclic group".into())
                })?;
                let mut generators: Vec<usize> = local.factors().iter().map(|h| h.generator()).collect();
                generators[trivial] = sec.class_of(f.generator()).expect("generator normalizes S");
                let local = Arc::new(local.with_generators(&generators)?);
                let m = genome_map(&u, &local, &d)?;
                let col: Vec<u64> = (0..d.len()).map(|t| m.entry(t, trivial)).collect();
                for t in 0..d.len() {
                    assembled[t][i] = col[t];
                }
                let expected: Vec<u64> = (0..d.len()).map(|t| u64::from(t == i) % d.factors()[t].order()).collect();
                Ok(col == expected)
            })();
            complete &= matches!(r, Ok(true));
            column.record_result(r, describe);
        }
        let orders = d.factor_orders();
        bijective.record(complete && injective_on_factors(config.prime, &orders, &orders, &assembled), || {
            entry.spec.clone()
        });
    }
    Ok(vec![column, bijective])
}

// ---------------------------------------------------------------------------
// basis independence

/// A second genetic basis: each representative conjugated by a random
/// element, with a random generator of the new quotient.
pub fn random_basis(rng: &mut impl Rng, d: &GenomeDescriptor) -> Result<GenomeDescriptor> {
    let g = d.group();
    let p = d.prime();
    let factors = d.factors().iter().map(|f| {
        let x = rng.random_range(0..g.order());
        let s = f.subgroup().conjugate(g, x);
        let order = f.order();
        let k = loop {
            let k = rng.random_range(1..=order.max(1));
            if gcd(k as usize, p as usize) == 1 {
                break k;
            }
        };
        let n = g.pow(g.conj(f.generator(), x), k);
        let t = *s.elements().choose(rng).expect("nonempty");
        (s, Some(g.mul(n, t)))
    });
    GenomeDescriptor::from_factors(g, p, factors.collect::<Vec<_>>())
}

fn basis_independence_suite(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut round_trip = Check::new(Suite::BasisIndependence, "γ(B,B') ∘ γ(B',B) = id");
    let mut conjugation = Check::new(Suite::BasisIndependence, "Γ_{B'}(U) = γ ∘ Γ_B(U) ∘ γ");
    for entry in groups_up_to(config, config.max_order)? {
        let g = &entry.group;
        let d = Arc::new(genome(g, config.prime)?);
        for i in 0..4 {
            let describe = || format!("{} sample {i}", entry.spec);
            let d2 = Arc::new(random_basis(rng, &d)?);
            let r =
                (|| Ok(change_of_basis(&d, &d2)?.then(&change_of_basis(&d2, &d)?)? == GenomeMap::identity(d.clone())))(
                );
            round_trip.record_result(r, describe);

            let step = elementary_step(rng, g, config)?;
            let q = step.biset.left().clone();
            let r = (|| {
                let dq = Arc::new(genome(&q, config.prime)?);
                let dq2 = Arc::new(random_basis(rng, &dq)?);
                let direct = genome_map(&step.biset, &d2, &dq2)?;
                let via = change_of_basis(&d2, &d)?
                    .then(&genome_map(&step.biset, &d, &dq)?)?
                    .then(&change_of_basis(&dq, &dq2)?)?;
                Ok(direct == via)
            })();
            conjugation.record_result(r, || format!("{} with {}", describe(), step.name));
        }
    }
    Ok(vec![round_trip, conjugation])
}

/// The basis-independence identity for one group and one pair of bases,
/// with `U` the identity biset and every restriction to a subgroup.
pub fn basis_independence_check(g: &Arc<Group>, p: u64, seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check = Check::new(Suite::BasisIndependence, "Γ_{B'}(U) = γ ∘ Γ_B(U) ∘ γ");
    let d = Arc::new(genome(g, p)?);
    let d2 = Arc::new(random_basis(&mut rng, &d)?);
    let mut bisets = vec![Biset::identity(g.clone())];
    bisets.extend(g.all_subgroups()?.iter().map(|h| Biset::restriction(g, h)));
    for n in g.normal_subgroups()? {
        bisets.push(Biset::deflation(g, &n)?);
    }
    for (i, u) in bisets.iter().enumerate() {
        let r = (|| {
            let dq = Arc::new(genome(u.left(), p)?);
            let dq2 = Arc::new(random_basis(&mut rng, &dq)?);
            let direct = genome_map(u, &d2, &dq2)?;
            let via = change_of_basis(&d2, &d)?.then(&genome_map(u, &d, &dq)?)?.then(&change_of_basis(&dq, &dq2)?)?;
            Ok(direct == via)
        })();
        check.record_result(r, || format!("biset {i}"));
    }
    Ok(check)
}

// ---------------------------------------------------------------------------
// faithful part

fn faithful_suite(config: &VerifyConfig) -> Result<Vec<Check>> {
    let mut per_z = Check::new(Suite::Faithful, "Def by central Z kills exactly the factors with S ≱ Z");
    let mut total = Check::new(Suite::Faithful, "factors killed by every central deflation = faithful part");
    for entry in groups_up_to(config, config.max_order)? {
        let g = &entry.group;
        if g.order() == 1 {
            continue;
        }
        let d = Arc::new(genome(g, config.prime)?);
        let center = g.center();
        let minimal: Vec<Subgroup> = g
            .cyclic_subgroups()
            .into_iter()
            .filter(|z| z.len() as u64 == config.prime && z.is_subgroup_of(&center))
            .collect();
        let nontrivial: Vec<usize> = (0..d.len()).filter(|&s| d.factors()[s].order() > 1).collect();
        let mut killed_by_all = vec![true; d.len()];
        for z in &minimal {
            let describe = || format!("{} with Z = {:?}", entry.spec, z.elements());
            let r = (|| {
                let dq = Arc::new(genome(&quotient(g, z)?.group, config.prime)?);
                let m = genome_map(&Biset::deflation(g, z)?, &d, &dq)?;
                let mut ok = true;
                for &s in &nontrivial {
                    let killed = (0..dq.len()).all(|t| m.entry(t, s) == 0);
                    killed_by_all[s] &= killed;
                    ok &= killed == !z.is_subgroup_of(d.factors()[s].subgroup());
                }
                Ok(ok)
            })();
            per_z.record_result(r, describe);
        }
        let faithful: Vec<usize> = faithful_part(&d).into_iter().filter(|&s| d.factors()[s].order() > 1).collect();
        let killed: Vec<usize> = nontrivial.iter().copied().filter(|&s| killed_by_all[s]).collect();
        total.record(faithful == killed, || format!("{}: faithful {faithful:?}, killed {killed:?}", entry.spec));
    }
    Ok(vec![per_z, total])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_run_passes() {
        let config = VerifyConfig { prime: 3, max_order: 9, seed: 1, samples: 10 };
        let report = run(Suite::All, &config).unwrap();
        for c in &report.checks {
            assert!(c.is_success(), "{c:?}");
        }
    }

    #[test]
    fn even_prime_rejected() {
        let config = VerifyConfig { prime: 2, ..VerifyConfig::default() };
        assert_eq!(run(Suite::All, &config).unwrap_err(), Error::OddPrimesOnly(2));
    }
}
