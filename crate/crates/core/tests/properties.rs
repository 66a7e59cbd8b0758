use std::sync::{Arc, OnceLock};

use genome_core::catalog::catalog;
use genome_core::verify::{random_left_free, random_transitive_left_free};
use genome_core::{genome, genome_map, verlagerung, Biset, GenomeDescriptor, Group};
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn groups() -> &'static [(Arc<Group>, Arc<GenomeDescriptor>)] {
    static GROUPS: OnceLock<Vec<(Arc<Group>, Arc<GenomeDescriptor>)>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        catalog(3, 27)
            .unwrap()
            .into_iter()
            .map(|e| {
                let d = Arc::new(genome(&e.group, 3).unwrap());
                (e.group, d)
            })
            .collect()
    })
}

fn pick(rng: &mut ChaCha8Rng) -> (Arc<Group>, Arc<GenomeDescriptor>) {
    groups().choose(rng).unwrap().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative_up_to_isomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h, k, l) = (pick(&mut rng).0, pick(&mut rng).0, pick(&mut rng).0, pick(&mut rng).0);
        let u = random_transitive_left_free(&mut rng, &h, &g).unwrap();
        let v = random_transitive_left_free(&mut rng, &k, &h).unwrap();
        let w = random_transitive_left_free(&mut rng, &l, &k).unwrap();
        let left = w.compose(&v).unwrap().compose(&u).unwrap();
        let right = w.compose(&v.compose(&u).unwrap()).unwrap();
        prop_assert_eq!(left.size(), right.size());
        prop_assert!(left.is_isomorphic(&right));
    }

    #[test]
    fn identity_is_neutral_for_composition(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = (pick(&mut rng).0, pick(&mut rng).0);
        let u = random_left_free(&mut rng, &h, &g).unwrap();
        prop_assert!(Biset::identity(h.clone()).compose(&u).unwrap().is_isomorphic(&u));
        prop_assert!(u.compose(&Biset::identity(g.clone())).unwrap().is_isomorphic(&u));
    }

    #[test]
    fn orbits_partition_the_biset(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = (pick(&mut rng).0, pick(&mut rng).0);
        let u = random_left_free(&mut rng, &h, &g).unwrap();
        let a = h.all_subgroups().unwrap().choose(&mut rng).unwrap().clone();
        let b = g.all_subgroups().unwrap().choose(&mut rng).unwrap().clone();
        let (reps, orbit) = u.orbits(&a, &b);
        let mut sizes = vec![0usize; reps.len()];
        for x in 0..u.size() {
            sizes[orbit[x]] += 1;
            prop_assert!(reps[orbit[x]] <= x);
            for &s in a.elements() {
                for &t in b.elements() {
                    prop_assert_eq!(orbit[u.act_right(u.act_left(s, x), t)], orbit[x]);
                }
            }
        }
        prop_assert_eq!(sizes.iter().sum::<usize>(), u.size());
        for (i, &r) in reps.iter().enumerate() {
            prop_assert_eq!(orbit[r], i);
            prop_assert_eq!((a.len() * b.len()) % sizes[i], 0);
        }
    }

    #[test]
    fn transport_is_equivariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = (pick(&mut rng).0, pick(&mut rng).0);
        let u = random_left_free(&mut rng, &h, &g).unwrap();
        let s = g.all_subgroups().unwrap().choose(&mut rng).unwrap().clone();
        let x = rng.random_range(0..u.size());
        let q = rng.random_range(0..h.order());
        let t = u.transport_left(x, &s).unwrap();
        // ^{q·x}S = q (^xS) q⁻¹
        let moved = u.transport_left(u.act_left(q, x), &s).unwrap();
        prop_assert_eq!(moved, t.left_conjugate(&h, q));
        // the transported subgroup really transports
        for &e in t.elements() {
            let ex = u.act_left(e, x);
            prop_assert!(s.elements().iter().any(|&c| u.act_right(x, c) == ex));
        }
    }

    #[test]
    fn genome_maps_compose(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ((g, dg), (h, dh), (k, dk)) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let u = random_left_free(&mut rng, &h, &g).unwrap();
        let v = random_left_free(&mut rng, &k, &h).unwrap();
        let mu = genome_map(&u, &dg, &dh).unwrap();
        let mv = genome_map(&v, &dh, &dk).unwrap();
        let composed = genome_map(&v.compose(&u).unwrap(), &dg, &dk).unwrap();
        prop_assert_eq!(mu.then(&mv).unwrap(), composed);
    }

    #[test]
    fn genome_map_composition_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ds: Vec<_> = (0..4).map(|_| pick(&mut rng)).collect();
        let maps: Vec<_> = (0..3)
            .map(|i| {
                let u = random_left_free(&mut rng, &ds[i + 1].0, &ds[i].0).unwrap();
                genome_map(&u, &ds[i].1, &ds[i + 1].1).unwrap()
            })
            .collect();
        let left = maps[0].then(&maps[1]).unwrap().then(&maps[2]).unwrap();
        let right = maps[0].then(&maps[1].then(&maps[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn genome_maps_respect_disjoint_unions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ((g, dg), (h, dh)) = (pick(&mut rng), pick(&mut rng));
        let u = random_left_free(&mut rng, &h, &g).unwrap();
        let v = random_left_free(&mut rng, &h, &g).unwrap();
        let sum = genome_map(&u.disjoint_union(&v).unwrap(), &dg, &dh).unwrap();
        let (mu, mv) = (genome_map(&u, &dg, &dh).unwrap(), genome_map(&v, &dg, &dh).unwrap());
        for (t, row) in sum.entries().iter().enumerate() {
            let n = dh.factors()[t].order();
            for (s, &e) in row.iter().enumerate() {
                prop_assert_eq!(e, (mu.entry(t, s) + mv.entry(t, s)) % n);
            }
        }
    }

    #[test]
    fn transfer_is_transitive_and_additive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h, k) = (pick(&mut rng).0, pick(&mut rng).0, pick(&mut rng).0);
        let omega = random_left_free(&mut rng, &h, &g).unwrap();
        let omega2 = random_left_free(&mut rng, &k, &h).unwrap();
        let composed = verlagerung(&omega2.compose(&omega).unwrap()).unwrap();
        prop_assert_eq!(verlagerung(&omega).unwrap().then(&verlagerung(&omega2).unwrap()).unwrap(), composed);
        let other = random_left_free(&mut rng, &h, &g).unwrap();
        let sum = verlagerung(&omega.disjoint_union(&other).unwrap()).unwrap();
        prop_assert_eq!(sum, verlagerung(&omega).unwrap().add(&verlagerung(&other).unwrap()).unwrap());
    }

    #[test]
    fn transfer_rejects_bisets_that_are_not_left_free(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = pick(&mut rng).0;
        prop_assume!(g.order() > 1);
        let n = g.normal_subgroups().unwrap().into_iter().find(|n| !n.is_trivial()).unwrap();
        // N fixes every point of Inf, while G/N acts freely on Def
        prop_assert!(verlagerung(&Biset::inflation(&g, &n).unwrap()).is_err());
        prop_assert!(verlagerung(&Biset::deflation(&g, &n).unwrap()).is_ok());
    }
}
