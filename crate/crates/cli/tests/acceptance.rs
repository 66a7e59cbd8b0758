//! Acceptance criteria 1 to 11, one PASS/FAIL line each.
//!
//! Run with `cargo test --release --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use genome_core::biset::Biset;
use genome_core::catalog::catalog;
use genome_core::verify::{self, closed_form_check, Check, Suite, VerifyConfig};
use genome_core::{
    change_of_basis, genetic_basis, genome, genome_map, Error, ExtraspecialKind, GenomeDescriptor, Group,
};

type Outcome = Result<(), String>;

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_passes(c: &Check, min_samples: usize) -> Outcome {
    ensure(c.is_success() && c.passed >= min_samples, || {
        format!("{}: {}/{} passed (need {min_samples}); {:?}", c.identity, c.passed, c.passed + c.failed, c.failures)
    })
}

fn run_suite(suite: Suite, p: u64, max_order: usize, seed: u64) -> Result<Vec<Check>, String> {
    let config = VerifyConfig { prime: p, max_order, seed, ..VerifyConfig::default() };
    verify::run(suite, &config).map(|r| r.checks).map_err(|e| e.to_string())
}

fn cyclic_genomes() -> Outcome {
    for p in [3u64, 5] {
        for n in 0..=3u32 {
            let g = Arc::new(Group::cyclic(p.pow(n) as usize).map_err(|e| e.to_string())?);
            let d = genome(&g, p).map_err(|e| e.to_string())?;
            let expected: Vec<u64> = (0..=n).map(|k| p.pow(k)).collect();
            let got = sorted(d.factor_orders());
            ensure(got == expected, || format!("C{}: {got:?} != {expected:?}", p.pow(n)))?;
        }
    }
    Ok(())
}

fn elementary_abelian() -> Outcome {
    for p in [3u64, 5] {
        let c = Group::cyclic(p as usize).map_err(|e| e.to_string())?;
        let g = Arc::new(Group::direct_product(&c, &c));
        let got = sorted(genome(&g, p).map_err(|e| e.to_string())?.factor_orders());
        let mut expected = vec![1];
        expected.extend(std::iter::repeat_n(p, p as usize + 1));
        ensure(got == expected, || format!("C{p} x C{p}: {got:?} != {expected:?}"))?;
    }
    Ok(())
}

/// Conjugacy classes of cyclic subgroups, straight from the table.
fn cyclic_classes_brute_force(g: &Group) -> usize {
    let n = g.order();
    let cyclic_of = |a: usize| {
        let mut s = BTreeSet::from([0]);
        let mut x = a;
        while x != 0 {
            s.insert(x);
            x = g.mul(x, a);
        }
        s
    };
    let subgroups: BTreeSet<BTreeSet<usize>> = (0..n).map(cyclic_of).collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut classes = 0;
    for s in &subgroups {
        if seen.contains(s) {
            continue;
        }
        classes += 1;
        for x in 0..n {
            let xi = g.inv(x);
            seen.insert(s.iter().map(|&a| g.mul(g.mul(xi, a), x)).collect());
        }
    }
    classes
}

fn extraspecial_27() -> Outcome {
    for kind in [ExtraspecialKind::ExponentP, ExtraspecialKind::ExponentP2] {
        let g = Arc::new(Group::extraspecial(3, kind).map_err(|e| e.to_string())?);
        let basis = genetic_basis(&g, 3).map_err(|e| e.to_string())?;
        let oracle = cyclic_classes_brute_force(&g);
        ensure(basis.len() == oracle, || format!("{kind:?}: basis {} vs {oracle} classes", basis.len()))?;
        if kind == ExtraspecialKind::ExponentP {
            let got = sorted(genome(&g, 3).map_err(|e| e.to_string())?.factor_orders());
            ensure(got == [1, 3, 3, 3, 3, 3], || format!("ES+(3): {got:?}"))?;
        }
    }
    Ok(())
}

fn transfer_closed_form() -> Outcome {
    let c3 = closed_form_check(3, 27).map_err(|e| e.to_string())?;
    check_passes(&c3, 1)?;
    let c5 = closed_form_check(5, 25).map_err(|e| e.to_string())?;
    check_passes(&c5, 1)
}

fn transfer_laws() -> Outcome {
    let checks = run_suite(Suite::Transfer, 3, 27, 11)?;
    let need = |identity: &str| if identity.contains("∘") { 100 } else { 50 };
    for c in &checks {
        check_passes(c, need(&c.identity))?;
    }
    ensure(checks.len() == 5, || format!("expected 5 transfer identities, got {}", checks.len()))
}

fn inf_def() -> Outcome {
    for p in [3, 5] {
        for c in run_suite(Suite::InfDef, p, 81, 0)? {
            check_passes(&c, 1)?;
        }
    }
    Ok(())
}

fn functoriality() -> Outcome {
    // the chain identity is sampled; Γ(id) = id is checked once per group
    for c in run_suite(Suite::Functoriality, 3, 81, 5)? {
        check_passes(&c, if c.identity.contains("×") { 100 } else { 1 })?;
    }
    for c in run_suite(Suite::Functoriality, 5, 81, 5)? {
        check_passes(&c, 1)?;
    }
    Ok(())
}

/// ES+(3) against a basis whose non-normal representative is replaced by a
/// conjugate, with a different generator.
fn basis_independence() -> Outcome {
    let g = Arc::new(Group::extraspecial(3, ExtraspecialKind::ExponentP).map_err(|e| e.to_string())?);
    let d = Arc::new(genome(&g, 3).map_err(|e| e.to_string())?);
    let (i, x) = d
        .factors()
        .iter()
        .enumerate()
        .find_map(|(i, f)| (0..g.order()).find(|&x| f.subgroup().conjugate(&g, x) != *f.subgroup()).map(|x| (i, x)))
        .ok_or("no non-normal representative")?;
    let factors = d.factors().iter().enumerate().map(|(j, f)| {
        if j == i {
            let gen = g.pow(g.conj(f.generator(), x), 2);
            (f.subgroup().conjugate(&g, x), Some(gen))
        } else {
            (f.subgroup().clone(), Some(f.generator()))
        }
    });
    let d2 = Arc::new(GenomeDescriptor::from_factors(&g, 3, factors.collect::<Vec<_>>()).map_err(|e| e.to_string())?);
    ensure(d2.factors()[i].subgroup() != d.factors()[i].subgroup(), || "bases coincide".into())?;

    let gamma = change_of_basis(&d, &d2).map_err(|e| e.to_string())?;
    let back = change_of_basis(&d2, &d).map_err(|e| e.to_string())?;
    ensure(gamma.is_bijective(), || "γ is not bijective".into())?;

    let mut bisets = vec![Biset::identity(g.clone())];
    let subgroups = g.all_subgroups().map_err(|e| e.to_string())?;
    bisets.extend(subgroups.iter().map(|h| Biset::restriction(&g, h)));
    for n in g.normal_subgroups().map_err(|e| e.to_string())? {
        bisets.push(Biset::deflation(&g, &n).map_err(|e| e.to_string())?);
    }
    let mut compared = 0;
    for u in &bisets {
        let dq = Arc::new(genome(u.left(), 3).map_err(|e| e.to_string())?);
        let direct = genome_map(u, &d2, &dq).map_err(|e| e.to_string())?;
        let via = back.then(&genome_map(u, &d, &dq).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(direct == via, || format!("mismatch for a biset of size {}", u.size()))?;
        compared += 1;
    }
    // and with ES+(3) as the target, through inductions from subgroups
    for h in &subgroups {
        let u = Biset::induction(&g, h);
        let dh = Arc::new(genome(u.right(), 3).map_err(|e| e.to_string())?);
        let direct = genome_map(&u, &dh, &d2).map_err(|e| e.to_string())?;
        let via = genome_map(&u, &dh, &d).and_then(|m| m.then(&gamma)).map_err(|e| e.to_string())?;
        ensure(direct == via, || format!("mismatch for ind from a subgroup of order {}", h.len()))?;
        compared += 1;
    }
    ensure(compared > 2 * subgroups.len(), || "too few bisets compared".into())
}

fn rationality() -> Outcome {
    for p in [3, 5] {
        for c in run_suite(Suite::Rationality, p, 81, 0)? {
            check_passes(&c, 1)?;
        }
    }
    Ok(())
}

fn faithful() -> Outcome {
    for p in [3, 5] {
        for c in run_suite(Suite::Faithful, p, 81, 0)? {
            check_passes(&c, 1)?;
        }
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_genome")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn degenerate_inputs() -> Outcome {
    let c4 = Arc::new(Group::cyclic(4).map_err(|e| e.to_string())?);
    ensure(matches!(genome(&c4, 2), Err(Error::OddPrimesOnly(2))), || "genome(C4, 2) not rejected".into())?;
    let c6 = Arc::new(Group::cyclic(6).map_err(|e| e.to_string())?);
    ensure(matches!(genome(&c6, 3), Err(Error::NotPGroup { order: 6, prime: 3 })), || {
        "genome(C6, 3) not rejected".into()
    })?;
    let cases: [(&[&str], &str); 6] = [
        (&["basis", "C9", "-p", "2"], "odd primes only"),
        (&["genome", "C8", "-p", "2"], "odd primes only"),
        (&["verify", "-p", "2"], "odd primes only"),
        (&["basis", "C6", "-p", "3"], "not a p-group"),
        (&["genome", "C3 x C5", "-p", "3"], "not a p-group"),
        (&["map", "inf(C9,[3])", "-p", "5"], "not a p-group"),
    ];
    for (args, message) in cases {
        let (code, stderr) = run_cli(args);
        ensure(code == 2 && stderr.contains(message), || format!("{args:?}: exit {code}, stderr {stderr:?}"))?;
    }
    Ok(())
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion { number: 1, name: "cyclic genomes", limit: secs(1), run: cyclic_genomes },
        Criterion { number: 2, name: "elementary abelian of rank 2", limit: secs(1), run: elementary_abelian },
        Criterion { number: 3, name: "extraspecial of order 27", limit: secs(10), run: extraspecial_27 },
        Criterion { number: 4, name: "transfer closed form", limit: secs(30), run: transfer_closed_form },
        Criterion { number: 5, name: "transfer laws", limit: secs(60), run: transfer_laws },
        Criterion { number: 6, name: "inflation and deflation", limit: secs(120), run: inf_def },
        Criterion { number: 7, name: "functoriality", limit: secs(120), run: functoriality },
        Criterion { number: 8, name: "basis independence", limit: secs(10), run: basis_independence },
        Criterion { number: 9, name: "rationality", limit: secs(120), run: rationality },
        Criterion { number: 10, name: "faithful part", limit: secs(60), run: faithful },
        Criterion { number: 11, name: "degenerate inputs", limit: None, run: degenerate_inputs },
    ];
    assert!(!catalog(3, 81).unwrap().is_empty());
    let mut failures = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(()), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match &outcome {
            Ok(()) => println!("criterion {:>2} PASS  {:<30} {elapsed:.2?}", c.number, c.name),
            Err(e) => {
                println!("criterion {:>2} FAIL  {:<30} {elapsed:.2?}  {e}", c.number, c.name);
                failures.push(c.number);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
