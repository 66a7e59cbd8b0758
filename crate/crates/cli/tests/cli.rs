use std::process::{Command, Output};

use genome_cli::commands::{BasisJson, GenomeJson, MapJson, VerifyJson};
use genome_cli::{parse_biset_spec, parse_group_spec};
use genome_core::json::SCHEMA_VERSION;

fn genome(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genome")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = genome(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn basis_examples() {
    let b: BasisJson = serde_json::from_str(&stdout(&["basis", "C9", "-p", "3", "--json"])).unwrap();
    let mut orders: Vec<u64> = b.factors.iter().map(|f| f.quotient_order).collect();
    orders.sort_unstable();
    assert_eq!(orders, [1, 3, 9]);

    let b: BasisJson = serde_json::from_str(&stdout(&["basis", "C3 x C3", "-p", "3", "--json"])).unwrap();
    assert_eq!(b.factors.len(), 5);

    let b: BasisJson = serde_json::from_str(&stdout(&["basis", "ES+(3)", "-p", "3", "--json"])).unwrap();
    assert_eq!(b.factors.len(), 6);
    // the linkage classes partition the genetic subgroups
    assert!(b.factors.iter().all(|f| f.class_size >= 1));
}

#[test]
fn prime_is_inferred() {
    assert_eq!(stdout(&["basis", "C25"]), stdout(&["basis", "C25", "-p", "5"]));
}

#[test]
fn genome_example() {
    let g: GenomeJson = serde_json::from_str(&stdout(&["genome", "C27", "-p", "3", "--json"])).unwrap();
    assert_eq!(g.schema_version, SCHEMA_VERSION);
    assert_eq!(g.factor_orders, [27, 9, 3, 1]);
    assert_eq!(g.genome_order, 27 * 9 * 3);
    // only S = 1 meets the center of C27 trivially
    assert_eq!(g.faithful_part, [0]);
}

#[test]
fn map_of_inflation_has_a_single_one() {
    let m: MapJson = serde_json::from_str(&stdout(&["map", "inf(C9,[3])", "-p", "3", "--json"])).unwrap();
    let entries = &m.map.entries;
    assert_eq!(entries.len(), 3);
    assert!(entries.iter().all(|row| row.len() == 2));
    let ones: Vec<(usize, usize)> =
        (0..3).flat_map(|t| (0..2).map(move |s| (t, s))).filter(|&(t, s)| entries[t][s] != 0).collect();
    assert_eq!(ones.len(), 1);
    let (t, s) = ones[0];
    assert_eq!(entries[t][s], 1);
    // target factor at S = N = ⟨3⟩, source factor at the trivial subgroup of C9/N
    assert_eq!(m.map.target.factors[t].subgroup_elements, [0, 3, 6]);
    assert_eq!(m.map.source.factors[s].subgroup_elements, [0]);
}

#[test]
fn def_after_inf_is_the_identity_of_c3() {
    let m: MapJson = serde_json::from_str(&stdout(&["map", "def(C9,[3]) * inf(C9,[3])", "--json"])).unwrap();
    assert_eq!(m.map.entries, [[1, 0], [0, 0]]);
    assert_eq!(m.biset.size, 3);
}

#[test]
fn json_outputs_reparse_into_core_types() {
    let g: GenomeJson = serde_json::from_str(&stdout(&["genome", "ES-(3)", "--json"])).unwrap();
    let group = parse_group_spec(&g.descriptor.group_spec).unwrap().eval().unwrap();
    let d = g.descriptor.to_descriptor(&std::sync::Arc::new(group)).unwrap();
    assert_eq!(d.factor_orders(), g.factor_orders);

    let m: MapJson = serde_json::from_str(&stdout(&["map", "res(C9 x C3,[3])", "--json"])).unwrap();
    let u = parse_biset_spec(&m.biset_spec).unwrap().eval().unwrap();
    assert_eq!(m.biset.to_biset().unwrap().size(), u.biset.size());
    let eval = |text: &str| std::sync::Arc::new(parse_group_spec(text).unwrap().eval().unwrap());
    let map = m.map.to_map(&eval(&m.map.source.group_spec), &eval(&m.map.target.group_spec)).unwrap();
    assert_eq!(map.entries(), &m.map.entries[..]);
}

#[test]
fn verify_example_passes() {
    let out = genome(&["verify", "--suite", "all", "-p", "3", "--max-order", "81", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0 failed"), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_json_reparses() {
    let v: VerifyJson =
        serde_json::from_str(&stdout(&["verify", "--suite", "infdef", "--max-order", "27", "--json"])).unwrap();
    assert!(v.success);
    assert_eq!(v.suite, "infdef");
    assert!(v.report.checks.iter().all(|c| c.failed == 0 && c.passed > 0));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["basis", "perm[(1 2 3); (1 4 7)(2 5 8)(3 6 9)]", "--json"][..],
        &["genome", "C9 x C3", "-p", "3"],
        &["map", "ind(ES+(3),[1]) * def(C3 x C3,[1])", "--json"],
        &["verify", "--suite", "functoriality", "--max-order", "27", "--seed", "3"],
    ] {
        assert_eq!(genome(args).stdout, genome(args).stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(genome(&["basis", "C9", "-p", "2"]).status.code(), Some(2));
    assert_eq!(genome(&["basis", "C6"]).status.code(), Some(2));
    assert_eq!(genome(&["basis", "C3 x"]).status.code(), Some(2));
    assert_eq!(genome(&["map", "id(C3) * id(C9)"]).status.code(), Some(2));
    assert_eq!(genome(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    let out = genome(&["basis", "C3 x D4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at byte 5"));
}
