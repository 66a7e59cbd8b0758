//! Command implementations. Each returns the full text to print.

use std::fmt::Write as _;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use genome_core::json::{BisetJson, DescriptorJson, GenomeMapJson, SCHEMA_VERSION};
use genome_core::verify::{self, Report, Suite, VerifyConfig};
use genome_core::{faithful_part, genome, genome_map, linkage_classes, GenomeDescriptor, Group};
use serde::{Deserialize, Serialize};

use crate::spec::{parse_biset_spec, parse_group_spec, GroupSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisFactorJson {
    pub subgroup_elements: Vec<usize>,
    pub subgroup_order: usize,
    pub quotient_order: u64,
    pub generator: usize,
    /// Number of genetic subgroups linked to this representative.
    pub class_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub schema_version: u32,
    pub group_spec: String,
    pub group_order: usize,
    pub prime: u64,
    pub factors: Vec<BasisFactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenomeJson {
    pub schema_version: u32,
    pub descriptor: DescriptorJson,
    pub factor_orders: Vec<u64>,
    pub genome_order: u64,
    pub faithful_part: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub schema_version: u32,
    pub biset_spec: String,
    pub map: GenomeMapJson,
    pub biset: BisetJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub schema_version: u32,
    pub suite: String,
    pub success: bool,
    pub report: Report,
}

fn load_group(text: &str) -> Result<(GroupSpec, Arc<Group>)> {
    let spec = parse_group_spec(text).with_context(|| format!("invalid group spec `{text}`"))?;
    let g = spec.eval().with_context(|| format!("cannot build group `{text}`"))?;
    Ok((spec, Arc::new(g)))
}

fn resolve_prime(p: Option<u64>, g: &Group) -> Result<u64> {
    match p {
        Some(p) => Ok(p),
        None => match g.p_group_prime() {
            Some(p) => Ok(p),
            None => bail!("cannot infer p for a group of order {}; pass -p", g.order()),
        },
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn elements(xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(", "))
}

pub fn basis(text: &str, p: Option<u64>, json: bool) -> Result<String> {
    let (spec, g) = load_group(text)?;
    let p = resolve_prime(p, &g)?;
    let d = genome(&g, p)?;
    let classes = linkage_classes(&g, p)?;
    let sizes = classes.class_sizes();
    let factors: Vec<BasisFactorJson> = d
        .factors()
        .iter()
        .zip(&sizes)
        .map(|(f, &class_size)| BasisFactorJson {
            subgroup_elements: f.subgroup().elements().to_vec(),
            subgroup_order: f.subgroup().len(),
            quotient_order: f.order(),
            generator: f.generator(),
            class_size,
        })
        .collect();
    if json {
        return to_json(&BasisJson {
            schema_version: SCHEMA_VERSION,
            group_spec: spec.to_string(),
            group_order: g.order(),
            prime: p,
            factors,
        });
    }
    let mut out = String::new();
    writeln!(out, "group {spec} of order {}, p = {p}", g.order())?;
    writeln!(out, "genetic basis: {} linkage classes", factors.len())?;
    writeln!(out, "{:>4} {:>6} {:>8} {:>6} {:>10}  S", "#", "|S|", "|N(S)/S|", "gen", "class size")?;
    for (i, f) in factors.iter().enumerate() {
        writeln!(
            out,
            "{i:>4} {:>6} {:>8} {:>6} {:>10}  {}",
            f.subgroup_order,
            f.quotient_order,
            f.generator,
            f.class_size,
            elements(&f.subgroup_elements)
        )?;
    }
    Ok(out)
}

fn render_descriptor(out: &mut String, d: &GenomeDescriptor) -> std::fmt::Result {
    for (i, f) in d.factors().iter().enumerate() {
        writeln!(out, "{i:>4}  C{:<5} S = {} (gen {})", f.order(), elements(f.subgroup().elements()), f.generator())?;
    }
    Ok(())
}

pub fn genome_cmd(text: &str, p: Option<u64>, json: bool) -> Result<String> {
    let (spec, g) = load_group(text)?;
    let p = resolve_prime(p, &g)?;
    let d = genome(&g, p)?;
    let faithful = faithful_part(&d);
    if json {
        return to_json(&GenomeJson {
            schema_version: SCHEMA_VERSION,
            descriptor: DescriptorJson::from_descriptor(&d, &spec.to_string()),
            factor_orders: d.factor_orders(),
            genome_order: d.genome_order(),
            faithful_part: faithful,
        });
    }
    let mut out = String::new();
    let product: Vec<String> = d.factor_orders().iter().map(|n| format!("C{n}")).collect();
    writeln!(out, "genome of {spec} (p = {p}): {}", product.join(" x "))?;
    writeln!(out, "order {}", d.genome_order())?;
    render_descriptor(&mut out, &d)?;
    writeln!(out, "faithful part: factors {}", elements(&faithful))?;
    Ok(out)
}

pub fn map(text: &str, p: Option<u64>, json: bool) -> Result<String> {
    let spec = parse_biset_spec(text).with_context(|| format!("invalid biset spec `{text}`"))?;
    let u = spec.eval().with_context(|| format!("cannot build biset `{text}`"))?;
    let (left, right) = (u.biset.left().clone(), u.biset.right().clone());
    let p = match p {
        Some(p) => p,
        None => resolve_prime(None, &right).or_else(|_| resolve_prime(None, &left))?,
    };
    let source = Arc::new(genome(&right, p)?);
    let target = Arc::new(genome(&left, p)?);
    let m = genome_map(&u.biset, &source, &target)?;
    let (sspec, tspec) = (u.right_spec.to_string(), u.left_spec.to_string());
    if json {
        return to_json(&MapJson {
            schema_version: SCHEMA_VERSION,
            biset_spec: text.trim().to_string(),
            map: GenomeMapJson::from_map(&m, &sspec, &tspec),
            biset: BisetJson::from_biset(&u.biset),
        });
    }
    let mut out = String::new();
    writeln!(out, "biset {} with {} points: ({tspec}, {sspec})", text.trim(), u.biset.size())?;
    writeln!(out, "source genome of {sspec}:")?;
    render_descriptor(&mut out, &source)?;
    writeln!(out, "target genome of {tspec}:")?;
    render_descriptor(&mut out, &target)?;
    writeln!(out, "entries (rows: target factors, columns: source factors):")?;
    for row in m.entries() {
        let cells: Vec<String> = row.iter().map(|e| format!("{e:>3}")).collect();
        writeln!(out, "  {}", cells.join(""))?;
    }
    let kind = if m.is_bijective() {
        "bijective"
    } else if m.is_injective() {
        "injective"
    } else {
        "not injective"
    };
    writeln!(out, "map is {kind}")?;
    Ok(out)
}

/// Runs a suite; the boolean is whether every check passed.
pub fn verify(suite: &str, p: u64, max_order: usize, seed: u64, json: bool) -> Result<(String, bool)> {
    let s: Suite = suite.parse().map_err(anyhow::Error::msg)?;
    let config = VerifyConfig { prime: p, max_order, seed, ..VerifyConfig::default() };
    let report = verify::run(s, &config)?;
    let success = report.is_success();
    if json {
        let out = to_json(&VerifyJson { schema_version: SCHEMA_VERSION, suite: s.to_string(), success, report })?;
        return Ok((out, success));
    }
    let mut out = String::new();
    writeln!(out, "verify {s}: p = {p}, max order {max_order}, seed {seed}")?;
    for c in &report.checks {
        let status = if c.is_success() { "PASS" } else { "FAIL" };
        writeln!(out, "{status} [{}] {}: {}/{}", c.suite, c.identity, c.passed, c.passed + c.failed)?;
        for f in &c.failures {
            writeln!(out, "       {f}")?;
        }
    }
    let failed = report.checks.iter().filter(|c| !c.is_success()).count();
    writeln!(out, "{} checks, {} failed", report.checks.len(), failed)?;
    Ok((out, success))
}
