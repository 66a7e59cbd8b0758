//! A fixed list of small p-groups used by the verification suites.

use std::sync::Arc;

use crate::error::Result;
use crate::group::{ExtraspecialKind, Group, Permutation};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// The group in the CLI's group notation.
    pub spec: String,
    pub group: Arc<Group>,
}

fn product(factors: &[Group]) -> Group {
    factors[1..].iter().fold(factors[0].clone(), |acc, g| Group::direct_product(&acc, g))
}

/// Catalog groups for `p` of order at most `max_order`, in increasing order.
pub fn catalog(p: u64, max_order: usize) -> Result<Vec<CatalogEntry>> {
    let q = p as usize;
    let mut out = Vec::new();
    let mut add = |spec: String, order: usize, build: &dyn Fn() -> Result<Group>| -> Result<()> {
        if order <= max_order {
            out.push(CatalogEntry { spec, group: Arc::new(build()?) });
        }
        Ok(())
    };
    // abelian groups as lists of cyclic factor exponents
    let abelian: [&[u32]; 12] =
        [&[0], &[1], &[2], &[3], &[4], &[1, 1], &[2, 1], &[2, 2], &[3, 1], &[1, 1, 1], &[2, 1, 1], &[1, 1, 1, 1]];
    for exps in abelian {
        let spec = exps.iter().map(|&k| format!("C{}", q.pow(k))).collect::<Vec<_>>().join(" x ");
        let order = q.pow(exps.iter().sum());
        add(spec, order, &|| {
            let factors = exps.iter().map(|&k| Group::cyclic(q.pow(k))).collect::<Result<Vec<_>>>()?;
            Ok(product(&factors))
        })?;
    }
    for (sign, kind) in [("+", ExtraspecialKind::ExponentP), ("-", ExtraspecialKind::ExponentP2)] {
        add(format!("ES{sign}({p})"), q.pow(3), &|| Group::extraspecial(p, kind))?;
        add(format!("ES{sign}({p}) x C{p}"), q.pow(4), &|| {
            Ok(product(&[Group::extraspecial(p, kind)?, Group::cyclic(q)?]))
        })?;
    }
    if p == 3 {
        add("perm[(1 2 3); (1 4 7)(2 5 8)(3 6 9)]".into(), 81, &wreath_c3_c3)?;
    }
    out.sort_by_key(|e| e.group.order());
    Ok(out)
}

/// `C3 ≀ C3` acting on nine points.
fn wreath_c3_c3() -> Result<Group> {
    let a = Permutation::from_cycles(9, &[vec![1, 2, 3]])?;
    let b = Permutation::from_cycles(9, &[vec![1, 4, 7], vec![2, 5, 8], vec![3, 6, 9]])?;
    Group::from_permutations(9, &[a, b])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_specs() {
        for p in [3, 5] {
            for e in catalog(p, 125).unwrap() {
                assert!(e.group.is_p_group(p));
            }
        }
        assert_eq!(catalog(3, 81).unwrap().len(), 17);
        let five: Vec<_> = catalog(5, 81).unwrap().into_iter().map(|e| e.spec).collect();
        assert_eq!(five, vec!["C1", "C5", "C25", "C5 x C5"]);
    }
}
