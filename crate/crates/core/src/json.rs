//! Serializable forms of groups, bisets, genome descriptors and genome maps
//! (schema version 1).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::biset::Biset;
use crate::error::{Error, Result};
use crate::genome::{GenomeDescriptor, GenomeMap};
use crate::group::{Group, Subgroup};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    /// Row-major multiplication table; identity is element 0.
    pub table: Vec<usize>,
}

impl GroupJson {
    pub fn from_group(g: &Group) -> Self {
        GroupJson { order: g.order(), table: g.table().to_vec() }
    }

    pub fn to_group(&self) -> Result<Group> {
        Group::from_table(self.order, self.table.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisetJson {
    pub left_group: GroupJson,
    pub right_group: GroupJson,
    pub size: usize,
    /// `left_action[q][x] = q·x`
    pub left_action: Vec<Vec<usize>>,
    /// `right_action[x][p] = x·p`
    pub right_action: Vec<Vec<usize>>,
}

impl BisetJson {
    pub fn from_biset(u: &Biset) -> Self {
        let size = u.size();
        let rows = |flat: &[usize], width: usize| -> Vec<Vec<usize>> {
            if width == 0 {
                return Vec::new();
            }
            flat.chunks(width).map(<[usize]>::to_vec).collect()
        };
        BisetJson {
            left_group: GroupJson::from_group(u.left()),
            right_group: GroupJson::from_group(u.right()),
            size,
            left_action: if size == 0 { vec![Vec::new(); u.left().order()] } else { rows(u.left_action(), size) },
            right_action: rows(u.right_action(), u.right().order()),
        }
    }

    pub fn to_biset(&self) -> Result<Biset> {
        let left = Arc::new(self.left_group.to_group()?);
        let right = Arc::new(self.right_group.to_group()?);
        if self.left_action.len() != left.order()
            || self.left_action.iter().any(|r| r.len() != self.size)
            || self.right_action.len() != self.size
            || self.right_action.iter().any(|r| r.len() != right.order())
        {
            return Err(Error::InvalidBiset("action tables have the wrong shape".into()));
        }
        Biset::new(left, right, self.size, self.left_action.concat(), self.right_action.concat())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub subgroup_elements: Vec<usize>,
    pub quotient_order: u64,
    pub generator: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorJson {
    pub group_spec: String,
    pub prime: u64,
    pub factors: Vec<FactorJson>,
}

impl DescriptorJson {
    pub fn from_descriptor(d: &GenomeDescriptor, group_spec: &str) -> Self {
        DescriptorJson {
            group_spec: group_spec.to_string(),
            prime: d.prime(),
            factors: d
                .factors()
                .iter()
                .map(|f| FactorJson {
                    subgroup_elements: f.subgroup().elements().to_vec(),
                    quotient_order: f.order(),
                    generator: f.generator(),
                })
                .collect(),
        }
    }

    /// Rebuilds the descriptor on `group`, which must be the group named by
    /// `group_spec`. The basis is revalidated and quotient orders checked.
    pub fn to_descriptor(&self, group: &Arc<Group>) -> Result<GenomeDescriptor> {
        let factors = self
            .factors
            .iter()
            .map(|f| Ok((Subgroup::new(group, f.subgroup_elements.iter().copied())?, Some(f.generator))))
            .collect::<Result<Vec<_>>>()?;
        let d = GenomeDescriptor::from_factors(group, self.prime, factors)?;
        if d.factor_orders() != self.factors.iter().map(|f| f.quotient_order).collect::<Vec<_>>() {
            return Err(Error::DescriptorMismatch("quotient orders do not match the group".into()));
        }
        Ok(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenomeMapJson {
    pub source: DescriptorJson,
    pub target: DescriptorJson,
    pub entries: Vec<Vec<u64>>,
}

impl GenomeMapJson {
    pub fn from_map(m: &GenomeMap, source_spec: &str, target_spec: &str) -> Self {
        GenomeMapJson {
            source: DescriptorJson::from_descriptor(m.source(), source_spec),
            target: DescriptorJson::from_descriptor(m.target(), target_spec),
            entries: m.entries().to_vec(),
        }
    }

    pub fn to_map(&self, source: &Arc<Group>, target: &Arc<Group>) -> Result<GenomeMap> {
        let s = Arc::new(self.source.to_descriptor(source)?);
        let t = Arc::new(self.target.to_descriptor(target)?);
        GenomeMap::new(s, t, self.entries.clone())
    }
}
