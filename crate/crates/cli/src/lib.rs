pub mod commands;
pub mod spec;

pub use spec::{parse_biset_spec, parse_group_spec, BisetSpec, GroupSpec, SpecError};
