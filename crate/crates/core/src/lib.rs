pub mod biset;
pub mod catalog;
pub mod error;
pub mod genetic;
pub mod genome;
pub mod group;
pub mod json;
pub mod transfer;
pub mod verify;

pub use biset::Biset;
pub use error::{Error, Result};
pub use genetic::{genetic_basis, is_genetic, linkage_classes, linked, relative_center, LinkageClasses};
pub use genome::{change_of_basis, faithful_part, genome, GenomeDescriptor, GenomeElement, GenomeFactor, GenomeMap};
pub use group::{ExtraspecialKind, Group, GroupMap, Permutation, Subgroup};
pub use transfer::{genome_component, genome_map, verlagerung, verlagerung_with_representatives, AbelianHom};
