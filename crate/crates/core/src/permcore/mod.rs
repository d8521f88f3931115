//! Permutation groups small enough to enumerate in full.

mod character;
mod classes;
mod file;
pub mod fixtures;
mod group;
mod perm;

pub use character::{derived_subgroup_brute_force, linear_characters, Abelianization, Character};
pub use classes::{conjugacy_classes, power_class, ClassSummary, ClassTable, ConjugacyClass};
pub use file::GroupSpec;
pub use fixtures::{find_fixture, load_fixture, FIXTURES};
pub use group::{orbit_under_conjugation, PermutationGroup, DEFAULT_ORDER_CAP};
pub use perm::Permutation;
