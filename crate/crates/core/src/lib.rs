//! Finite permutation groups, racks and their 2-cocycles, graded dimensions of
//! Nichols algebras, and the collapse criteria for conjugacy classes.

pub mod braiding;
pub mod criteria;
pub mod error;
pub mod linalg;
pub mod nichols;
pub mod permcore;
pub mod rack;

pub use braiding::{
    cocycle_from_character, constant_cocycle, diagonal_from_abelian, restrict_cocycle,
    validate_cocycle, BraidedSpace, CharacterCocycles, Cocycle, CocycleLiteral, Cyclotomic,
    DiagonalBraiding, RootOfUnity,
};
pub use error::{Error, Result};
pub use permcore::{
    conjugacy_classes, linear_characters, load_fixture, power_class, Character, ClassTable,
    ConjugacyClass, Permutation, PermutationGroup,
};
pub use rack::{are_isomorphic, Rack, Subrack};
