//! Permutation groups and the character theory of `A5`.

mod characters;
mod perm;

pub use characters::{
    a5_character_table, character_of, decompose_neron_severi, sqrt5, CharacterTable,
    Multiplicities, A5_CLASS_LABELS, A5_CLASS_SIZES,
};
pub use perm::{transitive_orbit_sizes, ConjugacyClass, Perm, PermGroup};

/// `A5` acting on five points.
pub fn a5() -> PermGroup {
    PermGroup::alternating(5)
}
