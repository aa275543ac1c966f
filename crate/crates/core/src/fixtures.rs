//! Small named profiles and trees used throughout the tests and examples.
//! The same data ships as text files under `fixtures/`.

use crate::model::{Profile, Tree};

pub const SMALLSTAR_PROFILE: &str = include_str!("../fixtures/smallstar.profile");
pub const SMALLSTAR_TREE: &str = include_str!("../fixtures/smallstar.tree");
pub const TWO_PROFILE: &str = include_str!("../fixtures/two.profile");
pub const TWO_TREE: &str = include_str!("../fixtures/two.tree");
pub const UNANIMOUS4_PROFILE: &str = include_str!("../fixtures/unanimous4.profile");
pub const LATIN4_PROFILE: &str = include_str!("../fixtures/latin4.profile");

/// Voters `abcd`, `acbd`, `dacb`, `cbad`; single-crossing on the star
/// centred at voter 2 but not on any line.
pub fn smallstar() -> Profile {
    Profile::parse(SMALLSTAR_PROFILE).expect("fixture")
}

pub fn smallstar_tree() -> Tree {
    Tree::parse(SMALLSTAR_TREE, 4).expect("fixture")
}

/// Two voters with opposite orders over two candidates.
pub fn two() -> Profile {
    Profile::parse(TWO_PROFILE).expect("fixture")
}

pub fn two_tree() -> Tree {
    Tree::parse(TWO_TREE, 2).expect("fixture")
}

/// Four identical voters `abcd`.
pub fn unanimous4() -> Profile {
    Profile::parse(UNANIMOUS4_PROFILE).expect("fixture")
}

/// The four cyclic shifts of `abcd`.
pub fn latin4() -> Profile {
    Profile::parse(LATIN4_PROFILE).expect("fixture")
}

/// `abc`, `bca`, `cab`: the Condorcet paradox.
pub fn condorcet_cycle() -> Profile {
    Profile::from_names(
        &["a", "b", "c"],
        &[&["a", "b", "c"], &["b", "c", "a"], &["c", "a", "b"]],
    )
}
