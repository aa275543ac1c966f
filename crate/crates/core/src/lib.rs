//! Preference profiles that are single-crossing with respect to a tree of
//! voters.
//!
//! * [`sctree`]: cut tables, verification against a given tree, recognition
//!   of the unique minimal tree, witness profiles for any tree.
//! * [`majority`]: majority margins, transitivity and representative voters.
//! * [`cc`]: Chamberlin-Courant committee selection by dynamic programming
//!   over the tree.
//! * [`oracle`]: exhaustive baselines used to cross-check all of the above.

pub mod cc;
pub mod error;
pub mod fixtures;
pub mod majority;
pub mod model;
pub mod oracle;
pub mod sctree;

pub use error::{ParseError, TreeError};
pub use model::{LinearOrder, Profile, ReducedProfile, Tree};
