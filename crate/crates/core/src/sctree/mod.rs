//! Single-crossing structure on trees: cuts and verification, potential
//! leaves and recognition of the minimal tree, witness-profile generation and
//! the line (hereditary) test.

mod cut;
mod generate;
mod recognize;

pub use cut::{
    collapsible_edges, find_cut, verify_single_crossing, Cut, CutJson, CutKind, CutTable, NamedCut,
    NamedCutTable, NoCutWitness, Unanimous,
};
pub use generate::{generate_profile, Generated, TooSmall};
pub use recognize::{
    hereditary_check, potential_leaves, recognize, Hereditary, NamedRecognition, NotReduced,
    NotSingleCrossing, PeelStep, PotentialLeaf, RecognitionResult,
};
