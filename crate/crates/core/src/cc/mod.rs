//! Chamberlin-Courant committee selection for profiles that are
//! single-crossing on a tree.

mod dp;
mod misrep;

use serde::Serialize;
use thiserror::Error;

pub use dp::{cc_optimal, cc_optimal_restricted, cc_optimal_with_anchor, dp_table, DpTable};
pub use misrep::{parse_rational, Cost, Misrep, MisrepModel, ModelParseError, Violation};

use crate::model::Profile;
use crate::sctree::NoCutWitness;
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Sum of (weighted) voter costs.
    Utilitarian,
    /// Largest voter cost.
    Egalitarian,
}

impl Mode {
    /// Aggregates `cost` of one voter with weight `weight` into `acc`.
    pub(crate) fn add(self, acc: &mut Cost, cost: &Cost, weight: u64) {
        match self {
            Mode::Utilitarian if weight == 1 => *acc += cost,
            Mode::Utilitarian => *acc += cost * Cost::from_integer(weight.into()),
            Mode::Egalitarian => {
                if *cost > *acc {
                    *acc = cost.clone();
                }
            }
        }
    }
}

/// Representative of every voter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    rep: Vec<usize>,
}

impl Assignment {
    /// `reps[v - 1]` is the candidate representing voter `v`.
    pub fn new(reps: Vec<usize>) -> Self {
        Assignment { rep: reps }
    }

    pub fn of(&self, v: usize) -> usize {
        self.rep[v - 1]
    }

    pub fn reps(&self) -> &[usize] {
        &self.rep
    }

    /// Distinct representatives, ascending by candidate index.
    pub fn committee(&self) -> Vec<usize> {
        let mut c = self.rep.clone();
        c.sort_unstable();
        c.dedup();
        c
    }
}

/// Optimal committee with its assignment and total misrepresentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcResult {
    pub k: usize,
    pub mode: Mode,
    pub phi: Cost,
    pub committee: Vec<usize>,
    pub assignment: Assignment,
}

impl CcResult {
    pub fn named<'a>(&'a self, p: &'a Profile) -> NamedCcResult<'a> {
        NamedCcResult {
            k: self.k,
            mode: self.mode,
            phi: format!("{}/{}", self.phi.numer(), self.phi.denom()),
            committee: self.committee.iter().map(|&c| p.candidate_name(c)).collect(),
            assignment: AssignmentJson(
                self.assignment
                    .reps()
                    .iter()
                    .map(|&c| p.candidate_name(c))
                    .collect(),
            ),
        }
    }
}

#[derive(Serialize)]
pub struct NamedCcResult<'a> {
    pub k: usize,
    pub mode: Mode,
    pub phi: String,
    pub committee: Vec<&'a str>,
    pub assignment: AssignmentJson<'a>,
}

/// Serialises as `{"1": name, "2": name, ...}` in voter order.
pub struct AssignmentJson<'a>(pub Vec<&'a str>);

impl Serialize for AssignmentJson<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (i, name) in self.0.iter().enumerate() {
            map.serialize_entry(&(i + 1).to_string(), name)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CcError {
    #[error("committee size {k} outside 1..={m}")]
    InvalidK { k: usize, m: usize },
    #[error("tree has {tree} vertices but the profile has {voters} voters")]
    SizeMismatch { tree: usize, voters: usize },
    #[error("profile is not single-crossing on the given tree (pair {} {} has no cut)", .0.a, .0.b)]
    NotSingleCrossing(NoCutWitness),
    #[error("misrepresentation table has {table} rows for {voters} voters")]
    ModelMismatch { table: usize, voters: usize },
    #[error("anchor {0} is not a vertex of the tree")]
    BadAnchor(usize),
    #[error("empty committee")]
    EmptyCommittee,
}

/// Total misrepresentation of `w`: weighted sum or maximum of `r(v, w(v))`.
pub fn assignment_cost(p: &Profile, w: &Assignment, r: &Misrep, mode: Mode) -> Cost {
    let mut acc = Cost::zero();
    for v in 1..=p.n() {
        mode.add(&mut acc, r.value(v, w.of(v)), p.weight(v));
    }
    acc
}

/// Gives every voter the committee member they rank highest, which is also
/// their cheapest one under any misrepresentation function.
pub fn best_assignment_for_committee(p: &Profile, committee: &[usize]) -> Result<Assignment, CcError> {
    if committee.is_empty() {
        return Err(CcError::EmptyCommittee);
    }
    Ok(Assignment::new(
        p.voters()
            .iter()
            .map(|o| {
                *committee
                    .iter()
                    .min_by_key(|&&c| o.position(c))
                    .expect("nonempty")
            })
            .collect(),
    ))
}
