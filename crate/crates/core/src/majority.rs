//! Pairwise majority margins, the strict majority relation, representative
//! voters and a randomized Condorcet-domain checker.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::model::{LinearOrder, Profile, ReducedProfile};

/// `margin(a, b)` is the weight of voters ranking `a` above `b` minus the
/// weight ranking `b` above `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginMatrix {
    m: usize,
    entries: Vec<i64>,
}

impl MarginMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn margin(&self, a: usize, b: usize) -> i64 {
        self.entries[a * self.m + b]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.m)
    }
}

pub fn majority_margins(p: &Profile) -> MarginMatrix {
    let m = p.m();
    let mut entries = vec![0i64; m * m];
    for (order, &w) in p.voters().iter().zip(p.weights()) {
        let r = order.ranking();
        for i in 0..m {
            for j in i + 1..m {
                entries[r[i] * m + r[j]] += w as i64;
                entries[r[j] * m + r[i]] -= w as i64;
            }
        }
    }
    MarginMatrix { m, entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairOutcome {
    Beats,
    Loses,
    Tie,
}

/// Sign pattern of a margin matrix together with the transitivity verdict for
/// its strict part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorityRelation {
    m: usize,
    outcomes: Vec<PairOutcome>,
    violation: Option<[usize; 3]>,
}

impl MajorityRelation {
    pub fn outcome(&self, a: usize, b: usize) -> PairOutcome {
        self.outcomes[a * self.m + b]
    }

    /// Strict majority: `a` beats `b`.
    pub fn beats(&self, a: usize, b: usize) -> bool {
        self.outcome(a, b) == PairOutcome::Beats
    }

    pub fn is_transitive(&self) -> bool {
        self.violation.is_none()
    }

    /// Lexicographically first `(a, b, c)` with `a ≻ b`, `b ≻ c` and not `a ≻ c`.
    pub fn violation(&self) -> Option<[usize; 3]> {
        self.violation
    }

    /// True when there are no ties, i.e. the relation is a tournament.
    pub fn is_complete(&self) -> bool {
        (0..self.m).all(|a| (0..self.m).all(|b| a == b || self.outcome(a, b) != PairOutcome::Tie))
    }

    /// The relation read as a ranking, if it is a transitive tournament.
    pub fn as_linear_order(&self) -> Option<LinearOrder> {
        if !self.is_transitive() || !self.is_complete() {
            return None;
        }
        let mut ranking: Vec<usize> = (0..self.m).collect();
        // number of candidates each one beats determines its place
        ranking.sort_by_key(|&a| std::cmp::Reverse((0..self.m).filter(|&b| self.beats(a, b)).count()));
        LinearOrder::new(ranking)
    }

    /// True when `order` ranks `a` above `b` exactly when `a` strictly beats `b`.
    pub fn matches(&self, order: &LinearOrder) -> bool {
        let r = order.ranking();
        (0..self.m).all(|i| (i + 1..self.m).all(|j| self.beats(r[i], r[j])))
    }
}

pub fn strict_majority(mm: &MarginMatrix) -> MajorityRelation {
    let m = mm.m;
    let outcomes: Vec<PairOutcome> = mm
        .entries
        .iter()
        .map(|&e| match e {
            e if e > 0 => PairOutcome::Beats,
            e if e < 0 => PairOutcome::Loses,
            _ => PairOutcome::Tie,
        })
        .collect();
    let beats = |a: usize, b: usize| outcomes[a * m + b] == PairOutcome::Beats;
    let mut violation = None;
    'search: for a in 0..m {
        for b in (0..m).filter(|&b| beats(a, b)) {
            for c in (0..m).filter(|&c| c != a && beats(b, c)) {
                if !beats(a, c) {
                    violation = Some([a, b, c]);
                    break 'search;
                }
            }
        }
    }
    MajorityRelation {
        m,
        outcomes,
        violation,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MajorityError {
    #[error("total voter weight {0} is even; a representative voter is only defined for odd electorates")]
    EvenElectorate(u64),
}

/// Smallest voter (1-based) whose ranking coincides with the strict majority
/// relation, `Ok(None)` if there is none.
pub fn representative_voter(p: &Profile) -> Result<Option<usize>, MajorityError> {
    let total = p.total_weight();
    if total.is_multiple_of(2) {
        return Err(MajorityError::EvenElectorate(total));
    }
    let rel = strict_majority(&majority_margins(p));
    Ok((1..=p.n()).find(|&v| rel.matches(p.voter(v))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Multiplicity drawn for each class.
    pub weights: Vec<u64>,
    /// Candidate indices `a, b, c` with `a ≻ b ≻ c` but not `a ≻ c`.
    pub cycle: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomainReport {
    pub trials: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
}

/// Draws `trials` multiplicity vectors over the classes of `d` (each entry in
/// `0..=max_weight`, odd total) and checks that the strict majority relation
/// of every weighted profile is transitive.
///
/// The first trial uses unit weights when the class count is odd, so a
/// cycle among the bare orders is always reported with weights all 1.
pub fn sample_condorcet_check(d: &ReducedProfile, trials: usize, max_weight: u64, seed: u64) -> DomainReport {
    let max_weight = max_weight.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let domain = d.domain();
    let k = d.len();
    let mut failures = 0;
    let mut counterexample = None;
    for trial in 0..trials {
        let weights: Vec<u64> = if trial == 0 && k % 2 == 1 {
            vec![1; k]
        } else {
            loop {
                let w: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=max_weight)).collect();
                if w.iter().sum::<u64>() % 2 == 1 {
                    break w;
                }
            }
        };
        if let Some(cycle) = weighted_violation(&domain, &weights) {
            failures += 1;
            counterexample.get_or_insert(Counterexample { weights, cycle });
        }
    }
    DomainReport {
        trials,
        failures,
        counterexample,
    }
}

fn weighted_violation(domain: &Profile, weights: &[u64]) -> Option<[usize; 3]> {
    let used: Vec<usize> = (1..=domain.n()).filter(|&v| weights[v - 1] > 0).collect();
    let sub = domain
        .subprofile(&used)
        .with_weights(used.iter().map(|&v| weights[v - 1]).collect())
        .expect("positive weights");
    strict_majority(&majority_margins(&sub)).violation()
}
