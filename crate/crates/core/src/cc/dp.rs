//! Dynamic program over the tree rooted at an anchor leaf.
//!
//! For a committee `C`, the voters whose favourite member of `C` is `c` form
//! the intersection of the subtrees `V_cx`, so an optimal assignment splits
//! the tree into at most `k` connected pieces with one representative each.
//! Rooting the tree at the anchor, every vertex `u` spans a terminal subtree
//! `S_u` (the far side of the edge to its parent, or everything for the
//! anchor). The table stores, for each `S_u`, each prefix `a_1..a_j` of the
//! anchor's ranking and each budget `t`, the cheapest way to cover `S_u` with
//! at most `t` pieces when the piece containing `u` is represented by one of
//! `a_1..a_j`.
//!
//! Children are folded in one at a time: a child either joins the piece of
//! its parent (same representative, budgets overlap by one) or starts a piece
//! of its own (budgets add). This is `O(n * m * k^2)` with `k <= n`.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::misrep::{Cost, Misrep};
use super::{Assignment, CcError, CcResult, Mode};
use crate::model::{Profile, Tree};
use crate::sctree::verify_single_crossing;

#[derive(Clone, Copy, Debug)]
struct Choice {
    /// Budget kept by the parent before this child was merged.
    before: usize,
    /// Budget handed to the child.
    child: usize,
    joined: bool,
}

/// `A[S_u, j, t]` for every vertex `u`, prefix length `j` and budget `t`.
#[derive(Clone, Debug)]
pub struct DpTable {
    anchor: usize,
    order: Vec<usize>,
    m: usize,
    budget: usize,
    /// Common denominator of all stored values.
    scale: BigInt,
    values: Vec<Option<BigInt>>,
}

impl DpTable {
    pub fn anchor(&self) -> usize {
        self.anchor
    }

    /// Candidates `a_1, ..., a_m` as ranked by the anchor voter.
    pub fn anchor_order(&self) -> &[usize] {
        &self.order
    }

    /// Largest budget stored, `min(k, n)`.
    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Optimal cost for the subtree hanging at `u`, representative of `u`
    /// among `a_1..a_j`, at most `t` pieces; `None` if infeasible.
    pub fn value(&self, u: usize, j: usize, t: usize) -> Option<Cost> {
        self.values[self.index(u, j, t)]
            .as_ref()
            .map(|x| Cost::new(x.clone(), self.scale.clone()))
    }

    fn index(&self, u: usize, j: usize, t: usize) -> usize {
        ((u - 1) * self.m + (j - 1)) * self.budget + (t - 1)
    }
}

struct Solved {
    table: DpTable,
    best: Option<(Cost, Assignment)>,
}

fn better<T: Ord>(candidate: &T, current: &Option<T>) -> bool {
    current.as_ref().is_none_or(|c| candidate < c)
}

/// Integer arithmetic the table runs on once every cost is scaled by a
/// common denominator.
trait Scaled: Clone + Ord + Zero + Add<Output = Self> + Mul<Output = Self> + From<u64> {
    fn into_big(self) -> BigInt;
}

impl Scaled for i128 {
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Scaled for BigInt {
    fn into_big(self) -> BigInt {
        self
    }
}

fn weigh<T: Scaled>(mode: Mode, cost: &T, weight: u64) -> T {
    match mode {
        Mode::Utilitarian => cost.clone() * T::from(weight),
        Mode::Egalitarian => cost.clone(),
    }
}

fn join<T: Scaled>(mode: Mode, a: &T, b: &T) -> T {
    match mode {
        Mode::Utilitarian => a.clone() + b.clone(),
        Mode::Egalitarian => a.max(b).clone(),
    }
}

fn solve(
    p: &Profile,
    tree: &Tree,
    k: usize,
    r: &Misrep,
    mode: Mode,
    anchor: usize,
    allowed: &[bool],
) -> Solved {
    let (n, m) = (p.n(), p.m());
    let scale = (1..=n)
        .flat_map(|v| (0..m).map(move |c| r.value(v, c).denom().clone()))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let scaled: Vec<BigInt> = (1..=n)
        .flat_map(|v| (0..m).map(move |c| (v, c)))
        .map(|(v, c)| {
            let x = r.value(v, c);
            x.numer() * (&scale / x.denom())
        })
        .collect();
    // every table entry is at most the largest cost times the total weight
    let largest = scaled.iter().max().cloned().unwrap_or_default();
    let bound = largest * BigInt::from(p.total_weight().max(1));
    let fast: Option<Vec<i128>> = if bound <= BigInt::from(i128::MAX / 2) {
        scaled.iter().map(|x| x.to_i128()).collect()
    } else {
        None
    };
    match fast {
        Some(costs) => solve_scaled(p, tree, k, &costs, &scale, mode, anchor, allowed),
        None => solve_scaled(p, tree, k, &scaled, &scale, mode, anchor, allowed),
    }
}

#[allow(clippy::too_many_arguments)]
fn solve_scaled<T: Scaled>(
    p: &Profile,
    tree: &Tree,
    k: usize,
    costs: &[T],
    scale: &BigInt,
    mode: Mode,
    anchor: usize,
    allowed: &[bool],
) -> Solved {
    let n = p.n();
    let m = p.m();
    let budget = k.min(n);
    let order: Vec<usize> = p.voter(anchor).ranking().to_vec();
    let slot = |j: usize, t: usize| (j - 1) * budget + (t - 1);

    let (bfs, parent) = tree.bfs(anchor);
    let children: Vec<Vec<usize>> = (0..=n)
        .map(|u| {
            if u == 0 {
                return Vec::new();
            }
            tree.neighbors(u)
                .iter()
                .copied()
                .filter(|&c| parent[c] == u && c != anchor)
                .collect()
        })
        .collect();

    let mut open: Vec<Vec<Option<T>>> = vec![Vec::new(); n + 1];
    let mut closed: Vec<Vec<Option<T>>> = vec![Vec::new(); n + 1];
    let mut closed_arg: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    let mut steps: Vec<Vec<Vec<Option<Choice>>>> = vec![Vec::new(); n + 1];

    for &u in bfs.iter().rev() {
        let mut cur: Vec<Option<T>> = vec![None; m * budget];
        for j in 1..=m {
            let c = order[j - 1];
            if allowed[c] {
                cur[slot(j, 1)] = Some(weigh(mode, &costs[(u - 1) * m + c], p.weight(u)));
            }
        }
        for &v in &children[u] {
            let mut next: Vec<Option<T>> = vec![None; m * budget];
            let mut choice: Vec<Option<Choice>> = vec![None; m * budget];
            for j in 1..=m {
                for before in 1..=budget {
                    let Some(base) = &cur[slot(j, before)] else {
                        continue;
                    };
                    for child in 1..=budget {
                        // child joins u's piece: same representative
                        if before + child - 1 <= budget {
                            if let Some(sub) = &open[v][slot(j, child)] {
                                let t = before + child - 1;
                                let total = join(mode, base, sub);
                                if better(&total, &next[slot(j, t)]) {
                                    next[slot(j, t)] = Some(total);
                                    choice[slot(j, t)] = Some(Choice {
                                        before,
                                        child,
                                        joined: true,
                                    });
                                }
                            }
                        }
                        // child starts its own piece
                        if before + child <= budget {
                            if let Some(sub) = &closed[v][child - 1] {
                                let t = before + child;
                                let total = join(mode, base, sub);
                                if better(&total, &next[slot(j, t)]) {
                                    next[slot(j, t)] = Some(total);
                                    choice[slot(j, t)] = Some(Choice {
                                        before,
                                        child,
                                        joined: false,
                                    });
                                }
                            }
                        }
                    }
                }
            }
            cur = next;
            steps[u].push(choice);
        }

        let mut best: Vec<Option<T>> = vec![None; budget];
        let mut arg = vec![(0, 0); budget];
        for t in 1..=budget {
            if t > 1 {
                best[t - 1] = best[t - 2].clone();
                arg[t - 1] = arg[t - 2];
            }
            for j in 1..=m {
                if let Some(c) = &cur[slot(j, t)] {
                    if better(c, &best[t - 1]) {
                        best[t - 1] = Some(c.clone());
                        arg[t - 1] = (j, t);
                    }
                }
            }
        }
        closed[u] = best;
        closed_arg[u] = arg;
        open[u] = cur;
    }

    // prefix minima over j and t give the published table
    let mut values: Vec<Option<T>> = vec![None; n * m * budget];
    for u in 1..=n {
        for j in 1..=m {
            for t in 1..=budget {
                let mut v = open[u][slot(j, t)].clone();
                for prev in [(j > 1).then(|| (j - 1, t)), (t > 1).then(|| (j, t - 1))]
                    .into_iter()
                    .flatten()
                {
                    let idx = ((u - 1) * m + (prev.0 - 1)) * budget + (prev.1 - 1);
                    if let Some(c) = &values[idx] {
                        if better(c, &v) {
                            v = Some(c.clone());
                        }
                    }
                }
                values[((u - 1) * m + (j - 1)) * budget + (t - 1)] = v;
            }
        }
    }
    let table = DpTable {
        anchor,
        order: order.clone(),
        m,
        budget,
        scale: scale.clone(),
        values: values.into_iter().map(|v| v.map(T::into_big)).collect(),
    };

    let best = closed[anchor][budget - 1].clone().map(|phi| {
        let mut rep = vec![0; n];
        let (j0, t0) = closed_arg[anchor][budget - 1];
        let mut stack = vec![(anchor, j0, t0)];
        while let Some((u, j, mut t)) = stack.pop() {
            rep[u - 1] = order[j - 1];
            for (ci, &v) in children[u].iter().enumerate().rev() {
                let c = steps[u][ci][slot(j, t)].expect("reachable state has a choice");
                if c.joined {
                    stack.push((v, j, c.child));
                } else {
                    let (jv, tv) = closed_arg[v][c.child - 1];
                    stack.push((v, jv, tv));
                }
                t = c.before;
            }
        }
        (Cost::new(phi.into_big(), scale.clone()), Assignment::new(rep))
    });
    Solved { table, best }
}

fn check(p: &Profile, tree: &Tree, k: usize, r: &Misrep) -> Result<(), CcError> {
    if k == 0 || k > p.m() {
        return Err(CcError::InvalidK { k, m: p.m() });
    }
    if tree.n() != p.n() {
        return Err(CcError::SizeMismatch {
            tree: tree.n(),
            voters: p.n(),
        });
    }
    if r.n() != p.n() {
        return Err(CcError::ModelMismatch {
            table: r.n(),
            voters: p.n(),
        });
    }
    verify_single_crossing(p, tree).map_err(CcError::NotSingleCrossing)?;
    Ok(())
}

fn default_anchor(tree: &Tree) -> usize {
    tree.leaves().first().copied().unwrap_or(1)
}

fn finish(k: usize, mode: Mode, solved: Solved) -> CcResult {
    let (phi, assignment) = solved.best.expect("at least one candidate is allowed");
    CcResult {
        k,
        mode,
        phi,
        committee: assignment.committee(),
        assignment,
    }
}

/// Optimal `k`-assignment for a profile single-crossing on `tree`, anchored
/// at the smallest-index leaf.
pub fn cc_optimal(p: &Profile, tree: &Tree, k: usize, r: &Misrep, mode: Mode) -> Result<CcResult, CcError> {
    cc_optimal_with_anchor(p, tree, k, r, mode, default_anchor(tree))
}

pub fn cc_optimal_with_anchor(
    p: &Profile,
    tree: &Tree,
    k: usize,
    r: &Misrep,
    mode: Mode,
    anchor: usize,
) -> Result<CcResult, CcError> {
    check(p, tree, k, r)?;
    if anchor == 0 || anchor > tree.n() {
        return Err(CcError::BadAnchor(anchor));
    }
    let allowed = vec![true; p.m()];
    Ok(finish(k, mode, solve(p, tree, k, r, mode, anchor, &allowed)))
}

/// Like [`cc_optimal`], with the committee drawn from `candidates` only.
pub fn cc_optimal_restricted(
    p: &Profile,
    tree: &Tree,
    k: usize,
    r: &Misrep,
    mode: Mode,
    candidates: &[usize],
) -> Result<CcResult, CcError> {
    check(p, tree, k, r)?;
    if candidates.is_empty() {
        return Err(CcError::EmptyCommittee);
    }
    let mut allowed = vec![false; p.m()];
    for &c in candidates {
        allowed[c] = true;
    }
    Ok(finish(
        k,
        mode,
        solve(p, tree, k, r, mode, default_anchor(tree), &allowed),
    ))
}

/// The full table for the given anchor, for inspection.
pub fn dp_table(
    p: &Profile,
    tree: &Tree,
    k: usize,
    r: &Misrep,
    mode: Mode,
    anchor: usize,
) -> Result<DpTable, CcError> {
    check(p, tree, k, r)?;
    if anchor == 0 || anchor > tree.n() {
        return Err(CcError::BadAnchor(anchor));
    }
    let allowed = vec![true; p.m()];
    Ok(solve(p, tree, k, r, mode, anchor, &allowed).table)
}
