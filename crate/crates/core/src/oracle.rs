//! Exhaustive baselines. Nothing here reuses the cut, peeling or DP code of
//! the modules it checks; each routine works straight from the definitions.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::cc::{assignment_cost, best_assignment_for_committee, CcResult, Cost, Misrep, Mode};
use crate::model::{Profile, Tree};

/// Largest vertex count the tree enumeration accepts.
pub const MAX_TREE_VERTICES: usize = 8;
/// Largest number of committees the brute-force CC solver enumerates.
pub const MAX_COMMITTEES: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} = {value} exceeds the oracle limit {limit}")]
    TooLarge {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("committee size {k} outside 1..={m}")]
    InvalidK { k: usize, m: usize },
}

fn guard(what: &'static str, value: u64, limit: u64) -> Result<(), OracleError> {
    if value > limit {
        Err(OracleError::TooLarge { what, value, limit })
    } else {
        Ok(())
    }
}

/// Every labeled tree on `1..=n`, one per Prüfer sequence.
pub struct TreeIter {
    n: usize,
    seq: Vec<usize>,
    done: bool,
}

pub fn enumerate_labeled_trees(n: usize) -> Result<TreeIter, OracleError> {
    if n == 0 {
        return Err(OracleError::TooLarge {
            what: "n",
            value: 0,
            limit: 0,
        });
    }
    guard("n", n as u64, MAX_TREE_VERTICES as u64)?;
    Ok(TreeIter {
        n,
        seq: vec![1; n.saturating_sub(2)],
        done: false,
    })
}

impl TreeIter {
    fn decode(&self) -> Tree {
        let n = self.n;
        if n == 1 {
            return Tree::new(1, []).expect("single vertex");
        }
        let mut degree = vec![1usize; n + 1];
        for &x in &self.seq {
            degree[x] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &x in &self.seq {
            let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf remains");
            edges.push((leaf, x));
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        Tree::new(n, edges).expect("Prüfer sequences decode to trees")
    }
}

impl Iterator for TreeIter {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.done {
            return None;
        }
        let tree = self.decode();
        // advance the base-n odometer
        let mut i = self.seq.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.seq[i] < self.n {
                self.seq[i] += 1;
                break;
            }
            self.seq[i] = 1;
        }
        Some(tree)
    }
}

/// For every pair `a < b`: `Some(Some(edge))` for an edge cut, `Some(None)`
/// for a unanimous pair, `None` if no edge separates the two camps.
fn cuts_by_edge_removal(p: &Profile, t: &Tree) -> Vec<Option<Option<(usize, usize)>>> {
    let n = p.n();
    let sides: Vec<(usize, usize, Vec<bool>)> = t
        .edges()
        .iter()
        .map(|&(u, v)| {
            // flood from u without crossing (u, v)
            let mut mark = vec![false; n + 1];
            let mut stack = vec![u];
            mark[u] = true;
            while let Some(x) = stack.pop() {
                for &y in t.neighbors(x) {
                    if !mark[y] && !(x == u && y == v) {
                        mark[y] = true;
                        stack.push(y);
                    }
                }
            }
            (u, v, mark)
        })
        .collect();
    let m = p.m();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let prefers_a: Vec<bool> = (1..=n).map(|v| p.voter(v).prefers(a, b)).collect();
            if prefers_a.iter().all(|&x| x) || prefers_a.iter().all(|&x| !x) {
                out.push(Some(None));
                continue;
            }
            let hit = sides.iter().find(|(_, _, mark)| {
                let near_a = (1..=n).all(|v| mark[v] == prefers_a[v - 1]);
                let near_b = (1..=n).all(|v| mark[v] != prefers_a[v - 1]);
                near_a || near_b
            });
            out.push(hit.map(|&(u, v, _)| Some((u, v))));
        }
    }
    out
}

/// Single-crossedness of `p` on `t`, and whether `t` is then minimal.
pub fn check_tree(p: &Profile, t: &Tree) -> Option<bool> {
    let cuts = cuts_by_edge_removal(p, t);
    if cuts.iter().any(Option::is_none) {
        return None;
    }
    let minimal = t.edges().iter().all(|e| cuts.contains(&Some(Some(*e))));
    Some(minimal)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exhaustive {
    /// Trees on the distinct orders (classes) on which they are single-crossing.
    pub trees: Vec<Tree>,
    /// Those among `trees` without a collapsible edge.
    pub minimal: Vec<Tree>,
}

impl Exhaustive {
    pub fn single_crossing(&self) -> bool {
        !self.trees.is_empty()
    }
}

/// Tries every labeled tree on the distinct orders of `p`.
pub fn recognize_exhaustive(p: &Profile) -> Result<Exhaustive, OracleError> {
    let domain = p.reduce().domain();
    let mut trees = Vec::new();
    let mut minimal = Vec::new();
    for t in enumerate_labeled_trees(domain.n())? {
        if let Some(is_min) = check_tree(&domain, &t) {
            if is_min {
                minimal.push(t.clone());
            }
            trees.push(t);
        }
    }
    Ok(Exhaustive { trees, minimal })
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Optimum over all `k`-subsets of candidates; the lexicographically smallest
/// optimal subset wins ties.
pub fn cc_brute_force(p: &Profile, k: usize, r: &Misrep, mode: Mode) -> Result<CcResult, OracleError> {
    let m = p.m();
    if k == 0 || k > m {
        return Err(OracleError::InvalidK { k, m });
    }
    guard("C(m, k)", binomial(m as u64, k as u64), MAX_COMMITTEES)?;
    let mut subset: Vec<usize> = (0..k).collect();
    let mut best: Option<(Cost, crate::cc::Assignment)> = None;
    loop {
        let w = best_assignment_for_committee(p, &subset).expect("k >= 1");
        let cost = assignment_cost(p, &w, r, mode);
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, w));
        }
        // next k-subset in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| subset[i] < m - k + i) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    let (phi, assignment) = best.unwrap_or_else(|| (Cost::zero(), crate::cc::Assignment::new(vec![])));
    Ok(CcResult {
        k,
        mode,
        phi,
        committee: assignment.committee(),
        assignment,
    })
}

/// A voter order along which every pair flips at most once, if one exists.
/// Depth-first over permutations, pruning as soon as a pair flips twice.
pub fn classical_sc_check(p: &Profile) -> Result<Option<Vec<usize>>, OracleError> {
    let n = p.n();
    guard("n", n as u64, MAX_TREE_VERTICES as u64)?;
    let m = p.m();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let mut line = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    let mut flips = vec![0u8; pairs.len()];
    Ok(extend_line(p, &pairs, &mut line, &mut used, &mut flips).then_some(line))
}

fn extend_line(
    p: &Profile,
    pairs: &[(usize, usize)],
    line: &mut Vec<usize>,
    used: &mut [bool],
    flips: &mut [u8],
) -> bool {
    if line.len() == p.n() {
        return true;
    }
    for v in 1..=p.n() {
        if used[v] {
            continue;
        }
        let changed: Vec<usize> = match line.last() {
            None => Vec::new(),
            Some(&last) => (0..pairs.len())
                .filter(|&i| {
                    let (a, b) = pairs[i];
                    p.voter(last).prefers(a, b) != p.voter(v).prefers(a, b)
                })
                .collect(),
        };
        if changed.iter().any(|&i| flips[i] > 0) {
            continue;
        }
        for &i in &changed {
            flips[i] += 1;
        }
        used[v] = true;
        line.push(v);
        if extend_line(p, pairs, line, used, flips) {
            return true;
        }
        line.pop();
        used[v] = false;
        for &i in &changed {
            flips[i] -= 1;
        }
    }
    false
}
