use serde::Serialize;
use thiserror::Error;

use super::cut::{verify_single_crossing, CutTable, NamedCutTable};
use crate::model::{LinearOrder, Profile, ReducedProfile, Tree};

/// A voter whose removal does not change single-crossedness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PotentialLeaf {
    /// 1-based voter index.
    pub voter: usize,
    /// Ordered pairs `(a, b)` that only this voter ranks as `a ≻ b`.
    pub unique_pairs: Vec<(usize, usize)>,
    /// Smallest other voter agreeing with `voter` on every remaining pair.
    pub witness: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("profile is not reduced: voters {0} and {1} share a ranking")]
pub struct NotReduced(pub usize, pub usize);

/// Pair counts over a set of orders: `count[a * m + b]` voters rank `a ≻ b`.
struct PairCounts {
    m: usize,
    count: Vec<u32>,
}

impl PairCounts {
    fn new(orders: &[&LinearOrder]) -> Self {
        let m = orders.first().map_or(0, |o| o.len());
        let mut count = vec![0; m * m];
        for o in orders {
            let r = o.ranking();
            for i in 0..m {
                for j in i + 1..m {
                    count[r[i] * m + r[j]] += 1;
                }
            }
        }
        PairCounts { m, count }
    }

    fn unique(&self, a: usize, b: usize) -> bool {
        self.count[a * self.m + b] == 1
    }
}

/// Unique pairs of `orders[i]` and its smallest valid witness, both as
/// indices into `orders`.
fn leaf_certificate(
    orders: &[&LinearOrder],
    counts: &PairCounts,
    i: usize,
) -> Option<(Vec<(usize, usize)>, usize)> {
    let own = orders[i];
    let r = own.ranking();
    let m = r.len();
    let mut unique = Vec::new();
    for x in 0..m {
        for y in x + 1..m {
            if counts.unique(r[x], r[y]) {
                unique.push((r[x], r[y]));
            }
        }
    }
    if unique.is_empty() {
        return None;
    }
    let witness = (0..orders.len()).filter(|&k| k != i).find(|&k| {
        let other = orders[k];
        (0..m).all(|x| (x + 1..m).all(|y| counts.unique(r[x], r[y]) || other.prefers(r[x], r[y])))
    })?;
    unique.sort_unstable();
    Some((unique, witness))
}

/// All potential leaves of a reduced profile, ascending by voter.
pub fn potential_leaves(p: &Profile) -> Result<Vec<PotentialLeaf>, NotReduced> {
    check_reduced(p)?;
    let orders: Vec<&LinearOrder> = p.voters().iter().collect();
    let counts = PairCounts::new(&orders);
    Ok((0..orders.len())
        .filter_map(|i| {
            leaf_certificate(&orders, &counts, i).map(|(unique_pairs, k)| PotentialLeaf {
                voter: i + 1,
                unique_pairs,
                witness: k + 1,
            })
        })
        .collect())
}

fn check_reduced(p: &Profile) -> Result<(), NotReduced> {
    let mut seen = std::collections::HashMap::new();
    for v in 1..=p.n() {
        if let Some(&u) = seen.get(p.voter(v)) {
            return Err(NotReduced(u, v));
        }
        seen.insert(p.voter(v), v);
    }
    Ok(())
}

/// One peeling step: class `leaf` was removed and hangs off class `attached_to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PeelStep {
    pub leaf: usize,
    pub attached_to: usize,
}

/// Minimal tree of a single-crossing profile, lifted to all voters.
#[derive(Clone, Debug)]
pub struct RecognitionResult {
    pub reduced: ReducedProfile,
    /// Minimal tree on the classes of `reduced`.
    pub reduced_tree: Tree,
    /// Tree on all voters; clones of a class hang as a path off its first
    /// member.
    pub full_tree: Tree,
    pub cut_table: CutTable,
    pub peel_order: Vec<PeelStep>,
}

impl RecognitionResult {
    pub fn named<'a>(&'a self, p: &'a Profile) -> NamedRecognition<'a> {
        NamedRecognition {
            single_crossing: true,
            classes: (1..=self.reduced.len())
                .map(|c| self.reduced.members(c))
                .collect(),
            reduced_tree: &self.reduced_tree,
            full_tree: &self.full_tree,
            cut_table: self.cut_table.named(p),
            peel_order: &self.peel_order,
        }
    }
}

#[derive(Serialize)]
pub struct NamedRecognition<'a> {
    pub single_crossing: bool,
    pub classes: Vec<&'a [usize]>,
    pub reduced_tree: &'a Tree,
    pub full_tree: &'a Tree,
    pub cut_table: NamedCutTable<'a>,
    pub peel_order: &'a [PeelStep],
}

/// Peeling got stuck: these classes (and their voters) admit no potential leaf.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Error)]
#[error("not single-crossing on any tree: classes {stuck_classes:?} have no potential leaf")]
pub struct NotSingleCrossing {
    pub stuck_classes: Vec<usize>,
    pub stuck_voters: Vec<usize>,
}

/// Decides whether `p` is single-crossing on some tree and builds the minimal
/// one by repeatedly peeling the smallest-index potential leaf.
pub fn recognize(p: &Profile) -> Result<RecognitionResult, NotSingleCrossing> {
    let reduced = p.reduce();
    let classes = reduced.classes();
    let mut remaining: Vec<usize> = (0..classes.len()).collect();
    let mut peel_order = Vec::new();

    while remaining.len() > 1 {
        let orders: Vec<&LinearOrder> = remaining.iter().map(|&c| &classes[c]).collect();
        let counts = PairCounts::new(&orders);
        let found =
            (0..orders.len()).find_map(|i| leaf_certificate(&orders, &counts, i).map(|(_, k)| (i, k)));
        let Some((i, k)) = found else {
            let stuck_classes: Vec<usize> = remaining.iter().map(|c| c + 1).collect();
            let mut stuck_voters: Vec<usize> = stuck_classes
                .iter()
                .flat_map(|&c| reduced.members(c).iter().copied())
                .collect();
            stuck_voters.sort_unstable();
            return Err(NotSingleCrossing {
                stuck_classes,
                stuck_voters,
            });
        };
        peel_order.push(PeelStep {
            leaf: remaining[i] + 1,
            attached_to: remaining[k] + 1,
        });
        remaining.remove(i);
    }

    let reduced_tree = Tree::new(classes.len(), peel_order.iter().map(|s| (s.leaf, s.attached_to)))
        .expect("every peeled class attaches to a class still present");

    let rep = |c: usize| reduced.members(c)[0];
    let mut edges: Vec<(usize, usize)> = reduced_tree
        .edges()
        .iter()
        .map(|&(c, d)| (rep(c), rep(d)))
        .collect();
    for c in 1..=reduced.len() {
        edges.extend(reduced.members(c).windows(2).map(|w| (w[0], w[1])));
    }
    let full_tree = Tree::new(p.n(), edges).expect("clone chains extend a tree");
    let cut_table = verify_single_crossing(p, &full_tree)
        .expect("a peeled profile is single-crossing on the rebuilt tree");

    Ok(RecognitionResult {
        reduced,
        reduced_tree,
        full_tree,
        cut_table,
        peel_order,
    })
}

/// Outcome of the hereditary test on a recognized profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hereditary {
    /// The minimal tree is a path; voters listed along it, clones adjacent.
    Line(Vec<usize>),
    /// Three voters adjacent (in the minimal tree) to a vertex of degree at
    /// least three; their sub-profile is single-crossing on no tree.
    NonLineWitness { centre: usize, voters: [usize; 3] },
}

/// Every sub-profile is single-crossing iff the minimal tree is a path.
pub fn hereditary_check(r: &RecognitionResult) -> Hereditary {
    let t = &r.reduced_tree;
    let rep = |c: usize| r.reduced.members(c)[0];
    match t.path_order() {
        Some(order) => Hereditary::Line(
            order
                .iter()
                .flat_map(|&c| r.reduced.members(c).iter().copied())
                .collect(),
        ),
        None => {
            let centre = (1..=t.n())
                .find(|&v| t.degree(v) >= 3)
                .expect("a tree that is not a path has a vertex of degree three");
            let nb = t.neighbors(centre);
            Hereditary::NonLineWitness {
                centre: rep(centre),
                voters: [rep(nb[0]), rep(nb[1]), rep(nb[2])],
            }
        }
    }
}
