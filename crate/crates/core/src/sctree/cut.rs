use serde::Serialize;

use crate::model::{Profile, Tree};

/// Which candidate of the pair every voter prefers, for a virtual cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unanimous {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutKind {
    /// Removing `(u, v)` separates the voters preferring `a` (the side of
    /// `u`) from those preferring `b` (the side of `v`).
    Edge {
        u: usize,
        v: usize,
    },
    Virtual(Unanimous),
}

/// The `ab`-cut of a candidate pair on a given tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub a: usize,
    pub b: usize,
    pub kind: CutKind,
    /// Voters ranking `a` above `b`, ascending.
    pub prefer_a: Vec<usize>,
    /// Voters ranking `b` above `a`, ascending.
    pub prefer_b: Vec<usize>,
}

impl Cut {
    /// Cut edge as stored in the tree (`u < v`), if not virtual.
    pub fn edge(&self) -> Option<(usize, usize)> {
        match self.kind {
            CutKind::Edge { u, v } => Some((u.min(v), u.max(v))),
            CutKind::Virtual(_) => None,
        }
    }
}

/// Why a pair has no cut: one side is split across several components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoCutWitness {
    pub a: usize,
    pub b: usize,
    /// The disconnected side: voters preferring `a` (`Unanimous::A`) or `b`.
    pub side: Unanimous,
    /// Lexicographically smallest pair of same-side voters that lie in
    /// different components of that side.
    pub vertices: (usize, usize),
}

/// Cut of `(a, b)` on `t`, or a witness that the voters preferring one of
/// them do not form a subtree.
pub fn find_cut(p: &Profile, t: &Tree, a: usize, b: usize) -> Result<Cut, NoCutWitness> {
    assert_ne!(a, b, "a cut needs two distinct candidates");
    assert_eq!(p.n(), t.n(), "tree and profile disagree on the voter count");
    let n = p.n();
    let mut in_a = vec![false; n + 1];
    let mut prefer_a = Vec::new();
    let mut prefer_b = Vec::new();
    for (i, order) in p.voters().iter().enumerate() {
        let v = i + 1;
        if order.prefers(a, b) {
            in_a[v] = true;
            prefer_a.push(v);
        } else {
            prefer_b.push(v);
        }
    }
    if prefer_b.is_empty() || prefer_a.is_empty() {
        let side = if prefer_b.is_empty() {
            Unanimous::A
        } else {
            Unanimous::B
        };
        return Ok(Cut {
            a,
            b,
            kind: CutKind::Virtual(side),
            prefer_a,
            prefer_b,
        });
    }
    for (side, members, flag) in [(Unanimous::A, &prefer_a, true), (Unanimous::B, &prefer_b, false)] {
        let reached = reach_within(t, members[0], |x| in_a[x] == flag);
        if let Some(&y) = members.iter().find(|&&y| !reached[y]) {
            return Err(NoCutWitness {
                a,
                b,
                side,
                vertices: (members[0], y),
            });
        }
    }
    // both sides are subtrees, so exactly one edge joins them
    let (u, v) = t
        .edges()
        .iter()
        .find(|&&(x, y)| in_a[x] != in_a[y])
        .map(|&(x, y)| if in_a[x] { (x, y) } else { (y, x) })
        .expect("two subtrees partitioning a tree are joined by an edge");
    Ok(Cut {
        a,
        b,
        kind: CutKind::Edge { u, v },
        prefer_a,
        prefer_b,
    })
}

fn reach_within(t: &Tree, start: usize, keep: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; t.n() + 1];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(x) = stack.pop() {
        for &y in t.neighbors(x) {
            if !seen[y] && keep(y) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// One cut per unordered candidate pair `a < b`, in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutTable {
    m: usize,
    cuts: Vec<Cut>,
}

impl CutTable {
    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    pub fn get(&self, a: usize, b: usize) -> &Cut {
        let (x, y) = (a.min(b), a.max(b));
        // offset of row x in the upper triangle
        let row = x * (2 * self.m - x - 1) / 2;
        &self.cuts[row + (y - x - 1)]
    }

    pub fn named<'a>(&'a self, p: &'a Profile) -> NamedCutTable<'a> {
        NamedCutTable {
            pairs: self
                .cuts
                .iter()
                .map(|c| NamedCut {
                    a: p.candidate_name(c.a),
                    b: p.candidate_name(c.b),
                    cut: match c.kind {
                        CutKind::Edge { u, v } => CutJson::Edge([u, v]),
                        CutKind::Virtual(Unanimous::A) => CutJson::Virtual("a"),
                        CutKind::Virtual(Unanimous::B) => CutJson::Virtual("b"),
                    },
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct NamedCutTable<'a> {
    pub pairs: Vec<NamedCut<'a>>,
}

#[derive(Serialize)]
pub struct NamedCut<'a> {
    pub a: &'a str,
    pub b: &'a str,
    pub cut: CutJson,
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CutJson {
    Edge([usize; 2]),
    Virtual(&'static str),
}

/// Profile is single-crossing on `t` iff every pair has a cut; reports the
/// first failing pair in index order otherwise.
pub fn verify_single_crossing(p: &Profile, t: &Tree) -> Result<CutTable, NoCutWitness> {
    let m = p.m();
    let mut cuts = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for a in 0..m {
        for b in a + 1..m {
            cuts.push(find_cut(p, t, a, b)?);
        }
    }
    Ok(CutTable { m, cuts })
}

/// Edges that are the cut of no pair. Empty iff `t` is minimal for the profile.
pub fn collapsible_edges(t: &Tree, ct: &CutTable) -> Vec<(usize, usize)> {
    let mut used = std::collections::HashSet::new();
    for cut in ct.cuts() {
        if let Some(e) = cut.edge() {
            used.insert(e);
        }
    }
    t.edges().iter().copied().filter(|e| !used.contains(e)).collect()
}
