use thiserror::Error;

use crate::model::{LinearOrder, Profile, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("profile generation needs a tree with at least two vertices, got {0}")]
pub struct TooSmall(pub usize);

/// Profile witnessing single-crossedness on a given tree.
#[derive(Clone, Debug)]
pub struct Generated {
    pub profile: Profile,
    /// Candidate index introduced for each vertex, `candidate_of[v - 1]`.
    pub candidate_of: Vec<usize>,
}

/// Builds a reduced profile over exactly `n` candidates that is single-crossing
/// on `t`, with `t` its minimal tree.
///
/// Vertices are taken in breadth-first order from vertex 1. Vertex `v` owns
/// candidate `a{v}` (index `v - 1`). When `v` is attached below `u`, voter `v`
/// copies `u`'s ranking with `a{v}` placed just above `a{u}`, and every
/// existing voter gets `a{v}` just below `a{u}`.
pub fn generate_profile(t: &Tree) -> Result<Generated, TooSmall> {
    let n = t.n();
    if n < 2 {
        return Err(TooSmall(n));
    }
    let (order, parent) = t.bfs(1);
    // rankings over vertex labels; vertex v stands for candidate v - 1
    let mut rankings: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let (first, second) = (order[0], order[1]);
    rankings[first] = vec![first, second];
    rankings[second] = vec![second, first];
    let mut placed = vec![first, second];

    for &v in &order[2..] {
        let u = parent[v];
        for &x in &placed {
            let r = &mut rankings[x];
            let at = r.iter().position(|&c| c == u).expect("parent ranked");
            r.insert(at + 1, v);
        }
        let mut own = rankings[u].clone();
        let at = own.iter().position(|&c| c == v).expect("just inserted");
        // v sits right after u in the copy; swap it in front of u
        own.swap(at - 1, at);
        rankings[v] = own;
        placed.push(v);
    }

    let candidates = (1..=n).map(|v| format!("a{v}")).collect();
    let voters = (1..=n)
        .map(|v| LinearOrder::new(rankings[v].iter().map(|&c| c - 1).collect()).expect("permutation"))
        .collect();
    let profile = Profile::new(candidates, voters, vec![1; n]).expect("well-formed generated profile");
    Ok(Generated {
        profile,
        candidate_of: (0..n).collect(),
    })
}
