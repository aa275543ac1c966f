#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sctree::cc::{Cost, MisrepModel};
use sctree::sctree::generate_profile;
use sctree::{LinearOrder, Profile, Tree};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random recursive tree with shuffled labels.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Tree {
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (labels[i], labels[rng.gen_range(0..i)])).collect();
    Tree::new(n, edges).unwrap()
}

pub fn random_path(rng: &mut impl Rng, n: usize) -> Tree {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    Tree::path(&order).unwrap()
}

/// Renames candidate indices by a random permutation, keeping names aligned.
pub fn shuffle_candidates(rng: &mut impl Rng, p: &Profile) -> Profile {
    let m = p.m();
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let mut names = vec![String::new(); m];
    for c in 0..m {
        names[perm[c]] = p.candidate_name(c).to_string();
    }
    let voters = p
        .voters()
        .iter()
        .map(|o| LinearOrder::new(o.ranking().iter().map(|&c| perm[c]).collect()).unwrap())
        .collect();
    Profile::new(names, voters, p.weights().to_vec()).unwrap()
}

/// Keeps only the listed candidates (by index), in the given order.
pub fn restrict_candidates(p: &Profile, keep: &[usize]) -> Profile {
    let mut new_index = vec![usize::MAX; p.m()];
    for (i, &c) in keep.iter().enumerate() {
        new_index[c] = i;
    }
    let names = keep.iter().map(|&c| p.candidate_name(c).to_string()).collect();
    let voters = p
        .voters()
        .iter()
        .map(|o| {
            LinearOrder::new(
                o.ranking()
                    .iter()
                    .filter(|&&c| new_index[c] != usize::MAX)
                    .map(|&c| new_index[c])
                    .collect(),
            )
            .unwrap()
        })
        .collect();
    Profile::new(names, voters, p.weights().to_vec()).unwrap()
}

/// Generated witness profile on a random tree with `n` vertices, candidates
/// shuffled.
pub fn generated(rng: &mut impl Rng, n: usize) -> (Profile, Tree) {
    let t = random_tree(rng, n);
    let p = generate_profile(&t).unwrap().profile;
    (shuffle_candidates(rng, &p), t)
}

/// Inserts `extra` copies of random voters at random positions.
pub fn with_clones(rng: &mut impl Rng, p: &Profile, extra: usize) -> Profile {
    let mut voters: Vec<LinearOrder> = p.voters().to_vec();
    for _ in 0..extra {
        let src = voters[rng.gen_range(0..voters.len())].clone();
        let at = rng.gen_range(0..=voters.len());
        voters.insert(at, src);
    }
    let n = voters.len();
    Profile::new(p.candidates().to_vec(), voters, vec![1; n]).unwrap()
}

/// Swaps two adjacent candidates in one random voter's ranking.
pub fn perturb(rng: &mut impl Rng, p: &Profile) -> Profile {
    let mut voters: Vec<LinearOrder> = p.voters().to_vec();
    if p.m() >= 2 {
        let v = rng.gen_range(0..voters.len());
        let i = rng.gen_range(0..p.m() - 1);
        let mut r = voters[v].ranking().to_vec();
        r.swap(i, i + 1);
        voters[v] = LinearOrder::new(r).unwrap();
    }
    Profile::new(p.candidates().to_vec(), voters, p.weights().to_vec()).unwrap()
}

pub fn random_profile(rng: &mut impl Rng, n: usize, m: usize) -> Profile {
    let names = (0..m).map(|i| format!("c{i}")).collect();
    let voters = (0..n)
        .map(|_| {
            let mut r: Vec<usize> = (0..m).collect();
            r.shuffle(rng);
            LinearOrder::new(r).unwrap()
        })
        .collect();
    Profile::new(names, voters, vec![1; n]).unwrap()
}

/// Voter `v` of the result is voter `perm[v - 1]` of `p`.
pub fn permute_voters(p: &Profile, perm: &[usize]) -> Profile {
    p.subprofile(perm)
}

/// A mixed bag of small profiles: generated, clone-augmented, perturbed,
/// candidate-restricted and uniformly random.
pub fn mixed_profile(rng: &mut impl Rng, max_n: usize, max_m: usize) -> Profile {
    match rng.gen_range(0..5) {
        0 => {
            let n = rng.gen_range(2..=max_n.min(max_m));
            generated(rng, n).0
        }
        1 => {
            let n = rng.gen_range(2..=max_n.min(max_m));
            let (p, _) = generated(rng, n);
            let extra = rng.gen_range(0..=max_n - n);
            with_clones(rng, &p, extra)
        }
        2 => {
            let n = rng.gen_range(2..=max_n.min(max_m));
            let (p, _) = generated(rng, n);
            perturb(rng, &p)
        }
        3 => {
            let n = rng.gen_range(2..=max_n.min(max_m));
            let (p, _) = generated(rng, n);
            let mut keep: Vec<usize> = (0..p.m()).collect();
            keep.shuffle(rng);
            keep.truncate(rng.gen_range(2..=p.m()));
            keep.sort_unstable();
            restrict_candidates(&p, &keep)
        }
        _ => {
            let n = rng.gen_range(1..=max_n);
            let m = rng.gen_range(2..=max_m);
            random_profile(rng, n, m)
        }
    }
}

/// Random valid positional vector: `s_1 = 0`, nondecreasing, small rational
/// steps (zero steps included).
pub fn random_positional(rng: &mut impl Rng, m: usize) -> MisrepModel {
    let steps = [(0, 1), (1, 2), (1, 1), (3, 2), (2, 1), (1, 3), (5, 1)];
    let mut s = vec![Cost::from_integer(0.into())];
    for _ in 1..m {
        let (a, b) = steps[rng.gen_range(0..steps.len())];
        let next = s.last().unwrap() + Cost::new(a.into(), b.into());
        s.push(next);
    }
    MisrepModel::Positional(s)
}
