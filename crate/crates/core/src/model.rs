//! Core domain types: candidates, linear orders, profiles, clone reduction and
//! trees on the voter set.
//!
//! Voters and tree vertices are 1-based (`1..=n`); candidates are 0-based
//! indices into [`Profile::candidates`] and surface by name in files and JSON.

use std::collections::HashMap;
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{ParseError, TreeError};

/// A strict ranking of all `m` candidates, best first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    ranking: Vec<usize>,
    // 1-based position of each candidate
    pos: Vec<usize>,
}

impl LinearOrder {
    /// Returns `None` unless `ranking` is a permutation of `0..ranking.len()`.
    pub fn new(ranking: Vec<usize>) -> Option<Self> {
        let m = ranking.len();
        let mut pos = vec![0; m];
        for (i, &c) in ranking.iter().enumerate() {
            if c >= m || pos[c] != 0 {
                return None;
            }
            pos[c] = i + 1;
        }
        Some(LinearOrder { ranking, pos })
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    /// 1-based position of `c`; the top candidate has position 1.
    pub fn position(&self, c: usize) -> usize {
        self.pos[c]
    }

    #[inline]
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.pos[a] < self.pos[b]
    }

    pub fn top(&self) -> usize {
        self.ranking[0]
    }
}

impl fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.ranking)
    }
}

/// An ordered list of voters over a shared candidate set. Each voter carries a
/// positive integer weight (its multiplicity in the input file).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    candidates: Vec<String>,
    voters: Vec<LinearOrder>,
    weights: Vec<u64>,
}

impl Profile {
    /// Builds a unit-weight profile from rankings given by candidate name.
    ///
    /// Panics if the rankings are not permutations of `candidates`; meant for
    /// fixtures and tests. Use [`Profile::parse`] for untrusted input.
    pub fn from_names(candidates: &[&str], rankings: &[&[&str]]) -> Self {
        let mut text = candidates.join(" ");
        for r in rankings {
            text.push('\n');
            text.push_str(&r.join(" "));
        }
        Profile::parse(&text).expect("invalid profile literal")
    }

    /// Builds a profile from index rankings. Returns `None` if the candidate
    /// names are not unique tokens, a ranking is not a permutation, the voter
    /// list is empty or a weight is zero.
    pub fn new(candidates: Vec<String>, voters: Vec<LinearOrder>, weights: Vec<u64>) -> Option<Self> {
        let m = candidates.len();
        let mut seen = HashMap::new();
        for (i, c) in candidates.iter().enumerate() {
            if c.is_empty() || c.chars().any(char::is_whitespace) || c.starts_with('#') {
                return None;
            }
            if seen.insert(c.as_str(), i).is_some() {
                return None;
            }
        }
        if m == 0 || voters.is_empty() || voters.len() != weights.len() {
            return None;
        }
        if voters.iter().any(|v| v.len() != m) || weights.contains(&0) {
            return None;
        }
        Some(Profile {
            candidates,
            voters,
            weights,
        })
    }

    /// Parses the whitespace-separated profile format: the first non-comment
    /// line names the candidates, every further line is an optional `K*`
    /// multiplicity followed by a full ranking, best first. Lines starting
    /// with `#` are comments.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (header_line, header) = lines.next().ok_or(ParseError::EmptyProfile)?;
        let mut index = HashMap::new();
        let mut candidates = Vec::new();
        for name in header.split_whitespace() {
            if index.insert(name, candidates.len()).is_some() {
                return Err(ParseError::DuplicateCandidate {
                    line: header_line,
                    name: name.to_string(),
                });
            }
            candidates.push(name.to_string());
        }
        let m = candidates.len();

        let mut voters = Vec::new();
        let mut weights = Vec::new();
        for (line, body) in lines {
            let mut tokens = body.split_whitespace().peekable();
            let mut weight = 1;
            if let Some(tok) = tokens.peek().copied().filter(|t| !index.contains_key(t)) {
                if let Some(k) = tok.strip_suffix('*') {
                    weight = match k.parse::<u64>() {
                        Ok(k) if k >= 1 => k,
                        _ => {
                            return Err(ParseError::MalformedMultiplicity {
                                line,
                                token: tok.to_string(),
                            })
                        }
                    };
                    tokens.next();
                }
            }
            let mut ranking = Vec::with_capacity(m);
            let mut used = vec![false; m];
            for name in tokens {
                let &c = index.get(name).ok_or_else(|| ParseError::UnknownCandidate {
                    line,
                    name: name.to_string(),
                })?;
                if used[c] {
                    return Err(ParseError::RepeatedInRanking {
                        line,
                        name: name.to_string(),
                    });
                }
                used[c] = true;
                ranking.push(c);
            }
            if ranking.len() != m {
                return Err(ParseError::IncompleteRanking {
                    line,
                    expected: m,
                    found: ranking.len(),
                });
            }
            voters.push(LinearOrder::new(ranking).expect("checked permutation"));
            weights.push(weight);
        }
        if voters.is_empty() {
            return Err(ParseError::EmptyProfile);
        }
        Ok(Profile {
            candidates,
            voters,
            weights,
        })
    }

    /// Canonical text form; `Profile::parse(&p.to_text()) == Ok(p)`.
    pub fn to_text(&self) -> String {
        let mut out = self.candidates.join(" ");
        out.push('\n');
        for (order, &w) in self.voters.iter().zip(&self.weights) {
            if w != 1 {
                out.push_str(&format!("{w}* "));
            }
            out.push_str(&self.ranking_names(order).join(" "));
            out.push('\n');
        }
        out
    }

    /// Number of voters.
    pub fn n(&self) -> usize {
        self.voters.len()
    }

    /// Number of candidates.
    pub fn m(&self) -> usize {
        self.candidates.len()
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn candidate_name(&self, c: usize) -> &str {
        &self.candidates[c]
    }

    pub fn candidate_index(&self, name: &str) -> Option<usize> {
        self.candidates.iter().position(|c| c == name)
    }

    /// Ranking of voter `v` (1-based).
    pub fn voter(&self, v: usize) -> &LinearOrder {
        &self.voters[v - 1]
    }

    pub fn voters(&self) -> &[LinearOrder] {
        &self.voters
    }

    /// Weight of voter `v` (1-based).
    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v - 1]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn ranking_names(&self, order: &LinearOrder) -> Vec<&str> {
        order
            .ranking()
            .iter()
            .map(|&c| self.candidates[c].as_str())
            .collect()
    }

    /// Same voters with every weight replaced.
    pub fn with_weights(&self, weights: Vec<u64>) -> Option<Self> {
        Profile::new(self.candidates.clone(), self.voters.clone(), weights)
    }

    /// Sub-profile on the given 1-based voters, in the given order.
    pub fn subprofile(&self, voters: &[usize]) -> Profile {
        assert!(!voters.is_empty(), "subprofile needs at least one voter");
        Profile {
            candidates: self.candidates.clone(),
            voters: voters.iter().map(|&v| self.voters[v - 1].clone()).collect(),
            weights: voters.iter().map(|&v| self.weights[v - 1]).collect(),
        }
    }

    /// Every voter of weight `k` replaced by `k` consecutive unit-weight voters.
    pub fn expand(&self) -> Profile {
        let mut voters = Vec::new();
        for (order, &w) in self.voters.iter().zip(&self.weights) {
            voters.extend(std::iter::repeat_n(order.clone(), w as usize));
        }
        let weights = vec![1; voters.len()];
        Profile {
            candidates: self.candidates.clone(),
            voters,
            weights,
        }
    }

    /// True when no two voters share a linear order.
    pub fn is_reduced(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.voters.iter().all(|v| seen.insert(v))
    }

    /// Collapses identical orders into classes, in first-appearance order.
    pub fn reduce(&self) -> ReducedProfile {
        let mut index: HashMap<&LinearOrder, usize> = HashMap::new();
        let mut classes = Vec::new();
        let mut counts = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(self.n());
        for (i, order) in self.voters.iter().enumerate() {
            let c = *index.entry(order).or_insert_with(|| {
                classes.push(order.clone());
                counts.push(0);
                members.push(Vec::new());
                classes.len() - 1
            });
            counts[c] += self.weights[i];
            members[c].push(i + 1);
            class_of.push(c + 1);
        }
        ReducedProfile {
            candidates: self.candidates.clone(),
            classes,
            class_of,
            counts,
            members,
        }
    }
}

impl Serialize for Profile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let weighted = self.weights.iter().any(|&w| w != 1);
        let mut s = serializer.serialize_struct("Profile", 2 + usize::from(weighted))?;
        s.serialize_field("candidates", &self.candidates)?;
        let voters: Vec<Vec<&str>> = self.voters.iter().map(|v| self.ranking_names(v)).collect();
        s.serialize_field("voters", &voters)?;
        if weighted {
            s.serialize_field("weights", &self.weights)?;
        }
        s.end()
    }
}

/// Distinct orders of a profile with their aggregated weights.
///
/// Classes are 1-based, numbered by first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedProfile {
    candidates: Vec<String>,
    classes: Vec<LinearOrder>,
    class_of: Vec<usize>,
    counts: Vec<u64>,
    members: Vec<Vec<usize>>,
}

impl ReducedProfile {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[LinearOrder] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &LinearOrder {
        &self.classes[c - 1]
    }

    /// Class (1-based) of voter `v` (1-based).
    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v - 1]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    /// Total weight of each class, in class order.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Voters (1-based, ascending) belonging to class `c`.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c - 1]
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    /// One voter per class, weighted by the class count.
    pub fn to_profile(&self) -> Profile {
        Profile {
            candidates: self.candidates.clone(),
            voters: self.classes.clone(),
            weights: self.counts.clone(),
        }
    }

    /// One unit-weight voter per class.
    pub fn domain(&self) -> Profile {
        Profile {
            candidates: self.candidates.clone(),
            voters: self.classes.clone(),
            weights: vec![1; self.classes.len()],
        }
    }
}

/// A tree on vertices `1..=n`. Edges are stored as `(u, v)` with `u < v`,
/// sorted, so two trees compare equal iff they have the same edge set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::NoVertices);
        }
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(TreeError::VertexOutOfRange { vertex: x, n });
                }
            }
            list.push((u.min(v), u.max(v)));
        }
        if list.len() > n - 1 {
            return Err(TreeError::WrongEdgeCount { n, found: list.len() });
        }
        let mut dsu = Dsu::new(n + 1);
        for &(u, v) in &list {
            if !dsu.union(u, v) {
                return Err(TreeError::Cycle(u, v));
            }
        }
        if let Some(v) = (2..=n).find(|&v| dsu.find(v) != dsu.find(1)) {
            return Err(TreeError::Disconnected(v));
        }
        debug_assert_eq!(list.len(), n - 1);
        list.sort_unstable();
        let mut adj = vec![Vec::new(); n + 1];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Tree { n, edges: list, adj })
    }

    /// Path `order[0] - order[1] - ...`.
    pub fn path(order: &[usize]) -> Result<Self, TreeError> {
        Tree::new(order.len(), order.windows(2).map(|w| (w[0], w[1])))
    }

    /// Star with the given centre.
    pub fn star(n: usize, centre: usize) -> Result<Self, TreeError> {
        Tree::new(n, (1..=n).filter(|&v| v != centre).map(|v| (centre, v)))
    }

    /// Parses one edge `u v` per non-comment line.
    pub fn parse(text: &str, n: usize) -> Result<Self, ParseError> {
        let edges = parse_edges(text)?;
        Ok(Tree::new(n, edges)?)
    }

    /// Parses an edge list and takes the vertex count to be `edges + 1`.
    pub fn parse_standalone(text: &str) -> Result<Self, ParseError> {
        let edges = parse_edges(text)?;
        Ok(Tree::new(edges.len() + 1, edges)?)
    }

    pub fn to_text(&self) -> String {
        self.edges.iter().map(|(u, v)| format!("{u} {v}\n")).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Vertices of degree 1, ascending.
    pub fn leaves(&self) -> Vec<usize> {
        (1..=self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn is_path(&self) -> bool {
        (1..=self.n).all(|v| self.degree(v) <= 2)
    }

    /// Vertex sequence of a path, starting from its smaller-index endpoint.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        if !self.is_path() {
            return None;
        }
        if self.n == 1 {
            return Some(vec![1]);
        }
        let start = *self.leaves().first()?;
        let mut order = vec![start];
        let mut prev = 0;
        let mut cur = start;
        while let Some(&next) = self.adj[cur].iter().find(|&&x| x != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    /// Vertices reachable from `start` without crossing edge `(u, v)`,
    /// as a membership mask indexed by vertex.
    pub fn side_of(&self, start: usize, (u, v): (usize, usize)) -> Vec<bool> {
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if seen[y] || (x == u && y == v) || (x == v && y == u) {
                    continue;
                }
                seen[y] = true;
                stack.push(y);
            }
        }
        seen
    }

    /// Breadth-first order from `root` (neighbours visited ascending) and the
    /// parent of every vertex (`parent[root] == 0`).
    pub fn bfs(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(self.n);
        let mut parent = vec![0; self.n + 1];
        let mut seen = vec![false; self.n + 1];
        let mut queue = std::collections::VecDeque::from([root]);
        seen[root] = true;
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        (order, parent)
    }

    /// Image under `map[v - 1]`, a permutation of `1..=n`.
    pub fn relabel(&self, map: &[usize]) -> Tree {
        Tree::new(self.n, self.edges.iter().map(|&(u, v)| (map[u - 1], map[v - 1])))
            .expect("relabelling by a permutation preserves tree-ness")
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(n={}, {:?})", self.n, self.edges)
    }
}

impl Serialize for Tree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_map(Some(2))?;
        s.serialize_entry("n", &self.n)?;
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|&(u, v)| [u, v]).collect();
        s.serialize_entry("edges", &edges)?;
        s.end()
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>, ParseError> {
    content_lines(text)
        .map(|(line, body)| {
            let malformed = || ParseError::MalformedEdge {
                line,
                text: body.to_string(),
            };
            let mut it = body.split_whitespace();
            let u = it.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
            let v = it.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
            if it.next().is_some() {
                return Err(malformed());
            }
            Ok((u, v))
        })
        .collect()
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    /// False if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
