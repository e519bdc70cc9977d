//! Reduction from k-clique to the three-player threat problem.
//!
//! Given a graph G and a label count k, [`build_clique_game`] produces a
//! 2k x kn x kn game in which the punishers each pick a (label, vertex)
//! pair and player 1 picks a label and which punisher to interrogate.
//! Player 1 scores whenever the punishers fail to coordinate (same label
//! but different vertices, different labels but the same vertex, or two
//! non-adjacent vertices) or whenever the guessed label matches. If G has
//! a k-clique the punishers can agree on a labelled clique and hold player
//! 1 to exactly 1/k ([`clique_profile`]); without one, every profile leaks
//! strictly more. Player 1 can always guess the most likely label of one
//! punisher, so 1/k is a floor for every profile whatsoever.
//!
//! [`find_clique_bruteforce`] supplies ground truth at test scale.

use crate::error::{Error, Result};
use crate::game::{BullyProfile, MixedStrategy, PayoffTensor};
use crate::game::MAX_TENSOR_ENTRIES;
use crate::rational::{rat, rat_int};
use crate::support_enum::{binom, enumerate_supports};

/// Cap on C(n,k) for the brute-force clique search.
pub const CLIQUE_ENUM_BUDGET: u128 = 1_000_000;

/// Simple undirected graph on vertices 0..n-1 with a sorted, deduplicated
/// edge list (each edge stored once as (min, max)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::validation(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::validation(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(Error::validation(format!(
                    "duplicate edge ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }
        Ok(Graph { n, edges: norm })
    }

    /// Complete graph on n vertices.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph { n, edges }
    }

    /// Cycle 0-1-...-(n-1)-0; requires n >= 3 to be simple.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::validation("a simple cycle needs at least 3 vertices"));
        }
        let edges: Vec<(usize, usize)> = (0..n).map(|u| (u, (u + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Parse the plain-text format: a header line `n m` followed by m lines
    /// `u v` (0-indexed). Blank lines are ignored.
    pub fn from_text(text: &str) -> Result<Graph> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::validation("empty graph file"))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for k in 0..m {
            let line = lines.next().ok_or_else(|| {
                Error::validation(format!("header promises {m} edges but only {k} lines follow"))
            })?;
            edges.push(parse_pair(line)?);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::validation(format!(
                "unexpected content after the edge list: {extra:?}"
            )));
        }
        Graph::new(n, &edges)
    }

    /// Inverse of [`Graph::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::validation(format!(
            "expected two integers per line, got {line:?}"
        )));
    }
    let a = fields[0]
        .parse()
        .map_err(|_| Error::validation(format!("not an integer: {:?}", fields[0])))?;
    let b = fields[1]
        .parse()
        .map_err(|_| Error::validation(format!("not an integer: {:?}", fields[1])))?;
    Ok((a, b))
}

/// Build the 2k x kn x kn coordination game for graph `g` and label count
/// `k`. Player 1's action is (guessed label x1, interrogated punisher i):
/// index (x1-1)*2 + (i-2) with labels 1..k. Each punisher's action is
/// (label x, vertex v): index (x-1)*n + v. Player 1 scores 1 iff the guess
/// matches the interrogated punisher's label, or the punishers pick the
/// same label with different vertices, different labels with the same
/// vertex, or two distinct non-adjacent vertices.
pub fn build_clique_game(g: &Graph, k: usize) -> Result<PayoffTensor> {
    if k < 2 {
        return Err(Error::validation("need at least 2 labels"));
    }
    if g.n == 0 {
        return Err(Error::validation("graph needs at least one vertex"));
    }
    let n = g.n;
    let entries = 2 * (k as u128) * ((k * n) as u128).pow(2);
    if entries > MAX_TENSOR_ENTRIES {
        return Err(Error::Budget {
            what: "clique game entries",
            required: entries,
            cap: MAX_TENSOR_ENTRIES,
        });
    }
    let one = rat_int(1);
    let zero = rat_int(0);
    let mut data = Vec::with_capacity(entries as usize);
    for x1 in 1..=k {
        for i in 2..=3usize {
            for x2 in 1..=k {
                for v2 in 0..n {
                    for x3 in 1..=k {
                        for v3 in 0..n {
                            let xi = if i == 2 { x2 } else { x3 };
                            let win = x1 == xi
                                || (x2 == x3 && v2 != v3)
                                || (x2 != x3 && v2 == v3)
                                || (v2 != v3 && !g.has_edge(v2, v3));
                            data.push(if win { one.clone() } else { zero.clone() });
                        }
                    }
                }
            }
        }
    }
    PayoffTensor::new(vec![2 * k, k * n, k * n], data)
}

/// The coordinated threat for a k-clique: both punishers play (label j,
/// j-th clique vertex) with probability 1/k each, labelling the clique in
/// the order given. Against this profile every best response of player 1
/// yields exactly 1/k.
pub fn clique_profile(g: &Graph, k: usize, clique: &[usize]) -> Result<BullyProfile> {
    if k < 2 {
        return Err(Error::validation("need at least 2 labels"));
    }
    if clique.len() != k {
        return Err(Error::validation(format!(
            "clique has {} vertices but k = {k}",
            clique.len()
        )));
    }
    for &v in clique {
        if v >= g.n {
            return Err(Error::validation(format!(
                "vertex {v} outside 0..{}",
                g.n
            )));
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            if clique[a] == clique[b] {
                return Err(Error::validation(format!(
                    "vertex {} appears twice",
                    clique[a]
                )));
            }
            if !g.has_edge(clique[a], clique[b]) {
                return Err(Error::validation(format!(
                    "not a clique: vertices {} and {} are not adjacent",
                    clique[a], clique[b]
                )));
            }
        }
    }
    let n = g.n;
    let w = rat(1, k as i64);
    let mut probs = vec![rat_int(0); k * n];
    for (j, &cj) in clique.iter().enumerate() {
        probs[j * n + cj] = w.clone();
    }
    let strat = MixedStrategy::new(probs)?;
    BullyProfile::new(vec![strat.clone(), strat])
}

/// Lexicographically first k-clique of `g`, or None. Exhaustive over all
/// C(n,k) vertex subsets, so guarded by [`CLIQUE_ENUM_BUDGET`].
pub fn find_clique_bruteforce(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    if k == 0 {
        return Err(Error::validation("k must be at least 1"));
    }
    if k > g.n {
        return Ok(None);
    }
    let count = binom(g.n, k);
    if count > CLIQUE_ENUM_BUDGET {
        return Err(Error::Budget {
            what: "vertex subsets",
            required: count,
            cap: CLIQUE_ENUM_BUDGET,
        });
    }
    for cand in enumerate_supports(g.n, k) {
        let ok = (0..k).all(|a| (a + 1..k).all(|b| g.has_edge(cand[a], cand[b])));
        if ok {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}
