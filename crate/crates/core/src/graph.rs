//! Base graphs, vertex permutations, automorphism groups and orbit graphs.
//!
//! Vertices are labeled 1..=n everywhere, including file formats and reports.
//! Graphs built by generators or the edge-list parser are simple; loops can
//! only arise as orbit-graph quotients.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// An undirected labeled graph on vertices 1..=n.
///
/// Non-loop edges are stored as ordered pairs (i, j) with i < j, sorted;
/// loops as (i, i). Neighbor lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

/// Named graph generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphKind {
    /// Cycle on n vertices, n >= 3.
    Circ(usize),
    /// Cycle plus distance-2 chords, n >= 5.
    Circ2(usize),
    /// Center vertex 1 joined to n-1 leaves.
    Star(usize),
    Complete(usize),
    Path(usize),
    /// Explicit tree given by its edge list.
    Tree(Vec<(usize, usize)>),
}

impl Graph {
    /// Builds a simple graph; duplicate edges collapse, loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::invalid(format!("self-loop at vertex {a}")));
            }
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(Error::VertexOutOfRange { v, n });
                }
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Graph::assemble(n, canon))
    }

    /// Quotient constructor: loops allowed, parallels collapse.
    pub(crate) fn with_loops(n: usize, mut edges: Vec<(usize, usize)>) -> Graph {
        for e in edges.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        edges.dedup();
        Graph::assemble(n, edges)
    }

    fn assemble(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut neighbors = vec![Vec::new(); n + 1];
        for &(a, b) in &edges {
            if a == b {
                neighbors[a].push(a);
            } else {
                neighbors[a].push(b);
                neighbors[b].push(a);
            }
        }
        for list in neighbors.iter_mut() {
            list.sort_unstable();
        }
        Graph { n, edges, neighbors }
    }

    pub fn generate(kind: &GraphKind) -> Result<Graph> {
        match kind {
            GraphKind::Circ(n) => {
                require_min("circ", *n, 3)?;
                let edges: Vec<_> = (1..=*n).map(|i| (i, i % n + 1)).collect();
                Graph::from_edges(*n, &edges)
            }
            GraphKind::Circ2(n) => {
                require_min("circ2", *n, 5)?;
                let mut edges = Vec::with_capacity(2 * n);
                for i in 1..=*n {
                    edges.push((i, i % n + 1));
                    edges.push((i, (i + 1) % n + 1));
                }
                Graph::from_edges(*n, &edges)
            }
            GraphKind::Star(n) => {
                require_min("star", *n, 1)?;
                let edges: Vec<_> = (2..=*n).map(|i| (1, i)).collect();
                Graph::from_edges(*n, &edges)
            }
            GraphKind::Complete(n) => {
                require_min("complete", *n, 1)?;
                let mut edges = Vec::new();
                for i in 1..=*n {
                    for j in i + 1..=*n {
                        edges.push((i, j));
                    }
                }
                Graph::from_edges(*n, &edges)
            }
            GraphKind::Path(n) => {
                require_min("path", *n, 1)?;
                let edges: Vec<_> = (1..*n).map(|i| (i, i + 1)).collect();
                Graph::from_edges(*n, &edges)
            }
            GraphKind::Tree(edges) => {
                let n = edges
                    .iter()
                    .flat_map(|&(a, b)| [a, b])
                    .max()
                    .ok_or_else(|| Error::invalid("tree generator needs at least one edge"))?;
                let g = Graph::from_edges(n, edges)?;
                if !g.is_tree() {
                    return Err(Error::invalid("edge list is not a tree"));
                }
                Ok(g)
            }
        }
    }

    /// Parses the edge-list text format: lines `i j`, an optional header
    /// `n <count>`, `#` comments and blank lines ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut declared_n: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut tokens = body.split_whitespace();
            let first = tokens.next().unwrap();
            if first == "n" {
                let value = tokens.next().ok_or_else(|| Error::Parse {
                    line,
                    msg: "header `n` needs a vertex count".into(),
                })?;
                let count: usize = value.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("`{value}` is not an integer"),
                })?;
                declared_n = Some(count);
                continue;
            }
            let second = tokens.next().ok_or_else(|| Error::Parse {
                line,
                msg: "expected two vertex labels".into(),
            })?;
            if tokens.next().is_some() {
                return Err(Error::Parse {
                    line,
                    msg: "expected exactly two vertex labels".into(),
                });
            }
            let mut pair = [0usize; 2];
            for (slot, tok) in pair.iter_mut().zip([first, second]) {
                *slot = tok.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("`{tok}` is not an integer"),
                })?;
                if *slot < 1 {
                    return Err(Error::Parse {
                        line,
                        msg: format!("vertex label {} is below 1", *slot),
                    });
                }
            }
            if pair[0] == pair[1] {
                return Err(Error::Parse {
                    line,
                    msg: format!("self-loop at vertex {}", pair[0]),
                });
            }
            edges.push((pair[0], pair[1]));
        }
        let max_label = edges.iter().flat_map(|&(a, b)| [a, b]).max().unwrap_or(0);
        let n = match declared_n {
            Some(declared) => {
                if declared < max_label {
                    return Err(Error::invalid(format!(
                        "header n {declared} is below the largest vertex label {max_label}"
                    )));
                }
                declared
            }
            None => max_label,
        };
        Graph::from_edges(n, &edges)
    }

    /// Inverse of [`Graph::parse_edge_list`]: `n` header plus one line per edge.
    pub fn render_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }

    /// Undirected DOT export; nodes in index order so output can be diffed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph Y {\n");
        for v in 1..=self.n {
            let _ = writeln!(out, "  {v};");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (lo, hi) = (a.min(b), a.max(b));
        self.edges.binary_search(&(lo, hi)).is_ok()
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    /// Sorted closed neighborhood: v together with its neighbors.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.neighbors[v].to_vec();
        if !out.contains(&v) {
            out.push(v);
            out.sort_unstable();
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1usize];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        !self.has_loop() && self.is_connected() && self.edges.len() + 1 == self.n
    }
}

fn require_min(what: &'static str, actual: usize, min: usize) -> Result<()> {
    if actual < min {
        return Err(Error::TooSmall { what, min, actual });
    }
    Ok(())
}

/// A bijection on {1..n}; `image[v]` is the image of v (slot 0 unused).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPermutation {
    image: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<VertexPermutation> {
        let n = mapping.len();
        let mut seen = vec![false; n + 1];
        for &v in &mapping {
            if v < 1 || v > n || seen[v] {
                return Err(Error::NotAPermutation { n, word: mapping.clone() });
            }
            seen[v] = true;
        }
        let mut image = vec![0; n + 1];
        image[1..].copy_from_slice(&mapping);
        Ok(VertexPermutation { image })
    }

    pub fn identity(n: usize) -> VertexPermutation {
        VertexPermutation {
            image: (0..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len() - 1
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    /// Image sequence (γ(1), ..., γ(n)).
    pub fn mapping(&self) -> &[usize] {
        &self.image[1..]
    }

    pub fn inverse(&self) -> VertexPermutation {
        let n = self.n();
        let mut image = vec![0; n + 1];
        for (v, &target) in self.image.iter().enumerate().skip(1) {
            image[target] = v;
        }
        VertexPermutation { image }
    }

    /// self ∘ other: applies `other` first.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        let mut image = vec![0; self.n() + 1];
        for (v, slot) in image.iter_mut().enumerate().skip(1) {
            *slot = self.image[other.image[v]];
        }
        VertexPermutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v || i == 0)
    }

    pub fn is_automorphism(&self, g: &Graph) -> bool {
        if self.n() != g.n() {
            return false;
        }
        g.edges()
            .iter()
            .all(|&(a, b)| g.has_edge(self.apply(a), self.apply(b)))
            && g.edges().len()
                == g.edges()
                    .iter()
                    .map(|&(a, b)| {
                        let (x, y) = (self.apply(a), self.apply(b));
                        (x.min(y), x.max(y))
                    })
                    .collect::<std::collections::BTreeSet<_>>()
                    .len()
    }

    /// Orbits of the cyclic group generated by this permutation, each sorted,
    /// listed by smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                orbit.push(v);
                v = self.apply(v);
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

/// The full automorphism group of `g`, identity first, sorted by image tuple.
///
/// Plain backtracking over vertex images with degree pruning; desk scale
/// (n <= limit, default 12) keeps this cheap.
pub fn automorphisms(g: &Graph, limits: &Limits) -> Result<Vec<VertexPermutation>> {
    limits.check_aut_vertices(g.n())?;
    let n = g.n();
    let mut image = vec![0usize; n + 1];
    let mut used = vec![false; n + 1];
    let mut out = Vec::new();
    search(g, 1, &mut image, &mut used, &mut out);
    return Ok(out);

    fn search(
        g: &Graph,
        v: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<VertexPermutation>,
    ) {
        let n = g.n();
        if v > n {
            out.push(VertexPermutation {
                image: image.clone(),
            });
            return;
        }
        for candidate in 1..=n {
            if used[candidate] || g.degree(candidate) != g.degree(v) {
                continue;
            }
            let consistent = (1..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], candidate));
            if !consistent {
                continue;
            }
            image[v] = candidate;
            used[candidate] = true;
            search(g, v + 1, image, used, out);
            used[candidate] = false;
            image[v] = 0;
        }
    }
}

/// The orbit graph ⟨γ⟩∖Y: vertices are the orbits of γ on v[Y]; an edge joins
/// two orbits when some base edge does, with loops kept and parallels
/// collapsed. Orbits are relabeled 1..k in order of their smallest member.
pub fn orbit_graph(g: &Graph, gamma: &VertexPermutation) -> Result<Graph> {
    if !gamma.is_automorphism(g) {
        return Err(Error::NotAnAutomorphism);
    }
    let orbits = gamma.cycles();
    let mut orbit_of = vec![0usize; g.n() + 1];
    for (idx, orbit) in orbits.iter().enumerate() {
        for &v in orbit {
            orbit_of[v] = idx + 1;
        }
    }
    let quotient_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| (orbit_of[a], orbit_of[b]))
        .collect();
    Ok(Graph::with_loops(orbits.len(), quotient_edges))
}
