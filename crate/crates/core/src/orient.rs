//! Acyclic-orientation combinatorics: O_π, linear extensions, enumeration,
//! source-to-sink clicks, click classes, unique-source transversals and the
//! Aut(Y)-orbit counts.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{automorphisms, orbit_graph, Graph, VertexPermutation};
use crate::limits::Limits;
use crate::tutte;

/// An orientation of a base graph's edges with no directed cycle.
///
/// Edge k of the base edge list (lo, hi) points lo→hi when bit k of `mask`
/// is clear and hi→lo when it is set. Orientations of the same base compare
/// by mask; the encoding-minimal member of a set is the one with the
/// smallest mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AcyclicOrientation {
    n: usize,
    base: Arc<Vec<(usize, usize)>>,
    mask: u64,
}

impl AcyclicOrientation {
    fn new(n: usize, base: Arc<Vec<(usize, usize)>>, mask: u64) -> AcyclicOrientation {
        AcyclicOrientation { n, base, mask }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn base_edges(&self) -> &[(usize, usize)] {
        &self.base
    }

    /// Directed edges (tail, head), one per base edge, in base-edge order.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        self.base
            .iter()
            .enumerate()
            .map(|(k, &(lo, hi))| {
                if self.mask >> k & 1 == 0 {
                    (lo, hi)
                } else {
                    (hi, lo)
                }
            })
            .collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut indeg = vec![0usize; self.n + 1];
        for (_, head) in self.directed_edges() {
            indeg[head] += 1;
        }
        indeg
    }

    /// All vertices with no in-edges; isolated vertices count as sources.
    pub fn sources(&self) -> Vec<usize> {
        let indeg = self.in_degrees();
        (1..=self.n).filter(|&v| indeg[v] == 0).collect()
    }

    pub fn is_unique_source(&self, v: usize) -> bool {
        self.sources() == [v]
    }

    /// Directed DOT export, edges in base-edge order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph O {\n");
        for v in 1..=self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (tail, head) in self.directed_edges() {
            let _ = writeln!(out, "  {tail} -> {head};");
        }
        out.push_str("}\n");
        out
    }

    fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for (tail, head) in self.directed_edges() {
            adj[tail].push(head);
        }
        adj
    }

    /// Image orientation under a vertex permutation: edge u→v maps to
    /// γ(u)→γ(v).
    pub fn relabel(&self, gamma: &VertexPermutation) -> AcyclicOrientation {
        let mut mask = 0u64;
        for (k, &(lo, hi)) in self.base.iter().enumerate() {
            let (tail, head) = if self.mask >> k & 1 == 0 {
                (lo, hi)
            } else {
                (hi, lo)
            };
            let (tail, head) = (gamma.apply(tail), gamma.apply(head));
            // locate the base edge for the image pair
            let key = (tail.min(head), tail.max(head));
            let idx = self
                .base
                .binary_search(&key)
                .expect("automorphism image must be a base edge");
            if tail > head {
                mask |= 1 << idx;
            }
        }
        AcyclicOrientation::new(self.n, Arc::clone(&self.base), mask)
    }
}

/// Equivalence relations an [`OrientationClass`] can be tagged with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceKind {
    Alpha,
    Kappa,
    AlphaBar,
    KappaBar,
}

/// One equivalence class of orientations; the representative is the
/// encoding-minimal member.
#[derive(Debug, Clone)]
pub struct OrientationClass {
    pub representative: AcyclicOrientation,
    pub members: Vec<AcyclicOrientation>,
    pub relation: EquivalenceKind,
}

/// O_π: edge {i, j} points i→j when i occurs before j in π.
pub fn orientation_of(word: &[usize], g: &Graph) -> Result<AcyclicOrientation> {
    let n = g.n();
    let mut position = vec![usize::MAX; n + 1];
    let mut seen = 0usize;
    for (idx, &v) in word.iter().enumerate() {
        if v < 1 || v > n || position[v] != usize::MAX {
            return Err(Error::NotAPermutation {
                n,
                word: word.to_vec(),
            });
        }
        position[v] = idx;
        seen += 1;
    }
    if seen != n {
        return Err(Error::NotAPermutation {
            n,
            word: word.to_vec(),
        });
    }
    let base = Arc::new(g.edges().to_vec());
    let mut mask = 0u64;
    for (k, &(lo, hi)) in base.iter().enumerate() {
        if position[hi] < position[lo] {
            mask |= 1 << k;
        }
    }
    Ok(AcyclicOrientation::new(n, base, mask))
}

/// All permutations π with O_π = `o`, lexicographically sorted. Backtracking
/// over available sources in ascending order yields lex order directly.
pub fn linear_extensions(o: &AcyclicOrientation) -> Vec<Vec<usize>> {
    let n = o.n();
    let adj = o.out_adjacency();
    let mut indeg = o.in_degrees();
    let mut used = vec![false; n + 1];
    let mut prefix = Vec::with_capacity(n);
    let mut out = Vec::new();
    extend(n, &adj, &mut indeg, &mut used, &mut prefix, &mut out);
    return out;

    fn extend(
        n: usize,
        adj: &[Vec<usize>],
        indeg: &mut Vec<usize>,
        used: &mut Vec<bool>,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 1..=n {
            if used[v] || indeg[v] != 0 {
                continue;
            }
            used[v] = true;
            prefix.push(v);
            for &w in &adj[v] {
                indeg[w] -= 1;
            }
            extend(n, adj, indeg, used, prefix, out);
            for &w in &adj[v] {
                indeg[w] += 1;
            }
            prefix.pop();
            used[v] = false;
        }
    }
}

/// The lexicographically least linear extension (smallest available source
/// first). Used as the canonical representative word of an orientation.
pub fn lex_min_extension(o: &AcyclicOrientation) -> Vec<usize> {
    let n = o.n();
    let adj = o.out_adjacency();
    let mut indeg = o.in_degrees();
    let mut used = vec![false; n + 1];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (1..=n)
            .find(|&v| !used[v] && indeg[v] == 0)
            .expect("acyclic orientation always has a source");
        used[v] = true;
        out.push(v);
        for &w in &adj[v] {
            indeg[w] -= 1;
        }
    }
    out
}

/// Every acyclic orientation of `g`, in ascending mask order. Empty when the
/// graph carries a loop.
pub fn enumerate_acyc(g: &Graph, limits: &Limits) -> Result<Vec<AcyclicOrientation>> {
    limits.check_edges(g.edges().len())?;
    if g.has_loop() {
        return Ok(Vec::new());
    }
    let base = Arc::new(g.edges().to_vec());
    let m = base.len();
    let n = g.n();
    let mut adj = vec![Vec::new(); n + 1];
    let mut out = Vec::new();
    descend(n, m, 0, 0, &base, &mut adj, &mut out);

    return Ok(out
        .into_iter()
        .map(|mask| AcyclicOrientation::new(n, Arc::clone(&base), mask))
        .collect());

    // Try both directions of edge k; adding tail→head closes a cycle exactly
    // when head already reaches tail.
    fn descend(
        n: usize,
        m: usize,
        k: usize,
        mask: u64,
        base: &[(usize, usize)],
        adj: &mut Vec<Vec<usize>>,
        out: &mut Vec<u64>,
    ) {
        if k == m {
            out.push(mask);
            return;
        }
        let (lo, hi) = base[k];
        for (bit, (tail, head)) in [(0u64, (lo, hi)), (1u64, (hi, lo))] {
            if !reaches(head, tail, adj, n) {
                adj[tail].push(head);
                descend(n, m, k + 1, mask | (bit << k), base, adj, out);
                adj[tail].pop();
            }
        }
    }

    fn reaches(from: usize, to: usize, adj: &[Vec<usize>], n: usize) -> bool {
        if from == to {
            return true;
        }
        let mut seen = vec![false; n + 1];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if w == to {
                    return true;
                }
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }
}

/// Source-to-sink operation: reverse every edge at the source `v`. Isolated
/// vertices are vacuously sources and click as the identity.
pub fn click(o: &AcyclicOrientation, v: usize) -> Result<AcyclicOrientation> {
    if v < 1 || v > o.n() {
        return Err(Error::VertexOutOfRange { v, n: o.n() });
    }
    if o.in_degrees()[v] != 0 {
        return Err(Error::NotASource { v });
    }
    let mut mask = o.mask;
    for (k, &(lo, hi)) in o.base.iter().enumerate() {
        if lo == v || hi == v {
            mask ^= 1 << k;
        }
    }
    Ok(AcyclicOrientation::new(o.n, Arc::clone(&o.base), mask))
}

/// Partition of Acyc(Y) under the reflexive transitive closure of clicks.
/// BFS from each unvisited orientation; members sorted by mask, classes by
/// representative mask.
pub fn kappa_classes(g: &Graph, limits: &Limits) -> Result<Vec<OrientationClass>> {
    let all = enumerate_acyc(g, limits)?;
    let mut visited: HashSet<u64> = HashSet::new();
    let mut classes = Vec::new();
    for start in &all {
        if visited.contains(&start.mask()) {
            continue;
        }
        let mut members = Vec::new();
        let mut queue = VecDeque::new();
        visited.insert(start.mask());
        queue.push_back(start.clone());
        while let Some(o) = queue.pop_front() {
            for v in o.sources() {
                let next = click(&o, v).expect("click at a source cannot fail");
                if visited.insert(next.mask()) {
                    queue.push_back(next.clone());
                }
            }
            members.push(o);
        }
        members.sort_by_key(|o| o.mask());
        classes.push(OrientationClass {
            representative: members[0].clone(),
            members,
            relation: EquivalenceKind::Kappa,
        });
    }
    classes.sort_by_key(|c| c.representative.mask());
    Ok(classes)
}

/// Acyc_v(Y): all orientations with `v` as the unique source. Hits every
/// click class exactly once when Y is connected.
pub fn kappa_transversal(
    g: &Graph,
    v: usize,
    limits: &Limits,
) -> Result<Vec<AcyclicOrientation>> {
    if v < 1 || v > g.n() {
        return Err(Error::VertexOutOfRange { v, n: g.n() });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(enumerate_acyc(g, limits)?
        .into_iter()
        .filter(|o| o.is_unique_source(v))
        .collect())
}

/// Burnside count of Aut(Y)-orbits on Acyc(Y):
/// (1/|Aut(Y)|) Σ_γ alpha(⟨γ⟩∖Y).
pub fn alpha_bar(g: &Graph, limits: &Limits) -> Result<BigInt> {
    let auts = automorphisms(g, limits)?;
    let mut sum = BigInt::zero();
    for gamma in &auts {
        let quotient = orbit_graph(g, gamma)?;
        sum += tutte::alpha(&quotient);
    }
    let order = BigInt::from(auts.len() as u64);
    let (q, r) = num_integer::Integer::div_rem(&sum, &order);
    if !r.is_zero() {
        return Err(Error::CrossCheck(format!(
            "Burnside sum {sum} is not divisible by |Aut| = {order}"
        )));
    }
    Ok(q)
}

/// Independent route for alpha-bar: orbits of the Aut(Y)-action γ·O counted
/// directly on the enumerated orientations.
pub fn alpha_bar_direct(g: &Graph, limits: &Limits) -> Result<BigInt> {
    let auts = automorphisms(g, limits)?;
    let all = enumerate_acyc(g, limits)?;
    let mut seen: HashSet<u64> = HashSet::new();
    let mut orbits = 0u64;
    for o in &all {
        if seen.contains(&o.mask()) {
            continue;
        }
        orbits += 1;
        for gamma in &auts {
            seen.insert(o.relabel(gamma).mask());
        }
    }
    Ok(BigInt::from(orbits))
}

/// Orbits of the induced Aut(Y)-action on click classes. Well-definedness of
/// the action is asserted by mapping every member of a class.
pub fn kappa_bar(g: &Graph, limits: &Limits) -> Result<BigInt> {
    let auts = automorphisms(g, limits)?;
    let classes = kappa_classes(g, limits)?;
    let mut class_of: HashMap<u64, usize> = HashMap::new();
    for (idx, class) in classes.iter().enumerate() {
        for member in &class.members {
            class_of.insert(member.mask(), idx);
        }
    }
    let mut seen = vec![false; classes.len()];
    let mut orbits = 0u64;
    for (idx, class) in classes.iter().enumerate() {
        if seen[idx] {
            continue;
        }
        orbits += 1;
        for gamma in &auts {
            let mut image_class: Option<usize> = None;
            for member in &class.members {
                let target = class_of[&member.relabel(gamma).mask()];
                match image_class {
                    None => image_class = Some(target),
                    Some(prev) if prev != target => {
                        return Err(Error::CrossCheck(
                            "automorphism action on click classes is not well-defined".into(),
                        ))
                    }
                    Some(_) => {}
                }
            }
            seen[image_class.expect("classes are nonempty")] = true;
        }
    }
    Ok(BigInt::from(orbits))
}
