//! Phase spaces Γ(φ): periodic/transient decomposition, canonical forms for
//! functional-graph isomorphism, cycle types and equivalence classification.
//!
//! Cycle equivalence is decided by cycle-type equality: restricted to their
//! periodic sets the maps are permutations, and two permutations are
//! conjugate exactly when they share a cycle type.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::orient::{orientation_of, AcyclicOrientation};
use crate::sds::{index_to_state, Alphabet, FunctionSequence, MapTable, UpdateWord};
use crate::util::parallel_map;

/// The functional graph of one map on K^n, decomposed.
#[derive(Debug, Clone)]
pub struct PhaseSpace {
    table: MapTable,
    periodic: Vec<u32>,
    cycles: Vec<Vec<u32>>,
    depth: Vec<u32>,
}

/// Multiset of cycle lengths, sorted descending; the complete invariant for
/// cycle equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleType(pub Vec<usize>);

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl PhaseSpace {
    pub fn table(&self) -> &MapTable {
        &self.table
    }

    /// Sorted indices of the states on cycles.
    pub fn periodic(&self) -> &[u32] {
        &self.periodic
    }

    /// Each cycle in forward map order, rotated to start at its smallest
    /// state; cycles listed by smallest state.
    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    /// Distance to the periodic set; zero exactly on periodic states.
    pub fn transient_depth(&self, state: usize) -> u32 {
        self.depth[state]
    }

    pub fn is_periodic(&self, state: usize) -> bool {
        self.depth[state] == 0
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<usize> = self.cycles.iter().map(|c| c.len()).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(lengths)
    }

    /// The cycle eventually entered from `state`.
    pub fn omega_of(&self, state: usize) -> &[u32] {
        let mut cur = state;
        while self.depth[cur] != 0 {
            cur = self.table.apply(cur);
        }
        let target = cur as u32;
        self.cycles
            .iter()
            .find(|c| c.contains(&target))
            .expect("every state reaches a cycle")
    }

    /// DOT export of Γ(φ) with states rendered in the given alphabet.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("digraph phase {\n");
        for idx in 0..self.table.len() {
            let digits = index_to_state(idx, self.table.k, self.table.n);
            let _ = writeln!(out, "  s{idx} [label=\"{}\"];", alphabet.render_state(&digits));
        }
        for (idx, &image) in self.table.entries.iter().enumerate() {
            let _ = writeln!(out, "  s{idx} -> s{image};");
        }
        out.push_str("}\n");
        out
    }

    /// Canonical byte encoding deciding functional-graph isomorphism: equal
    /// encodings iff some bijection h satisfies φ∘h = h∘ψ.
    ///
    /// Each transient tree is encoded bottom-up with children sorted by
    /// encoding; per-cycle token sequences take their lexicographically
    /// minimal rotation; cycles sort by (length, encoding).
    pub fn canonical_form(&self) -> Vec<u8> {
        let m = self.table.len();
        // transient predecessor lists
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); m];
        for state in 0..m {
            if self.depth[state] > 0 {
                preds[self.table.apply(state)].push(state as u32);
            }
        }
        // encode transient trees bottom-up, deepest states first
        let mut by_depth: Vec<u32> = (0..m as u32).collect();
        by_depth.sort_unstable_by_key(|&s| std::cmp::Reverse(self.depth[s as usize]));
        let mut enc: Vec<Vec<u8>> = vec![Vec::new(); m];
        for &state in &by_depth {
            let state = state as usize;
            let mut kids: Vec<&[u8]> = preds[state].iter().map(|&p| &enc[p as usize][..]).collect();
            kids.sort_unstable();
            let mut buf = Vec::with_capacity(2 + kids.iter().map(|k| k.len()).sum::<usize>());
            buf.push(b'(');
            for kid in kids {
                buf.extend_from_slice(kid);
            }
            buf.push(b')');
            enc[state] = buf;
        }
        // per-cycle: minimal rotation of the token sequence
        let mut cycle_encodings: Vec<(usize, Vec<u8>)> = self
            .cycles
            .iter()
            .map(|cycle| {
                let tokens: Vec<&[u8]> = cycle.iter().map(|&s| &enc[s as usize][..]).collect();
                let start = least_rotation(&tokens);
                let mut buf = Vec::new();
                buf.push(b'[');
                for i in 0..tokens.len() {
                    buf.extend_from_slice(tokens[(start + i) % tokens.len()]);
                }
                buf.push(b']');
                (cycle.len(), buf)
            })
            .collect();
        cycle_encodings.sort();
        let mut out = Vec::new();
        for (_, e) in cycle_encodings {
            out.extend_from_slice(&e);
        }
        out
    }
}

/// Booth's least-rotation algorithm over an arbitrary ordered token alphabet.
fn least_rotation<T: Ord>(tokens: &[T]) -> usize {
    let n = tokens.len();
    if n <= 1 {
        return 0;
    }
    let at = |i: usize| &tokens[i % n];
    let mut f = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let mut i = f[j - k - 1];
        while i != usize::MAX && at(j) != at(k + i + 1) {
            if at(j) < at(k + i + 1) {
                k = j - i - 1;
            }
            i = f[i];
        }
        if i == usize::MAX && at(j) != at(k) {
            if at(j) < at(k) {
                k = j;
            }
            f[j - k] = usize::MAX;
        } else {
            f[j - k] = i.wrapping_add(1);
        }
    }
    k
}

/// Decomposes a map table: periodic states, cycles, transient depths.
pub fn build_phase_space(table: MapTable) -> PhaseSpace {
    let m = table.len();
    // colors: 0 unvisited, 1 on current walk, 2 done
    let mut color = vec![0u8; m];
    let mut on_cycle = vec![false; m];
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut walk: Vec<u32> = Vec::new();
    for start in 0..m {
        if color[start] != 0 {
            continue;
        }
        walk.clear();
        let mut cur = start;
        while color[cur] == 0 {
            color[cur] = 1;
            walk.push(cur as u32);
            cur = table.apply(cur);
        }
        if color[cur] == 1 {
            // new cycle: the tail of the walk from `cur` onwards
            let pos = walk.iter().position(|&s| s as usize == cur).expect("on walk");
            let mut cycle: Vec<u32> = walk[pos..].to_vec();
            for &s in &cycle {
                on_cycle[s as usize] = true;
            }
            // rotate to the smallest state
            let min_pos = cycle
                .iter()
                .enumerate()
                .min_by_key(|&(_, &s)| s)
                .map(|(i, _)| i)
                .expect("cycle nonempty");
            cycle.rotate_left(min_pos);
            cycles.push(cycle);
        }
        for &s in &walk {
            color[s as usize] = 2;
        }
    }
    cycles.sort_by_key(|c| c[0]);
    let mut periodic: Vec<u32> = cycles.iter().flatten().copied().collect();
    periodic.sort_unstable();
    // transient depths by path-following with memoized unwind
    let mut depth = vec![u32::MAX; m];
    for &s in &periodic {
        depth[s as usize] = 0;
    }
    let mut path: Vec<u32> = Vec::new();
    for start in 0..m {
        if depth[start] != u32::MAX {
            continue;
        }
        path.clear();
        let mut cur = start;
        while depth[cur] == u32::MAX {
            path.push(cur as u32);
            cur = table.apply(cur);
        }
        let mut d = depth[cur];
        for &s in path.iter().rev() {
            d += 1;
            depth[s as usize] = d;
        }
    }
    PhaseSpace {
        table,
        periodic,
        cycles,
        depth,
    }
}

/// Functional equivalence: identical tables entrywise.
pub fn functionally_equal(a: &MapTable, b: &MapTable) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch { a: a.len(), b: b.len() });
    }
    Ok(a.entries == b.entries)
}

/// Cycle equivalence: equal cycle types.
pub fn cycle_equivalent(a: &PhaseSpace, b: &PhaseSpace) -> bool {
    a.cycle_type() == b.cycle_type()
}

/// The three notions of equivalence on SDS maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Functional,
    Dynamical,
    Cycle,
}

impl Relation {
    pub fn name(&self) -> &'static str {
        match self {
            Relation::Functional => "functional",
            Relation::Dynamical => "dynamical",
            Relation::Cycle => "cycle",
        }
    }

    pub fn parse(s: &str) -> Result<Relation> {
        match s {
            "functional" => Ok(Relation::Functional),
            "dynamical" => Ok(Relation::Dynamical),
            "cycle" => Ok(Relation::Cycle),
            other => Err(Error::invalid(format!(
                "unknown relation `{other}` (expected functional, dynamical or cycle)"
            ))),
        }
    }
}

/// One equivalence class of update words under a relation on their maps.
#[derive(Debug, Clone)]
pub struct MapClass {
    /// First member in the given word order.
    pub representative: UpdateWord,
    /// O_π of the representative, when it is a permutation word.
    pub orientation: Option<AcyclicOrientation>,
    pub cycle_type: CycleType,
    pub members: Vec<UpdateWord>,
}

impl MapClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Groups update words by the chosen equivalence on their map tables.
/// Classes are keyed canonically, so the grouping is identical for any
/// worker count; they are reported in first-occurrence order.
pub fn classify(
    fs: &FunctionSequence,
    words: &[UpdateWord],
    relation: Relation,
    limits: &Limits,
    jobs: usize,
) -> Result<Vec<MapClass>> {
    let keyed: Vec<(Vec<u8>, CycleType)> = parallel_map(words, jobs, |word| {
        let table = fs.build_map(word, limits, 1)?;
        let space = build_phase_space(table);
        let cycle_type = space.cycle_type();
        let key: Vec<u8> = match relation {
            Relation::Functional => space
                .table()
                .entries
                .iter()
                .flat_map(|e| e.to_le_bytes())
                .collect(),
            Relation::Dynamical => space.canonical_form(),
            Relation::Cycle => format!("{}", cycle_type).into_bytes(),
        };
        Ok((key, cycle_type))
    })?;

    let mut classes: Vec<MapClass> = Vec::new();
    let mut index_of: HashMap<Vec<u8>, usize> = HashMap::new();
    for (word, (key, cycle_type)) in words.iter().zip(keyed) {
        match index_of.get(&key) {
            Some(&i) => classes[i].members.push(word.clone()),
            None => {
                index_of.insert(key, classes.len());
                let orientation = if word.is_permutation(fs.graph().n()) {
                    Some(orientation_of(word.letters(), fs.graph())?)
                } else {
                    None
                };
                classes.push(MapClass {
                    representative: word.clone(),
                    orientation,
                    cycle_type,
                    members: vec![word.clone()],
                });
            }
        }
    }
    Ok(classes)
}
