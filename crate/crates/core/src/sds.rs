//! State alphabets, vertex-function families, Y-local application and
//! composition of SDS maps over update words.
//!
//! State indices are little-endian mixed-radix: vertex 1 is the least
//! significant digit, so idx(x) = Σ x_v · |K|^(v−1).

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind, VertexPermutation};
use crate::limits::Limits;
use crate::util::parallel_chunks;

/// A finite state alphabet. Digits 0..size-1 index the labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
}

impl Alphabet {
    pub fn binary() -> Alphabet {
        Alphabet {
            labels: vec!["0".into(), "1".into()],
        }
    }

    /// FLN states: digit 0 ↔ unknown 0, digit 1 ↔ annotated 1,
    /// digit 2 ↔ not-annotated −1.
    pub fn fln() -> Alphabet {
        Alphabet {
            labels: vec!["0".into(), "1".into(), "-1".into()],
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, digit: u8) -> &str {
        &self.labels[digit as usize]
    }

    /// Render a state vector; single-character labels concatenate, longer
    /// ones join with commas.
    pub fn render_state(&self, digits: &[u8]) -> String {
        if self.labels.iter().all(|l| l.len() == 1) {
            digits.iter().map(|&d| self.label(d)).collect()
        } else {
            digits
                .iter()
                .map(|&d| self.label(d))
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

pub fn state_to_index(digits: &[u8], k: usize) -> usize {
    digits
        .iter()
        .rev()
        .fold(0usize, |acc, &d| acc * k + d as usize)
}

pub fn index_to_state(mut idx: usize, k: usize, n: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push((idx % k) as u8);
        idx /= k;
    }
    out
}

/// |K|^n with overflow checking.
pub fn state_count(k: usize, n: usize) -> Option<usize> {
    let mut total = 1usize;
    for _ in 0..n {
        total = total.checked_mul(k)?;
    }
    Some(total)
}

/// The full table of one SDS map on K^n: entry idx(x) holds idx(φ(x)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapTable {
    pub k: usize,
    pub n: usize,
    pub entries: Vec<u32>,
}

impl MapTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn apply(&self, idx: usize) -> usize {
        self.entries[idx] as usize
    }
}

/// Named symmetric boolean rules; outputs depend only on the number of ones
/// among the closed-neighborhood arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricKind {
    Nor,
    Nand,
    Or,
    And,
    Parity,
    /// 1 iff ones >= zeros (ties to 1).
    Majority,
    /// 1 iff ones <= zeros (ties to 1); the negation of majority at odd arity.
    Minority,
    /// 1 iff at least m arguments are 1.
    Threshold(usize),
}

impl SymmetricKind {
    fn eval(&self, ones: usize, arity: usize) -> u8 {
        let hit = match self {
            SymmetricKind::Nor => ones == 0,
            SymmetricKind::Nand => ones < arity,
            SymmetricKind::Or => ones > 0,
            SymmetricKind::And => ones == arity,
            SymmetricKind::Parity => ones % 2 == 1,
            SymmetricKind::Majority => 2 * ones >= arity,
            SymmetricKind::Minority => 2 * ones <= arity,
            SymmetricKind::Threshold(m) => ones >= *m,
        };
        hit as u8
    }

    pub fn name(&self) -> String {
        match self {
            SymmetricKind::Nor => "nor".into(),
            SymmetricKind::Nand => "nand".into(),
            SymmetricKind::Or => "or".into(),
            SymmetricKind::And => "and".into(),
            SymmetricKind::Parity => "parity".into(),
            SymmetricKind::Majority => "majority".into(),
            SymmetricKind::Minority => "minority".into(),
            SymmetricKind::Threshold(m) => format!("threshold:{m}"),
        }
    }
}

/// General symmetric rule over an arbitrary alphabet: output by the vector
/// of per-value counts among the closed-neighborhood arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricTable {
    pub k: usize,
    pub outputs: BTreeMap<Vec<u32>, u8>,
}

impl SymmetricTable {
    fn eval(&self, args: &[u8]) -> Result<u8> {
        let mut counts = vec![0u32; self.k];
        for &a in args {
            counts[a as usize] += 1;
        }
        self.outputs.get(&counts).copied().ok_or_else(|| {
            Error::invalid(format!("symmetric table has no entry for counts {counts:?}"))
        })
    }
}

/// Per-vertex update rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexRule {
    /// Named boolean symmetric rule over the closed neighborhood.
    Symmetric(SymmetricKind),
    /// Explicit symmetric table (arbitrary finite alphabet).
    Table(SymmetricTable),
    /// Elementary cellular automaton rule; only valid over circ(n), reads the
    /// ordered triple (left neighbor, self, right neighbor).
    Eca(u8),
    /// Weighted-threshold rule over K = {1, −1, 0}; weights and threshold
    /// live on the function sequence.
    Fln,
    /// Keeps the vertex's own state.
    Identity,
}

/// FLN parameters: per-edge rational weights and threshold, compared in
/// exact rational arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlnParams {
    pub weights: BTreeMap<(usize, usize), Ratio<i64>>,
    pub threshold: Ratio<i64>,
    /// When set, the sum includes the vertex's own state with weight 1.
    /// Off by default: the sum runs over the open neighborhood.
    pub include_self: bool,
}

impl FlnParams {
    fn weight(&self, a: usize, b: usize) -> Result<Ratio<i64>> {
        self.weights
            .get(&(a.min(b), a.max(b)))
            .copied()
            .ok_or_else(|| Error::invalid(format!("missing weight for edge {{{a},{b}}}")))
    }
}

fn fln_value(digit: u8) -> i64 {
    match digit {
        0 => 0,
        1 => 1,
        2 => -1,
        _ => unreachable!("fln digits are 0..=2"),
    }
}

/// 𝔉_Y: one update rule per vertex over a base graph and alphabet.
#[derive(Debug, Clone)]
pub struct FunctionSequence {
    base: Graph,
    rules: Vec<VertexRule>,
    alphabet: Alphabet,
    fln: Option<FlnParams>,
    closed: Vec<Vec<usize>>,
}

fn closed_neighborhoods(base: &Graph) -> Vec<Vec<usize>> {
    (1..=base.n()).map(|v| base.closed_neighborhood(v)).collect()
}

impl FunctionSequence {
    pub fn with_rules(base: Graph, rules: Vec<VertexRule>, alphabet: Alphabet) -> Result<Self> {
        if rules.len() != base.n() {
            return Err(Error::invalid(format!(
                "need one rule per vertex: got {} rules for {} vertices",
                rules.len(),
                base.n()
            )));
        }
        let closed = closed_neighborhoods(&base);
        let fs = FunctionSequence {
            base,
            rules,
            alphabet,
            fln: None,
            closed,
        };
        fs.validate()?;
        Ok(fs)
    }

    /// Every vertex shares one rule.
    pub fn uniform(base: Graph, rule: VertexRule, alphabet: Alphabet) -> Result<Self> {
        let rules = vec![rule; base.n()];
        FunctionSequence::with_rules(base, rules, alphabet)
    }

    /// ECA rule in Wolfram numbering over circ(n).
    pub fn eca(rule: u8, n: usize) -> Result<Self> {
        let base = Graph::generate(&GraphKind::Circ(n))?;
        FunctionSequence::uniform(base, VertexRule::Eca(rule), Alphabet::binary())
    }

    /// FLN over K = {1, −1, 0} with per-edge weights and rational threshold.
    pub fn fln(
        base: Graph,
        weights: BTreeMap<(usize, usize), Ratio<i64>>,
        threshold: Ratio<i64>,
        include_self: bool,
    ) -> Result<Self> {
        let params = FlnParams {
            weights,
            threshold,
            include_self,
        };
        for &(a, b) in base.edges() {
            params.weight(a, b)?;
        }
        let rules = vec![VertexRule::Fln; base.n()];
        let closed = closed_neighborhoods(&base);
        let fs = FunctionSequence {
            base,
            rules,
            alphabet: Alphabet::fln(),
            fln: Some(params),
            closed,
        };
        fs.validate()?;
        Ok(fs)
    }

    fn validate(&self) -> Result<()> {
        for (i, rule) in self.rules.iter().enumerate() {
            let v = i + 1;
            match rule {
                VertexRule::Symmetric(_) => {
                    if self.alphabet.size() != 2 {
                        return Err(Error::invalid(
                            "named symmetric rules need the binary alphabet",
                        ));
                    }
                }
                VertexRule::Eca(_) => {
                    if self.alphabet.size() != 2 {
                        return Err(Error::invalid("eca rules need the binary alphabet"));
                    }
                    let n = self.base.n();
                    if n < 3 {
                        return Err(Error::TooSmall {
                            what: "eca base graph",
                            min: 3,
                            actual: n,
                        });
                    }
                    let prev = (v + n - 2) % n + 1;
                    let next = v % n + 1;
                    let mut expected = vec![prev, next];
                    expected.sort_unstable();
                    expected.dedup();
                    if self.base.neighbors(v) != expected.as_slice() {
                        return Err(Error::invalid(
                            "eca rules are only valid over circ(n) bases",
                        ));
                    }
                }
                VertexRule::Fln => {
                    if self.alphabet.size() != 3 || self.fln.is_none() {
                        return Err(Error::invalid(
                            "fln rules need the three-state alphabet and weight parameters",
                        ));
                    }
                }
                VertexRule::Table(t) => {
                    if t.k != self.alphabet.size() {
                        return Err(Error::invalid(
                            "symmetric table alphabet size does not match",
                        ));
                    }
                }
                VertexRule::Identity => {}
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &Graph {
        &self.base
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[VertexRule] {
        &self.rules
    }

    pub fn state_count(&self) -> Option<usize> {
        state_count(self.alphabet.size(), self.base.n())
    }

    fn eval_vertex(&self, v: usize, x: &[u8]) -> Result<u8> {
        let rule = &self.rules[v - 1];
        match rule {
            VertexRule::Identity => Ok(x[v - 1]),
            VertexRule::Symmetric(kind) => {
                let nbhd = &self.closed[v - 1];
                let ones = nbhd.iter().filter(|&&u| x[u - 1] == 1).count();
                Ok(kind.eval(ones, nbhd.len()))
            }
            VertexRule::Table(table) => {
                let nbhd = &self.closed[v - 1];
                let args: Vec<u8> = nbhd.iter().map(|&u| x[u - 1]).collect();
                table.eval(&args)
            }
            VertexRule::Eca(rule) => {
                let n = self.base.n();
                let left = x[(v + n - 2) % n];
                let own = x[v - 1];
                let right = x[v % n];
                let pos = 4 * left + 2 * own + right;
                Ok((rule >> pos) & 1)
            }
            VertexRule::Fln => {
                let params = self.fln.as_ref().expect("validated");
                let mut sum = Ratio::from_integer(0i64);
                for &u in self.base.neighbors(v) {
                    sum += params.weight(v, u)? * Ratio::from_integer(fln_value(x[u - 1]));
                }
                if params.include_self {
                    sum += Ratio::from_integer(fln_value(x[v - 1]));
                }
                Ok(if sum >= params.threshold { 1 } else { 2 })
            }
        }
    }

    /// F_v(x): replaces coordinate v with its rule's value, all other
    /// coordinates untouched.
    pub fn local_apply(&self, v: usize, x: &[u8]) -> Result<Vec<u8>> {
        let n = self.base.n();
        if v < 1 || v > n {
            return Err(Error::VertexOutOfRange { v, n });
        }
        if x.len() != n {
            return Err(Error::SizeMismatch { a: x.len(), b: n });
        }
        let mut out = x.to_vec();
        out[v - 1] = self.eval_vertex(v, x)?;
        Ok(out)
    }

    /// [𝔉_Y, ω](x): applies the word left to right (ω₁ first).
    pub fn sds_apply(&self, word: &UpdateWord, x: &[u8]) -> Result<Vec<u8>> {
        let n = self.base.n();
        if x.len() != n {
            return Err(Error::SizeMismatch { a: x.len(), b: n });
        }
        let mut state = x.to_vec();
        for &v in word.letters() {
            state[v - 1] = self.eval_vertex(v, &state)?;
        }
        Ok(state)
    }

    /// Full map table of [𝔉_Y, ω] on K^n. Sharded across `jobs` workers;
    /// the table is position-addressed so the result is identical for any
    /// worker count.
    pub fn build_map(&self, word: &UpdateWord, limits: &Limits, jobs: usize) -> Result<MapTable> {
        word.check_against(self.base.n())?;
        let k = self.alphabet.size();
        let n = self.base.n();
        let total = self
            .state_count()
            .ok_or_else(|| Error::invalid("state space overflows usize"))?;
        limits.check_states(total)?;
        let mut entries = vec![0u32; total];
        let result = parallel_chunks(&mut entries, jobs, |start, chunk| {
            let mut state = vec![0u8; n];
            for (offset, slot) in chunk.iter_mut().enumerate() {
                let mut rem = start + offset;
                for digit in state.iter_mut() {
                    *digit = (rem % k) as u8;
                    rem /= k;
                }
                for &v in word.letters() {
                    state[v - 1] = self.eval_vertex(v, &state)?;
                }
                *slot = state_to_index(&state, k) as u32;
            }
            Ok(())
        });
        result?;
        Ok(MapTable { k, n, entries })
    }
}

/// A nonempty update sequence over v[Y].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpdateWord {
    letters: Vec<usize>,
}

impl UpdateWord {
    pub fn new(letters: Vec<usize>) -> Result<UpdateWord> {
        if letters.is_empty() {
            return Err(Error::invalid("update word must be nonempty"));
        }
        Ok(UpdateWord { letters })
    }

    pub fn check_against(&self, n: usize) -> Result<()> {
        for &v in &self.letters {
            if v < 1 || v > n {
                return Err(Error::VertexOutOfRange { v, n });
            }
        }
        Ok(())
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Each vertex of 1..=n exactly once.
    pub fn is_permutation(&self, n: usize) -> bool {
        if self.letters.len() != n {
            return false;
        }
        let mut seen = vec![false; n + 1];
        for &v in &self.letters {
            if v > n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Each vertex of 1..=n at least once.
    pub fn is_complete(&self, n: usize) -> bool {
        let mut seen = vec![false; n + 1];
        for &v in &self.letters {
            if v <= n {
                seen[v] = true;
            }
        }
        (1..=n).all(|v| seen[v])
    }

    /// Comma-separated vertex labels, e.g. `1,3,2,4`.
    pub fn parse(text: &str) -> Result<UpdateWord> {
        let letters: Result<Vec<usize>> = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("`{t}` is not a vertex label")))
            })
            .collect();
        UpdateWord::new(letters?)
    }

    pub fn render(&self) -> String {
        self.letters
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// The state-permutation action σ(x)_i = x_{σ⁻¹(i)} on a packed index.
pub fn permute_state_index(idx: usize, k: usize, n: usize, sigma: &VertexPermutation) -> usize {
    let digits = index_to_state(idx, k, n);
    let mut out = vec![0u8; n];
    for v in 1..=n {
        out[sigma.apply(v) - 1] = digits[v - 1];
    }
    state_to_index(&out, k)
}
