//! Update-sequence stability quantities: ω-limit reachability over families
//! of update sequences, word-independence testing and the ρ ratio.
//!
//! Permutation families run over the alpha-transversal by default (one
//! linear extension per acyclic orientation): linear extensions of one
//! orientation compose to the same map, so ω-sets and periodic sets are
//! unchanged while the family shrinks from n! to alpha(Y).

use itertools::Itertools;
use num_rational::Ratio;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::orient::{enumerate_acyc, lex_min_extension};
use crate::phase::{build_phase_space, PhaseSpace};
use crate::sds::{FunctionSequence, MapTable, UpdateWord};
use crate::util::parallel_map;

/// Which permutation words a policy tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermFamily {
    /// One linear extension per acyclic orientation.
    AlphaTransversal,
    /// All n! permutations.
    All,
}

/// Deterministic sampler for longer complete words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplePolicy {
    pub count: usize,
    pub max_len: usize,
    pub seed: u64,
}

impl SamplePolicy {
    /// Defaults: 200 words up to length 2n.
    pub fn defaults(n: usize, seed: u64) -> SamplePolicy {
        SamplePolicy {
            count: 200,
            max_len: 2 * n,
            seed,
        }
    }
}

/// Word families tested by [`word_independent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordPolicy {
    pub perms: PermFamily,
    pub sample: Option<SamplePolicy>,
}

impl WordPolicy {
    pub fn transversal_only() -> WordPolicy {
        WordPolicy {
            perms: PermFamily::AlphaTransversal,
            sample: None,
        }
    }

    pub fn describe(&self, n: usize) -> String {
        let perms = match self.perms {
            PermFamily::AlphaTransversal => {
                "one linear extension per acyclic orientation (covers all permutations up to functional equality)".to_string()
            }
            PermFamily::All => format!("all {n}! permutations"),
        };
        match &self.sample {
            None => perms,
            Some(s) => format!(
                "{perms}; plus {} sampled complete words of length up to {} (seed {})",
                s.count, s.max_len, s.seed
            ),
        }
    }
}

/// The canonical representative word of each acyclic orientation.
pub fn transversal_words(g: &Graph, limits: &Limits) -> Result<Vec<UpdateWord>> {
    enumerate_acyc(g, limits)?
        .iter()
        .map(|o| UpdateWord::new(lex_min_extension(o)))
        .collect()
}

/// All n! permutation words in lexicographic order.
pub fn all_permutation_words(n: usize) -> Vec<UpdateWord> {
    (1..=n)
        .permutations(n)
        .map(|p| UpdateWord::new(p).expect("nonempty"))
        .collect()
}

/// Seeded deterministic sample of complete words: a shuffled permutation
/// guarantees completeness, padded with uniform letters and reshuffled.
pub fn sampled_complete_words(n: usize, policy: &SamplePolicy) -> Vec<UpdateWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let max_len = policy.max_len.max(n);
    let mut out = Vec::with_capacity(policy.count);
    for _ in 0..policy.count {
        let len = n + uniform(&mut rng, max_len - n + 1);
        let mut letters: Vec<usize> = (1..=n).collect();
        for _ in n..len {
            letters.push(1 + uniform(&mut rng, n));
        }
        // Fisher-Yates; completeness survives any reordering
        for i in (1..letters.len()).rev() {
            let j = uniform(&mut rng, i + 1);
            letters.swap(i, j);
        }
        out.push(UpdateWord::new(letters).expect("nonempty"));
    }
    out
}

/// Unbiased uniform draw from 0..bound by rejection.
fn uniform(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    let bound = bound as u64;
    debug_assert!(bound > 0);
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let raw = rng.next_u64();
        if raw < zone {
            return (raw % bound) as usize;
        }
    }
}

/// ω(φ; x): the cycle eventually entered from x, as sorted state indices.
pub fn omega_limit(table: &MapTable, x: usize) -> Vec<u32> {
    let mut slow = x;
    let mut fast = table.apply(x);
    while slow != fast {
        slow = table.apply(slow);
        fast = table.apply(table.apply(fast));
    }
    // slow is on the cycle; collect it
    let mut cycle = vec![slow as u32];
    let mut cur = table.apply(slow);
    while cur != slow {
        cycle.push(cur as u32);
        cur = table.apply(cur);
    }
    cycle.sort_unstable();
    cycle
}

/// ω_𝒫(x) = ⋃_{ω∈𝒫} ω([𝔉,ω]; x), deduplicated and sorted.
pub fn omega_union(
    fs: &FunctionSequence,
    family: &[UpdateWord],
    x: usize,
    limits: &Limits,
    jobs: usize,
) -> Result<Vec<u32>> {
    if family.is_empty() {
        return Err(Error::invalid("update-sequence family must be nonempty"));
    }
    let sets = parallel_map(family, jobs, |word| {
        let table = fs.build_map(word, limits, 1)?;
        Ok(omega_limit(&table, x))
    })?;
    let mut union: Vec<u32> = sets.into_iter().flatten().collect();
    union.sort_unstable();
    union.dedup();
    Ok(union)
}

/// Reachability report over a family of update sequences.
#[derive(Debug, Clone)]
pub struct OmegaReport {
    /// ω_𝒫(x) for every initial state x.
    pub per_state: Vec<Vec<u32>>,
    /// max |ω_𝒫(x)| over all x.
    pub omega_max: usize,
    /// All states attaining the maximum.
    pub argmax: Vec<u32>,
}

/// ω(𝔉_Y): maximum number of periodic states reachable from one initial
/// state by varying the update order over all permutations (via the
/// alpha-transversal).
pub fn omega_max(fs: &FunctionSequence, limits: &Limits, jobs: usize) -> Result<OmegaReport> {
    let words = transversal_words(fs.graph(), limits)?;
    omega_report(fs, &words, limits, jobs)
}

/// Same report over an explicit family.
pub fn omega_report(
    fs: &FunctionSequence,
    family: &[UpdateWord],
    limits: &Limits,
    jobs: usize,
) -> Result<OmegaReport> {
    if family.is_empty() {
        return Err(Error::invalid("update-sequence family must be nonempty"));
    }
    let total = fs
        .state_count()
        .ok_or_else(|| Error::invalid("state space overflows usize"))?;
    limits.check_states(total)?;
    let spaces: Vec<PhaseSpace> = parallel_map(family, jobs, |word| {
        Ok(build_phase_space(fs.build_map(word, limits, 1)?))
    })?;
    let mut per_state: Vec<Vec<u32>> = Vec::with_capacity(total);
    for x in 0..total {
        let mut union: Vec<u32> = spaces.iter().flat_map(|s| s.omega_of(x)).copied().collect();
        union.sort_unstable();
        union.dedup();
        per_state.push(union);
    }
    let omega_max = per_state.iter().map(|s| s.len()).max().unwrap_or(0);
    let argmax: Vec<u32> = per_state
        .iter()
        .enumerate()
        .filter(|(_, s)| s.len() == omega_max)
        .map(|(x, _)| x as u32)
        .collect();
    Ok(OmegaReport {
        per_state,
        omega_max,
        argmax,
    })
}

/// Verdict of a word-independence check. Scoped to the words actually
/// tested: it is a necessary-condition check, not a proof over all of W_Y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndependenceVerdict {
    IndependentOverTestedWords,
    Dependent,
}

#[derive(Debug, Clone)]
pub struct WordIndependenceReport {
    pub verdict: IndependenceVerdict,
    /// Two tested words with different periodic sets, when dependent.
    pub witness: Option<(UpdateWord, UpdateWord)>,
    pub policy: String,
    /// |Per([𝔉,ω])| for each tested word, in test order.
    pub per_sizes: Vec<usize>,
}

impl WordIndependenceReport {
    pub fn is_independent(&self) -> bool {
        self.verdict == IndependenceVerdict::IndependentOverTestedWords
    }
}

/// Compares Per([𝔉,ω]) across the policy's words.
pub fn word_independent(
    fs: &FunctionSequence,
    policy: &WordPolicy,
    limits: &Limits,
    jobs: usize,
) -> Result<WordIndependenceReport> {
    let n = fs.graph().n();
    let mut words = match policy.perms {
        PermFamily::AlphaTransversal => transversal_words(fs.graph(), limits)?,
        PermFamily::All => all_permutation_words(n),
    };
    if let Some(sample) = &policy.sample {
        words.extend(sampled_complete_words(n, sample));
    }
    let periodic_sets: Vec<Vec<u32>> = parallel_map(&words, jobs, |word| {
        let space = build_phase_space(fs.build_map(word, limits, 1)?);
        Ok(space.periodic().to_vec())
    })?;
    let per_sizes: Vec<usize> = periodic_sets.iter().map(|p| p.len()).collect();
    let mut witness = None;
    for (i, per) in periodic_sets.iter().enumerate() {
        if per != &periodic_sets[0] {
            witness = Some((words[0].clone(), words[i].clone()));
            break;
        }
    }
    Ok(WordIndependenceReport {
        verdict: if witness.is_none() {
            IndependenceVerdict::IndependentOverTestedWords
        } else {
            IndependenceVerdict::Dependent
        },
        witness,
        policy: policy.describe(n),
        per_sizes,
    })
}

/// ρ(𝔉_Y) = |states periodic under every permutation| / |periodic under
/// some permutation|, exact, over the alpha-transversal.
pub fn rho(fs: &FunctionSequence, limits: &Limits, jobs: usize) -> Result<Ratio<u64>> {
    let words = transversal_words(fs.graph(), limits)?;
    let periodic_sets: Vec<Vec<u32>> = parallel_map(&words, jobs, |word| {
        let space = build_phase_space(fs.build_map(word, limits, 1)?);
        Ok(space.periodic().to_vec())
    })?;
    let mut intersection = periodic_sets[0].clone();
    let mut union = periodic_sets[0].clone();
    for per in &periodic_sets[1..] {
        intersection.retain(|s| per.binary_search(s).is_ok());
        union.extend_from_slice(per);
        union.sort_unstable();
        union.dedup();
    }
    Ok(Ratio::new(intersection.len() as u64, union.len() as u64))
}

/// One row of the ECA scan table.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub rule: u8,
    pub n: usize,
    pub independent: bool,
    pub rho: Ratio<u64>,
    pub per_size_min: usize,
    pub per_size_max: usize,
}

/// Permutation-independence scan of all 256 ECA rules over circ(n) for each
/// n in the range. Rows are sorted by (n, rule).
pub fn eca_scan(
    n_lo: usize,
    n_hi: usize,
    limits: &Limits,
    jobs: usize,
) -> Result<Vec<ScanRow>> {
    if n_lo < 4 || n_hi < n_lo {
        return Err(Error::invalid(
            "eca scan range must satisfy 4 <= n_lo <= n_hi",
        ));
    }
    let mut rows = Vec::with_capacity(256 * (n_hi - n_lo + 1));
    for n in n_lo..=n_hi {
        let words = {
            let g = Graph::generate(&crate::graph::GraphKind::Circ(n))?;
            transversal_words(&g, limits)?
        };
        let rules: Vec<u8> = (0..=255).collect();
        let per_rule: Vec<ScanRow> = parallel_map(&rules, jobs, |&rule| {
            let fs = FunctionSequence::eca(rule, n)?;
            let periodic_sets: Vec<Vec<u32>> = words
                .iter()
                .map(|word| {
                    let space = build_phase_space(fs.build_map(word, limits, 1)?);
                    Ok(space.periodic().to_vec())
                })
                .collect::<Result<_>>()?;
            let mut intersection = periodic_sets[0].clone();
            let mut union = periodic_sets[0].clone();
            let mut independent = true;
            let mut min = usize::MAX;
            let mut max = 0usize;
            for per in &periodic_sets {
                independent &= per == &periodic_sets[0];
                min = min.min(per.len());
                max = max.max(per.len());
                intersection.retain(|s| per.binary_search(s).is_ok());
                union.extend_from_slice(per);
                union.sort_unstable();
                union.dedup();
            }
            Ok(ScanRow {
                rule,
                n,
                independent,
                rho: Ratio::new(intersection.len() as u64, union.len() as u64),
                per_size_min: min,
                per_size_max: max,
            })
        })?;
        rows.extend(per_rule);
    }
    Ok(rows)
}

impl Default for ScanRow {
    fn default() -> Self {
        ScanRow {
            rule: 0,
            n: 0,
            independent: false,
            rho: Ratio::new(1, 1),
            per_size_min: 0,
            per_size_max: 0,
        }
    }
}
