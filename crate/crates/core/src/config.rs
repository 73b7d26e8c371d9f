//! Spec mini-languages shared by the CLI and the C API: graph specs, rule
//! specs, word-family specs and the weights file format.

use std::collections::BTreeMap;
use std::path::Path;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};
use crate::limits::Limits;
use crate::sds::{Alphabet, FunctionSequence, SymmetricKind, UpdateWord, VertexRule};
use crate::stability::{self, PermFamily, SamplePolicy, WordPolicy};

/// Graph specs: `circ:N`, `circ2:N`, `star:N`, `complete:N`, `path:N`,
/// `tree:1-2,2-3,...`, or `file:PATH` (edge-list format).
pub fn parse_graph_spec(spec: &str) -> Result<Graph> {
    let (head, arg) = spec
        .split_once(':')
        .ok_or_else(|| Error::invalid(format!("graph spec `{spec}` needs the form kind:arg")))?;
    let parse_n = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::invalid(format!("`{s}` is not a vertex count")))
    };
    match head {
        "circ" => Graph::generate(&GraphKind::Circ(parse_n(arg)?)),
        "circ2" => Graph::generate(&GraphKind::Circ2(parse_n(arg)?)),
        "star" => Graph::generate(&GraphKind::Star(parse_n(arg)?)),
        "complete" => Graph::generate(&GraphKind::Complete(parse_n(arg)?)),
        "path" => Graph::generate(&GraphKind::Path(parse_n(arg)?)),
        "tree" => {
            let edges: Result<Vec<(usize, usize)>> = arg
                .split(',')
                .map(|pair| {
                    let (a, b) = pair.split_once('-').ok_or_else(|| {
                        Error::invalid(format!("tree edge `{pair}` needs the form a-b"))
                    })?;
                    Ok((parse_n(a.trim())?, parse_n(b.trim())?))
                })
                .collect();
            Graph::generate(&GraphKind::Tree(edges?))
        }
        "file" => {
            let text = std::fs::read_to_string(arg)?;
            Graph::parse_edge_list(&text)
        }
        other => Err(Error::invalid(format!(
            "unknown graph kind `{other}` (expected circ, circ2, star, complete, path, tree or file)"
        ))),
    }
}

/// Exact rational literal: `p/q` or an integer.
pub fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("`{p}` is not an integer")))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("`{q}` is not an integer")))?;
        if q == 0 {
            return Err(Error::invalid("rational denominator is zero"));
        }
        Ok(Ratio::new(p, q))
    } else {
        let p: i64 = s
            .parse()
            .map_err(|_| Error::invalid(format!("`{s}` is not a rational (p/q or integer)")))?;
        Ok(Ratio::from_integer(p))
    }
}

/// Weights file: lines `i j w` with w a rational; `#` comments ignored.
pub fn parse_weights(text: &str) -> Result<BTreeMap<(usize, usize), Ratio<i64>>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let parts: Vec<&str> = body.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                line,
                msg: "expected `i j w`".into(),
            });
        }
        let a: usize = parts[0].parse().map_err(|_| Error::Parse {
            line,
            msg: format!("`{}` is not a vertex label", parts[0]),
        })?;
        let b: usize = parts[1].parse().map_err(|_| Error::Parse {
            line,
            msg: format!("`{}` is not a vertex label", parts[1]),
        })?;
        let w = parse_ratio(parts[2]).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
        out.insert((a.min(b), a.max(b)), w);
    }
    Ok(out)
}

/// Rule specs: `nor`, `nand`, `or`, `and`, `parity`, `majority`, `minority`,
/// `identity`, `threshold:m`, `eca:R`, `fln:T` (with a weights file).
pub fn parse_rule_spec(
    spec: &str,
    graph: &Graph,
    weights_file: Option<&Path>,
    fln_include_self: bool,
) -> Result<FunctionSequence> {
    let named = |kind: SymmetricKind| {
        FunctionSequence::uniform(
            graph.clone(),
            VertexRule::Symmetric(kind),
            Alphabet::binary(),
        )
    };
    match spec {
        "nor" => named(SymmetricKind::Nor),
        "nand" => named(SymmetricKind::Nand),
        "or" => named(SymmetricKind::Or),
        "and" => named(SymmetricKind::And),
        "parity" => named(SymmetricKind::Parity),
        "majority" => named(SymmetricKind::Majority),
        "minority" => named(SymmetricKind::Minority),
        "identity" => {
            FunctionSequence::uniform(graph.clone(), VertexRule::Identity, Alphabet::binary())
        }
        other => {
            let (head, arg) = other.split_once(':').ok_or_else(|| {
                Error::invalid(format!("unknown rule spec `{other}`"))
            })?;
            match head {
                "threshold" => {
                    let m: usize = arg.parse().map_err(|_| {
                        Error::invalid(format!("`{arg}` is not a threshold level"))
                    })?;
                    named(SymmetricKind::Threshold(m))
                }
                "eca" => {
                    let rule: u16 = arg.parse().map_err(|_| {
                        Error::invalid(format!("`{arg}` is not an eca rule number"))
                    })?;
                    if rule > 255 {
                        return Err(Error::invalid(format!(
                            "eca rule {rule} out of range 0..=255"
                        )));
                    }
                    FunctionSequence::uniform(
                        graph.clone(),
                        VertexRule::Eca(rule as u8),
                        Alphabet::binary(),
                    )
                }
                "fln" => {
                    let threshold = parse_ratio(arg)?;
                    let weights = match weights_file {
                        Some(path) => parse_weights(&std::fs::read_to_string(path)?)?,
                        None => {
                            // unit weights when no file is given
                            graph
                                .edges()
                                .iter()
                                .map(|&e| (e, Ratio::from_integer(1)))
                                .collect()
                        }
                    };
                    FunctionSequence::fln(graph.clone(), weights, threshold, fln_include_self)
                }
                _ => Err(Error::invalid(format!("unknown rule spec `{other}`"))),
            }
        }
    }
}

/// Word-family specs for classify/omega/rho.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordsSpec {
    Transversal,
    AllPermutations,
    /// Transversal plus a deterministic sample of complete words.
    Sampled { count: usize, max_len: Option<usize> },
    File(String),
}

impl WordsSpec {
    pub fn parse(spec: &str) -> Result<WordsSpec> {
        match spec {
            "transversal" => Ok(WordsSpec::Transversal),
            "all-permutations" => Ok(WordsSpec::AllPermutations),
            other => {
                let (head, arg) = other.split_once(':').ok_or_else(|| {
                    Error::invalid(format!(
                        "unknown words spec `{other}` (expected transversal, all-permutations, sampled:c[,L] or file:PATH)"
                    ))
                })?;
                match head {
                    "sampled" => {
                        let mut parts = arg.split(',');
                        let count: usize = parts
                            .next()
                            .unwrap_or("")
                            .trim()
                            .parse()
                            .map_err(|_| Error::invalid("sampled:c[,L] needs a count"))?;
                        let max_len = match parts.next() {
                            Some(l) => Some(l.trim().parse::<usize>().map_err(|_| {
                                Error::invalid("sampled max length is not an integer")
                            })?),
                            None => None,
                        };
                        Ok(WordsSpec::Sampled { count, max_len })
                    }
                    "file" => Ok(WordsSpec::File(arg.to_string())),
                    _ => Err(Error::invalid(format!("unknown words spec `{other}`"))),
                }
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            WordsSpec::Transversal => "transversal".into(),
            WordsSpec::AllPermutations => "all-permutations".into(),
            WordsSpec::Sampled { count, max_len } => match max_len {
                Some(l) => format!("sampled:{count},{l}"),
                None => format!("sampled:{count}"),
            },
            WordsSpec::File(path) => format!("file:{path}"),
        }
    }

    /// Materializes the word list for classify/omega.
    pub fn build(&self, g: &Graph, limits: &Limits, seed: u64) -> Result<Vec<UpdateWord>> {
        match self {
            WordsSpec::Transversal => stability::transversal_words(g, limits),
            WordsSpec::AllPermutations => Ok(stability::all_permutation_words(g.n())),
            WordsSpec::Sampled { count, max_len } => {
                let mut words = stability::transversal_words(g, limits)?;
                let policy = SamplePolicy {
                    count: *count,
                    max_len: max_len.unwrap_or(2 * g.n()),
                    seed,
                };
                words.extend(stability::sampled_complete_words(g.n(), &policy));
                Ok(words)
            }
            WordsSpec::File(path) => {
                let text = std::fs::read_to_string(path)?;
                let words: Result<Vec<UpdateWord>> = text
                    .lines()
                    .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                    .map(UpdateWord::parse)
                    .collect();
                let words = words?;
                if words.is_empty() {
                    return Err(Error::invalid(format!("word file `{path}` is empty")));
                }
                for w in &words {
                    w.check_against(g.n())?;
                }
                Ok(words)
            }
        }
    }

    /// The equivalent policy for independence testing. File lists have no
    /// policy form; they map to the transversal baseline.
    pub fn to_policy(&self, n: usize, seed: u64) -> WordPolicy {
        match self {
            WordsSpec::Transversal | WordsSpec::File(_) => WordPolicy::transversal_only(),
            WordsSpec::AllPermutations => WordPolicy {
                perms: PermFamily::All,
                sample: None,
            },
            WordsSpec::Sampled { count, max_len } => WordPolicy {
                perms: PermFamily::AlphaTransversal,
                sample: Some(SamplePolicy {
                    count: *count,
                    max_len: max_len.unwrap_or(2 * n),
                    seed,
                }),
            },
        }
    }
}
