//! Command-line front door. The only module with side effects: it reads
//! specs, runs the library and writes reports. Exit code 0 only when every
//! internal cross-check passed.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::config::{parse_graph_spec, parse_rule_spec, WordsSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::orient::orientation_of;
use crate::phase::{build_phase_space, classify, Relation};
use crate::report;
use crate::sds::{FunctionSequence, UpdateWord};
use crate::stability;

#[derive(Debug, Parser)]
#[command(
    name = "sdslab",
    version,
    about = "Exact update-order stability analysis for sequential dynamical systems"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Orientation counts alpha/kappa and their Aut(Y)-orbit counts, with
    /// cross-checks between the Tutte, enumeration and Burnside routes.
    Counts {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Group update words by functional, dynamical or cycle equivalence of
    /// their SDS maps.
    Classify {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        rule: RuleOpts,
        /// transversal | all-permutations | sampled:c[,L] | file:PATH
        #[arg(long, default_value = "transversal")]
        words: String,
        /// functional | dynamical | cycle
        #[arg(long, default_value = "functional")]
        relation: String,
    },
    /// Reachable-limit-set report: omega_max with witnesses and the
    /// per-state reachable periodic sets.
    Omega {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        rule: RuleOpts,
        /// transversal | all-permutations | sampled:c[,L] | file:PATH
        #[arg(long, default_value = "transversal")]
        words: String,
    },
    /// Permutation-independence scan of all 256 ECA rules over circ(n).
    Scan {
        /// Smallest circle size (>= 4).
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        /// Largest circle size.
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long)]
        limit_edges: Option<usize>,
        #[arg(long)]
        limit_states: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The periodic-set stability ratio rho plus the word-independence
    /// verdict under the chosen policy.
    Rho {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        rule: RuleOpts,
        /// transversal | all-permutations | sampled:c[,L]; default also
        /// samples complete words
        #[arg(long)]
        words: Option<String>,
    },
    /// DOT export of a graph, an orientation O_pi, or a phase space.
    ExportDot {
        #[command(flatten)]
        common: CommonOpts,
        /// Permutation word, e.g. 1,2,3,4: export O_pi instead of the graph.
        #[arg(long)]
        orientation: Option<String>,
        /// Rule spec; with --word, exports the phase space of [F, word].
        #[arg(long)]
        rule: Option<String>,
        /// Update word for the phase-space export.
        #[arg(long)]
        word: Option<String>,
        /// Weights file for fln rules.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Include the vertex's own state in fln sums.
        #[arg(long, default_value_t = false)]
        fln_include_self: bool,
    },
}

#[derive(Debug, Args)]
struct CommonOpts {
    /// circ:N | circ2:N | star:N | complete:N | path:N | tree:1-2,2-3 | file:PATH
    #[arg(long)]
    graph: String,
    /// Acyclic-orientation enumeration limit (edge count).
    #[arg(long)]
    limit_edges: Option<usize>,
    /// Map-table limit (number of states).
    #[arg(long)]
    limit_states: Option<usize>,
    /// Worker count; output is identical for any value.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Seed for the deterministic word sampler.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report destination (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RuleOpts {
    /// nor | nand | or | and | parity | majority | minority | identity |
    /// threshold:m | eca:R | fln:T
    #[arg(long)]
    rule: String,
    /// Weights file (lines `i j w`) for fln rules.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Include the vertex's own state in fln sums (default: open
    /// neighborhood only).
    #[arg(long, default_value_t = false)]
    fln_include_self: bool,
}

impl CommonOpts {
    fn limits(&self) -> Result<Limits> {
        let mut limits = Limits::from_env()?;
        if let Some(edges) = self.limit_edges {
            limits.max_edges = edges;
        }
        if let Some(states) = self.limit_states {
            limits.max_states = states;
        }
        Ok(limits)
    }

    fn graph(&self) -> Result<Graph> {
        parse_graph_spec(&self.graph)
    }
}

impl RuleOpts {
    fn sequence(&self, g: &Graph) -> Result<FunctionSequence> {
        parse_rule_spec(&self.rule, g, self.weights.as_deref(), self.fln_include_self)
    }
}

fn config_json(common: &CommonOpts, limits: &Limits, extra: &[(&str, Value)]) -> Value {
    let mut obj = Map::new();
    obj.insert("graph".into(), json!(common.graph));
    obj.insert("limits".into(), limits_json(limits));
    obj.insert("seed".into(), json!(common.seed));
    for (k, v) in extra {
        obj.insert((*k).into(), v.clone());
    }
    Value::Object(obj)
}

fn limits_json(limits: &Limits) -> Value {
    json!({
        "aut": limits.max_aut_vertices,
        "edges": limits.max_edges,
        "states": limits.max_states,
    })
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Runs the CLI; the returned code is the process exit status.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Counts { common } => {
            let limits = common.limits()?;
            let g = common.graph()?;
            let (payload, all_ok) = report::counts_payload(&g, &limits)?;
            let value = report::envelope("counts", config_json(&common, &limits, &[]), payload);
            emit(common.out.as_ref(), &report::render_json(&value))?;
            Ok(if all_ok { 0 } else { 1 })
        }
        Command::Classify {
            common,
            rule,
            words,
            relation,
        } => {
            let limits = common.limits()?;
            let g = common.graph()?;
            let fs = rule.sequence(&g)?;
            let relation = Relation::parse(&relation)?;
            let words_spec = WordsSpec::parse(&words)?;
            let list = words_spec.build(&g, &limits, common.seed)?;
            let classes = classify(&fs, &list, relation, &limits, common.jobs)?;
            let covers_all = matches!(
                words_spec,
                WordsSpec::Transversal | WordsSpec::AllPermutations
            );
            let payload = report::classify_payload(&fs, &classes, relation.name(), covers_all);
            let config = config_json(
                &common,
                &limits,
                &[
                    ("rule", json!(rule.rule)),
                    ("words", json!(words_spec.describe())),
                    ("relation", json!(relation.name())),
                ],
            );
            let value = report::envelope("classify", config, payload);
            emit(common.out.as_ref(), &report::render_json(&value))?;
            Ok(0)
        }
        Command::Omega {
            common,
            rule,
            words,
        } => {
            let limits = common.limits()?;
            let g = common.graph()?;
            let fs = rule.sequence(&g)?;
            let words_spec = WordsSpec::parse(&words)?;
            let list = words_spec.build(&g, &limits, common.seed)?;
            let omega = stability::omega_report(&fs, &list, &limits, common.jobs)?;
            let payload = report::omega_payload(
                &fs,
                &omega,
                &report::family_desc(&list, &words_spec.describe()),
            );
            let config = config_json(
                &common,
                &limits,
                &[
                    ("rule", json!(rule.rule)),
                    ("words", json!(words_spec.describe())),
                ],
            );
            let value = report::envelope("omega", config, payload);
            emit(common.out.as_ref(), &report::render_json(&value))?;
            Ok(0)
        }
        Command::Scan {
            n_min,
            n_max,
            limit_edges,
            limit_states,
            jobs,
            seed,
            out,
        } => {
            let mut limits = Limits::from_env()?;
            if let Some(edges) = limit_edges {
                limits.max_edges = edges;
            }
            if let Some(states) = limit_states {
                limits.max_states = states;
            }
            let rows = stability::eca_scan(n_min, n_max, &limits, jobs)?;
            let config_line = format!("n {n_min}..{n_max}; seed {seed}");
            let csv = report::scan_csv(&rows, &config_line);
            emit(out.as_ref(), &csv)?;
            Ok(0)
        }
        Command::Rho {
            common,
            rule,
            words,
        } => {
            let limits = common.limits()?;
            let g = common.graph()?;
            let fs = rule.sequence(&g)?;
            // default policy: transversal permutations plus sampled complete
            // words at the documented defaults
            let policy = match &words {
                Some(spec) => WordsSpec::parse(spec)?.to_policy(g.n(), common.seed),
                None => stability::WordPolicy {
                    perms: stability::PermFamily::AlphaTransversal,
                    sample: Some(stability::SamplePolicy::defaults(g.n(), common.seed)),
                },
            };
            let rho = stability::rho(&fs, &limits, common.jobs)?;
            let independence = stability::word_independent(&fs, &policy, &limits, common.jobs)?;
            let payload = report::rho_payload(rho, &independence);
            let config = config_json(
                &common,
                &limits,
                &[
                    ("rule", json!(rule.rule)),
                    (
                        "words",
                        json!(words.unwrap_or_else(|| "transversal+sampled".into())),
                    ),
                ],
            );
            let value = report::envelope("rho", config, payload);
            emit(common.out.as_ref(), &report::render_json(&value))?;
            Ok(0)
        }
        Command::ExportDot {
            common,
            orientation,
            rule,
            word,
            weights,
            fln_include_self,
        } => {
            let limits = common.limits()?;
            let g = common.graph()?;
            let dot = match (orientation, rule, word) {
                (Some(word), None, None) => {
                    let w = UpdateWord::parse(&word)?;
                    orientation_of(w.letters(), &g)?.to_dot()
                }
                (None, Some(rule_spec), Some(word)) => {
                    let fs = parse_rule_spec(
                        &rule_spec,
                        &g,
                        weights.as_deref(),
                        fln_include_self,
                    )?;
                    let w = UpdateWord::parse(&word)?;
                    let table = fs.build_map(&w, &limits, common.jobs)?;
                    build_phase_space(table).to_dot(fs.alphabet())
                }
                (None, None, None) => g.to_dot(),
                _ => {
                    return Err(Error::invalid(
                        "export-dot takes either --orientation, or --rule with --word, or neither",
                    ))
                }
            };
            emit(common.out.as_ref(), &dot)?;
            Ok(0)
        }
    }
}
