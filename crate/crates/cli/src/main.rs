//! Command-line front end: parse monoid and act files, run the classifiers
//! and witness builders, and batch-verify the corpus.
//!
//! JSON is the machine format; the text renderings are derived from the
//! same data. Reports are byte-identical across runs for fixed inputs,
//! configuration, and seed.
//!
//! Exit codes: 0 success, 1 corpus invariant failure, 2 parse or usage
//! error, 3 internal verification failure, 4 witness precondition failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use actlab_core::classify::{analyze, bounded_classify, ClassifyOptions, WindowProbe};
use actlab_core::corpus::{generated_corpus, invariant_battery, CorpusEntry, INVARIANT_NAMES};
use actlab_core::families::finite as fam;
use actlab_core::families::lazy::{lazy_family, FAMILY_NAMES};
use actlab_core::fo;
use actlab_core::monoid::FiniteMonoid;
use actlab_core::regular::{is_act_regular, regular_core};
use actlab_core::textio::{
    act_from_source, act_to_dot, act_to_text, monoid_to_text, parse_act, parse_monoid,
};
use actlab_core::witness::{build_counting, build_grid, build_tree, enumerate_triples};
use actlab_core::FiniteAct;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

/// Shared run configuration: bounds, output format, and seed.
#[derive(Parser)]
#[command(name = "actlab", version, about = "Classifiers and witnesses for finite monoid acts")]
struct RunConfig {
    #[command(subcommand)]
    command: Command,
    /// Cap on congruences enumerated per translate (also caps triples).
    #[arg(long, global = true, default_value_t = 4096)]
    cap_congruences: usize,
    /// Cap on distinct equalizer sets kept during intersection closure.
    #[arg(long, global = true, default_value_t = 4096)]
    cap_closure: usize,
    /// Grid height for order-refutation evidence and the grid witness.
    #[arg(long = "witness-N", short = 'N', global = true, default_value_t = 2)]
    witness_n: usize,
    /// Window for rule-defined families; defaults to the descriptor's.
    #[arg(long, global = true)]
    window: Option<u64>,
    /// Output format; `dot` applies to acts only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized suites, recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file, or base path for witness artifacts.
    #[arg(short, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a monoid file, or a lazy family descriptor on a window.
    Analyze { monoid_file: PathBuf },
    /// Per-point regularity certificates and the regular core of an act.
    ActCheck { act_file: PathBuf },
    /// Build a verified witness act and report its pattern.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Run the invariant battery over every monoid file in a directory.
    Corpus {
        dir: Option<PathBuf>,
        /// Also generate every monoid table up to this order (0 = none).
        #[arg(long, default_value_t = 0)]
        max_order: usize,
    },
    /// Emit a built-in family as a monoid file or family descriptor.
    Families {
        #[command(subcommand)]
        op: FamiliesOp,
    },
}

#[derive(Subcommand)]
enum WitnessKind {
    /// Triangular grid act on which `∃z (x = t*z ∧ y = s*z)` is the order.
    Grid {
        monoid_file: PathBuf,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        s: usize,
    },
    /// Branching act separating leaf sequences by chain-level membership.
    Tree {
        monoid_file: PathBuf,
        #[arg(long)]
        a: usize,
        /// Strictly ascending chain below `S*a`, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        chain: Vec<usize>,
        #[arg(long)]
        kappa: usize,
    },
    /// Counting act whose designated point satisfies formula `i` iff `i`
    /// is in the index set.
    Counting {
        monoid_file: PathBuf,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        beta: usize,
        /// Three-variable relation in the formula syntax, e.g.
        /// `[1]x = y & !(x = y)`.
        #[arg(long)]
        phi: String,
        /// Preimage multiplicity per step.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Encoded index set, comma separated; may be empty.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        k_set: Vec<usize>,
        #[arg(long)]
        n_max: usize,
    },
    /// Enumerate congruence triples over the idempotent cover.
    Triples {
        monoid_file: PathBuf,
        /// Target act file; defaults to the regular representation.
        #[arg(long)]
        target: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FamiliesOp {
    /// Build a family by name. Finite families emit the monoid text
    /// format; lazy families emit a window descriptor.
    Build {
        name: String,
        /// Order of the abelian group parameter (cyclic).
        #[arg(long, default_value_t = 2)]
        group_order: usize,
        /// Copies per layer for the layered family.
        #[arg(long, default_value_t = 1)]
        copies: usize,
        /// Modulus for the chain-of-groups family.
        #[arg(long, default_value_t = 2)]
        modulus: usize,
        /// Top level index for the chain-of-groups family.
        #[arg(long, default_value_t = 1)]
        levels: usize,
        /// Adjoin shift elements to the chain-of-groups family.
        #[arg(long, default_value_t = false)]
        shifts: bool,
        /// Zero count for the right-zeros family.
        #[arg(long, default_value_t = 2)]
        count: usize,
        /// Grid shape for the rect-band family.
        #[arg(long, default_value_t = 2)]
        rows: usize,
        #[arg(long, default_value_t = 2)]
        cols: usize,
    },
}

/// A terminating failure: exit code plus message for stderr.
struct Failure {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, Failure>;

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    if let Ok(threads) = std::env::var("ACTLAB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    match run(&config) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(config: &RunConfig) -> CliResult<ExitCode> {
    if config.cap_congruences == 0 || config.cap_closure == 0 || config.witness_n == 0 {
        return Err(fail(2, "bounds must be positive"));
    }
    if config.window == Some(0) {
        return Err(fail(2, "bounds must be positive"));
    }
    match &config.command {
        Command::Analyze { monoid_file } => cmd_analyze(monoid_file, config),
        Command::ActCheck { act_file } => cmd_act_check(act_file, config),
        Command::Witness { kind } => cmd_witness(kind, config),
        Command::Corpus { dir, max_order } => cmd_corpus(dir.as_deref(), *max_order, config),
        Command::Families { op } => cmd_families(op, config),
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn load_monoid(path: &Path) -> CliResult<Arc<FiniteMonoid>> {
    let text = read_input(path)?;
    let m = parse_monoid(&text).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    Ok(m.into_arc())
}

fn write_output(path: &Path, content: &str) -> CliResult<()> {
    std::fs::write(path, content)
        .map_err(|e| fail(3, format!("{}: {e}", path.display())))
}

/// Writes to `-o` when given, otherwise prints to stdout.
fn emit(config: &RunConfig, content: &str) -> CliResult<()> {
    match &config.out {
        Some(path) => write_output(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// One `key: value` line per top-level field, values in compact JSON.
/// Object keys are already sorted, so the rendering is deterministic.
fn value_text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (key, val) in map {
            let _ = writeln!(out, "{key}: {val}");
        }
    } else {
        let _ = writeln!(out, "{v}");
    }
    out
}

/// The descriptor head emitted for lazy families, `lazy family <name>
/// (window <w>)`, parsed back for `analyze`.
fn parse_descriptor_head(text: &str) -> Option<(String, u64)> {
    let rest = text.lines().next()?.strip_prefix("lazy family ")?;
    let (name, tail) = rest.split_once(" (window ")?;
    let window = tail.strip_suffix(')')?.parse().ok()?;
    Some((name.to_string(), window))
}

fn cmd_analyze(monoid_file: &Path, config: &RunConfig) -> CliResult<ExitCode> {
    let text = read_input(monoid_file)?;
    let mut report = if let Some((name, window)) = parse_descriptor_head(&text) {
        let window = config.window.unwrap_or(window);
        let lazy = lazy_family(&name, window)
            .map_err(|e| fail(2, format!("{}: {e}", monoid_file.display())))?;
        let probe = WindowProbe {
            ball_radius: window as usize,
            grid_height: config.witness_n as u64,
        };
        bounded_classify(&lazy, &probe)
            .map_err(|e| fail(3, format!("{}: {e}", monoid_file.display())))?
    } else {
        let m = parse_monoid(&text)
            .map_err(|e| fail(2, format!("{}: {e}", monoid_file.display())))?
            .into_arc();
        let opts = ClassifyOptions {
            cap_closure: config.cap_closure,
            cap_congruences: config.cap_congruences,
            witness_height: Some(config.witness_n),
        };
        analyze(&m, &opts)
    };
    report.notes.push(format!("seed {}", config.seed));
    let rendered = match config.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.render_text(),
        Format::Dot => return Err(fail(2, "analyze renders text or json, not dot")),
    };
    emit(config, &rendered)?;
    Ok(ExitCode::SUCCESS)
}

fn load_act(act_file: &Path) -> CliResult<(FiniteAct, String)> {
    let text = read_input(act_file)?;
    let source = parse_act(&text).map_err(|e| fail(2, format!("{}: {e}", act_file.display())))?;
    // Monoid refs resolve relative to the act file first, then as given.
    let sibling = act_file
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(|p| p.join(&source.monoid_ref));
    let monoid_path = match sibling {
        Some(path) if path.exists() => path,
        _ => PathBuf::from(&source.monoid_ref),
    };
    let monoid = load_monoid(&monoid_path)?;
    let act = act_from_source(monoid, &source)
        .map_err(|e| fail(2, format!("{}: {e}", act_file.display())))?;
    Ok((act, source.monoid_ref))
}

fn cmd_act_check(act_file: &Path, config: &RunConfig) -> CliResult<ExitCode> {
    let (act, monoid_ref) = load_act(act_file)?;
    let points: Vec<Value> = act
        .points()
        .map(|p| {
            let cert = is_act_regular(&act, p);
            let mut entry = json!({
                "point": p,
                "regular": cert.is_regular(),
                "witness_idempotent": cert.witness_idempotent(),
            });
            if let Some(label) = act.labels.get(&p) {
                entry["label"] = json!(label);
            }
            entry
        })
        .collect();
    let report = json!({
        "act": { "monoid": monoid_ref, "size": act.size() },
        "points": points,
        "regular_core": regular_core(&act),
        "seed": config.seed,
    });
    let rendered = match config.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("string keys") + "\n",
        Format::Text => value_text(&report),
        Format::Dot => act_to_dot(&act),
    };
    emit(config, &rendered)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_witness(kind: &WitnessKind, config: &RunConfig) -> CliResult<ExitCode> {
    let witness_failure = |e: actlab_core::witness::WitnessError| {
        fail(4, format!("witness precondition failed: {e}"))
    };
    let (act, report): (Option<FiniteAct>, Value) = match kind {
        WitnessKind::Grid { monoid_file, a, t, s } => {
            let m = load_monoid(monoid_file)?;
            let w = build_grid(&m, *a, *t, *s, config.witness_n).map_err(witness_failure)?;
            let pattern = w.verify_order_pattern().map_err(witness_failure)?;
            let report = json!({
                "kind": "grid",
                "a": w.a, "t": w.t, "s": w.s, "b": w.b, "c": w.c,
                "height": w.n,
                "act_size": w.act.size(),
                "b_points": w.b_points,
                "c_points": w.c_points,
                "formula": w.formula.to_string(),
                "pattern": pattern,
                "seed": config.seed,
            });
            (Some(w.act), report)
        }
        WitnessKind::Tree { monoid_file, a, chain, kappa } => {
            let m = load_monoid(monoid_file)?;
            let w = build_tree(&m, *a, chain, *kappa).map_err(witness_failure)?;
            let report = json!({
                "kind": "tree",
                "a": w.a,
                "chain": w.chain,
                "kappa": w.kappa,
                "depth": w.depth,
                "act_size": w.act.size(),
                "sequences": w.sequences,
                "leaf_points": w.leaf_points,
                "prefix_points": w.prefix_points,
                "seed": config.seed,
            });
            (Some(w.act), report)
        }
        WitnessKind::Counting { monoid_file, a, alpha, beta, phi, n, k_set, n_max } => {
            let m = load_monoid(monoid_file)?;
            let phi = fo::parse(phi).map_err(|e| fail(2, format!("phi: {e}")))?;
            let w = build_counting(&m, *a, *alpha, *beta, &phi, *n, k_set, *n_max)
                .map_err(witness_failure)?;
            let report = json!({
                "kind": "counting",
                "a": w.a, "alpha": w.alpha, "beta": w.beta, "b": w.b, "c": w.c,
                "multiplicity": w.n,
                "k_set": w.k_set,
                "n_max": w.n_max,
                "act_size": w.act.size(),
                "c_point": w.c_point,
                "formula": w.phi.to_string(),
                "satisfied": w.satisfied,
                "seed": config.seed,
            });
            (Some(w.act), report)
        }
        WitnessKind::Triples { monoid_file, target } => {
            let m = load_monoid(monoid_file)?;
            let target_act = match target {
                Some(path) => load_act(path)?.0,
                None => FiniteAct::regular_representation(m.clone()),
            };
            let family = enumerate_triples(&m, &target_act, config.cap_congruences)
                .map_err(witness_failure)?;
            let per: Vec<Value> = family
                .groups
                .iter()
                .map(|g| {
                    json!({
                        "idempotent": g.idempotent,
                        "translate_size": g.base.size(),
                        "triples": g.triples.len(),
                        "overflow": g.overflow,
                    })
                })
                .collect();
            let report = json!({
                "kind": "triples",
                "cover": family.cover,
                "total": family.total,
                "overflow": family.overflow,
                "per_idempotent": per,
                "seed": config.seed,
            });
            (None, report)
        }
    };
    let rendered = match config.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("string keys") + "\n",
        Format::Text => value_text(&report),
        Format::Dot => match &act {
            Some(act) => act_to_dot(act),
            None => return Err(fail(2, "triples emit no act, use text or json")),
        },
    };
    if let Some(base) = &config.out {
        write_output(&base.with_extension("json"), &(report.to_string() + "\n"))?;
        if let Some(act) = &act {
            let monoid_ref = match kind {
                WitnessKind::Grid { monoid_file, .. }
                | WitnessKind::Tree { monoid_file, .. }
                | WitnessKind::Counting { monoid_file, .. }
                | WitnessKind::Triples { monoid_file, .. } => monoid_file.display().to_string(),
            };
            write_output(&base.with_extension("act"), &act_to_text(act, &monoid_ref))?;
            if config.format == Format::Dot {
                write_output(&base.with_extension("dot"), &act_to_dot(act))?;
            }
        }
    }
    print!("{rendered}");
    Ok(ExitCode::SUCCESS)
}

/// One corpus row: already rendered TSV cells.
fn corpus_row(name: &str, monoid: Result<Arc<FiniteMonoid>, String>) -> (bool, String) {
    let m = match monoid {
        Ok(m) => m,
        Err(e) => {
            return (false, format!("{name}\t-\t-\t-\t0/{}\tparse: {e}", INVARIANT_NAMES.len()))
        }
    };
    let outcomes = invariant_battery(&m);
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let status = match outcomes.iter().find(|o| !o.passed) {
        None => "ok".to_string(),
        Some(bad) => format!(
            "{}: {}",
            bad.name,
            bad.detail.as_deref().unwrap_or("failed")
        ),
    };
    let core = actlab_core::regular::monoid_regular_core(&m);
    let row = format!(
        "{name}\t{}\t{}\t{}\t{passed}/{}\t{status}",
        m.order(),
        core.len(),
        m.depth(),
        outcomes.len()
    );
    (passed == outcomes.len(), row)
}

fn cmd_corpus(dir: Option<&Path>, max_order: usize, config: &RunConfig) -> CliResult<ExitCode> {
    let mut jobs: Vec<(String, Option<PathBuf>, Option<CorpusEntry>)> = Vec::new();
    if let Some(dir) = dir {
        let entries = std::fs::read_dir(dir)
            .map_err(|e| fail(2, format!("{}: {e}", dir.display())))?;
        for entry in entries {
            let entry = entry.map_err(|e| fail(2, format!("{}: {e}", dir.display())))?;
            let path = entry.path();
            if path.extension().is_some_and(|x| x == "mon") {
                let name = path
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default();
                jobs.push((name, Some(path), None));
            }
        }
    }
    for entry in generated_corpus(max_order) {
        jobs.push((entry.name.clone(), None, Some(entry)));
    }
    let mut rows: Vec<(bool, String)> = jobs
        .par_iter()
        .map(|(name, path, generated)| match (path, generated) {
            (Some(path), _) => {
                let monoid = std::fs::read_to_string(path)
                    .map_err(|e| e.to_string())
                    .and_then(|text| {
                        parse_monoid(&text).map(FiniteMonoid::into_arc).map_err(|e| e.to_string())
                    });
                corpus_row(name, monoid)
            }
            (None, Some(entry)) => corpus_row(name, Ok(entry.monoid.clone())),
            (None, None) => unreachable!("every job has a path or an entry"),
        })
        .collect();
    rows.sort_by(|a, b| a.1.cmp(&b.1));
    let mut table = format!("# seed {}\nname\torder\tcore\tdepth\tpassed\tstatus\n", config.seed);
    for (_, row) in &rows {
        table.push_str(row);
        table.push('\n');
    }
    emit(config, &table)?;
    if rows.iter().all(|(ok, _)| *ok) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_families(op: &FamiliesOp, config: &RunConfig) -> CliResult<ExitCode> {
    let FamiliesOp::Build {
        name,
        group_order,
        copies,
        modulus,
        levels,
        shifts,
        count,
        rows,
        cols,
    } = op;
    let bad_params = |e: fam::FamilyError| fail(2, format!("{name}: {e}"));
    let content = if FAMILY_NAMES.contains(&name.as_str()) {
        let window = config.window.unwrap_or(3);
        let lazy =
            lazy_family(name, window).map_err(|e| fail(2, format!("{name}: {e}")))?;
        lazy.descriptor()
    } else {
        let m = match name.as_str() {
            "trivial" => fam::fixture_trivial(),
            "right-zero-pair" => fam::fixture_right_zero_pair(),
            "chain-z2" => fam::fixture_chain_z2(),
            "band-2x2-z2" => fam::fixture_band_2x2_z2(),
            "nilsquare" => fam::fixture_nilsquare(),
            "counting-probe" => fam::fixture_counting_probe(),
            "layered-z2" => fam::fixture_layered_z2(),
            "right-zeros" => fam::right_zeros_adjoined(*count),
            "chain-of-groups" => fam::chain_of_groups(*modulus, *levels, *shifts),
            "rect-band" => fam::rect_band_monoid(
                *group_order,
                fam::cyclic_group_table(*group_order),
                *rows,
                *cols,
                &vec![0; rows * cols],
            )
            .map_err(bad_params)?,
            "layered" => {
                fam::layered_monoid(*group_order, fam::cyclic_group_table(*group_order), *copies)
                    .map_err(bad_params)?
            }
            other => {
                return Err(fail(2, format!("unknown family `{other}`")));
            }
        };
        monoid_to_text(&m)
    };
    emit(config, &content)?;
    Ok(ExitCode::SUCCESS)
}
