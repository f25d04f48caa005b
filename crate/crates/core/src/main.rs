use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use subshift::error::Error;
use subshift::freegroup::determinant;
use subshift::fundamental::{abelianization_matrix, connecting_map, rank_profile, SpanningTreeBasis};
use subshift::io::{self, ReturnRow, RunConfig};
use subshift::lang::{check_primitive, FactorLanguage, Source};
use subshift::rauzy::RauzyGraph;
use subshift::returns::{default_window, is_code, return_set_at};
use subshift::tree::{extension_graph, scan_tree_condition};
use subshift::verify::{verify_preset, VerifyConfig};
use subshift::{presets, Word};

#[derive(Parser)]
#[command(name = "subshift", version, about = "Finite-level tools for minimal subshifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the factor language up to the horizon.
    Lang(LangArgs),
    /// Build the Rauzy graph of a given order.
    Rauzy(RauzyArgs),
    /// Return sets R_n at the default windows.
    Returns(ReturnsArgs),
    /// Scan extension graphs for the tree condition.
    Tree(TreeArgs),
    /// Spanning-tree bases, connecting maps and rank profiles.
    Fg(FgArgs),
    /// Run the verification checks on a preset.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Substitution or periodic source as a JSON file.
    #[arg(long, value_name = "FILE")]
    sub: Option<PathBuf>,
    /// Periodic word.
    #[arg(long, value_name = "WORD")]
    periodic: Option<String>,
    /// Built-in preset.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
}

#[derive(Args, Clone)]
struct Common {
    #[command(flatten)]
    source: SourceArgs,
    /// Longest factor length to generate; defaults to what the command needs.
    #[arg(long)]
    horizon: Option<usize>,
    /// Write artifacts into this directory instead of stdout.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 2013)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Csv,
    Json,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Dot => "dot",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Args)]
struct LangArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct RauzyArgs {
    #[command(flatten)]
    common: Common,
    /// Graph order (vertices are factors of this length).
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "dot")]
    format: Format,
    /// Shorthand for `--format dot`.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct ReturnsArgs {
    #[command(flatten)]
    common: Common,
    /// Single window half-length.
    #[arg(long, conflicts_with = "n_range")]
    n: Option<usize>,
    /// Range of window half-lengths, `A..B` inclusive.
    #[arg(long, value_parser = parse_range)]
    n_range: Option<(usize, usize)>,
    #[arg(long, default_value_t = 100_000)]
    scan_budget: usize,
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct TreeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 10)]
    max_center: usize,
    #[arg(long, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct FgArgs {
    #[command(flatten)]
    common: Common,
    /// Single level (graph of order 2n).
    #[arg(long, conflicts_with = "n_range")]
    n: Option<usize>,
    /// Range of levels, `A..B` inclusive.
    #[arg(long, value_parser = parse_range)]
    n_range: Option<(usize, usize)>,
    #[arg(long, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    preset: String,
    #[arg(long, default_value_t = 40)]
    horizon: usize,
    #[arg(long, default_value_t = 100_000)]
    scan_budget: usize,
    #[arg(long, default_value_t = 2013)]
    seed: u64,
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got '{text}'"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|e| format!("{e}"))?;
    if a == 0 || a > b {
        return Err(format!("range '{text}' must satisfy 1 <= A <= B"));
    }
    Ok((a, b))
}

enum Failure {
    Validation(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_)
            | Error::NonPrimitive
            | Error::NoSeedLetter(_)
            | Error::NotAFactor(_)
            | Error::EmptySplit
            | Error::OrderMismatch { .. }
            | Error::BaseMismatch { .. } => Failure::Validation(e.to_string()),
            _ => Failure::Computation(e.to_string()),
        }
    }
}

type CmdResult = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Lang(a) => cmd_lang(a),
        Command::Rauzy(a) => cmd_rauzy(a),
        Command::Returns(a) => cmd_returns(a),
        Command::Tree(a) => cmd_tree(a),
        Command::Fg(a) => cmd_fg(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load(source: &SourceArgs) -> Result<Source, Failure> {
    let loaded = if let Some(path) = &source.sub {
        io::load_source(path)?
    } else if let Some(word) = &source.periodic {
        Source::periodic(word)?
    } else {
        presets::preset(source.preset.as_deref().unwrap_or_default())?
    };
    if let Source::Substitution(sub) = &loaded {
        if !check_primitive(sub).primitive {
            return Err(Error::NonPrimitive.into());
        }
    }
    Ok(loaded)
}

/// Resolves the horizon against what the command needs.
fn horizon(common: &Common, required: usize, default: usize, what: &str) -> Result<usize, Failure> {
    match common.horizon {
        None => Ok(default.max(required).max(1)),
        Some(h) if h >= required => Ok(h),
        Some(h) => Err(Failure::Validation(format!(
            "horizon {h} is too small: {what} needs factors of length {required}"
        ))),
    }
}

struct Run {
    lang: FactorLanguage,
    digest: String,
}

fn prepare(
    command: &str,
    common: &Common,
    required: usize,
    default: usize,
    what: &str,
    tweak: impl FnOnce(&mut RunConfig),
) -> Result<Run, Failure> {
    let source = load(&common.source)?;
    let h = horizon(common, required, default, what)?;
    let mut config = RunConfig {
        command: command.into(),
        source: io::source_to_json(&source),
        horizon: h,
        n: None,
        n_range: None,
        scan_budget: 0,
        max_center: None,
        seed: common.seed,
        format: String::new(),
    };
    tweak(&mut config);
    let lang = FactorLanguage::build(&source, h)?;
    let digest = config.digest();
    Ok(Run { lang, digest })
}

/// Writes `text` to `DIR/name` or prints it.
fn emit(out: Option<&Path>, name: &str, text: &str) -> Result<(), Failure> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| Failure::Validation(format!("cannot create {}: {e}", dir.display())))?;
            let path = dir.join(name);
            std::fs::write(&path, text)
                .map_err(|e| Failure::Computation(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
    }
}

fn cmd_lang(a: LangArgs) -> CmdResult {
    let run = prepare("lang", &a.common, 1, 10, "the language dump", |c| {
        c.format = a.format.name().into();
    })?;
    let lang = &run.lang;
    let text = match a.format {
        Format::Json => {
            let levels: Vec<_> = (1..=lang.horizon())
                .map(|k| {
                    let words: Vec<String> = lang.level(k).unwrap().iter().map(|w| lang.render(w)).collect();
                    json!({ "length": k, "complexity": words.len(), "words": words })
                })
                .collect();
            io::json_with_digest(json!({ "horizon": lang.horizon(), "levels": levels }), &run.digest)
        }
        _ => io::language_csv(lang, &run.digest),
    };
    emit(a.common.out.as_deref(), &format!("language.{}", ext(a.format)), &text)?;
    Ok(true)
}

fn ext(format: Format) -> &'static str {
    match format {
        Format::Dot => "dot",
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn cmd_rauzy(a: RauzyArgs) -> CmdResult {
    let format = if a.dot { Format::Dot } else { a.format };
    let run = prepare("rauzy", &a.common, a.n + 1, 0, "a Rauzy graph of this order", |c| {
        c.n = Some(a.n);
        c.format = format.name().into();
    })?;
    let g = RauzyGraph::build(&run.lang, a.n)?;
    let text = match format {
        Format::Dot => format!("{}{}", io::comment_header("//", &run.digest), g.to_dot()),
        Format::Csv => format!("{}{}", io::comment_header("#", &run.digest), g.to_csv()),
        Format::Json => {
            let edges: Vec<_> = g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    json!({
                        "edge": g.render(e),
                        "source": g.render(&g.vertices()[g.source(i)]),
                        "target": g.render(&g.vertices()[g.target(i)]),
                        "central_label": g.central_label(e).ok().map(|l| g.render(&[l])),
                    })
                })
                .collect();
            io::json_with_digest(
                json!({
                    "order": g.order(),
                    "vertices": g.vertices().iter().map(|v| g.render(v)).collect::<Vec<_>>(),
                    "edges": edges,
                    "strongly_connected": g.is_strongly_connected(),
                    "cycle_rank": g.cycle_rank(),
                }),
                &run.digest,
            )
        }
    };
    emit(a.common.out.as_deref(), &format!("rauzy_{}.{}", a.n, ext(format)), &text)?;
    Ok(true)
}

fn levels(n: Option<usize>, range: Option<(usize, usize)>, default: (usize, usize)) -> Result<(usize, usize), Failure> {
    match (n, range) {
        (Some(0), _) => Err(Failure::Validation("--n must be positive".into())),
        (Some(n), _) => Ok((n, n)),
        (None, Some(r)) => Ok(r),
        (None, None) => Ok(default),
    }
}

fn cmd_returns(a: ReturnsArgs) -> CmdResult {
    let (lo, hi) = levels(a.n, a.n_range, (1, 4))?;
    let run = prepare("returns", &a.common, 2 * hi, 0, "the largest window", |c| {
        c.n_range = Some((lo, hi));
        c.scan_budget = a.scan_budget;
        c.format = a.format.name().into();
    })?;
    let lang = &run.lang;
    let mut rows = Vec::new();
    for n in lo..=hi {
        let window = default_window(lang, n)?;
        let set = return_set_at(lang, &window, a.scan_budget)?;
        let code = is_code(&set.words).is_code;
        rows.push(ReturnRow::new(lang, n, &window, &set.words, code));
    }
    let text = match a.format {
        Format::Json => io::returns_json(&rows, &run.digest),
        _ => io::returns_csv(&rows, &run.digest),
    };
    emit(a.common.out.as_deref(), &format!("returns.{}", ext(a.format)), &text)?;
    Ok(true)
}

fn cmd_tree(a: TreeArgs) -> CmdResult {
    let run = prepare("tree", &a.common, a.max_center + 2, 0, "the extension graphs", |c| {
        c.max_center = Some(a.max_center);
        c.format = a.format.name().into();
    })?;
    let report = scan_tree_condition(&run.lang, a.max_center)?;
    let text = match a.format {
        Format::Dot => {
            let center = report.witness.clone().unwrap_or_else(Word::empty);
            let g = extension_graph(&run.lang, &center)?;
            format!("{}{}", io::comment_header("//", &run.digest), g.to_dot(&run.lang))
        }
        _ => io::json_with_digest(serde_json::to_value(&report).expect("report serializes"), &run.digest),
    };
    emit(a.common.out.as_deref(), &format!("tree.{}", ext(a.format)), &text)?;
    Ok(true)
}

fn cmd_fg(a: FgArgs) -> CmdResult {
    let (lo, hi) = levels(a.n, a.n_range, (1, 3))?;
    let run = prepare("fg", &a.common, 2 * hi + 1, 0, "the top level graph", |c| {
        c.n_range = Some((lo, hi));
        c.format = a.format.name().into();
    })?;
    let lang = &run.lang;
    let top = default_window(lang, hi)?;
    let mut bases = Vec::new();
    for n in lo..=hi {
        let g = RauzyGraph::build(lang, 2 * n)?;
        let strip = hi - n;
        let window = Word::from(&top[strip..top.len() - strip]);
        bases.push((n, SpanningTreeBasis::new(&g, &window)?));
    }
    let profile = rank_profile(lang, lo..=hi)?;
    let mut maps = Vec::new();
    let mut matrices = Vec::new();
    for pair in bases.windows(2) {
        let ((n, lower), (m, upper)) = (&pair[0], &pair[1]);
        let map = connecting_map(upper, lower)?;
        let matrix = abelianization_matrix(&map);
        let det = (matrix.len() == map.images.len()).then(|| determinant(&matrix).abs());
        matrices.push((*m, *n, matrix.clone()));
        maps.push(json!({ "m": m, "n": n, "map": map.to_json(), "abelianization": matrix, "abs_det": det }));
    }
    let levels: Vec<_> = bases
        .iter()
        .map(|(n, stb)| {
            let g = stb.graph();
            json!({
                "n": n,
                "base": lang.render(stb.base_word()),
                "rank": stb.rank(),
                "tree": stb.tree_edges().iter().map(|&e| g.render(&g.edges()[e])).collect::<Vec<_>>(),
                "generators": stb.generator_names(),
            })
        })
        .collect();
    let out = a.common.out.as_deref();
    match a.format {
        Format::Csv => {
            emit(out, "rank.csv", &io::rank_csv(&profile, &run.digest))?;
            if out.is_some() {
                for (m, n, matrix) in &matrices {
                    emit(out, &format!("abelianization_{m}_{n}.csv"), &io::matrix_csv(matrix, &run.digest))?;
                }
            }
        }
        _ => {
            let text = io::json_with_digest(
                json!({ "levels": levels, "rank_profile": profile, "connecting_maps": maps }),
                &run.digest,
            );
            emit(out, "fg.json", &text)?;
        }
    }
    Ok(true)
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    if !presets::NAMES.contains(&a.preset.as_str()) {
        return Err(Failure::Validation(format!(
            "unknown preset '{}' (expected one of {})",
            a.preset,
            presets::NAMES.join(", ")
        )));
    }
    let config = VerifyConfig {
        horizon: a.horizon,
        scan_budget: a.scan_budget,
        seed: a.seed,
        ..VerifyConfig::default()
    };
    let report = verify_preset(&a.preset, &config)?;
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    emit(a.out.as_deref(), &format!("verify_{}.json", a.preset), &text)?;
    for c in &report.criteria {
        eprintln!("{} criterion {:>2}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name);
    }
    Ok(report.passed)
}
