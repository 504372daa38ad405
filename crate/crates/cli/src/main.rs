mod commands;
mod corpus;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use essaylens::ErrorClass;

#[derive(Debug, Parser)]
#[command(name = "essaylens", version, about = "Build, profile and classify corpora of human and machine essays")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Clean essay text (whitespace, apostrophes, paragraph breaks, disclaimers).
    Normalize(NormalizeArgs),
    /// Generate essays from a chat-completion endpoint.
    Generate(GenerateArgs),
    /// Drop short, repetitive and overlapping machine essays.
    Filter(FilterArgs),
    /// Assign train/dev/test splits.
    Split(SplitArgs),
    /// Part-of-speech tag a corpus into one tagged file per document.
    Tag(TagArgs),
    /// Lexical, syntactic and descriptive measures per group as tidy CSV.
    Profile(ProfileArgs),
    /// Rank n-grams by log-likelihood keyness.
    Keyness(KeynessArgs),
    /// Fit a feature schema on the training split and write feature vectors.
    Featurize(FeaturizeArgs),
    /// Train a margin classifier (grid search on dev unless C is given).
    Train(TrainArgs),
    /// Write per-unit predictions.
    Predict(PredictArgs),
    /// Score a model on labeled units.
    Evaluate(EvaluateArgs),
    /// Ask a chat model whether each essay is human or machine written.
    LlmDetect(LlmDetectArgs),
    /// Serve a local stand-in completion endpoint until interrupted.
    MockEndpoint(MockArgs),
}

#[derive(Debug, Args)]
struct NormalizeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Keep leading AI disclaimers in machine essays.
    #[arg(long)]
    keep_disclaimer: bool,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// Job file (TOML, or JSON with a .json extension).
    #[arg(long)]
    config: PathBuf,
    /// Output JSONL; existing essays in it are kept and their slots skipped.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    endpoint: Option<String>,
    #[arg(long)]
    model: Option<String>,
}

#[derive(Debug, Args)]
struct FilterArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Per-document verdicts as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Filter settings as JSON.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    min_words: Option<usize>,
    /// max, min or jaccard.
    #[arg(long)]
    similarity: Option<String>,
}

#[derive(Debug, Args)]
struct SplitArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Split settings as JSON.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Override held-out sizes, e.g. `GRE=100:100` (dev:test). Repeatable.
    #[arg(long = "sizes")]
    sizes: Vec<String>,
    /// Draw held-out human essays without level stratification.
    #[arg(long)]
    no_stratify: bool,
    /// Allow every model into dev and test.
    #[arg(long)]
    no_exclude: bool,
}

#[derive(Debug, Args)]
struct TagArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, default_value = "baseline")]
    tagger: String,
    /// Extra `word<TAB>tag` lexicon for the baseline tagger.
    #[arg(long)]
    lexicon: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Bracketed parse trees with `%%doc <id>` section headers.
    #[arg(long)]
    trees: Option<PathBuf>,
    /// Word frequency rank list, one word per line.
    #[arg(long)]
    freq: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// author, model, source, level or source-author.
    #[arg(long, default_value = "author")]
    group_by: String,
}

#[derive(Debug, Args)]
struct KeynessArgs {
    /// Corpus compared by author: MACHINE essays are corpus A, HUMAN are B.
    #[arg(long = "in", conflicts_with_all = ["a", "b"])]
    input: Option<PathBuf>,
    #[arg(long, requires = "b")]
    a: Option<PathBuf>,
    #[arg(long, requires = "a")]
    b: Option<PathBuf>,
    #[arg(short, long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 50)]
    top: usize,
    #[arg(long, default_value_t = 5)]
    min_count: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct UnitArgs {
    /// doc, para or sent.
    #[arg(long, default_value = "doc")]
    granularity: String,
    #[arg(long)]
    trees: Option<PathBuf>,
    #[arg(long, default_value = "baseline")]
    tagger: String,
}

#[derive(Debug, Args)]
struct FeaturizeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// cfgr, function-words, top-k-words, pos-unigrams, punctuation or word-unigrams.
    #[arg(long)]
    family: Option<String>,
    #[command(flatten)]
    units: UnitArgs,
    /// Reuse a fitted schema instead of fitting one.
    #[arg(long, conflicts_with = "family")]
    schema: Option<PathBuf>,
    /// Where to write the fitted schema.
    #[arg(long)]
    schema_out: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 10)]
    top_k: usize,
    #[arg(long, default_value_t = 10)]
    cfgr_threshold: usize,
    #[arg(long, default_value_t = 3)]
    unigram_min_count: usize,
    #[arg(long)]
    function_words: Option<PathBuf>,
    #[arg(long)]
    rank_list: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[arg(long)]
    features: PathBuf,
    #[arg(long)]
    schema: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// linear or rbf; with --c trains one configuration.
    #[arg(long)]
    kernel: Option<String>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// zscore or minmax.
    #[arg(long, default_value = "zscore")]
    scaling: String,
    /// Grid search log as CSV.
    #[arg(long)]
    grid_log: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ModelInput {
    #[arg(long)]
    model: PathBuf,
    /// Corpus JSONL, featurized with the model's schema.
    #[arg(long = "in", conflicts_with = "features", required_unless_present = "features")]
    input: Option<PathBuf>,
    /// Feature vectors written by `featurize`.
    #[arg(long)]
    features: Option<PathBuf>,
    #[command(flatten)]
    units: UnitArgs,
    /// Only use units from this split (train, dev or test).
    #[arg(long)]
    split: Option<String>,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[command(flatten)]
    input: ModelInput,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[command(flatten)]
    input: ModelInput,
    /// JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV report.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct LlmDetectArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Corpus supplying (human, machine) exemplar pairs, sorted by id.
    #[arg(long)]
    exemplars: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    shots: usize,
    #[arg(long)]
    endpoint: String,
    #[arg(long)]
    model: String,
    #[arg(long)]
    split: Option<String>,
    #[arg(long, default_value_t = 3)]
    max_retries: usize,
    #[arg(long, default_value_t = 120)]
    timeout_secs: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct MockArgs {
    #[arg(long, default_value = "127.0.0.1:8089")]
    addr: String,
    /// varied, fixed, status or flaky.
    #[arg(long, default_value = "varied")]
    mode: String,
    /// Completion text for `fixed`.
    #[arg(long, default_value = "This is a fixed completion.")]
    text: String,
    /// HTTP status for `status`.
    #[arg(long, default_value_t = 503)]
    status: u16,
    /// Failing requests before recovery for `flaky`.
    #[arg(long, default_value_t = 3)]
    failures: usize,
}

/// Failure surfaced to the user, with its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(essaylens::Error),
}

impl From<essaylens::Error> for CliError {
    fn from(e: essaylens::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) => match e.class() {
                ErrorClass::Usage => 1,
                ErrorClass::Data => 2,
                ErrorClass::Endpoint => 3,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            log::warn!("could not size the worker pool: {e}");
        }
    }
    match commands::run(cli.command, cli.seed, cli.jobs) {
        Ok(summary) => {
            if !summary.is_null() {
                println!("{summary}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
