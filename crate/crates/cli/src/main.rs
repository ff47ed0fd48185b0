use std::path::PathBuf;
use std::process::ExitCode;
use std::thread;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use readcorpus::executor::{BackendKind, WorkerOptions};
use readcorpus::report::ReportFormat;
use readcorpus::stopwords::DEFAULT_TOP_K;
use readcorpus::{load_stoplist, Backend, LanguageProfile, StopWordList};

mod analyze;
mod bench;
mod convert;

/// Readability analysis over text corpora.
#[derive(Parser)]
#[command(name = "readcorpus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score every document in a corpus and write a report.
    Analyze(AnalyzeArgs),
    /// Induce a stop-word list from corpus term frequencies.
    Stopwords(StopwordsArgs),
    /// Turn source documents into text files with an external converter.
    Convert(ConvertArgs),
    /// Time backends against each other on growing corpus prefixes.
    Bench(BenchArgs),
    /// Serve analysis tasks for the distributed backend.
    Worker(WorkerArgs),
}

#[derive(Args)]
struct CorpusArgs {
    /// Directory holding the documents.
    #[arg(long)]
    corpus: PathBuf,
    /// File-name pattern; a pattern containing `/` matches relative paths.
    #[arg(long, default_value = "*.txt")]
    glob: String,
    /// Descend into subdirectories.
    #[arg(long)]
    recursive: bool,
}

#[derive(Args)]
struct LangArgs {
    #[arg(long, default_value = "tr")]
    lang: String,
    /// Directory searched for `<lang>.profile` before the built-in profiles.
    #[arg(long, env = "READCORPUS_PROFILE_DIR")]
    profile_dir: Option<PathBuf>,
}

impl LangArgs {
    fn profile(&self) -> anyhow::Result<LanguageProfile> {
        LanguageProfile::resolve(&self.lang, self.profile_dir.as_deref())
            .with_context(|| format!("loading language profile `{}`", self.lang))
    }
}

#[derive(Args)]
struct BackendArgs {
    /// seq, par or dist.
    #[arg(long, default_value = "par")]
    backend: BackendKind,
    /// Threads for the parallel backend; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Worker endpoints (host:port) for the distributed backend.
    #[arg(long, value_delimiter = ',')]
    workers: Vec<String>,
}

impl BackendArgs {
    fn backend(&self) -> Backend {
        backend_for(self.backend, self.jobs, &self.workers)
    }
}

fn backend_for(kind: BackendKind, jobs: Option<usize>, workers: &[String]) -> Backend {
    match kind {
        BackendKind::Seq => Backend::Sequential,
        BackendKind::Par => Backend::Parallel {
            workers: jobs.unwrap_or_else(default_jobs),
        },
        BackendKind::Dist => Backend::Distributed {
            endpoints: workers.to_vec(),
        },
    }
}

fn default_jobs() -> usize {
    thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    lang: LangArgs,
    #[command(flatten)]
    backend: BackendArgs,
    /// Comma-separated formula names. Defaults depend on --lang.
    #[arg(long)]
    formulas: Option<String>,
    /// A stop-word file, `builtin`, or `none`.
    #[arg(long, default_value = "builtin")]
    stopwords: String,
    /// Easy-word list for dale_chall.
    #[arg(long)]
    easy_words: Option<PathBuf>,
    /// Words with at least this many syllables count as hard.
    #[arg(long, default_value_t = readcorpus::features::DEFAULT_HARD_WORD_THRESHOLD)]
    hard_word_threshold: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: ReportFormat,
    /// Leave wall time out of the report so reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct StopwordsArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    lang: LangArgs,
    #[command(flatten)]
    backend: BackendArgs,
    /// Number of most frequent words to keep.
    #[arg(long, default_value_t = DEFAULT_TOP_K)]
    top: usize,
    /// Write the list here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    /// Directory holding the source documents.
    #[arg(long)]
    input: PathBuf,
    /// Converter command; `{input}` is replaced by each source path.
    #[arg(long)]
    command: String,
    /// Directory for the converted `.txt` files.
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value = "*")]
    glob: String,
    #[arg(long)]
    recursive: bool,
    /// Conversions run at once; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    /// Corpus to time. Mutually exclusive with --synthetic.
    #[arg(long, required_unless_present = "synthetic", conflicts_with = "synthetic")]
    corpus: Option<PathBuf>,
    #[arg(long, default_value = "*.txt")]
    glob: String,
    #[arg(long)]
    recursive: bool,
    /// Generate this many Turkish-like documents instead of reading a corpus.
    #[arg(long)]
    synthetic: Option<usize>,
    /// Size of each generated document in KiB.
    #[arg(long, default_value_t = 100)]
    synthetic_kib: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    lang: LangArgs,
    /// Comma-separated backends; the first is the reference.
    #[arg(long, value_delimiter = ',', default_value = "seq,par")]
    backends: Vec<BackendKind>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    workers: Vec<String>,
    /// Runs per backend and prefix; the median is reported.
    #[arg(long, default_value_t = 3)]
    repeat: usize,
    /// Write the timing rows here as well as to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct WorkerArgs {
    #[arg(long, default_value = "127.0.0.1:7878")]
    bind: String,
    #[arg(long, env = "READCORPUS_PROFILE_DIR")]
    profile_dir: Option<PathBuf>,
    /// Crash after this many tasks (for fault-tolerance testing).
    #[arg(long, hide = true)]
    fail_after: Option<usize>,
}

fn stoplist(spec: &str, profile: &LanguageProfile) -> anyhow::Result<StopWordList> {
    Ok(match spec {
        "builtin" => StopWordList::builtin(profile),
        "none" => StopWordList::empty(),
        path => load_stoplist(path.as_ref(), profile.case_folding)?,
    })
}

fn write_output(path: Option<&std::path::Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn worker(args: WorkerArgs) -> anyhow::Result<u8> {
    let opts = WorkerOptions {
        profile_dir: args.profile_dir,
        fail_after_tasks: args.fail_after,
    };
    let w = readcorpus::executor::Worker::bind(args.bind.as_str(), opts)?;
    eprintln!("worker listening on {}", w.local_addr());
    w.serve()?;
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(a) => analyze::analyze(a),
        Command::Stopwords(a) => analyze::stopwords(a),
        Command::Convert(a) => convert::convert(a),
        Command::Bench(a) => bench::bench(a),
        Command::Worker(a) => worker(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
