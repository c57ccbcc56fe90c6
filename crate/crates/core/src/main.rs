use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use edx::analytics::{dominance, flag_review_candidates, overview, sparsity, AnalyticsConfig, ReviewCategory, TextReport};
use edx::annotator::{annotate_with, evaluate, train_lexicon, LexiconModel, Thresholds};
use edx::index::Snapshot;
use edx::ingest::{self, Format};
use edx::service::{self, payload, ServiceConfig};
use edx::Error;

#[derive(Parser)]
#[command(name = "edx", version, about = "Event-detection corpus explorer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a corpus file and write an indexed snapshot
    Ingest {
        #[arg(long)]
        format: Format,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Corpus name (defaults to the input file stem)
        #[arg(long)]
        name: Option<String>,
    },
    /// Write a snapshot's corpus back out in the unified JSONL format
    Export {
        #[arg(long)]
        snapshot: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Dataset-quality reports
    Stats {
        report: Report,
        #[command(flatten)]
        opts: StatsOpts,
    },
    /// List annotations worth a second look
    Audit {
        #[arg(long)]
        snapshot: PathBuf,
        #[arg(long)]
        category: Option<ReviewCategory>,
        #[arg(long)]
        json: bool,
    },
    /// Build a lexicon annotator from a snapshot
    Train {
        #[arg(long)]
        snapshot: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        tau_neg: f64,
        #[arg(long, default_value_t = 0.5)]
        tau_event: f64,
    },
    /// Tag event triggers in raw text
    Annotate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        text: Option<String>,
        /// Text file to annotate, `-` for stdin
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Score a model against the gold mentions of a snapshot
    Evaluate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        snapshot: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the HTTP API
    Serve {
        #[arg(long, env = "EDX_CONFIG")]
        config: PathBuf,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Report {
    Overview,
    Sparsity,
    Dominance,
}

#[derive(Args)]
struct StatsOpts {
    #[arg(long)]
    snapshot: PathBuf,
    /// Minimum instances for a trigger to join the cohort
    #[arg(long, default_value_t = 20)]
    k: usize,
    /// Dominance ratio threshold
    #[arg(long, default_value_t = 5.0)]
    ratio: f64,
    #[arg(long)]
    json: bool,
}

fn emit<T: serde::Serialize + TextReport + ?Sized>(report: &T, json: bool) -> edx::Result<()> {
    if json {
        println!("{}", payload::to_json(report)?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}

fn run(command: Command) -> edx::Result<()> {
    match command {
        Command::Ingest {
            format,
            input,
            out,
            name,
        } => {
            let (mut corpus, stats) = ingest::ingest(&input, format)?;
            if let Some(name) = name {
                corpus.name = name;
            }
            let snapshot = Snapshot::build(corpus)?;
            snapshot.save(&out)?;
            println!(
                "{}: {} documents, {} sentences, {} event types, {} mentions, {} negatives, {} skipped -> {}",
                snapshot.name(),
                stats.documents,
                stats.sentences,
                stats.event_types,
                stats.event_mentions,
                stats.negative_mentions,
                stats.skipped_records,
                out.display()
            );
            for s in &stats.skipped {
                eprintln!("skipped line {}: {}", s.line, s.reason);
            }
        }
        Command::Export { snapshot, out } => {
            let snapshot = Snapshot::load(&snapshot)?;
            let n = ingest::export_unified(&snapshot.corpus, &out)?;
            println!("{n} documents -> {}", out.display());
        }
        Command::Stats { report, opts } => {
            let snapshot = Snapshot::load(&opts.snapshot)?;
            let config = AnalyticsConfig {
                min_instances: opts.k,
                dominance_ratio: opts.ratio,
                ..AnalyticsConfig::default()
            };
            config.validate()?;
            match report {
                Report::Overview => emit(&overview(&snapshot.index, &snapshot.corpus), opts.json)?,
                Report::Sparsity => emit(&sparsity(&snapshot.index, &config), opts.json)?,
                Report::Dominance => emit(&dominance(&snapshot.index, &config), opts.json)?,
            }
        }
        Command::Audit {
            snapshot,
            category,
            json,
        } => {
            let snapshot = Snapshot::load(&snapshot)?;
            let mut found = flag_review_candidates(&snapshot.index, &snapshot.corpus, &AnalyticsConfig::default());
            if let Some(cat) = category {
                found.retain(|c| c.category == cat);
            }
            emit(found.as_slice(), json)?;
        }
        Command::Train {
            snapshot,
            out,
            tau_neg,
            tau_event,
        } => {
            let snapshot = Snapshot::load(&snapshot)?;
            let model = train_lexicon(&snapshot.index, Thresholds { tau_neg, tau_event })?;
            model.save(&out)?;
            println!("{} lexicon entries from {} -> {}", model.entries.len(), model.source_corpus, out.display());
        }
        Command::Annotate {
            model,
            text,
            input,
            json,
        } => {
            let model = LexiconModel::load(&model)?;
            let text = match (text, input) {
                (Some(t), _) => t,
                (None, Some(p)) if p.as_os_str() == "-" => {
                    let mut buf = String::new();
                    io::stdin().read_to_string(&mut buf).map_err(|e| Error::io("<stdin>", e))?;
                    buf
                }
                (None, Some(p)) => fs::read_to_string(&p).map_err(|e| Error::io(&p, e))?,
                (None, None) => unreachable!("clap requires --text or --input"),
            };
            if json {
                let resp = payload::annotate_payload(&model.source_corpus, &model, &text, model.thresholds)?;
                println!("{}", payload::to_json(&resp)?);
            } else {
                for sentence in annotate_with(&model, &text, &model.thresholds).sentences {
                    for s in &sentence.spans {
                        println!("{}\t{}\t{:.3}", s.surface, s.event, s.confidence);
                    }
                }
            }
        }
        Command::Evaluate { model, snapshot, json } => {
            let model = LexiconModel::load(&model)?;
            let snapshot = Snapshot::load(&snapshot)?;
            let report = evaluate(&model, &snapshot.corpus)?;
            if json {
                println!("{}", payload::to_json(&report)?);
            } else {
                println!("{:<32} {:>8} {:>8} {:>8}", "event", "P", "R", "F1");
                for (event, s) in report.per_event.iter().chain([(&"(micro)".to_owned(), &report.micro)]) {
                    println!("{event:<32} {:>8.4} {:>8.4} {:>8.4}", s.precision, s.recall, s.f1);
                }
            }
        }
        Command::Serve { config } => {
            let config = ServiceConfig::load(&config)?;
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Error::io("tokio runtime", e))?;
            runtime.block_on(service::serve(config))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::from_default_env())
        .with_writer(io::stderr)
        .init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("edx: {e}");
            match e {
                Error::Io { ref source, .. } if source.kind() == io::ErrorKind::NotFound => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
