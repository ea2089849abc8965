//! `sbneval`: validate, convert and score SBN corpora, and run the
//! name-projection pipeline.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "sbneval", version, about = "Evaluation and silver-data tools for Simplified Box Notation")]
pub struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct VocabArgs {
    /// Replace the comparison-operator vocabulary with the labels in FILE.
    #[arg(long, value_name = "FILE")]
    pub operators: Option<PathBuf>,
    /// Replace the discourse-relation vocabulary with the labels in FILE.
    #[arg(long, value_name = "FILE")]
    pub discourse: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Md,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvertTo {
    Penman,
    Triples,
    Sbn,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GranularityArg {
    Fine,
    Coarse,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that every document in a corpus parses and is well-formed.
    Validate {
        corpus: PathBuf,
        #[command(flatten)]
        vocab: VocabArgs,
        /// Emit one JSON object per document instead of text lines.
        #[arg(long)]
        json: bool,
    },
    /// Render documents as Penman, triples or normalized SBN.
    Convert {
        corpus: PathBuf,
        #[arg(long, value_enum, default_value = "penman")]
        to: ConvertTo,
        #[arg(long, value_enum, default_value = "coarse")]
        granularity: GranularityArg,
        #[command(flatten)]
        vocab: VocabArgs,
    },
    /// Score a prediction corpus against a gold corpus.
    Score {
        pred: PathBuf,
        gold: PathBuf,
        #[arg(long, default_value_t = sbneval::smatch::DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, env = "DRG_EVAL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        vocab: VocabArgs,
    },
    /// Align, extract names and rewrite an English SBN corpus in one go.
    Pipeline {
        /// Parallel corpus TSV: id, English tokens, Chinese tokens.
        parallel: PathBuf,
        /// English SBN corpus, one document per sentence.
        sbn: PathBuf,
        /// Use a saved translation table instead of training one.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = sbneval::align::DEFAULT_ITERATIONS)]
        iterations: usize,
        /// Output SBN corpus.
        #[arg(long, short)]
        output: PathBuf,
        /// Audit TSV listing every name and what happened to it.
        #[arg(long)]
        audit: PathBuf,
        /// Also write the extracted name dictionary.
        #[arg(long)]
        dictionary: Option<PathBuf>,
        #[command(flatten)]
        replace: ReplaceArgs,
        #[command(flatten)]
        vocab: VocabArgs,
    },
    /// Train IBM Model 1 and save the translation table.
    AlignTrain {
        parallel: PathBuf,
        #[arg(long, default_value_t = sbneval::align::DEFAULT_ITERATIONS)]
        iterations: usize,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Align sentences with a saved table and extract the name dictionary.
    Align {
        parallel: PathBuf,
        sbn: PathBuf,
        #[arg(long)]
        table: PathBuf,
        /// Target-token separator for multi-token names.
        #[arg(long, default_value = "")]
        separator: String,
        /// Also write word links as TSV.
        #[arg(long)]
        links: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        vocab: VocabArgs,
    },
    /// Replace Name literals using a name dictionary.
    ReplaceNe {
        sbn: PathBuf,
        #[arg(long)]
        dictionary: PathBuf,
        #[arg(long, short)]
        output: PathBuf,
        #[arg(long)]
        audit: Option<PathBuf>,
        #[command(flatten)]
        replace: ReplaceArgs,
        #[command(flatten)]
        vocab: VocabArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ReplaceArgs {
    /// Manual corrections TSV: id, source literal, target literal.
    #[arg(long, value_name = "FILE")]
    pub patch: Option<PathBuf>,
    /// Leave nationality names (country.n.02 reached by Source) untouched.
    #[arg(long, num_args = 0..=1, default_value_t = true, default_missing_value = "true", action = clap::ArgAction::Set)]
    pub skip_nationality: bool,
    /// Target-token separator for multi-token names.
    #[arg(long, default_value = "")]
    pub separator: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e.error);
            ExitCode::from(e.code)
        }
    }
}
