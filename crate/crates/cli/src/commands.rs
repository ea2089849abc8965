use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;
use std::process::ExitCode;

use anyhow::anyhow;
use sbneval::align::{
    apply_patches, audit_tsv, dictionary_tsv, extract_ne_pairs, located_names, parse_dictionary, parse_parallel,
    parse_patches, replace_names, run_pipeline, train_ibm1, AuditRow, NeEntry, ParallelSentence, PipelineOptions,
    ReplacementStatus, TranslationTable,
};
use sbneval::metrics::{corpus_report, ReportConfig};
use sbneval::penman::{extract_triples, render_penman, triples_tsv, Granularity};
use sbneval::sbn::{check_document, parse_document, read_corpus, serialize_sbn, write_corpus, Document};
use sbneval::Vocabulary;

use crate::{Command, ConvertTo, Format, GranularityArg, ReplaceArgs, VocabArgs};

pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

/// Bad input data or a failed precondition.
fn failed(e: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 1, error: e.into() }
}

/// IO or usage problem.
fn io_error(e: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, error: e.into() }
}

type Outcome = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_error(anyhow!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_error(anyhow!("{}: {e}", path.display())))
}

fn corpus(path: &Path) -> Result<Vec<Document>, Failure> {
    read_corpus(path).map_err(|e| io_error(anyhow!("{}: {e}", path.display())))
}

fn vocabulary(args: &VocabArgs) -> Result<Vocabulary, Failure> {
    let mut v = Vocabulary::default();
    if let Some(p) = &args.operators {
        v = v.with_operators(Vocabulary::parse_label_list(&read(p)?));
    }
    if let Some(p) = &args.discourse {
        v = v.with_discourse(Vocabulary::parse_label_list(&read(p)?));
    }
    Ok(v)
}

fn parallel(path: &Path) -> Result<Vec<ParallelSentence>, Failure> {
    parse_parallel(&read(path)?).map_err(|e| failed(anyhow!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => write(p, text),
        None => stdout(text),
    }
}

fn stdout(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(io_error(e)),
        _ => Ok(()),
    }
}

pub fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { corpus: path, vocab, json } => validate(&path, &vocabulary(&vocab)?, json),
        Command::Convert { corpus: path, to, granularity, vocab } => {
            convert(&path, to, granularity, &vocabulary(&vocab)?)
        }
        Command::Score { pred, gold, restarts, seed, format, output, vocab } => {
            let cfg = ReportConfig { restarts, seed, vocab: vocabulary(&vocab)? };
            score(&pred, &gold, &cfg, format, output.as_deref())
        }
        Command::Pipeline { parallel: par, sbn, table, iterations, output, audit, dictionary, replace, vocab } => {
            let sentences = parallel(&par)?;
            let docs = corpus(&sbn)?;
            let table = match table {
                Some(p) => TranslationTable::from_tsv(&read(&p)?).map_err(failed)?,
                None => train_ibm1(&sentences, iterations).map_err(failed)?,
            };
            let opts = pipeline_options(&replace, vocabulary(&vocab)?)?;
            let out = run_pipeline(&sentences, &docs, &table, &opts).map_err(failed)?;
            write(&output, &out.sbn_corpus())?;
            write(&audit, &out.audit_tsv())?;
            if let Some(p) = dictionary {
                write(&p, &dictionary_tsv(&out.dictionary))?;
            }
            eprintln!(
                "{} documents, {} names: {} replaced, {} patched, {} flagged, {} nationality skipped, {} unmatched",
                out.documents.len(),
                out.audit.len(),
                out.count(ReplacementStatus::Replaced),
                out.count(ReplacementStatus::Patched),
                out.count(ReplacementStatus::Flagged),
                out.count(ReplacementStatus::NationalitySkipped),
                out.count(ReplacementStatus::Unmatched),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::AlignTrain { parallel: par, iterations, output } => {
            let table = train_ibm1(&parallel(&par)?, iterations).map_err(failed)?;
            write(&output, &table.to_tsv())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Align { parallel: par, sbn, table, separator, links, output, vocab } => {
            align(&par, &sbn, &table, &separator, links.as_deref(), output.as_deref(), &vocabulary(&vocab)?)
        }
        Command::ReplaceNe { sbn, dictionary, output, audit, replace, vocab } => {
            replace_ne(&sbn, &dictionary, &output, audit.as_deref(), &replace, vocabulary(&vocab)?)
        }
    }
}

fn pipeline_options(args: &ReplaceArgs, vocab: Vocabulary) -> Result<PipelineOptions, Failure> {
    let patches = match &args.patch {
        Some(p) => parse_patches(&read(p)?).map_err(|e| failed(anyhow!("{}: {e}", p.display())))?,
        None => Vec::new(),
    };
    Ok(PipelineOptions { skip_nationality: args.skip_nationality, separator: args.separator.clone(), patches, vocab })
}

fn validate(path: &Path, vocab: &Vocabulary, json: bool) -> Outcome {
    let docs = corpus(path)?;
    let mut good = 0;
    let mut out = String::new();
    for d in &docs {
        let (_, report) = check_document(&d.text, vocab, &d.origin());
        good += report.well_formed as usize;
        if json {
            let line = serde_json::json!({ "document": d.origin(), "line": d.line, "report": report });
            let _ = writeln!(out, "{line}");
            continue;
        }
        let status = if report.well_formed { "ok" } else { "error" };
        let _ = writeln!(
            out,
            "{}\t{status}\t{} errors\t{} warnings",
            d.origin(),
            report.errors.len(),
            report.warnings.len()
        );
        for i in report.errors.iter().chain(&report.warnings) {
            let _ = writeln!(out, "  {}:{}\t{:?}\t{}", d.origin(), i.location, i.code, i.message);
        }
    }
    let rate = if docs.is_empty() { 1.0 } else { good as f64 / docs.len() as f64 };
    if !json {
        let _ = writeln!(out, "well_formed_rate\t{rate}\t{good}/{}", docs.len());
    }
    stdout(&out)?;
    Ok(if good == docs.len() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn convert(path: &Path, to: ConvertTo, g: GranularityArg, vocab: &Vocabulary) -> Outcome {
    let g = match g {
        GranularityArg::Fine => Granularity::Fine,
        GranularityArg::Coarse => Granularity::Coarse,
    };
    let mut out = String::new();
    let mut bad = 0;
    for d in corpus(path)? {
        let drg = match parse_document(&d.text, vocab, &d.origin()) {
            Ok(drg) => drg,
            Err(e) => {
                eprintln!("{}: {e}", d.origin());
                bad += 1;
                continue;
            }
        };
        let body = match to {
            ConvertTo::Penman => render_penman(&extract_triples(&drg, g)),
            ConvertTo::Triples => triples_tsv(&extract_triples(&drg, g)),
            ConvertTo::Sbn => match serialize_sbn(&drg) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{}: {e}", d.origin());
                    bad += 1;
                    continue;
                }
            },
        };
        if !out.is_empty() {
            out.push('\n');
        }
        let _ = writeln!(out, "{} id: {}", if to == ConvertTo::Sbn { "%" } else { "#" }, d.origin());
        out.push_str(body.trim_end());
        out.push('\n');
    }
    stdout(&out)?;
    Ok(if bad == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn score(pred: &Path, gold: &Path, cfg: &ReportConfig, format: Format, output: Option<&Path>) -> Outcome {
    let (p, g) = (corpus(pred)?, corpus(gold)?);
    let report = corpus_report(&p, &g, cfg).map_err(failed)?;
    let text = match format {
        Format::Json => report.to_json(),
        Format::Tsv => report.to_tsv(),
        Format::Md => report.to_markdown(),
    };
    emit(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn align(
    par: &Path,
    sbn: &Path,
    table: &Path,
    separator: &str,
    links_out: Option<&Path>,
    output: Option<&Path>,
    vocab: &Vocabulary,
) -> Outcome {
    let sentences = parallel(par)?;
    let docs = corpus(sbn)?;
    if sentences.len() != docs.len() {
        return Err(failed(anyhow!("{} sentences but {} documents", sentences.len(), docs.len())));
    }
    let table = TranslationTable::from_tsv(&read(table)?).map_err(failed)?;
    let mut entries: Vec<NeEntry> = Vec::new();
    let mut link_text = String::from("id\ttgt_index\tsrc_index\ttgt\tsrc\n");
    for (s, d) in sentences.iter().zip(&docs) {
        let drg = parse_document(&d.text, vocab, &s.id).map_err(|e| failed(anyhow!("{}: {e}", s.id)))?;
        let links = table.align(s);
        for l in &links {
            let (si, sw) = match l.src_index {
                Some(i) => (i.to_string(), s.src_tokens[i].as_str()),
                None => ("NULL".to_string(), "NULL"),
            };
            let _ = writeln!(link_text, "{}\t{}\t{si}\t{}\t{sw}", s.id, l.tgt_index, s.tgt_tokens[l.tgt_index]);
        }
        let names = located_names(&drg, &s.src_tokens);
        entries.extend(extract_ne_pairs(s, &links, &names, separator).map_err(failed)?);
    }
    if let Some(p) = links_out {
        write(p, &link_text)?;
    }
    emit(output, &dictionary_tsv(&entries))?;
    Ok(ExitCode::SUCCESS)
}

fn replace_ne(
    sbn: &Path,
    dict: &Path,
    output: &Path,
    audit: Option<&Path>,
    args: &ReplaceArgs,
    vocab: Vocabulary,
) -> Outcome {
    let entries = parse_dictionary(&read(dict)?).map_err(|e| failed(anyhow!("{}: {e}", dict.display())))?;
    let opts = pipeline_options(args, vocab)?;
    let mut docs_out: Vec<(String, String)> = Vec::new();
    let mut rows: Vec<AuditRow> = Vec::new();
    for d in corpus(sbn)? {
        let id = d.origin();
        let drg = parse_document(&d.text, &opts.vocab, &id).map_err(|e| failed(anyhow!("{id}: {e}")))?;
        let mine: Vec<NeEntry> = entries.iter().filter(|e| e.id == id).cloned().collect();
        let (mut out, mut report) = replace_names(&drg, &mine, opts.skip_nationality);
        apply_patches(&mut out, &mut report, &id, &opts.patches);
        rows.extend(report.records.into_iter().map(|r| AuditRow::from_record(&id, r)));
        docs_out.push((id.clone(), serialize_sbn(&out).map_err(|e| failed(anyhow!("{id}: {e}")))?));
    }
    write(output, &write_corpus(docs_out.iter().map(|(i, t)| (Some(i.as_str()), t.as_str()))))?;
    if let Some(p) = audit {
        write(p, &audit_tsv(&rows))?;
    }
    Ok(ExitCode::SUCCESS)
}
