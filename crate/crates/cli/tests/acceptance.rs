//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use sbneval::align::{corpus_log_likelihood, train_ibm1_with, ParallelSentence};
use sbneval::metrics::{corpus_report, graph_level_report, node_level_report, ReportConfig};
use sbneval::penman::{extract_triples, Granularity};
use sbneval::sbn::{parse_document, serialize_sbn, split_corpus, validate_with, Document};
use sbneval::smatch::{exhaustive_match, smatch_score};
use sbneval::{Drg, Vocabulary};

const FIXTURES: &str = include_str!("../../core/tests/data/fixtures.sbn");
const BIN: &str = env!("CARGO_BIN_EXE_sbneval");

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn fixtures() -> Vec<Document> {
    split_corpus(FIXTURES)
}

fn drg(doc: &Document) -> Drg {
    parse_document(&doc.text, &Vocabulary::default(), &doc.origin()).expect("fixture parses")
}

fn fixture(id: &str) -> Drg {
    let docs = fixtures();
    drg(docs.iter().find(|d| d.id.as_deref() == Some(id)).expect("fixture id"))
}

fn within(start: Instant, budget: Duration, detail: String) -> Check {
    let took = start.elapsed();
    if took > budget {
        return Err(format!("{detail}; took {took:?}, budget {budget:?}"));
    }
    Ok(format!("{detail}; {} ms", took.as_millis()))
}

fn round_trip() -> Check {
    let start = Instant::now();
    let vocab = Vocabulary::default();
    let docs = fixtures();
    for d in &docs {
        let g = parse_document(&d.text, &vocab, &d.origin()).map_err(|e| format!("{}: {e}", d.origin()))?;
        let report = validate_with(&g, &vocab);
        if !report.well_formed {
            return Err(format!("{}: {:?}", d.origin(), report.errors));
        }
        let body = d.text.lines().filter(|l| !l.trim_start().starts_with('%'));
        let normalized = body.flat_map(str::split_whitespace).collect::<Vec<_>>().join(" ");
        let back = serialize_sbn(&g).map_err(|e| e.to_string())?;
        if back != normalized {
            return Err(format!("{}: {back} != {normalized}", d.origin()));
        }
    }
    within(start, Duration::from_secs(1), format!("{} fixtures", docs.len()))
}

fn self_score() -> Check {
    let mut n = 0;
    for d in fixtures() {
        let g = drg(&d);
        for gran in [Granularity::Fine, Granularity::Coarse] {
            let t = extract_triples(&g, gran);
            let f1 = smatch_score(&t, &t, 4, 0).f1;
            if f1 != 1.0 {
                return Err(format!("{} {gran:?}: {f1}", d.origin()));
            }
            n += 1;
        }
    }
    Ok(format!("{n} self-scores equal 1.0"))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let graphs: Vec<(String, Drg)> = fixtures().iter().map(|d| (d.origin(), drg(d))).collect();
    let mut pairs = 0;
    for gran in [Granularity::Fine, Granularity::Coarse] {
        let sets: Vec<_> = graphs.iter().map(|(id, g)| (id, extract_triples(g, gran))).collect();
        for (pid, p) in &sets {
            for (gid, g) in &sets {
                if p.var_count() > 8 || g.var_count() > 8 {
                    continue;
                }
                let hill = smatch_score(p, g, 16, 0).f1;
                let exact = exhaustive_match(p, g, 8).map_err(|e| e.to_string())?.f1;
                if hill != exact {
                    return Err(format!("{pid} vs {gid} {gran:?}: hill {hill}, exhaustive {exact}"));
                }
                pairs += 1;
            }
        }
    }
    if pairs == 0 {
        return Err("no pairs within the variable limit".into());
    }
    within(start, Duration::from_secs(30), format!("{pairs} ordered pairs agree"))
}

fn inflation() -> Check {
    let gold = fixture("handy-gold");
    let text = serialize_sbn(&gold).unwrap().replace("time.n.08", "time.n.01");
    let pred = parse_document(&text, &Vocabulary::default(), "sense-error").map_err(|e| e.to_string())?;
    let r = graph_level_report(&pred, &gold, 4, 0);
    let (fine, coarse, no_senses) = (r.smatch_fine.f1, r.smatch_coarse.f1, r.no_senses.f1);
    let exact_fine =
        exhaustive_match(&extract_triples(&pred, Granularity::Fine), &extract_triples(&gold, Granularity::Fine), 16)
            .map_err(|e| e.to_string())?
            .f1;
    let exact_coarse = exhaustive_match(
        &extract_triples(&pred, Granularity::Coarse),
        &extract_triples(&gold, Granularity::Coarse),
        16,
    )
    .map_err(|e| e.to_string())?
    .f1;
    let close = |a: f64, b: f64| (a - b).abs() < 1e-9;
    let checks = [
        ("fine = 31/32", close(fine, 31.0 / 32.0)),
        ("coarse = 15/16", close(coarse, 15.0 / 16.0)),
        ("fine matches oracle", close(fine, exact_fine)),
        ("coarse matches oracle", close(coarse, exact_coarse)),
        ("fine > coarse", fine > coarse),
        ("no_senses = 1.0 > coarse", no_senses == 1.0 && no_senses > coarse),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((what, _)) => Err(format!("{what} failed: fine {fine}, coarse {coarse}, no_senses {no_senses}")),
        None => Ok(format!("fine {fine:.6} > coarse {coarse:.6}, no_senses {no_senses}")),
    }
}

fn hand_values() -> Check {
    let handy = node_level_report(&fixture("handy-zh"), &fixture("handy-gold"));
    let lured = node_level_report(&fixture("lured-zh2en"), &fixture("lured-gold"));
    let (noun, adv, neg) = (handy.concepts_noun.f1, handy.concepts_adv.f1, lured.negation.f1);
    if (noun - 6.0 / 7.0).abs() > 1e-9 || adv != 0.0 || neg != 0.0 {
        return Err(format!("concepts_noun {noun}, concepts_adv {adv}, negation {neg}"));
    }
    Ok(format!("concepts_noun {noun:.9}, concepts_adv {adv}, negation {neg}"))
}

fn corpus_text(docs: &[(String, String)]) -> String {
    let mut out = String::new();
    for (id, text) in docs {
        let _ = write!(out, "% id: {id}\n{text}\n\n");
    }
    out
}

fn well_formed_rate() -> Check {
    let base: Vec<String> = fixtures().iter().map(|d| d.text.clone()).collect();
    let gold: Vec<(String, String)> = (0..1000).map(|i| (format!("d{i}"), base[i % base.len()].clone())).collect();
    let mut pred = gold.clone();
    pred[17].1 = "entity.n.01 Agent +4".into();
    pred[503].1 = "this is not sbn".into();
    let (p, g) = (split_corpus(&corpus_text(&pred)), split_corpus(&corpus_text(&gold)));
    let report = corpus_report(&p, &g, &ReportConfig::default()).map_err(|e| e.to_string())?;
    if report.well_formed_rate != 0.998 || report.malformed.len() != 2 {
        return Err(format!("rate {}, {} malformed", report.well_formed_rate, report.malformed.len()));
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("pred.sbn");
    std::fs::write(&path, corpus_text(&pred)).map_err(|e| e.to_string())?;
    let out = Command::new(BIN).arg("validate").arg(&path).output().map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    if out.status.code() != Some(1) || !stdout.contains("well_formed_rate\t0.998\t998/1000") {
        return Err(format!("validate exited {:?}", out.status.code()));
    }
    Ok("0.998 from the report and from validate".into())
}

fn aligner_convergence() -> Check {
    let start = Instant::now();
    let corpus = [
        ParallelSentence::from_text("1", "green house", "casa verde"),
        ParallelSentence::from_text("2", "the house", "la casa"),
    ];
    let mut lls = Vec::new();
    let table =
        train_ibm1_with(&corpus, 20, |_, t| lls.push(corpus_log_likelihood(t, &corpus))).map_err(|e| e.to_string())?;
    if let Some(w) = lls.windows(2).find(|w| w[1] < w[0] - 1e-12) {
        return Err(format!("log-likelihood fell from {} to {}", w[0], w[1]));
    }
    let p = table.prob("house", "casa");
    if p <= 0.9 {
        return Err(format!("t(casa|house) = {p}"));
    }
    within(start, Duration::from_secs(1), format!("t(casa|house) = {p:.6}, {} iterations monotone", lls.len()))
}

struct Row {
    en: String,
    zh: String,
    sbn: String,
    names: Vec<(String, String)>,
}

#[derive(Clone, Copy)]
struct Entity {
    en: &'static str,
    zh: &'static str,
    synset: &'static str,
    name: &'static str,
}

const fn e(en: &'static str, zh: &'static str, synset: &'static str, name: &'static str) -> Entity {
    Entity { en, zh, synset, name }
}

const PEOPLE: [Entity; 4] = [
    e("yunus", "尤努斯", "male.n.02", "Yunus"),
    e("mary", "玛丽", "female.n.02", "Mary"),
    e("tom", "汤姆", "male.n.02", "Tom"),
    e("mel karmazin", "梅尔·卡玛津", "male.n.02", "Mel Karmazin"),
];
const HAYES: Entity = e("rutherford hayes", "卢瑟福·海斯", "male.n.02", "Rutherford~Hayes");
const PLACES: [Entity; 3] = [
    e("boston", "波士顿", "city.n.01", "Boston"),
    e("paris", "巴黎", "city.n.01", "Paris"),
    e("ohio", "俄亥俄州", "state.n.01", "Ohio"),
];
const COMPANIES: [Entity; 2] =
    [e("grameen", "格莱美", "company.n.01", "Grameen"), e("sirius", "天狼星", "company.n.01", "Sirius")];

fn planted(x: &Entity) -> (String, String) {
    (x.name.to_string(), x.zh.to_string())
}

fn row(en: String, zh: String, sbn: String, names: &[&Entity]) -> Row {
    Row { en, zh, sbn, names: names.iter().map(|x| planted(x)).collect() }
}

fn template(k: usize, p: &Entity, q: &Entity, l: &Entity, c: &Entity) -> Row {
    let pn = format!("{} Name \"{}\"", p.synset, p.name);
    match k % 8 {
        0 => row(
            format!("{} visited {} .", p.en, l.en),
            format!("{} 访问 了 {} 。", p.zh, l.zh),
            format!("{pn} visit.v.01 Agent -1 Time +1 Theme +2 time.n.08 TPR now {} Name \"{}\"", l.synset, l.name),
            &[p, l],
        ),
        1 => row(
            format!("{} lives in {} .", p.en, l.en),
            format!("{} 住 在 {} 。", p.zh, l.zh),
            format!("{pn} live.v.01 Agent -1 Time +1 Location +2 time.n.08 EQU now {} Name \"{}\"", l.synset, l.name),
            &[p, l],
        ),
        2 => row(
            format!("{} works for {} .", p.en, c.en),
            format!("{} 为 {} 工作 。", p.zh, c.zh),
            format!("{pn} work.v.01 Agent -1 Time +1 Beneficiary +2 time.n.08 EQU now {} Name \"{}\"", c.synset, c.name),
            &[p, c],
        ),
        3 => row(
            format!("{} met {} in {} .", p.en, q.en, l.en),
            format!("{} 在 {} 见 了 {} 。", p.zh, l.zh, q.zh),
            format!(
                "{pn} meet.v.01 Agent -1 Co-Agent +1 Time +2 Location +3 {} Name \"{}\" time.n.08 TPR now {} Name \"{}\"",
                q.synset, q.name, l.synset, l.name
            ),
            &[p, q, l],
        ),
        4 => row(
            format!("{} was born in {} .", p.en, l.en),
            format!("{} 出生 于 {} 。", p.zh, l.zh),
            format!("{pn} time.n.08 TPR now bear.v.02 Patient -2 Time -1 Location +1 {} Name \"{}\"", l.synset, l.name),
            &[p, l],
        ),
        5 => row(
            format!("{} and {} ate together .", p.en, q.en),
            format!("{} 和 {} 一起 吃 饭 。", p.zh, q.zh),
            format!("{pn} {} Name \"{}\" eat.v.01 Agent -2 Co-Agent -1 Time +1 time.n.08 TPR now", q.synset, q.name),
            &[p, q],
        ),
        6 => row(
            format!("{} hired {} .", c.en, p.en),
            format!("{} 雇用 了 {} 。", c.zh, p.zh),
            format!("company.n.01 Name \"{}\" hire.v.01 Agent -1 Time +1 Theme +2 time.n.08 TPR now {pn}", c.name),
            &[c, p],
        ),
        _ => row(
            format!("{} is happy .", p.en),
            format!("{} 很 快乐 。", p.zh),
            format!("{pn} time.n.08 EQU now happy.a.01 AttributeOf -2 Time -1"),
            &[p],
        ),
    }
}

/// 50 synthetic sentence pairs plus the rows where each flag must fire.
fn synthetic_corpus() -> (Vec<Row>, Vec<(&'static str, usize)>) {
    let mut rows = vec![
        template(0, &HAYES, &HAYES, &PLACES[0], &COMPANIES[0]),
        template(6, &HAYES, &HAYES, &PLACES[0], &COMPANIES[0]),
    ];
    for k in 0..41 {
        let p = &PEOPLE[k % 4];
        let mut q = &PEOPLE[(k + 1 + k / 4) % 4];
        if q.name == p.name {
            q = &PEOPLE[(k + 2) % 4];
        }
        rows.push(template(k, p, q, &PLACES[(k / 2) % 3], &COMPANIES[(k / 3) % 2]));
    }
    let mut triggers = Vec::new();
    for (p, l) in [(&PEOPLE[1], &PLACES[1]), (&PEOPLE[2], &PLACES[0]), (&PEOPLE[0], &PLACES[2])] {
        triggers.push(("NotSubstringOfTarget", rows.len()));
        let mut r = row(
            format!("{} sang happy together in {} .", p.en, l.en),
            format!("{} 在 {} 唱 了 快乐 在 一起 。", p.zh, l.zh),
            format!(
                "{} Name \"{}\" sing.v.02 Agent -1 Time +1 Theme +2 Location +3 time.n.08 TPR now music.n.01 Name \"Happy~Together\" {} Name \"{}\"",
                p.synset, p.name, l.synset, l.name
            ),
            &[p, l],
        );
        r.names.insert(1, ("Happy~Together".into(), "快乐在一起".into()));
        rows.push(r);
    }
    triggers.push(("DuplicateTarget", rows.len()));
    let mut r = row(
        "sirius xm and sirius hired tom .".into(),
        "天狼星 和 天狼星 雇用 汤姆 。".into(),
        "company.n.01 Name \"Sirius XM\" company.n.01 Name \"Sirius\" hire.v.01 Agent -2 Agent -1 Time +1 Theme +2 time.n.08 TPR now male.n.02 Name \"Tom\"".into(),
        &[&COMPANIES[1], &PEOPLE[2]],
    );
    r.names.insert(0, ("Sirius XM".into(), "天狼星XM".into()));
    rows.push(r);
    triggers.push(("ContainsDigitsNotInSource", rows.len()));
    rows.push(row(
        "rutherford hayes lives in ohio .".into(),
        "卢瑟福·海斯1822 住 在 俄亥俄州 。".into(),
        "male.n.02 Name \"Rutherford~Hayes\" live.v.01 Agent -1 Time +1 Location +2 time.n.08 EQU now state.n.01 Name \"Ohio\"".into(),
        &[&HAYES, &PLACES[2]],
    ));
    triggers.push(("EmptyTarget", rows.len()));
    rows.push(row(
        "tom met mary in boston .".into(),
        "汤姆 在 波士顿 见 了 。".into(),
        "male.n.02 Name \"Tom\" meet.v.01 Agent -1 Co-Agent +1 Time +2 Location +3 female.n.02 Name \"Mary\" time.n.08 TPR now city.n.01 Name \"Boston\"".into(),
        &[&PEOPLE[2], &PEOPLE[1], &PLACES[0]],
    ));
    triggers.push(("NationalitySkipped", rows.len()));
    rows.push(Row {
        en: "i am not irish .".into(),
        zh: "我 不 是 爱尔兰人 。".into(),
        sbn: "person.n.01 EQU speaker NEGATION <1 time.n.08 EQU now be.v.03 Theme -2 Time -1 Source +1 country.n.02 Name \"ireland\"".into(),
        names: vec![("ireland".into(), "ireland".into())],
    });
    (rows, triggers)
}

/// Names that only exist to set off a flag.
const TRIGGER_ONLY: [&str; 2] = ["Sirius XM", "ireland"];

fn pipeline_end_to_end() -> Check {
    let start = Instant::now();
    let (rows, triggers) = synthetic_corpus();
    if rows.len() != 50 {
        return Err(format!("fixture has {} sentences", rows.len()));
    }
    let mut occurrences: HashMap<&str, usize> = HashMap::new();
    for (name, _) in rows.iter().flat_map(|r| &r.names) {
        *occurrences.entry(name.as_str()).or_default() += 1;
    }
    let id = |i: usize| format!("s{i:02}");
    let mut par = String::new();
    let mut sbn = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let _ = writeln!(par, "{}\t{}\t{}", id(i), r.en, r.zh);
        sbn.push((id(i), r.sbn.clone()));
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |f: &str| dir.path().join(f);
    std::fs::write(p("par.tsv"), par).map_err(|e| e.to_string())?;
    std::fs::write(p("en.sbn"), corpus_text(&sbn)).map_err(|e| e.to_string())?;
    let out = Command::new(BIN)
        .arg("pipeline")
        .args([p("par.tsv"), p("en.sbn")])
        .arg("-o")
        .arg(p("out.sbn"))
        .arg("--audit")
        .arg(p("audit.tsv"))
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("pipeline failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    let audit = std::fs::read_to_string(p("audit.tsv")).map_err(|e| e.to_string())?;
    let audit: Vec<Vec<&str>> = audit.lines().skip(1).map(|l| l.split('\t').collect()).collect();

    let expected: HashMap<(String, &str), &str> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.names.iter().map(move |(n, t)| ((id(i), n.as_str()), t.as_str())))
        .collect();
    let total = rows.iter().map(|r| r.names.len()).sum::<usize>();
    let replaced =
        audit.iter().filter(|c| c[4] == "Replaced" && expected.get(&(c[0].to_string(), c[2])) == Some(&c[3])).count();
    let rate = replaced as f64 / total as f64;

    let mut problems = Vec::new();
    if audit.len() != total {
        problems.push(format!("audit has {} rows for {total} names", audit.len()));
    }
    for (name, n) in &occurrences {
        if *n < 3 && !TRIGGER_ONLY.contains(name) {
            problems.push(format!("{name} occurs {n} times"));
        }
    }
    if rate < 0.9 {
        problems.push(format!("replacement rate {rate:.3}"));
    }
    for (flag, i) in &triggers {
        let fired = audit.iter().any(|c| c[0] == id(*i) && (c[5].split(',').any(|f| f == *flag) || c[4] == *flag));
        if !fired {
            problems.push(format!("{flag} did not fire on {}", id(*i)));
        }
    }
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }
    within(
        start,
        Duration::from_secs(5),
        format!("{replaced}/{total} names replaced ({:.1}%), all four flags fired", rate * 100.0),
    )
}

fn score_json(dir: &Path) -> Result<Vec<u8>, String> {
    let out = Command::new(BIN)
        .arg("score")
        .args([dir.join("pred.sbn"), dir.join("gold.sbn")])
        .args(["--restarts", "4", "--seed", "7", "--format", "json"])
        .env_remove("DRG_EVAL_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    Ok(out.stdout)
}

fn determinism() -> Check {
    let docs = fixtures();
    let gold: Vec<(String, String)> = docs.iter().map(|d| (d.origin(), d.text.clone())).collect();
    let mut pred = gold.clone();
    pred.rotate_left(1);
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    std::fs::write(dir.path().join("pred.sbn"), corpus_text(&pred)).map_err(|e| e.to_string())?;
    std::fs::write(dir.path().join("gold.sbn"), corpus_text(&gold)).map_err(|e| e.to_string())?;
    let (a, b) = (score_json(dir.path())?, score_json(dir.path())?);
    if a != b {
        return Err("two runs produced different bytes".into());
    }
    Ok(format!("{} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("round-trip", round_trip),
        ("self-score", self_score),
        ("oracle equivalence", oracle_equivalence),
        ("inflation", inflation),
        ("fine-grained hand values", hand_values),
        ("well-formed rate", well_formed_rate),
        ("aligner convergence", aligner_convergence),
        ("pipeline end-to-end", pipeline_end_to_end),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
