use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Write;
use std::time::Duration;

use essaylens::annotate::export;
use essaylens::detector::{
    evaluate, featurize_all, fit_schema, grid_search, llm_detect, train, write_eval_csv, Family, FeatureSchema,
    FitParams, GridConfig, Kernel, Scaling, TrainOptions,
};
use essaylens::keyness::{extract_ngrams, keyness_rank, write_keyness_csv};
use essaylens::lexmetrics::{descriptive_stats, group_report, profile_corpus, write_group_report, FrequencyList, GroupRow};
use essaylens::pipeline::{
    filter_corpus, generate, split, FilterConfig, GenerationJob, HttpClient, MockMode, MockServer, Similarity,
    SplitSizes, SplitSpec,
};
use essaylens::syntax::{count_units, syntactic_profile};
use essaylens::text::{normalize, write_jsonl, Author, Document, Source};
use essaylens::{EvalReport, FeatureVector, LexicalProfile, MarginModel, SyntacticProfile};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::corpus::*;
use crate::{
    CliError, CliResult, Command, EvaluateArgs, FeaturizeArgs, FilterArgs, GenerateArgs, KeynessArgs, LlmDetectArgs,
    MockArgs, ModelInput, NormalizeArgs, PredictArgs, ProfileArgs, SplitArgs, TagArgs, TrainArgs,
};

pub fn run(command: Command, seed: u64, jobs: Option<usize>) -> CliResult<Value> {
    match command {
        Command::Normalize(a) => normalize_cmd(a),
        Command::Generate(a) => generate_cmd(a, seed, jobs),
        Command::Filter(a) => filter_cmd(a),
        Command::Split(a) => split_cmd(a, seed),
        Command::Tag(a) => tag_cmd(a),
        Command::Profile(a) => profile_cmd(a, seed),
        Command::Keyness(a) => keyness_cmd(a),
        Command::Featurize(a) => featurize_cmd(a),
        Command::Train(a) => train_cmd(a, seed),
        Command::Predict(a) => predict_cmd(a),
        Command::Evaluate(a) => evaluate_cmd(a),
        Command::LlmDetect(a) => llm_detect_cmd(a),
        Command::MockEndpoint(a) => mock_cmd(a, seed),
    }
}

fn normalize_cmd(a: NormalizeArgs) -> CliResult<Value> {
    let mut docs = read_corpus(&a.input)?;
    let mut changed = 0;
    for d in &mut docs {
        let strip = !a.keep_disclaimer && d.author == Author::Machine;
        let clean = normalize(d.raw_text(), strip);
        if clean != d.raw_text() {
            changed += 1;
            d.set_text(clean);
        }
    }
    write_jsonl(&a.out, &docs)?;
    Ok(json!({"command": "normalize", "documents": docs.len(), "changed": changed, "out": a.out}))
}

fn generate_cmd(a: GenerateArgs, seed: u64, jobs: Option<usize>) -> CliResult<Value> {
    require_file(&a.config)?;
    let mut job = GenerationJob::load(&a.config)?;
    if let Some(e) = a.endpoint {
        job.endpoint_url = e;
    }
    if let Some(m) = a.model {
        job.model_name = m;
    }
    job.seed = seed;
    if let Some(j) = jobs {
        job.concurrency = j.max(1);
    }
    job.validate()?;
    let mut docs = if a.out.is_file() { read_corpus(&a.out)? } else { Vec::new() };
    let existing: HashSet<String> = docs.iter().map(|d| d.id.clone()).collect();
    let client = HttpClient::new(&job.endpoint_url, Duration::from_secs(job.timeout_secs))?;
    let outcome = generate(&job, &client, &existing)?;
    for f in &outcome.failures {
        eprintln!("{}", serde_json::to_string(f).expect("failure serializes"));
    }
    let generated = outcome.documents.len();
    docs.extend(outcome.documents);
    write_jsonl(&a.out, &docs)?;
    Ok(json!({
        "command": "generate",
        "generated": generated,
        "skipped": outcome.skipped,
        "failed": outcome.failures.len(),
        "out": a.out,
    }))
}

fn filter_cmd(a: FilterArgs) -> CliResult<Value> {
    let docs = read_corpus(&a.input)?;
    let mut cfg: FilterConfig = match &a.config {
        Some(p) => read_json(p)?,
        None => FilterConfig::default(),
    };
    if let Some(m) = a.min_words {
        cfg.min_words = m;
    }
    if let Some(s) = &a.similarity {
        cfg.similarity = match s.to_ascii_lowercase().as_str() {
            "max" => Similarity::Max,
            "min" => Similarity::Min,
            "jaccard" => Similarity::Jaccard,
            other => return Err(CliError::Usage(format!("unknown similarity `{other}`"))),
        };
    }
    let (kept, report) = filter_corpus(docs, &cfg);
    write_jsonl(&a.out, &kept)?;
    if let Some(p) = &a.report {
        write_text(p, &serde_json::to_string_pretty(&report).expect("report serializes"))?;
    }
    Ok(json!({
        "command": "filter",
        "kept": report.kept,
        "short": report.short,
        "repetitive": report.repetitive,
        "overlapped": report.overlapped,
        "out": a.out,
    }))
}

fn parse_source(s: &str) -> CliResult<Source> {
    Source::ALL
        .into_iter()
        .find(|x| x.as_str().eq_ignore_ascii_case(s))
        .ok_or_else(|| CliError::Usage(format!("unknown source `{s}`")))
}

fn split_cmd(a: SplitArgs, seed: u64) -> CliResult<Value> {
    let docs = read_corpus(&a.input)?;
    let mut spec: SplitSpec = match &a.spec {
        Some(p) => read_json(p)?,
        None => SplitSpec::default(),
    };
    spec.seed = seed;
    for s in &a.sizes {
        let parsed = s.split_once('=').and_then(|(src, sizes)| {
            let (dev, test) = sizes.split_once(':')?;
            Some((src, dev.parse().ok()?, test.parse().ok()?))
        });
        let Some((src, dev, test)) = parsed else {
            return Err(CliError::Usage(format!("bad --sizes `{s}`, expected SOURCE=DEV:TEST")));
        };
        spec.sizes.insert(parse_source(src)?, SplitSizes { dev, test });
    }
    if a.no_stratify {
        spec.stratified.clear();
    }
    if a.no_exclude {
        spec.excluded_models.clear();
    }
    let (out, summary) = split(docs, &spec)?;
    write_jsonl(&a.out, &out)?;
    Ok(json!({"command": "split", "documents": out.len(), "counts": summary.counts, "out": a.out}))
}

fn tag_cmd(a: TagArgs) -> CliResult<Value> {
    let docs = read_corpus(&a.input)?;
    let choice = tagger_choice(&a.tagger, a.lexicon.as_deref())?;
    let tagged = tag_all(&docs, &choice)?;
    std::fs::create_dir_all(&a.out_dir).map_err(|e| io_error(&a.out_dir, e))?;
    let mut tokens = 0;
    for t in &tagged {
        tokens += t.len();
        export(t, a.out_dir.join(format!("{}.tag", t.document().id)))?;
    }
    Ok(json!({"command": "tag", "documents": tagged.len(), "tokens": tokens, "out_dir": a.out_dir}))
}

fn group_key(d: &Document, by: &str) -> CliResult<String> {
    Ok(match by {
        "author" => d.author.as_str().to_string(),
        "model" => d.model_name.clone().unwrap_or_else(|| "human".into()),
        "source" => d.source.as_str().to_string(),
        "level" => d.level.map_or("NONE", |l| l.as_str()).to_string(),
        "source-author" => format!("{}/{}", d.source.as_str(), d.author.as_str()),
        other => return Err(CliError::Usage(format!("unknown grouping `{other}`"))),
    })
}

fn profile_cmd(a: ProfileArgs, seed: u64) -> CliResult<Value> {
    let docs = read_corpus(&a.input)?;
    let trees = read_trees(a.trees.as_deref())?;
    let loaded;
    let freq = match &a.freq {
        Some(p) => {
            require_file(p)?;
            loaded = FrequencyList::load(p)?;
            &loaded
        }
        None => FrequencyList::builtin(),
    };
    let keys: Vec<String> = docs.iter().map(|d| group_key(d, &a.group_by)).collect::<CliResult<_>>()?;
    let tagged = tag_all(&docs, &essaylens::annotate::TaggerChoice::Baseline)?;
    let lexical = profile_corpus::<f64>(&tagged, freq, seed);

    let mut lex_groups: BTreeMap<String, Vec<LexicalProfile>> = BTreeMap::new();
    let mut syn_groups: BTreeMap<String, Vec<SyntacticProfile>> = BTreeMap::new();
    let mut doc_groups: BTreeMap<String, Vec<Document>> = BTreeMap::new();
    let mut skipped = 0;
    for ((doc, key), lex) in docs.iter().zip(&keys).zip(lexical) {
        match lex {
            Ok(p) => lex_groups.entry(key.clone()).or_default().push(p),
            Err(e) => {
                log::warn!("{e}");
                skipped += 1;
            }
        }
        if let Some(t) = trees.get(&doc.id) {
            syn_groups.entry(key.clone()).or_default().push(syntactic_profile(&count_units(t)));
        }
        doc_groups.entry(key.clone()).or_default().push(doc.clone());
    }
    let mut rows: Vec<GroupRow<f64>> = group_report(&lex_groups);
    rows.extend(group_report(&syn_groups));
    for (group, members) in &doc_groups {
        let s = descriptive_stats::<f64>(members)?;
        let measures = [
            ("essay_len", s.essay_len),
            ("para_len", s.para_len),
            ("sent_len", s.sent_len),
            ("n_paras", s.n_paras),
            ("n_sents", s.n_sents),
        ];
        rows.extend(measures.into_iter().map(|(m, v)| GroupRow {
            group: group.clone(),
            measure: m.to_string(),
            mean: Some(v),
            coverage_n: members.len(),
            total_n: members.len(),
        }));
    }
    write_group_report(&rows, create(&a.out)?)?;
    Ok(json!({
        "command": "profile",
        "documents": docs.len(),
        "groups": doc_groups.len(),
        "rows": rows.len(),
        "with_trees": syn_groups.values().map(Vec::len).sum::<usize>(),
        "skipped": skipped,
        "out": a.out,
    }))
}

fn keyness_cmd(a: KeynessArgs) -> CliResult<Value> {
    let (docs_a, docs_b) = match (&a.input, &a.a, &a.b) {
        (Some(p), _, _) => {
            let docs = read_corpus(p)?;
            docs.into_iter().partition(|d| d.author == Author::Machine)
        }
        (None, Some(pa), Some(pb)) => (read_corpus(pa)?, read_corpus(pb)?),
        _ => return Err(CliError::Usage("give --in, or both --a and --b".into())),
    };
    let table_a = extract_ngrams(&docs_a, a.n)?;
    let table_b = extract_ngrams(&docs_b, a.n)?;
    let entries = keyness_rank::<f64>(&table_a, &table_b, a.top, a.min_count)?;
    write_keyness_csv(&entries, create(&a.out)?)?;
    Ok(json!({
        "command": "keyness",
        "n": a.n,
        "tokens_a": table_a.total_tokens,
        "tokens_b": table_b.total_tokens,
        "entries": entries.len(),
        "out": a.out,
    }))
}

fn featurize_cmd(a: FeaturizeArgs) -> CliResult<Value> {
    let docs = read_corpus(&a.input)?;
    let trees = read_trees(a.units.trees.as_deref())?;
    let granularity = parse_granularity(&a.units.granularity)?;
    let choice = tagger_choice(&a.units.tagger, None)?;
    let (schema, fitted) = match &a.schema {
        Some(p) => (read_json::<FeatureSchema>(p)?, false),
        None => {
            let name = a.family.as_deref().ok_or_else(|| CliError::Usage("give --family or --schema".into()))?;
            let family = Family::parse(name).ok_or_else(|| CliError::Usage(format!("unknown family `{name}`")))?;
            let params = FitParams {
                cfgr_threshold: a.cfgr_threshold,
                top_k: a.top_k,
                unigram_min_count: a.unigram_min_count,
                function_words: a.function_words.as_deref().map(read_lines).transpose()?,
                rank_list: a.rank_list.as_deref().map(read_lines).transpose()?,
            };
            let train_docs: Vec<Document> =
                docs.iter().filter(|d| d.split == Some(essaylens::text::Split::Train)).cloned().collect();
            let train_units: Vec<_> =
                build_units(&train_docs, granularity, &trees, Some(family), &choice)?.into_iter().map(|(_, u)| u).collect();
            (fit_schema(&train_units, family, &params)?, true)
        }
    };
    let units = build_units(&docs, granularity, &trees, Some(schema.family), &choice)?;
    let plain: Vec<_> = units.iter().map(|(_, u)| u.clone()).collect();
    let vectors: Vec<FeatureVector> = featurize_all(&plain, &schema);
    let rows: Vec<FeatureRow> =
        units.iter().zip(vectors).map(|((split, _), vector)| FeatureRow { split: *split, vector }).collect();
    write_feature_rows(&a.out, &rows)?;
    let schema_out = a.schema_out.clone().unwrap_or_else(|| a.out.with_extension("schema.json"));
    if fitted {
        write_text(&schema_out, &serde_json::to_string_pretty(&schema).expect("schema serializes"))?;
    }
    Ok(json!({
        "command": "featurize",
        "family": schema.family.as_str(),
        "features": schema.len(),
        "units": rows.len(),
        "granularity": granularity.as_str(),
        "schema": if fitted { Some(schema_out) } else { a.schema.clone() },
        "out": a.out,
    }))
}

fn parse_kernel(s: &str) -> CliResult<Kernel> {
    Kernel::parse(s).ok_or_else(|| CliError::Usage(format!("unknown kernel `{s}`")))
}

fn train_cmd(a: TrainArgs, seed: u64) -> CliResult<Value> {
    let rows = read_feature_rows(&a.features)?;
    let schema: FeatureSchema = read_json(&a.schema)?;
    let scaling = match a.scaling.to_ascii_lowercase().as_str() {
        "zscore" => Scaling::ZScore,
        "minmax" => Scaling::MinMax,
        other => return Err(CliError::Usage(format!("unknown scaling `{other}`"))),
    };
    let options = TrainOptions { seed, scaling, ..TrainOptions::default() };
    let pick = |s| rows.iter().filter(|r| r.split == Some(s)).map(|r| r.vector.clone()).collect::<Vec<_>>();
    let train_set = pick(essaylens::text::Split::Train);
    let dev = pick(essaylens::text::Split::Dev);
    let (model, dev_accuracy, trials) = match a.c {
        Some(c) => {
            let kernel = parse_kernel(a.kernel.as_deref().unwrap_or("linear"))?;
            let model = train(&train_set, &schema, kernel, c, a.gamma, &options)?;
            let acc = if dev.is_empty() { None } else { Some(evaluate(&model, &dev)?.accuracy) };
            (model, acc, 1)
        }
        None => {
            let mut config = GridConfig::<f64> { options, ..GridConfig::default() };
            if let Some(k) = &a.kernel {
                config.kernels = vec![parse_kernel(k)?];
            }
            if let Some(g) = a.gamma {
                config.gammas = vec![g];
            }
            if dev.is_empty() {
                return Err(CliError::Core(essaylens::Error::EmptyTest));
            }
            let result = grid_search(&train_set, &dev, &schema, &config)?;
            if let Some(p) = &a.grid_log {
                let mut w = create(p)?;
                let mut text = String::from("kernel,c,gamma,dev_accuracy\n");
                for t in &result.trials {
                    let g = t.gamma.map(|g| g.to_string()).unwrap_or_default();
                    text.push_str(&format!("{},{},{},{:.4}\n", t.kernel.as_str(), t.c, g, t.dev_accuracy));
                }
                w.write_all(text.as_bytes()).map_err(|e| io_error(p, e))?;
            }
            let n = result.trials.len();
            (result.best, Some(result.dev_accuracy), n)
        }
    };
    model.save(&a.out)?;
    Ok(json!({
        "command": "train",
        "kernel": model.kernel.as_str(),
        "c": model.c,
        "gamma": model.gamma,
        "train_units": train_set.len(),
        "dev_units": dev.len(),
        "dev_accuracy": dev_accuracy,
        "configurations": trials,
        "fingerprint": model.fingerprint,
        "out": a.out,
    }))
}

fn model_vectors(input: &ModelInput) -> CliResult<(MarginModel, Vec<FeatureVector>)> {
    require_file(&input.model)?;
    let model = MarginModel::load(&input.model)?;
    let split = parse_split(input.split.as_deref())?;
    let keep = |s: Option<essaylens::text::Split>| split.is_none() || s == split;
    let vectors = if let Some(p) = &input.features {
        read_feature_rows(p)?.into_iter().filter(|r| keep(r.split)).map(|r| r.vector).collect()
    } else {
        let path = input.input.as_ref().expect("clap requires --in or --features");
        let docs: Vec<Document> = read_corpus(path)?.into_iter().filter(|d| keep(d.split)).collect();
        let trees = read_trees(input.units.trees.as_deref())?;
        let granularity = parse_granularity(&input.units.granularity)?;
        let choice = tagger_choice(&input.units.tagger, None)?;
        let units: Vec<_> = build_units(&docs, granularity, &trees, Some(model.schema.family), &choice)?
            .into_iter()
            .map(|(_, u)| u)
            .collect();
        featurize_all(&units, &model.schema)
    };
    Ok((model, vectors))
}

fn predict_cmd(a: PredictArgs) -> CliResult<Value> {
    let (model, vectors) = model_vectors(&a.input)?;
    let mut unit_index: HashMap<&str, usize> = HashMap::new();
    let mut text = String::from("doc_id,unit,granularity,label,prediction,decision\n");
    let mut machine = 0;
    for v in &vectors {
        let idx = unit_index.entry(&v.doc_id).or_default();
        let p = model.predict(v);
        if p == Author::Machine {
            machine += 1;
        }
        text.push_str(&format!(
            "{},{},{},{},{},{:.6}\n",
            v.doc_id,
            idx,
            v.granularity.as_str(),
            v.label.as_str(),
            p.as_str(),
            model.decision(v)
        ));
        *idx += 1;
    }
    write_text(&a.out, &text)?;
    Ok(json!({
        "command": "predict",
        "units": vectors.len(),
        "machine": machine,
        "human": vectors.len() - machine,
        "out": a.out,
    }))
}

fn evaluate_cmd(a: EvaluateArgs) -> CliResult<Value> {
    let (model, vectors) = model_vectors(&a.input)?;
    let report: EvalReport = evaluate(&model, &vectors)?;
    if let Some(p) = &a.out {
        write_text(p, &report.to_json())?;
    }
    if let Some(p) = &a.csv {
        write_eval_csv(std::slice::from_ref(&report), create(p)?)?;
    }
    Ok(json!({
        "command": "evaluate",
        "granularity": report.granularity.as_str(),
        "units": report.n,
        "accuracy": report.accuracy,
        "majority_baseline": report.majority_baseline,
        "out": a.out,
    }))
}

fn llm_detect_cmd(a: LlmDetectArgs) -> CliResult<Value> {
    let split = parse_split(a.split.as_deref())?;
    let docs: Vec<Document> =
        read_corpus(&a.input)?.into_iter().filter(|d| split.is_none() || d.split == split).collect();
    let exemplars: Vec<(String, String)> = match &a.exemplars {
        Some(p) => {
            let mut pool = read_corpus(p)?;
            pool.sort_by(|x, y| x.id.cmp(&y.id));
            let text = |author| pool.iter().filter(move |d: &&Document| d.author == author).map(|d| d.raw_text().to_string());
            text(Author::Human).zip(text(Author::Machine)).collect()
        }
        None => Vec::new(),
    };
    if a.shots > exemplars.len() {
        return Err(CliError::Usage(format!("{}-shot detection needs --exemplars with enough human/machine pairs", a.shots)));
    }
    let client = HttpClient::new(&a.endpoint, Duration::from_secs(a.timeout_secs))?;
    let labels = docs
        .par_iter()
        .map(|d| llm_detect(&client, &a.model, d.raw_text(), a.shots, &exemplars, a.max_retries))
        .collect::<essaylens::Result<Vec<_>>>()?;
    let mut text = String::from("doc_id,label,prediction\n");
    let (mut correct, mut abstain) = (0, 0);
    for (d, l) in docs.iter().zip(&labels) {
        match l.author() {
            Some(p) if p == d.author => correct += 1,
            Some(_) => {}
            None => abstain += 1,
        }
        text.push_str(&format!("{},{},{}\n", d.id, d.author.as_str(), l.as_str()));
    }
    write_text(&a.out, &text)?;
    let accuracy = if docs.is_empty() { None } else { Some(correct as f64 / docs.len() as f64) };
    Ok(json!({
        "command": "llm-detect",
        "shots": a.shots,
        "units": docs.len(),
        "accuracy": accuracy,
        "abstained": abstain,
        "out": a.out,
    }))
}

fn mock_cmd(a: MockArgs, seed: u64) -> CliResult<Value> {
    let mode = match a.mode.to_ascii_lowercase().as_str() {
        "varied" => MockMode::Varied { seed },
        "fixed" => MockMode::Fixed(a.text),
        "status" => MockMode::Status(a.status),
        "flaky" => MockMode::Flaky { failures: a.failures, seed },
        other => return Err(CliError::Usage(format!("unknown mock mode `{other}`"))),
    };
    let server = MockServer::start_on(&a.addr, mode)?;
    println!("{}", json!({"command": "mock-endpoint", "url": server.url()}));
    let _ = std::io::stdout().flush();
    server.wait();
    Ok(Value::Null)
}
