use anyhow::Context;
use readcorpus::report::render;
use readcorpus::stopwords::{build_stoplist, induction_features, render_stoplist};
use readcorpus::{load_corpus, run, EasyWordList, FormulaId, PipelineConfig};

use crate::{stoplist, write_output, AnalyzeArgs, StopwordsArgs};

pub fn analyze(args: AnalyzeArgs) -> anyhow::Result<u8> {
    // everything that can be rejected is checked before the corpus is read
    let profile = args.lang.profile()?;
    let stop = stoplist(&args.stopwords, &profile)?;
    let easy = args
        .easy_words
        .as_deref()
        .map(|p| EasyWordList::from_file(p, profile.case_folding))
        .transpose()?;
    let formulas = match &args.formulas {
        Some(list) => FormulaId::parse_list(list)?,
        None => FormulaId::defaults(&profile.lang_code, easy.is_some()),
    };
    let cfg = PipelineConfig::with_threshold(profile, stop, formulas, easy, args.hard_word_threshold)?;
    let backend = args.backend.backend();

    let c = &args.corpus;
    let corpus = load_corpus(&c.corpus, &c.glob, c.recursive)?;
    if corpus.is_empty() {
        log::warn!("no documents matched `{}` under {}", c.glob, c.corpus.display());
    }
    for f in &corpus.load_failures {
        log::warn!("could not read {}: {}", f.path.display(), f.message);
    }
    let mut report = run(&corpus, &cfg, &backend)?;
    if args.no_timing {
        report.run_meta.wall_time_secs = None;
    }
    for w in &report.run_meta.lost_workers {
        log::warn!("worker {w} was lost; its documents were reassigned");
    }
    write_output(args.output.as_deref(), &render(&report, &cfg.formulas, args.format))?;

    let failures = report.run_meta.failure_count;
    if failures > 0 {
        eprintln!("{failures} document(s) had problems; see the report");
        return Ok(1);
    }
    Ok(0)
}

pub fn stopwords(args: StopwordsArgs) -> anyhow::Result<u8> {
    let profile = args.lang.profile()?;
    let backend = args.backend.backend();
    if args.top == 0 {
        anyhow::bail!("--top must be at least 1");
    }
    let c = &args.corpus;
    let corpus = load_corpus(&c.corpus, &c.glob, c.recursive)?;
    let tf = induction_features(&corpus, &profile, &backend)?;
    let induced = build_stoplist(&tf, args.top)?;
    if induced.k_exceeds_vocabulary {
        eprintln!(
            "warning: --top {} exceeds the vocabulary of {} words; writing all of them",
            args.top,
            induced.list.len()
        );
    }
    write_output(args.output.as_deref(), &render_stoplist(&induced.list)).context("saving stop-word list")?;
    if corpus.load_failures.is_empty() {
        Ok(0)
    } else {
        for f in &corpus.load_failures {
            eprintln!("could not read {}: {}", f.path.display(), f.message);
        }
        Ok(1)
    }
}
