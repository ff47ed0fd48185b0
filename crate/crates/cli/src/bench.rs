use std::time::Instant;

use anyhow::bail;
use readcorpus::synth::synthetic_corpus;
use readcorpus::{load_corpus, run, Backend, CorpusReport, FormulaId, PipelineConfig, StopWordList};

use crate::{backend_for, write_output, BenchArgs};

/// Prefix sizes in the 1-2-5 pattern, capped by (and ending at) `n`.
fn prefixes(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut decade = 1;
    'outer: loop {
        for step in [1, 2, 5] {
            let p = step * decade;
            if p >= n {
                break 'outer;
            }
            out.push(p);
        }
        decade *= 10;
    }
    if n > 0 {
        out.push(n);
    }
    out
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

pub fn bench(args: BenchArgs) -> anyhow::Result<u8> {
    if args.repeat == 0 {
        bail!("--repeat must be at least 1");
    }
    if args.backends.is_empty() {
        bail!("--backends needs at least one backend");
    }
    let profile = args.lang.profile()?;
    let stop = StopWordList::builtin(&profile);
    let formulas = FormulaId::defaults(&profile.lang_code, false);
    let cfg = PipelineConfig::new(profile, stop, formulas, None)?;
    let corpus = match (&args.corpus, args.synthetic) {
        (_, Some(n)) => synthetic_corpus(n, args.synthetic_kib * 1024, args.seed),
        (Some(dir), None) => load_corpus(dir, &args.glob, args.recursive)?,
        (None, None) => unreachable!("clap requires one of --corpus/--synthetic"),
    };
    let backends: Vec<Backend> = args
        .backends
        .iter()
        .map(|k| backend_for(*k, args.jobs, &args.workers))
        .collect();

    // (documents, backend label, median seconds)
    let mut rows = Vec::new();
    for n in prefixes(corpus.len()) {
        let prefix = corpus.prefix(n);
        let mut reference: Option<CorpusReport> = None;
        for b in &backends {
            let mut times = Vec::with_capacity(args.repeat);
            let mut last = None;
            for _ in 0..args.repeat {
                let t = Instant::now();
                let report = run(&prefix, &cfg, b)?;
                times.push(t.elapsed().as_secs_f64());
                last = Some(report);
            }
            let report = last.expect("repeat >= 1");
            match &reference {
                None => reference = Some(report),
                Some(r) if !r.same_results(&report) => {
                    bail!(
                        "{} disagrees with {} on the first {n} documents; refusing to report timings",
                        label(b),
                        label(&backends[0])
                    );
                }
                Some(_) => {}
            }
            rows.push((n, label(b), median(times)));
        }
    }

    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(["documents", "backend", "median_secs", "speedup"])?;
    for (n, name, secs) in &rows {
        let base = rows.iter().find(|r| r.0 == *n).map(|r| r.2).unwrap_or(*secs);
        out.write_record([
            n.to_string(),
            name.clone(),
            format!("{secs:.6}"),
            format!("{:.2}", base / secs),
        ])?;
    }
    let text = String::from_utf8(out.into_inner()?)?;
    print!("{text}");
    if args.output.is_some() {
        write_output(args.output.as_deref(), &text)?;
    }
    Ok(0)
}

fn label(b: &Backend) -> String {
    format!("{}({})", b.name(), b.worker_count())
}
