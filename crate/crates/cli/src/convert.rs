use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context;
use readcorpus::{convert_files, discover_files};

use crate::{default_jobs, ConvertArgs};

pub fn convert(args: ConvertArgs) -> anyhow::Result<u8> {
    let (found, walk_failures) = discover_files(&args.input, &args.glob, args.recursive)?;
    fs::create_dir_all(&args.output).with_context(|| format!("creating {}", args.output.display()))?;

    let started = Instant::now();
    let paths: Vec<PathBuf> = found.iter().map(|(_, p)| p.clone()).collect();
    let results = convert_files(&paths, &args.command, args.jobs.unwrap_or_else(default_jobs))?;

    let mut failures: Vec<String> = walk_failures
        .iter()
        .map(|f| format!("{}: {}", f.path.display(), f.message))
        .collect();
    let mut converted = 0;
    let mut input_bytes = 0u64;
    let mut output_bytes = 0u64;
    for ((id, path), result) in found.iter().zip(results) {
        input_bytes += fs::metadata(path).map(|m| m.len()).unwrap_or(0);
        match result {
            Ok(doc) => {
                let target = args.output.join(PathBuf::from(id).with_extension("txt"));
                if let Some(dir) = target.parent() {
                    fs::create_dir_all(dir)?;
                }
                fs::write(&target, &doc.raw_text).with_context(|| format!("writing {}", target.display()))?;
                output_bytes += doc.raw_text.len() as u64;
                converted += 1;
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    let secs = started.elapsed().as_secs_f64();

    println!("documents\tconverted\tfailed\tinput_mb\toutput_mb\ttotal_secs");
    println!(
        "{}\t{converted}\t{}\t{:.2}\t{:.2}\t{secs:.2}",
        found.len(),
        failures.len(),
        input_bytes as f64 / 1_048_576.0,
        output_bytes as f64 / 1_048_576.0,
    );
    for f in &failures {
        eprintln!("failed: {f}");
    }
    Ok(if failures.is_empty() { 0 } else { 1 })
}
