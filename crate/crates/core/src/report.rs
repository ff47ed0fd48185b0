//! JSON and CSV renderings of a [`CorpusReport`].
//!
//! Scores are written with exactly two decimals; counts are integers.
//! The CSV has one row per document and a final `AGGREGATE` row with the
//! columns `doc_id, word_count, sentence_count, syllable_count,
//! distinct_words, hard_words` followed by one column per formula.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::value::RawValue;

use crate::executor::{CorpusReport, DocumentResult, RunMeta};
use crate::features::FeatureVector;
use crate::formulas::{FormulaError, FormulaId, ReadabilityScore, ScoreInputs};

pub const AGGREGATE_ROW: &str = "AGGREGATE";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown report format `{other}` (expected json or csv)")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

pub fn format_score(value: f64) -> String {
    format!("{value:.2}")
}

#[derive(Serialize)]
struct FeaturesView<'a> {
    word_count: u64,
    sentence_count: u64,
    syllable_count: u64,
    letter_count: u64,
    hard_word_count: u64,
    distinct_words: usize,
    term_frequencies: Vec<(&'a String, &'a u64)>,
}

impl<'a> From<&'a FeatureVector> for FeaturesView<'a> {
    fn from(v: &'a FeatureVector) -> Self {
        Self {
            word_count: v.word_count,
            sentence_count: v.sentence_count,
            syllable_count: v.syllable_count,
            letter_count: v.letter_count,
            hard_word_count: v.hard_word_count,
            distinct_words: v.distinct_count(),
            term_frequencies: v.term_frequencies.iter().collect(),
        }
    }
}

#[derive(Serialize)]
struct ScoreView<'a> {
    formula: FormulaId,
    value: Box<RawValue>,
    inputs: &'a ScoreInputs,
}

fn score_views(scores: &[ReadabilityScore]) -> Vec<ScoreView<'_>> {
    scores
        .iter()
        .map(|s| ScoreView {
            formula: s.formula,
            value: RawValue::from_string(format_score(s.value)).expect("finite score is valid JSON"),
            inputs: &s.inputs,
        })
        .collect()
}

#[derive(Serialize)]
struct DocumentView<'a> {
    doc_id: &'a str,
    features: FeaturesView<'a>,
    scores: Vec<ScoreView<'a>>,
    errors: &'a [FormulaError],
}

#[derive(Serialize)]
struct ReportView<'a> {
    per_document: Vec<DocumentView<'a>>,
    aggregate: FeaturesView<'a>,
    aggregate_scores: Vec<ScoreView<'a>>,
    aggregate_errors: &'a [FormulaError],
    run_meta: &'a RunMeta,
}

pub fn to_json(report: &CorpusReport) -> String {
    let view = ReportView {
        per_document: report
            .per_document
            .iter()
            .map(|d| DocumentView {
                doc_id: &d.doc_id,
                features: (&d.features).into(),
                scores: score_views(&d.scores),
                errors: &d.errors,
            })
            .collect(),
        aggregate: (&report.aggregate).into(),
        aggregate_scores: score_views(&report.aggregate_scores),
        aggregate_errors: &report.aggregate_errors,
        run_meta: &report.run_meta,
    };
    let mut out = serde_json::to_string_pretty(&view).expect("report serializes");
    out.push('\n');
    out
}

pub fn csv_header(formulas: &[FormulaId]) -> Vec<String> {
    let mut h: Vec<String> = [
        "doc_id",
        "word_count",
        "sentence_count",
        "syllable_count",
        "distinct_words",
        "hard_words",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    h.extend(formulas.iter().map(|f| f.name().to_string()));
    h
}

fn csv_row(id: &str, v: &FeatureVector, scores: &[ReadabilityScore], formulas: &[FormulaId]) -> Vec<String> {
    let mut row = vec![
        id.to_string(),
        v.word_count.to_string(),
        v.sentence_count.to_string(),
        v.syllable_count.to_string(),
        v.distinct_count().to_string(),
        v.hard_word_count.to_string(),
    ];
    for f in formulas {
        row.push(
            scores
                .iter()
                .find(|s| s.formula == *f)
                .map(|s| format_score(s.value))
                .unwrap_or_default(),
        );
    }
    row
}

pub fn to_csv(report: &CorpusReport, formulas: &[FormulaId]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(csv_header(formulas)).expect("in-memory csv");
    for DocumentResult {
        doc_id,
        features,
        scores,
        ..
    } in &report.per_document
    {
        w.write_record(csv_row(doc_id, features, scores, formulas))
            .expect("in-memory csv");
    }
    w.write_record(csv_row(
        AGGREGATE_ROW,
        &report.aggregate,
        &report.aggregate_scores,
        formulas,
    ))
    .expect("in-memory csv");
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

pub fn render(report: &CorpusReport, formulas: &[FormulaId], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(report),
        ReportFormat::Csv => to_csv(report, formulas),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::executor::{run, Backend, PipelineConfig};
    use crate::lingproc::{LanguageProfile, StopWordList};
    use crate::synth::synthetic_corpus;

    fn report() -> (CorpusReport, Vec<FormulaId>) {
        let tr = LanguageProfile::turkish();
        let stop = StopWordList::builtin(&tr);
        let formulas = vec![FormulaId::Atesman, FormulaId::FleschReadingEase, FormulaId::Smog];
        let cfg = PipelineConfig::new(tr, stop, formulas.clone(), None).unwrap();
        let mut r = run(&synthetic_corpus(4, 800, 3), &cfg, &Backend::Sequential).unwrap();
        r.run_meta.wall_time_secs = None;
        (r, formulas)
    }

    #[test]
    fn two_decimal_scores() {
        assert_eq!(format_score(4.0), "4.00");
        assert_eq!(format_score(75.890253), "75.89");
        let (r, _) = report();
        let json = to_json(&r);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let first = &v["per_document"][0]["scores"][0];
        assert_eq!(first["formula"], "atesman");
        let raw = json.split("\"value\": ").nth(1).unwrap();
        let number: String = raw.chars().take_while(|c| *c != ',' && *c != '\n').collect();
        assert_eq!(number.split('.').nth(1).unwrap().len(), 2, "{number}");
    }

    #[test]
    fn csv_shape() {
        let (r, formulas) = report();
        let csv = to_csv(&r, &formulas);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "doc_id,word_count,sentence_count,syllable_count,distinct_words,hard_words,atesman,flesch_reading_ease,smog"
        );
        assert_eq!(lines.len(), 1 + 4 + 1);
        assert!(lines[5].starts_with("AGGREGATE,"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let (a, formulas) = report();
        let (b, _) = report();
        assert_eq!(to_json(&a), to_json(&b));
        assert_eq!(to_csv(&a, &formulas), to_csv(&b, &formulas));
    }
}
