use exact_oracle::{LemmaId, LemmaReport};
use null_sim::CalibrationReport;

/// One machine-readable line per verification result, stable key=value
/// fields so downstream tooling can grep a mixed log. Free-form text
/// (grids, failure descriptions) is kept out of these lines.
pub fn lemma_record(report: &LemmaReport) -> String {
    format!(
        "record kind=lemma id={} cases={} result={}",
        lemma_slug(report.lemma_id),
        report.cases_checked,
        if report.all_passed { "PASS" } else { "FAIL" }
    )
}

fn lemma_slug(id: LemmaId) -> &'static str {
    match id {
        LemmaId::Lemma1 => "lemma1",
        LemmaId::Lemma2 => "lemma2",
        LemmaId::Lemma3 => "lemma3",
        LemmaId::Theorem => "theorem",
        LemmaId::Factorization => "factorization",
    }
}

/// One line per threshold plus a trailing summary line.
pub fn calibration_records(report: &CalibrationReport) -> Vec<String> {
    let mut out = Vec::with_capacity(report.thresholds.len() + 1);
    for i in 0..report.thresholds.len() {
        let t = report.thresholds[i];
        let rate = report.empirical_rates[i];
        let band = report.binomial_3sigma[i];
        out.push(format!(
            "record kind=calibration threshold={t:e} rate={rate:e} band={band:e} result={}",
            if rate <= t + band { "PASS" } else { "FAIL" }
        ));
    }
    out.push(format!(
        "record kind=calibration-summary trials={} result={}",
        report.trials,
        if report.passed { "PASS" } else { "FAIL" }
    ));
    out
}
