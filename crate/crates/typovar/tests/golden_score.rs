//! Scores of a ten-pair mini-suite, frozen from an independent implementation
//! that counts concordant pairs by enumeration.

use std::path::Path;

use typovar::score::score_files;

#[test]
fn golden_report() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/golden_score");
    let report = score_files(&dir.join("hyp.txt"), &dir.join("ref.txt")).unwrap();
    let golden: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    let close = |a: f64, key: &str| {
        let b = golden[key].as_f64().unwrap();
        assert!((a - b).abs() < 1e-9, "{key}: {a} vs {b}");
    };
    close(report.accuracy, "accuracy");
    close(report.bleu, "bleu");
    close(report.ribes, "ribes");
    assert_eq!(report.n_sentences as u64, golden["n_sentences"].as_u64().unwrap());
    let per = golden["per_sentence_ribes"].as_array().unwrap();
    assert_eq!(per.len(), report.per_sentence.len());
    for (a, b) in report.per_sentence.iter().zip(per) {
        assert!((a - b.as_f64().unwrap()).abs() < 1e-9, "{a} vs {b}");
    }
}
