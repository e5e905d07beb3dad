//! Verdict reports: the JSON output shape and a line-oriented text
//! rendering. Identical decisions render byte-for-byte identically.

use serde::Serialize;
use wreath_core::decider::{GroupDecision, GroupEvidence, IdentityDecision, Stats};
use wreath_core::wreath::Word;

/// Top-level output record.
#[derive(Debug, Serialize)]
pub struct Report {
    pub problem: &'static str,
    pub verdict: bool,
    pub evidence: Evidence,
    pub stats: StatsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

/// Work counters of the decision.
#[derive(Debug, Serialize)]
pub struct StatsReport {
    pub candidates_tried: u64,
    pub cells_tested: u64,
    pub lp_calls: u64,
}

/// What settled the verdict. `kind` is one of `pairing`, `translations`,
/// `one-sided`, `exhausted`, `no-subset`; the optional fields fill in the
/// certificate where one exists.
#[derive(Debug, Serialize)]
pub struct Evidence {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combination: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<RejectedPairing>,
    /// Present when witness construction ran: the word's 0-based letters,
    /// or null when nothing within the degree bound worked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Option<Vec<usize>>>,
}

/// A pair set the pipeline rejected, with the condition that eliminated it.
#[derive(Debug, Serialize)]
pub struct RejectedPairing {
    pub pairs: Vec<(usize, usize)>,
    pub failed: String,
}

/// Summary of a brute-force cross-check.
#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub depth: usize,
    pub found: Option<Vec<usize>>,
    pub exhausted: bool,
    pub consistent: bool,
}

impl Evidence {
    fn bare(kind: &'static str) -> Self {
        Evidence {
            kind,
            subset: None,
            pairs: None,
            combination: None,
            rejected: Vec::new(),
            witness: None,
        }
    }
}

fn from_group_evidence(evidence: &GroupEvidence) -> Evidence {
    match evidence {
        GroupEvidence::OneSided => Evidence::bare("one-sided"),
        GroupEvidence::Translations { combination } => Evidence {
            combination: combination
                .as_ref()
                .map(|weights| weights.iter().map(|n| n.to_string()).collect()),
            ..Evidence::bare("translations")
        },
        GroupEvidence::Pairing { pairs, rejected } => Evidence {
            pairs: Some(pairs.clone()),
            rejected: rejected
                .iter()
                .map(|r| RejectedPairing {
                    pairs: r.pairs.clone(),
                    failed: r.failed.clone(),
                })
                .collect(),
            ..Evidence::bare("pairing")
        },
        GroupEvidence::Exhausted { rejected } => Evidence {
            rejected: rejected
                .iter()
                .map(|r| RejectedPairing {
                    pairs: r.pairs.clone(),
                    failed: r.failed.clone(),
                })
                .collect(),
            ..Evidence::bare("exhausted")
        },
    }
}

fn stats_report(stats: &Stats) -> StatsReport {
    StatsReport {
        candidates_tried: stats.candidates_tried,
        cells_tested: stats.cells_tested,
        lp_calls: stats.lp_calls,
    }
}

fn witness_letters(witness: Option<Option<&Word>>) -> Option<Option<Vec<usize>>> {
    witness.map(|word| word.map(|w| w.letters().to_vec()))
}

/// Report for a group decision. Pass `witness: Some(..)` when witness
/// construction ran.
pub fn group_report(
    decision: &GroupDecision,
    witness: Option<Option<&Word>>,
    oracle: Option<OracleReport>,
) -> Report {
    let mut evidence = from_group_evidence(&decision.evidence);
    evidence.witness = witness_letters(witness);
    Report {
        problem: "group",
        verdict: decision.is_group,
        evidence,
        stats: stats_report(&decision.stats),
        oracle,
    }
}

/// Report for an identity decision.
pub fn identity_report(
    decision: &IdentityDecision,
    witness: Option<Option<&Word>>,
    oracle: Option<OracleReport>,
) -> Report {
    let mut evidence = match (&decision.evidence, &decision.subset) {
        (Some(inner), Some(subset)) => {
            let mut evidence = from_group_evidence(inner);
            evidence.subset = Some(subset.clone());
            evidence
        }
        _ => Evidence::bare("no-subset"),
    };
    evidence.witness = witness_letters(witness);
    Report {
        problem: "identity",
        verdict: decision.contains_identity,
        evidence,
        stats: stats_report(&decision.stats),
        oracle,
    }
}

fn pairs_text(pairs: &[(usize, usize)]) -> String {
    let inner: Vec<String> = pairs.iter().map(|&(i, j)| format!("({i},{j})")).collect();
    format!("{{{}}}", inner.join(", "))
}

fn join_numbers<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Line-oriented rendering for `--format text`.
pub fn render_text(report: &Report) -> String {
    let mut lines = Vec::new();
    lines.push(format!("problem: {}", report.problem));
    lines.push(format!("verdict: {}", report.verdict));
    let evidence = &report.evidence;
    if let Some(subset) = &evidence.subset {
        lines.push(format!("subset: {}", join_numbers(subset)));
    }
    let summary = match evidence.kind {
        "pairing" => format!(
            "accepted pairing {}",
            pairs_text(evidence.pairs.as_deref().unwrap_or(&[]))
        ),
        "translations" => match &evidence.combination {
            Some(weights) => format!("translation weights {}", weights.join(" ")),
            None => "no vanishing translation combination".into(),
        },
        "one-sided" => "one-sided displacements".into(),
        "exhausted" => "every pairing rejected".into(),
        _ => "no subset generates a group".into(),
    };
    lines.push(format!("evidence: {summary}"));
    for rejected in &evidence.rejected {
        lines.push(format!(
            "rejected: {} failed {}",
            pairs_text(&rejected.pairs),
            rejected.failed
        ));
    }
    if let Some(witness) = &evidence.witness {
        match witness {
            Some(word) => lines.push(format!("witness: {}", join_numbers(word))),
            None => lines.push("witness: none within bound".into()),
        }
    }
    if let Some(oracle) = &report.oracle {
        let found = match &oracle.found {
            Some(word) => format!("found {}", join_numbers(word)),
            None => "nothing found".into(),
        };
        lines.push(format!(
            "oracle: {} to depth {}, {}",
            found,
            oracle.depth,
            if oracle.consistent {
                "consistent"
            } else {
                "INCONSISTENT"
            }
        ));
    }
    lines.push(format!(
        "stats: candidates_tried={} cells_tested={} lp_calls={}",
        report.stats.candidates_tried, report.stats.cells_tested, report.stats.lp_calls
    ));
    lines.join("\n") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use wreath_core::decider::decide_group;
    use wreath_core::polyring::{LaurentPoly, Rat};
    use wreath_core::wreath::{GeneratorSet, WreathElem};

    fn balanced_pair() -> GeneratorSet {
        GeneratorSet::new(vec![
            WreathElem::from_poly(LaurentPoly::constant(Rat::from_integer(1.into())), 1),
            WreathElem::from_poly(
                LaurentPoly::monomial(Rat::from_integer((-1).into()), -1),
                -1,
            ),
        ])
    }

    #[test]
    fn group_report_serializes_schema_keys() {
        let decision = decide_group(&balanced_pair()).unwrap();
        let report = group_report(&decision, None, None);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with(r#"{"problem":"group","verdict":true,"evidence":"#));
        assert!(json.contains(r#""pairs":[[0,1]]"#));
        assert!(json.contains(r#""stats":{"candidates_tried":1"#));
        assert!(!json.contains("oracle"));
        assert!(!json.contains("witness"));
    }

    #[test]
    fn text_rendering_is_line_oriented() {
        let decision = decide_group(&balanced_pair()).unwrap();
        let report = group_report(&decision, Some(None), None);
        let text = render_text(&report);
        assert!(text.contains("problem: group\nverdict: true\n"));
        assert!(text.contains("evidence: accepted pairing {(0,1)}"));
        assert!(text.contains("witness: none within bound"));
        assert!(text.ends_with('\n'));
    }
}
