//! Dataset-level classification reports and plot-data documents.
//!
//! Items are classified independently (and in parallel), but reports keep
//! dataset order, so output is deterministic regardless of scheduling.

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::dataset::{Dataset, ExpectedLabel, ItemRecord};
use crate::facets;
use crate::polytope::{
    self, ConceptSystem, LinearInequality, PolytopeError, SeparatingInequality,
};
use crate::rational::{format_fraction, format_significant, to_f64, Rational};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unknown pair id `{0}`")]
    UnknownPair(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// Classification of a single item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemClassification {
    pub pair_id: String,
    pub item_name: String,
    pub weights: [Rational; 3],
    pub inside: bool,
    pub on_boundary: Option<bool>,
    pub overextension: Rational,
    pub violation_magnitude: Rational,
    pub witness: Option<SeparatingInequality>,
    pub expected: Option<ExpectedLabel>,
    pub matched_expected: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationSummary {
    pub total: usize,
    pub inside_count: usize,
    pub outside_count: usize,
    /// `(pair_id, item_name)` of every item whose verdict disagrees with
    /// its expected label.
    pub mismatches: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub items: Vec<ItemClassification>,
    pub summary: ClassificationSummary,
}

/// Classifies every item of the dataset (optionally one pair only)
/// against the two-concept polytope.
pub fn classify_dataset(
    dataset: &Dataset,
    pair_filter: Option<&str>,
) -> Result<ClassificationReport, ReportError> {
    if let Some(pair_id) = pair_filter {
        if dataset.pair(pair_id).is_none() {
            return Err(ReportError::UnknownPair(pair_id.to_string()));
        }
    }
    let system = ConceptSystem::concept_pair();
    let selected: Vec<&ItemRecord> = dataset
        .items()
        .iter()
        .filter(|item| pair_filter.is_none_or(|p| item.pair_id == p))
        .collect();
    let items = selected
        .par_iter()
        .map(|item| classify_item(item, &system))
        .collect::<Result<Vec<_>, PolytopeError>>()?;

    let inside_count = items.iter().filter(|i| i.inside).count();
    let mismatches: Vec<(String, String)> = items
        .iter()
        .filter(|i| i.matched_expected == Some(false))
        .map(|i| (i.pair_id.clone(), i.item_name.clone()))
        .collect();
    let summary = ClassificationSummary {
        total: items.len(),
        inside_count,
        outside_count: items.len() - inside_count,
        mismatches,
    };
    Ok(ClassificationReport { items, summary })
}

fn classify_item(
    item: &ItemRecord,
    system: &ConceptSystem,
) -> Result<ItemClassification, PolytopeError> {
    let point = item.correlation_vector();
    let verdict = polytope::membership(&point, system)?;
    let overextension = polytope::overextension_degree(&point)?;
    let violation_magnitude = polytope::violation_magnitude(&point, system)?;
    let inside = verdict.is_inside();
    let matched_expected = item.expected_label.map(|label| match label {
        ExpectedLabel::Classical => inside,
        ExpectedLabel::NonClassical => !inside,
    });
    Ok(ItemClassification {
        pair_id: item.pair_id.clone(),
        item_name: item.item_name.clone(),
        weights: [
            item.mu_a1.clone(),
            item.mu_a2.clone(),
            item.mu_and.clone(),
        ],
        inside,
        on_boundary: verdict.on_boundary(),
        overextension,
        violation_magnitude,
        witness: verdict.witness().cloned(),
        expected: item.expected_label,
        matched_expected,
    })
}

/// Friendly name of a two-concept witness when it coincides with one of
/// the four canonical boundary inequalities.
pub fn witness_label(witness: &SeparatingInequality) -> String {
    let canonical = witness.inequality().normalized_by_first_coefficient();
    let named: [(LinearInequality, &str); 4] = {
        let [f1, f2, f3, f4] = facets::concept_pair_facets();
        [
            (f1, "0 <= p12"),
            (f2, "p12 <= p1"),
            (f3, "p12 <= p2"),
            (f4, "p1 + p2 - p12 <= 1"),
        ]
    };
    for (facet, label) in named {
        if facet.normalized_by_first_coefficient() == canonical {
            return label.to_string();
        }
    }
    witness
        .inequality()
        .render(&ConceptSystem::concept_pair())
}

fn rational_json(value: &Rational) -> Value {
    json!({
        "fraction": format_fraction(value),
        "decimal": to_f64(value),
    })
}

fn witness_json(witness: &SeparatingInequality) -> Value {
    json!({
        "coefficients": witness.coefficients.iter().map(rational_json).collect::<Vec<_>>(),
        "bound": rational_json(&witness.bound),
        "violation": rational_json(&witness.violation),
        "inequality": witness_label(witness),
    })
}

impl ClassificationReport {
    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .items
            .iter()
            .map(|item| {
                json!({
                    "pair_id": item.pair_id,
                    "item_name": item.item_name,
                    "weights": {
                        "mu_a1": rational_json(&item.weights[0]),
                        "mu_a2": rational_json(&item.weights[1]),
                        "mu_and": rational_json(&item.weights[2]),
                    },
                    "verdict": if item.inside { "inside" } else { "outside" },
                    "on_boundary": item.on_boundary,
                    "overextension": rational_json(&item.overextension),
                    "violation_magnitude": rational_json(&item.violation_magnitude),
                    "witness": item.witness.as_ref().map(witness_json),
                    "expected_label": item.expected.map(ExpectedLabel::code),
                    "matched_expected": item.matched_expected,
                })
            })
            .collect();
        json!({
            "schema": "corrpoly.classification/1",
            "summary": {
                "total": self.summary.total,
                "inside": self.summary.inside_count,
                "outside": self.summary.outside_count,
                "mismatches": self.summary.mismatches.iter()
                    .map(|(pair, item)| json!({"pair_id": pair, "item_name": item}))
                    .collect::<Vec<_>>(),
            },
            "items": items,
        })
    }

    /// Fixed-width table with weights at six significant digits.
    pub fn to_table(&self) -> String {
        let header = [
            "pair_id", "item_name", "mu_a1", "mu_a2", "mu_and", "verdict", "overext",
            "distance", "expected", "witness",
        ];
        let mut rows: Vec<[String; 10]> = Vec::with_capacity(self.items.len());
        for item in &self.items {
            let verdict = match (item.inside, item.on_boundary) {
                (true, Some(true)) => "inside (boundary)".to_string(),
                (true, _) => "inside".to_string(),
                (false, _) => "outside".to_string(),
            };
            let expected = match (item.expected, item.matched_expected) {
                (Some(label), Some(true)) => format!("{label} ok"),
                (Some(label), Some(false)) => format!("{label} MISMATCH"),
                _ => "-".to_string(),
            };
            rows.push([
                item.pair_id.clone(),
                item.item_name.clone(),
                format_significant(&item.weights[0], 6),
                format_significant(&item.weights[1], 6),
                format_significant(&item.weights[2], 6),
                verdict,
                format_significant(&item.overextension, 6),
                format_significant(&item.violation_magnitude, 6),
                expected,
                item.witness.as_ref().map_or("-".to_string(), witness_label),
            ]);
        }

        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let render_row = |cells: &[String]| -> String {
            cells
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };

        let mut out = String::new();
        out.push_str(&render_row(
            &header.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        ));
        out.push('\n');
        for row in &rows {
            out.push_str(&render_row(row));
            out.push('\n');
        }
        out.push('\n');
        out.push_str(&format!(
            "total: {}  inside: {}  outside: {}  mismatches: {}\n",
            self.summary.total,
            self.summary.inside_count,
            self.summary.outside_count,
            self.summary.mismatches.len()
        ));
        for (pair_id, item_name) in &self.summary.mismatches {
            out.push_str(&format!("mismatch: {pair_id} / {item_name}\n"));
        }
        out
    }
}

/// Plot-data document for one concept pair: the polytope vertices, its
/// edges as vertex index pairs, and the items as flagged points.
/// Coordinates carry both exact fractions and decimal approximations.
pub fn plot_data(dataset: &Dataset, pair_id: &str) -> Result<Value, ReportError> {
    let pair = dataset
        .pair(pair_id)
        .ok_or_else(|| ReportError::UnknownPair(pair_id.to_string()))?;
    let system = ConceptSystem::concept_pair();
    let vertices = polytope::generate_vertices(&system)?;
    let vertex_json: Vec<Value> = vertices
        .iter()
        .map(|v| {
            json!({
                "epsilon": v.epsilon_bits(),
                "fractions": v.coords().iter().map(format_fraction).collect::<Vec<_>>(),
                "decimals": v.coords().iter().map(to_f64).collect::<Vec<_>>(),
            })
        })
        .collect();
    // The two-concept polytope is a tetrahedron: every vertex pair is an
    // edge.
    let edges = json!([[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]);

    let report = classify_dataset(dataset, Some(pair_id))?;
    let items: Vec<Value> = report
        .items
        .iter()
        .map(|item| {
            json!({
                "item_name": item.item_name,
                "fractions": item.weights.iter().map(format_fraction).collect::<Vec<_>>(),
                "decimals": item.weights.iter().map(to_f64).collect::<Vec<_>>(),
                "inside": item.inside,
                "on_boundary": item.on_boundary,
            })
        })
        .collect();

    Ok(json!({
        "schema": "corrpoly.plotdata/1",
        "pair": {
            "pair_id": pair.pair_id,
            "name_a1": pair.name_a1,
            "name_a2": pair.name_a2,
            "name_conjunction": pair.name_conjunction,
        },
        "axes": system.coordinate_names(),
        "vertices": vertex_json,
        "edges": edges,
        "items": items,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn bundled_classification_reproduces_every_label() {
        let report = classify_dataset(Dataset::bundled(), None).unwrap();
        assert_eq!(report.summary.total, 96);
        assert_eq!(report.summary.inside_count, 21);
        assert_eq!(report.summary.outside_count, 75);
        assert!(report.summary.mismatches.is_empty());
        assert_eq!(
            report.summary.inside_count + report.summary.outside_count,
            report.summary.total
        );
    }

    #[test]
    fn pair_filter_selects_sixteen_items() {
        let report = classify_dataset(Dataset::bundled(), Some("bird_pet")).unwrap();
        assert_eq!(report.summary.total, 16);
        let cuckoo = report
            .items
            .iter()
            .find(|i| i.item_name == "Cuckoo")
            .unwrap();
        assert!(!cuckoo.inside);
        assert_eq!(witness_label(cuckoo.witness.as_ref().unwrap()), "p12 <= p2");
        assert_eq!(cuckoo.overextension, ratio(2671, 10_000));
    }

    #[test]
    fn unknown_pair_filter_errors() {
        assert!(matches!(
            classify_dataset(Dataset::bundled(), Some("fish_pet")),
            Err(ReportError::UnknownPair(_))
        ));
    }

    #[test]
    fn witnesses_in_reports_reverify() {
        let system = ConceptSystem::concept_pair();
        let report = classify_dataset(Dataset::bundled(), None).unwrap();
        for item in &report.items {
            if let Some(witness) = &item.witness {
                let point = crate::polytope::CorrelationVector::concept_pair(
                    item.weights[0].clone(),
                    item.weights[1].clone(),
                    item.weights[2].clone(),
                );
                assert!(witness.verify(&point, &system), "{}", item.item_name);
            } else {
                assert!(item.inside);
            }
        }
    }

    #[test]
    fn classification_is_deterministic() {
        let a = classify_dataset(Dataset::bundled(), None).unwrap();
        let b = classify_dataset(Dataset::bundled(), None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_table(), b.to_table());
        assert_eq!(
            serde_json::to_string(&a.to_json()).unwrap(),
            serde_json::to_string(&b.to_json()).unwrap()
        );
    }

    #[test]
    fn plot_data_document_shape() {
        let doc = plot_data(Dataset::bundled(), "building_dwelling").unwrap();
        let vertices = doc["vertices"].as_array().unwrap();
        assert_eq!(vertices.len(), 4);
        assert_eq!(vertices[0]["fractions"], json!(["0", "0", "0"]));
        assert_eq!(vertices[3]["fractions"], json!(["1", "1", "1"]));
        assert_eq!(doc["edges"].as_array().unwrap().len(), 6);
        let items = doc["items"].as_array().unwrap();
        assert_eq!(items.len(), 16);
        let inside = items.iter().filter(|i| i["inside"] == json!(true)).count();
        assert_eq!(inside, 6);
        assert!(matches!(
            plot_data(Dataset::bundled(), "missing"),
            Err(ReportError::UnknownPair(_))
        ));
    }
}
