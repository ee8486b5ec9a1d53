//! Membership-weight dataset ingestion and the bundled reference data.
//!
//! Datasets arrive as two CSV files (UTF-8, comma-separated, exact
//! headers): a pairs file `pair_id,name_a1,name_a2,name_conjunction` and
//! an items file `pair_id,item_name,mu_a1,mu_a2,mu_and,expected_label`
//! with `expected_label` one of `q` (non-classical), `c` (classical), or
//! empty. Weights are plain decimal literals, parsed exactly; scientific
//! notation is rejected.
//!
//! The crate ships the membership weights measured by Hampton (1988,
//! experiment 4) for six concept pairs and 96 items, transcribed verbatim
//! from the published table: item names are preserved byte for byte
//! (including apparent typos such as `Palena`, `Bown` and `Course liner`)
//! and values keep their printed precision (e.g. Spoon's 0.752).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use num_traits::Signed;
use thiserror::Error;

use crate::polytope::CorrelationVector;
use crate::rational::{format_exact_decimal, parse_decimal, DecimalParseError, Rational};

pub const BUNDLED_PAIRS_CSV: &str = include_str!("../data/hampton_pairs.csv");
pub const BUNDLED_ITEMS_CSV: &str = include_str!("../data/hampton_items.csv");

const PAIRS_HEADER: [&str; 4] = ["pair_id", "name_a1", "name_a2", "name_conjunction"];
const ITEMS_HEADER: [&str; 6] = [
    "pair_id",
    "item_name",
    "mu_a1",
    "mu_a2",
    "mu_and",
    "expected_label",
];

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("expected header `{expected}`, found `{found}`")]
    BadHeader { expected: String, found: String },
    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount {
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: field `{field}` must not be empty")]
    EmptyField { line: u64, field: &'static str },
    #[error("line {line}: field `{field}`: {source}")]
    BadWeight {
        line: u64,
        field: &'static str,
        source: DecimalParseError,
    },
    #[error("line {line}: field `{field}` = {value} lies outside [0, 1]")]
    WeightOutOfRange {
        line: u64,
        field: &'static str,
        value: String,
    },
    #[error("line {line}: unknown expected_label `{text}` (use `q`, `c`, or empty)")]
    BadLabel { line: u64, text: String },
    #[error("line {line}: duplicate pair_id `{pair_id}`")]
    DuplicatePair { line: u64, pair_id: String },
    #[error("line {line}: duplicate item ({pair_id}, {item_name})")]
    DuplicateItem {
        line: u64,
        pair_id: String,
        item_name: String,
    },
    #[error("line {line}: unknown pair_id `{pair_id}`")]
    UnknownPair { line: u64, pair_id: String },
    #[error("weight {value} has no finite decimal representation")]
    NotDecimal { value: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Expected classification printed alongside each item: `q` marks
/// non-classical membership weights, `c` classical ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedLabel {
    Classical,
    NonClassical,
}

impl ExpectedLabel {
    pub fn code(self) -> &'static str {
        match self {
            ExpectedLabel::Classical => "c",
            ExpectedLabel::NonClassical => "q",
        }
    }

    fn parse(text: &str, line: u64) -> Result<Option<Self>, DatasetError> {
        match text {
            "" => Ok(None),
            "c" => Ok(Some(ExpectedLabel::Classical)),
            "q" => Ok(Some(ExpectedLabel::NonClassical)),
            other => Err(DatasetError::BadLabel {
                line,
                text: other.to_string(),
            }),
        }
    }
}

impl fmt::Display for ExpectedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptPair {
    pub pair_id: String,
    pub name_a1: String,
    pub name_a2: String,
    pub name_conjunction: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemRecord {
    pub pair_id: String,
    pub item_name: String,
    pub mu_a1: Rational,
    pub mu_a2: Rational,
    pub mu_and: Rational,
    pub expected_label: Option<ExpectedLabel>,
}

impl ItemRecord {
    /// The item's point `(mu_a1, mu_a2, mu_and)` in ambient coordinates.
    pub fn correlation_vector(&self) -> CorrelationVector {
        CorrelationVector::concept_pair(
            self.mu_a1.clone(),
            self.mu_a2.clone(),
            self.mu_and.clone(),
        )
    }
}

/// An ordered collection of concept pairs and item records; items keep
/// file order, which fixes the order of every report.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pairs: Vec<ConceptPair>,
    items: Vec<ItemRecord>,
}

impl Dataset {
    /// Parses and cross-validates the two-file dataset. Empty input text
    /// yields an empty section without error.
    pub fn parse(pairs_csv: &str, items_csv: &str) -> Result<Self, DatasetError> {
        let pairs = parse_pairs(pairs_csv)?;
        let known: BTreeSet<&str> = pairs.iter().map(|p| p.pair_id.as_str()).collect();
        let items = parse_items(items_csv, Some(&known))?;
        Ok(Self { pairs, items })
    }

    /// Parses an items file alone, deriving placeholder pairs from the
    /// pair ids in order of first appearance.
    pub fn parse_items_only(items_csv: &str) -> Result<Self, DatasetError> {
        let items = parse_items(items_csv, None)?;
        let mut pairs: Vec<ConceptPair> = Vec::new();
        for item in &items {
            if pairs.iter().all(|p| p.pair_id != item.pair_id) {
                pairs.push(ConceptPair {
                    pair_id: item.pair_id.clone(),
                    name_a1: item.pair_id.clone(),
                    name_a2: item.pair_id.clone(),
                    name_conjunction: item.pair_id.clone(),
                });
            }
        }
        Ok(Self { pairs, items })
    }

    /// The compiled-in reference dataset: 6 concept pairs, 96 items.
    pub fn bundled() -> &'static Dataset {
        static BUNDLED: OnceLock<Dataset> = OnceLock::new();
        BUNDLED.get_or_init(|| {
            Dataset::parse(BUNDLED_PAIRS_CSV, BUNDLED_ITEMS_CSV)
                .expect("bundled dataset must parse")
        })
    }

    pub fn pairs(&self) -> &[ConceptPair] {
        &self.pairs
    }

    pub fn items(&self) -> &[ItemRecord] {
        &self.items
    }

    pub fn pair(&self, pair_id: &str) -> Option<&ConceptPair> {
        self.pairs.iter().find(|p| p.pair_id == pair_id)
    }

    pub fn lookup(&self, pair_id: &str, item_name: &str) -> Option<&ItemRecord> {
        self.items
            .iter()
            .find(|i| i.pair_id == pair_id && i.item_name == item_name)
    }

    pub fn items_for_pair<'a>(&'a self, pair_id: &'a str) -> impl Iterator<Item = &'a ItemRecord> {
        self.items.iter().filter(move |i| i.pair_id == pair_id)
    }

    pub fn pairs_to_csv(&self) -> Result<String, DatasetError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(PAIRS_HEADER)?;
        for pair in &self.pairs {
            writer.write_record([
                &pair.pair_id,
                &pair.name_a1,
                &pair.name_a2,
                &pair.name_conjunction,
            ])?;
        }
        finish_csv(writer)
    }

    pub fn items_to_csv(&self) -> Result<String, DatasetError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(ITEMS_HEADER)?;
        for item in &self.items {
            let weight = |value: &Rational| {
                format_exact_decimal(value).ok_or_else(|| DatasetError::NotDecimal {
                    value: value.to_string(),
                })
            };
            writer.write_record([
                item.pair_id.as_str(),
                item.item_name.as_str(),
                &weight(&item.mu_a1)?,
                &weight(&item.mu_a2)?,
                &weight(&item.mu_and)?,
                item.expected_label.map_or("", ExpectedLabel::code),
            ])?;
        }
        finish_csv(writer)
    }
}

fn finish_csv(writer: csv::Writer<Vec<u8>>) -> Result<String, DatasetError> {
    let bytes = writer.into_inner().expect("flushing an in-memory writer");
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn check_header(
    reader: &mut csv::Reader<&[u8]>,
    expected: &[&str],
) -> Result<(), DatasetError> {
    let found = reader.headers()?;
    let found: Vec<&str> = found.iter().collect();
    if found != expected {
        return Err(DatasetError::BadHeader {
            expected: expected.join(","),
            found: found.join(","),
        });
    }
    Ok(())
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn require_nonempty(
    record: &csv::StringRecord,
    index: usize,
    field: &'static str,
) -> Result<String, DatasetError> {
    let value = record.get(index).unwrap_or_default();
    if value.is_empty() {
        return Err(DatasetError::EmptyField {
            line: record_line(record),
            field,
        });
    }
    Ok(value.to_string())
}

fn parse_weight(
    record: &csv::StringRecord,
    index: usize,
    field: &'static str,
) -> Result<Rational, DatasetError> {
    let line = record_line(record);
    let text = record.get(index).unwrap_or_default();
    let value = parse_decimal(text).map_err(|source| DatasetError::BadWeight {
        line,
        field,
        source,
    })?;
    if value.is_negative() || value > crate::rational::integer(1) {
        return Err(DatasetError::WeightOutOfRange {
            line,
            field,
            value: text.to_string(),
        });
    }
    Ok(value)
}

fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    // Flexible so that short rows surface as row-numbered field-count
    // diagnostics instead of opaque length errors.
    csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(text.as_bytes())
}

fn parse_pairs(text: &str) -> Result<Vec<ConceptPair>, DatasetError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut reader = csv_reader(text);
    check_header(&mut reader, &PAIRS_HEADER)?;
    let mut pairs: Vec<ConceptPair> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record_line(&record);
        if record.len() != PAIRS_HEADER.len() {
            return Err(DatasetError::FieldCount {
                line,
                expected: PAIRS_HEADER.len(),
                found: record.len(),
            });
        }
        let pair = ConceptPair {
            pair_id: require_nonempty(&record, 0, "pair_id")?,
            name_a1: require_nonempty(&record, 1, "name_a1")?,
            name_a2: require_nonempty(&record, 2, "name_a2")?,
            name_conjunction: require_nonempty(&record, 3, "name_conjunction")?,
        };
        if pairs.iter().any(|p| p.pair_id == pair.pair_id) {
            return Err(DatasetError::DuplicatePair {
                line,
                pair_id: pair.pair_id,
            });
        }
        pairs.push(pair);
    }
    Ok(pairs)
}

fn parse_items(
    text: &str,
    known_pairs: Option<&BTreeSet<&str>>,
) -> Result<Vec<ItemRecord>, DatasetError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut reader = csv_reader(text);
    check_header(&mut reader, &ITEMS_HEADER)?;
    let mut items: Vec<ItemRecord> = Vec::new();
    let mut keys: BTreeSet<(String, String)> = BTreeSet::new();
    for record in reader.records() {
        let record = record?;
        let line = record_line(&record);
        if record.len() != ITEMS_HEADER.len() {
            return Err(DatasetError::FieldCount {
                line,
                expected: ITEMS_HEADER.len(),
                found: record.len(),
            });
        }
        let pair_id = require_nonempty(&record, 0, "pair_id")?;
        let item_name = require_nonempty(&record, 1, "item_name")?;
        if let Some(known) = known_pairs {
            if !known.contains(pair_id.as_str()) {
                return Err(DatasetError::UnknownPair { line, pair_id });
            }
        }
        if !keys.insert((pair_id.clone(), item_name.clone())) {
            return Err(DatasetError::DuplicateItem {
                line,
                pair_id,
                item_name,
            });
        }
        items.push(ItemRecord {
            mu_a1: parse_weight(&record, 2, "mu_a1")?,
            mu_a2: parse_weight(&record, 3, "mu_a2")?,
            mu_and: parse_weight(&record, 4, "mu_and")?,
            expected_label: ExpectedLabel::parse(record.get(5).unwrap_or_default(), line)?,
            pair_id,
            item_name,
        });
    }
    Ok(items)
}
