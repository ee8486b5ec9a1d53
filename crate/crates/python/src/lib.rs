//! Python bindings for the corrpoly analyzer.
//!
//! Exact values cross the boundary as strings: weights go in as plain
//! decimal literals (`"0.9744"`) or ints, results come back as canonical
//! fraction strings (`"609/625"`) that `fractions.Fraction` parses
//! directly. Floats are rejected on input — binary floating point cannot
//! represent the decimal data exactly, and verdicts here are exact.

use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use corrpoly::dataset::Dataset;
use corrpoly::facets;
use corrpoly::measure::build_measure_space;
use corrpoly::polytope::{self, ConceptSystem as CoreSystem, CorrelationVector, MembershipVerdict};
use corrpoly::rational::{format_fraction, parse_decimal, to_f64, Rational};
use corrpoly::report;

fn value_error(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// Accepts an int or a decimal string; anything else (floats in
/// particular) is a type error.
fn weight_from_py(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(text) = obj.extract::<String>() {
        return parse_decimal(&text).map_err(value_error);
    }
    if obj.extract::<f64>().is_ok() && obj.extract::<i64>().is_err() {
        return Err(PyTypeError::new_err(
            "weights must be decimal strings or ints, not floats \
             (floats cannot represent decimal data exactly)",
        ));
    }
    if let Ok(int) = obj.extract::<i64>() {
        return Ok(Rational::from_integer(int.into()));
    }
    Err(PyTypeError::new_err("weights must be decimal strings or ints"))
}

fn point_from_py(
    system: &CoreSystem,
    weights: &Bound<'_, PyList>,
) -> PyResult<CorrelationVector> {
    let n = system.num_concepts();
    let d = system.dimension();
    if weights.len() != d {
        return Err(PyValueError::new_err(format!(
            "expected {d} weights ({n} single + {} pair), got {}",
            d - n,
            weights.len()
        )));
    }
    let mut values = Vec::with_capacity(d);
    for item in weights.iter() {
        values.push(weight_from_py(&item)?);
    }
    let pair = values.split_off(n);
    Ok(CorrelationVector::new(values, pair))
}

/// Membership verdict with its constructive certificate.
#[pyclass(frozen)]
struct Verdict {
    inside: bool,
    on_boundary: Option<bool>,
    // (assignment bits, weight) per nonzero lambda
    decomposition: Option<Vec<(String, String)>>,
    // P(E_i) per concept, P(E_i n E_j) per measured pair
    measures: Option<(Vec<String>, Vec<String>)>,
    witness: Option<(Vec<String>, String, String, String)>,
}

#[pymethods]
impl Verdict {
    /// True when the weights admit a classical measure representation.
    #[getter]
    fn inside(&self) -> bool {
        self.inside
    }

    /// True when some facet is tight; None when tightness was not
    /// computed (system beyond the facet-enumeration cap).
    #[getter]
    fn on_boundary(&self) -> Option<bool> {
        self.on_boundary
    }

    /// Nonzero vertex weights as {assignment bits: fraction string},
    /// e.g. {"11": "4211/10000"}. None for outside points.
    #[getter]
    fn decomposition<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        match &self.decomposition {
            None => Ok(None),
            Some(entries) => {
                let dict = PyDict::new(py);
                for (bits, weight) in entries {
                    dict.set_item(bits, weight)?;
                }
                Ok(Some(dict))
            }
        }
    }

    /// The induced measure space as {"singles": [...], "pairs": [...]}
    /// fraction strings. None for outside points.
    #[getter]
    fn measure_space<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        match &self.measures {
            None => Ok(None),
            Some((singles, pairs)) => {
                let dict = PyDict::new(py);
                dict.set_item("singles", singles.clone())?;
                dict.set_item("pairs", pairs.clone())?;
                Ok(Some(dict))
            }
        }
    }

    /// The violated separating inequality as a dict with `coefficients`,
    /// `bound`, `violation` (fraction strings) and a rendered form. None
    /// for inside points.
    #[getter]
    fn witness<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        match &self.witness {
            None => Ok(None),
            Some((coefficients, bound, violation, rendered)) => {
                let dict = PyDict::new(py);
                dict.set_item("coefficients", coefficients.clone())?;
                dict.set_item("bound", bound)?;
                dict.set_item("violation", violation)?;
                dict.set_item("inequality", rendered)?;
                Ok(Some(dict))
            }
        }
    }

    fn __repr__(&self) -> String {
        match (&self.inside, &self.witness) {
            (true, _) => format!(
                "Verdict(inside=True, on_boundary={})",
                match self.on_boundary {
                    Some(true) => "True",
                    Some(false) => "False",
                    None => "None",
                }
            ),
            (false, Some((_, _, violation, rendered))) => {
                format!("Verdict(inside=False, violated='{rendered}', by={violation})")
            }
            (false, None) => "Verdict(inside=False)".to_string(),
        }
    }
}

fn verdict_to_py(
    verdict: &MembershipVerdict,
    system: &CoreSystem,
) -> PyResult<Verdict> {
    match verdict {
        MembershipVerdict::Inside {
            on_boundary,
            decomposition,
        } => {
            let n = system.num_concepts();
            let entries: Vec<(String, String)> = decomposition
                .nonzero_weights()
                .map(|(mask, weight)| {
                    let bits: String = (0..n)
                        .map(|i| if (mask >> i) & 1 == 1 { '1' } else { '0' })
                        .collect();
                    (bits, format_fraction(weight))
                })
                .collect();
            let space = build_measure_space(decomposition, system).map_err(value_error)?;
            let singles = (1..=n)
                .map(|i| format_fraction(&space.concept_measure(i)))
                .collect();
            let pairs = system
                .pairs()
                .iter()
                .map(|&(i, j)| format_fraction(&space.conjunction_measure(i, j)))
                .collect();
            Ok(Verdict {
                inside: true,
                on_boundary: *on_boundary,
                decomposition: Some(entries),
                measures: Some((singles, pairs)),
                witness: None,
            })
        }
        MembershipVerdict::Outside { witness } => Ok(Verdict {
            inside: false,
            on_boundary: None,
            decomposition: None,
            measures: None,
            witness: Some((
                witness.coefficients.iter().map(format_fraction).collect(),
                format_fraction(&witness.bound),
                format_fraction(&witness.violation),
                report::witness_label(witness),
            )),
        }),
    }
}

/// `n` concepts plus the measured pairs `S`; the home of every geometric
/// operation.
#[pyclass(frozen, name = "ConceptSystem")]
struct PyConceptSystem {
    inner: CoreSystem,
}

#[pymethods]
impl PyConceptSystem {
    /// Args: n (concept count), pairs (list of 1-based (i, j) with i < j;
    /// default: the single pair (1, 2) when n == 2, else no pairs).
    #[new]
    #[pyo3(signature = (n, pairs=None))]
    fn new(n: usize, pairs: Option<Vec<(usize, usize)>>) -> PyResult<Self> {
        let pairs = pairs.unwrap_or_else(|| if n == 2 { vec![(1, 2)] } else { Vec::new() });
        let inner = CoreSystem::new(n, pairs).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.num_concepts()
    }

    #[getter]
    fn pairs(&self) -> Vec<(usize, usize)> {
        self.inner.pairs().to_vec()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    /// The 2^n polytope vertices as dicts with `epsilon` bits and exact
    /// and float coordinates.
    fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let vertices = polytope::generate_vertices(&self.inner).map_err(value_error)?;
        vertices
            .iter()
            .map(|v| {
                let dict = PyDict::new(py);
                dict.set_item("epsilon", v.epsilon_bits())?;
                dict.set_item(
                    "fractions",
                    v.coords().iter().map(format_fraction).collect::<Vec<_>>(),
                )?;
                dict.set_item(
                    "decimals",
                    v.coords().iter().map(to_f64).collect::<Vec<_>>(),
                )?;
                Ok(dict)
            })
            .collect()
    }

    /// Decides membership for `weights`, laid out as the n single weights
    /// followed by one weight per measured pair.
    fn membership(&self, weights: &Bound<'_, PyList>) -> PyResult<Verdict> {
        let point = point_from_py(&self.inner, weights)?;
        let verdict = polytope::membership(&point, &self.inner).map_err(value_error)?;
        verdict_to_py(&verdict, &self.inner)
    }

    /// Convex decomposition of an inside point as {assignment bits:
    /// fraction string}; raises ValueError (carrying the violated
    /// inequality) for outside points.
    fn decompose<'py>(
        &self,
        py: Python<'py>,
        weights: &Bound<'_, PyList>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let point = point_from_py(&self.inner, weights)?;
        let decomposition = polytope::decompose(&point, &self.inner).map_err(value_error)?;
        let dict = PyDict::new(py);
        let n = self.inner.num_concepts();
        for (mask, weight) in decomposition.nonzero_weights() {
            let bits: String = (0..n)
                .map(|i| if (mask >> i) & 1 == 1 { '1' } else { '0' })
                .collect();
            dict.set_item(bits, format_fraction(weight))?;
        }
        Ok(dict)
    }

    /// The facet inequalities of the polytope (systems within the
    /// enumeration cap only).
    fn facets<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let facet_set = facets::enumerate_facets(&self.inner).map_err(value_error)?;
        facet_set
            .iter()
            .map(|facet| {
                let dict = PyDict::new(py);
                dict.set_item(
                    "coefficients",
                    facet.coefficients.iter().map(format_fraction).collect::<Vec<_>>(),
                )?;
                dict.set_item("bound", format_fraction(&facet.bound))?;
                dict.set_item("rendered", facet.render(&self.inner))?;
                Ok(dict)
            })
            .collect()
    }

    /// Chebyshev distance from the point to the polytope as a fraction
    /// string; "0" exactly when inside.
    fn violation_magnitude(&self, weights: &Bound<'_, PyList>) -> PyResult<String> {
        let point = point_from_py(&self.inner, weights)?;
        let distance =
            polytope::violation_magnitude(&point, &self.inner).map_err(value_error)?;
        Ok(format_fraction(&distance))
    }

    fn __repr__(&self) -> String {
        format!(
            "ConceptSystem(n={}, pairs={:?})",
            self.inner.num_concepts(),
            self.inner.pairs()
        )
    }
}

/// Parses a decimal literal and returns the canonical fraction string.
#[pyfunction]
fn parse_exact(text: &str) -> PyResult<String> {
    parse_decimal(text).map(|v| format_fraction(&v)).map_err(value_error)
}

/// `max(p12 - p1, p12 - p2, 0)` for a two-concept item, as a fraction
/// string.
#[pyfunction]
fn overextension_degree(
    p1: &Bound<'_, PyAny>,
    p2: &Bound<'_, PyAny>,
    p12: &Bound<'_, PyAny>,
) -> PyResult<String> {
    let point = CorrelationVector::concept_pair(
        weight_from_py(p1)?,
        weight_from_py(p2)?,
        weight_from_py(p12)?,
    );
    let degree = polytope::overextension_degree(&point).map_err(value_error)?;
    Ok(format_fraction(&degree))
}

/// Membership check for one two-concept item.
#[pyfunction]
fn check_concept_pair(
    p1: &Bound<'_, PyAny>,
    p2: &Bound<'_, PyAny>,
    p12: &Bound<'_, PyAny>,
) -> PyResult<Verdict> {
    let system = CoreSystem::concept_pair();
    let point = CorrelationVector::concept_pair(
        weight_from_py(p1)?,
        weight_from_py(p2)?,
        weight_from_py(p12)?,
    );
    let verdict = polytope::membership(&point, &system).map_err(value_error)?;
    verdict_to_py(&verdict, &system)
}

/// Classifies the bundled 96-item reference dataset; returns one dict per
/// item in dataset order.
#[pyfunction]
fn classify_bundled(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    let classified =
        report::classify_dataset(Dataset::bundled(), None).map_err(value_error)?;
    classified
        .items
        .iter()
        .map(|item| {
            let dict = PyDict::new(py);
            dict.set_item("pair_id", &item.pair_id)?;
            dict.set_item("item_name", &item.item_name)?;
            dict.set_item(
                "weights",
                item.weights.iter().map(format_fraction).collect::<Vec<_>>(),
            )?;
            dict.set_item("inside", item.inside)?;
            dict.set_item("on_boundary", item.on_boundary)?;
            dict.set_item("overextension", format_fraction(&item.overextension))?;
            dict.set_item(
                "violation_magnitude",
                format_fraction(&item.violation_magnitude),
            )?;
            dict.set_item(
                "expected_label",
                item.expected.map(corrpoly::ExpectedLabel::code),
            )?;
            dict.set_item("matched_expected", item.matched_expected)?;
            dict.set_item(
                "witness",
                item.witness.as_ref().map(report::witness_label),
            )?;
            Ok(dict)
        })
        .collect()
}

#[pymodule]
fn corrpoly_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyConceptSystem>()?;
    m.add_class::<Verdict>()?;
    m.add_function(wrap_pyfunction!(parse_exact, m)?)?;
    m.add_function(wrap_pyfunction!(overextension_degree, m)?)?;
    m.add_function(wrap_pyfunction!(check_concept_pair, m)?)?;
    m.add_function(wrap_pyfunction!(classify_bundled, m)?)?;
    Ok(())
}
