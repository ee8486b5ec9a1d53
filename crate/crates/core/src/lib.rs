//! Exact-arithmetic analysis of concept-membership weights.
//!
//! Measured membership weights for concepts and their conjunctions admit a
//! classical normed-measure representation exactly when their correlation
//! vector lies in the correlation polytope spanned by the 0/1 concept
//! assignments. This crate decides that question over arbitrary-precision
//! rationals and produces constructive certificates either way: a convex
//! decomposition realized as a finite measure space for inside points, a
//! violated Bell-type inequality for outside points.
//!
//! Modules, bottom up:
//!
//! * [`rational`] — exact fractions and decimal parsing; nothing rounds.
//! * [`lp`] — equality-form simplex with Bland's rule and Farkas
//!   certificates.
//! * [`polytope`] — vertices, membership verdicts, decompositions,
//!   violation magnitude, overextension.
//! * [`measure`] — finite measure spaces built from decompositions.
//! * [`facets`] — facet enumeration and the fixed two-concept oracle.
//! * [`dataset`] — CSV ingestion plus the bundled 96-item reference data.
//! * [`report`] — dataset classification reports and plot-data documents.
//! * [`cli`] — the `corrpoly` command-line interface.

pub mod cli;
pub mod dataset;
pub mod facets;
pub mod lp;
pub mod measure;
pub mod polytope;
pub mod rational;
pub mod report;

pub use dataset::{ConceptPair, Dataset, ExpectedLabel, ItemRecord};
pub use facets::{facet_check_n2, enumerate_facets, FacetReport, FacetStatus};
pub use lp::{FarkasCertificate, LinearProgram, LpOutcome, LpStatus};
pub use measure::{build_measure_space, verify_measure_reproduces, FiniteMeasureSpace};
pub use polytope::{
    decompose, generate_vertices, membership, overextension_degree, violation_magnitude, Caps,
    ConceptSystem, ConvexDecomposition, CorrelationVector, LinearInequality, MembershipVerdict,
    PolytopeError, SeparatingInequality, Vertex,
};
pub use rational::{parse_decimal, Rational};
pub use report::{classify_dataset, plot_data, ClassificationReport};
