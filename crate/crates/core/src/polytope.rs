//! Correlation-polytope geometry over exact rationals.
//!
//! A system of `n` concepts with a set `S` of measured conjunction pairs
//! induces a polytope in dimension `n + |S|`: the convex hull of the 2^n
//! vertices `u^eps` with `u_i = eps_i` and `u_ij = eps_i * eps_j`. A
//! correlation vector of measured weights admits a classical normed-measure
//! representation exactly when it lies inside that hull. Membership is
//! decided by exact LP feasibility over the 2^n vertex weights; an inside
//! point yields a convex decomposition, an outside point a separating
//! Bell-type inequality derived from the Farkas certificate.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::facets;
use crate::lp::{LinearProgram, LpStatus};
use crate::rational::{format_fraction, integer, Rational};

/// Size limits for the combinatorial operations. The membership program
/// has 2^n columns, so `max_concepts` is a hard cap; facet enumeration is
/// combinatorial in the ambient dimension and capped separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_concepts: usize,
    pub max_facet_concepts: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_concepts: 16,
            max_facet_concepts: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("invalid concept pair ({i}, {j}) for {n} concepts: need 1 <= i < j <= n")]
    InvalidPair { i: usize, j: usize, n: usize },
    #[error("duplicate concept pair ({i}, {j})")]
    DuplicatePair { i: usize, j: usize },
    #[error("{n} concepts exceed the configured cap of {cap} (the vertex set has 2^n members)")]
    TooManyConcepts { n: usize, cap: usize },
    #[error("facet enumeration for {n} concepts exceeds the configured cap of {cap}")]
    FacetCapExceeded { n: usize, cap: usize },
    #[error(
        "correlation vector has {got_single} single and {got_pair} pair weights, \
         expected {want_single} and {want_pair}"
    )]
    DimensionMismatch {
        got_single: usize,
        got_pair: usize,
        want_single: usize,
        want_pair: usize,
    },
    #[error("expected a two-concept system with the single pair (1, 2)")]
    NotTwoConceptSystem,
    #[error("decomposition weight for assignment {mask:#b} is negative")]
    NegativeWeight { mask: u32 },
    #[error("decomposition assignment {mask:#b} does not fit {n} concepts")]
    UnknownAssignment { mask: u32, n: usize },
    #[error("decomposition weights sum to {total}, expected exactly 1")]
    WeightsNotNormalized { total: String },
    #[error("point lies outside the polytope: {witness}")]
    OutsidePoint { witness: Box<SeparatingInequality> },
}

/// `n` concepts and the ordered set `S` of measured index pairs, `i < j`,
/// 1-based. Fixes the ambient dimension `n + |S|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptSystem {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl ConceptSystem {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self, PolytopeError> {
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j) in &pairs {
            if i < 1 || i >= j || j > n {
                return Err(PolytopeError::InvalidPair { i, j, n });
            }
            if !seen.insert((i, j)) {
                return Err(PolytopeError::DuplicatePair { i, j });
            }
        }
        Ok(Self { n, pairs })
    }

    /// The `n = 2`, `S = {(1,2)}` system used for concept-pair data.
    pub fn concept_pair() -> Self {
        Self {
            n: 2,
            pairs: vec![(1, 2)],
        }
    }

    /// All pairs `1 <= i < j <= n`.
    pub fn complete(n: usize) -> Self {
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                pairs.push((i, j));
            }
        }
        Self { n, pairs }
    }

    pub fn num_concepts(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Ambient dimension `n + |S|`.
    pub fn dimension(&self) -> usize {
        self.n + self.pairs.len()
    }

    pub fn is_concept_pair(&self) -> bool {
        self.n == 2 && self.pairs == [(1, 2)]
    }

    /// Coordinate names `p1..pn` followed by `p{i}{j}` per measured pair.
    pub fn coordinate_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..=self.n).map(|i| format!("p{i}")).collect();
        for &(i, j) in &self.pairs {
            if i <= 9 && j <= 9 {
                names.push(format!("p{i}{j}"));
            } else {
                names.push(format!("p{i}_{j}"));
            }
        }
        names
    }
}

/// Measured weights laid out as the ambient-space point
/// `(p_1..p_n, .., p_ij, ..)`, pair block ordered as in the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationVector {
    single: Vec<Rational>,
    pair: Vec<Rational>,
}

impl CorrelationVector {
    pub fn new(single: Vec<Rational>, pair: Vec<Rational>) -> Self {
        Self { single, pair }
    }

    /// Two-concept convenience: `(mu(A1), mu(A2), mu(A1 and A2))`.
    pub fn concept_pair(p1: Rational, p2: Rational, p12: Rational) -> Self {
        Self {
            single: vec![p1, p2],
            pair: vec![p12],
        }
    }

    pub fn single_weights(&self) -> &[Rational] {
        &self.single
    }

    pub fn pair_weights(&self) -> &[Rational] {
        &self.pair
    }

    /// Concatenated ambient coordinates.
    pub fn coords(&self) -> Vec<Rational> {
        self.single.iter().chain(&self.pair).cloned().collect()
    }

    pub fn dimension(&self) -> usize {
        self.single.len() + self.pair.len()
    }

    /// Ingestion-time validation; the geometric operations themselves
    /// accept arbitrary rational vectors.
    pub fn is_within_unit_range(&self) -> bool {
        let one = integer(1);
        self.single
            .iter()
            .chain(&self.pair)
            .all(|w| !w.is_negative() && *w <= one)
    }

    fn check_dimensions(&self, system: &ConceptSystem) -> Result<(), PolytopeError> {
        if self.single.len() != system.num_concepts() || self.pair.len() != system.pairs().len() {
            return Err(PolytopeError::DimensionMismatch {
                got_single: self.single.len(),
                got_pair: self.pair.len(),
                want_single: system.num_concepts(),
                want_pair: system.pairs().len(),
            });
        }
        Ok(())
    }
}

/// One polytope vertex: the 0/1 concept assignment `eps` and its ambient
/// coordinates (`eps_i` on single coordinates, `eps_i * eps_j` on pairs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    epsilon: u32,
    n: usize,
    coords: Vec<Rational>,
}

impl Vertex {
    fn build(epsilon: u32, system: &ConceptSystem) -> Self {
        let bit = |i: usize| (epsilon >> (i - 1)) & 1; // concepts are 1-based
        let mut coords = Vec::with_capacity(system.dimension());
        for i in 1..=system.num_concepts() {
            coords.push(integer(bit(i) as i64));
        }
        for &(i, j) in system.pairs() {
            coords.push(integer((bit(i) * bit(j)) as i64));
        }
        Self {
            epsilon,
            n: system.num_concepts(),
            coords,
        }
    }

    /// The assignment as bits, index 0 holding `eps_1`.
    pub fn epsilon_bits(&self) -> Vec<u8> {
        (0..self.n).map(|i| ((self.epsilon >> i) & 1) as u8).collect()
    }

    pub fn epsilon_mask(&self) -> u32 {
        self.epsilon
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

/// Nonnegative vertex weights summing to one. Only nonzero weights are
/// stored; absent assignments carry weight zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexDecomposition {
    n: usize,
    weights: BTreeMap<u32, Rational>,
}

impl ConvexDecomposition {
    /// Validates nonnegativity and exact unit sum; zero weights are dropped.
    pub fn new(n: usize, weights: BTreeMap<u32, Rational>) -> Result<Self, PolytopeError> {
        let mut total = Rational::zero();
        let mut kept = BTreeMap::new();
        for (mask, weight) in weights {
            if n < 32 && mask >= (1u32 << n) {
                return Err(PolytopeError::UnknownAssignment { mask, n });
            }
            if weight.is_negative() {
                return Err(PolytopeError::NegativeWeight { mask });
            }
            total += &weight;
            if !weight.is_zero() {
                kept.insert(mask, weight);
            }
        }
        if total != integer(1) {
            return Err(PolytopeError::WeightsNotNormalized {
                total: format_fraction(&total),
            });
        }
        Ok(Self { n, weights: kept })
    }

    pub fn num_concepts(&self) -> usize {
        self.n
    }

    /// Weight of an assignment; zero when absent.
    pub fn weight_of(&self, epsilon: u32) -> Rational {
        self.weights.get(&epsilon).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero weights in ascending assignment order.
    pub fn nonzero_weights(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.weights.iter().map(|(&mask, w)| (mask, w))
    }

    /// Recombines the weighted vertices into an ambient point.
    pub fn recombine(&self, system: &ConceptSystem) -> CorrelationVector {
        let d = system.dimension();
        let mut coords = vec![Rational::zero(); d];
        for (&mask, weight) in &self.weights {
            let vertex = Vertex::build(mask, system);
            for (acc, c) in coords.iter_mut().zip(vertex.coords()) {
                *acc += weight * c;
            }
        }
        let n = system.num_concepts();
        CorrelationVector {
            single: coords[..n].to_vec(),
            pair: coords[n..].to_vec(),
        }
    }
}

/// A halfspace `coefficients . x <= bound` in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearInequality {
    pub coefficients: Vec<Rational>,
    pub bound: Rational,
}

impl LinearInequality {
    pub fn new(coefficients: Vec<Rational>, bound: Rational) -> Self {
        Self { coefficients, bound }
    }

    /// `coefficients . coords`.
    pub fn evaluate(&self, coords: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .zip(coords)
            .map(|(a, x)| a * x)
            .sum()
    }

    /// `bound - coefficients . coords`; negative when violated, zero when
    /// tight.
    pub fn slack_at(&self, coords: &[Rational]) -> Rational {
        &self.bound - self.evaluate(coords)
    }

    pub fn is_satisfied_at(&self, coords: &[Rational]) -> bool {
        !self.slack_at(coords).is_negative()
    }

    pub fn is_tight_at(&self, coords: &[Rational]) -> bool {
        self.slack_at(coords).is_zero()
    }

    /// Positive rescaling making the first nonzero coefficient have
    /// magnitude one: the canonical form for comparing facet sets.
    pub fn normalized_by_first_coefficient(&self) -> Self {
        match self.coefficients.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(first) => self.scaled_down_by(first.abs()),
        }
    }

    /// Positive rescaling making the largest coefficient magnitude one:
    /// the form used to report separating inequalities.
    pub fn normalized_by_max_coefficient(&self) -> Self {
        let max = self
            .coefficients
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        if max.is_zero() {
            return self.clone();
        }
        self.scaled_down_by(max)
    }

    fn scaled_down_by(&self, scale: Rational) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|c| c / &scale).collect(),
            bound: &self.bound / &scale,
        }
    }

    /// Exhaustive check that every vertex of the system satisfies the
    /// inequality.
    pub fn holds_on_all_vertices(&self, system: &ConceptSystem) -> bool {
        vertex_masks(system).all(|mask| {
            let vertex = Vertex::build(mask, system);
            self.is_satisfied_at(vertex.coords())
        })
    }

    /// Human-readable rendering over the system's coordinate names, e.g.
    /// `p1 + p2 - p12 <= 1`.
    pub fn render(&self, system: &ConceptSystem) -> String {
        let names = system.coordinate_names();
        let mut lhs = String::new();
        for (coeff, name) in self.coefficients.iter().zip(&names) {
            if coeff.is_zero() {
                continue;
            }
            let magnitude = coeff.abs();
            let sign = if coeff.is_negative() { "-" } else { "+" };
            if lhs.is_empty() {
                if sign == "-" {
                    lhs.push('-');
                }
            } else {
                lhs.push_str(&format!(" {sign} "));
            }
            if magnitude != integer(1) {
                lhs.push_str(&format!("{} ", format_fraction(&magnitude)));
            }
            lhs.push_str(name);
        }
        if lhs.is_empty() {
            lhs.push('0');
        }
        format!("{lhs} <= {}", format_fraction(&self.bound))
    }
}

/// A Bell-type inequality separating a point from the polytope: every
/// vertex satisfies `a . u <= b` while the point has `a . p = b +
/// violation` with `violation > 0`. Normalized so the largest coefficient
/// magnitude is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingInequality {
    pub coefficients: Vec<Rational>,
    pub bound: Rational,
    pub violation: Rational,
}

impl SeparatingInequality {
    pub fn inequality(&self) -> LinearInequality {
        LinearInequality::new(self.coefficients.clone(), self.bound.clone())
    }

    /// Re-verifies the witness: `<=` on all 2^n vertices, `>` on the point.
    pub fn verify(&self, point: &CorrelationVector, system: &ConceptSystem) -> bool {
        let ineq = self.inequality();
        if !ineq.holds_on_all_vertices(system) {
            return false;
        }
        let slack = ineq.slack_at(&point.coords());
        slack.is_negative() && -slack == self.violation
    }
}

impl fmt::Display for SeparatingInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.coefficients.iter().map(format_fraction).collect();
        write!(
            f,
            "[{}] . p <= {} violated by {}",
            coeffs.join(", "),
            format_fraction(&self.bound),
            format_fraction(&self.violation)
        )
    }
}

/// Membership outcome with its constructive certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipVerdict {
    Inside {
        /// Whether some facet is tight at the point; `None` when the
        /// system is beyond the facet-enumeration cap and tightness was
        /// not computed.
        on_boundary: Option<bool>,
        decomposition: ConvexDecomposition,
    },
    Outside {
        witness: SeparatingInequality,
    },
}

impl MembershipVerdict {
    pub fn is_inside(&self) -> bool {
        matches!(self, MembershipVerdict::Inside { .. })
    }

    pub fn on_boundary(&self) -> Option<bool> {
        match self {
            MembershipVerdict::Inside { on_boundary, .. } => *on_boundary,
            MembershipVerdict::Outside { .. } => None,
        }
    }

    pub fn decomposition(&self) -> Option<&ConvexDecomposition> {
        match self {
            MembershipVerdict::Inside { decomposition, .. } => Some(decomposition),
            MembershipVerdict::Outside { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&SeparatingInequality> {
        match self {
            MembershipVerdict::Inside { .. } => None,
            MembershipVerdict::Outside { witness } => Some(witness),
        }
    }
}

fn check_cap(system: &ConceptSystem, caps: &Caps) -> Result<(), PolytopeError> {
    if system.num_concepts() > caps.max_concepts || system.num_concepts() >= 32 {
        return Err(PolytopeError::TooManyConcepts {
            n: system.num_concepts(),
            cap: caps.max_concepts,
        });
    }
    Ok(())
}

pub(crate) fn vertex_masks(system: &ConceptSystem) -> impl Iterator<Item = u32> {
    0..(1u32 << system.num_concepts())
}

/// All 2^n vertices in ascending assignment order.
pub fn generate_vertices(system: &ConceptSystem) -> Result<Vec<Vertex>, PolytopeError> {
    generate_vertices_with_caps(system, &Caps::default())
}

pub fn generate_vertices_with_caps(
    system: &ConceptSystem,
    caps: &Caps,
) -> Result<Vec<Vertex>, PolytopeError> {
    check_cap(system, caps)?;
    Ok(vertex_masks(system)
        .map(|mask| Vertex::build(mask, system))
        .collect())
}

/// The membership feasibility program: one lambda per assignment,
/// constrained to recombine to `point` and sum to one.
fn membership_program(point: &CorrelationVector, system: &ConceptSystem) -> LinearProgram {
    let num_lambdas = 1usize << system.num_concepts();
    let d = system.dimension();
    let vertices: Vec<Vertex> = vertex_masks(system)
        .map(|mask| Vertex::build(mask, system))
        .collect();
    let mut lp = LinearProgram::new(num_lambdas, num_lambdas).expect("valid shape");
    debug_assert_eq!(point.coords().len(), d);
    for (k, target) in point.coords().iter().enumerate() {
        let row: Vec<Rational> = vertices.iter().map(|v| v.coords()[k].clone()).collect();
        lp.add_row(row, target.clone()).expect("row length");
    }
    lp.add_row(vec![integer(1); num_lambdas], integer(1))
        .expect("row length");
    lp
}

/// Decides whether `point` lies in the correlation polytope, returning a
/// convex decomposition (inside) or a Farkas-derived separating
/// inequality (outside).
pub fn membership(
    point: &CorrelationVector,
    system: &ConceptSystem,
) -> Result<MembershipVerdict, PolytopeError> {
    membership_with_caps(point, system, &Caps::default())
}

pub fn membership_with_caps(
    point: &CorrelationVector,
    system: &ConceptSystem,
    caps: &Caps,
) -> Result<MembershipVerdict, PolytopeError> {
    point.check_dimensions(system)?;
    check_cap(system, caps)?;
    let lp = membership_program(point, system);
    let outcome = lp.solve_feasibility();
    match outcome.status {
        LpStatus::Feasible => {
            let lambdas = outcome.solution.expect("feasible outcome carries a solution");
            let mut weights = BTreeMap::new();
            for (mask, weight) in vertex_masks(system).zip(lambdas) {
                weights.insert(mask, weight);
            }
            let decomposition = ConvexDecomposition::new(system.num_concepts(), weights)?;
            debug_assert_eq!(&decomposition.recombine(system), point);
            let on_boundary = if system.num_concepts() <= caps.max_facet_concepts {
                let facet_set = facets::enumerate_facets_with_caps(system, caps)?;
                let coords = point.coords();
                Some(facet_set.iter().any(|facet| facet.is_tight_at(&coords)))
            } else {
                None
            };
            Ok(MembershipVerdict::Inside {
                on_boundary,
                decomposition,
            })
        }
        LpStatus::Infeasible => {
            let certificate = outcome
                .certificate
                .expect("infeasible outcome carries a certificate");
            let witness = witness_from_certificate(&certificate.row_multipliers, point, system);
            debug_assert!(witness.verify(point, system), "unsound separating inequality");
            Ok(MembershipVerdict::Outside { witness })
        }
        LpStatus::Unbounded => unreachable!("feasibility solves never report unboundedness"),
    }
}

/// Converts Farkas multipliers `y` for the membership program into the
/// separating inequality `a . x <= b` with `a = y[..d]`, `b = -y[d]`,
/// then canonicalizes it: coefficients are zeroed greedily in index order
/// while the inequality keeps separating, the bound is tightened to the
/// polytope's support value, and the result is scaled so the largest
/// coefficient magnitude is one. Dual degeneracy (a point sitting on
/// extra tight constraints, e.g. `p1 = 1`) otherwise leaks arbitrary
/// tight-constraint multiples into the reported inequality.
fn witness_from_certificate(
    multipliers: &[Rational],
    point: &CorrelationVector,
    system: &ConceptSystem,
) -> SeparatingInequality {
    let d = system.dimension();
    debug_assert_eq!(multipliers.len(), d + 1);
    let vertex_coords: Vec<Vec<Rational>> = vertex_masks(system)
        .map(|mask| Vertex::build(mask, system).coords().to_vec())
        .collect();
    let support = |a: &[Rational]| -> Rational {
        vertex_coords
            .iter()
            .map(|u| a.iter().zip(u).map(|(ai, ui)| ai * ui).sum::<Rational>())
            .max()
            .expect("at least one vertex")
    };
    let point_coords = point.coords();
    let value_at_point =
        |a: &[Rational]| -> Rational { a.iter().zip(&point_coords).map(|(ai, pi)| ai * pi).sum() };

    let mut coefficients = multipliers[..d].to_vec();
    debug_assert!(value_at_point(&coefficients) > -multipliers[d].clone());
    for k in 0..d {
        if coefficients[k].is_zero() {
            continue;
        }
        let saved = std::mem::replace(&mut coefficients[k], Rational::zero());
        if value_at_point(&coefficients) <= support(&coefficients) {
            coefficients[k] = saved;
        }
    }
    let bound = support(&coefficients);
    let normalized =
        LinearInequality::new(coefficients, bound).normalized_by_max_coefficient();
    let violation = -normalized.slack_at(&point_coords);
    SeparatingInequality {
        coefficients: normalized.coefficients,
        bound: normalized.bound,
        violation,
    }
}

/// The convex decomposition of an inside point; outside points error with
/// the separating witness attached.
pub fn decompose(
    point: &CorrelationVector,
    system: &ConceptSystem,
) -> Result<ConvexDecomposition, PolytopeError> {
    decompose_with_caps(point, system, &Caps::default())
}

pub fn decompose_with_caps(
    point: &CorrelationVector,
    system: &ConceptSystem,
    caps: &Caps,
) -> Result<ConvexDecomposition, PolytopeError> {
    match membership_with_caps(point, system, caps)? {
        MembershipVerdict::Inside { decomposition, .. } => Ok(decomposition),
        MembershipVerdict::Outside { witness } => Err(PolytopeError::OutsidePoint {
            witness: Box::new(witness),
        }),
    }
}

/// Chebyshev (max-coordinate) distance from `point` to the polytope:
/// the minimum `t` admitting a decomposition within `t` of every
/// coordinate. Zero exactly on inside points.
pub fn violation_magnitude(
    point: &CorrelationVector,
    system: &ConceptSystem,
) -> Result<Rational, PolytopeError> {
    violation_magnitude_with_caps(point, system, &Caps::default())
}

pub fn violation_magnitude_with_caps(
    point: &CorrelationVector,
    system: &ConceptSystem,
    caps: &Caps,
) -> Result<Rational, PolytopeError> {
    point.check_dimensions(system)?;
    check_cap(system, caps)?;
    let num_lambdas = 1usize << system.num_concepts();
    let d = system.dimension();
    let vertices: Vec<Vertex> = vertex_masks(system)
        .map(|mask| Vertex::build(mask, system))
        .collect();

    // Variables: lambda (2^n), t, upper slacks (d), lower slacks (d).
    let num_vars = num_lambdas + 1 + 2 * d;
    let t_col = num_lambdas;
    let mut lp = LinearProgram::new(num_vars, num_vars).expect("valid shape");
    let coords = point.coords();
    for k in 0..d {
        // sum_eps lambda u_k - t + s_k = p_k    (q_k - p_k <= t)
        let mut row = vec![Rational::zero(); num_vars];
        for (col, v) in vertices.iter().enumerate() {
            row[col] = v.coords()[k].clone();
        }
        row[t_col] = integer(-1);
        row[num_lambdas + 1 + k] = integer(1);
        lp.add_row(row, coords[k].clone()).expect("row length");

        // -sum_eps lambda u_k - t + r_k = -p_k  (p_k - q_k <= t)
        let mut row = vec![Rational::zero(); num_vars];
        for (col, v) in vertices.iter().enumerate() {
            row[col] = -v.coords()[k].clone();
        }
        row[t_col] = integer(-1);
        row[num_lambdas + 1 + d + k] = integer(1);
        lp.add_row(row, -coords[k].clone()).expect("row length");
    }
    let mut unit_row = vec![Rational::zero(); num_vars];
    for cell in unit_row.iter_mut().take(num_lambdas) {
        *cell = integer(1);
    }
    lp.add_row(unit_row, integer(1)).expect("row length");

    let mut objective = vec![Rational::zero(); num_vars];
    objective[t_col] = integer(1);
    lp.set_objective(objective).expect("objective length");

    let outcome = lp.minimize().expect("objective was set");
    match outcome.status {
        LpStatus::Feasible => Ok(outcome.objective_value.expect("optimal value present")),
        // The program is always feasible (any vertex with large t) and
        // bounded below by zero.
        _ => unreachable!("distance program is feasible and bounded"),
    }
}

/// Overextension of a two-concept item: `max(p12 - p1, p12 - p2, 0)`.
/// Positive exactly when the conjunction weight exceeds a conjunct weight.
pub fn overextension_degree(point: &CorrelationVector) -> Result<Rational, PolytopeError> {
    if point.single.len() != 2 || point.pair.len() != 1 {
        return Err(PolytopeError::NotTwoConceptSystem);
    }
    let p12 = &point.pair[0];
    let excess_1 = p12 - &point.single[0];
    let excess_2 = p12 - &point.single[1];
    Ok(excess_1.max(excess_2).max(Rational::zero()))
}
