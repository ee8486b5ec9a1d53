//! Facet enumeration and the fixed two-concept facet oracle.
//!
//! For small systems the complete irredundant set of facet-defining
//! inequalities is recovered directly from the vertex description:
//! enumerate affinely independent d-subsets of the 2^n vertices, fit the
//! unique hyperplane through each, keep supporting hyperplanes, and dedupe
//! up to positive scaling. The two-concept polytope additionally has its
//! four Bell-type inequalities hard-coded as an oracle that is independent
//! of both the enumeration and the LP membership path.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::polytope::{
    Caps, ConceptSystem, CorrelationVector, LinearInequality, PolytopeError, Vertex,
};
use crate::rational::{integer, Rational};

/// The four boundary inequalities of the two-concept polytope, in ambient
/// coordinates `(p1, p2, p12)`:
///
/// 1. `0 <= p12`
/// 2. `p12 <= p1`
/// 3. `p12 <= p2`
/// 4. `p1 + p2 - p12 <= 1`
pub fn concept_pair_facets() -> [LinearInequality; 4] {
    [
        LinearInequality::new(vec![integer(0), integer(0), integer(-1)], integer(0)),
        LinearInequality::new(vec![integer(-1), integer(0), integer(1)], integer(0)),
        LinearInequality::new(vec![integer(0), integer(-1), integer(1)], integer(0)),
        LinearInequality::new(vec![integer(1), integer(1), integer(-1)], integer(1)),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FacetStatus {
    Violated,
    Tight,
    Satisfied,
}

/// Outcome of evaluating one facet at a point. `slack` is
/// `bound - a . p`: negative exactly when violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetCheck {
    pub facet: LinearInequality,
    pub slack: Rational,
    pub status: FacetStatus,
}

/// Per-facet report for the two-concept system; the independent membership
/// oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetReport {
    pub checks: Vec<FacetCheck>,
}

impl FacetReport {
    pub fn is_inside(&self) -> bool {
        self.checks.iter().all(|c| c.status != FacetStatus::Violated)
    }

    pub fn is_on_boundary(&self) -> bool {
        self.is_inside() && self.checks.iter().any(|c| c.status == FacetStatus::Tight)
    }

    pub fn violated(&self) -> impl Iterator<Item = &FacetCheck> {
        self.checks
            .iter()
            .filter(|c| c.status == FacetStatus::Violated)
    }
}

/// Evaluates the four fixed two-concept inequalities exactly. Inside iff
/// none is violated.
pub fn facet_check_n2(point: &CorrelationVector) -> Result<FacetReport, PolytopeError> {
    if point.single_weights().len() != 2 || point.pair_weights().len() != 1 {
        return Err(PolytopeError::NotTwoConceptSystem);
    }
    let coords = point.coords();
    let checks = concept_pair_facets()
        .into_iter()
        .map(|facet| {
            let slack = facet.slack_at(&coords);
            let status = if slack.is_negative() {
                FacetStatus::Violated
            } else if slack.is_zero() {
                FacetStatus::Tight
            } else {
                FacetStatus::Satisfied
            };
            FacetCheck { facet, slack, status }
        })
        .collect();
    Ok(FacetReport { checks })
}

/// Complete, irredundant, canonically normalized facet set of the
/// correlation polytope, ordered lexicographically.
pub fn enumerate_facets(system: &ConceptSystem) -> Result<Vec<LinearInequality>, PolytopeError> {
    enumerate_facets_with_caps(system, &Caps::default())
}

pub fn enumerate_facets_with_caps(
    system: &ConceptSystem,
    caps: &Caps,
) -> Result<Vec<LinearInequality>, PolytopeError> {
    let n = system.num_concepts();
    if n > caps.max_facet_concepts {
        return Err(PolytopeError::FacetCapExceeded {
            n,
            cap: caps.max_facet_concepts,
        });
    }
    let d = system.dimension();
    let vertices: Vec<Vertex> = crate::polytope::generate_vertices_with_caps(system, caps)?;
    let coords: Vec<&[Rational]> = vertices.iter().map(|v| v.coords()).collect();

    if d == 0 {
        return Ok(Vec::new());
    }

    let mut found: BTreeSet<LinearInequality> = BTreeSet::new();
    let mut subset: Vec<usize> = Vec::with_capacity(d);
    enumerate_subsets(coords.len(), d, &mut subset, &mut |chosen| {
        let points: Vec<&[Rational]> = chosen.iter().map(|&i| coords[i]).collect();
        let Some(hyperplane) = hyperplane_through(&points) else {
            return;
        };
        let Some(oriented) = orient_supporting(hyperplane, &coords) else {
            return;
        };
        let tight: Vec<&[Rational]> = coords
            .iter()
            .copied()
            .filter(|c| oriented.is_tight_at(c))
            .collect();
        // A facet's tight vertex set must affinely span dimension d - 1.
        if affine_rank(&tight) != d - 1 {
            return;
        }
        found.insert(oriented.normalized_by_first_coefficient());
    });
    Ok(found.into_iter().collect())
}

fn enumerate_subsets(
    total: usize,
    size: usize,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if current.len() == size {
        visit(current);
        return;
    }
    let next_min = current.last().map_or(0, |&last| last + 1);
    let remaining = size - current.len();
    for candidate in next_min..=total.saturating_sub(remaining) {
        current.push(candidate);
        enumerate_subsets(total, size, current, visit);
        current.pop();
    }
}

/// The unique hyperplane `a . x = b` through `d` affinely independent
/// points in dimension `d`; `None` when the points are affinely dependent.
fn hyperplane_through(points: &[&[Rational]]) -> Option<LinearInequality> {
    let d = points.len();
    // Rows (x_i | -1) acting on the unknown (a | b).
    let mut matrix: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut row: Vec<Rational> = p.to_vec();
            row.push(integer(-1));
            row
        })
        .collect();
    let kernel = one_dimensional_kernel(&mut matrix, d + 1)?;
    let (coefficients, bound) = kernel.split_at(d);
    if coefficients.iter().all(|c| c.is_zero()) {
        return None;
    }
    Some(LinearInequality::new(
        coefficients.to_vec(),
        bound[0].clone(),
    ))
}

/// Gaussian elimination to a row-echelon form; returns a kernel vector if
/// the kernel is exactly one-dimensional.
fn one_dimensional_kernel(matrix: &mut [Vec<Rational>], cols: usize) -> Option<Vec<Rational>> {
    let rows = matrix.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(rank, pivot_row);
        let pivot = matrix[rank][col].clone();
        for v in matrix[rank].iter_mut() {
            *v /= &pivot;
        }
        let pivot_vals = matrix[rank].clone();
        for (r, row) in matrix.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_vals) {
                *v -= &factor * p;
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    if cols - rank != 1 {
        return None;
    }
    let free_col = (0..cols).find(|c| !pivot_cols.contains(c))?;
    let mut kernel = vec![Rational::zero(); cols];
    kernel[free_col] = Rational::one();
    for (&pc, row) in pivot_cols.iter().zip(matrix.iter()) {
        kernel[pc] = -row[free_col].clone();
    }
    Some(kernel)
}

/// Flips the hyperplane so every vertex satisfies `a . x <= b`; `None`
/// when vertices sit strictly on both sides.
fn orient_supporting(
    hyperplane: LinearInequality,
    vertices: &[&[Rational]],
) -> Option<LinearInequality> {
    let mut above = false;
    let mut below = false;
    for coords in vertices {
        let slack = hyperplane.slack_at(coords);
        if slack.is_negative() {
            above = true;
        } else if slack.is_positive() {
            below = true;
        }
        if above && below {
            return None;
        }
    }
    if above {
        Some(LinearInequality::new(
            hyperplane.coefficients.iter().map(|c| -c).collect(),
            -hyperplane.bound,
        ))
    } else {
        Some(hyperplane)
    }
}

/// Affine rank: the linear rank of the differences against the first
/// point.
fn affine_rank(points: &[&[Rational]]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    if rest.is_empty() {
        return 0;
    }
    let cols = first.len();
    let mut matrix: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| p.iter().zip(*first).map(|(a, b)| a - b).collect())
        .collect();
    let rows = matrix.len();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(rank, pivot_row);
        let pivot = matrix[rank][col].clone();
        for v in matrix[rank].iter_mut() {
            *v /= &pivot;
        }
        let pivot_vals = matrix[rank].clone();
        for (r, row) in matrix.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_vals) {
                *v -= &factor * p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_decimal, ratio};

    fn cv(p1: &str, p2: &str, p12: &str) -> CorrelationVector {
        CorrelationVector::concept_pair(
            parse_decimal(p1).unwrap(),
            parse_decimal(p2).unwrap(),
            parse_decimal(p12).unwrap(),
        )
    }

    fn canonical(set: &[LinearInequality]) -> BTreeSet<LinearInequality> {
        set.iter()
            .map(LinearInequality::normalized_by_first_coefficient)
            .collect()
    }

    #[test]
    fn concept_pair_enumeration_recovers_the_four_bell_inequalities() {
        let system = ConceptSystem::concept_pair();
        let enumerated = enumerate_facets(&system).unwrap();
        assert_eq!(enumerated.len(), 4);
        assert_eq!(
            canonical(&enumerated),
            canonical(&concept_pair_facets())
        );
    }

    #[test]
    fn unit_interval_facets() {
        let system = ConceptSystem::new(1, vec![]).unwrap();
        let enumerated = enumerate_facets(&system).unwrap();
        let expected = [
            LinearInequality::new(vec![integer(-1)], integer(0)),
            LinearInequality::new(vec![integer(1)], integer(1)),
        ];
        assert_eq!(canonical(&enumerated), canonical(&expected));
    }

    #[test]
    fn unit_square_facets_without_measured_pairs() {
        let system = ConceptSystem::new(2, vec![]).unwrap();
        let enumerated = enumerate_facets(&system).unwrap();
        assert_eq!(enumerated.len(), 4);
        let expected = [
            LinearInequality::new(vec![integer(-1), integer(0)], integer(0)),
            LinearInequality::new(vec![integer(1), integer(0)], integer(1)),
            LinearInequality::new(vec![integer(0), integer(-1)], integer(0)),
            LinearInequality::new(vec![integer(0), integer(1)], integer(1)),
        ];
        assert_eq!(canonical(&enumerated), canonical(&expected));
    }

    #[test]
    fn enumerated_facets_are_valid_and_tight_somewhere() {
        for system in [
            ConceptSystem::concept_pair(),
            ConceptSystem::new(3, vec![(1, 2)]).unwrap(),
            ConceptSystem::complete(3),
        ] {
            let facets = enumerate_facets(&system).unwrap();
            let vertices = crate::polytope::generate_vertices(&system).unwrap();
            for facet in &facets {
                assert!(facet.holds_on_all_vertices(&system));
                let tight = vertices
                    .iter()
                    .filter(|v| facet.is_tight_at(v.coords()))
                    .count();
                assert!(tight >= system.dimension());
            }
        }
    }

    #[test]
    fn complete_three_concept_polytope_has_the_triangle_facet() {
        let system = ConceptSystem::complete(3);
        let facets = enumerate_facets(&system).unwrap();
        // p1 + p2 + p3 - p12 - p13 - p23 <= 1 is the classic Bell-type
        // facet beyond the pairwise ones.
        let triangle = LinearInequality::new(
            vec![
                integer(1),
                integer(1),
                integer(1),
                integer(-1),
                integer(-1),
                integer(-1),
            ],
            integer(1),
        )
        .normalized_by_first_coefficient();
        assert!(facets.contains(&triangle));
    }

    #[test]
    fn facet_cap_is_enforced() {
        let system = ConceptSystem::new(5, vec![]).unwrap();
        assert!(matches!(
            enumerate_facets(&system),
            Err(PolytopeError::FacetCapExceeded { n: 5, cap: 4 })
        ));
    }

    #[test]
    fn cuckoo_violates_only_the_second_conjunct_facet() {
        let report = facet_check_n2(&cv("1", "0.575", "0.8421")).unwrap();
        assert!(!report.is_inside());
        let violated: Vec<_> = report.violated().collect();
        assert_eq!(violated.len(), 1);
        assert_eq!(violated[0].slack, parse_decimal("-0.2671").unwrap());
        assert_eq!(
            violated[0].facet.coefficients,
            vec![integer(0), integer(-1), integer(1)]
        );
    }

    #[test]
    fn house_is_tight_on_three_facets() {
        let report = facet_check_n2(&cv("1", "1", "1")).unwrap();
        assert!(report.is_inside());
        let tight = report
            .checks
            .iter()
            .filter(|c| c.status == FacetStatus::Tight)
            .count();
        assert_eq!(tight, 3);
    }

    #[test]
    fn independent_coins_satisfy_strictly() {
        let report = facet_check_n2(&cv("0.5", "0.5", "0.25")).unwrap();
        assert!(report.is_inside());
        assert!(report
            .checks
            .iter()
            .all(|c| c.status == FacetStatus::Satisfied));
        assert_eq!(report.checks[0].slack, ratio(1, 4));
    }

    #[test]
    fn facet_check_rejects_wrong_dimension() {
        let bad = CorrelationVector::new(vec![integer(1)], vec![]);
        assert!(matches!(
            facet_check_n2(&bad),
            Err(PolytopeError::NotTwoConceptSystem)
        ));
    }
}
