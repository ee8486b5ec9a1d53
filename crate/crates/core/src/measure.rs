//! Finite normed measure spaces constructed from convex decompositions.
//!
//! An inside verdict is made concrete here: the sample space is the set of
//! 0/1 concept assignments, each carrying the decomposition weight as its
//! point mass, the event algebra is the full power set, and concept `i`
//! maps to the event of all assignments with `eps_i = 1`. By construction
//! the measure is nonnegative, additive, and totals one, and it reproduces
//! the measured weights exactly.

use num_traits::Zero;

use crate::polytope::{Caps, ConceptSystem, ConvexDecomposition, CorrelationVector, PolytopeError};
use crate::rational::Rational;

/// Discrete normed measure space over the assignments `{0,1}^n`.
/// `point_mass[mask]` is the weight of the assignment with bits `mask`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMeasureSpace {
    system: ConceptSystem,
    point_mass: Vec<Rational>,
}

/// Realizes a decomposition as a measure space: `Omega = {0,1}^n`,
/// `P(X) = sum of weights over X`, events `E_i = {eps : eps_i = 1}`.
/// The sample space is materialized with all `2^n` points, so the system
/// is subject to the concept cap.
pub fn build_measure_space(
    decomposition: &ConvexDecomposition,
    system: &ConceptSystem,
) -> Result<FiniteMeasureSpace, PolytopeError> {
    build_measure_space_with_caps(decomposition, system, &Caps::default())
}

pub fn build_measure_space_with_caps(
    decomposition: &ConvexDecomposition,
    system: &ConceptSystem,
    caps: &Caps,
) -> Result<FiniteMeasureSpace, PolytopeError> {
    if decomposition.num_concepts() != system.num_concepts() {
        return Err(PolytopeError::DimensionMismatch {
            got_single: decomposition.num_concepts(),
            got_pair: 0,
            want_single: system.num_concepts(),
            want_pair: system.pairs().len(),
        });
    }
    if system.num_concepts() > caps.max_concepts || system.num_concepts() >= 32 {
        return Err(PolytopeError::TooManyConcepts {
            n: system.num_concepts(),
            cap: caps.max_concepts,
        });
    }
    let size = 1usize << system.num_concepts();
    let point_mass = (0..size as u32)
        .map(|mask| decomposition.weight_of(mask))
        .collect();
    Ok(FiniteMeasureSpace {
        system: system.clone(),
        point_mass,
    })
}

impl FiniteMeasureSpace {
    pub fn system(&self) -> &ConceptSystem {
        &self.system
    }

    /// All sample points (assignment masks).
    pub fn sample_points(&self) -> impl Iterator<Item = u32> {
        0..self.point_mass.len() as u32
    }

    pub fn point_mass(&self, mask: u32) -> &Rational {
        &self.point_mass[mask as usize]
    }

    /// Measure of an arbitrary event given as a set of sample points.
    pub fn measure(&self, event: &[u32]) -> Rational {
        let mut seen = vec![false; self.point_mass.len()];
        let mut total = Rational::zero();
        for &mask in event {
            let idx = mask as usize;
            if idx < seen.len() && !seen[idx] {
                seen[idx] = true;
                total += &self.point_mass[idx];
            }
        }
        total
    }

    /// The event `E_i` of concept `i` (1-based): assignments with bit `i`
    /// set.
    pub fn concept_event(&self, concept: usize) -> Vec<u32> {
        self.sample_points()
            .filter(|mask| (mask >> (concept - 1)) & 1 == 1)
            .collect()
    }

    pub fn concept_measure(&self, concept: usize) -> Rational {
        self.measure(&self.concept_event(concept))
    }

    /// Measure of `E_i` intersected with `E_j`.
    pub fn conjunction_measure(&self, concept_i: usize, concept_j: usize) -> Rational {
        let event: Vec<u32> = self
            .sample_points()
            .filter(|mask| {
                (mask >> (concept_i - 1)) & 1 == 1 && (mask >> (concept_j - 1)) & 1 == 1
            })
            .collect();
        self.measure(&event)
    }

    pub fn total_measure(&self) -> Rational {
        self.point_mass.iter().sum()
    }

    /// The correlation vector the space induces: `P(E_i)` on singles,
    /// `P(E_i n E_j)` on measured pairs.
    pub fn induced_correlation_vector(&self) -> CorrelationVector {
        let single = (1..=self.system.num_concepts())
            .map(|i| self.concept_measure(i))
            .collect();
        let pair = self
            .system
            .pairs()
            .iter()
            .map(|&(i, j)| self.conjunction_measure(i, j))
            .collect();
        CorrelationVector::new(single, pair)
    }
}

/// True exactly when `P(E_i) = p_i` for every concept and
/// `P(E_i n E_j) = p_ij` for every measured pair, all equalities exact.
pub fn verify_measure_reproduces(space: &FiniteMeasureSpace, point: &CorrelationVector) -> bool {
    if point.single_weights().len() != space.system.num_concepts()
        || point.pair_weights().len() != space.system.pairs().len()
    {
        return false;
    }
    space.induced_correlation_vector() == *point
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{decompose, membership};
    use crate::rational::{integer, parse_decimal, ratio};
    use std::collections::BTreeMap;

    fn cv(p1: &str, p2: &str, p12: &str) -> CorrelationVector {
        CorrelationVector::concept_pair(
            parse_decimal(p1).unwrap(),
            parse_decimal(p2).unwrap(),
            parse_decimal(p12).unwrap(),
        )
    }

    #[test]
    fn castle_concentrates_on_the_full_assignment() {
        let system = ConceptSystem::concept_pair();
        let decomposition = decompose(&cv("1", "1", "1"), &system).unwrap();
        let space = build_measure_space(&decomposition, &system).unwrap();
        assert_eq!(space.concept_measure(1), integer(1));
        assert_eq!(space.concept_measure(2), integer(1));
        assert_eq!(space.conjunction_measure(1, 2), integer(1));
    }

    #[test]
    fn uniform_weights_give_independent_halves() {
        let system = ConceptSystem::concept_pair();
        let weights: BTreeMap<u32, Rational> =
            (0..4).map(|mask| (mask, ratio(1, 4))).collect();
        let decomposition = ConvexDecomposition::new(2, weights).unwrap();
        let space = build_measure_space(&decomposition, &system).unwrap();
        assert_eq!(space.concept_measure(1), ratio(1, 2));
        assert_eq!(space.concept_measure(2), ratio(1, 2));
        assert_eq!(space.conjunction_measure(1, 2), ratio(1, 4));
    }

    #[test]
    fn sailboat_space_reproduces_the_measured_weights() {
        let system = ConceptSystem::concept_pair();
        let point = cv("0.5641", "0.8", "0.4211");
        let decomposition = decompose(&point, &system).unwrap();
        let space = build_measure_space(&decomposition, &system).unwrap();
        assert_eq!(space.concept_measure(1), parse_decimal("0.5641").unwrap());
        assert_eq!(space.concept_measure(2), parse_decimal("0.8").unwrap());
        assert_eq!(
            space.conjunction_measure(1, 2),
            parse_decimal("0.4211").unwrap()
        );
        assert!(verify_measure_reproduces(&space, &point));
        // Mismatched data must be rejected.
        assert!(!verify_measure_reproduces(&space, &cv("0.9744", "0.3077", "0.5263")));
    }

    #[test]
    fn measure_axioms_hold() {
        let system = ConceptSystem::concept_pair();
        let decomposition = decompose(&cv("0.5641", "0.8", "0.4211"), &system).unwrap();
        let space = build_measure_space(&decomposition, &system).unwrap();
        // Empty event has measure zero; the whole space measures one.
        assert_eq!(space.measure(&[]), integer(0));
        assert_eq!(space.total_measure(), integer(1));
        // Additivity over a disjoint split of the sample space.
        let part_a = [0u32, 3];
        let part_b = [1u32, 2];
        assert_eq!(
            space.measure(&part_a) + space.measure(&part_b),
            integer(1)
        );
        // Duplicate listing of a sample point must not double-count.
        assert_eq!(space.measure(&[3, 3]), space.measure(&[3]));
    }

    #[test]
    fn induced_vector_of_any_space_is_inside() {
        let system = ConceptSystem::complete(3);
        let weights: BTreeMap<u32, Rational> = [
            (0b000u32, ratio(1, 8)),
            (0b101, ratio(3, 8)),
            (0b110, ratio(1, 2)),
        ]
        .into_iter()
        .collect();
        let decomposition = ConvexDecomposition::new(3, weights).unwrap();
        let space = build_measure_space(&decomposition, &system).unwrap();
        let induced = space.induced_correlation_vector();
        let verdict = membership(&induced, &system).unwrap();
        assert!(verdict.is_inside());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn decomposition(n: usize) -> impl Strategy<Value = ConvexDecomposition> {
            proptest::collection::vec(0i64..=100, 1usize << n).prop_map(move |raw| {
                let total: i64 = raw.iter().sum();
                let weights: BTreeMap<u32, Rational> = if total == 0 {
                    [(0u32, crate::rational::integer(1))].into_iter().collect()
                } else {
                    raw.iter()
                        .enumerate()
                        .map(|(mask, &w)| (mask as u32, ratio(w, total)))
                        .collect()
                };
                ConvexDecomposition::new(n, weights).unwrap()
            })
        }

        proptest! {
            // Round trip both ways: a decomposition's measure space
            // reproduces its recombined point exactly, and the induced
            // vector of any measure space classifies inside.
            #[test]
            fn measure_space_round_trip(decomposition in decomposition(3)) {
                let system = ConceptSystem::complete(3);
                let point = decomposition.recombine(&system);
                let space = build_measure_space(&decomposition, &system).unwrap();
                prop_assert!(verify_measure_reproduces(&space, &point));
                prop_assert_eq!(space.total_measure(), crate::rational::integer(1));
                let induced = space.induced_correlation_vector();
                prop_assert_eq!(&induced, &point);
                prop_assert!(membership(&induced, &system).unwrap().is_inside());
            }
        }
    }
}
