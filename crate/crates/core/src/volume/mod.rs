//! Exact volumes of matroid, independent set and truncation flag polytopes.
//!
//! Volumes of polytopes in the hyperplane `Σ t_i = const` are normalized so
//! that the standard simplex `Δ_{[n]}` has volume `1/(n-1)!`; full-dimensional
//! volumes use the standard lattice, so `D_{[n]}` has volume `1/n!`.
//!
//! The mixed volume of `n-1` faces `Δ_{[n]∖J_i}` is `1/(n-1)!` when the `J_i`
//! satisfy the dragon marriage condition and `0` otherwise; the mixed volume
//! of `n` simplices `D_{[n]∖J_i}` is `1/n!` when the complements have a
//! system of distinct representatives. Multilinearity extends to signed
//! Minkowski sums, so every volume here is a signed tuple sum over the
//! nonzero coefficients of a decomposition.

pub mod conditions;
pub mod enumerate;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use conditions::{
    dragon_marriage, dragon_marriage_by_intersections, has_sdr, sdr_condition,
    sdr_condition_by_intersections, ConditionMode, TupleCondition,
};
pub use enumerate::{ordered_terms, signed_tuple_sum, SupportTerm, TupleTerm};

use crate::decomposition::{Family, SignedDecomposition};
use crate::error::VolumeError;
use crate::invariants::{signed_beta, signed_gamma};
use crate::matroid::Matroid;
use crate::subset::SubsetMask;

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// Mixed volume of `Δ_{[n]∖J_1}, …, Δ_{[n]∖J_{n-1}}` (Delta family) or of
/// `D_{[n]∖J_1}, …, D_{[n]∖J_n}` (D family).
pub fn mixed_volume(family: Family, n: usize, j: &[SubsetMask]) -> Result<BigRational, VolumeError> {
    let condition = condition_for(family, n);
    if j.len() != condition.tuple_len() {
        return Err(VolumeError::DimensionMismatch {
            got: j.len(),
            expected: condition.tuple_len(),
        });
    }
    Ok(if condition.holds(j) {
        ratio(BigInt::one(), factorial(j.len()))
    } else {
        BigRational::zero()
    })
}

fn condition_for(family: Family, n: usize) -> TupleCondition {
    match family {
        Family::Delta => TupleCondition::dragon_marriage(n),
        Family::D => TupleCondition::sdr(n),
    }
}

/// `(1/L!) Σ_{tuples} Π w` with `L` the condition's tuple length.
fn tuple_volume(support: &[SupportTerm], condition: TupleCondition, threads: usize) -> BigRational {
    let length = condition.tuple_len();
    let total = signed_tuple_sum(support, condition, length, threads);
    ratio(total, factorial(length))
}

/// Coconnected flats of `m` with their signed beta invariants `β̃(M/A)`.
pub fn beta_support(m: &Matroid) -> Vec<SupportTerm> {
    m.coconnected_flats()
        .into_iter()
        .map(|a| SupportTerm {
            set: a,
            weight: signed_beta(&m.contract(a)),
        })
        .collect()
}

/// Sets `J ≠ E` with `γ̃(M/J) ≠ 0`, with those values.
pub fn gamma_support(m: &Matroid) -> Vec<SupportTerm> {
    let full = m.ground_set();
    let mut out: Vec<SupportTerm> = SubsetMask::all(m.n())
        .filter(|j| *j != full)
        .map(|j| SupportTerm {
            set: j,
            weight: signed_gamma(&m.contract(j)),
        })
        .filter(|t| t.weight != 0)
        .collect();
    out.sort_by_key(|t| t.set);
    out
}

/// Volume of the matroid polytope `P_M`.
///
/// Connected matroids use the dragon-marriage tuple sum over coconnected
/// flats, evaluated on whichever of `M` and `M*` has fewer of them (the two
/// polytopes are congruent). A disconnected matroid gives the product of its
/// components' volumes, the `(n-k)`-dimensional volume of `P_M`.
pub fn volume_base_polytope(m: &Matroid, threads: usize) -> BigRational {
    if !m.is_connected() {
        return m
            .components()
            .into_iter()
            .map(|c| m.restrict(c))
            .map(|c| {
                if c.n() == 1 {
                    BigRational::one()
                } else {
                    volume_base_connected(&c, threads)
                }
            })
            .fold(BigRational::one(), |acc, v| acc * v);
    }
    volume_base_connected(m, threads)
}

fn volume_base_connected(m: &Matroid, threads: usize) -> BigRational {
    let primal = beta_support(m);
    let dual = m.dual();
    let dual_support = beta_support(&dual);
    let support = if dual_support.len() < primal.len() {
        dual_support
    } else {
        primal
    };
    tuple_volume(&support, TupleCondition::dragon_marriage(m.n()), threads)
}

/// Volume of `P_M` evaluated on `M` itself, with no dual switch. Only
/// meaningful for connected `M`.
pub fn volume_base_polytope_direct(m: &Matroid, threads: usize) -> BigRational {
    tuple_volume(&beta_support(m), TupleCondition::dragon_marriage(m.n()), threads)
}

/// Volume of the independent set polytope `I_M` in the standard lattice.
///
/// Disconnected matroids give the product over components, since `I_M` is
/// the product of the components' polytopes; a loop contributes the point
/// `{0}` and makes the volume zero.
pub fn volume_independent_polytope(m: &Matroid, threads: usize) -> BigRational {
    if !m.is_connected() {
        return m
            .components()
            .into_iter()
            .map(|c| m.restrict(c))
            .map(|c| volume_independent_direct(&c, threads))
            .fold(BigRational::one(), |acc, v| acc * v);
    }
    volume_independent_direct(m, threads)
}

/// The SDR tuple sum applied to `M` as a whole, without splitting into
/// components.
pub fn volume_independent_direct(m: &Matroid, threads: usize) -> BigRational {
    tuple_volume(&beta_support(m), TupleCondition::sdr(m.n()), threads)
}

/// Volume of the truncation flag matroid polytope `P_{F(M)}`.
///
/// The tuple sum runs over all sets with nonzero signed gamma invariant of
/// the contraction, which need not be coconnected flats. The polytope is
/// `(n-1)`-dimensional exactly when `M` has no loops (its rank-one
/// truncation already contributes `Δ_E`), so loops are rejected.
pub fn volume_truncation_flag(m: &Matroid, threads: usize) -> Result<BigRational, VolumeError> {
    let loops = m.loops();
    if !loops.is_empty() {
        return Err(VolumeError::LoopsInFlagMatroid { loops });
    }
    Ok(tuple_volume(
        &gamma_support(m),
        TupleCondition::dragon_marriage(m.n()),
        threads,
    ))
}

/// Volume of an arbitrary signed Minkowski sum of `Δ_I`s (in the hyperplane,
/// tuples of length `n-1`) or of `D_I`s (full-dimensional, tuples of length `n`).
pub fn volume_signed_sum(d: &SignedDecomposition, threads: usize) -> Result<BigRational, VolumeError> {
    if d.n() == 0 {
        return Err(VolumeError::EmptyGroundSet);
    }
    let full = SubsetMask::full(d.n());
    let mut support: Vec<SupportTerm> = d
        .terms()
        .map(|(s, y)| SupportTerm {
            set: full.difference(s),
            weight: y,
        })
        .collect();
    support.sort_by_key(|t| t.set);
    Ok(tuple_volume(&support, condition_for(d.family(), d.n()), threads))
}

/// Volume of `P_M` together with the lattice-normalized integer `(n-1)!·Vol`.
pub fn orbit_degree(m: &Matroid) -> Result<(BigRational, BigInt), VolumeError> {
    if !m.is_connected() {
        return Err(VolumeError::DisconnectedMatroid);
    }
    let volume = volume_base_polytope(m, 1);
    let scaled = &volume * BigRational::from_integer(factorial(m.n() - 1));
    if !scaled.is_integer() {
        return Err(VolumeError::NonIntegerNormalizedVolume {
            volume: scaled.to_string(),
        });
    }
    Ok((volume, scaled.to_integer()))
}

/// Contributing ordered tuples grouped by the multiset of their set sizes,
/// listed in descending order (`[1, 1, 0]` stands for tuples `(a, b, ∅)` and
/// their permutations).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TermCensus {
    pub groups: BTreeMap<Vec<usize>, CensusGroup>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusGroup {
    pub tuples: u64,
    pub signed_total: i64,
}

impl TermCensus {
    pub fn from_terms(terms: &[TupleTerm]) -> Self {
        let mut census = TermCensus::default();
        for t in terms {
            let mut key: Vec<usize> = t.sets.iter().map(|s| s.len()).collect();
            key.sort_unstable_by(|a, b| b.cmp(a));
            let g = census.groups.entry(key).or_default();
            g.tuples += 1;
            g.signed_total += t.product;
        }
        census
    }

    pub fn total(&self) -> i64 {
        self.groups.values().map(|g| g.signed_total).sum()
    }
}

/// Contributing tuples of the `I_M` volume sum (instrumented; small `n` only).
pub fn independent_terms(m: &Matroid) -> Vec<TupleTerm> {
    ordered_terms(&beta_support(m), TupleCondition::sdr(m.n()), m.n())
}

/// Contributing tuples of the `P_{F(M)}` volume sum (instrumented; small `n` only).
pub fn flag_terms(m: &Matroid) -> Vec<TupleTerm> {
    let condition = TupleCondition::dragon_marriage(m.n());
    ordered_terms(&gamma_support(m), condition, condition.tuple_len())
}

/// Contributing tuples of the `P_M` volume sum on `M` itself (instrumented).
pub fn base_terms(m: &Matroid) -> Vec<TupleTerm> {
    let condition = TupleCondition::dragon_marriage(m.n());
    ordered_terms(&beta_support(m), condition, condition.tuple_len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::uniform;
    use crate::decomposition::{decompose_base_polytope, decompose_independent_polytope};

    fn set(e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn base_volumes() {
        assert_eq!(volume_base_polytope(&uniform(1, 3).unwrap(), 1), q(1, 2));
        assert_eq!(volume_base_polytope(&uniform(2, 3).unwrap(), 1), q(1, 2));
        assert_eq!(volume_base_polytope_direct(&uniform(2, 3).unwrap(), 1), q(1, 2));
        assert_eq!(volume_base_polytope(&uniform(2, 4).unwrap(), 1), q(2, 3));
    }

    #[test]
    fn independent_volumes() {
        assert_eq!(volume_independent_polytope(&uniform(2, 3).unwrap(), 1), q(5, 6));
        assert_eq!(volume_independent_polytope(&uniform(1, 1).unwrap(), 1), q(1, 1));
        assert_eq!(volume_independent_polytope(&uniform(1, 2).unwrap(), 1), q(1, 2));
        assert_eq!(volume_independent_polytope(&uniform(0, 2).unwrap(), 1), q(0, 1));
    }

    #[test]
    fn flag_volumes() {
        let m = Matroid::from_bases(3, [set(&[1, 2]), set(&[1, 3])]).unwrap();
        assert_eq!(volume_truncation_flag(&m, 1).unwrap(), q(3, 2));
        for n in 2..=5 {
            let v = volume_truncation_flag(&uniform(1, n).unwrap(), 1).unwrap();
            assert_eq!(v, ratio(BigInt::one(), factorial(n - 1)));
        }
        assert!(matches!(
            volume_truncation_flag(&uniform(0, 2).unwrap(), 1),
            Err(VolumeError::LoopsInFlagMatroid { .. })
        ));
    }

    #[test]
    fn signed_sum_volumes() {
        let u23 = uniform(2, 3).unwrap();
        assert_eq!(volume_signed_sum(&decompose_base_polytope(&u23), 1).unwrap(), q(1, 2));
        assert_eq!(volume_signed_sum(&decompose_independent_polytope(&u23), 1).unwrap(), q(5, 6));
        for n in 1..=6 {
            let d = SignedDecomposition::from_terms(n, Family::Delta, [(SubsetMask::full(n), 1)]);
            assert_eq!(
                volume_signed_sum(&d, 1).unwrap(),
                ratio(BigInt::one(), factorial(n - 1))
            );
        }
    }

    #[test]
    fn mixed_volume_checks_length() {
        assert!(matches!(
            mixed_volume(Family::Delta, 3, &[SubsetMask::EMPTY]),
            Err(VolumeError::DimensionMismatch { got: 1, expected: 2 })
        ));
        assert_eq!(
            mixed_volume(Family::Delta, 3, &[SubsetMask::EMPTY, SubsetMask::EMPTY]).unwrap(),
            q(1, 2)
        );
        assert_eq!(mixed_volume(Family::D, 2, &[set(&[1]), set(&[1])]).unwrap(), q(0, 1));
    }

    #[test]
    fn orbit_degrees() {
        assert_eq!(orbit_degree(&uniform(1, 3).unwrap()).unwrap(), (q(1, 2), BigInt::from(1)));
        assert_eq!(orbit_degree(&uniform(2, 4).unwrap()).unwrap(), (q(2, 3), BigInt::from(4)));
        let c = uniform(1, 1).unwrap();
        assert_eq!(
            orbit_degree(&c.direct_sum(&c).unwrap()),
            Err(VolumeError::DisconnectedMatroid)
        );
    }

    #[test]
    fn census_for_u23() {
        let census = TermCensus::from_terms(&independent_terms(&uniform(2, 3).unwrap()));
        let g = |k: &[usize]| census.groups[&k.to_vec()].clone();
        assert_eq!(g(&[1, 1, 1]), CensusGroup { tuples: 24, signed_total: 24 });
        assert_eq!(g(&[1, 1, 0]), CensusGroup { tuples: 27, signed_total: -27 });
        assert_eq!(g(&[1, 0, 0]), CensusGroup { tuples: 9, signed_total: 9 });
        assert_eq!(g(&[0, 0, 0]), CensusGroup { tuples: 1, signed_total: -1 });
        assert_eq!(census.total(), 5);
    }

    #[test]
    fn threads_do_not_change_results() {
        let m = uniform(3, 6).unwrap();
        let one = volume_independent_polytope(&m, 1);
        for t in [2, 3, 8] {
            assert_eq!(volume_independent_polytope(&m, t), one);
        }
    }
}
