//! Signed Minkowski decompositions into simplices.
//!
//! A generalized permutohedron `P_n({z_I})` and a Q-polytope `Q_n({z_J})` are
//! both described by a profile `z` over the subsets of `[n]`. The profile is
//! related to the coefficients `y` of a signed sum of simplices by a zeta or
//! Möbius transform over the subset lattice:
//!
//! * GP:  `z_I = Σ_{J ⊆ I} y_J`, summands `Δ_J = conv{e_i : i ∈ J}`;
//! * Q:   `z_J = Σ_{I ∩ J ≠ ∅} y_I`, summands `D_J = conv{0, e_i : i ∈ J}`.
//!
//! Profiles derived from a matroid are tight, so the transforms recover the
//! geometric decomposition. Non-tight profiles are accepted as raw data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::DecompositionError;
use crate::invariants::{signed_beta, signed_gamma};
use crate::matroid::Matroid;
use crate::subset::SubsetMask;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    /// Generalized permutohedron.
    Gp,
    /// Q-polytope.
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `Δ_I = conv{e_i : i ∈ I}`
    Delta,
    /// `D_I = conv{0, e_i : i ∈ I}`
    D,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Delta => "Delta",
            Family::D => "D",
        }
    }
}

/// Dense profile over all subsets of `[n]`, indexed by subset bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZProfile {
    n: usize,
    kind: ProfileKind,
    values: Vec<i64>,
}

impl ZProfile {
    pub fn new(n: usize, kind: ProfileKind, values: Vec<i64>) -> Result<ZProfile, DecompositionError> {
        if values.len() != 1usize << n {
            return Err(DecompositionError::BadProfileLength { got: values.len(), n });
        }
        if values[0] != 0 {
            return Err(DecompositionError::NonzeroEmptyValue);
        }
        Ok(ZProfile { n, kind, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn value(&self, s: SubsetMask) -> i64 {
        self.values[s.index()]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

/// `Σ y_I Q_I` over a family of simplices. Keys are nonempty and zero
/// coefficients are never stored, so equality is literal map equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedDecomposition {
    n: usize,
    family: Family,
    coeffs: BTreeMap<SubsetMask, i64>,
}

impl SignedDecomposition {
    pub fn empty(n: usize, family: Family) -> Self {
        SignedDecomposition {
            n,
            family,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds from `(subset, coefficient)` pairs, summing repeats and
    /// dropping zeros. Coefficients on `∅` are discarded: both `Δ_∅` and
    /// `D_∅` are conventionally absent.
    pub fn from_terms<I>(n: usize, family: Family, terms: I) -> Self
    where
        I: IntoIterator<Item = (SubsetMask, i64)>,
    {
        let mut d = SignedDecomposition::empty(n, family);
        for (s, y) in terms {
            debug_assert!(s.is_subset_of(SubsetMask::full(n)));
            d.accumulate(s, y);
        }
        d
    }

    fn accumulate(&mut self, s: SubsetMask, y: i64) {
        if s.is_empty() || y == 0 {
            return;
        }
        let entry = self.coeffs.entry(s).or_insert(0);
        *entry += y;
        if *entry == 0 {
            self.coeffs.remove(&s);
        }
    }

    fn from_dense(n: usize, family: Family, dense: &[i64]) -> Self {
        let terms = dense
            .iter()
            .enumerate()
            .skip(1)
            .map(|(s, &y)| (SubsetMask(s as u32), y));
        SignedDecomposition::from_terms(n, family, terms)
    }

    fn to_dense(&self) -> Vec<i64> {
        let mut dense = vec![0i64; 1usize << self.n];
        for (s, y) in &self.coeffs {
            dense[s.index()] = *y;
        }
        dense
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn coeff(&self, s: SubsetMask) -> i64 {
        self.coeffs.get(&s).copied().unwrap_or(0)
    }

    /// Nonzero terms in (cardinality, bits) order.
    pub fn terms(&self) -> impl Iterator<Item = (SubsetMask, i64)> + '_ {
        self.coeffs.iter().map(|(s, y)| (*s, *y))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drops the summands that are single points (`Δ_{i}`), i.e. the
    /// decomposition up to translation. `D_{i}` is a segment and is kept.
    pub fn without_point_summands(&self) -> Self {
        if self.family == Family::D {
            return self.clone();
        }
        let terms = self.terms().filter(|(s, _)| s.len() > 1);
        SignedDecomposition::from_terms(self.n, self.family, terms)
    }

    pub fn scaled(&self, k: i64) -> Self {
        SignedDecomposition::from_terms(self.n, self.family, self.terms().map(|(s, y)| (s, k * y)))
    }

    /// Terms with positive coefficients.
    pub fn positive_part(&self) -> Self {
        SignedDecomposition::from_terms(self.n, self.family, self.terms().filter(|t| t.1 > 0))
    }

    /// Negated terms with negative coefficients, so every coefficient is positive.
    pub fn negative_part(&self) -> Self {
        SignedDecomposition::from_terms(
            self.n,
            self.family,
            self.terms().filter(|t| t.1 < 0).map(|(s, y)| (s, -y)),
        )
    }
}

/// Minkowski addition of two decompositions over the same family.
pub fn add(
    d1: &SignedDecomposition,
    d2: &SignedDecomposition,
) -> Result<SignedDecomposition, DecompositionError> {
    if d1.n != d2.n || d1.family != d2.family {
        return Err(DecompositionError::FamilyMismatch);
    }
    let mut out = d1.clone();
    for (s, y) in d2.terms() {
        out.accumulate(s, y);
    }
    Ok(out)
}

/// In-place subset-sum (zeta) transform: `f(S) ← Σ_{T ⊆ S} f(T)`.
pub fn zeta_transform(values: &mut [i64]) {
    let size = values.len();
    debug_assert!(size.is_power_of_two());
    let mut bit = 1;
    while bit < size {
        for s in 0..size {
            if s & bit != 0 {
                values[s] += values[s ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// In-place Möbius transform, the inverse of [`zeta_transform`].
pub fn mobius_transform(values: &mut [i64]) {
    let size = values.len();
    debug_assert!(size.is_power_of_two());
    let mut bit = 1;
    while bit < size {
        for s in 0..size {
            if s & bit != 0 {
                values[s] -= values[s ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// `z_I = r - r(E \ I)`: the tight GP profile of the matroid polytope.
pub fn z_from_matroid(m: &Matroid) -> ZProfile {
    let full = m.ground_set();
    let r = m.rank() as i64;
    let values = SubsetMask::all(m.n())
        .map(|s| r - m.rank_of(full.difference(s)) as i64)
        .collect();
    ZProfile {
        n: m.n(),
        kind: ProfileKind::Gp,
        values,
    }
}

/// `z_J = r(J)`: the tight Q profile of the independent set polytope.
pub fn q_profile_from_matroid(m: &Matroid) -> ZProfile {
    let values = SubsetMask::all(m.n()).map(|s| m.rank_of(s) as i64).collect();
    ZProfile {
        n: m.n(),
        kind: ProfileKind::Q,
        values,
    }
}

/// `y_I = Σ_{J ⊆ I} (-1)^{|I|-|J|} z_J`.
pub fn y_from_z_gp(z: &ZProfile) -> Result<SignedDecomposition, DecompositionError> {
    if z.kind != ProfileKind::Gp {
        return Err(DecompositionError::KindMismatch);
    }
    let mut dense = z.values.clone();
    mobius_transform(&mut dense);
    Ok(SignedDecomposition::from_dense(z.n, Family::Delta, &dense))
}

/// `z_I = Σ_{J ⊆ I} y_J`.
pub fn z_from_y_gp(d: &SignedDecomposition) -> Result<ZProfile, DecompositionError> {
    if d.family != Family::Delta {
        return Err(DecompositionError::KindMismatch);
    }
    let mut dense = d.to_dense();
    zeta_transform(&mut dense);
    Ok(ZProfile {
        n: d.n,
        kind: ProfileKind::Gp,
        values: dense,
    })
}

/// Inverts `z_J = Σ_{I ∩ J ≠ ∅} y_I` with `y_∅ = 0`. Equivalently
/// `y_J = -Σ_{I ⊆ J} (-1)^{|J|-|I|} z_{[n] \ I}` for nonempty `J`.
pub fn y_from_z_q(z: &ZProfile) -> Result<SignedDecomposition, DecompositionError> {
    if z.kind != ProfileKind::Q {
        return Err(DecompositionError::KindMismatch);
    }
    let size = 1usize << z.n;
    let full = size - 1;
    let top = z.values[full];
    // u_K = z_E - z_{E \ K} = Σ_{I ⊆ K} y_I
    let mut dense: Vec<i64> = (0..size).map(|k| top - z.values[full & !k]).collect();
    mobius_transform(&mut dense);
    Ok(SignedDecomposition::from_dense(z.n, Family::D, &dense))
}

/// `z_J = Σ_{I ∩ J ≠ ∅} y_I`.
pub fn z_from_y_q(d: &SignedDecomposition) -> Result<ZProfile, DecompositionError> {
    if d.family != Family::D {
        return Err(DecompositionError::KindMismatch);
    }
    let size = 1usize << d.n;
    let full = size - 1;
    let mut dense = d.to_dense();
    zeta_transform(&mut dense);
    let total = dense[full];
    let values = (0..size).map(|j| total - dense[full & !j]).collect();
    Ok(ZProfile {
        n: d.n,
        kind: ProfileKind::Q,
        values,
    })
}

/// `P_M = Σ_A β̃(M/A) Δ_{E \ A}`, summed over the coconnected flats `A`.
pub fn decompose_base_polytope(m: &Matroid) -> SignedDecomposition {
    beta_terms(m, Family::Delta)
}

/// `I_M = Σ_A β̃(M/A) D_{E \ A}`, summed over the coconnected flats `A`.
pub fn decompose_independent_polytope(m: &Matroid) -> SignedDecomposition {
    beta_terms(m, Family::D)
}

fn beta_terms(m: &Matroid, family: Family) -> SignedDecomposition {
    let full = m.ground_set();
    let terms = m
        .coconnected_flats()
        .into_iter()
        .map(|a| (full.difference(a), signed_beta(&m.contract(a))));
    SignedDecomposition::from_terms(m.n(), family, terms)
}

/// `P_{F(M)} = Σ_I γ̃(M/I) Δ_{E \ I}` for the truncation flag matroid of `M`.
pub fn decompose_truncation_flag(m: &Matroid) -> SignedDecomposition {
    let full = m.ground_set();
    let terms = SubsetMask::all(m.n())
        .filter(|i| *i != full)
        .map(|i| (full.difference(i), signed_gamma(&m.contract(i))));
    SignedDecomposition::from_terms(m.n(), Family::Delta, terms)
}

/// `h(w) = Σ_I y_I h_I(w)` with `h_I(w) = max_{i ∈ I} w_i` for `Δ_I` and
/// `max(0, max_{i ∈ I} w_i)` for `D_I`.
pub fn support_function(d: &SignedDecomposition, w: &[i64]) -> BigRational {
    assert_eq!(w.len(), d.n, "direction has wrong length");
    let mut total = BigInt::from(0);
    for (s, y) in d.terms() {
        let mut h = s.elements().map(|i| w[i - 1]).max().expect("keys are nonempty");
        if d.family == Family::D {
            h = h.max(0);
        }
        total += BigInt::from(y) * BigInt::from(h);
    }
    BigRational::from_integer(total)
}
