//! Brute-force geometry used to validate the formula engine: vertex sets,
//! exact hulls, lattice-normalized volumes and Minkowski sums.
//!
//! Everything is integer arithmetic. Points are first mapped to integer
//! coordinates of the lattice they affinely span, so hull and volume code
//! only ever sees full-dimensional input.

pub mod hull;
pub mod lattice;
mod volume;

use std::collections::BTreeSet;

use num_rational::BigRational;

use crate::error::GeometryError;
use crate::matroid::Matroid;
use crate::subset::SubsetMask;

pub use hull::RawFacet;
use lattice::{dot, rank, span_lattice, LatticeMap};

/// A finite set of distinct integer points in `Z^n`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    points: Vec<Vec<i64>>,
    affine_dim: usize,
}

impl VertexSet {
    pub fn new(n: usize, points: Vec<Vec<i64>>) -> Result<VertexSet, GeometryError> {
        if points.iter().any(|p| p.len() != n) {
            return Err(GeometryError::AmbientMismatch);
        }
        let points: Vec<Vec<i64>> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let affine_dim = match points.first() {
            None => 0,
            Some(base) => rank(&differences(&points, base)),
        };
        Ok(VertexSet { n, points, affine_dim })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    /// `max_{p} w·p`.
    pub fn support(&self, w: &[i64]) -> Option<i64> {
        self.points.iter().map(|p| dot(p, w)).max()
    }

    /// The single point `0 ∈ Z^n`.
    pub fn origin(n: usize) -> VertexSet {
        VertexSet {
            n,
            points: vec![vec![0; n]],
            affine_dim: 0,
        }
    }

    /// `k·Δ_I = conv{k e_i : i ∈ I}`.
    pub fn scaled_simplex(n: usize, set: SubsetMask, k: i64) -> VertexSet {
        let pts = set.elements().map(|i| scaled_unit(n, i, k)).collect();
        VertexSet::new(n, pts).expect("points have length n")
    }

    /// `k·D_I = conv{0, k e_i : i ∈ I}`.
    pub fn scaled_cone_simplex(n: usize, set: SubsetMask, k: i64) -> VertexSet {
        let mut pts: Vec<Vec<i64>> = set.elements().map(|i| scaled_unit(n, i, k)).collect();
        pts.push(vec![0; n]);
        VertexSet::new(n, pts).expect("points have length n")
    }
}

fn scaled_unit(n: usize, i: usize, k: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i - 1] = k;
    v
}

fn differences(points: &[Vec<i64>], base: &[i64]) -> Vec<Vec<i64>> {
    points
        .iter()
        .map(|p| p.iter().zip(base).map(|(x, b)| x - b).collect())
        .collect()
}

fn indicator(n: usize, s: SubsetMask) -> Vec<i64> {
    (1..=n).map(|i| i64::from(s.contains(i))).collect()
}

/// Indicator vectors of the bases.
pub fn vertices_base(m: &Matroid) -> VertexSet {
    let pts = m.bases().iter().map(|&b| indicator(m.n(), b)).collect();
    VertexSet::new(m.n(), pts).expect("points have length n")
}

/// Indicator vectors of the independent sets.
pub fn vertices_indep(m: &Matroid) -> VertexSet {
    let pts = SubsetMask::all(m.n())
        .filter(|&s| m.is_independent(s))
        .map(|s| indicator(m.n(), s))
        .collect();
    VertexSet::new(m.n(), pts).expect("points have length n")
}

/// `v = e_{B_1} + … + e_{B_r}` over all chains `B_1 ⊂ … ⊂ B_r` with `B_i` a
/// basis of the rank-`i` truncation, i.e. an independent set of size `i`.
pub fn vertices_flag(m: &Matroid) -> VertexSet {
    let n = m.n();
    let r = m.rank();
    let mut out = BTreeSet::new();
    let mut v = vec![0i64; n];
    flag_chains(m, SubsetMask::EMPTY, r, &mut v, &mut out);
    VertexSet::new(n, out.into_iter().collect()).expect("points have length n")
}

fn flag_chains(m: &Matroid, current: SubsetMask, r: usize, v: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
    let k = current.len();
    if k == r {
        out.insert(v.clone());
        return;
    }
    // the element added at step k+1 lies in B_{k+1}, …, B_r
    let weight = (r - k) as i64;
    for e in m.ground_set().difference(current).elements() {
        let next = current.with(e);
        if m.is_independent(next) {
            v[e - 1] += weight;
            flag_chains(m, next, r, v, out);
            v[e - 1] -= weight;
        }
    }
}

/// Lattice used to normalize volumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeFrame {
    /// Root lattice `e_1 - e_2, …, e_{n-1} - e_n` inside a hyperplane
    /// `Σ t_i = const`; the polytope must be `(n-1)`-dimensional.
    RootLattice,
    /// `Z^n`; the polytope must be `n`-dimensional.
    StandardLattice,
    /// `Z^n` intersected with the affine hull's direction space, any dimension.
    AffineHull,
}

/// Integer coordinates of every point in a lattice of full rank inside the
/// affine hull.
struct Chart {
    dim: usize,
    coords: Vec<Vec<i64>>,
    base: Vec<i64>,
    map: LatticeMap,
}

fn chart(v: &VertexSet) -> Chart {
    let base = v.points.first().cloned().unwrap_or_else(|| vec![0; v.n]);
    let diffs = differences(&v.points, &base);
    let map = span_lattice(&diffs, v.n);
    debug_assert_eq!(map.dim(), v.affine_dim);
    let coords = diffs.iter().map(|d| map.coords(d)).collect();
    Chart {
        dim: map.dim(),
        coords,
        base,
        map,
    }
}

/// Exact volume normalized by `frame`.
pub fn volume_exact(v: &VertexSet, frame: LatticeFrame) -> Result<BigRational, GeometryError> {
    if v.is_empty() {
        return Err(GeometryError::DegenerateInput);
    }
    let n = v.n;
    let base = &v.points[0];
    let (dim, coords) = match frame {
        LatticeFrame::StandardLattice => {
            if v.affine_dim != n {
                return Err(GeometryError::DimensionMismatch { expected: n, found: v.affine_dim });
            }
            (n, differences(&v.points, base))
        }
        LatticeFrame::RootLattice => {
            let expected = n.saturating_sub(1);
            if n == 0 || v.affine_dim != expected {
                return Err(GeometryError::DimensionMismatch { expected, found: v.affine_dim });
            }
            let sum: i64 = base.iter().sum();
            if v.points.iter().any(|p| p.iter().sum::<i64>() != sum) {
                return Err(GeometryError::NotInSumHyperplane);
            }
            // x = Σ c_i (e_i - e_{i+1})  ⇔  c_i = x_1 + … + x_i
            let coords = differences(&v.points, base)
                .into_iter()
                .map(|d| {
                    d[..expected]
                        .iter()
                        .scan(0i64, |s, x| {
                            *s += x;
                            Some(*s)
                        })
                        .collect()
                })
                .collect();
            (expected, coords)
        }
        LatticeFrame::AffineHull => {
            let c = chart(v);
            (c.dim, c.coords)
        }
    };
    Ok(volume::polytope_volume(&coords, dim))
}

/// A facet of a vertex set's hull, `normal·x ≤ offset` in ambient
/// coordinates. Normals are primitive integer covectors; for lower-dimensional
/// input they are representatives modulo the affine hull's equations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    /// Indices into `VertexSet::points` of the points on the facet.
    pub points: Vec<usize>,
}

fn ambient_facets(v: &VertexSet, exhaustive: bool) -> Result<Vec<Facet>, GeometryError> {
    if v.affine_dim == 0 {
        return Err(GeometryError::DegenerateInput);
    }
    let c = chart(v);
    let raw = if exhaustive {
        hull::facets_exhaustive(&c.coords, c.dim)
    } else {
        hull::facets_dd(&c.coords, c.dim)
    };
    let mut out: Vec<Facet> = raw
        .into_iter()
        .map(|f| {
            let normal = c.map.pull_back(&f.normal);
            let offset = f.offset + dot(&normal, &c.base);
            Facet {
                normal,
                offset,
                points: f.tight,
            }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Facets of the hull of `v` within its affine hull (double description).
pub fn hull_facets(v: &VertexSet) -> Result<Vec<Facet>, GeometryError> {
    ambient_facets(v, false)
}

/// [`hull_facets`] by exhaustive hyperplane enumeration.
pub fn hull_facets_exhaustive(v: &VertexSet) -> Result<Vec<Facet>, GeometryError> {
    ambient_facets(v, true)
}

/// The vertices of `conv(v)`: points whose tight facet normals have full rank.
pub fn hull_vertices(v: &VertexSet) -> VertexSet {
    if v.affine_dim == 0 {
        return v.clone();
    }
    let c = chart(v);
    let facets = hull::facets_dd(&c.coords, c.dim);
    let keep: Vec<Vec<i64>> = (0..v.len())
        .filter(|&i| {
            let tight: Vec<Vec<i64>> = facets
                .iter()
                .filter(|f| f.tight.binary_search(&i).is_ok())
                .map(|f| f.normal.clone())
                .collect();
            rank(&tight) == c.dim
        })
        .map(|i| v.points[i].clone())
        .collect();
    VertexSet::new(v.n, keep).expect("same ambient space")
}

/// Vertices of `V1 + V2`.
pub fn minkowski_sum_vertices(a: &VertexSet, b: &VertexSet) -> Result<VertexSet, GeometryError> {
    if a.n != b.n {
        return Err(GeometryError::AmbientMismatch);
    }
    let mut sums = BTreeSet::new();
    for p in &a.points {
        for q in &b.points {
            sums.insert(p.iter().zip(q).map(|(x, y)| x + y).collect::<Vec<i64>>());
        }
    }
    let all = VertexSet::new(a.n, sums.into_iter().collect())?;
    Ok(hull_vertices(&all))
}

/// Vertices of a Minkowski sum of several vertex sets; the empty sum is the
/// origin.
pub fn minkowski_sum_all<'a, I>(n: usize, parts: I) -> Result<VertexSet, GeometryError>
where
    I: IntoIterator<Item = &'a VertexSet>,
{
    parts
        .into_iter()
        .try_fold(VertexSet::origin(n), |acc, p| minkowski_sum_vertices(&acc, p))
}
