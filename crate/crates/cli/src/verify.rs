//! Formula-versus-oracle verification of decompositions and volumes.

use std::fmt;

use matropoly_core::decomposition::{support_function, Family, SignedDecomposition};
use matropoly_core::SubsetMask;
use matropoly_core::geometry::{self, LatticeFrame, VertexSet};
use matropoly_core::volume::volume_signed_sum;
use matropoly_core::{GeometryError, Matroid};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::parse::serialize;
use crate::{decompose, formula_volume, Polytope};

/// Random directions per polytope for the support-function comparison.
pub const DIRECTIONS: usize = 100;

/// Geometric ground truth. The production implementation is
/// [`GeometricOracle`]; tests substitute deliberately broken ones.
pub trait Oracle {
    fn vertices(&self, m: &Matroid, polytope: Polytope) -> VertexSet;
    fn volume(&self, v: &VertexSet, frame: LatticeFrame) -> Result<BigRational, GeometryError>;
    fn minkowski_sum(&self, a: &VertexSet, b: &VertexSet) -> Result<VertexSet, GeometryError>;
}

pub struct GeometricOracle;

impl Oracle for GeometricOracle {
    fn vertices(&self, m: &Matroid, polytope: Polytope) -> VertexSet {
        match polytope {
            Polytope::Base => geometry::vertices_base(m),
            Polytope::Indep => geometry::vertices_indep(m),
            Polytope::Flag => geometry::vertices_flag(m),
        }
    }

    fn volume(&self, v: &VertexSet, frame: LatticeFrame) -> Result<BigRational, GeometryError> {
        geometry::volume_exact(v, frame)
    }

    fn minkowski_sum(&self, a: &VertexSet, b: &VertexSet) -> Result<VertexSet, GeometryError> {
        geometry::minkowski_sum_vertices(a, b)
    }
}

/// First disagreement found, with everything needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub name: String,
    pub matroid: Matroid,
    pub polytope: Polytope,
    pub check: String,
    pub formula: String,
    pub oracle: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "counterexample: {}", self.name)?;
        writeln!(f, "polytope: {}", self.polytope.name())?;
        writeln!(f, "check: {}", self.check)?;
        writeln!(f, "formula: {}", self.formula)?;
        writeln!(f, "oracle: {}", self.oracle)?;
        writeln!(f, "input:")?;
        for line in serialize(&self.matroid).lines() {
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Polytopes checked for `m`: all three, except the flag polytope of a
/// matroid with loops (not full-dimensional in its hyperplane).
pub fn polytopes_for(m: &Matroid) -> Vec<Polytope> {
    let mut out = vec![Polytope::Base, Polytope::Indep];
    if m.loops().is_empty() {
        out.push(Polytope::Flag);
    }
    out
}

fn seed_for(m: &Matroid, polytope: Polytope) -> u64 {
    // FNV-1a over the basis family, so directions depend only on the input
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |x: u64| {
        h ^= x;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    feed(m.n() as u64);
    feed(polytope as u64);
    for b in m.bases() {
        feed(u64::from(b.bits()));
    }
    h
}

fn frame_for(m: &Matroid, polytope: Polytope, v: &VertexSet) -> Option<LatticeFrame> {
    match polytope {
        Polytope::Base if m.is_connected() => Some(LatticeFrame::RootLattice),
        Polytope::Base => Some(LatticeFrame::AffineHull),
        Polytope::Indep if v.affine_dim() == m.n() => Some(LatticeFrame::StandardLattice),
        Polytope::Indep => None,
        Polytope::Flag => Some(LatticeFrame::RootLattice),
    }
}

fn simplex(n: usize, family: Family, set: SubsetMask, k: i64) -> VertexSet {
    match family {
        Family::Delta => VertexSet::scaled_simplex(n, set, k),
        Family::D => VertexSet::scaled_cone_simplex(n, set, k),
    }
}

fn sum_all(oracle: &dyn Oracle, start: VertexSet, d: &SignedDecomposition) -> Result<VertexSet, GeometryError> {
    d.terms().try_fold(start, |acc, (s, y)| {
        oracle.minkowski_sum(&acc, &simplex(d.n(), d.family(), s, y))
    })
}

fn render_points(v: &VertexSet) -> String {
    let pts: Vec<String> = v
        .points()
        .iter()
        .map(|p| format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    pts.join(" ")
}

/// A failed check before it is attached to a named matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub check: String,
    pub formula: String,
    pub oracle: String,
}

impl Mismatch {
    fn new(check: impl Into<String>, formula: impl ToString, oracle: impl ToString) -> Mismatch {
        Mismatch {
            check: check.into(),
            formula: formula.to_string(),
            oracle: oracle.to_string(),
        }
    }
}

/// Formula volume against the oracle's volume of the vertex set, plus the
/// generic signed-sum expansion of the decomposition where the polytope is
/// full-dimensional in its frame.
pub fn check_volume(m: &Matroid, polytope: Polytope, oracle: &dyn Oracle, threads: usize) -> Result<(), Mismatch> {
    let vertices = oracle.vertices(m, polytope);
    let formula = formula_volume(m, polytope, threads).map_err(|e| Mismatch::new("volume", e, "-"))?;
    let frame = frame_for(m, polytope, &vertices);
    let expected = match frame {
        Some(frame) => oracle
            .volume(&vertices, frame)
            .map_err(|e| Mismatch::new("volume", &formula, e))?,
        None => BigRational::zero(),
    };
    if formula != expected {
        return Err(Mismatch::new("volume", formula, expected));
    }
    if matches!(frame, Some(LatticeFrame::RootLattice) | Some(LatticeFrame::StandardLattice)) {
        let d = decompose(m, polytope);
        let signed = volume_signed_sum(&d, threads).map_err(|e| Mismatch::new("signed volume", e, "-"))?;
        if signed != expected {
            return Err(Mismatch::new("signed volume", signed, expected));
        }
    }
    Ok(())
}

/// `P + Σ_{y<0} |y| Q_I` and `Σ_{y>0} y Q_I` have the same vertices.
pub fn check_minkowski(m: &Matroid, polytope: Polytope, oracle: &dyn Oracle) -> Result<(), Mismatch> {
    let d = decompose(m, polytope);
    let vertices = oracle.vertices(m, polytope);
    let geometry_error = |e: GeometryError| Mismatch::new("minkowski", "-", e);
    let with_negative = sum_all(oracle, vertices, &d.negative_part()).map_err(geometry_error)?;
    let positive = sum_all(oracle, VertexSet::origin(m.n()), &d.positive_part()).map_err(geometry_error)?;
    if with_negative != positive {
        return Err(Mismatch::new(
            "minkowski",
            render_points(&positive),
            render_points(&with_negative),
        ));
    }
    Ok(())
}

/// Support function of the decomposition against the maximum over the
/// vertices, in [`DIRECTIONS`] seeded random integer directions.
pub fn check_support(m: &Matroid, polytope: Polytope, oracle: &dyn Oracle) -> Result<(), Mismatch> {
    let d = decompose(m, polytope);
    let vertices = oracle.vertices(m, polytope);
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(m, polytope));
    for _ in 0..DIRECTIONS {
        let w: Vec<i64> = (0..m.n()).map(|_| rng.gen_range(-10..=10)).collect();
        let h = support_function(&d, &w);
        let direct = BigRational::from_integer(BigInt::from(vertices.support(&w).expect("nonempty")));
        if h != direct {
            return Err(Mismatch::new(format!("support w={w:?}"), h, direct));
        }
    }
    Ok(())
}

/// Runs the volume, vertex-hull and support-function checks for one
/// polytope of `m`.
pub fn verify_polytope(
    name: &str,
    m: &Matroid,
    polytope: Polytope,
    oracle: &dyn Oracle,
    threads: usize,
) -> Result<(), Counterexample> {
    check_volume(m, polytope, oracle, threads)
        .and_then(|()| check_minkowski(m, polytope, oracle))
        .and_then(|()| check_support(m, polytope, oracle))
        .map_err(|e| Counterexample {
            name: name.to_string(),
            matroid: m.clone(),
            polytope,
            check: e.check,
            formula: e.formula,
            oracle: e.oracle,
        })
}

/// Verifies every applicable polytope of every matroid; returns the number
/// of polytopes checked.
pub fn verify_all<'a, I>(entries: I, oracle: &dyn Oracle, threads: usize) -> Result<usize, Counterexample>
where
    I: IntoIterator<Item = (&'a str, &'a Matroid)>,
{
    let mut checks = 0;
    for (name, m) in entries {
        for p in polytopes_for(m) {
            verify_polytope(name, m, p, oracle, threads)?;
            checks += 1;
        }
    }
    Ok(checks)
}
