//! Pyramid decomposition volume of full-dimensional lattice polytopes.
//!
//! `vol_d(P) = Σ_F h_F · vol_{d-1}(F) / d` over facets `F` not containing a
//! fixed point `v_0 ∈ P`, where `h_F = b - a·v_0` is the lattice height for a
//! primitive normal `a`, and `vol_{d-1}(F)` is taken in the lattice
//! `{x ∈ Z^d : a·x = 0}`. Face volumes are memoized by their point sets.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hull::facets_dd;
use super::lattice::{dot, kernel_lattice};

/// Volume of `conv(points)` in the lattice `Z^d`; the points must affinely
/// span `R^d`.
pub fn polytope_volume(points: &[Vec<i64>], d: usize) -> BigRational {
    let ids: Vec<usize> = (0..points.len()).collect();
    let mut memo = HashMap::new();
    face_volume(points, &ids, d, &mut memo)
}

fn face_volume(
    points: &[Vec<i64>],
    ids: &[usize],
    d: usize,
    memo: &mut HashMap<Vec<usize>, BigRational>,
) -> BigRational {
    match d {
        0 => return BigRational::one(),
        1 => {
            let lo = points.iter().map(|p| p[0]).min().expect("nonempty face");
            let hi = points.iter().map(|p| p[0]).max().expect("nonempty face");
            return BigRational::from_integer(BigInt::from(hi - lo));
        }
        _ => {}
    }
    if let Some(v) = memo.get(ids) {
        return v.clone();
    }
    let v0 = &points[0];
    let mut total = BigRational::zero();
    for facet in facets_dd(points, d) {
        let height = facet.offset - dot(&facet.normal, v0);
        if height == 0 {
            continue;
        }
        let lattice = kernel_lattice(std::slice::from_ref(&facet.normal), d);
        let sub: Vec<Vec<i64>> = facet.tight.iter().map(|&i| lattice.coords(&points[i])).collect();
        let sub_ids: Vec<usize> = facet.tight.iter().map(|&i| ids[i]).collect();
        let vol = face_volume(&sub, &sub_ids, d - 1, memo);
        total += vol * BigRational::from_integer(BigInt::from(height));
    }
    let result = total / BigRational::from_integer(BigInt::from(d));
    memo.insert(ids.to_vec(), result.clone());
    result
}
