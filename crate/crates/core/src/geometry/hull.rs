//! Facets of full-dimensional integer point sets.
//!
//! The main route is the double description method on the cone of valid
//! inequalities `{(a, b) : a·p ≤ b for every point p}`, whose extreme rays
//! are exactly the facets. The exhaustive route tries every `d`-subset of
//! points as a hyperplane and is kept as an independent cross-check.

use num_integer::Integer;

use super::lattice::{dot, rank, rational_kernel};

/// `a·x ≤ b` with `a` primitive, and the indices of the points on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawFacet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub tight: Vec<usize>,
}

struct Ray {
    w: Vec<i64>,
    /// Processed constraints tight on the ray, as ascending insertion ranks.
    zeros: Vec<u32>,
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn primitive(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, x| g.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
    v
}

/// `(p, -1)`, the constraint vector of point `p`.
fn lift(p: &[i64]) -> Vec<i64> {
    let mut g = p.to_vec();
    g.push(-1);
    g
}

/// Processing order: farthest from the centroid first. Far points are likely
/// vertices, so interior points arrive once the hull is nearly complete and
/// only cost one dot product per ray.
fn insertion_order(points: &[Vec<i64>]) -> Vec<usize> {
    let k = points.len() as i128;
    let dim = points.first().map_or(0, |p| p.len());
    let sum: Vec<i128> = (0..dim).map(|j| points.iter().map(|p| p[j] as i128).sum()).collect();
    let spread = |p: &Vec<i64>| -> i128 {
        p.iter().zip(&sum).map(|(&x, &s)| (k * x as i128 - s).pow(2)).sum()
    };
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(spread(&points[i])), i));
    order
}

/// Indices of `d + 1` affinely independent points, greedily in `order`.
fn initial_simplex(points: &[Vec<i64>], order: &[usize], d: usize) -> Option<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for &i in order {
        let p = &points[i];
        let mut candidate = rows.clone();
        candidate.push(lift(p));
        if rank(&candidate) == candidate.len() {
            rows = candidate;
            chosen.push(i);
            if chosen.len() == d + 1 {
                return Some(chosen);
            }
        }
    }
    None
}

/// Facets of the convex hull of `points ⊂ Z^d`, which must affinely span
/// `R^d` with `d ≥ 1`. Sorted by `(normal, offset)`.
pub fn facets_dd(points: &[Vec<i64>], d: usize) -> Vec<RawFacet> {
    assert!(d >= 1, "hull needs positive dimension");
    let order = insertion_order(points);
    let simplex = initial_simplex(points, &order, d).expect("points are not full-dimensional");
    // seq[rank] = point index; the simplex comes first
    let seq: Vec<usize> = simplex
        .iter()
        .copied()
        .chain(order.iter().copied().filter(|i| !simplex.contains(i)))
        .collect();
    let gens: Vec<Vec<i64>> = seq.iter().map(|&i| lift(&points[i])).collect();

    let mut rays: Vec<Ray> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let others: Vec<Vec<i64>> = (0..=d).filter(|&j| j != k).map(|j| gens[j].clone()).collect();
        let mut w = rational_kernel(&others, d + 1).pop().expect("simplex facet");
        if dot(&gens[k], &w) > 0 {
            w.iter_mut().for_each(|x| *x = -*x);
        }
        let zeros = (0..=d as u32).filter(|&j| j as usize != k).collect();
        rays.push(Ray { w, zeros });
    }

    for rank in d + 1..gens.len() {
        let g = &gens[rank];
        let values: Vec<i64> = rays.iter().map(|r| dot(g, &r.w)).collect();
        if values.iter().all(|&v| v <= 0) {
            for (ray, &v) in rays.iter_mut().zip(&values) {
                if v == 0 {
                    ray.zeros.push(rank as u32);
                }
            }
            continue;
        }
        let negative: Vec<usize> = (0..rays.len()).filter(|&r| values[r] < 0).collect();
        // constraint rank -> positions in `negative` of the rays tight on it
        let mut holders: Vec<Vec<u32>> = vec![Vec::new(); rank];
        for (slot, &q) in negative.iter().enumerate() {
            for &j in &rays[q].zeros {
                holders[j as usize].push(slot as u32);
            }
        }
        let mut shared = vec![0u32; negative.len()];
        let mut touched: Vec<u32> = Vec::new();
        let mut created = Vec::new();
        for p in (0..rays.len()).filter(|&r| values[r] > 0) {
            for &j in &rays[p].zeros {
                for &slot in &holders[j as usize] {
                    if shared[slot as usize] == 0 {
                        touched.push(slot);
                    }
                    shared[slot as usize] += 1;
                }
            }
            for &slot in &touched {
                let enough = shared[slot as usize] as usize + 1 >= d;
                shared[slot as usize] = 0;
                if !enough {
                    continue;
                }
                let q = negative[slot as usize];
                let common = intersect_sorted(&rays[p].zeros, &rays[q].zeros);
                if !spans_ridge(&gens, &common, d) {
                    continue;
                }
                let (hp, hq) = (values[p] as i128, values[q] as i128);
                let w = primitive_wide(
                    rays[p]
                        .w
                        .iter()
                        .zip(&rays[q].w)
                        .map(|(&wp, &wq)| hp * wq as i128 - hq * wp as i128)
                        .collect(),
                );
                let mut zeros = common;
                zeros.push(rank as u32);
                created.push(Ray { w, zeros });
            }
            touched.clear();
            // d = 1: rays share no constraints, every pair is adjacent
            if d == 1 {
                for &q in &negative {
                    let (hp, hq) = (values[p] as i128, values[q] as i128);
                    let w = primitive_wide(
                        rays[p]
                            .w
                            .iter()
                            .zip(&rays[q].w)
                            .map(|(&wp, &wq)| hp * wq as i128 - hq * wp as i128)
                            .collect(),
                    );
                    created.push(Ray { w, zeros: vec![rank as u32] });
                }
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut ray, &v) in rays.into_iter().zip(&values) {
            match v.signum() {
                1 => {}
                0 => {
                    ray.zeros.push(rank as u32);
                    kept.push(ray);
                }
                _ => kept.push(ray),
            }
        }
        kept.extend(created);
        rays = kept;
    }

    let mut facets: Vec<RawFacet> = rays
        .into_iter()
        .map(|ray| {
            let (normal, offset) = split_normal(ray.w, d);
            let mut tight: Vec<usize> = ray.zeros.iter().map(|&r| seq[r as usize]).collect();
            tight.sort_unstable();
            RawFacet { normal, offset, tight }
        })
        .collect();
    facets.sort();
    facets
}

/// Adjacency test: the constraints tight on both rays have rank `d - 1`,
/// the most two distinct extreme rays of a `(d + 1)`-dimensional pointed cone
/// can share. Stops as soon as that rank is reached.
fn spans_ridge(gens: &[Vec<i64>], common: &[u32], d: usize) -> bool {
    let need = d - 1;
    if need == 0 {
        return true;
    }
    let mut basis: Vec<(usize, Vec<i128>)> = Vec::with_capacity(need);
    for &j in common {
        let mut row: Vec<i128> = gens[j as usize].iter().map(|&x| x as i128).collect();
        for (col, b) in &basis {
            if row[*col] != 0 {
                let (f, g) = (b[*col], row[*col]);
                for (x, &y) in row.iter_mut().zip(b) {
                    *x = *x * f - y * g;
                }
                let h = row.iter().fold(0i128, |h, x| h.gcd(x));
                if h > 1 {
                    row.iter_mut().for_each(|x| *x /= h);
                }
            }
        }
        if let Some(col) = row.iter().position(|&x| x != 0) {
            basis.push((col, row));
            if basis.len() == need {
                return true;
            }
        }
    }
    false
}

fn primitive_wide(v: Vec<i128>) -> Vec<i64> {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x)).max(1);
    v.into_iter()
        .map(|x| i64::try_from(x / g).expect("hull coefficient overflow"))
        .collect()
}

/// `(a, b)` from a ray `w = (a, b)`, scaled so that `a` is primitive.
fn split_normal(mut w: Vec<i64>, d: usize) -> (Vec<i64>, i64) {
    let b = w.pop().expect("ray has d + 1 entries");
    debug_assert_eq!(w.len(), d);
    let g = w.iter().fold(0i64, |g, x| g.gcd(x));
    assert!(g > 0, "ray with zero normal");
    debug_assert_eq!(b % g, 0);
    (w.into_iter().map(|x| x / g).collect(), b / g)
}

/// Same facets by trying every `d`-subset of points as a hyperplane.
/// Exponential in `d`; for cross-checks on small inputs.
pub fn facets_exhaustive(points: &[Vec<i64>], d: usize) -> Vec<RawFacet> {
    assert!(d >= 1, "hull needs positive dimension");
    let gens: Vec<Vec<i64>> = points.iter().map(|p| lift(p)).collect();
    let mut found: Vec<RawFacet> = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    if points.len() < d {
        return found;
    }
    loop {
        let rows: Vec<Vec<i64>> = idx.iter().map(|&i| gens[i].clone()).collect();
        let kernel = rational_kernel(&rows, d + 1);
        if kernel.len() == 1 {
            let w = primitive(kernel[0].clone());
            let values: Vec<i64> = gens.iter().map(|g| dot(g, &w)).collect();
            let sign = if values.iter().all(|&v| v <= 0) {
                Some(1)
            } else if values.iter().all(|&v| v >= 0) {
                Some(-1)
            } else {
                None
            };
            // a·x = b must be a genuine hyperplane, not the trivial (0, b)
            if let Some(s) = sign.filter(|_| w[..d].iter().any(|&x| x != 0)) {
                let w: Vec<i64> = w.iter().map(|x| s * x).collect();
                let (normal, offset) = split_normal(w, d);
                let tight = (0..points.len()).filter(|&j| values[j] == 0).collect();
                let facet = RawFacet { normal, offset, tight };
                if !found.contains(&facet) {
                    found.push(facet);
                }
            }
        }
        // next combination
        let mut k = d;
        loop {
            if k == 0 {
                found.sort();
                return found;
            }
            k -= 1;
            if idx[k] < points.len() - d + k {
                idx[k] += 1;
                for t in k + 1..d {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}
