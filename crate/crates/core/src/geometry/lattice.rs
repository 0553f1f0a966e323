//! Exact integer linear algebra for the oracle: ranks, rational kernels and
//! saturated sublattices of `Z^n`.

use num_integer::Integer;

fn gcd_slice(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

fn normalize(v: &mut [i128]) {
    let g = gcd_slice(v);
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Fraction-free Gauss-Jordan elimination. Returns the nonzero reduced rows
/// and their pivot columns; every pivot column is zero in all other rows.
fn reduce(rows: &[Vec<i64>], width: usize) -> (Vec<Vec<i128>>, Vec<usize>) {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), width);
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        let Some(p) = (top..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(top, p);
        for i in 0..m.len() {
            if i == top || m[i][col] == 0 {
                continue;
            }
            let (f, g) = (m[top][col], m[i][col]);
            let pivot_row = m[top].clone();
            for (x, &y) in m[i].iter_mut().zip(&pivot_row) {
                *x = *x * f - y * g;
            }
            normalize(&mut m[i]);
        }
        pivots.push(col);
        top += 1;
        if top == m.len() {
            break;
        }
    }
    m.truncate(top);
    (m, pivots)
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    match rows.first() {
        None => 0,
        Some(r) => reduce(rows, r.len()).1.len(),
    }
}

/// Integer basis of the rational kernel `{x : r·x = 0 for every row r}`,
/// each vector primitive.
pub fn rational_kernel(rows: &[Vec<i64>], width: usize) -> Vec<Vec<i64>> {
    let (m, pivots) = reduce(rows, width);
    let mut out = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let scale = m
            .iter()
            .zip(&pivots)
            .filter(|(r, _)| r[free] != 0)
            .fold(1i128, |l, (r, &p)| l.lcm(&r[p].abs()));
        let mut v = vec![0i128; width];
        v[free] = scale;
        for (r, &p) in m.iter().zip(&pivots) {
            v[p] = -r[free] * (scale / r[p]);
        }
        normalize(&mut v);
        out.push(v.into_iter().map(|x| i64::try_from(x).expect("kernel entry overflow")).collect());
    }
    out
}

/// The saturated lattice `{x ∈ Z^n : A x = 0}` with a basis and the integer
/// coordinate functionals that invert it on the lattice.
#[derive(Clone, Debug)]
pub struct LatticeMap {
    /// Basis vectors (length `n`).
    pub basis: Vec<Vec<i64>>,
    /// Coordinate functionals (length `n`); `functionals[i]·b_j = δ_ij`.
    pub functionals: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, x: &[i64]) -> Vec<i64> {
        self.functionals.iter().map(|f| dot(f, x)).collect()
    }

    /// `Σ c_i f_i`: the ambient covector whose restriction to the lattice is
    /// the coordinate covector `c`.
    pub fn pull_back(&self, c: &[i64]) -> Vec<i64> {
        let n = self.functionals.first().map_or(0, |f| f.len());
        let mut out = vec![0i64; n];
        for (ci, f) in c.iter().zip(&self.functionals) {
            for (o, &fj) in out.iter_mut().zip(f) {
                *o += ci * fj;
            }
        }
        out
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Column-style Hermite reduction of `constraints` by unimodular column
/// operations. Tracks `U` and `U^{-1}`; the trailing columns of `U` span the
/// kernel lattice and the trailing rows of `U^{-1}` give coordinates in it.
pub fn kernel_lattice(constraints: &[Vec<i64>], n: usize) -> LatticeMap {
    let mut a: Vec<Vec<i64>> = constraints.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect(); // u[col] = column
    let mut v: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect(); // v[row] = row
    let mut pivot = 0;
    for i in 0..a.len() {
        if pivot == n {
            break;
        }
        loop {
            let Some(best) = (pivot..n)
                .filter(|&j| a[i][j] != 0)
                .min_by_key(|&j| a[i][j].unsigned_abs())
            else {
                break;
            };
            swap_columns(&mut a, &mut u, &mut v, pivot, best);
            let mut done = true;
            for j in pivot + 1..n {
                if a[i][j] == 0 {
                    continue;
                }
                let q = a[i][j].div_euclid(a[i][pivot]);
                subtract_column(&mut a, &mut u, &mut v, j, pivot, q);
                if a[i][j] != 0 {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    LatticeMap {
        basis: u[pivot..].to_vec(),
        functionals: v[pivot..].to_vec(),
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

fn swap_columns(a: &mut [Vec<i64>], u: &mut [Vec<i64>], v: &mut [Vec<i64>], p: usize, q: usize) {
    if p == q {
        return;
    }
    for row in a.iter_mut() {
        row.swap(p, q);
    }
    u.swap(p, q);
    v.swap(p, q);
}

/// `col_j -= q col_p`; the inverse gets `row_p += q row_j`.
fn subtract_column(a: &mut [Vec<i64>], u: &mut [Vec<i64>], v: &mut [Vec<i64>], j: usize, p: usize, q: i64) {
    for row in a.iter_mut() {
        row[j] -= q * row[p];
    }
    let col_p = u[p].clone();
    for (x, y) in u[j].iter_mut().zip(&col_p) {
        *x -= q * y;
    }
    let row_j = v[j].clone();
    for (x, y) in v[p].iter_mut().zip(&row_j) {
        *x += q * y;
    }
}

/// Saturated lattice `Z^n ∩ span(directions)`.
pub fn span_lattice(directions: &[Vec<i64>], n: usize) -> LatticeMap {
    let normals = rational_kernel(directions, n);
    kernel_lattice(&normals, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let rows = vec![vec![1, 1, 0], vec![2, 2, 0], vec![0, 1, 1]];
        assert_eq!(rank(&rows), 2);
        let k = rational_kernel(&rows, 3);
        assert_eq!(k.len(), 1);
        assert!(rows.iter().all(|r| dot(r, &k[0]) == 0));
        assert_eq!(rational_kernel(&[vec![2, 4]], 2), vec![vec![-2, 1]]);
    }

    #[test]
    fn kernel_lattice_is_saturated() {
        // {x : 2x_1 + 3x_2 + 5x_3 = 0}
        let l = kernel_lattice(&[vec![2, 3, 5]], 3);
        assert_eq!(l.dim(), 2);
        for (i, b) in l.basis.iter().enumerate() {
            assert_eq!(dot(b, &[2, 3, 5]), 0);
            assert_eq!(l.coords(b), unit(2, i));
        }
        // (1,1,-1) lies in the lattice and must have integer coordinates
        let c = l.coords(&[1, 1, -1]);
        let back: Vec<i64> = (0..3).map(|k| c[0] * l.basis[0][k] + c[1] * l.basis[1][k]).collect();
        assert_eq!(back, vec![1, 1, -1]);
    }

    #[test]
    fn span_lattice_of_diagonal_directions() {
        // span{(2,0,2)} meets Z^3 in multiples of (1,0,1)
        let l = span_lattice(&[vec![2, 0, 2]], 3);
        assert_eq!(l.dim(), 1);
        assert_eq!(l.coords(&[2, 0, 2]).iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![2]);
        assert_eq!(span_lattice(&[], 2).dim(), 0);
        assert_eq!(span_lattice(&[vec![1, 0], vec![0, 3]], 2).dim(), 2);
    }
}
