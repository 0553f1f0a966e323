//! Tutte polynomial and the beta and gamma invariants.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matroid::Matroid;
use crate::subset::SubsetMask;

/// `T_M(x, y) = Σ_{i,j} b_{ij} x^i y^j`, stored densely with
/// `0 ≤ i ≤ r` and `0 ≤ j ≤ n - r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuttePolynomial {
    coeffs: Vec<Vec<BigInt>>,
}

impl TuttePolynomial {
    /// `b_{ij}`, zero outside the stored range.
    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Nonzero coefficients as `(i, j, b_ij)`, ordered by `i` then `j`.
    pub fn terms(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn evaluate(&self, x: i64, y: i64) -> BigInt {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        let mut total = BigInt::zero();
        let mut xp = BigInt::one();
        for row in &self.coeffs {
            let mut yp = BigInt::one();
            for c in row {
                total += c * &xp * &yp;
                yp *= &y;
            }
            xp *= &x;
        }
        total
    }
}

fn binomial_table(size: usize) -> Vec<Vec<BigInt>> {
    let mut table = vec![vec![BigInt::zero(); size + 1]; size + 1];
    for a in 0..=size {
        table[a][0] = BigInt::one();
        for b in 1..=a {
            table[a][b] = &table[a - 1][b - 1] + &table[a - 1][b];
        }
    }
    table
}

/// Corank-nullity expansion over all `2^n` subsets.
pub fn tutte(m: &Matroid) -> TuttePolynomial {
    let n = m.n();
    let r = m.rank();
    let ranks = m.rank_table();
    // counts[a][b]: subsets with corank a and nullity b.
    let mut counts = vec![vec![0u64; n - r + 1]; r + 1];
    for s in 0..(1usize << n) {
        let rs = ranks[s] as usize;
        counts[r - rs][s.count_ones() as usize - rs] += 1;
    }
    let binom = binomial_table(n + 2);
    let mut coeffs = vec![vec![BigInt::zero(); n - r + 1]; r + 1];
    for (a, row) in counts.iter().enumerate() {
        for (b, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let count = BigInt::from(count);
            // (x-1)^a (y-1)^b
            for i in 0..=a {
                let xi = if (a - i) % 2 == 0 {
                    binom[a][i].clone()
                } else {
                    -binom[a][i].clone()
                };
                let scaled = &count * xi;
                for j in 0..=b {
                    let yj = &binom[b][j];
                    if (b - j) % 2 == 0 {
                        coeffs[i][j] += &scaled * yj;
                    } else {
                        coeffs[i][j] -= &scaled * yj;
                    }
                }
            }
        }
    }
    TuttePolynomial { coeffs }
}

/// `β(M) = (-1)^r Σ_{X ⊆ E} (-1)^{|X|} r(X)`, evaluated literally.
pub fn beta(m: &Matroid) -> i64 {
    let ranks = m.rank_table();
    let mut sum: i64 = 0;
    for (s, &rs) in ranks.iter().enumerate() {
        if s.count_ones() % 2 == 0 {
            sum += rs as i64;
        } else {
            sum -= rs as i64;
        }
    }
    if m.rank() % 2 == 0 {
        sum
    } else {
        -sum
    }
}

/// `(-1)^{r+1} β(M)`: the coefficient of `Δ_E` in the decomposition of `P_M`.
pub fn signed_beta(m: &Matroid) -> i64 {
    let b = beta(m);
    if m.rank() % 2 == 1 {
        b
    } else {
        -b
    }
}

/// `γ(M) = b_{20} - b_{10}` read off the Tutte polynomial.
pub fn gamma(m: &Matroid) -> i64 {
    let t = tutte(m);
    (t.coeff(2, 0) - t.coeff(1, 0))
        .to_i64()
        .expect("gamma fits in i64 for n <= 20")
}

/// `γ(M) = Σ_{I ⊆ E} (-1)^{r-|I|} C(r - r(I) + 1, 2)`.
pub fn gamma_by_subsets(m: &Matroid) -> i64 {
    let r = m.rank() as i64;
    let ranks = m.rank_table();
    let mut sum = 0i64;
    for (s, &rs) in ranks.iter().enumerate() {
        let k = r - rs as i64 + 1;
        let term = k * (k - 1) / 2;
        if (r - s.count_ones() as i64).rem_euclid(2) == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// `(-1)^r γ(M)`: the coefficients of the truncation flag decomposition.
pub fn signed_gamma(m: &Matroid) -> i64 {
    let g = gamma(m);
    if m.rank() % 2 == 0 {
        g
    } else {
        -g
    }
}

/// `β̃(M / A)` for every `A ⊆ E`, indexed by the bits of `A`.
pub fn signed_beta_of_contractions(m: &Matroid) -> Vec<i64> {
    SubsetMask::all(m.n())
        .map(|a| signed_beta(&m.contract(a)))
        .collect()
}

/// True when all coefficients are nonnegative and `T(1,1)` equals the basis
/// count; used as a cheap consistency probe.
pub fn tutte_sanity(m: &Matroid, t: &TuttePolynomial) -> bool {
    t.terms().iter().all(|(_, _, c)| !c.is_negative())
        && t.evaluate(1, 1) == BigInt::from(m.bases().len())
}
