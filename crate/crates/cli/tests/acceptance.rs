//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact (integers or rationals); the only pinned quantities are sample
//! sizes, listed in the constants below.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use matropoly::verify::{check_minkowski, check_support, polytopes_for, GeometricOracle};
use matropoly::{cmd_volume, serialize};
use matropoly_core::catalog::{catalog, graphic, uniform, CatalogEntry, Graph};
use matropoly_core::decomposition::{
    decompose_base_polytope, decompose_independent_polytope, decompose_truncation_flag, y_from_z_gp,
    y_from_z_q, z_from_y_gp, z_from_y_q, Family, ProfileKind, SignedDecomposition, ZProfile,
};
use matropoly_core::geometry::{vertices_base, vertices_flag, vertices_indep, volume_exact, LatticeFrame};
use matropoly_core::invariants::{beta, gamma, gamma_by_subsets, tutte};
use matropoly_core::volume::{
    dragon_marriage, dragon_marriage_by_intersections, factorial, flag_terms, independent_terms, sdr_condition,
    sdr_condition_by_intersections, volume_base_polytope, volume_base_polytope_direct, volume_independent_polytope,
    volume_truncation_flag, TermCensus,
};
use matropoly_core::{Matroid, SubsetMask};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CATALOG_N: usize = 6;
const FLAG_ORACLE_N: usize = 5;
const GAMMA_MAX_N: usize = 8;
const PROFILES_PER_N: usize = 1000;
const PROFILE_RANGE: i64 = 50;
const RANDOM_TUPLES: usize = 100_000;
const CYCLE_MAX: usize = 6;
const THREAD_COUNTS: [usize; 3] = [1, 2, 8];
const DETERMINISM_MATROIDS: usize = 5;
const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;

fn set(elements: &[usize]) -> SubsetMask {
    SubsetMask::from_elements(elements.iter().copied())
}

fn decomposition(n: usize, family: Family, terms: &[(&[usize], i64)]) -> SignedDecomposition {
    SignedDecomposition::from_terms(n, family, terms.iter().map(|&(s, y)| (set(s), y)))
}

fn q(p: i64, r: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(r))
}

fn bases(n: usize, bs: &[&[usize]]) -> Matroid {
    Matroid::from_bases(n, bs.iter().map(|b| set(b))).expect("valid bases")
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn criterion_1() -> Outcome {
    let pyramid = bases(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4]]);
    expect_eq(
        "pyramid",
        decompose_base_polytope(&pyramid),
        decomposition(4, Family::Delta, &[(&[2, 3, 4], 1), (&[1, 3, 4], 1), (&[1, 2], 1), (&[1, 2, 3, 4], -1)]),
    )?;
    let u23 = uniform(2, 3).unwrap();
    expect_eq(
        "U(2,3)",
        decompose_base_polytope(&u23),
        decomposition(3, Family::Delta, &[(&[1, 2], 1), (&[2, 3], 1), (&[1, 3], 1), (&[1, 2, 3], -1)]),
    )?;
    expect_eq(
        "U(1,3)",
        decompose_base_polytope(&uniform(1, 3).unwrap()),
        decomposition(3, Family::Delta, &[(&[1, 2, 3], 1)]),
    )?;
    expect_eq(
        "I_U(2,3)",
        decompose_independent_polytope(&u23),
        decomposition(3, Family::D, &[(&[1, 2], 1), (&[2, 3], 1), (&[1, 3], 1), (&[1, 2, 3], -1)]),
    )?;
    let flag = decompose_truncation_flag(&bases(3, &[&[1, 2], &[1, 3]]));
    expect_eq(
        "flag {12,13} exact",
        flag.clone(),
        decomposition(3, Family::Delta, &[(&[1, 2, 3], 1), (&[2, 3], 1), (&[1], 1)]),
    )?;
    expect_eq(
        "flag {12,13} up to translation",
        flag.without_point_summands(),
        decomposition(3, Family::Delta, &[(&[1, 2, 3], 1), (&[2, 3], 1)]),
    )?;
    Ok("5 goldens; flag {12,13} = Delta123 + Delta23 + Delta1; Delta1 is a point, so up to translation Delta123 + Delta23".into())
}

fn criterion_2() -> Outcome {
    expect_eq("Vol P_U(1,3)", volume_base_polytope(&uniform(1, 3).unwrap(), 1), q(1, 2))?;
    let u23 = uniform(2, 3).unwrap();
    expect_eq("Vol P_U(2,3)", volume_base_polytope(&u23, 1), q(1, 2))?;
    expect_eq("Vol P_U(2,3) direct", volume_base_polytope_direct(&u23, 1), q(1, 2))?;
    expect_eq("Vol I_U(2,3)", volume_independent_polytope(&u23, 1), q(5, 6))?;

    let census = TermCensus::from_terms(&independent_terms(&u23));
    let got: Vec<(Vec<usize>, u64, i64)> = census
        .groups
        .iter()
        .rev()
        .map(|(k, g)| (k.clone(), g.tuples, g.signed_total))
        .collect();
    let want = vec![
        (vec![1, 1, 1], 24, 24),
        (vec![1, 1, 0], 27, -27),
        (vec![1, 0, 0], 9, 9),
        (vec![0, 0, 0], 1, -1),
    ];
    expect_eq("I_U(2,3) census", got, want)?;
    expect_eq("census total", census.total(), 5)?;

    let m = bases(3, &[&[1, 2], &[1, 3]]);
    expect_eq("flag volume", volume_truncation_flag(&m, 1).map_err(|e| e.to_string())?, q(3, 2))?;
    let tuples: BTreeSet<Vec<SubsetMask>> = flag_terms(&m).into_iter().map(|t| t.sets).collect();
    let want: BTreeSet<Vec<SubsetMask>> = [
        vec![SubsetMask::EMPTY, SubsetMask::EMPTY],
        vec![SubsetMask::EMPTY, set(&[1])],
        vec![set(&[1]), SubsetMask::EMPTY],
    ]
    .into_iter()
    .collect();
    expect_eq("flag tuples", tuples, want)?;
    Ok("1/2, 1/2, 5/6 with census +24 -27 +9 -1, flag 3/2 from 3 tuples".into())
}

/// `C(m, j)` extended to `m = -1` (where it is `(-1)^j`).
fn binomial(m: i64, j: i64) -> i64 {
    if j < 0 {
        return 0;
    }
    if m < 0 {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        return sign * binomial(j - m - 1, j);
    }
    if j > m {
        return 0;
    }
    (0..j).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

fn criterion_3() -> Outcome {
    let coloop = uniform(1, 1).unwrap();
    let mut cases = 0;
    for n in 2..=GAMMA_MAX_N {
        for k in 1..n {
            let u = uniform(k, n).unwrap();
            let want = -binomial(n as i64 - 3, k as i64 - 1);
            expect_eq(&format!("gamma U({k},{n})"), gamma(&u), want)?;
            expect_eq(&format!("gamma_by_subsets U({k},{n})"), gamma_by_subsets(&u), want)?;
            let uc = u.direct_sum(&coloop).unwrap();
            let want = binomial(n as i64 - 2, k as i64 - 1);
            expect_eq(&format!("gamma U({k},{n})+coloop"), gamma(&uc), want)?;
            expect_eq(&format!("gamma_by_subsets U({k},{n})+coloop"), gamma_by_subsets(&uc), want)?;
            cases += 2;
        }
    }
    Ok(format!("{cases} matroids, both routes"))
}

fn criterion_4(entries: &[CatalogEntry]) -> Outcome {
    let (mut base, mut indep, mut flag) = (0, 0, 0);
    for e in entries {
        let m = &e.matroid;
        if m.is_connected() && m.n() >= 2 {
            let oracle = volume_exact(&vertices_base(m), LatticeFrame::RootLattice).map_err(|x| x.to_string())?;
            expect_eq(&format!("{} base", e.name), volume_base_polytope(m, 1), oracle.clone())?;
            expect_eq(&format!("{} base direct", e.name), volume_base_polytope_direct(m, 1), oracle)?;
            base += 1;
        }
        let v = vertices_indep(m);
        let oracle = if v.affine_dim() == m.n() {
            volume_exact(&v, LatticeFrame::StandardLattice).map_err(|x| x.to_string())?
        } else {
            BigRational::zero()
        };
        expect_eq(&format!("{} indep", e.name), volume_independent_polytope(m, 1), oracle)?;
        indep += 1;
        if m.n() <= FLAG_ORACLE_N && m.loops().is_empty() {
            let oracle = volume_exact(&vertices_flag(m), LatticeFrame::RootLattice).map_err(|x| x.to_string())?;
            let formula = volume_truncation_flag(m, 1).map_err(|x| x.to_string())?;
            expect_eq(&format!("{} flag", e.name), formula, oracle)?;
            flag += 1;
        }
    }
    Ok(format!("{base} base, {indep} indep, {flag} flag volumes equal the oracle"))
}

fn criterion_5(entries: &[CatalogEntry]) -> Outcome {
    let mut checked = 0;
    for e in entries {
        for p in polytopes_for(&e.matroid) {
            let fail = |x: matropoly::verify::Mismatch| {
                format!("{} {}: {} formula {} oracle {}", e.name, p.name(), x.check, x.formula, x.oracle)
            };
            check_minkowski(&e.matroid, p, &GeometricOracle).map_err(fail)?;
            check_support(&e.matroid, p, &GeometricOracle).map_err(fail)?;
            checked += 1;
        }
    }
    Ok(format!("{checked} polytopes, vertex hulls equal and 100 directions each"))
}

fn random_profile(rng: &mut ChaCha8Rng, n: usize, kind: ProfileKind) -> ZProfile {
    let mut values: Vec<i64> = (0..1usize << n).map(|_| rng.gen_range(-PROFILE_RANGE..=PROFILE_RANGE)).collect();
    values[0] = 0;
    ZProfile::new(n, kind, values).unwrap()
}

fn random_decomposition(rng: &mut ChaCha8Rng, n: usize, family: Family) -> SignedDecomposition {
    SignedDecomposition::from_terms(
        n,
        family,
        SubsetMask::all(n).map(|s| (s, rng.gen_range(-PROFILE_RANGE..=PROFILE_RANGE))).collect::<Vec<_>>(),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let e = |x: matropoly_core::DecompositionError| x.to_string();
    for n in 3..=8 {
        for _ in 0..PROFILES_PER_N {
            let z = random_profile(&mut rng, n, ProfileKind::Gp);
            expect_eq("GP z->y->z", z_from_y_gp(&y_from_z_gp(&z).map_err(e)?).map_err(e)?, z)?;
            let z = random_profile(&mut rng, n, ProfileKind::Q);
            expect_eq("Q z->y->z", z_from_y_q(&y_from_z_q(&z).map_err(e)?).map_err(e)?, z)?;
            let y = random_decomposition(&mut rng, n, Family::Delta);
            expect_eq("GP y->z->y", y_from_z_gp(&z_from_y_gp(&y).map_err(e)?).map_err(e)?, y)?;
            let y = random_decomposition(&mut rng, n, Family::D);
            expect_eq("Q y->z->y", y_from_z_q(&z_from_y_q(&y).map_err(e)?).map_err(e)?, y)?;
        }
    }
    Ok(format!("{PROFILES_PER_N} profiles per n in 3..=8, both directions, GP and Q"))
}

fn criterion_7(entries: &[CatalogEntry]) -> Outcome {
    for e in entries {
        let m = &e.matroid;
        let b = beta(m);
        expect_eq(&format!("{}: beta = 0 iff disconnected", e.name), b == 0, !m.is_connected())?;
        if m.n() >= 2 {
            let t = tutte(m);
            expect_eq(&format!("{}: beta = b10", e.name), BigInt::from(b), t.coeff(1, 0))?;
            expect_eq(&format!("{}: beta = b01", e.name), BigInt::from(b), t.coeff(0, 1))?;
        }
        let dual = m.dual();
        let (v, vd) = if m.is_connected() && m.n() >= 2 {
            (volume_base_polytope_direct(m, 1), volume_base_polytope_direct(&dual, 1))
        } else {
            (volume_base_polytope(m, 1), volume_base_polytope(&dual, 1))
        };
        expect_eq(&format!("{}: Vol P_M = Vol P_M*", e.name), v.clone(), vd)?;
        if m.is_connected() && m.n() >= 1 {
            let scaled = v * BigRational::from_integer(factorial(m.n() - 1));
            expect_eq(&format!("{}: (n-1)! Vol integral", e.name), scaled.is_integer(), true)?;
        }
    }
    for k in 2..=CYCLE_MAX {
        expect_eq(&format!("beta(C_{k})"), beta(&graphic(&Graph::cycle(k)).unwrap()), 1)?;
    }
    Ok(format!("{} catalog matroids, cycles C_2..C_{CYCLE_MAX}", entries.len()))
}

fn tuple_agrees(j: &[SubsetMask], n: usize) -> Result<(), String> {
    if j.len() == n - 1 && dragon_marriage(j, n) != dragon_marriage_by_intersections(j, n) {
        return Err(format!("dragon marriage disagrees on {j:?} (n = {n})"));
    }
    if j.len() == n && sdr_condition(j, n) != sdr_condition_by_intersections(j, n) {
        return Err(format!("sdr disagrees on {j:?} (n = {n})"));
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut exhaustive = 0u64;
    for n in 3..=4 {
        let subsets: Vec<SubsetMask> = SubsetMask::all(n).collect();
        for len in [n - 1, n] {
            let mut idx = vec![0usize; len];
            loop {
                let j: Vec<SubsetMask> = idx.iter().map(|&i| subsets[i]).collect();
                tuple_agrees(&j, n)?;
                exhaustive += 1;
                let mut pos = 0;
                while pos < len {
                    idx[pos] += 1;
                    if idx[pos] < subsets.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == len {
                    break;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 5..=6 {
        for len in [n - 1, n] {
            for _ in 0..RANDOM_TUPLES {
                let j: Vec<SubsetMask> = (0..len).map(|_| random_subset(&mut rng, n)).collect();
                tuple_agrees(&j, n)?;
            }
        }
    }
    Ok(format!("{exhaustive} exhaustive tuples at n = 3, 4; {RANDOM_TUPLES} random per condition at n = 5, 6"))
}

/// Sets biased toward small sizes, so both outcomes of each condition occur.
fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> SubsetMask {
    let p = rng.gen_range(0.1..0.9);
    SubsetMask::from_elements((1..=n).filter(|_| rng.gen_bool(p)))
}

fn criterion_9(entries: &[CatalogEntry]) -> Outcome {
    let chosen: Vec<&CatalogEntry> = entries
        .iter()
        .filter(|e| e.matroid.n() == CATALOG_N && e.matroid.is_connected())
        .take(DETERMINISM_MATROIDS)
        .collect();
    if chosen.len() < DETERMINISM_MATROIDS {
        return Err("not enough catalog matroids".into());
    }
    let mut runs = 0;
    for e in &chosen {
        let text = serialize(&e.matroid);
        for p in polytopes_for(&e.matroid) {
            let outputs: Vec<String> = THREAD_COUNTS
                .iter()
                .map(|&t| cmd_volume(&text, p, t, false).map(|r| r.text()).map_err(|x| x.to_string()))
                .collect::<Result<_, _>>()?;
            if outputs.iter().any(|o| o != &outputs[0]) {
                return Err(format!("{} {}: outputs differ across threads", e.name, p.name()));
            }
            runs += 1;
        }
    }
    let names: Vec<&str> = chosen.iter().map(|e| e.name.as_str()).collect();
    Ok(format!("{runs} polytopes x threads {THREAD_COUNTS:?} byte-identical ({})", names.join(", ")))
}

fn main() -> ExitCode {
    let entries = catalog(CATALOG_N);
    let criteria: Vec<(usize, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(criterion_2)),
        (3, Box::new(criterion_3)),
        (4, Box::new(|| criterion_4(&entries))),
        (5, Box::new(|| criterion_5(&entries))),
        (6, Box::new(criterion_6)),
        (7, Box::new(|| criterion_7(&entries))),
        (8, Box::new(criterion_8)),
        (9, Box::new(|| criterion_9(&entries))),
    ];
    let mut failed = 0;
    for (id, run) in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id}: FAIL {detail} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
