//! Acceptance suite: one timed check per criterion, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always shown
//! under `cargo test`. Every numeric claim is compared against an oracle
//! written here, independently of the library code path it checks.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use msk_core::circle::{laurent_adjoint, laurent_functional, toeplitz_moment_matrix, toeplitz_psd_test};
use msk_core::weil::{bound_check, compute_b, synthesize_example, zeta_consistency, BoundVerdict, WeilMember};
use msk_core::{
    bernstein_weights_exact, estimate_circle_symbol, estimate_symbol, fejer_density, is_completely_monotonic,
    symbol_ergodic_average, CircleMoments, CircleOptions, Complex64, EigenvalueFamily, FamilyKind, FamilyMember,
    LaurentPoly, MomentSequence, Summation, SymbolOptions,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn c1_hausdorff_gate() -> Check {
    let harmonic: Vec<f64> = (0..=20).map(|n| 1.0 / (n as f64 + 1.0)).collect();
    let v = is_completely_monotonic(&MomentSequence::unit(&harmonic).unwrap(), 1e-10).unwrap();
    ensure(v.passed && v.order == 20, || format!("1/(n+1): {v}"))?;
    let doubling = is_completely_monotonic(&MomentSequence::unit(&[1.0, 2.0, 4.0]).unwrap(), 1e-10).unwrap();
    ensure(!doubling.passed && doubling.witness == Some((1, 0)), || format!("(1,2,4): {doubling}"))?;
    Ok(format!("1/(n+1) {v}; (1,2,4) witness (1,0)"))
}

fn c2_reconstruction_rate() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_ratio = f64::INFINITY;
    for trial in 0..20 {
        let atoms: Vec<(BigInt, BigInt)> = (0..rng.gen_range(1..=5))
            .map(|_| (BigInt::from(rng.gen_range(0..=1000)), BigInt::from(rng.gen_range(1..=10))))
            .collect();
        let total: BigInt = atoms.iter().map(|(_, w)| w).sum();
        let mut powers: Vec<BigInt> = atoms.iter().map(|(_, w)| w.clone()).collect();
        let mut scale = total.clone();
        let mut moments = Vec::with_capacity(201);
        for _ in 0..=200 {
            moments.push(BigRational::new(powers.iter().sum(), scale.clone()));
            for (p, (x, _)) in powers.iter_mut().zip(&atoms) {
                *p *= x;
            }
            scale *= 1000;
        }
        let errors = |n: usize| -> Result<Vec<BigRational>, String> {
            let w = bernstein_weights_exact(&moments, n).map_err(|e| e.to_string())?;
            let common = w.iter().fold(BigInt::one(), |acc, wj| acc.lcm(wj.denom()));
            let numerators: Vec<BigInt> = w.iter().map(|wj| wj.numer() * (&common / wj.denom())).collect();
            Ok((0..=4u32)
                .map(|k| {
                    let sum: BigInt = numerators
                        .iter()
                        .enumerate()
                        .map(|(j, c)| c * BigInt::from(j).pow(k) * BigInt::from(n).pow(4 - k))
                        .sum();
                    let rec = BigRational::new(sum, &common * BigInt::from(n).pow(4));
                    (rec - &moments[k as usize]).abs()
                })
                .collect())
        };
        let (e100, e200) = (errors(100)?, errors(200)?);
        for k in 0..=4 {
            let (a, b) = (&e100[k], &e200[k]);
            if k <= 1 || a.is_zero() {
                ensure(b.is_zero() && (k > 1 || a.is_zero()), || format!("trial {trial}, k = {k}: linear moments must be exact"))?;
                continue;
            }
            let r = (a / b).to_f64().unwrap_or(0.0);
            ensure(r >= 1.8, || format!("trial {trial}, k = {k}: err100/err200 = {r}"))?;
            worst_ratio = worst_ratio.min(r);
        }
    }
    Ok(format!("20 measures, k = 2..4: min err(100)/err(200) = {worst_ratio:.4} >= 1.8; k <= 1 exact"))
}

fn c3_symbol_pipeline() -> Check {
    let sizes = [125usize, 250, 500, 1000, 2000];
    let family = EigenvalueFamily::from_real(
        sizes.iter().map(|&n| (1..=n).map(|i| i as f64 / n as f64).collect()).collect(),
    )
    .unwrap();
    let options = SymbolOptions { ctol: Some(1e-2), window: 3, ..SymbolOptions::default() };
    let est = estimate_symbol(&family, 16, 200, &options).map_err(|e| e.to_string())?;
    let values = est.symbol.values();
    ensure(values.windows(2).all(|w| w[0] <= w[1]), || "symbol is not monotone".into())?;
    let sup = est.symbol.sup_distance(|x| x, 0.05, 0.95);
    ensure(sup < 0.05, || format!("sup distance {sup}"))?;
    let largest: Vec<f64> = (1..=2000).map(|i| i as f64 / 2000.0).collect();
    let tests: [(&str, fn(f64) -> f64); 4] = [("x", |x| x), ("x^2", |x| x * x), ("x^3", |x| x * x * x), ("cos", f64::cos)];
    let mut worst = 0.0f64;
    for (name, f) in tests {
        let empirical = largest.iter().map(|&x| f(x)).sum::<f64>() / largest.len() as f64;
        let d = (empirical - symbol_ergodic_average(&est.symbol, f)).abs();
        ensure(d < 5e-2, || format!("ergodic average of {name} off by {d}"))?;
        worst = worst.max(d);
    }
    Ok(format!("sup |k(x) - x| on [0.05, 0.95] = {sup:.4}; worst ergodic gap {worst:.4}; method {}", est.method.name()))
}

fn random_circle_moments(rng: &mut ChaCha8Rng, order: usize) -> CircleMoments {
    let atoms: Vec<(f64, f64)> = (0..rng.gen_range(1..=5)).map(|_| (rng.gen_range(-PI..PI), rng.gen_range(0.05..1.0))).collect();
    let d = (0..=order)
        .map(|k| atoms.iter().map(|&(t, w)| Complex64::from_polar(w, k as f64 * t)).sum())
        .collect();
    CircleMoments::new(1.0, d).unwrap()
}

fn c4_toeplitz_bridge() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut min_eig = f64::INFINITY;
    for _ in 0..200 {
        let s = random_circle_moments(&mut rng, 11);
        let len = rng.gen_range(1..=12);
        let a: Vec<Complex64> = (0..len).map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
        let q = LaurentPoly::new(0, a.clone());
        let lhs = laurent_functional(&s, &(&laurent_adjoint(&q) * &q)).unwrap();
        let h = toeplitz_moment_matrix(&s, len).unwrap();
        let mut rhs = Complex64::zero();
        for i in 0..len {
            for j in 0..len {
                rhs += a[i].conj() * h[(i, j)] * a[j];
            }
        }
        worst = worst.max((lhs - rhs).norm());
        for size in 1..=12 {
            let v = toeplitz_psd_test(&s, size, 1e-10).unwrap();
            min_eig = min_eig.min(v.min_eigenvalue);
            ensure(v.passed, || format!("PSD failed at size {size}: {}", v.min_eigenvalue))?;
        }
    }
    ensure(worst <= 1e-10, || format!("functional vs quadratic form gap {worst}"))?;
    Ok(format!("200 instances: max |L(q*q) - form| = {worst:.2e}; min eigenvalue {min_eig:.2e} >= -1e-10"))
}

fn fejer_kernel(order: usize, x: f64) -> f64 {
    let k1 = (order + 1) as f64;
    let den = (x / 2.0).sin();
    if den.abs() < 1e-9 {
        return k1;
    }
    let num = (k1 * x / 2.0).sin();
    num * num / (k1 * den * den)
}

fn c5_fejer_density() -> Check {
    let (order, grid, theta) = (32usize, 1024usize, 1.234f64);
    let s = CircleMoments::new(1.0, (0..=order).map(|k| Complex64::from_polar(1.0, k as f64 * theta)).collect()).unwrap();
    let g = fejer_density(&s, order, grid, Summation::Fejer).unwrap();
    let gap = g
        .angles()
        .iter()
        .zip(g.values())
        .map(|(&x, &v)| (v - fejer_kernel(order, x - theta)).abs())
        .fold(0.0, f64::max);
    ensure(gap <= 1e-9, || format!("kernel gap {gap}"))?;
    let norm = (g.normalization() - s.d0()).abs();
    ensure(norm <= 1e-8, || format!("normalization gap {norm}"))?;

    let members = [64usize, 128, 256, 512]
        .iter()
        .map(|&n| FamilyMember {
            n,
            eigenvalues: (0..n).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)).collect(),
        })
        .collect();
    let family = EigenvalueFamily::new(FamilyKind::ConstantModulus, members).unwrap();
    let opts = CircleOptions { grid, ..CircleOptions::default() };
    let est = estimate_circle_symbol(&family, order, &opts).map_err(|e| e.to_string())?;
    let density = est.density.ok_or("no density for roots of unity")?;
    let flat = density.values().iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    ensure(flat <= 1e-9, || format!("roots-of-unity density deviates by {flat}"))?;
    Ok(format!("kernel gap {gap:.2e}; normalization gap {norm:.2e}; flat density gap {flat:.2e}"))
}

fn c6_example_exact() -> Check {
    let mut count = 0;
    for k in 1..=5i64 {
        for a in 2..=5i64 {
            for n in 1..=10usize {
                let ex = synthesize_example(k, a, n, 30).map_err(|e| format!("({k}, {a}, {n}): {e}"))?;
                for m in 1..=30usize {
                    let mut expected = num_traits::pow(BigInt::from(a), m) + BigInt::one();
                    if m % 2 == 0 {
                        expected -= BigInt::from(2 * n as i64) * num_traits::pow(BigInt::from(k), m / 2);
                    }
                    ensure(ex.numbers.n[m - 1] == BigRational::from_integer(expected), || format!("N_{m} at ({k}, {a}, {n})"))?;
                    ensure(ex.numbers.b[m - 1].is_integer(), || format!("B_{m} not integral at ({k}, {a}, {n})"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} values of N_m and B_m exact, zero tolerance"))
}

fn c7_zeta_consistency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..50 {
        let g = rng.gen_range(0..=4);
        let q = rng.gen_range(1..=5i64);
        let k = loop {
            let k = rng.gen_range(-7..=7i64);
            if k != 0 {
                break k;
            }
        };
        let pairs: Vec<(i64, i64)> = (0..g).map(|_| (rng.gen_range(-5..=5), rng.gen_range(-5..=5))).collect();
        let triples: Vec<(i64, i64, i64)> = pairs.iter().flat_map(|&(r, s)| [(r, s, k), (r, -s, k)]).collect();
        let member = WeilMember::exact_integers(q, &triples).map_err(|e| e.to_string())?;
        let z = zeta_consistency(&member, 12).map_err(|e| e.to_string())?;
        ensure(z.mismatch.is_none(), || format!("trial {trial}: expansions differ at t^{:?}", z.mismatch))?;

        // (1 - (r + s√k) t)(1 - (r - s√k) t) = 1 - 2r t + (r² - k s²) t²
        let mut poly = vec![BigInt::one()];
        for &(r, s) in &pairs {
            let factor = [BigInt::one(), BigInt::from(-2 * r), BigInt::from(r * r - k * s * s)];
            let mut next = vec![BigInt::zero(); poly.len() + 2];
            for (i, p) in poly.iter().enumerate() {
                for (j, f) in factor.iter().enumerate() {
                    next[i + j] += p * f;
                }
            }
            poly = next;
        }
        for (i, c) in z.from_roots.iter().enumerate() {
            let oracle = poly.get(i).cloned().unwrap_or_default();
            ensure(*c == BigRational::from_integer(oracle), || format!("trial {trial}: coefficient t^{i}"))?;
        }
    }
    Ok("50 members, g <= 4, order 12: three expansions and the quadratic-factor oracle agree exactly".into())
}

fn c8_bound_check() -> Check {
    let one = bound_check(&[1.0], 4, 50).map_err(|e| e.to_string())?;
    ensure(one.minus_sum == 1.0 && one.verdict == Some(BoundVerdict::Within), || format!("beta_1 = 1: {one:?}"))?;
    ensure(one.plus_sum == 1.0 / 3.0, || format!("plus sum {}", one.plus_sum))?;
    let over = bound_check(&[1.5], 4, 50).map_err(|e| e.to_string())?;
    ensure(over.minus_sum == 1.5 && over.verdict == Some(BoundVerdict::Violated), || format!("beta_1 = 1.5: {over:?}"))?;
    Ok(format!(
        "q=4, beta_1=1: sums (-1) {} / (+1) {:.6}, within; beta_1=1.5: (-1) {}, violated",
        one.minus_sum, one.plus_sum, over.minus_sum
    ))
}

fn c9_mobius_roundtrip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..100 {
        let n: Vec<BigRational> = (0..40).map(|_| int(rng.gen_range(-1_000_000..=1_000_000))).collect();
        let z = compute_b(&n).map_err(|e| e.to_string())?;
        for m in 1..=40usize {
            let back: BigRational = (1..=m).filter(|d| m % d == 0).map(|d| int(d as i64) * &z.b[d - 1]).sum();
            ensure(back == n[m - 1], || format!("trial {trial}: N_{m} not reproduced"))?;
        }
    }
    Ok("100 sequences, T = 40: N = Σ_{d|m} d B_d exactly".into())
}

fn run_cli(args: &[String]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_msk")).args(args).output().expect("msk runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn c10_cli_determinism() -> Check {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let f = |name: &str| fixtures.join(name).display().to_string();
    let cases: Vec<(Vec<String>, i32, &[&str])> = vec![
        (vec!["moments-check".into(), f("moments_harmonic.txt"), "--order".into(), "12".into()], 0, &[]),
        (vec!["moments-check".into(), f("moments_doubling.txt")], 2, &[]),
        (vec!["moments-check".into(), f("does_not_exist.txt")], 1, &[]),
        (vec!["moments-check".into(), f("moments_malformed.txt")], 1, &[]),
        (vec!["symbol".into(), f("identity.json")], 0, &[".symbol.csv"]),
        (vec!["symbol".into(), f("equispaced.json"), "--ctol".into(), "1e-2".into()], 0, &[".symbol.csv"]),
        (vec!["symbol".into(), f("plus_minus.json")], 0, &[".symbol.csv"]),
        (vec!["symbol".into(), f("oscillating.json")], 2, &[]),
        (vec!["circle".into(), f("roots_of_unity.json")], 0, &[".density.csv"]),
        (vec!["circle".into(), f("single_angle.json")], 0, &[".density.csv"]),
        (vec!["circle".into(), f("mixed_modulus.json")], 2, &[]),
        (vec!["weil".into(), "example".into(), "--k".into(), "2".into(), "--a".into(), "2".into(), "--n".into(), "3".into(), "--T".into(), "24".into()], 0, &[]),
        (vec!["weil".into(), "bound".into(), "--q".into(), "4".into(), "--beta".into(), "1".into()], 0, &[]),
        (vec!["weil".into(), "bound".into(), "--q".into(), "4".into(), "--beta".into(), "1.5".into()], 2, &[]),
        (vec!["weil".into(), "analyze".into(), f("weil_example.json"), "--T".into(), "8".into()], 0, &[]),
    ];
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (i, (args, expected, side)) in cases.iter().enumerate() {
        let mut runs = vec![];
        for run in 0..2 {
            let out = dir.path().join(format!("case{i}-run{run}.json"));
            let mut full = args.clone();
            full.extend(["--out".to_string(), out.display().to_string()]);
            let (code, _) = run_cli(&full);
            ensure(code == *expected, || format!("`msk {}` exited {code}, expected {expected}", args.join(" ")))?;
            let report = std::fs::read_to_string(&out).ok().map(|t| msk::report::without_timestamp(&t));
            let sides: Vec<Vec<u8>> = side
                .iter()
                .map(|s| std::fs::read(format!("{}{s}", out.display())).unwrap_or_default())
                .collect();
            runs.push((report, sides));
        }
        ensure(runs[0] == runs[1], || format!("`msk {}` is not deterministic", args.join(" ")))?;
        if *expected != 1 {
            ensure(matches!(runs[0].0, Some(Some(_))), || format!("`msk {}` wrote no report", args.join(" ")))?;
        }
    }
    Ok(format!("{} commands run twice: identical reports and side files, documented exit codes", cases.len()))
}

fn main() {
    let criteria: Vec<(u32, &str, Duration, fn() -> Check)> = vec![
        (1, "Hausdorff gate", Duration::from_secs(1), c1_hausdorff_gate),
        (2, "Bernstein reconstruction rate", Duration::from_secs(10), c2_reconstruction_rate),
        (3, "spectral symbol pipeline", Duration::from_secs(30), c3_symbol_pipeline),
        (4, "Carathéodory–Toeplitz bridge", Duration::from_secs(10), c4_toeplitz_bridge),
        (5, "Fejér density", Duration::from_secs(5), c5_fejer_density),
        (6, "example closed forms, exact", Duration::from_secs(5), c6_example_exact),
        (7, "zeta three-way consistency", Duration::from_secs(20), c7_zeta_consistency),
        (8, "bound check", Duration::from_secs(1), c8_bound_check),
        (9, "Möbius roundtrip", Duration::from_secs(2), c9_mobius_roundtrip),
        (10, "CLI determinism", Duration::from_secs(10), c10_cli_determinism),
    ];
    let mut failures = 0;
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; exceeded time limit")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {n:>2} {status} {name:<32} {:>8.3}s / {:>3}s  {detail}",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
