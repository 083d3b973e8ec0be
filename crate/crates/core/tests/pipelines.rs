use std::f64::consts::PI;

use msk_core::weil::example_closed_form;
use msk_core::{
    compute_n, estimate_circle_symbol, estimate_symbol, hermitian_traces_from_matrices, is_completely_monotonic,
    moments_of, quantile_symbol, reconstruct, rescale_from_unit_interval, rescale_to_unit_interval,
    synthesize_example, zeta_numbers, CircleOptions, Complex64, DiscreteMeasure, Domain, EigenvalueFamily,
    FamilyKind, FamilyMember, MomentSequence, Reconstruction, SymbolOptions,
};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;

fn periodic_tridiagonal(n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |i, j| {
        if (i + 1) % n == j || (j + 1) % n == i {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

#[test]
fn circulant_symbol_is_rearranged_cosine() {
    let matrices: Vec<_> = [16, 32, 64, 128].into_iter().map(periodic_tridiagonal).collect();
    let traces = hermitian_traces_from_matrices(&matrices, 12).unwrap();
    assert!(traces.residual < 1e-10);
    assert!(traces.max_modulus <= 2.0 + 1e-12);

    let opts = SymbolOptions { half_width: Some(2.0 + 1e-9), ..SymbolOptions::default() };
    let est = estimate_symbol(&traces.family, 12, 200, &opts).unwrap();
    assert!(est.monotonicity.passed);
    // Odd moments of the arcsine law on [-2, 2] vanish.
    assert!(est.report.limit(1).unwrap().norm() < 1e-9);
    // Even moments are the central binomials C(k, k/2).
    assert!((est.report.limit(2).unwrap().re - 2.0).abs() < 1e-9);
    assert!((est.report.limit(4).unwrap().re - 6.0).abs() < 1e-9);
    let sup = est.symbol.sup_distance(|x| -2.0 * (PI * x).cos(), 0.15, 0.85);
    assert!(sup < 0.2, "sup distance {sup}");
}

#[test]
fn rescaling_round_trips() {
    let atoms = [(-1.5, 0.25), (0.5, 0.5), (2.0, 0.25)];
    let values: Vec<f64> =
        (0..=10).map(|k| atoms.iter().map(|&(x, w)| w * f64::powi(x, k)).sum()).collect();
    let h = MomentSequence::from_real(&values, Domain::SymmetricInterval { half_width: 2.0 }).unwrap();
    let unit = rescale_to_unit_interval(&h).unwrap();
    assert!(is_completely_monotonic(&unit, 1e-10).unwrap().passed);
    let back = rescale_from_unit_interval(&unit, 2.0).unwrap();
    for (a, b) in back.values().iter().zip(h.values()) {
        assert!((a - b).norm() < 1e-9 * b.norm().max(1.0));
    }
}

#[test]
fn reconstruction_feeds_the_quantile_symbol() {
    let measure = DiscreteMeasure::from_real(&[(0.2, 0.5), (0.7, 0.5)]).unwrap();
    let m = moments_of(&measure, 30).unwrap();
    let (rec, method) = reconstruct(&m, 30, Reconstruction::Auto, 1e-10).unwrap();
    assert!(matches!(method, Reconstruction::Bernstein | Reconstruction::Legendre));
    let sym = quantile_symbol(&rec.normalized(), 100).unwrap();
    assert!(sym.values().windows(2).all(|w| w[0] <= w[1]));
    assert!((sym.values()[25] - 0.2).abs() < 0.1);
    assert!((sym.values()[75] - 0.7).abs() < 0.1);
}

#[test]
fn rotated_circle_family_has_flat_density() {
    let members = [32usize, 64, 128, 256]
        .iter()
        .map(|&n| FamilyMember {
            n,
            eigenvalues: (0..n).map(|j| Complex64::from_polar(3.0, 0.4 + 2.0 * PI * j as f64 / n as f64)).collect(),
        })
        .collect();
    let family = EigenvalueFamily::new(FamilyKind::ConstantModulus, members).unwrap();
    let est = estimate_circle_symbol(&family, 16, &CircleOptions::default()).unwrap();
    assert!((est.radius - 3.0).abs() < 1e-12);
    assert!(est.psd.passed);
    let density = est.density.unwrap();
    assert!(density.values().iter().all(|v| (v - 1.0).abs() < 1e-9));
}

#[test]
fn example_member_numbers_match_closed_form() {
    for n in 1..=4 {
        let ex = synthesize_example(3, 2, n, 16).unwrap();
        let from_roots = compute_n(&ex.member, 16).unwrap();
        let z = zeta_numbers(&ex.member, 16).unwrap();
        assert_eq!(from_roots, z.n);
        for (m, value) in z.n.iter().enumerate() {
            assert_eq!(*value, BigRational::from_integer(example_closed_form(3, 2, n, m + 1)));
        }
        assert!(z.b.iter().all(|b| b.is_integer()));
        assert_eq!(z.b[0], BigRational::from_integer(BigInt::from(3)));
    }
}
