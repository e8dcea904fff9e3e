use rho_ensembles_web::demo::{asymptotic_curves, finite_n_comparison, pastur_curve};

#[test]
fn curves_cover_both_supports() {
    let rows = asymptotic_curves(300).unwrap();
    assert_eq!(rows.len(), 300);
    assert!(rows.iter().all(|r| r[1] >= 0.0 && r[2] >= 0.0));
    // Beyond x = 4 only the Bures density survives.
    assert!(rows.iter().filter(|r| r[0] > 4.0).all(|r| r[1] == 0.0 && r[2] > 0.0));
    assert!(asymptotic_curves(0).is_err());
}

#[test]
fn pastur_curve_endpoints_reproduce_known_densities() {
    let hs = asymptotic_curves(50).unwrap();
    let a1 = pastur_curve(1.0, 40).unwrap();
    let a2 = pastur_curve(2.0, 50).unwrap();
    for r in &a1 {
        let exact = (4.0 / r[0] - 1.0).sqrt() / (2.0 * std::f64::consts::PI);
        assert!((r[1] - exact).abs() < 1e-6, "{r:?}");
    }
    // Same midpoint grid on [0, 3√3] for α = 2.
    for (a, b) in a2.iter().zip(&hs) {
        assert!((a[0] - b[0]).abs() < 1e-12);
        assert!((a[1] - b[2]).abs() < 1e-6);
    }
    assert!(pastur_curve(0.5, 10).is_err());
}

#[test]
fn pastur_curve_has_unit_mass() {
    use rho_ensembles::asymptotics::{pastur_density, pastur_support_upper};
    use rho_ensembles::numerics::quadrature::integrate;
    // x = u⁴ absorbs the x^{-3/4} spike of α = 3 at the origin.
    let alpha = 3.0;
    let top = pastur_support_upper(alpha).powf(0.25);
    let mass = integrate(
        |u| {
            let x = u.powi(4);
            4.0 * u.powi(3) * pastur_density(alpha, x, 1e-9 * x).unwrap()
        },
        0.0,
        top,
    )
    .value;
    assert!((mass - 1.0).abs() < 1e-6, "{mass}");
    let rows = pastur_curve(alpha, 200).unwrap();
    assert!((rows[100][1] - pastur_density(alpha, rows[100][0], 1e-9 * rows[100][0]).unwrap()).abs() < 1e-15);
}

#[test]
fn finite_n_histogram_tracks_exact_density() {
    let c = finite_n_comparison(3, 4, 20_000, 40, 1).unwrap();
    assert_eq!(c.edges.len(), 41);
    let mass: f64 = c
        .histogram
        .iter()
        .zip(c.edges.windows(2))
        .map(|(d, e)| d * (e[1] - e[0]))
        .sum();
    assert!((mass - 1.0).abs() < 1e-12);
    assert!(c.l1 < 0.03, "{}", c.l1);
    assert_eq!(finite_n_comparison(3, 4, 20_000, 40, 1).unwrap(), c);
    assert!(finite_n_comparison(1, 4, 100, 40, 1).is_err());
}
