use zmclab::ck::{ck_series, InitialCurve};
use zmclab::gallery::gallery_entry;
use zmclab::geometry::{field_b, field_c, gauss_curvature, GraphSurface};
use zmclab::series::PowerSeries2;

fn germ(u: &[f64], v: &[f64]) -> PowerSeries2 {
    ck_series(&InitialCurve::from_coeffs(u, v).unwrap(), &PowerSeries2::zeros(0), 12).unwrap()
}

/// `(K, B)` from the exact polynomial fields, avoiding the cancellation in `1 - |∇f|²`.
fn k_and_b(f: &PowerSeries2, x: f64, y: f64) -> (f64, f64) {
    let b = field_b(f).eval(x, y);
    (-field_c(f).eval(x, y) / (b * b), b)
}

#[test]
fn curvature_blows_up_at_a_nondegenerate_point() {
    let f = germ(&[0.0, 0.0, 0.3], &[1.0, 1.0, -0.2]);
    // C(o) = -f_xy(o)² < 0
    assert!(field_c(&f).get(0, 0) < 0.0);
    let mut last = 0.0;
    for i in 1..8 {
        let r = 10f64.powi(-i);
        let (k, _) = k_and_b(&f, r, 0.3 * r);
        assert!(k > last);
        last = k;
    }
    assert!(last > 1e10);
}

#[test]
fn positive_mu_gives_positive_divergent_curvature() {
    let s = gallery_entry("scherk_spacelike").unwrap().surface(4).unwrap();
    let near = gauss_curvature(&s, 1e-3, 0.0).unwrap();
    let far = gauss_curvature(&s, 1e-1, 0.0).unwrap();
    assert!(near > 1e5 && near > far && far > 0.0);
}

#[test]
fn zero_mu_curvature_follows_b_when_alpha_is_nonzero() {
    // α(0) = 1, μ = 0, δ = 3
    let f = germ(&[0.0, 0.0, 0.5], &[1.0, 0.0, -0.5, 1.0]);
    for &x in &[0.05, 0.01, -0.01, -0.05] {
        for &y in &[0.0, 0.2 * x * x] {
            let (k, b) = k_and_b(&f, x, y);
            assert_eq!(k.signum(), b.signum(), "at ({x}, {y}): K = {k}, B = {b}");
        }
    }
}

#[test]
fn zero_mu_curvature_sign_fails_when_alpha_vanishes() {
    // OJM germ: α ≡ 0, β = 9y. The x³ term of C vanishes and C ≈ -81x⁴, so
    // K > 0 on both sides while B changes sign.
    let f = germ(&[0.0, 0.0, 0.0, 0.0], &[1.0, 0.0, 0.0, 3.0]);
    for &x in &[0.01, -0.01] {
        let (k, b) = k_and_b(&f, x, 0.0);
        assert!(k > 0.0);
        assert_eq!(b.signum(), -x.signum());
        let c = field_c(&f).eval(x, 0.0);
        assert!((c / x.powi(4) + 81.0).abs() < 1.0);
    }
    // the surface evaluated through jets agrees
    let s = GraphSurface::from_series(f);
    assert!(gauss_curvature(&s, -0.01, 0.0).unwrap() > 0.0);
}
