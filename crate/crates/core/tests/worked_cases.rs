use std::f64::consts::PI;

use msoct::equatorial::tangency_example;
use msoct::lift::{
    certify_nonequivalence, lift_and_normalize, measured_octahedron, validate_packing,
    NormalizationContext, SphericalRealization, Verdict,
};
use msoct::polyhedral::{angle_sums, classify_labels, is_segregated, length_function};
use msoct::*;

fn critical_parabolic() -> (MsConstruction, SphericalRealization) {
    let con = MsConstruction::from_a(1.0, 1.7, 3.0).unwrap();
    let tau = con.find_extrema().unwrap().tau;
    let ctx = NormalizationContext::at_critical(&con, tau).unwrap();
    let r = lift_and_normalize(&con.configuration(tau).unwrap(), &ctx).unwrap();
    (con, r)
}

#[test]
fn measured_lengths_match_center_distances() {
    let (_, r) = critical_parabolic();
    let k = measured_octahedron(&r);
    let ell = length_function(&k, &r.radii()).unwrap();
    for e in k.edges() {
        let measured = r.center_distance(e.u, e.v);
        let from_labels = ell.get(&k, e.u, e.v).unwrap();
        assert!((measured - from_labels).abs() < 1e-8, "{}-{}", e.u, e.v);
    }
    let sums = angle_sums(&k, &ell);
    assert!(sums.is_flat(), "{:?}", sums.sums);

    // The teepee faces are thin, so a change of ±0.1 in one radius already
    // violates a triangle inequality or leaves ℓ undefined. Smaller changes
    // keep ℓ valid and show up as singular vertices.
    for i in 0..6 {
        for delta in [-0.1, 0.1] {
            let mut radii = r.radii();
            radii[i] += delta;
            match length_function(&k, &radii) {
                Ok(ell) => assert!(!angle_sums(&k, &ell).is_flat()),
                Err(e) => assert!(matches!(
                    e,
                    Error::InvalidFace { .. } | Error::UndefinedLength { .. }
                )),
            }
        }
        let mut radii = r.radii();
        radii[i] -= 0.01;
        let ell = length_function(&k, &radii).unwrap();
        assert!(!angle_sums(&k, &ell).is_flat(), "vertex {i}");
    }
}

#[test]
fn critical_parabolic_labels() {
    let (con, r) = critical_parabolic();
    let k = measured_octahedron(&r);
    assert!((k.label(0, 1).unwrap() - 1.0).abs() < 1e-9);
    assert!((k.label(0, 5).unwrap() - con.params.b).abs() < 1e-8 * con.params.b);
    assert!((k.label(1, 5).unwrap() - con.params.c).abs() < 1e-8);
    assert!((k.label(3, 4).unwrap() - 18.6065).abs() < 5e-4);
    let summary = classify_labels(&k);
    assert!(summary.edge_segregated && !summary.edge_separated);
    // Exhaustive pair scan, diagonals included.
    let cfg = con.configuration(r.t.unwrap()).unwrap();
    let all_pairs_nonnegative = (0..6)
        .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
        .all(|(i, j)| inv_dist_plane(&cfg.circles[i], &cfg.circles[j]) >= 0.0);
    assert_eq!(is_segregated(&cfg.circles), all_pairs_nonnegative);
    assert_eq!(is_segregated(&r.circles), all_pairs_nonnegative);
}

#[test]
fn parabolic_pair_is_not_equivalent() {
    let con = MsConstruction::from_a(1.0, 1.7, 3.0).unwrap();
    let pair = con.find_pair(20.0).unwrap();
    let tau = con.find_extrema().unwrap().tau;
    let ctx = NormalizationContext::at_critical(&con, tau).unwrap();
    let r1 = lift_and_normalize(&con.configuration(pair.t).unwrap(), &ctx).unwrap();
    let r2 = lift_and_normalize(&con.configuration(pair.t_prime).unwrap(), &ctx).unwrap();
    for r in [&r1, &r2] {
        let report = validate_packing(r, &measured_octahedron(r));
        assert!(report.passes(), "{report:?}");
        assert!((report.total_area - 4.0 * PI).abs() < 1e-6);
    }
    let cert = certify_nonequivalence(&r1, &r2).unwrap();
    assert_eq!(cert.verdict, Verdict::NotEquivalent);
    assert!(cert.separation > 1e-3, "{cert:?}");
}

#[test]
fn tangency_outer_crossing() {
    let ex = tangency_example(2.0).unwrap();
    assert!(
        (ex.x2 - (14.0 + 8.0 * 3f64.sqrt())).abs() < 1e-6,
        "{}",
        ex.x2
    );
    assert!((ex.equatorial.planar.params.c - 1.0).abs() < 1e-12);
}
