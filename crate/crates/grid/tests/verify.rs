use plate_core::{plate_first_eig_ball, torsional_rigidity_ball, Ball64};
use plate_grid::verify::{comparison_shapes, saint_venant_report, shape_study, szego_report};
use plate_grid::*;

const H: f64 = 1.0 / 32.0;

#[test]
fn richardson_recovers_a_pure_second_order_error() {
    // q(h) = q* + c·h²
    let (q, c, h) = (3.5, 2.0, 0.1);
    let r = Richardson::new(q + c * h * h, q + c * h * h / 4.0);
    assert!((r.extrapolated - q).abs() < 1e-14);
    assert!((r.estimate - c * h * h / 4.0).abs() < 1e-14);
    assert_eq!(r.slack(), 2.0 * r.estimate);
}

#[test]
fn disk_against_itself_is_an_equality_within_slack() {
    let ball = Ball64::with_volume(2, 1.0).unwrap();
    for tau in [0.0, 10.0] {
        let s = shape_study(&Shape::unit_area_disk(), tau, H).unwrap();
        let g = plate_first_eig_ball(&ball, tau).unwrap().gamma;
        let t = torsional_rigidity_ball(&ball, tau).unwrap();
        assert!((s.gamma.fine - g).abs() <= s.gamma.slack(), "τ = {tau}: {:?} vs {g}", s.gamma);
        assert!((s.rigidity.fine - t).abs() <= s.rigidity.slack(), "τ = {tau}: {:?} vs {t}", s.rigidity);
        assert!((s.gamma.extrapolated - g).abs() < 0.2 * (s.gamma.fine - g).abs());
        assert!(s.sign.one_signed);
    }
}

#[test]
fn saint_venant_suite_holds_on_comparison_shapes() {
    let r = verify_saint_venant(&comparison_shapes(), &[0.0, 1.0, 10.0], H).unwrap();
    assert_eq!(r.entries.len(), 15);
    for e in &r.entries {
        assert!(e.holds, "{e:?}");
        // a clear gap, not a slack-assisted pass
        assert!(e.value < e.disk, "{e:?}");
    }
    assert!(r.all_hold);
}

#[test]
fn szego_ordering_holds_on_comparison_shapes() {
    let r = verify_szego_ordering(&comparison_shapes(), &[0.0, 1.0, 10.0], H).unwrap();
    for e in &r.entries {
        assert!(e.holds && e.value > e.disk, "{e:?}");
    }
    assert!(r.all_hold);
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["suite"], "szego");
    assert!(json["entries"][0].get("one_signed").is_some());
}

#[test]
fn triangle_across_a_range_of_tensions() {
    let studies =
        plate_grid::verify::run_studies(&[Shape::unit_area_triangle()], &[0.0, 1.0, 10.0, 100.0], H).unwrap();
    let sz = szego_report(&studies).unwrap();
    let sv = saint_venant_report(&studies).unwrap();
    assert!(sz.all_hold && sv.all_hold);
    // both gaps persist as tension grows, measured relative to the disk
    for (a, b) in sz.entries.iter().zip(&sv.entries) {
        assert!((a.value - a.disk) / a.disk > 0.05, "{a:?}");
        assert!((b.disk - b.value) / b.disk > 0.05, "{b:?}");
    }
}

#[test]
fn long_rectangle_is_far_from_the_disk() {
    let rect = Shape::unit_area_rect(8.0).unwrap();
    let r = verify_szego_ordering(&[rect], &[0.0, 10.0], H).unwrap();
    for e in &r.entries {
        assert!(e.holds && e.value > 3.0 * e.disk, "{e:?}");
    }
}

#[test]
fn slope_suite_holds() {
    let r = verify_slopes(&[Shape::unit_area_square(), Shape::unit_area_l_shape()], &[0.0, 5.0, 50.0], H).unwrap();
    assert!(r.all_hold, "{:?}", r.entries);
    assert_eq!(r.scheme, Scheme::ZeroExtension);
    for e in &r.entries {
        assert!(e.lower < e.upper);
    }
}
