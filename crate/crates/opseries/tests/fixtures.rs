//! Regression tests against the pinned quadrature-oracle fixture. The table
//! is only ever rewritten through the two-rotation protocol in
//! `fixture_regen.rs`; these tests assert the shipped quadrature still
//! reproduces it.

use opseries::oracle::{evaluate_pinned, parse_pinned, PINNED_FIXTURE};

#[test]
fn pinned_fixture_parses_with_expected_coverage() {
    let rows = parse_pinned(PINNED_FIXTURE).expect("fixture must parse");
    assert_eq!(rows.len(), 37);
    assert_eq!(rows.iter().filter(|r| r.function == "ai").count(), 7);
    assert_eq!(rows.iter().filter(|r| r.function == "ai4").count(), 5);
    assert_eq!(
        rows.iter()
            .filter(|r| r.function == "pearcey-halfline")
            .count(),
        25
    );
    for r in &rows {
        assert_eq!(r.protocol, "rot2[1.0,0.9]");
        assert!(
            r.err > 0.0 && r.err < 1e-9,
            "{} ({}, {}): unreasonable pinned error {:e}",
            r.function,
            r.x,
            r.y,
            r.err
        );
        assert!(r.re.is_finite() && r.im.is_finite());
    }
}

#[test]
fn quadrature_reproduces_pinned_values() {
    let rows = parse_pinned(PINNED_FIXTURE).expect("fixture must parse");
    for r in &rows {
        let q = evaluate_pinned(r).expect("pinned point must evaluate");
        assert!(
            (q.value.re - r.re).abs() <= 1e-8 && (q.value.im - r.im).abs() <= 1e-8,
            "{} ({}, {}): ({:.17e}, {:.17e}) vs pinned ({:.17e}, {:.17e})",
            r.function,
            r.x,
            r.y,
            q.value.re,
            q.value.im,
            r.re,
            r.im
        );
    }
}
