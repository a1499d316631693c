//! Property tests for the scalar kernels and the trace algebra.

use proptest::prelude::*;

use geocross::hypmath::{collar_width, zero_angle_quad_side, HalfTrace, Length};
use geocross::torus::{
    complete_triple, cusp_relation_residual, intersection_number, markov_move, normalize,
    Coord, CrossingPair, GeodesicInfo, Slope, TraceTriple,
};

fn len(v: f64) -> Length {
    Length::new(v).unwrap()
}

/// (r, s) boxes that admit a cusped completion.
fn cusped_pair() -> impl Strategy<Value = (f64, f64)> {
    (1.02f64..3.5, 1.02f64..3.5)
        .prop_filter("needs a real third coordinate", |(r, s)| {
            r * r * s * s - r * r - s * s >= 1e-9
        })
}

fn cusped_triple() -> impl Strategy<Value = TraceTriple> {
    (cusped_pair(), proptest::bool::ANY).prop_map(|((r, s), high_root)| {
        let (lo, hi) = complete_triple(
            HalfTrace::new(r).unwrap(),
            HalfTrace::new(s).unwrap(),
        )
        .unwrap();
        let t = if high_root { hi } else { lo };
        TraceTriple::new(
            HalfTrace::new(r).unwrap(),
            HalfTrace::new(s).unwrap(),
            t,
            Length::ZERO,
        )
    })
}

fn primitive_slope() -> impl Strategy<Value = Slope> {
    (-40i64..=40, -40i64..=40)
        .prop_filter_map("must be primitive", |(p, q)| Slope::new(p, q).ok())
}

proptest! {
    #[test]
    fn zero_angle_side_equals_collar_width(x in 1e-3f64..10.0) {
        let quad = zero_angle_quad_side(len(x)).unwrap().value();
        let collar = collar_width(len(2.0 * x)).unwrap().value();
        prop_assert!((quad - collar).abs() < 1e-13);
    }

    #[test]
    fn collar_width_strictly_decreasing(a in 1e-3f64..40.0, delta in 1e-3f64..5.0) {
        let w_short = collar_width(len(a)).unwrap().value();
        let w_long = collar_width(len(a + delta)).unwrap().value();
        prop_assert!(w_short > w_long);
        prop_assert!(w_long > 0.0);
    }

    #[test]
    fn length_halftrace_roundtrip(x in 1e-3f64..50.0) {
        let back = len(x).half_trace().length().value();
        prop_assert!((back - x).abs() < 1e-10);
    }

    #[test]
    fn markov_moves_are_involutions_preserving_the_relation(
        triple in cusped_triple(),
        coord in prop_oneof![Just(Coord::R), Just(Coord::S), Just(Coord::T)],
    ) {
        let residual_scale = {
            let [r, s, t] = triple.coords();
            1.0 + (2.0 * r * s * t).abs()
        };
        let moved = markov_move(triple, coord).unwrap();
        prop_assert!((moved.residual() - triple.residual()).abs() < 1e-9 * residual_scale);
        let back = markov_move(moved, coord).unwrap();
        for (a, b) in back.coords().iter().zip(triple.coords()) {
            prop_assert!((a - b).abs() < 1e-9 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn normalize_lands_in_the_fundamental_domain(triple in cusped_triple()) {
        let n = normalize(triple).unwrap();
        let [r, s, t] = n.coords();
        prop_assert!(1.0 < r && r <= s && s <= t);
        prop_assert!(t <= r * s * (1.0 + 1e-12));
        // idempotent
        let again = normalize(n).unwrap();
        for (a, b) in again.coords().iter().zip(n.coords()) {
            prop_assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn completion_roots_satisfy_vieta(pair in cusped_pair()) {
        let (r, s) = pair;
        let (lo, hi) = complete_triple(
            HalfTrace::new(r).unwrap(),
            HalfTrace::new(s).unwrap(),
        ).unwrap();
        let (lo, hi) = (lo.value(), hi.value());
        prop_assert!(lo <= hi);
        prop_assert!((lo + hi - 2.0 * r * s).abs() < 1e-9 * (1.0 + r * s));
        prop_assert!((lo * hi - (r * r + s * s)).abs() < 1e-9 * (1.0 + r * r + s * s));
        prop_assert!(cusp_relation_residual(r, s, lo).abs() < 1e-9 * (1.0 + r * s * lo));
    }

    #[test]
    fn zero_twist_pasting_sits_on_the_double_root(d in 0.2f64..20.0) {
        // pentagon relation sinh(d/2) sinh(a/2) = 1 forces the cusp
        // quadratic for (cosh(d/2), cosh(a/2)) to have a vanishing
        // discriminant: the pasted torus is the double-root point
        let a = 2.0 * (1.0 / (d / 2.0).sinh()).asinh();
        let r = (d / 2.0).cosh();
        let c0 = (a / 2.0).cosh();
        let disc = r * r * c0 * c0 - r * r - c0 * c0;
        prop_assert!(disc.abs() < 1e-10 * (1.0 + r * r * c0 * c0));
    }

    #[test]
    fn intersection_is_symmetric_and_diagonal_free(a in primitive_slope(), b in primitive_slope()) {
        prop_assert_eq!(intersection_number(a, b), intersection_number(b, a));
        if a == b {
            prop_assert_eq!(intersection_number(a, b), 0);
        } else {
            prop_assert!(intersection_number(a, b) > 0);
        }
    }

    #[test]
    fn serde_roundtrips(triple in cusped_triple(), slope in primitive_slope(), x in 1.0f64..20.0) {
        let json = serde_json::to_string(&triple).unwrap();
        let back: TraceTriple = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, triple);

        let info = GeodesicInfo::new(slope, HalfTrace::new(x).unwrap());
        let json = serde_json::to_string(&info).unwrap();
        let back: GeodesicInfo = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, info);

        let pair = CrossingPair::new(info, GeodesicInfo::new(Slope::new(1, 0).unwrap(), triple.r()));
        let json = serde_json::to_string(&pair).unwrap();
        let back: CrossingPair = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, pair);
    }
}

#[test]
fn deserialization_rejects_invalid_domain_values() {
    assert!(serde_json::from_str::<Length>("-1.0").is_err());
    assert!(serde_json::from_str::<HalfTrace>("0.25").is_err());
    assert!(serde_json::from_str::<Slope>(r#"{"slope_p": 2, "slope_q": 4}"#).is_err());
    // slopes normalize on the way in
    let s: Slope = serde_json::from_str(r#"{"slope_p": 1, "slope_q": -1}"#).unwrap();
    assert_eq!((s.p(), s.q()), (-1, 1));
}
