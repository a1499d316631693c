//! Marked one-holed tori in half-trace coordinates.
//!
//! A marked once-punctured torus is encoded by the half-traces (r, s, t) of
//! three simple closed geodesics that pairwise intersect once; the cusp
//! condition is the relation 2rst = r^2 + s^2 + t^2. Simple closed geodesics
//! are indexed by primitive integer slopes (p, q); crossing numbers are
//! determinants; half-traces of arbitrary slopes follow from the mediant
//! recursion new = 2 * parent1 * parent2 - grandparent along the Farey tree.
//!
//! Remarkings of the same surface are generated by the Markov moves
//! t -> 2rs - t (and permutations), which swap the two roots of the cusp
//! relation viewed as a quadratic in one coordinate.

mod oracle;
mod spectrum;

pub use oracle::matrix_oracle_length;
pub use spectrum::{enumerate_geodesics, halftrace_of_slope, pairs_with_intersection};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypmath::{HalfTrace, Length};

/// Residual tolerance under which a triple is accepted as cusped.
pub const CUSP_RESIDUAL_TOL: f64 = 1e-6;

// ---------------------------------------------------------------------------
// Slopes
// ---------------------------------------------------------------------------

/// A primitive integer pair labeling a free homotopy class of simple closed
/// curve. Classes are unoriented, so slopes are normalized to q > 0, or
/// q = 0 with p = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSlope", into = "RawSlope")]
pub struct Slope {
    p: i64,
    q: i64,
}

#[derive(Serialize, Deserialize)]
struct RawSlope {
    slope_p: i64,
    slope_q: i64,
}

impl From<Slope> for RawSlope {
    fn from(s: Slope) -> Self {
        RawSlope {
            slope_p: s.p,
            slope_q: s.q,
        }
    }
}

impl TryFrom<RawSlope> for Slope {
    type Error = Error;
    fn try_from(raw: RawSlope) -> Result<Self> {
        Slope::new(raw.slope_p, raw.slope_q)
    }
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidSlope { p, q });
        }
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return Err(Error::InvalidSlope { p, q });
        }
        let (p, q) = if q < 0 || (q == 0 && p < 0) {
            (-p, -q)
        } else {
            (p, q)
        };
        Ok(Slope { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Geometric intersection number of two slopes: |p q' - q p'|. Symmetric,
/// and zero exactly on the diagonal.
pub fn intersection_number(a: Slope, b: Slope) -> u64 {
    let det = i128::from(a.p) * i128::from(b.q) - i128::from(a.q) * i128::from(b.p);
    u64::try_from(det.unsigned_abs()).unwrap_or(u64::MAX)
}

/// Every normalized primitive slope with |p| <= max and 0 <= q <= max,
/// each class listed once. Handy for sweeps and cross-checks.
pub fn slopes_in_box(max: i64) -> Vec<Slope> {
    let mut out = Vec::new();
    for p in -max..=max {
        for q in 0..=max {
            if let Ok(s) = Slope::new(p, q) {
                if (s.p(), s.q()) == (p, q) {
                    out.push(s);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Trace triples
// ---------------------------------------------------------------------------

/// Ordered half-traces (r, s, t) of three pairwise-once-intersecting
/// geodesics plus the boundary length (0 for a cusp). Encodes a marked
/// one-holed torus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceTriple {
    r: HalfTrace,
    s: HalfTrace,
    t: HalfTrace,
    #[serde(rename = "boundary_length")]
    boundary: Length,
}

impl TraceTriple {
    pub fn new(r: HalfTrace, s: HalfTrace, t: HalfTrace, boundary: Length) -> Self {
        TraceTriple { r, s, t, boundary }
    }

    /// Triple with cusp boundary, validating each coordinate as a half-trace.
    pub fn cusped(r: f64, s: f64, t: f64) -> Result<Self> {
        Ok(TraceTriple {
            r: HalfTrace::new(r)?,
            s: HalfTrace::new(s)?,
            t: HalfTrace::new(t)?,
            boundary: Length::ZERO,
        })
    }

    pub fn r(&self) -> HalfTrace {
        self.r
    }

    pub fn s(&self) -> HalfTrace {
        self.s
    }

    pub fn t(&self) -> HalfTrace {
        self.t
    }

    pub fn boundary(&self) -> Length {
        self.boundary
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.r.value(), self.s.value(), self.t.value()]
    }

    /// 2rst - r^2 - s^2 - t^2; zero iff the triple marks a cusped torus.
    pub fn residual(&self) -> f64 {
        let [r, s, t] = self.coords();
        cusp_relation_residual(r, s, t)
    }

    /// Cusped test with the residual measured relative to the size of the
    /// 2rst term, so that remarkings with large coordinates (whose raw
    /// residual drifts quadratically under rounding) are still recognized.
    pub fn is_cusped(&self, tol: f64) -> bool {
        let [r, s, t] = self.coords();
        let scale = 1.0 + 2.0 * (r * s * t).abs();
        self.boundary.is_cusp() && self.residual().abs() <= tol * scale
    }
}

/// 2rst - r^2 - s^2 - t^2 for raw coordinates.
pub fn cusp_relation_residual(r: f64, s: f64, t: f64) -> f64 {
    2.0 * r * s * t - r * r - s * s - t * t
}

/// Both roots of the cusp relation solved as a quadratic in the third
/// coordinate: t = rs -+ sqrt(r^2 s^2 - r^2 - s^2). Returns (low, high);
/// the roots satisfy low * high = r^2 + s^2 and low + high = 2rs.
pub fn complete_triple(r: HalfTrace, s: HalfTrace) -> Result<(HalfTrace, HalfTrace)> {
    let (rv, sv) = (r.value(), s.value());
    for v in [rv, sv] {
        if v <= 1.0 {
            return Err(Error::DegenerateSurface { value: v });
        }
    }
    let discriminant = rv * rv * sv * sv - rv * rv - sv * sv;
    if discriminant < 0.0 {
        return Err(Error::NoCuspedTorus { discriminant });
    }
    let sq = discriminant.sqrt();
    let t_high = rv * sv + sq;
    // Citardauq form avoids cancellation in the low root.
    let t_low = (rv * rv + sv * sv) / t_high;
    Ok((HalfTrace::new(t_low)?, HalfTrace::new(t_high)?))
}

/// Which coordinate a Markov move replaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coord {
    R,
    S,
    T,
}

/// Replace the chosen coordinate x by 2 * (product of the other two) - x,
/// exchanging the two roots of the cusp relation in that variable. The
/// relation residual is invariant, and the move is an involution.
pub fn markov_move(triple: TraceTriple, coord: Coord) -> Result<TraceTriple> {
    let [r, s, t] = triple.coords();
    let (nr, ns, nt) = match coord {
        Coord::R => (2.0 * s * t - r, s, t),
        Coord::S => (r, 2.0 * r * t - s, t),
        Coord::T => (r, s, 2.0 * r * s - t),
    };
    Ok(TraceTriple {
        r: HalfTrace::new(nr)?,
        s: HalfTrace::new(ns)?,
        t: HalfTrace::new(nt)?,
        boundary: triple.boundary,
    })
}

/// Bring a cusped triple into the fundamental domain 1 < r <= s <= t <= rs
/// by repeatedly replacing the largest coordinate while it exceeds the
/// product of the other two, then sorting. Each effective move strictly
/// decreases the largest coordinate, so the loop terminates.
pub fn normalize(triple: TraceTriple) -> Result<TraceTriple> {
    let mut c = triple.coords();
    for &v in &c {
        if v <= 1.0 {
            return Err(Error::DegenerateSurface { value: v });
        }
    }
    if !triple.is_cusped(CUSP_RESIDUAL_TOL) {
        return Err(Error::NotCusped {
            residual: triple.residual(),
        });
    }
    let mut steps = 0u32;
    loop {
        c.sort_by(f64::total_cmp);
        if c[2] <= c[0] * c[1] {
            break;
        }
        // root form of the move t -> 2rs - t: on the cusp variety the two
        // roots multiply to r^2 + s^2, and the quotient avoids the
        // cancellation of the difference form when t is close to 2rs
        c[2] = (c[0] * c[0] + c[1] * c[1]) / c[2];
        if c[2] <= 1.0 {
            return Err(Error::DegenerateSurface { value: c[2] });
        }
        steps += 1;
        if steps > 100_000 {
            return Err(Error::NoConvergence {
                iterations: steps,
                lo: c[0],
                hi: c[2],
            });
        }
    }
    TraceTriple::cusped(c[0], c[1], c[2])
}

// ---------------------------------------------------------------------------
// Geodesics and crossing pairs
// ---------------------------------------------------------------------------

/// A simple closed geodesic on a marked torus: its slope, half-trace and
/// length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicInfo {
    #[serde(flatten)]
    pub slope: Slope,
    pub halftrace: HalfTrace,
    pub length: Length,
}

impl GeodesicInfo {
    pub fn new(slope: Slope, halftrace: HalfTrace) -> Self {
        GeodesicInfo {
            slope,
            halftrace,
            length: halftrace.length(),
        }
    }
}

/// An unordered pair of distinct simple closed geodesics together with
/// their geometric intersection number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingPair {
    pub first: GeodesicInfo,
    pub second: GeodesicInfo,
    pub crossings: u64,
}

impl CrossingPair {
    pub fn new(first: GeodesicInfo, second: GeodesicInfo) -> Self {
        let crossings = intersection_number(first.slope, second.slope);
        CrossingPair {
            first,
            second,
            crossings,
        }
    }

    pub fn max_length(&self) -> Length {
        if self.first.length >= self.second.length {
            self.first.length
        } else {
            self.second.length
        }
    }
}

// ---------------------------------------------------------------------------
// Two-crossing minimum
// ---------------------------------------------------------------------------

/// Sharp minimum length of a simple closed geodesic crossing a geodesic of
/// length `alpha` twice, over all one-holed tori with boundary length `eps`
/// containing it. Evaluated as beta = 4 arcsinh(cosh(eps/4) / (2 sinh(alpha/4))),
/// equivalent to cosh(beta/2) = 1 + (cosh(eps/2) + 1) / (2 (cosh(alpha/2) - 1))
/// but stable for both small and large alpha. Strictly decreasing in alpha.
pub fn min_two_crossing_partner(alpha: Length, eps: Length) -> Result<Length> {
    let a = alpha.value();
    if a <= 0.0 {
        return Err(Error::NonPositiveLength {
            op: "min_two_crossing_partner",
            value: a,
        });
    }
    let e = eps.value();
    let quarter = (e / 4.0).cosh() / (2.0 * (a / 4.0).sinh());
    Length::new(4.0 * quarter.asinh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypmath::Length;

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    fn slope(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn slope_normalization() {
        assert_eq!(slope(1, -1), slope(-1, 1));
        assert_eq!(slope(-1, 0), slope(1, 0));
        assert_eq!(slope(1, -1).q(), 1);
        assert!(Slope::new(0, 0).is_err());
        assert!(Slope::new(2, 4).is_err());
        assert!(Slope::new(2, 0).is_err());
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection_number(slope(1, 0), slope(0, 1)), 1);
        assert_eq!(intersection_number(slope(1, -1), slope(2, 1)), 3);
        assert_eq!(intersection_number(slope(1, 0), slope(1, 2)), 2);
    }

    #[test]
    fn intersection_symmetric_and_zero_on_diagonal() {
        let slopes = [slope(1, 0), slope(0, 1), slope(3, 2), slope(-5, 3)];
        for a in slopes {
            for b in slopes {
                assert_eq!(intersection_number(a, b), intersection_number(b, a));
                if a == b {
                    assert_eq!(intersection_number(a, b), 0);
                } else {
                    assert!(intersection_number(a, b) > 0);
                }
            }
        }
    }

    #[test]
    fn residual_examples() {
        // symmetric solution of 2s^3 = 3s^2 at s = 3/2, the modular torus
        assert_eq!(cusp_relation_residual(1.5, 1.5, 1.5), 0.0);
        // (sqrt 2, sqrt 2, 2): double root of 4t = 4 + t^2
        assert!(cusp_relation_residual(SQRT_2, SQRT_2, 2.0).abs() < 1e-12);
    }

    #[test]
    fn complete_triple_double_root() {
        let (lo, hi) = complete_triple(
            HalfTrace::new(SQRT_2).unwrap(),
            HalfTrace::new(SQRT_2).unwrap(),
        )
        .unwrap();
        assert!((lo.value() - 2.0).abs() < 1e-7);
        assert!((hi.value() - 2.0).abs() < 1e-7);
    }

    #[test]
    fn complete_triple_modular_row() {
        let h = HalfTrace::new(1.5).unwrap();
        let (lo, hi) = complete_triple(h, h).unwrap();
        assert!((lo.value() - 1.5).abs() < 1e-12);
        assert!((hi.value() - 3.0).abs() < 1e-12);
        // root sum and product identities
        assert!((lo.value() + hi.value() - 2.0 * 1.5 * 1.5).abs() < 1e-9);
        assert!((lo.value() * hi.value() - (1.5f64.powi(2) * 2.0)).abs() < 1e-9);
        for t in [lo, hi] {
            assert!(cusp_relation_residual(1.5, 1.5, t.value()).abs() < 1e-12);
        }
    }

    #[test]
    fn complete_triple_rejects_near_degenerate() {
        let h = HalfTrace::new(1.01).unwrap();
        assert!(matches!(
            complete_triple(h, h),
            Err(Error::NoCuspedTorus { .. })
        ));
    }

    #[test]
    fn markov_move_examples() {
        let s1 = TraceTriple::cusped(SQRT_2, SQRT_2, 2.0).unwrap();
        let moved = markov_move(s1, Coord::T).unwrap();
        assert!((moved.t().value() - 2.0).abs() < 1e-12, "double root is fixed");

        let modular = TraceTriple::cusped(1.5, 1.5, 1.5).unwrap();
        let moved = markov_move(modular, Coord::T).unwrap();
        assert_eq!(moved.t().value(), 3.0);
    }

    #[test]
    fn markov_move_is_involution_and_preserves_residual() {
        let triple = TraceTriple::cusped(1.5, 1.5, 3.0).unwrap();
        for coord in [Coord::R, Coord::S, Coord::T] {
            let twice = markov_move(markov_move(triple, coord).unwrap(), coord).unwrap();
            let [a, b, c] = twice.coords();
            let [x, y, z] = triple.coords();
            assert!((a - x).abs() < 1e-9 && (b - y).abs() < 1e-9 && (c - z).abs() < 1e-9);
            let moved = markov_move(triple, coord).unwrap();
            assert!((moved.residual() - triple.residual()).abs() < 1e-9);
        }
    }

    #[test]
    fn normalize_examples() {
        let t = TraceTriple::cusped(1.5, 1.5, 3.0).unwrap();
        let n = normalize(t).unwrap();
        assert_eq!(n.coords(), [1.5, 1.5, 1.5]);
        // idempotent
        let again = normalize(n).unwrap();
        assert_eq!(again.coords(), n.coords());
        // sorting only; t = rs boundary case kept
        let t = TraceTriple::cusped(SQRT_2, 2.0, SQRT_2).unwrap();
        let n = normalize(t).unwrap();
        let [r, s, tt] = n.coords();
        assert!((r - SQRT_2).abs() < 1e-12);
        assert!((s - SQRT_2).abs() < 1e-12);
        assert!((tt - 2.0).abs() < 1e-12);
    }

    #[test]
    fn normalize_rejects_degenerate_and_non_cusped() {
        let t = TraceTriple::cusped(1.0, 2.0, 2.0).unwrap();
        assert!(matches!(
            normalize(t),
            Err(Error::DegenerateSurface { .. })
        ));
        let t = TraceTriple::cusped(2.0, 2.0, 2.0).unwrap();
        assert!(matches!(normalize(t), Err(Error::NotCusped { .. })));
    }

    #[test]
    fn normalize_output_in_fundamental_domain() {
        let t = TraceTriple::cusped(1.5, 1.5, 1.5).unwrap();
        let mut wild = t;
        for coord in [Coord::T, Coord::S, Coord::T, Coord::R, Coord::S] {
            wild = markov_move(wild, coord).unwrap();
        }
        let n = normalize(wild).unwrap();
        let [r, s, tt] = n.coords();
        assert!(1.0 < r && r <= s && s <= tt && tt <= r * s + 1e-9);
        assert_eq!(n.coords(), [1.5, 1.5, 1.5]);
    }

    #[test]
    fn two_crossing_partner_fixed_point() {
        let alpha = Length::new(2.0 * 2f64.acosh()).unwrap();
        let beta = min_two_crossing_partner(alpha, Length::ZERO).unwrap();
        assert!((beta.value() - alpha.value()).abs() < 1e-12);
    }

    #[test]
    fn two_crossing_partner_at_collar_threshold() {
        let alpha = Length::new(2.0 * 1f64.asinh()).unwrap();
        let beta = min_two_crossing_partner(alpha, Length::ZERO).unwrap();
        let expected = 2.0 * (2.0 + SQRT_2).acosh();
        assert!((beta.value() - expected).abs() < 1e-12);
        assert!((beta.value() - 3.7978459152056847).abs() < 1e-12);
    }

    #[test]
    fn two_crossing_partner_decreasing_toward_zero() {
        let mut prev = f64::INFINITY;
        for alpha in [1.0, 2.0, 4.0, 8.0, 16.0, 64.0] {
            let beta = min_two_crossing_partner(Length::new(alpha).unwrap(), Length::ZERO)
                .unwrap()
                .value();
            assert!(beta < prev, "must decrease strictly in alpha");
            prev = beta;
        }
        // cosh(beta/2) -> 1 in the limit
        let far = min_two_crossing_partner(Length::new(64.0).unwrap(), Length::ZERO)
            .unwrap()
            .value();
        assert!((far / 2.0).cosh() - 1.0 < 1e-10);
    }

    #[test]
    fn two_crossing_partner_matches_closed_form_with_boundary() {
        for (a, e) in [(1.3, 0.7), (2.6, 1.9), (5.0, 0.0), (0.8, 3.2)] {
            let beta = min_two_crossing_partner(
                Length::new(a).unwrap(),
                Length::new(e).unwrap(),
            )
            .unwrap()
            .value();
            let closed = 1.0 + ((e / 2.0).cosh() + 1.0) / (2.0 * ((a / 2.0).cosh() - 1.0));
            assert!(((beta / 2.0).cosh() - closed).abs() < 1e-10);
        }
    }

    #[test]
    fn two_crossing_partner_rejects_cusp_alpha() {
        assert!(matches!(
            min_two_crossing_partner(Length::ZERO, Length::ZERO),
            Err(Error::NonPositiveLength { .. })
        ));
    }

    #[test]
    fn json_shapes_are_stable() {
        let triple = TraceTriple::cusped(1.5, 1.5, 1.5).unwrap();
        let v = serde_json::to_value(triple).unwrap();
        assert_eq!(v["r"], 1.5);
        assert_eq!(v["boundary_length"], 0.0);

        let info = GeodesicInfo::new(slope(2, 1), HalfTrace::new(3.0).unwrap());
        let v = serde_json::to_value(info).unwrap();
        assert_eq!(v["slope_p"], 2);
        assert_eq!(v["slope_q"], 1);
        assert!((v["halftrace"].as_f64().unwrap() - 3.0).abs() < 1e-15);
        assert!((v["length"].as_f64().unwrap() - 2.0 * 3f64.acosh()).abs() < 1e-12);

        let pair = CrossingPair::new(
            GeodesicInfo::new(slope(1, 0), HalfTrace::new(1.5).unwrap()),
            GeodesicInfo::new(slope(0, 1), HalfTrace::new(1.5).unwrap()),
        );
        let v = serde_json::to_value(pair).unwrap();
        assert_eq!(v["crossings"], 1);
        assert_eq!(v["first"]["slope_p"], 1);

        let back: CrossingPair = serde_json::from_value(v).unwrap();
        assert_eq!(back, pair);
    }
}
