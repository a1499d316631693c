//! Crossing-number length bounds: closed forms, the constructive upper
//! bound, and the sandwich between them.
//!
//! For n crossings the threshold length l_n (root of sinh(l/2n) sinh(l/2) = 1)
//! is a lower bound on the longer geodesic, and a zero-twist pasting
//! produces a torus witnessing an upper bound u_n < 2 l_n. Closed-form sharp
//! constants are known for n = 1, 2, 3.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypmath::{solve_ln, HalfTrace, Length, DEFAULT_TOL};
use crate::torus::TraceTriple;

/// Sandwich data for one crossing number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: u32,
    #[serde(rename = "l_n")]
    pub lower: Length,
    #[serde(rename = "u_n")]
    pub upper: Length,
    #[serde(rename = "L_n")]
    pub known: Option<Length>,
    pub sandwich_ok: bool,
}

impl BoundsReport {
    /// CSV cells in the column order n, l_n, u_n, L_n, sandwich_ok; the L_n
    /// cell is empty when no closed form is known.
    pub fn csv_cells(&self) -> (u32, f64, f64, Option<f64>, bool) {
        (
            self.n,
            self.lower.value(),
            self.upper.value(),
            self.known.map(Length::value),
            self.sandwich_ok,
        )
    }
}

/// Exact sharp constant for n = 1, 2, 3 crossings.
///
/// - n = 1: 2 arcsinh 1 (the collar threshold)
/// - n = 2: 2 arccosh 2
/// - n = 3: 2 arccosh sqrt((7 + (11/3) sqrt(11/3)) / 2)
pub fn known_l(n: u32) -> Result<Length> {
    let value = match n {
        1 => 2.0 * 1f64.asinh(),
        2 => 2.0 * 2f64.acosh(),
        3 => {
            let w = (11.0 / 3.0f64).sqrt();
            2.0 * ((7.0 + 11.0 / 3.0 * w) / 2.0).sqrt().acosh()
        }
        _ => return Err(Error::UnknownConstant { n }),
    };
    Length::new(value)
}

/// Symbolic rendering of the closed-form constant, for display next to the
/// numeric value.
pub fn known_l_symbolic(n: u32) -> Option<&'static str> {
    match n {
        1 => Some("2*arcsinh(1)"),
        2 => Some("2*arccosh(2)"),
        3 => Some("2*arccosh(sqrt((7+(11/3)*sqrt(11/3))/2))"),
        _ => None,
    }
}

/// Upper bound from the zero-twist pasting: a torus carrying a geodesic
/// alpha of length l_n and a perpendicular delta of length l_n / n. The
/// marked triple is (r, c0, c1) with r = cosh(l_n/2n), c0 = cosh(l_n/2) and
/// c1 = r c0, the double root of the cusp quadratic. Trace coordinates of
/// the classes delta^k alpha follow the ladder c_{k+1} = 2 r c_k - c_{k-1};
/// the returned bound u_n = 2 arccosh(c_n) is the true geodesic length of
/// delta^n alpha and satisfies u_n < 2 l_n.
pub fn construction_upper_bound(n: u32) -> Result<(Length, TraceTriple)> {
    let l = solve_ln(n, DEFAULT_TOL)?.value();
    let r = (l / (2.0 * f64::from(n))).cosh();
    let c0 = (l / 2.0).cosh();
    let c1 = r * c0;
    let triple = TraceTriple::cusped(r, c0, c1)?;
    let mut prev = c0;
    let mut cur = c1;
    for _ in 1..n {
        (prev, cur) = (cur, 2.0 * r * cur - prev);
    }
    let u = Length::new(2.0 * cur.acosh())?;
    Ok((u, triple))
}

/// Assemble l_n, u_n and the known constant when one exists; `sandwich_ok`
/// records l_n <= u_n < 2 l_n with the known value inside [l_n, u_n].
pub fn sandwich_report(n: u32) -> Result<BoundsReport> {
    let lower = solve_ln(n, DEFAULT_TOL)?;
    let (upper, _) = construction_upper_bound(n)?;
    let known = match known_l(n) {
        Ok(v) => Some(v),
        Err(Error::UnknownConstant { .. }) => None,
        Err(e) => return Err(e),
    };
    let slack = 1e-12;
    let mut ok = lower.value() <= upper.value() + slack && upper.value() < 2.0 * lower.value();
    if let Some(k) = known {
        ok = ok && lower.value() <= k.value() + slack && k.value() <= upper.value() + slack;
    }
    Ok(BoundsReport {
        n,
        lower,
        upper,
        known,
        sandwich_ok: ok,
    })
}

/// Minimal max-length of two distinct interior simple closed geodesics on a
/// four-holed sphere: 4 arcsinh 1 = 2 arccosh 3.
pub fn four_holed_sphere_bound() -> Length {
    Length::new(4.0 * 1f64.asinh()).expect("positive constant")
}

/// The extremal triple for three crossings:
/// (r, s, t) = ((3 + sqrt(11/3))/4, sqrt((13 + 7 sqrt(11/3))/8), same).
pub fn s3_triple() -> TraceTriple {
    let w = (11.0 / 3.0f64).sqrt();
    let r = (3.0 + w) / 4.0;
    let s = ((13.0 + 7.0 * w) / 8.0).sqrt();
    TraceTriple::cusped(r, s, s).expect("closed-form coordinates are valid")
}

/// The squared half-trace of the longer geodesic of the minimal
/// three-crossing pair along the symmetric (s = t) slice, as a function of
/// the systole half-trace r: r^2 (2r - 1)^2 / (2 (r - 1)). Its unique
/// interior minimizer is r = (3 + sqrt(11/3))/4, where the derivative
/// factor 6r^2 - 9r + 2 vanishes.
pub fn b_squared_curve(r: f64) -> Result<f64> {
    if r <= 1.0 {
        return Err(Error::DegenerateSurface { value: r });
    }
    let num = r * r * (2.0 * r - 1.0) * (2.0 * r - 1.0);
    Ok(num / (2.0 * (r - 1.0)))
}

/// Half-trace pinned by the s3 triple for the longer geodesic of its
/// minimal three-crossing pair: b = s (2r - 1).
pub fn s3_pair_halftrace() -> HalfTrace {
    let t = s3_triple();
    HalfTrace::new(t.s().value() * (2.0 * t.r().value() - 1.0)).expect("exceeds 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{cusp_relation_residual, normalize};

    #[test]
    fn known_constants() {
        assert!((known_l(1).unwrap().value() - 1.762747174039086).abs() < 1e-12);
        assert!((known_l(2).unwrap().value() - 2.6339157938496336).abs() < 1e-12);
        assert!((known_l(3).unwrap().value() - 3.2582430019661746).abs() < 1e-12);
        assert!(matches!(known_l(4), Err(Error::UnknownConstant { n: 4 })));
        assert_eq!(known_l_symbolic(2), Some("2*arccosh(2)"));
        assert_eq!(known_l_symbolic(4), None);
    }

    #[test]
    fn construction_n1_is_two_arccosh_two() {
        let (u, triple) = construction_upper_bound(1).unwrap();
        assert!((u.value() - 2.0 * 2f64.acosh()).abs() < 1e-12);
        let [r, c0, c1] = triple.coords();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((c0 - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!((c1 - 2.0).abs() < 1e-12);
        // the construction is not sharp at n = 1
        assert!(u.value() > known_l(1).unwrap().value());
    }

    #[test]
    fn construction_reference_values() {
        // frozen from a 40-digit evaluation of the ladder
        let expected = [
            (2, 3.778611509214188),
            (3, 4.584863339122355),
            (10, 7.491812842563951),
        ];
        for (n, want) in expected {
            let (u, _) = construction_upper_bound(n).unwrap();
            assert!((u.value() - want).abs() < 1e-11, "u_{n}: {}", u.value());
        }
    }

    #[test]
    fn ladder_agrees_with_slope_recursion_and_matrix_oracle() {
        // the class combining n copies of the perpendicular with the pasted
        // geodesic has slope (n, 1) in the construction marking
        use crate::torus::{halftrace_of_slope, matrix_oracle_length, Slope};
        for n in [2u32, 3, 5] {
            let (u, triple) = construction_upper_bound(n).unwrap();
            let slope = Slope::new(i64::from(n), 1).unwrap();
            let via_recursion = halftrace_of_slope(&triple, slope).length().value();
            let via_oracle = matrix_oracle_length(&triple, slope).unwrap().value();
            assert!((via_recursion - u.value()).abs() < 1e-9, "n = {n}");
            assert!((via_oracle - u.value()).abs() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn construction_triple_lies_on_cusp_variety() {
        for n in 1..=10 {
            let (_, triple) = construction_upper_bound(n).unwrap();
            assert!(triple.residual().abs() < 1e-9, "n = {n}");
            assert!(normalize(triple).is_ok());
        }
    }

    #[test]
    fn ladder_traces_increase() {
        for n in 1..=10u32 {
            let l = solve_ln(n, DEFAULT_TOL).unwrap().value();
            let r = (l / (2.0 * f64::from(n))).cosh();
            let mut prev = (l / 2.0).cosh();
            let mut cur = r * prev;
            for _ in 1..n {
                let next = 2.0 * r * cur - prev;
                assert!(next > cur);
                (prev, cur) = (cur, next);
            }
            assert!(cur > prev || n == 1);
        }
    }

    #[test]
    fn sandwich_holds_for_small_n() {
        for n in 1..=10 {
            let report = sandwich_report(n).unwrap();
            assert!(report.sandwich_ok, "sandwich failed at n = {n}");
            assert!(report.lower.value() <= report.upper.value());
            assert!(report.upper.value() < 2.0 * report.lower.value());
            if n <= 3 {
                let k = report.known.unwrap().value();
                assert!(report.lower.value() <= k + 1e-12);
                assert!(k <= report.upper.value() + 1e-12);
            } else {
                assert!(report.known.is_none());
            }
        }
        // n = 1 is tight: the lower bound equals the known constant
        let r1 = sandwich_report(1).unwrap();
        assert!((r1.lower.value() - r1.known.unwrap().value()).abs() < 1e-12);
    }

    #[test]
    fn four_holed_sphere_identity() {
        let b = four_holed_sphere_bound().value();
        assert!((b - 3.525494348078172).abs() < 1e-12);
        assert!((b - 2.0 * 3f64.acosh()).abs() < 1e-12);
        // crossing twice is cheaper on a torus than on a four-holed sphere
        assert!(b > known_l(2).unwrap().value());
    }

    #[test]
    fn s3_triple_checks() {
        let t = s3_triple();
        let [r, s, tt] = t.coords();
        assert!((r - 1.228713553878169).abs() < 1e-12);
        assert!((s - 1.8167271227604853).abs() < 1e-12);
        assert_eq!(s, tt);
        assert!(cusp_relation_residual(r, s, tt).abs() < 1e-10);
        // b = 2rt - s = s(2r - 1) matches the three-crossing constant
        let b = s3_pair_halftrace().value();
        assert!((b - (2.0 * r * tt - s)).abs() < 1e-12);
        assert!((2.0 * b.acosh() - known_l(3).unwrap().value()).abs() < 1e-10);
        // already in the fundamental domain
        let n = normalize(t).unwrap();
        assert_eq!(n.coords(), t.coords());
    }

    #[test]
    fn b_squared_curve_minimizer() {
        let w = (11.0 / 3.0f64).sqrt();
        let r_star = (3.0 + w) / 4.0;
        let want = (7.0 + 11.0 / 3.0 * w) / 2.0;
        assert!((b_squared_curve(r_star).unwrap() - want).abs() < 1e-12);
        assert!((6.0 * r_star * r_star - 9.0 * r_star + 2.0).abs() < 1e-10);
        assert!(b_squared_curve(1.0).is_err());

        // golden-section oracle over (1.001, 10) lands on r_star
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut lo, mut hi) = (1.001f64, 10.0f64);
        while hi - lo > 1e-12 {
            let m1 = hi - phi * (hi - lo);
            let m2 = lo + phi * (hi - lo);
            if b_squared_curve(m1).unwrap() < b_squared_curve(m2).unwrap() {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let found = 0.5 * (lo + hi);
        assert!((found - r_star).abs() < 1e-8);
    }
}
