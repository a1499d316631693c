//! Scalar hyperbolic-trigonometry kernels.
//!
//! Everything in this module is a pure function of plain scalars: collar
//! widths, the implicit equation for the crossing threshold `l_n`, and the
//! three polygon relations (right-angled pentagon, tri-rectangle, and the
//! quadrilateral with one zero angle) that the rest of the crate composes.
//!
//! Lengths are hyperbolic geodesic lengths; a length of 0 encodes a cusp.
//! The half-trace of a closed geodesic is cosh(length/2), the coordinate in
//! which all trace algebra happens.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for scalar solves; leaves two digits of slack against
/// the 1e-10 test tolerances used downstream.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Above this argument, sinh/cosh compositions switch to log-sum evaluation
/// so that products of large factors cannot overflow.
const LOG_DOMAIN_THRESHOLD: f64 = 30.0;

const LN_2: f64 = std::f64::consts::LN_2;

// ---------------------------------------------------------------------------
// Domain scalars
// ---------------------------------------------------------------------------

/// Nonnegative hyperbolic length. Zero is allowed and encodes a cusp.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Length(f64);

impl Length {
    pub const ZERO: Length = Length(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::NegativeLength(value));
        }
        Ok(Length(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// True when the length is 0, i.e. the boundary is a cusp.
    pub fn is_cusp(self) -> bool {
        self.0 == 0.0
    }

    /// cosh(length/2), the half-trace of the corresponding geodesic.
    pub fn half_trace(self) -> HalfTrace {
        HalfTrace((self.0 / 2.0).cosh())
    }
}

impl TryFrom<f64> for Length {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Length::new(v)
    }
}

impl From<Length> for f64 {
    fn from(l: Length) -> f64 {
        l.0
    }
}

impl std::fmt::Display for Length {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// cosh of half the length of a closed geodesic; always >= 1, with 1
/// corresponding to length 0 (a cusp).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct HalfTrace(f64);

impl HalfTrace {
    pub fn new(value: f64) -> Result<Self> {
        // Recursions can undershoot 1 by rounding noise; clamp that, reject
        // anything genuinely below.
        if !value.is_finite() || value < 1.0 - 1e-9 {
            return Err(Error::HalfTraceRange(value));
        }
        Ok(HalfTrace(value.max(1.0)))
    }

    /// Internal constructor for recursion outputs that are >= 1 by
    /// construction (may overflow to infinity on very long slopes).
    pub(crate) fn new_unchecked(value: f64) -> Self {
        HalfTrace(value.max(1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// 2*arccosh(half-trace), the geodesic length.
    pub fn length(self) -> Length {
        Length(2.0 * self.0.acosh())
    }

    pub fn from_length(len: Length) -> Self {
        len.half_trace()
    }
}

impl TryFrom<f64> for HalfTrace {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        HalfTrace::new(v)
    }
}

impl From<HalfTrace> for f64 {
    fn from(h: HalfTrace) -> f64 {
        h.0
    }
}

impl std::fmt::Display for HalfTrace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Half-width of the embedded collar around a simple closed geodesic.
/// Positive for every geodesic of finite positive length.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CollarWidth(f64);

impl CollarWidth {
    pub fn value(self) -> f64 {
        self.0
    }
}

// ---------------------------------------------------------------------------
// Log-domain helpers
// ---------------------------------------------------------------------------

/// ln(sinh x) for x > 0, stable for large x.
fn ln_sinh(x: f64) -> f64 {
    if x > LOG_DOMAIN_THRESHOLD {
        x - LN_2 + (-(-2.0 * x).exp()).ln_1p()
    } else {
        x.sinh().ln()
    }
}

/// arccosh(e^p) for large p; the correction term is below machine precision
/// once p exceeds the log-domain threshold.
fn acosh_of_exp(p: f64) -> f64 {
    p + LN_2
}

/// arcsinh(e^p) for large p.
fn asinh_of_exp(p: f64) -> f64 {
    p + LN_2
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Width of the embedded collar around a simple closed geodesic of length
/// `len`: arcsinh(1/sinh(len/2)). Strictly decreasing in the length.
pub fn collar_width(len: Length) -> Result<CollarWidth> {
    let l = len.value();
    if l <= 0.0 {
        return Err(Error::NonPositiveLength {
            op: "collar_width",
            value: l,
        });
    }
    Ok(CollarWidth(inv_sinh_arcsinh(l / 2.0)))
}

/// arcsinh(1/sinh(x)) for x > 0, routed through the log domain when the
/// reciprocal would lose all precision.
fn inv_sinh_arcsinh(x: f64) -> f64 {
    if x > LOG_DOMAIN_THRESHOLD {
        // 1/sinh(x) = 2 e^{-x} / (1 - e^{-2x}); arcsinh(y) ~ y for tiny y.
        2.0 * (-x).exp() / (1.0 - (-2.0 * x).exp())
    } else {
        (1.0 / x.sinh()).asinh()
    }
}

/// Lower bound on the length of any geodesic crossing a geodesic of length
/// `len_beta` transversally `n` times: 2n times the collar width.
pub fn crossing_lower_bound(len_beta: Length, n: u32) -> Result<Length> {
    let w = collar_width(len_beta)?;
    Ok(Length(2.0 * f64::from(n) * w.value()))
}

/// Positive solution of sinh(l/2n) * sinh(l/2) = 1, the threshold length for
/// n crossings. The left side is strictly increasing in l, so the root is
/// unique; bracketed bisection down to width 1e-14 followed by two Newton
/// polish steps restores full double precision.
pub fn solve_ln(n: u32, tol: f64) -> Result<Length> {
    if n == 0 {
        return Err(Error::InvalidConfig {
            reason: "solve_ln requires n >= 1".into(),
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidConfig {
            reason: format!("solve_ln tolerance must be positive, got {tol}"),
        });
    }
    let nf = f64::from(n);
    let g = |l: f64| (l / (2.0 * nf)).sinh() * (l / 2.0).sinh() - 1.0;
    let dg = |l: f64| {
        (l / (2.0 * nf)).cosh() * (l / 2.0).sinh() / (2.0 * nf)
            + (l / (2.0 * nf)).sinh() * (l / 2.0).cosh() / 2.0
    };

    let mut lo = 1e-9;
    let mut hi = 2.0;
    let mut guard = 0u32;
    while g(hi) < 0.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::NoConvergence {
                iterations: guard,
                lo,
                hi,
            });
        }
    }
    let mut iterations = 0u32;
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > 200 {
            return Err(Error::NoConvergence { iterations, lo, hi });
        }
    }
    let mut root = 0.5 * (lo + hi);
    for _ in 0..2 {
        root -= g(root) / dg(root);
    }
    if g(root).abs() >= tol {
        return Err(Error::NoConvergence {
            iterations,
            lo,
            hi,
        });
    }
    Length::new(root)
}

/// Side opposite the two given adjacent sides in a right-angled pentagon:
/// c = arccosh(sinh a * sinh b). The pentagon exists only when the product
/// exceeds 1.
pub fn pentagon_side(a: Length, b: Length) -> Result<Length> {
    let (av, bv) = (a.value(), b.value());
    if av <= 0.0 {
        return Err(Error::NonPositiveLength {
            op: "pentagon_side",
            value: av,
        });
    }
    if bv <= 0.0 {
        return Err(Error::NonPositiveLength {
            op: "pentagon_side",
            value: bv,
        });
    }
    let product = if av > LOG_DOMAIN_THRESHOLD || bv > LOG_DOMAIN_THRESHOLD {
        let ln_product = ln_sinh(av) + ln_sinh(bv);
        if ln_product > LOG_DOMAIN_THRESHOLD {
            return Length::new(acosh_of_exp(ln_product));
        }
        ln_product.exp()
    } else {
        av.sinh() * bv.sinh()
    };
    if product <= 1.0 {
        return Err(Error::DegeneratePentagon { product });
    }
    Length::new(product.acosh())
}

/// In a quadrilateral with three right angles, the half-side opposite the
/// acute corner given the two half-sides a, b at the right-angled corner:
/// arcsinh(sinh a * cosh b). b = 0 degenerates cleanly (cosh 0 = 1).
pub fn trirect_quad_opposite(a: Length, b: Length) -> Result<Length> {
    let (av, bv) = (a.value(), b.value());
    if av <= 0.0 {
        return Err(Error::NonPositiveLength {
            op: "trirect_quad_opposite",
            value: av,
        });
    }
    let product = if av > LOG_DOMAIN_THRESHOLD || bv > LOG_DOMAIN_THRESHOLD {
        let ln_product = ln_sinh(av) + ln_cosh(bv);
        if ln_product > LOG_DOMAIN_THRESHOLD {
            return Length::new(asinh_of_exp(ln_product));
        }
        ln_product.exp()
    } else {
        av.sinh() * bv.cosh()
    };
    Length::new(product.asinh())
}

/// ln(cosh x), stable for large x.
fn ln_cosh(x: f64) -> f64 {
    if x > LOG_DOMAIN_THRESHOLD {
        x - LN_2 + (-2.0 * x).exp().ln_1p()
    } else {
        x.cosh().ln()
    }
}

/// Finite side of a quadrilateral with three right angles and one zero
/// angle, given the adjacent half-height: l = arcsinh(1/sinh(h_half)).
/// Coincides with `collar_width` at twice the argument.
pub fn zero_angle_quad_side(h_half: Length) -> Result<Length> {
    let h = h_half.value();
    if h <= 0.0 {
        return Err(Error::NonPositiveLength {
            op: "zero_angle_quad_side",
            value: h,
        });
    }
    Length::new(inv_sinh_arcsinh(h))
}
