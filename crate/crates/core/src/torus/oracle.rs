//! Independent length oracle through an explicit matrix representation.
//!
//! Builds two real unimodular 2x2 matrices with the prescribed half-traces
//! r, s and product half-trace t, then multiplies out the word attached to a
//! slope and reads the length off the absolute trace. This shares no trace
//! algebra with `halftrace_of_slope`, which makes it a genuine cross-check.

use crate::error::{Error, Result};
use crate::hypmath::Length;

use super::{Slope, TraceTriple, CUSP_RESIDUAL_TOL};

type Mat = [[f64; 2]; 2];

fn mul(a: &Mat, b: &Mat) -> Mat {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn trace(m: &Mat) -> f64 {
    m[0][0] + m[1][1]
}

/// Length of the geodesic with the given slope, computed from the matrix
/// representation: 2 * arccosh(|trace(word)| / 2).
pub fn matrix_oracle_length(triple: &TraceTriple, slope: Slope) -> Result<Length> {
    if !triple.is_cusped(CUSP_RESIDUAL_TOL) {
        return Err(Error::NotCusped {
            residual: triple.residual(),
        });
    }
    let [r, s, t] = triple.coords();

    // First generator: diagonal with eigenvalues e^{+-len/2}, trace 2r.
    let lambda = r + (r * r - 1.0).sqrt();
    let denom = lambda * lambda - 1.0;
    if denom.is_nan() || denom <= 0.0 {
        return Err(Error::OracleFailure {
            reason: format!("first generator is parabolic (half-trace {r})"),
        });
    }
    let x: Mat = [[lambda, 0.0], [0.0, 1.0 / lambda]];

    // Second generator: trace 2s and product trace 2t pin the diagonal;
    // the off-diagonal entries only need to satisfy det = 1.
    let a = 2.0 * (t * lambda - s) / denom;
    let d = 2.0 * s - a;
    let y: Mat = [[a, 1.0], [a * d - 1.0, d]];

    let scale = 1.0 + t.abs();
    if (trace(&mul(&x, &y)) - 2.0 * t).abs() > 1e-8 * scale {
        return Err(Error::OracleFailure {
            reason: "product trace drifted during construction".into(),
        });
    }

    let (p, q) = (slope.p(), slope.q());
    if (p, q) == (1, 0) {
        return half_trace_length(trace(&x));
    }
    if (p, q) == (0, 1) {
        return half_trace_length(trace(&y));
    }

    // Slopes with p < 0 are words in (X^{-1}, Y).
    let x_gen: Mat = if p < 0 {
        [[1.0 / lambda, 0.0], [0.0, lambda]]
    } else {
        x
    };
    let target = (p.abs(), q);

    let mut left = (1i64, 0i64);
    let mut right = (0i64, 1i64);
    let mut mediant = (1i64, 1i64);
    let mut w_left = x_gen;
    let mut w_right = y;
    let mut w_mediant = mul(&x_gen, &y);
    loop {
        if mediant == target {
            return half_trace_length(trace(&w_mediant));
        }
        if i128::from(target.0) * i128::from(mediant.1)
            > i128::from(target.1) * i128::from(mediant.0)
        {
            right = mediant;
            w_right = w_mediant;
            w_mediant = mul(&w_left, &w_right);
        } else {
            left = mediant;
            w_left = w_mediant;
            w_mediant = mul(&w_left, &w_right);
        }
        mediant = (left.0 + right.0, left.1 + right.1);
    }
}

fn half_trace_length(tr: f64) -> Result<Length> {
    let half = tr.abs() / 2.0;
    if !half.is_finite() || half < 1.0 - 1e-6 {
        return Err(Error::OracleFailure {
            reason: format!("word trace {tr} is not hyperbolic"),
        });
    }
    Length::new(2.0 * half.max(1.0).acosh())
}
