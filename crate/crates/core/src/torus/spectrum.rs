//! Slope-indexed half-traces and simple length spectra.
//!
//! The simple closed geodesics of a marked torus correspond to primitive
//! slopes. With the base marking (1,0) -> r, (0,1) -> s, (1,1) -> t, the
//! half-trace of any other slope follows from the mediant recursion
//! new = 2 * x_parent1 * x_parent2 - x_grandparent while descending the
//! Stern-Brocot tree toward the slope. Classes with p < 0 live on the other
//! side of the (1,0)-(0,1) edge and use the third root 2rs - t as the base
//! mediant.
//!
//! Enumeration walks the same tree breadth-first from a normalized triple.
//! From a normalized root every mediant half-trace dominates the traces on
//! its triangle's edge, so a branch can be pruned as soon as its mediant
//! exceeds the cutoff; this makes the walk complete with finite work.

use crate::error::{Error, Result};
use crate::hypmath::{HalfTrace, Length};

use super::{
    intersection_number, normalize, CrossingPair, GeodesicInfo, Slope, TraceTriple,
};

/// Half-trace of the simple closed geodesic with the given slope, by
/// descending the Farey tree from the base marking. Exact base cases:
/// (1,0) -> r, (0,1) -> s, (1,1) -> t, (-1,1) -> 2rs - t, (2,1) -> 2rt - s.
pub fn halftrace_of_slope(triple: &TraceTriple, slope: Slope) -> HalfTrace {
    let [r, s, t] = triple.coords();
    let (p, q) = (slope.p(), slope.q());
    if (p, q) == (1, 0) {
        return triple.r();
    }
    if (p, q) == (0, 1) {
        return triple.s();
    }
    let (target_p, base_mediant) = if p < 0 { (-p, 2.0 * r * s - t) } else { (p, t) };
    let target = (target_p, q);

    let mut left = (1i64, 0i64);
    let mut right = (0i64, 1i64);
    let mut mediant = (1i64, 1i64);
    let (mut xl, mut xr, mut xm) = (r, s, base_mediant);
    loop {
        if mediant == target {
            return HalfTrace::new_unchecked(xm);
        }
        if i128::from(target.0) * i128::from(mediant.1)
            > i128::from(target.1) * i128::from(mediant.0)
        {
            // target lies in the cone spanned by the left end and the mediant
            right = mediant;
            (xr, xm) = (xm, 2.0 * xl * xm - xr);
        } else {
            left = mediant;
            (xl, xm) = (xm, 2.0 * xm * xr - xl);
        }
        mediant = (left.0 + right.0, left.1 + right.1);
    }
}

/// Every simple closed geodesic of length <= cutoff, sorted by length with
/// ties broken by slope order. Distinct slopes of equal length appear as
/// separate entries. The triple is normalized internally, so any marking of
/// a cusped torus may be passed; the output is a marking-independent
/// invariant of the surface up to the slope labels.
pub fn enumerate_geodesics(triple: &TraceTriple, cutoff: Length) -> Result<Vec<GeodesicInfo>> {
    let norm = normalize(*triple)?;
    let [r, s, t] = norm.coords();
    let max_len = cutoff.value() * (1.0 + 1e-12) + 1e-12;
    let keep = |x: f64| x.is_finite() && 2.0 * x.acosh() <= max_len;

    let mut out: Vec<GeodesicInfo> = Vec::new();
    let record = |p: i64, q: i64, x: f64, out: &mut Vec<GeodesicInfo>| {
        let slope = Slope::new(p, q).expect("tree mediants are primitive");
        out.push(GeodesicInfo::new(slope, HalfTrace::new_unchecked(x)));
    };

    if keep(r) {
        record(1, 0, r, &mut out);
    }
    if keep(s) {
        record(0, 1, s, &mut out);
    }

    // one tree per side of the (1,0)-(0,1) edge
    for (root, reflect) in [(t, false), (2.0 * r * s - t, true)] {
        type Frame = ((i64, i64), (i64, i64), (i64, i64), f64, f64, f64);
        let mut stack: Vec<Frame> = vec![((1, 0), (0, 1), (1, 1), r, s, root)];
        while let Some((left, right, mediant, xl, xr, xm)) = stack.pop() {
            if !keep(xm) {
                // every trace deeper in this cone dominates xm
                continue;
            }
            let (p, q) = if reflect {
                (-mediant.0, mediant.1)
            } else {
                mediant
            };
            record(p, q, xm, &mut out);
            stack.push((
                left,
                mediant,
                (left.0 + mediant.0, left.1 + mediant.1),
                xl,
                xm,
                2.0 * xl * xm - xr,
            ));
            stack.push((
                mediant,
                right,
                (mediant.0 + right.0, mediant.1 + right.1),
                xm,
                xr,
                2.0 * xm * xr - xl,
            ));
        }
    }

    out.sort_by(|a, b| {
        a.length
            .value()
            .total_cmp(&b.length.value())
            .then_with(|| a.slope.cmp(&b.slope))
    });
    Ok(out)
}

/// All unordered pairs of enumerated geodesics that intersect exactly n
/// times, both members of length <= cutoff.
pub fn pairs_with_intersection(
    triple: &TraceTriple,
    n: u32,
    cutoff: Length,
) -> Result<Vec<CrossingPair>> {
    if n == 0 {
        return Err(Error::InvalidConfig {
            reason: "pairs_with_intersection requires n >= 1".into(),
        });
    }
    let geodesics = enumerate_geodesics(triple, cutoff)?;
    let mut pairs = Vec::new();
    for i in 0..geodesics.len() {
        for j in (i + 1)..geodesics.len() {
            if intersection_number(geodesics[i].slope, geodesics[j].slope) == u64::from(n) {
                pairs.push(CrossingPair::new(geodesics[i], geodesics[j]));
            }
        }
    }
    Ok(pairs)
}
