//! Minimization of the min-max crossing-pair length over the moduli space
//! of cusped once-punctured tori.
//!
//! For a fixed crossing number n the objective of a surface is the minimum,
//! over all pairs of simple closed geodesics intersecting n times, of the
//! longer length. A coarse grid over the (r, s) trace rectangle (third
//! coordinate completed to the low root) locates the basin; a Nelder-Mead
//! simplex then refines.
//!
//! Refinement runs in the chart (r, y) with y^2 = r^2 s^2 - r^2 - s^2, i.e.
//! s = sqrt((y^2 + r^2)/(r^2 - 1)) and t = rs - |y|. The objective is even
//! in y because flipping the sign of y swaps the two roots of the cusp
//! quadratic, a remarking of the same surface. In the plain (r, s) chart
//! the objective has a square-root cusp along the double-root locus y = 0,
//! which is exactly where the one- and two-crossing minimizers sit; the
//! (r, y) chart turns that cusp into a benign |y| valley.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::construction_upper_bound;
use crate::error::{Error, Result};
use crate::hypmath::{solve_ln, Length, DEFAULT_TOL};
use crate::torus::{normalize, pairs_with_intersection, CrossingPair, TraceTriple};

/// Parameters of one extremal search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: u32,
    pub grid_lo: f64,
    pub grid_hi: f64,
    pub grid_steps: u32,
    pub cutoff_factor: f64,
    pub refine_tol: f64,
    pub max_refine_iters: u32,
}

impl SearchConfig {
    /// Default search for the given crossing number: 60x60 grid over
    /// [1.05, 3.0], enumeration cutoff 2.2 l_n (the sandwich guarantees a
    /// feasible pair below 2 l_n), simplex tolerance 1e-9.
    pub fn for_crossings(n: u32) -> Self {
        SearchConfig {
            n,
            grid_lo: 1.05,
            grid_hi: 3.0,
            grid_steps: 60,
            cutoff_factor: 2.2,
            refine_tol: 1e-9,
            max_refine_iters: 2000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Err(Error::InvalidConfig { reason });
        if self.n == 0 {
            return fail("n must be >= 1".into());
        }
        if self.grid_lo.is_nan() || self.grid_lo <= 1.0 {
            return fail(format!("grid_lo must exceed 1, got {}", self.grid_lo));
        }
        if self.grid_hi.is_nan() || self.grid_hi <= self.grid_lo {
            return fail(format!(
                "grid_hi must exceed grid_lo, got [{}, {}]",
                self.grid_lo, self.grid_hi
            ));
        }
        if self.grid_steps < 2 {
            return fail(format!("grid_steps must be >= 2, got {}", self.grid_steps));
        }
        if self.cutoff_factor.is_nan() || self.cutoff_factor < 2.0 {
            return fail(format!(
                "cutoff_factor must be >= 2 so the constructed pair stays in range, got {}",
                self.cutoff_factor
            ));
        }
        if self.refine_tol.is_nan() || self.refine_tol <= 0.0 {
            return fail(format!("refine_tol must be positive, got {}", self.refine_tol));
        }
        Ok(())
    }

    fn grid_pitch(&self) -> f64 {
        (self.grid_hi - self.grid_lo) / f64::from(self.grid_steps - 1)
    }
}

/// Certified interval attached to a search result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certificates {
    /// Collar lower bound l_n.
    #[serde(rename = "l_n")]
    pub lower: Length,
    /// Constructive upper bound u_n from the zero-twist pasting.
    #[serde(rename = "u_n")]
    pub upper: Length,
}

/// Outcome of a search stage: the best surface seen, its witnessing pair,
/// and the certificates bracketing the true constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub n: u32,
    pub value: Length,
    pub triple: TraceTriple,
    pub pair: CrossingPair,
    pub evaluations: u64,
    pub certificates: Certificates,
    pub converged: bool,
}

/// Value of the min-max objective on one surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Objective {
    /// The minimizing pair among those intersecting exactly n times.
    Feasible(CrossingPair),
    /// No pair with n crossings exists under the cutoff; optimizers treat
    /// this as +infinity.
    Infeasible,
}

impl Objective {
    pub fn value(&self) -> f64 {
        match self {
            Objective::Feasible(pair) => pair.max_length().value(),
            Objective::Infeasible => f64::INFINITY,
        }
    }
}

/// min over pairs with exactly n crossings (both lengths <= cutoff) of the
/// longer length. Ties between pairs of equal max length break by slope
/// order, so the witnessing pair is deterministic.
pub fn objective(triple: &TraceTriple, n: u32, cutoff: Length) -> Result<Objective> {
    let pairs = pairs_with_intersection(triple, n, cutoff)?;
    Ok(pairs
        .into_iter()
        .min_by(|a, b| {
            a.max_length()
                .value()
                .total_cmp(&b.max_length().value())
                .then_with(|| a.first.slope.cmp(&b.first.slope))
                .then_with(|| a.second.slope.cmp(&b.second.slope))
        })
        .map_or(Objective::Infeasible, Objective::Feasible))
}

#[derive(Clone, Copy)]
struct Candidate {
    value: f64,
    point: [f64; 2],
    triple: TraceTriple,
    pair: CrossingPair,
}

/// Surface for a chart point (r, y); None when the point leaves the
/// coordinate domain.
fn chart_triple(r: f64, y: f64) -> Option<TraceTriple> {
    if !r.is_finite() || !y.is_finite() || r <= 1.0 {
        return None;
    }
    let s = ((y * y + r * r) / (r * r - 1.0)).sqrt();
    let t = r * s - y.abs();
    if s <= 1.0 || t <= 1.0 {
        return None;
    }
    TraceTriple::cusped(r, s, t).ok()
}

fn chart_point(triple: &TraceTriple) -> [f64; 2] {
    let [r, s, t] = triple.coords();
    [r, r * s - t]
}

/// Evaluate the objective over the (r, s) grid with the third coordinate
/// completed to the low root, skipping points with no real completion.
/// Returns the best grid point with its pair; grid cells are evaluated in
/// parallel and reduced with a total order, so the result is deterministic.
pub fn grid_search(config: &SearchConfig) -> Result<ExtremalResult> {
    config.validate()?;
    let certificates = certificates_for(config.n)?;
    let cutoff = Length::new(config.cutoff_factor * certificates.lower.value())?;
    let steps = config.grid_steps as usize;
    let pitch = config.grid_pitch();
    let evaluations = AtomicU64::new(0);

    let best = (0..steps * steps)
        .into_par_iter()
        .filter_map(|idx| {
            let (i, j) = (idx / steps, idx % steps);
            let r = config.grid_lo + pitch * i as f64;
            let s = config.grid_lo + pitch * j as f64;
            let disc = r * r * s * s - r * r - s * s;
            if disc < 0.0 {
                return None;
            }
            let t = (r * r + s * s) / (r * s + disc.sqrt());
            let triple = TraceTriple::cusped(r, s, t).ok()?;
            let norm = normalize(triple).ok()?;
            evaluations.fetch_add(1, Ordering::Relaxed);
            match objective(&norm, config.n, cutoff) {
                Ok(Objective::Feasible(pair)) => Some((
                    Candidate {
                        value: pair.max_length().value(),
                        point: chart_point(&norm),
                        triple: norm,
                        pair,
                    },
                    idx,
                )),
                _ => None,
            }
        })
        .min_by(|(a, ia), (b, ib)| a.value.total_cmp(&b.value).then_with(|| ia.cmp(ib)));

    let Some((best, _)) = best else {
        return Err(Error::SearchFailed {
            reason: format!(
                "every grid point was infeasible for n = {}; increase cutoff_factor or widen the grid range",
                config.n
            ),
        });
    };
    Ok(ExtremalResult {
        n: config.n,
        value: Length::new(best.value)?,
        triple: best.triple,
        pair: best.pair,
        evaluations: evaluations.load(Ordering::Relaxed),
        certificates,
        converged: false,
    })
}

fn certificates_for(n: u32) -> Result<Certificates> {
    let lower = solve_ln(n, DEFAULT_TOL)?;
    let (upper, _) = construction_upper_bound(n)?;
    Ok(Certificates { lower, upper })
}

struct RefineState {
    n: u32,
    cutoff: Length,
    evaluations: u64,
    best: Candidate,
}

impl RefineState {
    fn eval(&mut self, point: [f64; 2]) -> f64 {
        let Some(triple) = chart_triple(point[0], point[1]) else {
            return f64::INFINITY;
        };
        let Ok(norm) = normalize(triple) else {
            return f64::INFINITY;
        };
        self.evaluations += 1;
        match objective(&norm, self.n, self.cutoff) {
            Ok(Objective::Feasible(pair)) => {
                let value = pair.max_length().value();
                if value < self.best.value {
                    self.best = Candidate {
                        value,
                        point,
                        triple: norm,
                        pair,
                    };
                }
                value
            }
            _ => f64::INFINITY,
        }
    }
}

/// Derivative-free local descent from a feasible start, re-selecting the
/// minimizing pair at every evaluation. Runs a Nelder-Mead simplex
/// (reflection 1, expansion 2, contraction 0.5, shrink 0.5) twice: once
/// from the start point and once restarted tightly around the best point
/// found. The result never exceeds the start value.
pub fn refine(start: &ExtremalResult, config: &SearchConfig) -> Result<ExtremalResult> {
    config.validate()?;
    if config.n != start.n {
        return Err(Error::InvalidConfig {
            reason: format!(
                "config is for n = {} but the start point is for n = {}",
                config.n, start.n
            ),
        });
    }
    let cutoff = Length::new(config.cutoff_factor * start.certificates.lower.value())?;
    let mut state = RefineState {
        n: start.n,
        cutoff,
        evaluations: 0,
        best: Candidate {
            value: start.value.value(),
            point: chart_point(&start.triple),
            triple: start.triple,
            pair: start.pair,
        },
    };

    let coarse_step = (0.25 * config.grid_pitch()).clamp(1e-5, 0.1);
    let mut converged = false;
    for step in [coarse_step, 1e-5] {
        let center = state.best.point;
        converged = nelder_mead(&mut state, center, step, config);
    }

    Ok(ExtremalResult {
        n: start.n,
        value: Length::new(state.best.value)?,
        triple: state.best.triple,
        pair: state.best.pair,
        evaluations: start.evaluations + state.evaluations,
        certificates: start.certificates,
        converged,
    })
}

fn nelder_mead(
    state: &mut RefineState,
    center: [f64; 2],
    step: f64,
    config: &SearchConfig,
) -> bool {
    const ALPHA: f64 = 1.0;
    const GAMMA: f64 = 2.0;
    const RHO: f64 = 0.5;
    const SIGMA: f64 = 0.5;

    let mut simplex: Vec<([f64; 2], f64)> = vec![
        (center, state.eval(center)),
        ([center[0] + step, center[1]], f64::NAN),
        ([center[0], center[1] + step], f64::NAN),
    ];
    for v in simplex.iter_mut().skip(1) {
        v.1 = state.eval(v.0);
    }

    for _ in 0..config.max_refine_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = simplex
            .iter()
            .flat_map(|(p, _)| {
                simplex
                    .iter()
                    .map(move |(q, _)| (p[0] - q[0]).abs().max((p[1] - q[1]).abs()))
            })
            .fold(0.0f64, f64::max);
        if diameter < config.refine_tol {
            return true;
        }

        let centroid = [
            0.5 * (simplex[0].0[0] + simplex[1].0[0]),
            0.5 * (simplex[0].0[1] + simplex[1].0[1]),
        ];
        let worst = simplex[2];
        let reflected = [
            centroid[0] + ALPHA * (centroid[0] - worst.0[0]),
            centroid[1] + ALPHA * (centroid[1] - worst.0[1]),
        ];
        let f_reflected = state.eval(reflected);

        if f_reflected < simplex[0].1 {
            let expanded = [
                centroid[0] + GAMMA * (reflected[0] - centroid[0]),
                centroid[1] + GAMMA * (reflected[1] - centroid[1]),
            ];
            let f_expanded = state.eval(expanded);
            simplex[2] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
            continue;
        }
        if f_reflected < simplex[1].1 {
            simplex[2] = (reflected, f_reflected);
            continue;
        }

        let (toward, f_toward) = if f_reflected < worst.1 {
            (reflected, f_reflected)
        } else {
            (worst.0, worst.1)
        };
        let contracted = [
            centroid[0] + RHO * (toward[0] - centroid[0]),
            centroid[1] + RHO * (toward[1] - centroid[1]),
        ];
        let f_contracted = state.eval(contracted);
        if f_contracted < f_toward {
            simplex[2] = (contracted, f_contracted);
            continue;
        }

        let best = simplex[0].0;
        for v in simplex.iter_mut().skip(1) {
            v.0 = [
                best[0] + SIGMA * (v.0[0] - best[0]),
                best[1] + SIGMA * (v.0[1] - best[1]),
            ];
            v.1 = state.eval(v.0);
        }
    }
    false
}

/// Grid search, seeded additionally with the zero-twist construction
/// surface, then simplex refinement. The construction seed guarantees the
/// result value never exceeds the upper certificate u_n, whatever the grid
/// coverage; the collar bound guarantees it is at least l_n.
pub fn find_extremal(n: u32, config: &SearchConfig) -> Result<ExtremalResult> {
    if config.n != n {
        return Err(Error::InvalidConfig {
            reason: format!("config is for n = {}, requested n = {}", config.n, n),
        });
    }
    let mut start = grid_search(config)?;

    let (_, construction) = construction_upper_bound(n)?;
    let cutoff = Length::new(config.cutoff_factor * start.certificates.lower.value())?;
    let construction = normalize(construction)?;
    if let Objective::Feasible(pair) = objective(&construction, n, cutoff)? {
        start.evaluations += 1;
        if pair.max_length().value() < start.value.value() {
            start.value = pair.max_length();
            start.triple = construction;
            start.pair = pair;
        }
    }

    refine(&start, config)
}
