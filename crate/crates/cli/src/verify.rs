//! Built-in verification suite behind `geocross verify`.
//!
//! `fast` runs identity and fixture checks in well under a second; `full`
//! adds the oracle sweeps and the extremal-search reproductions.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use geocross::bounds::{b_squared_curve, known_l, s3_triple, sandwich_report};
use geocross::hypmath::{collar_width, solve_ln, trirect_quad_opposite, zero_angle_quad_side, Length, DEFAULT_TOL};
use geocross::search::{find_extremal, SearchConfig};
use geocross::torus::{
    enumerate_geodesics, halftrace_of_slope, intersection_number, markov_move,
    matrix_oracle_length, min_two_crossing_partner, normalize, pairs_with_intersection,
    slopes_in_box, Coord, TraceTriple,
};

pub struct Check {
    pub name: &'static str,
    pub fast: bool,
    pub run: fn() -> Result<(), String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

pub struct Report {
    pub passed: usize,
    pub failed: Vec<&'static str>,
}

/// Run the suite at the given level, printing one line per check through
/// `sink`. Returns the aggregate report.
pub fn run_checks(level: Level, sink: impl FnMut(String)) -> Report {
    run_check_list(&checks(), level, sink)
}

fn run_check_list(checks: &[Check], level: Level, mut sink: impl FnMut(String)) -> Report {
    let mut passed = 0usize;
    let mut failed = Vec::new();
    for check in checks {
        if level == Level::Fast && !check.fast {
            continue;
        }
        match (check.run)() {
            Ok(()) => {
                passed += 1;
                sink(format!("[PASS] {}", check.name));
            }
            Err(msg) => {
                failed.push(check.name);
                sink(format!("[FAIL] {}: {}", check.name, msg));
            }
        }
    }
    Report { passed, failed }
}

fn len(v: f64) -> Length {
    Length::new(v).expect("verify constants are nonnegative")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_normalized_triple(rng: &mut StdRng, lo: f64, hi: f64) -> TraceTriple {
    loop {
        let r: f64 = rng.random_range(lo..hi);
        let s: f64 = rng.random_range(lo..hi);
        if r * r * s * s - r * r - s * s < 0.0 {
            continue;
        }
        let t = (r * r + s * s) / (r * s + (r * r * s * s - r * r - s * s).sqrt());
        if let Ok(triple) = TraceTriple::cusped(r, s, t) {
            if let Ok(norm) = normalize(triple) {
                return norm;
            }
        }
    }
}

fn checks() -> Vec<Check> {
    vec![
        Check {
            name: "four_holed_sphere_identity",
            fast: true,
            run: || {
                let diff = (4.0 * 1f64.asinh() - 2.0 * 3f64.acosh()).abs();
                ensure(diff < 1e-12, || format!("|4 arcsinh 1 - 2 arccosh 3| = {diff:e}"))
            },
        },
        Check {
            name: "collar_fixed_point",
            fast: true,
            run: || {
                let w = collar_width(len(2.0 * 1f64.asinh())).map_err(|e| e.to_string())?;
                let diff = (w.value() - 1f64.asinh()).abs();
                ensure(diff < 1e-12, || format!("collar width off by {diff:e}"))
            },
        },
        Check {
            name: "ln_solver_residuals",
            fast: true,
            run: || {
                let mut prev = 0.0;
                for n in 1..=10u32 {
                    let l = solve_ln(n, DEFAULT_TOL).map_err(|e| e.to_string())?.value();
                    let residual = (l / (2.0 * f64::from(n))).sinh() * (l / 2.0).sinh() - 1.0;
                    ensure(residual.abs() < 1e-12, || {
                        format!("n = {n}: residual {residual:e}")
                    })?;
                    ensure(l > prev, || format!("l_{n} not above l_{}", n - 1))?;
                    prev = l;
                }
                let l1 = solve_ln(1, DEFAULT_TOL).map_err(|e| e.to_string())?.value();
                ensure((l1 - 2.0 * 1f64.asinh()).abs() < 1e-12, || {
                    "l_1 differs from 2 arcsinh 1".into()
                })
            },
        },
        Check {
            name: "length_halftrace_roundtrip",
            fast: true,
            run: || {
                let mut x = 1e-3;
                while x < 50.0 {
                    let back = len(x).half_trace().length().value();
                    ensure((back - x).abs() < 1e-10, || format!("roundtrip at {x}"))?;
                    x *= 1.31;
                }
                Ok(())
            },
        },
        Check {
            name: "zero_angle_equals_collar",
            fast: true,
            run: || {
                let mut rng = StdRng::seed_from_u64(11);
                for _ in 0..1000 {
                    let x: f64 = rng.random_range(1e-3..10.0);
                    let a = zero_angle_quad_side(len(x)).map_err(|e| e.to_string())?.value();
                    let b = collar_width(len(2.0 * x)).map_err(|e| e.to_string())?.value();
                    ensure((a - b).abs() < 1e-13, || format!("mismatch at {x}"))?;
                }
                Ok(())
            },
        },
        Check {
            name: "pentagon_quad_pipeline",
            fast: true,
            run: || {
                let mut rng = StdRng::seed_from_u64(12);
                for _ in 0..1000 {
                    let alpha: f64 = rng.random_range(0.5..10.0);
                    let eps: f64 = rng.random_range(0.0..5.0);
                    let a_half = ((eps / 4.0).cosh() / (alpha / 2.0).sinh()).asinh();
                    let quarter = trirect_quad_opposite(len(a_half), len(alpha / 4.0))
                        .map_err(|e| e.to_string())?
                        .value();
                    let closed = 2.0
                        * (1.0 + ((eps / 2.0).cosh() + 1.0) / (2.0 * ((alpha / 2.0).cosh() - 1.0)))
                            .acosh();
                    ensure((4.0 * quarter - closed).abs() < 1e-12, || {
                        format!("pipeline vs closed form at alpha = {alpha}, eps = {eps}")
                    })?;
                }
                Ok(())
            },
        },
        Check {
            name: "two_crossing_fixed_point",
            fast: true,
            run: || {
                let l2 = 2.0 * 2f64.acosh();
                let beta = min_two_crossing_partner(len(l2), Length::ZERO)
                    .map_err(|e| e.to_string())?
                    .value();
                ensure((beta - l2).abs() < 1e-12, || format!("fixed point drift {:e}", beta - l2))
            },
        },
        Check {
            name: "sandwich_n_1_to_10",
            fast: true,
            run: || {
                for n in 1..=10 {
                    let report = sandwich_report(n).map_err(|e| e.to_string())?;
                    ensure(report.sandwich_ok, || format!("sandwich failed at n = {n}"))?;
                    if n <= 3 {
                        let k = report.known.ok_or(format!("missing constant at n = {n}"))?;
                        ensure(
                            report.lower.value() <= k.value() + 1e-12
                                && k.value() <= report.upper.value() + 1e-12,
                            || format!("known constant outside interval at n = {n}"),
                        )?;
                    }
                }
                Ok(())
            },
        },
        Check {
            name: "s3_closed_form",
            fast: true,
            run: || {
                let t = s3_triple();
                let [r, s, tt] = t.coords();
                ensure(t.residual().abs() < 1e-10, || "triple off the cusp variety".into())?;
                let b = s * (2.0 * r - 1.0);
                let l3 = known_l(3).map_err(|e| e.to_string())?.value();
                ensure((2.0 * b.acosh() - l3).abs() < 1e-10, || {
                    "pair half-trace does not match the constant".into()
                })?;
                ensure((s - tt).abs() == 0.0, || "triple not symmetric".into())
            },
        },
        Check {
            name: "b_squared_minimizer",
            fast: true,
            run: || {
                let w = (11.0 / 3.0f64).sqrt();
                let r_star = (3.0 + w) / 4.0;
                ensure(
                    (6.0 * r_star * r_star - 9.0 * r_star + 2.0).abs() < 1e-10,
                    || "critical factor does not vanish".into(),
                )?;
                let phi = (5f64.sqrt() - 1.0) / 2.0;
                let (mut lo, mut hi) = (1.001f64, 10.0f64);
                while hi - lo > 1e-12 {
                    let m1 = hi - phi * (hi - lo);
                    let m2 = lo + phi * (hi - lo);
                    let f1 = b_squared_curve(m1).map_err(|e| e.to_string())?;
                    let f2 = b_squared_curve(m2).map_err(|e| e.to_string())?;
                    if f1 < f2 {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                let found = 0.5 * (lo + hi);
                ensure((found - r_star).abs() < 1e-8, || {
                    format!("golden section found {found}, expected {r_star}")
                })
            },
        },
        Check {
            name: "square_torus_fixtures",
            fast: true,
            run: || {
                let sqrt2 = std::f64::consts::SQRT_2;
                let s1 = TraceTriple::cusped(sqrt2, sqrt2, 2.0).map_err(|e| e.to_string())?;
                let l1 = 2.0 * 1f64.asinh();
                let pairs = pairs_with_intersection(&s1, 1, len(l1 + 1e-6))
                    .map_err(|e| e.to_string())?;
                ensure(pairs.len() == 1, || format!("expected 1 pair, got {}", pairs.len()))?;
                ensure(
                    (pairs[0].max_length().value() - l1).abs() < 1e-8,
                    || "once-crossing pair off the threshold".into(),
                )?;
                let l2 = 2.0 * 2f64.acosh();
                let pairs = pairs_with_intersection(&s1, 2, len(l2 + 1e-6))
                    .map_err(|e| e.to_string())?;
                ensure(
                    pairs.iter().any(|p| (p.max_length().value() - l2).abs() < 1e-8),
                    || "no twice-crossing pair at 2 arccosh 2".into(),
                )
            },
        },
        Check {
            name: "three_crossing_fixture",
            fast: true,
            run: || {
                let l3 = known_l(3).map_err(|e| e.to_string())?.value();
                let pairs = pairs_with_intersection(&s3_triple(), 3, len(l3 + 1e-6))
                    .map_err(|e| e.to_string())?;
                ensure(
                    pairs.iter().any(|p| (p.max_length().value() - l3).abs() < 1e-8),
                    || "no thrice-crossing pair at the constant".into(),
                )
            },
        },
        Check {
            name: "markov_normalize_roundtrip",
            fast: true,
            run: || {
                let mut rng = StdRng::seed_from_u64(13);
                for _ in 0..50 {
                    let base = random_normalized_triple(&mut rng, 1.05, 2.5);
                    let mut wild = base;
                    for _ in 0..4 {
                        let coord = match rng.random_range(0..3u8) {
                            0 => Coord::R,
                            1 => Coord::S,
                            _ => Coord::T,
                        };
                        wild = markov_move(wild, coord).map_err(|e| e.to_string())?;
                    }
                    let back = normalize(wild).map_err(|e| e.to_string())?;
                    for (a, b) in back.coords().iter().zip(base.coords()) {
                        ensure((a - b).abs() < 1e-8 * (1.0 + b), || {
                            "normalization did not invert the remarking".into()
                        })?;
                    }
                }
                Ok(())
            },
        },
        Check {
            name: "oracle_spot_check",
            fast: true,
            run: || oracle_sweep(10, 5),
        },
        Check {
            name: "oracle_sweep",
            fast: false,
            run: || oracle_sweep(100, 10),
        },
        Check {
            name: "remarking_invariance",
            fast: false,
            run: || {
                let mut rng = StdRng::seed_from_u64(14);
                let cutoff = len(6.0);
                for _ in 0..50 {
                    let base = random_normalized_triple(&mut rng, 1.05, 2.5);
                    let mut wild = base;
                    for _ in 0..5 {
                        let coord = match rng.random_range(0..3u8) {
                            0 => Coord::R,
                            1 => Coord::S,
                            _ => Coord::T,
                        };
                        wild = markov_move(wild, coord).map_err(|e| e.to_string())?;
                    }
                    let a = enumerate_geodesics(&base, cutoff).map_err(|e| e.to_string())?;
                    let b = enumerate_geodesics(&wild, cutoff).map_err(|e| e.to_string())?;
                    ensure(a.len() == b.len(), || "spectrum sizes differ".into())?;
                    for (x, y) in a.iter().zip(&b) {
                        ensure((x.length.value() - y.length.value()).abs() < 1e-8, || {
                            "spectrum entries differ".into()
                        })?;
                    }
                }
                Ok(())
            },
        },
        Check {
            name: "collar_property",
            fast: false,
            run: || {
                let mut rng = StdRng::seed_from_u64(15);
                let cutoff = len(6.0);
                let threshold = 2.0 * 1f64.asinh();
                for _ in 0..200 {
                    let triple = random_normalized_triple(&mut rng, 1.02, 3.0);
                    let spectrum = enumerate_geodesics(&triple, cutoff).map_err(|e| e.to_string())?;
                    for i in 0..spectrum.len() {
                        for j in (i + 1)..spectrum.len() {
                            if intersection_number(spectrum[i].slope, spectrum[j].slope) >= 1 {
                                let max_len =
                                    spectrum[i].length.value().max(spectrum[j].length.value());
                                ensure(max_len > threshold, || {
                                    format!("crossing pair below the collar threshold: {max_len}")
                                })?;
                            }
                        }
                    }
                }
                Ok(())
            },
        },
        Check {
            name: "extremal_one_crossing",
            fast: false,
            run: || extremal_check(1),
        },
        Check {
            name: "extremal_two_crossings",
            fast: false,
            run: || extremal_check(2),
        },
        Check {
            name: "extremal_three_crossings",
            fast: false,
            run: || extremal_check(3),
        },
    ]
}

fn oracle_sweep(triples: usize, slope_box: i64) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(16);
    let slopes = slopes_in_box(slope_box);
    for _ in 0..triples {
        let triple = random_normalized_triple(&mut rng, 1.05, 2.5);
        for &slope in &slopes {
            let recursion = halftrace_of_slope(&triple, slope).length().value();
            let oracle = matrix_oracle_length(&triple, slope)
                .map_err(|e| e.to_string())?
                .value();
            ensure((recursion - oracle).abs() < 1e-9, || {
                format!("slope {slope}: recursion {recursion} vs oracle {oracle}")
            })?;
        }
    }
    Ok(())
}

fn extremal_check(n: u32) -> Result<(), String> {
    let config = SearchConfig::for_crossings(n);
    let result = find_extremal(n, &config).map_err(|e| e.to_string())?;
    let want = known_l(n).map_err(|e| e.to_string())?.value();
    ensure((result.value.value() - want).abs() < 1e-6, || {
        format!(
            "search for n = {n} returned {} instead of {want}",
            result.value.value()
        )
    })
}
