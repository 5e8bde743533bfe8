//! Deterministic nested-grid optimization over pairs of unit vectors.
//!
//! Pairs `(x, y) ∈ S_X × S_X` are parametrized by angles through
//! [`NormSpace::sphere_point`]. All objectives used in this crate satisfy
//! `f(-x, -y) = f(x, y)`, so the first angle ranges over `[0, π)` only.
//!
//! A search evaluates a uniform coarse grid, keeps the best `top_cells`
//! local optima as seeds, and re-grids a box around each seed for
//! `refine_rounds` rounds, shrinking the box by `refine_shrink` each round.
//! Pair searches finish with a Nelder-Mead polish from every refined seed,
//! which follows narrow diagonal ridges that axis-aligned boxes cannot.
//! Grid evaluation is parallel; every reduction is sequential and breaks
//! ties by the smallest `(θ1, θ2)`, so results do not depend on scheduling.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use argmin::core::{CostFunction, Error as ArgminError, Executor, State};
use argmin::solver::neldermead::NelderMead;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{canonical_angle, NormSpace, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Grid points per full turn of each angle.
    pub coarse_grid: usize,
    pub refine_rounds: usize,
    pub refine_shrink: f64,
    /// Number of local optima refined.
    pub top_cells: usize,
    /// Target answer tolerance.
    pub tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            coarse_grid: 1024,
            refine_rounds: 3,
            refine_shrink: 0.1,
            top_cells: 8,
            tol: 1e-4,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("coarse grid must be at least 16 (got {0})")]
    GridTooSmall(usize),
    #[error("refine shrink must lie in (0, 1) (got {0})")]
    BadShrink(f64),
    #[error("top_cells must be at least 1")]
    NoSeeds,
    #[error("tolerance must be positive (got {0})")]
    BadTolerance(f64),
    #[error("epsilon must lie in [0, 2] (got {0})")]
    EpsilonOutOfRange(f64),
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.coarse_grid < 16 {
            return Err(SearchError::GridTooSmall(self.coarse_grid));
        }
        if !(self.refine_shrink > 0.0 && self.refine_shrink < 1.0) {
            return Err(SearchError::BadShrink(self.refine_shrink));
        }
        if self.top_cells == 0 {
            return Err(SearchError::NoSeeds);
        }
        if !(self.tol > 0.0) {
            return Err(SearchError::BadTolerance(self.tol));
        }
        Ok(())
    }

    /// Points per axis of a refinement box: spacing shrinks by
    /// `refine_shrink` relative to the previous round.
    fn box_points(&self) -> usize {
        2 * (1.0 / self.refine_shrink).round().max(1.0) as usize + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Grid,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Grid => "grid",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub value: f64,
    pub arg: (f64, f64),
    pub witnesses: (Vec2, Vec2),
    pub method: Method,
    /// Best value after the coarse grid, after each refinement round and
    /// after the final polish.
    pub history: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    value: f64,
    theta1: f64,
    theta2: f64,
}

impl Candidate {
    /// Total order: better value first, then smaller angles.
    fn rank(&self, other: &Candidate, maximize: bool) -> Ordering {
        let by_value = if maximize {
            other.value.total_cmp(&self.value)
        } else {
            self.value.total_cmp(&other.value)
        };
        by_value
            .then(self.theta1.total_cmp(&other.theta1))
            .then(self.theta2.total_cmp(&other.theta2))
    }
}

fn best_of(cands: impl IntoIterator<Item = Candidate>, maximize: bool) -> Option<Candidate> {
    cands
        .into_iter()
        .filter(|c| !c.value.is_nan())
        .min_by(|a, b| a.rank(b, maximize))
}

/// Supremum of `objective` over `S_X × S_X`.
///
/// The returned value is attained at the reported witnesses, so it is a
/// lower bound on the true supremum.
pub fn pair_maximize<F>(space: &NormSpace, objective: F, cfg: &SearchConfig) -> SearchResult
where
    F: Fn(Vec2, Vec2) -> f64 + Sync,
{
    let n = cfg.coarse_grid.max(16);
    let h = TAU / n as f64;
    let ring: Vec<Vec2> = (0..n).map(|j| space.sphere_point(j as f64 * h)).collect();
    let rows = n / 2;
    let f = &objective;
    let ring_ref = &ring;
    let values: Vec<f64> = (0..rows)
        .into_par_iter()
        .flat_map_iter(|i| {
            let x = ring_ref[i];
            ring_ref.iter().map(move |&y| f(x, y))
        })
        .collect();

    let at = |i: usize, j: usize| values[i * n + j];
    // local maxima on the torus; the θ1 wrap maps row `rows` back to row 0
    // with both points negated, which leaves even objectives unchanged
    let neighbour = |i: isize, j: isize| -> f64 {
        let j = j.rem_euclid(n as isize) as usize;
        if i < 0 {
            at(rows - 1, (j + rows) % n)
        } else if i as usize >= rows {
            at(0, (j + rows) % n)
        } else {
            at(i as usize, j)
        }
    };
    let mut seeds: Vec<Candidate> = Vec::new();
    for i in 0..rows {
        for j in 0..n {
            let v = at(i, j);
            if v.is_nan() {
                continue;
            }
            let is_peak = (-1..=1isize).all(|di| {
                (-1..=1isize).all(|dj| (di == 0 && dj == 0) || !(neighbour(i as isize + di, j as isize + dj) > v))
            });
            if is_peak {
                seeds.push(Candidate {
                    value: v,
                    theta1: i as f64 * h,
                    theta2: j as f64 * h,
                });
            }
        }
    }
    seeds.sort_by(|a, b| a.rank(b, true));
    seeds.truncate(cfg.top_cells.max(1));

    let mut best = seeds.first().copied().unwrap_or(Candidate {
        value: at(0, 0),
        theta1: 0.0,
        theta2: 0.0,
    });
    let mut history = vec![best.value];

    let m = cfg.box_points();
    let mut half_width = h;
    for _ in 0..cfg.refine_rounds {
        let step = 2.0 * half_width / (m - 1) as f64;
        let refined: Vec<Candidate> = seeds
            .par_iter()
            .map(|seed| {
                walk_box(*seed, true, |center| {
                    (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).map(move |(a, b)| {
                        let t1 = center.theta1 - half_width + a as f64 * step;
                        let t2 = center.theta2 - half_width + b as f64 * step;
                        let on_edge = a == 0 || b == 0 || a == m - 1 || b == m - 1;
                        let value = f(space.sphere_point(t1), space.sphere_point(t2));
                        (
                            Candidate {
                                value,
                                theta1: t1,
                                theta2: t2,
                            },
                            on_edge,
                        )
                    })
                })
            })
            .collect();
        seeds = refined;
        if let Some(round_best) = best_of(seeds.iter().copied(), true) {
            if round_best.value > best.value {
                best = round_best;
            }
        }
        history.push(best.value);
        half_width *= cfg.refine_shrink;
    }

    let polished: Vec<Candidate> = seeds
        .par_iter()
        .map(|seed| polish(space, f, *seed, h, cfg.tol))
        .collect();
    if let Some(p) = best_of(polished, true) {
        if p.value > best.value {
            best = p;
        }
    }
    history.push(best.value);

    finish(space, best, Method::Grid, history, objective)
}

const POLISH_ITERATIONS: u64 = 400;

struct NegatedPair<'a, F> {
    space: &'a NormSpace,
    objective: &'a F,
}

impl<F: Fn(Vec2, Vec2) -> f64> CostFunction for NegatedPair<'_, F> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Self::Param) -> Result<f64, ArgminError> {
        let v = (self.objective)(self.space.sphere_point(p[0]), self.space.sphere_point(p[1]));
        Ok(if v.is_nan() { f64::INFINITY } else { -v })
    }
}

/// Nelder-Mead ascent from `seed` with an initial simplex of edge `size`.
/// Returns `seed` unless a strictly better point is found.
fn polish<F: Fn(Vec2, Vec2) -> f64>(
    space: &NormSpace,
    objective: &F,
    seed: Candidate,
    size: f64,
    tol: f64,
) -> Candidate {
    let start = vec![seed.theta1, seed.theta2];
    let simplex = vec![
        start.clone(),
        vec![seed.theta1 + size, seed.theta2],
        vec![seed.theta1, seed.theta2 + size],
    ];
    let Ok(solver) = NelderMead::new(simplex).with_sd_tolerance((tol * 1e-10).max(1e-16)) else {
        return seed;
    };
    let problem = NegatedPair { space, objective };
    let Ok(res) = Executor::new(problem, solver)
        .configure(|s| s.max_iters(POLISH_ITERATIONS))
        .run()
    else {
        return seed;
    };
    let state = res.state();
    match state.get_best_param() {
        Some(p) if -state.get_best_cost() > seed.value => Candidate {
            value: -state.get_best_cost(),
            theta1: p[0],
            theta2: p[1],
        },
        _ => seed,
    }
}

/// Moves allowed per refinement round while the box optimum sits on the
/// box boundary.
const MAX_BOX_MOVES: usize = 64;

/// Grids a box around `seed`; while the best cell is strictly better than
/// the centre and lies on the boundary, re-centres the box there. Returns
/// the best candidate found, never worse than `seed`.
fn walk_box<I, G>(seed: Candidate, maximize: bool, cells: G) -> Candidate
where
    I: Iterator<Item = (Candidate, bool)>,
    G: Fn(Candidate) -> I,
{
    let mut center = seed;
    for _ in 0..MAX_BOX_MOVES {
        let mut best: Option<(Candidate, bool)> = None;
        for (c, edge) in cells(center) {
            if c.value.is_nan() {
                continue;
            }
            if best.is_none_or(|(b, _)| c.rank(&b, maximize) == Ordering::Less) {
                best = Some((c, edge));
            }
        }
        let Some((local, on_edge)) = best else { break };
        if local.rank(&center, maximize) != Ordering::Less || local.value == center.value {
            break;
        }
        center = local;
        if !on_edge {
            break;
        }
    }
    center
}

fn finish<F: Fn(Vec2, Vec2) -> f64>(
    space: &NormSpace,
    best: Candidate,
    method: Method,
    history: Vec<f64>,
    objective: F,
) -> SearchResult {
    let (mut t1, mut t2) = (canonical_angle(best.theta1), canonical_angle(best.theta2));
    if t1 >= PI {
        t1 -= PI;
        t2 = canonical_angle(t2 + PI);
    }
    let x = space.sphere_point(t1);
    let y = space.sphere_point(t2);
    // re-evaluate at the canonical witnesses so value and witnesses agree
    let value = objective(x, y);
    let value = if value.is_nan() { best.value } else { value };
    SearchResult {
        value,
        arg: (t1, t2),
        witnesses: (x, y),
        method,
        history,
    }
}

/// Bisection iterations when locating `‖x − y‖ = ε` along the sphere.
const BOUNDARY_STEPS: usize = 52;

/// Relative slack accepted on the constraint `‖x − y‖ ≥ ε`.
const FEASIBILITY_SLACK: f64 = 1e-15;

/// Smallest arc offset `φ ∈ [0, π]` with `‖x − y(θ1 + dir·φ)‖ ≥ ε`,
/// located by bisection. In a normed plane `‖x − y‖` is nondecreasing as
/// `y` travels along the sphere from `x` to `−x`.
fn boundary_offset(space: &NormSpace, x: Vec2, theta1: f64, dir: f64, eps: f64) -> f64 {
    let need = eps * (1.0 - FEASIBILITY_SLACK);
    let dist = |phi: f64| space.norm(x - space.sphere_point(theta1 + dir * phi));
    if dist(0.0) >= need {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, PI);
    for _ in 0..BOUNDARY_STEPS {
        let mid = 0.5 * (lo + hi);
        if dist(mid) >= need {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Modulus-of-convexity infimum
/// `inf { 1 − ‖x + y‖/2 : x, y ∈ S_X, ‖x − y‖ ≥ ε }`.
///
/// For each first angle the constraint boundary `‖x − y‖ = ε` is located
/// in both directions along the sphere, which turns the constrained
/// problem into a search over `θ1 ∈ [0, π)` alone. The reported value is
/// attained at feasible witnesses, so it bounds the infimum from above.
pub fn constrained_infimum(space: &NormSpace, eps: f64, cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    if !(0.0..=2.0).contains(&eps) {
        return Err(SearchError::EpsilonOutOfRange(eps));
    }
    let gap = |x: Vec2, y: Vec2| (1.0 - 0.5 * space.norm(x + y)).clamp(0.0, 1.0);
    // θ2 is stored as an absolute angle
    let eval = &|theta1: f64, dir: f64| -> Candidate {
        let x = space.sphere_point(theta1);
        let phi = boundary_offset(space, x, theta1, dir, eps);
        let theta2 = theta1 + dir * phi;
        Candidate {
            value: gap(x, space.sphere_point(theta2)),
            theta1,
            theta2,
        }
    };

    let n = cfg.coarse_grid.max(16);
    let h = TAU / n as f64;
    let rows = n / 2;
    let dirs = [1.0, -1.0];
    let coarse: Vec<Candidate> = (0..rows)
        .into_par_iter()
        .flat_map_iter(|i| dirs.map(|d| eval(i as f64 * h, d)))
        .collect();
    // coarse[2i + k] holds direction k at row i; θ1 wraps with period π
    let at = |i: isize, k: usize| coarse[2 * i.rem_euclid(rows as isize) as usize + k].value;
    let mut seeds: Vec<(Candidate, f64)> = Vec::new();
    for i in 0..rows as isize {
        for (k, &d) in dirs.iter().enumerate() {
            let v = at(i, k);
            if !(at(i - 1, k) < v) && !(at(i + 1, k) < v) {
                seeds.push((coarse[2 * i as usize + k], d));
            }
        }
    }
    seeds.sort_by(|a, b| a.0.rank(&b.0, false));
    seeds.truncate(cfg.top_cells.max(1));

    let mut best = seeds
        .first()
        .map(|s| s.0)
        .or_else(|| best_of(coarse.iter().copied(), false))
        .expect("grid is nonempty");
    let mut history = vec![best.value];

    let m = cfg.box_points();
    let mut half_width = h;
    for _ in 0..cfg.refine_rounds {
        let step = 2.0 * half_width / (m - 1) as f64;
        seeds = seeds
            .par_iter()
            .map(|&(seed, d)| {
                let local = walk_box(seed, false, |center| {
                    (0..m).map(move |a| {
                        (
                            eval(center.theta1 - half_width + a as f64 * step, d),
                            a == 0 || a == m - 1,
                        )
                    })
                });
                (local, d)
            })
            .collect();
        if let Some(round_best) = best_of(seeds.iter().map(|s| s.0), false) {
            if round_best.value < best.value {
                best = round_best;
            }
        }
        history.push(best.value);
        half_width *= cfg.refine_shrink;
    }

    Ok(finish(space, best, Method::Grid, history, gap))
}
