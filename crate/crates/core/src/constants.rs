//! Geometric constants of a two-dimensional normed space.
//!
//! The central quantity is the skew James type constant
//!
//! ```text
//! J_t[τ, X] = sup { M_t(‖x + τy‖, ‖τx − y‖) : x, y ∈ S_X }
//! ```
//!
//! For `t ≥ 1` the expression is convex in each of `x` and `y`, so on a
//! polygonal ball the supremum is attained at a pair of vertices and can be
//! computed exactly by enumeration. For `t < 1`, and for balls without a
//! finite vertex list, the nested grid search of [`crate::search`] is used.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{NormSpace, Vec2};
use crate::means::{power_mean, ExtReal};
use crate::search::{constrained_infimum, pair_maximize, Method, SearchConfig, SearchError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstantError {
    #[error("tau must be finite and non-negative (got {0})")]
    BadTau(f64),
    #[error("exact method unavailable: {0}")]
    ExactUnavailable(&'static str),
    #[error("lambda and mu must be finite, non-negative and not both zero (got {lambda}, {mu})")]
    BadWeights { lambda: f64, mu: f64 },
    #[error("James constant must lie in [1, 2] (got {0})")]
    JamesOutOfRange(f64),
    #[error(transparent)]
    Search(#[from] SearchError),
}

/// How a constant should be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    /// Exact vertex enumeration when available, grid search otherwise.
    #[default]
    Auto,
    Exact,
    Grid,
}

impl std::str::FromStr for MethodChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "exact" => Ok(MethodChoice::Exact),
            "grid" => Ok(MethodChoice::Grid),
            other => Err(format!("unknown method '{other}' (expected auto, exact or grid)")),
        }
    }
}

/// Parameters of one skew James type evaluation.
#[derive(Debug, Clone)]
pub struct ConstantRequest<'a> {
    pub space: &'a NormSpace,
    pub t: ExtReal,
    pub tau: f64,
    pub method: MethodChoice,
    pub cfg: SearchConfig,
}

impl<'a> ConstantRequest<'a> {
    pub fn new(space: &'a NormSpace, t: impl Into<ExtReal>, tau: f64) -> Self {
        ConstantRequest {
            space,
            t: t.into(),
            tau,
            method: MethodChoice::Auto,
            cfg: SearchConfig::default(),
        }
    }

    pub fn method(mut self, method: MethodChoice) -> Self {
        self.method = method;
        self
    }

    pub fn cfg(mut self, cfg: SearchConfig) -> Self {
        self.cfg = cfg;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantValue {
    pub value: f64,
    pub witnesses: Option<(Vec2, Vec2)>,
    pub method_used: Method,
    /// Maximizing τ, for constants defined as a supremum over τ.
    pub tau_star: Option<f64>,
}

fn check_tau(tau: f64) -> Result<(), ConstantError> {
    if tau.is_finite() && tau >= 0.0 {
        Ok(())
    } else {
        Err(ConstantError::BadTau(tau))
    }
}

/// Picks the evaluation path; `Some(points)` selects vertex enumeration.
fn resolve_method(space: &NormSpace, t: ExtReal, method: MethodChoice) -> Result<Option<Vec<Vec2>>, ConstantError> {
    let convex_mean = matches!(t, ExtReal::Finite(v) if v >= 1.0);
    match method {
        MethodChoice::Grid => Ok(None),
        MethodChoice::Auto => Ok(if convex_mean { space.extreme_points() } else { None }),
        MethodChoice::Exact => {
            if !convex_mean {
                return Err(ConstantError::ExactUnavailable(
                    "vertex enumeration requires finite t >= 1",
                ));
            }
            space.extreme_points().map(Some).ok_or(ConstantError::ExactUnavailable(
                "the unit ball has no finite vertex list",
            ))
        }
    }
}

/// Supremum of `objective` over unit pairs, by vertex enumeration or grid.
fn pair_supremum<F>(space: &NormSpace, vertices: Option<Vec<Vec2>>, objective: F, cfg: &SearchConfig) -> ConstantValue
where
    F: Fn(Vec2, Vec2) -> f64 + Sync,
{
    match vertices {
        Some(points) => {
            let mut best = (f64::NEG_INFINITY, points[0], points[0]);
            for &x in &points {
                for &y in &points {
                    let v = objective(x, y);
                    if v > best.0 {
                        best = (v, x, y);
                    }
                }
            }
            ConstantValue {
                value: best.0,
                witnesses: Some((best.1, best.2)),
                method_used: Method::Exact,
                tau_star: None,
            }
        }
        None => {
            let r = pair_maximize(space, objective, cfg);
            ConstantValue {
                value: r.value,
                witnesses: Some(r.witnesses),
                method_used: r.method,
                tau_star: None,
            }
        }
    }
}

/// The two norms combined by the skew constant.
pub fn skew_terms(space: &NormSpace, tau: f64, x: Vec2, y: Vec2) -> (f64, f64) {
    (space.norm(x + tau * y), space.norm(tau * x - y))
}

/// The two norms combined by the (non-skew) James type constant.
pub fn james_terms(space: &NormSpace, tau: f64, x: Vec2, y: Vec2) -> (f64, f64) {
    (space.norm(x + tau * y), space.norm(x - tau * y))
}

/// Skew James type constant `J_t[τ, X]`.
pub fn skew_james(req: &ConstantRequest<'_>) -> Result<ConstantValue, ConstantError> {
    check_tau(req.tau)?;
    let vertices = resolve_method(req.space, req.t, req.method)?;
    let (space, t, tau) = (req.space, req.t, req.tau);
    Ok(pair_supremum(
        space,
        vertices,
        |x, y| {
            let (a, b) = skew_terms(space, tau, x, y);
            power_mean(t, a, b)
        },
        &req.cfg,
    ))
}

/// James type constant `J_{X,t}(τ) = sup M_t(‖x + τy‖, ‖x − τy‖)`.
pub fn james_type(
    space: &NormSpace,
    t: ExtReal,
    tau: f64,
    method: MethodChoice,
    cfg: &SearchConfig,
) -> Result<ConstantValue, ConstantError> {
    check_tau(tau)?;
    let vertices = resolve_method(space, t, method)?;
    Ok(pair_supremum(
        space,
        vertices,
        |x, y| {
            let (a, b) = james_terms(space, tau, x, y);
            power_mean(t, a, b)
        },
        cfg,
    ))
}

/// Skew constant with the minimum mean, `J_{−∞}[τ, X]`.
pub fn skew_james_min(space: &NormSpace, tau: f64, cfg: &SearchConfig) -> Result<ConstantValue, ConstantError> {
    skew_james(&ConstantRequest::new(space, ExtReal::NegInf, tau).cfg(*cfg))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JamesConstant {
    pub value: ConstantValue,
    /// `J(X) < 2 − tol`.
    pub uniformly_non_square: bool,
}

impl JamesConstant {
    pub fn is_uniformly_non_square(&self, margin: f64) -> bool {
        self.value.value < 2.0 - margin
    }
}

/// James constant `J(X) = sup min(‖x + y‖, ‖x − y‖)`.
pub fn james_constant(space: &NormSpace, cfg: &SearchConfig) -> JamesConstant {
    let value = skew_james_min(space, 1.0, cfg).expect("tau = 1 is valid");
    JamesConstant {
        uniformly_non_square: value.value < 2.0 - cfg.tol,
        value,
    }
}

/// Modulus of convexity `δ_X(ε)`.
pub fn modulus_of_convexity(space: &NormSpace, eps: f64, cfg: &SearchConfig) -> Result<f64, ConstantError> {
    Ok(constrained_infimum(space, eps, cfg)?.value)
}

/// `δ_X(ε)` below this is treated as zero by [`convexity_coefficient`].
pub const DELTA_ZERO_TOL: f64 = 1e-6;

/// Convexity coefficient `ε_0(X) = sup { ε : δ_X(ε) = 0 }`.
///
/// Scans a 41-point ε-grid for the last point where `δ ≤ DELTA_ZERO_TOL`,
/// then bisects the following interval down to `cfg.tol`.
pub fn convexity_coefficient(space: &NormSpace, cfg: &SearchConfig) -> f64 {
    let delta = |eps: f64| constrained_infimum(space, eps, cfg).expect("eps in range").value;
    let grid: Vec<f64> = (0..=40).map(|k| k as f64 * 0.05).collect();
    let deltas: Vec<f64> = grid.par_iter().map(|&e| delta(e)).collect();
    let first_positive = deltas.iter().position(|&d| d > DELTA_ZERO_TOL);
    let Some(k) = first_positive else {
        return 2.0;
    };
    if k == 0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (grid[k - 1], grid[k]);
    while hi - lo > cfg.tol {
        let mid = 0.5 * (lo + hi);
        if delta(mid) > DELTA_ZERO_TOL {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

/// Points of the uniform τ-grid on `[0, 1]` used by τ-suprema.
pub const TAU_GRID_POINTS: usize = 201;
/// Golden-section iterations after the τ-grid.
pub const GOLDEN_ITERATIONS: usize = 40;

/// Maximizes `f` over `τ ∈ [0, 1]`: uniform grid, then golden-section
/// search on the bracket around the best grid point. Returns the best
/// evaluation seen.
fn tau_supremum<T, F>(f: F) -> Result<(f64, f64, T), ConstantError>
where
    T: Send,
    F: Fn(f64) -> Result<(f64, T), ConstantError> + Sync,
{
    let n = TAU_GRID_POINTS - 1;
    let grid: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    let evals: Vec<(f64, T)> = grid.par_iter().map(|&tau| f(tau)).collect::<Result<_, _>>()?;
    let mut best_k = 0;
    for (k, e) in evals.iter().enumerate() {
        if e.0 > evals[best_k].0 {
            best_k = k;
        }
    }
    let mut lo = grid[best_k.saturating_sub(1)];
    let mut hi = grid[(best_k + 1).min(n)];
    let mut evals: Vec<Option<(f64, T)>> = evals.into_iter().map(Some).collect();
    let (best_v, best_extra) = evals[best_k].take().expect("present");
    let mut best = (best_v, grid[best_k], best_extra);

    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, ec) = f(c)?;
    let (mut fd, ed) = f(d)?;
    let consider = |v: f64, tau: f64, extra: T, best: &mut (f64, f64, T)| {
        if v > best.0 {
            *best = (v, tau, extra);
        }
    };
    consider(fc, c, ec, &mut best);
    consider(fd, d, ed, &mut best);
    for _ in 0..GOLDEN_ITERATIONS {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            let (v, e) = f(c)?;
            fc = v;
            consider(v, c, e, &mut best);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            let (v, e) = f(d)?;
            fd = v;
            consider(v, d, e, &mut best);
        }
    }
    Ok(best)
}

/// `G_t(X) = sup_{τ ∈ [0,1]} (J_t[τ, X])² / (1 + τ²)`.
pub fn g_constant(space: &NormSpace, t: ExtReal, cfg: &SearchConfig) -> Result<ConstantValue, ConstantError> {
    let (value, tau, inner) = tau_supremum(|tau| {
        let j = skew_james(&ConstantRequest::new(space, t, tau).cfg(*cfg))?;
        Ok((j.value * j.value / (1.0 + tau * tau), j))
    })?;
    Ok(ConstantValue {
        value,
        witnesses: inner.witnesses,
        method_used: inner.method_used,
        tau_star: Some(tau),
    })
}

/// von Neumann-Jordan type constant
/// `C_t(X) = sup_{τ ∈ [0,1]} J_{X,t}(τ)² / (1 + τ²)`.
pub fn c_t_constant(space: &NormSpace, t: ExtReal, cfg: &SearchConfig) -> Result<ConstantValue, ConstantError> {
    let (value, tau, inner) = tau_supremum(|tau| {
        let j = james_type(space, t, tau, MethodChoice::Auto, cfg)?;
        Ok((j.value * j.value / (1.0 + tau * tau), j))
    })?;
    Ok(ConstantValue {
        value,
        witnesses: inner.witnesses,
        method_used: inner.method_used,
        tau_star: Some(tau),
    })
}

/// von Neumann-Jordan constant, `C_2`.
pub fn von_neumann_jordan(space: &NormSpace, cfg: &SearchConfig) -> Result<ConstantValue, ConstantError> {
    c_t_constant(space, ExtReal::Finite(2.0), cfg)
}

/// Zbăganu constant, `C_0`.
pub fn zbaganu(space: &NormSpace, cfg: &SearchConfig) -> Result<ConstantValue, ConstantError> {
    c_t_constant(space, ExtReal::ZERO, cfg)
}

/// Skew Gao constant `2 (J_2[τ, X])²`.
pub fn gao_skew(space: &NormSpace, tau: f64, cfg: &SearchConfig) -> Result<f64, ConstantError> {
    let j = skew_james(&ConstantRequest::new(space, 2.0, tau).cfg(*cfg))?;
    Ok(2.0 * j.value * j.value)
}

/// `sup (‖λx + μy‖² + ‖μx − λy‖²) / (2(λ² + μ²))` over unit pairs.
pub fn lyj_constant(space: &NormSpace, lambda: f64, mu: f64, cfg: &SearchConfig) -> Result<f64, ConstantError> {
    let valid = |w: f64| w.is_finite() && w >= 0.0;
    if !(valid(lambda) && valid(mu)) || (lambda == 0.0 && mu == 0.0) {
        return Err(ConstantError::BadWeights { lambda, mu });
    }
    let denom = 2.0 * (lambda * lambda + mu * mu);
    let r = pair_maximize(
        space,
        |x, y| {
            let a = space.norm(lambda * x + mu * y);
            let b = space.norm(mu * x - lambda * y);
            (a * a + b * b) / denom
        },
        cfg,
    );
    Ok(r.value)
}

/// Upper bound on `G_{−∞}(X)` in terms of the James constant `J`:
///
/// ```text
/// (J − 1)² + 4(J − 1)² a / ((J² − 2J + a)² + 4(J − 1)²),
/// a = √((2J − J²)² + 4(J − 1)²)
/// ```
///
/// The quotient is `0/0` at `J = 1`, where the limit `1` is returned.
pub fn g_bound_from_james(j: f64) -> Result<f64, ConstantError> {
    if !(1.0..=2.0).contains(&j) {
        return Err(ConstantError::JamesOutOfRange(j));
    }
    let d = j - 1.0;
    if d == 0.0 {
        return Ok(1.0);
    }
    let b = 2.0 * j - j * j;
    let a = (b * b + 4.0 * d * d).sqrt();
    let shifted = j * j - 2.0 * j + a;
    Ok(d * d + 4.0 * d * d * a / (shifted * shifted + 4.0 * d * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BuiltinId;
    use std::f64::consts::SQRT_2;

    fn quick() -> SearchConfig {
        SearchConfig {
            coarse_grid: 256,
            ..SearchConfig::default()
        }
    }

    fn hex_formula(t: f64, tau: f64) -> f64 {
        let second = if tau >= 1.0 { tau.powf(t) } else { 1.0 };
        (((tau + 1.0).powf(t) + second) / 2.0).powf(1.0 / t)
    }

    #[test]
    fn hexagon_exact_examples() {
        let hex = NormSpace::hexagon();
        let v = skew_james(&ConstantRequest::new(&hex, 1.0, 2.0).method(MethodChoice::Exact)).unwrap();
        assert!((v.value - 2.5).abs() < 1e-12);
        assert_eq!(v.method_used, Method::Exact);
        let hybrid = NormSpace::builtin(BuiltinId::L1LinfHybrid);
        let v = skew_james(&ConstantRequest::new(&hybrid, 2.0, 1.0).method(MethodChoice::Exact)).unwrap();
        assert!((v.value - 2.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn exact_matches_closed_form_on_both_polytopes() {
        for space in [NormSpace::hexagon(), NormSpace::builtin(BuiltinId::L1LinfHybrid)] {
            for t in [1.0, 1.5, 2.0, 3.0, 4.0] {
                for tau in [0.0, 0.1, 0.25, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0] {
                    let v = skew_james(&ConstantRequest::new(&space, t, tau)).unwrap();
                    assert_eq!(v.method_used, Method::Exact);
                    assert!((v.value - hex_formula(t, tau)).abs() < 1e-12, "{space} t={t} tau={tau}");
                }
            }
        }
    }

    #[test]
    fn tau_zero_gives_one() {
        for space in [
            NormSpace::hexagon(),
            NormSpace::l2(),
            NormSpace::builtin(BuiltinId::DayJamesL2L1),
        ] {
            for t in [
                ExtReal::NegInf,
                ExtReal::ZERO,
                ExtReal::Finite(1.0),
                ExtReal::Finite(3.0),
                ExtReal::PosInf,
            ] {
                let v = skew_james(&ConstantRequest::new(&space, t, 0.0).cfg(quick())).unwrap();
                assert!((v.value - 1.0).abs() < 1e-12, "{space} {t}");
            }
        }
    }

    #[test]
    fn hilbert_values() {
        let l2 = NormSpace::l2();
        let v = skew_james(&ConstantRequest::new(&l2, 2.0, 0.5)).unwrap();
        assert!((v.value - 1.25f64.sqrt()).abs() < 1e-6);
        assert_eq!(v.method_used, Method::Grid);
        let v = skew_james(&ConstantRequest::new(&l2, ExtReal::NegInf, 1.0)).unwrap();
        assert!((v.value - SQRT_2).abs() < 1e-4);
        let cfg = SearchConfig::default();
        let v = james_type(&l2, 2.0.into(), 1.0, MethodChoice::Auto, &cfg).unwrap();
        assert!((v.value - SQRT_2).abs() < 1e-6);
        let v = james_type(&l2, ExtReal::PosInf, 1.0, MethodChoice::Auto, &cfg).unwrap();
        assert!((v.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn exact_path_gating() {
        let hex = NormSpace::hexagon();
        for t in [ExtReal::Finite(0.5), ExtReal::ZERO, ExtReal::NegInf, ExtReal::PosInf] {
            let err = skew_james(&ConstantRequest::new(&hex, t, 1.0).method(MethodChoice::Exact)).unwrap_err();
            assert!(matches!(err, ConstantError::ExactUnavailable(_)));
        }
        let l2 = NormSpace::l2();
        let err = skew_james(&ConstantRequest::new(&l2, 2.0, 1.0).method(MethodChoice::Exact)).unwrap_err();
        assert!(matches!(err, ConstantError::ExactUnavailable(_)));
        // auto falls back to the grid for t < 1 even on polytopes
        let v = skew_james(&ConstantRequest::new(&hex, 0.5, 1.0).cfg(quick())).unwrap();
        assert_eq!(v.method_used, Method::Grid);
    }

    #[test]
    fn rejects_negative_tau() {
        let hex = NormSpace::hexagon();
        assert_eq!(
            skew_james(&ConstantRequest::new(&hex, 1.0, -0.5)).unwrap_err(),
            ConstantError::BadTau(-0.5)
        );
        assert!(skew_james(&ConstantRequest::new(&hex, 1.0, f64::NAN)).is_err());
    }

    #[test]
    fn witnesses_reproduce_value() {
        let space = NormSpace::builtin(BuiltinId::DayJamesL2L1);
        for (t, tau) in [
            (ExtReal::NegInf, 0.4),
            (ExtReal::Finite(1.5), 0.8),
            (ExtReal::ZERO, 1.3),
        ] {
            let v = skew_james(&ConstantRequest::new(&space, t, tau).cfg(quick())).unwrap();
            let (x, y) = v.witnesses.unwrap();
            let (a, b) = skew_terms(&space, tau, x, y);
            assert!((power_mean(t, a, b) - v.value).abs() < 1e-10);
        }
    }

    #[test]
    fn skew_and_plain_agree_at_tau_one() {
        let space = NormSpace::builtin(BuiltinId::DayJamesL2L1);
        let cfg = quick();
        for t in [ExtReal::NegInf, ExtReal::ZERO, ExtReal::Finite(2.0)] {
            let skew = skew_james(&ConstantRequest::new(&space, t, 1.0).cfg(cfg))
                .unwrap()
                .value;
            let plain = james_type(&space, t, 1.0, MethodChoice::Auto, &cfg).unwrap().value;
            assert!((skew - plain).abs() < 1e-4, "{t}: {skew} vs {plain}");
        }
    }

    #[test]
    fn james_constant_examples() {
        let cfg = SearchConfig::default();
        let linf = james_constant(&NormSpace::linf(), &cfg);
        assert!((linf.value.value - 2.0).abs() < 1e-12);
        assert!(!linf.uniformly_non_square);
        let l2 = james_constant(&NormSpace::l2(), &cfg);
        assert!((l2.value.value - SQRT_2).abs() < 1e-4);
        assert!(l2.uniformly_non_square);
        let dj = james_constant(&NormSpace::builtin(BuiltinId::DayJamesL2L1), &cfg);
        assert!(
            (dj.value.value - (8.0f64 / 3.0).sqrt()).abs() < 1e-4,
            "{}",
            dj.value.value
        );
    }

    #[test]
    fn modulus_examples() {
        let cfg = SearchConfig::default();
        let l2 = NormSpace::l2();
        let d = modulus_of_convexity(&l2, SQRT_2, &cfg).unwrap();
        assert!((d - (1.0 - SQRT_2 / 2.0)).abs() < 1e-6);
        assert!(modulus_of_convexity(&NormSpace::linf(), 1.5, &cfg).unwrap() < 1e-9);
        assert_eq!(modulus_of_convexity(&NormSpace::hexagon(), 0.0, &cfg).unwrap(), 0.0);
        assert!(matches!(
            modulus_of_convexity(&l2, 2.1, &cfg),
            Err(ConstantError::Search(SearchError::EpsilonOutOfRange(_)))
        ));
    }

    #[test]
    fn convexity_coefficient_examples() {
        let cfg = quick();
        assert_eq!(convexity_coefficient(&NormSpace::linf(), &cfg), 2.0);
        // δ(ε) ≈ ε²/8 falls below the zero tolerance only for ε < 3e-3
        let l2 = convexity_coefficient(&NormSpace::l2(), &cfg);
        assert!(l2 < 3e-3, "{l2}");
        let hex = convexity_coefficient(&NormSpace::hexagon(), &cfg);
        assert!((hex - 1.0).abs() < 2e-4, "{hex}");
    }

    #[test]
    fn g_and_c_on_hilbert_space() {
        let cfg = quick();
        let l2 = NormSpace::l2();
        let g = g_constant(&l2, ExtReal::NegInf, &cfg).unwrap();
        assert!((g.value - 1.0).abs() < 2e-3, "{}", g.value);
        let g2 = g_constant(&l2, 2.0.into(), &cfg).unwrap();
        assert!((g2.value - 1.0).abs() < 2e-3);
        let c2 = von_neumann_jordan(&l2, &cfg).unwrap();
        assert!((c2.value - 1.0).abs() < 2e-3);
        assert!(c2.tau_star.is_some());
    }

    #[test]
    fn c_t_on_linf() {
        let cfg = quick();
        let c2 = von_neumann_jordan(&NormSpace::linf(), &cfg).unwrap();
        assert!((c2.value - 2.0).abs() < 1e-9, "{}", c2.value);
        assert!((c2.tau_star.unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn g_witnesses_reproduce_value() {
        let space = NormSpace::builtin(BuiltinId::DayJamesL2L1);
        let g = g_constant(&space, ExtReal::NegInf, &quick()).unwrap();
        let tau = g.tau_star.unwrap();
        let (x, y) = g.witnesses.unwrap();
        let (a, b) = skew_terms(&space, tau, x, y);
        let m = a.min(b);
        assert!((m * m / (1.0 + tau * tau) - g.value).abs() < 1e-10);
    }

    #[test]
    fn gao_examples() {
        let cfg = quick();
        assert!((gao_skew(&NormSpace::l2(), 1.0, &cfg).unwrap() - 4.0).abs() < 1e-6);
        assert!((gao_skew(&NormSpace::hexagon(), 0.0, &cfg).unwrap() - 2.0).abs() < 1e-12);
        assert!((gao_skew(&NormSpace::hexagon(), 1.0, &cfg).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn lyj_examples() {
        let cfg = quick();
        assert!((lyj_constant(&NormSpace::l2(), 1.0, 1.0, &cfg).unwrap() - 1.0).abs() < 1e-9);
        assert!((lyj_constant(&NormSpace::linf(), 1.0, 1.0, &cfg).unwrap() - 2.0).abs() < 1e-9);
        assert!((lyj_constant(&NormSpace::hexagon(), 1.0, 0.0, &cfg).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(
            lyj_constant(&NormSpace::l2(), 0.0, 0.0, &cfg),
            Err(ConstantError::BadWeights { .. })
        ));
        // with λ = 1 the quotient is (J_2[μ])² / (1 + μ²)
        let space = NormSpace::builtin(BuiltinId::DayJamesL2L1);
        for mu in [0.3, 0.8] {
            let direct = lyj_constant(&space, 1.0, mu, &cfg).unwrap();
            let j = skew_james(&ConstantRequest::new(&space, 2.0, mu).cfg(cfg))
                .unwrap()
                .value;
            assert!((direct - j * j / (1.0 + mu * mu)).abs() < 1e-4);
        }
    }

    #[test]
    fn g_bound_values() {
        let j = (8.0f64 / 3.0).sqrt();
        assert!((g_bound_from_james(j).unwrap() - 1.4007).abs() < 5e-4);
        assert_eq!(g_bound_from_james(2.0).unwrap(), 2.0);
        assert_eq!(g_bound_from_james(1.0).unwrap(), 1.0);
        assert!(g_bound_from_james(0.9).is_err());
        assert!(g_bound_from_james(2.1).is_err());
    }

    #[test]
    fn g_bound_simplifies() {
        // a + (2J − J²) = 2 reduces the bound to (J − 1)² + 1
        for k in 1..=2000 {
            let j = 1.0 + k as f64 / 2000.0;
            let expected = (j - 1.0) * (j - 1.0) + 1.0;
            assert!((g_bound_from_james(j).unwrap() - expected).abs() <= 1e-12, "J = {j}");
        }
        for j in [1.0 + 1e-12, 1.0 + 1e-8, 1.0 + 1e-4] {
            let expected = (j - 1.0) * (j - 1.0) + 1.0;
            assert!((g_bound_from_james(j).unwrap() - expected).abs() <= 1e-12, "J = {j}");
        }
    }
}
