//! Numerical certificates for inequalities between the constants.
//!
//! Each check evaluates both sides of one inequality on a concrete space
//! and parameter set and records the margin `rhs − lhs`. Verdicts:
//!
//! * `pass`: `margin ≥ −noise`, where `noise = 1e-9 · max(1, |lhs|, |rhs|)`
//!   absorbs rounding in equality cases;
//! * `inconclusive`: `−tol ≤ margin < −noise`, within grid-induced slack;
//! * `fail`: `margin < −tol`;
//! * `skipped`: the inequality's hypothesis does not hold numerically.
//!
//! A [`Verifier`] memoizes skew James values and moduli of convexity for one
//! space so that checks sharing parameters share evaluations.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constants::{
    g_bound_from_james, g_constant, james_constant, modulus_of_convexity, skew_james, ConstantError, ConstantRequest,
};
use crate::geometry::NormSpace;
use crate::means::{power_mean, ExtReal};
use crate::search::SearchConfig;

/// Default certificate tolerance.
pub const DEFAULT_TOL: f64 = 5e-3;
/// Relative rounding allowance below which a negative margin still passes.
pub const NOISE_FLOOR: f64 = 1e-9;
/// Uniform ε-grid size for the modulus-based bounds.
pub const EPS_GRID_POINTS: usize = 401;
/// Golden-section steps polishing the best ε-grid point.
pub const EPS_GOLDEN_ITERATIONS: usize = 30;
/// A space counts as uniformly non-square when `J(X) < 2 − JAMES_GATE`.
pub const JAMES_GATE: f64 = 1e-3;

/// The inequalities that can be certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Claim {
    /// `(J_{t1})^{t2} ≤ (J_{t2})^{t2} ≤ ((1+τ)^{t2} + [2 J_{t1}^{t1} − (1+τ)^{t1}]^{t2/t1}) / 2`.
    #[serde(rename = "thm31")]
    PowerSandwich,
    /// The sandwich with `t1 = 1`.
    #[serde(rename = "cor31")]
    UnitSandwich,
    /// `J_1^t` against `J_t^t` with the factor `2^{t−1}`.
    #[serde(rename = "rmk32")]
    MeanComparison,
    /// `J_t[τ] ≤ sup_ε M_t(3 − 2δ(ε) − τ, τε + 1 − τ)`.
    #[serde(rename = "prop34")]
    ModulusBound,
    /// `J_t[τ]^t ≤ max_{J ≤ ε ≤ 2} ([1 − τ + τε]^t + [1 + τ − 2τδ(ε)]^t) / 2`.
    #[serde(rename = "thm32")]
    NonSquareBound,
    /// `G_{−∞}(X) ≤ g_bound_from_james(J(X))`.
    #[serde(rename = "thm33")]
    GBound,
    /// Convexity of `τ ↦ J_t[τ]^t`.
    #[serde(rename = "prop31_convexity")]
    Convexity,
}

impl Claim {
    pub const ALL: [Claim; 7] = [
        Claim::PowerSandwich,
        Claim::UnitSandwich,
        Claim::MeanComparison,
        Claim::ModulusBound,
        Claim::NonSquareBound,
        Claim::GBound,
        Claim::Convexity,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::PowerSandwich => "thm31",
            Claim::UnitSandwich => "cor31",
            Claim::MeanComparison => "rmk32",
            Claim::ModulusBound => "prop34",
            Claim::NonSquareBound => "thm32",
            Claim::GBound => "thm33",
            Claim::Convexity => "prop31_convexity",
        }
    }
}

impl FromStr for Claim {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| VerifyError::UnknownClaim(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn from_sides(lhs: f64, rhs: f64, tol: f64) -> Verdict {
        let margin = rhs - lhs;
        let noise = NOISE_FLOOR * lhs.abs().max(rhs.abs()).max(1.0);
        if margin >= -noise {
            Verdict::Pass
        } else if margin >= -tol {
            Verdict::Inconclusive
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        }
    }
}

/// Parameters a certificate was evaluated at; unused ones are omitted.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<ExtReal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    /// Maximizing ε of the modulus-based bounds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    /// `(τ_left, τ, τ_right)` of a convexity certificate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub taus: Option<[f64; 3]>,
}

impl Params {
    fn describe(&self) -> String {
        let mut parts = Vec::new();
        if let Some(t) = self.t {
            parts.push(format!("t={t}"));
        }
        if let Some(t1) = self.t1 {
            parts.push(format!("t1={t1}"));
        }
        if let Some(t2) = self.t2 {
            parts.push(format!("t2={t2}"));
        }
        if let Some(tau) = self.tau {
            parts.push(format!("tau={tau}"));
        }
        if let Some(eps) = self.eps {
            parts.push(format!("eps={eps:.6}"));
        }
        if let Some([a, b, c]) = self.taus {
            parts.push(format!("taus=({a},{b},{c})"));
        }
        parts.join(" ")
    }
}

/// One evaluated inequality `lhs ≤ rhs`.
///
/// Skipped certificates carry NaN sides, which serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: Claim,
    /// Which inequality of a two-sided claim: `lower` or `upper`; `bound`
    /// for one-sided claims.
    pub side: String,
    pub space: String,
    pub params: Params,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tol: f64,
    /// `margin ≥ −tol`.
    pub pass: bool,
    pub verdict: Verdict,
    /// ε-grid size behind the right-hand side, where one is used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Certificate {
    fn new(claim: Claim, side: &str, space: &str, params: Params, lhs: f64, rhs: f64, tol: f64) -> Self {
        let verdict = Verdict::from_sides(lhs, rhs, tol);
        Certificate {
            claim,
            side: side.to_string(),
            space: space.to_string(),
            params,
            lhs,
            rhs,
            margin: rhs - lhs,
            tol,
            pass: verdict != Verdict::Fail,
            verdict,
            grid_size: None,
            note: None,
        }
    }

    fn skipped(claim: Claim, space: &str, params: Params, tol: f64, note: String) -> Self {
        Certificate {
            claim,
            side: "bound".to_string(),
            space: space.to_string(),
            params,
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            tol,
            pass: true,
            verdict: Verdict::Skipped,
            grid_size: None,
            note: Some(note),
        }
    }

    fn with_grid(mut self, n: usize) -> Self {
        self.grid_size = Some(n);
        self
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }
}

/// Certificates as JSON lines.
pub fn to_json_lines(certs: &[Certificate]) -> String {
    let mut out = String::new();
    for c in certs {
        out.push_str(&c.to_json());
        out.push('\n');
    }
    out
}

/// Certificates as an aligned text table.
pub fn to_table(certs: &[Certificate]) -> String {
    let rows: Vec<[String; 8]> = certs
        .iter()
        .map(|c| {
            [
                c.claim.id().to_string(),
                c.side.clone(),
                c.space.clone(),
                c.params.describe(),
                format!("{:.9}", c.lhs),
                format!("{:.9}", c.rhs),
                format!("{:+.3e}", c.margin),
                c.verdict.as_str().to_string(),
            ]
        })
        .collect();
    let header = ["claim", "side", "space", "params", "lhs", "rhs", "margin", "verdict"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let padded: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&header);
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&cells);
    }
    out
}

/// Counts of each verdict.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub inconclusive: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(certs: &[Certificate]) -> Summary {
        let mut s = Summary::default();
        for c in certs {
            match c.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Inconclusive => s.inconclusive += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Skipped => s.skipped += 1,
            }
        }
        s
    }

    pub fn total(&self) -> usize {
        self.pass + self.inconclusive + self.fail + self.skipped
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("{0}")]
    Parameter(String),
    #[error("unknown claim '{0}'")]
    UnknownClaim(String),
    #[error(transparent)]
    Constant(#[from] ConstantError),
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), VerifyError> {
    if ok {
        Ok(())
    } else {
        Err(VerifyError::Parameter(msg()))
    }
}

fn unit_tau(tau: f64) -> Result<(), VerifyError> {
    require((0.0..=1.0).contains(&tau), || {
        format!("tau must lie in [0, 1] (got {tau})")
    })
}

/// Certificate settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub search: SearchConfig,
    pub tol: f64,
    pub eps_points: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            search: SearchConfig::default(),
            tol: DEFAULT_TOL,
            eps_points: EPS_GRID_POINTS,
        }
    }
}

/// Memoizing evaluator of certificates on one space.
pub struct Verifier<'a> {
    space: &'a NormSpace,
    label: String,
    cfg: VerifyConfig,
    skew: Mutex<HashMap<(u64, u64), f64>>,
    delta: Mutex<HashMap<u64, f64>>,
    james: OnceLock<f64>,
    g_min: OnceLock<Result<f64, ConstantError>>,
}

fn t_key(t: ExtReal) -> u64 {
    t.to_f64().to_bits()
}

impl<'a> Verifier<'a> {
    pub fn new(space: &'a NormSpace, cfg: VerifyConfig) -> Self {
        Verifier {
            space,
            label: space.label(),
            cfg,
            skew: Mutex::new(HashMap::new()),
            delta: Mutex::new(HashMap::new()),
            james: OnceLock::new(),
            g_min: OnceLock::new(),
        }
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.cfg
    }

    /// `J_t[τ, X]`, memoized.
    pub fn skew(&self, t: impl Into<ExtReal>, tau: f64) -> Result<f64, VerifyError> {
        let t = t.into();
        let key = (t_key(t), tau.to_bits());
        if let Some(v) = self.skew.lock().expect("cache lock").get(&key) {
            return Ok(*v);
        }
        let v = skew_james(&ConstantRequest::new(self.space, t, tau).cfg(self.cfg.search))?.value;
        self.skew.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }

    /// Evaluates the missing `(t, τ)` pairs in parallel.
    pub fn prefetch_skew(&self, keys: &[(ExtReal, f64)]) -> Result<(), VerifyError> {
        let missing: Vec<(ExtReal, f64)> = {
            let cache = self.skew.lock().expect("cache lock");
            let mut seen = std::collections::HashSet::new();
            keys.iter()
                .copied()
                .filter(|&(t, tau)| {
                    let key = (t_key(t), tau.to_bits());
                    !cache.contains_key(&key) && seen.insert(key)
                })
                .collect()
        };
        missing
            .par_iter()
            .map(|&(t, tau)| self.skew(t, tau).map(|_| ()))
            .collect()
    }

    /// `δ_X(ε)`, memoized.
    pub fn delta(&self, eps: f64) -> Result<f64, VerifyError> {
        let key = eps.to_bits();
        if let Some(v) = self.delta.lock().expect("cache lock").get(&key) {
            return Ok(*v);
        }
        let v = modulus_of_convexity(self.space, eps, &self.cfg.search)?;
        self.delta.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }

    fn eps_grid(&self, lo: f64, hi: f64) -> Vec<f64> {
        let n = self.cfg.eps_points.max(2) - 1;
        (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect()
    }

    /// Evaluates `δ` on the ε-grid over `[lo, 2]` in parallel.
    fn prefetch_delta(&self, lo: f64) -> Result<(), VerifyError> {
        self.eps_grid(lo, 2.0)
            .par_iter()
            .map(|&e| self.delta(e).map(|_| ()))
            .collect()
    }

    /// James constant `J(X)`, memoized.
    pub fn james(&self) -> f64 {
        *self
            .james
            .get_or_init(|| james_constant(self.space, &self.cfg.search).value.value)
    }

    fn g_min(&self) -> Result<f64, VerifyError> {
        self.g_min
            .get_or_init(|| g_constant(self.space, ExtReal::NegInf, &self.cfg.search).map(|v| v.value))
            .clone()
            .map_err(VerifyError::from)
    }

    /// Maximizes `f(ε, δ(ε))` over `[lo, 2]`: uniform grid, then
    /// golden-section search in the bracket of the best grid point.
    fn eps_supremum<F>(&self, lo: f64, f: F) -> Result<(f64, f64), VerifyError>
    where
        F: Fn(f64, f64) -> f64,
    {
        let grid = self.eps_grid(lo, 2.0);
        let mut best = (f64::NEG_INFINITY, lo);
        let mut best_k = 0;
        for (k, &e) in grid.iter().enumerate() {
            let v = f(e, self.delta(e)?);
            if v > best.0 {
                best = (v, e);
                best_k = k;
            }
        }
        let mut a = grid[best_k.saturating_sub(1)];
        let mut b = grid[(best_k + 1).min(grid.len() - 1)];
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        let eval = |e: f64| -> Result<f64, VerifyError> { Ok(f(e, self.delta(e)?)) };
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = eval(c)?;
        let mut fd = eval(d)?;
        for _ in 0..EPS_GOLDEN_ITERATIONS {
            if fc > best.0 {
                best = (fc, c);
            }
            if fd > best.0 {
                best = (fd, d);
            }
            if fc >= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = eval(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = eval(d)?;
            }
        }
        for (v, e) in [(fc, c), (fd, d)] {
            if v > best.0 {
                best = (v, e);
            }
        }
        Ok(best)
    }

    /// Power sandwich between `J_{t1}` and `J_{t2}`: lower and upper
    /// certificates.
    pub fn check_power_sandwich(&self, t1: f64, t2: f64, tau: f64) -> Result<[Certificate; 2], VerifyError> {
        require(t1 >= 1.0 && t2 >= t1 && t2.is_finite(), || {
            format!("need t2 >= t1 >= 1 (got t1 = {t1}, t2 = {t2})")
        })?;
        unit_tau(tau)?;
        let j1 = self.skew(t1, tau)?;
        let j2 = self.skew(t2, tau)?;
        let params = Params {
            t1: Some(t1),
            t2: Some(t2),
            tau: Some(tau),
            ..Params::default()
        };
        Ok(self.sandwich(Claim::PowerSandwich, params, t1, t2, tau, j1, j2))
    }

    /// The sandwich with `t1 = 1`.
    pub fn check_unit_sandwich(&self, t: f64, tau: f64) -> Result<[Certificate; 2], VerifyError> {
        require(t >= 1.0 && t.is_finite(), || format!("need t >= 1 (got {t})"))?;
        unit_tau(tau)?;
        let j1 = self.skew(1.0, tau)?;
        let jt = self.skew(t, tau)?;
        let params = Params {
            t: Some(ExtReal::Finite(t)),
            tau: Some(tau),
            ..Params::default()
        };
        Ok(self.sandwich(Claim::UnitSandwich, params, 1.0, t, tau, j1, jt))
    }

    #[allow(clippy::too_many_arguments)]
    fn sandwich(&self, claim: Claim, params: Params, t1: f64, t2: f64, tau: f64, j1: f64, j2: f64) -> [Certificate; 2] {
        let lower = Certificate::new(
            claim,
            "lower",
            &self.label,
            params.clone(),
            j1.powf(t2),
            j2.powf(t2),
            self.cfg.tol,
        );
        let s = 1.0 + tau;
        let bracket = 2.0 * j1.powf(t1) - s.powf(t1);
        let rhs = (s.powf(t2) + bracket.max(0.0).powf(t2 / t1)) / 2.0;
        let mut upper = Certificate::new(claim, "upper", &self.label, params, j2.powf(t2), rhs, self.cfg.tol);
        if bracket < 0.0 {
            upper = upper.with_note("negative bracket clamped to 0");
        }
        [lower, upper]
    }

    /// `J_1^t` against `J_t^t`: for `t ≥ 1`, `J_1^t ≤ J_t^t ≤ 2^{t−1} J_1^t`;
    /// for `0 < t ≤ 1`, `2^{t−1} J_1^t ≤ J_t^t ≤ J_1^t`.
    pub fn check_mean_comparison(&self, t: f64, tau: f64) -> Result<[Certificate; 2], VerifyError> {
        require(t > 0.0 && t.is_finite(), || format!("need t > 0 (got {t})"))?;
        unit_tau(tau)?;
        let a = self.skew(1.0, tau)?.powf(t);
        let b = self.skew(t, tau)?.powf(t);
        let k = 2f64.powf(t - 1.0);
        let params = Params {
            t: Some(ExtReal::Finite(t)),
            tau: Some(tau),
            ..Params::default()
        };
        let tol = self.cfg.tol;
        let label = &self.label;
        let claim = Claim::MeanComparison;
        Ok(if t >= 1.0 {
            [
                Certificate::new(claim, "lower", label, params.clone(), a, b, tol),
                Certificate::new(claim, "upper", label, params, b, k * a, tol),
            ]
        } else {
            [
                Certificate::new(claim, "lower", label, params.clone(), k * a, b, tol),
                Certificate::new(claim, "upper", label, params, b, a, tol),
            ]
        })
    }

    /// `J_t[τ] ≤ sup_{ε ∈ [0,2]} M_t(3 − 2δ(ε) − τ, τε + 1 − τ)`, certified
    /// for `τ ∈ [0, 1]` only.
    pub fn check_modulus_bound(&self, t: impl Into<ExtReal>, tau: f64) -> Result<Certificate, VerifyError> {
        let t = t.into();
        unit_tau(tau)?;
        let lhs = self.skew(t, tau)?;
        let (rhs, eps) = self.eps_supremum(0.0, |e, d| {
            power_mean(t, (3.0 - 2.0 * d - tau).max(0.0), tau * e + 1.0 - tau)
        })?;
        let params = Params {
            t: Some(t),
            tau: Some(tau),
            eps: Some(eps),
            ..Params::default()
        };
        Ok(Certificate::new(
            Claim::ModulusBound,
            "bound",
            &self.label,
            params,
            lhs,
            rhs,
            self.cfg.tol,
        )
        .with_grid(self.cfg.eps_points)
        .with_note("tau restricted to [0, 1]"))
    }

    /// `J_t[τ]^t ≤ max_{J(X) ≤ ε ≤ 2} ([1 − τ + τε]^t + [1 + τ − 2τδ(ε)]^t) / 2`
    /// for uniformly non-square spaces; skipped otherwise.
    pub fn check_non_square_bound(&self, t: f64, tau: f64) -> Result<Certificate, VerifyError> {
        require(t >= 1.0 && t.is_finite(), || format!("need t >= 1 (got {t})"))?;
        unit_tau(tau)?;
        let params = Params {
            t: Some(ExtReal::Finite(t)),
            tau: Some(tau),
            ..Params::default()
        };
        let j = self.james();
        if j >= 2.0 - JAMES_GATE {
            return Ok(Certificate::skipped(
                Claim::NonSquareBound,
                &self.label,
                params,
                self.cfg.tol,
                format!("not uniformly non-square: J(X) = {j:.6}"),
            ));
        }
        let lhs = self.skew(t, tau)?.powf(t);
        let (rhs, eps) = self.eps_supremum(j, |e, d| {
            let a = 1.0 - tau + tau * e;
            let b = (1.0 + tau - 2.0 * tau * d).max(0.0);
            (a.powf(t) + b.powf(t)) / 2.0
        })?;
        let params = Params {
            eps: Some(eps),
            ..params
        };
        Ok(Certificate::new(
            Claim::NonSquareBound,
            "bound",
            &self.label,
            params,
            lhs,
            rhs,
            self.cfg.tol,
        )
        .with_grid(self.cfg.eps_points)
        .with_note(format!("J(X) = {j:.6}")))
    }

    /// `G_{−∞}(X) ≤ g_bound_from_james(J(X))`.
    pub fn check_g_bound(&self) -> Result<Certificate, VerifyError> {
        let j = self.james().clamp(1.0, 2.0);
        let lhs = self.g_min()?;
        let rhs = g_bound_from_james(j)?;
        Ok(Certificate::new(
            Claim::GBound,
            "bound",
            &self.label,
            Params::default(),
            lhs,
            rhs,
            self.cfg.tol,
        )
        .with_note(format!("J(X) = {j:.6}")))
    }

    /// Convexity of `τ ↦ J_t[τ]^t`, one certificate per consecutive triple
    /// of the strictly increasing grid `taus`.
    pub fn check_convexity(&self, t: f64, taus: &[f64]) -> Result<Vec<Certificate>, VerifyError> {
        require(t >= 1.0 && t.is_finite(), || format!("need finite t >= 1 (got {t})"))?;
        require(taus.windows(2).all(|w| w[0] < w[1]), || {
            "tau grid must be strictly increasing".to_string()
        })?;
        require(taus.iter().all(|&x| x.is_finite() && x >= 0.0), || {
            "tau grid must be finite and non-negative".to_string()
        })?;
        if taus.len() < 3 {
            return Ok(Vec::new());
        }
        let keys: Vec<(ExtReal, f64)> = taus.iter().map(|&tau| (ExtReal::Finite(t), tau)).collect();
        self.prefetch_skew(&keys)?;
        let f = |tau: f64| self.skew(t, tau).map(|j| j.powf(t));
        let values: Vec<f64> = taus.iter().map(|&tau| f(tau)).collect::<Result<_, _>>()?;
        Ok(taus
            .windows(3)
            .zip(values.windows(3))
            .map(|(tw, vw)| {
                let lambda = (tw[2] - tw[1]) / (tw[2] - tw[0]);
                let rhs = lambda * vw[0] + (1.0 - lambda) * vw[2];
                let params = Params {
                    t: Some(ExtReal::Finite(t)),
                    tau: Some(tw[1]),
                    taus: Some([tw[0], tw[1], tw[2]]),
                    ..Params::default()
                };
                Certificate::new(Claim::Convexity, "bound", &self.label, params, vw[1], rhs, self.cfg.tol)
            })
            .collect())
    }

    /// Runs `claims` over the parameter grids of `suite`.
    pub fn run(&self, claims: &[Claim], suite: &SuiteGrid) -> Result<Vec<Certificate>, VerifyError> {
        let mut claims = claims.to_vec();
        claims.sort();
        claims.dedup();
        let wants = |c: Claim| claims.contains(&c);
        let at_least_one = |ts: &[f64]| ts.iter().copied().filter(|&t| t >= 1.0).collect::<Vec<_>>();
        let convex_ts = at_least_one(&suite.ts);

        // prefetch everything the checks share
        let mut keys: Vec<(ExtReal, f64)> = Vec::new();
        let mut push_ts = |ts: &[f64], taus: &[f64]| {
            for &t in ts {
                for &tau in taus {
                    keys.push((ExtReal::Finite(t), tau));
                }
            }
        };
        if wants(Claim::PowerSandwich) {
            push_ts(&suite.power_ts, &suite.taus);
        }
        if wants(Claim::UnitSandwich) || wants(Claim::MeanComparison) {
            push_ts(&[1.0], &suite.taus);
        }
        if wants(Claim::UnitSandwich) {
            push_ts(&convex_ts, &suite.taus);
        }
        if wants(Claim::MeanComparison) || wants(Claim::ModulusBound) {
            push_ts(&suite.ts, &suite.taus);
        }
        if wants(Claim::NonSquareBound) {
            push_ts(&convex_ts, &suite.taus);
        }
        if wants(Claim::Convexity) {
            push_ts(&convex_ts, &suite.convexity_taus);
        }
        self.prefetch_skew(&keys)?;
        if wants(Claim::ModulusBound) {
            self.prefetch_delta(0.0)?;
        }
        if wants(Claim::NonSquareBound) || wants(Claim::GBound) {
            self.james();
        }
        if wants(Claim::NonSquareBound) && self.james() < 2.0 - JAMES_GATE {
            self.prefetch_delta(self.james())?;
        }

        let mut jobs: Vec<Job> = Vec::new();
        for &claim in &claims {
            match claim {
                Claim::PowerSandwich => {
                    for &t1 in &suite.power_ts {
                        for &t2 in suite.power_ts.iter().filter(|&&t2| t2 >= t1) {
                            for &tau in &suite.taus {
                                jobs.push(Job::PowerSandwich(t1, t2, tau));
                            }
                        }
                    }
                }
                Claim::UnitSandwich => {
                    for &t in &convex_ts {
                        for &tau in &suite.taus {
                            jobs.push(Job::UnitSandwich(t, tau));
                        }
                    }
                }
                Claim::MeanComparison => {
                    for &t in suite.ts.iter().filter(|&&t| t > 0.0) {
                        for &tau in &suite.taus {
                            jobs.push(Job::MeanComparison(t, tau));
                        }
                    }
                }
                Claim::ModulusBound => {
                    for &t in &suite.ts {
                        for &tau in &suite.taus {
                            jobs.push(Job::ModulusBound(t, tau));
                        }
                    }
                }
                Claim::NonSquareBound => {
                    for &t in &convex_ts {
                        for &tau in &suite.taus {
                            jobs.push(Job::NonSquareBound(t, tau));
                        }
                    }
                }
                Claim::GBound => jobs.push(Job::GBound),
                Claim::Convexity => {
                    for &t in &convex_ts {
                        jobs.push(Job::Convexity(t));
                    }
                }
            }
        }
        let results: Vec<Vec<Certificate>> = jobs
            .par_iter()
            .map(|job| job.run(self, suite))
            .collect::<Result<_, _>>()?;
        Ok(results.into_iter().flatten().collect())
    }
}

/// Parameter grids of a certificate run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteGrid {
    /// `t1, t2` of the power sandwich.
    pub power_ts: Vec<f64>,
    /// `t` of the other checks; each check keeps the values it accepts.
    pub ts: Vec<f64>,
    pub taus: Vec<f64>,
    /// τ-grid of the convexity check.
    pub convexity_taus: Vec<f64>,
}

impl Default for SuiteGrid {
    fn default() -> Self {
        SuiteGrid {
            power_ts: vec![1.0, 2.0, 4.0],
            ts: vec![0.5, 1.0, 2.0, 4.0],
            taus: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            convexity_taus: (0..=8).map(|k| k as f64 * 0.25).collect(),
        }
    }
}

enum Job {
    PowerSandwich(f64, f64, f64),
    UnitSandwich(f64, f64),
    MeanComparison(f64, f64),
    ModulusBound(f64, f64),
    NonSquareBound(f64, f64),
    GBound,
    Convexity(f64),
}

impl Job {
    fn run(&self, v: &Verifier<'_>, suite: &SuiteGrid) -> Result<Vec<Certificate>, VerifyError> {
        Ok(match *self {
            Job::PowerSandwich(t1, t2, tau) => v.check_power_sandwich(t1, t2, tau)?.to_vec(),
            Job::UnitSandwich(t, tau) => v.check_unit_sandwich(t, tau)?.to_vec(),
            Job::MeanComparison(t, tau) => v.check_mean_comparison(t, tau)?.to_vec(),
            Job::ModulusBound(t, tau) => vec![v.check_modulus_bound(t, tau)?],
            Job::NonSquareBound(t, tau) => vec![v.check_non_square_bound(t, tau)?],
            Job::GBound => vec![v.check_g_bound()?],
            Job::Convexity(t) => v.check_convexity(t, &suite.convexity_taus)?,
        })
    }
}

/// The spaces the default certificate suite runs on: the three named
/// built-ins and the Euclidean plane.
pub fn suite_spaces() -> Vec<NormSpace> {
    vec![
        NormSpace::hexagon(),
        NormSpace::builtin(crate::geometry::BuiltinId::L1LinfHybrid),
        NormSpace::builtin(crate::geometry::BuiltinId::DayJamesL2L1),
        NormSpace::l2(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyConfig {
        VerifyConfig {
            search: SearchConfig {
                coarse_grid: 256,
                ..SearchConfig::default()
            },
            eps_points: 101,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn verdict_bands() {
        assert_eq!(Verdict::from_sides(1.0, 1.0, 5e-3), Verdict::Pass);
        assert_eq!(Verdict::from_sides(1.0 + 1e-12, 1.0, 5e-3), Verdict::Pass);
        assert_eq!(Verdict::from_sides(1.001, 1.0, 5e-3), Verdict::Inconclusive);
        assert_eq!(Verdict::from_sides(1.01, 1.0, 5e-3), Verdict::Fail);
    }

    #[test]
    fn claim_ids_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.id().parse::<Claim>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.id()));
        }
        assert!("thm99".parse::<Claim>().is_err());
    }

    #[test]
    fn hexagon_sandwich_equality() {
        let hex = NormSpace::hexagon();
        let v = Verifier::new(&hex, quick());
        let [lower, upper] = v.check_power_sandwich(1.0, 2.0, 1.0).unwrap();
        assert!((lower.lhs - 2.25).abs() < 1e-12);
        assert!((lower.rhs - 2.5).abs() < 1e-12);
        assert!((upper.rhs - 2.5).abs() < 1e-12);
        assert!(upper.margin.abs() < 1e-12);
        assert_eq!(upper.verdict, Verdict::Pass);
    }

    #[test]
    fn degenerate_sandwich_has_zero_margin() {
        let hex = NormSpace::hexagon();
        let v = Verifier::new(&hex, quick());
        let [lower, _] = v.check_power_sandwich(2.0, 2.0, 0.5).unwrap();
        assert_eq!(lower.margin, 0.0);
        for c in v.check_unit_sandwich(1.0, 0.5).unwrap() {
            assert_eq!(c.margin, 0.0);
        }
        for c in v.check_mean_comparison(1.0, 0.75).unwrap() {
            assert_eq!(c.margin, 0.0);
        }
    }

    #[test]
    fn parameter_ranges() {
        let hex = NormSpace::hexagon();
        let v = Verifier::new(&hex, quick());
        assert!(v.check_power_sandwich(2.0, 1.0, 0.5).is_err());
        assert!(v.check_power_sandwich(0.5, 1.0, 0.5).is_err());
        assert!(v.check_unit_sandwich(1.0, 1.5).is_err());
        assert!(v.check_mean_comparison(0.0, 0.5).is_err());
        assert!(v.check_modulus_bound(1.0, 2.0).is_err());
        assert!(v.check_convexity(0.5, &[0.0, 1.0, 2.0]).is_err());
        assert!(v.check_convexity(1.0, &[0.0, 2.0, 1.0]).is_err());
    }

    #[test]
    fn convexity_of_hexagon_formula() {
        let hex = NormSpace::hexagon();
        let v = Verifier::new(&hex, quick());
        let certs = v.check_convexity(1.0, &[0.0, 0.5, 1.0, 1.5, 2.0]).unwrap();
        assert_eq!(certs.len(), 3);
        assert!(certs.iter().all(|c| c.verdict == Verdict::Pass));
        assert!(v.check_convexity(1.0, &[0.5]).unwrap().is_empty());
    }

    #[test]
    fn square_space_skips_non_square_bound() {
        let linf = NormSpace::linf();
        let v = Verifier::new(&linf, quick());
        let c = v.check_non_square_bound(1.0, 1.0).unwrap();
        assert_eq!(c.verdict, Verdict::Skipped);
        assert!(c.pass);
        let json = c.to_json();
        assert!(json.contains("\"lhs\":null"), "{json}");
    }

    #[test]
    fn modulus_bound_at_zero_tau() {
        let hex = NormSpace::hexagon();
        let v = Verifier::new(&hex, quick());
        let c = v.check_modulus_bound(2.0, 0.0).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-12);
        assert!(c.rhs >= power_mean(ExtReal::Finite(2.0), 3.0 - 2.0 * v.delta(0.0).unwrap(), 1.0) - 1e-12);
        assert_eq!(c.verdict, Verdict::Pass);
    }

    #[test]
    fn certificate_json_round_trip() {
        let hex = NormSpace::hexagon();
        let v = Verifier::new(&hex, quick());
        let [c, _] = v.check_unit_sandwich(2.0, 0.5).unwrap();
        let back: Certificate = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(Verdict::from_sides(back.lhs, back.rhs, back.tol), c.verdict);
    }

    #[test]
    fn table_has_one_row_per_certificate() {
        let hex = NormSpace::hexagon();
        let v = Verifier::new(&hex, quick());
        let certs = v.check_mean_comparison(2.0, 1.0).unwrap();
        let table = to_table(&certs);
        assert_eq!(table.lines().count(), 3);
        assert!(table.starts_with("claim"));
        assert_eq!(to_json_lines(&certs).lines().count(), 2);
    }
}
