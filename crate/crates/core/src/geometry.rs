//! Two-dimensional normed spaces.
//!
//! A [`NormSpace`] is an immutable, validated description of a norm on the
//! plane. Four kinds of descriptor are supported:
//!
//! * polytopal norms, whose unit ball is the convex hull of `±vertices`;
//! * the classical `ℓ_p` norms, `1 ≤ p ≤ ∞`;
//! * quadrant hybrids, which use one norm where `x1·x2 ≥ 0` and another
//!   where `x1·x2 < 0` (the Day-James construction);
//! * named built-ins (`hexagon`, `l1_linf_hybrid`, `day_james_l2_l1`).
//!
//! Invariants are checked at construction, so evaluation never fails.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A point of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x1: f64,
    pub x2: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x1: 0.0, x2: 0.0 };

    pub const fn new(x1: f64, x2: f64) -> Self {
        Vec2 { x1, x2 }
    }

    /// Point of the Euclidean unit circle at angle `theta`.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Vec2::new(c, s)
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    pub fn cross(self, other: Vec2) -> f64 {
        self.x1 * other.x2 - self.x2 * other.x1
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    /// Polar angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        canonical_angle(self.x2.atan2(self.x1))
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(v: [f64; 2]) -> Self {
        Vec2::new(v[0], v[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x1, v.x2]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x1, -self.x2)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self * rhs.x1, self * rhs.x2)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x1, self.x2)
    }
}

/// Maps any finite angle into `[0, 2π)`.
pub fn canonical_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid rounds up to TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NormError {
    #[error("polytopal norm needs at least one vertex")]
    NoVertices,
    #[error("vertex {index} is not finite")]
    NonFiniteVertex { index: usize },
    #[error("vertex {index} is the origin")]
    ZeroVertex { index: usize },
    #[error("vertices {first} and {second} are positively proportional but distinct")]
    ProportionalVertices { first: usize, second: usize },
    #[error("the hull of ±vertices has empty interior (origin not strictly inside)")]
    DegenerateHull,
    #[error("p-norm exponent must be a number >= 1 (got {0})")]
    BadExponent(f64),
    #[error("quadrant hybrid pieces disagree on the {axis} axis: {same} vs {opposite}")]
    AxisMismatch {
        axis: &'static str,
        same: f64,
        opposite: f64,
    },
    #[error("unknown built-in norm '{0}'")]
    UnknownBuiltin(String),
}

/// Exponent of an `ℓ_p` norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinId {
    Hexagon,
    L1LinfHybrid,
    DayJamesL2L1,
}

impl BuiltinId {
    pub const ALL: [BuiltinId; 3] = [BuiltinId::Hexagon, BuiltinId::L1LinfHybrid, BuiltinId::DayJamesL2L1];

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinId::Hexagon => "hexagon",
            BuiltinId::L1LinfHybrid => "l1_linf_hybrid",
            BuiltinId::DayJamesL2L1 => "day_james_l2_l1",
        }
    }
}

impl std::str::FromStr for BuiltinId {
    type Err = NormError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BuiltinId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| NormError::UnknownBuiltin(s.to_string()))
    }
}

impl fmt::Display for BuiltinId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A centrally symmetric convex polygon with the origin in its interior.
///
/// Vertices are stored counter-clockwise by polar angle. `normals[i]` is the
/// facet functional of the edge `vertices[i] → vertices[i+1]`, scaled to
/// equal 1 on that edge, so the gauge of `v` is `normals[k]·v` for the edge
/// `k` whose angular sector contains `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    generators: Vec<Vec2>,
    vertices: Vec<Vec2>,
    angles: Vec<f64>,
    normals: Vec<Vec2>,
}

impl Polygon {
    /// Builds the unit ball `conv(±generators)`.
    ///
    /// Exact duplicates and antipodal pairs are allowed, so both a half list
    /// and the full symmetric vertex list describe the same ball. Generators
    /// strictly inside the hull are accepted and simply not extreme.
    pub fn new(generators: &[Vec2]) -> Result<Self, NormError> {
        if generators.is_empty() {
            return Err(NormError::NoVertices);
        }
        for (index, v) in generators.iter().enumerate() {
            if !v.is_finite() {
                return Err(NormError::NonFiniteVertex { index });
            }
            if v.x1 == 0.0 && v.x2 == 0.0 {
                return Err(NormError::ZeroVertex { index });
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for (j, b) in generators.iter().enumerate().skip(i + 1) {
                let scale = a.dot(*a).sqrt() * b.dot(*b).sqrt();
                let parallel = a.cross(*b).abs() <= 1e-14 * scale;
                if parallel && a.dot(*b) > 0.0 && a != b {
                    return Err(NormError::ProportionalVertices { first: i, second: j });
                }
            }
        }

        let points: Vec<Vec2> = generators.iter().flat_map(|&v| [v, -v]).collect();
        let mut vertices = convex_hull(points);
        if vertices.len() < 3 {
            return Err(NormError::DegenerateHull);
        }
        vertices.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
        let n = vertices.len();
        let mut normals = Vec::with_capacity(n);
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let det = a.cross(b);
            if det <= 0.0 {
                return Err(NormError::DegenerateHull);
            }
            normals.push(Vec2::new((b.x2 - a.x2) / det, (a.x1 - b.x1) / det));
        }
        let angles = vertices.iter().map(|v| v.angle()).collect();
        Ok(Polygon {
            generators: generators.to_vec(),
            vertices,
            angles,
            normals,
        })
    }

    /// Extreme points of the ball, counter-clockwise.
    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// The generator list the polygon was built from.
    pub fn generators(&self) -> &[Vec2] {
        &self.generators
    }

    pub fn gauge(&self, v: Vec2) -> f64 {
        if v.x1 == 0.0 && v.x2 == 0.0 {
            return 0.0;
        }
        let theta = v.angle();
        // index of the last vertex with angle <= theta, wrapping below the first
        let k = match self.angles.partition_point(|&a| a <= theta) {
            0 => self.vertices.len() - 1,
            p => p - 1,
        };
        // the facet functional is positive on its own sector; guard against
        // angle rounding at sector boundaries by also checking the neighbours
        let n = self.normals.len();
        let here = self.normals[k].dot(v);
        let prev = self.normals[(k + n - 1) % n].dot(v);
        let next = self.normals[(k + 1) % n].dot(v);
        here.max(prev).max(next)
    }
}

/// Andrew's monotone chain; returns the strictly convex hull vertices.
fn convex_hull(mut points: Vec<Vec2>) -> Vec<Vec2> {
    points.sort_by(|a, b| a.x1.total_cmp(&b.x1).then(a.x2.total_cmp(&b.x2)));
    points.dedup();
    if points.len() < 3 {
        return points;
    }
    let turn = |o: Vec2, a: Vec2, b: Vec2| (a - o).cross(b - o);
    let scale = points
        .iter()
        .map(|p| p.x1.abs().max(p.x2.abs()))
        .fold(0.0_f64, f64::max);
    let eps = 1e-12 * scale * scale;
    let mut lower: Vec<Vec2> = Vec::new();
    for &p in &points {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= eps {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for &p in points.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= eps {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[derive(Debug, Clone, PartialEq)]
enum Descriptor {
    Polytopal(Polygon),
    PNorm(Exponent),
    QuadrantHybrid {
        same_sign: Box<NormSpace>,
        opposite_sign: Box<NormSpace>,
    },
    Builtin {
        id: BuiltinId,
        repr: Box<NormSpace>,
    },
}

/// A validated norm on the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSpace {
    descriptor: Descriptor,
}

const SQRT3: f64 = 1.732_050_807_568_877_2;

impl NormSpace {
    pub fn polytopal(vertices: &[Vec2]) -> Result<Self, NormError> {
        Ok(NormSpace {
            descriptor: Descriptor::Polytopal(Polygon::new(vertices)?),
        })
    }

    /// `ℓ_p` with finite `p ≥ 1`.
    pub fn pnorm(p: f64) -> Result<Self, NormError> {
        if p == f64::INFINITY {
            return Ok(Self::linf());
        }
        if !(p.is_finite() && p >= 1.0) {
            return Err(NormError::BadExponent(p));
        }
        Ok(NormSpace {
            descriptor: Descriptor::PNorm(Exponent::Finite(p)),
        })
    }

    pub fn l1() -> Self {
        NormSpace {
            descriptor: Descriptor::PNorm(Exponent::Finite(1.0)),
        }
    }

    pub fn l2() -> Self {
        NormSpace {
            descriptor: Descriptor::PNorm(Exponent::Finite(2.0)),
        }
    }

    pub fn linf() -> Self {
        NormSpace {
            descriptor: Descriptor::PNorm(Exponent::Infinity),
        }
    }

    /// Norm equal to `same_sign` where `x1·x2 ≥ 0` and to `opposite_sign`
    /// elsewhere. The two must agree on both coordinate axes.
    pub fn quadrant_hybrid(same_sign: NormSpace, opposite_sign: NormSpace) -> Result<Self, NormError> {
        for (axis, e) in [("x1", Vec2::new(1.0, 0.0)), ("x2", Vec2::new(0.0, 1.0))] {
            let same = same_sign.norm(e);
            let opposite = opposite_sign.norm(e);
            if (same - opposite).abs() > 1e-12 * same.max(opposite) {
                return Err(NormError::AxisMismatch { axis, same, opposite });
            }
        }
        Ok(NormSpace {
            descriptor: Descriptor::QuadrantHybrid {
                same_sign: Box::new(same_sign),
                opposite_sign: Box::new(opposite_sign),
            },
        })
    }

    pub fn builtin(id: BuiltinId) -> Self {
        let repr = match id {
            BuiltinId::Hexagon => {
                let h = SQRT3 / 2.0;
                NormSpace::polytopal(&[Vec2::new(1.0, 0.0), Vec2::new(0.5, h), Vec2::new(-0.5, h)])
                    .expect("hexagon vertices are valid")
            }
            BuiltinId::L1LinfHybrid => {
                NormSpace::quadrant_hybrid(NormSpace::linf(), NormSpace::l1()).expect("l1 and linf agree on the axes")
            }
            BuiltinId::DayJamesL2L1 => {
                NormSpace::quadrant_hybrid(NormSpace::l2(), NormSpace::l1()).expect("l2 and l1 agree on the axes")
            }
        };
        NormSpace {
            descriptor: Descriptor::Builtin {
                id,
                repr: Box::new(repr),
            },
        }
    }

    pub fn hexagon() -> Self {
        Self::builtin(BuiltinId::Hexagon)
    }

    pub fn builtin_id(&self) -> Option<BuiltinId> {
        match &self.descriptor {
            Descriptor::Builtin { id, .. } => Some(*id),
            _ => None,
        }
    }

    /// For built-ins, the equivalent generic descriptor (polygon or hybrid).
    pub fn builtin_repr(&self) -> Option<&NormSpace> {
        match &self.descriptor {
            Descriptor::Builtin { repr, .. } => Some(repr),
            _ => None,
        }
    }

    pub fn exponent(&self) -> Option<Exponent> {
        match &self.descriptor {
            Descriptor::PNorm(p) => Some(*p),
            _ => None,
        }
    }

    /// Short human-readable name, e.g. `hexagon`, `pnorm:2`, `polytopal(6)`.
    pub fn label(&self) -> String {
        match &self.descriptor {
            Descriptor::Polytopal(poly) => format!("polytopal({})", poly.vertices().len()),
            Descriptor::PNorm(p) => format!("pnorm:{p}"),
            Descriptor::QuadrantHybrid {
                same_sign,
                opposite_sign,
            } => format!("hybrid({}|{})", same_sign.label(), opposite_sign.label()),
            Descriptor::Builtin { id, .. } => id.to_string(),
        }
    }

    /// The norm of `v`.
    pub fn norm(&self, v: Vec2) -> f64 {
        match &self.descriptor {
            Descriptor::Polytopal(poly) => poly.gauge(v),
            Descriptor::PNorm(p) => pnorm_eval(*p, v),
            Descriptor::QuadrantHybrid {
                same_sign,
                opposite_sign,
            } => {
                if v.x1 * v.x2 >= 0.0 {
                    same_sign.norm(v)
                } else {
                    opposite_sign.norm(v)
                }
            }
            Descriptor::Builtin {
                id: BuiltinId::Hexagon, ..
            } => hexagon_norm(v),
            Descriptor::Builtin { repr, .. } => repr.norm(v),
        }
    }

    /// The point of the unit sphere in direction `theta`.
    pub fn sphere_point(&self, theta: f64) -> Vec2 {
        let u = Vec2::from_angle(canonical_angle(theta));
        let r = self.norm(u);
        Vec2::new(u.x1 / r, u.x2 / r)
    }

    /// All extreme points of the unit ball when it is a polygon, in
    /// counter-clockwise order starting at the smallest polar angle.
    pub fn extreme_points(&self) -> Option<Vec<Vec2>> {
        match &self.descriptor {
            Descriptor::Polytopal(poly) => Some(poly.vertices().to_vec()),
            Descriptor::PNorm(Exponent::Finite(p)) if *p == 1.0 => Some(vec![
                Vec2::new(1.0, 0.0),
                Vec2::new(0.0, 1.0),
                Vec2::new(-1.0, 0.0),
                Vec2::new(0.0, -1.0),
            ]),
            Descriptor::PNorm(Exponent::Infinity) => Some(vec![
                Vec2::new(1.0, 1.0),
                Vec2::new(-1.0, 1.0),
                Vec2::new(-1.0, -1.0),
                Vec2::new(1.0, -1.0),
            ]),
            Descriptor::PNorm(_) => None,
            Descriptor::QuadrantHybrid {
                same_sign,
                opposite_sign,
            } => {
                let same = same_sign.extreme_points()?;
                let opposite = opposite_sign.extreme_points()?;
                let mut candidates: Vec<Vec2> = same
                    .into_iter()
                    .filter(|v| v.x1 * v.x2 >= 0.0)
                    .chain(opposite.into_iter().filter(|v| v.x1 * v.x2 <= 0.0))
                    .collect();
                for theta in [0.0, std::f64::consts::FRAC_PI_2] {
                    let e = self.sphere_point(theta);
                    candidates.push(e);
                    candidates.push(-e);
                }
                let mut hull = convex_hull(candidates);
                hull.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
                Some(hull)
            }
            Descriptor::Builtin { repr, .. } => repr.extreme_points(),
        }
    }

    /// The descriptor as a norm-spec file record.
    pub fn to_spec(&self) -> NormSpec {
        match &self.descriptor {
            Descriptor::Polytopal(poly) => NormSpec::Polytopal {
                vertices: poly.generators().iter().map(|&v| v.into()).collect(),
            },
            Descriptor::PNorm(p) => NormSpec::Pnorm {
                p: match p {
                    Exponent::Finite(p) => PValue::Number(*p),
                    Exponent::Infinity => PValue::Text("inf".into()),
                },
            },
            Descriptor::QuadrantHybrid {
                same_sign,
                opposite_sign,
            } => NormSpec::QuadrantHybrid {
                same_sign: Box::new(same_sign.to_spec()),
                opposite_sign: Box::new(opposite_sign.to_spec()),
            },
            Descriptor::Builtin { id, .. } => NormSpec::Builtin { id: *id },
        }
    }

    /// Spot-checks the norm axioms on a deterministic sample of `samples`
    /// vector pairs. Never panics; violations are collected in the report.
    pub fn validate_norm(&self, samples: usize) -> ValidationReport {
        let mut report = ValidationReport {
            samples,
            violations: Vec::new(),
        };
        // low-discrepancy angles and radii from the golden ratio sequence
        const PHI: f64 = 0.618_033_988_749_894_9;
        const SQRT2_FRAC: f64 = 0.414_213_562_373_095_1;
        for i in 0..samples {
            let k = i as f64;
            let u = (2.5 * ((k * PHI).fract() + 0.1)) * Vec2::from_angle(TAU * (k * SQRT2_FRAC).fract());
            let v = (2.5 * ((k * SQRT2_FRAC * PHI).fract() + 0.1)) * Vec2::from_angle(TAU * ((k + 0.5) * PHI).fract());
            let nu = self.norm(u);
            let nv = self.norm(v);
            if self.norm(-u) != nu {
                report.violations.push(Violation {
                    axiom: Axiom::Symmetry,
                    u,
                    v: -u,
                    excess: (self.norm(-u) - nu).abs(),
                });
            }
            let lambda = -1.75 + (k * PHI).fract() * 3.5;
            let scaled = self.norm(lambda * u);
            let expected = lambda.abs() * nu;
            if (scaled - expected).abs() > 1e-12 * expected.max(1.0) {
                report.violations.push(Violation {
                    axiom: Axiom::Homogeneity,
                    u,
                    v: lambda * u,
                    excess: (scaled - expected).abs(),
                });
            }
            let excess = self.norm(u + v) - (nu + nv);
            if excess > 1e-12 {
                report.violations.push(Violation {
                    axiom: Axiom::Triangle,
                    u,
                    v,
                    excess,
                });
            }
        }
        report
    }
}

impl fmt::Display for NormSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn hexagon_norm(v: Vec2) -> f64 {
    let s = v.x2 / SQRT3;
    (v.x1 + s).abs().max((v.x1 - s).abs()).max(2.0 * s.abs())
}

fn pnorm_eval(p: Exponent, v: Vec2) -> f64 {
    let (a, b) = (v.x1.abs(), v.x2.abs());
    match p {
        Exponent::Infinity => a.max(b),
        Exponent::Finite(1.0) => a + b,
        Exponent::Finite(2.0) => a.hypot(b),
        Exponent::Finite(p) => {
            let m = a.max(b);
            if m == 0.0 {
                return 0.0;
            }
            let r = a.min(b) / m;
            m * (1.0 + r.powf(p)).powf(1.0 / p)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Symmetry,
    Homogeneity,
    Triangle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub u: Vec2,
    pub v: Vec2,
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub samples: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `p` in a norm-spec file: a number or the string `"inf"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PValue {
    Number(f64),
    Text(String),
}

/// The JSON norm-spec file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NormSpec {
    Polytopal {
        vertices: Vec<[f64; 2]>,
    },
    Pnorm {
        p: PValue,
    },
    QuadrantHybrid {
        same_sign: Box<NormSpec>,
        opposite_sign: Box<NormSpec>,
    },
    Builtin {
        id: BuiltinId,
    },
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed norm spec: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid norm: {0}")]
    Invalid(#[from] NormError),
    #[error("p must be a number or \"inf\" (got \"{0}\")")]
    BadP(String),
}

impl NormSpec {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<NormSpace, SpecError> {
        Ok(match self {
            NormSpec::Polytopal { vertices } => {
                let vs: Vec<Vec2> = vertices.iter().map(|&v| v.into()).collect();
                NormSpace::polytopal(&vs)?
            }
            NormSpec::Pnorm { p } => match p {
                PValue::Number(p) => NormSpace::pnorm(*p)?,
                PValue::Text(s) if matches!(s.as_str(), "inf" | "+inf" | "infinity") => NormSpace::linf(),
                PValue::Text(s) => return Err(SpecError::BadP(s.clone())),
            },
            NormSpec::QuadrantHybrid {
                same_sign,
                opposite_sign,
            } => NormSpace::quadrant_hybrid(same_sign.build()?, opposite_sign.build()?)?,
            NormSpec::Builtin { id } => NormSpace::builtin(*id),
        })
    }
}

impl TryFrom<&NormSpec> for NormSpace {
    type Error = SpecError;
    fn try_from(spec: &NormSpec) -> Result<Self, Self::Error> {
        spec.build()
    }
}
