use clap::ValueEnum;
use serde::Serialize;
use skewjames::constants::{self, ConstantRequest};
use skewjames::geometry::NormSpace;
use skewjames::search::{constrained_infimum, Method};
use skewjames::{ExtReal, MethodChoice, SearchConfig};

use crate::output::{ext, g12, opt};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantId {
    SkewJames,
    JamesType,
    James,
    Modulus,
    ConvexityCoefficient,
    G,
    #[value(name = "c-t")]
    #[serde(rename = "c-t")]
    CT,
    VonNeumannJordan,
    Zbaganu,
    GaoSkew,
    Lyj,
    GBound,
}

impl ConstantId {
    pub fn name(self) -> &'static str {
        match self {
            ConstantId::SkewJames => "skew-james",
            ConstantId::JamesType => "james-type",
            ConstantId::James => "james",
            ConstantId::Modulus => "modulus",
            ConstantId::ConvexityCoefficient => "convexity-coefficient",
            ConstantId::G => "g",
            ConstantId::CT => "c-t",
            ConstantId::VonNeumannJordan => "von-neumann-jordan",
            ConstantId::Zbaganu => "zbaganu",
            ConstantId::GaoSkew => "gao-skew",
            ConstantId::Lyj => "lyj",
            ConstantId::GBound => "g-bound",
        }
    }

    fn needs_t(self) -> bool {
        matches!(
            self,
            ConstantId::SkewJames | ConstantId::JamesType | ConstantId::G | ConstantId::CT
        )
    }

    fn needs_tau(self) -> bool {
        matches!(
            self,
            ConstantId::SkewJames | ConstantId::JamesType | ConstantId::GaoSkew
        )
    }
}

/// Scalar parameters of one evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Point {
    pub t: Option<ExtReal>,
    pub tau: Option<f64>,
    pub eps: Option<f64>,
    pub lambda: Option<f64>,
    pub mu: Option<f64>,
    pub j: Option<f64>,
}

/// One computed value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub constant: &'static str,
    pub space: String,
    pub t: Option<ExtReal>,
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<f64>,
    pub value: f64,
    pub method: &'static str,
    pub witnesses: Option<[[f64; 2]; 2]>,
    pub tau_star: Option<f64>,
}

pub const CSV_HEADER: [&str; 6] = ["space", "constant", "t", "tau", "value", "method"];

impl Record {
    /// CSV/table cells; `with_eps` appends the ε column.
    pub fn cells(&self, with_eps: bool) -> Vec<String> {
        let mut row = vec![
            self.space.clone(),
            self.constant.to_string(),
            self.t.map(ext).unwrap_or_default(),
            opt(self.tau),
            g12(self.value),
            self.method.to_string(),
        ];
        if with_eps {
            row.push(opt(self.eps));
        }
        row
    }
}

fn missing(flag: &str, c: ConstantId) -> CliError {
    CliError::Usage(format!("constant {} requires --{flag}", c.name()))
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Evaluates `constant` on `space` at `point`.
pub fn evaluate(
    space: &NormSpace,
    constant: ConstantId,
    point: Point,
    method: MethodChoice,
    cfg: &SearchConfig,
) -> Result<Record, CliError> {
    let t = if constant.needs_t() {
        Some(point.t.ok_or_else(|| missing("t", constant))?)
    } else {
        None
    };
    let tau = if constant.needs_tau() {
        Some(point.tau.ok_or_else(|| missing("tau", constant))?)
    } else {
        None
    };
    let mut record = Record {
        constant: constant.name(),
        space: space.label(),
        t,
        tau,
        eps: None,
        lambda: None,
        mu: None,
        j: None,
        value: f64::NAN,
        method: Method::Grid.as_str(),
        witnesses: None,
        tau_star: None,
    };
    let set = |v: constants::ConstantValue, record: &mut Record| {
        record.value = v.value;
        record.method = v.method_used.as_str();
        record.witnesses = v.witnesses.map(|(x, y)| [x.into(), y.into()]);
        record.tau_star = v.tau_star;
    };
    match constant {
        ConstantId::SkewJames => {
            let req = ConstantRequest::new(space, t.unwrap(), tau.unwrap())
                .method(method)
                .cfg(*cfg);
            set(constants::skew_james(&req).map_err(usage)?, &mut record);
        }
        ConstantId::JamesType => {
            let v = constants::james_type(space, t.unwrap(), tau.unwrap(), method, cfg).map_err(usage)?;
            set(v, &mut record);
        }
        ConstantId::James => {
            record.t = Some(ExtReal::NegInf);
            record.tau = Some(1.0);
            set(constants::james_constant(space, cfg).value, &mut record);
        }
        ConstantId::Modulus => {
            let eps = point.eps.ok_or_else(|| missing("eps", constant))?;
            let r = constrained_infimum(space, eps, cfg).map_err(usage)?;
            record.eps = Some(eps);
            record.value = r.value;
            record.witnesses = Some([r.witnesses.0.into(), r.witnesses.1.into()]);
        }
        ConstantId::ConvexityCoefficient => {
            record.value = constants::convexity_coefficient(space, cfg);
        }
        ConstantId::G => set(
            constants::g_constant(space, t.unwrap(), cfg).map_err(usage)?,
            &mut record,
        ),
        ConstantId::CT => set(
            constants::c_t_constant(space, t.unwrap(), cfg).map_err(usage)?,
            &mut record,
        ),
        ConstantId::VonNeumannJordan => {
            record.t = Some(ExtReal::Finite(2.0));
            set(constants::von_neumann_jordan(space, cfg).map_err(usage)?, &mut record);
        }
        ConstantId::Zbaganu => {
            record.t = Some(ExtReal::ZERO);
            set(constants::zbaganu(space, cfg).map_err(usage)?, &mut record);
        }
        ConstantId::GaoSkew => {
            record.t = Some(ExtReal::Finite(2.0));
            record.value = constants::gao_skew(space, tau.unwrap(), cfg).map_err(usage)?;
        }
        ConstantId::Lyj => {
            let lambda = point.lambda.ok_or_else(|| missing("lambda", constant))?;
            let mu = point.mu.ok_or_else(|| missing("mu", constant))?;
            record.lambda = Some(lambda);
            record.mu = Some(mu);
            record.value = constants::lyj_constant(space, lambda, mu, cfg).map_err(usage)?;
        }
        ConstantId::GBound => {
            let j = match point.j {
                Some(j) => j,
                None => constants::james_constant(space, cfg).value.value.clamp(1.0, 2.0),
            };
            record.j = Some(j);
            record.t = Some(ExtReal::NegInf);
            record.value = constants::g_bound_from_james(j).map_err(usage)?;
            record.method = if point.j.is_some() {
                "closed_form"
            } else {
                Method::Grid.as_str()
            };
        }
    }
    Ok(record)
}
