use std::fs;

use skewjames::geometry::{BuiltinId, NormSpace, NormSpec};

use crate::CliError;

/// Parses `builtin:<id>`, `pnorm:<p|inf>`, `file:<path>` or a bare
/// built-in id.
pub fn parse_space(arg: &str) -> Result<NormSpace, CliError> {
    let (kind, rest) = arg.split_once(':').unwrap_or(("builtin", arg));
    match kind {
        "builtin" => rest
            .parse::<BuiltinId>()
            .map(NormSpace::builtin)
            .map_err(|e| CliError::Usage(format!("--space {arg}: {e}"))),
        "pnorm" => {
            let p = match rest {
                "inf" | "+inf" | "infinity" => f64::INFINITY,
                other => other
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("--space {arg}: p must be a number or 'inf'")))?,
            };
            NormSpace::pnorm(p).map_err(|e| CliError::Usage(format!("--space {arg}: {e}")))
        }
        "file" => {
            let text = fs::read_to_string(rest).map_err(|e| CliError::Io(format!("cannot read {rest}: {e}")))?;
            NormSpec::from_json(&text)
                .and_then(|spec| spec.build())
                .map_err(|e| CliError::Usage(format!("{rest}: {e}")))
        }
        other => Err(CliError::Usage(format!(
            "--space {arg}: unknown source '{other}' (expected builtin:, pnorm: or file:)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_space("hexagon").unwrap().label(), "hexagon");
        assert_eq!(
            parse_space("builtin:day_james_l2_l1").unwrap().label(),
            "day_james_l2_l1"
        );
        assert_eq!(parse_space("pnorm:2").unwrap().label(), "pnorm:2");
        assert_eq!(parse_space("pnorm:inf").unwrap().label(), "pnorm:inf");
        assert!(matches!(parse_space("pnorm:0.5"), Err(CliError::Usage(_))));
        assert!(matches!(parse_space("octagon"), Err(CliError::Usage(_))));
        assert!(matches!(parse_space("disk:3"), Err(CliError::Usage(_))));
        assert!(matches!(parse_space("file:/no/such/file.json"), Err(CliError::Io(_))));
    }
}
