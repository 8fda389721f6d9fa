//! Text form of per-source trustworthiness distributions.
//!
//! A spec is `kind[:key=value,...]`. Several specs separated by `;` give
//! one distribution per source; a single spec is broadcast to all sources.
//! Unless a `mean` key is present, each source's mean is taken from the
//! reference vector (trust for `soc`/`soo`, trustworthiness for the
//! trust-side presets).
//!
//! | kind          | keys                         |
//! |---------------|------------------------------|
//! | `point`       | `p`                          |
//! | `two_point`   | `a`, `b`, `prob_a`           |
//! | `discrete`    | `values`, `probs` (`|`-separated) |
//! | `extreme`     | `delta`                      |
//! | `cube`        | `a`, `b`                     |
//! | `beta`        | `var`                        |
//! | `truncnormal` | `sigma`, optional `c`        |

use std::collections::BTreeMap;

use wmv_core::stability::{Marginal, TrustworthinessDistribution};

use crate::error::{CliError, CliResult, Context};

const FIELD: &str = "dist";

fn parse_params(body: &str) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for part in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::invalid(FIELD, format!("expected key=value, got {part:?}")))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(CliError::invalid(FIELD, format!("duplicate key {k:?}")));
        }
    }
    Ok(out)
}

struct Params {
    kind: String,
    map: BTreeMap<String, String>,
}

impl Params {
    fn num(&mut self, key: &str) -> CliResult<Option<f64>> {
        self.map
            .remove(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| CliError::invalid(FIELD, format!("{}: {key}={v:?} is not a number", self.kind)))
            })
            .transpose()
    }

    fn required(&mut self, key: &str) -> CliResult<f64> {
        self.num(key)?
            .ok_or_else(|| CliError::invalid(FIELD, format!("{} needs {key}=", self.kind)))
    }

    fn list(&mut self, key: &str) -> CliResult<Vec<f64>> {
        let raw = self
            .map
            .remove(key)
            .ok_or_else(|| CliError::invalid(FIELD, format!("{} needs {key}=", self.kind)))?;
        raw.split('|')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::invalid(FIELD, format!("{key}: {v:?} is not a number")))
            })
            .collect()
    }

    fn finish(self) -> CliResult<()> {
        match self.map.keys().next() {
            Some(k) => Err(CliError::invalid(FIELD, format!("{}: unknown key {k:?}", self.kind))),
            None => Ok(()),
        }
    }
}

/// One source's marginal, with `mean` supplying the default center.
pub fn parse_marginal(spec: &str, mean: f64) -> CliResult<Marginal> {
    let (kind, body) = spec.split_once(':').unwrap_or((spec, ""));
    let mut p = Params {
        kind: kind.trim().to_ascii_lowercase(),
        map: parse_params(body)?,
    };
    let mean = p.num("mean")?.unwrap_or(mean);
    let marginal = match p.kind.as_str() {
        "point" | "point_mass" => Marginal::point_mass(p.num("p")?.unwrap_or(mean)),
        "two_point" | "twopoint" => Marginal::TwoPoint {
            a: p.required("a")?,
            b: p.required("b")?,
            prob_a: p.required("prob_a")?,
        },
        "discrete" => Marginal::Discrete {
            values: p.list("values")?,
            probs: p.list("probs")?,
        },
        "extreme" | "extreme_symmetric" => Marginal::extreme_symmetric(mean, p.required("delta")?),
        "cube" | "extreme_on_cube" => Marginal::extreme_on_cube(p.required("a")?, p.required("b")?, mean),
        "beta" => {
            let var = match p.num("var")? {
                Some(v) => v,
                None => p.required("variance")?,
            };
            Marginal::beta(mean, var)
        }
        "truncnormal" | "normal" | "trunc_normal" => {
            let sigma = match p.num("sigma")? {
                Some(s) => s,
                None => p.required("var")?.sqrt(),
            };
            Marginal::trunc_normal(mean, sigma, p.num("c")?)
        }
        other => {
            return Err(CliError::invalid(
                FIELD,
                format!("unknown kind {other:?}; expected point, two_point, discrete, extreme, cube, beta or truncnormal"),
            ))
        }
    };
    p.finish()?;
    Ok(marginal)
}

/// Parse a broadcast or `;`-separated per-source spec against `means`.
pub fn parse_distribution(spec: &str, means: &[f64]) -> CliResult<TrustworthinessDistribution> {
    let parts: Vec<&str> = spec.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    let marginals = match parts.len() {
        0 => return Err(CliError::invalid(FIELD, "empty distribution spec")),
        1 => means
            .iter()
            .map(|&m| parse_marginal(parts[0], m))
            .collect::<CliResult<Vec<_>>>()?,
        k if k == means.len() => parts
            .iter()
            .zip(means)
            .map(|(s, &m)| parse_marginal(s, m))
            .collect::<CliResult<Vec<_>>>()?,
        k => {
            return Err(CliError::invalid(
                FIELD,
                format!("{k} per-source specs for {} sources", means.len()),
            ))
        }
    };
    TrustworthinessDistribution::new(marginals).field(FIELD)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn broadcast_extreme() {
        let d = parse_distribution("extreme:delta=0.1", &[0.7, 0.8]).unwrap();
        assert_eq!(
            d.marginals(),
            &[Marginal::extreme_symmetric(0.7, 0.1), Marginal::extreme_symmetric(0.8, 0.1)]
        );
    }

    #[test]
    fn per_source_specs() {
        let d = parse_distribution("point; beta:var=0.01; truncnormal:sigma=0.1,c=0.05", &[0.6, 0.7, 0.8]).unwrap();
        assert_eq!(d.marginals()[0], Marginal::point_mass(0.6));
        assert_eq!(d.marginals()[1], Marginal::beta(0.7, 0.01));
        assert_eq!(d.marginals()[2], Marginal::trunc_normal(0.8, 0.1, Some(0.05)));
    }

    #[test]
    fn discrete_lists() {
        let d = parse_distribution("discrete:values=0.6|0.8,probs=0.5|0.5", &[0.7]).unwrap();
        assert_eq!(d.means()[0], 0.7);
    }

    #[test]
    fn errors_name_the_problem() {
        for bad in ["", "gauss", "extreme", "extreme:delta=x", "beta:var=0.01,shape=2", "point;point"] {
            let err = parse_distribution(bad, &[0.7, 0.7, 0.7]).unwrap_err();
            assert_eq!(err.exit_code(), 1, "{bad}");
            assert!(err.to_string().contains("dist"), "{err}");
        }
    }
}
