use clap::Args;
use num_complex::Complex64;

use bitangent_core::catalog::{entry, instantiate, TypeId};
use bitangent_core::projgeom::TernaryQuartic;

use crate::error::CliError;

/// Where the quartic comes from: a catalog type, or explicit
/// coefficients.
#[derive(Debug, Clone, Default, Args)]
pub struct QuarticSource {
    /// Catalog type, as a roman numeral or 1..12.
    #[arg(long = "type", value_name = "TYPE")]
    pub type_id: Option<String>,
    /// Parameter value, e.g. `a=-3` or `a=0+3.4641i`. Omitted parameters
    /// default to the type's figure values when none are given.
    #[arg(long = "params", value_name = "K=V")]
    pub params: Vec<String>,
    /// 30 reals: real and imaginary parts of the 15 coefficients in the
    /// order x^4, x^3y, x^3z, x^2y^2, x^2yz, x^2z^2, xy^3, xy^2z, xyz^2,
    /// xz^3, y^4, y^3z, y^2z^2, yz^3, z^4.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1.., value_name = "RE,IM,...")]
    pub coeffs: Option<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct Resolved {
    pub quartic: TernaryQuartic,
    pub type_id: Option<TypeId>,
    /// Parameters in catalog order; empty for explicit coefficients.
    pub params: Vec<Complex64>,
    /// Whether the type's figure curve was used.
    pub figure: bool,
}

/// Parses `3`, `-2.5`, `4i`, `-i`, `1+2i`, `1e-3-2i`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let t = s.trim().replace(' ', "");
    let bad = || CliError::Usage(format!("cannot parse {s:?} as a complex number"));
    let Some(body) = t.strip_suffix('i') else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(k, c)| (c == '+' || c == '-') && !matches!(body.as_bytes()[k - 1], b'e' | b'E'))
        .map(|(k, _)| k)
        .last();
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re.parse::<f64>().map_err(|_| bad())?, im))
}

pub fn parse_type(s: &str) -> Result<TypeId, CliError> {
    s.parse::<TypeId>().map_err(CliError::from)
}

fn parse_named(params: &[String]) -> Result<Vec<(String, Complex64)>, CliError> {
    params
        .iter()
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected K=V, got {kv:?}")))?;
            Ok((k.trim().to_string(), parse_complex(v)?))
        })
        .collect()
}

impl QuarticSource {
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        match (&self.type_id, &self.coeffs) {
            (Some(_), Some(_)) => Err(CliError::Usage(
                "give either --type or --coeffs, not both".into(),
            )),
            (None, None) => Err(CliError::Usage(
                "a quartic is required: --type or --coeffs".into(),
            )),
            (None, Some(c)) => {
                if !self.params.is_empty() {
                    return Err(CliError::Usage("--params needs --type".into()));
                }
                if c.len() != 30 {
                    return Err(CliError::Usage(format!(
                        "--coeffs takes 30 reals, got {}",
                        c.len()
                    )));
                }
                let coeffs: [Complex64; 15] =
                    std::array::from_fn(|k| Complex64::new(c[2 * k], c[2 * k + 1]));
                let quartic =
                    TernaryQuartic::new(coeffs).map_err(|e| CliError::Usage(e.to_string()))?;
                Ok(Resolved {
                    quartic,
                    type_id: None,
                    params: Vec::new(),
                    figure: false,
                })
            }
            (Some(t), None) => {
                let id = parse_type(t)?;
                let e = entry(id);
                if self.params.is_empty() {
                    return Ok(Resolved {
                        quartic: e.figure_quartic()?,
                        type_id: Some(id),
                        params: e.figure.params.clone(),
                        figure: true,
                    });
                }
                let params = e.params_by_name(&parse_named(&self.params)?)?;
                let quartic = instantiate(id, &params)?.quartic;
                Ok(Resolved {
                    quartic,
                    type_id: Some(id),
                    params,
                    figure: false,
                })
            }
        }
    }
}
