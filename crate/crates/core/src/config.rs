//! Textual specs for distributions, distortions, copulas, parameter
//! ranges and `key = value` config files, shared by the CLI.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::copulas::SurvivalCopulaFamily;
use crate::distortions::{DistortionFamily, KSpec, ModelId, Monotonicity};
use crate::distributions::ContinuousDistribution;
use crate::error::{Error, Result};

fn cfg_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| cfg_err(format!("invalid {what} `{}`", s.trim())))
}

/// Split `name(a,b,...)` into the name and its numeric arguments.
fn split_call(spec: &str) -> Result<(String, Vec<f64>)> {
    let spec = spec.trim();
    let Some(open) = spec.find('(') else {
        return Ok((spec.to_string(), Vec::new()));
    };
    if !spec.ends_with(')') {
        return Err(cfg_err(format!("missing `)` in `{spec}`")));
    }
    let name = spec[..open].trim().to_string();
    let inner = &spec[open + 1..spec.len() - 1];
    let mut args = Vec::new();
    if !inner.trim().is_empty() {
        for part in inner.split(',') {
            args.push(parse_f64(part, "numeric argument")?);
        }
    }
    Ok((name, args))
}

/// Parse a distribution spec such as `exp(1)`, `uniform(0,1)`,
/// `weibull(2,1)` or `powerlaw(2)`.
pub fn parse_dist(spec: &str) -> Result<ContinuousDistribution> {
    let (name, args) = split_call(spec)?;
    let arity = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            Err(cfg_err(format!(
                "`{name}` takes {k} argument(s), got {}",
                args.len()
            )))
        }
    };
    match name.as_str() {
        "exp" => {
            arity(1)?;
            if args[0] <= 0.0 {
                return Err(cfg_err("exp rate must be positive"));
            }
            Ok(ContinuousDistribution::exponential(args[0]))
        }
        "uniform" => {
            arity(2)?;
            if args[1] <= args[0] {
                return Err(cfg_err("uniform needs l < r"));
            }
            Ok(ContinuousDistribution::uniform(args[0], args[1]))
        }
        "weibull" => {
            arity(2)?;
            if args[0] <= 0.0 || args[1] <= 0.0 {
                return Err(cfg_err("weibull shape and scale must be positive"));
            }
            Ok(ContinuousDistribution::weibull(args[0], args[1]))
        }
        "powerlaw" => {
            arity(1)?;
            if args[0] <= 0.0 {
                return Err(cfg_err("powerlaw exponent must be positive"));
            }
            Ok(ContinuousDistribution::power_law(args[0]))
        }
        other => Err(cfg_err(format!("unknown distribution `{other}`"))),
    }
}

/// Parse the tiny K-expression grammar: `t`, `c*t`, or `t^n/c`.
pub fn parse_k_expr(
    expr: &str,
) -> Result<KSpec> {
    let expr = expr.trim();
    let canonical = expr.replace(' ', "");
    if canonical == "t" {
        return Ok((Arc::new(|t: f64| t), Monotonicity::Increasing, "t".into()));
    }
    if let Some(rest) = canonical.strip_suffix("*t").map(str::to_string) {
        let c = parse_f64(&rest, "K coefficient")?;
        let mono = if c > 0.0 {
            Monotonicity::Increasing
        } else if c < 0.0 {
            Monotonicity::Decreasing
        } else {
            Monotonicity::Neither
        };
        return Ok((
            Arc::new(move |t: f64| c * t),
            mono,
            format!("{c}*t"),
        ));
    }
    if let Some(rest) = canonical.strip_prefix("t^") {
        let (n_str, c_str) = match rest.split_once('/') {
            Some((n, c)) => (n, Some(c)),
            None => (rest, None),
        };
        let n = parse_f64(n_str, "K exponent")?;
        let c = match c_str {
            Some(c) => parse_f64(c, "K divisor")?,
            None => 1.0,
        };
        if c == 0.0 {
            return Err(cfg_err("K divisor must be nonzero"));
        }
        if n <= 0.0 {
            return Err(cfg_err("K exponent must be positive"));
        }
        let mono = if c > 0.0 {
            Monotonicity::Increasing
        } else {
            Monotonicity::Decreasing
        };
        let label = if c == 1.0 {
            format!("t^{n}")
        } else {
            format!("t^{n}/{c}")
        };
        return Ok((Arc::new(move |t: f64| t.powf(n) / c), mono, label));
    }
    Err(cfg_err(format!(
        "cannot parse K expression `{expr}` (expected `t`, `c*t` or `t^n/c`)"
    )))
}

/// Parse a distortion spec: `ph`, `prh`, `pow`, or `gah:K=<expr>`.
/// The base distribution is needed for the gah and pow models.
pub fn parse_distortion(
    spec: &str,
    base: &ContinuousDistribution,
) -> Result<DistortionFamily> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("gah:") {
        let Some(expr) = rest.trim().strip_prefix("K=") else {
            return Err(cfg_err(format!(
                "gah spec must look like `gah:K=t^2/2`, got `{spec}`"
            )));
        };
        let k = parse_k_expr(expr)?;
        return DistortionFamily::make_family(ModelId::Gah, Some(base), Some(k));
    }
    let model: ModelId = spec.parse()?;
    DistortionFamily::make_family(model, Some(base), None)
}

/// Parse a copula spec: `independence` or `fgm`.
pub fn parse_copula(spec: &str) -> Result<SurvivalCopulaFamily> {
    SurvivalCopulaFamily::make_copula(spec.trim())
}

/// Parse `lo:hi:step` into an inclusive grid.
pub fn parse_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    if parts.len() != 3 {
        return Err(cfg_err(format!(
            "range must be `lo:hi:step`, got `{spec}`"
        )));
    }
    let lo = parse_f64(parts[0], "range start")?;
    let hi = parse_f64(parts[1], "range end")?;
    let step = parse_f64(parts[2], "range step")?;
    if step <= 0.0 || hi < lo {
        return Err(cfg_err(format!("bad range `{spec}`")));
    }
    // include hi when it lies on the grid within rounding slop
    let count = ((hi - lo) / step).round();
    let n = if ((lo + count * step) - hi).abs() < 1e-9 * (1.0 + hi.abs()) {
        count as usize
    } else {
        ((hi - lo) / step).floor() as usize
    };
    let mut grid = Vec::with_capacity(n + 1);
    for i in 0..=n {
        grid.push(lo + i as f64 * step);
    }
    Ok(grid)
}

/// Parse `lo:hi` into a window.
pub fn parse_window(spec: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    if parts.len() != 2 {
        return Err(cfg_err(format!("window must be `lo:hi`, got `{spec}`")));
    }
    let lo = parse_f64(parts[0], "window start")?;
    let hi = parse_f64(parts[1], "window end")?;
    if hi <= lo {
        return Err(cfg_err(format!("window needs lo < hi, got `{spec}`")));
    }
    Ok((lo, hi))
}

/// Parse a `key = value` config file into a map. `#` starts a comment;
/// values may be double-quoted. Errors carry line and column numbers.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(cfg_err(format!(
                "line {}, column {}: expected `key = value`",
                line_no + 1,
                line.len().max(1)
            )));
        };
        let key = line[..eq].trim();
        if key.is_empty() {
            return Err(cfg_err(format!(
                "line {}, column 1: missing key before `=`",
                line_no + 1
            )));
        }
        let mut value = line[eq + 1..].trim();
        if value.len() >= 2 && value.starts_with('"') && value.ends_with('"') {
            value = &value[1..value.len() - 1];
        }
        if value.is_empty() {
            return Err(cfg_err(format!(
                "line {}, column {}: missing value for `{key}`",
                line_no + 1,
                eq + 2
            )));
        }
        map.insert(key.to_string(), value.to_string());
    }
    Ok(map)
}
