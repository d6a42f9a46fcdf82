//! Parameter axes: `v`, `v1,v2,...`, `lo:hi:n` or `lo:hi:n:log`.

use crate::CliError;

pub fn parse_axis(name: &str, text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Spec(format!("--{name} {text:?}: {why}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let values = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(bad("expected lo:hi:n or lo:hi:n:log"));
        }
        let (lo, hi) = (num(parts[0])?, num(parts[1])?);
        let n: usize = parts[2].trim().parse().map_err(|_| bad("count must be a positive integer"))?;
        let log = match parts.get(3).map(|s| s.trim()) {
            None | Some("lin") => false,
            Some("log") => true,
            Some(_) => return Err(bad("spacing must be lin or log")),
        };
        if n == 0 {
            return Err(bad("count must be a positive integer"));
        }
        if log && !(lo > 0.0 && hi > 0.0) {
            return Err(bad("log spacing needs positive ends"));
        }
        (0..n)
            .map(|i| {
                let f = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
                if i == 0 {
                    lo
                } else if i + 1 == n {
                    hi
                } else if log {
                    (lo.ln() + f * (hi.ln() - lo.ln())).exp()
                } else {
                    lo + f * (hi - lo)
                }
            })
            .collect()
    } else {
        text.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(bad("values must be finite"));
    }
    Ok(values)
}
