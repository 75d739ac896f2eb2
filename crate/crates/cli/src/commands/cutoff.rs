use thinex_core::measure::symbol::dyadic_thresholds;
use thinex_core::measure::{smooth_cutoff_coefficients, symbol_zero_diagnostics, Arc, TrigPolynomial};
use thinex_core::Complex64;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{float, opt_float, Report};

fn parse_arcs(config: &RunConfig, key: &str, default: &str) -> Result<Vec<Arc>, CliError> {
    let text = config.keys.get(key).unwrap_or(default);
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|item| {
            let bad = || CliError::Config(format!("key {key}: expected center:half_width, got {item:?}"));
            let (c, hw) = item.split_once(':').ok_or_else(bad)?;
            let c: f64 = c.trim().parse().map_err(|_| bad())?;
            let hw: f64 = hw.trim().parse().map_err(|_| bad())?;
            Arc::new(c, hw).map_err(|e| CliError::Config(format!("key {key}: {e}")))
        })
        .collect()
}

pub fn cutoffs(config: &RunConfig) -> Result<Report, CliError> {
    let outer = parse_arcs(config, "outer", "0:0.25")?;
    let inner = parse_arcs(config, "inner", "0:0.1")?;
    let order: u32 = config.keys.parse("order").map_err(CliError::config)?.unwrap_or(4);
    let n = config.resolution.unwrap_or(256);
    if !(8..=1 << 19).contains(&n) {
        return Err(CliError::Config(format!("--resolution: {n} must lie in 8..=524288")));
    }
    let mut report = Report::csv(config.header(), vec!["N", "order", "max_weighted", "l1_norm", "max_imag"]);
    let mut previous: Option<Vec<f64>> = None;
    for res in [n, 2 * n] {
        let cut = smooth_cutoff_coefficients(&outer, &inner, res, order)
            .map_err(|e| CliError::Config(format!("keys outer/inner: {e}")))?;
        let weighted: Vec<f64> = cut.decay.iter().map(|r| r.max_weighted).collect();
        for row in &cut.decay {
            report.row(vec![
                res.to_string(),
                row.order.to_string(),
                float(row.max_weighted),
                float(cut.l1_norm),
                float(cut.max_imaginary()),
            ]);
        }
        if let Some(prev) = &previous {
            for (k, (a, b)) in prev.iter().zip(&weighted).enumerate() {
                if *b > config.tol.refinement_factor * a {
                    report.fail(
                        "refinement",
                        format!("order {k}: weighted decay grows from {a:e} at N={n} to {b:e} at N={res}"),
                    );
                }
            }
        }
        previous = Some(weighted);
    }
    Ok(report)
}

fn parse_terms(text: &str) -> Result<TrigPolynomial, CliError> {
    let bad = |item: &str| CliError::Config(format!("key terms: expected k1,k2:re[:im], got {item:?}"));
    let mut dim = None;
    let mut terms = Vec::new();
    for item in text.split(';') {
        let mut parts = item.split(':');
        let freq: Vec<i64> = parts
            .next()
            .unwrap_or_default()
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad(item))?;
        let re: f64 = parts.next().ok_or_else(|| bad(item))?.trim().parse().map_err(|_| bad(item))?;
        let im: f64 = match parts.next() {
            Some(t) => t.trim().parse().map_err(|_| bad(item))?,
            None => 0.0,
        };
        if parts.next().is_some() {
            return Err(bad(item));
        }
        if *dim.get_or_insert(freq.len()) != freq.len() {
            return Err(CliError::Config("key terms: frequencies have different dimensions".into()));
        }
        terms.push((freq, Complex64::new(re, im)));
    }
    TrigPolynomial::new(dim.unwrap_or(1), terms).map_err(|e| CliError::Config(format!("key terms: {e}")))
}

pub fn symbol(config: &RunConfig) -> Result<Report, CliError> {
    let poly = parse_terms(config.keys.get("terms").unwrap_or("0,0:2;1,0:-1;0,1:-1"))?;
    let tau0: f64 = config.keys.parse("tau0").map_err(CliError::config)?.unwrap_or(0.4);
    let count: usize = config.keys.parse("count").map_err(CliError::config)?.unwrap_or(6);
    if !(tau0.is_finite() && tau0 > 0.0) || !(1..=64).contains(&count) {
        return Err(CliError::Config(format!("keys tau0/count: need tau0 > 0 and 1 <= count <= 64, got {tau0}, {count}")));
    }
    let resolution = config.resolution.unwrap_or(256);
    if !(1..=512).contains(&resolution) {
        return Err(CliError::Config(format!("--resolution: {resolution} must lie in 1..=512")));
    }
    let cells = (resolution as u64).checked_pow(poly.dim() as u32);
    if cells.is_none_or(|c| c > 1 << 24) {
        return Err(CliError::Config(format!("key terms: {resolution}^{} grid cells exceed the cap", poly.dim())));
    }
    let out = symbol_zero_diagnostics(&poly, resolution, &dyadic_thresholds(tau0, count))?;
    let mut report = Report::csv(config.header(), vec!["tau", "fraction"]);
    report.comment(format!("# fitted_exponent={}", opt_float(out.fitted_exponent)));
    report.comment(format!("# min_abs={}", float(out.min_abs)));
    for (tau, frac) in out.rows {
        report.row(vec![float(tau), float(frac)]);
    }
    Ok(report)
}
