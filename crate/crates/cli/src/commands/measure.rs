use thinex_core::fourier::{dft, lp_norm_pow};
use thinex_core::measure::circle::{coefficient_tail_sup, riesz_norm_pow_closed_form};
use thinex_core::measure::product::factor_norm_by_transform;
use thinex_core::measure::series::lp_series_tail;
use thinex_core::measure::{
    build_truncated_measure, lp_norm_factor_closed_form, lp_norm_truncated_product, saeki_diagnostic,
    support_haar_density, CircleMeasureModel, Phi0,
};
use thinex_core::spec_file::MeasureSpec;
use thinex_core::{FiniteAbelianGroup, GroupFunction, ProductMeasureSpec};

use crate::config::{RunConfig, MEASURE_CAP};
use crate::error::CliError;
use crate::report::{float, opt_float, rel_diff, Report};

const DEFAULT_P: [f64; 4] = [2.1, 2.5, 3.0, 4.0];

fn product_spec(config: &RunConfig) -> Result<ProductMeasureSpec, CliError> {
    match config.measure()? {
        MeasureSpec::Product(spec) => {
            let order = spec.exact_group_order();
            if order > MEASURE_CAP.into() {
                return Err(CliError::Config(format!("key J: |G| = {order} exceeds the cap {MEASURE_CAP}")));
            }
            Ok(spec)
        }
        MeasureSpec::Circle(_) => Err(CliError::Config("key kind: this command needs kind = product".into())),
    }
}

fn circle_model(config: &RunConfig) -> Result<CircleMeasureModel, CliError> {
    match config.measure()? {
        MeasureSpec::Circle(model) => {
            if model.resolution() > MEASURE_CAP {
                return Err(CliError::Config(format!("key N: {} exceeds the cap {MEASURE_CAP}", model.resolution())));
            }
            Ok(model)
        }
        MeasureSpec::Product(_) => Err(CliError::Config("key kind: this command needs kind = cantor or riesz".into())),
    }
}

pub fn factor_norms(config: &RunConfig) -> Result<Report, CliError> {
    let cs: Vec<u64> =
        config.keys.list("c").map_err(CliError::config)?.unwrap_or_else(|| vec![2, 3, 4, 5, 8, 9, 16]);
    if let Some(c) = cs.iter().find(|&&c| c < 2 || c as usize > MEASURE_CAP) {
        return Err(CliError::Config(format!("key c: {c} must lie in 2..={MEASURE_CAP}")));
    }
    let ps = config.p_values(&DEFAULT_P)?;
    let mut report = Report::csv(config.header(), vec!["c", "p", "closed_form", "oracle", "delta"]);
    for &c in &cs {
        let group = FiniteAbelianGroup::cyclic(c as usize)?;
        for &p in &ps {
            let closed = lp_norm_factor_closed_form(c, p)?;
            let oracle = factor_norm_by_transform(&group, p)?;
            let delta = rel_diff(oracle, closed);
            if delta > config.tol.closed_form_rel {
                report.fail("factor_norm", format!("c={c} p={p}: relative delta {delta:e}"));
            }
            report.row(vec![c.to_string(), p.to_string(), float(closed), float(oracle), float(delta)]);
        }
    }
    Ok(report)
}

pub fn product_measure(config: &RunConfig) -> Result<Report, CliError> {
    let spec = product_spec(config)?;
    let ps = config.p_values(&DEFAULT_P)?;
    let mut report = Report::csv(
        config.header(),
        vec![
            "J",
            "group_order",
            "support_atoms",
            "haar_density",
            "p",
            "norm_pow_closed_form",
            "norm_pow_dft",
            "rel_delta",
            "total_mass",
            "mu_hat_zero",
        ],
    );
    report.comment(format!("# {}", spec.describe()));
    for j in 0..=spec.depth() {
        let truncated = spec.truncate(j);
        let mu = build_truncated_measure(&truncated)?;
        let mu_hat = mu.mu_hat();
        let density = support_haar_density(&truncated);
        if truncated.exact_support_size() != mu.support_size().into()
            || truncated.exact_group_order() != mu.group().order().into()
        {
            report.fail(
                "support_density",
                format!("J={j}: {} atoms in |G| = {} disagree with density {density}", mu.support_size(), mu.group().order()),
            );
        }
        let mass = mu.total_mass();
        let zero = mu_hat.values()[0];
        if (mass - 1.0).abs() > config.tol.probability_abs || (zero.re - 1.0).abs().max(zero.im.abs()) > config.tol.probability_abs {
            report.fail("probability", format!("J={j}: mass {mass}, mu_hat(0) {zero}"));
        }
        for &p in &ps {
            let closed = lp_norm_truncated_product(&truncated, p)?;
            let direct = lp_norm_pow(&mu_hat, p)?;
            let delta = rel_diff(direct, closed);
            if delta > config.tol.product_norm_rel {
                report.fail("tensor_norm", format!("J={j} p={p}: relative delta {delta:e}"));
            }
            report.row(vec![
                j.to_string(),
                mu.group().order().to_string(),
                mu.support_size().to_string(),
                density.to_string(),
                p.to_string(),
                float(closed),
                float(direct),
                float(delta),
                float(mass),
                float(zero.re),
            ]);
        }
    }
    Ok(report)
}

pub fn series_sweep(config: &RunConfig) -> Result<Report, CliError> {
    let k: u64 = config.keys.parse("k").map_err(CliError::config)?.unwrap_or(2);
    if k < 2 {
        return Err(CliError::Config(format!("key k: {k} must be at least 2")));
    }
    let n_max: usize = match config.depth {
        Some(d) => d,
        None => config.keys.parse("n_max").map_err(CliError::config)?.unwrap_or(60),
    };
    if !(1..=10_000).contains(&n_max) {
        return Err(CliError::Config(format!("key n_max: {n_max} must lie in 1..=10000")));
    }
    let ps = config.p_values(&DEFAULT_P)?;
    let mut report = Report::csv(
        config.header(),
        vec!["k", "p", "n", "term", "partial_sum", "ratio", "tail_bound", "verdict"],
    );
    for &p in &ps {
        let series = lp_series_tail(k, p, n_max)?;
        let verdict = if series.convergent { "convergent" } else { "divergent" };
        if series.convergent {
            if n_max >= 40 {
                let ratio = series.final_ratio().unwrap_or(f64::NAN);
                if (ratio - series.ratio_limit).abs() > 1e-6 {
                    report.fail("ratio_limit", format!("k={k} p={p}: final ratio {ratio} vs {}", series.ratio_limit));
                }
            }
        } else if let Some(row) = series.rows.iter().find(|r| r.partial_sum < r.n as f64 * (1.0 - 1e-12)) {
            report.fail("divergence", format!("k={k} p={p}: partial sum {} below n={}", row.partial_sum, row.n));
        }
        for row in &series.rows {
            report.row(vec![
                k.to_string(),
                p.to_string(),
                row.n.to_string(),
                float(row.term),
                float(row.partial_sum),
                opt_float(row.ratio),
                opt_float(row.tail_bound),
                verdict.to_string(),
            ]);
        }
    }
    Ok(report)
}

const LONG_HEADER: [&str; 5] = ["quantity", "parameter", "value", "reference", "delta"];

fn long_row(quantity: &str, parameter: String, value: f64, reference: Option<f64>, delta: Option<f64>) -> Vec<String> {
    vec![quantity.to_string(), parameter, float(value), opt_float(reference), opt_float(delta)]
}

pub fn circle_measure(config: &RunConfig) -> Result<Report, CliError> {
    let model = circle_model(config)?;
    let ps = config.p_values(&DEFAULT_P)?;
    let mu = model.measure().map_err(CliError::config)?;
    let mu_hat = model.mu_hat().map_err(CliError::config)?;
    let n = model.resolution();
    let mut report = Report::csv(config.header(), LONG_HEADER.to_vec());
    report.comment(format!("# {}", model.describe()));
    let tol = config.tol;

    let mass = mu.total_mass();
    let mass_delta = (mass - 1.0).abs();
    report.row(long_row("total_mass", String::new(), mass, Some(1.0), Some(mass_delta)));
    let zero = mu_hat.values()[0].re;
    let zero_delta = (mu_hat.values()[0] - 1.0).norm();
    report.row(long_row("mu_hat_zero", String::new(), zero, Some(1.0), Some(zero_delta)));
    if mass_delta > tol.probability_abs || zero_delta > tol.probability_abs {
        report.fail("probability", format!("mass {mass}, mu_hat(0) {}", mu_hat.values()[0]));
    }
    report.row(long_row(
        "support_fraction",
        String::new(),
        mu.support_size() as f64 / n as f64,
        None,
        None,
    ));

    if let CircleMeasureModel::Riesz { coefficients, .. } = &model {
        // exact product expansion against the transform of the sampled density
        let dense = dft(mu.weights());
        let d = dense.max_abs_diff(&mu_hat)?;
        report.row(long_row("coefficient_routes", String::new(), d, Some(0.0), Some(d)));
        if d > 1e-10 {
            report.fail("riesz_coefficients", format!("dense and product coefficients differ by {d:e}"));
        }
        for &p in &ps {
            let value = lp_norm_pow(&mu_hat, p)?;
            let closed = riesz_norm_pow_closed_form(coefficients, p);
            let delta = rel_diff(value, closed);
            if delta > tol.product_norm_rel {
                report.fail("riesz_norm", format!("p={p}: relative delta {delta:e}"));
            }
            report.row(long_row("lp_norm_pow", format!("p={p}"), value, Some(closed), Some(delta)));
        }
    } else {
        for &p in &ps {
            let value = lp_norm_pow(&mu_hat, p)?;
            report.row(long_row("lp_norm_pow", format!("p={p}"), value, None, None));
        }
    }
    let radii: Vec<usize> = (1..=10).map(|j| n >> j).filter(|&r| r > 0).collect();
    for (r, sup) in coefficient_tail_sup(&mu_hat, &radii) {
        report.row(long_row("tail_sup", format!("R={r}"), sup, None, None));
    }
    Ok(report)
}

fn any_mu_hat(config: &RunConfig) -> Result<(String, GroupFunction), CliError> {
    match config.measure()? {
        MeasureSpec::Product(_) => {
            let spec = product_spec(config)?;
            Ok((spec.describe(), build_truncated_measure(&spec)?.mu_hat()))
        }
        MeasureSpec::Circle(_) => {
            let model = circle_model(config)?;
            Ok((model.describe(), model.mu_hat().map_err(CliError::config)?))
        }
    }
}

pub fn saeki(config: &RunConfig) -> Result<Report, CliError> {
    let (name, mu_hat) = any_mu_hat(config)?;
    let ps = config.p_values(&DEFAULT_P)?;
    let phis: Vec<String> = config
        .keys
        .list::<String>("phi")
        .map_err(CliError::config)?
        .unwrap_or_else(|| vec!["power".into(), "exp_sqrt_log".into()]);
    let mut report = Report::csv(config.header(), vec!["phi", "p", "saeki_sum", "lp_norm_pow", "rel_delta"]);
    report.comment(format!("# {name}"));
    for phi in &phis {
        match phi.as_str() {
            "power" => {
                for &p in &ps {
                    let weight = Phi0::for_exponent(p).map_err(|e| CliError::Config(format!("key p: {e}")))?;
                    let sum = saeki_diagnostic(&mu_hat, weight)?;
                    let norm = lp_norm_pow(&mu_hat, p)?;
                    let delta = rel_diff(sum, norm);
                    if delta > config.tol.saeki_rel {
                        report.fail("saeki_power", format!("p={p}: relative delta {delta:e}"));
                    }
                    report.row(vec!["power".to_string(), p.to_string(), float(sum), float(norm), float(delta)]);
                }
            }
            "exp_sqrt_log" => {
                let sum = saeki_diagnostic(&mu_hat, Phi0::ExpSqrtLog)?;
                report.row(vec![Phi0::ExpSqrtLog.name(), String::new(), float(sum), String::new(), String::new()]);
            }
            other => return Err(CliError::Config(format!("key phi: unknown weight {other:?}"))),
        }
    }
    Ok(report)
}
