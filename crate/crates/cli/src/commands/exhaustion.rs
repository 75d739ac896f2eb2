use serde::Serialize;
use thinex_core::exhaustion::{
    pu_kernel_check, telescoping_report, Provenance, Tolerances as CertTolerances,
};
use thinex_core::measure::build_truncated_measure;
use thinex_core::spec_file::MeasureSpec;
use thinex_core::measure::CircleMeasureModel;
use thinex_core::{
    build_neighborhoods, induce_exhaustion, thinness_certificate, CutoffFamily, Error, ExhaustionModel,
    FiniteAbelianGroup, GroupElement, NeighborhoodStrategy, ThinnessCertificate, TruncatedMeasure,
};

use crate::config::{RunConfig, CERTIFICATE_CAP};
use crate::error::CliError;
use crate::report::{float, join, Report};

struct Certified {
    certificate: ThinnessCertificate,
    telescoping: f64,
    annihilation: f64,
    pu_holds: bool,
}

fn certify_family(fam: &CutoffFamily, mu: &TruncatedMeasure, label: String) -> Result<Certified, CliError> {
    let mut certificate = thinness_certificate(fam, mu)?;
    certificate.model = label;
    let telescoping = telescoping_report(fam)?.kernel_deviation.into_iter().fold(0.0, f64::max);
    let pu = pu_kernel_check(fam, mu)?;
    Ok(Certified { certificate, telescoping, annihilation: pu.max_deviation, pu_holds: pu.holds })
}

fn check(config: &RunConfig, c: &Certified, tag: &str, report: &mut Report) {
    if !c.certificate.verdict {
        report.fail("verdict", format!("{tag}: model is not thin"));
    }
    if c.telescoping > config.tol.telescoping_abs {
        report.fail("telescoping", format!("{tag}: kernel deviation {:e}", c.telescoping));
    }
    if !c.pu_holds || c.annihilation > config.tol.annihilation_abs {
        report.fail("kernel_annihilation", format!("{tag}: deviation {:e}", c.annihilation));
    }
}

fn product_model(spec: &thinex_core::ProductMeasureSpec) -> Result<(TruncatedMeasure, CutoffFamily), CliError> {
    let order = spec.exact_group_order();
    if order > CERTIFICATE_CAP.into() {
        return Err(CliError::Config(format!("key J: |G| = {order} exceeds the certificate cap {CERTIFICATE_CAP}")));
    }
    let mu = build_truncated_measure(spec)?;
    let prefixes = mu.cylinder_prefixes();
    if prefixes.is_empty() {
        return Err(CliError::Config("key J: a certificate needs at least one block".into()));
    }
    let fam = build_neighborhoods(&mu.support(), mu.group(), &NeighborhoodStrategy::QuotientCylinder { prefixes })
        .map_err(CliError::config)?;
    Ok((mu, fam))
}

fn circle_model(config: &RunConfig, model: &CircleMeasureModel) -> Result<(TruncatedMeasure, CutoffFamily), CliError> {
    if matches!(model, CircleMeasureModel::Riesz { .. }) {
        return Err(CliError::Config("key kind: a Riesz product has full support and no room for neighborhoods".into()));
    }
    if model.resolution() > CERTIFICATE_CAP {
        return Err(CliError::Config(format!(
            "key N: {} exceeds the certificate cap {CERTIFICATE_CAP}",
            model.resolution()
        )));
    }
    let radii: Vec<usize> = config.keys.list_required("radii").map_err(CliError::config)?;
    let mu = model.measure().map_err(CliError::config)?;
    let fam = build_neighborhoods(&mu.support(), mu.group(), &NeighborhoodStrategy::MetricShrink { radii })
        .map_err(|e| CliError::Config(format!("key radii: {e}")))?;
    Ok((mu, fam))
}

pub fn certify(config: &RunConfig) -> Result<Report, CliError> {
    let measure = config.measure()?;
    if config.depth.is_some() {
        let MeasureSpec::Product(spec) = measure else {
            return Err(CliError::Config("--depth: a certificate sweep needs kind = product".into()));
        };
        return certify_sweep(config, &spec);
    }
    let (label, (mu, fam)) = match &measure {
        MeasureSpec::Product(spec) => (spec.describe(), product_model(spec)?),
        MeasureSpec::Circle(model) => (model.describe(), circle_model(config, model)?),
    };
    let mut c = certify_family(&fam, &mu, label)?;
    c.certificate.provenance = Provenance {
        spec_sha256: config.spec_sha256.clone(),
        seed: Some(config.seed),
        tolerances: CertTolerances {
            telescoping_abs: config.tol.telescoping_abs,
            annihilation_abs: config.tol.annihilation_abs,
            ..CertTolerances::default()
        },
    };
    let mut report = Report::json(&c.certificate)?;
    check(config, &c, "certificate", &mut report);
    Ok(report)
}

fn certify_sweep(config: &RunConfig, spec: &thinex_core::ProductMeasureSpec) -> Result<Report, CliError> {
    let mut report = Report::csv(
        config.header(),
        vec![
            "model",
            "group_order",
            "levels",
            "dims_E",
            "dim_F",
            "intersection_dims",
            "density_profile",
            "verdict",
            "telescoping",
            "kernel_annihilation",
        ],
    );
    for j in 1..=spec.depth() {
        let truncated = spec.truncate(j);
        let (mu, fam) = product_model(&truncated)?;
        let c = certify_family(&fam, &mu, truncated.describe())?;
        check(config, &c, &format!("J={j}"), &mut report);
        let cert = &c.certificate;
        report.row(vec![
            cert.model.clone(),
            mu.group().order().to_string(),
            fam.len().to_string(),
            join(&cert.dims_e),
            cert.dim_f.to_string(),
            join(&cert.intersection_dims),
            join(&cert.density_profile),
            cert.verdict.to_string(),
            float(c.telescoping),
            float(c.annihilation),
        ]);
    }
    Ok(report)
}

#[derive(Serialize)]
struct InduceReport {
    #[serde(rename = "G")]
    g: String,
    #[serde(rename = "H")]
    h: String,
    generators: Vec<String>,
    index: usize,
    section: Vec<String>,
    cocycle_ok: bool,
    action_ok: bool,
    invariance_residual: f64,
    isometry_max_rel_dev: f64,
    dims_scale_ok: bool,
    certificate: ThinnessCertificate,
    holds: bool,
}

fn parse_generators(g: &FiniteAbelianGroup, text: &str) -> Result<Vec<GroupElement>, CliError> {
    text.split(';')
        .map(|item| {
            let coords = item
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Config(format!("key gens: bad element {item:?}")))?;
            let x = g.element(coords).map_err(|e| CliError::Config(format!("key gens: {e}")))?;
            if x.is_zero() {
                return Err(CliError::Config(format!("key gens: generator {item:?} is zero")));
            }
            Ok(x)
        })
        .collect()
}

/// The smallest thin model on `H`: a point mass off the origin and one
/// neighborhood that misses only the origin.
fn point_model(h: &FiniteAbelianGroup) -> Result<ExhaustionModel, CliError> {
    let mu = TruncatedMeasure::dirac(h.clone(), h.order() - 1)?;
    let fam = CutoffFamily::from_index_sets(h, &[(1..h.order()).collect()])?;
    Ok(ExhaustionModel::from_family(&fam, &mu)?.with_label(format!("point mass on {h}")))
}

pub fn induce(config: &RunConfig) -> Result<Report, CliError> {
    let g: FiniteAbelianGroup =
        config.keys.parse_required("G").map_err(|e| CliError::Config(format!("key G: {e}")))?;
    if g.order() > CERTIFICATE_CAP {
        return Err(CliError::Config(format!("key G: |G| = {} exceeds the certificate cap {CERTIFICATE_CAP}", g.order())));
    }
    let gens = parse_generators(&g, config.keys.require("gens").map_err(CliError::config)?)?;
    let h = FiniteAbelianGroup::new(gens.iter().map(|x| g.element_order(x)).collect())?;
    let model = point_model(&h)?;
    let ind = match induce_exhaustion(&model, &g, &gens, config.seed) {
        Err(Error::NotASubgroup(msg)) => return Err(CliError::Config(format!("key gens: {msg}"))),
        other => other?,
    };
    let holds = ind.holds();
    let mut certificate = ind.certificate.clone();
    certificate.provenance.spec_sha256 = config.spec_sha256.clone();
    certificate.provenance.seed = Some(config.seed);
    let out = InduceReport {
        g: g.to_string(),
        h: h.to_string(),
        generators: gens.iter().map(|x| x.to_string()).collect(),
        index: ind.index,
        section: ind.section.iter().map(|&i| g.element_at(i).to_string()).collect(),
        cocycle_ok: ind.cocycle_ok,
        action_ok: ind.action_ok,
        invariance_residual: ind.invariance_residual,
        isometry_max_rel_dev: ind.isometry_max_rel_dev,
        dims_scale_ok: ind.dims_scale_ok,
        certificate,
        holds,
    };
    let mut report = Report::json(&out)?;
    if !holds {
        report.fail("induction", format!("induced model on {g} fails its checks"));
    }
    Ok(report)
}
