//! End-to-end experiments behind the `edl` binary.
//!
//! Every run writes `config.json`, `counts.csv`, `chain.csv` and
//! `summary.json` into a fresh `run-<label>-<timestamp>/` directory. CSV
//! contents depend only on the configuration and seed.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::cloud::PointCloud;
use crate::dimension::{
    box_count, frame_chain, informative_levels, multiscale_chain, weighted_covering, ChainParams,
    DimensionEstimate,
};
use crate::error::{Error, Result};
use crate::grid_measure::{Dim, GridMeasure};
use crate::ifs::{AdRegularModel, IfsSystem};
use crate::maps::{
    build_direction_net, distance_set, dot_product_set, projection, resolve_pin, select_pin,
    sum_product_set, OccupiedBins, PinRule, Subsample, DEFAULT_NET_CONSTANT,
};
use crate::verify::{exact_entropy, off_by_one_entropy, run_suite};

/// Finest level any bin sweep may request.
pub const MAX_SWEEP_LEVEL: u32 = 28;

/// Points sampled when measuring the AD constant.
pub const AD_SAMPLES: usize = 256;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub model: String,
    pub ifs: Option<PathBuf>,
    pub depth: u32,
    pub m: u32,
    pub n: u32,
    pub t: f64,
    pub pin: String,
    /// Candidate pins for the dot-product search.
    pub pins: usize,
    pub subsample: Option<usize>,
    pub seed: u64,
    pub levels: Option<[u32; 2]>,
    pub trials: usize,
    #[serde(skip)]
    pub out: PathBuf,
    pub label: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub inject_fault: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            model: "four-corner".into(),
            ifs: None,
            depth: 7,
            m: 4,
            n: 16,
            t: 0.8,
            pin: "best".into(),
            pins: 8,
            subsample: None,
            seed: 42,
            levels: None,
            trials: 500,
            out: PathBuf::from("."),
            label: None,
            inject_fault: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.m >= self.n {
            return Err(Error::Config(format!(
                "need 0 < m < n, got m = {}, n = {}",
                self.m, self.n
            )));
        }
        if !(self.t > 0.0 && self.t < 1.0) {
            return Err(Error::Config(format!(
                "t must lie in (0, 1), got {}",
                self.t
            )));
        }
        if self.depth == 0 {
            return Err(Error::Config("depth must be positive".into()));
        }
        if let Some([a, b]) = self.levels {
            if a >= b || b > MAX_SWEEP_LEVEL {
                return Err(Error::Config(format!(
                    "levels must satisfy a < b <= {MAX_SWEEP_LEVEL}, got {a}:{b}"
                )));
            }
        }
        if self.subsample == Some(0) {
            return Err(Error::Config("subsample cap must be positive".into()));
        }
        self.pin.parse::<PinRule>()?;
        Ok(())
    }

    pub fn system(&self) -> Result<IfsSystem> {
        if let Some(path) = &self.ifs {
            return IfsSystem::read_json(path);
        }
        match IfsSystem::catalogue(&self.model) {
            Ok(s) => Ok(s),
            Err(e) if Path::new(&self.model).is_file() => {
                IfsSystem::read_json(Path::new(&self.model)).map_err(|_| e)
            }
            Err(e) => Err(e),
        }
    }

    fn model(&self) -> Result<AdRegularModel> {
        AdRegularModel::new(self.system()?, self.depth)
    }

    fn sub(&self) -> Option<Subsample> {
        self.subsample.map(|cap| Subsample {
            cap,
            seed: self.seed,
        })
    }

    fn pin_rule(&self) -> PinRule {
        self.pin.parse().expect("validated")
    }

    /// The sweep window, by default the eight finest levels the model resolves.
    fn window(&self, resolved: u32) -> [u32; 2] {
        self.levels.unwrap_or_else(|| {
            let b = resolved.clamp(3, MAX_SWEEP_LEVEL);
            [b.saturating_sub(8).max(1), b]
        })
    }
}

/// Where a run was written and whether its assertions held.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub dir: PathBuf,
    pub failures: Vec<String>,
    pub warnings: Vec<String>,
}

impl RunOutcome {
    /// 0 on success, 3 when an asserted inequality failed.
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            3
        }
    }
}

struct Report {
    counts: String,
    chain: String,
    summary: Value,
    failures: Vec<String>,
    warnings: Vec<String>,
    extra: Vec<(&'static str, String)>,
}

impl Report {
    fn new() -> Self {
        Report {
            counts: String::new(),
            chain: String::from("stage,k,level,value,bound,margin\n"),
            summary: json!({}),
            failures: Vec::new(),
            warnings: Vec::new(),
            extra: Vec::new(),
        }
    }
}

fn create_run_dir(out: &Path, label: &str) -> Result<PathBuf> {
    fs::create_dir_all(out)?;
    let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%SZ");
    let base = format!("run-{label}-{stamp}");
    for i in 0u32.. {
        let name = if i == 0 {
            base.clone()
        } else {
            format!("{base}-{i}")
        };
        let dir = out.join(name);
        match fs::create_dir(&dir) {
            Ok(()) => return Ok(dir),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(e.into()),
        }
    }
    unreachable!("u32 range exhausted")
}

fn persist(cmd: &str, cfg: &ExperimentConfig, mut report: Report) -> Result<RunOutcome> {
    let model = match &cfg.ifs {
        Some(path) => path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        None => cfg.model.clone(),
    };
    let label = cfg
        .label
        .clone()
        .unwrap_or_else(|| format!("{cmd}-{}", model.replace(['/', '\\', '.'], "_")));
    let dir = create_run_dir(&cfg.out, &label)?;
    let mut config = serde_json::to_value(cfg)?;
    config["command"] = json!(cmd);
    fs::write(
        dir.join("config.json"),
        serde_json::to_string_pretty(&config)? + "\n",
    )?;
    fs::write(dir.join("counts.csv"), &report.counts)?;
    fs::write(dir.join("chain.csv"), &report.chain)?;
    for (name, body) in &report.extra {
        fs::write(dir.join(name), body)?;
    }
    report.summary["warnings"] = json!(report.warnings);
    report.summary["failures"] = json!(report.failures);
    report.summary["passed"] = json!(report.failures.is_empty());
    fs::write(
        dir.join("summary.json"),
        serde_json::to_string_pretty(&report.summary)? + "\n",
    )?;
    Ok(RunOutcome {
        dir,
        failures: report.failures,
        warnings: report.warnings,
    })
}

fn fit(bins: &OccupiedBins, window: [u32; 2]) -> Result<(DimensionEstimate, bool)> {
    let counts = bins.counts(window[0]..=window[1])?;
    let saturation = u64::try_from(bins.tuples).unwrap_or(u64::MAX);
    let useful = informative_levels(&counts, saturation);
    if useful.len() >= 3 {
        Ok((box_count(&useful)?, false))
    } else {
        Ok((box_count(&counts)?, true))
    }
}

fn fit_json(est: &DimensionEstimate, degenerate: bool, subsampled: bool) -> Value {
    json!({
        "slope": est.slope,
        "intercept": est.intercept,
        "residual": est.residual,
        "window": est.window,
        "degenerate_window": degenerate,
        "lower_bound_only": subsampled,
    })
}

fn check_slope(report: &mut Report, what: &str, est: &DimensionEstimate, dim: f64) {
    if !(est.slope >= -1e-9 && est.slope <= dim + 1e-9) {
        report
            .failures
            .push(format!("{what} slope {} outside [0, {dim}]", est.slope));
    }
}

/// Distance-set sweep plus the full multiscale chain.
pub fn cmd_distance(cfg: &ExperimentConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let mut model = cfg.model()?;
    if model.dim() != Dim::Two {
        return Err(Error::Config(
            "the distance experiment requires a planar (d = 2) model".into(),
        ));
    }
    let mut report = Report::new();
    let ad = model.verify_ad_regularity(AD_SAMPLES, cfg.seed)?;
    let cyl = model.generate_cylinders()?;
    let window = cfg.window(model.level());
    let bins = distance_set(&cyl.cloud, window[1], cfg.sub())?;
    let (est, degenerate) = fit(&bins, window)?;
    report.counts = est.to_csv();
    check_slope(&mut report, "distance", &est, 1.0);
    if bins.subsampled {
        report
            .warnings
            .push("distance set was subsampled; counts are lower bounds".into());
    }

    let params = ChainParams::new(cfg.m, cfg.n, cfg.t)?;
    let net = select_pin(&cyl.cloud, cfg.pin_rule(), cfg.m, DEFAULT_NET_CONSTANT)?;
    let frame = frame_chain(&model, &net, &params)?;
    let chain = multiscale_chain(&frame.measure, &net, &frame.q0, &params)?;
    report.chain = chain.to_csv();
    report.failures.extend(chain.violations.iter().cloned());
    if chain.final_average < cfg.t {
        report.failures.push(format!(
            "final average {} below t = {}",
            chain.final_average, cfg.t
        ));
    }
    if chain.covering_margin <= 0.0 {
        report.failures.push(format!(
            "weighted covering margin {} is not positive",
            chain.covering_margin
        ));
    }
    report.summary = json!({
        "model": model.system.label(),
        "s": model.s,
        "ad_constant": ad.a,
        "distance": fit_json(&est, degenerate, bins.subsampled),
        "net": {
            "pin": net.pin(),
            "directions": net.len(),
            "covering_constant": net.covering_constant(),
            "min_reach": net.min_reach(),
        },
        "chain": {
            "q0_level": chain.q0_level,
            "q0_coords": chain.q0_coords,
            "final_average": chain.final_average,
            "covering_margin": chain.covering_margin,
            "max_error_gap": chain.max_error_gap,
            "min_refinement_margin": chain.min_refinement_margin,
            "vacuous": chain.vacuous,
        },
    });
    persist("distance", cfg, report)
}

/// Slope of one pin's dot-product set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PinSlope {
    pub pin: [f64; 2],
    pub estimate: DimensionEstimate,
    pub degenerate_window: bool,
    pub subsampled: bool,
}

/// Dot-product slopes for each candidate pin, in the given order.
pub fn dot_product_slopes(
    cloud: &PointCloud,
    pins: &[[f64; 2]],
    window: [u32; 2],
    sub: Option<Subsample>,
) -> Result<Vec<PinSlope>> {
    pins.iter()
        .map(|&pin| {
            let bins = dot_product_set(cloud, pin, window[1], sub)?;
            let (estimate, degenerate_window) = fit(&bins, window)?;
            Ok(PinSlope {
                pin,
                estimate,
                degenerate_window,
                subsampled: bins.subsampled,
            })
        })
        .collect()
}

fn best_slope(slopes: &[PinSlope]) -> &PinSlope {
    slopes
        .iter()
        .reduce(|a, b| {
            if b.estimate.slope > a.estimate.slope {
                b
            } else {
                a
            }
        })
        .expect("at least one pin")
}

/// `Σ p_e N(π_e(K), 2^{-n})` over the net seen from `pin`, as chain rows.
fn projection_covering(
    report: &mut Report,
    cloud: &PointCloud,
    measure: &GridMeasure,
    pin: [f64; 2],
    cfg: &ExperimentConfig,
) -> Result<Value> {
    let net = match build_direction_net(cloud, pin, cfg.m, DEFAULT_NET_CONSTANT) {
        Ok(net) => net,
        Err(e @ Error::InsufficientDensity { .. }) => {
            report.warnings.push(format!(
                "no direction net at the best-slope pin ({e}); using the best-net pin"
            ));
            select_pin(cloud, PinRule::Best, cfg.m, DEFAULT_NET_CONSTANT)?
        }
        Err(e) => return Err(e),
    };
    let mut counts = Vec::with_capacity(net.len());
    for &e in net.vectors() {
        let push = measure.pushforward_line(projection(e)?, cfg.n)?;
        counts.push(push.line_support_count(cfg.n)? as u64);
    }
    for (i, c) in counts.iter().enumerate() {
        let bound = cfg.n as f64 * cfg.t;
        let v = (*c as f64).log2();
        writeln!(
            report.chain,
            "projection_count,{i},{},{v:.12},{bound:.12},{:.12}",
            cfg.n,
            v - bound
        )
        .expect("String write");
    }
    let cover = weighted_covering(net.weights(), &counts, cfg.n, cfg.t)?;
    let bound = cfg.n as f64 * cfg.t;
    writeln!(
        report.chain,
        "covering,,{},{:.12},{bound:.12},{:.12}",
        cfg.n,
        cover.weighted_count.log2(),
        cover.margin
    )
    .expect("String write");
    if !cover.pass {
        report.warnings.push(format!(
            "projection covering margin {} is not positive",
            cover.margin
        ));
    }
    Ok(
        json!({ "pin": net.pin(), "directions": net.len(), "covering_constant": net.covering_constant(), "margin": cover.margin }),
    )
}

/// Dot-product sweep over candidate pins.
pub fn cmd_dotproduct(cfg: &ExperimentConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let model = cfg.model()?;
    if model.dim() != Dim::Two {
        return Err(Error::Config(
            "the dot-product experiment requires a planar (d = 2) model".into(),
        ));
    }
    let cyl = model.generate_cylinders()?;
    let pins: Vec<[f64; 2]> = match resolve_pin(&cyl.cloud, cfg.pin_rule())? {
        Some(p) => vec![p],
        None => cyl
            .cloud
            .subsample(cfg.pins.max(1), cfg.seed)
            .points()
            .to_vec(),
    };
    let window = cfg.window(model.level());
    let slopes = dot_product_slopes(&cyl.cloud, &pins, window, cfg.sub())?;
    let mut report = Report::new();
    report.counts = String::from("pin,n,count,log2count\n");
    for (i, p) in slopes.iter().enumerate() {
        for (n, c) in p.estimate.levels.iter().zip(&p.estimate.counts) {
            writeln!(report.counts, "{i},{n},{c},{:.12}", (*c as f64).log2())
                .expect("String write");
        }
        check_slope(&mut report, &format!("pin {i}"), &p.estimate, 1.0);
    }
    if slopes.iter().any(|p| p.subsampled) {
        report
            .warnings
            .push("dot products were subsampled; counts are lower bounds".into());
    }
    let best = best_slope(&slopes);
    let covering = projection_covering(&mut report, &cyl.cloud, &cyl.measure, best.pin, cfg)?;
    report.summary = json!({
        "model": model.system.label(),
        "s": model.s,
        "pins": slopes.iter().map(|p| json!({
            "pin": p.pin,
            "fit": fit_json(&p.estimate, p.degenerate_window, p.subsampled),
        })).collect::<Vec<_>>(),
        "best_pin": best.pin,
        "best_slope": best.estimate.slope,
        "projection_covering": covering,
    });
    persist("dotproduct", cfg, report)
}

/// Sum-product set `A(A − a₁) + A(A − a₂)` of a line model, cross-checked
/// against the dot-product set of `A × A` pinned at `(a₁, a₂)`.
pub fn cmd_sumproduct(cfg: &ExperimentConfig) -> Result<RunOutcome> {
    cfg.validate()?;
    let model = cfg.model()?;
    if model.dim() != Dim::One {
        return Err(Error::Config(
            "the sum-product experiment requires a line (d = 1) model".into(),
        ));
    }
    let mut report = Report::new();
    if model.s < 0.5 {
        report.warnings.push(format!(
            "dimension {} < 1/2: the sum-product hypothesis is not met",
            model.s
        ));
    }
    let cyl = model.generate_cylinders()?;
    let a = cyl.cloud.reals();
    let product = cyl.cloud.square()?;
    let pin = match resolve_pin(&product, cfg.pin_rule())? {
        Some(p) => p,
        None => select_pin(&product, PinRule::Best, cfg.m, DEFAULT_NET_CONSTANT)?.pin(),
    };
    let window = cfg.window(2 * model.level());
    let sums = sum_product_set(&a, pin[0], pin[1], window[1], cfg.sub())?;
    let dots = dot_product_set(&product, pin, window[1], cfg.sub())?;
    let mut identity = true;
    for n in 0..=window[1] {
        if sums.bins_at(n)? != dots.bins_at(n)? {
            identity = false;
            report.failures.push(format!(
                "sum-product and dot-product bins differ at level {n}"
            ));
            break;
        }
    }
    let (est, degenerate) = fit(&sums, window)?;
    report.counts = est.to_csv();
    check_slope(&mut report, "sum-product", &est, 1.0);
    if sums.subsampled {
        report
            .warnings
            .push("quadruples were subsampled; counts are lower bounds".into());
    }
    report.summary = json!({
        "model": model.system.label(),
        "s": model.s,
        "pin": pin,
        "sum_product": fit_json(&est, degenerate, sums.subsampled),
        "identity_holds": identity,
        "identity_levels": [0, window[1]],
    });
    persist("sumproduct", cfg, report)
}

/// Randomised inequality suite.
pub fn cmd_verify(cfg: &ExperimentConfig) -> Result<RunOutcome> {
    let h = if cfg.inject_fault {
        off_by_one_entropy
    } else {
        exact_entropy
    };
    let suite = run_suite(cfg.seed, cfg.trials, h)?;
    let mut report = Report::new();
    report.counts = String::from("check,passed,failed\n");
    for (name, ok, bad) in &suite.tally {
        writeln!(report.counts, "{name},{ok},{bad}").expect("String write");
    }
    if suite.vacuous() {
        report
            .warnings
            .push("zero trials: the suite passes vacuously".into());
    }
    if let Some(c) = &suite.counterexample {
        report.failures.push(format!(
            "{} failed at trial {}: {}",
            c.check, c.trial, c.outcome.detail
        ));
        report.extra.push((
            "counterexample.json",
            serde_json::to_string_pretty(c)? + "\n",
        ));
    }
    report.summary = json!({
        "seed": suite.seed,
        "trials": suite.trials,
        "tally": suite.tally,
        "counterexample": suite.counterexample,
    });
    persist("verify", cfg, report)
}

/// Cylinder cloud, natural measure and box counts of a model.
pub fn cmd_generate(cfg: &ExperimentConfig) -> Result<RunOutcome> {
    let mut model = cfg.model()?;
    let mut report = Report::new();
    let ad = if model.depth >= 3 {
        Some(model.verify_ad_regularity(AD_SAMPLES, cfg.seed)?)
    } else {
        None
    };
    let cyl = model.generate_cylinders()?;
    let bits = model.system.levels_per_generation();
    let counts: Vec<(u32, u64)> = (0..=model.depth)
        .map(|k| {
            Ok((
                k * bits,
                cyl.measure.coarsen(k * bits)?.support_count() as u64,
            ))
        })
        .collect::<Result<_>>()?;
    if counts.len() >= 3 {
        let est = box_count(&counts)?;
        report.counts = est.to_csv();
        report.summary["box_dimension"] = fit_json(&est, false, false);
    } else {
        report
            .warnings
            .push("fewer than 3 generations: no slope fitted".into());
        report.counts = String::from("n,count,log2count\n");
    }
    report.summary["model"] = json!(model.system.label());
    report.summary["s"] = json!(model.s);
    report.summary["cylinders"] = json!(cyl.cloud.len());
    report.summary["ad_constant"] = json!(ad.map(|r| r.a));
    report.extra.push(("cloud.txt", cyl.cloud.to_text()));
    report.extra.push(("measure.txt", cyl.measure.to_text()));
    persist("generate", cfg, report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(out: &Path) -> ExperimentConfig {
        ExperimentConfig {
            out: out.to_path_buf(),
            ..Default::default()
        }
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        let d = tempfile::tempdir().unwrap();
        assert!(ExperimentConfig {
            m: 16,
            ..cfg(d.path())
        }
        .validate()
        .is_err());
        assert!(ExperimentConfig {
            t: 1.0,
            ..cfg(d.path())
        }
        .validate()
        .is_err());
        assert!(ExperimentConfig {
            levels: Some([5, 5]),
            ..cfg(d.path())
        }
        .validate()
        .is_err());
        assert!(ExperimentConfig {
            pin: "middle".into(),
            ..cfg(d.path())
        }
        .validate()
        .is_err());
        assert!(cfg(d.path()).validate().is_ok());
    }

    #[test]
    fn distance_needs_planar_model() {
        let d = tempfile::tempdir().unwrap();
        let c = ExperimentConfig {
            model: "middle-half".into(),
            ..cfg(d.path())
        };
        let e = cmd_distance(&c).unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn oversized_depth_hits_the_guard() {
        let d = tempfile::tempdir().unwrap();
        let e = cmd_distance(&ExperimentConfig {
            depth: 20,
            ..cfg(d.path())
        })
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn off_support_pin_is_rejected() {
        let d = tempfile::tempdir().unwrap();
        let c = ExperimentConfig {
            depth: 4,
            pin: "0.5,0.5".into(),
            ..cfg(d.path())
        };
        assert!(matches!(cmd_dotproduct(&c), Err(Error::OutsideSupport(_))));
    }

    #[test]
    fn two_point_cloud_has_flat_dot_products() {
        let cloud = PointCloud::new(Dim::Two, vec![[0.0, 0.0], [1.0, 0.5]]).unwrap();
        let s = dot_product_slopes(&cloud, &[[0.0, 0.0]], [2, 12], None).unwrap();
        assert!(s[0].estimate.slope.abs() < 1e-12, "{}", s[0].estimate.slope);
        assert!(s[0].degenerate_window);
    }

    #[test]
    fn thin_line_model_warns_but_runs() {
        let d = tempfile::tempdir().unwrap();
        let sys = IfsSystem::new(Dim::One, 0.125, vec![[0.0, 0.0], [0.875, 0.0]], "thin").unwrap();
        let path = d.path().join("thin.json");
        fs::write(&path, serde_json::to_string(&sys.to_config()).unwrap()).unwrap();
        let c = ExperimentConfig {
            model: "thin".into(),
            ifs: Some(path),
            depth: 3,
            pin: "corner".into(),
            ..cfg(d.path())
        };
        let out = cmd_sumproduct(&c).unwrap();
        assert_eq!(out.exit_code(), 0);
        assert!(out.warnings.iter().any(|w| w.contains("hypothesis")));
    }

    #[test]
    fn run_directory_layout() {
        let d = tempfile::tempdir().unwrap();
        let c = ExperimentConfig {
            model: "middle-half".into(),
            depth: 4,
            pin: "corner".into(),
            ..cfg(d.path())
        };
        let out = cmd_sumproduct(&c).unwrap();
        let name = out.dir.file_name().unwrap().to_str().unwrap().to_owned();
        assert!(name.starts_with("run-sumproduct-middle-half-"), "{name}");
        for f in ["config.json", "counts.csv", "chain.csv", "summary.json"] {
            assert!(out.dir.join(f).is_file(), "{f}");
        }
        let summary: Value =
            serde_json::from_str(&fs::read_to_string(out.dir.join("summary.json")).unwrap())
                .unwrap();
        assert_eq!(summary["identity_holds"], json!(true));
    }

    #[test]
    fn verify_reports_injected_fault() {
        let d = tempfile::tempdir().unwrap();
        let out = cmd_verify(&ExperimentConfig {
            trials: 10,
            inject_fault: true,
            ..cfg(d.path())
        })
        .unwrap();
        assert_eq!(out.exit_code(), 3);
        assert!(out.dir.join("counterexample.json").is_file());
        let ok = cmd_verify(&ExperimentConfig {
            trials: 0,
            ..cfg(d.path())
        })
        .unwrap();
        assert_eq!(ok.exit_code(), 0);
        assert!(!ok.warnings.is_empty());
    }
}
