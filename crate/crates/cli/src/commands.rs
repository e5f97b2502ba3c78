//! Subcommand drivers. Each returns the files it produces; `main` decides
//! whether they go to `--out` or stdout.

use std::fmt::Write as _;

use gbf_core::experiment::{error_table, error_table_csv, max_error};
use gbf_core::io::{frame_coefficients_csv, interpolant_csv, quadrature_csv, spectrum_csv};
use gbf_core::{
    augment_cpd, frame_bounds, interpolate, norming_check, quadrature_apply, quadrature_error_bound,
    quadrature_weights, windowed_fourier, Gbf, GbfSpec, SamplingSet, Spectrum,
};
use serde_json::json;

use crate::config::{parse_freqs, parse_grid, ExperimentConfig, SamplingSpec};
use crate::error::CliError;

/// Output files in write order. The first is printed when no output
/// directory is given; `summary` lines are printed after writing files.
#[derive(Debug, Default)]
pub struct Report {
    pub files: Vec<(String, String)>,
    pub summary: Vec<String>,
}

impl Report {
    fn file(&mut self, name: &str, contents: String) {
        self.files.push((name.to_string(), contents));
    }

    fn json(&mut self, name: &str, value: serde_json::Value) {
        let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
        text.push('\n');
        self.file(name, text);
    }
}

fn spectrum_of(cfg: &ExperimentConfig) -> Result<Spectrum, CliError> {
    Ok(Spectrum::of_graph(&cfg.load_graph()?)?)
}

/// Builds the GBF for `n_samples` nodes and applies `--augment` if set.
fn build_gbf(spec: &GbfSpec, s: &Spectrum, n_samples: usize, augment: Option<f64>) -> Result<Gbf, CliError> {
    let gbf = spec.build_with_samples(s, n_samples)?;
    Ok(match augment {
        Some(delta) => augment_cpd(s, &gbf, delta)?,
        None => gbf,
    })
}

fn require_bandwidth(cfg: &ExperimentConfig, n: usize) -> Result<usize, CliError> {
    let m = cfg
        .bandwidth
        .ok_or_else(|| CliError::config("Config", "--bandwidth is required"))?;
    if m == 0 || m > n {
        return Err(CliError::config(
            "BandwidthOutOfRange",
            format!("bandwidth {m} out of range 1..={n}"),
        ));
    }
    Ok(m)
}

pub fn spectrum(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let s = spectrum_of(cfg)?;
    let mut r = Report::default();
    r.file("spectrum.csv", spectrum_csv(&s, false));
    r.json(
        "spectrum.json",
        json!({
            "n": s.len(),
            "distinct_count": s.distinct_count(),
            "first_eigenvector_constant": s.first_eigenvector_constant(),
            "lambda_max": s.eigenvalues()[s.len() - 1],
            "cluster_tolerance": s.cluster_tolerance(),
        }),
    );
    r.summary.push(format!("n={} distinct={}", s.len(), s.distinct_count()));
    Ok(r)
}

pub fn interpolate_cmd(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let s = spectrum_of(cfg)?;
    let spec = cfg.single_gbf()?;
    let sampling = cfg.sampling(s.len())?;
    let x = cfg.require_signal(&s)?;
    let w = sampling.set();
    let gbf = build_gbf(&spec, &s, w.len(), cfg.augment)?;
    let it = interpolate(&s, &gbf, w, &w.restrict(&x)?)?;

    let err = (&x.0 - &it.signal.0).abs();
    let max_err = err.max();
    let mean_err = err.mean();
    let mut r = Report::default();
    r.json(
        "interpolate.json",
        json!({
            "gbf_descriptor": it.gbf,
            "classification": gbf.classification().short_name(),
            "N": w.len(),
            "condition_estimate": it.diagnostics.condition_estimate,
            "residual_max": it.diagnostics.residual_max,
            "max_error": max_err,
            "mean_error": mean_err,
        }),
    );
    r.file("interpolant.csv", interpolant_csv(&it));
    let mut errors = String::from("node_index,truth,interpolant,abs_error\n");
    for i in 0..s.len() {
        let _ = writeln!(errors, "{i},{},{},{}", x.0[i], it.signal.0[i], err[i]);
    }
    r.file("errors.csv", errors);

    if let SamplingSpec::Random { order, .. } = &sampling {
        if cfg.grid.is_some() {
            let grid = parse_grid(cfg.grid.as_deref(), s.len())?;
            let mut table = format!("N,{}\n", spec);
            for count in grid {
                let wn = SamplingSet::new(order[..count].to_vec(), s.len())?;
                let e = build_gbf(&spec, &s, count, cfg.augment)
                    .and_then(|g| Ok(interpolate(&s, &g, &wn, &wn.restrict(&x)?)?))
                    .map(|it| max_error(&x, &it.signal));
                match e {
                    Ok(v) => {
                        let _ = writeln!(table, "{count},{v}");
                    }
                    Err(e) if e.exit_code == crate::error::EXIT_NUMERICAL => {
                        let _ = writeln!(table, "{count},nan");
                    }
                    Err(e) => return Err(e),
                }
            }
            r.file("error_vs_n.csv", table);
        }
    }
    r.summary
        .push(format!("N={} max_error={max_err:e} mean_error={mean_err:e}", w.len()));
    Ok(r)
}

pub fn norming(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let s = spectrum_of(cfg)?;
    let m = require_bandwidth(cfg, s.len())?;
    let w = cfg.sampling(s.len())?;
    let report = norming_check(&s, w.set(), m)?;
    let mut r = Report::default();
    r.json(
        "norming.json",
        serde_json::to_value(&report).expect("report serializes"),
    );
    r.summary.push(format!(
        "M={m} N={} rho={} is_norming={}",
        report.n_samples, report.rho, report.is_norming
    ));
    Ok(r)
}

pub fn quadrature(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let s = spectrum_of(cfg)?;
    let spec = cfg.single_gbf()?;
    let sampling = cfg.sampling(s.len())?;
    let w = sampling.set();
    let gbf = build_gbf(&spec, &s, w.len(), cfg.augment)?;
    let rule = quadrature_weights(&s, &gbf, w)?;
    let mut r = Report::default();
    r.file("quadrature.csv", quadrature_csv(&rule));
    let mut diag = json!({
        "exactness_residual": rule.exactness_residual,
        "gbf_descriptor": rule.gbf,
        "N": w.len(),
    });
    if let Some(x) = cfg.load_signal(&s)? {
        let estimate = quadrature_apply(&rule, &x)?;
        let mean = x.0.mean();
        let error = (estimate - mean).abs();
        diag["estimate"] = json!(estimate);
        diag["mean"] = json!(mean);
        diag["error"] = json!(error);
        let mut line = format!("estimate={estimate} mean={mean} error={error:e}");
        if cfg.bandwidth.is_some() {
            let m = require_bandwidth(cfg, s.len())?;
            let report = norming_check(&s, w, m)?;
            let bound = if report.is_norming {
                Some(quadrature_error_bound(&s, &gbf, &report, &x)?)
            } else {
                None
            };
            diag["M"] = json!(m);
            diag["bound"] = json!(bound);
            match bound {
                Some(b) => {
                    let _ = write!(line, " bound={b:e}");
                }
                None => line.push_str(" bound=none (W not norming)"),
            }
        }
        r.summary.push(line);
    }
    r.json("quadrature.json", diag);
    Ok(r)
}

pub fn frame(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let s = spectrum_of(cfg)?;
    let spec = cfg.single_gbf()?;
    let window = build_gbf(&spec, &s, s.len(), cfg.augment)?;
    let freqs = parse_freqs(cfg.freqs.as_deref(), s.len())?;
    let b = frame_bounds(&s, &window, &freqs)?;
    let basis: Vec<_> = b
        .is_basis_per_frequency
        .iter()
        .map(|(&k, &is)| json!({"k": k + 1, "is_basis": is}))
        .collect();
    let mut r = Report::default();
    r.json(
        "frame_bounds.json",
        json!({
            "n": s.len(),
            "window": window.descriptor(),
            "frequencies": freqs.indices().iter().map(|k| k + 1).collect::<Vec<_>>(),
            "a_theory": b.a_theory,
            "b_theory": b.b_theory,
            "b_valid": b.b_valid,
            "a_full_set": b.a_full_set,
            "a_emp": b.a_emp,
            "b_emp": b.b_emp,
            "is_basis_per_frequency": basis,
        }),
    );
    if let Some(x) = cfg.load_signal(&s)? {
        let coeffs = windowed_fourier(&s, &window, &freqs, &x)?;
        r.file("frame_coefficients.csv", frame_coefficients_csv(&coeffs, &freqs));
    }
    r.summary
        .push(format!("a_emp={} b_emp={} b_valid={}", b.a_emp, b.b_emp, b.b_valid));
    Ok(r)
}

pub fn bench(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let s = spectrum_of(cfg)?;
    let specs = cfg.gbf_specs()?;
    let x = cfg.require_signal(&s)?;
    let (order, seed) = match cfg.samples.as_deref() {
        Some(_) => match cfg.sampling(s.len())? {
            SamplingSpec::Random { order, seed, .. } => (order, seed),
            SamplingSpec::Fixed(_) => {
                return Err(CliError::config(
                    "Config",
                    "bench needs random:N=..,seed=.. sampling or --seed",
                ))
            }
        },
        None => {
            let seed = cfg
                .seed
                .ok_or_else(|| CliError::config("Config", "bench needs a seed (--seed or random sampling spec)"))?;
            (gbf_core::experiment::random_order(s.len(), seed), seed)
        }
    };
    let grid = parse_grid(cfg.grid.as_deref(), s.len())?;
    let rows = error_table(&s, &specs, &x, &order, &grid, cfg.augment)?;
    let mut r = Report::default();
    r.file("error_vs_n.csv", error_table_csv(&specs, &rows));
    r.summary
        .push(format!("seed={seed} rows={} columns={}", rows.len(), specs.len()));
    Ok(r)
}
