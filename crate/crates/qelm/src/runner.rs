//! Experiment dispatch plus CSV and manifest artifact writing.
//!
//! Every run writes two files into the output directory: `<stem>.csv` with
//! the plot-ready results and `<stem>_manifest.json` recording the resolved
//! config, library versions, master seed, and wall time. The CSV bytes are
//! a pure function of the config, so identical configs reproduce identical
//! files; the manifest's wall time is the one field allowed to differ.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::json;

use crate::conc::{
    entanglement_bound_trials, global_measurement_experiment, haar_coefficient_stats,
    hypothesis_test_sim, noise_concentration_experiment, var_over_inputs, var_over_reservoirs,
    SweepQuantity, SweepRow,
};
use crate::config::{
    ConcentrationConfig, ExperimentConfig, ExpressivityConfig, GlobalConfig, HaarStatsConfig,
    HypothesisConfig, RichnessConfig, SpectrumConfig, SurrogateConfig, TrainConfig,
};
use crate::encoding::EncodingSpec;
use crate::error::Error;
use crate::fourier::{
    expectation_at, expressivity_report, richness, spectrum_dft, spectrum_direct_pauli,
    FourierSpectrum, FrequencySet,
};
use crate::model::{full_fourier_surrogate, r2_score, rff_surrogate, BandLimitedTarget, QelmModel};
use crate::pauli::PauliString;
use crate::reservoir::{ReservoirKind, ReservoirSpec};
use crate::rng::SeedStream;
use crate::state::DensityMatrix;
use crate::Result;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Version tag of the CSV column layout, recorded in every manifest.
pub const CSV_SCHEMA_VERSION: &str = "1";

/// Column header shared by all concentration sweeps.
pub const SWEEP_HEADER: &str =
    "experiment,n_a,n_h,depth,noise_p,seed,n_samples,statistic,value,stderr,bound,satisfied";

/// Paths and row count of one completed run.
#[derive(Debug, Clone)]
pub struct RunArtifacts {
    /// The results CSV.
    pub csv_path: PathBuf,
    /// The JSON manifest.
    pub manifest_path: PathBuf,
    /// Data rows written (excluding the header).
    pub rows: usize,
}

/// Formats a float with 17 significant digits; NaN becomes an empty cell.
fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{:.16e}", x)
    }
}

/// Formats a tri-state verdict: empty when the bound does not apply.
fn fmt_verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "",
    }
}

/// Comma-free reservoir tag used in CSV cells.
fn reservoir_label(kind: &ReservoirKind) -> String {
    match kind {
        ReservoirKind::Identity => "identity".into(),
        ReservoirKind::Ising { j, bx, bz, t } => format!("ising_j{j}_bx{bx}_bz{bz}_t{t}"),
        ReservoirKind::Haar { seed } => format!("haar_s{seed}"),
        ReservoirKind::LayeredRandom { layers, seed } => format!("layered{layers}_s{seed}"),
    }
}

fn sweep_line(r: &SweepRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        r.experiment,
        r.n_a,
        r.n_h,
        r.depth,
        fmt_float(r.noise_p),
        r.seed,
        r.n_samples,
        r.statistic,
        fmt_float(r.value),
        fmt_float(r.stderr),
        fmt_float(r.bound),
        fmt_verdict(r.satisfied)
    )
}

/// Validates the config, runs the experiment, and writes both artifacts.
pub fn run(config: &ExperimentConfig, out_dir: &Path) -> Result<RunArtifacts> {
    config.validate()?;
    let started = Instant::now();
    let (header, rows) = dispatch(config)?;
    let wall = started.elapsed().as_secs_f64();

    fs::create_dir_all(out_dir)?;
    let stem = config.artifact_stem();
    let csv_path = out_dir.join(format!("{stem}.csv"));
    let mut csv = String::with_capacity(64 * (rows.len() + 1));
    csv.push_str(&header);
    csv.push('\n');
    for row in &rows {
        csv.push_str(row);
        csv.push('\n');
    }
    fs::write(&csv_path, csv)?;

    let manifest = json!({
        "config": config,
        "versions": { "qelm": env!("CARGO_PKG_VERSION"), "csv_schema": CSV_SCHEMA_VERSION },
        "seed": config.seed(),
        "wall_time_seconds": wall,
    });
    let manifest_path = out_dir.join(format!("{stem}_manifest.json"));
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    fs::write(&manifest_path, text)?;

    Ok(RunArtifacts {
        csv_path,
        manifest_path,
        rows: rows.len(),
    })
}

/// Extracts the embedded config from manifest JSON text.
pub fn manifest_config(manifest_text: &str) -> Result<ExperimentConfig> {
    let value: serde_json::Value = serde_json::from_str(manifest_text)
        .map_err(|e| Error::Config(format!("manifest is not JSON: {e}")))?;
    let cfg = value
        .get("config")
        .ok_or_else(|| Error::Config("manifest lacks a config field".into()))?;
    ExperimentConfig::from_value(cfg.clone())
}

fn dispatch(config: &ExperimentConfig) -> Result<(String, Vec<String>)> {
    match config {
        ExperimentConfig::Spectrum(c) => run_spectrum(c),
        ExperimentConfig::Richness(c) => run_richness(c),
        ExperimentConfig::Train(c) => run_train(c),
        ExperimentConfig::Expressivity(c) => run_expressivity(c),
        ExperimentConfig::Concentration(c) => run_concentration(c),
        ExperimentConfig::Haarstats(c) => run_haarstats(c),
        ExperimentConfig::Hypothesis(c) => run_hypothesis(c),
        ExperimentConfig::Surrogate(c) => run_surrogate(c),
    }
}

fn run_spectrum(c: &SpectrumConfig) -> Result<(String, Vec<String>)> {
    let enc = EncodingSpec::new(c.encoding.clone(), c.n_a);
    let res = ReservoirSpec::new(c.reservoir.clone(), c.n_a + c.n_h);
    let u_r = res.realize()?;
    let rho0 = DensityMatrix::plus(c.n_a);
    let obs: PauliString = c.observable.parse()?;
    let direct = spectrum_direct_pauli(&rho0, &enc, &u_r, &obs)?;

    let dft = if c.dft_check {
        let omega = FrequencySet::from_encoding(&enc)?;
        let dense = obs.matrix();
        let readout = |x: f64| expectation_at(&rho0, &enc, &u_r, &dense, x);
        Some(spectrum_dft(readout, omega.omega_max().round() as usize))
    } else {
        None
    };

    let rows = direct
        .entries()
        .iter()
        .map(|&(w, a)| {
            let dev = dft
                .as_ref()
                .map(|d| (d.coeff(w) - a).norm())
                .unwrap_or(f64::NAN);
            format!(
                "{},{},{},{},{}",
                fmt_float(w),
                fmt_float(a.re),
                fmt_float(a.im),
                fmt_float(a.norm()),
                fmt_float(dev)
            )
        })
        .collect();
    Ok(("frequency,coeff_re,coeff_im,coeff_abs,dft_dev".into(), rows))
}

fn run_richness(c: &RichnessConfig) -> Result<(String, Vec<String>)> {
    let mut rows = Vec::new();
    for &n_a in &c.n_a_values {
        let enc = EncodingSpec::new(c.encoding.clone(), n_a);
        let rho0 = DensityMatrix::plus(n_a);
        let omega = FrequencySet::from_encoding(&enc)?.len();
        for kind in &c.reservoirs {
            let u_r = ReservoirSpec::new(kind.clone(), n_a + c.n_h).realize()?;
            let (raw, normalized) = richness(&enc, &u_r, &rho0, c.tol)?;
            rows.push(format!(
                "{},{},{},{},{},{}",
                n_a,
                c.n_h,
                reservoir_label(kind),
                omega,
                fmt_float(raw),
                fmt_float(normalized)
            ));
        }
    }
    Ok(("n_a,n_h,reservoir,omega,raw,normalized".into(), rows))
}

fn run_train(c: &TrainConfig) -> Result<(String, Vec<String>)> {
    let enc = EncodingSpec::new(c.encoding.clone(), c.n_a);
    let res = ReservoirSpec::new(c.reservoir.clone(), c.n_a + c.n_h);
    let target = BandLimitedTarget::new(c.target_k, c.seed);
    let train_data = target.sample_equidistant(c.n_train, TAU);
    let test_data: Vec<(f64, f64)> = (0..c.n_test)
        .map(|l| {
            let x = TAU * (l as f64 + 0.5) / c.n_test as f64;
            (x, target.eval(x))
        })
        .collect();

    let mut rows = Vec::new();
    for &m in &c.m_values {
        let mut model = QelmModel::with_seed(enc.clone(), res.clone(), m, c.seed)?;
        model.train(&train_data, c.lambda)?;
        let pred_train: Vec<f64> = train_data.iter().map(|&(x, _)| model.predict(x)).collect();
        let ys_train: Vec<f64> = train_data.iter().map(|p| p.1).collect();
        let pred_test: Vec<f64> = test_data.iter().map(|&(x, _)| model.predict(x)).collect();
        let ys_test: Vec<f64> = test_data.iter().map(|p| p.1).collect();
        rows.push(format!(
            "{},{},{}",
            m,
            fmt_float(r2_score(&pred_train, &ys_train)?),
            fmt_float(r2_score(&pred_test, &ys_test)?)
        ));
    }
    Ok(("m,r2_train,r2_test".into(), rows))
}

/// Draws `m` distinct non-identity Pauli strings in a reproducible order.
fn distinct_paulis(n: usize, m: usize, stream: &mut SeedStream) -> Vec<PauliString> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let p = PauliString::random_non_identity(n, stream);
        if seen.insert(p.to_string()) {
            out.push(p);
        }
    }
    out
}

fn run_expressivity(c: &ExpressivityConfig) -> Result<(String, Vec<String>)> {
    let n = c.n_a + c.n_h;
    let enc = EncodingSpec::new(c.encoding.clone(), c.n_a);
    let u_r = ReservoirSpec::new(c.reservoir.clone(), n).realize()?;
    let rho0 = DensityMatrix::plus(c.n_a);

    let m_max = *c.m_values.iter().max().expect("validated nonempty");
    let mut stream = SeedStream::new(c.seed).substream("observables", 0);
    let paulis = distinct_paulis(n, m_max, &mut stream);
    let spectra: Vec<FourierSpectrum> = paulis
        .iter()
        .map(|p| spectrum_direct_pauli(&rho0, &enc, &u_r, p))
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    for &m in &c.m_values {
        let rep = expressivity_report(&spectra[..m], n)?;
        rows.push(format!(
            "{},{},{},{},{},{}",
            m,
            rep.omega_count,
            rep.pauli_budget,
            rep.bound,
            rep.rank,
            rep.saturated
        ));
    }
    Ok(("m,omega,pauli_budget,bound,rank,saturated".into(), rows))
}

fn run_concentration(c: &ConcentrationConfig) -> Result<(String, Vec<String>)> {
    match c {
        ConcentrationConfig::Encoding(v) => {
            let rows = var_over_inputs(&v.to_sweep(SweepQuantity::InputVariance))?;
            Ok((SWEEP_HEADER.into(), rows.iter().map(sweep_line).collect()))
        }
        ConcentrationConfig::Reservoir(v) => {
            let rows = var_over_reservoirs(&v.to_sweep(SweepQuantity::ReservoirVariance))?;
            Ok((SWEEP_HEADER.into(), rows.iter().map(sweep_line).collect()))
        }
        ConcentrationConfig::Entanglement(e) => {
            let reports = entanglement_bound_trials(e.n_trials, e.seed)?;
            let rows = reports
                .iter()
                .enumerate()
                .map(|(t, r)| {
                    format!(
                        "{},{},{},{},{}",
                        t,
                        r.label,
                        fmt_float(r.lhs),
                        fmt_float(r.rhs),
                        fmt_verdict(r.satisfied)
                    )
                })
                .collect();
            Ok(("trial,label,lhs,rhs,satisfied".into(), rows))
        }
        ConcentrationConfig::Global(g) => run_global(g),
        ConcentrationConfig::Noise(z) => {
            let rows = noise_concentration_experiment(
                z.n_a,
                z.n_h,
                &z.depths,
                &z.noise_levels,
                z.n_inputs,
                z.seed,
            )?;
            Ok((SWEEP_HEADER.into(), rows.iter().map(sweep_line).collect()))
        }
    }
}

fn run_global(g: &GlobalConfig) -> Result<(String, Vec<String>)> {
    let rep = global_measurement_experiment(g.n_a, g.n_h, g.depth, g.n_samples, g.seed)?;
    let mk = |statistic: &str, value: f64, stderr: f64, bound: f64, satisfied: Option<bool>| {
        sweep_line(&SweepRow {
            experiment: SweepQuantity::GlobalMeasurement.tag().into(),
            n_a: g.n_a,
            n_h: g.n_h,
            depth: g.depth,
            noise_p: 0.0,
            seed: g.seed,
            n_samples: g.n_samples,
            statistic: statistic.into(),
            value,
            stderr,
            bound,
            satisfied,
        })
    };
    let mut rows = vec![
        mk(
            "second_moment",
            rep.second_moment,
            rep.second_moment_se,
            rep.bound.rhs,
            rep.bound.satisfied,
        ),
        mk("variance", rep.variance, f64::NAN, f64::NAN, None),
        mk("alpha", rep.alpha, f64::NAN, f64::NAN, None),
        mk(
            "haar_second_moment",
            rep.haar_second_moment,
            f64::NAN,
            f64::NAN,
            None,
        ),
    ];
    for (k, &eps) in rep.per_qubit_eps.iter().enumerate() {
        rows.push(mk(&format!("epsilon_qubit_{k}"), eps, f64::NAN, f64::NAN, None));
    }
    Ok((SWEEP_HEADER.into(), rows))
}

fn run_haarstats(c: &HaarStatsConfig) -> Result<(String, Vec<String>)> {
    let obs: PauliString = c.observable.parse()?;
    let rep = haar_coefficient_stats(c.n_a, c.n_h, &obs, c.n_samples, c.seed)?;
    let line = |statistic: &str, value: f64, expected: f64, stderr: f64| {
        format!(
            "{},{},{},{}",
            statistic,
            fmt_float(value),
            fmt_float(expected),
            fmt_float(stderr)
        )
    };
    let rows = vec![
        line("mean_offdiag_re", rep.mean_offdiag.0, 0.0, rep.mean_offdiag_se),
        line("mean_offdiag_im", rep.mean_offdiag.1, 0.0, rep.mean_offdiag_se),
        line("mean_diag", rep.mean_diag, 0.0, rep.mean_diag_se),
        line("var_offdiag", rep.var_offdiag, rep.var_offdiag_expected, f64::NAN),
        line("var_diag", rep.var_diag, rep.var_diag_expected, f64::NAN),
        line("cov_diag", rep.cov_diag, rep.cov_diag_expected, f64::NAN),
        line("cov_distinct_re", rep.cov_distinct.0, 0.0, rep.cov_distinct_se),
        line("cov_distinct_im", rep.cov_distinct.1, 0.0, rep.cov_distinct_se),
    ];
    Ok(("statistic,value,expected,stderr".into(), rows))
}

fn run_hypothesis(c: &HypothesisConfig) -> Result<(String, Vec<String>)> {
    let mut rows = Vec::new();
    for &n in &c.n_samples_values {
        let mut derive = SeedStream::new(c.seed).substream("hypothesis-sweep", n as u64);
        let row_seed = derive.below(1usize << 48) as u64;
        let rep = hypothesis_test_sim(c.p_true, n, c.n_trials, row_seed)?;
        rows.push(format!(
            "{},{},{},{}",
            n,
            fmt_float(rep.success_rate),
            fmt_float(rep.success_se),
            fmt_float(rep.single_sample_success)
        ));
    }
    Ok(("n_samples,success_rate,stderr,single_sample_pred".into(), rows))
}

fn run_surrogate(c: &SurrogateConfig) -> Result<(String, Vec<String>)> {
    let enc = EncodingSpec::new(c.encoding.clone(), c.n_a);
    let res = ReservoirSpec::new(c.reservoir.clone(), c.n_a + c.n_h);
    let omega = FrequencySet::from_encoding(&enc)?;
    if c.n_fit < omega.len() {
        return Err(Error::Config(format!(
            "n_fit = {} cannot identify all {} frequencies; raise it to at least |Omega|",
            c.n_fit,
            omega.len()
        )));
    }

    let mut model = QelmModel::with_seed(enc, res, c.m, c.seed)?;
    let target = BandLimitedTarget::new(c.target_k, c.seed);
    model.train(&target.sample_equidistant(c.n_train, TAU), c.lambda)?;

    // The surrogates fit the machine's own readout, not the target.
    let fit: Vec<(f64, f64)> = (0..c.n_fit)
        .map(|l| {
            let x = TAU * l as f64 / c.n_fit as f64;
            (x, model.predict(x))
        })
        .collect();
    let full = full_fourier_surrogate(&omega, &fit, c.lambda)?;

    let spectrum = model.spectrum()?;
    let weights: Vec<(f64, f64)> = spectrum.entries().iter().map(|&(w, a)| (w, a.norm())).collect();
    let k = c.rff_k.unwrap_or_else(|| (omega.len() / 5).max(1));
    let mut rff_stream = SeedStream::new(c.seed).substream("rff-frequencies", 0);
    let rff = rff_surrogate(&weights, k, &fit, c.lambda, &mut rff_stream)?;

    let mut eval_stream = SeedStream::new(c.seed).substream("surrogate-eval", 0);
    let xs: Vec<f64> = (0..c.n_eval).map(|_| eval_stream.uniform_in(0.0, TAU)).collect();
    let mut rows = Vec::new();
    for (name, surrogate) in [("full", &full), ("rff", &rff)] {
        let mut sup = 0.0f64;
        let mut sq = 0.0f64;
        for &x in &xs {
            let err = (surrogate.predict(x) - model.predict(x)).abs();
            sup = sup.max(err);
            sq += err * err;
        }
        let rmse = (sq / xs.len() as f64).sqrt();
        rows.push(format!(
            "{},{},{},{}",
            name,
            surrogate.theta.len(),
            fmt_float(sup),
            fmt_float(rmse)
        ));
    }
    Ok(("surrogate,features,sup_err,rmse".into(), rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_in_tempdir(cfg: &ExperimentConfig) -> (tempfile::TempDir, RunArtifacts) {
        let dir = tempfile::tempdir().unwrap();
        let arts = run(cfg, dir.path()).unwrap();
        (dir, arts)
    }

    #[test]
    fn spectrum_preset_writes_nine_frequency_rows() {
        let cfg = ExperimentConfig::preset("spectrum").unwrap();
        let (_dir, arts) = run_in_tempdir(&cfg);
        // Exponential encoding at n_a = 2 spans exactly 9 frequencies.
        assert_eq!(arts.rows, 9);
        let text = fs::read_to_string(&arts.csv_path).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "frequency,coeff_re,coeff_im,coeff_abs,dft_dev"
        );
        for line in lines {
            let dev: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
            assert!(dev < 1e-10, "direct and DFT spectra disagree: {line}");
        }
    }

    #[test]
    fn identical_configs_reproduce_identical_bytes() {
        let cfg = ExperimentConfig::preset("haarstats").unwrap();
        let (_d1, a1) = run_in_tempdir(&cfg);
        let (_d2, a2) = run_in_tempdir(&cfg);
        let b1 = fs::read(&a1.csv_path).unwrap();
        let b2 = fs::read(&a2.csv_path).unwrap();
        assert_eq!(b1, b2);
    }

    #[test]
    fn manifest_embeds_a_reusable_config() {
        let cfg = ExperimentConfig::preset("hypothesis").unwrap();
        let (_d1, a1) = run_in_tempdir(&cfg);
        let manifest = fs::read_to_string(&a1.manifest_path).unwrap();
        let recovered = manifest_config(&manifest).unwrap();
        let (_d2, a2) = run_in_tempdir(&recovered);
        assert_eq!(
            fs::read(&a1.csv_path).unwrap(),
            fs::read(&a2.csv_path).unwrap()
        );
        let v: serde_json::Value = serde_json::from_str(&manifest).unwrap();
        assert_eq!(v["seed"], 7);
        assert!(v["versions"]["qelm"].is_string());
        assert!(v["wall_time_seconds"].as_f64().unwrap() >= 0.0);
    }

    #[test]
    fn budget_violation_refused_before_any_output() {
        let mut cfg = ExperimentConfig::preset("spectrum").unwrap();
        if let ExperimentConfig::Spectrum(ref mut c) = cfg {
            c.n_a = 20;
            c.observable = "Z".repeat(22);
        }
        let dir = tempfile::tempdir().unwrap();
        match run(&cfg, dir.path()) {
            Err(Error::Budget(_)) => {}
            other => panic!("expected budget refusal, got {other:?}"),
        }
        assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
    }

    #[test]
    fn train_preset_r2_improves_with_observable_count() {
        let cfg = ExperimentConfig::preset("train").unwrap();
        let (_dir, arts) = run_in_tempdir(&cfg);
        let text = fs::read_to_string(&arts.csv_path).unwrap();
        let r2: Vec<f64> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
            .collect();
        assert_eq!(r2.len(), 5);
        assert!(
            r2.last().unwrap() > r2.first().unwrap(),
            "test R2 should improve from M=2 to M=12: {r2:?}"
        );
    }

    #[test]
    fn expressivity_preset_reports_monotone_saturating_rank() {
        let cfg = ExperimentConfig::preset("expressivity").unwrap();
        let (_dir, arts) = run_in_tempdir(&cfg);
        let text = fs::read_to_string(&arts.csv_path).unwrap();
        let mut prev = 0usize;
        for line in text.lines().skip(1) {
            let cells: Vec<&str> = line.split(',').collect();
            let m: usize = cells[0].parse().unwrap();
            let bound: usize = cells[3].parse().unwrap();
            let rank: usize = cells[4].parse().unwrap();
            assert!(rank <= bound, "rank exceeds its ceiling: {line}");
            assert!(rank >= prev, "rank dropped as M grew: {line}");
            assert_eq!(bound, m.min(9), "9 frequencies cap the bound: {line}");
            prev = rank;
        }
    }

    #[test]
    fn concentration_kinds_emit_their_schemas() {
        let noise = ExperimentConfig::from_json(
            r#"{"experiment":"concentration","kind":"noise","n_a":2,"n_h":1,
                "depths":[1,3],"noise_levels":[0.1],"n_inputs":6,"seed":3}"#,
        )
        .unwrap();
        let (_dir, arts) = run_in_tempdir(&noise);
        let text = fs::read_to_string(&arts.csv_path).unwrap();
        assert!(text.starts_with(SWEEP_HEADER));
        // 1 noise level x 2 depths x 3 statistics.
        assert_eq!(arts.rows, 6);

        let ent = ExperimentConfig::from_json(
            r#"{"experiment":"concentration","kind":"entanglement","n_trials":5,"seed":3}"#,
        )
        .unwrap();
        let (_dir, arts) = run_in_tempdir(&ent);
        let text = fs::read_to_string(&arts.csv_path).unwrap();
        assert!(text.starts_with("trial,label,lhs,rhs,satisfied"));
        assert_eq!(arts.rows, 5);
        for line in text.lines().skip(1) {
            assert!(line.ends_with(",true"), "bound violated in {line}");
        }

        let global = ExperimentConfig::from_json(
            r#"{"experiment":"concentration","kind":"global","n_a":2,"n_h":0,
                "depth":0,"n_samples":150,"seed":5}"#,
        )
        .unwrap();
        let (_dir, arts) = run_in_tempdir(&global);
        let text = fs::read_to_string(&arts.csv_path).unwrap();
        // second_moment, variance, alpha, haar_second_moment, two epsilons.
        assert_eq!(arts.rows, 6);
        let second = text.lines().nth(1).unwrap();
        assert!(second.contains("second_moment"));
        assert!(second.ends_with(",true"), "bound row: {second}");
    }

    #[test]
    fn surrogate_preset_full_beats_rff() {
        let cfg = ExperimentConfig::preset("surrogate").unwrap();
        let (_dir, arts) = run_in_tempdir(&cfg);
        let text = fs::read_to_string(&arts.csv_path).unwrap();
        let mut cells = text.lines().skip(1).map(|l| {
            let v: Vec<&str> = l.split(',').collect();
            (
                v[0].to_string(),
                v[2].parse::<f64>().unwrap(),
                v[3].parse::<f64>().unwrap(),
            )
        });
        let (full_name, full_sup, full_rmse) = cells.next().unwrap();
        let (rff_name, _rff_sup, rff_rmse) = cells.next().unwrap();
        assert_eq!(full_name, "full");
        assert_eq!(rff_name, "rff");
        assert!(full_sup < 1e-6, "full surrogate sup error {full_sup}");
        assert!(rff_rmse > full_rmse, "reduced surrogate should be worse");
    }

    #[test]
    fn richness_preset_identity_far_below_haar() {
        let cfg = ExperimentConfig::preset("richness").unwrap();
        let (_dir, arts) = run_in_tempdir(&cfg);
        let text = fs::read_to_string(&arts.csv_path).unwrap();
        // Rows come n_a-major, reservoir-minor: identity then haar per n_a.
        let norm: Vec<f64> = text
            .lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(norm.len(), 4);
        assert!(norm[0] < norm[1], "identity should trail haar at n_a=2");
        assert!(norm[2] < norm[3], "identity should trail haar at n_a=3");
    }
}
