//! Preset experiments: reproducible desk-scale pipelines, one per headline
//! result, each writing a run directory with manifest, reports and ledgers.

use super::checkpoint::{write_checkpoint_2d, write_checkpoint_axi};
use super::config::{canonical_2d, canonical_axi};
use super::manifest::RunManifest;
use super::report::{CriterionResult, Report};
use crate::axisym::{self, AxiRunConfig};
use crate::error::{Error, Result};
use crate::gronwall::{self, GronwallParams};
use crate::solver2d::{self, InitialData, RunConfig};
use crate::weights::{self, CubeFamily, WeightForm, WeightSpec};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Clone, Copy)]
pub struct ExperimentPreset {
    pub name: &'static str,
    pub description: &'static str,
    pub criteria: &'static [&'static str],
}

/// Registered criterion names a preset may reference.
pub const CRITERIA_REGISTRY: &[&str] = &[
    "census-iff",
    "adapted-table",
    "pc-uniformity",
    "continuity-at-zero",
    "gronwall-3a",
    "gronwall-first-crossing",
    "vorticity-envelope-stability",
    "lady-monotone",
    "lady-initial-bound",
    "axis-regularity",
    "coe1-finite",
    "coe1-stability",
    "pair-hypotheses",
];

pub const PRESETS: &[ExperimentPreset] = &[
    ExperimentPreset {
        name: "thm1-energy",
        description: "weighted energy inequality: fitted C_PHI uniform over the mollifier ladder and grid refinement, strong continuity at t=0",
        criteria: &["pc-uniformity", "continuity-at-zero", "gronwall-3a"],
    },
    ExperimentPreset {
        name: "thm2-vorticity-2d",
        description: "2D vorticity envelope: fitted constant finite and stable under dt halving",
        criteria: &["vorticity-envelope-stability"],
    },
    ExperimentPreset {
        name: "thm3-axisym-local",
        description: "axisymmetric vortex ring: Ladyzhenskaya monotonicity, axis regularity, finite enstrophy constant",
        criteria: &["lady-monotone", "lady-initial-bound", "axis-regularity", "coe1-finite"],
    },
    ExperimentPreset {
        name: "thm4-weight-pair",
        description: "weight-pair hypotheses plus the weighted enstrophy ledger stable under dt halving",
        criteria: &["pair-hypotheses", "coe1-stability"],
    },
    ExperimentPreset {
        name: "lemma5-sweep",
        description: "Gronwall envelope sweep: 3A bound and first-crossing inequality over the parameter grid",
        criteria: &["gronwall-3a", "gronwall-first-crossing"],
    },
    ExperimentPreset {
        name: "weights-census",
        description: "Muckenhoupt census over the gamma x q x d grid and the adapted-weight example table",
        criteria: &["census-iff", "adapted-table"],
    },
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|p| p.name).collect()
}

#[derive(Debug)]
pub struct PresetOutcome {
    pub report: Report,
    pub dir: PathBuf,
}

/// Execute a preset, writing artifacts under a fresh timestamped directory
/// inside `output_root`. Returns the aggregated report; callers map
/// `report.pass` onto the exit status.
pub fn run_preset(name: &str, output_root: &Path, seed: Option<u64>) -> Result<PresetOutcome> {
    let preset = PRESETS
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
    let dir = fresh_run_dir(output_root, name)?;
    let seed = seed.unwrap_or(42);
    let criteria = match preset.name {
        "thm1-energy" => thm1_energy(&dir, seed)?,
        "thm2-vorticity-2d" => thm2_vorticity(&dir, seed)?,
        "thm3-axisym-local" => thm3_axisym(&dir)?,
        "thm4-weight-pair" => thm4_weight_pair(&dir)?,
        "lemma5-sweep" => lemma5_sweep()?,
        "weights-census" => weights_census()?,
        _ => unreachable!("preset table covers all names"),
    };
    let report = Report::new(name, criteria);
    std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(&report)? + "\n")?;
    Ok(PresetOutcome { report, dir })
}

fn fresh_run_dir(root: &Path, name: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(root)?;
    let ms = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0);
    let mut k = 0u32;
    loop {
        let candidate = if k == 0 {
            root.join(format!("{name}-{ms}"))
        } else {
            root.join(format!("{name}-{ms}-{k}"))
        };
        if !candidate.exists() {
            std::fs::create_dir(&candidate)?;
            return Ok(candidate);
        }
        k += 1;
    }
}

fn spread_ok(values: &[f64], tolerance: f64) -> bool {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    if !(mean > 0.0) {
        // all-zero fits are uniform by convention
        return values.iter().all(|v| *v == 0.0);
    }
    values.iter().all(|v| (v - mean).abs() <= tolerance * mean)
}

fn run_2d_to_dir(dir: &Path, tag: &str, config: &RunConfig) -> Result<solver2d::RunOutput> {
    let canonical = canonical_2d(config);
    let mut manifest = RunManifest::start(&canonical, config.seed);
    let out = solver2d::run(config)?;
    let ledger_path = dir.join(format!("{tag}-ledger.csv"));
    let ckpt_path = dir.join(format!("{tag}-final.bin"));
    let cfg_path = dir.join(format!("{tag}-config.txt"));
    out.ledger.write_csv(std::io::BufWriter::new(std::fs::File::create(&ledger_path)?))?;
    write_checkpoint_2d(&ckpt_path, &out.state)?;
    std::fs::write(&cfg_path, &canonical)?;
    manifest.finish(vec![
        ledger_path.display().to_string(),
        ckpt_path.display().to_string(),
        cfg_path.display().to_string(),
    ]);
    std::fs::write(dir.join(format!("{tag}-manifest.json")), serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(out)
}

fn run_axi_to_dir(dir: &Path, tag: &str, config: &AxiRunConfig) -> Result<axisym::AxiRunOutput> {
    let canonical = canonical_axi(config);
    let mut manifest = RunManifest::start(&canonical, 0);
    let out = axisym::run_axi(config)?;
    let ledger_path = dir.join(format!("{tag}-ledger.csv"));
    let ckpt_path = dir.join(format!("{tag}-final.bin"));
    let cfg_path = dir.join(format!("{tag}-config.txt"));
    out.ledger.write_csv(std::io::BufWriter::new(std::fs::File::create(&ledger_path)?))?;
    write_checkpoint_axi(&ckpt_path, &out.state)?;
    std::fs::write(&cfg_path, &canonical)?;
    manifest.finish(vec![
        ledger_path.display().to_string(),
        ckpt_path.display().to_string(),
        cfg_path.display().to_string(),
    ]);
    std::fs::write(dir.join(format!("{tag}-manifest.json")), serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(out)
}

fn thm1_energy(dir: &Path, seed: u64) -> Result<Vec<CriterionResult>> {
    let base = RunConfig {
        init: InitialData::random_default(),
        t_end: 0.25,
        cadence: 10,
        seed,
        ..Default::default()
    };
    let cases: Vec<(String, RunConfig)> = [(64usize, 0.4f64), (64, 0.2), (64, 0.1), (128, 0.4), (128, 0.2), (128, 0.1)]
        .iter()
        .map(|&(n, eps)| {
            (format!("n{n}-eps{eps}"), RunConfig { n, epsilon: eps, ..base.clone() })
        })
        .collect();
    let outputs: Vec<(String, solver2d::RunOutput)> = cases
        .par_iter()
        .map(|(tag, cfg)| run_2d_to_dir(dir, tag, cfg).map(|o| (tag.clone(), o)))
        .collect::<Result<Vec<_>>>()?;

    let mut cs = Vec::new();
    for (tag, out) in &outputs {
        let rep = solver2d::verify_pc(&out.ledger, 2)?;
        cs.push((tag.clone(), rep.c_phi_min));
    }
    let values: Vec<f64> = cs.iter().map(|c| c.1).collect();
    let uniform = spread_ok(&values, 0.20);
    let mut criteria = vec![CriterionResult::new(
        "pc-uniformity",
        uniform,
        format!("fitted C_PHI per run: {cs:?}"),
    )];

    // the continuity diagnostic wants dense rows near t = 0
    let dense = RunConfig { t_end: 0.02, cadence: 1, epsilon: 0.2, ..base.clone() };
    let cont_out = run_2d_to_dir(dir, "continuity", &dense)?;
    let cont = solver2d::continuity_at_zero(&cont_out.ledger)?;
    criteria.push(CriterionResult::new(
        "continuity-at-zero",
        cont.pass,
        format!("relative gap {:.3e}", cont.relative_gap),
    ));

    // connect the pc inequality to the Gronwall machinery: b = d = 2
    let ledger = &outputs[1].1.ledger;
    let fit = gronwall::fit_envelope(&ledger.times(), &ledger.e_phi_u(), 2.0)?;
    criteria.push(CriterionResult::new(
        "gronwall-3a",
        fit.envelope_ok,
        format!("A = {:.4e}, fitted B = {:.4e}, T0 = {:.4e}, max ratio {:.3}", fit.a_fit, fit.b_fit, fit.t0, fit.max_ratio),
    ));
    Ok(criteria)
}

fn thm2_vorticity(dir: &Path, seed: u64) -> Result<Vec<CriterionResult>> {
    let base = RunConfig {
        init: InitialData::random_default(),
        t_end: 0.25,
        cadence: 10,
        seed,
        epsilon: 0.0,
        ..Default::default()
    };
    let halved = RunConfig { dt: base.dt / 2.0, cadence: base.cadence * 2, ..base.clone() };
    let (a, b) = rayon::join(
        || run_2d_to_dir(dir, "dt-full", &base),
        || run_2d_to_dir(dir, "dt-half", &halved),
    );
    let (a, b) = (a?, b?);
    let ca = solver2d::verify_vorticity_2d(&a.ledger)?.c_min;
    let cb = solver2d::verify_vorticity_2d(&b.ledger)?.c_min;
    let stable = ca.is_finite() && cb.is_finite() && spread_ok(&[ca, cb], 0.10);
    Ok(vec![CriterionResult::new(
        "vorticity-envelope-stability",
        stable,
        format!("C(dt) = {ca:.4}, C(dt/2) = {cb:.4}"),
    )])
}

fn thm3_axisym(dir: &Path) -> Result<Vec<CriterionResult>> {
    let config = AxiRunConfig { n_r: 128, n_z: 128, dt: 1e-3, t_end: 0.5, cadence: 20, ..Default::default() };
    let out = run_axi_to_dir(dir, "ring128", &config)?;
    let monitor = axisym::ladyzhenskaya_monitor(&out.ledger, out.initial_grad_omega_sq)?;
    let mut criteria = vec![
        CriterionResult::new(
            "lady-monotone",
            monitor.monotone,
            format!("max relative uptick {:.3e}", monitor.max_uptick),
        ),
        CriterionResult::new(
            "lady-initial-bound",
            monitor.initial_bound_ok,
            format!(
                "2*pi*lady_q(0) = {:.6e} <= grad bound {:.6e}",
                2.0 * std::f64::consts::PI * out.ledger.rows[0].lady_q,
                out.initial_grad_omega_sq
            ),
        ),
    ];
    // axis regularity: eta at the first radial node stays bounded
    let eta_axis_max = (0..config.n_z).map(|j| out.state.eta[[0, j]].abs()).fold(0.0, f64::max);
    let eta0_max = out.ledger.rows[0].lady_q.sqrt(); // scale reference
    criteria.push(CriterionResult::new(
        "axis-regularity",
        eta_axis_max.is_finite() && eta_axis_max < 1e3 * (1.0 + eta0_max),
        format!("max |eta| at the first radial node: {eta_axis_max:.3e}"),
    ));
    let coe1 = axisym::verify_coe1(&out.ledger)?;
    criteria.push(CriterionResult::new(
        "coe1-finite",
        coe1.c_min.is_finite(),
        format!("fitted C' = {:.4}", coe1.c_min),
    ));
    Ok(criteria)
}

fn thm4_weight_pair(dir: &Path) -> Result<Vec<CriterionResult>> {
    let phi = WeightSpec::cylindrical(1.0, WeightForm::OnePlusAbs).unwrap();
    let psi = WeightSpec::pair_member(1.0, WeightForm::OnePlusSqHalf).unwrap();
    let pair = weights::check_pair(&phi, &psi, &weights::pair_cloud())?;
    let mut criteria = vec![CriterionResult::new(
        "pair-hypotheses",
        pair.pass,
        format!(
            "domination={}, psi in A2: {}, grad C={:.3}, lap C={:.3}",
            pair.domination, pair.psi_a2, pair.c_grad, pair.c_lap
        ),
    )];

    let base = AxiRunConfig { n_r: 96, n_z: 96, dt: 1.5e-3, t_end: 0.4, cadence: 16, phi, psi, ..Default::default() };
    let halved = AxiRunConfig { dt: base.dt / 2.0, cadence: base.cadence * 2, ..base.clone() };
    let (a, b) = rayon::join(
        || run_axi_to_dir(dir, "dt-full", &base),
        || run_axi_to_dir(dir, "dt-half", &halved),
    );
    let (a, b) = (a?, b?);
    let ca = axisym::verify_coe1(&a.ledger)?.c_min;
    let cb = axisym::verify_coe1(&b.ledger)?.c_min;
    let stable = ca.is_finite() && cb.is_finite() && spread_ok(&[ca, cb], 0.25);
    criteria.push(CriterionResult::new(
        "coe1-stability",
        stable,
        format!("C'(dt) = {ca:.4}, C'(dt/2) = {cb:.4}"),
    ));
    Ok(criteria)
}

fn lemma5_sweep() -> Result<Vec<CriterionResult>> {
    let grid: Vec<GronwallParams> = {
        let mut g = Vec::new();
        for &a in &[0.1, 1.0, 10.0] {
            for &b_const in &[0.1, 1.0, 10.0] {
                for &exponent in &[1.0, 2.0, 3.0] {
                    g.push(GronwallParams::new(a, b_const, exponent, 1.0)?);
                }
            }
        }
        g
    };
    let reports: Vec<(GronwallParams, gronwall::EnvelopeReport)> = grid
        .par_iter()
        .map(|p| gronwall::verify_envelope(p, 100_000).map(|r| (*p, r)))
        .collect::<Result<Vec<_>>>()?;
    let envelope_ok = reports.iter().all(|(_, r)| r.pass);
    let crossing_ok = reports.iter().all(|(_, r)| r.crossing_inequality_ok);
    let worst = reports
        .iter()
        .map(|(_, r)| r.max_ratio)
        .fold(0.0, f64::max);
    let crossings = reports.iter().filter(|(_, r)| r.first_crossing.is_some()).count();
    Ok(vec![
        CriterionResult::new(
            "gronwall-3a",
            envelope_ok,
            format!("{} triples, worst max ratio on [0, T0]: {worst:.4}", reports.len()),
        ),
        CriterionResult::new(
            "gronwall-first-crossing",
            crossing_ok,
            format!("{crossings} trajectories reached 3A inside T1; all satisfied the crossing inequality"),
        ),
    ])
}

fn weights_census() -> Result<Vec<CriterionResult>> {
    let gammas = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0];
    let qs = [1.2, 1.5, 2.0];
    let cells: Vec<(f64, f64, usize)> = gammas
        .iter()
        .flat_map(|&g| qs.iter().flat_map(move |&q| [(g, q, 2usize), (g, q, 3usize)]))
        .collect();
    let results: Vec<((f64, f64, usize), bool, bool)> = cells
        .par_iter()
        .map(|&(gamma, q, dim)| {
            let spec = WeightSpec::radial(gamma, dim, WeightForm::OnePlusAbs)?;
            let cubes = CubeFamily::dyadic(dim)?;
            let est = weights::aq_estimate(&spec, q, &cubes)?;
            let expect = -(dim as f64) * (q - 1.0) < gamma && gamma < dim as f64;
            Ok(((gamma, q, dim), est.is_finite(), expect))
        })
        .collect::<Result<Vec<_>>>()?;
    let mismatches: Vec<String> = results
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|((g, q, d), got, want)| format!("(gamma={g}, q={q}, d={d}): finite={got}, expected {want}"))
        .collect();
    let mut criteria = vec![CriterionResult::new(
        "census-iff",
        mismatches.is_empty(),
        format!("{} cells checked; mismatches: {mismatches:?}", results.len()),
    )];

    let r_scan = weights::default_r_scan();
    let mut failures = Vec::new();
    let table: Vec<(WeightSpec, bool, &str)> = vec![
        (WeightSpec::radial(1.0, 2, WeightForm::OnePlusAbs)?, true, "radial d2 g=1"),
        (WeightSpec::radial(1.5, 2, WeightForm::OnePlusAbs)?, true, "radial d2 g=1.5"),
        (WeightSpec::radial(2.0, 2, WeightForm::OnePlusAbs)?, false, "radial d2 g=2"),
        (WeightSpec::radial(2.0, 3, WeightForm::OnePlusAbs)?, true, "radial d3 g=2"),
        (WeightSpec::radial(2.5, 3, WeightForm::OnePlusAbs)?, false, "radial d3 g=2.5"),
        (WeightSpec::cylindrical(1.5, WeightForm::OnePlusAbs)?, true, "cyl g=1.5"),
        (WeightSpec::cylindrical(2.0, WeightForm::OnePlusAbs)?, false, "cyl g=2"),
    ];
    for (spec, expect, label) in &table {
        let rep = weights::check_adapted(spec, &r_scan)?;
        if rep.adapted != *expect {
            failures.push(format!("{label}: adapted={}, expected {expect}", rep.adapted));
        }
    }
    criteria.push(CriterionResult::new(
        "adapted-table",
        failures.is_empty(),
        format!("{} example weights; failures: {failures:?}", table.len()),
    ));
    Ok(criteria)
}
