//! Command line front door: weight checks, solver runs, Gronwall fits and
//! preset experiments.

use clap::{Args, Parser, Subcommand};
use leraylab::harness::{self, CriterionResult};
use leraylab::weights::{self, AqEstimate, CubeFamily, WeightForm, WeightSpec};
use leraylab::{axisym, gronwall, solver2d};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "leraylab", version, about = "numerical laboratory for weighted Navier-Stokes energy estimates")]
struct Cli {
    /// Output root directory (default: $LERAYLAB_OUTPUT or ./runs)
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed override for runs and presets
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for sweeps (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weight-axiom checks and Muckenhoupt scans
    Weights {
        #[command(subcommand)]
        command: WeightsCmd,
    },
    /// Time-step a solver from a config file
    Simulate {
        #[command(subcommand)]
        command: SimulateCmd,
    },
    /// Gronwall envelope verification and ledger fits
    Gronwall {
        #[command(subcommand)]
        command: GronwallCmd,
    },
    /// Run a preset experiment (or list them)
    Preset {
        /// Preset name
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct WeightArgs {
    /// constant | radial | cylindrical | pair_member
    #[arg(long, default_value = "radial")]
    family: String,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// abs ((1+rho)^-gamma) | sq ((1+rho^2)^(-gamma/2))
    #[arg(long, default_value = "abs")]
    form: String,
}

impl WeightArgs {
    fn build(&self) -> Result<WeightSpec, leraylab::Error> {
        let form = match self.form.as_str() {
            "abs" => WeightForm::OnePlusAbs,
            "sq" => WeightForm::OnePlusSqHalf,
            other => return Err(leraylab::Error::config(format!("unknown form `{other}` (abs|sq)"))),
        };
        match self.family.as_str() {
            "constant" => WeightSpec::constant(self.dim),
            "radial" => WeightSpec::radial(self.gamma, self.dim, form),
            "cylindrical" => WeightSpec::cylindrical(self.gamma, form),
            "pair_member" => WeightSpec::pair_member(self.gamma, form),
            other => Err(leraylab::Error::config(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Subcommand)]
enum WeightsCmd {
    /// Check the adapted-weight axioms (H1)-(H4)
    Check {
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Scan the Muckenhoupt A_q quantity over a dyadic cube ladder
    Aq {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        /// number of dyadic scales (half sides 2^0 .. 2^(scales-1))
        #[arg(long, default_value_t = 11)]
        scales: usize,
    },
    /// Check the velocity/vorticity weight pair Phi = (1+r)^-gamma, Psi = (1+r^2)^(-delta/2)
    Pair {
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
    },
}

#[derive(Subcommand)]
enum SimulateCmd {
    /// Mollified 2D solver on the periodic box
    #[command(name = "2d")]
    TwoD {
        #[arg(long)]
        config: PathBuf,
    },
    /// Axisymmetric no-swirl vortex-ring solver
    Axisym {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Subcommand)]
enum GronwallCmd {
    /// Verify the 3A envelope for one parameter set
    Verify {
        #[arg(long = "A")]
        a: f64,
        #[arg(long = "B")]
        b_const: f64,
        #[arg(long = "b")]
        exponent: f64,
        #[arg(long = "T1")]
        t1: f64,
        #[arg(long, default_value_t = 100_000)]
        steps: usize,
    },
    /// Fit (A, B) on a ledger CSV and check the envelope
    Fit {
        #[arg(long)]
        ledger: PathBuf,
        #[arg(long = "b")]
        exponent: f64,
    },
}

fn output_root(cli: &Cli) -> PathBuf {
    cli.output
        .clone()
        .or_else(|| std::env::var(harness::OUTPUT_ENV).ok().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("runs"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                leraylab::Error::UnknownPreset(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, leraylab::Error> {
    match &cli.command {
        Command::Weights { command } => weights_cmd(command),
        Command::Simulate { command } => simulate_cmd(cli, command),
        Command::Gronwall { command } => gronwall_cmd(command),
        Command::Preset { name, list } => preset_cmd(cli, name.as_deref(), *list),
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn aq_json(est: &AqEstimate) -> serde_json::Value {
    match est {
        AqEstimate::Finite(v) => json!(v),
        AqEstimate::Divergent { .. } => json!("divergent"),
        AqEstimate::Overflow => json!("overflow"),
    }
}

fn weights_cmd(cmd: &WeightsCmd) -> Result<ExitCode, leraylab::Error> {
    match cmd {
        WeightsCmd::Check { weight } => {
            let spec = weight.build()?;
            let rep = weights::check_adapted(&spec, &weights::default_r_scan())?;
            let records = json!([
                { "axiom": "H1", "pass": rep.h1, "constant": 1.0, "evidence_scale": 1024.0 },
                { "axiom": "H2", "pass": rep.h2.pass, "constant": rep.h2.c1_est, "evidence_scale": 1024.0 },
                { "axiom": "H3", "pass": rep.h3_witness.is_some(), "constant": rep.h3_witness, "evidence_scale": 1024.0 },
                { "axiom": "H4", "pass": rep.h4.pass, "constant": rep.h4.c2_est, "evidence_scale": 1024.0 },
                { "axiom": "adapted", "pass": rep.adapted, "constant": null, "evidence_scale": null },
            ]);
            print_json(&records);
            Ok(if rep.adapted { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        WeightsCmd::Aq { weight, q, scales } => {
            let spec = weight.build()?;
            let cubes = CubeFamily::dyadic_with_scales(spec.effective_dim(), *scales)?;
            let est = weights::aq_estimate(&spec, *q, &cubes)?;
            let top_scale = cubes.half_sides.last().copied().unwrap_or(1.0);
            print_json(&json!([{
                "axiom": format!("A_{q}"),
                "pass": est.is_finite(),
                "constant": aq_json(&est),
                "evidence_scale": top_scale,
            }]));
            Ok(if est.is_finite() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        WeightsCmd::Pair { gamma, delta } => {
            let phi = WeightSpec::cylindrical(*gamma, WeightForm::OnePlusAbs)?;
            let psi = WeightSpec::pair_member(*delta, WeightForm::OnePlusSqHalf)?;
            let rep = weights::check_pair(&phi, &psi, &weights::pair_cloud())?;
            print_json(&json!([
                { "axiom": "domination", "pass": rep.domination, "constant": 1.0, "evidence_scale": 1e6 },
                { "axiom": "psi_in_A2", "pass": rep.psi_a2.is_finite(), "constant": aq_json(&rep.psi_a2), "evidence_scale": 1024.0 },
                { "axiom": "grad_bound", "pass": rep.grad_ok, "constant": rep.c_grad, "evidence_scale": 1e6 },
                { "axiom": "laplacian_bound", "pass": rep.lap_ok, "constant": rep.c_lap, "evidence_scale": 1e6 },
                { "axiom": "pair", "pass": rep.pass, "constant": null, "evidence_scale": null },
            ]));
            Ok(if rep.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn simulate_cmd(cli: &Cli, cmd: &SimulateCmd) -> Result<ExitCode, leraylab::Error> {
    let root = output_root(cli);
    std::fs::create_dir_all(&root)?;
    match cmd {
        SimulateCmd::TwoD { config } => {
            let text = std::fs::read_to_string(config)?;
            let mut cfg = harness::parse_config(&text)?;
            if let Some(seed) = cli.seed {
                cfg.seed = seed;
            }
            let dir = timestamped(&root, "run2d")?;
            let out = solver2d::run(&cfg)?;
            let ledger_path = dir.join("ledger.csv");
            out.ledger.write_csv(std::io::BufWriter::new(std::fs::File::create(&ledger_path)?))?;
            harness::write_checkpoint_2d(&dir.join("final.bin"), &out.state)?;
            std::fs::write(dir.join("config.txt"), harness::canonical_2d(&cfg))?;
            println!("ledger: {} ({} rows)", ledger_path.display(), out.ledger.rows.len());
            match out.status {
                solver2d::RunStatus::Completed => Ok(ExitCode::SUCCESS),
                solver2d::RunStatus::BlewUp { t } => {
                    eprintln!("run blew up at t = {t}; partial ledger flushed");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        SimulateCmd::Axisym { config } => {
            let text = std::fs::read_to_string(config)?;
            let cfg = harness::parse_axi_config(&text)?;
            let dir = timestamped(&root, "runaxi")?;
            let out = axisym::run_axi(&cfg)?;
            let ledger_path = dir.join("ledger.csv");
            out.ledger.write_csv(std::io::BufWriter::new(std::fs::File::create(&ledger_path)?))?;
            harness::write_checkpoint_axi(&dir.join("final.bin"), &out.state)?;
            std::fs::write(dir.join("config.txt"), harness::canonical_axi(&cfg))?;
            println!("ledger: {} ({} rows)", ledger_path.display(), out.ledger.rows.len());
            match out.status {
                axisym::AxiRunStatus::Completed => Ok(ExitCode::SUCCESS),
                axisym::AxiRunStatus::BlewUp { t } => {
                    eprintln!("run blew up at t = {t}; partial ledger flushed");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
    }
}

fn gronwall_cmd(cmd: &GronwallCmd) -> Result<ExitCode, leraylab::Error> {
    match cmd {
        GronwallCmd::Verify { a, b_const, exponent, t1, steps } => {
            let params = gronwall::GronwallParams::new(*a, *b_const, *exponent, *t1)?;
            let rep = gronwall::verify_envelope(&params, *steps)?;
            print_json(&json!({
                "t0": rep.t0,
                "max_ratio": rep.max_ratio,
                "envelope_pass": rep.pass,
                "first_crossing": rep.first_crossing,
                "crossing_inequality_ok": rep.crossing_inequality_ok,
            }));
            Ok(if rep.pass && rep.crossing_inequality_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        GronwallCmd::Fit { ledger, exponent } => {
            let file = std::fs::File::open(ledger)?;
            let l = solver2d::EnergyLedger::read_csv(std::io::BufReader::new(file))?;
            let fit = gronwall::fit_envelope(&l.times(), &l.e_phi_u(), *exponent)?;
            print_json(&json!({
                "a_fit": fit.a_fit,
                "b_fit": fit.b_fit,
                "t0": fit.t0,
                "envelope_ok": fit.envelope_ok,
                "max_ratio": fit.max_ratio,
            }));
            Ok(if fit.envelope_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn preset_cmd(cli: &Cli, name: Option<&str>, list: bool) -> Result<ExitCode, leraylab::Error> {
    if list || name.is_none() {
        for p in harness::preset_names() {
            println!("{p}");
        }
        return Ok(if name.is_none() && !list { ExitCode::from(2) } else { ExitCode::SUCCESS });
    }
    let name = name.unwrap();
    let outcome = harness::run_preset(name, &output_root(cli), cli.seed)?;
    for CriterionResult { name, pass, detail } in &outcome.report.criteria {
        println!("[{}] {name}: {detail}", if *pass { "PASS" } else { "FAIL" });
    }
    println!("report: {}", outcome.dir.join("report.json").display());
    Ok(if outcome.report.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn timestamped(root: &std::path::Path, prefix: &str) -> Result<PathBuf, leraylab::Error> {
    let ms = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0);
    let mut k = 0u32;
    loop {
        let dir = if k == 0 {
            root.join(format!("{prefix}-{ms}"))
        } else {
            root.join(format!("{prefix}-{ms}-{k}"))
        };
        if !dir.exists() {
            std::fs::create_dir_all(&dir)?;
            return Ok(dir);
        }
        k += 1;
    }
}
