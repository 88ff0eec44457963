//! `rithermo` — command-line front end for the qubit repeated-interaction
//! thermal-machine library.
//!
//! Every subcommand emits self-describing CSV: `#`-prefixed metadata
//! lines (artifact version, subcommand, the full effective parameter
//! set), one header row, then data rows.  Floats are printed in Rust's
//! shortest round-trip form (at most 17 significant digits), so repeated
//! runs with the same parameters are byte-identical.
//!
//! Exit codes: 0 success, 2 invalid input, 3 frozen dynamics, 4 invariant
//! violation, 5 I/O failure.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rithermo::{
    alternating, engine, sampling, simultaneous, verify, BathSpec, Contact, Coupling,
    MachineConfig, Mode, QubitState,
};

const MAX_CYCLES: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "rithermo",
    version,
    about = "Exact and perturbative qubit repeated-interaction thermal machines",
    after_help = "Exit codes: 0 ok, 2 invalid input, 3 frozen dynamics, 4 invariant violation, 5 I/O error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Collision-by-collision trajectory with the full energy ledger.
    Dynamics(CommonArgs),
    /// Closed-form limit cycle next to the engine's numeric fixed point.
    LimitCycle(CommonArgs),
    /// Limit-cycle heat and heat current along a sweep of tau or J.
    HeatSweep(HeatSweepArgs),
    /// Random-coupling campaign checking the population bounds.
    BoundsSample(CommonArgs),
    /// Run the full invariant battery and report each check.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// One bath per collision, hot and cold in alternation.
    Alternating,
    /// Both baths in every collision (three-body unitary).
    Simultaneous,
}

impl From<ModeArg> for Mode {
    fn from(arg: ModeArg) -> Self {
        match arg {
            ModeArg::Alternating => Mode::Alternating,
            ModeArg::Simultaneous => Mode::Simultaneous,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    /// Sweep the collision duration.
    Tau,
    /// Sweep a single coupling amplitude applied to all four couplings.
    J,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Coupling protocol.
    #[arg(long, value_enum, default_value_t = ModeArg::Alternating)]
    mode: ModeArg,
    /// Collision duration.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    tau: f64,
    /// System energy splitting.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    omega_s: f64,
    /// Hot-ancilla energy splitting.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    omega_h: f64,
    /// Cold-ancilla energy splitting.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    omega_c: f64,
    /// Hot-bath inverse temperature.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    beta_h: f64,
    /// Cold-bath inverse temperature (must be >= --beta-h).
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    beta_c: f64,
    /// Hot xx-coupling amplitude.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    jxx_h: f64,
    /// Hot yy-coupling amplitude.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    jyy_h: f64,
    /// Cold xx-coupling amplitude.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    jxx_c: f64,
    /// Cold yy-coupling amplitude.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    jyy_c: f64,
    /// Number of collisions to simulate (dynamics).
    #[arg(long, default_value_t = 100)]
    collisions: u64,
    /// Sample count for randomized campaigns (bounds-sample defaults to
    /// 1000; verify runs its full battery when omitted).
    #[arg(long)]
    samples: Option<u64>,
    /// Seed for all randomized draws.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Convergence tolerance for the numeric fixed-point search.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Output path; '-' writes to stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct HeatSweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Swept quantity.
    #[arg(long, value_enum)]
    axis: AxisArg,
    /// First axis value (inclusive).
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    /// Last axis value (inclusive).
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    /// Number of sweep points.
    #[arg(long, default_value_t = 50)]
    points: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Per-axis resolution of the coupling grid in the total-work check
    /// (defaults to the full 21-point grid).
    #[arg(long)]
    points: Option<usize>,
}

/// CLI failure carrying its process exit code.
enum CliError {
    Invalid(String),
    Frozen(String),
    Violation(String),
    Io(io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Frozen(_) => 3,
            CliError::Violation(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Invalid(m) => format!("invalid input: {m}"),
            CliError::Frozen(m) => format!("frozen dynamics: {m}"),
            CliError::Violation(m) => format!("invariant violation: {m}"),
            CliError::Io(e) => format!("i/o error: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Library errors mapped onto the exit-code taxonomy.
fn lib_err(e: rithermo::Error) -> CliError {
    match e {
        rithermo::Error::InvalidConfig(_) => CliError::Invalid(e.to_string()),
        rithermo::Error::FrozenDynamics(_) => CliError::Frozen(e.to_string()),
        _ => CliError::Violation(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap handles --help/--version and exits 2 on bad flags
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rithermo: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Dynamics(args) => with_output(&args.out.clone(), |w| cmd_dynamics(&args, w)),
        Command::LimitCycle(args) => with_output(&args.out.clone(), |w| cmd_limit_cycle(&args, w)),
        Command::HeatSweep(args) => {
            with_output(&args.common.out.clone(), |w| cmd_heat_sweep(&args, w))
        }
        Command::BoundsSample(args) => {
            with_output(&args.out.clone(), |w| cmd_bounds_sample(&args, w))
        }
        Command::Verify(args) => with_output(&args.common.out.clone(), |w| cmd_verify(&args, w)),
    }
}

/// Runs `body` against stdout or a freshly created file, flushing at the end.
fn with_output(
    out: &str,
    body: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    if out == "-" {
        let stdout = io::stdout();
        let mut w = io::BufWriter::new(stdout.lock());
        body(&mut w)?;
        w.flush()?;
    } else {
        let file = std::fs::File::create(out)?;
        let mut w = io::BufWriter::new(file);
        body(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

impl CommonArgs {
    fn machine(&self) -> Result<MachineConfig, CliError> {
        MachineConfig::new(
            self.omega_s,
            self.tau,
            Contact {
                bath: BathSpec { beta: self.beta_h, omega: self.omega_h },
                coupling: Coupling::new(self.jxx_h, self.jyy_h),
            },
            Contact {
                bath: BathSpec { beta: self.beta_c, omega: self.omega_c },
                coupling: Coupling::new(self.jxx_c, self.jyy_c),
            },
        )
        .map_err(|e| CliError::Invalid(e.to_string()))
    }

    fn mode_name(&self) -> &'static str {
        match self.mode {
            ModeArg::Alternating => "alternating",
            ModeArg::Simultaneous => "simultaneous",
        }
    }

    /// The `# key=value` metadata echo shared by all subcommands.
    fn metadata(&self) -> Vec<(&'static str, String)> {
        vec![
            ("mode", self.mode_name().to_string()),
            ("tau", fmt(self.tau)),
            ("omega_s", fmt(self.omega_s)),
            ("omega_h", fmt(self.omega_h)),
            ("omega_c", fmt(self.omega_c)),
            ("beta_h", fmt(self.beta_h)),
            ("beta_c", fmt(self.beta_c)),
            ("jxx_h", fmt(self.jxx_h)),
            ("jyy_h", fmt(self.jyy_h)),
            ("jxx_c", fmt(self.jxx_c)),
            ("jyy_c", fmt(self.jyy_c)),
            ("seed", self.seed.to_string()),
            ("tol", fmt(self.tol)),
            ("out", self.out.clone()),
        ]
    }
}

/// Shortest round-trip float formatting (Rust's `Display`), capped by the
/// language at 17 significant digits.
fn fmt(x: f64) -> String {
    format!("{x}")
}

/// RFC-4180 quoting for fields that contain commas, quotes or newlines.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write_preamble(
    w: &mut dyn Write,
    command: &str,
    metadata: &[(&'static str, String)],
    extra: &[(&'static str, String)],
) -> Result<(), CliError> {
    writeln!(w, "# rithermo v{}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# command: {command}")?;
    for (key, value) in metadata.iter().chain(extra) {
        writeln!(w, "# {key}={value}")?;
    }
    Ok(())
}

fn cmd_dynamics(args: &CommonArgs, w: &mut dyn Write) -> Result<(), CliError> {
    let cfg = args.machine()?;
    let trajectory = engine::evolve(QubitState::ground(), &cfg, args.mode.into(), args.collisions)
        .map_err(lib_err)?;
    write_preamble(
        w,
        "dynamics",
        &args.metadata(),
        &[("collisions", args.collisions.to_string())],
    )?;
    writeln!(w, "n,p,re_c,im_c,q_hot,q_cold,w_hot,w_cold,de_system")?;
    for point in &trajectory {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            point.n,
            fmt(point.state.p),
            fmt(point.state.c.re),
            fmt(point.state.c.im),
            fmt(point.ledger.q_hot),
            fmt(point.ledger.q_cold),
            fmt(point.ledger.w_hot),
            fmt(point.ledger.w_cold),
            fmt(point.ledger.de_system),
        )?;
    }
    Ok(())
}

fn cmd_limit_cycle(args: &CommonArgs, w: &mut dyn Write) -> Result<(), CliError> {
    let cfg = args.machine()?;
    let mode: Mode = args.mode.into();

    // Analytic populations: exact closed form for the alternating
    // machine; short-collision fixed point for the simultaneous one
    // (exact whenever all four couplings share one magnitude).
    let analytic: Option<(f64, f64)> = match mode {
        Mode::Alternating => alternating::limit_cycle(&cfg).populations(),
        Mode::Simultaneous => simultaneous::dyson_fixed_point(&cfg).ok().map(|p| (p, p)),
    };
    let numeric = match engine::find_limit_cycle_numeric(&cfg, mode, args.tol, MAX_CYCLES) {
        Ok(n) => Some(n),
        Err(rithermo::Error::FrozenDynamics(_)) => None,
        Err(e) => return Err(lib_err(e)),
    };

    write_preamble(w, "limit-cycle", &args.metadata(), &[])?;
    writeln!(
        w,
        "frozen,p_analytic_after_cold,p_analytic_after_hot,p_numeric_after_cold,p_numeric_after_hot,diff_after_cold,diff_after_hot,q_hot,q_cold,w_hot,w_cold,contraction,cycles"
    )?;
    match (analytic, numeric) {
        (Some((a_cold, a_hot)), Some(n)) => {
            writeln!(
                w,
                "0,{},{},{},{},{},{},{},{},{},{},{},{}",
                fmt(a_cold),
                fmt(a_hot),
                fmt(n.p_after_cold),
                fmt(n.p_after_hot),
                fmt(a_cold - n.p_after_cold),
                fmt(a_hot - n.p_after_hot),
                fmt(n.thermo.q_hot),
                fmt(n.thermo.q_cold),
                fmt(n.thermo.w_hot),
                fmt(n.thermo.w_cold),
                fmt(n.contraction),
                n.verify_cycles,
            )?;
            Ok(())
        }
        _ => {
            let nan = fmt(f64::NAN);
            writeln!(
                w,
                "1,{nan},{nan},{nan},{nan},{nan},{nan},{nan},{nan},{nan},{nan},{nan},0"
            )?;
            Err(CliError::Frozen(
                "every collision acts trivially; no limit cycle is defined".into(),
            ))
        }
    }
}

/// One sweep point: limit-cycle heats, populations and the heat current
/// dQ_C/dτ (centered difference in τ).
struct SweepPoint {
    q_cold: f64,
    q_hot: f64,
    current: f64,
    p_after_cold: f64,
    p_after_hot: f64,
}

fn sweep_point(cfg: &MachineConfig, mode: Mode, tol: f64) -> Result<Option<SweepPoint>, CliError> {
    // Heats and populations at the requested τ.
    let at = |tau: f64| -> Result<Option<(f64, f64, f64, f64)>, CliError> {
        let cfg_tau = MachineConfig::new(cfg.omega_s, tau, cfg.hot, cfg.cold)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        match mode {
            Mode::Alternating => match alternating::thermo_limit_cycle(&cfg_tau) {
                Ok(thermo) => {
                    let (p_cold, p_hot) = alternating::limit_cycle(&cfg_tau)
                        .populations()
                        .expect("live thermodynamics implies a live limit cycle");
                    Ok(Some((thermo.q_cold, thermo.q_hot, p_cold, p_hot)))
                }
                Err(rithermo::Error::FrozenDynamics(_)) => Ok(None),
                Err(e) => Err(lib_err(e)),
            },
            Mode::Simultaneous => {
                match engine::find_limit_cycle_numeric(&cfg_tau, mode, tol, MAX_CYCLES) {
                    Ok(n) => Ok(Some((
                        n.thermo.q_cold,
                        n.thermo.q_hot,
                        n.p_after_cold,
                        n.p_after_hot,
                    ))),
                    Err(rithermo::Error::FrozenDynamics(_)) => Ok(None),
                    Err(e) => Err(lib_err(e)),
                }
            }
        }
    };

    let Some((q_cold, q_hot, p_after_cold, p_after_hot)) = at(cfg.tau)? else {
        return Ok(None);
    };
    // Centered difference for dQ_C/dτ, shrinking the step near τ = 0.
    let h = 1e-6_f64.min(cfg.tau / 2.0).max(f64::MIN_POSITIVE);
    let current = match (at(cfg.tau + h)?, at(cfg.tau - h)?) {
        (Some(above), Some(below)) => (above.0 - below.0) / (2.0 * h),
        _ => f64::NAN,
    };
    Ok(Some(SweepPoint {
        q_cold,
        q_hot,
        current,
        p_after_cold,
        p_after_hot,
    }))
}

fn cmd_heat_sweep(args: &HeatSweepArgs, w: &mut dyn Write) -> Result<(), CliError> {
    let common = &args.common;
    let base = common.machine()?;
    if args.points == 0 {
        return Err(CliError::Invalid("--points must be at least 1".into()));
    }
    if !args.from.is_finite() || !args.to.is_finite() {
        return Err(CliError::Invalid("--from/--to must be finite".into()));
    }
    let axis_name = match args.axis {
        AxisArg::Tau => "tau",
        AxisArg::J => "j",
    };
    if args.axis == AxisArg::Tau && (args.from < 0.0 || args.to < 0.0) {
        return Err(CliError::Invalid("tau sweep values must be >= 0".into()));
    }

    write_preamble(
        w,
        "heat-sweep",
        &common.metadata(),
        &[
            ("axis", axis_name.to_string()),
            ("from", fmt(args.from)),
            ("to", fmt(args.to)),
            ("points", args.points.to_string()),
        ],
    )?;
    writeln!(w, "{axis_name},q_cold,q_hot,current,p_after_cold,p_after_hot,frozen")?;

    for k in 0..args.points {
        let value = if args.points == 1 {
            args.from
        } else {
            args.from + (args.to - args.from) * k as f64 / (args.points - 1) as f64
        };
        let cfg = match args.axis {
            AxisArg::Tau => MachineConfig::new(base.omega_s, value, base.hot, base.cold),
            AxisArg::J => MachineConfig::new(
                base.omega_s,
                base.tau,
                Contact { bath: base.hot.bath, coupling: Coupling::symmetric(value) },
                Contact { bath: base.cold.bath, coupling: Coupling::symmetric(value) },
            ),
        }
        .map_err(|e| CliError::Invalid(e.to_string()))?;
        match sweep_point(&cfg, common.mode.into(), common.tol)? {
            Some(point) => writeln!(
                w,
                "{},{},{},{},{},{},0",
                fmt(value),
                fmt(point.q_cold),
                fmt(point.q_hot),
                fmt(point.current),
                fmt(point.p_after_cold),
                fmt(point.p_after_hot),
            )?,
            None => {
                let nan = fmt(f64::NAN);
                writeln!(w, "{},{nan},{nan},{nan},{nan},{nan},1", fmt(value))?;
            }
        }
    }
    Ok(())
}

fn cmd_bounds_sample(args: &CommonArgs, w: &mut dyn Write) -> Result<(), CliError> {
    let base = args.machine()?;
    let samples = args.samples.unwrap_or(1000);
    if samples == 0 {
        return Err(CliError::Invalid("--samples must be at least 1".into()));
    }
    let mode: Mode = args.mode.into();
    let p_c = base.cold.bath.gibbs().p;

    write_preamble(
        w,
        "bounds-sample",
        &args.metadata(),
        &[("samples", samples.to_string())],
    )?;
    writeln!(
        w,
        "index,jxx_h,jyy_h,jxx_c,jyy_c,p_after_cold,p_after_hot,margin_upper_cold,margin_upper_hot,margin_lower_cold,margin_lower_hot,frozen"
    )?;

    let mut violations = 0u64;
    let mut frozen = 0u64;
    let mut min_margin = f64::INFINITY;
    for index in 0..samples {
        let cfg = sampling::with_sampled_couplings(&base, args.seed, index);
        let populations: Option<(f64, f64)> = match mode {
            Mode::Alternating => alternating::limit_cycle(&cfg).populations(),
            Mode::Simultaneous => {
                match engine::find_limit_cycle_numeric(&cfg, mode, args.tol, MAX_CYCLES) {
                    Ok(n) => Some((n.p_after_cold, n.p_after_hot)),
                    Err(rithermo::Error::FrozenDynamics(_)) => None,
                    Err(e) => return Err(lib_err(e)),
                }
            }
        };
        let js = (
            cfg.hot.coupling.jxx,
            cfg.hot.coupling.jyy,
            cfg.cold.coupling.jxx,
            cfg.cold.coupling.jyy,
        );
        match populations {
            Some((p_after_cold, p_after_hot)) => {
                let margins = alternating::BoundsMargins {
                    upper_cold: p_c - p_after_cold,
                    upper_hot: p_c - p_after_hot,
                    lower_cold: p_after_cold - (1.0 - p_c),
                    lower_hot: p_after_hot - (1.0 - p_c),
                };
                let min = margins.min();
                min_margin = min_margin.min(min);
                if min < -verify::BOUND_SLACK {
                    violations += 1;
                }
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{},{},{},0",
                    index,
                    fmt(js.0),
                    fmt(js.1),
                    fmt(js.2),
                    fmt(js.3),
                    fmt(p_after_cold),
                    fmt(p_after_hot),
                    fmt(margins.upper_cold),
                    fmt(margins.upper_hot),
                    fmt(margins.lower_cold),
                    fmt(margins.lower_hot),
                )?;
            }
            None => {
                frozen += 1;
                let nan = fmt(f64::NAN);
                writeln!(
                    w,
                    "{},{},{},{},{},{nan},{nan},{nan},{nan},{nan},{nan},1",
                    index,
                    fmt(js.0),
                    fmt(js.1),
                    fmt(js.2),
                    fmt(js.3),
                )?;
            }
        }
    }
    writeln!(
        w,
        "# summary samples={samples} frozen={frozen} violations={violations} min_margin={}",
        fmt(min_margin),
    )?;
    if violations > 0 {
        return Err(CliError::Violation(format!(
            "{violations} of {samples} samples violate the population bounds (worst margin {})",
            fmt(min_margin)
        )));
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, w: &mut dyn Write) -> Result<(), CliError> {
    let common = &args.common;
    let mut sizes = verify::BatterySizes::default();
    if let Some(samples) = common.samples {
        if samples == 0 {
            return Err(CliError::Invalid("--samples must be at least 1".into()));
        }
        sizes.oracle_configs = samples;
        sizes.sim_engine_samples = samples;
        sizes.bounds_samples = samples;
        sizes.work_random_samples = samples;
    }
    if let Some(points) = args.points {
        if points == 0 {
            return Err(CliError::Invalid("--points must be at least 1".into()));
        }
        sizes.work_grid_points = points;
    }

    let reports = verify::run_battery(common.seed, &sizes);

    write_preamble(
        w,
        "verify",
        &common.metadata(),
        &[
            ("oracle_configs", sizes.oracle_configs.to_string()),
            ("sim_engine_samples", sizes.sim_engine_samples.to_string()),
            ("bounds_samples", sizes.bounds_samples.to_string()),
            ("work_random_samples", sizes.work_random_samples.to_string()),
            ("work_grid_points", sizes.work_grid_points.to_string()),
        ],
    )?;
    writeln!(w, "check,passed,samples,worst,detail")?;
    let mut failures = String::new();
    for report in &reports {
        writeln!(
            w,
            "{},{},{},{},{}",
            report.name,
            report.passed,
            report.samples,
            fmt(report.worst),
            csv_field(&report.detail),
        )?;
        if !report.passed {
            let _ = write!(failures, "{}; ", report.name);
        }
    }
    if !verify::all_passed(&reports) {
        return Err(CliError::Violation(format!(
            "checks failed: {}",
            failures.trim_end_matches("; ")
        )));
    }
    Ok(())
}
