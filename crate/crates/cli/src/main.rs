//! Command-line front end to the `nonclassical` library.
//!
//! Exit codes: 0 success, 1 verification or numerical failure, 2 invalid
//! input, 3 I/O error.

mod figures;
mod grid;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nonclassical::report::measure_report_with_numeric_depth;
use nonclassical::verify::{run_suite, Suite};
use nonclassical::{measure_report, Complex, GridSpecF64, MeasureReportF64, QubitStateF64};

use crate::output::Failure;

#[derive(Parser, Debug)]
#[command(name = "nonclassical", version, about = "Nonclassicality measures of single-qubit optical states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every measure of one state, with cross-check residuals.
    Measure(MeasureArgs),
    /// Writes Monte Carlo clouds and boundary curves as CSV, with a manifest.
    Figures(figures::FiguresArgs),
    /// Dumps one s-parametrized quasiprobability distribution on a grid.
    Qpd(grid::QpdArgs),
    /// Runs a verification suite.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
    Csv,
}

/// `rho = [[1 - p, x], [x*, p]]` with `x = |x| e^{i phase}`.
#[derive(clap::Args, Debug)]
pub struct StateArgs {
    /// Single-photon population `p` in [0, 1].
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    /// Coherence modulus `|x|`, at most sqrt(p(1-p)).
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    /// Coherence phase in radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phase: f64,
}

impl StateArgs {
    pub fn state(&self) -> Result<QubitStateF64, Failure> {
        if !(self.x >= 0.0) {
            return Err(Failure::Invalid(format!("--x is the coherence modulus and must be >= 0, got {}", self.x)));
        }
        if !self.phase.is_finite() {
            return Err(Failure::Invalid(format!("--phase must be finite, got {}", self.phase)));
        }
        Ok(QubitStateF64::new(self.p, Complex::from_polar(self.x, self.phase))?)
    }
}

#[derive(clap::Args, Debug)]
struct MeasureArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    /// Also compute the depth by bisection over sampled distributions.
    #[arg(long)]
    numeric_depth: bool,
    /// Sign tolerance of the bisection depth.
    #[arg(long, default_value_t = 1e-8)]
    depth_tol: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Tables,
    Inequalities,
    Oracles,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Tables => Suite::Tables,
            SuiteArg::Inequalities => Suite::Inequalities,
            SuiteArg::Oracles => Suite::Oracles,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Seed of the randomly sampled states.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

fn cmd_measure(args: &MeasureArgs) -> Result<(), Failure> {
    let state = args.state.state()?;
    let report = if args.numeric_depth {
        measure_report_with_numeric_depth(&state, GridSpecF64::default(), args.depth_tol)?
    } else {
        measure_report(&state)?
    };
    print!("{}", render_report(&report, args.format)?);
    Ok(())
}

fn render_report(r: &MeasureReportF64, format: ReportFormat) -> Result<String, Failure> {
    Ok(match format {
        ReportFormat::Json => serde_json::to_string_pretty(r).map_err(|e| Failure::Io(e.to_string()))? + "\n",
        ReportFormat::Csv => {
            let mut head = ["p", "x_re", "x_im", "tau", "D", "CP", "NP"].join(",");
            let x = r.state.x();
            let mut row = [r.state.p(), x.re, x.im, r.tau, r.distance, r.concurrence_potential, r.negativity_potential]
                .iter()
                .map(|v| output::fmt_sig(*v, 17))
                .collect::<Vec<_>>()
                .join(",");
            for (k, v) in &r.cross_check_residuals {
                head += &format!(",{k}");
                row += &format!(",{}", output::fmt_sig(*v, 6));
            }
            format!("{head}\n{row}\n")
        }
        ReportFormat::Text => {
            let x = r.state.x();
            let mut s = format!("state   p = {}, x = {} {:+}i\n", r.state.p(), x.re, x.im);
            s += &format!("tau     {:.12}\n", r.tau);
            s += &format!("D       {:.12}\n", r.distance);
            s += &format!("CP      {:.12}\n", r.concurrence_potential);
            s += &format!("NP      {:.12}\n", r.negativity_potential);
            s += "residuals\n";
            for (k, v) in &r.cross_check_residuals {
                s += &format!("  {k:<26}{v:.3e}\n");
            }
            s
        }
    })
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let suite: Suite = args.suite.into();
    let outcomes = run_suite(suite, args.seed);
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).collect();
    match args.format {
        ReportFormat::Json => {
            let doc = serde_json::json!({ "suite": suite, "seed": args.seed, "checks": outcomes, "passed": failed.is_empty() });
            println!("{}", serde_json::to_string_pretty(&doc).map_err(|e| Failure::Io(e.to_string()))?);
        }
        ReportFormat::Csv => {
            println!("name,passed,detail");
            for o in &outcomes {
                println!("{},{},\"{}\"", o.name, o.passed, o.detail.replace('"', "\"\""));
            }
        }
        ReportFormat::Text => {
            for o in &outcomes {
                println!("[{}] {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
            }
            println!("suite {suite}: {} of {} checks passed", outcomes.len() - failed.len(), outcomes.len());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        let names: Vec<&str> = failed.iter().map(|o| o.name.as_str()).collect();
        Err(Failure::Verification(format!("failed checks: {}", names.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Measure(a) => cmd_measure(a),
        Command::Figures(a) => figures::cmd_figures(a),
        Command::Qpd(a) => grid::cmd_qpd(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
