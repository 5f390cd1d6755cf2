//! The `figures` command. Every run ends by writing `manifest.json`.

use std::path::PathBuf;

use clap::ValueEnum;
use nonclassical::boundary::{DEFAULT_CURVE_SAMPLES, DEFAULT_OPT_TOL, MIXED_THRESHOLD};
use nonclassical::{boundary_curve, find_tau0, region_cloud, Family, Panel, SamplerConfig, SamplingLaw};
use serde::Serialize;
use serde_json::json;

use crate::output::{ensure_finite, fmt_sig, write_atomic, Failure};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "NONCLASSICAL_OUT_DIR";

/// Tolerance of the critical depth bisection recorded in the manifest.
const TAU0_TOL: f64 = 1e-5;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PanelArg {
    #[value(name = "D_vs_tau")]
    DVsTau,
    #[value(name = "NP_vs_tau")]
    NpVsTau,
    #[value(name = "D_vs_NP")]
    DVsNp,
    All,
}

impl PanelArg {
    fn panels(self) -> Vec<Panel> {
        match self {
            PanelArg::DVsTau => vec![Panel::DVsTau],
            PanelArg::NpVsTau => vec![Panel::NpVsTau],
            PanelArg::DVsNp => vec![Panel::DVsNp],
            PanelArg::All => Panel::ALL.to_vec(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum LawArg {
    #[value(name = "uniform_pxr")]
    UniformPxr,
    #[value(name = "uniform_purity")]
    UniformPurity,
}

impl From<LawArg> for SamplingLaw {
    fn from(l: LawArg) -> Self {
        match l {
            LawArg::UniformPxr => SamplingLaw::UniformPxr,
            LawArg::UniformPurity => SamplingLaw::UniformPurity,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct FiguresArgs {
    #[arg(long, value_enum, default_value = "all")]
    panel: PanelArg,
    /// Output directory, created if missing.
    #[arg(long, env = OUT_DIR_ENV, default_value = "figures")]
    out: PathBuf,
    /// Monte Carlo states per cloud.
    #[arg(long, default_value_t = 100_000)]
    n_mc: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Points per boundary curve.
    #[arg(long, default_value_t = DEFAULT_CURVE_SAMPLES)]
    samples: usize,
    #[arg(long, value_enum, default_value = "uniform_pxr")]
    law: LawArg,
    /// Significant digits of every written number.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
}

#[derive(Serialize)]
struct FileEntry {
    path: String,
    panel: Panel,
    kind: &'static str,
    rows: usize,
}

fn csv<const N: usize>(header: &str, rows: impl Iterator<Item = [f64; N]>, sig: usize, what: &str) -> Result<(String, usize), Failure> {
    let mut out = String::from(header);
    out.push('\n');
    let mut n = 0;
    for row in rows {
        ensure_finite(what, &row)?;
        let cells: Vec<String> = row.iter().map(|v| fmt_sig(*v, sig)).collect();
        out += &cells.join(",");
        out.push('\n');
        n += 1;
    }
    Ok((out, n))
}

pub fn cmd_figures(args: &FiguresArgs) -> Result<(), Failure> {
    if args.n_mc == 0 {
        return Err(Failure::Invalid("--n-mc must be positive".into()));
    }
    if args.samples < 2 {
        return Err(Failure::Invalid("--samples must be at least 2".into()));
    }
    std::fs::create_dir_all(&args.out).map_err(|e| Failure::Io(format!("{}: {e}", args.out.display())))?;
    let sig = args.precision as usize;
    let law: SamplingLaw = args.law.into();
    let cfg = SamplerConfig::new(args.n_mc, args.seed).with_law(law);
    let panels = args.panel.panels();

    let mut files = Vec::new();
    for &panel in &panels {
        let name = format!("{}.cloud.csv", panel.as_str());
        let cloud = region_cloud(&cfg, panel)?;
        let (body, rows) = csv(
            "abscissa,ordinate,p,x_abs",
            cloud.iter().map(|c| [c.abscissa, c.ordinate, c.p, c.x_abs]),
            sig,
            &name,
        )?;
        write_atomic(&args.out.join(&name), body.as_bytes())?;
        files.push(FileEntry { path: name, panel, kind: "cloud", rows });

        for family in Family::ALL {
            let name = format!("{}.{}.csv", panel.as_str(), family.as_str());
            let curve = boundary_curve::<f64>(panel, family, args.samples)?;
            let (body, rows) = csv(
                "abscissa,ordinate,p,x",
                curve.samples.iter().map(|s| [s.abscissa, s.ordinate, s.p, s.x]),
                sig,
                &name,
            )?;
            write_atomic(&args.out.join(&name), body.as_bytes())?;
            files.push(FileEntry { path: name, panel, kind: family.as_str(), rows });
        }
    }

    let mut manifest = json!({
        "panels": panels,
        "files": files,
        "seed": args.seed,
        "n_mc": args.n_mc,
        "law": law,
        "samples": args.samples,
        "precision": args.precision,
        "tolerances": {
            "optimizer": DEFAULT_OPT_TOL,
            "mixed_threshold": MIXED_THRESHOLD,
            "tau0": TAU0_TOL,
        },
    });
    if panels.contains(&Panel::NpVsTau) {
        let est = find_tau0(TAU0_TOL)?;
        ensure_finite("tau0", &[est.tau0, est.bracket.0, est.bracket.1])?;
        manifest["tau0"] = json!({
            "estimate": est.tau0,
            "bracket": [est.bracket.0, est.bracket.1],
            "criterion": est.criterion,
        });
    }
    let mut text = serde_json::to_string_pretty(&manifest).map_err(|e| Failure::Io(e.to_string()))?;
    text.push('\n');
    write_atomic(&args.out.join("manifest.json"), text.as_bytes())?;
    println!("wrote {} files and manifest.json to {}", files.len(), args.out.display());
    Ok(())
}
