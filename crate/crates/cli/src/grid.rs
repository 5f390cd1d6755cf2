//! The `qpd` command: one quasiprobability distribution as CSV.

use std::path::PathBuf;

use nonclassical::{sample_qpd, GridSpecF64};

use crate::output::{ensure_finite, fmt_sig, write_atomic, Failure};
use crate::StateArgs;

#[derive(clap::Args, Debug)]
pub struct QpdArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Ordering parameter in [-1, 1).
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, default_value_t = 4.0)]
    half_width: f64,
    #[arg(long, default_value_t = 81)]
    points: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
}

pub fn cmd_qpd(args: &QpdArgs) -> Result<(), Failure> {
    let state = args.state.state()?;
    let grid = sample_qpd(&state, args.s, GridSpecF64::new(args.half_width, args.points)?)?;
    let mut out = String::from("re_alpha,im_alpha,value\n");
    for (re, im, v) in grid.triples() {
        ensure_finite("qpd grid", &[re, im, v])?;
        let sig = args.precision as usize;
        out += &format!("{},{},{}\n", fmt_sig(re, sig), fmt_sig(im, sig), fmt_sig(v, sig));
    }
    match &args.out {
        Some(path) => write_atomic(path, out.as_bytes()),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}
