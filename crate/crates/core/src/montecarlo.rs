//! Seeded sampling of random qubit states and their measure-pair clouds.
//!
//! Samples are drawn in fixed-size chunks, chunk `k` from ChaCha stream `k`
//! of the given seed. The output is therefore identical for any number of
//! worker threads.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use nalgebra::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boundary::Panel;
use crate::error::{invalid, Error, Result};
use crate::state::QubitState;

const CHUNK: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingLaw {
    /// `p ~ U[0,1]`, `|x| = r sqrt(p(1-p))` with `r ~ U[0,1]`, uniform phase.
    UniformPxr,
    /// Uniform in the Bloch ball.
    UniformPurity,
}

impl fmt::Display for SamplingLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SamplingLaw::UniformPxr => "uniform_pxr",
            SamplingLaw::UniformPurity => "uniform_purity",
        })
    }
}

impl FromStr for SamplingLaw {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform_pxr" => Ok(SamplingLaw::UniformPxr),
            "uniform_purity" => Ok(SamplingLaw::UniformPurity),
            other => Err(invalid!("unknown sampling law {other:?}; expected uniform_pxr or uniform_purity")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplerConfig {
    pub n: usize,
    pub seed: u64,
    pub law: SamplingLaw,
}

impl SamplerConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        SamplerConfig { n, seed, law: SamplingLaw::UniformPxr }
    }

    pub fn with_law(mut self, law: SamplingLaw) -> Self {
        self.law = law;
        self
    }
}

fn draw(rng: &mut ChaCha8Rng, law: SamplingLaw) -> Result<QubitState<f64>> {
    let (p, x) = match law {
        SamplingLaw::UniformPxr => {
            let p: f64 = rng.gen();
            let r: f64 = rng.gen();
            let phi = TAU * rng.gen::<f64>();
            (p, Complex::from_polar(r * (p * (1.0 - p)).sqrt(), phi))
        }
        SamplingLaw::UniformPurity => {
            let radius = rng.gen::<f64>().cbrt();
            let cos_t = 2.0 * rng.gen::<f64>() - 1.0;
            let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
            let phi = TAU * rng.gen::<f64>();
            let (bx, by, bz) = (radius * sin_t * phi.cos(), radius * sin_t * phi.sin(), radius * cos_t);
            ((1.0 - bz) / 2.0, Complex::new(bx / 2.0, -by / 2.0))
        }
    };
    QubitState::new(p, x)
}

/// Draws `cfg.n` states; deterministic in `(n, seed, law)`.
pub fn sample_states(cfg: &SamplerConfig) -> Result<Vec<QubitState<f64>>> {
    if cfg.n == 0 {
        return Err(invalid!("sample count must be positive"));
    }
    let chunks = cfg.n.div_ceil(CHUNK);
    let parts: Vec<Result<Vec<QubitState<f64>>>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(k as u64);
            let len = CHUNK.min(cfg.n - k * CHUNK);
            (0..len).map(|_| draw(&mut rng, cfg.law)).collect()
        })
        .collect();
    let mut out = Vec::with_capacity(cfg.n);
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CloudPoint {
    pub abscissa: f64,
    pub ordinate: f64,
    pub p: f64,
    pub x_abs: f64,
}

/// Measure pairs of `cfg.n` sampled states on one panel.
pub fn region_cloud(cfg: &SamplerConfig, panel: Panel) -> Result<Vec<CloudPoint>> {
    let states = sample_states(cfg)?;
    Ok(states
        .par_iter()
        .map(|s| {
            let (abscissa, ordinate) = panel.evaluate(s);
            CloudPoint { abscissa, ordinate, p: s.p(), x_abs: s.coherence_abs() }
        })
        .collect())
}
