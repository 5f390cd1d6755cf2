//! Boundary states of the measure-pair regions. The optimal partially mixed
//! state at fixed depth turns fully mixed past a critical depth; the
//! boundary curves of each panel are sampled from these families.

use std::fmt;
use std::str::FromStr;

use nalgebra::Complex;
use serde::Serialize;

use crate::distance::nonclassical_distance;
use crate::entanglement::negativity_potential_closed;
use crate::error::{invalid, numerical, Error, Result};
use crate::qpd::depth_analytic;
use crate::scalar::Real;
use crate::state::{family_state, plus_coherence, QubitState, StateFamily, DEFAULT_PLUS_EPS};

/// Default argument tolerance of the fixed-depth optimizer.
pub const DEFAULT_OPT_TOL: f64 = 1e-10;
/// Number of golden-section starts over the feasible interval.
pub const MULTI_STARTS: usize = 8;
/// `|x_opt|` below this counts as the fully mixed state.
pub const MIXED_THRESHOLD: f64 = 1e-5;
/// Default number of samples per boundary curve.
pub const DEFAULT_CURVE_SAMPLES: usize = 512;
/// Nominal critical depth, used only to place the denser curve samples.
pub const TAU0_NOMINAL: f64 = 0.3154;
/// Half width of the densely sampled window around the critical depth.
pub const TAU0_WINDOW: f64 = 0.05;

/// Negativity potential at depth `tau` as a function of the population,
/// with `|x|^2 = p - p^2 / tau`.
fn np_at_fixed_depth<T: Real>(tau: T, p: T) -> T {
    let x = (p - p * p / tau).max(T::zero()).sqrt();
    match QubitState::real(p, x) {
        Ok(s) => negativity_potential_closed(&s),
        Err(_) => T::zero(),
    }
}

fn golden_max<T: Real, F: Fn(T) -> T>(f: &F, mut a: T, mut b: T, tol: T) -> (T, T) {
    let inv_phi = T::lit((5f64.sqrt() - 1.0) / 2.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let (mut x, mut fx) = if fc >= fd { (c, fc) } else { (d, fd) };
    // one parabolic step through the final bracket
    let (fa, fb) = (f(a), f(b));
    for (cand, val) in [(a, fa), (b, fb)] {
        if val > fx {
            x = cand;
            fx = val;
        }
    }
    let denom = (x - a) * (fx - fb) - (x - b) * (fx - fa);
    if denom.abs() > T::zero() {
        let num = (x - a) * (x - a) * (fx - fb) - (x - b) * (x - b) * (fx - fa);
        let cand = x - T::lit(0.5) * num / denom;
        if cand > a && cand < b {
            let fv = f(cand);
            if fv > fx {
                x = cand;
                fx = fv;
            }
        }
    }
    (x, fx)
}

/// Maximizer of the negativity potential at fixed depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalState<T: Real> {
    pub tau: T,
    pub state: QubitState<T>,
    pub p_opt: T,
    pub x_opt: T,
    pub np: T,
    /// Two starts reached distinct maxima whose values differ by less
    /// than `1e-7`.
    pub ambiguous: bool,
}

impl<T: Real> OptimalState<T> {
    pub fn is_mixed(&self) -> bool {
        self.x_opt < T::lit(MIXED_THRESHOLD)
    }
}

pub fn optimal_state_detailed<T: Real>(tau: T, tol: T) -> Result<OptimalState<T>> {
    if !(tau > T::zero() && tau <= T::one()) {
        return Err(invalid!("optimal state needs tau in (0, 1], got {tau}"));
    }
    if !(tol > T::zero() && tol <= T::lit(1e-8)) {
        return Err(invalid!("optimizer tolerance must lie in (0, 1e-8], got {tol}"));
    }
    // |x|^2 = p - p^2/tau is feasible exactly for p in (0, tau]
    let f = |p: T| np_at_fixed_depth(tau, p);
    let width = tau / T::lit(MULTI_STARTS as f64);
    let mut found: Vec<(T, T)> = (0..MULTI_STARTS)
        .map(|k| {
            let a = width * T::lit(k as f64);
            golden_max(&f, a, a + width, tol)
        })
        .collect();
    found.push((tau, f(tau)));
    let best = found
        .iter()
        .copied()
        .fold(found[0], |b, c| if c.1 > b.1 { c } else { b });
    let ambiguous = found.iter().any(|&(p, v)| {
        (p - best.0).abs() > T::lit(1e-4) * tau && best.1 - v < T::lit(1e-7) && is_local_peak(&f, p, tau)
    });
    let p_opt = best.0;
    let x_opt = (p_opt - p_opt * p_opt / tau).max(T::zero()).sqrt();
    let state = QubitState::real(p_opt, x_opt)?;
    Ok(OptimalState { tau, state, p_opt, x_opt, np: best.1, ambiguous })
}

fn is_local_peak<T: Real, F: Fn(T) -> T>(f: &F, p: T, tau: T) -> bool {
    let h = T::lit(1e-5) * tau;
    let v = f(p);
    (p - h <= T::zero() || f(p - h) <= v) && (p + h > tau || f(p + h) <= v)
}

/// State of maximal negativity potential at depth `tau`.
pub fn optimal_state<T: Real>(tau: T, tol: T) -> Result<QubitState<T>> {
    Ok(optimal_state_detailed(tau, tol)?.state)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tau0Estimate {
    pub tau0: f64,
    pub bracket: (f64, f64),
    pub criterion: String,
}

/// Smallest depth at which the fixed-depth optimizer returns the fully
/// mixed state, located by bisection on the `|x_opt| < 1e-5` test.
pub fn find_tau0(tol: f64) -> Result<Tau0Estimate> {
    if !(1e-6..=1e-3).contains(&tol) {
        return Err(invalid!("tau0 tolerance must lie in [1e-6, 1e-3], got {tol}"));
    }
    let mixed_at = |tau: f64| -> Result<bool> { Ok(optimal_state_detailed(tau, DEFAULT_OPT_TOL)?.is_mixed()) };
    let (mut lo, mut hi) = (0.05, 0.9);
    if mixed_at(lo)? || !mixed_at(hi)? {
        return Err(numerical!("optimizer does not bracket the mixed-state transition on [{lo}, {hi}]"));
    }
    let width = tol.min(1e-4);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mixed_at(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Tau0Estimate {
        tau0: 0.5 * (lo + hi),
        bracket: (lo, hi),
        criterion: format!("smallest tau with |x_opt| < {MIXED_THRESHOLD:e} (bisection)"),
    })
}

/// Pair of measures shown on one panel, named `<abscissa>_vs_<ordinate>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Panel {
    #[serde(rename = "D_vs_tau")]
    DVsTau,
    #[serde(rename = "NP_vs_tau")]
    NpVsTau,
    #[serde(rename = "D_vs_NP")]
    DVsNp,
}

impl Panel {
    pub const ALL: [Panel; 3] = [Panel::DVsTau, Panel::NpVsTau, Panel::DVsNp];

    pub fn as_str(&self) -> &'static str {
        match self {
            Panel::DVsTau => "D_vs_tau",
            Panel::NpVsTau => "NP_vs_tau",
            Panel::DVsNp => "D_vs_NP",
        }
    }

    /// `(abscissa, ordinate)` for a state.
    pub fn evaluate<T: Real>(&self, state: &QubitState<T>) -> (T, T) {
        let tau = || depth_analytic(state).tau;
        let d = || nonclassical_distance(state).value;
        let np = || negativity_potential_closed(state);
        match self {
            Panel::DVsTau => (d(), tau()),
            Panel::NpVsTau => (np(), tau()),
            Panel::DVsNp => (d(), np()),
        }
    }
}

impl fmt::Display for Panel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Panel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D_vs_tau" => Ok(Panel::DVsTau),
            "NP_vs_tau" => Ok(Panel::NpVsTau),
            "D_vs_NP" => Ok(Panel::DVsNp),
            other => Err(invalid!("unknown panel {other:?}; expected D_vs_tau, NP_vs_tau or D_vs_NP")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Pure,
    Mixed,
    Opt,
    Plus,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Pure, Family::Mixed, Family::Opt, Family::Plus];

    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Pure => "pure",
            Family::Mixed => "mixed",
            Family::Opt => "opt",
            Family::Plus => "plus",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pure" => Ok(Family::Pure),
            "mixed" => Ok(Family::Mixed),
            "opt" => Ok(Family::Opt),
            "plus" => Ok(Family::Plus),
            other => Err(invalid!("unknown family {other:?}; expected pure, mixed, opt or plus")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample<T: Real + Serialize> {
    pub abscissa: T,
    pub ordinate: T,
    pub p: T,
    /// `|x|`; curve states carry real nonnegative coherences.
    pub x: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryCurve<T: Real + Serialize> {
    pub panel: Panel,
    pub family: Family,
    /// Ordered by strictly increasing abscissa.
    pub samples: Vec<CurveSample<T>>,
}

impl<T: Real + Serialize> BoundaryCurve<T> {
    fn from_states(panel: Panel, family: Family, states: impl IntoIterator<Item = QubitState<T>>) -> Self {
        let mut samples: Vec<CurveSample<T>> = states
            .into_iter()
            .map(|s| {
                let (abscissa, ordinate) = panel.evaluate(&s);
                CurveSample { abscissa, ordinate, p: s.p(), x: s.coherence_abs() }
            })
            .collect();
        samples.sort_by(|a, b| a.abscissa.partial_cmp(&b.abscissa).unwrap_or(std::cmp::Ordering::Equal));
        samples.dedup_by(|later, earlier| later.abscissa <= earlier.abscissa);
        BoundaryCurve { panel, family, samples }
    }

    pub fn state(&self, i: usize) -> Result<QubitState<T>> {
        let s = &self.samples[i];
        QubitState::real(s.p, s.x)
    }
}

/// Depth grid on `(0, 1]` with `factor`-times denser spacing within
/// [`TAU0_WINDOW`] of the nominal critical depth.
pub fn depth_grid(n: usize, factor: usize) -> Vec<f64> {
    let mut taus = Vec::with_capacity(n * 2);
    for i in 0..n {
        let a = (i + 1) as f64 / n as f64;
        taus.push(a);
        if i + 1 < n {
            let b = (i + 2) as f64 / n as f64;
            if (a - TAU0_NOMINAL).abs() < TAU0_WINDOW || (b - TAU0_NOMINAL).abs() < TAU0_WINDOW {
                for k in 1..factor {
                    taus.push(a + (b - a) * k as f64 / factor as f64);
                }
            }
        }
    }
    taus
}

/// Samples one boundary family on one panel.
pub fn boundary_curve<T: Real + Serialize>(panel: Panel, family: Family, n_samples: usize) -> Result<BoundaryCurve<T>> {
    if n_samples < 2 {
        return Err(invalid!("a boundary curve needs at least 2 samples, got {n_samples}"));
    }
    let n = n_samples;
    let unit = |i: usize| T::lit(i as f64 / (n - 1) as f64);
    let states: Vec<QubitState<T>> = match family {
        Family::Pure => {
            // the vacuum end has depth 0 and leaves the tau = 1 line
            let skip_vacuum = panel != Panel::DVsNp;
            (0..n)
                .map(|i| {
                    let p = if skip_vacuum { T::lit((i + 1) as f64 / n as f64) } else { unit(i) };
                    family_state(StateFamily::Pure(p))
                })
                .collect::<Result<_>>()?
        }
        Family::Mixed => (0..n).map(|i| family_state(StateFamily::Mixed(unit(i)))).collect::<Result<_>>()?,
        Family::Opt => depth_grid(n, 4)
            .into_iter()
            .map(|tau| optimal_state(T::lit(tau), T::lit(DEFAULT_OPT_TOL)))
            .collect::<Result<_>>()?,
        Family::Plus => (0..n)
            .map(|i| {
                let tau0 = T::lit((i + 1) as f64 / n as f64);
                // eps grows with tau0 so that the distances stay ordered
                let eps = T::lit(DEFAULT_PLUS_EPS) * tau0;
                family_state(StateFamily::Plus { tau0, eps })
            })
            .collect::<Result<_>>()?,
    };
    Ok(BoundaryCurve::from_states(panel, family, states))
}

/// Plus-family states `rho(eps, x0(eps))` for a fixed target depth, on the
/// distance-versus-depth panel.
pub fn plus_family_curve<T: Real + Serialize>(tau0_target: T, eps_list: &[T]) -> Result<BoundaryCurve<T>> {
    if !(tau0_target > T::zero() && tau0_target <= T::one()) {
        return Err(invalid!("tau0 target must lie in (0, 1], got {tau0_target}"));
    }
    let states = eps_list
        .iter()
        .map(|&eps| QubitState::new(eps, Complex::new(plus_coherence(tau0_target, eps)?, T::zero())))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryCurve::from_states(Panel::DVsTau, Family::Plus, states))
}

/// Upper bound of the distance at fixed negativity potential, reached by the
/// fully mixed states: `sqrt(2 N (1 + N)) - N`.
pub fn mixed_distance_at_np<T: Real>(np: T) -> T {
    (T::lit(2.0) * np * (T::one() + np)).sqrt() - np
}

/// Negativity potential of the fully mixed state with population `p`.
pub fn mixed_np<T: Real>(p: T) -> T {
    let q = T::one() - p;
    (q * q + p * p).sqrt() - q
}
