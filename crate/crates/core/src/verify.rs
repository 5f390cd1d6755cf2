//! Verification suites. Reference values and inequalities are checked
//! directly; each measure is also compared across independent routes.
//!
//! These run in double precision; their tolerances are `f64` tolerances.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use rayon::prelude::*;

use crate::boundary::{find_tau0, mixed_distance_at_np, mixed_np, optimal_state_detailed, DEFAULT_OPT_TOL};
use crate::distance::nonclassical_distance;
use crate::entanglement::{
    concurrence_potential, concurrence_potential_pipeline, negativity_potential, negativity_potential_closed,
    NegativityMethod,
};
use crate::error::{invalid, Error, Result};
use crate::montecarlo::{sample_states, SamplerConfig};
use crate::qpd::{depth_analytic, depth_numeric, GridSpec};
use crate::report::{measure_report, MeasureReport};
use crate::state::{family_state, from_measures_d_tau, QubitState, StateFamily};

/// Slack of the inequality chain and tolerance of tabulated equalities.
pub const CHAIN_SLACK: f64 = 1e-9;

fn dump(r: &MeasureReport<f64>) -> String {
    format!(
        "p = {}, x = {}, tau = {}, D = {}, CP = {}, NP = {}",
        r.state.p(),
        r.state.x(),
        r.tau,
        r.distance,
        r.concurrence_potential,
        r.negativity_potential
    )
}

/// Equality pattern of `tau >= D = CP >= NP`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChainCase {
    /// `tau = D = NP`
    AllEqual,
    /// `tau > D > NP`
    Strict,
    /// `tau > D = NP`
    DepthAbove,
    /// `tau = D > NP`
    NegativityBelow,
}

impl ChainCase {
    pub fn number(&self) -> u8 {
        match self {
            ChainCase::AllEqual => 1,
            ChainCase::Strict => 2,
            ChainCase::DepthAbove => 3,
            ChainCase::NegativityBelow => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub measures: MeasureReport<f64>,
    pub case: ChainCase,
}

/// Checks `tau >= D = CP >= NP` within [`CHAIN_SLACK`] and classifies the
/// equality pattern.
pub fn verify_inequality_chain(state: &QubitState<f64>) -> Result<ChainReport> {
    let r = measure_report(state)?;
    let ok = r.tau >= r.distance - CHAIN_SLACK
        && (r.distance - r.concurrence_potential).abs() <= CHAIN_SLACK
        && r.concurrence_potential >= r.negativity_potential - CHAIN_SLACK;
    if !ok {
        return Err(Error::Verification(format!("inequality chain violated: {}", dump(&r))));
    }
    let eq_td = (r.tau - r.distance).abs() <= CHAIN_SLACK;
    let eq_dn = (r.distance - r.negativity_potential).abs() <= CHAIN_SLACK;
    let case = match (eq_td, eq_dn) {
        (true, true) => ChainCase::AllEqual,
        (false, false) => ChainCase::Strict,
        (false, true) => ChainCase::DepthAbove,
        (true, false) => ChainCase::NegativityBelow,
    };
    Ok(ChainReport { measures: r, case })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DephasingReport {
    pub p: f64,
    /// Sorted by increasing `|x|`.
    pub x_abs: Vec<f64>,
    pub tau: Vec<f64>,
    pub distance: Vec<f64>,
    pub np: Vec<f64>,
}

/// At fixed `p`, depth and negativity potential may only drop as `|x|`
/// shrinks, while the distance stays put.
pub fn verify_dephasing_chain(p: f64, x_grid: &[f64]) -> Result<DephasingReport> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid!("p must lie in [0, 1], got {p}"));
    }
    let mut states = x_grid
        .iter()
        .map(|&x| QubitState::real(p, x.abs()))
        .collect::<Result<Vec<_>>>()?;
    states.sort_by(|a, b| a.coherence_abs().total_cmp(&b.coherence_abs()));
    let mut rep = DephasingReport { p, x_abs: vec![], tau: vec![], distance: vec![], np: vec![] };
    for s in &states {
        rep.x_abs.push(s.coherence_abs());
        rep.tau.push(depth_analytic(s).tau);
        rep.distance.push(nonclassical_distance(s).value);
        rep.np.push(negativity_potential(s, NegativityMethod::Spectral)?);
    }
    for i in 1..states.len() {
        let bad = if rep.tau[i] < rep.tau[i - 1] - 1e-12 {
            Some("tau")
        } else if rep.np[i] < rep.np[i - 1] - 1e-12 {
            Some("NP")
        } else if rep.distance[i] != rep.distance[0] {
            Some("D")
        } else {
            None
        };
        if let Some(m) = bad {
            return Err(Error::Verification(format!(
                "{m} not monotone under dephasing at p = {p}: |x| = {} -> {}",
                rep.x_abs[i - 1],
                rep.x_abs[i]
            )));
        }
    }
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximalityReport {
    pub tau0: f64,
    /// Fixed depth: `D(Mixed(tau1)) - max D`, smallest over the grid.
    pub distance_margin: f64,
    /// Fixed depth above the transition: `NP(Mixed) - max NP`, smallest.
    pub np_margin_above_tau0: f64,
    /// Fixed NP: `D1 - D`, smallest over the sampled states.
    pub distance_at_np_margin: f64,
    /// Below the transition the mixed state is beaten; a witness `(p, |x|)`
    /// with its NP excess at depth 0.2.
    pub below_tau0_witness: (f64, f64, f64),
    pub states_checked: usize,
}

/// Extremality of the fully mixed states at fixed depth and at fixed NP,
/// and the expected breakdown below the critical depth.
pub fn verify_mixed_maximality() -> Result<MaximalityReport> {
    let tau0 = find_tau0(1e-4)?.tau0;
    let mut checked = 0;
    let mut distance_margin = f64::INFINITY;
    let mut np_margin = f64::INFINITY;

    for i in 1..=100 {
        let tau1 = i as f64 / 100.0;
        let d_mixed = nonclassical_distance(&family_state(StateFamily::Mixed(tau1))?).value;
        let np_mixed = mixed_np(tau1);
        for j in 1..=100 {
            let s = from_measures_d_tau(tau1 * j as f64 / 100.0, tau1)?;
            checked += 1;
            let d = nonclassical_distance(&s).value;
            distance_margin = distance_margin.min(d_mixed - d);
            if d > d_mixed + CHAIN_SLACK {
                return Err(Error::Verification(format!("D = {d} above mixed bound {d_mixed} at depth {tau1}")));
            }
            if tau1 >= tau0 + 1e-3 {
                let np = negativity_potential(&s, NegativityMethod::Spectral)?;
                np_margin = np_margin.min(np_mixed - np);
                if np > np_mixed + CHAIN_SLACK {
                    return Err(Error::Verification(format!(
                        "NP = {np} of (p, |x|) = ({}, {}) above mixed bound {np_mixed} at depth {tau1}",
                        s.p(),
                        s.coherence_abs()
                    )));
                }
            }
        }
    }

    let mut at_np_margin = f64::INFINITY;
    for i in 0..=200 {
        let p = i as f64 / 200.0;
        for j in 0..=50 {
            let s = QubitState::real(p, (p * (1.0 - p)).sqrt() * j as f64 / 50.0)?;
            checked += 1;
            let np = negativity_potential(&s, NegativityMethod::Spectral)?;
            let d1 = mixed_distance_at_np(np);
            let d = nonclassical_distance(&s).value;
            at_np_margin = at_np_margin.min(d1 - d);
            if d > d1 + CHAIN_SLACK {
                return Err(Error::Verification(format!("D = {d} above mixed curve {d1} at NP = {np}")));
            }
        }
    }

    let opt = optimal_state_detailed(0.2, DEFAULT_OPT_TOL)?;
    let excess = opt.np - mixed_np(0.2);
    if excess <= CHAIN_SLACK {
        return Err(Error::Verification(format!(
            "mixed state still maximal at depth 0.2 (excess {excess}); the transition was expected above it"
        )));
    }
    Ok(MaximalityReport {
        tau0,
        distance_margin,
        np_margin_above_tau0: np_margin,
        distance_at_np_margin: at_np_margin,
        below_tau0_witness: (opt.p_opt, opt.x_opt, excess),
        states_checked: checked,
    })
}

/// The seven reference states `rho_0 .. rho_6`.
pub fn reference_states() -> Result<[QubitState<f64>; 7]> {
    let p2 = (6f64.sqrt() - 1.0) / 2.0;
    Ok([
        QubitState::real(0.5, 0.25)?,
        QubitState::single_photon(),
        family_state(StateFamily::Mixed(p2))?,
        family_state(StateFamily::Mixed(0.5))?,
        family_state(StateFamily::Pure(0.5))?,
        family_state(StateFamily::Mixed(0.8))?,
        family_state(StateFamily::Mixed(0.6))?,
    ])
}

/// Closed-form `(tau, D = CP, NP)` of the reference states.
pub fn reference_values() -> [(f64, f64, f64); 7] {
    let p2 = (6f64.sqrt() - 1.0) / 2.0;
    [
        (4.0 / 7.0, 0.5, (2.0 * std::f64::consts::PI / 9.0).cos() - 0.5),
        (1.0, 1.0, 1.0),
        (p2, p2, 0.5),
        (0.5, 0.5, (2f64.sqrt() - 1.0) / 2.0),
        (1.0, 0.5, 0.5),
        (0.8, 0.8, (17f64.sqrt() - 1.0) / 5.0),
        (0.6, 0.6, (13f64.sqrt() - 2.0) / 5.0),
    ]
}

pub fn reference_table() -> Result<Vec<MeasureReport<f64>>> {
    let mut out = Vec::with_capacity(7);
    for (n, (s, (tau, d, np))) in reference_states()?.iter().zip(reference_values()).enumerate() {
        let r = measure_report(s)?;
        for (name, got, want) in [
            ("tau", r.tau, tau),
            ("D", r.distance, d),
            ("CP", r.concurrence_potential, d),
            ("NP", r.negativity_potential, np),
        ] {
            if (got - want).abs() > CHAIN_SLACK {
                return Err(Error::Verification(format!("rho_{n}: {name} = {got}, expected {want}")));
            }
        }
        out.push(r);
    }
    Ok(out)
}

/// Example states for each equality pattern, with the pattern they must show.
pub fn case_table() -> Result<Vec<(String, ChainCase, ChainCase)>> {
    let mut cases = vec![
        ("|0>".to_string(), QubitState::vacuum(), ChainCase::AllEqual),
        ("|1>".to_string(), QubitState::single_photon(), ChainCase::AllEqual),
        ("rho_0".to_string(), QubitState::real(0.5, 0.25)?, ChainCase::Strict),
    ];
    for p in [0.1, 0.25, 0.5, 0.75, 0.9] {
        cases.push((format!("pure({p})"), family_state(StateFamily::Pure(p))?, ChainCase::DepthAbove));
        cases.push((format!("mixed({p})"), family_state(StateFamily::Mixed(p))?, ChainCase::NegativityBelow));
    }
    let mut out = Vec::new();
    for (name, s, expected) in cases {
        let got = verify_inequality_chain(&s)?.case;
        if got != expected {
            return Err(Error::Verification(format!(
                "{name} falls in case {} instead of case {}",
                got.number(),
                expected.number()
            )));
        }
        out.push((name, expected, got));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Measure {
    Tau,
    D,
    Np,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Greater,
    Equal,
    Less,
}

/// One side of a row: `measure(rho_a) relation measure(rho_b)`.
pub type Comparison = (Measure, usize, Relation, usize);

pub const ORDERING_ROWS: [(Comparison, Comparison); 12] = {
    use Measure::*;
    use Relation::*;
    [
        ((Tau, 1, Greater, 2), (D, 1, Greater, 2)),
        ((Tau, 1, Equal, 4), (D, 1, Greater, 4)),
        ((Tau, 4, Greater, 3), (D, 4, Equal, 3)),
        ((Tau, 2, Less, 4), (D, 2, Greater, 4)),
        ((Tau, 1, Greater, 2), (Np, 1, Greater, 2)),
        ((Tau, 1, Equal, 4), (Np, 1, Greater, 4)),
        ((Tau, 4, Greater, 2), (Np, 4, Equal, 2)),
        ((Tau, 5, Less, 4), (Np, 5, Greater, 4)),
        ((Np, 1, Greater, 2), (D, 1, Greater, 2)),
        ((Np, 2, Equal, 4), (D, 2, Greater, 4)),
        ((Np, 4, Greater, 3), (D, 4, Equal, 3)),
        ((Np, 6, Less, 4), (D, 6, Greater, 4)),
    ]
};

fn holds(rel: Relation, a: f64, b: f64) -> bool {
    match rel {
        Relation::Greater => a - b > CHAIN_SLACK,
        Relation::Less => b - a > CHAIN_SLACK,
        Relation::Equal => (a - b).abs() <= CHAIN_SLACK,
    }
}

/// Checks every ordering row; returns the number of rows checked.
pub fn ordering_table() -> Result<usize> {
    let reports: Vec<MeasureReport<f64>> =
        reference_states()?.iter().map(measure_report).collect::<Result<_>>()?;
    let value = |m: Measure, n: usize| match m {
        Measure::Tau => reports[n].tau,
        Measure::D => reports[n].distance,
        Measure::Np => reports[n].negativity_potential,
    };
    for (row, (left, right)) in ORDERING_ROWS.iter().enumerate() {
        for &(m, a, rel, b) in [left, right] {
            if !holds(rel, value(m, a), value(m, b)) {
                return Err(Error::Verification(format!(
                    "row {}: {m:?}(rho_{a}) {rel:?} {m:?}(rho_{b}) fails; rho_{a}: {}; rho_{b}: {}",
                    row + 1,
                    dump(&reports[a]),
                    dump(&reports[b])
                )));
            }
        }
    }
    Ok(ORDERING_ROWS.len())
}

/// Named group of checks run by [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Tables,
    Inequalities,
    Oracles,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Tables => "tables",
            Suite::Inequalities => "inequalities",
            Suite::Oracles => "oracles",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tables" => Ok(Suite::Tables),
            "inequalities" => Ok(Suite::Inequalities),
            "oracles" => Ok(Suite::Oracles),
            "all" => Ok(Suite::All),
            other => Err(invalid!("unknown suite {other:?}; expected tables, inequalities, oracles or all")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContainmentReport {
    pub states: usize,
    /// `min NP(rho_opt(tau)) - NP(Mixed(tau))` over a grid of depths in
    /// `[0.05, tau0 - 0.01]`; positive when the optimal family lies strictly
    /// above the mixed one there.
    pub opt_over_mixed_margin: f64,
}

/// Checks that every state lies inside the boundary families on all three
/// panels, within `tol`: `tau >= D` against the mixed diagonal, `NP <= D <=
/// sqrt(2 NP (1 + NP)) - NP` between the pure and mixed curves, `NP` below
/// the optimal state of the same depth (and below the mixed state once the
/// depth exceeds `tau0 + 1e-3`), and all measures in `[0, 1]`.
pub fn verify_boundary_containment(states: &[QubitState<f64>], tau0: f64, tol: f64) -> Result<ContainmentReport> {
    let outside: Vec<String> = states
        .par_iter()
        .filter_map(|s| {
            let tau = depth_analytic(s).tau;
            let d = nonclassical_distance(s).value;
            let np = negativity_potential_closed(s);
            let at = format!("(p, x) = ({}, {})", s.p(), s.x());
            if ![tau, d, np].iter().all(|v| (0.0..=1.0).contains(v)) {
                return Some(format!("measure outside [0, 1] at {at}"));
            }
            if tau < d - tol {
                return Some(format!("D_vs_tau: tau = {tau} < D = {d} at {at}"));
            }
            if np > d + tol || d > mixed_distance_at_np(np) + tol {
                return Some(format!("D_vs_NP: (D, NP) = ({d}, {np}) outside the pure and mixed curves at {at}"));
            }
            if tau > 0.0 {
                let opt = match optimal_state_detailed(tau, DEFAULT_OPT_TOL) {
                    Ok(o) => o,
                    Err(e) => return Some(format!("optimizer failed at tau = {tau}: {e}")),
                };
                if np > opt.np + tol {
                    return Some(format!("NP_vs_tau: NP = {np} above the optimal {} at {at}", opt.np));
                }
                if tau >= tau0 + 1e-3 && np > mixed_np(tau) + tol {
                    return Some(format!("NP_vs_tau: NP = {np} above the mixed {} at {at}", mixed_np(tau)));
                }
            }
            None
        })
        .collect();
    if let Some(first) = outside.first() {
        return Err(Error::Verification(format!("{} states outside the boundaries; first: {first}", outside.len())));
    }
    let margin = (0..=200)
        .into_par_iter()
        .map(|k| {
            let t = 0.05 + (tau0 - 0.06) * k as f64 / 200.0;
            optimal_state_detailed(t, DEFAULT_OPT_TOL).map(|o| o.np - mixed_np(t))
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    if !(margin > 0.0) {
        return Err(Error::Verification(format!(
            "optimal family not strictly above the mixed one below tau0: margin {margin:e}"
        )));
    }
    Ok(ContainmentReport { states: states.len(), opt_over_mixed_margin: margin })
}

/// Inequality chain over many states; returns the count checked.
pub fn verify_chain_on(states: &[QubitState<f64>]) -> Result<usize> {
    let violations: Vec<String> = states
        .par_iter()
        .filter_map(|s| verify_inequality_chain(s).err().map(|e| e.to_string()))
        .collect();
    match violations.first() {
        None => Ok(states.len()),
        Some(first) => Err(Error::Verification(format!("{} violations; first: {first}", violations.len()))),
    }
}

/// Largest pairwise disagreement of the three negativity routes.
pub fn np_route_spread(states: &[QubitState<f64>]) -> Result<f64> {
    let spreads = states
        .par_iter()
        .map(|s| {
            let v = [
                negativity_potential(s, NegativityMethod::Spectral)?,
                negativity_potential(s, NegativityMethod::Moments)?,
                negativity_potential(s, NegativityMethod::ClosedForm)?,
            ];
            let hi = v.iter().cloned().fold(f64::MIN, f64::max);
            let lo = v.iter().cloned().fold(f64::MAX, f64::min);
            Ok(hi - lo)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(spreads.into_iter().fold(0.0, f64::max))
}

/// Largest `|tau_bisection - tau_analytic|`, with the state where it occurs.
pub fn depth_oracle_error(states: &[QubitState<f64>], grid: GridSpec<f64>, tol: f64) -> Result<(f64, QubitState<f64>)> {
    let errs = states
        .par_iter()
        .map(|s| Ok(((depth_numeric(s, grid, tol)?.tau - depth_analytic(s).tau).abs(), *s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(errs.into_iter().fold((0.0, QubitState::vacuum()), |a, b| if b.0 > a.0 { b } else { a }))
}

/// Largest change of any measure when the coherence phase is dropped.
pub fn phase_invariance_error(states: &[QubitState<f64>]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for s in states {
        let r = s.with_real_coherence();
        let pairs = [
            (depth_analytic(s).tau, depth_analytic(&r).tau),
            (nonclassical_distance(s).value, nonclassical_distance(&r).value),
            (negativity_potential(s, NegativityMethod::Spectral)?, negativity_potential(&r, NegativityMethod::Spectral)?),
            (concurrence_potential_pipeline(s)?, concurrence_potential_pipeline(&r)?),
        ];
        for (a, b) in pairs {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome<T, F: FnOnce(&T) -> String>(name: &str, r: Result<T>, ok: F) -> CheckOutcome {
    match r {
        Ok(v) => CheckOutcome { name: name.to_string(), passed: true, detail: ok(&v) },
        Err(e) => CheckOutcome { name: name.to_string(), passed: false, detail: e.to_string() },
    }
}

fn within(name: &str, value: f64, bound: f64) -> Result<f64> {
    if value <= bound {
        Ok(value)
    } else {
        Err(Error::Verification(format!("{name} = {value:e} exceeds {bound:e}")))
    }
}

fn random(n: usize, seed: u64) -> Result<Vec<QubitState<f64>>> {
    sample_states(&SamplerConfig::new(n, seed))
}

/// Runs one suite; every check is reported, failures included. Random
/// states are drawn from `seed`.
pub fn run_suite(suite: Suite, seed: u64) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Tables | Suite::All) {
        out.push(outcome("case_table", case_table(), |v| format!("{} states in their cases", v.len())));
        out.push(outcome("reference_table", reference_table(), |v| {
            format!("{} states, all measures within {CHAIN_SLACK:e}", v.len())
        }));
        out.push(outcome("ordering_table", ordering_table(), |n| format!("{n}/12 rows hold")));
    }
    if matches!(suite, Suite::Inequalities | Suite::All) {
        let cloud = random(100_000, seed);
        out.push(outcome("inequality_chain", cloud.clone().and_then(|c| verify_chain_on(&c)), |n| {
            format!("{n} states, zero violations at slack {CHAIN_SLACK:e}")
        }));
        let xs: Vec<f64> = (0..=5).map(|k| k as f64 / 10.0).collect();
        out.push(outcome("dephasing_chain", verify_dephasing_chain(0.5, &xs), |r| {
            format!("p = 1/2: tau {:.4} -> {:.4}, NP {:.4} -> {:.4}, D fixed", r.tau[0], r.tau[5], r.np[0], r.np[5])
        }));
        let maximality = verify_mixed_maximality();
        let tau0 = maximality.as_ref().map(|m| m.tau0).ok();
        out.push(outcome("mixed_maximality", maximality, |r| {
            format!(
                "tau0 = {:.5}, {} states; below tau0 the optimal state wins by {:.3e}",
                r.tau0, r.states_checked, r.below_tau0_witness.2
            )
        }));
        let containment = match (cloud, tau0) {
            (Ok(c), Some(t)) => verify_boundary_containment(&c, t, CHAIN_SLACK),
            (Err(e), _) => Err(e),
            (_, None) => Err(Error::Numerical("no tau0 estimate".into())),
        };
        out.push(outcome("boundary_containment", containment, |r| {
            format!("{} states inside; opt over mixed margin {:.3e}", r.states, r.opt_over_mixed_margin)
        }));
    }
    if matches!(suite, Suite::Oracles | Suite::All) {
        let depth = random(100, seed ^ 0x7)
            .and_then(|st| depth_oracle_error(&st, GridSpec::default(), 1e-8))
            .and_then(|(e, s)| {
                within("depth bisection error", e, 1e-4).map(|e| (e, s))
            });
        out.push(outcome("depth_bisection", depth, |(e, s)| {
            format!("100 states, worst {e:.2e} at (p, |x|) = ({:.4}, {:.4})", s.p(), s.coherence_abs())
        }));
        let np = random(10_000, seed ^ 0x6).and_then(|st| np_route_spread(&st)).and_then(|e| within("NP route spread", e, 1e-8));
        out.push(outcome("np_three_routes", np, |e| format!("10000 states, worst spread {e:.2e}")));
        let phase = random(1_000, seed ^ 0x5)
            .and_then(|st| phase_invariance_error(&st))
            .and_then(|e| within("phase dependence", e, 1e-12));
        out.push(outcome("phase_invariance", phase, |e| format!("1000 states, worst {e:.2e}")));
        let dcp = random(10_000, seed ^ 0xa).and_then(|st| {
            let worst = st
                .iter()
                .map(|s| (nonclassical_distance(s).value - concurrence_potential(s)).abs())
                .fold(0.0, f64::max);
            within("|D - CP|", worst, 1e-12)
        });
        out.push(outcome("distance_is_cp", dcp, |e| format!("10000 states, worst {e:.2e}")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_examples() {
        let one = verify_inequality_chain(&QubitState::single_photon()).unwrap();
        assert_eq!(one.case, ChainCase::AllEqual);
        assert_eq!(one.measures.tau, 1.0);
        assert_eq!(verify_inequality_chain(&QubitState::real(0.5, 0.25).unwrap()).unwrap().case, ChainCase::Strict);
        assert_eq!(
            verify_inequality_chain(&family_state(StateFamily::Mixed(0.3)).unwrap()).unwrap().case,
            ChainCase::NegativityBelow
        );
    }

    #[test]
    fn dephasing_examples() {
        let xs: Vec<f64> = (0..=5).map(|k| k as f64 / 10.0).rev().collect();
        let r = verify_dephasing_chain(0.5, &xs).unwrap();
        assert!((r.tau[0] - 0.5).abs() < 1e-12 && (r.tau[5] - 1.0).abs() < 1e-12);
        assert!(r.distance.iter().all(|d| *d == 0.5));
        assert!((r.np[0] - (2f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
        assert!((r.np[5] - 0.5).abs() < 1e-9);
        assert!(verify_dephasing_chain(0.5, &[0.6]).is_err());
    }

    #[test]
    fn mixed_curve_at_reference_np() {
        assert!((mixed_distance_at_np((2f64.sqrt() - 1.0) / 2.0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn tables() {
        assert_eq!(reference_table().unwrap().len(), 7);
        assert_eq!(ordering_table().unwrap(), 12);
        assert_eq!(case_table().unwrap().len(), 13);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Tables, Suite::Inequalities, Suite::Oracles, Suite::All] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
