//! Acceptance criteria, each at its stated tolerance and time budget.
//!
//! Runs as a plain binary (`harness = false`) so that the per-criterion
//! verdict lines are always printed. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use nonclassical::entanglement::{negativity_spectral, ADMISSIBLE_SLACK};
use nonclassical::qpd::{convolve_qpd, depth_numeric};
use nonclassical::verify::{
    case_table, ordering_table, reference_table, verify_boundary_containment, verify_chain_on, CHAIN_SLACK,
};
use nonclassical::*;
use rayon::prelude::*;

const SEED: u64 = 20_240_531;
const REFERENCE_TAU0: f64 = 0.3154;

struct Verdict {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Verdict {
    Verdict { passed: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Verdict {
    Verdict { passed: false, detail: detail.into() }
}

fn from_result<T>(r: Result<T>, ok: impl FnOnce(T) -> Verdict) -> Verdict {
    match r {
        Ok(v) => ok(v),
        Err(e) => fail(e.to_string()),
    }
}

fn random_states(n: usize, seed: u64) -> Vec<QubitStateF64> {
    sample_states(&SamplerConfig::new(n, seed)).expect("sampler")
}

fn reference_values() -> Verdict {
    from_result(reference_table(), |r| pass(format!("{} states, all four measures within {CHAIN_SLACK:e}", r.len())))
}

fn case_classification() -> Verdict {
    from_result(case_table(), |r| {
        let cases: Vec<String> = r.iter().map(|(name, c, _)| format!("{name}:{}", c.number())).collect();
        pass(cases.join(" "))
    })
}

fn orderings() -> Verdict {
    from_result(ordering_table(), |n| pass(format!("{n} rows hold")))
}

fn critical_depth() -> Verdict {
    from_result(find_tau0(1e-4), |est| {
        let off = (est.tau0 - REFERENCE_TAU0).abs();
        let msg = format!("tau0 = {:.6} in [{:.6}, {:.6}], |tau0 - {REFERENCE_TAU0}| = {off:.2e}", est.tau0, est.bracket.0, est.bracket.1);
        if off <= 5e-4 { pass(msg) } else { fail(msg) }
    })
}

fn closed_form_np() -> Verdict {
    let n = 200;
    let worst = (0..n)
        .into_par_iter()
        .map(|i| {
            let p = i as f64 / (n - 1) as f64;
            let mut worst: f64 = 0.0;
            for j in 0..n {
                let x = (p * (1.0 - p)).sqrt() * j as f64 / (n - 1) as f64;
                let s = QubitStateF64::real(p, x).unwrap();
                let spectral = negativity_spectral(&bs_output(&s, BsParams::balanced())).unwrap().value;
                worst = worst.max((negativity_potential_closed(&s) - spectral).abs());
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    let prime = QubitStateF64::real(0.125, 0.25).unwrap();
    let routes: Vec<f64> = NegativityMethod::ALL.iter().map(|m| negativity_potential(&prime, *m).unwrap()).collect();
    let spread = routes.iter().cloned().fold(f64::MIN, f64::max) - routes.iter().cloned().fold(f64::MAX, f64::min);
    let msg = format!("grid worst {worst:.2e}; (1/8, 1/4) route spread {spread:.2e}, NP = {:.12}", routes[0]);
    if worst <= 1e-8 && spread <= 1e-9 { pass(msg) } else { fail(msg) }
}

fn moment_quartic() -> Verdict {
    let states = random_states(1000, SEED ^ 6);
    let mut worst: f64 = 0.0;
    for s in &states {
        let out = bs_output(s, BsParams::balanced());
        let m = negativity_moments(&out);
        let sp = negativity_spectral(&out);
        match (m, sp) {
            (Ok(m), Ok(sp)) => worst = worst.max((m.value - sp.value).abs()),
            (Err(e), _) | (_, Err(e)) => return fail(format!("p = {}, x = {}: {e}", s.p(), s.x())),
        }
    }
    let msg = format!("1000 outputs, worst {worst:.2e} (root window slack {ADMISSIBLE_SLACK:e})");
    if worst <= 1e-8 { pass(msg) } else { fail(msg) }
}

fn depth_oracle() -> Verdict {
    let states = random_states(100, SEED ^ 7);
    let grid = GridSpecF64::default();
    let results: Vec<(QubitStateF64, Result<f64>)> = states
        .par_iter()
        .map(|s| (*s, depth_numeric(s, grid, 1e-8).map(|d| (d.tau - depth_analytic(s).tau).abs())))
        .collect();
    let mut worst: f64 = 0.0;
    let mut worst_state = None;
    let mut errors = Vec::new();
    for (s, r) in &results {
        match r {
            Ok(e) if *e > worst => {
                worst = *e;
                worst_state = Some(*s);
            }
            Ok(_) => {}
            Err(e) => errors.push(format!("(p = {:.4}, |x| = {:.4}): {e}", s.p(), s.coherence_abs())),
        }
    }
    let bad = results.iter().filter(|(_, r)| r.as_ref().map_or(true, |e| *e > 1e-4)).count();
    let mut msg = format!("100 states, worst |numeric - analytic| = {worst:.2e}, {bad} beyond 1e-4");
    if let Some(s) = worst_state {
        msg += &format!(" (worst at p = {:.4}, |x| = {:.4})", s.p(), s.coherence_abs());
    }
    if !errors.is_empty() {
        msg += &format!("; errors: {}", errors.join("; "));
    }
    if bad == 0 { pass(msg) } else { fail(msg) }
}

fn cloud() -> Vec<QubitStateF64> {
    random_states(100_000, SEED)
}

fn inequality_chain(states: &[QubitStateF64]) -> Verdict {
    from_result(verify_chain_on(states), |n| pass(format!("{n} states, zero violations at slack {CHAIN_SLACK:e}")))
}

fn boundary_containment(states: &[QubitStateF64], tau0: f64) -> Verdict {
    from_result(verify_boundary_containment(states, tau0, 1e-9), |r| {
        pass(format!(
            "{} states inside all three panels; min NP(opt) - NP(mixed) on [0.05, tau0 - 0.01] = {:.3e}",
            r.states, r.opt_over_mixed_margin
        ))
    })
}

fn distance_is_cp() -> Verdict {
    let states = random_states(10_000, SEED ^ 10);
    let worst = states
        .iter()
        .map(|s| (nonclassical_distance(s).value - concurrence_potential(s)).abs().max((nonclassical_distance(s).value - s.p()).abs()))
        .fold(0.0, f64::max);
    let msg = format!("10000 states, worst |D - CP| = {worst:.2e}");
    if worst <= 1e-12 { pass(msg) } else { fail(msg) }
}

fn convolution() -> Verdict {
    let grid = GridSpecF64::default();
    let states = [
        ("vacuum", QubitStateF64::vacuum()),
        ("mixed(1/2)", family_state(StateFamily::Mixed(0.5)).unwrap()),
        ("pure(1/2)", family_state(StateFamily::Pure(0.5)).unwrap()),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, s) in states {
        let conv = convolve_qpd(&s, 0.0, -1.0, grid);
        let direct = sample_qpd(&s, -1.0, grid);
        match (conv, direct) {
            (Ok(c), Ok(d)) => {
                let err = c.sup_distance(&d);
                ok &= err <= 1e-3;
                parts.push(format!("{name} {err:.2e}"));
            }
            (Err(e), _) | (_, Err(e)) => return fail(format!("{name}: {e}")),
        }
    }
    let msg = format!("sup error: {}", parts.join(", "));
    if ok { pass(msg) } else { fail(msg) }
}

fn main() {
    let mut failed = 0;
    let mut run = |id: u32, name: &str, budget: Duration, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let v = f();
        let elapsed = start.elapsed();
        let on_time = elapsed <= budget;
        let ok = v.passed && on_time;
        if !ok {
            failed += 1;
        }
        let timing = if on_time { String::new() } else { format!(" [over budget {budget:?}]") };
        println!(
            "[{}] {id:>2} {name}: {} ({:.2?}){timing}",
            if ok { "PASS" } else { "FAIL" },
            v.detail,
            elapsed
        );
    };

    run(1, "reference values", Duration::from_secs(1), &mut reference_values);
    run(2, "inequality case classification", Duration::from_secs(1), &mut case_classification);
    run(3, "measure orderings", Duration::from_secs(1), &mut orderings);
    run(4, "critical depth", Duration::from_secs(60), &mut critical_depth);
    run(5, "closed-form vs pipeline NP", Duration::from_secs(60), &mut closed_form_np);
    run(6, "moment-quartic oracle", Duration::from_secs(10), &mut moment_quartic);
    run(7, "depth oracle", Duration::from_secs(120), &mut depth_oracle);

    let start = Instant::now();
    let states = cloud();
    let sampling = start.elapsed();
    run(8, "inequality chain on Monte Carlo cloud", Duration::from_secs(60) - sampling, &mut || {
        inequality_chain(&states)
    });
    let tau0 = find_tau0(1e-4).map(|e| e.tau0).unwrap_or(REFERENCE_TAU0);
    run(9, "boundary containment", Duration::from_secs(120), &mut || boundary_containment(&states, tau0));
    run(10, "distance equals concurrence potential", Duration::from_secs(10), &mut distance_is_cp);
    run(11, "QPD convolution", Duration::from_secs(30), &mut convolution);

    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
