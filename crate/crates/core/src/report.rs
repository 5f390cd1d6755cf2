//! All four measures of one state, with the residuals between routes that
//! should agree.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::distance::nonclassical_distance;
use crate::entanglement::{
    concurrence_potential, concurrence_potential_pipeline, negativity_potential,
    negativity_potential_closed_checked, NegativityMethod,
};
use crate::error::Result;
use crate::qpd::{depth_analytic, depth_numeric, GridSpec};
use crate::scalar::Real;
use crate::state::QubitState;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport<T: Real + Serialize> {
    pub state: QubitState<T>,
    pub tau: T,
    pub distance: T,
    pub concurrence_potential: T,
    pub negativity_potential: T,
    /// Absolute differences between independent routes to the same value.
    pub cross_check_residuals: BTreeMap<String, T>,
}

/// Tolerance under which the closed-form negativity is trusted.
fn closed_form_tol<T: Real>() -> T {
    T::lit(T::CLAMP) * T::lit(100.0)
}

pub fn measure_report<T: Real + Serialize>(state: &QubitState<T>) -> Result<MeasureReport<T>> {
    let tau = depth_analytic(state).tau;
    let distance = nonclassical_distance(state).value;
    let cp = concurrence_potential(state);
    let np = negativity_potential_closed_checked(state, closed_form_tol())?;
    let moments = negativity_potential(state, NegativityMethod::Moments)?;
    let cp_pipeline = concurrence_potential_pipeline(state)?;

    let mut res = BTreeMap::new();
    res.insert("np_closed_vs_spectral".to_string(), (np.closed - np.spectral).abs());
    res.insert("np_moments_vs_spectral".to_string(), (moments - np.spectral).abs());
    res.insert("cp_pipeline_vs_p".to_string(), (cp_pipeline - cp).abs());
    res.insert("distance_vs_cp".to_string(), (distance - cp).abs());
    Ok(MeasureReport {
        state: *state,
        tau,
        distance,
        concurrence_potential: cp,
        negativity_potential: np.value,
        cross_check_residuals: res,
    })
}

/// [`measure_report`] plus the residual of the grid-based depth.
pub fn measure_report_with_numeric_depth<T: Real + Serialize>(
    state: &QubitState<T>,
    grid: GridSpec<T>,
    tol: T,
) -> Result<MeasureReport<T>> {
    let mut report = measure_report(state)?;
    let numeric = depth_numeric(state, grid, tol)?;
    report
        .cross_check_residuals
        .insert("tau_numeric_vs_analytic".to_string(), (numeric.tau - report.tau).abs());
    Ok(report)
}
