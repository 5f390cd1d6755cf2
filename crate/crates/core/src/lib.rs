//! Nonclassicality measures of single-qubit optical states
//! `rho = [[1 - p, x], [x*, p]]` in the vacuum/single-photon basis.
//!
//! Four measures are computed, each by more than one route:
//!
//! * the nonclassical depth `tau`, from the closed form and from a
//!   bisection on the sign of sampled quasiprobability distributions;
//! * the nonclassical distance `D` to the vacuum, via the qubit fidelity;
//! * the negativity potential `NP` of the balanced beam-splitter output,
//!   by two numerical routes and a closed form;
//! * the concurrence potential `CP`.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`). The
//! `*F64` aliases below name the double-precision instances used by the
//! verification suites and the command-line tool.
//!
//! ```
//! use nonclassical::{measure_report, QubitStateF64};
//!
//! let s = QubitStateF64::real(0.5, 0.5).unwrap();
//! let r = measure_report(&s).unwrap();
//! assert!((r.tau - 1.0).abs() < 1e-12);
//! assert!((r.negativity_potential - 0.5).abs() < 1e-9);
//! ```

pub mod beamsplitter;
pub mod boundary;
pub mod distance;
pub mod entanglement;
pub mod error;
pub mod montecarlo;
pub mod poly;
pub mod qpd;
pub mod report;
pub mod scalar;
pub mod state;
pub mod verify;

pub use beamsplitter::{bs_output, bs_output_pure, BsParams, TwoQubitPure, TwoQubitState};
pub use boundary::{
    boundary_curve, find_tau0, optimal_state, optimal_state_detailed, plus_family_curve, BoundaryCurve,
    CurveSample, Family, OptimalState, Panel, Tau0Estimate,
};
pub use distance::{bures_distance_sq, fidelity_qubit, nonclassical_distance, DistanceValue, FidelityValue};
pub use entanglement::{
    concurrence, concurrence_potential, entanglement_of_formation, negativity_moments, negativity_potential,
    negativity_potential_closed, negativity_spectral, NegativityMethod,
};
pub use error::{Error, Result};
pub use montecarlo::{region_cloud, sample_states, CloudPoint, SamplerConfig, SamplingLaw};
pub use qpd::{depth_analytic, depth_numeric, qpd_qubit, sample_qpd, DepthResult, GridSpec, QpdGrid};
pub use report::{measure_report, MeasureReport};
pub use nalgebra::Complex;
pub use scalar::Real;
pub use state::{family_state, make_state, purity, QubitState, StateFamily};

pub type QubitStateF64 = QubitState<f64>;
pub type QubitStateF32 = QubitState<f32>;
pub type TwoQubitStateF64 = TwoQubitState<f64>;
pub type TwoQubitStateF32 = TwoQubitState<f32>;
pub type GridSpecF64 = GridSpec<f64>;
pub type MeasureReportF64 = MeasureReport<f64>;
pub type BoundaryCurveF64 = BoundaryCurve<f64>;
