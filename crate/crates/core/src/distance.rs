//! Qubit fidelity and the nonclassical distance measured
//! from the vacuum, the only classical state in the qubit subspace.

use crate::scalar::Real;
use crate::state::QubitState;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FidelityValue<T: Real>(pub T);

/// Reference set used for the nonclassical distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalReference {
    Vacuum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceValue<T: Real> {
    pub value: T,
    pub reference: ClassicalReference,
}

/// `Tr(rho sigma) + sqrt((1 - Tr rho^2)(1 - Tr sigma^2))`.
pub fn fidelity_qubit<T: Real>(a: &QubitState<T>, b: &QubitState<T>) -> FidelityValue<T> {
    let overlap = a.rho00() * b.rho00()
        + a.p() * b.p()
        + T::lit(2.0) * (a.x() * b.x().conj()).re;
    let mixedness = ((T::one() - a.purity()) * (T::one() - b.purity())).max(T::zero());
    FidelityValue((overlap + mixedness.sqrt()).max(T::zero()).min(T::one()))
}

/// `D_B^2 = 2 (1 - sqrt(F))`.
pub fn bures_distance_sq<T: Real>(a: &QubitState<T>, b: &QubitState<T>) -> T {
    let f = fidelity_qubit(a, b).0;
    (T::lit(2.0) * (T::one() - f.sqrt())).max(T::zero())
}

/// `D = 1 - F(rho, |0><0|)`, equal to `p` for every qubit state.
pub fn nonclassical_distance<T: Real>(state: &QubitState<T>) -> DistanceValue<T> {
    let f = fidelity_qubit(state, &QubitState::vacuum()).0;
    DistanceValue { value: T::one() - f, reference: ClassicalReference::Vacuum }
}

/// Half the squared Bures distance to the vacuum, `1 - sqrt(F) = 1 - sqrt(1 - p)`.
///
/// Diagnostic only: the measure reports use [`nonclassical_distance`].
pub fn half_bures_sq_to_vacuum<T: Real>(state: &QubitState<T>) -> T {
    bures_distance_sq(state, &QubitState::vacuum()) * T::lit(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::concurrence_potential;
    use crate::state::{family_state, StateFamily};
    use approx::assert_abs_diff_eq;
    use nalgebra::Complex;

    #[test]
    fn fidelity_examples() {
        let pure = family_state(StateFamily::Pure(0.3)).unwrap();
        assert_abs_diff_eq!(fidelity_qubit(&pure, &pure).0, 1.0, epsilon = 1e-15);
        let s = QubitState::new(0.4, Complex::new(0.1, 0.3)).unwrap();
        assert_abs_diff_eq!(fidelity_qubit(&s, &QubitState::vacuum()).0, 0.6, epsilon = 1e-15);
        let m = family_state(StateFamily::Mixed(0.5)).unwrap();
        assert_abs_diff_eq!(fidelity_qubit(&m, &m).0, 1.0, epsilon = 1e-15);
        let t = QubitState::real(0.7, 0.2).unwrap();
        assert_eq!(fidelity_qubit(&s, &t), fidelity_qubit(&t, &s));
    }

    #[test]
    fn bures_examples() {
        let s = QubitState::real(0.2, 0.3).unwrap();
        assert_abs_diff_eq!(bures_distance_sq(&s, &s), 0.0, epsilon = 1e-7);
        assert_abs_diff_eq!(bures_distance_sq(&QubitState::<f64>::single_photon(), &QubitState::vacuum()), 2.0, epsilon = 1e-15);
        let half = family_state(StateFamily::Pure(0.5)).unwrap();
        assert_abs_diff_eq!(
            bures_distance_sq(&half, &QubitState::vacuum()),
            2.0 * (1.0 - 0.5f64.sqrt()),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(2.0 * (1.0 - 0.5f64.sqrt()), 0.5858, epsilon = 1e-4);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(nonclassical_distance(&QubitState::<f64>::vacuum()).value, 0.0);
        let p2 = (6f64.sqrt() - 1.0) / 2.0;
        let rho2 = family_state(StateFamily::Mixed(p2)).unwrap();
        assert_abs_diff_eq!(nonclassical_distance(&rho2).value, p2, epsilon = 1e-15);
        let a = QubitState::real(0.35, 0.4).unwrap();
        let b = QubitState::real(0.35, 0.0).unwrap();
        assert_eq!(nonclassical_distance(&a).value, nonclassical_distance(&b).value);
        assert_eq!(nonclassical_distance(&a).value, concurrence_potential(&a));
    }

    #[test]
    fn diagnostic_variant_differs() {
        let s = QubitState::real(0.75f64, 0.0).unwrap();
        assert_abs_diff_eq!(half_bures_sq_to_vacuum(&s), 0.5, epsilon = 1e-15);
        assert!((half_bures_sq_to_vacuum(&s) - nonclassical_distance(&s).value).abs() > 0.1);
    }
}
