//! Single-qubit states in the {vacuum, single-photon} Fock basis.
//!
//! A state is stored through its single-photon population `p = <1|rho|1>`
//! and coherence `x = <0|rho|1>`. Trace and Hermiticity hold by
//! construction, positivity reduces to `|x|^2 <= p(1 - p)`.

use nalgebra::{Complex, ComplexField, Matrix2};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::boundary;
use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Default `p -> 0+` offset used for the `Plus` family.
pub const DEFAULT_PLUS_EPS: f64 = 1e-6;

/// Valid single-qubit density matrix `[[1-p, x], [x*, p]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState<T: Real> {
    p: T,
    x: Complex<T>,
}

impl<T: Real> QubitState<T> {
    /// Builds a state, rejecting parameters that are not a density matrix.
    ///
    /// Coherences exceeding the positivity bound by at most `T::PSD_SLACK`
    /// are clamped onto the bound (phase preserved).
    pub fn new(p: T, x: Complex<T>) -> Result<Self> {
        if !(p >= T::zero() && p <= T::one()) {
            return Err(Error::Nonphysical(format!("population p = {p} outside [0, 1]")));
        }
        let bound = p * (T::one() - p);
        let norm_sq = x.norm_sqr();
        if !norm_sq.is_finite() {
            return Err(Error::Nonphysical("coherence is not finite".into()));
        }
        if norm_sq <= bound {
            return Ok(Self { p, x });
        }
        if norm_sq <= bound + T::lit(T::PSD_SLACK) {
            let mut x = if bound > T::zero() {
                x * (bound.sqrt() / norm_sq.sqrt())
            } else {
                Complex::new(T::zero(), T::zero())
            };
            // rescaling can land an ulp above the bound
            let shrink = T::one() - T::default_epsilon() * T::lit(4.0);
            while x.norm_sqr() > bound {
                x *= shrink;
            }
            return Ok(Self { p, x });
        }
        Err(Error::Nonphysical(format!(
            "|x|^2 = {norm_sq} exceeds p(1-p) = {bound}; matrix is not positive semidefinite"
        )))
    }

    /// State with a real coherence.
    pub fn real(p: T, x: T) -> Result<Self> {
        Self::new(p, Complex::new(x, T::zero()))
    }

    pub fn vacuum() -> Self {
        Self { p: T::zero(), x: Complex::new(T::zero(), T::zero()) }
    }

    pub fn single_photon() -> Self {
        Self { p: T::one(), x: Complex::new(T::zero(), T::zero()) }
    }

    /// Single-photon population `<1|rho|1>`.
    #[inline]
    pub fn p(&self) -> T {
        self.p
    }

    /// Coherence `<0|rho|1>`.
    #[inline]
    pub fn x(&self) -> Complex<T> {
        self.x
    }

    #[inline]
    pub fn coherence_abs(&self) -> T {
        self.x.modulus()
    }

    /// Vacuum population `<0|rho|0>`.
    #[inline]
    pub fn rho00(&self) -> T {
        T::one() - self.p
    }

    /// Same state with its coherence rotated to the real nonnegative axis.
    pub fn with_real_coherence(&self) -> Self {
        Self { p: self.p, x: Complex::new(self.x.modulus(), T::zero()) }
    }

    pub fn matrix(&self) -> Matrix2<Complex<T>> {
        let z = Complex::new(self.rho00(), T::zero());
        let o = Complex::new(self.p, T::zero());
        Matrix2::new(z, self.x, self.x.conj(), o)
    }

    /// `Tr rho^2 = (1-p)^2 + p^2 + 2|x|^2`.
    pub fn purity(&self) -> T {
        let q = self.rho00();
        q * q + self.p * self.p + T::lit(2.0) * self.x.norm_sqr()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [T; 2] {
        let half = T::lit(0.5);
        let d = T::one() - T::lit(2.0) * self.p;
        let r = (d * d + T::lit(4.0) * self.x.norm_sqr()).sqrt();
        [half * (T::one() - r), half * (T::one() + r)]
    }
}

impl<T: Real> Serialize for QubitState<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("QubitState", 3)?;
        s.serialize_field("p", &self.p.as_f64())?;
        s.serialize_field("x_re", &self.x.re.as_f64())?;
        s.serialize_field("x_im", &self.x.im.as_f64())?;
        s.end()
    }
}

/// `make_state`: validating constructor.
pub fn make_state<T: Real>(p: T, x: Complex<T>) -> Result<QubitState<T>> {
    QubitState::new(p, x)
}

/// Tr rho^2.
pub fn purity<T: Real>(state: &QubitState<T>) -> T {
    state.purity()
}

/// Named one-parameter families used as boundary states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateFamily<T: Real> {
    /// `sqrt(1-p)|0> + sqrt(p)|1>`.
    Pure(T),
    /// `(1-p)|0><0| + p|1><1|`.
    Mixed(T),
    /// Maximizer of the negativity potential at fixed depth.
    Opt(T),
    /// Finite-`eps` representative of the `p -> 0+` family whose depth
    /// tends to `tau0` while distance and negativity vanish.
    Plus { tau0: T, eps: T },
    General(T, Complex<T>),
}

impl<T: Real> StateFamily<T> {
    pub fn plus(tau0: T) -> Self {
        StateFamily::Plus { tau0, eps: T::lit(DEFAULT_PLUS_EPS) }
    }
}

/// Coherence `x0(eps) = sqrt((1 + eps - eps/tau0) eps (1 - eps))` of the
/// plus family; keeps `tau` pinned near `tau0` as `eps -> 0`.
pub fn plus_coherence<T: Real>(tau0: T, eps: T) -> Result<T> {
    if !(tau0 > T::zero() && tau0 <= T::one()) {
        return Err(invalid!("plus family requires tau0 in (0, 1], got {tau0}"));
    }
    if !(eps > T::zero() && eps <= T::one()) {
        return Err(invalid!("plus family requires eps in (0, 1], got {eps}"));
    }
    let radicand = (T::one() + eps - eps / tau0) * eps * (T::one() - eps);
    if radicand < -T::lit(T::PSD_SLACK) {
        return Err(invalid!("eps = {eps} too large for tau0 = {tau0}: x0^2 = {radicand} < 0"));
    }
    Ok(radicand.max(T::zero()).sqrt())
}

pub fn family_state<T: Real>(family: StateFamily<T>) -> Result<QubitState<T>> {
    match family {
        StateFamily::Pure(p) => {
            check_unit("Pure", p)?;
            QubitState::real(p, (p * (T::one() - p)).sqrt())
        }
        StateFamily::Mixed(p) => {
            check_unit("Mixed", p)?;
            QubitState::real(p, T::zero())
        }
        StateFamily::Opt(tau) => boundary::optimal_state(tau, T::lit(boundary::DEFAULT_OPT_TOL)),
        StateFamily::Plus { tau0, eps } => QubitState::real(eps, plus_coherence(tau0, eps)?),
        StateFamily::General(p, x) => QubitState::new(p, x),
    }
}

fn check_unit<T: Real>(name: &str, p: T) -> Result<()> {
    if p >= T::zero() && p <= T::one() {
        Ok(())
    } else {
        Err(invalid!("{name}(p) requires p in [0, 1], got {p}"))
    }
}

/// State with distance `d` and depth `tau`: `(p, x) = (d, sqrt(d - d^2/tau))`.
pub fn from_measures_d_tau<T: Real>(d: T, tau: T) -> Result<QubitState<T>> {
    if !(tau > T::zero() && tau <= T::one()) {
        return Err(invalid!("depth tau must lie in (0, 1], got {tau}"));
    }
    if !(d >= T::zero()) {
        return Err(invalid!("distance must be nonnegative, got {d}"));
    }
    if d > tau + T::lit(T::PSD_SLACK) {
        return Err(Error::Nonphysical(format!("no state has D = {d} > tau = {tau}")));
    }
    let d = d.min(tau);
    let x_sq = (d - d * d / tau).max(T::zero());
    QubitState::real(d, x_sq.sqrt())
}
