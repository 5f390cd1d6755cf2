//! Two-qubit negativity and concurrence, and the corresponding
//! entanglement potentials of single-qubit inputs.
//!
//! The negativity comes from the spectrum of the partial transpose or from
//! the real root of the quartic built from its moments. Beam-splitter
//! outputs of single-qubit states also have a closed form.

use nalgebra::{Complex, ComplexField, Matrix2, Matrix4, SymmetricEigen};

use crate::beamsplitter::{bs_output, BsParams, TwoQubitState};
use crate::error::{invalid, numerical, Result};
use crate::poly;
use crate::scalar::{clamp_noise, Real};
use crate::state::QubitState;

/// Window `[-ADMISSIBLE_SLACK, 1 + ADMISSIBLE_SLACK]` for quartic roots.
pub const ADMISSIBLE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NegativityMethod {
    Spectral,
    Moments,
    ClosedForm,
}

impl NegativityMethod {
    pub const ALL: [NegativityMethod; 3] =
        [NegativityMethod::Spectral, NegativityMethod::Moments, NegativityMethod::ClosedForm];
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityResult<T: Real> {
    pub value: T,
    pub method: NegativityMethod,
    /// Smallest eigenvalue of the partial transpose (spectral route).
    pub min_eigenvalue: Option<T>,
    /// `Tr[(rho^G)^2]` (moment route).
    pub pi2: Option<T>,
    /// `Tr[(rho^G)^3]` (moment route).
    pub pi3: Option<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceResult<T: Real> {
    pub value: T,
    /// Square roots of the eigenvalues of `rho rho~`, descending.
    pub lambdas: [T; 4],
}

/// Transpose on the second qubit: `(i j),(k l) -> (i l),(k j)`.
pub fn partial_transpose<T: Real>(rho: &TwoQubitState<T>) -> Matrix4<Complex<T>> {
    let m = rho.matrix();
    Matrix4::from_fn(|r, c| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (c / 2, c % 2);
        m[(2 * i + l, 2 * k + j)]
    })
}

fn hermitian_eigen<T: Real>(m: Matrix4<Complex<T>>) -> Result<SymmetricEigen<Complex<T>, nalgebra::U4>> {
    SymmetricEigen::try_new(m, T::default_epsilon(), 10_000)
        .ok_or_else(|| numerical!("Hermitian eigensolver did not converge"))
}

fn sorted_eigenvalues<T: Real>(m: Matrix4<Complex<T>>) -> Result<[T; 4]> {
    let e = hermitian_eigen(m)?;
    let mut v = [e.eigenvalues[0], e.eigenvalues[1], e.eigenvalues[2], e.eigenvalues[3]];
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(v)
}

/// `N = max(0, -2 min eig(rho^G))`.
pub fn negativity_spectral<T: Real>(rho: &TwoQubitState<T>) -> Result<NegativityResult<T>> {
    let eig = sorted_eigenvalues(partial_transpose(rho))?;
    let min = eig[0];
    let value = clamp_noise((-T::lit(2.0) * min).max(T::zero())).min(T::one());
    Ok(NegativityResult {
        value,
        method: NegativityMethod::Spectral,
        min_eigenvalue: Some(min),
        pi2: None,
        pi3: None,
    })
}

/// How the moment quartic picks the negativity among its real roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootSelection<T: Real> {
    /// Largest admissible root. Every root equals `-2 lambda` for some
    /// eigenvalue `lambda` of the partial transpose, so the largest root
    /// corresponds to the most negative eigenvalue.
    Largest,
    /// Admissible root closest to a reference value (validation runs).
    ClosestTo(T),
}

/// Coefficients (ascending) of
/// `48 det + 3N^4 + 6N^3 - 6N^2 (P2 - 1) - 4N (3 P2 - 2 P3 - 1)`.
pub fn moment_quartic<T: Real>(det: T, pi2: T, pi3: T) -> [T; 5] {
    let one = T::one();
    [
        T::lit(48.0) * det,
        -T::lit(4.0) * (T::lit(3.0) * pi2 - T::lit(2.0) * pi3 - one),
        -T::lit(6.0) * (pi2 - one),
        T::lit(6.0),
        T::lit(3.0),
    ]
}

/// Negativity from the moments `Pi_n = Tr[(rho^G)^n]` and `det rho^G`,
/// selecting the largest admissible root.
pub fn negativity_moments<T: Real>(rho: &TwoQubitState<T>) -> Result<NegativityResult<T>> {
    negativity_moments_with(rho, RootSelection::Largest)
}

pub fn negativity_moments_with<T: Real>(
    rho: &TwoQubitState<T>,
    selection: RootSelection<T>,
) -> Result<NegativityResult<T>> {
    let pt = partial_transpose(rho);
    let sq = pt * pt;
    let pi2 = sq.trace().re;
    let pi3 = (sq * pt).trace().re;
    let det = pt.determinant().re;
    let roots = poly::real_roots(&moment_quartic(det, pi2, pi3));
    if roots.is_empty() {
        return Err(numerical!("moment quartic has no real root (det = {det}, Pi2 = {pi2}, Pi3 = {pi3})"));
    }
    let slack = T::lit(ADMISSIBLE_SLACK);
    let admissible: Vec<T> = roots
        .iter()
        .copied()
        .filter(|&r| r >= -slack && r <= T::one() + slack)
        .collect();
    let value = if admissible.is_empty() {
        if roots.iter().all(|&r| r < -slack) {
            // every eigenvalue of the partial transpose is positive
            T::zero()
        } else {
            return Err(numerical!("moment quartic has no root in [0, 1]: {roots:?}"));
        }
    } else {
        match selection {
            RootSelection::Largest => admissible[admissible.len() - 1],
            RootSelection::ClosestTo(target) => admissible
                .iter()
                .copied()
                .fold(admissible[0], |best, r| if (r - target).abs() < (best - target).abs() { r } else { best }),
        }
    };
    Ok(NegativityResult {
        value: value.max(T::zero()).min(T::one()),
        method: NegativityMethod::Moments,
        min_eigenvalue: None,
        pi2: Some(pi2),
        pi3: Some(pi3),
    })
}

fn sigma2_pair<T: Real>() -> Matrix4<Complex<T>> {
    let o = Complex::new(T::zero(), T::zero());
    let sy = Matrix2::new(o, Complex::new(T::zero(), -T::one()), Complex::new(T::zero(), T::one()), o);
    sy.kronecker(&sy)
}

/// Wootters concurrence with the spin flip `(s2 x s2) rho* (s2 x s2)`.
///
/// The `lambda_j` are obtained from the Hermitian matrix
/// `sqrt(rho) rho~ sqrt(rho)`, which shares its spectrum with `rho rho~`.
pub fn concurrence<T: Real>(rho: &TwoQubitState<T>) -> Result<ConcurrenceResult<T>> {
    let m = *rho.matrix();
    let yy = sigma2_pair::<T>();
    let flipped = yy * m.map(|z| z.conj()) * yy;

    let e = hermitian_eigen(m)?;
    let roots = e.eigenvalues.map(|v| Complex::new(v.max(T::zero()).sqrt(), T::zero()));
    let sqrt_rho = e.eigenvectors * Matrix4::from_diagonal(&roots) * e.eigenvectors.adjoint();
    let r = sqrt_rho * flipped * sqrt_rho;
    let r = (r + r.adjoint()) * Complex::new(T::lit(0.5), T::zero());
    let ev = sorted_eigenvalues(r)?;
    // eigenvalues of R are only known to ~eps |R|; below that the square
    // root would turn rounding noise into a sqrt(eps)-sized lambda
    let floor = T::default_epsilon() * T::lit(64.0) * ev.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let mut lambdas = ev.map(|v| if v > floor { v.sqrt() } else { T::zero() });
    lambdas.reverse();
    let value = clamp_noise(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(T::zero());
    Ok(ConcurrenceResult { value: value.min(T::one()), lambdas })
}

/// Negativity of the balanced beam-splitter output.
pub fn negativity_potential<T: Real>(state: &QubitState<T>, method: NegativityMethod) -> Result<T> {
    match method {
        NegativityMethod::Spectral => Ok(negativity_spectral(&bs_output(state, BsParams::balanced()))?.value),
        NegativityMethod::Moments => Ok(negativity_moments(&bs_output(state, BsParams::balanced()))?.value),
        NegativityMethod::ClosedForm => Ok(negativity_potential_closed(state)),
    }
}

/// Closed-form negativity potential
/// `(2 Re cbrt(2 sqrt(a1) + 2 a2) + p - 2) / 3` with principal branches.
pub fn negativity_potential_closed<T: Real>(state: &QubitState<T>) -> T {
    let p = state.p();
    if p == T::zero() {
        return T::zero();
    }
    let xx = state.x().norm_sqr();
    let two = T::lit(2.0);
    let a2 = T::lit(14.0) * p * p * p - T::lit(21.0) * p * p + T::lit(15.0) * p
        + T::lit(9.0) * (p - two) * xx
        - T::lit(4.0);
    let inner = T::lit(5.0) * (p - T::one()) * p + T::lit(6.0) * xx + two;
    let a1 = a2 * a2 - two * inner * inner * inner;
    let root = ComplexField::sqrt(Complex::new(a1, T::zero()));
    let arg = root * two + Complex::new(two * a2, T::zero());
    let cube = ComplexField::cbrt(arg);
    let np = (two * cube.re + p - two) / T::lit(3.0);
    clamp_noise(np).max(T::zero()).min(T::one())
}

/// Closed-form value checked against the spectral route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckedClosedForm<T: Real> {
    /// Closed form when it agrees, spectral value otherwise.
    pub value: T,
    pub closed: T,
    pub spectral: T,
    /// Set when the closed form disagreed by more than the tolerance.
    pub fell_back: bool,
}

pub fn negativity_potential_closed_checked<T: Real>(state: &QubitState<T>, tol: T) -> Result<CheckedClosedForm<T>> {
    let closed = negativity_potential_closed(state);
    let spectral = negativity_potential(state, NegativityMethod::Spectral)?;
    let fell_back = !((closed - spectral).abs() <= tol);
    Ok(CheckedClosedForm { value: if fell_back { spectral } else { closed }, closed, spectral, fell_back })
}

/// `CP = 1 - <00|rho_out|00> = p`.
pub fn concurrence_potential<T: Real>(state: &QubitState<T>) -> T {
    state.p()
}

/// Concurrence of the balanced beam-splitter output, computed in full.
pub fn concurrence_potential_pipeline<T: Real>(state: &QubitState<T>) -> Result<T> {
    Ok(concurrence(&bs_output(state, BsParams::balanced()))?.value)
}

fn binary_entropy<T: Real>(x: T) -> T {
    let term = |v: T| if v > T::zero() { -v * v.log2() } else { T::zero() };
    term(x) + term(T::one() - x)
}

/// `E_F = h((1 + sqrt(1 - C^2)) / 2)`.
pub fn entanglement_of_formation<T: Real>(c: T) -> Result<T> {
    if !(c >= T::zero() && c <= T::one()) {
        return Err(invalid!("concurrence must lie in [0, 1], got {c}"));
    }
    let arg = (T::one() + (T::one() - c * c).max(T::zero()).sqrt()) * T::lit(0.5);
    Ok(binary_entropy(arg))
}
