//! Two-mode beam splitter acting on the {|0>, |1>} subspace of each mode.
//!
//! Basis order for two-qubit matrices is `|00>, |01>, |10>, |11>`, the first
//! label being the input mode.

use nalgebra::{Complex, ComplexField, Matrix4, Vector4};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::state::QubitState;

/// Beam splitter generated by `H = (a^dag b + a b^dag) / 2` for time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsParams<T: Real> {
    pub t: T,
}

impl<T: Real> BsParams<T> {
    pub fn new(t: T) -> Self {
        BsParams { t }
    }

    /// `t = pi / 2`, equal transmittance and reflectance.
    pub fn balanced() -> Self {
        BsParams { t: T::FRAC_PI_2() }
    }

    pub fn transmittance(&self) -> T {
        let c = (self.t * T::lit(0.5)).cos();
        c * c
    }

    pub fn reflectance(&self) -> T {
        let s = (self.t * T::lit(0.5)).sin();
        s * s
    }
}

/// Validated 4x4 two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState<T: Real> {
    rho: Matrix4<Complex<T>>,
}

impl<T: Real> TwoQubitState<T> {
    /// Checks that this is a density matrix, to `T::MATRIX_TOL`.
    pub fn new(rho: Matrix4<Complex<T>>) -> Result<Self> {
        let tol = T::lit(T::MATRIX_TOL);
        let herm = (rho - rho.adjoint()).iter().fold(T::zero(), |a, z| a.max(z.modulus()));
        if herm > tol {
            return Err(Error::Nonphysical(format!("two-qubit matrix is not Hermitian (residual {herm})")));
        }
        let tr = rho.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::Nonphysical(format!("two-qubit matrix has trace {tr}")));
        }
        let sym = (rho + rho.adjoint()) * Complex::new(T::lit(0.5), T::zero());
        let min_eig = sym.symmetric_eigenvalues().iter().fold(T::max_value().unwrap_or(T::one()), |a, &v| a.min(v));
        if min_eig < -tol {
            return Err(Error::Nonphysical(format!("two-qubit matrix has eigenvalue {min_eig} < 0")));
        }
        Ok(TwoQubitState { rho })
    }

    /// Wraps a matrix produced by a trusted construction.
    pub(crate) fn from_trusted(rho: Matrix4<Complex<T>>) -> Self {
        TwoQubitState { rho }
    }

    pub fn matrix(&self) -> &Matrix4<Complex<T>> {
        &self.rho
    }

    /// `|00><00|`.
    pub fn vacuum() -> Self {
        let mut rho = Matrix4::zeros();
        rho[(0, 0)] = Complex::new(T::one(), T::zero());
        TwoQubitState { rho }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.rho[(row, col)]
    }
}

/// Pure two-qubit state `sum c_mn |mn>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitPure<T: Real> {
    /// Amplitudes `c00, c01, c10, c11`.
    pub amps: [Complex<T>; 4],
}

impl<T: Real> TwoQubitPure<T> {
    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |a, c| a + c.norm_sqr())
    }

    pub fn projector(&self) -> TwoQubitState<T> {
        let v = Vector4::from(self.amps);
        TwoQubitState::from_trusted(v * v.adjoint())
    }

    /// `2 |c00 c11 - c01 c10|`, which is both the concurrence and the
    /// negativity of a pure two-qubit state.
    pub fn concurrence(&self) -> T {
        let [c00, c01, c10, c11] = self.amps;
        T::lit(2.0) * (c00 * c11 - c01 * c10).modulus()
    }
}

/// Matrix of `exp(-i H t)` in the `|00>, |01>, |10>, |11>` basis.
pub fn bs_unitary<T: Real>(params: BsParams<T>) -> Matrix4<Complex<T>> {
    let half = params.t * T::lit(0.5);
    let c = Complex::new(half.cos(), T::zero());
    let s = Complex::new(T::zero(), -half.sin());
    let one = Complex::new(T::one(), T::zero());
    let o = Complex::new(T::zero(), T::zero());
    Matrix4::new(
        one, o, o, o, //
        o, c, s, o, //
        o, s, c, o, //
        o, o, o, one,
    )
}

/// `U (rho (x) |0><0|) U^dag`.
pub fn bs_output<T: Real>(state: &QubitState<T>, params: BsParams<T>) -> TwoQubitState<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let r = state.matrix();
    let mut input = Matrix4::from_element(zero);
    // |m 0> sits at index 2m
    for m in 0..2 {
        for n in 0..2 {
            input[(2 * m, 2 * n)] = r[(m, n)];
        }
    }
    let u = bs_unitary(params);
    TwoQubitState::from_trusted(u * input * u.adjoint())
}

/// Output of the balanced splitter for the pure input `sqrt(1-p)|0> + sqrt(p)|1>`.
pub fn bs_output_pure<T: Real>(p: T) -> Result<TwoQubitPure<T>> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::InvalidArgument(format!("p = {p} outside [0, 1]")));
    }
    let h = (p * T::lit(0.5)).sqrt();
    Ok(TwoQubitPure {
        amps: [
            Complex::new((T::one() - p).sqrt(), T::zero()),
            Complex::new(T::zero(), -h),
            Complex::new(h, T::zero()),
            Complex::new(T::zero(), T::zero()),
        ],
    })
}
