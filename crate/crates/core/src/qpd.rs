//! Cahill-Glauber s-parametrized quasiprobability distributions and the
//! nonclassical depth derived from them.
//!
//! `s = 1, 0, -1` give the P, Wigner and Husimi functions. The depth is
//! `tau = (1 - s0) / 2` where `s0` is the largest order at which the
//! distribution is nonnegative everywhere. It is available in closed form
//! ([`depth_analytic`]) and through an independent bisection on the sign of
//! the sampled distribution ([`depth_numeric`]).

use nalgebra::{Complex, DMatrix};

use crate::error::{invalid, numerical, Result};
use crate::scalar::Real;
use crate::state::QubitState;

/// Largest Fock dimension accepted by [`qpd_general`].
pub const MAX_FOCK_DIM: usize = 16;

/// Upper end of the order bracket in [`depth_numeric`]; the P function
/// itself is singular for these states and never sampled.
pub const S_UPPER: f64 = 1.0 - 1e-9;

/// Associated Laguerre polynomial `L_n^k(x)` by upward three-term recurrence.
pub fn laguerre<T: Real>(n: usize, k: i32, x: T) -> T {
    let k = T::lit(f64::from(k));
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = T::one() + k - x;
    for m in 1..n {
        let m_t = T::lit(m as f64);
        let next = ((T::lit(2.0) * m_t + T::one() + k - x) * cur - (m_t + k) * prev)
            / (m_t + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// Auxiliary quantities of the Fock-basis kernel at order `s` and point `alpha`.
#[derive(Debug, Clone, Copy)]
struct Kernel<T: Real> {
    /// `exp(-2|alpha|^2 / (1 - s)) / pi`
    c: T,
    /// `4|alpha|^2 / (1 - s^2)`
    x_alpha: T,
    /// `2 / (1 - s)`
    y: T,
    /// `(s + 1) / (s - 1)`
    z: T,
    /// `z x_alpha = -4|alpha|^2 / (1 - s)^2`, finite at `s = -1`
    zx: T,
}

impl<T: Real> Kernel<T> {
    #[inline]
    fn new(s: T, alpha: Complex<T>) -> Self {
        let one = T::one();
        let a2 = alpha.norm_sqr();
        Kernel {
            c: (-T::lit(2.0) * a2 / (one - s)).exp() * T::FRAC_1_PI(),
            x_alpha: T::lit(4.0) * a2 / (one - s * s),
            y: T::lit(2.0) / (one - s),
            z: (s + one) / (s - one),
            zx: -T::lit(4.0) * a2 / ((one - s) * (one - s)),
        }
    }
}

impl<T: Real> Kernel<T> {
    /// `z^n L_n^d(x_alpha)`. Near the Husimi end `x_alpha` diverges while
    /// `z` vanishes, so there the product is summed term by term in `z` and
    /// `z x_alpha`; elsewhere the recurrence is used.
    fn z_pow_laguerre(&self, n: usize, d: usize) -> T {
        if self.z.abs() > T::lit(1e-3) {
            return self.z.powi(n as i32) * laguerre(n, d as i32, self.x_alpha);
        }
        // L_n^d(x) = sum_k C(n + d, n - k) (-x)^k / k!
        let mut sum = T::zero();
        for k in 0..=n {
            let mut binom = 1.0;
            for j in 0..(n - k) {
                binom *= (d + k + 1 + j) as f64 / (j + 1) as f64;
            }
            let mut fact = 1.0;
            for j in 1..=k {
                fact *= j as f64;
            }
            sum += T::lit(binom / fact) * self.z.powi((n - k) as i32) * (-self.zx).powi(k as i32);
        }
        sum
    }
}

fn check_order<T: Real>(s: T) -> Result<()> {
    if s >= -T::one() && s < T::one() {
        Ok(())
    } else {
        Err(invalid!("order s = {s} outside [-1, 1); the P function (s = 1) is not sampled pointwise"))
    }
}

/// `W^(s)(alpha) = sum_{m,n} rho_mn <n|T^(s)(alpha)|m>` for a density matrix
/// given in the Fock basis.
pub fn qpd_general<T: Real>(rho: &DMatrix<Complex<T>>, s: T, alpha: Complex<T>) -> Result<T> {
    let dim = rho.nrows();
    if dim != rho.ncols() || dim == 0 {
        return Err(invalid!("density matrix must be square and nonempty, got {}x{}", dim, rho.ncols()));
    }
    if dim > MAX_FOCK_DIM {
        return Err(invalid!("Fock dimension {dim} exceeds the cap {MAX_FOCK_DIM}"));
    }
    check_order(s)?;
    let k = Kernel::new(s, alpha);
    let mut sum = Complex::new(T::zero(), T::zero());
    for n in 0..dim {
        for m in n..dim {
            // <n|T|m> for m >= n; the m < n block follows from Hermiticity.
            let d = m - n;
            let mut ratio = T::one();
            for j in (n + 1)..=m {
                ratio *= T::lit(j as f64);
            }
            let real_part = k.c
                * (T::one() / ratio).sqrt()
                * k.y.powi((d + 1) as i32)
                * k.z_pow_laguerre(n, d);
            let elem = alpha.conj().powu(d as u32) * real_part;
            sum += rho[(m, n)] * elem;
            if m != n {
                sum += rho[(n, m)] * elem.conj();
            }
        }
    }
    let scale = sum.re.abs().max(T::one());
    if sum.im.abs() > T::lit(T::IMAG_RESIDUE) * scale {
        return Err(numerical!(
            "imaginary residue {} in quasiprobability sum; is rho Hermitian?",
            sum.im
        ));
    }
    Ok(sum.re)
}

#[inline]
fn qpd_qubit_unchecked<T: Real>(state: &QubitState<T>, s: T, alpha: Complex<T>) -> T {
    let k = Kernel::new(s, alpha);
    let two = T::lit(2.0);
    k.c * k.y
        * (state.rho00()
            + (k.z - k.zx) * state.p()
            + two * k.y * (alpha * state.x()).re)
}

/// Sign-faithful, scale-free form of `W^(s)(alpha)`.
///
/// With the positive factor `c y` removed the distribution is the bracket
/// `B = rho00 + z rho11 + y^2 |alpha|^2 rho11 + 2 y Re(alpha rho01)`. The
/// result is `B / M`, where `M` sums the magnitudes of those four terms, so
/// it lies in `[-1, 1]` and its size measures how far `B` is from
/// cancelling to zero. The Gaussian envelope that buries negativity far
/// from the origin under rounding-level magnitudes does not enter.
#[inline]
fn qpd_qubit_sign_ratio<T: Real>(state: &QubitState<T>, s: T, alpha: Complex<T>) -> T {
    let one = T::one();
    let y = T::lit(2.0) / (one - s);
    let z = (s + one) / (s - one);
    let p = state.p();
    let terms = [
        state.rho00(),
        z * p,
        y * y * alpha.norm_sqr() * p,
        T::lit(2.0) * y * (alpha * state.x()).re,
    ];
    let b = terms.iter().fold(T::zero(), |acc, &t| acc + t);
    let m = terms.iter().fold(T::zero(), |acc, &t| acc + t.abs());
    if m > T::zero() {
        b / m
    } else {
        T::zero()
    }
}

/// Closed form `c y [rho00 + z (1 - x_alpha) rho11 + 2 y Re(alpha rho01)]`.
pub fn qpd_qubit<T: Real>(state: &QubitState<T>, s: T, alpha: Complex<T>) -> Result<T> {
    check_order(s)?;
    Ok(qpd_qubit_unchecked(state, s, alpha))
}

/// Square phase-space grid `|Re alpha|, |Im alpha| <= half_width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T: Real> {
    half_width: T,
    points_per_axis: usize,
}

impl<T: Real> GridSpec<T> {
    pub fn new(half_width: T, points_per_axis: usize) -> Result<Self> {
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(invalid!("grid half width must be positive, got {half_width}"));
        }
        if points_per_axis < 16 {
            return Err(invalid!("grid needs at least 16 points per axis, got {points_per_axis}"));
        }
        Ok(Self { half_width, points_per_axis })
    }

    pub fn half_width(&self) -> T {
        self.half_width
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    pub fn spacing(&self) -> T {
        T::lit(2.0) * self.half_width / T::lit((self.points_per_axis - 1) as f64)
    }

    /// Coordinate of grid index `i` along either axis.
    pub fn coord(&self, i: usize) -> T {
        -self.half_width + self.spacing() * T::lit(i as f64)
    }

    pub fn point(&self, i_re: usize, i_im: usize) -> Complex<T> {
        Complex::new(self.coord(i_re), self.coord(i_im))
    }
}

impl<T: Real> Default for GridSpec<T> {
    fn default() -> Self {
        Self { half_width: T::lit(4.0), points_per_axis: 81 }
    }
}

/// Values on a [`GridSpec`], row-major in (real index, imaginary index).
#[derive(Debug, Clone, PartialEq)]
pub struct QpdGrid<T: Real> {
    pub spec: GridSpec<T>,
    pub values: Vec<T>,
}

impl<T: Real> QpdGrid<T> {
    pub fn get(&self, i_re: usize, i_im: usize) -> T {
        self.values[i_re * self.spec.points_per_axis + i_im]
    }

    /// `(re_alpha, im_alpha, value)` triples in storage order.
    pub fn triples(&self) -> impl Iterator<Item = (T, T, T)> + '_ {
        let n = self.spec.points_per_axis;
        self.values.iter().enumerate().map(move |(idx, &v)| {
            (self.spec.coord(idx / n), self.spec.coord(idx % n), v)
        })
    }

    /// Largest absolute pointwise difference to another grid of the same shape.
    pub fn sup_distance(&self, other: &QpdGrid<T>) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).abs()))
    }
}

/// Samples `W^(s)` of a qubit state on a grid.
pub fn sample_qpd<T: Real>(state: &QubitState<T>, s: T, grid: GridSpec<T>) -> Result<QpdGrid<T>> {
    check_order(s)?;
    let n = grid.points_per_axis;
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            values.push(qpd_qubit_unchecked(state, s, grid.point(i, j)));
        }
    }
    Ok(QpdGrid { spec: grid, values })
}

/// Predicts `W^(s2)` by convolving the sampled `W^(s1)` with the Gaussian
/// kernel `2/(pi (s1-s2)) exp(-2|alpha-beta|^2/(s1-s2))`.
///
/// The kernel factorizes along the two axes, so the quadrature is applied as
/// two one-dimensional passes.
pub fn convolve_qpd<T: Real>(state: &QubitState<T>, s1: T, s2: T, grid: GridSpec<T>) -> Result<QpdGrid<T>> {
    if !(s2 < s1) {
        return Err(invalid!("convolution needs s2 < s1, got s1 = {s1}, s2 = {s2}"));
    }
    let source = sample_qpd(state, s1, grid)?;
    let n = grid.points_per_axis;
    let h = grid.spacing();
    let width = s1 - s2;
    // 1-D factor sqrt(2/(pi width)) exp(-2 d^2/width), times the cell length h.
    let norm = (T::lit(2.0) / (T::PI() * width)).sqrt() * h;
    let kernel: Vec<T> = (0..n)
        .map(|d| {
            let dist = h * T::lit(d as f64);
            norm * (-T::lit(2.0) * dist * dist / width).exp()
        })
        .collect();

    let mut pass = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = T::zero();
            for l in 0..n {
                acc += kernel[j.abs_diff(l)] * source.values[i * n + l];
            }
            pass[i * n + j] = acc;
        }
    }
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = T::zero();
            for k in 0..n {
                acc += kernel[i.abs_diff(k)] * pass[k * n + j];
            }
            out[i * n + j] = acc;
        }
    }
    Ok(QpdGrid { spec: grid, values: out })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthMethod {
    Analytic,
    Bisection,
}

/// Nonclassical depth with its critical Cahill-Glauber order `s0 = 1 - 2 tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthResult<T: Real> {
    pub tau: T,
    pub s0: T,
    /// Location of the most negative sample just above `s0` (bisection only).
    pub witness_alpha: Option<Complex<T>>,
    pub method: DepthMethod,
}

/// `tau = p^2 / (p - |x|^2)`, and `0` for the vacuum.
pub fn depth_analytic<T: Real>(state: &QubitState<T>) -> DepthResult<T> {
    let p = state.p();
    let tau = if p > T::zero() {
        (p * p / (p - state.x().norm_sqr())).min(T::one())
    } else {
        T::zero()
    };
    DepthResult {
        tau,
        s0: T::one() - T::lit(2.0) * tau,
        witness_alpha: None,
        method: DepthMethod::Analytic,
    }
}

/// Refinement settings for [`depth_numeric_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefineOptions {
    /// Number of zoom levels around each coarse local minimum.
    pub levels: usize,
    /// Spacing reduction per level.
    pub factor: usize,
    /// Coarse local minima followed per order.
    pub max_candidates: usize,
    /// Bisection stops once the order bracket is narrower than this.
    pub s_resolution: f64,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions { levels: 2, factor: 5, max_candidates: 16, s_resolution: 1e-10 }
    }
}

#[derive(Debug, Clone, Copy)]
struct GridMin<T: Real> {
    value: T,
    at: Complex<T>,
}

/// Largest window the search may grow to, as a multiple of the given one.
pub const MAX_WINDOW_GROWTH: u32 = 1024;

fn sample_sign_ratio<T: Real>(state: &QubitState<T>, s: T, grid: &GridSpec<T>) -> Vec<T> {
    let n = grid.points_per_axis;
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            values.push(qpd_qubit_sign_ratio(state, s, grid.point(i, j)));
        }
    }
    values
}

/// Minimum of the sign ratio over the grid, refined around every strict
/// coarse local minimum.
///
/// The window doubles while the coarse minimum sits on its edge, and each
/// doubling adds refinement so the final resolution does not degrade.
fn grid_minimum<T: Real>(
    state: &QubitState<T>,
    s: T,
    base: &GridSpec<T>,
    opts: &RefineOptions,
    tol: T,
) -> Result<GridMin<T>> {
    let n = base.points_per_axis;
    let mut values = sample_sign_ratio(state, s, base);
    let mut grid = *base;
    let mut growth = 1u32;
    loop {
        let (idx, lowest) = values
            .iter()
            .enumerate()
            .fold((0, values[0]), |acc, (k, &v)| if v < acc.1 { (k, v) } else { acc });
        let highest = values.iter().fold(lowest, |m, &v| m.max(v));
        let (i, j) = (idx / n, idx % n);
        let on_border = i == 0 || j == 0 || i == n - 1 || j == n - 1;
        if !on_border || highest - lowest <= tol {
            break;
        }
        if growth >= MAX_WINDOW_GROWTH {
            return Err(numerical!(
                "minimum of W^(s) at s = {s} still on the edge of a window of half width {}",
                grid.half_width
            ));
        }
        growth *= 2;
        grid = GridSpec { half_width: grid.half_width * T::lit(2.0), points_per_axis: n };
        values = sample_sign_ratio(state, s, &grid);
    }
    let extra_levels = if growth > 1 {
        ((growth as f64).ln() / (opts.factor.max(2) as f64).ln()).ceil() as usize
    } else {
        0
    };
    let grid = &grid;
    let mut candidates: Vec<(T, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = values[i * n + j];
            let mut strict = true;
            'nb: for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if a < 0 || b < 0 || a >= n as i64 || b >= n as i64 {
                        continue;
                    }
                    if values[a as usize * n + b as usize] <= v {
                        strict = false;
                        break 'nb;
                    }
                }
            }
            if strict {
                candidates.push((v, i, j));
            }
        }
    }
    if candidates.is_empty() {
        // constant or plateau grid: fall back to the global sample minimum
        let (idx, v) = values
            .iter()
            .enumerate()
            .fold((0, values[0]), |acc, (k, &v)| if v < acc.1 { (k, v) } else { acc });
        candidates.push((v, idx / n, idx % n));
    }
    candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    candidates.truncate(opts.max_candidates.max(1));

    let f = opts.factor.max(2);
    let half = f as i64;
    let mut best = GridMin { value: T::max_value().unwrap_or(T::one()), at: grid.point(0, 0) };
    for &(v0, i, j) in &candidates {
        let mut at = grid.point(i, j);
        let mut value = v0;
        let mut h = grid.spacing();
        let mut last_gain = T::zero();
        let mut on_edge = false;
        for _ in 0..opts.levels + extra_levels {
            let step = h / T::lit(f as f64);
            let before = value;
            let center = at;
            on_edge = false;
            for a in -half..=half {
                for b in -half..=half {
                    let pt = center
                        + Complex::new(step * T::lit(a as f64), step * T::lit(b as f64));
                    let w = qpd_qubit_sign_ratio(state, s, pt);
                    if w < value {
                        value = w;
                        at = pt;
                        on_edge = a.abs() == half || b.abs() == half;
                    }
                }
            }
            last_gain = before - value;
            h = step;
        }
        if value < T::zero() && on_edge && last_gain > T::lit(10.0) * tol {
            return Err(numerical!(
                "grid too coarse to bracket the minimum of W^(s) at s = {s}: refinement still descending near alpha = {at}"
            ));
        }
        if value < best.value {
            best.value = value;
            best.at = at;
        }
    }
    Ok(best)
}

/// Nonclassical depth by bisection on the sign of the sampled distribution,
/// with the default refinement settings.
pub fn depth_numeric<T: Real>(state: &QubitState<T>, grid: GridSpec<T>, tol: T) -> Result<DepthResult<T>> {
    depth_numeric_with(state, grid, tol, &RefineOptions::default())
}

/// Nonclassical depth by bisection over `s in [-1, 1 - 1e-9]`.
///
/// At each order the minimum over the grid of `W^(s)` in scale-free form
/// (its sign-determining bracket divided by the magnitude of the terms that
/// cancel in it) is compared against `-tol`; `s0` is the largest order
/// that passes. Local refinement follows every coarse local minimum and
/// the window grows while the minimum sits on its edge.
pub fn depth_numeric_with<T: Real>(
    state: &QubitState<T>,
    grid: GridSpec<T>,
    tol: T,
    opts: &RefineOptions,
) -> Result<DepthResult<T>> {
    if !(tol >= T::lit(1e-8) && tol <= T::lit(1e-2)) {
        return Err(invalid!("depth tolerance must lie in [1e-8, 1e-2], got {tol}"));
    }
    let nonnegative = |m: &GridMin<T>| m.value >= -tol;

    let mut hi = T::lit(S_UPPER);
    let top = grid_minimum(state, hi, &grid, opts, tol)?;
    if nonnegative(&top) {
        return Ok(DepthResult { tau: T::zero(), s0: T::one(), witness_alpha: None, method: DepthMethod::Bisection });
    }
    let mut lo = -T::one();
    let bottom = grid_minimum(state, lo, &grid, opts, tol)?;
    if !nonnegative(&bottom) {
        return Err(numerical!(
            "Husimi function sampled negative ({}) at alpha = {}; grid or state is invalid",
            bottom.value,
            bottom.at
        ));
    }
    let mut witness = top.at;
    let resolution = T::lit(opts.s_resolution);
    while hi - lo > resolution {
        let mid = (lo + hi) * T::lit(0.5);
        let m = grid_minimum(state, mid, &grid, opts, tol)?;
        if nonnegative(&m) {
            lo = mid;
        } else {
            hi = mid;
            witness = m.at;
        }
    }
    let s0 = lo;
    Ok(DepthResult {
        tau: (T::one() - s0) * T::lit(0.5),
        s0,
        witness_alpha: Some(witness),
        method: DepthMethod::Bisection,
    })
}
