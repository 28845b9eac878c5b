//! Gabor systems `(E_{mb} T_{na} g)` on a sampled periodic line.
//!
//! A [`GridSpec`] with `s` samples per unit and period `P` replaces the real
//! line by `L = s·P` points `x_j = j/s` with periodic indexing. Modulation is
//! `E_{mb} f(x) = e^{2πi m b x} f(x)` and translation `T_{na} f(x) = f(x - na)`.
//! Lattice parameters are exact rationals; every quantity that must land on
//! the grid is checked exactly and rejected with a typed error otherwise.
//!
//! Frame vectors carry the factor `1/√s`, so discrete inner products
//! approximate `L²` inner products and the frame operator in the painless
//! case is multiplication by `G(x)/b` as in the continuous setting.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::frames::{self, Frame, FrameBounds};
use crate::oplin::{self, LinearMap};
use crate::STRICT_MARGIN;

pub type Rational = Ratio<i64>;

/// Residual below which a Janssen sum counts as exact duality.
pub const JANSSEN_TOL: f64 = 1e-10;
/// Residual below which an operator counts as commuting with `E_b`, `T_a`.
pub const COMMUTATION_TOL: f64 = 1e-9;
/// Tolerance of the partition-of-unity hypothesis.
pub const PARTITION_TOL: f64 = 1e-10;
/// Relative off-diagonal mass allowed for a diagonal frame operator.
pub const DIAGONAL_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn exact_int(r: Rational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer())
}

/// Periodic sampling grid: `s` samples per unit over `P` units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridSpec {
    samples_per_unit: usize,
    period: usize,
}

impl GridSpec {
    pub fn new(samples_per_unit: usize, period: usize) -> Result<Self> {
        if samples_per_unit == 0 || period == 0 {
            return Err(Error::LatticeMismatch(format!(
                "grid needs positive sizes, got s = {samples_per_unit}, P = {period}"
            )));
        }
        Ok(Self {
            samples_per_unit,
            period,
        })
    }

    pub fn samples_per_unit(&self) -> usize {
        self.samples_per_unit
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// `L = s·P`.
    pub fn total(&self) -> usize {
        self.samples_per_unit * self.period
    }

    /// `x_j = j/s`.
    pub fn point(&self, j: usize) -> f64 {
        j as f64 / self.samples_per_unit as f64
    }

    /// Representative of `x_j` in `[-P/2, P/2)`.
    pub fn signed_point(&self, j: usize) -> f64 {
        let l = self.total();
        let j = j % l;
        if 2 * j < l {
            self.point(j)
        } else {
            -((l - j) as f64) / self.samples_per_unit as f64
        }
    }

    /// Number of samples spanned by a rational length, which must be an
    /// integer.
    pub fn samples_of(&self, r: Rational, what: &'static str) -> Result<i64> {
        exact_int(r * Rational::from_integer(self.samples_per_unit as i64)).ok_or_else(|| {
            Error::OffGrid {
                what,
                value: r.to_string(),
            }
        })
    }

    fn wrap(&self, j: i64) -> usize {
        j.rem_euclid(self.total() as i64) as usize
    }
}

/// A function on the periodic grid; `at(j)` reads index `j mod L`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWindow {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl SampledWindow {
    pub fn new(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.total() {
            return Err(Error::DimensionMismatch(format!(
                "window has {} samples, grid needs {}",
                values.len(),
                grid.total()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_real(grid: GridSpec, values: &[f64]) -> Result<Self> {
        Self::new(grid, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            values: vec![ZERO; grid.total()],
        }
    }

    /// Samples `f` at the representative of each grid point in `[-P/2, P/2)`.
    pub fn from_periodic_fn(grid: GridSpec, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..grid.total())
            .map(|j| Complex64::new(f(grid.signed_point(j)), 0.0))
            .collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn at(&self, j: i64) -> Complex64 {
        self.values[self.grid.wrap(j)]
    }

    /// `x ↦ g(x + k/s)`.
    pub fn advanced(&self, k: i64) -> Self {
        let values = (0..self.values.len())
            .map(|j| self.at(j as i64 + k))
            .collect();
        Self {
            grid: self.grid,
            values,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Largest pointwise distance to another window on the same grid.
    pub fn max_distance(&self, other: &Self) -> Result<f64> {
        same_grid(self, other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    fn combine(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

fn same_grid(g: &SampledWindow, h: &SampledWindow) -> Result<()> {
    if g.grid != h.grid {
        return Err(Error::DimensionMismatch(format!(
            "windows live on different grids ({:?} vs {:?})",
            g.grid, h.grid
        )));
    }
    Ok(())
}

/// Time step `a` (units) and frequency step `b` (cycles per unit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaborLattice {
    pub a: Rational,
    pub b: Rational,
}

/// Integer sizes of a lattice on a particular grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeLayout {
    pub grid: GridSpec,
    /// `α = a·s`, the shift in samples.
    pub alpha: usize,
    /// `N_t = P/a` time shifts.
    pub shifts: usize,
    /// `N_m = s/b` modulations; also the sample length of `1/b`.
    pub modulations: usize,
    /// `b·P`, the phase increment of `E_b` in units of `2π/L`.
    pub phase_step: usize,
    pub b: f64,
}

impl GaborLattice {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        let zero = Rational::from_integer(0);
        if a <= zero || b <= zero {
            return Err(Error::LatticeMismatch(format!(
                "lattice steps must be positive, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn layout(&self, grid: GridSpec) -> Result<LatticeLayout> {
        let alpha = grid.samples_of(self.a, "a·s")?;
        let p = Rational::from_integer(grid.period() as i64);
        let s = Rational::from_integer(grid.samples_per_unit() as i64);
        let shifts = exact_int(p / self.a).ok_or_else(|| {
            Error::LatticeMismatch(format!("P/a = {} is not an integer", p / self.a))
        })?;
        let modulations = exact_int(s / self.b).ok_or_else(|| {
            Error::LatticeMismatch(format!("s/b = {} is not an integer", s / self.b))
        })?;
        let phase_step = exact_int(self.b * p).ok_or_else(|| {
            Error::LatticeMismatch(format!("b·P = {} is not an integer", self.b * p))
        })?;
        Ok(LatticeLayout {
            grid,
            alpha: alpha as usize,
            shifts: shifts as usize,
            modulations: modulations as usize,
            phase_step: phase_step as usize,
            b: to_f64(self.b),
        })
    }

    /// `a·b`; systems with `a·b > 1` are never frames.
    pub fn density_inverse(&self) -> Rational {
        self.a * self.b
    }
}

/// `e^{2πik/L}` for `k < L`.
fn roots_of_unity(l: usize) -> Vec<Complex64> {
    (0..l)
        .map(|k| {
            let t = 2.0 * core::f64::consts::PI * k as f64 / l as f64;
            Complex64::new(libm::cos(t), libm::sin(t))
        })
        .collect()
}

/// Materializes `(E_{mb} T_{na} g)` as a frame for `C^L`; column
/// `n·N_m + m` holds `E_{mb} T_{na} g / √s`.
pub fn gabor_frame(g: &SampledWindow, lat: &GaborLattice) -> Result<Frame> {
    let lay = lat.layout(g.grid())?;
    let l = lay.grid.total();
    let roots = roots_of_unity(l);
    let norm = 1.0 / libm::sqrt(lay.grid.samples_per_unit() as f64);
    let cols = lay.shifts * lay.modulations;
    let mut data = vec![ZERO; l * cols];
    for n in 0..lay.shifts {
        for j in 0..l {
            let gv = g.at(j as i64 - (n * lay.alpha) as i64) * norm;
            if gv == ZERO {
                continue;
            }
            let row = &mut data[j * cols + n * lay.modulations..j * cols + (n + 1) * lay.modulations];
            let step = (lay.phase_step * j) % l;
            let mut phase = 0usize;
            for slot in row.iter_mut() {
                *slot = roots[phase] * gv;
                phase = (phase + step) % l;
            }
        }
    }
    Ok(Frame::from_synthesis(LinearMap::from_raw(l, cols, data)))
}

/// `T_G U_H` computed without materializing the frames:
/// `(1/b) [j ≡ j' mod s/b] Σ_n g(j - nα) conj(h(j' - nα))`.
pub fn mixed_operator(g: &SampledWindow, h: &SampledWindow, lat: &GaborLattice) -> Result<LinearMap> {
    same_grid(g, h)?;
    let lay = lat.layout(g.grid())?;
    let l = lay.grid.total();
    let mut out = LinearMap::zeros(l, l);
    for j in 0..l {
        let mut jp = j % lay.modulations;
        while jp < l {
            let mut acc = ZERO;
            for n in 0..lay.shifts {
                let shift = (n * lay.alpha) as i64;
                acc += g.at(j as i64 - shift) * h.at(jp as i64 - shift).conj();
            }
            out[(j, jp)] = acc / lay.b;
            jp += lay.modulations;
        }
    }
    Ok(out)
}

/// The frame operator `S_G`, through [`mixed_operator`].
pub fn frame_operator(g: &SampledWindow, lat: &GaborLattice) -> Result<LinearMap> {
    mixed_operator(g, g, lat)
}

/// Optimal frame bounds of `(E_{mb} T_{na} g)`.
pub fn frame_bounds(g: &SampledWindow, lat: &GaborLattice) -> Result<FrameBounds> {
    let s = frame_operator(g, lat)?;
    Ok(frames::bounds_from_spectrum(&oplin::herm_eigenvalues(&s)?))
}

/// B-spline `B_N` at a real point, from the recurrence
/// `B_N(x) = (x B_{N-1}(x) + (N - x) B_{N-1}(x - 1)) / (N - 1)`.
pub fn bspline_value(order: usize, x: f64) -> f64 {
    if order == 0 || x < 0.0 || x >= order as f64 {
        return 0.0;
    }
    // level k holds B_k(x - i) for i in 0..=order-k
    let mut level: Vec<f64> = (0..order)
        .map(|i| {
            let y = x - i as f64;
            if (0.0..1.0).contains(&y) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    for k in 2..=order {
        let kf = k as f64;
        for i in 0..=order - k {
            let y = x - i as f64;
            level[i] = (y * level[i] + (kf - y) * level[i + 1]) / (kf - 1.0);
        }
    }
    level[0]
}

/// `B_N(x + N/2)`, supported on `[-N/2, N/2]`.
pub fn centered_bspline_value(order: usize, x: f64) -> f64 {
    bspline_value(order, x + order as f64 / 2.0)
}

/// `B_N` on the grid, using the recurrence on exact sample indices.
pub fn sample_bspline(order: usize, grid: GridSpec) -> Result<SampledWindow> {
    if order == 0 || grid.period() < order {
        return Err(Error::SupportOverflow {
            order,
            period: grid.period(),
        });
    }
    let s = grid.samples_per_unit();
    let span = order * s + 1;
    let mut cur: Vec<f64> = (0..span).map(|j| if j < s { 1.0 } else { 0.0 }).collect();
    for k in 2..=order {
        let kf = k as f64;
        let prev = cur.clone();
        for j in 0..span {
            let x = j as f64 / s as f64;
            let back = if j >= s { prev[j - s] } else { 0.0 };
            cur[j] = (x * prev[j] + (kf - x) * back) / (kf - 1.0);
        }
    }
    let mut values = vec![ZERO; grid.total()];
    for (j, v) in cur.into_iter().enumerate().take(grid.total()) {
        values[j] = Complex64::new(v, 0.0);
    }
    Ok(SampledWindow { grid, values })
}

/// `χ_[0,c)` on the grid.
pub fn sample_char(c: Rational, grid: GridSpec) -> Result<SampledWindow> {
    let n = grid.samples_of(c, "c·s")?;
    if n <= 0 || n as usize > grid.total() {
        return Err(Error::OffGrid {
            what: "c",
            value: c.to_string(),
        });
    }
    let values = (0..grid.total())
        .map(|j| Complex64::new(if (j as i64) < n { 1.0 } else { 0.0 }, 0.0))
        .collect();
    Ok(SampledWindow { grid, values })
}

/// `e^{-w x²}` on the grid.
pub fn sample_gaussian(width: f64, grid: GridSpec) -> SampledWindow {
    SampledWindow::from_periodic_fn(grid, |x| libm::exp(-width * x * x))
}

/// `c · B(dx) / Σ_n |B(d(x + n))|²` with `B` the centered B-spline of the
/// given order.
pub fn sample_normalized_spline(order: usize, dilation: f64, c: f64, grid: GridSpec) -> SampledWindow {
    let reach = (order as f64 / (2.0 * dilation)) as i64 + 2;
    SampledWindow::from_periodic_fn(grid, |x| {
        let frac = x - libm::round(x);
        let denom: f64 = (-reach..=reach)
            .map(|n| {
                let v = centered_bspline_value(order, dilation * (frac + n as f64));
                v * v
            })
            .sum();
        c * centered_bspline_value(order, dilation * x) / denom
    })
}

/// `G(x) = Σ_n |g(x - na)|²` over the `P/a` shifts.
pub fn walnut_weight(g: &SampledWindow, a: Rational) -> Result<SampledWindow> {
    let grid = g.grid();
    let alpha = grid.samples_of(a, "a·s")?;
    let shifts = exact_int(Rational::from_integer(grid.period() as i64) / a).ok_or_else(|| {
        Error::OffGrid {
            what: "P/a",
            value: (Rational::from_integer(grid.period() as i64) / a).to_string(),
        }
    })?;
    let values = (0..grid.total() as i64)
        .map(|j| {
            let w: f64 = (0..shifts).map(|n| g.at(j - n * alpha).norm_sqr()).sum();
            Complex64::new(w, 0.0)
        })
        .collect();
    Ok(SampledWindow { grid, values })
}

/// Which closed form the diagonal of `S_G` matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PainlessFormula {
    /// `S_G = G/b`.
    WeightOverB,
    /// `S_G = b/G`.
    BOverWeight,
    Neither,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PainlessReport {
    /// Frobenius norm of the off-diagonal part over `‖S‖_F`.
    pub off_diagonal: f64,
    /// `max_j |S_jj - G_j/b|`.
    pub weight_over_b_residual: f64,
    /// `max_j |S_jj - b/G_j|`.
    pub b_over_weight_residual: f64,
    pub matched: PainlessFormula,
    pub bounds: FrameBounds,
    pub weight: SampledWindow,
}

fn support_excess(g: &SampledWindow, order: usize) -> f64 {
    let start = order * g.grid().samples_per_unit();
    g.values
        .iter()
        .skip(start)
        .map(|v| v.norm())
        .fold(0.0, f64::max)
}

fn check_support(g: &SampledWindow, order: usize) -> Result<()> {
    let excess = support_excess(g, order);
    if excess > 0.0 {
        return Err(Error::HypothesisViolated {
            hypothesis: "supp g ⊆ [0, N]",
            measured: excess,
        });
    }
    Ok(())
}

/// Checks the painless case `supp g ⊆ [0, N]`, `b ≤ 1/N`, `G > 0`, and
/// compares the materialized frame operator with `G/b` and `b/G`.
pub fn painless_check(g: &SampledWindow, lat: &GaborLattice, order: usize) -> Result<PainlessReport> {
    check_support(g, order)?;
    if lat.b * Rational::from_integer(order as i64) > Rational::from_integer(1) {
        return Err(Error::HypothesisViolated {
            hypothesis: "b ≤ 1/N",
            measured: to_f64(lat.b),
        });
    }
    let weight = walnut_weight(g, lat.a)?;
    let w: Vec<f64> = weight.values.iter().map(|v| v.re).collect();
    let w_max = w.iter().copied().fold(0.0, f64::max);
    let w_min = w.iter().copied().fold(f64::INFINITY, f64::min);
    if w_min <= 1e-12 * w_max || w_max == 0.0 {
        return Err(Error::HypothesisViolated {
            hypothesis: "G bounded away from 0",
            measured: w_min,
        });
    }
    let b = to_f64(lat.b);
    let frame = gabor_frame(g, lat)?;
    let s = frames::frame_operator(&frame);
    let l = s.rows();
    let mut off = 0.0;
    for r in 0..l {
        for c in 0..l {
            if r != c {
                off += s[(r, c)].norm_sqr();
            }
        }
    }
    let off_diagonal = libm::sqrt(off) / s.frobenius_norm();
    let diag = s.diagonal();
    let resid = |f: &dyn Fn(f64) -> f64| {
        diag.iter()
            .zip(&w)
            .map(|(d, &gw)| (d - f(gw)).norm())
            .fold(0.0, f64::max)
    };
    let weight_over_b_residual = resid(&|gw| gw / b);
    let b_over_weight_residual = resid(&|gw| b / gw);
    let scale = diag.iter().map(|d| d.norm()).fold(0.0, f64::max);
    let fits = |r: f64| off_diagonal <= DIAGONAL_TOL && r <= DIAGONAL_TOL * scale.max(1.0);
    let matched = if fits(weight_over_b_residual) {
        PainlessFormula::WeightOverB
    } else if fits(b_over_weight_residual) {
        PainlessFormula::BOverWeight
    } else {
        PainlessFormula::Neither
    };
    Ok(PainlessReport {
        off_diagonal,
        weight_over_b_residual,
        b_over_weight_residual,
        matched,
        bounds: frames::frame_bounds(&frame),
        weight,
    })
}

/// `max_{x, n} |Σ_k conj(g(x - n/b - ka)) h(x - ka) - b δ_{n,0}|` with `n`
/// over the `b·P` distinct residues; zero exactly for dual windows.
pub fn janssen_residual(g: &SampledWindow, h: &SampledWindow, lat: &GaborLattice) -> Result<f64> {
    Ok(janssen_table(g, h, lat)?.into_iter().fold(0.0, f64::max))
}

/// Per-`n` maxima over `x` of the Janssen sums in [`janssen_residual`].
pub fn janssen_table(g: &SampledWindow, h: &SampledWindow, lat: &GaborLattice) -> Result<Vec<f64>> {
    same_grid(g, h)?;
    let lay = lat.layout(g.grid())?;
    let l = lay.grid.total() as i64;
    let mut rows = vec![0.0f64; lay.phase_step];
    for (n, worst) in rows.iter_mut().enumerate() {
        let offset = (n * lay.modulations) as i64;
        for j in 0..l {
            let mut acc = ZERO;
            for k in 0..lay.shifts {
                let ka = (k * lay.alpha) as i64;
                acc += g.at(j - offset - ka).conj() * h.at(j - ka);
            }
            if n == 0 {
                acc -= lay.b;
            }
            *worst = worst.max(acc.norm());
        }
    }
    Ok(rows)
}

fn partition_residual(g: &SampledWindow) -> f64 {
    let grid = g.grid();
    let s = grid.samples_per_unit() as i64;
    (0..s)
        .map(|j| {
            let total: Complex64 = (0..grid.period() as i64).map(|n| g.at(j + n * s)).sum();
            (total - 1.0).norm()
        })
        .fold(0.0, f64::max)
}

fn check_dual_generator_hypotheses(g: &SampledWindow, order: usize, b: Rational) -> Result<()> {
    let pu = partition_residual(g);
    if pu > PARTITION_TOL {
        return Err(Error::HypothesisViolated {
            hypothesis: "Σ_n g(x - n) = 1",
            measured: pu,
        });
    }
    check_support(g, order)?;
    if order == 0 || b * Rational::from_integer(2 * order as i64 - 1) > Rational::from_integer(1) {
        return Err(Error::HypothesisViolated {
            hypothesis: "b ≤ 1/(2N - 1)",
            measured: to_f64(b),
        });
    }
    Ok(())
}

/// `g_1^d(x) = b g(x) + 2b Σ_{n=1}^{N-1} g(x + n)`.
pub fn ck_dual1(g: &SampledWindow, order: usize, b: Rational) -> Result<SampledWindow> {
    check_dual_generator_hypotheses(g, order, b)?;
    let two_b = Rational::from_integer(2) * b;
    let coeffs: Vec<Rational> = (0..2 * order - 1)
        .map(|i| match i.cmp(&(order - 1)) {
            core::cmp::Ordering::Less => Rational::from_integer(0),
            core::cmp::Ordering::Equal => b,
            core::cmp::Ordering::Greater => two_b,
        })
        .collect();
    Ok(combine_shifts(g, order, &coeffs))
}

/// `g_2^d(x) = Σ_{n=-N+1}^{N-1} a_n g(x + n)`, with `coeffs[i] = a_{i-N+1}`
/// subject to `a_0 = b` and `a_n + a_{-n} = 2b`, both checked exactly.
pub fn ck_dual2(
    g: &SampledWindow,
    order: usize,
    b: Rational,
    coeffs: &[Rational],
) -> Result<SampledWindow> {
    check_dual_generator_hypotheses(g, order, b)?;
    if coeffs.len() != 2 * order - 1 {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients given, N = {order} needs {}",
            coeffs.len(),
            2 * order - 1
        )));
    }
    let mid = order - 1;
    if coeffs[mid] != b {
        return Err(Error::BadCoefficients {
            index: 0,
            detail: format!("a_0 = {} but b = {b}", coeffs[mid]),
        });
    }
    let two_b = Rational::from_integer(2) * b;
    for n in 1..order {
        let sum = coeffs[mid + n] + coeffs[mid - n];
        if sum != two_b {
            return Err(Error::BadCoefficients {
                index: n as i64,
                detail: format!("a_{n} + a_-{n} = {sum} but 2b = {two_b}"),
            });
        }
    }
    Ok(combine_shifts(g, order, coeffs))
}

fn combine_shifts(g: &SampledWindow, order: usize, coeffs: &[Rational]) -> SampledWindow {
    let s = g.grid().samples_per_unit() as i64;
    let mut out = SampledWindow::zeros(g.grid());
    for (i, &c) in coeffs.iter().enumerate() {
        if c == Rational::from_integer(0) {
            continue;
        }
        let n = i as i64 - (order as i64 - 1);
        let cf = to_f64(c);
        let shifted = g.advanced(n * s);
        out = out.combine(&shifted, |acc, v| acc + v * cf);
    }
    out
}

/// Largest of `‖A E_b - E_b A‖` and `‖A T_a - T_a A‖`; commuting with the
/// two generators gives commuting with the whole lattice.
pub fn commutation_check(op: &LinearMap, lat: &GaborLattice, grid: GridSpec) -> Result<f64> {
    let lay = lat.layout(grid)?;
    let l = grid.total();
    if op.rows() != l || op.cols() != l {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, grid has {l} points",
            op.rows(),
            op.cols()
        )));
    }
    let roots = roots_of_unity(l);
    let e = |j: usize| roots[(lay.phase_step * j) % l];
    let mut mod_comm = LinearMap::zeros(l, l);
    let mut shift_comm = LinearMap::zeros(l, l);
    for r in 0..l {
        for c in 0..l {
            mod_comm[(r, c)] = op[(r, c)] * (e(c) - e(r));
            // (A T)_{rc} = A_{r, c+α}, (T A)_{rc} = A_{r-α, c}
            shift_comm[(r, c)] = op[(r, (c + lay.alpha) % l)] - op[((r + l - lay.alpha % l) % l, c)];
        }
    }
    Ok(oplin::operator_norm(&mod_comm).max(oplin::operator_norm(&shift_comm)))
}

/// `A = S_L / M_L` for a Gabor frame `(E_{mb} T_{na} l)`, with
/// `‖Id - A‖ = 1 - m_L/M_L`.
#[derive(Debug, Clone)]
pub struct ScaledGaborOperator {
    pub op: LinearMap,
    pub bounds: FrameBounds,
}

impl ScaledGaborOperator {
    pub fn gap(&self) -> f64 {
        1.0 - self.bounds.lower / self.bounds.upper
    }
}

pub fn scaled_gabor_operator(l: &SampledWindow, lat: &GaborLattice) -> Result<ScaledGaborOperator> {
    let s = frame_operator(l, lat)?;
    let bounds = frames::bounds_from_spectrum(&oplin::herm_eigenvalues(&s)?);
    if !bounds.is_frame() {
        return Err(Error::NotAFrame {
            lower: bounds.lower,
            upper: bounds.upper,
        });
    }
    Ok(ScaledGaborOperator {
        op: s.scale(1.0 / bounds.upper),
        bounds,
    })
}

/// `g^{ad} = A^* S_G^{-1} g - g + S_G g^d` for a dual window `g^d` and an
/// operator `A` commuting with the lattice with `‖Id - A‖ < 1`; the windows
/// then satisfy `T_G U_{G^{ad}} = A`.
pub fn approx_dual_window(
    g: &SampledWindow,
    gd: &SampledWindow,
    op: &LinearMap,
    lat: &GaborLattice,
) -> Result<SampledWindow> {
    let residual = janssen_residual(g, gd, lat)?;
    if residual > JANSSEN_TOL {
        return Err(Error::NotDualPair { residual });
    }
    let comm = commutation_check(op, lat, g.grid())?;
    if comm > COMMUTATION_TOL {
        return Err(Error::NotCommuting { residual: comm });
    }
    let rate = frames::rate_of(op);
    if rate >= 1.0 - STRICT_MARGIN {
        return Err(Error::ContractViolation {
            condition: "‖Id - A‖ < 1",
            measured: rate,
        });
    }
    let s = frame_operator(g, lat)?;
    let s_inv_g = oplin::solve(&s, g.values())?;
    let head = op.adjoint().apply(&s_inv_g);
    let tail = s.apply(gd.values());
    let values = head
        .iter()
        .zip(g.values())
        .zip(&tail)
        .map(|((h, gv), t)| h - gv + t)
        .collect();
    Ok(SampledWindow {
        grid: g.grid(),
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharDualVerdict {
    pub residual: f64,
    /// Duality decided by the Janssen residual.
    pub dual: bool,
    /// `c ≤ 1`, `c' ≤ 1` and `a = min{c, c'}`.
    pub criterion: bool,
}

/// Duality of `(E_m T_{na} χ_[0,c))` and `(E_m T_{na} χ_[0,c'))`.
pub fn char_dual_check(c: Rational, c2: Rational, a: Rational, grid: GridSpec) -> Result<CharDualVerdict> {
    let lat = GaborLattice::new(a, Rational::from_integer(1))?;
    let g = sample_char(c, grid)?;
    let h = sample_char(c2, grid)?;
    let residual = janssen_residual(&g, &h, &lat)?;
    let one = Rational::from_integer(1);
    Ok(CharDualVerdict {
        residual,
        dual: residual <= JANSSEN_TOL,
        criterion: c <= one && c2 <= one && a == c.min(c2),
    })
}
