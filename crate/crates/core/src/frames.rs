//! Finite frames stored as synthesis matrices, their analysis/synthesis/frame
//! operators, optimal bounds, the canonical dual and right annihilators of the
//! synthesis operator.
//!
//! The coefficient space is `C^n` with canonical basis `δ_0, …, δ_{n-1}`. A
//! frame `Φ = (φ_j)` for `C^d` is stored as the `d × n` matrix `T_Φ` whose
//! `j`-th column is `φ_j`; the analysis operator is `U_Φ = T_Φ^*`.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::duality::{DualKind, DualReport};
use crate::error::{Error, Result};
use crate::oplin::{self, LinearMap};
use crate::STRICT_MARGIN;

/// A sequence is a frame when `λ_min(S) > FRAME_THRESHOLD * λ_max(S)`.
pub const FRAME_THRESHOLD: f64 = 1e-10;
/// A pair is an exact dual pair when `‖Id - T_Φ U_Ψ‖ ≤ DUAL_TOL`.
pub const DUAL_TOL: f64 = 1e-10;
/// Relative tolerance for `‖T_Φ Θ‖ ≤ tol · ‖T_Φ‖ ‖Θ‖`.
pub const ANNIHILATOR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    synthesis: LinearMap,
}

impl Frame {
    pub fn from_synthesis(synthesis: LinearMap) -> Self {
        Self { synthesis }
    }

    pub fn from_vectors(dim: usize, vectors: &[Vec<Complex64>]) -> Result<Self> {
        Ok(Self::from_synthesis(LinearMap::from_columns(dim, vectors)?))
    }

    pub fn from_real_vectors(vectors: &[&[f64]]) -> Result<Self> {
        let dim = vectors.first().map_or(0, |v| v.len());
        let cols: Vec<Vec<Complex64>> = vectors
            .iter()
            .map(|v| v.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_vectors(dim, &cols)
    }

    /// The standard basis of `C^d`.
    pub fn standard_basis(dim: usize) -> Self {
        Self::from_synthesis(LinearMap::identity(dim))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.synthesis.rows()
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.synthesis.cols()
    }

    /// `T_Φ`, `d × n`.
    pub fn synthesis_operator(&self) -> &LinearMap {
        &self.synthesis
    }

    /// `U_Φ = T_Φ^*`, `n × d`.
    pub fn analysis_operator(&self) -> LinearMap {
        self.synthesis.adjoint()
    }

    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        self.synthesis.column(j)
    }

    pub fn vectors(&self) -> Vec<Vec<Complex64>> {
        (0..self.count()).map(|j| self.vector(j)).collect()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::from_synthesis(self.synthesis.scale(s))
    }

    /// Applies `op` to every frame vector: the frame `(op φ_j)_j`.
    pub fn mapped(&self, op: &LinearMap) -> Self {
        Self::from_synthesis(op.matmul(&self.synthesis))
    }
}

/// Optimal frame bounds: the extreme eigenvalues of `S_Φ`. A lower bound of
/// zero marks a Bessel sequence that is not a frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    pub fn is_frame(&self) -> bool {
        self.lower > 0.0
    }

    /// Condition number `upper / lower` of the frame operator.
    pub fn condition(&self) -> f64 {
        if self.lower > 0.0 {
            self.upper / self.lower
        } else {
            f64::INFINITY
        }
    }

    pub fn is_tight(&self, tol: f64) -> bool {
        (self.upper - self.lower).abs() <= tol * self.upper
    }
}

/// An `n × d` map `Θ` with `T_Φ Θ = 0`: a right annihilator of the
/// synthesis operator, `Θ ∈ ran(T_Φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Annihilator {
    map: LinearMap,
}

impl Annihilator {
    /// Validates `map` against `frame`.
    pub fn new(frame: &Frame, map: LinearMap) -> Result<Self> {
        let a = Self { map };
        a.check_against(frame)?;
        Ok(a)
    }

    pub fn zero(frame: &Frame) -> Self {
        Self {
            map: LinearMap::zeros(frame.count(), frame.dim()),
        }
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn into_map(self) -> LinearMap {
        self.map
    }

    pub fn norm(&self) -> f64 {
        oplin::operator_norm(&self.map)
    }

    /// `Θ^*(δ_j)` for every `j`, i.e. the `d × n` map `Θ^*`.
    pub fn adjoint(&self) -> LinearMap {
        self.map.adjoint()
    }

    /// Residual `‖T_Φ Θ‖ / (‖T_Φ‖ max(‖Θ‖, 1))`, relative for large `Θ`
    /// and absolute for roundoff-sized ones.
    pub fn residual(&self, frame: &Frame) -> Result<f64> {
        if self.map.rows() != frame.count() || self.map.cols() != frame.dim() {
            return Err(Error::DimensionMismatch(format!(
                "annihilator is {}x{}, frame needs {}x{}",
                self.map.rows(),
                self.map.cols(),
                frame.count(),
                frame.dim()
            )));
        }
        let theta = oplin::operator_norm(&self.map);
        if theta == 0.0 {
            return Ok(0.0);
        }
        let t = oplin::operator_norm(frame.synthesis_operator());
        let prod = oplin::operator_norm(&frame.synthesis_operator().matmul(&self.map));
        Ok(prod / (t * theta.max(1.0)))
    }

    pub fn check_against(&self, frame: &Frame) -> Result<()> {
        let residual = self.residual(frame)?;
        if residual > ANNIHILATOR_TOL {
            return Err(Error::NotAnAnnihilator { residual });
        }
        Ok(())
    }
}

fn same_shape(phi: &Frame, psi: &Frame) -> Result<()> {
    if phi.dim() != psi.dim() || phi.count() != psi.count() {
        return Err(Error::DimensionMismatch(format!(
            "frames of shape {}x{} and {}x{}",
            phi.dim(),
            phi.count(),
            psi.dim(),
            psi.count()
        )));
    }
    Ok(())
}

/// `U_Φ f = (⟨f, φ_j⟩)_j`.
pub fn analysis(phi: &Frame, f: &[Complex64]) -> Result<Vec<Complex64>> {
    if f.len() != phi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a frame in dimension {}",
            f.len(),
            phi.dim()
        )));
    }
    let t = phi.synthesis_operator();
    let mut out = alloc::vec![Complex64::new(0.0, 0.0); phi.count()];
    for (i, fi) in f.iter().enumerate() {
        for (o, tij) in out.iter_mut().zip(t.row(i)) {
            *o += fi * tij.conj();
        }
    }
    Ok(out)
}

/// `T_Φ c = Σ c_j φ_j`.
pub fn synthesis(phi: &Frame, c: &[Complex64]) -> Result<Vec<Complex64>> {
    if c.len() != phi.count() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for {} frame vectors",
            c.len(),
            phi.count()
        )));
    }
    Ok(phi.synthesis_operator().apply(c))
}

/// `S_Φ = T_Φ U_Φ = Σ φ_j φ_j^*`, exactly Hermitian.
pub fn frame_operator(phi: &Frame) -> LinearMap {
    let t = phi.synthesis_operator();
    t.mul_adjoint(t)
}

pub fn frame_bounds(phi: &Frame) -> FrameBounds {
    let values = oplin::eigenvalues_unchecked(&frame_operator(phi));
    bounds_from_spectrum(&values)
}

pub(crate) fn bounds_from_spectrum(values: &[f64]) -> FrameBounds {
    let upper = values.last().copied().unwrap_or(0.0).max(0.0);
    let lowest = values.first().copied().unwrap_or(0.0);
    let lower = if upper > 0.0 && lowest > FRAME_THRESHOLD * upper {
        lowest
    } else {
        0.0
    };
    FrameBounds { lower, upper }
}

pub fn is_frame(phi: &Frame) -> bool {
    phi.count() >= phi.dim() && frame_bounds(phi).is_frame()
}

pub(crate) fn require_frame(phi: &Frame) -> Result<FrameBounds> {
    let b = frame_bounds(phi);
    if !b.is_frame() {
        return Err(Error::NotAFrame {
            lower: b.lower,
            upper: b.upper,
        });
    }
    Ok(b)
}

/// `S_Φ^{-1}`, failing with `NotAFrame` when `Φ` does not span.
pub fn inverse_frame_operator(phi: &Frame) -> Result<LinearMap> {
    let b = require_frame(phi)?;
    oplin::inverse(&frame_operator(phi)).map_err(|_| Error::NotAFrame {
        lower: b.lower,
        upper: b.upper,
    })
}

/// `(S_Φ^{-1} φ_j)_j`.
pub fn canonical_dual(phi: &Frame) -> Result<Frame> {
    let s_inv = inverse_frame_operator(phi)?;
    Ok(phi.mapped(&s_inv))
}

/// `T_Φ U_Ψ`, a `d × d` map.
pub fn mixed_operator(phi: &Frame, psi: &Frame) -> Result<LinearMap> {
    same_shape(phi, psi)?;
    Ok(phi
        .synthesis_operator()
        .mul_adjoint(psi.synthesis_operator()))
}

/// `‖Id - T_Φ U_Ψ‖`.
pub fn approximation_rate(phi: &Frame, psi: &Frame) -> Result<f64> {
    let m = mixed_operator(phi, psi)?;
    Ok(rate_of(&m))
}

pub fn rate_of(mixed: &LinearMap) -> f64 {
    oplin::operator_norm(&(&LinearMap::identity(mixed.rows()) - mixed))
}

pub fn is_dual_pair(phi: &Frame, psi: &Frame) -> Result<bool> {
    Ok(approximation_rate(phi, psi)? <= DUAL_TOL)
}

pub fn is_approx_dual(phi: &Frame, psi: &Frame) -> Result<bool> {
    Ok(approximation_rate(phi, psi)? < 1.0 - STRICT_MARGIN)
}

pub fn is_gdual(phi: &Frame, psi: &Frame) -> Result<bool> {
    Ok(oplin::inverse(&mixed_operator(phi, psi)?).is_ok())
}

/// Classifies the pair from its mixed operator alone. For g-duals the report
/// carries the corresponding operator `A = (T_Φ U_Ψ)^{-1}`.
pub fn classify_pair(phi: &Frame, psi: &Frame) -> Result<DualReport> {
    let mixed = mixed_operator(phi, psi)?;
    let rate = rate_of(&mixed);
    let corresponding_op = oplin::inverse(&mixed).ok();
    let kind = DualKind::from_rate(rate, corresponding_op.is_some());
    Ok(DualReport {
        kind,
        rate,
        corresponding_op,
        factorization: None,
    })
}

/// Orthogonal projection of `x` (n × k) onto `ker(T_Φ)`, applied twice to
/// wash out roundoff.
pub(crate) fn project_onto_kernel(phi: &Frame, x: &LinearMap) -> Result<LinearMap> {
    let t = phi.synthesis_operator();
    let s = frame_operator(phi);
    let s_pinv = match oplin::inverse(&s) {
        Ok(inv) => inv,
        Err(_) => oplin::psd_pinv(&s, FRAME_THRESHOLD)?,
    };
    let u = phi.analysis_operator();
    let project = |y: &LinearMap| -> LinearMap {
        let ty = t.matmul(y);
        y - &u.matmul(&s_pinv.matmul(&ty))
    };
    let once = project(x);
    Ok(project(&once))
}

/// A seeded random annihilator with operator norm `scale`: complex Gaussian
/// draws projected onto `ker(T_Φ)`. Returns the zero map when the kernel is
/// trivial (Riesz bases) or `scale` is zero.
pub fn random_annihilator(phi: &Frame, seed: u64, scale: f64) -> Result<Annihilator> {
    let (n, d) = (phi.count(), phi.dim());
    if scale == 0.0 || is_riesz(phi) {
        return Ok(Annihilator::zero(phi));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Complex64> = (0..n * d)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    let g = LinearMap::new(n, d, draws)?;
    let theta = project_onto_kernel(phi, &g)?;
    let norm = oplin::operator_norm(&theta);
    if norm <= 1e-12 * oplin::operator_norm(&g) {
        return Ok(Annihilator::zero(phi));
    }
    Ok(Annihilator {
        map: theta.scale(scale / norm),
    })
}

/// Riesz basis ⇔ square, invertible synthesis ⇔ `ker(T_Φ) = {0}`.
pub fn is_riesz(phi: &Frame) -> bool {
    phi.count() == phi.dim() && oplin::inverse(phi.synthesis_operator()).is_ok()
}

/// Optimal Bessel bound of `(φ_j - ψ_j)_j`, i.e. `‖T_Φ - T_Ψ‖²`.
pub fn bessel_bound_difference(phi: &Frame, psi: &Frame) -> Result<f64> {
    same_shape(phi, psi)?;
    let n = oplin::operator_norm(&(phi.synthesis_operator() - psi.synthesis_operator()));
    Ok(n * n)
}

/// Optimal upper (Bessel) bound `‖T_Φ‖²`.
pub fn bessel_bound(phi: &Frame) -> f64 {
    let n = oplin::operator_norm(phi.synthesis_operator());
    n * n
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn cv(xs: &[f64]) -> Vec<Complex64> {
        xs.iter().map(|&x| c(x)).collect()
    }

    fn phi0() -> Frame {
        Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap()
    }

    fn phi1() -> Frame {
        Frame::from_real_vectors(&[&[1.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap()
    }

    fn assert_vec_close(a: &[Complex64], b: &[Complex64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).norm() <= tol, "{x} vs {y}");
        }
    }

    fn assert_map_close(a: &LinearMap, b: &LinearMap, tol: f64) {
        let d = oplin::operator_norm(&(a - b));
        assert!(d <= tol, "distance {d:e}");
    }

    #[test]
    fn analysis_examples() {
        assert_vec_close(&analysis(&phi0(), &cv(&[1.0, 2.0])).unwrap(), &cv(&[1.0, 2.0, 3.0]), 0.0);
        assert_vec_close(&analysis(&phi0(), &cv(&[0.0, 0.0])).unwrap(), &cv(&[0.0; 3]), 0.0);
        let f = vec![Complex64::new(0.3, -1.0), c(2.0), Complex64::new(0.0, 4.0)];
        assert_vec_close(&analysis(&Frame::standard_basis(3), &f).unwrap(), &f, 0.0);
        assert!(matches!(
            analysis(&phi0(), &cv(&[1.0])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn synthesis_examples() {
        assert_vec_close(&synthesis(&phi0(), &cv(&[1.0, 1.0, 0.0])).unwrap(), &cv(&[1.0, 1.0]), 0.0);
        assert_vec_close(&synthesis(&phi0(), &cv(&[1.0, 1.0, -1.0])).unwrap(), &cv(&[0.0, 0.0]), 0.0);
        for k in 0..3 {
            let mut delta = cv(&[0.0; 3]);
            delta[k] = c(1.0);
            assert_vec_close(&synthesis(&phi0(), &delta).unwrap(), &phi0().vector(k), 0.0);
        }
        assert!(synthesis(&phi0(), &cv(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn synthesis_is_adjoint_of_analysis() {
        let phi = Frame::from_vectors(
            2,
            &[
                vec![Complex64::new(1.0, 2.0), Complex64::new(0.0, -1.0)],
                vec![c(0.5), Complex64::new(3.0, 1.0)],
                vec![Complex64::new(-1.0, 0.5), c(2.0)],
            ],
        )
        .unwrap();
        let f = vec![Complex64::new(0.7, -0.2), Complex64::new(-1.1, 0.4)];
        let coeffs = vec![Complex64::new(1.0, 1.0), c(-2.0), Complex64::new(0.0, 0.5)];
        let lhs: Complex64 = synthesis(&phi, &coeffs)
            .unwrap()
            .iter()
            .zip(&f)
            .map(|(a, b)| a * b.conj())
            .sum();
        let rhs: Complex64 = coeffs
            .iter()
            .zip(analysis(&phi, &f).unwrap())
            .map(|(a, b)| a * b.conj())
            .sum();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn frame_operator_examples() {
        let s0 = LinearMap::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        assert_eq!(frame_operator(&phi0()), s0);
        assert_eq!(frame_operator(&phi1()), LinearMap::from_real_diagonal(&[2.0, 1.0]));
        assert_eq!(frame_operator(&Frame::standard_basis(3)), LinearMap::identity(3));
    }

    #[test]
    fn bounds_examples() {
        let b = frame_bounds(&phi0());
        assert!((b.lower - 1.0).abs() < 1e-14 && (b.upper - 3.0).abs() < 1e-14);
        let b = frame_bounds(&phi1());
        assert!((b.lower - 1.0).abs() < 1e-14 && (b.upper - 2.0).abs() < 1e-14);
        let b = frame_bounds(&Frame::standard_basis(4));
        assert_eq!((b.lower, b.upper), (1.0, 1.0));
        // Bessel sequence that is not a frame
        let bessel = Frame::from_real_vectors(&[&[1.0, 0.0], &[2.0, 0.0]]).unwrap();
        let b = frame_bounds(&bessel);
        assert_eq!(b.lower, 0.0);
        assert!((b.upper - 5.0).abs() < 1e-14);
        assert!(!is_frame(&bessel));
    }

    #[test]
    fn canonical_dual_examples() {
        let e = Frame::standard_basis(3);
        assert_eq!(canonical_dual(&e).unwrap(), e);
        let d1 = canonical_dual(&phi1()).unwrap();
        let want = Frame::from_real_vectors(&[&[0.5, 0.0], &[0.5, 0.0], &[0.0, 1.0]]).unwrap();
        assert_map_close(d1.synthesis_operator(), want.synthesis_operator(), 1e-15);
        let d0 = canonical_dual(&phi0()).unwrap();
        let t = 1.0 / 3.0;
        let want =
            Frame::from_real_vectors(&[&[2.0 * t, -t], &[-t, 2.0 * t], &[t, t]]).unwrap();
        assert_map_close(d0.synthesis_operator(), want.synthesis_operator(), 1e-15);
        let bessel = Frame::from_real_vectors(&[&[1.0, 0.0], &[2.0, 0.0]]).unwrap();
        assert!(matches!(canonical_dual(&bessel), Err(Error::NotAFrame { .. })));
    }

    #[test]
    fn mixed_operator_examples() {
        let dual = canonical_dual(&phi0()).unwrap();
        assert_map_close(&mixed_operator(&phi0(), &dual).unwrap(), &LinearMap::identity(2), 1e-15);
        assert_eq!(mixed_operator(&phi0(), &phi0()).unwrap(), frame_operator(&phi0()));
        assert_map_close(
            &mixed_operator(&phi1(), &phi1().scaled(0.5)).unwrap(),
            &LinearMap::from_real_diagonal(&[1.0, 0.5]),
            0.0,
        );
        let m = mixed_operator(&phi0(), &phi1()).unwrap();
        assert_eq!(m.adjoint(), mixed_operator(&phi1(), &phi0()).unwrap());
        let short = Frame::standard_basis(2);
        assert!(mixed_operator(&phi0(), &short).is_err());
    }

    #[test]
    fn rate_examples() {
        let dual = canonical_dual(&phi1()).unwrap();
        assert!(approximation_rate(&phi1(), &dual).unwrap() < 1e-15);
        assert!((approximation_rate(&phi1(), &phi1()).unwrap() - 1.0).abs() < 1e-14);
        let r = approximation_rate(&phi1(), &dual.scaled(0.9)).unwrap();
        assert!((r - 0.1).abs() < 1e-14);
    }

    #[test]
    fn pair_predicates() {
        let dual = canonical_dual(&phi0()).unwrap();
        assert!(is_dual_pair(&phi0(), &dual).unwrap());
        let report = classify_pair(&phi0(), &dual).unwrap();
        assert_eq!(report.kind, DualKind::Dual);
        assert_map_close(report.corresponding_op.as_ref().unwrap(), &LinearMap::identity(2), 1e-14);

        assert!(!is_dual_pair(&phi1(), &phi1()).unwrap());
        assert!(!is_approx_dual(&phi1(), &phi1()).unwrap());
        assert!(is_gdual(&phi1(), &phi1()).unwrap());
        let report = classify_pair(&phi1(), &phi1()).unwrap();
        assert_eq!(report.kind, DualKind::Gdual);
        assert_map_close(
            report.corresponding_op.as_ref().unwrap(),
            &LinearMap::from_real_diagonal(&[0.5, 1.0]),
            1e-15,
        );

        let e = Frame::standard_basis(2);
        let degenerate = Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        assert!(!is_gdual(&e, &degenerate).unwrap());
        assert_eq!(classify_pair(&e, &degenerate).unwrap().kind, DualKind::None);
    }

    #[test]
    fn annihilator_examples() {
        let riesz = Frame::from_real_vectors(&[&[1.0, 1.0], &[0.0, 2.0]]).unwrap();
        assert!(random_annihilator(&riesz, 7, 1.0).unwrap().map().is_zero());
        assert!(random_annihilator(&phi0(), 7, 0.0).unwrap().map().is_zero());

        let theta = random_annihilator(&phi0(), 42, 1.0).unwrap();
        assert!((theta.norm() - 1.0).abs() < 1e-12);
        // every column is parallel to (1, 1, -1)/sqrt(3)
        let k = cv(&[1.0, 1.0, -1.0]);
        for j in 0..2 {
            let col = theta.map().column(j);
            let along: Complex64 = k.iter().zip(&col).map(|(a, b)| a.conj() * b).sum::<Complex64>() / 3.0;
            let resid: f64 = col
                .iter()
                .zip(&k)
                .map(|(x, kk)| (x - along * kk).norm_sqr())
                .sum();
            assert!(resid < 1e-24);
        }
        assert!(theta.residual(&phi0()).unwrap() <= ANNIHILATOR_TOL);
        // determinism
        assert_eq!(theta, random_annihilator(&phi0(), 42, 1.0).unwrap());
        assert_ne!(theta, random_annihilator(&phi0(), 43, 1.0).unwrap());
    }

    #[test]
    fn annihilator_rejects_non_kernel_map() {
        let bad = LinearMap::from_real(3, 2, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            Annihilator::new(&phi0(), bad),
            Err(Error::NotAnAnnihilator { .. })
        ));
    }

    #[test]
    fn riesz_examples() {
        assert!(is_riesz(&Frame::standard_basis(3)));
        assert!(!is_riesz(&phi0()));
        assert!(is_riesz(&Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 2.0]]).unwrap()));
    }

    #[test]
    fn bessel_difference_examples() {
        assert_eq!(bessel_bound_difference(&phi0(), &phi0()).unwrap(), 0.0);
        let eps = 0.01;
        let psi = Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0 + eps]]).unwrap();
        assert!((bessel_bound_difference(&phi0(), &psi).unwrap() - eps * eps).abs() < 1e-15);
        let m = bessel_bound_difference(&phi0(), &phi0().scaled(2.0)).unwrap();
        assert!((m - frame_bounds(&phi0()).upper).abs() < 1e-13);
    }
}
