//! Approximately dual and g-dual frames of a given frame.
//!
//! Every construction is parameterized by a map on `C^d` (the factor `D`
//! with `T_Φ U_Ψ = S_Φ^{1/2} D`, or the mixed operator `A` itself) together
//! with a right annihilator `Θ` of `T_Φ`. The annihilator only adds content
//! in `ker(T_Φ)` and never changes the mixed operator.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frames::{self, Annihilator, Frame, FrameBounds, DUAL_TOL};
use crate::oplin::{self, LinearMap};
use crate::STRICT_MARGIN;

/// Tolerance on `λ_max(D D^*) - M_Ψ` for the Bessel verdict.
pub const BESSEL_CHECK_TOL: f64 = 1e-9;
/// Tolerance for the two-sided inverse check of [`equivalence_inverse`].
pub const EQUIVALENCE_TOL: f64 = 1e-9;
/// Largest principal-angle residual treated as subspace containment.
pub const RANGE_TOL: f64 = 1e-8;

/// Strongest duality relation that holds for a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DualKind {
    /// `T_Φ U_Ψ = Id`.
    Dual,
    /// `‖Id - T_Φ U_Ψ‖ < 1`.
    Approx,
    /// `T_Φ U_Ψ` invertible.
    Gdual,
    None,
}

impl DualKind {
    pub(crate) fn from_rate(rate: f64, invertible: bool) -> Self {
        if rate <= DUAL_TOL {
            Self::Dual
        } else if rate < 1.0 - STRICT_MARGIN {
            Self::Approx
        } else if invertible {
            Self::Gdual
        } else {
            Self::None
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Dual => "dual",
            Self::Approx => "approx",
            Self::Gdual => "gdual",
            Self::None => "none",
        }
    }
}

impl core::fmt::Display for DualKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The factorization `T_Φ U_Ψ = S_Φ^{1/2} D` and the verdicts derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub d: LinearMap,
    /// `‖T_Φ U_Ψ - S_Φ^{1/2} D‖`.
    pub residual: f64,
    pub d_invertible: bool,
    /// `λ_max(D D^*) = ‖D‖²`.
    pub dd_star_max: f64,
    /// Optimal Bessel bound `M_Ψ`.
    pub bessel_bound: f64,
    /// `λ_max(D D^*) ≤ M_Ψ` up to [`BESSEL_CHECK_TOL`].
    pub bessel_check: bool,
    /// `‖Id - S_Φ^{1/2} D‖`.
    pub factor_rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualReport {
    pub kind: DualKind,
    /// `‖Id - T_Φ U_Ψ‖`.
    pub rate: f64,
    /// `A = (T_Φ U_Ψ)^{-1}` when the pair is g-dual.
    pub corresponding_op: Option<LinearMap>,
    pub factorization: Option<Factorization>,
}

impl DualReport {
    pub fn is_dual(&self) -> bool {
        self.kind == DualKind::Dual
    }

    pub fn is_approx(&self) -> bool {
        matches!(self.kind, DualKind::Dual | DualKind::Approx)
    }

    pub fn is_gdual(&self) -> bool {
        self.kind != DualKind::None
    }
}

/// `S_Φ` with its square root, inverse square root and inverse.
#[derive(Debug, Clone)]
pub struct FrameRoots {
    pub s: LinearMap,
    pub sqrt: LinearMap,
    pub inv_sqrt: LinearMap,
    pub inv: LinearMap,
    pub bounds: FrameBounds,
}

impl FrameRoots {
    pub fn new(phi: &Frame) -> Result<Self> {
        let s = frames::frame_operator(phi);
        let eig = oplin::herm_eig(&s)?;
        let bounds = frames::bounds_from_spectrum(&eig.eigenvalues);
        if !bounds.is_frame() || phi.count() < phi.dim() {
            return Err(Error::NotAFrame {
                lower: bounds.lower,
                upper: bounds.upper,
            });
        }
        Ok(Self {
            sqrt: eig.map(libm::sqrt),
            inv_sqrt: eig.map(|x| 1.0 / libm::sqrt(x)),
            inv: eig.map(|x| 1.0 / x),
            s,
            bounds,
        })
    }
}

fn factorize(phi: &Frame, psi: &Frame) -> Result<(LinearMap, Factorization)> {
    let roots = FrameRoots::new(phi)?;
    let psi_bounds = frames::frame_bounds(psi);
    if !psi_bounds.is_frame() {
        return Err(Error::NotAFrame {
            lower: psi_bounds.lower,
            upper: psi_bounds.upper,
        });
    }
    let mixed = frames::mixed_operator(phi, psi)?;
    let d = roots.inv_sqrt.matmul(&mixed);
    let rebuilt = roots.sqrt.matmul(&d);
    let residual = oplin::operator_norm(&(&mixed - &rebuilt));
    let d_norm = oplin::operator_norm(&d);
    let dd_star_max = d_norm * d_norm;
    let factor_rate = frames::rate_of(&rebuilt);
    let fact = Factorization {
        d_invertible: oplin::inverse(&d).is_ok(),
        residual,
        dd_star_max,
        bessel_bound: psi_bounds.upper,
        bessel_check: dd_star_max <= psi_bounds.upper + BESSEL_CHECK_TOL,
        factor_rate,
        d,
    };
    Ok((mixed, fact))
}

/// g-duality through the factorization `T_Φ U_Ψ = S_Φ^{1/2} D`: the pair is
/// g-dual iff `D` is invertible, and `D D^* ≤ M_Ψ Id` always holds.
/// The kind is `Gdual` or `None`.
pub fn gdual_factorization(phi: &Frame, psi: &Frame) -> Result<DualReport> {
    let (mixed, fact) = factorize(phi, psi)?;
    let kind = if fact.d_invertible {
        DualKind::Gdual
    } else {
        DualKind::None
    };
    Ok(DualReport {
        kind,
        rate: frames::rate_of(&mixed),
        corresponding_op: if fact.d_invertible {
            oplin::inverse(&mixed).ok()
        } else {
            None
        },
        factorization: Some(fact),
    })
}

/// As [`gdual_factorization`], additionally testing `‖Id - S_Φ^{1/2} D‖ < 1`;
/// the kind is the strongest relation that holds.
pub fn approx_factorization(phi: &Frame, psi: &Frame) -> Result<DualReport> {
    let (mixed, fact) = factorize(phi, psi)?;
    let kind = DualKind::from_rate(fact.factor_rate, fact.d_invertible);
    Ok(DualReport {
        kind,
        rate: frames::rate_of(&mixed),
        corresponding_op: if kind != DualKind::None {
            oplin::inverse(&mixed).ok()
        } else {
            None
        },
        factorization: Some(fact),
    })
}

fn check_square(op: &LinearMap, dim: usize, what: &'static str) -> Result<()> {
    if op.rows() != dim || op.cols() != dim {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{what} is {}x{}, expected {dim}x{dim}",
            op.rows(),
            op.cols()
        )));
    }
    Ok(())
}

fn strict_below_one(measured: f64, condition: &'static str) -> Result<()> {
    if measured < 1.0 - STRICT_MARGIN {
        Ok(())
    } else {
        Err(Error::ContractViolation {
            condition,
            measured,
        })
    }
}

/// `φ^{ad}_j = D^* S_Φ^{-1/2} φ_j + Θ^*(δ_j)`; the result satisfies
/// `T_Φ U_{Φ^{ad}} = S_Φ^{1/2} D`.
pub fn approx_dual_from_d(phi: &Frame, d: &LinearMap, theta: &Annihilator) -> Result<Frame> {
    let roots = FrameRoots::new(phi)?;
    check_square(d, phi.dim(), "D")?;
    theta.check_against(phi)?;
    let measured = frames::rate_of(&roots.sqrt.matmul(d));
    strict_below_one(measured, "‖Id - S^{1/2} D‖ < 1")?;
    let t = d
        .adjoint()
        .matmul(&roots.inv_sqrt)
        .matmul(phi.synthesis_operator());
    Ok(Frame::from_synthesis(&t + &theta.adjoint()))
}

/// Result of testing `‖S_Φ^{-1/2} - D‖ < 1/√M_Φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibleD {
    pub admissible: bool,
    /// `‖S_Φ^{-1/2} - D‖`.
    pub distance: f64,
    /// `1/√M_Φ`.
    pub threshold: f64,
    /// `√M_Φ ‖S_Φ^{-1/2} - D‖`, an upper bound for `‖Id - S_Φ^{1/2} D‖`.
    pub implied_rate_bound: f64,
}

pub fn admissible_d_check(phi: &Frame, d: &LinearMap) -> Result<AdmissibleD> {
    let roots = FrameRoots::new(phi)?;
    check_square(d, phi.dim(), "D")?;
    let distance = oplin::operator_norm(&(&roots.inv_sqrt - d));
    let root_m = libm::sqrt(roots.bounds.upper);
    Ok(AdmissibleD {
        admissible: distance < 1.0 / root_m,
        distance,
        threshold: 1.0 / root_m,
        implied_rate_bound: root_m * distance,
    })
}

/// `φ^{ad}_j = A^* φ̃_j + Θ^*(δ_j)` with `‖Id - A‖ < 1`; the result satisfies
/// `T_Φ U_{Φ^{ad}} = A`.
pub fn approx_dual_from_a(phi: &Frame, a: &LinearMap, theta: &Annihilator) -> Result<Frame> {
    check_square(a, phi.dim(), "A")?;
    strict_below_one(frames::rate_of(a), "‖Id - A‖ < 1")?;
    dual_from_mixed(phi, a, theta)
}

/// `φ_j ↦ B^* S_Φ^{-1} φ_j + Θ^*(δ_j)`, giving `T_Φ U = B`.
fn dual_from_mixed(phi: &Frame, b: &LinearMap, theta: &Annihilator) -> Result<Frame> {
    theta.check_against(phi)?;
    let canonical = frames::canonical_dual(phi)?;
    let t = b.adjoint().matmul(canonical.synthesis_operator());
    Ok(Frame::from_synthesis(&t + &theta.adjoint()))
}

/// Recovers `(D, Θ)` from an approximately dual pair:
/// `D = S_Φ^{-1/2} T_Φ U_{Φ^{ad}}`, `Θ = U_{Φ^{ad}} - U_Φ S_Φ^{-1/2} D`.
pub fn recover_parameters(phi: &Frame, phi_ad: &Frame) -> Result<(LinearMap, Annihilator)> {
    let roots = FrameRoots::new(phi)?;
    let mixed = frames::mixed_operator(phi, phi_ad)?;
    let rate = frames::rate_of(&mixed);
    if rate >= 1.0 - STRICT_MARGIN {
        return Err(Error::NotApproxDual { rate });
    }
    let d = roots.inv_sqrt.matmul(&mixed);
    let theta = &phi_ad.analysis_operator()
        - &phi.analysis_operator().matmul(&roots.inv_sqrt.matmul(&d));
    Ok((d, Annihilator::new(phi, theta)?))
}

/// Operator parameter for [`approx_dual_via_dual`].
#[derive(Debug, Clone, PartialEq)]
pub enum DualParameter {
    /// Factor `D` with `‖S_Φ^{-1/2} - D‖ < 1/√M_Φ`; mixed operator `S_Φ^{1/2} D`.
    D(LinearMap),
    /// Target mixed operator `A` with `‖Id - A‖ < 1`.
    A(LinearMap),
}

/// Approximate duals built from a known exact dual `Φ^d`, with
/// `Θ^*(δ_j) = S_Φ φ^d_j - φ_j`:
/// `φ^{ad}_j = D^* S_Φ^{-1/2} φ_j - φ_j + S_Φ φ^d_j` or
/// `φ^{ad}_j = A^* φ̃_j - φ_j + S_Φ φ^d_j`.
pub fn approx_dual_via_dual(phi: &Frame, phi_d: &Frame, param: &DualParameter) -> Result<Frame> {
    let roots = FrameRoots::new(phi)?;
    let residual = frames::approximation_rate(phi, phi_d)?;
    if residual > DUAL_TOL {
        return Err(Error::NotDualPair { residual });
    }
    let head = match param {
        DualParameter::D(d) => {
            check_square(d, phi.dim(), "D")?;
            let check = admissible_d_check(phi, d)?;
            if !check.admissible {
                return Err(Error::ContractViolation {
                    condition: "‖S^{-1/2} - D‖ < 1/√M_Φ",
                    measured: check.distance,
                });
            }
            d.adjoint().matmul(&roots.inv_sqrt)
        }
        DualParameter::A(a) => {
            check_square(a, phi.dim(), "A")?;
            strict_below_one(frames::rate_of(a), "‖Id - A‖ < 1")?;
            a.adjoint().matmul(&roots.inv)
        }
    };
    let t_phi = phi.synthesis_operator();
    let t = &(&head.matmul(t_phi) - t_phi) + &roots.s.matmul(phi_d.synthesis_operator());
    Ok(Frame::from_synthesis(t))
}

/// `φ^{gd}_j = (A^{-1})^* φ̃_j + Θ^*(δ_j)`: a g-dual with corresponding
/// operator `A`, i.e. `T_Φ U_{Φ^{gd}} = A^{-1}`.
pub fn gdual_from_a(phi: &Frame, a: &LinearMap, theta: &Annihilator) -> Result<Frame> {
    check_square(a, phi.dim(), "A")?;
    let a_inv = oplin::inverse(a)?;
    dual_from_mixed(phi, &a_inv, theta)
}

/// `Σ_j ⟨A f, ψ_j⟩ φ_j` with `A = (T_Φ U_Ψ)^{-1}`, which returns `f` for
/// every g-dual pair.
pub fn reconstruct(phi: &Frame, psi: &Frame, f: &[Complex64]) -> Result<Vec<Complex64>> {
    let mixed = frames::mixed_operator(phi, psi)?;
    let a = oplin::inverse(&mixed)?;
    let coeffs = frames::analysis(psi, &a.apply(f))?;
    frames::synthesis(phi, &coeffs)
}

/// A non-canonical exact dual `φ̃_j + Θ'^*(δ_j)` with a seeded random
/// annihilator of norm `scale`.
pub fn alternate_dual(phi: &Frame, seed: u64, scale: f64) -> Result<Frame> {
    let theta = frames::random_annihilator(phi, seed, scale)?;
    dual_from_mixed(phi, &LinearMap::identity(phi.dim()), &theta)
}

/// Relation between `Range(U_Φ)` and `Range(U_Ψ)` in `C^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeRelation {
    Equal,
    Incomparable,
    /// `Range(U_Φ) ⊊ Range(U_Ψ)`.
    LeftInRight,
    /// `Range(U_Ψ) ⊊ Range(U_Φ)`.
    RightInLeft,
}

/// Orthonormal basis (columns) of `Range(U_Φ)`: `U_Φ V_r Λ_r^{-1/2}`.
fn analysis_range_basis(phi: &Frame) -> Result<LinearMap> {
    let eig = oplin::herm_eig(&frames::frame_operator(phi))?;
    let top = eig.max();
    let keep: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&i| top > 0.0 && eig.eigenvalues[i] > frames::FRAME_THRESHOLD * top)
        .collect();
    let d = phi.dim();
    let mut w = LinearMap::zeros(d, keep.len());
    for (c, &i) in keep.iter().enumerate() {
        let scale = 1.0 / libm::sqrt(eig.eigenvalues[i]);
        for r in 0..d {
            w[(r, c)] = eig.eigenvectors[(r, i)] * scale;
        }
    }
    Ok(phi.analysis_operator().matmul(&w))
}

/// `‖(Id - Q_B Q_B^*) Q_A‖`: zero iff `span Q_A ⊆ span Q_B`.
fn containment_residual(qa: &LinearMap, qb: &LinearMap) -> f64 {
    if qa.cols() == 0 {
        return 0.0;
    }
    let proj = qb.matmul(&qb.adjoint_mul(qa));
    oplin::operator_norm(&(qa - &proj))
}

/// Compares the analysis ranges through principal angles. For two frames of
/// the same count both ranges have dimension `d`, so strict inclusion cannot
/// occur; it is only reported for Bessel sequences of lower rank.
pub fn range_compare(phi: &Frame, psi: &Frame) -> Result<RangeRelation> {
    frames::mixed_operator(phi, psi)?;
    let qa = analysis_range_basis(phi)?;
    let qb = analysis_range_basis(psi)?;
    let a_in_b = containment_residual(&qa, &qb) <= RANGE_TOL;
    let b_in_a = containment_residual(&qb, &qa) <= RANGE_TOL;
    Ok(match (a_in_b, b_in_a) {
        (true, true) => RangeRelation::Equal,
        (true, false) => RangeRelation::LeftInRight,
        (false, true) => RangeRelation::RightInLeft,
        (false, false) => RangeRelation::Incomparable,
    })
}

/// For equivalent frames, `(T_Φ U_Ψ)^{-1} = T_{Ψ̃} U_{Φ̃}`; returns that map
/// after checking it is a two-sided inverse.
pub fn equivalence_inverse(phi: &Frame, psi: &Frame) -> Result<LinearMap> {
    let relation = range_compare(phi, psi)?;
    if relation != RangeRelation::Equal {
        let qa = analysis_range_basis(phi)?;
        let qb = analysis_range_basis(psi)?;
        return Err(Error::NotEquivalent {
            residual: containment_residual(&qa, &qb).max(containment_residual(&qb, &qa)),
        });
    }
    let phi_dual = frames::canonical_dual(phi)?;
    let psi_dual = frames::canonical_dual(psi)?;
    let candidate = frames::mixed_operator(&psi_dual, &phi_dual)?;
    let mixed = frames::mixed_operator(phi, psi)?;
    let id = LinearMap::identity(phi.dim());
    let right = oplin::operator_norm(&(&mixed.matmul(&candidate) - &id));
    let left = oplin::operator_norm(&(&candidate.matmul(&mixed) - &id));
    let residual = right.max(left);
    if residual > EQUIVALENCE_TOL {
        return Err(Error::NotEquivalent { residual });
    }
    Ok(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn phi0() -> Frame {
        Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap()
    }

    fn phi1() -> Frame {
        Frame::from_real_vectors(&[&[1.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap()
    }

    fn dist(a: &LinearMap, b: &LinearMap) -> f64 {
        oplin::operator_norm(&(a - b))
    }

    #[test]
    fn gdual_factorization_canonical() {
        let phi = phi0();
        let dual = frames::canonical_dual(&phi).unwrap();
        let r = gdual_factorization(&phi, &dual).unwrap();
        let f = r.factorization.as_ref().unwrap();
        let roots = FrameRoots::new(&phi).unwrap();
        assert!(dist(&f.d, &roots.inv_sqrt) < 1e-14);
        assert!(f.d_invertible);
        // DD* = S^{-1}, λ_max = 1/m_Φ = 1, and M_Ψ = 1/m_Φ for the canonical dual
        assert!((f.dd_star_max - 1.0).abs() < 1e-13);
        assert!((f.bessel_bound - 1.0).abs() < 1e-13);
        assert!(f.bessel_check);
        assert!(f.residual < 1e-14);
        assert_eq!(r.kind, DualKind::Gdual);
    }

    #[test]
    fn gdual_factorization_self_pair() {
        let phi = phi0();
        let r = gdual_factorization(&phi, &phi).unwrap();
        let f = r.factorization.unwrap();
        let roots = FrameRoots::new(&phi).unwrap();
        assert!(dist(&f.d, &roots.sqrt) < 1e-14);
        assert!((f.dd_star_max - 3.0).abs() < 1e-13);
        assert!((f.bessel_bound - 3.0).abs() < 1e-13);
        assert!(f.bessel_check);
    }

    #[test]
    fn gdual_factorization_rank_deficient() {
        let e = Frame::standard_basis(2);
        let psi = Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        // Ψ is not a frame; the factor is still rank deficient when Ψ is forced to span
        assert!(matches!(gdual_factorization(&e, &psi), Err(Error::NotAFrame { .. })));
        let phi = Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let psi = Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 0.0], &[0.0, 1.0]]).unwrap();
        let r = gdual_factorization(&phi, &psi).unwrap();
        assert!(!r.factorization.unwrap().d_invertible);
        assert_eq!(r.kind, DualKind::None);
    }

    #[test]
    fn approx_factorization_examples() {
        let phi = phi0();
        let dual = frames::canonical_dual(&phi).unwrap();
        let r = approx_factorization(&phi, &dual).unwrap();
        assert!(r.is_approx());
        assert!(r.factorization.unwrap().factor_rate < 1e-14);

        let r = approx_factorization(&phi1(), &phi1()).unwrap();
        assert!(!r.is_approx());
        assert!((r.factorization.unwrap().factor_rate - 1.0).abs() < 1e-14);

        let r = approx_factorization(&phi, &dual.scaled(0.5)).unwrap();
        assert_eq!(r.kind, DualKind::Approx);
        assert!((r.rate - 0.5).abs() < 1e-14);
    }

    #[test]
    fn from_d_examples() {
        let phi = phi0();
        let roots = FrameRoots::new(&phi).unwrap();
        let zero = Annihilator::zero(&phi);
        let canon = approx_dual_from_d(&phi, &roots.inv_sqrt, &zero).unwrap();
        let want = frames::canonical_dual(&phi).unwrap();
        assert!(dist(canon.synthesis_operator(), want.synthesis_operator()) < 1e-14);

        let theta = frames::random_annihilator(&phi, 3, 1.0).unwrap();
        let shifted = approx_dual_from_d(&phi, &roots.inv_sqrt, &theta).unwrap();
        let m = frames::mixed_operator(&phi, &shifted).unwrap();
        assert!(dist(&m, &LinearMap::identity(2)) < 1e-14);
        assert!(dist(shifted.synthesis_operator(), want.synthesis_operator()) > 0.5);

        let scaled = approx_dual_from_d(&phi, &roots.inv_sqrt.scale(0.9), &zero).unwrap();
        let m = frames::mixed_operator(&phi, &scaled).unwrap();
        assert!(dist(&m, &LinearMap::identity(2).scale(0.9)) < 1e-14);
        assert!((frames::approximation_rate(&phi, &scaled).unwrap() - 0.1).abs() < 1e-14);
    }

    #[test]
    fn from_d_rejects_boundary() {
        let phi = phi1();
        let roots = FrameRoots::new(&phi).unwrap();
        // S^{1/2} D = S gives ‖Id - S‖ = 1 exactly
        let err = approx_dual_from_d(&phi, &roots.sqrt, &Annihilator::zero(&phi)).unwrap_err();
        match err {
            Error::ContractViolation { measured, .. } => assert!((measured - 1.0).abs() < 1e-14),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn admissible_examples() {
        let phi = phi1();
        let roots = FrameRoots::new(&phi).unwrap();
        let c = admissible_d_check(&phi, &roots.inv_sqrt).unwrap();
        assert!(c.admissible && c.distance < 1e-15);
        let near = &roots.inv_sqrt + &LinearMap::identity(2).scale(0.5);
        let c = admissible_d_check(&phi, &near).unwrap();
        assert!(c.admissible);
        assert!((c.distance - 0.5).abs() < 1e-14);
        assert!((c.threshold - 1.0 / libm::sqrt(2.0)).abs() < 1e-14);
        let far = &roots.inv_sqrt + &LinearMap::identity(2);
        assert!(!admissible_d_check(&phi, &far).unwrap().admissible);
    }

    #[test]
    fn from_a_examples() {
        let phi = phi0();
        let zero = Annihilator::zero(&phi);
        let canon = approx_dual_from_a(&phi, &LinearMap::identity(2), &zero).unwrap();
        let want = frames::canonical_dual(&phi).unwrap();
        assert!(dist(canon.synthesis_operator(), want.synthesis_operator()) < 1e-14);

        let a = LinearMap::identity(2).scale(0.8);
        let r = approx_dual_from_a(&phi, &a, &zero).unwrap();
        assert!(dist(r.synthesis_operator(), &want.synthesis_operator().scale(0.8)) < 1e-14);
        assert!((frames::approximation_rate(&phi, &r).unwrap() - 0.2).abs() < 1e-14);

        let nil = LinearMap::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let a = &LinearMap::identity(2) - &nil.scale(0.3);
        let theta = frames::random_annihilator(&phi, 11, 0.7).unwrap();
        let r = approx_dual_from_a(&phi, &a, &theta).unwrap();
        assert!(dist(&frames::mixed_operator(&phi, &r).unwrap(), &a) < 1e-14);

        let bad = LinearMap::identity(2).scale(2.5);
        assert!(matches!(
            approx_dual_from_a(&phi, &bad, &zero),
            Err(Error::ContractViolation { .. })
        ));
    }

    #[test]
    fn recover_canonical() {
        let phi = phi0();
        let dual = frames::canonical_dual(&phi).unwrap();
        let (d, theta) = recover_parameters(&phi, &dual).unwrap();
        assert!(dist(&d, &FrameRoots::new(&phi).unwrap().inv_sqrt) < 1e-14);
        assert!(theta.norm() < 1e-14);
    }

    #[test]
    fn recover_kernel_perturbation() {
        // ker(T_Φ1) = span{(1, -1, 0)}
        let phi = phi1();
        let base = [[0.5, 0.0], [0.5, 0.0], [0.0, 1.0]];
        let shift = [[0.2, -0.1], [-0.2, 0.1], [0.0, 0.0]];
        let cols: Vec<&[f64]> = vec![];
        drop(cols);
        let v: Vec<[f64; 2]> = (0..3)
            .map(|k| [base[k][0] + shift[k][0], base[k][1] + shift[k][1]])
            .collect();
        let psi = Frame::from_real_vectors(&[&v[0], &v[1], &v[2]]).unwrap();
        let (d, theta) = recover_parameters(&phi, &psi).unwrap();
        assert!(theta.norm() > 0.1);
        assert!(theta.residual(&phi).unwrap() < 1e-14);
        let rebuilt = approx_dual_from_d(&phi, &d, &theta).unwrap();
        assert!(dist(rebuilt.synthesis_operator(), psi.synthesis_operator()) < 1e-13);
    }

    #[test]
    fn recover_rejects_non_approx() {
        assert!(matches!(
            recover_parameters(&phi1(), &phi1()),
            Err(Error::NotApproxDual { .. })
        ));
    }

    #[test]
    fn via_dual_examples() {
        let phi = phi0();
        let canon = frames::canonical_dual(&phi).unwrap();
        let r = approx_dual_via_dual(&phi, &canon, &DualParameter::A(LinearMap::identity(2))).unwrap();
        assert!(dist(r.synthesis_operator(), canon.synthesis_operator()) < 1e-14);

        let alt = alternate_dual(&phi, 5, 0.8).unwrap();
        assert!(frames::is_dual_pair(&phi, &alt).unwrap());
        let r = approx_dual_via_dual(&phi, &alt, &DualParameter::A(LinearMap::identity(2))).unwrap();
        assert!(frames::is_dual_pair(&phi, &r).unwrap());
        // Θ^*(δ_j) = S φ^d_j - φ_j lies in the kernel direction
        let theta_star = &frames::frame_operator(&phi).matmul(alt.synthesis_operator())
            - phi.synthesis_operator();
        let t_theta = phi.synthesis_operator().mul_adjoint(&theta_star);
        assert!(oplin::operator_norm(&t_theta) < 1e-13);

        let a = LinearMap::identity(2).scale(0.9);
        let r = approx_dual_via_dual(&phi, &alt, &DualParameter::A(a)).unwrap();
        assert!((frames::approximation_rate(&phi, &r).unwrap() - 0.1).abs() < 1e-13);

        let roots = FrameRoots::new(&phi).unwrap();
        let d = roots.inv_sqrt.scale(0.95);
        let r = approx_dual_via_dual(&phi, &alt, &DualParameter::D(d.clone())).unwrap();
        let m = frames::mixed_operator(&phi, &r).unwrap();
        assert!(dist(&m, &roots.sqrt.matmul(&d)) < 1e-13);

        assert!(matches!(
            approx_dual_via_dual(&phi, &phi, &DualParameter::A(LinearMap::identity(2))),
            Err(Error::NotDualPair { .. })
        ));
    }

    #[test]
    fn gdual_from_a_examples() {
        let phi = phi0();
        let zero = Annihilator::zero(&phi);
        let canon = frames::canonical_dual(&phi).unwrap();
        let r = gdual_from_a(&phi, &LinearMap::identity(2), &zero).unwrap();
        assert!(dist(r.synthesis_operator(), canon.synthesis_operator()) < 1e-14);

        let s = frames::frame_operator(&phi);
        let r = gdual_from_a(&phi, &s, &zero).unwrap();
        let s_inv = oplin::inverse(&s).unwrap();
        let want = s_inv.matmul(&s_inv).matmul(phi.synthesis_operator());
        assert!(dist(r.synthesis_operator(), &want) < 1e-14);
        assert!(dist(&frames::mixed_operator(&phi, &r).unwrap(), &s_inv) < 1e-14);

        let r = gdual_from_a(&phi, &LinearMap::identity(2).scale(2.0), &zero).unwrap();
        assert!(dist(r.synthesis_operator(), &canon.synthesis_operator().scale(0.5)) < 1e-14);

        let singular = LinearMap::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(gdual_from_a(&phi, &singular, &zero), Err(Error::Singular { .. })));
    }

    #[test]
    fn reconstruct_examples() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let f = vec![c(1.0), c(1.0)];
        let phi = phi1();
        let canon = frames::canonical_dual(&phi).unwrap();
        let got = reconstruct(&phi, &canon, &f).unwrap();
        assert!(got.iter().zip(&f).all(|(a, b)| (a - b).norm() < 1e-14));
        let got = reconstruct(&phi, &phi, &f).unwrap();
        assert!(got.iter().zip(&f).all(|(a, b)| (a - b).norm() < 1e-14));
        let half = canon.scaled(0.5);
        let g = vec![Complex64::new(0.3, -2.0), c(4.0)];
        let got = reconstruct(&phi, &half, &g).unwrap();
        assert!(got.iter().zip(&g).all(|(a, b)| (a - b).norm() < 1e-13));
    }

    #[test]
    fn range_examples() {
        let phi = phi0();
        let q = LinearMap::from_real(2, 2, &[2.0, 1.0, -1.0, 3.0]).unwrap();
        assert_eq!(range_compare(&phi, &phi.mapped(&q)).unwrap(), RangeRelation::Equal);
        let other = Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, -1.0]]).unwrap();
        assert_eq!(range_compare(&phi, &other).unwrap(), RangeRelation::Incomparable);
        // strict inclusion needs a rank-deficient Bessel sequence
        let thin = Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]]).unwrap();
        assert_eq!(range_compare(&thin, &phi).unwrap(), RangeRelation::LeftInRight);
        assert_eq!(range_compare(&phi, &thin).unwrap(), RangeRelation::RightInLeft);
    }

    #[test]
    fn equivalence_examples() {
        let phi = phi0();
        let s_inv = oplin::inverse(&frames::frame_operator(&phi)).unwrap();
        let r = equivalence_inverse(&phi, &phi).unwrap();
        assert!(dist(&r, &s_inv) < 1e-14);
        let canon = frames::canonical_dual(&phi).unwrap();
        let r = equivalence_inverse(&phi, &canon).unwrap();
        assert!(dist(&r, &LinearMap::identity(2)) < 1e-14);
        let r = equivalence_inverse(&phi, &phi.scaled(2.0)).unwrap();
        assert!(dist(&r, &s_inv.scale(0.5)) < 1e-14);
        let other = Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, -1.0]]).unwrap();
        assert!(matches!(
            equivalence_inverse(&phi, &other),
            Err(Error::NotEquivalent { .. })
        ));
    }
}
