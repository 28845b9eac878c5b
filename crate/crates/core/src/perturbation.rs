//! Transfer of approximate duals and g-duals from a frame `Φ` to a nearby
//! frame `Ψ`, measured by the Bessel bound `M_{Φ-Ψ}` of the difference
//! sequence.
//!
//! Given `(Φ, Φ^x)` with mixed operator `A = T_Φ U_{Φ^x}` and annihilator
//! `Θ = U_{Φ^x} - U_Φ S_Φ^{-1} A`, the transfer builds
//!
//! ```text
//! T_Ω   = A^* S_Ψ^{-1} T_Ψ + Θ^*
//! C     = T_Ω U_Ψ (A^*)^{-1}
//! T_Ψx  = C^{-1} T_Ω
//! ```
//!
//! so that `T_Ψ U_{Ψ^x} = A`. `C` is invertible once
//! `√M_{Φ-Ψ} ‖Θ‖ ‖A^{-1}‖ < 1`.

use crate::error::{Error, Result};
use crate::frames::{self, Frame};
use crate::oplin::{self, LinearMap};
use crate::STRICT_MARGIN;

/// Margin on the smallness product `√M_{Φ-Ψ} ‖Θ‖ ‖A^{-1}‖ < 1`.
pub const SMALLNESS_MARGIN: f64 = 1e-9;
/// Tolerance on `‖T_Ψ U_{Ψ^x} - A‖` reported as a successful transfer.
pub const MIXED_MATCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct TransferResult {
    /// The transferred dual `Ψ^{ad}` (or `Ψ^{gd}`).
    pub psi_ad: Frame,
    /// Intermediate sequence `ω_j = A^* ψ̃_j + Θ^*(δ_j)`.
    pub omega: Frame,
    /// `C = T_Ω U_Ψ (A^*)^{-1}`.
    pub corrector: LinearMap,
    /// Shared mixed operator `A = T_Φ U_{Φ^x}`.
    pub mixed: LinearMap,
    /// `‖Θ‖` for the annihilator recovered from `(Φ, Φ^x)`.
    pub theta_norm: f64,
    /// `M_{Φ-Ψ}`.
    pub input_diff_bound: f64,
    /// `√M_{Φ-Ψ} ‖Θ‖ ‖A^{-1}‖`.
    pub smallness: f64,
    /// Closed-form upper bound for `M_{Φ^x - Ψ^x}`.
    pub predicted_diff_bound: f64,
    /// Optimal Bessel bound of `(φ^x_j - ψ^x_j)_j`.
    pub measured_diff_bound: f64,
    /// `‖T_Ψ U_{Ψ^x} - A‖`.
    pub mixed_match_residual: f64,
}

/// Which relation the source pair must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Source {
    Approx,
    Gdual,
}

/// Transfers an approximate dual `Φ^{ad}` of `Φ` to an approximate dual
/// `Ψ^{ad}` of `Ψ` with the same mixed operator.
pub fn transfer_approx_dual(phi: &Frame, psi: &Frame, phi_ad: &Frame) -> Result<TransferResult> {
    transfer(phi, psi, phi_ad, Source::Approx)
}

/// Transfers a g-dual `Φ^{gd}` of `Φ` to a g-dual `Ψ^{gd}` of `Ψ` with
/// `T_Ψ U_{Ψ^{gd}} = T_Φ U_{Φ^{gd}}`.
pub fn transfer_gdual(phi: &Frame, psi: &Frame, phi_gd: &Frame) -> Result<TransferResult> {
    transfer(phi, psi, phi_gd, Source::Gdual)
}

/// `Φ` is a g-dual of itself with mixed operator `S_Φ`; its transfer is a
/// g-dual `Ψ^{gd}` of `Ψ` with `T_Ψ U_{Ψ^{gd}} = S_Φ`. Here `Θ = 0`, so
/// `ψ^{gd}_j = S_Φ S_Ψ^{-1} ψ_j`.
pub fn self_gdual_transfer(phi: &Frame, psi: &Frame) -> Result<TransferResult> {
    transfer(phi, psi, phi, Source::Gdual)
}

fn transfer(phi: &Frame, psi: &Frame, phi_x: &Frame, source: Source) -> Result<TransferResult> {
    let m_phi = frames::require_frame(phi)?;
    let m_psi = frames::require_frame(psi)?;
    let a = frames::mixed_operator(phi, phi_x)?;
    frames::mixed_operator(phi, psi)?;
    match source {
        Source::Approx => {
            let rate = frames::rate_of(&a);
            if rate >= 1.0 - STRICT_MARGIN {
                return Err(Error::NotApproxDual { rate });
            }
        }
        Source::Gdual => {
            if oplin::inverse(&a).is_err() {
                return Err(Error::NotGdual);
            }
        }
    }
    let a_inv = oplin::inverse(&a)?;

    let s_phi_inv = frames::inverse_frame_operator(phi)?;
    let theta = &phi_x.analysis_operator() - &phi.analysis_operator().matmul(&s_phi_inv.matmul(&a));
    let theta_norm = oplin::operator_norm(&theta);

    let input_diff_bound = frames::bessel_bound_difference(phi, psi)?;
    let a_inv_norm = oplin::operator_norm(&a_inv);
    let smallness = libm::sqrt(input_diff_bound) * theta_norm * a_inv_norm;
    if smallness >= 1.0 - SMALLNESS_MARGIN {
        return Err(Error::SmallnessViolated { product: smallness });
    }

    let psi_dual = frames::canonical_dual(psi)?;
    let t_omega = &a.adjoint().matmul(psi_dual.synthesis_operator()) + &theta.adjoint();
    let corrector = t_omega
        .mul_adjoint(psi.synthesis_operator())
        .matmul(&a_inv.adjoint());
    let c_inv = oplin::inverse(&corrector)?;
    let psi_ad = Frame::from_synthesis(c_inv.matmul(&t_omega));

    let rebuilt = frames::mixed_operator(psi, &psi_ad)?;
    let mixed_match_residual = oplin::operator_norm(&(&rebuilt - &a));

    let m_phi_x = frames::bessel_bound(phi_x);
    let spread = (m_phi.lower + m_phi.upper + libm::sqrt(m_psi.upper * m_phi.upper))
        / (m_phi.lower * m_psi.lower);
    let lead = a_inv_norm / (1.0 - smallness);
    let tail = theta_norm * libm::sqrt(m_phi_x) + oplin::operator_norm(&a) * spread;
    let predicted_diff_bound = input_diff_bound * lead * lead * tail * tail;
    let measured_diff_bound = frames::bessel_bound_difference(phi_x, &psi_ad)?;

    Ok(TransferResult {
        psi_ad,
        omega: Frame::from_synthesis(t_omega),
        corrector,
        mixed: a,
        theta_norm,
        input_diff_bound,
        smallness,
        predicted_diff_bound,
        measured_diff_bound,
        mixed_match_residual,
    })
}

/// The two estimates for the corrector `C` used to control `C^{-1}`:
/// `‖C^{-1}‖ ≤ 1/(1 - ‖Id - C‖)` and `‖Id - C^{-1}‖ ≤ ‖C^{-1}‖ ‖Id - C‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectorEstimates {
    pub distance: f64,
    pub inverse_norm: f64,
    pub neumann_bound: f64,
    pub inverse_distance: f64,
    pub product_bound: f64,
}

/// Evaluates [`CorrectorEstimates`]; `None` when `‖Id - C‖ ≥ 1`.
pub fn corrector_estimates(c: &LinearMap) -> Result<Option<CorrectorEstimates>> {
    let distance = frames::rate_of(c);
    if distance >= 1.0 {
        return Ok(None);
    }
    let c_inv = oplin::inverse(c)?;
    let inverse_norm = oplin::operator_norm(&c_inv);
    Ok(Some(CorrectorEstimates {
        distance,
        inverse_norm,
        neumann_bound: 1.0 / (1.0 - distance),
        inverse_distance: frames::rate_of(&c_inv),
        product_bound: inverse_norm * distance,
    }))
}

/// Returns `(‖S_Φ - S_Ψ‖, √M_{Φ-Ψ} (√M_Φ + √M_Ψ))`.
pub fn frame_operator_lipschitz(phi: &Frame, psi: &Frame) -> Result<(f64, f64)> {
    let diff = frames::bessel_bound_difference(phi, psi)?;
    let measured = oplin::operator_norm(&(&frames::frame_operator(phi) - &frames::frame_operator(psi)));
    let bound = libm::sqrt(diff)
        * (libm::sqrt(frames::bessel_bound(phi)) + libm::sqrt(frames::bessel_bound(psi)));
    Ok((measured, bound))
}

/// For Riesz bases with `D φ_j = ψ_j`, i.e. `D = T_Ψ T_Φ^{-1}`:
/// `min{M_Φ ‖Id - D‖², M_Ψ ‖Id - D^{-1}‖²}`, an upper bound for `M_{Φ-Ψ}`.
pub fn riesz_difference_bound(phi: &Frame, psi: &Frame) -> Result<f64> {
    if !frames::is_riesz(phi) || !frames::is_riesz(psi) || phi.dim() != psi.dim() {
        return Err(Error::NotRieszBasis);
    }
    let t_phi_inv = oplin::inverse(phi.synthesis_operator())?;
    let d = psi.synthesis_operator().matmul(&t_phi_inv);
    let d_inv = oplin::inverse(&d)?;
    let left = frames::bessel_bound(phi) * frames::rate_of(&d).powi(2);
    let right = frames::bessel_bound(psi) * frames::rate_of(&d_inv).powi(2);
    Ok(left.min(right))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi0() -> Frame {
        Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap()
    }

    fn phi0_eps(eps: f64) -> Frame {
        Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0 + eps]]).unwrap()
    }

    fn dist(a: &LinearMap, b: &LinearMap) -> f64 {
        oplin::operator_norm(&(a - b))
    }

    #[test]
    fn identity_transfer() {
        let phi = phi0();
        let ad = frames::canonical_dual(&phi).unwrap().scaled(0.9);
        let r = transfer_approx_dual(&phi, &phi, &ad).unwrap();
        assert!(dist(r.psi_ad.synthesis_operator(), ad.synthesis_operator()) < 1e-13);
        assert!(r.input_diff_bound < 1e-28);
        assert!(r.measured_diff_bound < 1e-24);
        assert!(r.predicted_diff_bound < 1e-24);
    }

    #[test]
    fn perturbed_canonical() {
        let phi = phi0();
        let psi = phi0_eps(0.01);
        let ad = frames::canonical_dual(&phi).unwrap();
        let r = transfer_approx_dual(&phi, &psi, &ad).unwrap();
        assert!(r.mixed_match_residual <= 1e-10);
        assert!(r.measured_diff_bound <= r.predicted_diff_bound + 1e-9);
        // oracle: with Θ = 0 and A = Id the transfer is the canonical dual of Ψ
        let want = frames::canonical_dual(&psi).unwrap();
        assert!(dist(r.psi_ad.synthesis_operator(), want.synthesis_operator()) < 1e-12);
        assert!(dist(&r.corrector, &LinearMap::identity(2)) < 1e-12);
    }

    #[test]
    fn perturbed_with_annihilator() {
        let phi = phi0();
        let theta = frames::random_annihilator(&phi, 21, 0.3).unwrap();
        let a = LinearMap::identity(2).scale(0.95);
        let ad = crate::duality::approx_dual_from_a(&phi, &a, &theta).unwrap();
        let psi = phi0_eps(0.01);
        let r = transfer_approx_dual(&phi, &psi, &ad).unwrap();
        assert!(r.theta_norm > 0.29);
        assert!(r.smallness > 0.0 && r.smallness < 1.0);
        assert!(r.mixed_match_residual <= 1e-10);
        assert!(dist(&frames::mixed_operator(&psi, &r.psi_ad).unwrap(), &a) < 1e-10);
        assert!(r.measured_diff_bound <= r.predicted_diff_bound + 1e-9);
        let est = corrector_estimates(&r.corrector).unwrap().unwrap();
        assert!(est.inverse_norm <= est.neumann_bound + 1e-10);
        assert!(est.inverse_distance <= est.product_bound + 1e-10);
    }

    #[test]
    fn scaling_law() {
        let phi = phi0();
        let theta = frames::random_annihilator(&phi, 8, 0.5).unwrap();
        let ad = crate::duality::approx_dual_from_a(&phi, &LinearMap::identity(2), &theta).unwrap();
        let run = |eps: f64| transfer_approx_dual(&phi, &phi0_eps(eps), &ad).unwrap();
        let r = [run(0.02), run(0.01), run(0.005)];
        for w in r.windows(2) {
            assert!((w[0].input_diff_bound / w[1].input_diff_bound - 4.0).abs() < 1e-9);
            assert!(w[0].measured_diff_bound / w[1].measured_diff_bound >= 2.0);
        }
    }

    #[test]
    fn smallness_violation() {
        let phi = phi0();
        let theta = frames::random_annihilator(&phi, 2, 5.0).unwrap();
        let ad = crate::duality::approx_dual_from_a(&phi, &LinearMap::identity(2), &theta).unwrap();
        let psi = Frame::from_real_vectors(&[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 0.5]]).unwrap();
        match transfer_approx_dual(&phi, &psi, &ad) {
            Err(Error::SmallnessViolated { product }) => assert!(product >= 1.0 - 1e-9),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_non_approx_source() {
        let phi = Frame::from_real_vectors(&[&[1.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(
            transfer_approx_dual(&phi, &phi, &phi),
            Err(Error::NotApproxDual { .. })
        ));
    }

    #[test]
    fn gdual_examples() {
        let phi = phi0();
        let gd = crate::duality::gdual_from_a(
            &phi,
            &frames::frame_operator(&phi),
            &frames::random_annihilator(&phi, 4, 0.2).unwrap(),
        )
        .unwrap();
        let same = transfer_gdual(&phi, &phi, &gd).unwrap();
        assert!(dist(same.psi_ad.synthesis_operator(), gd.synthesis_operator()) < 1e-12);

        let psi = phi0_eps(0.01);
        let r = transfer_gdual(&phi, &psi, &gd).unwrap();
        assert!(r.mixed_match_residual <= 1e-10);
        assert!(r.measured_diff_bound <= r.predicted_diff_bound + 1e-9);

        let r = transfer_gdual(&phi, &psi, &phi).unwrap();
        let s = frames::frame_operator(&phi);
        assert!(dist(&frames::mixed_operator(&psi, &r.psi_ad).unwrap(), &s) < 1e-10);
    }

    #[test]
    fn self_transfer_examples() {
        let phi = phi0();
        let r = self_gdual_transfer(&phi, &phi).unwrap();
        assert!(dist(r.psi_ad.synthesis_operator(), phi.synthesis_operator()) < 1e-13);

        let e = Frame::standard_basis(3);
        let psi = Frame::from_real_vectors(&[&[1.0, 0.02, 0.0], &[0.0, 1.0, -0.01], &[0.03, 0.0, 1.0]])
            .unwrap();
        let r = self_gdual_transfer(&e, &psi).unwrap();
        assert!(r.theta_norm < 1e-14);
        assert!(dist(&frames::mixed_operator(&psi, &r.psi_ad).unwrap(), &LinearMap::identity(3)) < 1e-9);
        assert!(frames::is_riesz(&r.psi_ad));
        assert!(r.measured_diff_bound <= r.predicted_diff_bound + 1e-9);
    }

    #[test]
    fn lipschitz_bound() {
        let (m, b) = frame_operator_lipschitz(&phi0(), &phi0_eps(0.05)).unwrap();
        assert!(m <= b + 1e-9);
    }

    #[test]
    fn riesz_examples() {
        let e = Frame::standard_basis(2);
        assert!(riesz_difference_bound(&e, &e).unwrap() < 1e-30);

        let phi = Frame::from_real_vectors(&[&[2.0, 1.0], &[0.0, 1.0]]).unwrap();
        let m = frames::bessel_bound(&phi);
        let r = riesz_difference_bound(&phi, &phi.scaled(2.0)).unwrap();
        assert!((r - m).abs() < 1e-12 * m);

        let psi = Frame::from_real_vectors(&[&[1.0, 0.0], &[0.1, 1.0]]).unwrap();
        let r = riesz_difference_bound(&e, &psi).unwrap();
        // D = [[1, 0.1], [0, 1]]: ‖Id - D‖ = 0.1 and ‖Id - D^{-1}‖ = 0.1
        let m_psi = frames::bessel_bound(&psi);
        assert!((r - 0.01f64.min(m_psi * 0.01)).abs() < 1e-14);
        assert!(r >= frames::bessel_bound_difference(&e, &psi).unwrap() - 1e-9);

        assert!(matches!(
            riesz_difference_bound(&phi0(), &phi0()),
            Err(Error::NotRieszBasis)
        ));
    }
}
