//! Generating triplets (Q, nu, gamma) and their characteristic exponents.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{LevyError, Result};
use crate::levy::measure::{truncation_correction, LevyMeasureSpec, Truncation, DEFAULT_TOL};

/// Generating triplet of an infinitely divisible law / Lévy process: Gaussian
/// covariance `Q`, Lévy measure `nu`, drift `gamma`, with the truncation
/// convention the drift refers to.
///
/// The canonical exponent convention throughout the crate is the log
/// characteristic function `eta(z) = log E exp(i<z, L(1)>)`; the constant
/// coefficient symbol of the generator is `-eta`.
#[derive(Debug, Clone)]
pub struct LevyTriplet {
    pub dim: usize,
    pub q: DMatrix<f64>,
    pub nu: LevyMeasureSpec,
    pub gamma: DVector<f64>,
    pub truncation: Truncation,
}

impl LevyTriplet {
    pub fn new(
        q: DMatrix<f64>,
        nu: LevyMeasureSpec,
        gamma: DVector<f64>,
        truncation: Truncation,
    ) -> Result<Self> {
        let dim = nu.dim();
        if q.nrows() != dim || q.ncols() != dim {
            return Err(LevyError::InvalidModel(format!(
                "Q is {}x{}, expected {dim}x{dim}",
                q.nrows(),
                q.ncols()
            )));
        }
        if gamma.len() != dim {
            return Err(LevyError::InvalidModel("gamma dimension mismatch".into()));
        }
        for i in 0..dim {
            for j in 0..i {
                if (q[(i, j)] - q[(j, i)]).abs() > 1e-12 * (1.0 + q[(i, j)].abs()) {
                    return Err(LevyError::InvalidModel("Q must be symmetric".into()));
                }
            }
        }
        let eig = q.clone().symmetric_eigenvalues();
        if eig.iter().any(|&l| l < -1e-10) {
            return Err(LevyError::InvalidModel(
                "Q must be positive semi-definite".into(),
            ));
        }
        nu.validate()?;
        if truncation == Truncation::None && !nu.finite_variation_small_jumps() {
            return Err(LevyError::InfiniteVariation);
        }
        Ok(LevyTriplet {
            dim,
            q,
            nu,
            gamma,
            truncation,
        })
    }

    /// Pure Gaussian triplet (nu = 0, gamma = 0).
    pub fn gaussian(q: DMatrix<f64>) -> Result<Self> {
        let dim = q.nrows();
        LevyTriplet::new(
            q,
            LevyMeasureSpec::Zero { dim },
            DVector::zeros(dim),
            Truncation::IndicatorUnitBall,
        )
    }

    /// Scalar convenience constructor for d = 1.
    pub fn scalar(q: f64, nu: LevyMeasureSpec, gamma: f64, truncation: Truncation) -> Result<Self> {
        LevyTriplet::new(
            DMatrix::from_element(1, 1, q),
            nu,
            DVector::from_element(1, gamma),
            truncation,
        )
    }

    /// Symmetric stable triplet normalized so that `eta(z) = -|z|^alpha`.
    pub fn stable_unit(dim: usize, alpha: f64) -> Result<Self> {
        let scale = crate::levy::measure::unit_exponent_scale(alpha, dim);
        LevyTriplet::new(
            DMatrix::zeros(dim, dim),
            LevyMeasureSpec::Stable { dim, alpha, scale },
            DVector::zeros(dim),
            Truncation::IndicatorUnitBall,
        )
    }

    /// Characteristic exponent `eta(z) = log E exp(i<z, L(1)>)` at default
    /// tolerance 1e-8.
    pub fn char_exponent(&self, z: &DVector<f64>) -> Result<Complex64> {
        self.char_exponent_tol(z, DEFAULT_TOL).map(|(v, _)| v)
    }

    /// As [`char_exponent`], returning the quadrature error estimate.
    pub fn char_exponent_tol(&self, z: &DVector<f64>, tol: f64) -> Result<(Complex64, f64)> {
        if z.len() != self.dim {
            return Err(LevyError::InvalidModel("argument dimension mismatch".into()));
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(LevyError::InvalidModel("argument must be finite".into()));
        }
        let quad_form = -0.5 * (self.q.clone() * z).dot(z);
        let drift = self.gamma.dot(z);
        let (jump, err) = self.nu.exponent_term(z, self.truncation, tol)?;
        if err > tol.max(1e-12) * 100.0 {
            return Err(LevyError::QuadratureNonConvergence {
                context: "characteristic exponent jump integral".into(),
                requested: tol,
                achieved: err,
            });
        }
        Ok((Complex64::new(quad_form, drift) + jump, err))
    }

    /// Characteristic function `exp(eta(z))`; modulus never exceeds 1.
    pub fn cf(&self, z: &DVector<f64>) -> Result<Complex64> {
        Ok(self.char_exponent(z)?.exp())
    }

    /// Re-express the triplet under a different truncation convention. The
    /// characteristic exponent is unchanged pointwise.
    pub fn convert_truncation(&self, new: Truncation) -> Result<LevyTriplet> {
        if new == Truncation::None && !self.nu.finite_variation_small_jumps() {
            return Err(LevyError::InfiniteVariation);
        }
        let corr = truncation_correction(&self.nu, self.truncation, new)?;
        Ok(LevyTriplet {
            dim: self.dim,
            q: self.q.clone(),
            nu: self.nu.clone(),
            gamma: &self.gamma + corr,
            truncation: new,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::measure::JumpLaw;
    use approx::assert_abs_diff_eq;

    fn vec1(z: f64) -> DVector<f64> {
        DVector::from_element(1, z)
    }

    #[test]
    fn pure_gaussian_exponent() {
        let t = LevyTriplet::gaussian(DMatrix::from_element(1, 1, 1.0)).unwrap();
        let eta = t.char_exponent(&vec1(2.0)).unwrap();
        assert_abs_diff_eq!(eta.re, -2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eta.im, 0.0, epsilon = 1e-14);
        // cf example
        let cf = t.cf(&vec1(1.0)).unwrap();
        assert_abs_diff_eq!(cf.re, (-0.5_f64).exp(), epsilon = 1e-14);
    }

    #[test]
    fn exponent_vanishes_at_zero() {
        let t = LevyTriplet::scalar(
            0.5,
            LevyMeasureSpec::Atomic {
                dim: 1,
                atoms: vec![(vec![0.7], 2.0), (vec![-3.0], 0.4)],
            },
            1.3,
            Truncation::IndicatorUnitBall,
        )
        .unwrap();
        let eta = t.char_exponent(&vec1(0.0)).unwrap();
        assert_eq!(eta, Complex64::new(0.0, 0.0));
        assert_abs_diff_eq!(t.cf(&vec1(0.0)).unwrap().re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn two_atoms_at_pi() {
        let t = LevyTriplet::scalar(
            0.0,
            LevyMeasureSpec::Atomic {
                dim: 1,
                atoms: vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)],
            },
            0.0,
            Truncation::IndicatorUnitBall,
        )
        .unwrap();
        let eta = t.char_exponent(&vec1(std::f64::consts::PI)).unwrap();
        assert_abs_diff_eq!(eta.re, -4.0, epsilon = 1e-13);
        assert_abs_diff_eq!(eta.im, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn stable_unit_cf() {
        let t = LevyTriplet::stable_unit(1, 1.0).unwrap();
        let cf = t.cf(&vec1(2.0)).unwrap();
        assert_abs_diff_eq!(cf.re, (-2.0_f64).exp(), epsilon = 1e-12);
        assert_abs_diff_eq!(cf.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn real_part_nonpositive_and_modulus_bounded() {
        let t = LevyTriplet::scalar(
            0.3,
            LevyMeasureSpec::CompoundPoisson {
                dim: 1,
                rate: 2.0,
                jumps: JumpLaw::Atoms {
                    atoms: vec![(vec![0.4], 0.25), (vec![1.5], 0.75)],
                },
            },
            -0.7,
            Truncation::Rational,
        )
        .unwrap();
        for &z in &[-5.0, -0.3, 0.9, 4.2] {
            let eta = t.char_exponent(&vec1(z)).unwrap();
            assert!(eta.re <= 1e-14);
            assert!(t.cf(&vec1(z)).unwrap().norm() <= 1.0 + 1e-14);
        }
    }

    #[test]
    fn convert_truncation_single_atom() {
        let t = LevyTriplet::scalar(
            0.0,
            LevyMeasureSpec::Atomic {
                dim: 1,
                atoms: vec![(vec![2.0], 1.0)],
            },
            0.25,
            Truncation::IndicatorUnitBall,
        )
        .unwrap();
        let t2 = t.convert_truncation(Truncation::Rational).unwrap();
        assert_abs_diff_eq!(t2.gamma[0], 0.25 + 0.4, epsilon = 1e-14);
        // exponent is pointwise unchanged
        for &z in &[0.5, 1.7, -2.3] {
            let a = t.char_exponent(&vec1(z)).unwrap();
            let b = t2.char_exponent(&vec1(z)).unwrap();
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn convert_truncation_none_requires_finite_variation() {
        let t = LevyTriplet::scalar(
            0.0,
            LevyMeasureSpec::Stable {
                dim: 1,
                alpha: 1.5,
                scale: 1.0,
            },
            0.0,
            Truncation::IndicatorUnitBall,
        )
        .unwrap();
        assert!(matches!(
            t.convert_truncation(Truncation::None),
            Err(LevyError::InfiniteVariation)
        ));
        // finite-variation stable is fine
        let t = LevyTriplet::scalar(
            0.0,
            LevyMeasureSpec::Stable {
                dim: 1,
                alpha: 0.5,
                scale: 1.0,
            },
            0.0,
            Truncation::IndicatorUnitBall,
        )
        .unwrap();
        assert!(t.convert_truncation(Truncation::None).is_ok());
    }

    #[test]
    fn invalid_q_rejected() {
        let q = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, -0.5, 1.0]);
        assert!(LevyTriplet::new(
            q,
            LevyMeasureSpec::Zero { dim: 2 },
            DVector::zeros(2),
            Truncation::IndicatorUnitBall,
        )
        .is_err());
        let q = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]); // eigenvalue -1
        assert!(LevyTriplet::new(
            q,
            LevyMeasureSpec::Zero { dim: 2 },
            DVector::zeros(2),
            Truncation::IndicatorUnitBall,
        )
        .is_err());
    }
}
