//! Parametric Lévy measures with analytic moment, tail and exponent
//! accessors. Atomic measures are summed exactly; radial families evaluate
//! either in closed form (stable) or by split quadrature (tempered stable,
//! heavy tails).

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LevyError, Result};
use crate::quad;
use crate::special::{gamma, sphere_mean_cos, sphere_surface};

/// Truncation function c(y) compensating small jumps in the exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Truncation {
    /// Indicator of the closed unit ball |y| <= 1.
    IndicatorUnitBall,
    /// 1 / (1 + |y|^2).
    Rational,
    /// No compensation; valid only for finite-variation small jumps.
    None,
}

impl Truncation {
    pub fn weight(&self, y_norm: f64) -> f64 {
        match self {
            Truncation::IndicatorUnitBall => {
                if y_norm <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Truncation::Rational => 1.0 / (1.0 + y_norm * y_norm),
            Truncation::None => 0.0,
        }
    }
}

/// Jump-size law of a compound Poisson measure.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum JumpLaw {
    /// Discrete law: positions with probabilities (must sum to 1).
    Atoms { atoms: Vec<(Vec<f64>, f64)> },
    /// Isotropic centered Gaussian with per-coordinate standard deviation.
    IsotropicGaussian { sigma: f64 },
    /// One-dimensional heavy log tail: density ln(y0) / (y ln^2 y) on
    /// [y0, inf), y0 > 1. Has finite mass but infinite log-moment.
    HeavyLogTail { y0: f64 },
}

/// Parametric description of a Lévy measure.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum LevyMeasureSpec {
    Zero {
        dim: usize,
    },
    /// Symmetric stable: density `scale * |y|^(-d-alpha) dy`.
    Stable {
        dim: usize,
        alpha: f64,
        scale: f64,
    },
    /// Symmetric tempered stable: density `scale * exp(-theta |y|) |y|^(-d-alpha) dy`.
    TemperedStable {
        dim: usize,
        alpha: f64,
        scale: f64,
        theta: f64,
    },
    /// Finite sum of point masses (positions, intensities).
    Atomic {
        dim: usize,
        atoms: Vec<(Vec<f64>, f64)>,
    },
    /// Finite-activity measure `rate * law(dy)`.
    CompoundPoisson {
        dim: usize,
        rate: f64,
        jumps: JumpLaw,
    },
}

/// Result of the log-moment functional: `int_{|y|>2} log|y| nu(dy)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogMoment {
    pub finite: bool,
    pub value: f64,
}

/// Default absolute tolerance for exponent evaluations.
pub const DEFAULT_TOL: f64 = 1e-8;

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `c_alpha(d) = -int (cos<u, y> - 1) |y|^(-d-alpha) dy` for a unit vector u;
/// the symmetric stable exponent is `eta(z) = -scale * c_alpha(d) * |z|^alpha`.
pub fn stable_constant(alpha: f64, dim: usize) -> f64 {
    let d = dim as f64;
    std::f64::consts::PI.powf(d / 2.0) * gamma(1.0 - alpha / 2.0)
        / (alpha * 2.0_f64.powf(alpha - 1.0) * gamma((d + alpha) / 2.0))
}

/// Scale making the stable exponent exactly `-|z|^alpha`.
pub fn unit_exponent_scale(alpha: f64, dim: usize) -> f64 {
    1.0 / stable_constant(alpha, dim)
}

impl JumpLaw {
    fn validate(&self, dim: usize) -> Result<()> {
        match self {
            JumpLaw::Atoms { atoms } => {
                if atoms.is_empty() {
                    return Err(LevyError::InvalidModel("empty jump law".into()));
                }
                let mut total = 0.0;
                for (pos, p) in atoms {
                    if pos.len() != dim {
                        return Err(LevyError::InvalidModel("jump atom dimension mismatch".into()));
                    }
                    if *p <= 0.0 {
                        return Err(LevyError::InvalidModel("jump probabilities must be > 0".into()));
                    }
                    if norm(pos) == 0.0 {
                        return Err(LevyError::InvalidModel("jump law has an atom at 0".into()));
                    }
                    total += p;
                }
                if (total - 1.0).abs() > 1e-10 {
                    return Err(LevyError::InvalidModel(format!(
                        "jump probabilities sum to {total}, expected 1"
                    )));
                }
                Ok(())
            }
            JumpLaw::IsotropicGaussian { sigma } => {
                if *sigma <= 0.0 {
                    return Err(LevyError::InvalidModel("jump sigma must be > 0".into()));
                }
                Ok(())
            }
            JumpLaw::HeavyLogTail { y0 } => {
                if dim != 1 {
                    return Err(LevyError::UnsupportedDimension {
                        dim,
                        context: "heavy-log-tail jump law".into(),
                    });
                }
                if *y0 <= 1.0 {
                    return Err(LevyError::InvalidModel("heavy-log-tail needs y0 > 1".into()));
                }
                Ok(())
            }
        }
    }

    fn is_symmetric(&self) -> bool {
        match self {
            JumpLaw::Atoms { atoms } => atoms_symmetric(atoms),
            JumpLaw::IsotropicGaussian { .. } => true,
            JumpLaw::HeavyLogTail { .. } => false,
        }
    }
}

fn atoms_symmetric(atoms: &[(Vec<f64>, f64)]) -> bool {
    atoms.iter().all(|(pos, m)| {
        let neg: Vec<f64> = pos.iter().map(|x| -x).collect();
        atoms
            .iter()
            .any(|(q, m2)| (m - m2).abs() < 1e-14 && q.iter().zip(&neg).all(|(a, b)| (a - b).abs() < 1e-14))
    })
}

/// Heavy-log-tail density and derivatives: p(y) = C / (y ln^2 y), C = ln y0.
fn hlt_density(y0: f64, y: f64) -> f64 {
    let c = y0.ln();
    let l = y.ln();
    c / (y * l * l)
}

fn hlt_density_d1(y0: f64, y: f64) -> f64 {
    let c = y0.ln();
    let l = y.ln();
    -c * (l + 2.0) / (y * y * l * l * l)
}

/// `int_R^inf e^{izy} p(y) dy` for the heavy-log-tail density via a finite
/// panel plus a two-term integration-by-parts tail. Returns value and error
/// estimate. `z != 0`.
fn hlt_oscillatory_cf(y0: f64, z: f64, tol: f64) -> (Complex64, f64) {
    let zs = z.abs();
    // ~100 oscillations in the finite panel
    let r_end = (4.0 * y0).max(640.0 / zs);
    let (main, e1) = quad::integrate(
        |y| Complex64::new(0.0, z * y).exp() * hlt_density(y0, y),
        y0,
        r_end,
        tol / 2.0,
    );
    let iz = Complex64::new(0.0, z);
    let boundary = Complex64::new(0.0, z * r_end).exp();
    let tail = boundary * (-hlt_density(y0, r_end) / iz + hlt_density_d1(y0, r_end) / (iz * iz));
    // residual after two integrations by parts: int |p''| / z^2
    let l = r_end.ln();
    let p2_tail = y0.ln() * (2.0 * l * l + 6.0 * l + 6.0) / (2.0 * r_end * r_end * l.powi(4));
    (main + tail, e1 + p2_tail / (zs * zs))
}

/// How fast the radial weight decays, used to pick truncation radii.
enum TailKind {
    /// `g(rho) ~ coeff * rho^(-1-alpha)` as rho -> inf.
    Power { alpha: f64, coeff: f64 },
    /// Exponential factor exp(-theta rho).
    Exponential { theta: f64 },
}

/// `int_0^inf (mean_cos(|z| rho) - 1) g(rho) drho` for a radial measure with
/// full angular weight folded into `g`. Splits at rho = 1 (second-order
/// kernel inside, bounded kernel outside) and handles the oscillatory tail
/// by truncation with analytic corrections.
fn radial_exponent_quadrature<G: Fn(f64) -> f64>(
    g: G,
    dim: usize,
    znorm: f64,
    tail: TailKind,
    tail_mass_beyond: impl Fn(f64) -> f64,
    tol: f64,
) -> (f64, f64) {
    if znorm == 0.0 {
        return (0.0, 0.0);
    }
    // inner: kernel is O(rho^2), removable against the small-jump singularity
    let (inner, e_in) = quad::integrate(
        |rho| (sphere_mean_cos(dim, znorm * rho) - 1.0) * g(rho),
        0.0,
        1.0,
        tol / 3.0,
    );

    let (r_end, tail_err_bound, tail_correction) = match tail {
        TailKind::Exponential { theta } => {
            let r = (1.0 + 40.0 / theta).max(4.0);
            // kernel bounded by 2; beyond r the mass is ~ exp(-theta r) small
            (r, 2.0 * tail_mass_beyond(r), 0.0)
        }
        TailKind::Power { alpha, coeff } => {
            // oscillation budget ~ 250 periods in the finite panel
            let r = (2.0 * std::f64::consts::PI * 250.0 / znorm).max(8.0);
            let w_r = coeff * r.powf(-1.0 - alpha);
            match dim {
                1 => {
                    // int_R cos(z rho) w = -sin(zR) w(R)/z + O(|w'|/z^2)
                    let corr = -(znorm * r).sin() * w_r / znorm;
                    let err = 2.0 * (1.0 + alpha) * w_r / (r * znorm * znorm);
                    (r, err, corr)
                }
                3 => {
                    // mean_cos = sin(t)/t: same scheme with weight w/(z rho)
                    let weff = w_r / (znorm * r);
                    let corr = (znorm * r).cos() * weff / znorm;
                    let err = 2.0 * (2.0 + alpha) * weff / (r * znorm * znorm);
                    (r, err, corr)
                }
                _ => {
                    // envelope |J0(t)| <= sqrt(2/(pi t))
                    let env = (2.0 / (std::f64::consts::PI * znorm)).sqrt() * coeff
                        * r.powf(-0.5 - alpha)
                        / (0.5 + alpha);
                    (r, env, 0.0)
                }
            }
        }
    };

    let (outer, e_out) = quad::integrate(
        |rho| (sphere_mean_cos(dim, znorm * rho) - 1.0) * g(rho),
        1.0,
        r_end,
        tol / 3.0,
    );
    // the constant -1 part of the kernel integrates exactly to -tail mass
    let closing = -tail_mass_beyond(r_end) + tail_correction;

    (inner + outer + closing, e_in + e_out + tail_err_bound)
}

impl LevyMeasureSpec {
    pub fn dim(&self) -> usize {
        match self {
            LevyMeasureSpec::Zero { dim }
            | LevyMeasureSpec::Stable { dim, .. }
            | LevyMeasureSpec::TemperedStable { dim, .. }
            | LevyMeasureSpec::Atomic { dim, .. }
            | LevyMeasureSpec::CompoundPoisson { dim, .. } => *dim,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            LevyMeasureSpec::Zero { dim } => {
                if *dim == 0 {
                    return Err(LevyError::InvalidModel("dim must be >= 1".into()));
                }
            }
            LevyMeasureSpec::Stable { dim, alpha, scale } => {
                if *alpha <= 0.0 || *alpha >= 2.0 {
                    return Err(LevyError::InvalidModel("stable alpha must lie in (0, 2)".into()));
                }
                if *scale <= 0.0 {
                    return Err(LevyError::InvalidModel("stable scale must be > 0".into()));
                }
                if *dim == 0 || *dim > 3 {
                    return Err(LevyError::UnsupportedDimension {
                        dim: *dim,
                        context: "stable measure".into(),
                    });
                }
            }
            LevyMeasureSpec::TemperedStable {
                dim,
                alpha,
                scale,
                theta,
            } => {
                if *alpha <= 0.0 || *alpha >= 2.0 {
                    return Err(LevyError::InvalidModel("tempered alpha must lie in (0, 2)".into()));
                }
                if *scale <= 0.0 || *theta <= 0.0 {
                    return Err(LevyError::InvalidModel("tempered scale and theta must be > 0".into()));
                }
                if *dim == 0 || *dim > 3 {
                    return Err(LevyError::UnsupportedDimension {
                        dim: *dim,
                        context: "tempered stable measure".into(),
                    });
                }
            }
            LevyMeasureSpec::Atomic { dim, atoms } => {
                for (pos, m) in atoms {
                    if pos.len() != *dim {
                        return Err(LevyError::InvalidModel("atom dimension mismatch".into()));
                    }
                    if *m <= 0.0 {
                        return Err(LevyError::InvalidModel("atom masses must be > 0".into()));
                    }
                    if norm(pos) == 0.0 {
                        return Err(LevyError::InvalidModel("atom at the origin is not allowed".into()));
                    }
                }
            }
            LevyMeasureSpec::CompoundPoisson { dim, rate, jumps } => {
                if *rate <= 0.0 {
                    return Err(LevyError::InvalidModel("compound Poisson rate must be > 0".into()));
                }
                jumps.validate(*dim)?;
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, LevyMeasureSpec::Zero { .. })
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            LevyMeasureSpec::Zero { .. }
            | LevyMeasureSpec::Stable { .. }
            | LevyMeasureSpec::TemperedStable { .. } => true,
            LevyMeasureSpec::Atomic { atoms, .. } => atoms_symmetric(atoms),
            LevyMeasureSpec::CompoundPoisson { jumps, .. } => jumps.is_symmetric(),
        }
    }

    /// Total mass for finite-activity measures; `None` when infinite.
    pub fn total_mass(&self) -> Option<f64> {
        match self {
            LevyMeasureSpec::Zero { .. } => Some(0.0),
            LevyMeasureSpec::Stable { .. } | LevyMeasureSpec::TemperedStable { .. } => None,
            LevyMeasureSpec::Atomic { atoms, .. } => Some(atoms.iter().map(|(_, m)| m).sum()),
            LevyMeasureSpec::CompoundPoisson { rate, .. } => Some(*rate),
        }
    }

    /// `int_{|y| <= 1} |y| nu(dy) < inf`, i.e. small jumps of finite variation.
    pub fn finite_variation_small_jumps(&self) -> bool {
        match self {
            LevyMeasureSpec::Zero { .. }
            | LevyMeasureSpec::Atomic { .. }
            | LevyMeasureSpec::CompoundPoisson { .. } => true,
            LevyMeasureSpec::Stable { alpha, .. }
            | LevyMeasureSpec::TemperedStable { alpha, .. } => *alpha < 1.0,
        }
    }

    /// `int_{|y| < eps} |y|^2 nu(dy)`; monotone in eps.
    pub fn small_jump_second_moment(&self, eps: f64) -> f64 {
        assert!(eps > 0.0, "eps must be > 0");
        match self {
            LevyMeasureSpec::Zero { .. } => 0.0,
            LevyMeasureSpec::Stable { dim, alpha, scale } => {
                scale * sphere_surface(*dim) * eps.powf(2.0 - alpha) / (2.0 - alpha)
            }
            LevyMeasureSpec::TemperedStable {
                dim,
                alpha,
                scale,
                theta,
            } => {
                let (v, _) = quad::integrate(
                    |rho: f64| (-theta * rho).exp() * rho.powf(1.0 - alpha),
                    0.0,
                    eps,
                    1e-12,
                );
                scale * sphere_surface(*dim) * v
            }
            LevyMeasureSpec::Atomic { atoms, .. } => atoms
                .iter()
                .filter(|(pos, _)| norm(pos) < eps)
                .map(|(pos, m)| m * norm(pos).powi(2))
                .sum(),
            LevyMeasureSpec::CompoundPoisson { rate, jumps, .. } => match jumps {
                JumpLaw::Atoms { atoms } => {
                    rate * atoms
                        .iter()
                        .filter(|(pos, _)| norm(pos) < eps)
                        .map(|(pos, p)| p * norm(pos).powi(2))
                        .sum::<f64>()
                }
                JumpLaw::IsotropicGaussian { sigma } => {
                    // per-coordinate second moment restricted to |y| < eps; computed
                    // radially for d = 1 and by norm quadrature otherwise.
                    let d = self.dim();
                    let (v, _) = quad::integrate(
                        |r: f64| {
                            let chi = radial_gauss_density(d, *sigma, r);
                            r * r * chi
                        },
                        0.0,
                        eps,
                        1e-12,
                    );
                    rate * v
                }
                JumpLaw::HeavyLogTail { y0 } => {
                    if eps <= *y0 {
                        0.0
                    } else {
                        let (v, _) = quad::integrate(
                            |y: f64| y * y * hlt_density(*y0, y),
                            *y0,
                            eps,
                            1e-12,
                        );
                        rate * v
                    }
                }
            },
        }
    }

    /// `nu({|y| >= r})`; monotone decreasing in r.
    pub fn tail_mass(&self, r: f64) -> f64 {
        assert!(r > 0.0, "r must be > 0");
        match self {
            LevyMeasureSpec::Zero { .. } => 0.0,
            LevyMeasureSpec::Stable { dim, alpha, scale } => {
                scale * sphere_surface(*dim) * r.powf(-alpha) / alpha
            }
            LevyMeasureSpec::TemperedStable {
                dim,
                alpha,
                scale,
                theta,
            } => {
                let (v, _) = quad::integrate_upper(
                    |rho: f64| (-theta * rho).exp() * rho.powf(-1.0 - alpha),
                    r,
                    1e-13,
                );
                scale * sphere_surface(*dim) * v
            }
            LevyMeasureSpec::Atomic { atoms, .. } => atoms
                .iter()
                .filter(|(pos, _)| norm(pos) >= r)
                .map(|(_, m)| m)
                .sum(),
            LevyMeasureSpec::CompoundPoisson { rate, jumps, .. } => match jumps {
                JumpLaw::Atoms { atoms } => {
                    rate * atoms
                        .iter()
                        .filter(|(pos, _)| norm(pos) >= r)
                        .map(|(_, p)| p)
                        .sum::<f64>()
                }
                JumpLaw::IsotropicGaussian { sigma } => {
                    let d = self.dim();
                    let (inside, _) = quad::integrate(
                        |s: f64| radial_gauss_density(d, *sigma, s),
                        0.0,
                        r,
                        1e-13,
                    );
                    rate * (1.0 - inside).max(0.0)
                }
                JumpLaw::HeavyLogTail { y0 } => {
                    if r <= *y0 {
                        *rate
                    } else {
                        rate * y0.ln() / r.ln()
                    }
                }
            },
        }
    }

    /// `int_{|y| > 2} log|y| nu(dy)`; reports infinity for heavy log tails.
    pub fn log_moment(&self) -> LogMoment {
        match self {
            LevyMeasureSpec::Zero { .. } => LogMoment {
                finite: true,
                value: 0.0,
            },
            LevyMeasureSpec::Stable { dim, alpha, scale } => {
                // int_2^inf ln(rho) rho^(-1-a) drho = 2^-a (ln 2 + 1/a)/a
                let v = scale * sphere_surface(*dim) * 2.0_f64.powf(-alpha) * (2.0_f64.ln() + 1.0 / alpha)
                    / alpha;
                LogMoment {
                    finite: true,
                    value: v,
                }
            }
            LevyMeasureSpec::TemperedStable {
                dim,
                alpha,
                scale,
                theta,
            } => {
                let (v, _) = quad::integrate_upper(
                    |rho: f64| rho.ln() * (-theta * rho).exp() * rho.powf(-1.0 - alpha),
                    2.0,
                    1e-13,
                );
                LogMoment {
                    finite: true,
                    value: scale * sphere_surface(*dim) * v,
                }
            }
            LevyMeasureSpec::Atomic { atoms, .. } => LogMoment {
                finite: true,
                value: atoms
                    .iter()
                    .filter(|(pos, _)| norm(pos) > 2.0)
                    .map(|(pos, m)| m * norm(pos).ln())
                    .sum(),
            },
            LevyMeasureSpec::CompoundPoisson { rate, jumps, .. } => match jumps {
                JumpLaw::Atoms { atoms } => LogMoment {
                    finite: true,
                    value: rate
                        * atoms
                            .iter()
                            .filter(|(pos, _)| norm(pos) > 2.0)
                            .map(|(pos, p)| p * norm(pos).ln())
                            .sum::<f64>(),
                },
                JumpLaw::IsotropicGaussian { sigma } => {
                    let d = self.dim();
                    let (v, _) = quad::integrate_upper(
                        |s: f64| s.ln() * radial_gauss_density(d, *sigma, s),
                        2.0,
                        1e-12,
                    );
                    LogMoment {
                        finite: true,
                        value: rate * v,
                    }
                }
                JumpLaw::HeavyLogTail { .. } => LogMoment {
                    finite: false,
                    value: f64::INFINITY,
                },
            },
        }
    }

    /// `int_{lo <= |y| <= hi} y nu(dy)` for hi <= 1 (compensator bookkeeping).
    pub fn compensator_between(&self, lo: f64, hi: f64) -> DVector<f64> {
        assert!(hi <= 1.0 + 1e-12);
        let d = self.dim();
        if self.is_symmetric() {
            return DVector::zeros(d);
        }
        match self {
            LevyMeasureSpec::Atomic { atoms, .. } => {
                let mut acc = DVector::zeros(d);
                for (pos, m) in atoms {
                    let n = norm(pos);
                    if n >= lo && n <= hi {
                        for i in 0..d {
                            acc[i] += m * pos[i];
                        }
                    }
                }
                acc
            }
            LevyMeasureSpec::CompoundPoisson { rate, jumps, .. } => match jumps {
                JumpLaw::Atoms { atoms } => {
                    let mut acc = DVector::zeros(d);
                    for (pos, p) in atoms {
                        let n = norm(pos);
                        if n >= lo && n <= hi {
                            for i in 0..d {
                                acc[i] += rate * p * pos[i];
                            }
                        }
                    }
                    acc
                }
                // support of the heavy tail lies outside the unit ball
                JumpLaw::HeavyLogTail { .. } => DVector::zeros(d),
                JumpLaw::IsotropicGaussian { .. } => unreachable!("symmetric"),
            },
            _ => DVector::zeros(d),
        }
    }

    /// `int_{|y| > 1} (y/|y|) nu(dy)` entering the invariant-law drift.
    pub fn directional_tail_drift(&self) -> DVector<f64> {
        let d = self.dim();
        if self.is_symmetric() {
            return DVector::zeros(d);
        }
        match self {
            LevyMeasureSpec::Atomic { atoms, .. } => {
                let mut acc = DVector::zeros(d);
                for (pos, m) in atoms {
                    let n = norm(pos);
                    if n > 1.0 {
                        for i in 0..d {
                            acc[i] += m * pos[i] / n;
                        }
                    }
                }
                acc
            }
            LevyMeasureSpec::CompoundPoisson { rate, jumps, .. } => match jumps {
                JumpLaw::Atoms { atoms } => {
                    let mut acc = DVector::zeros(d);
                    for (pos, p) in atoms {
                        let n = norm(pos);
                        if n > 1.0 {
                            for i in 0..d {
                                acc[i] += rate * p * pos[i] / n;
                            }
                        }
                    }
                    acc
                }
                JumpLaw::HeavyLogTail { .. } => DVector::from_element(1, *rate),
                JumpLaw::IsotropicGaussian { .. } => unreachable!("symmetric"),
            },
            _ => DVector::zeros(d),
        }
    }

    /// Pushforward under `y -> factor * y` (factor > 0), staying in the same
    /// parametric family.
    pub fn scaled(&self, factor: f64) -> Result<LevyMeasureSpec> {
        assert!(factor > 0.0);
        Ok(match self {
            LevyMeasureSpec::Zero { dim } => LevyMeasureSpec::Zero { dim: *dim },
            LevyMeasureSpec::Stable { dim, alpha, scale } => LevyMeasureSpec::Stable {
                dim: *dim,
                alpha: *alpha,
                scale: scale * factor.powf(*alpha),
            },
            LevyMeasureSpec::TemperedStable {
                dim,
                alpha,
                scale,
                theta,
            } => LevyMeasureSpec::TemperedStable {
                dim: *dim,
                alpha: *alpha,
                scale: scale * factor.powf(*alpha),
                theta: theta / factor,
            },
            LevyMeasureSpec::Atomic { dim, atoms } => LevyMeasureSpec::Atomic {
                dim: *dim,
                atoms: atoms
                    .iter()
                    .map(|(pos, m)| (pos.iter().map(|x| x * factor).collect(), *m))
                    .collect(),
            },
            LevyMeasureSpec::CompoundPoisson { dim, rate, jumps } => {
                let jumps = match jumps {
                    JumpLaw::Atoms { atoms } => JumpLaw::Atoms {
                        atoms: atoms
                            .iter()
                            .map(|(pos, p)| (pos.iter().map(|x| x * factor).collect(), *p))
                            .collect(),
                    },
                    JumpLaw::IsotropicGaussian { sigma } => JumpLaw::IsotropicGaussian {
                        sigma: sigma * factor,
                    },
                    JumpLaw::HeavyLogTail { .. } => {
                        return Err(LevyError::InvalidModel(
                            "heavy-log-tail law has no closed scaling".into(),
                        ))
                    }
                };
                LevyMeasureSpec::CompoundPoisson {
                    dim: *dim,
                    rate: *rate,
                    jumps,
                }
            }
        })
    }

    /// Lower bound p such that |eta(r z)| = O(r^p) as r -> 0; used for tail
    /// bounds of infinite-horizon integrals.
    pub fn exponent_decay_order(&self) -> f64 {
        match self {
            LevyMeasureSpec::Zero { .. } => 2.0,
            LevyMeasureSpec::Stable { alpha, .. } | LevyMeasureSpec::TemperedStable { alpha, .. } => {
                *alpha
            }
            _ => 1.0,
        }
    }

    /// Jump part of the characteristic exponent:
    /// `int (e^{i<z,y>} - 1 - i<z,y> c(y)) nu(dy)`.
    /// Returns the value with an error estimate (0 for exact routes).
    pub fn exponent_term(&self, z: &DVector<f64>, trunc: Truncation, tol: f64) -> Result<(Complex64, f64)> {
        let d = self.dim();
        if z.len() != d {
            return Err(LevyError::InvalidModel("argument dimension mismatch".into()));
        }
        let znorm = z.norm();
        match self {
            LevyMeasureSpec::Zero { .. } => Ok((Complex64::new(0.0, 0.0), 0.0)),
            LevyMeasureSpec::Stable { dim, alpha, scale } => {
                // symmetric: compensator terms are odd and cancel
                let v = -scale * stable_constant(*alpha, *dim) * znorm.powf(*alpha);
                Ok((Complex64::new(v, 0.0), v.abs() * 1e-14))
            }
            LevyMeasureSpec::TemperedStable {
                dim,
                alpha,
                scale,
                theta,
            } => {
                let s = sphere_surface(*dim) * scale;
                let (v, err) = radial_exponent_quadrature(
                    |rho| s * (-theta * rho).exp() * rho.powf(-1.0 - alpha),
                    *dim,
                    znorm,
                    TailKind::Exponential { theta: *theta },
                    |r| self.tail_mass(r),
                    tol,
                );
                Ok((Complex64::new(v, 0.0), err))
            }
            LevyMeasureSpec::Atomic { atoms, .. } => {
                Ok((atom_exponent_sum(atoms, 1.0, z, trunc), 0.0))
            }
            LevyMeasureSpec::CompoundPoisson { rate, jumps, .. } => match jumps {
                JumpLaw::Atoms { atoms } => Ok((atom_exponent_sum(atoms, *rate, z, trunc), 0.0)),
                JumpLaw::IsotropicGaussian { sigma } => {
                    // symmetric law: compensator vanishes for every truncation
                    let v = rate * ((-0.5 * sigma * sigma * znorm * znorm).exp() - 1.0);
                    Ok((Complex64::new(v, 0.0), v.abs() * 1e-14))
                }
                JumpLaw::HeavyLogTail { y0 } => {
                    if znorm == 0.0 {
                        return Ok((Complex64::new(0.0, 0.0), 0.0));
                    }
                    let zz = z[0];
                    let (cf, err) = hlt_oscillatory_cf(*y0, zz, tol / rate.max(1.0));
                    let mut v = rate * (cf - Complex64::new(1.0, 0.0));
                    let mut err = rate * err;
                    // compensator over the support (entirely outside |y| <= 1,
                    // only the rational truncation contributes)
                    if let Truncation::Rational = trunc {
                        let (comp, ec) = quad::integrate_upper(
                            |y: f64| y / (1.0 + y * y) * hlt_density(*y0, y),
                            *y0,
                            tol / 10.0,
                        );
                        v -= Complex64::new(0.0, zz * rate * comp);
                        err += zz.abs() * rate * ec;
                    }
                    Ok((v, err))
                }
            },
        }
    }

    /// Quadrature evaluation of the exponent for radial symmetric kinds;
    /// independent of the closed-form route, used as an oracle.
    pub fn exponent_term_quadrature(&self, znorm: f64, tol: f64) -> Result<(f64, f64)> {
        match self {
            LevyMeasureSpec::Stable { dim, alpha, scale } => {
                let s = sphere_surface(*dim) * scale;
                Ok(radial_exponent_quadrature(
                    |rho| s * rho.powf(-1.0 - alpha),
                    *dim,
                    znorm,
                    TailKind::Power {
                        alpha: *alpha,
                        coeff: s,
                    },
                    |r| self.tail_mass(r),
                    tol,
                ))
            }
            LevyMeasureSpec::TemperedStable { .. } => {
                let mut zv = DVector::zeros(self.dim());
                zv[0] = znorm;
                let (v, e) = self.exponent_term(&zv, Truncation::IndicatorUnitBall, tol)?;
                Ok((v.re, e))
            }
            _ => Err(LevyError::InvalidModel(
                "quadrature oracle only defined for radial measures".into(),
            )),
        }
    }
}

/// Gaussian radial density of the norm in d dimensions (d <= 3):
/// the density of |Y| when Y ~ N(0, sigma^2 I_d).
fn radial_gauss_density(dim: usize, sigma: f64, r: f64) -> f64 {
    let s2 = sigma * sigma;
    match dim {
        1 => 2.0 * (-r * r / (2.0 * s2)).exp() / (sigma * (2.0 * std::f64::consts::PI).sqrt()),
        2 => r / s2 * (-r * r / (2.0 * s2)).exp(),
        3 => {
            (2.0 / std::f64::consts::PI).sqrt() * r * r / (sigma * s2) * (-r * r / (2.0 * s2)).exp()
        }
        _ => panic!("radial gaussian density supports d <= 3"),
    }
}

fn atom_exponent_sum(
    atoms: &[(Vec<f64>, f64)],
    rate: f64,
    z: &DVector<f64>,
    trunc: Truncation,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (pos, m) in atoms {
        let zy: f64 = pos.iter().zip(z.iter()).map(|(a, b)| a * b).sum();
        let c = trunc.weight(norm(pos));
        acc += Complex64::new(0.0, zy).exp() - Complex64::new(1.0, zy * c);
    }
    acc * rate
}

/// Truncation-change correction `int y (c_new(y) - c_old(y)) nu(dy)`.
pub fn truncation_correction(
    nu: &LevyMeasureSpec,
    old: Truncation,
    new: Truncation,
) -> Result<DVector<f64>> {
    let d = nu.dim();
    if old == new || nu.is_symmetric() {
        return Ok(DVector::zeros(d));
    }
    let diff = |y_norm: f64| new.weight(y_norm) - old.weight(y_norm);
    match nu {
        LevyMeasureSpec::Zero { .. } => Ok(DVector::zeros(d)),
        LevyMeasureSpec::Atomic { atoms, .. } => {
            let mut acc = DVector::zeros(d);
            for (pos, m) in atoms {
                let w = diff(norm(pos));
                for i in 0..d {
                    acc[i] += m * w * pos[i];
                }
            }
            Ok(acc)
        }
        LevyMeasureSpec::CompoundPoisson { rate, jumps, .. } => match jumps {
            JumpLaw::Atoms { atoms } => {
                let mut acc = DVector::zeros(d);
                for (pos, p) in atoms {
                    let w = diff(norm(pos));
                    for i in 0..d {
                        acc[i] += rate * p * w * pos[i];
                    }
                }
                Ok(acc)
            }
            JumpLaw::HeavyLogTail { y0 } => {
                let (v, _) = quad::integrate_upper(
                    |y: f64| y * diff(y) * hlt_density(*y0, y),
                    *y0,
                    1e-12,
                );
                Ok(DVector::from_element(1, rate * v))
            }
            JumpLaw::IsotropicGaussian { .. } => unreachable!("symmetric"),
        },
        // symmetric families returned early
        _ => Ok(DVector::zeros(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn stable1(alpha: f64, scale: f64) -> LevyMeasureSpec {
        LevyMeasureSpec::Stable {
            dim: 1,
            alpha,
            scale,
        }
    }

    #[test]
    fn stable_constant_alpha_one_is_pi() {
        assert_abs_diff_eq!(stable_constant(1.0, 1), std::f64::consts::PI, epsilon = 1e-12);
    }

    #[test]
    fn stable_tail_and_second_moment_alpha_one() {
        let nu = stable1(1.0, 1.0);
        // tail_mass(r) = 2/r, truncated second moment = 2 eps
        assert_abs_diff_eq!(nu.tail_mass(0.5), 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(nu.tail_mass(2.0), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(nu.small_jump_second_moment(0.25), 0.5, epsilon = 1e-12);
        // monotonicity
        assert!(nu.small_jump_second_moment(0.1) < nu.small_jump_second_moment(0.2));
        assert!(nu.tail_mass(1.0) > nu.tail_mass(2.0));
    }

    #[test]
    fn zero_measure_moments() {
        let nu = LevyMeasureSpec::Zero { dim: 1 };
        assert_eq!(nu.tail_mass(1.0), 0.0);
        assert_eq!(nu.small_jump_second_moment(1.0), 0.0);
        assert_eq!(
            nu.log_moment(),
            LogMoment {
                finite: true,
                value: 0.0
            }
        );
    }

    #[test]
    fn log_moment_stable_alpha_one() {
        let nu = stable1(1.0, 1.0);
        let lm = nu.log_moment();
        assert!(lm.finite);
        // 2 int_2^inf ln(y) y^-2 dy = ln 2 + 1
        assert_abs_diff_eq!(lm.value, 2.0_f64.ln() + 1.0, epsilon = 1e-12);
    }

    #[test]
    fn log_moment_atom() {
        let nu = LevyMeasureSpec::Atomic {
            dim: 1,
            atoms: vec![(vec![10.0], 3.0)],
        };
        let lm = nu.log_moment();
        assert!(lm.finite);
        assert_abs_diff_eq!(lm.value, 3.0 * 10.0_f64.ln(), epsilon = 1e-13);
    }

    #[test]
    fn log_moment_heavy_tail_is_infinite() {
        let nu = LevyMeasureSpec::CompoundPoisson {
            dim: 1,
            rate: 1.0,
            jumps: JumpLaw::HeavyLogTail { y0: 2.0 },
        };
        let lm = nu.log_moment();
        assert!(!lm.finite);
        assert!(lm.value.is_infinite());
        // mass is still finite
        assert_abs_diff_eq!(nu.tail_mass(2.0), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(nu.tail_mass(4.0), 2.0_f64.ln() / 4.0_f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn stable_exponent_closed_form_vs_quadrature() {
        for &alpha in &[0.6, 1.0, 1.5, 1.9] {
            let nu = stable1(alpha, 0.7);
            for &z in &[0.1, 0.5, 2.0, 10.0] {
                let zv = DVector::from_element(1, z);
                let (exact, _) = nu
                    .exponent_term(&zv, Truncation::IndicatorUnitBall, 1e-10)
                    .unwrap();
                let (quadv, _) = nu.exponent_term_quadrature(z, 1e-10).unwrap();
                let rel = (exact.re - quadv).abs() / exact.re.abs();
                assert!(
                    rel < 1e-6,
                    "alpha={alpha} z={z}: exact={} quad={} rel={rel}",
                    exact.re,
                    quadv
                );
            }
        }
    }

    #[test]
    fn stable_exponent_quadrature_d2_d3() {
        for &dim in &[2usize, 3] {
            let nu = LevyMeasureSpec::Stable {
                dim,
                alpha: 1.5,
                scale: 0.4,
            };
            for &z in &[0.5, 2.0] {
                let mut zv = DVector::zeros(dim);
                zv[0] = z;
                let (exact, _) = nu
                    .exponent_term(&zv, Truncation::IndicatorUnitBall, 1e-9)
                    .unwrap();
                let (quadv, _) = nu.exponent_term_quadrature(z, 1e-9).unwrap();
                let rel = (exact.re - quadv).abs() / exact.re.abs();
                assert!(rel < 1e-6, "d={dim} z={z} rel={rel}");
            }
        }
    }

    #[test]
    fn tempered_stable_matches_cgmy_closed_form() {
        // symmetric tempered stable, alpha != 1:
        // eta(z) = scale * Gamma(-alpha) [ (theta - iz)^alpha + (theta + iz)^alpha - 2 theta^alpha ]
        let (alpha, scale, theta) = (1.5, 0.8, 2.0);
        let nu = LevyMeasureSpec::TemperedStable {
            dim: 1,
            alpha,
            scale,
            theta,
        };
        for &z in &[0.3, 1.0, 4.0] {
            let zv = DVector::from_element(1, z);
            let (v, err) = nu
                .exponent_term(&zv, Truncation::IndicatorUnitBall, 1e-10)
                .unwrap();
            let g = gamma(-alpha);
            let c1 = Complex64::new(theta, -z).powf(alpha);
            let c2 = Complex64::new(theta, z).powf(alpha);
            let expected = scale * g * (c1 + c2 - Complex64::new(2.0 * theta.powf(alpha), 0.0));
            assert_abs_diff_eq!(v.re, expected.re, epsilon = 1e-8);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-10);
            assert!(err < 1e-7);
        }
    }

    #[test]
    fn atom_exponent_two_symmetric_atoms() {
        let nu = LevyMeasureSpec::Atomic {
            dim: 1,
            atoms: vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)],
        };
        let zv = DVector::from_element(1, std::f64::consts::PI);
        let (v, _) = nu
            .exponent_term(&zv, Truncation::IndicatorUnitBall, 1e-10)
            .unwrap();
        assert_abs_diff_eq!(v.re, -4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn truncation_correction_single_atom() {
        let nu = LevyMeasureSpec::Atomic {
            dim: 1,
            atoms: vec![(vec![2.0], 1.0)],
        };
        let corr =
            truncation_correction(&nu, Truncation::IndicatorUnitBall, Truncation::Rational).unwrap();
        assert_abs_diff_eq!(corr[0], 2.0 * (1.0 / 5.0), epsilon = 1e-14);
    }

    #[test]
    fn symmetric_measures_have_zero_corrections() {
        let nu = stable1(1.5, 1.0);
        let corr =
            truncation_correction(&nu, Truncation::IndicatorUnitBall, Truncation::Rational).unwrap();
        assert_eq!(corr[0], 0.0);
        assert_eq!(nu.directional_tail_drift()[0], 0.0);
    }

    #[test]
    fn directional_tail_atom() {
        let nu = LevyMeasureSpec::Atomic {
            dim: 1,
            atoms: vec![(vec![3.0], 1.0)],
        };
        assert_abs_diff_eq!(nu.directional_tail_drift()[0], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn validation_rejects_bad_specs() {
        assert!(stable1(2.5, 1.0).validate().is_err());
        assert!(stable1(1.0, -1.0).validate().is_err());
        assert!(LevyMeasureSpec::Atomic {
            dim: 1,
            atoms: vec![(vec![0.0], 1.0)],
        }
        .validate()
        .is_err());
        assert!(LevyMeasureSpec::Atomic {
            dim: 1,
            atoms: vec![(vec![1.0], -0.5)],
        }
        .validate()
        .is_err());
        assert!(LevyMeasureSpec::CompoundPoisson {
            dim: 2,
            rate: 1.0,
            jumps: JumpLaw::HeavyLogTail { y0: 2.0 },
        }
        .validate()
        .is_err());
    }

    #[test]
    fn scaled_stable_matches_pushforward_tail() {
        let nu = stable1(1.2, 0.7);
        let scaled = nu.scaled(3.0).unwrap();
        // nu_b({|y| >= r}) = nu({|y| >= r/b})
        assert_abs_diff_eq!(scaled.tail_mass(6.0), nu.tail_mass(2.0), epsilon = 1e-12);
    }

    #[test]
    fn heavy_tail_cf_small_z_consistency() {
        // against direct slow quadrature at modest tolerance
        let y0 = 2.0;
        let z = 0.7;
        let (fast, err) = hlt_oscillatory_cf(y0, z, 1e-9);
        let (slow, _) = quad::integrate(
            |y| Complex64::new(0.0, z * y).exp() * hlt_density(y0, y),
            y0,
            5e4,
            1e-10,
        );
        // slow route still misses the oscillatory tail beyond 5e4; compare loosely
        assert_abs_diff_eq!(fast.re, slow.re, epsilon = 5e-4);
        assert_abs_diff_eq!(fast.im, slow.im, epsilon = 5e-4);
        assert!(err < 1e-6, "error estimate {err}");
    }
}
