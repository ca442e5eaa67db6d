//! Small self-contained special functions: Lanczos gamma and Bessel J0.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Gamma function, Lanczos approximation (relative error ~1e-14 on the real
/// line away from the poles).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection formula
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut a = LANCZOS[0];
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }
}

/// Bessel function of the first kind, order zero. Power series below 14,
/// Hankel asymptotic expansion above; absolute error below ~1e-10.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 14.0 {
        let q = ax * ax / 4.0;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..80 {
            term *= -q / ((k * k) as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1.0) {
                break;
            }
        }
        sum
    } else {
        // J0(x) = sqrt(2/(pi x)) Re[ e^{i(x - pi/4)} sum_k a_k (i/x)^k ]
        // with a_{k+1} = a_k * (-(2k+1)^2) / (8(k+1)); truncated at the
        // smallest term of the divergent series.
        let ix = num_complex::Complex64::new(0.0, 1.0 / ax);
        let mut a = 1.0;
        let mut pw = num_complex::Complex64::new(1.0, 0.0);
        let mut sum = num_complex::Complex64::new(1.0, 0.0);
        let mut last = f64::INFINITY;
        for k in 0..24u32 {
            let kk = k as f64;
            a *= -(2.0 * kk + 1.0).powi(2) / (8.0 * (kk + 1.0));
            pw *= ix;
            let term_mag = a.abs() / ax.powi(k as i32 + 1);
            if term_mag > last {
                break;
            }
            sum += pw.scale(a);
            last = term_mag;
        }
        let chi = ax - PI / 4.0;
        let rot = num_complex::Complex64::new(chi.cos(), chi.sin());
        (2.0 / (PI * ax)).sqrt() * (rot * sum).re
    }
}

/// Surface area of the unit sphere in `R^d` for d = 1, 2, 3.
pub fn sphere_surface(dim: usize) -> f64 {
    match dim {
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => panic!("sphere_surface supports d <= 3"),
    }
}

/// Mean of `cos(t <u, omega>)` over the unit sphere in `R^d` (|u| = 1):
/// `cos t` in d=1, `J0(t)` in d=2, `sin(t)/t` in d=3.
pub fn sphere_mean_cos(dim: usize, t: f64) -> f64 {
    match dim {
        1 => t.cos(),
        2 => bessel_j0(t),
        3 => {
            if t.abs() < 1e-8 {
                1.0 - t * t / 6.0
            } else {
                t.sin() / t
            }
        }
        _ => panic!("sphere_mean_cos supports d <= 3"),
    }
}

/// `sphere_mean_cos(dim, t) - 1`, evaluated without cancellation for small t
/// (the subtraction underflows long before t^2-order kernels become
/// negligible against a |y|^(-d-alpha) singularity).
pub fn sphere_mean_cos_minus_one(dim: usize, t: f64) -> f64 {
    let at = t.abs();
    match dim {
        1 => {
            let s = (0.5 * t).sin();
            -2.0 * s * s
        }
        2 => {
            if at <= 0.5 {
                // J0 series without the leading 1
                let q = t * t / 4.0;
                let mut term = 1.0;
                let mut sum = 0.0;
                for k in 1..20 {
                    term *= -q / ((k * k) as f64);
                    sum += term;
                    if term.abs() < 1e-20 {
                        break;
                    }
                }
                sum
            } else {
                bessel_j0(t) - 1.0
            }
        }
        3 => {
            if at < 1e-2 {
                let t2 = t * t;
                -t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0
            } else {
                t.sin() / t - 1.0
            }
        }
        _ => panic!("sphere_mean_cos_minus_one supports d <= 3"),
    }
}
