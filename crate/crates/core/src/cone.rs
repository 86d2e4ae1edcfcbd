//! Special functions for cone-deformation estimates: the tube-radius
//! functions, the packing root equation, and the per-cusp volume-change
//! integral.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{brent, integrate, QuadratureResult};

/// Base constant of the cone-deformation estimates.
pub const HK_CONSTANT: f64 = 3.3957;
/// Multi-component packing constant, half of [`HK_CONSTANT`].
pub const PACKING_CONSTANT: f64 = HK_CONSTANT / 2.0;
/// Twice [`HK_CONSTANT`], appearing in the denominator of `G~`.
pub const G_TILDE_CONSTANT: f64 = HK_CONSTANT * 2.0;
/// Smallest admissible tube radius.
pub const MIN_TUBE_RADIUS: f64 = 0.531;
/// Rounded ceiling on `alpha * l` under which the estimates hold.
pub const MAX_ALPHA_LENGTH: f64 = 0.5098;
/// Absolute tolerance of the volume-change quadrature.
pub const QUADRATURE_TOLERANCE: f64 = 1e-7;
/// Absolute bracket tolerance when solving for a tube radius.
pub const ROOT_TOLERANCE: f64 = 1e-15;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConeError {
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("no tube radius >= 0.531 solves the packing equation for target {target} (max {max})")]
    NoSolution { target: f64, max: f64 },
    #[error("{given} lengths given for {expected} components")]
    LengthCount { given: usize, expected: usize },
    #[error("root refinement failed: {0}")]
    Root(String),
}

fn domain(what: &'static str, value: f64, domain: &'static str) -> ConeError {
    ConeError::Domain {
        what,
        value,
        domain,
    }
}

/// `tanh(0.531)`, the smallest admissible `z`.
pub fn min_z() -> f64 {
    MIN_TUBE_RADIUS.tanh()
}

/// `H(z) = (1+z^2) / (k z (1-z^2))` on `0 < z < 1`.
pub fn hk_h(z: f64) -> Result<f64, ConeError> {
    if !(z > 0.0 && z < 1.0) {
        return Err(domain("z", z, "(0, 1)"));
    }
    Ok((1.0 + z * z) / (HK_CONSTANT * z * (1.0 - z * z)))
}

/// `H(tanh R)` evaluated as `cosh(2R) / (k tanh R)`. For large `R` this
/// avoids forming `1 - tanh(R)^2`, where rounding `z` alone costs about
/// `eps / (1 - z)` relative accuracy.
pub fn hk_h_at_radius(r: f64) -> Result<f64, ConeError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(domain("R", r, "(0, inf)"));
    }
    Ok((2.0 * r).cosh() / (HK_CONSTANT * r.tanh()))
}

/// Analytic derivative `H'(z) = (z^4 + 4z^2 - 1) / (k z^2 (1-z^2)^2)`.
pub fn hk_h_derivative(z: f64) -> Result<f64, ConeError> {
    if !(z > 0.0 && z < 1.0) {
        return Err(domain("z", z, "(0, 1)"));
    }
    let z2 = z * z;
    let one_minus = 1.0 - z2;
    Ok((z2 * z2 + 4.0 * z2 - 1.0) / (HK_CONSTANT * z2 * one_minus * one_minus))
}

/// `G~(z) = (1+z^2)^2 / (2k z^3 (3-z^2))` on `0 < z <= 1`.
pub fn hk_g_tilde(z: f64) -> Result<f64, ConeError> {
    if !(z > 0.0 && z <= 1.0) {
        return Err(domain("z", z, "(0, 1]"));
    }
    let z2 = z * z;
    Ok((1.0 + z2) * (1.0 + z2) / (G_TILDE_CONSTANT * z2 * z * (3.0 - z2)))
}

fn check_radius(r: f64) -> Result<(), ConeError> {
    if r >= MIN_TUBE_RADIUS {
        Ok(())
    } else {
        Err(domain("R", r, "[0.531, inf)"))
    }
}

/// `h(R) = k tanh(R) / cosh(2R)`, strictly decreasing for `R >= 0.531`.
pub fn tube_function(r: f64) -> Result<f64, ConeError> {
    check_radius(r)?;
    Ok(HK_CONSTANT * r.tanh() / (2.0 * r).cosh())
}

/// `h(R) / 2`, the lower bound on `alpha_i * l_i` for multi-component fillings.
pub fn tube_packing_bound(r: f64) -> Result<f64, ConeError> {
    check_radius(r)?;
    Ok(PACKING_CONSTANT * r.tanh() / (2.0 * r).cosh())
}

fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// Solves `tube_packing_bound(R) = target` for the unique `R >= 0.531`.
pub fn invert_packing_bound(target: f64) -> Result<f64, ConeError> {
    let max = tube_packing_bound(MIN_TUBE_RADIUS)?;
    // one ulp of slack so that max/(2 pi) * (2 pi) still lands on the boundary
    if (target.is_nan() || target <= 0.0) || target > max * (1.0 + 4.0 * f64::EPSILON) {
        return Err(ConeError::NoSolution { target, max });
    }
    // log form keeps the residual well scaled once cosh(2R) is huge
    let ln_target = target.ln();
    let g = |r: f64| (PACKING_CONSTANT * r.tanh()).ln() - ln_cosh(2.0 * r) - ln_target;
    if target >= max * (1.0 - 4.0 * f64::EPSILON) || g(MIN_TUBE_RADIUS) <= 0.0 {
        return Ok(MIN_TUBE_RADIUS);
    }
    let mut hi = 2.0 * MIN_TUBE_RADIUS;
    while g(hi) > 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(ConeError::NoSolution { target, max });
        }
    }
    brent(g, MIN_TUBE_RADIUS, hi, ROOT_TOLERANCE).map_err(|e| ConeError::Root(e.to_string()))
}

/// Final tube radius for a filled core of length `l_hat`:
/// `1.69785 tanh(R) / cosh(2R) = 2 pi l_hat`.
pub fn solve_rho_hat(l_hat: f64) -> Result<f64, ConeError> {
    if l_hat.is_nan() || l_hat <= 0.0 {
        return Err(domain("l_hat", l_hat, "(0, inf)"));
    }
    invert_packing_bound(2.0 * PI * l_hat)
}

/// Volume-change integrand in the form `H' / (8 H (H - G~))`; singular at
/// `w = 1`.
pub fn volume_change_integrand_raw(w: f64) -> Result<f64, ConeError> {
    let h = hk_h(w)?;
    Ok(hk_h_derivative(w)? / (8.0 * h * (h - hk_g_tilde(w)?)))
}

/// The same integrand written as `-f' / (8 (1 - G~ f))` with `f = 1/H`,
/// smooth on the closed interval up to `w = 1`.
pub fn volume_change_integrand(w: f64) -> Result<f64, ConeError> {
    if !(w > 0.0 && w <= 1.0) {
        return Err(domain("w", w, "(0, 1]"));
    }
    let w2 = w * w;
    let p = 1.0 + w2;
    let f_prime = HK_CONSTANT * (1.0 - 4.0 * w2 - w2 * w2) / (p * p);
    // G~ f simplifies to (1 - w^4) / (2 w^2 (3 - w^2))
    let g_f = (1.0 - w2 * w2) / (2.0 * w2 * (3.0 - w2));
    Ok(-f_prime / (8.0 * (1.0 - g_f)))
}

/// `int_{z_hat}^1` of the volume-change integrand, absolute error <= 1e-7.
pub fn delta_v_per_cusp(z_hat: f64) -> Result<QuadratureResult, ConeError> {
    if !(z_hat >= min_z() && z_hat <= 1.0) {
        return Err(domain("z_hat", z_hat, "[tanh(0.531), 1]"));
    }
    Ok(integrate(
        |w| volume_change_integrand(w).expect("w inside the checked interval"),
        z_hat,
        1.0,
        QUADRATURE_TOLERANCE,
    ))
}

/// Per-cusp volume-change bound at the worst admissible `z_hat`.
pub fn worst_case_per_cusp() -> QuadratureResult {
    delta_v_per_cusp(min_z()).expect("tanh(0.531) is in the domain")
}

/// Total volume change over `n_components` filled cusps. With lengths, each
/// cusp integrates from its own `tanh(rho_hat)`; otherwise every cusp takes
/// the worst case.
pub fn delta_v_bound(
    n_components: usize,
    l_hats: Option<&[f64]>,
) -> Result<QuadratureResult, ConeError> {
    if n_components == 0 {
        return Err(domain("n_components", 0.0, "[1, inf)"));
    }
    match l_hats {
        None => {
            let one = worst_case_per_cusp();
            Ok(QuadratureResult {
                value: one.value * n_components as f64,
                error_estimate: one.error_estimate * n_components as f64,
                subinterval_count: one.subinterval_count * n_components,
            })
        }
        Some(ls) => {
            if ls.len() != n_components {
                return Err(ConeError::LengthCount {
                    given: ls.len(),
                    expected: n_components,
                });
            }
            ls.iter().try_fold(QuadratureResult::zero(), |acc, &l| {
                let z = solve_rho_hat(l)?.tanh().max(min_z());
                Ok(acc + delta_v_per_cusp(z)?)
            })
        }
    }
}

/// Quantities attached to one singular component during a cone deformation.
/// Nothing here evolves them; they record the relations between the cone
/// angle, the singular length and the tube radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeFillingParams {
    pub cone_angle: f64,
    pub singular_length: f64,
    /// Radius `R >= 0.531` with `h(R) = 2 alpha l`; infinite when `alpha = 0`.
    pub tube_radius: f64,
    pub z: f64,
    /// `alpha / l`, equal to `2 alpha^2 H(z)`.
    pub u: f64,
    pub final_length: Option<f64>,
    pub final_tube_radius: Option<f64>,
    pub final_z: Option<f64>,
}

impl ConeFillingParams {
    pub fn new(cone_angle: f64, singular_length: f64) -> Result<Self, ConeError> {
        if !(0.0..=2.0 * PI).contains(&cone_angle) {
            return Err(domain("cone angle", cone_angle, "[0, 2 pi]"));
        }
        if singular_length.is_nan() || singular_length <= 0.0 {
            return Err(domain("singular length", singular_length, "(0, inf)"));
        }
        let product = cone_angle * singular_length;
        let (tube_radius, z) = if product == 0.0 {
            (f64::INFINITY, 1.0)
        } else {
            let r = invert_packing_bound(product)?;
            (r, r.tanh())
        };
        Ok(ConeFillingParams {
            cone_angle,
            singular_length,
            tube_radius,
            z,
            u: cone_angle / singular_length,
            final_length: None,
            final_tube_radius: None,
            final_z: None,
        })
    }

    pub fn with_final_length(mut self, l_hat: f64) -> Result<Self, ConeError> {
        let r = solve_rho_hat(l_hat)?;
        self.final_length = Some(l_hat);
        self.final_tube_radius = Some(r);
        self.final_z = Some(r.tanh());
        Ok(self)
    }

    /// `2 alpha^2 H(z)`, which should reproduce [`Self::u`].
    pub fn u_from_tube(&self) -> f64 {
        if self.z >= 1.0 {
            return 0.0;
        }
        2.0 * self.cone_angle * self.cone_angle * hk_h(self.z).expect("0 < z < 1")
    }

    pub fn satisfies_length_hypothesis(&self) -> bool {
        self.cone_angle * self.singular_length <= MAX_ALPHA_LENGTH
    }
}
