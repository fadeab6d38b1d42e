//! Distorted and copula-distorted Gini mean differences and their
//! alpha-derivatives, all evaluated in the u-domain so that unbounded
//! supports need no truncation.

use crate::copulas::SurvivalCopulaFamily;
use crate::distortions::DistortionFamily;
use crate::distributions::ContinuousDistribution;
use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureResult, DEFAULT_ABS_TOL, DEFAULT_REL_TOL};

/// A computed measure together with its quadrature diagnostics.
#[derive(Debug, Clone)]
pub struct MeasureResult {
    pub value: f64,
    pub quadrature: QuadratureResult,
    /// Human-readable description of what was evaluated.
    pub inputs: String,
}

fn finish(r: QuadratureResult, inputs: String) -> Result<MeasureResult> {
    if r.converged {
        Ok(MeasureResult {
            value: r.value,
            quadrature: r,
            inputs,
        })
    } else {
        Err(Error::IntegrationFailure {
            error_estimate: r.error_estimate,
            subdivisions: r.subdivisions,
        })
    }
}

/// Distorted Gini mean difference of the independence pair,
/// integral over (0,1) of q(u) { u + h_alpha(u) (1 - 2u) } du.
pub fn eta(
    dist: &ContinuousDistribution,
    family: &DistortionFamily,
    alpha: f64,
) -> Result<MeasureResult> {
    eta_with(dist, family, alpha, DEFAULT_ABS_TOL, DEFAULT_REL_TOL)
}

pub fn eta_with(
    dist: &ContinuousDistribution,
    family: &DistortionFamily,
    alpha: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<MeasureResult> {
    family.check_alpha(alpha)?;
    let r = quadrature::integrate_01(
        |u| dist.dqdf_raw(u) * (u + family.h(alpha, u) * (1.0 - 2.0 * u)),
        abs_tol,
        rel_tol,
    )?;
    finish(
        r,
        format!("eta[{} | {} | alpha={alpha}]", dist.label(), family.label()),
    )
}

/// Copula-distorted Gini mean difference,
/// integral of q(u) { u + h_alpha(u) - 2 C_theta(u, h_alpha(u)) } du.
pub fn nu(
    dist: &ContinuousDistribution,
    family: &DistortionFamily,
    copula: &SurvivalCopulaFamily,
    theta: f64,
    alpha: f64,
) -> Result<MeasureResult> {
    nu_with(
        dist,
        family,
        copula,
        theta,
        alpha,
        DEFAULT_ABS_TOL,
        DEFAULT_REL_TOL,
    )
}

pub fn nu_with(
    dist: &ContinuousDistribution,
    family: &DistortionFamily,
    copula: &SurvivalCopulaFamily,
    theta: f64,
    alpha: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<MeasureResult> {
    family.check_alpha(alpha)?;
    copula.check_theta(theta)?;
    let r = quadrature::integrate_01(
        |u| {
            let h = family.h(alpha, u);
            dist.dqdf_raw(u) * (u + h - 2.0 * copula.c(theta, u, h))
        },
        abs_tol,
        rel_tol,
    )?;
    finish(
        r,
        format!(
            "nu[{} | {} | {} | theta={theta} | alpha={alpha}]",
            dist.label(),
            family.label(),
            copula.label()
        ),
    )
}

/// d eta / d alpha, integral of q(u) dh/dalpha (1 - 2u) du.
pub fn eta_dalpha(
    dist: &ContinuousDistribution,
    family: &DistortionFamily,
    alpha: f64,
) -> Result<MeasureResult> {
    family.check_alpha(alpha)?;
    let r = quadrature::integrate_01(
        |u| dist.dqdf_raw(u) * family.dh_dalpha(alpha, u) * (1.0 - 2.0 * u),
        DEFAULT_ABS_TOL,
        DEFAULT_REL_TOL,
    )?;
    finish(
        r,
        format!(
            "eta_dalpha[{} | {} | alpha={alpha}]",
            dist.label(),
            family.label()
        ),
    )
}

/// d nu / d alpha at fixed theta,
/// integral of q(u) dh/dalpha { 1 - 2 d2 C_theta(u, h_alpha(u)) } du.
pub fn nu_dalpha(
    dist: &ContinuousDistribution,
    family: &DistortionFamily,
    copula: &SurvivalCopulaFamily,
    theta: f64,
    alpha: f64,
) -> Result<MeasureResult> {
    family.check_alpha(alpha)?;
    copula.check_theta(theta)?;
    let r = quadrature::integrate_01(
        |u| {
            let h = family.h(alpha, u);
            dist.dqdf_raw(u)
                * family.dh_dalpha(alpha, u)
                * (1.0 - 2.0 * copula.d2(theta, u, h))
        },
        DEFAULT_ABS_TOL,
        DEFAULT_REL_TOL,
    )?;
    finish(
        r,
        format!(
            "nu_dalpha[{} | {} | {} | theta={theta} | alpha={alpha}]",
            dist.label(),
            family.label(),
            copula.label()
        ),
    )
}

/// Mean of the distorted variable, l + integral of q(u) h_alpha(u) du.
pub fn distorted_mean(
    dist: &ContinuousDistribution,
    family: &DistortionFamily,
    alpha: f64,
) -> Result<MeasureResult> {
    family.check_alpha(alpha)?;
    let l = dist.lower();
    let r = quadrature::integrate_01(
        |u| dist.dqdf_raw(u) * family.h(alpha, u),
        DEFAULT_ABS_TOL,
        DEFAULT_REL_TOL,
    )?;
    let mut out = finish(
        r,
        format!(
            "distorted_mean[{} | {} | alpha={alpha}]",
            dist.label(),
            family.label()
        ),
    )?;
    out.value += l;
    Ok(out)
}

/// Copula-distorted Gini index, nu / (E X + E X_alpha).
pub fn copula_gini_index(
    dist: &ContinuousDistribution,
    family: &DistortionFamily,
    copula: &SurvivalCopulaFamily,
    theta: f64,
    alpha: f64,
) -> Result<MeasureResult> {
    let numerator = nu(dist, family, copula, theta, alpha)?;
    let denom = dist.mean() + distorted_mean(dist, family, alpha)?.value;
    if denom.abs() < 1e-12 {
        return Err(Error::ZeroDenominator);
    }
    Ok(MeasureResult {
        value: numerator.value / denom,
        quadrature: numerator.quadrature,
        inputs: format!(
            "copula_gini_index[{} | {} | {} | theta={theta} | alpha={alpha}]",
            dist.label(),
            family.label(),
            copula.label()
        ),
    })
}

/// Cross-check of `eta` in the x-domain,
/// integral over the (finite) support of sf + h_alpha(sf) (1 - 2 sf).
pub fn eta_x_domain(
    dist: &ContinuousDistribution,
    family: &DistortionFamily,
    alpha: f64,
) -> Result<MeasureResult> {
    family.check_alpha(alpha)?;
    let (l, r) = dist.support();
    if !l.is_finite() || !r.is_finite() {
        return Err(Error::Config(
            "x-domain cross-check needs a bounded support".to_string(),
        ));
    }
    let q = quadrature::integrate(
        |x| {
            let sf = dist.sf(x);
            sf + family.h(alpha, sf) * (1.0 - 2.0 * sf)
        },
        l,
        r,
        DEFAULT_ABS_TOL,
        DEFAULT_REL_TOL,
    )?;
    finish(
        q,
        format!(
            "eta_x_domain[{} | {} | alpha={alpha}]",
            dist.label(),
            family.label()
        ),
    )
}
