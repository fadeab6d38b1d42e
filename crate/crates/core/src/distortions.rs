//! Parametric distortion families h_alpha acting on survival functions,
//! with analytic alpha-derivatives, inverses and the hazard identities
//! of the four hazard models they encode.

use std::sync::Arc;

use crate::distributions::ContinuousDistribution;
use crate::error::{Error, Result};

pub type BiFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type KFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// Ancillary cumulative-hazard expression with its monotonicity and label.
pub type KSpec = (KFn, Monotonicity, String);

/// Declared monotonicity of a user-supplied K function (gah model).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Neither,
}

/// Distortion model identifiers, matching the four hazard models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelId {
    /// proportional hazard, h(u) = u^alpha
    Ph,
    /// proportional reversed hazard, h(u) = 1 - (1-u)^alpha
    Prh,
    /// generalized additive hazard, h(u) = u exp(-alpha K(sf_inv(u)))
    Gah,
    /// power hazard, h(u) = sf(sf_inv(u)^alpha)
    Pow,
}

impl std::str::FromStr for ModelId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ph" => Ok(ModelId::Ph),
            "prh" => Ok(ModelId::Prh),
            "gah" => Ok(ModelId::Gah),
            "pow" => Ok(ModelId::Pow),
            other => Err(Error::InvalidModel(other.to_string())),
        }
    }
}

/// A parametric family of distortion functions h_alpha : [0,1] -> [0,1].
#[derive(Clone)]
pub struct DistortionFamily {
    h: BiFn,
    dh_dalpha: BiFn,
    /// Analytic u-derivative when known; otherwise a central finite
    /// difference is used.
    dh_du: Option<BiFn>,
    /// Analytic inverse in u; bisection fallback otherwise.
    h_inverse: Option<BiFn>,
    alpha_interval: (f64, f64),
    alpha_identity: Option<f64>,
    alpha_degenerate: Option<f64>,
    k_monotonicity: Option<Monotonicity>,
    label: String,
}

/// A base variable together with a distortion at a fixed alpha; its
/// survival function is h_alpha(sf(x)).
#[derive(Clone)]
pub struct DistortedVariable {
    pub base: ContinuousDistribution,
    pub family: DistortionFamily,
    pub alpha: f64,
}

impl DistortionFamily {
    /// Proportional hazard model, h(u) = u^alpha.
    pub fn proportional_hazard() -> Self {
        Self {
            h: Arc::new(|a, u| u.powf(a)),
            dh_dalpha: Arc::new(|a, u| {
                if u <= 0.0 || u >= 1.0 {
                    0.0
                } else {
                    u.powf(a) * u.ln()
                }
            }),
            dh_du: Some(Arc::new(|a, u| a * u.powf(a - 1.0))),
            h_inverse: Some(Arc::new(|a, v| v.powf(1.0 / a))),
            alpha_interval: (0.0, f64::INFINITY),
            alpha_identity: Some(1.0),
            alpha_degenerate: Some(f64::INFINITY),
            k_monotonicity: None,
            label: "ph".to_string(),
        }
    }

    /// Proportional reversed hazard model, h(u) = 1 - (1-u)^alpha.
    pub fn proportional_reversed_hazard() -> Self {
        Self {
            h: Arc::new(|a, u| 1.0 - (1.0 - u).powf(a)),
            dh_dalpha: Arc::new(|a, u| {
                if u <= 0.0 || u >= 1.0 {
                    0.0
                } else {
                    -(1.0 - u).powf(a) * (1.0 - u).ln()
                }
            }),
            dh_du: Some(Arc::new(|a, u| a * (1.0 - u).powf(a - 1.0))),
            h_inverse: Some(Arc::new(|a, v| 1.0 - (1.0 - v).powf(1.0 / a))),
            alpha_interval: (0.0, f64::INFINITY),
            alpha_identity: Some(1.0),
            alpha_degenerate: Some(0.0),
            k_monotonicity: None,
            label: "prh".to_string(),
        }
    }

    /// Generalized additive hazard model over a base distribution,
    /// h(u) = u exp(-alpha K(sf_inv(u))). K must satisfy K(l) = 0 and
    /// be nonnegative on the support.
    pub fn generalized_additive_hazard(
        base: &ContinuousDistribution,
        k_cumulative: KFn,
        k_monotonicity: Monotonicity,
        k_label: impl Into<String>,
    ) -> Self {
        let inv = {
            let base = base.clone();
            move |u: f64| base.sf_inverse(u)
        };
        let inv2 = inv.clone();
        let kc = k_cumulative.clone();
        let kc2 = k_cumulative;
        Self {
            h: Arc::new(move |a, u| {
                if u <= 0.0 {
                    0.0
                } else if u >= 1.0 {
                    1.0
                } else {
                    u * (-a * kc(inv(u))).exp()
                }
            }),
            dh_dalpha: Arc::new(move |a, u| {
                if u <= 0.0 || u >= 1.0 {
                    0.0
                } else {
                    let k = kc2(inv2(u));
                    -k * u * (-a * k).exp()
                }
            }),
            dh_du: None,
            h_inverse: None,
            alpha_interval: (0.0, f64::INFINITY),
            alpha_identity: Some(0.0),
            alpha_degenerate: Some(f64::INFINITY),
            k_monotonicity: Some(k_monotonicity),
            label: format!("gah:K={}", k_label.into()),
        }
    }

    /// Power hazard model over a base distribution,
    /// h(u) = sf(sf_inv(u)^alpha). Evaluated through logarithms so that
    /// large powers saturate to the appropriate limit instead of
    /// overflowing.
    pub fn power_hazard(base: &ContinuousDistribution) -> Self {
        let b1 = base.clone();
        let b2 = base.clone();
        let power = move |base: &ContinuousDistribution, a: f64, u: f64| -> f64 {
            if u <= 0.0 {
                return 0.0;
            }
            if u >= 1.0 {
                return 1.0;
            }
            let x = base.sf_inverse(u);
            if x <= 0.0 {
                // x^alpha -> 0 for alpha > 0
                return base.sf(0.0);
            }
            let log_y = a * x.ln();
            if log_y > 700.0 {
                0.0
            } else if log_y < -700.0 {
                base.sf(0.0)
            } else {
                base.sf(log_y.exp())
            }
        };
        let p1 = power;
        Self {
            h: Arc::new(move |a, u| p1(&b1, a, u).clamp(0.0, 1.0)),
            dh_dalpha: Arc::new(move |a, u| {
                if u <= 0.0 || u >= 1.0 {
                    return 0.0;
                }
                let x = b2.sf_inverse(u);
                if x <= 0.0 {
                    return 0.0;
                }
                let log_y = a * x.ln();
                if log_y.abs() > 700.0 {
                    return 0.0;
                }
                let y = log_y.exp();
                -b2.pdf(y) * y * x.ln()
            }),
            dh_du: None,
            h_inverse: None,
            alpha_interval: (0.0, f64::INFINITY),
            alpha_identity: Some(1.0),
            alpha_degenerate: None,
            k_monotonicity: None,
            label: "pow".to_string(),
        }
    }

    /// Construct a family by model id. `base` is required for gah and
    /// pow (they close over the base survival function); `k` only for
    /// gah.
    pub fn make_family(
        model: ModelId,
        base: Option<&ContinuousDistribution>,
        k: Option<KSpec>,
    ) -> Result<Self> {
        match model {
            ModelId::Ph => Ok(Self::proportional_hazard()),
            ModelId::Prh => Ok(Self::proportional_reversed_hazard()),
            ModelId::Gah => {
                let base = base.ok_or(Error::MissingK)?;
                let (kf, mono, label) = k.ok_or(Error::MissingK)?;
                Ok(Self::generalized_additive_hazard(base, kf, mono, label))
            }
            ModelId::Pow => {
                let base = base.ok_or_else(|| Error::InvalidModel("pow without base".into()))?;
                Ok(Self::power_hazard(base))
            }
        }
    }

    pub fn alpha_interval(&self) -> (f64, f64) {
        self.alpha_interval
    }

    pub fn alpha_identity(&self) -> Option<f64> {
        self.alpha_identity
    }

    pub fn alpha_degenerate(&self) -> Option<f64> {
        self.alpha_degenerate
    }

    pub fn k_monotonicity(&self) -> Option<Monotonicity> {
        self.k_monotonicity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains_alpha(&self, alpha: f64) -> bool {
        alpha > self.alpha_interval.0 && alpha < self.alpha_interval.1
    }

    pub fn check_alpha(&self, alpha: f64) -> Result<()> {
        if self.contains_alpha(alpha) {
            Ok(())
        } else {
            Err(Error::AlphaOutOfRange {
                alpha,
                lo: self.alpha_interval.0,
                hi: self.alpha_interval.1,
            })
        }
    }

    /// h_alpha(u), validating both arguments.
    pub fn evaluate(&self, alpha: f64, u: f64) -> Result<f64> {
        self.check_alpha(alpha)?;
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::UOutOfRange { u });
        }
        Ok((self.h)(alpha, u).clamp(0.0, 1.0))
    }

    /// Unchecked h_alpha(u) for use inside integrands.
    pub fn h(&self, alpha: f64, u: f64) -> f64 {
        (self.h)(alpha, u)
    }

    /// Analytic partial derivative of h in alpha.
    pub fn derivative_alpha(&self, alpha: f64, u: f64) -> Result<f64> {
        self.check_alpha(alpha)?;
        Ok((self.dh_dalpha)(alpha, u))
    }

    pub(crate) fn dh_dalpha(&self, alpha: f64, u: f64) -> f64 {
        (self.dh_dalpha)(alpha, u)
    }

    /// Partial derivative of h in u (analytic when available, central
    /// finite difference otherwise).
    pub fn derivative_u(&self, alpha: f64, u: f64) -> f64 {
        match &self.dh_du {
            Some(d) => d(alpha, u),
            None => {
                let step = 1e-6_f64.min(0.5 * u.min(1.0 - u)).max(1e-9);
                ((self.h)(alpha, u + step) - (self.h)(alpha, u - step)) / (2.0 * step)
            }
        }
    }

    /// Inverse of h_alpha; bisection on [0, 1] when no closed form is
    /// known (monotonicity guarantees convergence).
    pub fn inverse(&self, alpha: f64, v: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::UOutOfRange { u: v });
        }
        if let Some(inv) = &self.h_inverse {
            return Ok(inv(alpha, v).clamp(0.0, 1.0));
        }
        let mut lo = 0.0_f64;
        let mut hi = 1.0_f64;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            let hv = (self.h)(alpha, mid);
            if !hv.is_finite() {
                return Err(Error::InverseFailure { v });
            }
            if hv < v {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

impl DistortedVariable {
    pub fn new(
        base: &ContinuousDistribution,
        family: &DistortionFamily,
        alpha: f64,
    ) -> Result<Self> {
        family.check_alpha(alpha)?;
        Ok(Self {
            base: base.clone(),
            family: family.clone(),
            alpha,
        })
    }

    /// Survival function of the distorted variable, h_alpha(sf(x)).
    pub fn sf(&self, x: f64) -> f64 {
        self.family.h(self.alpha, self.base.sf(x))
    }

    /// Inverse survival function, sf_inv(h_alpha^{-1}(v)).
    pub fn sf_inverse(&self, v: f64) -> Result<f64> {
        Ok(self.base.sf_inverse(self.family.inverse(self.alpha, v)?))
    }

    /// Hazard rate of the distorted variable via the chain rule,
    /// dh/du (alpha, sf(x)) * f(x) / h_alpha(sf(x)).
    pub fn hazard(&self, x: f64) -> Result<f64> {
        let (l, r) = self.base.support();
        if x <= l || x >= r {
            return Err(Error::OutsideSupport { x, lo: l, hi: r });
        }
        let u = self.base.sf(x);
        let hv = self.family.h(self.alpha, u);
        if hv <= 0.0 {
            return Err(Error::OutsideSupport { x, lo: l, hi: r });
        }
        Ok(self.family.derivative_u(self.alpha, u) * self.base.pdf(x) / hv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::ContinuousDistribution;

    fn k_half_square() -> KFn {
        Arc::new(|t: f64| 0.5 * t * t)
    }

    #[test]
    fn table_values() {
        let ph = DistortionFamily::proportional_hazard();
        assert!((ph.evaluate(2.0, 0.5).unwrap() - 0.25).abs() < 1e-15);

        let prh = DistortionFamily::proportional_reversed_hazard();
        assert!((prh.evaluate(2.0, 0.5).unwrap() - 0.75).abs() < 1e-15);

        let u01 = ContinuousDistribution::uniform(0.0, 1.0);
        let gah = DistortionFamily::generalized_additive_hazard(
            &u01,
            k_half_square(),
            Monotonicity::Increasing,
            "t^2/2",
        );
        // h(2, 0.5) = 0.5 exp(-0.25)
        assert!((gah.evaluate(2.0, 0.5).unwrap() - 0.5 * (-0.25_f64).exp()).abs() < 1e-12);

        let pl = ContinuousDistribution::power_law(2.0);
        let pow = DistortionFamily::power_hazard(&pl);
        // over sf = 1 - x^2 the power model reduces to 1 - (1-u)^alpha
        assert!((pow.evaluate(3.0, 0.75).unwrap() - 0.984375).abs() < 1e-12);
    }

    #[test]
    fn boundary_values_pinned() {
        let u01 = ContinuousDistribution::uniform(0.0, 1.0);
        let fams = [
            DistortionFamily::proportional_hazard(),
            DistortionFamily::proportional_reversed_hazard(),
            DistortionFamily::generalized_additive_hazard(
                &u01,
                k_half_square(),
                Monotonicity::Increasing,
                "t^2/2",
            ),
            DistortionFamily::power_hazard(&u01),
        ];
        for f in &fams {
            for a in [0.5, 1.0, 2.0, 7.0] {
                assert_eq!(f.evaluate(a, 0.0).unwrap(), 0.0, "{}", f.label());
                assert!((f.evaluate(a, 1.0).unwrap() - 1.0).abs() < 1e-12, "{}", f.label());
                assert_eq!(f.derivative_alpha(a, 0.0).unwrap(), 0.0);
                assert_eq!(f.derivative_alpha(a, 1.0).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn alpha_derivative_examples() {
        let ph = DistortionFamily::proportional_hazard();
        assert!((ph.derivative_alpha(1.0, 0.5).unwrap() - 0.5 * 0.5_f64.ln()).abs() < 1e-14);
        let prh = DistortionFamily::proportional_reversed_hazard();
        assert!((prh.derivative_alpha(1.0, 0.5).unwrap() + 0.5 * 0.5_f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn alpha_derivative_matches_finite_difference() {
        let e = ContinuousDistribution::exponential(1.0);
        let fams = [
            DistortionFamily::proportional_hazard(),
            DistortionFamily::proportional_reversed_hazard(),
            DistortionFamily::generalized_additive_hazard(
                &e,
                k_half_square(),
                Monotonicity::Increasing,
                "t^2/2",
            ),
            DistortionFamily::power_hazard(&e),
        ];
        for f in &fams {
            for a in [0.7, 1.0, 2.3] {
                for i in 1..20 {
                    let u = i as f64 / 20.0;
                    let step = 1e-5;
                    let fd = (f.h(a + step, u) - f.h(a - step, u)) / (2.0 * step);
                    let an = f.derivative_alpha(a, u).unwrap();
                    assert!(
                        (fd - an).abs() <= 1e-5 * (1.0 + an.abs()),
                        "{} a={a} u={u}: {an} vs {fd}",
                        f.label()
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let e = ContinuousDistribution::exponential(1.0);
        let fams = [
            DistortionFamily::proportional_hazard(),
            DistortionFamily::proportional_reversed_hazard(),
            DistortionFamily::generalized_additive_hazard(
                &e,
                k_half_square(),
                Monotonicity::Increasing,
                "t^2/2",
            ),
        ];
        for f in &fams {
            for a in [0.5, 2.0] {
                for i in 1..50 {
                    let u = i as f64 / 50.0;
                    let v = f.h(a, u);
                    let back = f.inverse(a, v).unwrap();
                    assert!((back - u).abs() < 1e-9, "{} a={a} u={u}", f.label());
                }
            }
        }
    }

    #[test]
    fn identity_and_degenerate_limits() {
        let ph = DistortionFamily::proportional_hazard();
        let prh = DistortionFamily::proportional_reversed_hazard();
        for f in [&ph, &prh] {
            let ai = f.alpha_identity().unwrap();
            for i in 1..20 {
                let u = i as f64 / 20.0;
                assert!((f.h(ai + 1e-6, u) - u).abs() < 1e-5);
                assert!((f.h(ai - 1e-6, u) - u).abs() < 1e-5);
            }
        }
        // surrogate large alpha for the ph degenerate limit
        for i in 1..=9 {
            let u = i as f64 / 10.0;
            if u <= 0.9 {
                assert!(ph.h(1e6, u) < 1e-6);
            }
        }
        // prh degenerates at alpha -> 0
        for i in 1..=9 {
            let u = i as f64 / 10.0;
            if u < 1.0 {
                assert!(prh.h(1e-9, u) < 1e-6);
            }
        }
    }

    #[test]
    fn series_parallel_identity() {
        let e = ContinuousDistribution::exponential(1.0);
        let ph = DistortionFamily::proportional_hazard();
        let prh = DistortionFamily::proportional_reversed_hazard();
        let n = 3.0;
        for x in [0.2, 1.0, 2.5] {
            let sfx = e.sf(x);
            let series = DistortedVariable::new(&e, &ph, n).unwrap();
            assert!((series.sf(x) - sfx.powi(3)).abs() < 1e-14);
            let parallel = DistortedVariable::new(&e, &prh, n).unwrap();
            assert!((parallel.sf(x) - (1.0 - (1.0 - sfx).powi(3))).abs() < 1e-14);
        }
    }

    #[test]
    fn hazard_identities() {
        let e = ContinuousDistribution::exponential(1.0);
        let ph = DistortionFamily::proportional_hazard();
        let v = DistortedVariable::new(&e, &ph, 3.0).unwrap();
        assert!((v.hazard(0.7).unwrap() - 3.0).abs() < 1e-12);

        // prh: alpha lambda(x) g_alpha(x) with g from the reversed model
        let prh = DistortionFamily::proportional_reversed_hazard();
        let v = DistortedVariable::new(&e, &prh, 2.0).unwrap();
        let big_f = 1.0 - (-1.0_f64).exp();
        let g = (big_f - big_f * big_f) / (1.0 - big_f * big_f);
        assert!((v.hazard(1.0).unwrap() - 2.0 * g).abs() < 1e-12);

        // identity distortion leaves the hazard unchanged
        let v = DistortedVariable::new(&e, &prh, 1.0).unwrap();
        assert!((v.hazard(0.4).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gah_consistency() {
        let e = ContinuousDistribution::exponential(1.0);
        let gah = DistortionFamily::generalized_additive_hazard(
            &e,
            k_half_square(),
            Monotonicity::Increasing,
            "t^2/2",
        );
        for a in [0.5, 2.0] {
            for i in 1..20 {
                let u = i as f64 / 20.0;
                let lhs = -(gah.h(a, u) / u).ln();
                let rhs = a * 0.5 * e.sf_inverse(u).powi(2);
                assert!((lhs - rhs).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn out_of_range_errors() {
        let ph = DistortionFamily::proportional_hazard();
        assert!(matches!(
            ph.evaluate(-1.0, 0.5),
            Err(Error::AlphaOutOfRange { .. })
        ));
        assert!(matches!(ph.evaluate(2.0, 1.5), Err(Error::UOutOfRange { .. })));
        assert!(matches!(
            DistortionFamily::make_family(ModelId::Gah, None, None),
            Err(Error::MissingK)
        ));
    }
}
