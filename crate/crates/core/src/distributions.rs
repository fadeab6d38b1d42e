//! Continuous base distributions: survival function, density, inverse
//! survival function, the dual quantile-density function, classical
//! Gini quantities and aging-class classifiers.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::{self, DEFAULT_ABS_TOL, DEFAULT_REL_TOL};
use crate::report::{ConditionReport, Direction, Verdict};
use crate::special;

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Absolutely continuous random variable described by its survival
/// function, density and inverse survival function.
///
/// All fields are immutable after construction; every operation is a
/// pure function, safe to call from many threads.
#[derive(Clone)]
pub struct ContinuousDistribution {
    sf: RealFn,
    pdf: RealFn,
    sf_inverse: RealFn,
    support: (f64, f64),
    mean: f64,
    label: String,
}

/// Tri-state aging-class verdicts for a random lifetime.
#[derive(Debug, Clone, Copy)]
pub struct AgingReport {
    pub ifr: Verdict,
    pub dfr: Verdict,
    pub nbu: Verdict,
    pub nwu: Verdict,
    /// An (x, t) pair at which the NBU/NWU defining inequality fails,
    /// when one was found.
    pub witness: Option<(f64, f64)>,
}

impl ContinuousDistribution {
    pub fn custom(
        sf: RealFn,
        pdf: RealFn,
        sf_inverse: RealFn,
        support: (f64, f64),
        mean: f64,
        label: impl Into<String>,
    ) -> Self {
        Self {
            sf,
            pdf,
            sf_inverse,
            support,
            mean,
            label: label.into(),
        }
    }

    /// Exponential with the given rate; sf(x) = exp(-rate x).
    pub fn exponential(rate: f64) -> Self {
        assert!(rate > 0.0, "rate must be positive");
        Self {
            sf: Arc::new(move |x| if x <= 0.0 { 1.0 } else { (-rate * x).exp() }),
            pdf: Arc::new(move |x| if x < 0.0 { 0.0 } else { rate * (-rate * x).exp() }),
            sf_inverse: Arc::new(move |u| -u.ln() / rate),
            support: (0.0, f64::INFINITY),
            mean: 1.0 / rate,
            label: format!("exp({rate})"),
        }
    }

    /// Uniform on [l, r].
    pub fn uniform(l: f64, r: f64) -> Self {
        assert!(r > l, "need r > l");
        let w = r - l;
        Self {
            sf: Arc::new(move |x| ((r - x) / w).clamp(0.0, 1.0)),
            pdf: Arc::new(move |x| if x < l || x > r { 0.0 } else { 1.0 / w }),
            sf_inverse: Arc::new(move |u| r - u * w),
            support: (l, r),
            mean: 0.5 * (l + r),
            label: format!("uniform({l},{r})"),
        }
    }

    /// Weibull with sf(x) = exp(-(x/scale)^shape).
    pub fn weibull(shape: f64, scale: f64) -> Self {
        assert!(shape > 0.0 && scale > 0.0);
        Self {
            sf: Arc::new(move |x| {
                if x <= 0.0 {
                    1.0
                } else {
                    (-(x / scale).powf(shape)).exp()
                }
            }),
            pdf: Arc::new(move |x| {
                if x <= 0.0 {
                    0.0
                } else {
                    let z = x / scale;
                    (shape / scale) * z.powf(shape - 1.0) * (-z.powf(shape)).exp()
                }
            }),
            sf_inverse: Arc::new(move |u| scale * (-u.ln()).powf(1.0 / shape)),
            support: (0.0, f64::INFINITY),
            mean: scale * special::gamma(1.0 + 1.0 / shape),
            label: format!("weibull({shape},{scale})"),
        }
    }

    /// Power law on [0, 1] with sf(x) = 1 - x^k.
    pub fn power_law(k: f64) -> Self {
        assert!(k > 0.0);
        Self {
            sf: Arc::new(move |x| {
                if x <= 0.0 {
                    1.0
                } else if x >= 1.0 {
                    0.0
                } else {
                    1.0 - x.powf(k)
                }
            }),
            pdf: Arc::new(move |x| {
                if x <= 0.0 || x > 1.0 {
                    0.0
                } else {
                    k * x.powf(k - 1.0)
                }
            }),
            sf_inverse: Arc::new(move |u| (1.0 - u).powf(1.0 / k)),
            support: (0.0, 1.0),
            mean: k / (k + 1.0),
            label: format!("powerlaw({k})"),
        }
    }

    /// Same law shifted by `delta`.
    pub fn shifted(&self, delta: f64) -> Self {
        let sf = self.sf.clone();
        let pdf = self.pdf.clone();
        let inv = self.sf_inverse.clone();
        Self {
            sf: Arc::new(move |x| sf(x - delta)),
            pdf: Arc::new(move |x| pdf(x - delta)),
            sf_inverse: Arc::new(move |u| inv(u) + delta),
            support: (self.support.0 + delta, self.support.1 + delta),
            mean: self.mean + delta,
            label: format!("{}+{delta}", self.label),
        }
    }

    /// Same law scaled by `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        assert!(c > 0.0);
        let sf = self.sf.clone();
        let pdf = self.pdf.clone();
        let inv = self.sf_inverse.clone();
        Self {
            sf: Arc::new(move |x| sf(x / c)),
            pdf: Arc::new(move |x| pdf(x / c) / c),
            sf_inverse: Arc::new(move |u| inv(u) * c),
            support: (self.support.0 * c, self.support.1 * c),
            mean: self.mean * c,
            label: format!("{c}*{}", self.label),
        }
    }

    pub fn sf(&self, x: f64) -> f64 {
        (self.sf)(x)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        (self.pdf)(x)
    }

    pub fn sf_inverse(&self, u: f64) -> f64 {
        (self.sf_inverse)(u)
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn lower(&self) -> f64 {
        self.support.0
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Dual quantile-density function q(u) = 1 / f(sf^{-1}(u)).
    pub fn dqdf(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) || u == 0.0 || u == 1.0 {
            return Err(Error::UOutOfRange { u });
        }
        let q = self.dqdf_raw(u);
        if q.is_finite() {
            Ok(q)
        } else {
            Err(Error::DegenerateDensity { u })
        }
    }

    /// Unchecked d.q.d.f. used inside integrands; may be non-finite,
    /// which the quadrature then reports.
    pub(crate) fn dqdf_raw(&self, u: f64) -> f64 {
        1.0 / (self.pdf)((self.sf_inverse)(u))
    }

    /// Gini's mean difference, 2 * integral of F * sf over the support,
    /// computed in the u-domain as 2 * integral of q(u) u (1-u).
    pub fn gmd(&self) -> Result<f64> {
        let r = quadrature::integrate_01(
            |u| 2.0 * self.dqdf_raw(u) * u * (1.0 - u),
            DEFAULT_ABS_TOL,
            DEFAULT_REL_TOL,
        )?;
        if r.converged {
            Ok(r.value)
        } else {
            Err(Error::IntegrationFailure {
                error_estimate: r.error_estimate,
                subdivisions: r.subdivisions,
            })
        }
    }

    /// Gini's index GMD / (2 E(X)).
    pub fn gini_index(&self) -> Result<f64> {
        if self.mean.abs() < 1e-12 {
            return Err(Error::ZeroMean);
        }
        Ok(self.gmd()? / (2.0 * self.mean))
    }

    /// Grid-based IFR/DFR and NBU/NWU classification.
    ///
    /// In non-strict mode equality within tolerance counts for both
    /// sides and is reported as `Boundary` (the exponential case).
    pub fn aging_class(&self, strict: bool) -> AgingReport {
        const N: usize = 2001;
        const TOL: f64 = 1e-9;

        // hazard monotonicity along x, sampled through the quantile grid
        let mut increases = false;
        let mut decreases = false;
        let mut ifr_witness = None;
        let mut dfr_witness = None;
        let mut prev: Option<(f64, f64)> = None;
        // u descending <=> x ascending
        for i in (1..N).rev() {
            let u = i as f64 / N as f64;
            let x = self.sf_inverse(u);
            let sf = self.sf(x);
            if sf <= 0.0 {
                continue;
            }
            let lam = self.pdf(x) / sf;
            if !lam.is_finite() {
                continue;
            }
            if let Some((px, plam)) = prev {
                let tol = TOL * (1.0 + lam.abs() + plam.abs());
                if lam > plam + tol {
                    increases = true;
                    dfr_witness.get_or_insert((px, x));
                }
                if lam < plam - tol {
                    decreases = true;
                    ifr_witness.get_or_insert((px, x));
                }
            }
            prev = Some((x, lam));
        }
        let (ifr, dfr) = classify_monotone(increases, decreases, strict);

        // NBU/NWU on an (x, t) quantile grid (lifetimes only)
        let (nbu, nwu, witness) = if self.support.0 < -1e-12 {
            (Verdict::Fails, Verdict::Fails, None)
        } else {
            const M: usize = 60;
            let mut first_above = None; // sf(x+t) > sf(x) sf(t): violates NBU
            let mut first_below = None; // sf(x+t) < sf(x) sf(t): violates NWU
            for i in 1..M {
                let x = self.sf_inverse(i as f64 / M as f64).max(0.0);
                for j in 1..M {
                    let t = self.sf_inverse(j as f64 / M as f64).max(0.0);
                    let lhs = self.sf(x + t);
                    let rhs = self.sf(x) * self.sf(t);
                    let tol = 1e-12 * (1.0 + lhs.abs() + rhs.abs());
                    if lhs > rhs + tol {
                        first_above.get_or_insert((x, t));
                    } else if lhs < rhs - tol {
                        first_below.get_or_insert((x, t));
                    }
                }
            }
            let (nbu, nwu) =
                classify_monotone(first_below.is_some(), first_above.is_some(), strict);
            let wit = if nbu == Verdict::Fails {
                first_above
            } else if nwu == Verdict::Fails {
                first_below
            } else {
                None
            };
            (nbu, nwu, wit)
        };

        let witness = witness.or(match (ifr, dfr) {
            (Verdict::Fails, _) => ifr_witness,
            (_, Verdict::Fails) => dfr_witness,
            _ => None,
        });

        AgingReport {
            ifr,
            dfr,
            nbu,
            nwu,
            witness,
        }
    }

    /// Grid check of q(u) vs q(1-u) on (0, 1/2]: `Ge` means
    /// Assumption 2.3 holds, `Le` means Assumption 2.4 holds. The
    /// report also cross-checks Proposition 2.1 (DFR implies 2.3).
    pub fn assumption_2_3_2_4(&self) -> ConditionReport {
        const N: usize = 1000;
        const TOL: f64 = 1e-9;
        let mut le_ok = true;
        let mut ge_ok = true;
        let mut violations_le = Vec::new();
        for i in 1..=N {
            let u = i as f64 / (2 * N) as f64;
            let lhs = self.dqdf_raw(u);
            let rhs = self.dqdf_raw(1.0 - u);
            if !lhs.is_finite() || !rhs.is_finite() {
                continue;
            }
            let tol = TOL * (1.0 + lhs.abs() + rhs.abs());
            if lhs > rhs + tol {
                le_ok = false;
                if violations_le.len() < 64 {
                    violations_le.push((u, lhs, rhs));
                }
            }
            if lhs < rhs - tol {
                ge_ok = false;
            }
        }
        let direction = match (le_ok, ge_ok) {
            (true, true) => Direction::BothBoundary,
            (false, true) => Direction::Ge,
            (true, false) => Direction::Le,
            (false, false) => Direction::Neither,
        };

        // Proposition 2.1 cross-check: DFR must imply Assumption 2.3.
        let aging = self.aging_class(false);
        let prop_ok = if aging.dfr.holds_non_strict() {
            direction.ge()
        } else {
            true
        };

        let mut integral_terms = std::collections::BTreeMap::new();
        integral_terms.insert("dfr_verdict".to_string(), match aging.dfr {
            Verdict::Holds => 1.0,
            Verdict::Boundary => 0.0,
            Verdict::Fails => -1.0,
        });
        ConditionReport {
            theorem_id: "A2.3/A2.4".to_string(),
            direction,
            pointwise_violations: violations_le,
            integral_terms,
            implied_conclusion: "DFR implies Assumption 2.3 (Proposition 2.1)".to_string(),
            conclusion_verified: Some(if prop_ok { Verdict::Holds } else { Verdict::Fails }),
        }
    }
}

fn classify_monotone(increases: bool, decreases: bool, strict: bool) -> (Verdict, Verdict) {
    // returns (increasing-side verdict, decreasing-side verdict)
    match (increases, decreases) {
        (false, false) => {
            if strict {
                (Verdict::Fails, Verdict::Fails)
            } else {
                (Verdict::Boundary, Verdict::Boundary)
            }
        }
        (true, false) => (Verdict::Holds, Verdict::Fails),
        (false, true) => (Verdict::Fails, Verdict::Holds),
        (true, true) => (Verdict::Fails, Verdict::Fails),
    }
}
