//! Parametric survival-copula families with partial derivatives and
//! conditional inverses for sampling.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::{ConditionReport, Direction, Verdict};

pub type TriFn = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// A parametric family of survival copulas C_theta(u, v).
#[derive(Clone)]
pub struct SurvivalCopulaFamily {
    c: TriFn,
    d1: TriFn,
    d2: TriFn,
    /// Solves d1(theta, u, v) = w for v; `None` falls back to bisection.
    conditional_inverse: Option<TriFn>,
    theta_interval: (f64, f64),
    theta_independence: Option<f64>,
    label: String,
}

impl SurvivalCopulaFamily {
    /// The product copula uv (a one-point family).
    pub fn independence() -> Self {
        Self {
            c: Arc::new(|_, u, v| u * v),
            d1: Arc::new(|_, _, v| v),
            d2: Arc::new(|_, u, _| u),
            conditional_inverse: Some(Arc::new(|_, _, w| w)),
            theta_interval: (0.0, 0.0),
            theta_independence: Some(0.0),
            label: "independence".to_string(),
        }
    }

    /// Farlie-Gumbel-Morgenstern family,
    /// C(u, v) = uv (1 + theta (1-u)(1-v)), theta in [-1, 1].
    pub fn fgm() -> Self {
        Self {
            c: Arc::new(|t, u, v| u * v * (1.0 + t * (1.0 - u) * (1.0 - v))),
            d1: Arc::new(|t, u, v| v * (1.0 + t * (1.0 - 2.0 * u) * (1.0 - v))),
            d2: Arc::new(|t, u, v| u * (1.0 + t * (1.0 - u) * (1.0 - 2.0 * v))),
            conditional_inverse: Some(Arc::new(|t, u, w| {
                // solve a v^2 - (1+a) v + w = 0 with a = theta (1-2u),
                // taking the root in [0, 1]
                let a = t * (1.0 - 2.0 * u);
                if a.abs() < 1e-12 {
                    return w;
                }
                let disc = (1.0 + a) * (1.0 + a) - 4.0 * a * w;
                ((1.0 + a) - disc.max(0.0).sqrt()) / (2.0 * a)
            })),
            theta_interval: (-1.0, 1.0),
            theta_independence: Some(0.0),
            label: "fgm".to_string(),
        }
    }

    pub fn make_copula(id: &str) -> Result<Self> {
        match id {
            "independence" => Ok(Self::independence()),
            "fgm" => Ok(Self::fgm()),
            other => Err(Error::InvalidFamilyId(other.to_string())),
        }
    }

    pub fn theta_interval(&self) -> (f64, f64) {
        self.theta_interval
    }

    pub fn theta_independence(&self) -> Option<f64> {
        self.theta_independence
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains_theta(&self, theta: f64) -> bool {
        theta >= self.theta_interval.0 && theta <= self.theta_interval.1
    }

    pub fn check_theta(&self, theta: f64) -> Result<()> {
        if self.contains_theta(theta) {
            Ok(())
        } else {
            Err(Error::ThetaOutOfRange {
                theta,
                lo: self.theta_interval.0,
                hi: self.theta_interval.1,
            })
        }
    }

    pub fn c(&self, theta: f64, u: f64, v: f64) -> f64 {
        (self.c)(theta, u, v)
    }

    /// Partial derivative in the first argument.
    pub fn d1(&self, theta: f64, u: f64, v: f64) -> f64 {
        (self.d1)(theta, u, v)
    }

    /// Partial derivative in the second argument.
    pub fn d2(&self, theta: f64, u: f64, v: f64) -> f64 {
        (self.d2)(theta, u, v)
    }

    /// Solve d1(theta, u, v) = w for v.
    pub fn conditional_inverse(&self, theta: f64, u: f64, w: f64) -> Result<f64> {
        self.check_theta(theta)?;
        if let Some(inv) = &self.conditional_inverse {
            let v = inv(theta, u, w);
            if v.is_finite() {
                return Ok(v.clamp(0.0, 1.0));
            }
            return Err(Error::NoRoot { u, w });
        }
        // bisection fallback; d1 is nondecreasing in v for a valid copula
        let mut lo = 0.0_f64;
        let mut hi = 1.0_f64;
        if ((self.d1)(theta, u, lo) - w) * ((self.d1)(theta, u, hi) - w) > 0.0 {
            return Err(Error::NoRoot { u, w });
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if (self.d1)(theta, u, mid) < w {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Verify the Frechet-Hoeffding diagonal lower bound
    /// C(u, u) >= max(2u - 1, 0) on a 2001-point grid.
    pub fn diagonal_bound_check(&self, theta: f64) -> Result<ConditionReport> {
        self.check_theta(theta)?;
        const N: usize = 2000;
        let mut violations = Vec::new();
        for i in 0..=N {
            let u = i as f64 / N as f64;
            let lhs = self.c(theta, u, u);
            let rhs = (2.0 * u - 1.0).max(0.0);
            if lhs < rhs - 1e-12 && violations.len() < 64 {
                violations.push((u, lhs, rhs));
            }
        }
        let ok = violations.is_empty();
        Ok(ConditionReport {
            theorem_id: format!("diagonal-bound[{}, theta={theta}]", self.label),
            direction: if ok { Direction::Ge } else { Direction::Neither },
            pointwise_violations: violations,
            integral_terms: Default::default(),
            implied_conclusion: "C(u,u) >= max(2u-1, 0)".to_string(),
            conclusion_verified: Some(if ok { Verdict::Holds } else { Verdict::Fails }),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fgm_values() {
        let c = SurvivalCopulaFamily::fgm();
        assert!((c.c(0.0, 0.3, 0.7) - 0.21).abs() < 1e-15);
        assert!((c.c(1.0, 0.5, 0.5) - 0.3125).abs() < 1e-15);
        assert!((c.c(-1.0, 0.5, 0.5) - 0.1875).abs() < 1e-15);
    }

    #[test]
    fn boundary_conditions() {
        let fgm = SurvivalCopulaFamily::fgm();
        let ind = SurvivalCopulaFamily::independence();
        for (cop, thetas) in [(&fgm, vec![-1.0, -0.4, 0.0, 0.7, 1.0]), (&ind, vec![0.0])] {
            for t in thetas {
                for i in 0..=20 {
                    let u = i as f64 / 20.0;
                    assert!((cop.c(t, u, 0.0)).abs() < 1e-15);
                    assert!((cop.c(t, 0.0, u)).abs() < 1e-15);
                    assert!((cop.c(t, u, 1.0) - u).abs() < 1e-15);
                    assert!((cop.c(t, 1.0, u) - u).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn two_increasing_and_frechet_bounds() {
        let c = SurvivalCopulaFamily::fgm();
        for t in [-1.0, -0.3, 0.5, 1.0] {
            for i in 0..100 {
                for j in 0..100 {
                    let u1 = i as f64 / 100.0;
                    let v1 = j as f64 / 100.0;
                    let u2 = u1 + 0.01;
                    let v2 = v1 + 0.01;
                    let mass = c.c(t, u2, v2) - c.c(t, u1, v2) - c.c(t, u2, v1) + c.c(t, u1, v1);
                    assert!(mass >= -1e-12, "t={t} u={u1} v={v1}");
                    let x = c.c(t, u1, v1);
                    assert!(x >= (u1 + v1 - 1.0).max(0.0) - 1e-12);
                    assert!(x <= u1.min(v1) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn d2_matches_finite_difference() {
        let c = SurvivalCopulaFamily::fgm();
        for t in [-1.0, 0.25, 1.0] {
            for i in 1..20 {
                for j in 1..20 {
                    let u = i as f64 / 20.0;
                    let v = j as f64 / 20.0;
                    let h = 1e-6;
                    let fd = (c.c(t, u, v + h) - c.c(t, u, v - h)) / (2.0 * h);
                    let an = c.d2(t, u, v);
                    assert!((fd - an).abs() <= 1e-5 * (1.0 + an.abs()));
                    let fd1 = (c.c(t, u + h, v) - c.c(t, u - h, v)) / (2.0 * h);
                    assert!((fd1 - c.d1(t, u, v)).abs() <= 1e-5 * (1.0 + c.d1(t, u, v).abs()));
                }
            }
        }
    }

    #[test]
    fn conditional_inverse_examples() {
        let ind = SurvivalCopulaFamily::independence();
        assert!((ind.conditional_inverse(0.0, 0.8, 0.4).unwrap() - 0.4).abs() < 1e-15);

        let fgm = SurvivalCopulaFamily::fgm();
        // u = 1/2 kills the theta term
        for t in [-1.0, 0.3, 1.0] {
            assert!((fgm.conditional_inverse(t, 0.5, 0.3).unwrap() - 0.3).abs() < 1e-12);
        }
        // analytic quadratic root
        let v = fgm.conditional_inverse(1.0, 0.0, 0.5).unwrap();
        assert!((v - (2.0 - 2.0_f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn conditional_inverse_inverts_d1() {
        let fgm = SurvivalCopulaFamily::fgm();
        for t in [-1.0, -0.5, 0.5, 1.0] {
            for i in 1..10 {
                for j in 1..10 {
                    let u = i as f64 / 10.0;
                    let w = j as f64 / 10.0;
                    let v = fgm.conditional_inverse(t, u, w).unwrap();
                    assert!((fgm.d1(t, u, v) - w).abs() < 1e-10, "t={t} u={u} w={w}");
                }
            }
        }
    }

    #[test]
    fn conditional_inverse_increasing_in_w() {
        let fgm = SurvivalCopulaFamily::fgm();
        for t in [-1.0, 1.0] {
            for i in 1..10 {
                let u = i as f64 / 10.0;
                let mut prev = -1.0;
                for j in 1..40 {
                    let w = j as f64 / 40.0;
                    let v = fgm.conditional_inverse(t, u, w).unwrap();
                    assert!(v > prev);
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn theorem_4_3_symmetry_identity() {
        // d2 C(u,u) + d2 C(1-u,1-u) = 1 exactly for FGM
        let c = SurvivalCopulaFamily::fgm();
        for t in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            for i in 0..=1000 {
                let u = i as f64 / 2000.0;
                let s = c.d2(t, u, u) + c.d2(t, 1.0 - u, 1.0 - u);
                assert!((s - 1.0).abs() < 1e-12, "t={t} u={u}");
            }
        }
    }

    #[test]
    fn diagonal_bound() {
        assert_eq!(
            SurvivalCopulaFamily::independence()
                .diagonal_bound_check(0.0)
                .unwrap()
                .conclusion_verified,
            Some(Verdict::Holds)
        );
        for t in [-1.0, 1.0] {
            assert_eq!(
                SurvivalCopulaFamily::fgm()
                    .diagonal_bound_check(t)
                    .unwrap()
                    .conclusion_verified,
                Some(Verdict::Holds)
            );
        }
    }

    #[test]
    fn unknown_family() {
        assert!(matches!(
            SurvivalCopulaFamily::make_copula("clayton"),
            Err(Error::InvalidFamilyId(_))
        ));
    }
}
