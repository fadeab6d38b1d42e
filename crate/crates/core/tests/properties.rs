//! Property-based invariants for the transform layers: quantile
//! roundtrips, distortion monotonicity, copula identities and
//! derivative consistency.

use proptest::prelude::*;

use gini_distortion::copulas::SurvivalCopulaFamily;
use gini_distortion::distortions::DistortionFamily;
use gini_distortion::distributions::ContinuousDistribution;

fn catalog() -> Vec<ContinuousDistribution> {
    vec![
        ContinuousDistribution::exponential(1.0),
        ContinuousDistribution::uniform(0.0, 1.0),
        ContinuousDistribution::weibull(2.0, 1.0),
        ContinuousDistribution::power_law(2.0),
    ]
}

proptest! {
    #[test]
    fn sf_roundtrip(u in 1e-6..=0.999999f64) {
        for dist in catalog() {
            let x = dist.sf_inverse(u);
            let back = dist.sf(x);
            prop_assert!((back - u).abs() < 1e-9, "{}: u={u} back={back}", dist.label());
        }
    }

    #[test]
    fn distortion_monotone_in_u(
        u1 in 1e-6..=0.999999f64,
        u2 in 1e-6..=0.999999f64,
        alpha in 0.1..=8.0f64,
    ) {
        let (lo, hi) = if u1 <= u2 { (u1, u2) } else { (u2, u1) };
        let e = ContinuousDistribution::exponential(1.0);
        let fams = [
            DistortionFamily::proportional_hazard(),
            DistortionFamily::proportional_reversed_hazard(),
            DistortionFamily::power_hazard(&e),
        ];
        for f in &fams {
            prop_assert!(
                f.h(alpha, lo) <= f.h(alpha, hi) + 1e-12,
                "{} alpha={alpha}",
                f.label()
            );
        }
    }

    #[test]
    fn distortion_inverse_roundtrip(
        p in 1e-6..=0.999999f64,
        alpha in 0.1..=8.0f64,
    ) {
        let fams = [
            DistortionFamily::proportional_hazard(),
            DistortionFamily::proportional_reversed_hazard(),
        ];
        for f in &fams {
            let u = f.inverse(alpha, p)?;
            let back = f.h(alpha, u);
            prop_assert!((back - p).abs() < 1e-9, "{} alpha={alpha}: {back} vs {p}", f.label());
        }
    }

    #[test]
    fn fgm_symmetry_and_bounds(
        theta in -1.0..=1.0f64,
        u in 0.0..=1.0f64,
        v in 0.0..=1.0f64,
    ) {
        let fgm = SurvivalCopulaFamily::fgm();
        let c = fgm.c(theta, u, v);
        prop_assert!((c - fgm.c(theta, v, u)).abs() < 1e-15);
        let lower = (u + v - 1.0).max(0.0);
        let upper = u.min(v);
        prop_assert!(c >= lower - 1e-12 && c <= upper + 1e-12, "c={c}");
    }

    #[test]
    fn fgm_conditional_inverse_roundtrip(
        theta in -1.0..=1.0f64,
        u in 1e-6..=0.999999f64,
        w in 1e-6..=0.999999f64,
    ) {
        let fgm = SurvivalCopulaFamily::fgm();
        let v = fgm.conditional_inverse(theta, u, w)?;
        let back = fgm.d1(theta, u, v);
        prop_assert!((back - w).abs() < 1e-8, "v={v} back={back}");
    }

    #[test]
    fn fgm_conditional_inverse_monotone_in_w(
        theta in -1.0..=1.0f64,
        u in 1e-6..=0.999999f64,
        w1 in 1e-6..=0.999999f64,
        w2 in 1e-6..=0.999999f64,
    ) {
        let (lo, hi) = if w1 <= w2 { (w1, w2) } else { (w2, w1) };
        let fgm = SurvivalCopulaFamily::fgm();
        let v1 = fgm.conditional_inverse(theta, u, lo)?;
        let v2 = fgm.conditional_inverse(theta, u, hi)?;
        prop_assert!(v1 <= v2 + 1e-10, "{v1} vs {v2}");
    }

    #[test]
    fn fgm_d2_matches_finite_difference(
        theta in -1.0..=1.0f64,
        u in 0.01..=0.99f64,
        v in 0.01..=0.99f64,
    ) {
        let fgm = SurvivalCopulaFamily::fgm();
        let step = 1e-6;
        let fd = (fgm.c(theta, u, v + step) - fgm.c(theta, u, v - step)) / (2.0 * step);
        let d2 = fgm.d2(theta, u, v);
        prop_assert!((d2 - fd).abs() < 1e-7, "{d2} vs {fd}");
    }

    #[test]
    fn distortion_dalpha_matches_finite_difference(
        u in 0.01..=0.99f64,
        alpha in 0.2..=6.0f64,
    ) {
        let e = ContinuousDistribution::exponential(1.0);
        let fams = [
            DistortionFamily::proportional_hazard(),
            DistortionFamily::proportional_reversed_hazard(),
            DistortionFamily::power_hazard(&e),
        ];
        let step = 1e-6;
        for f in &fams {
            let analytic = f.derivative_alpha(alpha, u)?;
            let fd = (f.h(alpha + step, u) - f.h(alpha - step, u)) / (2.0 * step);
            prop_assert!(
                (analytic - fd).abs() < 1e-6,
                "{} alpha={alpha} u={u}: {analytic} vs {fd}",
                f.label()
            );
        }
    }
}
