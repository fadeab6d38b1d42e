//! Derivative-free location of extrema of the measures over a
//! parameter window, plus dense scan tables for CSV and plot output.

use crate::error::{Error, Result};
use crate::measures::MeasureResult;

/// What kind of extremum was found (or searched for).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Minimum,
    Maximum,
    NoneInWindow,
}

#[derive(Debug, Clone)]
pub struct ExtremumResult {
    pub alpha_star: f64,
    pub value: f64,
    pub kind: ExtremumKind,
    pub bracket: (f64, f64),
    pub evaluations: usize,
}

/// One row of a scan table. `theta` is `None` for single-variable
/// scans. Failed evaluations are annotated with NaN and
/// `converged = false` instead of aborting the table.
#[derive(Debug, Clone, Copy)]
pub struct ScanRow {
    pub theta: Option<f64>,
    pub alpha: f64,
    pub value: f64,
    pub err_estimate: f64,
    pub converged: bool,
}

const COARSE_POINTS: usize = 200;
const ALPHA_TOL: f64 = 1e-7;

/// Locate an interior extremum of `objective` on the window by a
/// coarse scan followed by golden-section refinement of each bracket.
///
/// With `kind_hint = None` a minimum is preferred when both kinds of
/// interior candidates exist. When the scan finds no interior
/// candidate of the requested kind, the result reports
/// `NoneInWindow` with the best grid point seen.
pub fn find_extremum<F>(
    objective: F,
    window: (f64, f64),
    kind_hint: Option<ExtremumKind>,
) -> Result<ExtremumResult>
where
    F: Fn(f64) -> Result<f64>,
{
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::WindowOutsideInterval { lo, hi });
    }

    let mut evaluations = 0usize;
    let mut eval = |a: f64| -> Result<f64> {
        evaluations += 1;
        let v = objective(a)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { u: a })
        }
    };

    let n = COARSE_POINTS;
    let mut xs = Vec::with_capacity(n + 1);
    let mut vs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let a = lo + (hi - lo) * i as f64 / n as f64;
        xs.push(a);
        vs.push(eval(a)?);
    }

    // collect interior brackets for both kinds
    let mut min_brackets = Vec::new();
    let mut max_brackets = Vec::new();
    for i in 1..n {
        if vs[i] <= vs[i - 1] && vs[i] <= vs[i + 1] && (vs[i] < vs[i - 1] || vs[i] < vs[i + 1])
        {
            min_brackets.push(i);
        }
        if vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1] && (vs[i] > vs[i - 1] || vs[i] > vs[i + 1])
        {
            max_brackets.push(i);
        }
    }

    let want = match kind_hint {
        Some(ExtremumKind::Minimum) => ExtremumKind::Minimum,
        Some(ExtremumKind::Maximum) => ExtremumKind::Maximum,
        Some(ExtremumKind::NoneInWindow) | None => {
            if !min_brackets.is_empty() {
                ExtremumKind::Minimum
            } else {
                ExtremumKind::Maximum
            }
        }
    };
    let brackets = match want {
        ExtremumKind::Minimum => &min_brackets,
        _ => &max_brackets,
    };

    if brackets.is_empty() {
        // no interior candidate: report the best grid point
        let pick = |cmp: fn(f64, f64) -> bool| {
            let mut best = 0;
            for i in 1..=n {
                if cmp(vs[i], vs[best]) {
                    best = i;
                }
            }
            best
        };
        let best = match want {
            ExtremumKind::Minimum => pick(|a, b| a < b),
            _ => pick(|a, b| a > b),
        };
        return Ok(ExtremumResult {
            alpha_star: xs[best],
            value: vs[best],
            kind: ExtremumKind::NoneInWindow,
            bracket: window,
            evaluations,
        });
    }

    let minimize = want == ExtremumKind::Minimum;
    let mut best: Option<(f64, f64, (f64, f64))> = None;
    for &i in brackets {
        let (mut a, mut b) = (xs[i - 1], xs[i + 1]);
        let refined_bracket = (a, b);
        const INVPHI: f64 = 0.618_033_988_749_894_9;
        let mut c = b - INVPHI * (b - a);
        let mut d = a + INVPHI * (b - a);
        let mut fc = eval(c)?;
        let mut fd = eval(d)?;
        let mut iterations = 0;
        while b - a > ALPHA_TOL {
            let keep_left = if minimize { fc < fd } else { fc > fd };
            if keep_left {
                b = d;
                d = c;
                fd = fc;
                c = b - INVPHI * (b - a);
                fc = eval(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INVPHI * (b - a);
                fd = eval(d)?;
            }
            iterations += 1;
            if iterations > 200 {
                return Err(Error::Nonconvergence);
            }
        }
        let alpha_star = 0.5 * (a + b);
        let value = eval(alpha_star)?;
        let better = match &best {
            None => true,
            Some((_, v, _)) => {
                if minimize {
                    value < *v
                } else {
                    value > *v
                }
            }
        };
        if better {
            best = Some((alpha_star, value, refined_bracket));
        }
    }

    let (alpha_star, value, bracket) = best.ok_or(Error::Nonconvergence)?;
    Ok(ExtremumResult {
        alpha_star,
        value,
        kind: want,
        bracket,
        evaluations,
    })
}

/// Evaluate a single-parameter objective over an alpha grid.
pub fn scan<F>(objective: F, alphas: &[f64]) -> Vec<ScanRow>
where
    F: Fn(f64) -> Result<MeasureResult>,
{
    alphas
        .iter()
        .map(|&alpha| match objective(alpha) {
            Ok(m) => ScanRow {
                theta: None,
                alpha,
                value: m.value,
                err_estimate: m.quadrature.error_estimate,
                converged: m.quadrature.converged,
            },
            Err(_) => ScanRow {
                theta: None,
                alpha,
                value: f64::NAN,
                err_estimate: f64::NAN,
                converged: false,
            },
        })
        .collect()
}

/// Evaluate a two-parameter objective over a (theta, alpha) grid,
/// theta-major ordering.
pub fn scan_surface<F>(objective: F, thetas: &[f64], alphas: &[f64]) -> Vec<ScanRow>
where
    F: Fn(f64, f64) -> Result<MeasureResult>,
{
    let mut rows = Vec::with_capacity(thetas.len() * alphas.len());
    for &theta in thetas {
        for &alpha in alphas {
            let row = match objective(theta, alpha) {
                Ok(m) => ScanRow {
                    theta: Some(theta),
                    alpha,
                    value: m.value,
                    err_estimate: m.quadrature.error_estimate,
                    converged: m.quadrature.converged,
                },
                Err(_) => ScanRow {
                    theta: Some(theta),
                    alpha,
                    value: f64::NAN,
                    err_estimate: f64::NAN,
                    converged: false,
                },
            };
            rows.push(row);
        }
    }
    rows
}

/// Render scan rows as CSV with the fixed schema; the `theta` column
/// is present only for surface scans.
pub fn rows_to_csv(rows: &[ScanRow]) -> String {
    let with_theta = rows.iter().any(|r| r.theta.is_some());
    let mut out = String::new();
    if with_theta {
        out.push_str("theta,alpha,value,err_estimate,converged\n");
    } else {
        out.push_str("alpha,value,err_estimate,converged\n");
    }
    for r in rows {
        if with_theta {
            out.push_str(&format!(
                "{:.8e},{:.8e},{:.8e},{:.8e},{}\n",
                r.theta.unwrap_or(f64::NAN),
                r.alpha,
                r.value,
                r.err_estimate,
                r.converged
            ));
        } else {
            out.push_str(&format!(
                "{:.8e},{:.8e},{:.8e},{}\n",
                r.alpha, r.value, r.err_estimate, r.converged
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copulas::SurvivalCopulaFamily;
    use crate::distortions::DistortionFamily;
    use crate::distributions::ContinuousDistribution;
    use crate::measures;

    #[test]
    fn exponential_ph_minimum() {
        let e = ContinuousDistribution::exponential(1.0);
        let ph = DistortionFamily::proportional_hazard();
        let r = find_extremum(
            |a| measures::eta(&e, &ph, a).map(|m| m.value),
            (0.1, 10.0),
            None,
        )
        .unwrap();
        assert_eq!(r.kind, ExtremumKind::Minimum);
        assert!((r.alpha_star - (1.0 + 2.0_f64.sqrt())).abs() < 1e-4, "{}", r.alpha_star);
        assert!((r.value - (2.0 * 2.0_f64.sqrt() - 2.0)).abs() < 1e-7);
        // first-order condition at the refined location
        let slope = measures::eta_dalpha(&e, &ph, r.alpha_star).unwrap().value;
        assert!(slope.abs() < 1e-5, "{slope}");
    }

    #[test]
    fn uniform_ph_minimum() {
        let u = ContinuousDistribution::uniform(0.0, 1.0);
        let ph = DistortionFamily::proportional_hazard();
        let r = find_extremum(
            |a| measures::eta(&u, &ph, a).map(|m| m.value),
            (0.1, 10.0),
            Some(ExtremumKind::Minimum),
        )
        .unwrap();
        assert!((r.alpha_star - 2.0_f64.sqrt()).abs() < 1e-4, "{}", r.alpha_star);
    }

    #[test]
    fn exponential_ph_fgm_minimum_not_at_identity() {
        let e = ContinuousDistribution::exponential(1.0);
        let ph = DistortionFamily::proportional_hazard();
        let fgm = SurvivalCopulaFamily::fgm();
        let closed = |a: f64| {
            1.0 / a + (a - 1.0) / (a + 1.0)
                - 3.0 * a / (2.0 + 7.0 * a + 7.0 * a * a + 2.0 * a * a * a)
        };
        let r = find_extremum(
            |a| measures::nu(&e, &ph, &fgm, 1.0, a).map(|m| m.value),
            (0.1, 10.0),
            None,
        )
        .unwrap();
        assert_eq!(r.kind, ExtremumKind::Minimum);
        // brute-force grid argmin of the closed form
        let mut best = (0.0, f64::INFINITY);
        for i in 1..=99000 {
            let a = 0.1 + i as f64 * 1e-4;
            let v = closed(a);
            if v < best.1 {
                best = (a, v);
            }
        }
        assert!((r.alpha_star - best.0).abs() < 1e-3, "{} vs {}", r.alpha_star, best.0);
        assert!((r.alpha_star - 1.0).abs() > 0.5);
    }

    #[test]
    fn monotone_objective_has_no_interior_extremum() {
        let r = find_extremum(|a| Ok(a * a), (1.0, 2.0), Some(ExtremumKind::Minimum)).unwrap();
        assert_eq!(r.kind, ExtremumKind::NoneInWindow);
        assert!((r.alpha_star - 1.0).abs() < 1e-12);
        let r = find_extremum(|a| Ok(a * a), (1.0, 2.0), None).unwrap();
        assert_eq!(r.kind, ExtremumKind::NoneInWindow);
    }

    #[test]
    fn quadratic_refined_to_analytic_argmin() {
        let r = find_extremum(|a| Ok((a - 1.7).powi(2)), (0.0, 5.0), None).unwrap();
        assert_eq!(r.kind, ExtremumKind::Minimum);
        assert!((r.alpha_star - 1.7).abs() < 1e-6, "{}", r.alpha_star);
        let r = find_extremum(|a| Ok(-(a - 2.3).powi(2)), (0.0, 5.0), None).unwrap();
        assert_eq!(r.kind, ExtremumKind::Maximum);
        assert!((r.alpha_star - 2.3).abs() < 1e-6);
    }

    #[test]
    fn bad_window_rejected() {
        assert!(matches!(
            find_extremum(Ok, (2.0, 1.0), None),
            Err(Error::WindowOutsideInterval { .. })
        ));
    }

    #[test]
    fn scan_matches_closed_form() {
        let e = ContinuousDistribution::exponential(1.0);
        let ph = DistortionFamily::proportional_hazard();
        let alphas: Vec<f64> = (1..=100).map(|i| i as f64 * 0.1).collect();
        let rows = scan(|a| measures::eta(&e, &ph, a), &alphas);
        assert_eq!(rows.len(), 100);
        for r in &rows {
            let want = 1.0 / r.alpha + (r.alpha - 1.0) / (r.alpha + 1.0);
            assert!(r.converged);
            assert!((r.value - want).abs() < 1e-8, "alpha={}", r.alpha);
        }
    }

    #[test]
    fn surface_scan_ordering_and_csv() {
        let e = ContinuousDistribution::exponential(1.0);
        let ph = DistortionFamily::proportional_hazard();
        let fgm = SurvivalCopulaFamily::fgm();
        let thetas = [-1.0, 0.0, 1.0];
        let alphas = [0.5, 1.0];
        let rows = scan_surface(
            |t, a| measures::nu(&e, &ph, &fgm, t, a),
            &thetas,
            &alphas,
        );
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].theta, Some(-1.0));
        assert_eq!(rows[0].alpha, 0.5);
        assert_eq!(rows[5].theta, Some(1.0));
        let csv = rows_to_csv(&rows);
        assert!(csv.starts_with("theta,alpha,value,err_estimate,converged\n"));
        assert_eq!(csv.lines().count(), 7);
    }

    #[test]
    fn failed_cells_are_annotated() {
        let rows = scan(
            |a| {
                if a > 1.5 {
                    Err(Error::Nonconvergence)
                } else {
                    Ok(MeasureResult {
                        value: a,
                        quadrature: crate::quadrature::QuadratureResult {
                            value: a,
                            error_estimate: 0.0,
                            subdivisions: 0,
                            converged: true,
                        },
                        inputs: String::new(),
                    })
                }
            },
            &[1.0, 2.0],
        );
        assert!(rows[0].converged);
        assert!(!rows[1].converged);
        assert!(rows[1].value.is_nan());
    }
}
