//! Brute-force reference implementations used to validate the fast paths:
//! direct quadrature of induced distribution functions, Stieltjes-procedure
//! recurrence coefficients for polynomially modified weights, and a dense
//! spectral-norm routine.
//!
//! Everything here is deliberately independent of the measure-modification
//! machinery: distribution values come from double-exponential quadrature of
//! `p_n^2` times the density, with the polynomial evaluated through the
//! normalized recurrence in log space so that degrees up to 1000 neither
//! overflow nor lose the integrand's scale.

use crate::error::{Error, Result};
use crate::measures::MeasureSpec;
use crate::recurrence::{gauss_rule, poly_zeros, RecurrenceTable};

const TS_UMAX: f64 = 7.0;
const TS_MAX_LEVEL: u32 = 9;
const ES_UMAX: f64 = 9.0;
const ES_MAX_LEVEL: u32 = 9;
const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;

/// Integrand for bounded panels: called as
/// `f(t, dist_left, dist_right, log_dist_left, log_dist_right)` and returns
/// the natural log of the integrand value (`-inf` allowed). The distances to
/// the panel endpoints are supplied both linearly (may underflow) and in log
/// form (exact), so endpoint singularities can be evaluated stably.
type PanelIntegrand<'a> = &'a dyn Fn(f64, f64, f64, f64, f64) -> f64;

/// Tanh-sinh quadrature of `exp(f_log)` over the bounded panel `(a, b)`,
/// with level doubling until successive levels agree to `tol_abs`.
fn tanh_sinh_log(a: f64, b: f64, f_log: PanelIntegrand, tol_abs: f64) -> Result<f64> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let log_half = half.ln();
    let mut prev = f64::NAN;
    for level in 0..=TS_MAX_LEVEL {
        let h = 1.0 / (1u64 << level) as f64;
        let k_max = (TS_UMAX / h).ceil() as i64;
        let mut sum = 0.0;
        for k in -k_max..=k_max {
            let u = k as f64 * h;
            let s = HALF_PI * u.sinh();
            let sa = s.abs();
            let e2 = (-2.0 * sa).exp();
            // Distance from the nearer endpoint: (b-a) e^{-2|s|} / (1+e^{-2|s|}).
            let log_near = (b - a).ln() - 2.0 * sa - e2.ln_1p();
            let log_far = (b - a).ln() - e2.ln_1p();
            let d_near = log_near.exp();
            let d_far = log_far.exp();
            let (d_l, d_r, ld_l, ld_r) = if s >= 0.0 {
                (d_far, d_near, log_far, log_near)
            } else {
                (d_near, d_far, log_near, log_far)
            };
            // Recover t from the nearer endpoint for accuracy.
            let t = if s >= 0.0 { b - d_r } else { a + d_l };
            let t = t.clamp(a, b).max(mid - half).min(mid + half);
            // dt/du = half * (pi/2 cosh u) / cosh^2(s); 1/cosh^2 = 4 e^{-2|s|}/(1+e^{-2|s|})^2.
            let log_w = log_half + (HALF_PI * u.cosh()).ln() + 4f64.ln()
                - 2.0 * sa
                - 2.0 * e2.ln_1p();
            let fl = f_log(t, d_l, d_r, ld_l, ld_r);
            if fl > f64::NEG_INFINITY {
                sum += (log_w + fl).exp();
            }
        }
        let val = h * sum;
        if level > 1 && (val - prev).abs() <= tol_abs.max(1e-15 * val.abs()) {
            return Ok(val);
        }
        prev = val;
    }
    // Deep refinement exhausted; accept the last value only if the final
    // two levels are within a loose factor, otherwise report failure.
    Err(Error::OracleAccuracy(format!(
        "tanh-sinh panel ({a}, {b}) did not reach tolerance {tol_abs:.1e}"
    )))
}

/// Exp-sinh quadrature of `exp(f_log)` over `(a, +inf)`; the integrand is
/// called as `f(t, log(t - a))`.
fn exp_sinh_log(a: f64, f_log: &dyn Fn(f64, f64) -> f64, tol_abs: f64) -> Result<f64> {
    let mut prev = f64::NAN;
    for level in 0..=ES_MAX_LEVEL {
        let h = 1.0 / (1u64 << level) as f64;
        let k_max = (ES_UMAX / h).ceil() as i64;
        let mut sum = 0.0;
        for k in -k_max..=k_max {
            let u = k as f64 * h;
            let s = HALF_PI * u.sinh();
            let t = a + s.exp();
            let log_w = (HALF_PI * u.cosh()).ln() + s;
            let fl = if t.is_finite() {
                f_log(t, s)
            } else {
                f64::NEG_INFINITY
            };
            if fl > f64::NEG_INFINITY {
                let term_log = log_w + fl;
                if term_log > -746.0 {
                    sum += term_log.exp();
                }
            }
        }
        let val = h * sum;
        if level > 1 && (val - prev).abs() <= tol_abs.max(1e-15 * val.abs()) {
            return Ok(val);
        }
        prev = val;
    }
    Err(Error::OracleAccuracy(format!(
        "exp-sinh tail from {a} did not reach tolerance {tol_abs:.1e}"
    )))
}

/// `log |p_n(t)|` by the normalized recurrence; allocation-free hot path.
fn log_abs_pn(a: &[f64], b: &[f64], t: f64, n: usize) -> f64 {
    let c0 = 1.0 / b[0].sqrt();
    if n == 0 {
        return c0.ln();
    }
    let mut log_prod = 0.0;
    let mut c_prev = c0; // C_{j-1}
    let mut c_cur = (t - a[0]) / b[1].sqrt(); // C_j, starting at j = 1
    for j in 1..n {
        let next = if j == 1 {
            ((t - a[1]) * c_cur - b[1].sqrt()) / (b[2].sqrt() * (1.0 + c_cur * c_cur).sqrt())
        } else {
            ((t - a[j]) * c_cur - b[j].sqrt() * c_prev / (1.0 + c_prev * c_prev).sqrt())
                / (b[j + 1].sqrt() * (1.0 + c_cur * c_cur).sqrt())
        };
        log_prod += 0.5 * (1.0 + c_cur * c_cur).ln();
        c_prev = c_cur;
        c_cur = next;
    }
    c0.ln() + c_cur.abs().ln() + log_prod
}

/// Distribution value `F_n(x)` by direct quadrature of `p_n^2 dmu`.
///
/// Supported: Jacobi (all parameters), half-line Freud with `alpha = 1`,
/// Freud with `alpha = 2`. Target absolute error 1e-12 (1e-9 for `n > 200`,
/// where integrand oscillation limits double precision).
pub fn oracle_idist(spec: &MeasureSpec, n: usize, x: f64) -> Result<f64> {
    let tol = if n > 200 { 1e-11 } else { 1e-13 };
    match *spec {
        MeasureSpec::Jacobi { alpha, beta } => oracle_jacobi(alpha, beta, n, x, tol),
        MeasureSpec::HalfLineFreud { .. } => oracle_halffreud(spec, n, x, tol),
        MeasureSpec::Freud { .. } => oracle_freud(spec, n, x, tol),
        MeasureSpec::Custom { .. } => Err(Error::UnsupportedMeasure(
            "oracle integration needs a built-in density".into(),
        )),
    }
}

fn split_points(lo: f64, hi: f64, zeros: &[f64], extra: Option<f64>) -> Vec<f64> {
    let mut pts = vec![lo];
    let mut interior: Vec<f64> = zeros
        .iter()
        .copied()
        .chain(extra)
        .filter(|&z| z > lo && z < hi)
        .collect();
    interior.sort_by(f64::total_cmp);
    for z in interior {
        if z - pts.last().unwrap() > 1e-14 * (1.0 + z.abs()) {
            pts.push(z);
        }
    }
    if hi - pts.last().unwrap() > 1e-14 * (1.0 + hi.abs()) {
        pts.push(hi);
    } else {
        *pts.last_mut().unwrap() = hi;
    }
    pts
}

fn oracle_jacobi(alpha: f64, beta: f64, n: usize, x: f64, tol: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    if x == -1.0 {
        return Ok(0.0);
    }
    let spec = MeasureSpec::jacobi(alpha, beta)?;
    let table = spec.recurrence_table(n.max(1))?;
    let zeros = if n > 0 { poly_zeros(&table, n)? } else { vec![] };
    let log_c = spec.log_normalization()?;
    let pts = split_points(-1.0, x, &zeros, None);
    let panel_tol = tol / pts.len() as f64;
    let mut total = 0.0;
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let f = |t: f64, d_l: f64, _d_r: f64, ld_l: f64, ld_r: f64| -> f64 {
            let lp = log_abs_pn(&table.a, &table.b, t, n);
            let l1m = if b == 1.0 { ld_r } else { (1.0 - t).ln() };
            let l1p = if a == -1.0 {
                ld_l
            } else {
                ((1.0 + a) + d_l).ln()
            };
            let mut v = 2.0 * lp - log_c;
            if alpha != 0.0 {
                v += alpha * l1m;
            }
            if beta != 0.0 {
                v += beta * l1p;
            }
            v
        };
        total += tanh_sinh_log(a, b, &f, panel_tol)?;
    }
    Ok(total)
}

fn oracle_halffreud(spec: &MeasureSpec, n: usize, x: f64, tol: f64) -> Result<f64> {
    let MeasureSpec::HalfLineFreud { alpha, rho } = *spec else { unreachable!() };
    if x < 0.0 {
        return Err(Error::Domain(format!("x = {x} outside [0, inf)")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let table = spec.recurrence_table(n.max(1))?;
    let zeros = if n > 0 { poly_zeros(&table, n)? } else { vec![] };
    let log_c = spec.log_normalization()?;
    let pts = split_points(0.0, x, &zeros, None);
    let panel_tol = tol / pts.len() as f64;
    let mut total = 0.0;
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let f = |t: f64, d_l: f64, _d_r: f64, ld_l: f64, _ld_r: f64| -> f64 {
            let lp = log_abs_pn(&table.a, &table.b, t, n);
            let lt = if a == 0.0 { ld_l } else { (a + d_l).ln() };
            let mut v = 2.0 * lp - t.powf(alpha) - log_c;
            if rho != 0.0 {
                v += rho * lt;
            }
            v
        };
        total += tanh_sinh_log(a, b, &f, panel_tol)?;
    }
    Ok(total)
}

/// Complement `F_n^c(x)` for a half-line Freud measure, integrating the
/// upper tail directly (more accurate than `1 - F_n(x)` when the tail is
/// small).
pub fn oracle_idist_comp_halffreud(spec: &MeasureSpec, n: usize, x: f64) -> Result<f64> {
    let MeasureSpec::HalfLineFreud { alpha, rho } = *spec else {
        return Err(Error::UnsupportedMeasure("expected half-line Freud".into()));
    };
    let tol = if n > 200 { 1e-11 } else { 1e-13 };
    let table = spec.recurrence_table(n.max(1))?;
    let zeros = if n > 0 { poly_zeros(&table, n)? } else { vec![] };
    let log_c = spec.log_normalization()?;
    let tail_from = zeros.iter().copied().fold(x, f64::max);
    // Bounded panels between x and the last zero, then an infinite tail.
    let mut total = 0.0;
    if tail_from > x {
        let pts = split_points(x, tail_from, &zeros, None);
        let panel_tol = tol / (pts.len() + 1) as f64;
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let f = |t: f64, d_l: f64, _d_r: f64, ld_l: f64, _ld_r: f64| -> f64 {
                let lp = log_abs_pn(&table.a, &table.b, t, n);
                let lt = if a == 0.0 { ld_l } else { (a + d_l).ln() };
                let mut v = 2.0 * lp - t.powf(alpha) - log_c;
                if rho != 0.0 {
                    v += rho * lt;
                }
                v
            };
            total += tanh_sinh_log(a, b, &f, panel_tol)?;
        }
    }
    let f_tail = |t: f64, _log_dist: f64| -> f64 {
        let lp = log_abs_pn(&table.a, &table.b, t, n);
        let mut v = 2.0 * lp - t.powf(alpha) - log_c;
        if rho != 0.0 {
            v += rho * t.ln();
        }
        v
    };
    total += exp_sinh_log(tail_from, &f_tail, tol)?;
    Ok(total)
}

fn oracle_freud(spec: &MeasureSpec, n: usize, x: f64, tol: f64) -> Result<f64> {
    let MeasureSpec::Freud { alpha, rho } = *spec else { unreachable!() };
    let table = spec.recurrence_table(n.max(1))?;
    let zeros = if n > 0 { poly_zeros(&table, n)? } else { vec![] };
    let log_c = spec.log_normalization()?;
    let density_log = |t: f64| -> f64 {
        let lp = log_abs_pn(&table.a, &table.b, t, n);
        let mut v = 2.0 * lp - t.abs().powf(alpha) - log_c;
        if rho != 0.0 {
            v += rho * t.abs().ln();
        }
        v
    };
    // Lower tail (-inf, t0] by reflected exp-sinh, then bounded panels.
    let t0 = zeros
        .first()
        .copied()
        .into_iter()
        .chain(if rho != 0.0 { Some(0.0) } else { None })
        .fold(x, f64::min);
    let f_tail = |t: f64, _log_dist: f64| density_log(-t);
    let mut total = exp_sinh_log(-t0, &f_tail, tol)?;
    if x > t0 {
        // Interior singular point at 0 (for rho != 0) becomes a panel edge.
        let extra = if rho != 0.0 { Some(0.0) } else { None };
        let pts = split_points(t0, x, &zeros, extra);
        let panel_tol = tol / (pts.len() + 1) as f64;
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let f = |t: f64, d_l: f64, d_r: f64, ld_l: f64, ld_r: f64| -> f64 {
                let lp = log_abs_pn(&table.a, &table.b, t, n);
                let mut v = 2.0 * lp - t.abs().powf(alpha) - log_c;
                if rho != 0.0 {
                    // 0 is always a panel endpoint when rho != 0, so only the
                    // endpoint-adjacent cases need the stable log offsets.
                    let lt = if a == 0.0 {
                        ld_l
                    } else if b == 0.0 {
                        ld_r
                    } else {
                        let _ = (d_l, d_r);
                        t.abs().ln()
                    };
                    v += rho * lt;
                }
                v
            };
            total += tanh_sinh_log(a, b, &f, panel_tol)?;
        }
    }
    Ok(total)
}

/// Recurrence coefficients of `prod_i (x - c_i)^{e_i} dmu` by the Stieltjes
/// procedure with high-order Gauss quadrature of the base measure. Valid to
/// `n_out <= 20` or so before the procedure loses positivity. The factor must
/// be nonnegative on the support of `mu`.
pub fn oracle_stieltjes(
    base: &MeasureSpec,
    factors: &[(f64, u32)],
    n_out: usize,
) -> Result<RecurrenceTable> {
    let deg: u32 = factors.iter().map(|&(_, e)| e).sum();
    let quad_n = 4 * (n_out + 1) + deg as usize + 2;
    let base_table = base.recurrence_table(quad_n)?;
    let rule = gauss_rule(&base_table, quad_n)?;
    let m = rule.nodes.len();
    let factor_at = |t: f64| -> f64 {
        factors
            .iter()
            .map(|&(c, e)| (t - c).powi(e as i32))
            .product()
    };
    let wts: Vec<f64> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&t, &w)| w * factor_at(t))
        .collect();

    let mut pi_prev = vec![0.0; m];
    let mut pi_cur = vec![1.0; m];
    let mut h_prev = 0.0;
    let mut a_out = Vec::with_capacity(n_out + 1);
    let mut b_out = Vec::with_capacity(n_out + 1);
    for k in 0..=n_out {
        let mut h = 0.0;
        let mut xh = 0.0;
        for i in 0..m {
            let p2 = wts[i] * pi_cur[i] * pi_cur[i];
            h += p2;
            xh += rule.nodes[i] * p2;
        }
        if !(h > 0.0) {
            return Err(Error::OracleAccuracy(format!(
                "Stieltjes procedure lost positivity at index {k}"
            )));
        }
        let ak = xh / h;
        let bk = if k == 0 { h } else { h / h_prev };
        a_out.push(ak);
        b_out.push(bk);
        if k < n_out {
            let mut pi_next = vec![0.0; m];
            for i in 0..m {
                pi_next[i] = (rule.nodes[i] - ak) * pi_cur[i]
                    - if k == 0 { 0.0 } else { bk * pi_prev[i] };
            }
            pi_prev = pi_cur;
            pi_cur = pi_next;
        }
        h_prev = h;
    }
    RecurrenceTable::new(a_out, b_out)
}

/// Spectral norm of a symmetric matrix by full Jacobi-rotation
/// eigendecomposition; intended for small test matrices (dimension <= 200).
pub fn oracle_dense_specnorm(mat: &[Vec<f64>]) -> f64 {
    let n = mat.len();
    if n == 0 {
        return 0.0;
    }
    let mut a: Vec<Vec<f64>> = mat.to_vec();
    let scale: f64 = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p][q].abs());
            }
        }
        if off < 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let (aip, aiq) = (a[i][p], a[i][q]);
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let (api, aqi) = (a[p][i], a[q][i]);
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
            }
        }
    }
    (0..n).fold(0.0f64, |acc, i| acc.max(a[i][i].abs()))
}
