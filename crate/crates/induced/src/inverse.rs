//! Inversion of induced distributions: `F_n^{-1}(u)` by Markov-Stieltjes
//! bracketing followed by bisection.
//!
//! The bracket comes from a Gauss rule of the induced measure itself: the
//! partial sums of the quadrature weights sandwich `F_n` between consecutive
//! nodes, so the node pair around the partial sum containing `u` encloses the
//! root. Bisection then refines it; Newton steps are deliberately avoided
//! because the induced density vanishes at the `n` polynomial zeros, where
//! Newton iterates diverge.

use crate::error::{Error, Result};
use crate::idist::InducedDistribution;
use crate::measures::MeasureSpec;
use crate::modification::repeated_quadratic;
use crate::recurrence::{
    gauss_rule, log_leading_coeff, poly_zeros, QuadratureRule, RecurrenceTable,
};

/// Default Gauss-rule size for bracket construction: grows with the order so
/// brackets stay tight, capped to keep the eigensolve cheap.
pub fn default_bracket_size(n: usize) -> usize {
    (2 * n + 10).clamp(10, 200)
}

/// Recurrence table of the induced measure `mu_n = p_n^2 dmu`, with
/// coefficients for indices `0..=n_out`. Built by `n` quadratic
/// modifications at the zeros of `p_n`, rescaled by `gamma_n^2` in log
/// space; the result is again a probability measure (`b_0 = 1` up to
/// rounding) when the input is one.
pub fn induced_recurrence(
    spec: &MeasureSpec,
    n: usize,
    n_out: usize,
) -> Result<RecurrenceTable> {
    let base = spec.recurrence_table(n_out + 2 * n)?;
    if n == 0 {
        return base.truncated(n_out);
    }
    let zeros = poly_zeros(&base, n)?;
    let log_scale = 2.0 * log_leading_coeff(&base, n)?;
    repeated_quadratic(&base, &zeros, log_scale)
}

fn mu_rule(dist: &InducedDistribution, n_rule: usize) -> Result<QuadratureRule> {
    if let Some(rule) = dist.inverse_cache.get() {
        if rule.nodes.len() == n_rule {
            return Ok(rule.clone());
        }
    }
    let table = induced_recurrence(dist.spec(), dist.order(), n_rule)?;
    let rule = gauss_rule(&table, n_rule)?;
    if n_rule == default_bracket_size(dist.order()) {
        let _ = dist.inverse_cache.set(rule.clone());
    }
    Ok(rule)
}

/// Interval guaranteed to contain `F_n^{-1}(u)`, from the Markov-Stieltjes
/// inequalities applied to an `n_rule`-point Gauss rule of the induced
/// measure. Endpoints may be the (possibly infinite) support bounds.
pub fn markov_stiltjies_interval(
    u: f64,
    dist: &InducedDistribution,
    n_rule: usize,
) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!("u = {u} outside [0, 1]")));
    }
    if n_rule < 2 {
        return Err(Error::Domain("bracket rule needs at least 2 points".into()));
    }
    let rule = mu_rule(dist, n_rule)?;
    let (lo, hi) = dist.support();
    // Find m with sum_{k<m} v_k <= u <= sum_{k<=m} v_k (1-based m).
    let mut cum = 0.0;
    let mut m = n_rule;
    for (k, &w) in rule.weights.iter().enumerate() {
        cum += w;
        if u <= cum {
            m = k + 1;
            break;
        }
    }
    // Node indices are 1-based in the sandwich; index 0 and n_rule + 1 are
    // the support endpoints.
    let node = |j: usize| -> f64 {
        if j == 0 {
            lo
        } else if j > n_rule {
            hi
        } else {
            rule.nodes[j - 1]
        }
    };
    Ok((node(m - 1), node(m + 1)))
}

/// `F_n^{-1}(u)` to absolute tolerance `tol`; `u = 0` and `u = 1` map to the
/// support endpoints (which are infinite sentinels for unbounded measures).
pub fn idist_inverse(u: f64, dist: &InducedDistribution, tol: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!("u = {u} outside [0, 1]")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let (lo, hi) = dist.support();
    if u == 0.0 {
        return Ok(lo);
    }
    if u == 1.0 {
        return Ok(hi);
    }
    let n_rule = default_bracket_size(dist.order());
    let (mut x_lo, mut x_hi) = markov_stiltjies_interval(u, dist, n_rule)?;

    // Replace infinite bracket ends by stepping out from the nearest finite
    // point until F crosses u.
    if x_lo == f64::NEG_INFINITY {
        let mut step = 1.0f64.max(x_hi.abs() * 0.5);
        let anchor = if x_hi.is_finite() { x_hi } else { 0.0 };
        let mut cand = anchor - step;
        while dist.eval(cand.max(lo))? > u {
            step *= 2.0;
            cand = anchor - step;
            if step > 1e30 {
                return Err(Error::Numeric(format!(
                    "failed to bracket u = {u} from below"
                )));
            }
        }
        x_lo = cand.max(lo);
    }
    if x_hi == f64::INFINITY {
        let mut step = 1.0f64.max(x_lo.abs() * 0.5);
        let anchor = if x_lo.is_finite() { x_lo } else { 0.0 };
        let mut cand = anchor + step;
        while dist.eval(cand.min(hi))? < u {
            step *= 2.0;
            cand = anchor + step;
            if step > 1e30 {
                return Err(Error::Numeric(format!(
                    "failed to bracket u = {u} from above"
                )));
            }
        }
        x_hi = cand.min(hi);
    }

    for _ in 0..200 {
        if (x_hi - x_lo) <= tol * 1.0f64.max(x_lo.abs() + x_hi.abs()) {
            break;
        }
        let mid = 0.5 * (x_lo + x_hi);
        let f_mid = dist.eval(mid)?;
        if (f_mid - u).abs() <= tol {
            return Ok(mid);
        }
        if f_mid < u {
            x_lo = mid;
        } else {
            x_hi = mid;
        }
    }
    Ok(0.5 * (x_lo + x_hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_stieltjes;

    #[test]
    fn induced_recurrence_order_zero_is_identity() {
        let spec = MeasureSpec::jacobi(0.3, 0.7).unwrap();
        let t = induced_recurrence(&spec, 0, 6).unwrap();
        let direct = spec.recurrence_table(6).unwrap();
        assert_eq!(t, direct);
    }

    #[test]
    fn induced_recurrence_legendre_order_one() {
        let spec = MeasureSpec::jacobi(0.0, 0.0).unwrap();
        let t = induced_recurrence(&spec, 1, 5).unwrap();
        assert!(t.a[0].abs() < 1e-14);
        assert!((t.b[0] - 1.0).abs() < 1e-13);
        assert!((t.b[1] - 0.6).abs() < 1e-13);
    }

    #[test]
    fn induced_recurrence_matches_stieltjes() {
        let spec = MeasureSpec::jacobi(1.0, 2.0).unwrap();
        let n = 5;
        let base = spec.recurrence_table(30).unwrap();
        let zeros = poly_zeros(&base, n).unwrap();
        let factors: Vec<(f64, u32)> = zeros.iter().map(|&z| (z, 2)).collect();
        let reference = oracle_stieltjes(&spec, &factors, 12).unwrap();
        let t = induced_recurrence(&spec, n, 12).unwrap();
        // The Stieltjes table carries the monic-factor mass 1/gamma_n^2; the
        // induced table is normalized to unit mass. All other coefficients
        // agree directly.
        let lg2 = 2.0 * log_leading_coeff(&base, n).unwrap();
        assert!(((reference.b[0].ln() + lg2).exp() - t.b[0]).abs() < 1e-11);
        for j in 0..=12 {
            assert!(
                (t.a[j] - reference.a[j]).abs() < 1e-11,
                "a[{j}]: {} vs {}",
                t.a[j],
                reference.a[j]
            );
            if j > 0 {
                assert!(
                    (t.b[j] - reference.b[j]).abs() < 1e-11 * reference.b[j].max(1.0),
                    "b[{j}]: {} vs {}",
                    t.b[j],
                    reference.b[j]
                );
            }
        }
        assert!((t.b[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bracket_endpoints_at_u_extremes() {
        let dist =
            InducedDistribution::new(MeasureSpec::jacobi(0.0, 0.0).unwrap(), 3).unwrap();
        let (lo, _) = markov_stiltjies_interval(0.0, &dist, 20).unwrap();
        assert_eq!(lo, -1.0);
        let (_, hi) = markov_stiltjies_interval(1.0, &dist, 20).unwrap();
        assert_eq!(hi, 1.0);
        assert!(markov_stiltjies_interval(1.5, &dist, 20).is_err());
    }

    #[test]
    fn bracket_contains_root() {
        let dist =
            InducedDistribution::new(MeasureSpec::jacobi(0.0, 0.0).unwrap(), 3).unwrap();
        let u = 0.37;
        let (lo, hi) = markov_stiltjies_interval(u, &dist, 50).unwrap();
        assert!(dist.eval(lo).unwrap() <= u);
        assert!(dist.eval(hi).unwrap() >= u);
        let root = idist_inverse(u, &dist, 1e-12).unwrap();
        assert!(lo <= root && root <= hi);
    }

    #[test]
    fn inverse_closed_forms() {
        let uniform =
            InducedDistribution::new(MeasureSpec::jacobi(0.0, 0.0).unwrap(), 0).unwrap();
        let x = idist_inverse(0.75, &uniform, 1e-12).unwrap();
        assert!((x - 0.5).abs() < 1e-10);
        let arcsine =
            InducedDistribution::new(MeasureSpec::jacobi(-0.5, -0.5).unwrap(), 0).unwrap();
        let x = idist_inverse(2.0 / 3.0, &arcsine, 1e-12).unwrap();
        assert!((x - 0.5).abs() < 1e-10, "{x}");
    }

    #[test]
    fn inverse_round_trip_jacobi() {
        let dist = InducedDistribution::new(
            MeasureSpec::jacobi(std::f64::consts::PI, -0.9).unwrap(),
            40,
        )
        .unwrap();
        for i in 1..20 {
            let u = i as f64 / 20.0;
            let x = idist_inverse(u, &dist, 1e-12).unwrap();
            let back = dist.eval(x).unwrap();
            assert!((back - u).abs() <= 1e-10, "u = {u}: F(F^-1) = {back}");
        }
    }

    #[test]
    fn inverse_round_trip_unbounded() {
        let hf = InducedDistribution::new(
            MeasureSpec::half_line_freud(1.0, 0.5).unwrap(),
            5,
        )
        .unwrap();
        let fr = InducedDistribution::new(MeasureSpec::freud(2.0, 0.0).unwrap(), 5).unwrap();
        for dist in [&hf, &fr] {
            for i in 1..10 {
                let u = i as f64 / 10.0;
                let x = idist_inverse(u, dist, 1e-12).unwrap();
                assert!(x.is_finite());
                let back = dist.eval(x).unwrap();
                assert!((back - u).abs() <= 1e-10, "u = {u}: {back}");
            }
        }
    }

    #[test]
    fn inverse_sentinels_and_monotonicity() {
        let fr = InducedDistribution::new(MeasureSpec::freud(2.0, 0.0).unwrap(), 4).unwrap();
        assert_eq!(idist_inverse(0.0, &fr, 1e-12).unwrap(), f64::NEG_INFINITY);
        assert_eq!(idist_inverse(1.0, &fr, 1e-12).unwrap(), f64::INFINITY);
        let mut last = f64::NEG_INFINITY;
        for i in 1..12 {
            let u = i as f64 / 12.0;
            let x = idist_inverse(u, &fr, 1e-12).unwrap();
            assert!(x >= last);
            last = x;
        }
        let j = InducedDistribution::new(MeasureSpec::jacobi(1.0, 1.0).unwrap(), 2).unwrap();
        assert_eq!(idist_inverse(0.0, &j, 1e-12).unwrap(), -1.0);
        assert_eq!(idist_inverse(1.0, &j, 1e-12).unwrap(), 1.0);
    }
}


