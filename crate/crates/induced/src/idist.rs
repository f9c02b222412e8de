//! Fast evaluation of induced distribution functions `F_n`.
//!
//! The common scheme: a change of variables maps the integral defining
//! `F_n(x)` (or its complement) onto a fixed reference interval, where the
//! integrand factors into `p_n^2` times a polynomially-modified base measure.
//! The `p_n^2` factor is absorbed into the measure by `n` quadratic
//! Christoffel modifications at the (mapped) zeros of `p_n`, after which a
//! small Gauss rule of the modified measure integrates the smooth remainder
//! to near machine precision.
//!
//! Large scale factors (the squared leading coefficient `gamma_n^2` and
//! powers of the interval map) are distributed across the modification
//! iterations in log space, which keeps every intermediate representable up
//! to degree 1000.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::measures::MeasureSpec;
use crate::modification::{linear_modification, repeated_quadratic_log};
use crate::recurrence::{gauss_rule, log_leading_coeff, poly_zeros, QuadratureRule};
use crate::special::{log_beta, log_gamma};

const LN_2: f64 = std::f64::consts::LN_2;

/// Threshold beyond which a modification center counts as "far" from the
/// reference interval. Past it, the polynomial factor `(t - c)^2` is constant
/// over the support to within `1/|c|`, while the Christoffel update formulas
/// for the modified `a` coefficients subtract two `O(|c|)` quantities and
/// lose `|c| * eps` absolutely — catastrophic well before `1e16`. In that
/// regime the modification is replaced by a pure mass rescaling `c^2` (in log
/// space), which is the same measure up to a relative coefficient
/// perturbation of `O(1/|c|) <= 1e-8`; the evaluation points that trigger
/// this carry distribution values far below any absolute tolerance, so the
/// perturbation is harmless.
const FAR_CENTER: f64 = 1e8;

/// Split point between the direct and complementary evaluation branches;
/// approximates the median of `F_n`.
pub fn approx_median(spec: &MeasureSpec, n: usize) -> Result<f64> {
    match *spec {
        MeasureSpec::Jacobi { alpha, beta } => Ok(jacobi_x0(alpha, beta, n)),
        MeasureSpec::HalfLineFreud { alpha, rho } => Ok(halffreud_x0(alpha, rho, n)),
        MeasureSpec::Freud { .. } => Ok(0.0),
        MeasureSpec::Custom { .. } => Err(Error::UnsupportedMeasure(
            "no median approximation for custom measures".into(),
        )),
    }
}

fn jacobi_x0(alpha: f64, beta: f64, n: usize) -> f64 {
    if n == 0 {
        // The centroid formula below is derived for n >= 1; any split point
        // works, and 0 keeps the two branches symmetric.
        0.0
    } else {
        let s = 2.0 * n as f64 + alpha + beta;
        (beta * beta - alpha * alpha) / (s * s)
    }
}

fn halffreud_x0(alpha: f64, rho: f64, n: usize) -> f64 {
    if alpha == 1.0 {
        return 50.0;
    }
    let (lo, hi) = halffreud_interval(alpha, rho, n);
    0.5 * (lo + hi)
}

/// The interval `[a_-, a_+]` concentrating the mass of the order-n induced
/// half-line Freud measure (from the Mhaskar-Rakhmanov-Saff numbers of the
/// weight).
pub fn halffreud_interval(alpha: f64, rho: f64, n: usize) -> (f64, f64) {
    let nf = n as f64;
    let pref = (std::f64::consts::PI.sqrt() * log_gamma(alpha).exp()
        / (2.0 * log_gamma(alpha + 0.5).exp()))
    .powf(1.0 / alpha);
    let disc = 2.0 * (nf * nf + nf * rho).sqrt();
    let lo = pref * (rho + 2.0 * nf - disc).max(0.0).powf(1.0 / alpha);
    let hi = pref * (rho + 2.0 * nf + disc).powf(1.0 / alpha);
    (lo, hi)
}

/// Default Gauss-rule size for the family: 10 for Jacobi, 25 for the
/// exponential (`alpha = 1`) half-line family, `n + 10` otherwise.
pub fn default_quad_size(spec: &MeasureSpec, n: usize) -> usize {
    match *spec {
        MeasureSpec::Jacobi { .. } => 10,
        MeasureSpec::HalfLineFreud { alpha, .. } => {
            if alpha == 1.0 {
                25
            } else {
                n + 10
            }
        }
        // Freud delegates to half-line with alpha/2; for the supported
        // alpha = 2 that is the exponential family.
        MeasureSpec::Freud { alpha, .. } => {
            if alpha == 2.0 {
                25
            } else {
                n / 2 + 10
            }
        }
        MeasureSpec::Custom { .. } => 10,
    }
}

fn jacobi_zeros_lg(alpha: f64, beta: f64, n: usize) -> Result<(Vec<f64>, f64)> {
    let table = MeasureSpec::jacobi(alpha, beta)?.recurrence_table(n.max(1))?;
    let zeros = if n > 0 { poly_zeros(&table, n)? } else { vec![] };
    let lg = log_leading_coeff(&table, n)?;
    Ok((zeros, lg))
}

/// Direct-branch approximation of `F_n(x)` for a Jacobi measure at
/// `x <= x0`, plus the modified-measure coefficients `b_0..b_M` needed for
/// the a-posteriori error bound.
fn jacobi_hat(
    alpha: f64,
    beta: f64,
    n: usize,
    x: f64,
    m: usize,
    zeros: &[f64],
    log_gamma_n: f64,
) -> Result<(f64, Vec<f64>)> {
    let a_cap = alpha.abs().floor() as usize;
    let base = MeasureSpec::jacobi(0.0, beta)?.recurrence_table(m + a_cap + 2 * n)?;
    let half = (x + 1.0) / 2.0;
    let log_scale = (2 * n + a_cap) as f64 * half.ln() + 2.0 * log_gamma_n;
    let centers: Vec<f64> = zeros
        .iter()
        .map(|&z| 2.0 * (z + 1.0) / (x + 1.0) - 1.0)
        .collect();
    // The working tables carry b_0 = 1 with the true (often sub- or
    // super-representable) mass tracked separately in log space; it is
    // restored analytically in the front factor below.
    let far = !centers.is_empty() && centers.iter().all(|c| c.abs() > FAR_CENTER);
    let (mut t, mut log_mass) = if far {
        let mut t = base.truncated(m + a_cap)?;
        let lm = t.b[0].ln()
            + log_scale
            + centers.iter().map(|c| 2.0 * c.abs().ln()).sum::<f64>();
        t.b[0] = 1.0;
        (t, lm)
    } else {
        repeated_quadratic_log(&base, &centers, log_scale)?
    };
    let y0 = (3.0 - x) / (1.0 + x);
    for _ in 0..a_cap {
        if y0.abs() > FAR_CENTER {
            log_mass += y0.abs().ln();
        } else {
            t = linear_modification(&t, y0)?;
            // Keep the running mass in log space: hundreds of linear steps
            // (large |alpha|) would otherwise overflow b_0.
            log_mass += t.b[0].ln();
            t.b[0] = 1.0;
        }
    }
    let rule = gauss_rule(&t, m)?;
    let expo = alpha - a_cap as f64;
    let i_val: f64 = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&u, &w)| w * (2.0 - 0.5 * (u + 1.0) * (x + 1.0)).powf(expo))
        .sum();
    let log_front = log_mass + (beta + 1.0) * half.ln()
        - alpha * LN_2
        - (beta + 1.0).ln()
        - log_beta(beta + 1.0, alpha + 1.0);
    let mut modified_b = t.b[..=m].to_vec();
    modified_b[0] = (log_mass + t.b[0].ln()).exp();
    Ok((log_front.exp() * i_val, modified_b))
}

/// `F_n(x)` for the Jacobi measure with parameters `(alpha, beta)`, using an
/// `m`-point rule. Values for `x` past the approximate median are computed
/// through the reflection `F_n^{(a,b)}(x) = 1 - F_n^{(b,a)}(-x)`.
pub fn idist_jacobi(alpha: f64, beta: f64, n: usize, x: f64, m: usize) -> Result<f64> {
    Ok(idist_jacobi_with_bound(alpha, beta, n, x, m)?.0)
}

/// As [`idist_jacobi`], also returning the a-posteriori truncation bound for
/// the branch that was evaluated.
pub fn idist_jacobi_with_bound(
    alpha: f64,
    beta: f64,
    n: usize,
    x: f64,
    m: usize,
) -> Result<(f64, f64)> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    if x == -1.0 {
        return Ok((0.0, 0.0));
    }
    if x == 1.0 {
        return Ok((1.0, 0.0));
    }
    if m == 0 {
        return Err(Error::Domain("quadrature size must be positive".into()));
    }
    let x0 = jacobi_x0(alpha, beta, n);
    if x > x0 {
        let (zeros, lg) = jacobi_zeros_lg(beta, alpha, n)?;
        let (f, b) = jacobi_hat(beta, alpha, n, -x, m, &zeros, lg)?;
        let bound = jacobi_error_bound(beta, alpha, n, m, &b);
        Ok((1.0 - f, bound))
    } else {
        let (zeros, lg) = jacobi_zeros_lg(alpha, beta, n)?;
        let (f, b) = jacobi_hat(alpha, beta, n, x, m, &zeros, lg)?;
        let bound = jacobi_error_bound(alpha, beta, n, m, &b);
        Ok((f, bound))
    }
}

/// Truncation-error bound for the direct-branch Jacobi evaluation with an
/// `m`-point rule: `C * prod_{j=0}^{m} b_j` with the modified-measure
/// coefficients returned by the evaluation; computed in log space.
///
/// The constant comes from the Gauss-rule derivative remainder for the
/// integrand `(2 - (u+1)(x+1)/2)^(alpha - A)`: the base of that power ranges
/// down to `1 - x`, so its negative-exponent supremum is `(1 - x)^(alpha - A
/// - 2M)`, bounded here uniformly over the branch `x <= x0` by the value at
/// `x0`.
pub fn jacobi_error_bound(alpha: f64, beta: f64, n: usize, m: usize, modified_b: &[f64]) -> f64 {
    let a_cap = alpha.abs().floor();
    let x0 = jacobi_x0(alpha, beta, n);
    let log_c = (2.0 * m as f64 + beta + 1.0) * ((x0 + 1.0) / 2.0).ln()
        + (alpha - a_cap - 2.0 * m as f64) * (1.0 - x0).ln()
        - alpha * LN_2
        - (beta + 1.0).ln()
        - log_beta(beta + 1.0, alpha + 1.0);
    let log_prod: f64 = modified_b.iter().map(|b| b.ln()).sum();
    (log_c + log_prod).exp()
}

/// Left-branch approximation of `F_n(x)` for a half-line Freud measure,
/// given the zeros and leading coefficient of its `p_n`.
fn halffreud_hat(
    alpha: f64,
    rho: f64,
    n: usize,
    x: f64,
    m: usize,
    zeros: &[f64],
    log_gamma_n: f64,
) -> Result<f64> {
    let base = MeasureSpec::jacobi(0.0, rho)?.recurrence_table(m + 2 * n)?;
    let xh = x / 2.0;
    let log_scale = 2.0 * log_gamma_n + 2.0 * n as f64 * xh.ln();
    let centers: Vec<f64> = zeros.iter().map(|&z| 2.0 * z / x - 1.0).collect();
    let far = !centers.is_empty() && centers.iter().all(|c| c.abs() > FAR_CENTER);
    let (t, log_mass) = if far {
        let mut t = base.truncated(m)?;
        let lm = t.b[0].ln()
            + log_scale
            + centers.iter().map(|c| 2.0 * c.abs().ln()).sum::<f64>();
        t.b[0] = 1.0;
        (t, lm)
    } else {
        repeated_quadratic_log(&base, &centers, log_scale)?
    };
    let rule = gauss_rule(&t, m)?;
    let xha = xh.powf(alpha);
    let i_val: f64 = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&u, &w)| w * (-xha * (u + 1.0).powf(alpha)).exp())
        .sum();
    let log_front = log_mass
        + (rho + 1.0) * xh.ln()
        + MeasureSpec::jacobi(0.0, rho)?.log_normalization()?
        - MeasureSpec::half_line_freud(alpha, rho)?.log_normalization()?;
    Ok(log_front.exp() * i_val)
}

/// Complement-branch approximation of `F_n^c(x)` for a half-line Freud
/// measure.
fn halffreud_comp_hat(
    alpha: f64,
    rho: f64,
    n: usize,
    x: f64,
    m: usize,
    zeros: &[f64],
    log_gamma_n: f64,
) -> Result<f64> {
    let base = MeasureSpec::half_line_freud(alpha, 0.0)?.recurrence_table(m + 2 * n)?;
    let centers: Vec<f64> = zeros.iter().map(|&z| z - x).collect();
    let (t, log_mass) = repeated_quadratic_log(&base, &centers, 2.0 * log_gamma_n)?;
    let rule = gauss_rule(&t, m)?;
    // log-sum-exp over the integrand terms: the exponent
    // u^a + x^a - (u+x)^a is exactly 0 for a = 1 and harmlessly small
    // otherwise, but the weights can span hundreds of orders of magnitude.
    let terms: Vec<f64> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&u, &w)| {
            let mut v = w.ln() + u.powf(alpha) + x.powf(alpha) - (u + x).powf(alpha);
            if rho != 0.0 {
                v += rho * (u + x).ln();
            }
            v
        })
        .collect();
    let peak = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let i_log = peak + terms.iter().map(|t| (t - peak).exp()).sum::<f64>().ln();
    let log_val = log_mass - x.powf(alpha)
        + MeasureSpec::half_line_freud(alpha, 0.0)?.log_normalization()?
        - MeasureSpec::half_line_freud(alpha, rho)?.log_normalization()?
        + i_log;
    Ok(log_val.exp())
}

fn halffreud_zeros_lg(alpha: f64, rho: f64, n: usize) -> Result<(Vec<f64>, f64)> {
    let table = MeasureSpec::half_line_freud(alpha, rho)?.recurrence_table(n.max(1))?;
    let zeros = if n > 0 { poly_zeros(&table, n)? } else { vec![] };
    let lg = log_leading_coeff(&table, n)?;
    Ok((zeros, lg))
}

/// `F_n(x)` for a half-line Freud measure (left branch; prefer the
/// complement for `x` past the approximate median).
pub fn idist_halffreud(alpha: f64, rho: f64, n: usize, x: f64, m: usize) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::Domain(format!("x = {x} outside [0, inf)")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let (zeros, lg) = halffreud_zeros_lg(alpha, rho, n)?;
    halffreud_hat(alpha, rho, n, x, m, &zeros, lg)
}

/// `F_n^c(x) = 1 - F_n(x)` for a half-line Freud measure (right branch).
pub fn idist_halffreud_comp(alpha: f64, rho: f64, n: usize, x: f64, m: usize) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::Domain(format!("x = {x} outside [0, inf)")));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    let (zeros, lg) = halffreud_zeros_lg(alpha, rho, n)?;
    halffreud_comp_hat(alpha, rho, n, x, m, &zeros, lg)
}

/// `F_n(x)` for a Freud measure, reduced to the complement of a half-line
/// Freud distribution of half the order at `x^2`.
pub fn idist_freud(alpha: f64, rho: f64, n: usize, x: f64) -> Result<f64> {
    if x > 0.0 {
        return Ok(1.0 - idist_freud(alpha, rho, n, -x)?);
    }
    let (k, rho_half) = if n.is_multiple_of(2) {
        (n / 2, (rho - 1.0) / 2.0)
    } else {
        ((n - 1) / 2, (rho + 1.0) / 2.0)
    };
    let alpha_half = alpha / 2.0;
    let hf = MeasureSpec::half_line_freud(alpha_half, rho_half)?;
    let m = default_quad_size(&hf, k);
    let y = x * x;
    let comp = if y == 0.0 {
        1.0
    } else {
        let (zeros, lg) = halffreud_zeros_lg(alpha_half, rho_half, k)?;
        if y <= halffreud_x0(alpha_half, rho_half, k) {
            1.0 - halffreud_hat(alpha_half, rho_half, k, y, m, &zeros, lg)?
        } else {
            halffreud_comp_hat(alpha_half, rho_half, k, y, m, &zeros, lg)?
        }
    };
    Ok(0.5 * comp)
}

// Family-specific cached state for repeated evaluation.
#[derive(Debug)]
enum Prepared {
    Jacobi {
        alpha: f64,
        beta: f64,
        zeros: Vec<f64>,
        zeros_flip: Vec<f64>,
        log_gamma_n: f64,
    },
    HalfFreud {
        alpha: f64,
        rho: f64,
        zeros: Vec<f64>,
        log_gamma_n: f64,
    },
    Freud {
        alpha_half: f64,
        rho_half: f64,
        k: usize,
        zeros_half: Vec<f64>,
        log_gamma_half: f64,
        x0_half: f64,
    },
}

/// A `(measure, order)` pair with cached zeros, leading coefficient, median
/// approximation, and inversion state.
#[derive(Debug)]
pub struct InducedDistribution {
    spec: MeasureSpec,
    n: usize,
    x0: f64,
    quad: usize,
    prep: Prepared,
    pub(crate) inverse_cache: OnceLock<QuadratureRule>,
}

impl InducedDistribution {
    /// Builds the distribution with the family's default quadrature size.
    pub fn new(spec: MeasureSpec, n: usize) -> Result<Self> {
        let quad = default_quad_size(&spec, n);
        Self::with_quad_size(spec, n, quad)
    }

    /// Builds the distribution with an explicit quadrature size `m`.
    pub fn with_quad_size(spec: MeasureSpec, n: usize, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("quadrature size must be positive".into()));
        }
        let prep = match spec {
            MeasureSpec::Jacobi { alpha, beta } => {
                let (zeros, log_gamma_n) = jacobi_zeros_lg(alpha, beta, n)?;
                let zeros_flip: Vec<f64> = zeros.iter().rev().map(|z| -z).collect();
                Prepared::Jacobi { alpha, beta, zeros, zeros_flip, log_gamma_n }
            }
            MeasureSpec::HalfLineFreud { alpha, rho } => {
                if alpha != 1.0 {
                    return Err(Error::UnsupportedMeasure(format!(
                        "evaluation requires closed-form coefficients; \
                         half-line Freud alpha = {alpha} is not built in"
                    )));
                }
                let (zeros, log_gamma_n) = halffreud_zeros_lg(alpha, rho, n)?;
                Prepared::HalfFreud { alpha, rho, zeros, log_gamma_n }
            }
            MeasureSpec::Freud { alpha, rho } => {
                if alpha != 2.0 {
                    return Err(Error::UnsupportedMeasure(format!(
                        "evaluation requires closed-form coefficients; \
                         Freud alpha = {alpha} is not built in"
                    )));
                }
                let (k, rho_half) = if n.is_multiple_of(2) {
                    (n / 2, (rho - 1.0) / 2.0)
                } else {
                    ((n - 1) / 2, (rho + 1.0) / 2.0)
                };
                let (zeros_half, log_gamma_half) = halffreud_zeros_lg(1.0, rho_half, k)?;
                Prepared::Freud {
                    alpha_half: 1.0,
                    rho_half,
                    k,
                    zeros_half,
                    log_gamma_half,
                    x0_half: halffreud_x0(1.0, rho_half, k),
                }
            }
            MeasureSpec::Custom { .. } => {
                return Err(Error::UnsupportedMeasure(
                    "custom tables carry no density; distribution evaluation \
                     is defined for the built-in families"
                        .into(),
                ));
            }
        };
        let x0 = approx_median(&spec, n)?;
        Ok(Self {
            spec,
            n,
            x0,
            quad: m,
            prep,
            inverse_cache: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &MeasureSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn quad_size(&self) -> usize {
        self.quad
    }

    /// Approximate median used as the branch split point.
    pub fn median_estimate(&self) -> f64 {
        self.x0
    }

    pub fn support(&self) -> (f64, f64) {
        self.spec.support()
    }

    /// `F_n(x)`, clamped into `[0, 1]`. Exactly 0 and 1 at the support
    /// endpoints.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.spec.support();
        if !(x >= lo && x <= hi) {
            return Err(Error::Domain(format!(
                "x = {x} outside the support [{lo}, {hi}]"
            )));
        }
        if x == lo {
            return Ok(0.0);
        }
        if x == hi {
            return Ok(1.0);
        }
        let raw = self.eval_raw(x)?;
        if !(-1e-8..=1.0 + 1e-8).contains(&raw) {
            log::warn!(
                "induced distribution value {raw} at x = {x} (order {}) left [0, 1] \
                 beyond tolerance; clamping",
                self.n
            );
        }
        Ok(raw.clamp(0.0, 1.0))
    }

    fn eval_raw(&self, x: f64) -> Result<f64> {
        let n = self.n;
        let m = self.quad;
        match &self.prep {
            Prepared::Jacobi { alpha, beta, zeros, zeros_flip, log_gamma_n } => {
                if x > self.x0 {
                    let (f, _) =
                        jacobi_hat(*beta, *alpha, n, -x, m, zeros_flip, *log_gamma_n)?;
                    Ok(1.0 - f)
                } else {
                    let (f, _) = jacobi_hat(*alpha, *beta, n, x, m, zeros, *log_gamma_n)?;
                    Ok(f)
                }
            }
            Prepared::HalfFreud { alpha, rho, zeros, log_gamma_n } => {
                if x <= self.x0 {
                    halffreud_hat(*alpha, *rho, n, x, m, zeros, *log_gamma_n)
                } else {
                    Ok(1.0 - halffreud_comp_hat(*alpha, *rho, n, x, m, zeros, *log_gamma_n)?)
                }
            }
            Prepared::Freud {
                alpha_half,
                rho_half,
                k,
                zeros_half,
                log_gamma_half,
                x0_half,
            } => {
                let xa = x.min(-x); // evaluate on the left half, reflect after
                let y = xa * xa;
                let comp = if y == 0.0 {
                    1.0
                } else if y <= *x0_half {
                    1.0 - halffreud_hat(
                        *alpha_half,
                        *rho_half,
                        *k,
                        y,
                        m,
                        zeros_half,
                        *log_gamma_half,
                    )?
                } else {
                    halffreud_comp_hat(
                        *alpha_half,
                        *rho_half,
                        *k,
                        y,
                        m,
                        zeros_half,
                        *log_gamma_half,
                    )?
                };
                Ok(if x <= 0.0 { 0.5 * comp } else { 1.0 - 0.5 * comp })
            }
        }
    }
}
