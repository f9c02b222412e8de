//! Three-term recurrence machinery: polynomial evaluation, overflow-safe
//! auxiliary recurrences, Gauss quadrature via the Jacobi matrix, zeros,
//! and leading coefficients.
//!
//! Convention: orthonormal polynomials with `p_0 = 1/sqrt(b_0)` and
//! `x p_n = sqrt(b_n) p_{n-1} + a_n p_n + sqrt(b_{n+1}) p_{n+1}`, where `b_0`
//! is the total mass of the measure (1 for probability measures). The leading
//! coefficient is `gamma_n = prod_{j=0}^n b_j^{-1/2}`.

use crate::error::{Error, Result};

/// Recurrence coefficients `(a_0..a_N, b_0..b_N)` of an orthonormal family.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl RecurrenceTable {
    /// Validates and wraps coefficient arrays.
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidTable(format!(
                "length mismatch: {} offsets vs {} norms",
                a.len(),
                b.len()
            )));
        }
        if a.is_empty() {
            return Err(Error::InvalidTable("empty table".into()));
        }
        for (j, (&aj, &bj)) in a.iter().zip(&b).enumerate() {
            if !aj.is_finite() {
                return Err(Error::InvalidTable(format!("a[{j}] = {aj} not finite")));
            }
            if !(bj > 0.0) || !bj.is_finite() {
                return Err(Error::InvalidTable(format!("b[{j}] = {bj} not positive finite")));
            }
        }
        Ok(Self { a, b })
    }

    /// Number of stored coefficient pairs (indices 0..len-1).
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Total mass of the underlying measure.
    pub fn mass(&self) -> f64 {
        self.b[0]
    }

    /// Copy of the first `n+1` coefficient pairs.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        self.require(n + 1)?;
        Ok(Self {
            a: self.a[..=n].to_vec(),
            b: self.b[..=n].to_vec(),
        })
    }

    fn require(&self, needed: usize) -> Result<()> {
        if self.len() < needed {
            Err(Error::InsufficientCoefficients {
                needed,
                available: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

/// Gauss quadrature nodes and weights.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// Applies the rule to `f`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Values `p_0(x)..p_n(x)` by direct application of the recurrence.
///
/// Overflows to infinity for large degree far outside the support; use
/// [`normalized_seq`] + [`reconstruct_log`] in that regime.
pub fn eval_poly(table: &RecurrenceTable, x: f64, n: usize) -> Result<Vec<f64>> {
    table.require(n + 1)?;
    let mut p = Vec::with_capacity(n + 1);
    p.push(1.0 / table.b[0].sqrt());
    if n >= 1 {
        p.push((x - table.a[0]) * p[0] / table.b[1].sqrt());
    }
    for j in 1..n {
        let next = ((x - table.a[j]) * p[j] - table.b[j].sqrt() * p[j - 1])
            / table.b[j + 1].sqrt();
        p.push(next);
    }
    Ok(p)
}

/// Ratios `r_j(x) = p_j(x)/p_{j-1}(x)` for `j = 1..n`.
///
/// Valid only for `x` strictly outside the convex hull of the zeros of the
/// polynomials involved: there every ratio has the same sign (all positive to
/// the right of the support, all negative to the left). A mixed-sign or zero
/// ratio therefore signals an in-hull argument and is rejected.
pub fn ratio_seq(table: &RecurrenceTable, x: f64, n: usize) -> Result<Vec<f64>> {
    table.require(n + 1)?;
    let mut r = Vec::with_capacity(n);
    if n == 0 {
        return Ok(r);
    }
    r.push((x - table.a[0]) / table.b[1].sqrt());
    for j in 2..=n {
        let prev = r[j - 2];
        r.push((x - table.a[j - 1] - table.b[j - 1].sqrt() / prev) / table.b[j].sqrt());
    }
    let all_pos = r.iter().all(|&v| v > 0.0);
    let all_neg = r.iter().all(|&v| v < 0.0);
    if !(all_pos || all_neg) || r.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(format!(
            "ratio sequence at x = {x} lost sign coherence: x lies inside the zero hull"
        )));
    }
    Ok(r)
}

/// Normalized values `C_j(x) = p_j(x) / sqrt(sum_{k<j} p_k(x)^2)`, `j = 0..n`,
/// with `C_0 = 1/sqrt(b_0)`. Finite for every real `x`, any degree.
pub fn normalized_seq(table: &RecurrenceTable, x: f64, n: usize) -> Result<Vec<f64>> {
    table.require(n + 1)?;
    let mut c = Vec::with_capacity(n + 1);
    c.push(1.0 / table.b[0].sqrt());
    if n >= 1 {
        c.push((x - table.a[0]) / table.b[1].sqrt());
    }
    if n >= 2 {
        let c1 = c[1];
        c.push(((x - table.a[1]) * c1 - table.b[1].sqrt())
            / (table.b[2].sqrt() * (1.0 + c1 * c1).sqrt()));
    }
    for j in 2..n {
        let (cm, cj) = (c[j - 1], c[j]);
        let next = ((x - table.a[j]) * cj
            - table.b[j].sqrt() * cm / (1.0 + cm * cm).sqrt())
            / (table.b[j + 1].sqrt() * (1.0 + cj * cj).sqrt());
        c.push(next);
    }
    Ok(c)
}

/// Rebuilds `p_n(x)` from the output of [`normalized_seq`]:
/// `p_n = C_0 C_n prod_{j=1}^{n-1} sqrt(1 + C_j^2)`.
pub fn reconstruct_poly(c_values: &[f64]) -> f64 {
    let (log_abs, sign) = reconstruct_log(c_values);
    sign * log_abs.exp()
}

/// Log-magnitude/sign form of [`reconstruct_poly`]; `log_abs` is `-inf` when
/// `p_n(x) = 0`. Never overflows.
pub fn reconstruct_log(c_values: &[f64]) -> (f64, f64) {
    let n = c_values.len() - 1;
    let c0 = c_values[0];
    if n == 0 {
        return (c0.ln(), 1.0);
    }
    let cn = c_values[n];
    let mut log_abs = c0.ln() + cn.abs().ln();
    for &cj in &c_values[1..n] {
        log_abs += 0.5 * (1.0 + cj * cj).ln();
    }
    (log_abs, if cn < 0.0 { -1.0 } else { 1.0 })
}

/// `log gamma_n = -(1/2) sum_{j=0}^n log b_j`.
pub fn log_leading_coeff(table: &RecurrenceTable, n: usize) -> Result<f64> {
    table.require(n + 1)?;
    Ok(-0.5 * table.b[..=n].iter().map(|b| b.ln()).sum::<f64>())
}

/// N-point Gauss rule: eigen-decomposition of the symmetric tridiagonal
/// Jacobi matrix (Golub-Welsch), weights `b_0 z_k^2` from the first
/// eigenvector components.
pub fn gauss_rule(table: &RecurrenceTable, n_points: usize) -> Result<QuadratureRule> {
    if n_points == 0 {
        return Err(Error::Domain("gauss rule needs at least one point".into()));
    }
    table.require(n_points)?;
    let mut d: Vec<f64> = table.a[..n_points].to_vec();
    // e[i] couples d[i] and d[i+1]; last slot stays zero.
    let mut e: Vec<f64> = (1..n_points).map(|j| table.b[j].sqrt()).collect();
    e.push(0.0);
    let mut z = vec![0.0; n_points];
    z[0] = 1.0;
    symtrid_eig(&mut d, &mut e, &mut z)?;

    let mut order: Vec<usize> = (0..n_points).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let nodes: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let weights: Vec<f64> = order.iter().map(|&i| table.b[0] * z[i] * z[i]).collect();

    // Weights are b_0 z^2 and hence nonnegative by construction; extreme
    // nodes of large rules for fast-decaying measures can legitimately
    // underflow to +0, so only NaN (a broken eigensolve) is rejected.
    for w in &weights {
        if !(*w >= 0.0) {
            return Err(Error::Numeric(format!(
                "invalid Gauss weight {w} in {n_points}-point rule"
            )));
        }
    }
    for pair in nodes.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Error::Numeric(format!(
                "Gauss nodes not strictly increasing near {}",
                pair[0]
            )));
        }
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Zeros of `p_n`, i.e. the nodes of the n-point Gauss rule.
pub fn poly_zeros(table: &RecurrenceTable, n: usize) -> Result<Vec<f64>> {
    Ok(gauss_rule(table, n)?.nodes)
}

// Implicit-shift QL on a symmetric tridiagonal matrix, accumulating the first
// eigenvector component of each eigenvalue in z. d = diagonal, e = subdiagonal
// (e[n-1] unused). Eigenvalues land in d unordered.
fn symtrid_eig(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    const MAX_SWEEPS: usize = 50;
    let eps = f64::EPSILON;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            // Look for a negligible subdiagonal element splitting the matrix.
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::EigenNonConvergence {
                    index: l,
                    sweeps: MAX_SWEEPS,
                });
            }
            // Wilkinson shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Rotation annihilated prematurely; recover and restart.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
