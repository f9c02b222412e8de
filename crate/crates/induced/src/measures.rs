//! Measure families and their recurrence coefficients.
//!
//! Built-in families (parameter ranges enforced at construction):
//!
//! * Jacobi: `(1-x)^alpha (1+x)^beta / c_J` on `[-1, 1]`, `alpha, beta > -1`.
//! * Half-line Freud: `x^rho exp(-x^alpha) / c_HF` on `[0, inf)`,
//!   `alpha > 1/2`, `rho > -1`.
//! * Freud: `|x|^rho exp(-|x|^alpha) / c_F` on the real line, `alpha > 1`,
//!   `rho > -1`.
//!
//! Closed-form recurrence coefficients exist here for Jacobi (all
//! parameters), half-line Freud with `alpha = 1` (generalized Laguerre), and
//! Freud with `alpha = 2` (generalized Hermite, produced by coefficient
//! interleaving from Laguerre). Other parameters require a user-supplied
//! coefficient table (`Custom`), since their coefficients have no closed form
//! and computing them reliably needs variable-precision software.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::recurrence::RecurrenceTable;
use crate::special::log_gamma;

/// A univariate measure: one of the built-in families or a custom table.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    Jacobi { alpha: f64, beta: f64 },
    HalfLineFreud { alpha: f64, rho: f64 },
    Freud { alpha: f64, rho: f64 },
    Custom { support: (f64, f64), table: RecurrenceTable },
}

impl MeasureSpec {
    /// Jacobi measure, `alpha, beta > -1`.
    pub fn jacobi(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Domain(format!(
                "Jacobi parameters must satisfy alpha, beta > -1; got ({alpha}, {beta})"
            )));
        }
        Ok(Self::Jacobi { alpha, beta })
    }

    /// Half-line Freud measure, `alpha > 1/2`, `rho > -1`.
    pub fn half_line_freud(alpha: f64, rho: f64) -> Result<Self> {
        if !(alpha > 0.5) || !(rho > -1.0) || !alpha.is_finite() || !rho.is_finite() {
            return Err(Error::Domain(format!(
                "half-line Freud parameters must satisfy alpha > 1/2, rho > -1; got ({alpha}, {rho})"
            )));
        }
        Ok(Self::HalfLineFreud { alpha, rho })
    }

    /// Freud measure, `alpha > 1`, `rho > -1`.
    pub fn freud(alpha: f64, rho: f64) -> Result<Self> {
        if !(alpha > 1.0) || !(rho > -1.0) || !alpha.is_finite() || !rho.is_finite() {
            return Err(Error::Domain(format!(
                "Freud parameters must satisfy alpha > 1, rho > -1; got ({alpha}, {rho})"
            )));
        }
        Ok(Self::Freud { alpha, rho })
    }

    /// Custom measure given by a coefficient table and explicit support.
    pub fn custom(support: (f64, f64), table: RecurrenceTable) -> Result<Self> {
        if !(support.0 < support.1) {
            return Err(Error::Domain(format!(
                "custom support must have lower < upper; got ({}, {})",
                support.0, support.1
            )));
        }
        Ok(Self::Custom { support, table })
    }

    /// Support endpoints, possibly infinite.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Self::Jacobi { .. } => (-1.0, 1.0),
            Self::HalfLineFreud { .. } => (0.0, f64::INFINITY),
            Self::Freud { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            Self::Custom { support, .. } => *support,
        }
    }

    /// Log of the normalization constant making the density a probability
    /// density (c_J, c_HF, c_F).
    pub fn log_normalization(&self) -> Result<f64> {
        match *self {
            Self::Jacobi { alpha, beta } => Ok((alpha + beta + 1.0) * 2f64.ln()
                + log_gamma(beta + 1.0)
                + log_gamma(alpha + 1.0)
                - log_gamma(alpha + beta + 2.0)),
            Self::HalfLineFreud { alpha, rho } => {
                Ok(log_gamma((rho + 1.0) / alpha) - alpha.ln())
            }
            Self::Freud { alpha, rho } => {
                Ok(2f64.ln() + log_gamma((rho + 1.0) / alpha) - alpha.ln())
            }
            Self::Custom { .. } => Err(Error::UnsupportedMeasure(
                "custom tables carry no density normalization".into(),
            )),
        }
    }

    /// Normalization constant as `(log value, plain value)`.
    pub fn normalization_constant(&self) -> Result<(f64, f64)> {
        let l = self.log_normalization()?;
        Ok((l, l.exp()))
    }

    /// Recurrence table with coefficients for indices `0..=n_max`, normalized
    /// to unit mass (`b_0 = 1`) for the built-in families.
    pub fn recurrence_table(&self, n_max: usize) -> Result<RecurrenceTable> {
        match self {
            Self::Jacobi { alpha, beta } => jacobi_table(*alpha, *beta, n_max),
            Self::HalfLineFreud { alpha, rho } => {
                if *alpha == 1.0 {
                    Ok(laguerre_table(*rho, n_max))
                } else {
                    Err(Error::UnsupportedMeasure(format!(
                        "no closed-form coefficients for half-line Freud alpha = {alpha}; \
                         supply a custom coefficient table"
                    )))
                }
            }
            Self::Freud { alpha, rho } => {
                if *alpha == 2.0 {
                    gen_hermite_table(*rho, n_max)
                } else {
                    Err(Error::UnsupportedMeasure(format!(
                        "no closed-form coefficients for Freud alpha = {alpha}; \
                         supply a custom coefficient table"
                    )))
                }
            }
            Self::Custom { table, .. } => table.truncated(n_max),
        }
    }
}

/// Normalized Jacobi recurrence coefficients for indices `0..=n_max`.
fn jacobi_table(alpha: f64, beta: f64, n_max: usize) -> Result<RecurrenceTable> {
    let (al, be) = (alpha, beta);
    let mut a = Vec::with_capacity(n_max + 1);
    let mut b = Vec::with_capacity(n_max + 1);
    a.push((be - al) / (al + be + 2.0));
    b.push(1.0);
    if n_max >= 1 {
        a.push((be * be - al * al)
            / ((2.0 + al + be) * (4.0 + al + be)));
        // Explicit form: the generic formula has a removable 0/0 at
        // alpha + beta + 1 = 0 when n = 1.
        b.push(4.0 * (al + 1.0) * (be + 1.0)
            / ((al + be + 2.0).powi(2) * (al + be + 3.0)));
    }
    for n in 2..=n_max {
        let nf = n as f64;
        let s = 2.0 * nf + al + be;
        a.push((be * be - al * al) / (s * (s + 2.0)));
        b.push(4.0 * nf * (nf + al) * (nf + be) * (nf + al + be)
            / (s * s * (s + 1.0) * (s - 1.0)));
    }
    RecurrenceTable::new(a, b)
}

/// Generalized Laguerre coefficients (half-line Freud, `alpha = 1`):
/// `a_n = 2n + rho + 1`, `b_n = n(n + rho)`, `b_0 = 1`.
fn laguerre_table(rho: f64, n_max: usize) -> RecurrenceTable {
    let a: Vec<f64> = (0..=n_max).map(|n| 2.0 * n as f64 + rho + 1.0).collect();
    let b: Vec<f64> = (0..=n_max)
        .map(|n| if n == 0 { 1.0 } else { n as f64 * (n as f64 + rho) })
        .collect();
    RecurrenceTable { a, b }
}

/// Generalized Hermite coefficients (Freud, `alpha = 2`) by interleaving the
/// Laguerre table with parameter `(rho - 1)/2`.
fn gen_hermite_table(rho: f64, n_max: usize) -> Result<RecurrenceTable> {
    let star = laguerre_table((rho - 1.0) / 2.0, n_max / 2 + 1);
    let full = freud_from_halfline(&star)?;
    full.truncated(n_max)
}

/// Splits the coefficients of an even (symmetric) measure `nu` on the real
/// line into the two half-line tables obtained by the substitution
/// `t = x^2`: `table_star` generates the polynomials with
/// `p_{2n}(x) = p_{*,n}(x^2)` and `table_starstar` those with
/// `p_{2n+1}(x) = h x p_{**,n}(x^2)`.
pub fn halfline_from_freud(
    freud_table: &RecurrenceTable,
) -> Result<(RecurrenceTable, RecurrenceTable)> {
    if freud_table.a.iter().any(|&aj| aj != 0.0) {
        return Err(Error::Domain(
            "half-line split requires an even measure (all a_j = 0)".into(),
        ));
    }
    let b = &freud_table.b;
    let len = b.len();
    if len < 2 {
        return Err(Error::InsufficientCoefficients { needed: 2, available: len });
    }
    let star_len = len / 2;
    let mut a_star = Vec::with_capacity(star_len);
    let mut b_star = Vec::with_capacity(star_len);
    a_star.push(b[1]);
    b_star.push(b[0]);
    for n in 1..star_len {
        a_star.push(b[2 * n] + b[2 * n + 1]);
        b_star.push(b[2 * n] * b[2 * n - 1]);
    }
    let ss_len = (len - 1) / 2;
    let mut a_ss = Vec::with_capacity(ss_len);
    let mut b_ss = Vec::with_capacity(ss_len);
    if ss_len >= 1 {
        a_ss.push(b[1] + b[2]);
        b_ss.push(b[0]);
    }
    for n in 1..ss_len {
        a_ss.push(b[2 * n + 1] + b[2 * n + 2]);
        b_ss.push(b[2 * n + 1] * b[2 * n]);
    }
    Ok((
        RecurrenceTable::new(a_star, b_star)?,
        RecurrenceTable::new(a_ss, b_ss)?,
    ))
}

/// Inverse of the star branch of [`halfline_from_freud`]: rebuilds the even
/// measure's coefficients from its half-line image.
pub fn freud_from_halfline(table_star: &RecurrenceTable) -> Result<RecurrenceTable> {
    let m = table_star.len();
    let mut b = Vec::with_capacity(2 * m);
    b.push(table_star.b[0]);
    b.push(table_star.a[0]);
    if !(b[1] > 0.0) {
        return Err(Error::InconsistentCoefficients(format!(
            "a_star[0] = {} must be positive",
            b[1]
        )));
    }
    for n in 1..m {
        let b2n = table_star.b[n] / b[2 * n - 1];
        let b2n1 = table_star.a[n] - b2n;
        if !(b2n > 0.0) || !(b2n1 > 0.0) {
            return Err(Error::InconsistentCoefficients(format!(
                "interleaving produced non-positive b at index {}: ({b2n}, {b2n1})",
                2 * n
            )));
        }
        b.push(b2n);
        b.push(b2n1);
    }
    let a = vec![0.0; b.len()];
    RecurrenceTable::new(a, b)
}

/// The squared odd/even linking constant for a Freud weight:
/// `h^2 = Gamma((rho+1)/alpha) / Gamma((rho+3)/alpha)`.
pub fn h_squared(alpha: f64, rho: f64) -> f64 {
    (log_gamma((rho + 1.0) / alpha) - log_gamma((rho + 3.0) / alpha)).exp()
}

const TABLE_HEADER: &str = "# induced-table v1 support=";

/// Renders a coefficient table with explicit support bounds.
///
/// Format: header line `# induced-table v1 support=<lo>,<hi>`, then one
/// `n,a_n,b_n` row per index, floats with 17 significant digits (round-trip
/// exact).
pub fn format_table(table: &RecurrenceTable, support: (f64, f64)) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{TABLE_HEADER}{},{}",
        fmt_support(support.0),
        fmt_support(support.1)
    );
    for (n, (&a, &b)) in table.a.iter().zip(&table.b).enumerate() {
        let _ = writeln!(out, "{n},{a:.16e},{b:.16e}");
    }
    out
}

/// Writes [`format_table`] output to a file.
pub fn save_table(table: &RecurrenceTable, support: (f64, f64), path: &Path) -> Result<()> {
    std::fs::write(path, format_table(table, support))?;
    Ok(())
}

fn fmt_support(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v:.16e}")
    }
}

/// Reads a coefficient table written by [`save_table`] into a custom measure.
pub fn load_table(path: &Path) -> Result<MeasureSpec> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    let rest = header.strip_prefix(TABLE_HEADER).ok_or_else(|| Error::Parse {
        line: 1,
        message: format!("expected header starting with `{TABLE_HEADER}`"),
    })?;
    let mut parts = rest.trim().splitn(2, ',');
    let lo = parse_support(parts.next().unwrap_or(""), 1)?;
    let hi = parse_support(parts.next().unwrap_or(""), 1)?;

    let mut a = Vec::new();
    let mut b = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected 3 comma-separated fields, found {}", fields.len()),
            });
        }
        let n: usize = fields[0].trim().parse().map_err(|e| Error::Parse {
            line: lineno,
            message: format!("bad index `{}`: {e}", fields[0]),
        })?;
        if n != a.len() {
            return Err(Error::Parse {
                line: lineno,
                message: format!("non-consecutive index {n}, expected {}", a.len()),
            });
        }
        let an: f64 = fields[1].trim().parse().map_err(|e| Error::Parse {
            line: lineno,
            message: format!("bad a value `{}`: {e}", fields[1]),
        })?;
        let bn: f64 = fields[2].trim().parse().map_err(|e| Error::Parse {
            line: lineno,
            message: format!("bad b value `{}`: {e}", fields[2]),
        })?;
        if !(bn > 0.0) || !bn.is_finite() || !an.is_finite() {
            return Err(Error::Parse {
                line: lineno,
                message: format!("invalid coefficients a = {an}, b = {bn}"),
            });
        }
        a.push(an);
        b.push(bn);
    }
    let table = RecurrenceTable::new(a, b).map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    MeasureSpec::custom((lo, hi), table)
}

fn parse_support(token: &str, line: usize) -> Result<f64> {
    match token.trim() {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        t => t.parse().map_err(|e| Error::Parse {
            line,
            message: format!("bad support bound `{t}`: {e}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{eval_poly, gauss_rule};

    #[test]
    fn parameter_validation() {
        assert!(MeasureSpec::jacobi(-1.0, 0.0).is_err());
        assert!(MeasureSpec::jacobi(0.0, -1.5).is_err());
        assert!(MeasureSpec::half_line_freud(0.5, 0.0).is_err());
        assert!(MeasureSpec::freud(1.0, 0.0).is_err());
        assert!(MeasureSpec::freud(2.0, -0.5).is_ok());
    }

    #[test]
    fn normalization_constants() {
        let (_, c) = MeasureSpec::jacobi(0.0, 0.0)
            .unwrap()
            .normalization_constant()
            .unwrap();
        assert!((c - 2.0).abs() < 1e-14);
        let (_, c) = MeasureSpec::half_line_freud(1.0, 0.0)
            .unwrap()
            .normalization_constant()
            .unwrap();
        assert!((c - 1.0).abs() < 1e-14);
        let (_, c) = MeasureSpec::freud(2.0, 0.0)
            .unwrap()
            .normalization_constant()
            .unwrap();
        assert!((c - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn legendre_coefficients() {
        let t = MeasureSpec::jacobi(0.0, 0.0).unwrap().recurrence_table(2).unwrap();
        assert!(t.a.iter().all(|&a| a.abs() < 1e-15));
        assert!((t.b[0] - 1.0).abs() < 1e-15);
        assert!((t.b[1] - 1.0 / 3.0).abs() < 1e-15);
        assert!((t.b[2] - 4.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_singular_case_b1() {
        // alpha + beta + 1 = 0: the generic b_n formula is 0/0 at n = 1.
        let t = MeasureSpec::jacobi(-0.5, -0.5).unwrap().recurrence_table(3).unwrap();
        // Chebyshev (first kind): b_1 = 1/2, b_n = 1/4 thereafter.
        assert!((t.b[1] - 0.5).abs() < 1e-14);
        assert!((t.b[2] - 0.25).abs() < 1e-14);
        assert!((t.b[3] - 0.25).abs() < 1e-14);
        assert!(t.b[1].is_finite());
    }

    #[test]
    fn laguerre_coefficients() {
        let t = MeasureSpec::half_line_freud(1.0, 0.0)
            .unwrap()
            .recurrence_table(2)
            .unwrap();
        assert_eq!(t.a, vec![1.0, 3.0, 5.0]);
        assert_eq!(t.b, vec![1.0, 1.0, 4.0]);
    }

    #[test]
    fn hermite_coefficients() {
        let t = MeasureSpec::freud(2.0, 0.0).unwrap().recurrence_table(4).unwrap();
        assert!(t.a.iter().all(|&a| a == 0.0));
        for n in 1..=4 {
            assert!(
                (t.b[n] - n as f64 / 2.0).abs() < 1e-14,
                "b[{n}] = {}",
                t.b[n]
            );
        }
        assert_eq!(t.b[0], 1.0);
    }

    #[test]
    fn unsupported_parameters_rejected() {
        let hf = MeasureSpec::half_line_freud(1.5, 0.0).unwrap();
        assert!(matches!(
            hf.recurrence_table(5),
            Err(Error::UnsupportedMeasure(_))
        ));
        let f = MeasureSpec::freud(3.0, 0.0).unwrap();
        assert!(matches!(
            f.recurrence_table(5),
            Err(Error::UnsupportedMeasure(_))
        ));
    }

    #[test]
    fn halfline_split_of_hermite() {
        let hermite = MeasureSpec::freud(2.0, 0.0).unwrap().recurrence_table(11).unwrap();
        let (star, ss) = halfline_from_freud(&hermite).unwrap();
        // Star branch: Laguerre(rho = -1/2).
        assert!((star.a[0] - 0.5).abs() < 1e-15);
        assert!((star.b[0] - 1.0).abs() < 1e-15);
        assert!((star.a[1] - 2.5).abs() < 1e-14);
        assert!((star.b[1] - 0.5).abs() < 1e-14);
        for n in 1..star.len() {
            let nf = n as f64;
            assert!((star.a[n] - (2.0 * nf + 0.5)).abs() < 1e-13);
            assert!((star.b[n] - nf * (nf - 0.5)).abs() < 1e-13);
        }
        // Starstar branch: Laguerre(rho = 1/2).
        for n in 0..ss.len() {
            let nf = n as f64;
            assert!((ss.a[n] - (2.0 * nf + 1.5)).abs() < 1e-13);
            if n > 0 {
                assert!((ss.b[n] - nf * (nf + 0.5)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn halfline_split_of_gen_hermite() {
        let gh = MeasureSpec::freud(2.0, 1.0).unwrap().recurrence_table(13).unwrap();
        let (star, ss) = halfline_from_freud(&gh).unwrap();
        // rho_star = 0, rho_starstar = 1.
        for n in 0..star.len() {
            let nf = n as f64;
            assert!((star.a[n] - (2.0 * nf + 1.0)).abs() < 1e-13);
            if n > 0 {
                assert!((star.b[n] - nf * nf).abs() < 1e-13);
            }
        }
        for n in 0..ss.len() {
            let nf = n as f64;
            assert!((ss.a[n] - (2.0 * nf + 2.0)).abs() < 1e-13);
            if n > 0 {
                assert!((ss.b[n] - nf * (nf + 1.0)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn interleaving_round_trip() {
        let hermite = MeasureSpec::freud(2.0, 0.4).unwrap().recurrence_table(40).unwrap();
        let (star, _) = halfline_from_freud(&hermite).unwrap();
        let back = freud_from_halfline(&star).unwrap();
        for n in 0..back.len().min(hermite.len()) {
            assert!(
                (back.b[n] - hermite.b[n]).abs() < 1e-14 * hermite.b[n].max(1.0),
                "b[{n}]"
            );
        }
    }

    #[test]
    fn interleaving_rejects_bad_input() {
        let asym = RecurrenceTable::new(vec![1.0, 0.0], vec![1.0, 0.5]).unwrap();
        assert!(halfline_from_freud(&asym).is_err());
        // a_star values too small force a negative induced odd coefficient.
        let bad = RecurrenceTable::new(vec![0.5, 0.1], vec![1.0, 3.0]).unwrap();
        assert!(matches!(
            freud_from_halfline(&bad),
            Err(Error::InconsistentCoefficients(_))
        ));
    }

    #[test]
    fn h_squared_values() {
        assert!((h_squared(2.0, 0.0) - 2.0).abs() < 1e-14);
        assert!((h_squared(2.0, 1.0) - 1.0).abs() < 1e-14);
        let direct = (log_gamma(0.375) - log_gamma(0.875)).exp();
        assert!((h_squared(4.0, 0.5) - direct).abs() < 1e-14 * direct);
    }

    #[test]
    fn odd_even_polynomial_link() {
        // p_{2n}(x) = p_{*,n}(x^2) and p_{2n+1}(x) = h x p_{**,n}(x^2)
        // for the Freud(2, rho) family.
        for rho in [0.0, 1.3] {
            let full = MeasureSpec::freud(2.0, rho).unwrap().recurrence_table(33).unwrap();
            let (star, ss) = halfline_from_freud(&full).unwrap();
            let h = h_squared(2.0, rho).sqrt();
            for &x in &[0.35, 1.2, -2.4, 3.0] {
                let p = eval_poly(&full, x, 31).unwrap();
                let ps = eval_poly(&star, x * x, 15).unwrap();
                let pss = eval_poly(&ss, x * x, 15).unwrap();
                for n in 0..=15 {
                    let even = p[2 * n];
                    assert!(
                        (even - ps[n]).abs() < 1e-11 * ps[n].abs().max(1.0),
                        "even rho={rho} x={x} n={n}: {even} vs {}",
                        ps[n]
                    );
                    let odd = p[2 * n + 1];
                    let link = h * x * pss[n];
                    assert!(
                        (odd - link).abs() < 1e-11 * link.abs().max(1.0),
                        "odd rho={rho} x={x} n={n}: {odd} vs {link}"
                    );
                }
            }
        }
    }

    #[test]
    fn builtin_tables_have_unit_mass_quadrature() {
        for spec in [
            MeasureSpec::jacobi(1.0, 2.0).unwrap(),
            MeasureSpec::half_line_freud(1.0, 0.5).unwrap(),
            MeasureSpec::freud(2.0, 1.5).unwrap(),
        ] {
            let t = spec.recurrence_table(12).unwrap();
            assert_eq!(t.b[0], 1.0);
            let q = gauss_rule(&t, 12).unwrap();
            let mass: f64 = q.weights.iter().sum();
            assert!((mass - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn table_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("legendre.csv");
        let t = MeasureSpec::jacobi(0.0, 0.0).unwrap().recurrence_table(10).unwrap();
        save_table(&t, (-1.0, 1.0), &path).unwrap();
        let loaded = load_table(&path).unwrap();
        match loaded {
            MeasureSpec::Custom { support, table } => {
                assert_eq!(support, (-1.0, 1.0));
                assert_eq!(table.a, t.a);
                assert_eq!(table.b, t.b);
            }
            _ => panic!("expected custom measure"),
        }
    }

    #[test]
    fn table_file_infinite_support() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("laguerre.csv");
        let t = MeasureSpec::half_line_freud(1.0, 0.0).unwrap().recurrence_table(5).unwrap();
        save_table(&t, (0.0, f64::INFINITY), &path).unwrap();
        match load_table(&path).unwrap() {
            MeasureSpec::Custom { support, .. } => {
                assert_eq!(support.0, 0.0);
                assert_eq!(support.1, f64::INFINITY);
            }
            _ => panic!("expected custom measure"),
        }
    }

    #[test]
    fn table_file_rejects_bad_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(
            &path,
            "# induced-table v1 support=-1,1\n0,0.0,1.0\n1,0.0,-0.5\n",
        )
        .unwrap();
        assert!(matches!(load_table(&path), Err(Error::Parse { line: 3, .. })));

        std::fs::write(
            &path,
            "# induced-table v1 support=-1,1\n0,0.0,1.0\n2,0.0,0.5\n",
        )
        .unwrap();
        assert!(matches!(load_table(&path), Err(Error::Parse { line: 3, .. })));

        std::fs::write(&path, "wrong header\n").unwrap();
        assert!(matches!(load_table(&path), Err(Error::Parse { line: 1, .. })));
    }
}
