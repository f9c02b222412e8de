//! Multivariate mixture sampling and optimal weighted least-squares designs.
//!
//! For a tensor-product measure and a finite multi-index set `Lambda`, the
//! mixture measure `mu_Lambda` averages the tensor induced measures over the
//! indices in the set. Sampling from it is exact: pick an index uniformly,
//! then draw each coordinate by inverse transform from the corresponding
//! univariate induced distribution. Weighting least-squares rows by
//! `N / sum_lambda p_lambda^2(X)` makes the design Gram matrix concentrate
//! around the identity at near-optimal sample counts.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::idist::InducedDistribution;
use crate::inverse::idist_inverse;
use crate::measures::MeasureSpec;
use crate::recurrence::{eval_poly, RecurrenceTable};
use crate::special::reg_inc_beta;

/// A finite set of distinct multi-indices in `N_0^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndexSet {
    dim: usize,
    indices: Vec<Vec<usize>>,
}

impl MultiIndexSet {
    /// Builds a set from explicit indices, checking dimensions and
    /// distinctness.
    pub fn new(dim: usize, indices: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        if indices.is_empty() {
            return Err(Error::Domain("multi-index set must be non-empty".into()));
        }
        for idx in &indices {
            if idx.len() != dim {
                return Err(Error::Domain(format!(
                    "multi-index {idx:?} has dimension {}, expected {dim}",
                    idx.len()
                )));
            }
        }
        let mut seen = indices.clone();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("multi-indices must be distinct".into()));
        }
        Ok(Self { dim, indices })
    }

    /// All `lambda` with `|lambda| <= n`, in lexicographic order; cardinality
    /// `C(n + d, d)`.
    pub fn total_degree(d: usize, n: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        let mut indices = Vec::new();
        let mut current = vec![0usize; d];
        fill_total_degree(&mut indices, &mut current, 0, n);
        Ok(Self { dim: d, indices })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// Number of indices in the set (the basis cardinality `N`).
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[Vec<usize>] {
        &self.indices
    }

    /// Largest order appearing in coordinate `j`.
    pub fn max_order(&self, j: usize) -> usize {
        self.indices.iter().map(|idx| idx[j]).max().unwrap_or(0)
    }

    /// Whether every componentwise-smaller index is also present.
    pub fn is_downward_closed(&self) -> bool {
        let set: std::collections::HashSet<&[usize]> =
            self.indices.iter().map(|v| v.as_slice()).collect();
        self.indices.iter().all(|idx| {
            (0..self.dim).all(|j| {
                if idx[j] == 0 {
                    return true;
                }
                let mut lower = idx.clone();
                lower[j] -= 1;
                set.contains(lower.as_slice())
            })
        })
    }
}

fn fill_total_degree(
    out: &mut Vec<Vec<usize>>,
    current: &mut Vec<usize>,
    pos: usize,
    budget: usize,
) {
    if pos == current.len() - 1 {
        for k in 0..=budget {
            current[pos] = k;
            out.push(current.clone());
        }
        current[pos] = 0;
        return;
    }
    for k in 0..=budget {
        current[pos] = k;
        fill_total_degree(out, current, pos + 1, budget - k);
    }
    current[pos] = 0;
}

/// See [`MultiIndexSet::total_degree`].
pub fn total_degree_set(d: usize, n: usize) -> Result<MultiIndexSet> {
    MultiIndexSet::total_degree(d, n)
}

/// A tensor-product measure: one marginal [`MeasureSpec`] per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorMeasure {
    marginals: Vec<MeasureSpec>,
}

impl TensorMeasure {
    pub fn new(marginals: Vec<MeasureSpec>) -> Result<Self> {
        if marginals.is_empty() {
            return Err(Error::Domain("tensor measure needs at least one marginal".into()));
        }
        Ok(Self { marginals })
    }

    /// The same marginal in every one of `d` coordinates.
    pub fn uniform(spec: MeasureSpec, d: usize) -> Result<Self> {
        Self::new(vec![spec; d])
    }

    pub fn dimension(&self) -> usize {
        self.marginals.len()
    }

    pub fn marginals(&self) -> &[MeasureSpec] {
        &self.marginals
    }

    /// Recurrence tables for evaluating `p_0..p_n` in each coordinate, with
    /// `n` taken per coordinate from the index set.
    fn eval_tables(&self, set: &MultiIndexSet) -> Result<Vec<RecurrenceTable>> {
        self.marginals
            .iter()
            .enumerate()
            .map(|(j, spec)| spec.recurrence_table(set.max_order(j) + 1))
            .collect()
    }
}

/// Exact sampler for the mixture measure `mu_Lambda`: draws an index
/// uniformly from the set, then each coordinate by inverse transform through
/// the univariate induced distribution of the matching order.
///
/// All induced-distribution structures (zeros, leading coefficients,
/// bracketing rules) are built once here, so sampling itself is read-only
/// and cheap to repeat.
pub struct MixtureSampler {
    set: MultiIndexSet,
    dists: Vec<HashMap<usize, InducedDistribution>>,
    tol: f64,
}

/// Inversion tolerance used by the sampler; loose enough to keep bisection
/// short, far below any statistical resolution of the sample sizes involved.
const SAMPLE_INVERSE_TOL: f64 = 1e-9;

impl MixtureSampler {
    pub fn new(set: MultiIndexSet, measures: &TensorMeasure) -> Result<Self> {
        if measures.dimension() != set.dimension() {
            return Err(Error::Domain(format!(
                "index set dimension {} != measure dimension {}",
                set.dimension(),
                measures.dimension()
            )));
        }
        let mut dists: Vec<HashMap<usize, InducedDistribution>> =
            (0..set.dimension()).map(|_| HashMap::new()).collect();
        for idx in set.indices() {
            for (j, &order) in idx.iter().enumerate() {
                if !dists[j].contains_key(&order) {
                    let dist =
                        InducedDistribution::new(measures.marginals()[j].clone(), order)?;
                    dists[j].insert(order, dist);
                }
            }
        }
        Ok(Self { set, dists, tol: SAMPLE_INVERSE_TOL })
    }

    pub fn index_set(&self) -> &MultiIndexSet {
        &self.set
    }

    /// One draw from `mu_Lambda`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<f64>> {
        let lambda = &self.set.indices()[rng.gen_range(0..self.set.len())];
        lambda
            .iter()
            .enumerate()
            .map(|(j, &order)| {
                let u = open_unit(rng);
                idist_inverse(u, &self.dists[j][&order], self.tol)
            })
            .collect()
    }

    /// `count` draws, in order.
    pub fn sample_batch<R: Rng + ?Sized>(
        &self,
        count: usize,
        rng: &mut R,
    ) -> Result<Vec<Vec<f64>>> {
        (0..count).map(|_| self.sample(rng)).collect()
    }
}

/// A uniform variate in the open interval `(0, 1)`: endpoint values would
/// map to the (possibly infinite) support endpoints under inversion.
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.gen();
        if u > 0.0 && u < 1.0 {
            return u;
        }
    }
}

/// A weighted least-squares design: sample sites, the optimal weights
/// `w_m = N / sum_lambda p_lambda^2(X_m)`, and the basis matrix
/// `V[m][k] = p_{lambda(k)}(X_m)`.
#[derive(Debug, Clone)]
pub struct LSDesign {
    pub samples: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub matrix: Vec<Vec<f64>>,
}

impl LSDesign {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }
}

/// Assembles the design data for the given samples: tensor-product basis
/// evaluations and the mixture-optimal weights.
pub fn ls_design(
    set: &MultiIndexSet,
    measures: &TensorMeasure,
    samples: Vec<Vec<f64>>,
) -> Result<LSDesign> {
    if measures.dimension() != set.dimension() {
        return Err(Error::Domain(format!(
            "index set dimension {} != measure dimension {}",
            set.dimension(),
            measures.dimension()
        )));
    }
    let tables = measures.eval_tables(set)?;
    let n_basis = set.len();
    let mut matrix = Vec::with_capacity(samples.len());
    let mut weights = Vec::with_capacity(samples.len());
    for (m, x) in samples.iter().enumerate() {
        if x.len() != set.dimension() {
            return Err(Error::Domain(format!(
                "sample {m} has dimension {}, expected {}",
                x.len(),
                set.dimension()
            )));
        }
        // Per-coordinate values p_0..p_max at x_j, shared by all basis rows.
        let per_dim: Vec<Vec<f64>> = tables
            .iter()
            .enumerate()
            .map(|(j, t)| eval_poly(t, x[j], set.max_order(j)))
            .collect::<Result<_>>()?;
        let row: Vec<f64> = set
            .indices()
            .iter()
            .map(|idx| idx.iter().enumerate().map(|(j, &o)| per_dim[j][o]).product())
            .collect();
        let sum_sq: f64 = row.iter().map(|v| v * v).sum();
        if !row.iter().all(|v| v.is_finite()) || !(sum_sq > 0.0) {
            return Err(Error::Numeric(format!(
                "non-finite or degenerate basis row at sample {m}"
            )));
        }
        weights.push(n_basis as f64 / sum_sq);
        matrix.push(row);
    }
    Ok(LSDesign { samples, weights, matrix })
}

/// Spectral norm of `V^T W V - I` by symmetric power iteration
/// (tolerance 1e-10, at most 10^4 iterations).
pub fn gram_discrepancy(design: &LSDesign) -> f64 {
    let n = design.cols();
    let m = design.rows();
    if n == 0 || m == 0 {
        return 0.0;
    }
    // G = (1/M) V^T W V - I, accumulated densely; N is moderate by design.
    let mut g = vec![vec![0.0f64; n]; n];
    for (row, &w) in design.matrix.iter().zip(&design.weights) {
        let scale = w / m as f64;
        for i in 0..n {
            let ri = scale * row[i];
            for j in i..n {
                g[i][j] += ri * row[j];
            }
        }
    }
    for i in 0..n {
        g[i][i] -= 1.0;
        for j in 0..i {
            g[i][j] = g[j][i];
        }
    }
    // Deterministic non-degenerate start vector.
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64) / n as f64).collect();
    let norm0 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm0);
    let mut est = 0.0f64;
    for _ in 0..10_000 {
        let mut gv = vec![0.0f64; n];
        for i in 0..n {
            gv[i] = g[i].iter().zip(&v).map(|(a, b)| a * b).sum();
        }
        let norm = gv.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        gv.iter_mut().for_each(|x| *x /= norm);
        if (norm - est).abs() <= 1e-10 {
            return norm;
        }
        est = norm;
        v = gv;
    }
    est
}

/// Solves the weighted least-squares problem `min sum_m w_m (f_m - (Vc)_m)^2`
/// by Householder QR of `sqrt(W) V`. Coefficients come back in index-set
/// order.
pub fn least_squares(design: &LSDesign, f_values: &[f64]) -> Result<Vec<f64>> {
    let m = design.rows();
    let n = design.cols();
    if f_values.len() != m {
        return Err(Error::Domain(format!(
            "got {} function values for {m} design rows",
            f_values.len()
        )));
    }
    if m < n {
        return Err(Error::IllConditionedDesign { discrepancy: gram_discrepancy(design) });
    }
    // a = sqrt(W) V augmented with rhs = sqrt(W) f, reduced in place.
    let mut a: Vec<Vec<f64>> = design
        .matrix
        .iter()
        .zip(&design.weights)
        .map(|(row, &w)| {
            let s = w.sqrt();
            row.iter().map(|v| s * v).collect()
        })
        .collect();
    let mut rhs: Vec<f64> = f_values
        .iter()
        .zip(&design.weights)
        .map(|(&f, &w)| w.sqrt() * f)
        .collect();
    let mut max_diag = 0.0f64;
    for k in 0..n {
        let mut alpha = 0.0f64;
        for row in a.iter().skip(k) {
            alpha += row[k] * row[k];
        }
        alpha = alpha.sqrt();
        if a[k][k] > 0.0 {
            alpha = -alpha;
        }
        let mut v: Vec<f64> = (k..m).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for j in k..n {
                let dot: f64 = (k..m).map(|i| v[i - k] * a[i][j]).sum();
                let c = 2.0 * dot / vnorm2;
                for i in k..m {
                    a[i][j] -= c * v[i - k];
                }
            }
            let dot: f64 = (k..m).map(|i| v[i - k] * rhs[i]).sum();
            let c = 2.0 * dot / vnorm2;
            for i in k..m {
                rhs[i] -= c * v[i - k];
            }
        }
        a[k][k] = alpha;
        max_diag = max_diag.max(alpha.abs());
    }
    let rank_tol = 1e-12 * max_diag.max(1e-300);
    if (0..n).any(|k| a[k][k].abs() < rank_tol) {
        return Err(Error::IllConditionedDesign { discrepancy: gram_discrepancy(design) });
    }
    // Back substitution on the upper-triangular factor.
    let mut c = vec![0.0f64; n];
    for k in (0..n).rev() {
        let mut s = rhs[k];
        for j in (k + 1)..n {
            s -= a[k][j] * c[j];
        }
        c[k] = s / a[k][k];
    }
    Ok(c)
}

/// Smallest `M >= 3` with `M / ln M >= N (1 + r) / c_delta`, where
/// `c_delta = delta + (1 - delta) ln(1 - delta)`. Meeting it bounds the
/// probability of `gram_discrepancy > delta` by `2 M^{-r}`.
pub fn sample_count(n_basis: usize, r: f64, delta: f64) -> Result<usize> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("delta = {delta} outside (0, 1)")));
    }
    if !(r > 0.0) {
        return Err(Error::Domain(format!("r = {r} must be positive")));
    }
    let c_delta = delta + (1.0 - delta) * (1.0 - delta).ln();
    let target = n_basis as f64 * (1.0 + r) / c_delta;
    // ln M >= 1 for M >= 3, so M = target is an underestimate of the answer.
    let mut m = (target.ceil() as usize).max(3);
    while (m as f64) / (m as f64).ln() < target {
        m += 1;
    }
    Ok(m)
}

/// Conjectured limit distribution of normalized sample radii for the
/// Gaussian tensor measure: `G_d(r) = I_{r^2}(d/2, d/2 + 1)`, the CDF of the
/// radius under density proportional to `(1 - |x|^2)^{d/2}` on the unit
/// ball.
pub fn equilibrium_cdf(d: usize, r: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("r = {r} outside [0, 1]")));
    }
    let half = d as f64 / 2.0;
    Ok(reg_inc_beta(r * r, half, half + 1.0))
}

/// Draws `count` samples from the total-degree mixture for the Gaussian
/// weight `exp(-|x|^2)`, and compares the normalized radii `|X| / sqrt(2n)`
/// against [`equilibrium_cdf`]. Returns the sorted radii and the
/// Kolmogorov-Smirnov distance.
pub fn equilibrium_experiment(
    d: usize,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<(Vec<f64>, f64)> {
    use rand::SeedableRng;
    if count == 0 {
        return Err(Error::Domain("sample count must be positive".into()));
    }
    let set = MultiIndexSet::total_degree(d, n)?;
    let measures = TensorMeasure::uniform(MeasureSpec::freud(2.0, 0.0)?, d)?;
    let sampler = MixtureSampler::new(set, &measures)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let norm = (2.0 * n as f64).sqrt();
    let mut radii = Vec::with_capacity(count);
    for _ in 0..count {
        let x = sampler.sample(&mut rng)?;
        radii.push(x.iter().map(|v| v * v).sum::<f64>().sqrt() / norm);
    }
    radii.sort_by(f64::total_cmp);
    let mut ks = 0.0f64;
    for (i, &r) in radii.iter().enumerate() {
        let g = equilibrium_cdf(d, r.min(1.0))?;
        let hi = (i + 1) as f64 / count as f64;
        let lo = i as f64 / count as f64;
        ks = ks.max((hi - g).abs()).max((g - lo).abs());
    }
    Ok((radii, ks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_dense_specnorm, oracle_idist};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn choose(n: usize, k: usize) -> usize {
        let mut v = 1usize;
        for i in 0..k {
            v = v * (n - i) / (i + 1);
        }
        v
    }

    #[test]
    fn total_degree_cardinality_and_order() {
        let s = total_degree_set(1, 3).unwrap();
        assert_eq!(s.indices(), &[vec![0], vec![1], vec![2], vec![3]]);
        let s = total_degree_set(2, 2).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.is_downward_closed());
        let mut sorted = s.indices().to_vec();
        sorted.sort();
        assert_eq!(sorted, s.indices());
        let s = total_degree_set(10, 5).unwrap();
        assert_eq!(s.len(), choose(15, 5));
    }

    #[test]
    fn index_set_validation() {
        assert!(MultiIndexSet::new(2, vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(MultiIndexSet::new(2, vec![vec![0]]).is_err());
        assert!(MultiIndexSet::new(0, vec![]).is_err());
        let s = MultiIndexSet::new(2, vec![vec![0, 0], vec![2, 0]]).unwrap();
        assert!(!s.is_downward_closed());
    }

    fn ks_against<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
        let m = sorted.len() as f64;
        let mut ks = 0.0f64;
        for (i, &x) in sorted.iter().enumerate() {
            let g = cdf(x);
            ks = ks.max(((i + 1) as f64 / m - g).abs()).max((g - i as f64 / m).abs());
        }
        ks
    }

    #[test]
    fn mixture_marginal_uniform() {
        let set = MultiIndexSet::new(1, vec![vec![0]]).unwrap();
        let measures =
            TensorMeasure::uniform(MeasureSpec::jacobi(0.0, 0.0).unwrap(), 1).unwrap();
        let sampler = MixtureSampler::new(set, &measures).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut xs: Vec<f64> = sampler
            .sample_batch(10_000, &mut rng)
            .unwrap()
            .into_iter()
            .map(|v| v[0])
            .collect();
        xs.sort_by(f64::total_cmp);
        assert!(ks_against(&xs, |x| (x + 1.0) / 2.0) < 0.02);
    }

    #[test]
    fn mixture_marginal_order_two() {
        let set = MultiIndexSet::new(1, vec![vec![2]]).unwrap();
        let spec = MeasureSpec::jacobi(0.0, 0.0).unwrap();
        let measures = TensorMeasure::uniform(spec.clone(), 1).unwrap();
        let sampler = MixtureSampler::new(set, &measures).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut xs: Vec<f64> = sampler
            .sample_batch(10_000, &mut rng)
            .unwrap()
            .into_iter()
            .map(|v| v[0])
            .collect();
        xs.sort_by(f64::total_cmp);
        let dist = InducedDistribution::new(spec, 2).unwrap();
        assert!(ks_against(&xs, |x| dist.eval(x).unwrap()) < 0.02);
    }

    #[test]
    fn sampler_deterministic_given_seed() {
        let set = total_degree_set(2, 3).unwrap();
        let measures =
            TensorMeasure::uniform(MeasureSpec::jacobi(0.0, 0.0).unwrap(), 2).unwrap();
        let sampler = MixtureSampler::new(set, &measures).unwrap();
        let mut r1 = ChaCha8Rng::seed_from_u64(42);
        let mut r2 = ChaCha8Rng::seed_from_u64(42);
        let a = sampler.sample_batch(50, &mut r1).unwrap();
        let b = sampler.sample_batch(50, &mut r2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn design_weight_identity() {
        let set = total_degree_set(2, 3).unwrap();
        let measures =
            TensorMeasure::uniform(MeasureSpec::jacobi(0.0, 0.0).unwrap(), 2).unwrap();
        let sampler = MixtureSampler::new(set.clone(), &measures).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let samples = sampler.sample_batch(40, &mut rng).unwrap();
        let design = ls_design(&set, &measures, samples).unwrap();
        for (row, &w) in design.matrix.iter().zip(&design.weights) {
            let s: f64 = row.iter().map(|v| v * v).sum();
            assert_eq!(w, set.len() as f64 / s);
        }
    }

    #[test]
    fn design_single_constant_basis() {
        let set = MultiIndexSet::new(1, vec![vec![0]]).unwrap();
        let measures =
            TensorMeasure::uniform(MeasureSpec::jacobi(0.0, 0.0).unwrap(), 1).unwrap();
        let design = ls_design(&set, &measures, vec![vec![0.3]]).unwrap();
        assert!((design.weights[0] - 1.0).abs() < 1e-14);
        assert!(gram_discrepancy(&design) < 1e-12);
    }

    #[test]
    fn gram_matches_dense_eigensolver() {
        let set = total_degree_set(1, 9).unwrap();
        let measures =
            TensorMeasure::uniform(MeasureSpec::jacobi(0.0, 0.0).unwrap(), 1).unwrap();
        let sampler = MixtureSampler::new(set.clone(), &measures).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let samples = sampler.sample_batch(50, &mut rng).unwrap();
        let design = ls_design(&set, &measures, samples).unwrap();
        let n = design.cols();
        let m = design.rows();
        let mut g = vec![vec![0.0f64; n]; n];
        for (row, &w) in design.matrix.iter().zip(&design.weights) {
            for i in 0..n {
                for j in 0..n {
                    g[i][j] += w / m as f64 * row[i] * row[j];
                }
            }
        }
        for i in 0..n {
            g[i][i] -= 1.0;
        }
        let dense = oracle_dense_specnorm(&g);
        let fast = gram_discrepancy(&design);
        assert!((dense - fast).abs() < 1e-9, "{fast} vs {dense}");
    }

    #[test]
    fn least_squares_recovers_basis_functions() {
        let set = total_degree_set(1, 3).unwrap();
        let spec = MeasureSpec::jacobi(0.0, 0.0).unwrap();
        let measures = TensorMeasure::uniform(spec.clone(), 1).unwrap();
        let sampler = MixtureSampler::new(set.clone(), &measures).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let samples = sampler.sample_batch(200, &mut rng).unwrap();
        let design = ls_design(&set, &measures, samples).unwrap();
        // f = p_2 exactly.
        let f: Vec<f64> = design.matrix.iter().map(|row| row[2]).collect();
        let c = least_squares(&design, &f).unwrap();
        for (k, &ck) in c.iter().enumerate() {
            let expect = if k == 2 { 1.0 } else { 0.0 };
            assert!((ck - expect).abs() < 1e-10, "c[{k}] = {ck}");
        }
        // f = 1 = p_0 for the unit-mass measure.
        let ones = vec![1.0; design.rows()];
        let c = least_squares(&design, &ones).unwrap();
        assert!((c[0] - 1.0).abs() < 1e-10);
        assert!(c[1..].iter().all(|&v| v.abs() < 1e-10));
    }

    #[test]
    fn least_squares_matches_exact_projection() {
        // x^3 in the orthonormal Legendre basis: exact coefficients from
        // quadrature of x^3 p_k under dx/2.
        let set = total_degree_set(1, 3).unwrap();
        let spec = MeasureSpec::jacobi(0.0, 0.0).unwrap();
        let measures = TensorMeasure::uniform(spec.clone(), 1).unwrap();
        let sampler = MixtureSampler::new(set.clone(), &measures).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let samples = sampler.sample_batch(200, &mut rng).unwrap();
        let design = ls_design(&set, &measures, samples).unwrap();
        let f: Vec<f64> = design.samples.iter().map(|x| x[0].powi(3)).collect();
        let c = least_squares(&design, &f).unwrap();
        let table = spec.recurrence_table(5).unwrap();
        let q = crate::recurrence::gauss_rule(&table, 5).unwrap();
        for k in 0..4 {
            let exact = q.integrate(|x| {
                x.powi(3) * eval_poly(&table, x, 3).unwrap()[k]
            });
            assert!((c[k] - exact).abs() < 1e-8, "c[{k}] = {} vs {exact}", c[k]);
        }
    }

    #[test]
    fn least_squares_rank_deficiency() {
        let set = total_degree_set(1, 2).unwrap();
        let measures =
            TensorMeasure::uniform(MeasureSpec::jacobi(0.0, 0.0).unwrap(), 1).unwrap();
        // Three identical sample sites: rank 1 < 3.
        let design =
            ls_design(&set, &measures, vec![vec![0.2], vec![0.2], vec![0.2]]).unwrap();
        match least_squares(&design, &[1.0, 1.0, 1.0]) {
            Err(Error::IllConditionedDesign { .. }) => {}
            other => panic!("expected rank-deficiency error, got {other:?}"),
        }
    }

    #[test]
    fn sample_count_examples() {
        let c_half = 0.5 + 0.5 * 0.5f64.ln();
        assert!((c_half - 0.153_426_4).abs() < 1e-6);
        let m = sample_count(10, 1.0, 0.5).unwrap();
        assert!((880..=890).contains(&m), "{m}");
        assert!((m as f64) / (m as f64).ln() >= 10.0 * 2.0 / c_half);
        assert!(((m - 1) as f64) / ((m - 1) as f64).ln() < 10.0 * 2.0 / c_half);
        // Monotonicity.
        assert!(sample_count(20, 1.0, 0.5).unwrap() >= m);
        assert!(sample_count(10, 2.0, 0.5).unwrap() >= m);
        assert!(sample_count(10, 1.0, 0.9).unwrap() <= m);
        assert_eq!(sample_count(1, 0.1, 0.99).unwrap(), 3);
        assert!(sample_count(10, 1.0, 0.0).is_err());
        assert!(sample_count(10, 0.0, 0.5).is_err());
    }

    #[test]
    fn equilibrium_cdf_closed_forms() {
        for d in 1..6 {
            assert!((equilibrium_cdf(d, 1.0).unwrap() - 1.0).abs() < 1e-14);
            assert_eq!(equilibrium_cdf(d, 0.0).unwrap(), 0.0);
        }
        // d = 2: I_x(1, 2) = 1 - (1 - x)^2 at x = 1/2.
        let g = equilibrium_cdf(2, 1.0 / 2.0f64.sqrt()).unwrap();
        assert!((g - 0.75).abs() < 1e-13);
        assert!(equilibrium_cdf(2, 1.5).is_err());
        assert!(equilibrium_cdf(0, 0.5).is_err());
    }

    #[test]
    fn equilibrium_cdf_matches_radial_quadrature() {
        // G_5(0.6) against direct integration of r^4 (1 - r^2)^{5/2}.
        let density = |r: f64| r.powi(4) * (1.0 - r * r).powf(2.5);
        let total = trapz(&density, 0.0, 1.0, 400_000);
        let part = trapz(&density, 0.0, 0.6, 400_000);
        let g = equilibrium_cdf(5, 0.6).unwrap();
        assert!((g - part / total).abs() < 1e-10, "{g} vs {}", part / total);
    }

    fn trapz<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
        // Endpoint derivative vanishes fast enough here for plain trapezoid
        // at this resolution.
        let h = (b - a) / n as f64;
        let mut s = 0.5 * (f(a) + f(b));
        for i in 1..n {
            s += f(a + i as f64 * h);
        }
        s * h
    }

    #[test]
    fn equilibrium_experiment_small() {
        let (radii, ks) = equilibrium_experiment(1, 20, 2000, 7).unwrap();
        assert_eq!(radii.len(), 2000);
        assert!(radii.windows(2).all(|w| w[0] <= w[1]));
        assert!(radii.iter().all(|&r| r >= 0.0));
        // Coarse check only; the sharp n = 100 version lives in the
        // acceptance suite.
        assert!(ks < 0.1, "ks = {ks}");
    }

    #[test]
    fn sampler_mixture_consistency_against_oracle() {
        // Two-element mixture in d = 1: CDF is the average of the two
        // induced distributions.
        let set = MultiIndexSet::new(1, vec![vec![1], vec![3]]).unwrap();
        let spec = MeasureSpec::jacobi(0.0, 0.0).unwrap();
        let measures = TensorMeasure::uniform(spec.clone(), 1).unwrap();
        let sampler = MixtureSampler::new(set, &measures).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut xs: Vec<f64> = sampler
            .sample_batch(10_000, &mut rng)
            .unwrap()
            .into_iter()
            .map(|v| v[0])
            .collect();
        xs.sort_by(f64::total_cmp);
        let cdf = |x: f64| {
            0.5 * (oracle_idist(&spec, 1, x).unwrap() + oracle_idist(&spec, 3, x).unwrap())
        };
        assert!(ks_against(&xs, cdf) < 0.02);
    }
}
