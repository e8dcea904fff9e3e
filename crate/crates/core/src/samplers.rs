//! Random density matrices and eigenvalue vectors.
//!
//! - Induced measures: `ρ = X X† / Tr(X X†)` for an `n × k` complex Gaussian `X`;
//!   `k = n` is the Hilbert-Schmidt measure.
//! - Bures measure: the spectrum is drawn from the joint density
//!   `∝ ∏λ_i^{-1/2} ∏_{i<j} (λ_i−λ_j)²/(λ_i+λ_j)` on the simplex, either exactly by
//!   rejection from Dirichlet(1/2, ..., 1/2) or with a pair-update Metropolis
//!   chain; eigenvectors are attached with a Haar unitary.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::numerics::eigen::hermitian_eigenvalues;
use crate::numerics::matrix::ComplexMatrix;
use crate::numerics::rng::{gaussian_complex_matrix, RngStream};

/// Rejection proposals allowed in a row before the sampler gives up.
pub const MAX_CONSECUTIVE_REJECTIONS: u64 = 1_000_000;

/// Samples per independent RNG substream in batch sampling.
pub const BATCH_CHUNK: usize = 1000;

/// Largest `n` for which the default Bures sampler is exact rejection.
pub const BURES_REJECTION_MAX_N: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleKind {
    #[serde(rename = "hs")]
    HilbertSchmidt,
    Induced,
    Bures,
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnsembleKind::HilbertSchmidt => "hs",
            EnsembleKind::Induced => "induced",
            EnsembleKind::Bures => "bures",
        })
    }
}

/// Which measure a computation targets.
///
/// For the induced measure with `k < n` the nonzero spectrum is that of the
/// `(k, n)` ensemble; [`EnsembleSpec::effective_dims`] performs the interchange
/// and [`EnsembleSpec::is_swapped`] records it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: usize,
    pub k: usize,
}

impl EnsembleSpec {
    pub fn hs(n: usize) -> Result<Self> {
        Self::new(EnsembleKind::HilbertSchmidt, n, n)
    }

    pub fn induced(n: usize, k: usize) -> Result<Self> {
        Self::new(EnsembleKind::Induced, n, k)
    }

    pub fn bures(n: usize) -> Result<Self> {
        Self::new(EnsembleKind::Bures, n, n)
    }

    pub fn new(kind: EnsembleKind, n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(invalid("ensemble dimensions must be at least 1"));
        }
        let k = if kind == EnsembleKind::Induced { k } else { n };
        Ok(Self { kind, n, k })
    }

    pub fn is_swapped(&self) -> bool {
        self.kind == EnsembleKind::Induced && self.k < self.n
    }

    /// `(N, K)` with `K ≥ N`: the dimension of the positive spectrum and its partner.
    pub fn effective_dims(&self) -> (usize, usize) {
        (self.n.min(self.k), self.n.max(self.k))
    }
}

impl fmt::Display for EnsembleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EnsembleKind::Induced => write!(f, "induced(n={}, k={})", self.n, self.k),
            kind => write!(f, "{kind}(n={})", self.n),
        }
    }
}

/// An eigenvalue vector on the probability simplex, sorted ascending.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumSample {
    values: Vec<f64>,
}

impl SpectrumSample {
    /// Validating constructor: entries ≥ 0 summing to 1 within 1e-12.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("empty spectrum"));
        }
        if values.iter().any(|&v| !(v >= 0.0)) {
            return Err(invalid("spectrum has negative or NaN entries"));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(invalid(format!("spectrum sums to {sum}, not 1")));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    /// Clamps roundoff negatives (down to -1e-10) to zero and renormalizes.
    pub(crate) fn from_raw(mut values: Vec<f64>) -> Self {
        for v in values.iter_mut() {
            debug_assert!(*v >= -1e-10, "eigenvalue {v} below -1e-10");
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = values.iter().sum();
        for v in values.iter_mut() {
            *v /= sum;
        }
        values.sort_by(f64::total_cmp);
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn largest(&self) -> f64 {
        *self.values.last().expect("nonempty")
    }

    /// `Tr ρ^q = Σ λ_i^q`.
    pub fn trace_power(&self, q: u32) -> f64 {
        self.values.iter().map(|v| v.powi(q as i32)).sum()
    }

    /// Von Neumann entropy `−Σ λ ln λ`; eigenvalues below 1e-15 contribute 0.
    pub fn entropy(&self) -> f64 {
        let s: f64 = self.values.iter().filter(|&&v| v >= 1e-15).map(|&v| v * v.ln()).sum();
        // Written as a subtraction so that pure states give +0.0, not −0.0.
        0.0 - s
    }
}

/// A Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-12), unit trace (1e-12) and eigenvalues ≥ -1e-10.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.check_hermitian()?;
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(invalid(format!("trace is {tr}, not 1")));
        }
        let min = hermitian_eigenvalues(&matrix)?[0];
        if min < -1e-10 {
            return Err(invalid(format!("not positive semidefinite (min eigenvalue {min:e})")));
        }
        Ok(Self { matrix })
    }

    /// For matrices that are Hermitian, positive and unit-trace by construction.
    fn from_construction(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.max_asymmetry() <= 1e-12);
        debug_assert!((matrix.trace().re - 1.0).abs() <= 1e-12);
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> SpectrumSample {
        let ev = hermitian_eigenvalues(&self.matrix).expect("density matrices are Hermitian");
        SpectrumSample::from_raw(ev)
    }
}

/// `ρ = X X† / Tr(X X†)` with `X` an `n × k` complex Gaussian matrix.
pub fn sample_induced(n: usize, k: usize, rng: &mut RngStream) -> DensityMatrix {
    assert!(n >= 1 && k >= 1);
    let x = gaussian_complex_matrix(n, k, rng);
    let mut g = x.gram();
    let tr = g.trace().re;
    g.scale(1.0 / tr);
    DensityMatrix::from_construction(g)
}

/// Hilbert-Schmidt measure: the induced measure with `k = n`.
pub fn sample_hs(n: usize, rng: &mut RngStream) -> DensityMatrix {
    sample_induced(n, n, rng)
}

/// Dirichlet(1/2, ..., 1/2) via normalized squares of real standard normals.
pub fn sample_dirichlet_half(n: usize, rng: &mut RngStream) -> SpectrumSample {
    assert!(n >= 1);
    loop {
        let sq: Vec<f64> = (0..n).map(|_| rng.standard_normal().powi(2)).collect();
        let sum: f64 = sq.iter().sum();
        if sum > 0.0 {
            return SpectrumSample::from_raw(sq);
        }
    }
}

/// `∏_{i<j} (λ_i−λ_j)² / (λ_i+λ_j)`: the Bures density relative to Dirichlet(1/2).
///
/// Each factor is at most `λ_i + λ_j ≤ 1`, so the weight never exceeds 1.
pub fn bures_acceptance_weight(lambda: &[f64]) -> f64 {
    let mut w = 1.0;
    for i in 0..lambda.len() {
        for j in (i + 1)..lambda.len() {
            let s = lambda[i] + lambda[j];
            if s > 0.0 {
                w *= (lambda[i] - lambda[j]).powi(2) / s;
            } else {
                return 0.0;
            }
        }
    }
    w
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RejectionStats {
    pub proposals: u64,
    pub accepted: u64,
}

impl RejectionStats {
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.proposals as f64
    }

    fn merge(&mut self, other: RejectionStats) {
        self.proposals += other.proposals;
        self.accepted += other.accepted;
    }
}

/// One exact Bures spectrum by rejection from Dirichlet(1/2).
pub fn sample_bures_spectrum_rejection(n: usize, rng: &mut RngStream) -> Result<(SpectrumSample, RejectionStats)> {
    let mut stats = RejectionStats::default();
    loop {
        let proposal = sample_dirichlet_half(n, rng);
        stats.proposals += 1;
        let w = bures_acceptance_weight(proposal.values());
        if rng.uniform() < w {
            stats.accepted += 1;
            return Ok((proposal, stats));
        }
        if stats.proposals >= MAX_CONSECUTIVE_REJECTIONS {
            return Err(Error::RejectionExhausted {
                n,
                rejections: stats.proposals,
            });
        }
    }
}

/// Metropolis-Hastings chain on the simplex targeting the Bures spectrum.
///
/// A move picks a random pair `(i, j)`, keeps `s = λ_i + λ_j`, and redraws the
/// split `λ_i = s·b` with `b ~ Beta(1/2, 1/2)`. The `(λ_i λ_j)^{-1/2}` part of the
/// target cancels against the proposal density, leaving the ratio of the
/// pairwise factors that involve `i` or `j`.
#[derive(Clone, Debug)]
pub struct BuresChain {
    state: Vec<f64>,
    rng: RngStream,
    steps: u64,
    accepted: u64,
}

pub const MIN_BURN_IN: u64 = 1000;

impl BuresChain {
    pub fn new(n: usize, mut rng: RngStream, burn_in: u64) -> Result<Self> {
        if n < 2 {
            return Err(invalid("the Bures chain needs n >= 2"));
        }
        if burn_in < MIN_BURN_IN {
            return Err(invalid(format!(
                "burn_in = {burn_in} is below the minimum of {MIN_BURN_IN}"
            )));
        }
        let state = sample_dirichlet_half(n, &mut rng).values().to_vec();
        let mut chain = Self {
            state,
            rng,
            steps: 0,
            accepted: 0,
        };
        for _ in 0..burn_in {
            chain.step();
        }
        Ok(chain)
    }

    fn pair_log_weight(lambda: &[f64], i: usize, j: usize) -> f64 {
        let term = |a: f64, b: f64| 2.0 * (a - b).abs().ln() - (a + b).ln();
        let mut lw = term(lambda[i], lambda[j]);
        for (m, &lm) in lambda.iter().enumerate() {
            if m != i && m != j {
                lw += term(lambda[i], lm) + term(lambda[j], lm);
            }
        }
        lw
    }

    pub fn step(&mut self) {
        let n = self.state.len();
        let i = self.rng.below(n);
        let mut j = self.rng.below(n - 1);
        if j >= i {
            j += 1;
        }
        let s = self.state[i] + self.state[j];
        let b = (std::f64::consts::FRAC_PI_2 * self.rng.uniform()).sin().powi(2);
        let old = Self::pair_log_weight(&self.state, i, j);
        let (oi, oj) = (self.state[i], self.state[j]);
        self.state[i] = s * b;
        self.state[j] = s - self.state[i];
        let new = Self::pair_log_weight(&self.state, i, j);
        self.steps += 1;
        let log_u = self.rng.uniform_open_closed().ln();
        if new.is_finite() && (old == f64::NEG_INFINITY || log_u < new - old) {
            self.accepted += 1;
        } else {
            self.state[i] = oi;
            self.state[j] = oj;
        }
    }

    /// Advances `thinning` steps and returns the current spectrum.
    pub fn next_sample(&mut self, thinning: u64) -> SpectrumSample {
        for _ in 0..thinning.max(1) {
            self.step();
        }
        SpectrumSample::from_raw(self.state.clone())
    }

    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.steps.max(1) as f64
    }
}

/// Single Bures spectrum from a fresh chain run for `burn_in + thinning` steps.
pub fn sample_bures_spectrum_mcmc(
    n: usize,
    rng: &mut RngStream,
    burn_in: u64,
    thinning: u64,
) -> Result<SpectrumSample> {
    let stream = rng.next_u64();
    let child = rng.substream(stream);
    let mut chain = BuresChain::new(n, child, burn_in)?;
    Ok(chain.next_sample(thinning))
}

/// Haar-random unitary: Gram-Schmidt QR of a complex Gaussian matrix, which
/// fixes the diagonal of `R` real and positive.
pub fn haar_unitary(n: usize, rng: &mut RngStream) -> ComplexMatrix {
    let z = gaussian_complex_matrix(n, n, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| z[(i, j)]).collect()).collect();
    for j in 0..n {
        // Two passes of modified Gram-Schmidt keep Q orthonormal to roundoff.
        for _ in 0..2 {
            for i in 0..j {
                let proj: Complex64 = (0..n).map(|r| cols[i][r].conj() * cols[j][r]).sum();
                for r in 0..n {
                    let qi = cols[i][r];
                    cols[j][r] -= proj * qi;
                }
            }
        }
        let norm = cols[j].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for c in cols[j].iter_mut() {
            *c /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            u[(i, j)] = v;
        }
    }
    u
}

/// `U diag(λ) U†`, assembled on the upper triangle and mirrored.
pub fn state_from_spectrum(spectrum: &SpectrumSample, u: &ComplexMatrix) -> DensityMatrix {
    let n = spectrum.len();
    let lambda = spectrum.values();
    let mut rho = ComplexMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let s: Complex64 = (0..n).map(|m| u[(a, m)] * lambda[m] * u[(b, m)].conj()).sum();
            if a == b {
                rho[(a, a)] = Complex64::new(s.re, 0.0);
            } else {
                rho[(a, b)] = s;
                rho[(b, a)] = s.conj();
            }
        }
    }
    // Re-impose unit trace lost to roundoff in the rotation.
    let tr = rho.trace().re;
    rho.scale(1.0 / tr);
    DensityMatrix::from_construction(rho)
}

/// How Bures spectra are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "sampler", rename_all = "lowercase")]
pub enum BuresMethod {
    Rejection,
    Mcmc { burn_in: u64, thinning: u64 },
}

impl BuresMethod {
    /// Default chain settings for dimension `n`.
    pub fn default_mcmc(n: usize) -> Self {
        let n = n as u64;
        BuresMethod::Mcmc {
            burn_in: (200 * n * n).max(10_000),
            thinning: 10 * n,
        }
    }

    /// Exact rejection where it is cheap, the chain otherwise.
    pub fn default_for(n: usize) -> Self {
        if n <= BURES_REJECTION_MAX_N {
            BuresMethod::Rejection
        } else {
            Self::default_mcmc(n)
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BuresMethod::Rejection => "rejection",
            BuresMethod::Mcmc { .. } => "mcmc",
        }
    }
}

/// Bures-distributed density matrix: Bures spectrum times Haar eigenvectors.
pub fn sample_bures_state(n: usize, rng: &mut RngStream) -> Result<DensityMatrix> {
    let spectrum = if n == 1 {
        SpectrumSample::from_raw(vec![1.0])
    } else {
        match BuresMethod::default_for(n) {
            BuresMethod::Rejection => sample_bures_spectrum_rejection(n, rng)?.0,
            BuresMethod::Mcmc { burn_in, thinning } => sample_bures_spectrum_mcmc(n, rng, burn_in, thinning)?,
        }
    };
    let u = haar_unitary(n, rng);
    Ok(state_from_spectrum(&spectrum, &u))
}

/// Runs `f` on `count` items split into fixed chunks, each with its own
/// substream of `rng`. Output order (and content) is independent of the
/// thread count.
pub(crate) fn map_chunks<T, F>(count: usize, rng: &RngStream, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RngStream, usize) -> Result<Vec<T>> + Sync + Send,
{
    let chunks = count.div_ceil(BATCH_CHUNK);
    let run = |c: usize| {
        let len = BATCH_CHUNK.min(count - c * BATCH_CHUNK);
        let mut sub = rng.substream(c as u64);
        f(&mut sub, len)
    };
    #[cfg(feature = "parallel")]
    let parts: Result<Vec<Vec<T>>> = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Result<Vec<Vec<T>>> = (0..chunks).map(run).collect();
    Ok(parts?.into_iter().flatten().collect())
}

/// One spectrum from `spec`. For a swapped induced spec this is the spectrum
/// of the `min(n,k)` positive eigenvalues.
pub fn sample_spectrum(spec: &EnsembleSpec, method: BuresMethod, rng: &mut RngStream) -> Result<SpectrumSample> {
    let (n, k) = spec.effective_dims();
    match spec.kind {
        EnsembleKind::HilbertSchmidt | EnsembleKind::Induced => Ok(sample_induced(n, k, rng).spectrum()),
        EnsembleKind::Bures if n == 1 => Ok(SpectrumSample::from_raw(vec![1.0])),
        EnsembleKind::Bures => match method {
            BuresMethod::Rejection => Ok(sample_bures_spectrum_rejection(n, rng)?.0),
            BuresMethod::Mcmc { burn_in, thinning } => sample_bures_spectrum_mcmc(n, rng, burn_in, thinning),
        },
    }
}

/// `count` spectra, reproducible from `(rng seed, rng stream, count)`.
///
/// Bures chains are run one per chunk of [`BATCH_CHUNK`] samples, each with
/// its own burn-in, and consecutive samples are `thinning` steps apart.
pub fn sample_spectra(
    spec: &EnsembleSpec,
    count: usize,
    method: BuresMethod,
    rng: &RngStream,
) -> Result<Vec<SpectrumSample>> {
    sample_map(spec, count, method, rng, |s| s)
}

/// Like [`sample_spectra`] but keeps only `f(spectrum)` for each sample.
pub fn sample_map<T, F>(spec: &EnsembleSpec, count: usize, method: BuresMethod, rng: &RngStream, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(SpectrumSample) -> T + Sync + Send,
{
    let (n, _) = spec.effective_dims();
    map_chunks(count, rng, |sub, len| match (spec.kind, method) {
        (EnsembleKind::Bures, BuresMethod::Mcmc { burn_in, thinning }) if n >= 2 => {
            let mut chain = BuresChain::new(n, sub.clone(), burn_in)?;
            Ok((0..len).map(|_| f(chain.next_sample(thinning))).collect())
        }
        _ => (0..len).map(|_| sample_spectrum(spec, method, sub).map(&f)).collect(),
    })
}

/// Like [`sample_spectra`] for the Bures rejection sampler, also returning the
/// pooled acceptance statistics.
pub fn sample_bures_rejection_batch(
    n: usize,
    count: usize,
    rng: &RngStream,
) -> Result<(Vec<SpectrumSample>, RejectionStats)> {
    let pairs = map_chunks(count, rng, |sub, len| {
        (0..len).map(|_| sample_bures_spectrum_rejection(n, sub)).collect()
    })?;
    let mut stats = RejectionStats::default();
    let samples = pairs
        .into_iter()
        .map(|(s, st)| {
            stats.merge(st);
            s
        })
        .collect();
    Ok((samples, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_se(xs: impl Iterator<Item = f64>) -> (f64, f64) {
        let v: Vec<f64> = xs.collect();
        let n = v.len() as f64;
        let m = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
        (m, (var / n).sqrt())
    }

    fn within(xs: impl Iterator<Item = f64>, target: f64, z: f64) {
        let (m, se) = mean_se(xs);
        assert!((m - target).abs() <= z * se, "mean {m} target {target} se {se}");
    }

    #[test]
    fn one_dimensional_states_are_pure() {
        let mut rng = RngStream::new(1, 0);
        for k in [1, 2, 7] {
            let rho = sample_induced(1, k, &mut rng);
            assert!((rho.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
        }
        assert_eq!(sample_hs(1, &mut rng).spectrum().values(), &[1.0]);
        assert_eq!(sample_dirichlet_half(1, &mut rng).values(), &[1.0]);
        let (s, stats) = sample_bures_spectrum_rejection(1, &mut rng).unwrap();
        assert_eq!(s.values(), &[1.0]);
        assert_eq!(stats.acceptance_rate(), 1.0);
        let rho = sample_bures_state(1, &mut rng).unwrap();
        assert!((rho.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn induced_purity_matches_closed_forms() {
        let rng = RngStream::new(2024, 0);
        let hs2 = sample_spectra(&EnsembleSpec::hs(2).unwrap(), 100_000, BuresMethod::Rejection, &rng).unwrap();
        within(hs2.iter().map(|s| s.trace_power(2)), 0.8, 4.0);
        within(hs2.iter().map(|s| s.trace_power(3)), 0.7, 4.0);
        let i23 = sample_spectra(
            &EnsembleSpec::induced(2, 3).unwrap(),
            100_000,
            BuresMethod::Rejection,
            &rng.substream(9),
        )
        .unwrap();
        within(i23.iter().map(|s| s.trace_power(2)), 5.0 / 7.0, 4.0);
        let hs3 = sample_spectra(
            &EnsembleSpec::hs(3).unwrap(),
            100_000,
            BuresMethod::Rejection,
            &rng.substream(10),
        )
        .unwrap();
        within(hs3.iter().map(|s| s.trace_power(2)), 0.6, 4.0);
    }

    #[test]
    fn dirichlet_half_is_symmetric() {
        // Sorted smaller coordinate of Beta(1/2,1/2): E[min(b, 1-b)] = 1/2 - 1/π.
        let mut rng = RngStream::new(3, 0);
        within(
            (0..100_000).map(|_| sample_dirichlet_half(2, &mut rng).values()[0]),
            0.5 - std::f64::consts::FRAC_1_PI,
            4.0,
        );
    }

    #[test]
    fn bures_state_is_unitarily_invariant_and_has_bures_purity() {
        let mut rng = RngStream::new(77, 0);
        let states: Vec<DensityMatrix> = (0..100_000).map(|_| sample_bures_state(2, &mut rng).unwrap()).collect();
        within(states.iter().map(|r| r.spectrum().trace_power(2)), 7.0 / 8.0, 4.0);
        within(states.iter().map(|r| r.matrix()[(0, 1)].re), 0.0, 4.0);
        within(states.iter().map(|r| r.matrix()[(0, 1)].im), 0.0, 4.0);
        for r in states.iter().take(50) {
            DensityMatrix::new(r.matrix().clone()).unwrap();
        }
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = RngStream::new(8, 0);
        let u = haar_unitary(6, &mut rng);
        let p = u.adjoint().matmul(&u).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((p[(i, j)] - Complex64::new(e, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn induced_spectra_satisfy_invariants() {
        let mut rng = RngStream::new(4, 0);
        for (n, k) in [(2, 2), (3, 5), (5, 2), (8, 8)] {
            let rho = sample_induced(n, k, &mut rng);
            let ev = hermitian_eigenvalues(rho.matrix()).unwrap();
            assert!(ev[0] >= -1e-12);
            DensityMatrix::new(rho.matrix().clone()).unwrap();
            let s = rho.spectrum();
            assert!((s.values().iter().sum::<f64>() - 1.0).abs() < 1e-12);
            let nonzero = s.values().iter().filter(|&&v| v > 1e-12).count();
            assert_eq!(nonzero, n.min(k));
        }
    }

    #[test]
    fn swap_is_recorded() {
        let s = EnsembleSpec::induced(4, 2).unwrap();
        assert!(s.is_swapped());
        assert_eq!(s.effective_dims(), (2, 4));
        assert!(!EnsembleSpec::induced(2, 4).unwrap().is_swapped());
        assert!(EnsembleSpec::induced(0, 4).is_err());
    }

    #[test]
    fn chain_rejects_short_burn_in() {
        assert!(BuresChain::new(2, RngStream::new(1, 1), 999).is_err());
        assert!(BuresChain::new(1, RngStream::new(1, 1), 5000).is_err());
    }

    #[test]
    fn spectrum_validation() {
        assert!(SpectrumSample::new(vec![0.5, 0.5]).is_ok());
        assert!(SpectrumSample::new(vec![0.6, 0.5]).is_err());
        assert!(SpectrumSample::new(vec![1.1, -0.1]).is_err());
        let s = SpectrumSample::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(s.entropy(), 0.0);
    }

    #[test]
    fn batch_sampling_is_reproducible() {
        let spec = EnsembleSpec::bures(3).unwrap();
        let rng = RngStream::new(5, 5);
        let a = sample_spectra(&spec, 2500, BuresMethod::default_mcmc(3), &rng).unwrap();
        let b = sample_spectra(&spec, 2500, BuresMethod::default_mcmc(3), &rng).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2500);
    }
}
