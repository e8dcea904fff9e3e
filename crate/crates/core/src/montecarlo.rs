//! Monte Carlo estimators checked against exact and asymptotic results.

use serde::Serialize;

use crate::asymptotics::{asymptotic_entropy, integrate_density, AsymptoticMeasure, BURES_EDGE};
use crate::error::{invalid, Result};
use crate::exact::{closed_form_trace, induced_moment, mean_entropy};
use crate::laguerre::bures_trace_moment;
use crate::numerics::rational::{decimal_string, int, to_f64, BigRational};
use crate::numerics::rng::RngStream;
use crate::samplers::{sample_map, BuresMethod, EnsembleKind, EnsembleSpec};

/// Default z threshold for 10⁵-sample checks.
pub const DEFAULT_Z: f64 = 4.0;

/// Smallest sample count accepted by the estimators.
pub const MIN_COUNT: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// How an estimate is judged against its target.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Criterion {
    /// Pass iff `|estimate − target| / standard_error ≤ threshold`.
    ZScore { threshold: f64 },
    /// Pass iff `|estimate − target| ≤ tolerance` (for leading-order targets).
    Absolute { tolerance: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateReport {
    pub quantity: String,
    pub ensemble: EnsembleSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    pub count: usize,
    pub estimate: f64,
    pub standard_error: f64,
    /// Exact target as `"p/q"` when one is known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub target: f64,
    pub z: f64,
    pub criterion: Criterion,
    pub verdict: Verdict,
}

impl EstimateReport {
    /// Builds a report from per-sample values.
    pub fn from_samples(
        quantity: impl Into<String>,
        ensemble: EnsembleSpec,
        q: Option<u32>,
        values: &[f64],
        exact: Option<&BigRational>,
        target: f64,
        criterion: Criterion,
    ) -> Self {
        let (estimate, standard_error) = mean_and_standard_error(values);
        let diff = estimate - target;
        let z = if standard_error > 0.0 {
            diff / standard_error
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY.copysign(diff)
        };
        let ok = match criterion {
            Criterion::ZScore { threshold } => z.abs() <= threshold,
            Criterion::Absolute { tolerance } => diff.abs() <= tolerance,
        };
        Self {
            quantity: quantity.into(),
            ensemble,
            q,
            count: values.len(),
            estimate,
            standard_error,
            exact: exact.map(|e| e.to_string()),
            target,
            z,
            criterion,
            verdict: Verdict::from_bool(ok),
        }
    }
}

/// Sample mean and `s/√n` with `s` the (n−1)-normalized standard deviation.
pub fn mean_and_standard_error(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Exact `⟨Tr ρ^q⟩` for any ensemble the library can evaluate exactly.
pub fn exact_trace_target(spec: &EnsembleSpec, q: u32) -> Result<BigRational> {
    if q == 0 {
        return Err(invalid("q must be at least 1"));
    }
    if q == 1 {
        return Ok(int(1));
    }
    let (n, k) = spec.effective_dims();
    match spec.kind {
        EnsembleKind::HilbertSchmidt | EnsembleKind::Induced => Ok(int(n as i64) * induced_moment(n, k, q)?),
        EnsembleKind::Bures if q <= 4 => closed_form_trace(spec, q),
        EnsembleKind::Bures if n <= 4 => bures_trace_moment(n, q),
        EnsembleKind::Bures => Err(invalid(format!(
            "no exact Bures value implemented for n = {n}, q = {q}"
        ))),
    }
}

fn check_count(count: usize) -> Result<()> {
    if count < MIN_COUNT {
        return Err(invalid(format!("count = {count} is below the minimum of {MIN_COUNT}")));
    }
    Ok(())
}

/// Mean of `Tr ρ^q` against the exact value, judged at `z_threshold`.
pub fn estimate_trace_moment(
    spec: &EnsembleSpec,
    q: u32,
    count: usize,
    method: BuresMethod,
    rng: &RngStream,
    z_threshold: f64,
) -> Result<EstimateReport> {
    check_count(count)?;
    let exact = exact_trace_target(spec, q)?;
    let values = sample_map(spec, count, method, rng, |s| s.trace_power(q))?;
    Ok(EstimateReport::from_samples(
        "trace_moment",
        *spec,
        Some(q),
        &values,
        Some(&exact),
        to_f64(&exact),
        Criterion::ZScore { threshold: z_threshold },
    ))
}

/// Bures entropies are only known to leading order, `ln N − ln 2`.
pub const BURES_ENTROPY_TOLERANCE: f64 = 0.1;

/// Mean von Neumann entropy. Induced and HS estimates are judged against the
/// exact rational mean at `z_threshold`; Bures estimates against the
/// leading-order asymptote within [`BURES_ENTROPY_TOLERANCE`].
pub fn estimate_entropy(
    spec: &EnsembleSpec,
    count: usize,
    method: BuresMethod,
    rng: &RngStream,
    z_threshold: f64,
) -> Result<EstimateReport> {
    check_count(count)?;
    let values = sample_map(spec, count, method, rng, |s| s.entropy())?;
    let (n, k) = spec.effective_dims();
    Ok(match spec.kind {
        EnsembleKind::Bures => {
            let target = if n == 1 {
                0.0
            } else {
                asymptotic_entropy(AsymptoticMeasure::Bures, n)?
            };
            EstimateReport::from_samples(
                "entropy",
                *spec,
                None,
                &values,
                None,
                target,
                Criterion::Absolute {
                    tolerance: BURES_ENTROPY_TOLERANCE,
                },
            )
        }
        _ => {
            let exact = mean_entropy(n, k)?;
            EstimateReport::from_samples(
                "entropy",
                *spec,
                None,
                &values,
                Some(&exact),
                to_f64(&exact),
                Criterion::ZScore { threshold: z_threshold },
            )
        }
    })
}

/// Mean of `S²` against an exact `⟨S S⟩`.
pub fn estimate_entropy_square(
    spec: &EnsembleSpec,
    count: usize,
    rng: &RngStream,
    target: f64,
    z_threshold: f64,
) -> Result<EstimateReport> {
    check_count(count)?;
    let values = sample_map(spec, count, BuresMethod::Rejection, rng, |s| s.entropy().powi(2))?;
    Ok(EstimateReport::from_samples(
        "entropy_square",
        *spec,
        None,
        &values,
        None,
        target,
        Criterion::ZScore { threshold: z_threshold },
    ))
}

/// Density histogram of the rescaled eigenvalues `x = Nλ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralHistogram {
    /// Dimension `N` used to rescale.
    pub n: usize,
    pub edges: Vec<f64>,
    pub density: Vec<f64>,
    pub total: u64,
    pub max_observed: f64,
}

impl SpectralHistogram {
    /// Bins `values` on `[0, max(upper_hint, max value)]`.
    pub fn from_values(values: &[f64], n: usize, bins: usize, upper_hint: f64) -> Result<Self> {
        if bins == 0 || values.is_empty() {
            return Err(invalid("need at least one bin and one value"));
        }
        let max_observed = values.iter().cloned().fold(0.0, f64::max);
        let upper = upper_hint.max(max_observed) * (1.0 + 1e-9);
        let width = upper / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|i| upper * i as f64 / bins as f64).collect();
        let mut counts = vec![0u64; bins];
        for &v in values {
            let b = ((v / width) as usize).min(bins - 1);
            counts[b] += 1;
        }
        let total = values.len() as u64;
        let density = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| c as f64 / (total as f64 * (edges[i + 1] - edges[i])))
            .collect();
        Ok(Self {
            n,
            edges,
            density,
            total,
            max_observed,
        })
    }

    pub fn bins(&self) -> usize {
        self.density.len()
    }

    pub fn width(&self, i: usize) -> f64 {
        self.edges[i + 1] - self.edges[i]
    }

    /// `Σ width · density`, which is 1 up to roundoff.
    pub fn mass(&self) -> f64 {
        (0..self.bins()).map(|i| self.width(i) * self.density[i]).sum()
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }
}

/// Natural right edge of the rescaled spectrum for `spec` at large `N`.
pub fn support_hint(spec: &EnsembleSpec) -> f64 {
    let (n, k) = spec.effective_dims();
    match spec.kind {
        EnsembleKind::Bures => BURES_EDGE,
        _ => (1.0 + (n as f64 / k as f64).sqrt()).powi(2),
    }
}

pub const MIN_HISTOGRAM_EIGENVALUES: usize = 10_000;
pub const MIN_HISTOGRAM_BINS: usize = 20;

/// Histogram of all `N` eigenvalues of `count` samples, rescaled by `N`.
pub fn spectral_histogram(
    spec: &EnsembleSpec,
    count: usize,
    bins: usize,
    method: BuresMethod,
    rng: &RngStream,
) -> Result<SpectralHistogram> {
    let (n, _) = spec.effective_dims();
    if count * n < MIN_HISTOGRAM_EIGENVALUES {
        return Err(invalid(format!(
            "count·n = {} is below the minimum of {MIN_HISTOGRAM_EIGENVALUES} eigenvalues",
            count * n
        )));
    }
    if bins < MIN_HISTOGRAM_BINS {
        return Err(invalid(format!("need at least {MIN_HISTOGRAM_BINS} bins")));
    }
    let scale = n as f64;
    let spectra = sample_map(spec, count, method, rng, |s| {
        s.values().iter().map(|v| v * scale).collect::<Vec<f64>>()
    })?;
    let values: Vec<f64> = spectra.into_iter().flatten().collect();
    SpectralHistogram::from_values(&values, n, bins, support_hint(spec))
}

/// L1 distance of a histogram from an asymptotic density.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityComparison {
    pub measure: AsymptoticMeasure,
    pub l1: f64,
    /// Empirical minus analytic density per bin.
    pub residuals: Vec<f64>,
}

/// `Σ width · |empirical − analytic|`, with the analytic density averaged
/// over each bin. Bin averages are used because both densities diverge at
/// `x → 0`, where a bin-center value misstates the mass of the first bin.
pub fn compare_density(hist: &SpectralHistogram, measure: AsymptoticMeasure) -> DensityComparison {
    let residuals: Vec<f64> = (0..hist.bins())
        .map(|i| {
            let (lo, hi) = (hist.edges[i], hist.edges[i + 1]);
            let analytic = integrate_density(measure, lo, hi) / (hi - lo);
            hist.density[i] - analytic
        })
        .collect();
    let l1 = residuals.iter().enumerate().map(|(i, r)| hist.width(i) * r.abs()).sum();
    DensityComparison { measure, l1, residuals }
}

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Two-sample Kolmogorov-Smirnov distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic 1% critical value `c(α)·√(1/n)` with `c(0.01) = 1.628`.
pub fn ks_critical_one_sample(n: usize) -> f64 {
    1.628 / (n as f64).sqrt()
}

/// Asymptotic 1% critical value `c(α)·√((n+m)/(nm))`.
pub fn ks_critical_two_sample(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    1.628 * ((n + m) / (n * m)).sqrt()
}

/// Decimal rendering used in reports for exact targets.
pub fn render_exact(x: &BigRational) -> String {
    decimal_string(x, 16)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;
    use crate::samplers::{sample_bures_rejection_batch, sample_dirichlet_half, sample_spectra};

    const HS: AsymptoticMeasure = AsymptoticMeasure::HilbertSchmidt;
    const B: AsymptoticMeasure = AsymptoticMeasure::Bures;

    #[test]
    fn report_arithmetic() {
        let spec = EnsembleSpec::hs(2).unwrap();
        let r = EstimateReport::from_samples(
            "x",
            spec,
            None,
            &[1.0, 2.0, 3.0, 4.0],
            None,
            2.5,
            Criterion::ZScore { threshold: 4.0 },
        );
        assert_eq!(r.estimate, 2.5);
        assert!((r.standard_error - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        assert_eq!(r.z, 0.0);
        assert!(r.verdict.passed());
    }

    #[test]
    fn trace_estimates() {
        let rng = RngStream::new(11, 0);
        let hs = EnsembleSpec::hs(2).unwrap();
        let r = estimate_trace_moment(&hs, 2, 100_000, BuresMethod::Rejection, &rng, DEFAULT_Z).unwrap();
        assert!(r.verdict.passed(), "{r:?}");
        assert_eq!(r.exact.as_deref(), Some("4/5"));
        let ind = EnsembleSpec::induced(2, 4).unwrap();
        let r = estimate_trace_moment(&ind, 2, 100_000, BuresMethod::Rejection, &rng.substream(1), DEFAULT_Z).unwrap();
        assert_eq!(r.exact.as_deref(), Some("2/3"));
        assert!(r.verdict.passed(), "{r:?}");
        let b = EnsembleSpec::bures(2).unwrap();
        let r = estimate_trace_moment(&b, 4, 100_000, BuresMethod::Rejection, &rng.substream(2), DEFAULT_Z).unwrap();
        assert_eq!(r.exact.as_deref(), Some("49/64"));
        assert!(r.verdict.passed(), "{r:?}");
        assert!(estimate_trace_moment(&b, 2, 999, BuresMethod::Rejection, &rng, DEFAULT_Z).is_err());
    }

    #[test]
    fn reports_are_reproducible() {
        let rng = RngStream::new(99, 3);
        let spec = EnsembleSpec::induced(3, 5).unwrap();
        let a = estimate_trace_moment(&spec, 3, 3000, BuresMethod::Rejection, &rng, DEFAULT_Z).unwrap();
        let b = estimate_trace_moment(&spec, 3, 3000, BuresMethod::Rejection, &rng, DEFAULT_Z).unwrap();
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        assert_eq!(a.standard_error.to_bits(), b.standard_error.to_bits());
    }

    #[test]
    fn entropy_estimates() {
        let rng = RngStream::new(12, 0);
        let r = estimate_entropy(
            &EnsembleSpec::hs(2).unwrap(),
            100_000,
            BuresMethod::Rejection,
            &rng,
            DEFAULT_Z,
        )
        .unwrap();
        assert_eq!(r.exact.as_deref(), Some("1/3"));
        assert!(r.verdict.passed(), "{r:?}");
        let r = estimate_entropy(
            &EnsembleSpec::hs(3).unwrap(),
            100_000,
            BuresMethod::Rejection,
            &rng.substream(1),
            DEFAULT_Z,
        )
        .unwrap();
        assert!(r.verdict.passed(), "{r:?}");
        // Pure states.
        for spec in [EnsembleSpec::hs(1).unwrap(), EnsembleSpec::induced(3, 1).unwrap()] {
            let r = estimate_entropy(&spec, 1000, BuresMethod::Rejection, &rng, DEFAULT_Z).unwrap();
            assert_eq!(r.estimate, 0.0);
            assert_eq!(r.standard_error, 0.0);
            assert!(r.verdict.passed());
        }
    }

    #[test]
    fn bures_entropy_near_leading_order() {
        let rng = RngStream::new(13, 0);
        let spec = EnsembleSpec::bures(16).unwrap();
        let r = estimate_entropy(&spec, 10_000, BuresMethod::default_mcmc(16), &rng, DEFAULT_Z).unwrap();
        assert!(r.verdict.passed(), "{r:?}");
    }

    #[test]
    fn histogram_mass_is_one() {
        let rng = RngStream::new(14, 0);
        for spec in [
            EnsembleSpec::hs(4).unwrap(),
            EnsembleSpec::induced(3, 7).unwrap(),
            EnsembleSpec::bures(3).unwrap(),
        ] {
            let h = spectral_histogram(&spec, 5000, 30, BuresMethod::Rejection, &rng).unwrap();
            assert!((h.mass() - 1.0).abs() < 1e-12);
            assert_eq!(h.total, 5000 * spec.effective_dims().0 as u64);
        }
        let spec = EnsembleSpec::hs(4).unwrap();
        assert!(spectral_histogram(&spec, 100, 30, BuresMethod::Rejection, &rng).is_err());
        assert!(spectral_histogram(&spec, 5000, 10, BuresMethod::Rejection, &rng).is_err());
    }

    #[test]
    fn synthetic_self_comparison() {
        for (m, bins) in [(HS, 64), (B, 48)] {
            let upper = m.support_upper();
            let edges: Vec<f64> = (0..=bins).map(|i| upper * i as f64 / bins as f64).collect();
            let density = edges
                .windows(2)
                .map(|w| integrate_density(m, w[0], w[1]) / (w[1] - w[0]))
                .collect();
            let h = SpectralHistogram {
                n: 1,
                edges,
                density,
                total: 1,
                max_observed: upper,
            };
            assert!(compare_density(&h, m).l1 < 1e-3);
            assert!((h.mass() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn hs_histogram_converges_and_separates_from_bures() {
        let rng = RngStream::new(2003, 0);
        let spec = EnsembleSpec::hs(64).unwrap();
        let h = spectral_histogram(&spec, 200, 64, BuresMethod::Rejection, &rng).unwrap();
        let same = compare_density(&h, HS).l1;
        let other = compare_density(&h, B).l1;
        assert!(same < 0.05, "{same}");
        assert!(other > 3.0 * same, "{other} vs {same}");
    }

    #[test]
    fn quarter_circle_histogram() {
        // √x of HS eigenvalues follows (1/π)√(4 − y²) on [0, 2].
        let rng = RngStream::new(15, 0);
        let spec = EnsembleSpec::hs(48).unwrap();
        let ys: Vec<f64> = sample_spectra(&spec, 100, BuresMethod::Rejection, &rng)
            .unwrap()
            .iter()
            .flat_map(|s| s.values().iter().map(|v| (48.0 * v).sqrt()).collect::<Vec<_>>())
            .collect();
        let h = SpectralHistogram::from_values(&ys, 48, 40, 2.0).unwrap();
        let circle = |y: f64| (4.0 - y * y).max(0.0).sqrt() / std::f64::consts::PI;
        let l1: f64 = (0..h.bins())
            .map(|i| {
                let (lo, hi) = (h.edges[i], h.edges[i + 1]);
                let avg = crate::numerics::quadrature::integrate(circle, lo, hi).value / (hi - lo);
                (hi - lo) * (h.density[i] - avg).abs()
            })
            .sum();
        assert!(l1 < 0.05, "{l1}");
    }

    #[test]
    fn ks_helpers() {
        assert_eq!(ks_two_sample(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), 0.0);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]), 1.0);
        let d = ks_statistic(&[0.5], |x| x);
        assert_eq!(d, 0.5);
        assert!((ks_critical_two_sample(100, 100) - 1.628 * 0.02f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn dirichlet_half_marginal_is_arcsine() {
        let mut rng = RngStream::new(16, 0);
        // Coordinate 1 of an unsorted draw: pick one of the two at random.
        let xs: Vec<f64> = (0..100_000)
            .map(|_| {
                let s = sample_dirichlet_half(2, &mut rng);
                s.values()[rng.below(2)]
            })
            .collect();
        let cdf = |x: f64| 2.0 / std::f64::consts::PI * x.sqrt().asin();
        assert!(ks_statistic(&xs, cdf) < ks_critical_one_sample(xs.len()));
    }

    #[test]
    fn bures_rejection_acceptance_rate() {
        let rng = RngStream::new(17, 0);
        let (samples, stats) = sample_bures_rejection_batch(2, 50_000, &rng).unwrap();
        // Each proposal is a Bernoulli(1/2) trial, so the rate has se √(1/4P).
        let p = stats.acceptance_rate();
        let se = (0.25 / stats.proposals as f64).sqrt();
        assert!((p - 0.5).abs() < 4.0 * se, "{p}");
        let purity: Vec<f64> = samples.iter().map(|s| s.trace_power(2)).collect();
        let (m, se) = mean_and_standard_error(&purity);
        assert!((m - 0.875).abs() < 4.0 * se);
    }

    #[test]
    fn mcmc_agrees_with_rejection() {
        for n in [2usize, 3] {
            let spec = EnsembleSpec::bures(n).unwrap();
            let rng = RngStream::new(18, n as u64);
            let exact = sample_spectra(&spec, 20_000, BuresMethod::Rejection, &rng).unwrap();
            let chain = sample_spectra(
                &spec,
                20_000,
                BuresMethod::Mcmc {
                    burn_in: 10_000,
                    thinning: 20,
                },
                &rng.substream(77),
            )
            .unwrap();
            let a: Vec<f64> = exact.iter().map(|s| s.largest()).collect();
            let b: Vec<f64> = chain.iter().map(|s| s.largest()).collect();
            let d = ks_two_sample(&a, &b);
            assert!(d < ks_critical_two_sample(a.len(), b.len()), "n={n} D={d}");
        }
    }

    #[test]
    fn mcmc_moments() {
        let rng = RngStream::new(19, 0);
        let spec = EnsembleSpec::bures(3).unwrap();
        let values = sample_map(
            &spec,
            100_000,
            BuresMethod::Mcmc {
                burn_in: 10_000,
                thinning: 10,
            },
            &rng,
            |s| s.trace_power(3),
        )
        .unwrap();
        let (m, se) = mean_and_standard_error(&values);
        assert!((m - 79.0 / 143.0).abs() < 5.0 * se, "{m} ± {se}");
    }

    #[test]
    fn induced_swap_agrees_in_distribution() {
        let rng = RngStream::new(20, 0);
        let a: Vec<f64> = sample_map(
            &EnsembleSpec::induced(2, 3).unwrap(),
            20_000,
            BuresMethod::Rejection,
            &rng,
            |s| s.largest(),
        )
        .unwrap();
        let mut r = rng.substream(5);
        let b: Vec<f64> = (0..20_000)
            .map(|_| crate::samplers::sample_induced(3, 2, &mut r).spectrum().largest())
            .collect();
        assert!(ks_two_sample(&a, &b) < ks_critical_two_sample(a.len(), b.len()));
    }

    #[test]
    fn exact_targets() {
        assert_eq!(
            exact_trace_target(&EnsembleSpec::bures(3).unwrap(), 3).unwrap(),
            rat(79, 143)
        );
        assert_eq!(
            exact_trace_target(&EnsembleSpec::induced(4, 2).unwrap(), 2).unwrap(),
            rat(2, 3)
        );
        assert_eq!(exact_trace_target(&EnsembleSpec::hs(5).unwrap(), 1).unwrap(), int(1));
        assert!(exact_trace_target(&EnsembleSpec::bures(8).unwrap(), 5).is_err());
    }
}
