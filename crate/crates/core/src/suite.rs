//! Reproducible verification suite: exact identities, asymptotic formulas and
//! Monte Carlo cross-checks, each reported as a named pass/fail check.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde::Serialize;

use crate::asymptotics::{
    bures_green, density_from_green, density_moment, exact_density_moment, hs_green, log_log_slope, pastur_residual,
    pastur_solve, AsymptoticMeasure, BURES_EDGE, DENSITY_DELTA,
};
use crate::error::Result;
use crate::exact::{
    closed_form_trace, entropy_correlation, entropy_variance, induced_moment, lambda2_log2_term, mean_entropy,
    two_point_moment, w_matrix, ExactDensityCoefficients, TwoPointCoefficients,
};
use crate::laguerre::{bures_laguerre_jet, bures_trace_moment, hs_laguerre_jet, hs_trace_moment};
use crate::montecarlo::{
    compare_density, estimate_entropy, estimate_entropy_square, estimate_trace_moment, ks_critical_two_sample,
    ks_two_sample, spectral_histogram, EstimateReport, DEFAULT_Z,
};
use crate::numerics::quadrature::integrate;
use crate::numerics::rational::{int, rat, to_f64, BigRational};
use crate::numerics::rng::RngStream;
use crate::samplers::{sample_bures_rejection_batch, sample_map, BuresMethod, EnsembleSpec};

/// Default seed of the suite.
pub const DEFAULT_SEED: u64 = 20_030_324;

/// L1 regression bound for HS, `n = 128`, 200 samples, 64 bins.
pub const HS_L1_BOUND: f64 = 0.03;
/// L1 regression bound for Bures (chain), `n = 32`, 1000 spectra, 48 bins.
pub const BURES_L1_BOUND: f64 = 0.08;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Exact,
    Sampling,
    Asymptotic,
    All,
}

impl Suite {
    fn includes(self, part: Suite) -> bool {
        self == Suite::All || self == part
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<EstimateReport>,
}

impl CheckOutcome {
    fn pass() -> Self {
        Self {
            passed: true,
            ..Self::default()
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str(&what.into());
        }
    }

    fn metric(&mut self, name: &str, value: f64) {
        self.metrics.insert(name.to_string(), value);
    }

    fn report(&mut self, r: EstimateReport) {
        self.require(
            r.verdict.passed(),
            format!("{} {} failed (z = {:.2})", r.quantity, r.ensemble, r.z),
        );
        self.reports.push(r);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub skipped: bool,
    pub seconds: f64,
    #[serde(flatten)]
    pub outcome: CheckOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub seconds: f64,
    pub checks: Vec<CheckResult>,
}

type CheckFn = fn(&RngStream) -> Result<CheckOutcome>;

fn checks(suite: Suite) -> Vec<(Suite, &'static str, CheckFn)> {
    let mut out: Vec<(Suite, &'static str, CheckFn)> = Vec::new();
    if suite.includes(Suite::Exact) {
        out.extend([
            (Suite::Exact, "closed_form_examples", exact_examples as CheckFn),
            (Suite::Exact, "induced_moments_vs_closed_forms", induced_vs_closed),
            (Suite::Exact, "w_inverse_identity", w_inverse_identity),
            (Suite::Exact, "laguerre_jet_coefficients", jet_coefficients),
            (Suite::Exact, "laguerre_jet_moments", jet_moments),
            (Suite::Exact, "page_entropy", page_entropy),
            (Suite::Exact, "two_point_moments", two_point_identities),
            (Suite::Exact, "density_normalization", density_normalization),
            (Suite::Exact, "two_point_marginalization", two_point_marginal),
            (Suite::Exact, "entropy_correlation", entropy_correlation_check),
            (Suite::Exact, "hs_below_bures", ordering),
        ]);
    }
    if suite.includes(Suite::Asymptotic) {
        out.extend([
            (Suite::Asymptotic, "density_moments", asymptotic_moments as CheckFn),
            (Suite::Asymptotic, "small_x_exponents", small_x_exponents),
            (Suite::Asymptotic, "pastur_residuals", pastur_residuals),
            (Suite::Asymptotic, "pastur_solver", pastur_solver),
            (Suite::Asymptotic, "green_density_duality", green_duality),
        ]);
    }
    if suite.includes(Suite::Sampling) {
        out.extend([
            (Suite::Sampling, "trace_moments", sampled_traces as CheckFn),
            (Suite::Sampling, "mean_entropy", sampled_entropy),
            (Suite::Sampling, "entropy_square", sampled_entropy_square),
            (Suite::Sampling, "bures_rejection", bures_rejection),
            (Suite::Sampling, "bures_mcmc_vs_rejection", bures_mcmc_vs_rejection),
            (Suite::Sampling, "hs_level_density", hs_level_density),
            (Suite::Sampling, "bures_level_density", bures_level_density),
        ]);
    }
    out
}

/// Runs the selected checks in a fixed order. Once `budget` is exhausted the
/// remaining checks are reported as skipped (and therefore not passed).
pub fn run_suite(suite: Suite, seed: u64, budget: Option<Duration>) -> SuiteReport {
    run_filtered(suite, seed, budget, |_| true)
}

/// As [`run_suite`], restricted to checks whose name satisfies `keep`.
pub fn run_filtered(suite: Suite, seed: u64, budget: Option<Duration>, keep: impl Fn(&str) -> bool) -> SuiteReport {
    let start = Instant::now();
    let root = RngStream::new(seed, 0);
    let mut results = Vec::new();
    for (i, (part, name, f)) in checks(suite).into_iter().enumerate() {
        if !keep(name) {
            continue;
        }
        let t0 = Instant::now();
        if budget.is_some_and(|b| start.elapsed() >= b) {
            results.push(CheckResult {
                suite: part,
                name: name.to_string(),
                passed: false,
                skipped: true,
                seconds: 0.0,
                outcome: CheckOutcome {
                    detail: "time budget exhausted".into(),
                    ..CheckOutcome::default()
                },
            });
            continue;
        }
        let outcome = f(&root.substream(i as u64)).unwrap_or_else(|e| CheckOutcome {
            passed: false,
            detail: e.to_string(),
            ..CheckOutcome::default()
        });
        results.push(CheckResult {
            suite: part,
            name: name.to_string(),
            passed: outcome.passed,
            skipped: false,
            seconds: t0.elapsed().as_secs_f64(),
            outcome,
        });
    }
    SuiteReport {
        suite,
        seed,
        passed: results.iter().all(|r| r.passed),
        seconds: start.elapsed().as_secs_f64(),
        checks: results,
    }
}

// ---- exact -------------------------------------------------------------

fn exact_examples(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    let hs = |n| EnsembleSpec::hs(n);
    let b = |n| EnsembleSpec::bures(n);
    for n in 2..=4usize {
        let nn = int(n as i64);
        let n2 = &nn * &nn;
        o.require(
            closed_form_trace(&hs(n)?, 2)? == int(2) * &nn / (&n2 + int(1)),
            format!("HS purity n={n}"),
        );
        o.require(
            closed_form_trace(&b(n)?, 2)? == (int(5) * &n2 + int(1)) / (int(2) * &nn * (&n2 + int(2))),
            format!("Bures purity n={n}"),
        );
    }
    o.require(closed_form_trace(&hs(2)?, 2)? == rat(4, 5), "HS n=2 purity 4/5");
    o.require(closed_form_trace(&b(2)?, 2)? == rat(7, 8), "Bures n=2 purity 7/8");
    o.require(closed_form_trace(&b(2)?, 3)? == rat(13, 16), "Bures n=2 q=3 13/16");
    o.require(closed_form_trace(&b(2)?, 4)? == rat(49, 64), "Bures n=2 q=4 49/64");
    o.require(closed_form_trace(&b(3)?, 3)? == rat(79, 143), "Bures n=3 q=3 79/143");
    o.require(
        closed_form_trace(&EnsembleSpec::induced(2, 3)?, 3)? == rat(4, 7),
        "induced (2,3) q=3 4/7",
    );
    Ok(o)
}

fn induced_vs_closed(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    for n in 2..=4usize {
        for k in n..=n + 3 {
            let spec = EnsembleSpec::induced(n, k)?;
            for q in 2..=4 {
                let lhs = int(n as i64) * induced_moment(n, k, q)?;
                o.require(lhs == closed_form_trace(&spec, q)?, format!("(n,k,q)=({n},{k},{q})"));
            }
            o.require(
                induced_moment(n, k, 1)? == rat(1, n as i64),
                format!("<λ> at ({n},{k})"),
            );
        }
    }
    Ok(o)
}

fn w_inverse_identity(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    for n in 1..=12 {
        for k in n..=12 {
            // Construction already cross-checks elimination against the closed-form inverse.
            let w = w_matrix(n, k)?;
            for i in 0..n {
                for j in 0..n {
                    let s: BigRational = (0..n).map(|l| &w.w[i][l] * &w.w_inv[l][j]).sum();
                    o.require(
                        s == if i == j { int(1) } else { int(0) },
                        format!("(W W⁻¹) at ({n},{k})"),
                    );
                }
            }
        }
    }
    Ok(o)
}

fn jet_coefficients(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    for n in 1..=4usize {
        let nn = int(n as i64);
        let b = bures_laguerre_jet(n, 2)?.series;
        let h = hs_laguerre_jet(n, 2)?.series;
        let e = |idx: &[usize]| {
            let mut v = vec![0u32; n];
            for &i in idx {
                v[i] += 1;
            }
            v
        };
        let cross = &nn * &nn / int(8) + rat(1, 16);
        o.require(b.coefficient(&e(&[0])) == -&nn / int(2), format!("Bures E₁ n={n}"));
        o.require(
            b.coefficient(&e(&[0, 0])) == &cross + int(3) * &nn / int(16),
            format!("Bures E₁² n={n}"),
        );
        o.require(h.coefficient(&e(&[0])) == -&nn, format!("HS E₁ n={n}"));
        o.require(
            h.coefficient(&e(&[0, 0])) == &nn * &nn / int(2) + &nn / int(2),
            format!("HS E₁² n={n}"),
        );
        if n >= 2 {
            o.require(
                b.coefficient(&e(&[0, 1])) == int(2) * &cross,
                format!("Bures E₁E₂ n={n}"),
            );
            o.require(h.coefficient(&e(&[0, 1])) == &nn * &nn, format!("HS E₁E₂ n={n}"));
        }
    }
    Ok(o)
}

fn jet_moments(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    for n in 2..=4 {
        o.require(bures_trace_moment(n, 1)? == int(1), format!("Bures q=1 n={n}"));
        for q in 2..=4 {
            let spec = EnsembleSpec::bures(n)?;
            o.require(
                bures_trace_moment(n, q)? == closed_form_trace(&spec, q)?,
                format!("Bures n={n} q={q}"),
            );
        }
    }
    for n in 2..=3 {
        for q in 2..=3 {
            let spec = EnsembleSpec::hs(n)?;
            o.require(
                hs_trace_moment(n, q)? == closed_form_trace(&spec, q)?,
                format!("HS n={n} q={q}"),
            );
        }
    }
    Ok(o)
}

fn page_entropy(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    o.require(mean_entropy(2, 2)? == rat(1, 3), "<S>(2,2) = 1/3");
    for n in 2..=5usize {
        for k in n..=n + 3 {
            let page: BigRational =
                (k + 1..=k * n).map(|m| rat(1, m as i64)).sum::<BigRational>() - rat((n - 1) as i64, (2 * k) as i64);
            o.require(mean_entropy(n, k)? == page, format!("Page sum ({n},{k})"));
        }
    }
    let mut last = f64::INFINITY;
    for n in [8usize, 16, 32] {
        let gap = (to_f64(&mean_entropy(n, n)?) - (n as f64).ln() + 0.5).abs();
        o.metric(&format!("gap_n{n}"), gap);
        o.require(gap < last, format!("entropy gap not decreasing at n={n}"));
        last = gap;
    }
    Ok(o)
}

fn two_point_identities(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    o.require(two_point_moment(2, 2, 1, 1)? == rat(1, 10), "<λμ>(2,2) = 1/10");
    o.require(two_point_moment(2, 3, 1, 1)? == rat(1, 7), "<λμ>(2,3) = 1/7");
    for (n, k) in [(2, 2), (2, 3), (3, 3), (3, 5), (4, 4), (4, 6)] {
        let nn = int(n as i64);
        let lhs = &nn * (&nn - int(1)) * two_point_moment(n, k, 1, 1)? + &nn * induced_moment(n, k, 2)?;
        o.require(lhs == int(1), format!("trace identity ({n},{k})"));
    }
    Ok(o)
}

fn density_normalization(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    for n in 2..=6 {
        let c = ExactDensityCoefficients::new(n, n)?;
        o.require(c.total_mass() == int(1), format!("exact mass n={n}"));
        let mass = integrate(|l| c.eval(l), 0.0, 1.0).value;
        let mean = integrate(|l| l * c.eval(l), 0.0, 1.0).value;
        o.require((mass - 1.0).abs() < 1e-10, format!("quadrature mass n={n}: {mass}"));
        o.require(
            (mean - 1.0 / n as f64).abs() < 1e-10,
            format!("quadrature mean n={n}: {mean}"),
        );
    }
    Ok(o)
}

fn two_point_marginal(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    let pair = TwoPointCoefficients::new(3, 3)?;
    let one = ExactDensityCoefficients::new(3, 3)?;
    let mut worst: f64 = 0.0;
    for l in [0.1, 0.3, 0.5] {
        let m = integrate(|mu| pair.eval(l, mu), 0.0, 1.0 - l).value;
        worst = worst.max((m - one.eval(l)).abs());
        o.require(pair.eval(l, l).abs() < 1e-12, format!("repulsion at λ=μ={l}"));
    }
    o.metric("max_marginal_error", worst);
    o.require(worst < 1e-8, "marginal differs from one-point density");
    Ok(o)
}

fn entropy_correlation_check(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    let exact = to_f64(&lambda2_log2_term(2, 2)?) / 2.0;
    let quad = integrate(
        |l| {
            let ln = l.ln();
            l * l * ln * ln * 3.0 * (2.0 * l - 1.0).powi(2)
        },
        0.0,
        1.0,
    )
    .value;
    o.metric("lambda2_log2_error", (exact - quad).abs());
    o.require((exact - quad).abs() < 1e-10, "<λ² ln² λ> vs quadrature");
    for (n, k) in [(2, 2), (3, 3), (2, 4)] {
        let v = entropy_variance(n, k)?.to_f64();
        o.require(v > 0.0, format!("variance ({n},{k}) = {v}"));
    }
    o.metric("SS_2_2", entropy_correlation(2, 2)?.to_f64());
    Ok(o)
}

fn ordering(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    for n in 2..=10 {
        for q in 2..=4 {
            let hs = closed_form_trace(&EnsembleSpec::hs(n)?, q)?;
            let b = closed_form_trace(&EnsembleSpec::bures(n)?, q)?;
            o.require(hs < b, format!("n={n} q={q}"));
        }
    }
    Ok(o)
}

// ---- asymptotic --------------------------------------------------------

const MEASURES: [AsymptoticMeasure; 2] = [AsymptoticMeasure::HilbertSchmidt, AsymptoticMeasure::Bures];

fn asymptotic_moments(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    let targets = [
        (AsymptoticMeasure::HilbertSchmidt, [1.0, 1.0, 2.0, 5.0]),
        (AsymptoticMeasure::Bures, [1.0, 1.0, 2.5, 8.0]),
    ];
    for (m, vals) in targets {
        for (q, &v) in vals.iter().enumerate() {
            let quad = density_moment(m, q as f64)?;
            let tol = if q <= 1 { 1e-8 } else { 1e-7 };
            o.require((quad - v).abs() < tol, format!("{m:?} q={q}: {quad}"));
            o.require(
                (exact_density_moment(m, q as f64)? - v).abs() < 1e-10,
                format!("{m:?} closed form q={q}"),
            );
        }
    }
    Ok(o)
}

fn small_x_exponents(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    for (m, expected) in [
        (AsymptoticMeasure::HilbertSchmidt, -0.5),
        (AsymptoticMeasure::Bures, -2.0 / 3.0),
    ] {
        let s = log_log_slope(|x| m.density(x), 1e-6, 1e-4, 25);
        o.metric(&format!("{m:?}_slope"), s);
        o.require((s - expected).abs() < 0.01, format!("{m:?} slope {s}"));
    }
    Ok(o)
}

fn pastur_residuals(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    let r1 = pastur_residual(
        1.0,
        Complex64::new(-1.0, 0.0),
        Complex64::new((5f64.sqrt() - 1.0) / 2.0, 0.0),
    )
    .norm();
    let r2 = pastur_residual(2.0, Complex64::new(-BURES_EDGE, 0.0), Complex64::new(1.0 / 6.0, 0.0)).norm();
    o.metric("residual_alpha1", r1);
    o.metric("residual_alpha2", r2);
    o.require(r1 < 1e-14 && r2 < 1e-14, "closed-form roots");
    let mut worst: f64 = 0.0;
    for &t in &[
        Complex64::new(-0.5, 0.0),
        Complex64::new(1.0, 0.3),
        Complex64::new(8.0, 0.0),
        Complex64::new(2.0, -1.0),
    ] {
        worst = worst.max(pastur_residual(1.0, t, hs_green(t)?.g).norm());
        worst = worst.max(pastur_residual(2.0, t, bures_green(t)?.g).norm());
    }
    o.metric("max_green_residual", worst);
    o.require(worst < 1e-12, "Green functions solve the Pastur equations");
    Ok(o)
}

fn pastur_solver(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let t = Complex64::new(-10.0 + 9.9 * i as f64 / 49.0, 0.0);
        worst = worst.max((pastur_solve(1.0, t)? - hs_green(t)?.g).norm());
        worst = worst.max((pastur_solve(2.0, t)? - bures_green(t)?.g).norm());
    }
    o.metric("max_difference", worst);
    o.require(worst < 1e-10, "solver vs closed forms");
    Ok(o)
}

fn green_duality(_: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    for m in MEASURES {
        let mut worst: f64 = 0.0;
        for i in 1..100 {
            let x = m.support_upper() * i as f64 / 100.0;
            worst = worst.max((density_from_green(m, x, DENSITY_DELTA)? - m.density(x)).abs());
        }
        o.metric(&format!("{m:?}_max_error"), worst);
        o.require(worst < 1e-5, format!("{m:?} duality"));
    }
    Ok(o)
}

// ---- sampling ----------------------------------------------------------

const N_SAMPLES: usize = 100_000;

fn sampled_traces(rng: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    let cases = [
        (EnsembleSpec::hs(2)?, 2),
        (EnsembleSpec::hs(2)?, 3),
        (EnsembleSpec::hs(3)?, 2),
        (EnsembleSpec::induced(2, 3)?, 2),
        (EnsembleSpec::induced(2, 4)?, 2),
        (EnsembleSpec::bures(2)?, 2),
        (EnsembleSpec::bures(2)?, 4),
    ];
    for (i, (spec, q)) in cases.iter().enumerate() {
        let r = estimate_trace_moment(
            spec,
            *q,
            N_SAMPLES,
            BuresMethod::Rejection,
            &rng.substream(i as u64),
            DEFAULT_Z,
        )?;
        o.report(r);
    }
    Ok(o)
}

fn sampled_entropy(rng: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    for (i, spec) in [EnsembleSpec::hs(2)?, EnsembleSpec::hs(3)?].iter().enumerate() {
        o.report(estimate_entropy(
            spec,
            N_SAMPLES,
            BuresMethod::Rejection,
            &rng.substream(i as u64),
            DEFAULT_Z,
        )?);
    }
    let b16 = EnsembleSpec::bures(16)?;
    o.report(estimate_entropy(
        &b16,
        10_000,
        BuresMethod::default_mcmc(16),
        &rng.substream(9),
        DEFAULT_Z,
    )?);
    Ok(o)
}

fn sampled_entropy_square(rng: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    let target = entropy_correlation(2, 2)?.to_f64();
    o.report(estimate_entropy_square(
        &EnsembleSpec::hs(2)?,
        N_SAMPLES,
        rng,
        target,
        5.0,
    )?);
    Ok(o)
}

fn bures_rejection(rng: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    let (samples, stats) = sample_bures_rejection_batch(2, N_SAMPLES, rng)?;
    let p = stats.acceptance_rate();
    let se = (p * (1.0 - p) / stats.proposals as f64).sqrt();
    o.metric("acceptance_rate", p);
    o.metric("acceptance_z", (p - 0.5) / se);
    o.require(((p - 0.5) / se).abs() <= DEFAULT_Z, "acceptance rate vs 1/2");
    let purity: Vec<f64> = samples.iter().map(|s| s.trace_power(2)).collect();
    o.report(EstimateReport::from_samples(
        "trace_moment",
        EnsembleSpec::bures(2)?,
        Some(2),
        &purity,
        Some(&rat(7, 8)),
        0.875,
        crate::montecarlo::Criterion::ZScore { threshold: DEFAULT_Z },
    ));
    Ok(o)
}

/// Chain settings for the rejection-vs-chain comparison.
pub const KS_CHAIN: BuresMethod = BuresMethod::Mcmc {
    burn_in: 10_000,
    thinning: 20,
};

fn bures_mcmc_vs_rejection(rng: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    for n in [2usize, 3] {
        let spec = EnsembleSpec::bures(n)?;
        let count = 20_000;
        let a = sample_map(&spec, count, BuresMethod::Rejection, &rng.substream(n as u64), |s| {
            s.largest()
        })?;
        let b = sample_map(&spec, count, KS_CHAIN, &rng.substream(100 + n as u64), |s| s.largest())?;
        let d = ks_two_sample(&a, &b);
        let crit = ks_critical_two_sample(count, count);
        o.metric(&format!("ks_n{n}"), d);
        o.metric(&format!("ks_critical_n{n}"), crit);
        o.require(d < crit, format!("KS n={n}: {d} ≥ {crit}"));
    }
    Ok(o)
}

fn hs_level_density(rng: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    let h = spectral_histogram(&EnsembleSpec::hs(128)?, 200, 64, BuresMethod::Rejection, rng)?;
    let same = compare_density(&h, AsymptoticMeasure::HilbertSchmidt).l1;
    let other = compare_density(&h, AsymptoticMeasure::Bures).l1;
    o.metric("l1_hs", same);
    o.metric("l1_vs_bures", other);
    o.require(same < HS_L1_BOUND, format!("L1 {same}"));
    o.require(other > 3.0 * same, "HS histogram not separated from the Bures density");
    Ok(o)
}

fn bures_level_density(rng: &RngStream) -> Result<CheckOutcome> {
    let mut o = CheckOutcome::pass();
    let h = spectral_histogram(&EnsembleSpec::bures(32)?, 1000, 48, BuresMethod::default_mcmc(32), rng)?;
    let l1 = compare_density(&h, AsymptoticMeasure::Bures).l1;
    o.metric("l1_bures", l1);
    o.metric("max_x", h.max_observed);
    o.require(l1 < BURES_L1_BOUND, format!("L1 {l1}"));
    o.require(h.max_observed < BURES_EDGE * 1.1, "support exceeds 1.1·3√3");
    Ok(o)
}
