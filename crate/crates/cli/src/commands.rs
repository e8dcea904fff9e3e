use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::ValueEnum;
use rho_ensembles::asymptotics::AsymptoticMeasure;
use rho_ensembles::exact::{
    closed_form_trace, entropy_correlation, induced_moment, mean_entropy, page_entropy, two_point_moment,
    ExactDensityCoefficients, TwoPointCoefficients,
};
use rho_ensembles::laguerre::{bures_trace_moment, hs_trace_moment};
use rho_ensembles::output::{write_csv, CsvMetadata, ExactRecord, ExactValue};
use rho_ensembles::samplers::{sample_spectra, BuresMethod};
use rho_ensembles::suite::{run_suite, Suite};
use rho_ensembles::{BigRational, EnsembleKind, EnsembleSpec, Error, RngStream};
use serde::Serialize;

use crate::{DensityKind, EnsembleArg, ExactQuantity, FormatArg, SamplerArg, SuiteArg};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::NotSquare { .. }
            | Error::NotHermitian { .. }
            | Error::Distributional(_) => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn open_output(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn build_spec(ensemble: EnsembleArg, n: usize, k: Option<usize>) -> Result<EnsembleSpec, CliError> {
    let kind = match ensemble {
        EnsembleArg::Hs => EnsembleKind::HilbertSchmidt,
        EnsembleArg::Induced => EnsembleKind::Induced,
        EnsembleArg::Bures => EnsembleKind::Bures,
    };
    if let Some(k) = k {
        if kind != EnsembleKind::Induced && k != n {
            return Err(usage(format!(
                "--k applies to the induced ensemble only ({kind} has k = n = {n})"
            )));
        }
    }
    Ok(EnsembleSpec::new(kind, n, k.unwrap_or(n))?)
}

pub struct SampleArgs {
    pub ensemble: EnsembleArg,
    pub n: usize,
    pub k: Option<usize>,
    pub count: usize,
    pub seed: u64,
    pub sampler: Option<SamplerArg>,
    pub burn_in: Option<u64>,
    pub thinning: Option<u64>,
    pub format: FormatArg,
    pub out: Option<PathBuf>,
}

pub fn sample(a: SampleArgs) -> Result<(), CliError> {
    let spec = build_spec(a.ensemble, a.n, a.k)?;
    if a.count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let is_bures = spec.kind == EnsembleKind::Bures;
    if !is_bures && (a.sampler.is_some() || a.burn_in.is_some() || a.thinning.is_some()) {
        return Err(usage(
            "--sampler, --burn-in and --thinning apply to the Bures ensemble only",
        ));
    }
    let method = match a.sampler {
        None if a.burn_in.is_none() && a.thinning.is_none() => BuresMethod::default_for(spec.n),
        Some(SamplerArg::Rejection) if a.burn_in.is_none() && a.thinning.is_none() => BuresMethod::Rejection,
        Some(SamplerArg::Rejection) => return Err(usage("--burn-in/--thinning need --sampler mcmc")),
        None | Some(SamplerArg::Mcmc) => {
            let BuresMethod::Mcmc { burn_in, thinning } = BuresMethod::default_mcmc(spec.n) else {
                unreachable!()
            };
            let thinning = a.thinning.unwrap_or(thinning);
            if thinning == 0 {
                return Err(usage("--thinning must be at least 1"));
            }
            BuresMethod::Mcmc {
                burn_in: a.burn_in.unwrap_or(burn_in),
                thinning,
            }
        }
    };

    let samples = sample_spectra(&spec, a.count, method, &RngStream::new(a.seed, 0))?;
    // A swapped induced state has rank min(n, k); pad with the structural zeros.
    let rows: Vec<Vec<f64>> = samples
        .iter()
        .map(|s| {
            let mut row = vec![0.0; spec.n - s.len()];
            row.extend_from_slice(s.values());
            row
        })
        .collect();

    let mut meta = CsvMetadata::new()
        .with("ensemble", spec.kind)
        .with("n", spec.n)
        .with("k", spec.k)
        .with("count", a.count)
        .with("seed", a.seed);
    if is_bures {
        meta = match method {
            BuresMethod::Rejection => meta.with("sampler", "rejection"),
            BuresMethod::Mcmc { burn_in, thinning } => meta
                .with("sampler", "mcmc")
                .with("burn_in", burn_in)
                .with("thinning", thinning),
        };
    }
    if spec.is_swapped() {
        let (small, large) = spec.effective_dims();
        meta = meta.with(
            "swap",
            format!("k < n: rank {small}; positive spectrum drawn from the ({small}, {large}) ensemble"),
        );
    }

    let mut w = open_output(&a.out)?;
    match a.format {
        FormatArg::Csv => {
            let columns: Vec<String> = (1..=spec.n).map(|i| format!("lambda_{i}")).collect();
            write_csv(&mut w, &meta, &columns, &rows)?;
        }
        FormatArg::Json => {
            let header: serde_json::Map<String, serde_json::Value> = meta
                .entries
                .iter()
                .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                .collect();
            let doc = serde_json::json!({ "metadata": header, "spectra": rows });
            serde_json::to_writer(&mut w, &doc).map_err(io::Error::from)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExactMethod {
    ClosedForm,
    WMatrix,
    LaguerreJet,
}

impl ExactMethod {
    fn name(self) -> &'static str {
        match self {
            ExactMethod::ClosedForm => "closed-form",
            ExactMethod::WMatrix => "w-matrix",
            ExactMethod::LaguerreJet => "laguerre-jet",
        }
    }
}

pub struct ExactArgs {
    pub quantity: ExactQuantity,
    pub ensemble: EnsembleArg,
    pub n: usize,
    pub k: Option<usize>,
    pub q: Option<u32>,
    pub l: Option<u32>,
    pub m: Option<u32>,
    pub methods: Vec<ExactMethod>,
}

fn default_method(quantity: ExactQuantity, spec: &EnsembleSpec, q: Option<u32>) -> ExactMethod {
    match quantity {
        ExactQuantity::Trace if q.is_some_and(|q| (2..=4).contains(&q)) => ExactMethod::ClosedForm,
        ExactQuantity::Trace if spec.kind == EnsembleKind::Bures => ExactMethod::LaguerreJet,
        _ => ExactMethod::WMatrix,
    }
}

fn unsupported(method: ExactMethod, what: &str) -> CliError {
    usage(format!("method {} does not compute {what}", method.name()))
}

fn trace_value(spec: &EnsembleSpec, q: u32, method: ExactMethod) -> Result<BigRational, CliError> {
    let (n, k) = spec.effective_dims();
    Ok(match (method, spec.kind) {
        (ExactMethod::ClosedForm, _) => closed_form_trace(spec, q)?,
        (ExactMethod::WMatrix, EnsembleKind::Bures) => return Err(unsupported(method, "Bures moments")),
        (ExactMethod::WMatrix, _) => {
            if q == 0 {
                return Err(usage("--q must be at least 1"));
            }
            BigRational::from_integer((n as i64).into()) * induced_moment(n, k, q)?
        }
        (ExactMethod::LaguerreJet, EnsembleKind::Bures) => bures_trace_moment(spec.n, q)?,
        (ExactMethod::LaguerreJet, _) if n == k => hs_trace_moment(n, q)?,
        (ExactMethod::LaguerreJet, _) => return Err(unsupported(method, "induced moments with k ≠ n")),
    })
}

pub fn exact(a: ExactArgs) -> Result<(), CliError> {
    let spec = build_spec(a.ensemble, a.n, a.k)?;
    let (n, k) = spec.effective_dims();
    let needs_q = a.quantity == ExactQuantity::Trace;
    let needs_lm = a.quantity == ExactQuantity::TwoPointMoment;
    if needs_q != a.q.is_some() {
        return Err(usage(if needs_q {
            "trace needs --q"
        } else {
            "--q applies to trace only"
        }));
    }
    if needs_lm != (a.l.is_some() && a.m.is_some()) || (!needs_lm && (a.l.is_some() || a.m.is_some())) {
        return Err(usage(if needs_lm {
            "two-point-moment needs --L and --M"
        } else {
            "--L/--M apply to two-point-moment only"
        }));
    }
    if a.quantity != ExactQuantity::Trace && spec.kind == EnsembleKind::Bures {
        return Err(usage("only trace moments are available exactly for the Bures ensemble"));
    }
    let methods = if a.methods.is_empty() {
        vec![default_method(a.quantity, &spec, a.q)]
    } else {
        a.methods.clone()
    };

    let mut records = Vec::new();
    for &method in &methods {
        let (quantity, value) = match a.quantity {
            ExactQuantity::Trace => (
                "trace_moment",
                ExactValue::Rational(trace_value(&spec, a.q.unwrap_or_default(), method)?),
            ),
            ExactQuantity::Entropy => (
                "mean_entropy",
                ExactValue::Rational(match method {
                    ExactMethod::WMatrix => mean_entropy(n, k)?,
                    ExactMethod::ClosedForm => page_entropy(n, k)?,
                    ExactMethod::LaguerreJet => return Err(unsupported(method, "entropies")),
                }),
            ),
            ExactQuantity::TwoPointMoment => {
                if method != ExactMethod::WMatrix {
                    return Err(unsupported(method, "two-point moments"));
                }
                let (l, m) = (a.l.unwrap_or_default(), a.m.unwrap_or_default());
                ("two_point_moment", ExactValue::Rational(two_point_moment(n, k, l, m)?))
            }
            ExactQuantity::EntropyCorrelation => {
                if method != ExactMethod::WMatrix {
                    return Err(unsupported(method, "entropy correlations"));
                }
                ("entropy_correlation", ExactValue::PiSquare(entropy_correlation(n, k)?))
            }
        };
        let k_field = (spec.kind == EnsembleKind::Induced).then_some(spec.k);
        let mut r = ExactRecord::new(spec.n, k_field, quantity, value, method.name());
        r.ensemble = Some(spec.kind.to_string());
        r.q = a.q;
        r.l = a.l;
        r.m = a.m;
        records.push(r);
    }

    let agree = records.windows(2).all(|w| w[0].exact == w[1].exact);
    let doc = if records.len() == 1 {
        serde_json::to_string(&records[0])
    } else {
        serde_json::to_string(&CrossCheck {
            values: &records,
            agree,
        })
    }
    .map_err(|e| CliError::Failure(e.to_string()))?;
    println!("{doc}");
    if agree {
        Ok(())
    } else {
        Err(CliError::Failure("methods disagree".into()))
    }
}

#[derive(Serialize)]
struct CrossCheck<'a> {
    values: &'a [ExactRecord],
    agree: bool,
}

fn midpoints(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    let h = (hi - lo) / count as f64;
    (0..count).map(move |i| lo + (i as f64 + 0.5) * h)
}

pub fn density(
    kind: DensityKind,
    points: usize,
    n: Option<usize>,
    k: Option<usize>,
    grid: Option<usize>,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    if points == 0 || grid == Some(0) {
        return Err(usage("--points and --grid must be at least 1"));
    }
    let finite = matches!(kind, DensityKind::FiniteN | DensityKind::TwoPoint);
    if finite && n.is_none() {
        return Err(usage("finite-n and two-point need --n"));
    }
    if !finite && (n.is_some() || k.is_some()) {
        return Err(usage("asymptotic densities take no --n/--k"));
    }
    if kind != DensityKind::TwoPoint && grid.is_some() {
        return Err(usage("--grid applies to two-point only"));
    }

    let mut meta = CsvMetadata::new().with("density", kind.to_possible_value().expect("named").get_name());
    let mut w = open_output(&out)?;
    match kind {
        DensityKind::AsymptoticHs | DensityKind::AsymptoticBures => {
            let m = if kind == DensityKind::AsymptoticHs {
                AsymptoticMeasure::HilbertSchmidt
            } else {
                AsymptoticMeasure::Bures
            };
            meta = meta
                .with("support", format!("[0, {}]", m.support_upper()))
                .with("points", points);
            let rows = midpoints(0.0, m.support_upper(), points).map(|x| [x, m.density(x)]);
            write_csv(&mut w, &meta, &["x".into(), "P".into()], rows)?;
        }
        DensityKind::FiniteN => {
            let n = n.unwrap_or_default();
            let k = k.unwrap_or(n);
            let c = ExactDensityCoefficients::new(n, k)?;
            meta = meta.with("n", n).with("k", k).with("points", points);
            let rows = midpoints(0.0, 1.0, points).map(|l| [l, c.eval(l).max(0.0)]);
            write_csv(&mut w, &meta, &["lambda".into(), "P".into()], rows)?;
        }
        DensityKind::TwoPoint => {
            let n = n.unwrap_or_default();
            let k = k.unwrap_or(n);
            let g = grid.unwrap_or(points);
            let c = TwoPointCoefficients::new(n, k)?;
            meta = meta.with("n", n).with("k", k).with("grid", g);
            let axis: Vec<f64> = midpoints(0.0, 1.0, g).collect();
            let rows = axis.iter().flat_map(|&l| {
                let c = &c;
                axis.iter()
                    .filter(move |&&mu| l + mu < 1.0)
                    .map(move |&mu| [l, mu, c.eval(l, mu).max(0.0)])
            });
            write_csv(&mut w, &meta, &["lambda".into(), "mu".into(), "P".into()], rows)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn verify(suite: SuiteArg, budget: Option<f64>, seed: u64, out: Option<PathBuf>) -> Result<(), CliError> {
    let budget = match budget {
        Some(b) if !(b >= 0.0 && b.is_finite()) => {
            return Err(usage("--budget must be a nonnegative number of seconds"))
        }
        b => b.map(Duration::from_secs_f64),
    };
    let suite = match suite {
        SuiteArg::Exact => Suite::Exact,
        SuiteArg::Sampling => Suite::Sampling,
        SuiteArg::Asymptotic => Suite::Asymptotic,
        SuiteArg::All => Suite::All,
    };
    let report = run_suite(suite, seed, budget);
    let mut w = open_output(&out)?;
    serde_json::to_writer_pretty(&mut w, &report).map_err(io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        Err(CliError::Failure(format!("failed checks: {}", failed.join(", "))))
    }
}
