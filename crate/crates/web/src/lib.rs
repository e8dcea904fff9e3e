//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function is a thin wrapper over a plain Rust function in
//! [`demo`], which is what the native tests exercise.

use wasm_bindgen::prelude::*;

pub mod demo {
    use rho_ensembles::asymptotics::{pastur_density, pastur_support_upper, AsymptoticMeasure, BURES_EDGE};
    use rho_ensembles::exact::ExactDensityCoefficients;
    use rho_ensembles::montecarlo::SpectralHistogram;
    use rho_ensembles::numerics::quadrature::integrate;
    use rho_ensembles::samplers::{sample_spectra, BuresMethod};
    use rho_ensembles::{EnsembleSpec, RngStream};

    pub const MAX_POINTS: usize = 4000;
    pub const MAX_EIGENVALUES: usize = 2_000_000;

    fn grid(hi: f64, points: usize) -> Result<Vec<f64>, String> {
        if points == 0 || points > MAX_POINTS {
            return Err(format!("points must be between 1 and {MAX_POINTS}"));
        }
        Ok((0..points).map(|i| hi * (i as f64 + 0.5) / points as f64).collect())
    }

    /// Rows `(x, P_HS(x), P_B(x))` on a midpoint grid over `[0, 3√3]`.
    pub fn asymptotic_curves(points: usize) -> Result<Vec<[f64; 3]>, String> {
        Ok(grid(BURES_EDGE, points)?
            .into_iter()
            .map(|x| {
                [
                    x,
                    AsymptoticMeasure::HilbertSchmidt.density(x),
                    AsymptoticMeasure::Bures.density(x),
                ]
            })
            .collect())
    }

    /// Rows `(x, P_α(x))` of the α-family density up to its edge, from the
    /// Pastur equation.
    pub fn pastur_curve(alpha: f64, points: usize) -> Result<Vec<[f64; 2]>, String> {
        if !(1.0..=8.0).contains(&alpha) {
            return Err("α must lie in [1, 8]".into());
        }
        grid(pastur_support_upper(alpha), points)?
            .into_iter()
            .map(|x| {
                pastur_density(alpha, x, 1e-9 * x)
                    .map(|p| [x, p])
                    .map_err(|e| e.to_string())
            })
            .collect()
    }

    /// Exact finite-`N` eigenvalue density next to a histogram of sampled
    /// eigenvalues of the induced ensemble.
    #[derive(Clone, Debug, PartialEq)]
    pub struct FiniteComparison {
        pub edges: Vec<f64>,
        pub histogram: Vec<f64>,
        pub curve: Vec<[f64; 2]>,
        /// `Σ width · |histogram − bin average of the exact density|`.
        pub l1: f64,
    }

    pub fn finite_n_comparison(
        n: usize,
        k: usize,
        samples: usize,
        bins: usize,
        seed: u64,
    ) -> Result<FiniteComparison, String> {
        let spec = EnsembleSpec::induced(n, k).map_err(|e| e.to_string())?;
        let (m, _) = spec.effective_dims();
        if samples == 0 || samples * m > MAX_EIGENVALUES {
            return Err(format!("samples·min(n,k) must be between 1 and {MAX_EIGENVALUES}"));
        }
        if !(5..=400).contains(&bins) {
            return Err("bins must be between 5 and 400".into());
        }
        let exact = ExactDensityCoefficients::new(n, k).map_err(|e| e.to_string())?;
        let spectra = sample_spectra(&spec, samples, BuresMethod::Rejection, &RngStream::new(seed, 0))
            .map_err(|e| e.to_string())?;
        let values: Vec<f64> = spectra.iter().flat_map(|s| s.values().to_vec()).collect();
        let hist = SpectralHistogram::from_values(&values, 1, bins, 0.0).map_err(|e| e.to_string())?;
        let top = *hist.edges.last().expect("bins ≥ 5");
        let curve = grid(top, 400)?
            .into_iter()
            .map(|l| [l, exact.eval(l).max(0.0)])
            .collect();
        let l1 = (0..hist.bins())
            .map(|i| {
                let (a, b) = (hist.edges[i], hist.edges[i + 1]);
                let mass = integrate(|l| exact.eval(l), a, b).value;
                (hist.density[i] * (b - a) - mass).abs()
            })
            .sum();
        Ok(FiniteComparison {
            edges: hist.edges,
            histogram: hist.density,
            curve,
            l1,
        })
    }
}

fn flatten<const W: usize>(rows: Vec<[f64; W]>) -> Vec<f64> {
    rows.into_iter().flatten().collect()
}

/// Interleaved `[x, P_HS, P_B, x, …]`.
#[wasm_bindgen(js_name = asymptoticCurves)]
pub fn asymptotic_curves(points: usize) -> Result<Vec<f64>, JsError> {
    demo::asymptotic_curves(points)
        .map(flatten)
        .map_err(|e| JsError::new(&e))
}

/// Interleaved `[x, P, x, …]`.
#[wasm_bindgen(js_name = pasturCurve)]
pub fn pastur_curve(alpha: f64, points: usize) -> Result<Vec<f64>, JsError> {
    demo::pastur_curve(alpha, points)
        .map(flatten)
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub struct FiniteComparison(demo::FiniteComparison);

#[wasm_bindgen]
impl FiniteComparison {
    #[wasm_bindgen(getter)]
    pub fn edges(&self) -> Vec<f64> {
        self.0.edges.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn histogram(&self) -> Vec<f64> {
        self.0.histogram.clone()
    }

    /// Interleaved `[λ, P(λ), …]`.
    #[wasm_bindgen(getter)]
    pub fn curve(&self) -> Vec<f64> {
        flatten(self.0.curve.clone())
    }

    #[wasm_bindgen(getter)]
    pub fn l1(&self) -> f64 {
        self.0.l1
    }
}

#[wasm_bindgen(js_name = finiteNComparison)]
pub fn finite_n_comparison(
    n: usize,
    k: usize,
    samples: usize,
    bins: usize,
    seed: u32,
) -> Result<FiniteComparison, JsError> {
    demo::finite_n_comparison(n, k, samples, bins, seed as u64)
        .map(FiniteComparison)
        .map_err(|e| JsError::new(&e))
}
