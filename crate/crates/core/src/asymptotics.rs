//! Large-`N` level densities of the rescaled eigenvalue `x = Nλ`.
//!
//! - Hilbert-Schmidt: `P(x) = (1/2π) √(4/x − 1)` on `(0, 4]`.
//! - Bures: `P(x) = 3/(4aπ) [(v + √(v²−1))^{2/3} − (v − √(v²−1))^{2/3}]` with
//!   `v = a/x` on `(0, a]`, `a = 3√3`.
//!
//! Their Green functions `G(t) = ∫ P(x)/(x − t) dx` solve the Pastur-type
//! equation `G [1 + αG]^{1/α} = −1/t` with `α = 1` and `α = 2` respectively;
//! [`pastur_solve`] also handles other `α` by continuation.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::error::{invalid, Error, Result};
use crate::numerics::quadrature::{integrate_with, Tolerance};

/// `a = 3√3`, the upper edge of the Bures support.
pub const BURES_EDGE: f64 = 5.196_152_422_706_632;

/// Default offset above the real axis when recovering a density from `Im G`.
pub const DENSITY_DELTA: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AsymptoticMeasure {
    #[serde(rename = "hs")]
    HilbertSchmidt,
    Bures,
}

impl AsymptoticMeasure {
    pub fn support_upper(self) -> f64 {
        match self {
            AsymptoticMeasure::HilbertSchmidt => 4.0,
            AsymptoticMeasure::Bures => BURES_EDGE,
        }
    }

    pub fn density(self, x: f64) -> f64 {
        match self {
            AsymptoticMeasure::HilbertSchmidt => hs_density(x),
            AsymptoticMeasure::Bures => bures_density(x),
        }
    }

    /// Power `p` of the substitution `x = u^p` that removes the `x → 0`
    /// singularity of the density.
    fn substitution_power(self) -> i32 {
        match self {
            AsymptoticMeasure::HilbertSchmidt => 2,
            AsymptoticMeasure::Bures => 3,
        }
    }

    /// Moment order at or below which `∫ x^q P(x) dx` diverges.
    fn moment_threshold(self) -> f64 {
        match self {
            AsymptoticMeasure::HilbertSchmidt => -0.5,
            AsymptoticMeasure::Bures => -1.0 / 3.0,
        }
    }

    pub fn green(self, t: Complex64) -> Result<GreenValue> {
        match self {
            AsymptoticMeasure::HilbertSchmidt => hs_green(t),
            AsymptoticMeasure::Bures => bures_green(t),
        }
    }

    /// The `α` of the Pastur equation this measure solves.
    pub fn pastur_alpha(self) -> f64 {
        match self {
            AsymptoticMeasure::HilbertSchmidt => 1.0,
            AsymptoticMeasure::Bures => 2.0,
        }
    }
}

pub fn hs_density(x: f64) -> f64 {
    if x > 0.0 && x <= 4.0 {
        (4.0 / x - 1.0).sqrt() / (2.0 * PI)
    } else {
        0.0
    }
}

pub fn bures_density(x: f64) -> f64 {
    if !(x > 0.0 && x <= BURES_EDGE) {
        return 0.0;
    }
    let v = BURES_EDGE / x;
    let big = v + (v * v - 1.0).max(0.0).sqrt();
    // v − √(v²−1) = 1/(v + √(v²−1)) avoids cancellation for small x.
    let p = big.powf(2.0 / 3.0) - big.powf(-2.0 / 3.0);
    (3.0 / (4.0 * BURES_EDGE * PI) * p).max(0.0)
}

/// `∫_lo^hi P(x) dx` with the endpoint singularity at 0 substituted away.
pub fn integrate_density(measure: AsymptoticMeasure, lo: f64, hi: f64) -> f64 {
    integrate_moment_between(measure, 0.0, lo, hi)
}

fn integrate_moment_between(measure: AsymptoticMeasure, q: f64, lo: f64, hi: f64) -> f64 {
    let upper = measure.support_upper();
    let (lo, hi) = (lo.max(0.0), hi.min(upper));
    if hi <= lo {
        return 0.0;
    }
    let p = measure.substitution_power();
    let inv = 1.0 / p as f64;
    let tol = Tolerance {
        absolute: 1e-13,
        relative: 1e-12,
        max_intervals: 4000,
    };
    integrate_with(
        |u| {
            let x = u.powi(p);
            measure.density(x) * x.powf(q) * p as f64 * u.powi(p - 1)
        },
        lo.powf(inv),
        hi.powf(inv),
        tol,
    )
    .value
}

fn check_moment_order(measure: AsymptoticMeasure, q: f64) -> Result<()> {
    if !(q > measure.moment_threshold()) {
        return Err(invalid(format!(
            "the moment of order {q} diverges; need q > {}",
            measure.moment_threshold()
        )));
    }
    Ok(())
}

/// `∫ x^q P(x) dx` by adaptive quadrature.
pub fn density_moment(measure: AsymptoticMeasure, q: f64) -> Result<f64> {
    check_moment_order(measure, q)?;
    Ok(integrate_moment_between(measure, q, 0.0, measure.support_upper()))
}

/// Closed-form moments
/// `f_HS(q) = 4^q Γ(q+1/2) Γ(1/2) / (π Γ(q+2))` and
/// `f_B(q) = 2^q 3^{3q/2} Γ(q/2+1/6) Γ(q/2+5/6) / (2π Γ(q+2))`.
pub fn exact_density_moment(measure: AsymptoticMeasure, q: f64) -> Result<f64> {
    check_moment_order(measure, q)?;
    Ok(match measure {
        AsymptoticMeasure::HilbertSchmidt => 4f64.powf(q) * gamma(q + 0.5) * PI.sqrt() / (PI * gamma(q + 2.0)),
        AsymptoticMeasure::Bures => {
            2f64.powf(q) * 3f64.powf(1.5 * q) * gamma(q / 2.0 + 1.0 / 6.0) * gamma(q / 2.0 + 5.0 / 6.0)
                / (2.0 * PI * gamma(q + 2.0))
        }
    })
}

/// A Green function value `G(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GreenValue {
    pub t: Complex64,
    pub g: Complex64,
}

fn check_green_argument(measure: AsymptoticMeasure, t: Complex64) -> Result<()> {
    if t == Complex64::new(0.0, 0.0) {
        return Err(invalid("G(t) has a pole at t = 0"));
    }
    if t.im == 0.0 && t.re > 0.0 && t.re <= measure.support_upper() {
        return Err(invalid(format!(
            "t = {} lies on the cut (0, {}]; give it a nonzero imaginary part",
            t.re,
            measure.support_upper()
        )));
    }
    Ok(())
}

/// `G_HS(t) = (√(1 − 4/t) − 1)/2`, principal square root.
///
/// The principal branch is cut exactly along `(0, 4]`, so it is the
/// continuation of the real solution on `t < 0` to the whole plane.
pub fn hs_green(t: Complex64) -> Result<GreenValue> {
    check_green_argument(AsymptoticMeasure::HilbertSchmidt, t)?;
    let s = (Complex64::new(1.0, 0.0) - 4.0 / t).sqrt();
    // (s − 1)/2 written as −(2/t)/(s + 1) to stay accurate for large |t|.
    let g = -(2.0 / t) / (s + 1.0);
    Ok(GreenValue { t, g })
}

/// `G_B(t) = (z + 1/z − 1)/6` with `z = (u − √(u²−1))^{2/3}`, `u = −a/t`.
///
/// `G` is invariant under `z ↦ 1/z`, so the square root sign is chosen to keep
/// `|w| ≤ 1` for `w = u − √(u²−1)`; the principal cube root then has its cut
/// exactly on the support. The lower half plane is obtained by conjugation.
pub fn bures_green(t: Complex64) -> Result<GreenValue> {
    check_green_argument(AsymptoticMeasure::Bures, t)?;
    if t.im < 0.0 {
        let g = bures_green(t.conj())?.g.conj();
        return Ok(GreenValue { t, g });
    }
    let one = Complex64::new(1.0, 0.0);
    let u = -BURES_EDGE / t;
    let root = (u * u - one).sqrt();
    let big = if (u + root).norm() >= (u - root).norm() {
        u + root
    } else {
        u - root
    };
    let w = one / big;
    let z = w.powf(2.0 / 3.0);
    let g = (z + one / z - one) / 6.0;
    Ok(GreenValue { t, g })
}

/// `(1/π) Im G(x + iδ)`.
pub fn density_from_green(measure: AsymptoticMeasure, x: f64, delta: f64) -> Result<f64> {
    Ok(measure.green(Complex64::new(x, delta))?.g.im / PI)
}

/// `g [1 + αg]^{1/α} + 1/t`, principal power.
pub fn pastur_residual(alpha: f64, t: Complex64, g: Complex64) -> Complex64 {
    g * (Complex64::new(1.0, 0.0) + alpha * g).powf(1.0 / alpha) + 1.0 / t
}

const PASTUR_MAX_STEPS: usize = 200;
const PASTUR_TOLERANCE: f64 = 1e-12;
const PATH_POINTS: usize = 120;

/// Damped Newton iteration for one target; returns the root and steps taken.
fn newton(alpha: f64, t: Complex64, mut g: Complex64, max_steps: usize, tol: f64) -> (Complex64, usize, f64) {
    let one = Complex64::new(1.0, 0.0);
    let mut res = pastur_residual(alpha, t, g);
    for step in 0..max_steps {
        if res.norm() < tol {
            return (g, step, res.norm());
        }
        let base = one + alpha * g;
        let deriv = base.powf(1.0 / alpha - 1.0) * (one + (alpha + 1.0) * g);
        let delta = res / deriv;
        let mut lambda = 1.0;
        loop {
            let trial = g - lambda * delta;
            let r = pastur_residual(alpha, t, trial);
            if r.norm() < res.norm() || lambda < 1e-6 {
                g = trial;
                res = r;
                break;
            }
            lambda *= 0.5;
        }
    }
    (g, max_steps, res.norm())
}

/// Root of the Pastur equation `G [1 + αG]^{1/α} = −1/t` on the branch that
/// behaves like `−1/t` as `t → −∞`.
///
/// The root is followed from a far point `−R` on the negative axis along an
/// arc through the half plane containing `t` (so the path never touches the
/// positive real axis, where the spectrum lives).
pub fn pastur_solve(alpha: f64, t: Complex64) -> Result<Complex64> {
    if !(alpha >= 1.0) {
        return Err(invalid(format!("α = {alpha} must be at least 1")));
    }
    if t == Complex64::new(0.0, 0.0) {
        return Err(invalid("t = 0 is a pole"));
    }
    if t.im == 0.0 && t.re > 0.0 {
        return Err(invalid("t on the positive real axis needs a nonzero imaginary part"));
    }
    if t.im < 0.0 {
        return Ok(pastur_solve(alpha, t.conj())?.conj());
    }
    let r = 1e3 * (1.0 + t.norm());
    let start = Complex64::new(-r, 0.0);
    let path = |s: f64| {
        let chord = start * (1.0 - s) + t * s;
        // A bump into the upper half plane unless t is on the negative axis.
        let bump = if t.im == 0.0 { 0.0 } else { 0.5 * r * s * (1.0 - s) };
        chord + Complex64::new(0.0, bump)
    };
    let mut g = -1.0 / start;
    let mut total = 0;
    for i in 1..PATH_POINTS {
        // Geometric spacing: |t| shrinks by orders of magnitude along the way.
        let s = 1.0 - (1.0 - i as f64 / PATH_POINTS as f64).powi(3);
        let (next, steps, _) = newton(alpha, path(s), g, 50, 1e-13);
        g = next;
        total += steps;
    }
    // The equation's terms are of size |1/t|, so near t = 0 the attainable
    // residual grows with it.
    let tol = PASTUR_TOLERANCE * t.norm().recip().max(1.0);
    let (g, steps, residual) = newton(alpha, t, g, PASTUR_MAX_STEPS, tol);
    if residual >= tol {
        return Err(Error::NoConvergence {
            steps: steps + total,
            residual,
        });
    }
    Ok(g)
}

/// Right edge `(1+α)^{(1+α)/α}` of the spectrum of the α-family; 4 at α = 1
/// and 3√3 at α = 2.
pub fn pastur_support_upper(alpha: f64) -> f64 {
    (1.0 + alpha).powf((1.0 + alpha) / alpha)
}

/// `(1/π) Im G(x + iδ)` with `G` from [`pastur_solve`], for any `α ≥ 1`.
/// Points outside `(0, edge)` give 0.
pub fn pastur_density(alpha: f64, x: f64, delta: f64) -> Result<f64> {
    if !(x > 0.0 && x < pastur_support_upper(alpha)) {
        if alpha >= 1.0 {
            return Ok(0.0);
        }
        return Err(invalid(format!("α = {alpha} must be at least 1")));
    }
    Ok((pastur_solve(alpha, Complex64::new(x, delta))?.im / PI).max(0.0))
}

/// Leading-order `⟨Tr ρ^q⟩ ≈ N^{1−q} f(q)`.
pub fn asymptotic_trace(measure: AsymptoticMeasure, q: f64, n: usize) -> Result<f64> {
    if n < 2 || !(q > 0.0) {
        return Err(invalid("need n ≥ 2 and q > 0"));
    }
    Ok((n as f64).powf(1.0 - q) * exact_density_moment(measure, q)?)
}

/// Leading-order mean entropy: `ln N − 1/2` (HS) or `ln N − ln 2` (Bures).
pub fn asymptotic_entropy(measure: AsymptoticMeasure, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(invalid("need n ≥ 2"));
    }
    let ln = (n as f64).ln();
    Ok(match measure {
        AsymptoticMeasure::HilbertSchmidt => ln - 0.5,
        AsymptoticMeasure::Bures => ln - std::f64::consts::LN_2,
    })
}

/// Least-squares slope of `ln P` against `ln x` on a log-spaced grid.
pub fn log_log_slope<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, points: usize) -> f64 {
    let pts: Vec<(f64, f64)> = (0..points)
        .map(|i| {
            let lx = lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (points - 1) as f64;
            (lx, f(lx.exp()).ln())
        })
        .collect();
    let n = points as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
