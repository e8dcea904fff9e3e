//! Exact finite-`N` results for the induced measures `μ_{N,K}`.
//!
//! All formulas are built on the Hankel matrix `W_{ij} = Γ(K−N+i+j−1)` of
//! moments of the Laguerre weight and its inverse. With
//! `α_{ij} = K−N+i+j−1` the one-point density is
//!
//! ```text
//! P(λ) = Γ(KN)/N Σ_{ij} W⁻¹_{ji} λ^{α−1} (1−λ)^{KN−α−1} / Γ(KN−α)
//! ```
//!
//! and moments, entropies and correlations follow from Beta integrals, with
//! digamma and trigamma values at integers reduced to harmonic numbers.
//! Every function takes `(n, k)` in either order; results refer to the
//! `min(n,k)` positive eigenvalues.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::numerics::rational::{
    gamma_int, harmonic_table, int, rat, reciprocal_gamma, to_f64, BigRational, PiSquareValue,
};
use crate::samplers::{EnsembleKind, EnsembleSpec};

fn gamma_q(m: i64) -> BigRational {
    BigRational::from_integer(gamma_int(m))
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Orders `(n, k)` so that `N ≤ K`, reporting whether they were exchanged.
fn ordered(n: usize, k: usize) -> Result<(usize, usize, bool)> {
    if n == 0 || k == 0 {
        return Err(invalid("dimensions must be at least 1"));
    }
    Ok((n.min(k), n.max(k), k < n))
}

type RationalMatrix = Vec<Vec<BigRational>>;

/// `W` and `W⁻¹` for the ensemble `(N, K)`, `N ≤ K`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentMatrix {
    pub n: usize,
    pub k: usize,
    /// True when the caller passed `k < n` and the roles were exchanged.
    pub swapped: bool,
    pub w: RationalMatrix,
    pub w_inv: RationalMatrix,
}

impl MomentMatrix {
    /// Builds `W`, inverts it by elimination and by the closed-form sum, and
    /// fails if the two inverses differ.
    pub fn compute(n: usize, k: usize) -> Result<Self> {
        let (n, k, swapped) = ordered(n, k)?;
        let shift = k as i64 - n as i64;
        let w: RationalMatrix = (1..=n as i64)
            .map(|i| (1..=n as i64).map(|j| gamma_q(shift + i + j - 1)).collect())
            .collect();
        let by_elimination = invert(&w)?;
        let explicit = explicit_inverse(n, k);
        if by_elimination != explicit {
            return Err(Error::Inconsistent(format!(
                "elimination and closed-form inverses of W disagree for (n, k) = ({n}, {k})"
            )));
        }
        Ok(Self {
            n,
            k,
            swapped,
            w,
            w_inv: explicit,
        })
    }

    fn shift(&self) -> i64 {
        self.k as i64 - self.n as i64
    }

    fn kn(&self) -> i64 {
        (self.k * self.n) as i64
    }

    /// Iterates `(α, W⁻¹_{ji})` over all index pairs, `α = K−N+i+j−1`.
    fn weighted(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        let s = self.shift();
        (0..self.n).flat_map(move |i| (0..self.n).map(move |j| (s + i as i64 + j as i64 + 1, &self.w_inv[j][i])))
    }

    /// Folds the `W⁻¹` sum by exponent: `Σ_{ij} W⁻¹_{ji} f(α)` only depends on
    /// `α`, so group the weights first. Returns `(α, Σ W⁻¹)` pairs.
    fn grouped(&self) -> Vec<(i64, BigRational)> {
        let s = self.shift();
        let mut acc: Vec<BigRational> = vec![BigRational::zero(); 2 * self.n - 1];
        for (alpha, w) in self.weighted() {
            acc[(alpha - s - 1) as usize] += w;
        }
        acc.into_iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(d, w)| (s + 1 + d as i64, w))
            .collect()
    }

    /// Antisymmetrized weight `W⁻¹_{ji}W⁻¹_{lk} − W⁻¹_{li}W⁻¹_{jk}`, grouped by
    /// `(α, β)` with `α = K−N+i+j−1`, `β = K−N+k+l−1`.
    fn pair_weights(&self) -> Vec<(i64, i64, BigRational)> {
        let n = self.n;
        let s = self.shift();
        let m = 2 * n - 1;
        let mut acc = vec![BigRational::zero(); m * m];
        let wi = &self.w_inv;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let b = &wi[j][i] * &wi[l][k] - &wi[l][i] * &wi[j][k];
                        if !b.is_zero() {
                            acc[(i + j) * m + (k + l)] += b;
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        for (idx, b) in acc.into_iter().enumerate() {
            if !b.is_zero() {
                let (a, c) = (idx / m, idx % m);
                out.push((s + 1 + a as i64, s + 1 + c as i64, b));
            }
        }
        out
    }
}

/// Gauss-Jordan inversion over the rationals.
fn invert(a: &RationalMatrix) -> Result<RationalMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Inconsistent("singular moment matrix".into()))?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *x -= &f * pv;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `(W⁻¹)_{ij} = (−1)^{i+j} Σ_{m ≥ max(i,j)} C(m−1,i−1) C(m−1,j−1)
/// Γ(K−N+m) / (Γ(m) Γ(K−N+i) Γ(K−N+j))`.
fn explicit_inverse(n: usize, k: usize) -> RationalMatrix {
    let s = k as i64 - n as i64;
    (1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| {
                    let mut sum = BigInt::zero();
                    for m in i.max(j)..=n as i64 {
                        sum += binomial((m - 1) as u64, (i - 1) as u64)
                            * binomial((m - 1) as u64, (j - 1) as u64)
                            * gamma_int(s + m)
                            / gamma_int(m);
                    }
                    let den = gamma_int(s + i) * gamma_int(s + j);
                    let v = BigRational::new(sum, den);
                    if (i + j) % 2 == 0 {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect()
}

type Memo = RwLock<HashMap<(usize, usize), Arc<MomentMatrix>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized [`MomentMatrix`] for `(n, k)`; the `swapped` flag reflects the
/// argument order of this call.
pub fn w_matrix(n: usize, k: usize) -> Result<Arc<MomentMatrix>> {
    let (nn, kk, swapped) = ordered(n, k)?;
    let cached = memo().read().expect("memo lock poisoned").get(&(nn, kk)).cloned();
    let base = match cached {
        Some(m) => m,
        None => {
            let fresh = Arc::new(MomentMatrix::compute(nn, kk)?);
            memo()
                .write()
                .expect("memo lock poisoned")
                .entry((nn, kk))
                .or_insert(fresh)
                .clone()
        }
    };
    if swapped {
        let mut m = (*base).clone();
        m.swapped = true;
        Ok(Arc::new(m))
    } else {
        Ok(base)
    }
}

/// `⟨λ^q⟩ = Γ(KN) / (N Γ(KN+q)) Σ W⁻¹_{ji} Γ(α+q)`.
pub fn induced_moment(n: usize, k: usize, q: u32) -> Result<BigRational> {
    if q == 0 {
        return Err(invalid("moment order q must be at least 1"));
    }
    let m = w_matrix(n, k)?;
    let kn = m.kn();
    let sum: BigRational = m
        .grouped()
        .into_iter()
        .map(|(alpha, w)| w * gamma_q(alpha + q as i64))
        .sum();
    Ok(sum * gamma_q(kn) / (gamma_q(kn + q as i64) * int(m.n as i64)))
}

/// Mean von Neumann entropy `⟨S⟩ = ψ(KN+1) − (1/KN) Σ W⁻¹_{ji} Γ(α+1) ψ(α+1)`,
/// which is rational because the Euler constants cancel.
pub fn mean_entropy(n: usize, k: usize) -> Result<BigRational> {
    let m = w_matrix(n, k)?;
    let kn = m.kn();
    let h = harmonic_table(kn as u64, 1);
    let sum: BigRational = m
        .grouped()
        .into_iter()
        .map(|(alpha, w)| w * gamma_q(alpha + 1) * &h[alpha as usize])
        .sum();
    Ok(&h[kn as usize] - sum / int(kn))
}

/// Closed-form mean entropy `Σ_{m=K+1}^{KN} 1/m − (N−1)/(2K)` with `N ≤ K`.
pub fn page_entropy(n: usize, k: usize) -> Result<BigRational> {
    let (n, k, _) = ordered(n, k)?;
    let sum: BigRational = (k + 1..=k * n).map(|m| rat(1, m as i64)).sum();
    Ok(sum - rat((n - 1) as i64, 2 * k as i64))
}

/// Rational coefficients of the one-point density as a sum of
/// `c · λ^a (1−λ)^b` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactDensityCoefficients {
    pub n: usize,
    pub k: usize,
    /// `(a, b, c)` with all factors, including `Γ(KN)/N`, folded into `c`.
    pub terms: Vec<(u32, u32, BigRational)>,
    terms_f64: Vec<(i32, i32, f64)>,
}

impl ExactDensityCoefficients {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let m = w_matrix(n, k)?;
        if m.n == 1 {
            return Err(Error::Distributional(
                "for a single positive eigenvalue the density is the point mass δ(λ−1); \
                 use the moment functions instead"
                    .into(),
            ));
        }
        let kn = m.kn();
        let pref = gamma_q(kn) / int(m.n as i64);
        let terms: Vec<(u32, u32, BigRational)> = m
            .grouped()
            .into_iter()
            .map(|(alpha, w)| {
                let c = &pref * w * reciprocal_gamma(kn - alpha);
                ((alpha - 1) as u32, (kn - alpha - 1) as u32, c)
            })
            .collect();
        let terms_f64 = terms
            .iter()
            .map(|(a, b, c)| (*a as i32, *b as i32, to_f64(c)))
            .collect();
        Ok(Self {
            n: m.n,
            k: m.k,
            terms,
            terms_f64,
        })
    }

    /// `∫₀¹ P(λ) dλ` evaluated exactly term by term with Beta integrals.
    pub fn total_mass(&self) -> BigRational {
        self.terms
            .iter()
            .map(|(a, b, c)| c * beta_integral(*a as i64, *b as i64))
            .sum()
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        let mu = 1.0 - lambda;
        self.terms_f64
            .iter()
            .map(|(a, b, c)| c * lambda.powi(*a) * mu.powi(*b))
            .sum()
    }
}

/// `B(a+1, b+1) = a! b! / (a+b+1)!`.
fn beta_integral(a: i64, b: i64) -> BigRational {
    BigRational::new(gamma_int(a + 1) * gamma_int(b + 1), gamma_int(a + b + 2))
}

/// Density of a single eigenvalue at `λ ∈ (0, 1)`.
pub fn one_point_density(n: usize, k: usize, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(invalid(format!("λ = {lambda} is outside (0, 1)")));
    }
    Ok(ExactDensityCoefficients::new(n, k)?.eval(lambda).max(0.0))
}

/// Coefficients of the joint density of two distinct eigenvalues,
/// `Σ c · λ^a μ^b (1−λ−μ)^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoPointCoefficients {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<(u32, u32, u32, BigRational)>,
    terms_f64: Vec<(i32, i32, i32, f64)>,
}

impl TwoPointCoefficients {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let m = w_matrix(n, k)?;
        if m.n < 3 {
            return Err(Error::Distributional(format!(
                "with {} positive eigenvalues the unit-trace constraint concentrates the \
                 pair density on a line; use two_point_moment for exact pair statistics",
                m.n
            )));
        }
        let kn = m.kn();
        let pref = gamma_q(kn) / int((m.n * (m.n - 1)) as i64);
        let mut terms = Vec::new();
        for (alpha, beta, b) in m.pair_weights() {
            let e = kn - alpha - beta - 1;
            // 1/Γ(e+1) vanishes exactly for e < 0.
            let r = reciprocal_gamma(e + 1);
            if r.is_zero() {
                continue;
            }
            terms.push(((alpha - 1) as u32, (beta - 1) as u32, e as u32, &pref * b * r));
        }
        // Pair (a, b) with (b, a) so that evaluation is exactly symmetric.
        let mut terms_f64 = Vec::new();
        for (a, b, e, c) in &terms {
            if a > b {
                continue;
            }
            if a < b {
                let mirror = terms.iter().find(|t| t.0 == *b && t.1 == *a && t.2 == *e);
                if mirror.map(|t| &t.3) != Some(c) {
                    return Err(Error::Inconsistent(
                        "pair density coefficients are not symmetric".into(),
                    ));
                }
            }
            terms_f64.push((*a as i32, *b as i32, *e as i32, to_f64(c)));
        }
        Ok(Self {
            n: m.n,
            k: m.k,
            terms,
            terms_f64,
        })
    }

    pub fn eval(&self, lambda: f64, mu: f64) -> f64 {
        let rest = 1.0 - (lambda + mu);
        self.terms_f64
            .iter()
            .map(|&(a, b, e, c)| {
                let mono = if a == b {
                    (lambda * mu).powi(a)
                } else {
                    lambda.powi(a) * mu.powi(b) + lambda.powi(b) * mu.powi(a)
                };
                c * mono * rest.powi(e)
            })
            .sum()
    }
}

/// Joint density of two distinct eigenvalues at `(λ, μ)` in the open simplex.
pub fn two_point_density(n: usize, k: usize, lambda: f64, mu: f64) -> Result<f64> {
    if !(lambda > 0.0 && mu > 0.0 && lambda + mu < 1.0) {
        return Err(invalid(format!(
            "(λ, μ) = ({lambda}, {mu}) is outside the open simplex"
        )));
    }
    Ok(TwoPointCoefficients::new(n, k)?.eval(lambda, mu).max(0.0))
}

/// `⟨λ^L μ^M⟩ = Γ(KN) / (N(N−1) Γ(KN+L+M)) Σ B Γ(α+L) Γ(β+M)`.
pub fn two_point_moment(n: usize, k: usize, l: u32, mm: u32) -> Result<BigRational> {
    let m = w_matrix(n, k)?;
    if m.n < 2 {
        return Err(invalid("pair moments need at least two positive eigenvalues"));
    }
    let kn = m.kn();
    let (l, mm) = (l as i64, mm as i64);
    let sum: BigRational = m
        .pair_weights()
        .into_iter()
        .map(|(alpha, beta, b)| b * gamma_q(alpha + l) * gamma_q(beta + mm))
        .sum();
    Ok(sum * gamma_q(kn) / (gamma_q(kn + l + mm) * int((m.n * (m.n - 1)) as i64)))
}

/// `N ⟨λ² (ln λ)²⟩`, a rational number.
pub fn lambda2_log2_term(n: usize, k: usize) -> Result<BigRational> {
    let m = w_matrix(n, k)?;
    let kn = m.kn();
    let top = (kn + 1) as u64;
    let h1 = harmonic_table(top.max((m.k + m.n) as u64), 1);
    let h2 = harmonic_table(top.max((m.k + m.n) as u64), 2);
    let top = top as usize;
    let sum: BigRational = m
        .grouped()
        .into_iter()
        .map(|(alpha, w)| {
            let a1 = (alpha + 1) as usize;
            let d = &h1[a1] - &h1[top];
            w * gamma_q(alpha + 2) * (&d * &d + &h2[top] - &h2[a1])
        })
        .sum();
    Ok(sum * gamma_q(kn) / gamma_q(kn + 2))
}

/// `N(N−1) ⟨λ ln λ · μ ln μ⟩ = a + b·π²`; zero when there is one eigenvalue.
pub fn pair_log_term(n: usize, k: usize) -> Result<PiSquareValue> {
    let m = w_matrix(n, k)?;
    if m.n < 2 {
        return Ok(PiSquareValue::zero());
    }
    let kn = m.kn();
    let top = (kn + 1) as usize;
    let h1 = harmonic_table(top as u64, 1);
    let h2 = harmonic_table(top as u64, 2);
    let mut rational_part = BigRational::zero();
    let mut weight_sum = BigRational::zero();
    for (alpha, beta, b) in m.pair_weights() {
        let g = b * gamma_q(alpha + 1) * gamma_q(beta + 1);
        let da = &h1[alpha as usize] - &h1[top];
        let db = &h1[beta as usize] - &h1[top];
        rational_part += &g * (da * db + &h2[top]);
        weight_sum += g;
    }
    // −ψ'(KN+2) = −π²/6 + H⁽²⁾_{KN+1}; the rational piece is folded above.
    let scale = gamma_q(kn) / gamma_q(kn + 2);
    Ok(PiSquareValue::new(
        rational_part * &scale,
        -weight_sum * scale * rat(1, 6),
    ))
}

/// `⟨S S⟩ = N(N−1)⟨λ ln λ · μ ln μ⟩ + N⟨λ² (ln λ)²⟩`.
pub fn entropy_correlation(n: usize, k: usize) -> Result<PiSquareValue> {
    Ok(pair_log_term(n, k)? + lambda2_log2_term(n, k)?)
}

/// Entropy variance `⟨S²⟩ − ⟨S⟩²`.
pub fn entropy_variance(n: usize, k: usize) -> Result<PiSquareValue> {
    let mean = mean_entropy(n, k)?;
    Ok(entropy_correlation(n, k)? + -(&mean * &mean))
}

/// `⟨Tr ρ^q⟩` for `q ∈ {2, 3, 4}` from the closed-form expressions.
pub fn closed_form_trace(spec: &EnsembleSpec, q: u32) -> Result<BigRational> {
    if !(2..=4).contains(&q) {
        return Err(invalid(format!("closed forms exist for q ∈ {{2, 3, 4}}, not q = {q}")));
    }
    let r = |x: usize| int(x as i64);
    Ok(match spec.kind {
        EnsembleKind::HilbertSchmidt => {
            let n = r(spec.n);
            let n2 = &n * &n;
            match q {
                2 => int(2) * &n / (&n2 + int(1)),
                3 => (int(5) * &n2 + int(1)) / ((&n2 + int(1)) * (&n2 + int(2))),
                _ => (int(14) * &n2 * &n + int(10) * &n) / ((&n2 + int(1)) * (&n2 + int(2)) * (&n2 + int(3))),
            }
        }
        EnsembleKind::Bures => {
            let n = r(spec.n);
            let n2 = &n * &n;
            match q {
                2 => (int(5) * &n2 + int(1)) / (int(2) * &n * (&n2 + int(2))),
                3 => (int(8) * &n2 + int(7)) / ((&n2 + int(2)) * (&n2 + int(4))),
                _ => {
                    int(21) * (int(11) * &n2 * &n2 + int(25) * &n2 + int(4))
                        / (int(8) * &n * (&n2 + int(2)) * (&n2 + int(4)) * (&n2 + int(6)))
                }
            }
        }
        EnsembleKind::Induced => {
            let s = r(spec.n + spec.k);
            let p = r(spec.n * spec.k);
            match q {
                2 => &s / (&p + int(1)),
                3 => (&s * &s + &p + int(1)) / ((&p + int(1)) * (&p + int(2))),
                _ => &s * (&s * &s + int(3) * &p + int(5)) / ((&p + int(1)) * (&p + int(2)) * (&p + int(3))),
            }
        }
    })
}
