//! Exact trace moments through Laguerre-type companion ensembles.
//!
//! Dropping the unit-trace constraint turns the Bures (or Hilbert-Schmidt)
//! eigenvalue density into a Laguerre-type weight whose moments are generated
//! by a symmetric function `Z(E_1, ..., E_N)`:
//!
//! ```text
//! ⟨Tr ρ^q⟩^L = [ Δ(E)⁻¹ Σ_i (−∂/∂E_i)^q (Δ(E) Z(E)) ] at E = 0
//! ```
//!
//! with `Δ` the Vandermonde product. Homogeneity then gives the fixed-trace
//! moment by dividing by the rising factorial `(d)_q` where `d = N²/2` for Bures
//! and `d = N²` for Hilbert-Schmidt. Everything is done with truncated
//! multivariate series over the rationals.

use num_traits::One;

use crate::error::{invalid, Error, Result};
use crate::numerics::poly::TruncatedPolynomial;
use crate::numerics::rational::{int, rat, rising, BigRational};

/// A symmetric generating function truncated at total degree `cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingJet {
    pub n: usize,
    pub cap: u32,
    pub series: TruncatedPolynomial,
}

impl GeneratingJet {
    fn checked(n: usize, cap: u32, series: TruncatedPolynomial) -> Result<Self> {
        if series.constant_term() != BigRational::one() {
            return Err(Error::Inconsistent("generating function is not 1 at E = 0".into()));
        }
        if !series.is_symmetric() {
            return Err(Error::Inconsistent("generating function is not symmetric".into()));
        }
        Ok(Self { n, cap, series })
    }
}

fn check_dims(n: usize, cap: u32) -> Result<()> {
    if n == 0 || cap == 0 {
        return Err(invalid("need n ≥ 1 and cap ≥ 1"));
    }
    Ok(())
}

/// `Z_B(E) = ∏_{i,j} 2 / (√(1+E_i) + √(1+E_j))` over all ordered pairs.
///
/// Diagonal factors are `(1+E_i)^{-1/2}` and each unordered off-diagonal pair
/// contributes its factor squared.
pub fn bures_laguerre_jet(n: usize, cap: u32) -> Result<GeneratingJet> {
    check_dims(n, cap)?;
    let roots: Vec<TruncatedPolynomial> = (0..n)
        .map(|i| TruncatedPolynomial::variable(n, cap, i).sqrt_one_plus())
        .collect::<Result<_>>()?;
    let mut z = TruncatedPolynomial::one(n, cap);
    for (i, ri) in roots.iter().enumerate() {
        z = &z * &ri.reciprocal()?;
        for rj in &roots[i + 1..] {
            let pair = (ri + rj).reciprocal()?.scale(&int(2));
            z = &z * &(&pair * &pair);
        }
    }
    GeneratingJet::checked(n, cap, z)
}

/// `Z_HS(E) = ∏_i (1+E_i)^{-N}`.
pub fn hs_laguerre_jet(n: usize, cap: u32) -> Result<GeneratingJet> {
    check_dims(n, cap)?;
    let mut z = TruncatedPolynomial::one(n, cap);
    for i in 0..n {
        let one_plus = &TruncatedPolynomial::one(n, cap) + &TruncatedPolynomial::variable(n, cap, i);
        z = &z * &one_plus.pow(n as u32).reciprocal()?;
    }
    GeneratingJet::checked(n, cap, z)
}

/// `Δ(E) = ∏_{i<j} (E_i − E_j)`.
pub fn vandermonde(n: usize, cap: u32) -> TruncatedPolynomial {
    let mut d = TruncatedPolynomial::one(n, cap);
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = &TruncatedPolynomial::variable(n, cap, i) - &TruncatedPolynomial::variable(n, cap, j);
            d = &d * &diff;
        }
    }
    d
}

/// Exact quotient `p / Δ(E)` by successive division by each `E_i − E_j`.
///
/// Any nonzero remainder is an error. Antisymmetric polynomials are always
/// divisible.
pub fn vandermonde_divide(p: &TruncatedPolynomial, n: usize) -> Result<TruncatedPolynomial> {
    if p.num_vars() != n {
        return Err(invalid(format!(
            "polynomial has {} variables, expected {n}",
            p.num_vars()
        )));
    }
    let mut q = p.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            q = q.divide_by_difference(i, j)?;
        }
    }
    Ok(q)
}

/// Degree cap that leaves an exact constant term after `q` derivatives and
/// division by `Δ`: `q + n(n−1)/2`.
pub fn required_cap(n: usize, q: u32) -> u32 {
    q + (n * (n - 1) / 2) as u32
}

/// `[Δ⁻¹ Σ_i (−∂_i)^q (Δ Z)](0)` for a jet with at least the required cap.
pub fn jet_trace_moment(jet: &GeneratingJet, q: u32) -> Result<BigRational> {
    let n = jet.n;
    let cap = required_cap(n, q);
    if jet.cap < cap {
        return Err(invalid(format!("jet cap {} is below the required {cap}", jet.cap)));
    }
    let series = jet.series.truncate(cap);
    let product = &vandermonde(n, cap) * &series;
    if !product.is_antisymmetric() {
        return Err(Error::Inconsistent("Δ·Z is not antisymmetric".into()));
    }
    let mut acc = TruncatedPolynomial::zero(n, cap - q);
    for i in 0..n {
        let mut d = product.clone();
        for _ in 0..q {
            d = d.derivative(i);
        }
        acc = &acc + &d;
    }
    if q % 2 == 1 {
        acc = -&acc;
    }
    Ok(vandermonde_divide(&acc, n)?.constant_term())
}

fn check_moment_args(n: usize, q: u32) -> Result<()> {
    if n == 0 || q == 0 {
        return Err(invalid("need n ≥ 1 and q ≥ 1"));
    }
    Ok(())
}

/// `⟨Tr ρ^q⟩` in the Laguerre-type Bures ensemble (no trace constraint).
pub fn laguerre_trace_moment(n: usize, q: u32) -> Result<BigRational> {
    check_moment_args(n, q)?;
    jet_trace_moment(&bures_laguerre_jet(n, required_cap(n, q))?, q)
}

/// `⟨Tr ρ^q⟩` in the Laguerre-type Hilbert-Schmidt ensemble.
pub fn hs_laguerre_trace_moment(n: usize, q: u32) -> Result<BigRational> {
    check_moment_args(n, q)?;
    jet_trace_moment(&hs_laguerre_jet(n, required_cap(n, q))?, q)
}

/// Fixed-trace Bures moment `Γ(N²/2) / Γ(N²/2 + q) · ⟨Tr ρ^q⟩^L`.
pub fn bures_trace_moment(n: usize, q: u32) -> Result<BigRational> {
    let l = laguerre_trace_moment(n, q)?;
    Ok(l / rising(&rat((n * n) as i64, 2), q))
}

/// Fixed-trace Hilbert-Schmidt moment `Γ(N²) / Γ(N² + q) · ⟨Tr ρ^q⟩^L`.
pub fn hs_trace_moment(n: usize, q: u32) -> Result<BigRational> {
    let l = hs_laguerre_trace_moment(n, q)?;
    Ok(l / rising(&int((n * n) as i64), q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::closed_form_trace;
    use crate::samplers::EnsembleSpec;
    use proptest::prelude::*;

    fn var(n: usize, cap: u32, i: usize) -> TruncatedPolynomial {
        TruncatedPolynomial::variable(n, cap, i)
    }

    #[test]
    fn bures_jet_low_orders() {
        let j1 = bures_laguerre_jet(1, 2).unwrap();
        assert_eq!(j1.series.coefficient(&[1]), rat(-1, 2));
        assert_eq!(j1.series.coefficient(&[2]), rat(3, 8));
        let j2 = bures_laguerre_jet(2, 2).unwrap();
        assert_eq!(j2.series.coefficient(&[1, 0]), int(-1));
        assert_eq!(j2.series.coefficient(&[1, 1]), rat(9, 8));
        assert_eq!(j2.series.coefficient(&[2, 0]), rat(15, 16));
        let j3 = bures_laguerre_jet(2, 3).unwrap();
        assert_eq!(j3.series.coefficient(&[2, 1]), j3.series.coefficient(&[1, 2]));
    }

    /// `1 − (N/2)ΣE + (N²/8 + 1/16)(ΣE)² + (3N/16)ΣE²` through second order.
    #[test]
    fn bures_jet_second_order_expansion() {
        for n in 1..=4usize {
            let cap = 2;
            let jet = bures_laguerre_jet(n, cap).unwrap();
            let nn = int(n as i64);
            let sum = (0..n).fold(TruncatedPolynomial::zero(n, cap), |acc, i| &acc + &var(n, cap, i));
            let sq = (0..n).fold(TruncatedPolynomial::zero(n, cap), |acc, i| {
                &acc + &(&var(n, cap, i) * &var(n, cap, i))
            });
            let expected = &(&(&TruncatedPolynomial::one(n, cap) + &sum.scale(&(-&nn / int(2))))
                + &(&sum * &sum).scale(&(&nn * &nn / int(8) + rat(1, 16))))
                + &sq.scale(&(int(3) * &nn / int(16)));
            assert_eq!(jet.series, expected, "n = {n}");
        }
    }

    #[test]
    fn hs_jet_low_orders() {
        let j = hs_laguerre_jet(1, 2).unwrap();
        assert_eq!(j.series.coefficient(&[1]), int(-1));
        assert_eq!(j.series.coefficient(&[2]), int(1));
        let j = hs_laguerre_jet(2, 1).unwrap();
        assert_eq!(j.series.len(), 3);
        assert_eq!(j.series.coefficient(&[1, 0]), int(-2));
        assert_eq!(j.series.coefficient(&[0, 1]), int(-2));
        let j = hs_laguerre_jet(2, 2).unwrap();
        assert_eq!(j.series.coefficient(&[2, 0]), int(3));
        assert_eq!(j.series.coefficient(&[1, 1]), int(4));
    }

    #[test]
    fn vandermonde_division_examples() {
        let cap = 6;
        let d = &var(2, cap, 0) - &var(2, cap, 1);
        assert_eq!(vandermonde_divide(&d, 2).unwrap(), TruncatedPolynomial::one(2, cap));
        let p = &(&var(2, cap, 0) * &var(2, cap, 0)) - &(&var(2, cap, 1) * &var(2, cap, 1));
        assert_eq!(vandermonde_divide(&p, 2).unwrap(), &var(2, cap, 0) + &var(2, cap, 1));
        let e1_plus_5 = &var(3, cap, 0) + &TruncatedPolynomial::constant(3, cap, int(5));
        let p = &vandermonde(3, cap) * &e1_plus_5;
        assert_eq!(vandermonde_divide(&p, 3).unwrap(), e1_plus_5);
        assert!(vandermonde_divide(&var(2, cap, 0), 2).is_err());
    }

    #[test]
    fn laguerre_moment_examples() {
        assert_eq!(laguerre_trace_moment(1, 1).unwrap(), rat(1, 2));
        for n in 1..=4usize {
            assert_eq!(laguerre_trace_moment(n, 1).unwrap(), rat((n * n) as i64, 2));
            assert_eq!(bures_trace_moment(n, 1).unwrap(), int(1));
            assert_eq!(hs_trace_moment(n, 1).unwrap(), int(1));
        }
        assert_eq!(laguerre_trace_moment(2, 2).unwrap(), rat(21, 4));
        assert_eq!(bures_trace_moment(2, 2).unwrap(), rat(7, 8));
        assert_eq!(bures_trace_moment(2, 3).unwrap(), rat(13, 16));
        assert_eq!(bures_trace_moment(3, 3).unwrap(), rat(79, 143));
    }

    #[test]
    fn bures_moments_match_closed_forms() {
        for n in 2..=4 {
            let spec = EnsembleSpec::bures(n).unwrap();
            for q in 2..=4 {
                assert_eq!(
                    bures_trace_moment(n, q).unwrap(),
                    closed_form_trace(&spec, q).unwrap(),
                    "n={n} q={q}"
                );
            }
        }
    }

    #[test]
    fn hs_moments_match_closed_forms() {
        for n in 2..=3 {
            let spec = EnsembleSpec::hs(n).unwrap();
            for q in 2..=4 {
                assert_eq!(
                    hs_trace_moment(n, q).unwrap(),
                    closed_form_trace(&spec, q).unwrap(),
                    "n={n} q={q}"
                );
            }
        }
    }

    #[test]
    fn cap_guard() {
        let jet = bures_laguerre_jet(3, 3).unwrap();
        assert!(jet_trace_moment(&jet, 2).is_err());
        assert_eq!(required_cap(4, 4), 10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn vandermonde_round_trip(coeffs in proptest::collection::vec(-20i64..20, 1..5)) {
            // Multiply Δ by a symmetric polynomial and divide it back out.
            let n = 3;
            let cap = 3 + coeffs.len() as u32;
            let e = (0..n).fold(TruncatedPolynomial::zero(n, cap), |acc, i| &acc + &var(n, cap, i));
            let mut sym = TruncatedPolynomial::zero(n, cap);
            for (m, c) in coeffs.iter().enumerate() {
                sym = &sym + &e.pow(m as u32).scale(&int(*c));
            }
            let p = &vandermonde(n, cap) * &sym;
            prop_assert_eq!(vandermonde_divide(&p, n).unwrap(), sym);
        }
    }
}
