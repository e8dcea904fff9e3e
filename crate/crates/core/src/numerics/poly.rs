//! Multivariate power series over the rationals, truncated at a total degree.
//!
//! Coefficients live in a sparse map keyed by exponent vectors; zero
//! coefficients are never stored and every stored monomial respects the cap.
//! Binary operations truncate at the smaller of the two caps.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{exact_sqrt, rat, BigRational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPolynomial {
    num_vars: usize,
    cap: u32,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn degree(exps: &[u32]) -> u32 {
    exps.iter().sum()
}

impl TruncatedPolynomial {
    pub fn zero(num_vars: usize, cap: u32) -> Self {
        assert!(num_vars >= 1, "a polynomial needs at least one variable");
        Self {
            num_vars,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, cap: u32, c: BigRational) -> Self {
        let mut p = Self::zero(num_vars, cap);
        p.add_term(vec![0; num_vars], c);
        p
    }

    pub fn one(num_vars: usize, cap: u32) -> Self {
        Self::constant(num_vars, cap, BigRational::one())
    }

    /// The coordinate function `E_var`.
    pub fn variable(num_vars: usize, cap: u32, var: usize) -> Self {
        assert!(var < num_vars);
        let mut e = vec![0; num_vars];
        e[var] = 1;
        Self::from_terms(num_vars, cap, [(e, BigRational::one())])
    }

    pub fn from_terms<I>(num_vars: usize, cap: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = Self::zero(num_vars, cap);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&vec![0; self.num_vars])
    }

    /// Adds `c·E^exps`, dropping it if it exceeds the cap.
    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() || degree(&exps) > self.cap {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
    }

    pub fn truncate(&self, cap: u32) -> Self {
        let cap = cap.min(self.cap);
        Self {
            num_vars: self.num_vars,
            cap,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| degree(e) <= cap)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut p = Self::zero(self.num_vars, self.cap);
        if k.is_zero() {
            return p;
        }
        p.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        p
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.num_vars, self.cap);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative. The result is exact only up to `cap - 1`,
    /// which becomes its cap.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.num_vars);
        let cap = self.cap.saturating_sub(1);
        let mut out = Self::zero(self.num_vars, cap);
        if self.cap == 0 {
            return out;
        }
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            out.add_term(ne, c * BigRational::from_integer(e[var].into()));
        }
        out
    }

    /// Splits `self = c0·(1 + g)` with `g(0) = 0`.
    fn normalized_tail(&self) -> Result<(BigRational, Self)> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::Polynomial("constant term is zero".into()));
        }
        let mut g = self.scale(&(BigRational::one() / &c0));
        g.terms.remove(&vec![0; self.num_vars]);
        Ok((c0, g))
    }

    /// `Σ_m coeffs[m]·g^m` by Horner's rule, for `g` with zero constant term.
    fn compose_series(g: &Self, coeffs: &[BigRational]) -> Self {
        let mut acc = Self::zero(g.num_vars, g.cap);
        for c in coeffs.iter().rev() {
            acc = &acc * g;
            acc.add_term(vec![0; g.num_vars], c.clone());
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let (c0, g) = self.normalized_tail()?;
        let coeffs: Vec<BigRational> = (0..=self.cap)
            .map(|m| if m % 2 == 0 { rat(1, 1) } else { rat(-1, 1) })
            .collect();
        Ok(Self::compose_series(&g, &coeffs).scale(&(BigRational::one() / c0)))
    }

    /// Square root; the constant term must be a positive rational square.
    pub fn sqrt(&self) -> Result<Self> {
        let (c0, g) = self.normalized_tail()?;
        let root = exact_sqrt(&c0)
            .ok_or_else(|| Error::Polynomial(format!("constant term {c0} has no rational square root")))?;
        let half = rat(1, 2);
        let mut coeffs = Vec::with_capacity(self.cap as usize + 1);
        let mut b = BigRational::one();
        for m in 0..=self.cap {
            coeffs.push(b.clone());
            b = b * (&half - BigRational::from_integer(m.into())) / BigRational::from_integer((m + 1).into());
        }
        Ok(Self::compose_series(&g, &coeffs).scale(&root))
    }

    /// `√(1 + self)`.
    pub fn sqrt_one_plus(&self) -> Result<Self> {
        (self + &Self::one(self.num_vars, self.cap)).sqrt()
    }

    /// Exchanges the roles of variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.num_vars, self.cap);
        out.terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne.swap(i, j);
                (ne, c.clone())
            })
            .collect();
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.num_vars).all(|i| ((i + 1)..self.num_vars).all(|j| self.swap_vars(i, j) == *self))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let neg = -self;
        (0..self.num_vars).all(|i| ((i + 1)..self.num_vars).all(|j| self.swap_vars(i, j) == neg))
    }

    /// Exact quotient by the linear form `E_i − E_j`; errors on a nonzero remainder.
    pub fn divide_by_difference(&self, i: usize, j: usize) -> Result<Self> {
        assert!(i != j && i < self.num_vars && j < self.num_vars);
        let mut rem = self.terms.clone();
        let mut quotient = Self::zero(self.num_vars, self.cap);
        let top = rem.keys().map(|e| e[i]).max().unwrap_or(0);
        // c·E_i^a·R = (E_i − E_j)·c·E_i^(a−1)·R + c·E_i^(a−1)·E_j·R
        for a in (1..=top).rev() {
            let layer: Vec<(Vec<u32>, BigRational)> = rem
                .iter()
                .filter(|(e, _)| e[i] == a)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect();
            for (e, c) in layer {
                rem.remove(&e);
                let mut q = e.clone();
                q[i] -= 1;
                let mut carried = q.clone();
                carried[j] += 1;
                quotient.add_term(q, c.clone());
                let slot = rem.entry(carried.clone()).or_insert_with(BigRational::zero);
                *slot += c;
                if slot.is_zero() {
                    rem.remove(&carried);
                }
            }
        }
        if rem.values().any(|c| !c.is_zero()) {
            return Err(Error::Polynomial(format!(
                "E{} - E{} does not divide the polynomial ({} remainder terms)",
                i + 1,
                j + 1,
                rem.len()
            )));
        }
        Ok(quotient)
    }
}

impl Add for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    fn add(self, rhs: &TruncatedPolynomial) -> TruncatedPolynomial {
        self.check_compatible(rhs);
        let mut out = self.truncate(self.cap.min(rhs.cap));
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    fn sub(self, rhs: &TruncatedPolynomial) -> TruncatedPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    fn neg(self) -> TruncatedPolynomial {
        self.scale(&rat(-1, 1))
    }
}

impl Mul for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;

    fn mul(self, rhs: &TruncatedPolynomial) -> TruncatedPolynomial {
        self.check_compatible(rhs);
        let cap = self.cap.min(rhs.cap);
        let mut right: Vec<(&Vec<u32>, u32, &BigRational)> = rhs.terms.iter().map(|(e, c)| (e, degree(e), c)).collect();
        right.sort_by_key(|t| t.1);
        let mut acc: HashMap<Vec<u32>, BigRational> = HashMap::new();
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            if da > cap {
                continue;
            }
            for &(eb, db, cb) in &right {
                if da + db > cap {
                    break;
                }
                let e: Vec<u32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        let mut out = TruncatedPolynomial::zero(self.num_vars, cap);
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::int;
    use proptest::prelude::*;

    fn e(cap: u32) -> TruncatedPolynomial {
        TruncatedPolynomial::variable(1, cap, 0)
    }

    #[test]
    fn sqrt_one_plus_binomial_series() {
        let s = e(3).sqrt_one_plus().unwrap();
        let expect = TruncatedPolynomial::from_terms(
            1,
            3,
            [
                (vec![0], int(1)),
                (vec![1], rat(1, 2)),
                (vec![2], rat(-1, 8)),
                (vec![3], rat(1, 16)),
            ],
        );
        assert_eq!(s, expect);
    }

    #[test]
    fn reciprocal_geometric_series() {
        let two_plus_e = &TruncatedPolynomial::constant(1, 2, int(2)) + &e(2);
        let r = two_plus_e.reciprocal().unwrap();
        let expect = TruncatedPolynomial::from_terms(
            1,
            2,
            [(vec![0], rat(1, 2)), (vec![1], rat(-1, 4)), (vec![2], rat(1, 8))],
        );
        assert_eq!(r, expect);
    }

    #[test]
    fn truncation_drops_mixed_term() {
        let one = TruncatedPolynomial::one(2, 1);
        let a = &one + &TruncatedPolynomial::variable(2, 1, 0);
        let b = &one + &TruncatedPolynomial::variable(2, 1, 1);
        let p = &a * &b;
        assert_eq!(p.len(), 3);
        assert_eq!(p.coefficient(&[1, 1]), int(0));
        assert_eq!(p.coefficient(&[1, 0]), int(1));
    }

    #[test]
    fn error_paths() {
        let p = &TruncatedPolynomial::constant(1, 2, int(2)) + &e(2);
        assert!(matches!(p.sqrt(), Err(Error::Polynomial(_))));
        assert!(e(2).reciprocal().is_err());
    }

    #[test]
    fn division_by_linear_difference() {
        let x = TruncatedPolynomial::variable(2, 4, 0);
        let y = TruncatedPolynomial::variable(2, 4, 1);
        let p = &(&x * &x) - &(&y * &y);
        assert_eq!(p.divide_by_difference(0, 1).unwrap(), &x + &y);
        assert!(x.divide_by_difference(0, 1).is_err());
    }

    fn poly_strategy(num_vars: usize, cap: u32) -> impl Strategy<Value = TruncatedPolynomial> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, num_vars), -5i64..6, 1i64..4), 0..6).prop_map(
            move |terms| {
                TruncatedPolynomial::from_terms(num_vars, cap, terms.into_iter().map(|(e, n, d)| (e, rat(n, d))))
            },
        )
    }

    proptest! {
        #[test]
        fn truncated_product_matches_product_of_truncations(
            a in poly_strategy(2, 6), b in poly_strategy(2, 6), cap in 0u32..6
        ) {
            let full = &a * &b;
            let lhs = full.truncate(cap);
            let rhs = &a.truncate(cap) * &b.truncate(cap);
            prop_assert_eq!(lhs, rhs);
            prop_assert!(full.terms().all(|(e, c)| degree(e) <= full.cap() && !c.is_zero()));
        }

        #[test]
        fn multiplication_commutes_and_associates(
            a in poly_strategy(2, 4), b in poly_strategy(2, 4), c in poly_strategy(2, 4)
        ) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn sqrt_squares_back(
            p in poly_strategy(2, 4), root_n in 1i64..5, root_d in 1i64..4
        ) {
            // Force a positive perfect-square constant term.
            let c = rat(root_n * root_n, root_d * root_d);
            let mut q = p.clone();
            q.terms.remove(&vec![0, 0]);
            let q = &q + &TruncatedPolynomial::constant(2, 4, c);
            let shifted = &q - &TruncatedPolynomial::one(2, 4);
            let s = shifted.sqrt_one_plus().unwrap();
            prop_assert_eq!(&s * &s, q.clone());
            let r = q.reciprocal().unwrap();
            prop_assert_eq!(&r * &q, TruncatedPolynomial::one(2, 4));
        }
    }
}
