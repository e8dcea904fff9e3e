//! Exact rational helpers: factorial-valued Gamma functions, harmonic numbers,
//! decimal rendering, and numbers of the form `a + b·π²`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational;

/// π² to 49 decimal places.
const PI_SQUARED_DIGITS: &str = "9.8696044010893586188344909998761511353136994072408";

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `Γ(m) = (m-1)!` for a positive integer `m`.
pub fn gamma_int(m: i64) -> BigInt {
    assert!(m >= 1, "Γ({m}) is not a positive-integer factorial");
    factorial((m - 1) as u64)
}

/// `1/Γ(m)` as an exact rational; zero at the poles `m ≤ 0`.
pub fn reciprocal_gamma(m: i64) -> BigRational {
    if m <= 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::one(), gamma_int(m))
    }
}

/// Rising factorial `x (x+1) ... (x+q-1)`, i.e. `Γ(x+q)/Γ(x)`.
pub fn rising(x: &BigRational, q: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..q {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// `Σ_{k=1}^{n} 1/k^order`.
pub fn harmonic(n: u64, order: u32) -> BigRational {
    harmonic_table(n, order).pop().unwrap_or_else(BigRational::zero)
}

/// `[H_0, H_1, ..., H_n]` of the given order.
pub fn harmonic_table(n: u64, order: u32) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = BigRational::zero();
    out.push(acc.clone());
    for k in 1..=n {
        acc += BigRational::new(BigInt::one(), BigInt::from(k).pow(order));
        out.push(acc.clone());
    }
    out
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root when both numerator and denominator are perfect squares.
pub fn exact_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Fixed-point decimal rendering, rounded half away from zero.
pub fn decimal_string(x: &BigRational, frac_digits: usize) -> String {
    let scale = BigInt::from(10).pow(frac_digits as u32);
    let num = x.numer().abs() * &scale * 2 + x.denom();
    let scaled: BigInt = num / (x.denom() * 2);
    let mut digits = scaled.to_string();
    if digits.len() <= frac_digits {
        digits = "0".repeat(frac_digits + 1 - digits.len()) + &digits;
    }
    let split = digits.len() - frac_digits;
    let sign = if x.numer().sign() == Sign::Minus && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    if frac_digits == 0 {
        format!("{sign}{digits}")
    } else {
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    }
}

/// Parse a finite decimal literal such as `"-1.25"` into an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{whole}{frac}").parse().ok()?;
    let value = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Some(if neg { -value } else { value })
}

/// Exact rational stand-in for π² (49 decimals), used only for rendering.
pub fn pi_squared_rational() -> BigRational {
    parse_decimal(PI_SQUARED_DIGITS).expect("constant parses")
}

/// An exact number `a + b·π²` with rational `a`, `b`.
///
/// Trigamma values at integers, `ψ'(m) = π²/6 − Σ_{k<m} 1/k²`, live here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiSquareValue {
    pub a: BigRational,
    pub b: BigRational,
}

impl PiSquareValue {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn rational(a: BigRational) -> Self {
        Self::new(a, BigRational::zero())
    }

    /// `ψ'(m)` for a positive integer `m`.
    pub fn trigamma(m: u64) -> Self {
        assert!(m >= 1);
        Self::new(-harmonic(m - 1, 2), rat(1, 6))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * std::f64::consts::PI.powi(2)
    }

    /// Decimal rendering with `frac_digits` digits after the point (≤ 40).
    pub fn to_decimal_string(&self, frac_digits: usize) -> String {
        let value = &self.a + &self.b * pi_squared_rational();
        decimal_string(&value, frac_digits)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.a * k, &self.b * k)
    }
}

impl fmt::Display for PiSquareValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})·π²", self.a, self.b)
    }
}

impl Add for PiSquareValue {
    type Output = PiSquareValue;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for PiSquareValue {
    type Output = PiSquareValue;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for PiSquareValue {
    type Output = PiSquareValue;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul<&BigRational> for PiSquareValue {
    type Output = PiSquareValue;
    fn mul(self, rhs: &BigRational) -> Self {
        self.scale(rhs)
    }
}

impl Add<BigRational> for PiSquareValue {
    type Output = PiSquareValue;
    fn add(self, rhs: BigRational) -> Self {
        Self::new(self.a + rhs, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(4, 1), rat(25, 12));
        assert_eq!(harmonic(0, 1), int(0));
        assert_eq!(harmonic(3, 2), rat(49, 36));
    }

    #[test]
    fn gamma_and_poles() {
        assert_eq!(gamma_int(1), BigInt::one());
        assert_eq!(gamma_int(5), BigInt::from(24));
        assert!(reciprocal_gamma(0).is_zero());
        assert!(reciprocal_gamma(-3).is_zero());
        assert_eq!(reciprocal_gamma(4), rat(1, 6));
        assert_eq!(rising(&rat(1, 2), 3), rat(15, 8));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(5, 7), 5), "0.71429");
        assert_eq!(decimal_string(&rat(-1, 3), 3), "-0.333");
        assert_eq!(decimal_string(&int(12), 2), "12.00");
        assert_eq!(decimal_string(&rat(1, 2000), 2), "0.00");
        assert_eq!(parse_decimal("-1.25"), Some(rat(-5, 4)));
    }

    #[test]
    fn pi_square_rendering_has_thirty_correct_digits() {
        let v = PiSquareValue::new(int(0), int(1));
        assert_eq!(v.to_decimal_string(30), "9.869604401089358618834490999876");
        let t = PiSquareValue::trigamma(1);
        assert!((t.to_f64() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(exact_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(exact_sqrt(&rat(2, 1)), None);
        assert_eq!(exact_sqrt(&rat(-1, 1)), None);
    }

    fn small_rat() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert!(*(&a * &b).denom() > BigInt::zero());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }
    }
}
