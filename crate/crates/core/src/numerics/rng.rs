//! Seedable, stream-splittable randomness.
//!
//! [`RngStream`] wraps a ChaCha8 keystream: the seed selects the key and the
//! stream id selects the nonce, so `(seed, stream_id)` pins the output on every
//! platform and distinct stream ids never share state. Normals come from the
//! Box-Muller transform.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::ComplexMatrix;

#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    inner: ChaCha8Rng,
    spare_normal: Option<f64>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            inner,
            spare_normal: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Independent child stream, a pure function of `(seed, stream_id, index)`.
    pub fn substream(&self, index: u64) -> Self {
        let id = splitmix64(self.stream_id ^ splitmix64(index.wrapping_add(1)));
        Self::new(self.seed, id)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `(0, 1]`.
    pub fn uniform_open_closed(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        // Lemire's multiply-shift; the bias is below 2^-40 for the sizes used here.
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform_open_closed();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * std::f64::consts::PI * u2).sin_cos();
        self.spare_normal = Some(r * s);
        r * c
    }

    /// Complex normal with independent parts of variance 1/2, so `E|z|² = 1`.
    pub fn complex_normal(&mut self) -> Complex64 {
        let re = self.standard_normal();
        let im = self.standard_normal();
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}

/// `n × k` matrix of independent complex normals with `E|X_ij|² = 1`.
pub fn gaussian_complex_matrix(n: usize, k: usize, rng: &mut RngStream) -> ComplexMatrix {
    assert!(n >= 1 && k >= 1, "matrix dimensions must be positive");
    let data = (0..n * k).map(|_| rng.complex_normal()).collect();
    ComplexMatrix::from_row_major(n, k, data).expect("sizes agree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean_and_se(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
        (m, (v / n).sqrt())
    }

    #[test]
    fn scalar_variance_normalization() {
        let mut rng = RngStream::new(11, 0);
        let xs: Vec<f64> = (0..100_000)
            .map(|_| gaussian_complex_matrix(1, 1, &mut rng)[(0, 0)].norm_sqr())
            .collect();
        let (m, se) = mean_and_se(&xs);
        assert!((m - 1.0).abs() < 4.0 * se, "mean {m} se {se}");
    }

    #[test]
    fn distinct_entries_uncorrelated() {
        let mut rng = RngStream::new(5, 3);
        let mut prods = Vec::new();
        for _ in 0..20_000 {
            let x = gaussian_complex_matrix(3, 5, &mut rng);
            prods.push((x[(0, 1)] * x[(2, 4)].conj()).re);
        }
        let (m, se) = mean_and_se(&prods);
        assert!(m.abs() < 4.0 * se, "covariance {m} se {se}");
    }

    #[test]
    fn deterministic_per_seed_and_stream() {
        let a = gaussian_complex_matrix(2, 2, &mut RngStream::new(42, 0));
        let b = gaussian_complex_matrix(2, 2, &mut RngStream::new(42, 0));
        assert_eq!(a, b);
        let c = gaussian_complex_matrix(2, 2, &mut RngStream::new(42, 1));
        assert_ne!(a, c);
        let s1 = RngStream::new(42, 0).substream(3).next_u64();
        let s2 = RngStream::new(42, 0).substream(3).next_u64();
        assert_eq!(s1, s2);
    }

    #[test]
    fn below_stays_in_range() {
        let mut rng = RngStream::new(1, 1);
        let mut seen = [0usize; 3];
        for _ in 0..3000 {
            seen[rng.below(3)] += 1;
        }
        assert!(seen.iter().all(|&c| c > 800));
    }
}
