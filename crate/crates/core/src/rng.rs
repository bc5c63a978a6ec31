//! Seeded randomness. All randomized operations take a 64-bit seed and use
//! ChaCha20 so that results are reproducible across platforms.

use alloc::vec::Vec;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::linalg;
use crate::mathx;

pub struct SeededRng(ChaCha20Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(ChaCha20Rng::seed_from_u64(seed))
    }

    /// Derives an independent stream for a sub-task.
    pub fn fork(&self, stream: u64) -> Self {
        let mut r = ChaCha20Rng::seed_from_u64(stream);
        let mut base = self.0.clone();
        r.set_stream(base.next_u64());
        SeededRng(r)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in [0, bound).
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        // rejection-free widening multiply; bias is negligible for our bounds
        ((self.0.next_u64() as u128 * bound as u128) >> 64) as usize
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        let mut u1 = self.uniform();
        if u1 <= 0.0 {
            u1 = f64::MIN_POSITIVE;
        }
        let u2 = self.uniform();
        mathx::sqrt(-2.0 * mathx::ln(u1)) * mathx::cos(2.0 * core::f64::consts::PI * u2)
    }

    /// Uniform direction on the unit sphere in R^n (normalized Gaussians).
    pub fn unit_vector(&mut self, n: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..n).map(|_| self.normal()).collect();
            let len = linalg::norm(&v);
            if len > 1e-8 {
                return linalg::scale(&v, 1.0 / len);
            }
        }
    }

    /// Uniform point in the ball of radius `r` centered at `center`.
    pub fn ball_point(&mut self, center: &[f64], r: f64) -> Vec<f64> {
        let n = center.len();
        let dir = self.unit_vector(n);
        let u = self.uniform();
        // radius ~ r * U^(1/n) for uniform volume density
        let rad = r * libm::pow(u, 1.0 / n as f64);
        let mut p = linalg::scale(&dir, rad);
        for (pi, ci) in p.iter_mut().zip(center) {
            *pi += ci;
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_streams() {
        let mut a = SeededRng::new(7);
        let mut b = SeededRng::new(7);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn unit_vectors_are_unit() {
        let mut r = SeededRng::new(1);
        for n in 1..6 {
            let v = r.unit_vector(n);
            assert!((linalg::norm(&v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn normal_moments_sane() {
        let mut r = SeededRng::new(42);
        let xs: alloc::vec::Vec<f64> = (0..20000).map(|_| r.normal()).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / xs.len() as f64;
        assert!(mean.abs() < 0.05, "mean {}", mean);
        assert!((var - 1.0).abs() < 0.1, "var {}", var);
    }
}
