//! Seedable random streams and the scalar/discrete primitives built on them.
//!
//! A stream is identified by `(seed, stream_index)`. The pair is folded into a
//! single generator seed with a SplitMix64 finalizer so that neighbouring
//! indices land on unrelated ChaCha8 states; batch drivers hand out one index
//! per sample, which makes results independent of how work is scheduled.

use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Tolerance on |Σp - 1| for a [`ProbVector`].
pub const PROB_SUM_TOL: f64 = 1e-12;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mix_seed(seed: u64, stream_index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ splitmix64(stream_index.rotate_left(32) ^ 0xD1B5_4A32_D192_ED03))
}

/// A deterministic random stream. Single owner; derive one per unit of work.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_index: u64,
    inner: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        Self {
            seed,
            stream_index,
            inner: ChaCha8Rng::seed_from_u64(mix_seed(seed, stream_index)),
            spare_normal: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Uniform in `[0, 1)`.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> Result<f64> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::contract(format!(
                "uniform requires finite lo < hi, got [{lo}, {hi})"
            )));
        }
        Ok(self.inner.random_range(lo..hi))
    }

    /// Uniform in `[lo, hi)` for bounds known to be valid.
    #[inline]
    pub(crate) fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        debug_assert!(lo < hi);
        self.inner.random_range(lo..hi)
    }

    /// Standard normal variate (Box-Muller; the second value of each pair is cached).
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        // 1 - u lies in (0, 1], keeping ln finite
        let u1 = 1.0 - self.unit();
        let u2 = self.unit();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (TAU * u2).sin_cos();
        self.spare_normal = Some(r * s);
        r * c
    }

    /// Uniformly random permutation of `0..n` (Fisher-Yates).
    pub fn random_permutation(&mut self, n: usize) -> Result<Vec<usize>> {
        if n == 0 {
            return Err(Error::contract("permutation length must be at least 1"));
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.inner);
        Ok(perm)
    }

    /// Unbiased random discrete probability distribution over `d` outcomes.
    ///
    /// A stick-breaking precursor draws `q_1 ~ U[0, 1)` and
    /// `q_j ~ U[0, 1 - Σ_{k<j} q_k)` for `j < d`, sets `q_d` to the remainder,
    /// and the result is the `q`s in a fresh random order. Without the
    /// shuffle the first components would be systematically larger.
    pub fn unbiased_rdpd(&mut self, d: usize) -> Result<ProbVector> {
        let perm = self.random_permutation(d)?;
        let mut q = Vec::with_capacity(d);
        let mut used = 0.0;
        for _ in 0..d - 1 {
            let v = (1.0 - used) * self.unit();
            used += v;
            q.push(v);
        }
        q.push((1.0 - used).max(0.0));
        let p = perm.iter().map(|&k| q[k]).collect();
        ProbVector::new(p)
    }

    /// `d` independent phases uniform in `[0, 2π)`.
    pub fn random_phases(&mut self, d: usize) -> Vec<f64> {
        (0..d).map(|_| self.phase()).collect()
    }

    #[inline]
    pub(crate) fn phase(&mut self) -> f64 {
        // TAU * [0,1) can round up to TAU itself
        let t = TAU * self.unit();
        if t >= TAU {
            0.0
        } else {
            t
        }
    }
}

/// Nonnegative reals summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::contract("probability vector must be nonempty"));
        }
        if let Some(bad) = p.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::contract(format!(
                "negative or non-finite probability {bad}"
            )));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::contract(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self(p))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}
