//! Single-pass mean / standard deviation with a fixed-width histogram.
//!
//! Partial accumulators merge with the pooled (Chan et al.) update, so a run
//! can be split across workers and recombined.

use serde::Serialize;

use crate::error::{Error, Result};

/// Default bin count for HSD histograms.
pub const DEFAULT_BINS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    n: u64,
    mean: f64,
    m2: f64,
    lo: f64,
    hi: f64,
    counts: Vec<u64>,
}

/// One histogram bin, `[lower, upper)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramBin {
    pub bin_lower: f64,
    pub bin_upper: f64,
    pub count: u64,
}

impl RunStats {
    /// Empty accumulator over `bins` equal-width bins spanning `[lo, hi)`.
    pub fn new(bins: usize, lo: f64, hi: f64) -> Result<Self> {
        if bins == 0 {
            return Err(Error::contract("histogram needs at least one bin"));
        }
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::contract(format!(
                "invalid histogram range [{lo}, {hi})"
            )));
        }
        Ok(Self {
            n: 0,
            mean: 0.0,
            m2: 0.0,
            lo,
            hi,
            counts: vec![0; bins],
        })
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);

        let bins = self.counts.len();
        let pos = (x - self.lo) / (self.hi - self.lo) * bins as f64;
        // out-of-range values land in the edge bins
        let idx = if pos.is_nan() || pos < 0.0 {
            0
        } else {
            (pos as usize).min(bins - 1)
        };
        self.counts[idx] += 1;
    }

    /// Pools another accumulator with the same binning into this one.
    pub fn merge(&mut self, other: &RunStats) -> Result<()> {
        if self.counts.len() != other.counts.len() || self.lo != other.lo || self.hi != other.hi {
            return Err(Error::contract(
                "cannot merge statistics with different binning",
            ));
        }
        if other.n == 0 {
            return Ok(());
        }
        if self.n == 0 {
            *self = other.clone();
            return Ok(());
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        let delta = other.mean - self.mean;
        self.mean += delta * nb / n;
        self.m2 += other.m2 + delta * delta * na * nb / n;
        self.n += other.n;
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        Ok(())
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Population variance.
    pub fn variance(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            (self.m2 / self.n as f64).max(0.0)
        }
    }

    /// Population standard deviation.
    pub fn std(&self) -> f64 {
        self.variance().sqrt()
    }

    pub fn range(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn histogram(&self) -> Vec<HistogramBin> {
        let w = self.bin_width();
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &count)| HistogramBin {
                bin_lower: self.lo + k as f64 * w,
                bin_upper: if k + 1 == self.counts.len() {
                    self.hi
                } else {
                    self.lo + (k + 1) as f64 * w
                },
                count,
            })
            .collect()
    }
}

/// Accumulates a nonempty stream of values.
pub fn accumulate_stats(
    values: impl IntoIterator<Item = f64>,
    bins: usize,
    range: (f64, f64),
) -> Result<RunStats> {
    let mut stats = RunStats::new(bins, range.0, range.1)?;
    for v in values {
        stats.push(v);
    }
    if stats.n == 0 {
        return Err(Error::contract("cannot summarize an empty stream"));
    }
    Ok(stats)
}
