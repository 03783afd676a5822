//! Monte-Carlo drivers for HSD statistics, qubit clouds and dimension sweeps.
//!
//! Pair `k` of a run draws its two states from streams `(seed, 2k)` and
//! `(seed, 2k + 1)`. Pairs are grouped into fixed-size blocks that are
//! accumulated independently and merged in block order, so the result is
//! bit-identical for any rayon pool size.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::{bloch_vector_qubit, hsd, BlochVector3, HSD_MAX};
use crate::rng::RngStream;
use crate::samplers::{
    bures_density, ginibre_density, opm_density, random_pure_state, standard_density, BlochSampler,
    OpmDomain, DEFAULT_MAX_ATTEMPTS,
};
use crate::state::DensityMatrix;
use crate::stats::{RunStats, DEFAULT_BINS};

/// Pairs per accumulation block.
const BLOCK_PAIRS: u64 = 2048;

/// Smallest pair count accepted by [`run_table1`].
pub const TABLE1_MIN_PAIRS: u64 = 10_000;

/// Dimensions covered by the `table1` run.
pub const TABLE1_DIMS: [usize; 8] = [2, 4, 6, 8, 10, 12, 14, 16];

/// Methods covered by the `table1` run, in column order.
pub const TABLE1_METHODS: [Method; 3] = [Method::OpmSym, Method::OpmNormal, Method::Standard];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Pure,
    Standard,
    Bloch,
    OpmUnit,
    OpmSym,
    OpmNormal,
    Ginibre,
    Bures,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Pure,
        Method::Standard,
        Method::Bloch,
        Method::OpmUnit,
        Method::OpmSym,
        Method::OpmNormal,
        Method::Ginibre,
        Method::Bures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Pure => "pure",
            Method::Standard => "standard",
            Method::Bloch => "bloch",
            Method::OpmUnit => "opm-unit",
            Method::OpmSym => "opm-sym",
            Method::OpmNormal => "opm-normal",
            Method::Ginibre => "ginibre",
            Method::Bures => "bures",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::contract(format!("unknown method '{s}'")))
    }
}

/// A method bound to its dimensions, ready to draw states.
#[derive(Debug, Clone)]
pub struct StateSource {
    method: Method,
    d: usize,
    d_prime: Option<usize>,
    bloch: Option<BlochSampler>,
}

impl StateSource {
    pub fn new(
        method: Method,
        d: usize,
        d_prime: Option<usize>,
        max_attempts: u64,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::contract("dimension must be at least 1"));
        }
        match (method, d_prime) {
            (Method::Ginibre, None) => {
                return Err(Error::contract("ginibre requires a left dimension d'"))
            }
            (Method::Ginibre, Some(0)) => {
                return Err(Error::contract("left dimension d' must be at least 1"))
            }
            (Method::Ginibre, Some(_)) => {}
            (_, Some(_)) => {
                return Err(Error::contract(format!(
                    "left dimension d' only applies to ginibre, not {method}"
                )))
            }
            (_, None) => {}
        }
        let bloch = match method {
            Method::Bloch => Some(BlochSampler::new(d, max_attempts)?),
            _ => None,
        };
        Ok(Self {
            method,
            d,
            d_prime,
            bloch,
        })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn sample(&self, rng: &mut RngStream) -> Result<DensityMatrix> {
        let d = self.d;
        match self.method {
            Method::Pure => Ok(random_pure_state(rng, d)?.projector()),
            Method::Standard => standard_density(rng, d),
            Method::Bloch => {
                let sampler = self
                    .bloch
                    .as_ref()
                    .expect("bloch sampler prepared in new()");
                Ok(sampler.sample(rng)?.0)
            }
            Method::OpmUnit => opm_density(rng, d, OpmDomain::UnitInterval),
            Method::OpmSym => opm_density(rng, d, OpmDomain::SymmetricInterval),
            Method::OpmNormal => opm_density(rng, d, OpmDomain::StandardNormal),
            Method::Ginibre => ginibre_density(rng, self.d_prime.unwrap_or(d), d),
            Method::Bures => bures_density(rng, d),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub method: Method,
    pub d: usize,
    /// Left dimension of the Ginibre factor; only for [`Method::Ginibre`].
    pub d_prime: Option<usize>,
    pub pairs: u64,
    pub seed: u64,
    pub bins: usize,
    /// Attempt cap for the Bloch rejection sampler.
    pub max_attempts: u64,
}

impl ExperimentConfig {
    pub fn new(method: Method, d: usize, pairs: u64, seed: u64) -> Self {
        Self {
            method,
            d,
            d_prime: None,
            pairs,
            seed,
            bins: DEFAULT_BINS,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn with_d_prime(mut self, d_prime: usize) -> Self {
        self.d_prime = Some(d_prime);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.pairs == 0 {
            return Err(Error::contract("pairs must be at least 1"));
        }
        if self.bins == 0 {
            return Err(Error::contract("bins must be at least 1"));
        }
        StateSource::new(self.method, self.d, self.d_prime, self.max_attempts).map(|_| ())
    }
}

fn run_block(
    source: &StateSource,
    seed: u64,
    bins: usize,
    start: u64,
    end: u64,
) -> Result<RunStats> {
    let mut stats = RunStats::new(bins, 0.0, HSD_MAX)?;
    for k in start..end {
        let rho = source.sample(&mut RngStream::new(seed, 2 * k))?;
        let zeta = source.sample(&mut RngStream::new(seed, 2 * k + 1))?;
        stats.push(hsd(&rho, &zeta)?);
    }
    Ok(stats)
}

/// HSD statistics over `cfg.pairs` independent state pairs.
pub fn run_hsd_experiment(cfg: &ExperimentConfig) -> Result<RunStats> {
    cfg.validate()?;
    let source = StateSource::new(cfg.method, cfg.d, cfg.d_prime, cfg.max_attempts)?;
    let blocks = cfg.pairs.div_ceil(BLOCK_PAIRS);
    let partials: Vec<Result<RunStats>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * BLOCK_PAIRS;
            let end = (start + BLOCK_PAIRS).min(cfg.pairs);
            run_block(&source, cfg.seed, cfg.bins, start, end)
        })
        .collect();
    let mut total = RunStats::new(cfg.bins, 0.0, HSD_MAX)?;
    for part in partials {
        total.merge(&part?)?;
    }
    Ok(total)
}

/// Bloch vectors of `n_states` qubit states; state `k` uses stream `(seed, k)`.
pub fn run_bloch_cloud(cfg: &ExperimentConfig, n_states: u64) -> Result<Vec<BlochVector3>> {
    if cfg.d != 2 {
        return Err(Error::contract(format!(
            "Bloch cloud needs d = 2, got {}",
            cfg.d
        )));
    }
    if n_states == 0 {
        return Err(Error::contract("n_states must be at least 1"));
    }
    let source = StateSource::new(cfg.method, cfg.d, cfg.d_prime, cfg.max_attempts)?;
    (0..n_states)
        .into_par_iter()
        .map(|k| bloch_vector_qubit(&source.sample(&mut RngStream::new(cfg.seed, k))?))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub method: Method,
    pub d: usize,
    pub d_prime: Option<usize>,
    pub n_pairs: u64,
    pub mean_hsd: f64,
    pub std_hsd: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn find(&self, method: Method, d: usize, d_prime: Option<usize>) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.d == d && r.d_prime == d_prime)
    }

    /// Rows of one method ordered by `d`.
    pub fn by_dimension(&self, method: Method) -> Vec<&SweepRow> {
        let mut rows: Vec<&SweepRow> = self.rows.iter().filter(|r| r.method == method).collect();
        rows.sort_by_key(|r| r.d);
        rows
    }

    /// Ginibre rows for one `d`, ordered by `d'`.
    pub fn by_left_dimension(&self, d: usize) -> Vec<&SweepRow> {
        let mut rows: Vec<&SweepRow> = self
            .rows
            .iter()
            .filter(|r| r.method == Method::Ginibre && r.d == d)
            .collect();
        rows.sort_by_key(|r| r.d_prime);
        rows
    }

    /// Human-readable monotonicity checks over `d'` for every `d` in a Ginibre sweep.
    pub fn ginibre_diagnostics(&self) -> Vec<String> {
        let mut ds: Vec<usize> = self
            .rows
            .iter()
            .filter(|r| r.method == Method::Ginibre)
            .map(|r| r.d)
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds.into_iter()
            .map(|d| {
                let rows = self.by_left_dimension(d);
                let mean_dec = rows.windows(2).all(|w| w[1].mean_hsd < w[0].mean_hsd);
                let std_dec = rows.windows(2).all(|w| w[1].std_hsd < w[0].std_hsd);
                format!(
                    "d={d}: mean {} and std {} over d' in {:?}",
                    if mean_dec {
                        "strictly decreasing"
                    } else {
                        "NOT strictly decreasing"
                    },
                    if std_dec {
                        "strictly decreasing"
                    } else {
                        "NOT strictly decreasing"
                    },
                    rows.iter().filter_map(|r| r.d_prime).collect::<Vec<_>>()
                )
            })
            .collect()
    }
}

fn sweep_row(cfg: &ExperimentConfig) -> Result<SweepRow> {
    let stats = run_hsd_experiment(cfg)?;
    Ok(SweepRow {
        method: cfg.method,
        d: cfg.d,
        d_prime: cfg.d_prime,
        n_pairs: stats.n(),
        mean_hsd: stats.mean(),
        std_hsd: stats.std(),
    })
}

/// Uniform / Normal / Standard columns for `d = 2, 4, ..., 16`, ordered by `d` then method.
pub fn run_table1(seed: u64, pairs: u64) -> Result<SweepResult> {
    if pairs < TABLE1_MIN_PAIRS {
        return Err(Error::contract(format!(
            "table1 needs at least {TABLE1_MIN_PAIRS} pairs, got {pairs}"
        )));
    }
    let mut rows = Vec::new();
    for d in TABLE1_DIMS {
        for method in TABLE1_METHODS {
            rows.push(sweep_row(&ExperimentConfig::new(method, d, pairs, seed))?);
        }
    }
    Ok(SweepResult { rows })
}

/// One Ginibre row per `(d, d')` in the Cartesian product of the two lists.
pub fn run_ginibre_sweep(
    seed: u64,
    pairs: u64,
    d_values: &[usize],
    d_prime_values: &[usize],
) -> Result<SweepResult> {
    if d_values.is_empty() || d_prime_values.is_empty() {
        return Err(Error::contract(
            "ginibre sweep needs nonempty d and d' lists",
        ));
    }
    let mut rows = Vec::new();
    for &d in d_values {
        for &dp in d_prime_values {
            let cfg = ExperimentConfig::new(Method::Ginibre, d, pairs, seed).with_d_prime(dp);
            rows.push(sweep_row(&cfg)?);
        }
    }
    Ok(SweepResult { rows })
}

pub fn run_bures_sweep(seed: u64, pairs: u64, d_values: &[usize]) -> Result<SweepResult> {
    if d_values.is_empty() {
        return Err(Error::contract("bures sweep needs a nonempty d list"));
    }
    let rows = d_values
        .iter()
        .map(|&d| sweep_row(&ExperimentConfig::new(Method::Bures, d, pairs, seed)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { rows })
}
