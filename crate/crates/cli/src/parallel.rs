//! Thread-pool line evaluation.

use multipers_core::metrics::LineEvaluator;
use multipers_core::{ExtRational, LineSpec};
use rayon::prelude::*;

/// Environment variable capping the number of worker threads; 0 means auto.
pub const THREADS_VAR: &str = "MULTIPERS_THREADS";

pub struct Parallel {
    pool: rayon::ThreadPool,
}

impl Parallel {
    pub fn new(threads: usize) -> anyhow::Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
        Ok(Parallel { pool })
    }

    pub fn from_env() -> anyhow::Result<Self> {
        let threads = match std::env::var(THREADS_VAR) {
            Ok(v) => v
                .trim()
                .parse::<usize>()
                .map_err(|_| anyhow::anyhow!("{} must be a nonnegative integer, got '{}'", THREADS_VAR, v))?,
            Err(_) => 0,
        };
        Parallel::new(threads)
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl LineEvaluator for Parallel {
    fn evaluate(&self, lines: &[LineSpec], f: &(dyn Fn(&LineSpec) -> ExtRational + Sync)) -> Vec<ExtRational> {
        self.pool.install(|| lines.par_iter().map(f).collect())
    }
}
