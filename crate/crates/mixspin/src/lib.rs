//! Command-line companion to `mixspin-core`: sweep-spec files, CSV output
//! and a parallel grid driver.

pub mod csv;
pub mod specfile;

use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use mixspin_core::sweep::{assemble, eval_point};
use mixspin_core::{SweepResult, SweepSpec};

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Model(#[from] mixspin_core::Error),
    #[error("{what} at {x_name} = {x}, {y_name} = {y}: {source}")]
    Point {
        what: &'static str,
        x_name: &'static str,
        x: f64,
        y_name: &'static str,
        y: f64,
        source: mixspin_core::Error,
    },
    #[error("non-finite {column} at {x_name} = {x}, {y_name} = {y}")]
    NonFinite {
        column: &'static str,
        x_name: &'static str,
        x: f64,
        y_name: &'static str,
        y: f64,
    },
    #[error("building worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// Evaluates every grid point on a pool of `threads` workers (all
/// available cores when `None`). Output order and values do not depend on
/// the worker count.
pub fn run_sweep_parallel(
    spec: &SweepSpec,
    threads: Option<usize>,
) -> Result<SweepResult, SweepError> {
    spec.validate()?;
    let points = spec.points();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let (x_name, y_name) = (spec.x.param.name(), spec.y.param.name());
    let reports = pool.install(|| {
        points
            .par_iter()
            .map(|pt| {
                eval_point(&pt.params, pt.mode).map_err(|source| SweepError::Point {
                    what: "evaluation failed",
                    x_name,
                    x: pt.x,
                    y_name,
                    y: pt.y,
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    let mut result = assemble(spec, &points, &reports).map_err(|bad| SweepError::NonFinite {
        column: bad.column,
        x_name,
        x: bad.x,
        y_name,
        y: bad.y,
    })?;
    result.metadata.timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .ok()
        .map(|d| d.as_secs());
    Ok(result)
}
