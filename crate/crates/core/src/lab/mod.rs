//! Experiment harness: TOML-configured recipes over lists of groups, seeded
//! parameter sweeps, and JSON/CSV reports that are byte-stable for a fixed
//! config.

mod config;
mod recipes;
mod report;
mod sweep;

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

pub use config::{Budget, CheckModeName, ExperimentConfig, OutputFormat, OutputOptions, Recipe, RecipeParams};
pub use report::{Aggregate, ExperimentReport, InstanceReport, CSV_HEADER, GROUP_INSTANCE};
pub use sweep::{expand_grid, sweep, SweepCell, SweepReport, GRID_LIMIT};

use crate::error::{Error, Result};

/// Runs one recipe over every configured group, groups in parallel, and
/// assembles the report in config order.
pub fn run_recipe(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.grid.is_some() {
        return Err(Error::ConfigInvalid("configs with a [grid] table run through sweep".into()));
    }
    if cfg.groups.is_empty() {
        return Err(Error::ConfigInvalid("no groups configured".into()));
    }
    let start = Instant::now();
    let per_group = cfg
        .groups
        .par_iter()
        .enumerate()
        .map(|(index, spec)| {
            let context = format!("{} on {spec}", cfg.recipe);
            let g = recipes::build(cfg, spec).map_err(|e| e.in_instance(context.clone()))?;
            let ctx = recipes::Ctx {
                cfg,
                index,
                name: spec.to_string(),
                g: Arc::new(g),
            };
            recipes::run_group(&ctx).map_err(|e| e.in_instance(context))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ExperimentReport::new(cfg.clone(), per_group.into_iter().flatten().collect());
    if cfg.output.record_timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}
