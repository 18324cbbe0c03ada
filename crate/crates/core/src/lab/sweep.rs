//! Parameter grids: one recipe run per cell of a cartesian product of axes.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::config::ExperimentConfig;
use super::report::{write_csv, ExperimentReport};
use super::run_recipe;
use crate::error::{Error, Result};
use crate::rng::derive_seed;

/// Largest number of cells a sweep may have.
pub const GRID_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCell {
    pub index: usize,
    pub assignment: BTreeMap<String, toml::Value>,
    pub report: ExperimentReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub config: ExperimentConfig,
    pub cells: Vec<SweepCell>,
}

impl SweepReport {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map(|s| s + "\n")
            .map_err(|e| Error::ValidationFailed(format!("report serialization: {e}")))
    }

    pub fn to_csv(&self) -> Result<String> {
        write_csv(self.cells.iter().flat_map(|c| c.report.csv_rows(c.index)))
    }
}

/// Every cell's assignment and config, axes in key order with the last
/// axis varying fastest. Cell `i` runs with seed `derive_seed(seed, i)`.
pub fn expand_grid(cfg: &ExperimentConfig) -> Result<Vec<(BTreeMap<String, toml::Value>, ExperimentConfig)>> {
    let axes: Vec<(String, Vec<toml::Value>)> = cfg
        .grid
        .clone()
        .unwrap_or_default()
        .into_iter()
        .collect();
    if let Some((name, _)) = axes.iter().find(|(_, v)| v.is_empty()) {
        return Err(Error::ConfigInvalid(format!("grid axis `{name}` is empty")));
    }
    let cells = axes
        .iter()
        .try_fold(1usize, |acc, (_, v)| acc.checked_mul(v.len()))
        .unwrap_or(usize::MAX);
    if cells > GRID_LIMIT {
        return Err(Error::GridTooLarge {
            cells,
            limit: GRID_LIMIT,
        });
    }
    let mut base = cfg.clone();
    base.grid = None;
    let base_value = toml::Value::try_from(&base).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
    let mut out = Vec::with_capacity(cells);
    for index in 0..cells {
        let mut rest = index;
        let mut assignment = BTreeMap::new();
        for (name, values) in axes.iter().rev() {
            assignment.insert(name.clone(), values[rest % values.len()].clone());
            rest /= values.len();
        }
        let mut value = base_value.clone();
        let table = value.as_table_mut().expect("config is a table");
        for (name, v) in &assignment {
            match name.as_str() {
                "group" => {
                    table.insert("groups".into(), toml::Value::Array(vec![v.clone()]));
                }
                "set" => {
                    table.insert("sets".into(), toml::Value::Array(vec![v.clone()]));
                }
                "seed" | "recipe" | "groups" | "sets" | "budget" | "output" | "grid" => {
                    return Err(Error::ConfigInvalid(format!("`{name}` cannot be a grid axis")));
                }
                _ => {
                    table
                        .entry("params")
                        .or_insert_with(|| toml::Value::Table(Default::default()))
                        .as_table_mut()
                        .expect("params is a table")
                        .insert(name.clone(), v.clone());
                }
            }
        }
        let mut cell_cfg: ExperimentConfig = value
            .try_into()
            .map_err(|e: toml::de::Error| Error::ConfigInvalid(format!("grid cell {index}: {e}")))?;
        cell_cfg.seed = derive_seed(cfg.seed, index as u64);
        out.push((assignment, cell_cfg));
    }
    Ok(out)
}

/// Runs every cell (in parallel) and collects the reports in cell order.
pub fn sweep(cfg: &ExperimentConfig) -> Result<SweepReport> {
    if cfg.grid.is_none() {
        return Err(Error::ConfigInvalid("a sweep needs a [grid] table".into()));
    }
    let cells = expand_grid(cfg)?;
    let reports = cells
        .par_iter()
        .enumerate()
        .map(|(i, (_, c))| run_recipe(c).map_err(|e| e.in_instance(format!("grid cell {i}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        config: cfg.clone(),
        cells: cells
            .into_iter()
            .zip(reports)
            .enumerate()
            .map(|(index, ((assignment, _), report))| SweepCell {
                index,
                assignment,
                report,
            })
            .collect(),
    })
}
