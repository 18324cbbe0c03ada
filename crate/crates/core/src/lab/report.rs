//! Experiment reports and their JSON/CSV renderings.

use std::collections::BTreeMap;

use serde::Serialize;

use super::config::ExperimentConfig;
use crate::error::{Error, Result};

/// Instance name reserved for per-group facts (order, degrees, ...), which
/// are left out of the aggregates.
pub const GROUP_INSTANCE: &str = "group";

/// One measured instance: a group plus the sets or coloring it was run on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceReport {
    pub group: String,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Set specs that rebuild the instance on their own.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sets: Vec<String>,
    pub metrics: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub detail: serde_json::Value,
}

impl InstanceReport {
    pub fn new(group: &str, instance: impl Into<String>) -> Self {
        InstanceReport {
            group: group.to_string(),
            instance: instance.into(),
            seed: None,
            sets: Vec::new(),
            metrics: BTreeMap::new(),
            detail: serde_json::Value::Null,
        }
    }

    pub fn metric(mut self, name: &str, value: impl Into<f64>) -> Self {
        self.metrics.insert(name.to_string(), value.into());
        self
    }

    pub fn set_metric(&mut self, name: &str, value: impl Into<f64>) {
        self.metrics.insert(name.to_string(), value.into());
    }
}

/// Min, median and max of one metric over a group's instances.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    pub group: String,
    pub metric: String,
    pub count: usize,
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub tool: String,
    pub version: String,
    pub config: ExperimentConfig,
    pub instances: Vec<InstanceReport>,
    pub aggregates: Vec<Aggregate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

pub(crate) fn median(sorted: &[f64]) -> f64 {
    let m = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[m]
    } else {
        (sorted[m - 1] + sorted[m]) / 2.0
    }
}

impl ExperimentReport {
    pub(crate) fn new(config: ExperimentConfig, instances: Vec<InstanceReport>) -> Self {
        let aggregates = aggregate(&instances);
        ExperimentReport {
            tool: "grplab".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            instances,
            aggregates,
            elapsed_ms: None,
        }
    }

    /// Instances of one group, skipping the per-group facts.
    pub fn instances_of<'a>(&'a self, group: &'a str) -> impl Iterator<Item = &'a InstanceReport> + 'a {
        self.instances
            .iter()
            .filter(move |i| i.group == group && i.instance != GROUP_INSTANCE)
    }

    pub fn group_facts(&self, group: &str) -> Option<&InstanceReport> {
        self.instances
            .iter()
            .find(|i| i.group == group && i.instance == GROUP_INSTANCE)
    }

    pub fn aggregate(&self, group: &str, metric: &str) -> Option<&Aggregate> {
        self.aggregates
            .iter()
            .find(|a| a.group == group && a.metric == metric)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map(|s| s + "\n")
            .map_err(|e| Error::ValidationFailed(format!("report serialization: {e}")))
    }

    /// Long-format rows `cell,recipe,group,instance,metric,value`.
    pub fn csv_rows(&self, cell: usize) -> Vec<[String; 6]> {
        let recipe = self.config.recipe.name().to_string();
        let mut rows = Vec::new();
        for inst in &self.instances {
            for (k, v) in &inst.metrics {
                rows.push([
                    cell.to_string(),
                    recipe.clone(),
                    inst.group.clone(),
                    inst.instance.clone(),
                    k.clone(),
                    v.to_string(),
                ]);
            }
        }
        for a in &self.aggregates {
            for (stat, v) in [("min", a.min), ("median", a.median), ("max", a.max)] {
                rows.push([
                    cell.to_string(),
                    recipe.clone(),
                    a.group.clone(),
                    format!("aggregate:{stat}"),
                    a.metric.clone(),
                    v.to_string(),
                ]);
            }
        }
        rows
    }

    pub fn to_csv(&self) -> Result<String> {
        write_csv(self.csv_rows(0))
    }
}

pub const CSV_HEADER: [&str; 6] = ["cell", "recipe", "group", "instance", "metric", "value"];

pub(crate) fn write_csv(rows: impl IntoIterator<Item = [String; 6]>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::ValidationFailed(format!("csv output: {e}"));
    w.write_record(CSV_HEADER).map_err(err)?;
    for r in rows {
        w.write_record(&r).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::ValidationFailed(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn aggregate(instances: &[InstanceReport]) -> Vec<Aggregate> {
    let mut by_key: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
    let mut group_order: Vec<String> = Vec::new();
    for inst in instances.iter().filter(|i| i.instance != GROUP_INSTANCE) {
        if !group_order.contains(&inst.group) {
            group_order.push(inst.group.clone());
        }
        for (k, v) in &inst.metrics {
            by_key
                .entry((inst.group.clone(), k.clone()))
                .or_default()
                .push(*v);
        }
    }
    let mut out = Vec::new();
    for g in &group_order {
        for ((group, metric), values) in by_key.iter().filter(|((gr, _), _)| gr == g) {
            let mut v = values.clone();
            v.sort_by(f64::total_cmp);
            out.push(Aggregate {
                group: group.clone(),
                metric: metric.clone(),
                count: v.len(),
                min: v[0],
                median: median(&v),
                max: v[v.len() - 1],
            });
        }
    }
    out
}
