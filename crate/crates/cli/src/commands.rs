//! Subcommand implementations. Each returns the document to print.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use grplab_core::counting::{
    count_ap3, count_mixing_tuples, count_power_equation, count_xy_eq_z, CountReport, EngineChoice,
};
use grplab_core::group::{build_group_with, BuildOptions};
use grplab_core::lab::{run_recipe, sweep, ExperimentConfig, OutputFormat};
use grplab_core::ramsey::{
    cip_density_experiment, hindman_greedy, monochromatic_tuple_search, schur_adversarial_search,
    schur_counts, CipMode, CipOptions, Coloring, SearchOptions,
};
use grplab_core::sets::regularity::{check_product_rich, check_regular_position, parse_ratio};
use grplab_core::sets::{
    doubling_constant, growth_profile, tripling_constant, CheckMode, TriplingVariant,
};
use grplab_core::spectral::character_degrees_seeded;
use grplab_core::{make_set, Error, FiniteGroup, GroupSubset, Ratio, Result};
use serde_json::{json, Value};

use crate::args::{Command, Global};

/// What a command produced: a flat JSON document, or a ready-made rendering
/// for experiment reports whose CSV form is long-format.
pub enum Output {
    Doc(Value),
    Report { json: String, csv: String },
}

pub struct Settings {
    pub seed: u64,
    pub format: OutputFormat,
    pub config: Option<ExperimentConfig>,
    pub timing: bool,
    pub order_cap: usize,
}

impl Settings {
    pub fn resolve(global: &Global) -> Result<Self> {
        let config = global.config.as_deref().map(ExperimentConfig::load).transpose()?;
        let seed = global.seed.or(config.as_ref().map(|c| c.seed)).unwrap_or(0);
        let format = match &global.format {
            Some(f) => f.parse()?,
            None => config.as_ref().map(|c| c.output.format).unwrap_or_default(),
        };
        Ok(Settings {
            seed,
            format,
            config,
            timing: global.timing,
            order_cap: global.order_cap,
        })
    }

    fn group(&self, spec: &str) -> Result<Arc<FiniteGroup>> {
        let spec = spec.parse()?;
        let opts = BuildOptions {
            order_cap: self.order_cap,
            seed: self.seed,
        };
        Ok(Arc::new(build_group_with(&spec, &opts)?))
    }

    fn elapsed(&self, start: Instant) -> Value {
        if self.timing {
            json!(start.elapsed().as_millis() as u64)
        } else {
            Value::Null
        }
    }
}

fn sets(g: &Arc<FiniteGroup>, specs: &[String]) -> Result<Vec<GroupSubset>> {
    specs.iter().map(|s| make_set(g, &s.parse()?)).collect()
}

/// One set stands for all `k` positions; otherwise exactly `k` are needed.
fn broadcast(mut s: Vec<GroupSubset>, k: usize, what: &str) -> Result<Vec<GroupSubset>> {
    match s.len() {
        1 => Ok(vec![s.remove(0); k]),
        n if n == k => Ok(s),
        n => Err(Error::InvalidParameter(format!("{what} takes 1 or {k} sets, got {n}"))),
    }
}

fn count_doc(report: &CountReport) -> Value {
    serde_json::to_value(report).expect("count reports serialize")
}

fn frac(r: Ratio<usize>) -> (Value, String) {
    let (a, b) = (*r.numer(), *r.denom());
    (json!(a as f64 / b as f64), format!("{a}/{b}"))
}

pub fn run(command: &Command, st: &Settings) -> Result<Output> {
    let start = Instant::now();
    let doc = match command {
        Command::Group { group, check } => {
            let g = st.group(&group.group)?;
            if *check {
                g.check_axioms(st.seed)?;
            }
            let classes = g.conjugacy_classes();
            let mut sizes = classes.sizes();
            sizes.sort_unstable();
            let mut orders: BTreeMap<usize, usize> = BTreeMap::new();
            for x in g.elements() {
                *orders.entry(g.element_order(x)).or_default() += 1;
            }
            let derived = g.derived_subgroup().count_ones();
            json!({
                "group": g.name(),
                "order": g.order(),
                "abelian": g.is_abelian(),
                "generators": g.generators(),
                "class_count": classes.count(),
                "class_sizes": sizes,
                "derived_order": derived,
                "abelianization_order": g.order() / derived,
                "element_orders": orders,
                "axioms_checked": check,
            })
        }
        Command::Stats { group, set, powers } => {
            let g = st.group(&group.group)?;
            let a = make_set(&g, &set.parse()?)?;
            let (doubling, doubling_exact) = frac(doubling_constant(&a)?);
            let (tripling, tripling_exact) = frac(tripling_constant(&a, TriplingVariant::Plain)?);
            let (mixed, _) = frac(tripling_constant(&a, TriplingVariant::Mixed)?);
            let growth: Vec<Value> = growth_profile(&a, *powers)?.into_iter().map(|r| frac(r).0).collect();
            json!({
                "group": g.name(),
                "set": set,
                "size": a.card(),
                "density": a.density_f64(),
                "doubling": doubling,
                "doubling_exact": doubling_exact,
                "tripling": tripling,
                "tripling_exact": tripling_exact,
                "tripling_mixed": mixed,
                "growth": growth,
                "product_free": a.is_product_free(),
            })
        }
        Command::Count { group, sets: s, equation, engine } => {
            let g = st.group(&group.group)?;
            let engine: EngineChoice = engine.parse()?;
            let given = sets(&g, &s.sets)?;
            let mut extra = serde_json::Map::new();
            let report = match equation.as_str() {
                "xyz" => {
                    let t = broadcast(given, 3, "xyz")?;
                    count_xy_eq_z(&t[0], &t[1], &t[2], engine)?
                }
                "ap3" => count_ap3(&broadcast(given, 1, "ap3")?[0], engine)?,
                eq => {
                    if let Some(rest) = eq.strip_prefix("power:") {
                        let e = parse_exponents(rest)?;
                        let r = count_power_equation(&broadcast(given, 1, "power")?[0], e, engine)?;
                        extra.insert("torsion_free".into(), json!(r.torsion_free));
                        r.report
                    } else if let Some(rest) = eq.strip_prefix("mixing:") {
                        let n: usize = rest
                            .trim()
                            .parse()
                            .map_err(|_| Error::InvalidParameter(format!("bad mixing arity `{rest}`")))?;
                        let k = (1usize << n.min(8)) - 1;
                        count_mixing_tuples(n, &broadcast(given, k, "mixing")?)?
                    } else {
                        return Err(Error::InvalidParameter(format!("unknown equation `{eq}`")));
                    }
                }
            };
            let mut doc = json!({
                "group": g.name(),
                "sets": s.sets,
                "equation": equation,
            });
            let map = doc.as_object_mut().expect("object");
            if let Value::Object(c) = count_doc(&report) {
                map.extend(c);
            }
            map.extend(extra);
            map.insert("elapsed_ms".into(), st.elapsed(start));
            map.insert("seed".into(), json!(st.seed));
            doc
        }
        Command::Mixing { group, sets: s, n } => {
            let g = st.group(&group.group)?;
            let k = (1usize << (*n).min(8)) - 1;
            let report = count_mixing_tuples(*n, &broadcast(sets(&g, &s.sets)?, k, "mixing")?)?;
            let mut doc = json!({
                "group": g.name(),
                "sets": s.sets,
                "equation": format!("mixing:{n}"),
            });
            let map = doc.as_object_mut().expect("object");
            if let Value::Object(c) = count_doc(&report) {
                map.extend(c);
            }
            map.insert("elapsed_ms".into(), st.elapsed(start));
            map.insert("seed".into(), json!(st.seed));
            doc
        }
        Command::Quasirandom { group } => {
            let g = st.group(&group.group)?;
            let p = character_degrees_seeded(&g, st.seed)?;
            json!({
                "order": p.order,
                "class_count": p.class_count,
                "degrees": p.degrees,
                "quasirandomness_degree": p.quasirandomness_degree(),
                "abelianization_order": p.abelianization_order,
            })
        }
        Command::Schur { group, coloring, k, iterations, restarts } => {
            let g = st.group(&group.group)?;
            match (coloring, k) {
                (Some(c), _) => {
                    let c = Coloring::from_arg(g.clone(), c)?;
                    let r = schur_counts(&c)?;
                    json!({
                        "group": g.name(),
                        "k": c.k(),
                        "counts": r.counts,
                        "argmax": r.argmax,
                        "max_count": r.max_count(),
                        "identity_color": r.identity_color,
                    })
                }
                (None, Some(k)) => {
                    let r = schur_adversarial_search(&g, *k, *iterations, *restarts, st.seed)?;
                    json!({
                        "group": g.name(),
                        "k": k,
                        "max_count": r.max_count,
                        "total_count": r.total_count,
                        "restart": r.restart,
                        "coloring": r.coloring.to_file(),
                        "seed": st.seed,
                    })
                }
                (None, None) => {
                    return Err(Error::InvalidParameter("schur needs --coloring or --k".into()))
                }
            }
        }
        Command::Hindman { group, coloring, set, n, nontrivial, budget } => {
            let g = st.group(&group.group)?;
            if let Some(set) = set {
                let a = make_set(&g, &set.parse()?)?;
                let outcome = hindman_greedy(&a, *n, *nontrivial)?;
                json!({ "group": g.name(), "set": set, "n": n, "nontrivial": nontrivial, "result": outcome })
            } else {
                let arg = coloring.as_deref().expect("clap requires --coloring or --set");
                let c = Coloring::from_arg(g.clone(), arg)?;
                let opts = SearchOptions {
                    node_budget: *budget,
                    nontrivial: *nontrivial,
                };
                let outcome = monochromatic_tuple_search(&c, *n, opts)?;
                json!({ "group": g.name(), "coloring": arg, "n": n, "nontrivial": nontrivial, "result": outcome })
            }
        }
        Command::Cip { group, k, n, trials, mode, samples } => {
            let g = st.group(&group.group)?;
            let mode = match mode.as_str() {
                "auto" => CipMode::Auto,
                "exact" => CipMode::Exact,
                "sampled" => CipMode::Sampled,
                m => return Err(Error::InvalidParameter(format!("unknown mode `{m}`"))),
            };
            let r = cip_density_experiment(&g, *k, *n, *trials, st.seed, CipOptions { mode, samples: *samples })?;
            let mut doc = serde_json::to_value(&r).expect("serializes");
            doc["seed"] = json!(st.seed);
            doc
        }
        Command::Regular { group, sets: s, epsilon, sampled } => {
            let g = st.group(&group.group)?;
            let t = broadcast(sets(&g, &s.sets)?, 3, "regular")?;
            let v = check_regular_position(&t[0], &t[1], &t[2], parse_ratio(epsilon)?, mode(*sampled, st.seed))?;
            let mut doc = json!({ "group": g.name(), "sets": s.sets, "epsilon": epsilon });
            if let Value::Object(m) = serde_json::to_value(&v).expect("serializes") {
                doc.as_object_mut().expect("object").extend(m);
            }
            doc
        }
        Command::Rich { group, set, epsilon, sampled } => {
            let g = st.group(&group.group)?;
            let a = make_set(&g, &set.parse()?)?;
            let v = check_product_rich(&a, parse_ratio(epsilon)?, mode(*sampled, st.seed))?;
            let mut doc = json!({ "group": g.name(), "set": set, "epsilon": epsilon });
            if let Value::Object(m) = serde_json::to_value(&v).expect("serializes") {
                doc.as_object_mut().expect("object").extend(m);
            }
            doc
        }
        Command::Sweep | Command::Run => {
            let mut cfg = st
                .config
                .clone()
                .ok_or_else(|| Error::ConfigInvalid("this command needs --config".into()))?;
            cfg.seed = st.seed;
            cfg.output.format = st.format;
            cfg.output.record_timing |= st.timing;
            let sweeping = matches!(command, Command::Sweep) || cfg.grid.is_some();
            return if sweeping {
                let r = sweep(&cfg)?;
                Ok(Output::Report {
                    json: r.to_json()?,
                    csv: r.to_csv()?,
                })
            } else {
                let r = run_recipe(&cfg)?;
                Ok(Output::Report {
                    json: r.to_json()?,
                    csv: r.to_csv()?,
                })
            };
        }
    };
    Ok(Output::Doc(doc))
}

fn mode(sampled: Option<usize>, seed: u64) -> CheckMode {
    match sampled {
        Some(trials) => CheckMode::Sampled { trials, seed },
        None => CheckMode::Exact,
    }
}

fn parse_exponents(s: &str) -> Result<(u64, u64, u64)> {
    let bad = || Error::InvalidParameter(format!("expected power:n1,n2,n3, got `power:{s}`"));
    let v: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match v[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(bad()),
    }
}
