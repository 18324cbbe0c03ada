//! The experiment recipes, one function per recipe and group.

use std::sync::Arc;

use num_rational::Ratio;
use serde_json::json;

use super::config::{CheckModeName, ExperimentConfig, Recipe};
use super::report::{InstanceReport, GROUP_INSTANCE};
use crate::counting::{count_ap3, count_power_equation, count_xy_eq_z, EngineChoice};
use crate::error::{Error, Result};
use crate::group::{build_group_with, BuildOptions, FiniteGroup, GroupSpec};
use crate::ramsey::{
    hindman_greedy, monochromatic_tuple_search, schur_adversarial_search, schur_counts, Coloring,
    HindmanOutcome, SearchOptions, SearchOutcome,
};
use crate::rng::derive_seed;
use crate::sets::regularity::{check_product_rich_with, check_regular_position_with, parse_ratio, CheckOptions};
use crate::sets::{
    doubling_constant, growth_profile, make_set, tripling_constant, CheckMode, GroupSubset, SetKind,
    TriplingVariant, VerdictStatus,
};
use crate::spectral::character_degrees_seeded;

pub(crate) struct Ctx<'a> {
    pub cfg: &'a ExperimentConfig,
    pub index: usize,
    pub name: String,
    pub g: Arc<FiniteGroup>,
}

impl Ctx<'_> {
    /// Stream seed for instance `i` of this group.
    fn instance_seed(&self, i: usize) -> u64 {
        derive_seed(derive_seed(self.cfg.seed, self.index as u64), i as u64)
    }

    fn engine(&self) -> EngineChoice {
        self.cfg.params.engine.unwrap_or_default()
    }

    fn instance(&self, label: impl Into<String>) -> InstanceReport {
        InstanceReport::new(&self.name, label)
    }
}

struct SetInstance {
    label: String,
    seed: Option<u64>,
    kinds: Vec<SetKind>,
}

impl SetInstance {
    fn build(&self, g: &Arc<FiniteGroup>) -> Result<Vec<GroupSubset>> {
        self.kinds.iter().map(|k| make_set(g, k)).collect()
    }

    fn report(&self, ctx: &Ctx) -> InstanceReport {
        let mut r = ctx.instance(self.label.clone());
        r.seed = self.seed;
        r.sets = self.kinds.iter().map(ToString::to_string).collect();
        r
    }
}

/// Explicit `sets` in chunks of `arity`, or else `seeds` instances of random
/// sets of the configured density.
fn set_instances(ctx: &Ctx, arity: usize, density: f64, seeds: usize) -> Result<Vec<SetInstance>> {
    let cfg = ctx.cfg;
    if !cfg.sets.is_empty() {
        if cfg.sets.len() % arity != 0 {
            return Err(Error::ConfigInvalid(format!(
                "{} takes sets in groups of {arity}, got {}",
                cfg.recipe,
                cfg.sets.len()
            )));
        }
        return Ok(cfg
            .sets
            .chunks(arity)
            .enumerate()
            .map(|(i, c)| SetInstance {
                label: format!("sets[{i}]"),
                seed: None,
                kinds: c.to_vec(),
            })
            .collect());
    }
    let density = cfg.params.density.unwrap_or(density);
    let seeds = cfg.params.seeds.unwrap_or(seeds);
    Ok((0..seeds)
        .map(|s| {
            let seed = ctx.instance_seed(s);
            SetInstance {
                label: format!("seed={s}"),
                seed: Some(seed),
                kinds: (0..arity)
                    .map(|j| SetKind::Random {
                        density,
                        seed: derive_seed(seed, j as u64),
                    })
                    .collect(),
            }
        })
        .collect())
}

fn ratio_f64(r: Ratio<usize>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn to_json<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn epsilon(cfg: &ExperimentConfig) -> Result<Ratio<usize>> {
    parse_ratio(cfg.params.epsilon.as_deref().unwrap_or("1/2"))
}

pub(crate) fn build(cfg: &ExperimentConfig, spec: &GroupSpec) -> Result<FiniteGroup> {
    let opts = BuildOptions {
        order_cap: cfg.budget.order_cap,
        seed: cfg.seed,
    };
    build_group_with(spec, &opts)
}

pub(crate) fn run_group(ctx: &Ctx) -> Result<Vec<InstanceReport>> {
    match ctx.cfg.recipe {
        Recipe::MixingTrend => mixing_trend(ctx),
        Recipe::RothSmallDoubling => roth(ctx),
        Recipe::PowerEquation => power(ctx),
        Recipe::Schur => schur(ctx),
        Recipe::Hindman => hindman(ctx),
        Recipe::RegularPosition => regular_position(ctx),
        Recipe::ProductRich => product_rich(ctx),
        Recipe::GrowthProfile => growth(ctx),
    }
}

/// Deviation of `count_xy_eq_z` from its random-set expectation, next to the
/// group's quasirandomness degree.
fn mixing_trend(ctx: &Ctx) -> Result<Vec<InstanceReport>> {
    let g = &ctx.g;
    let profile = character_degrees_seeded(g, ctx.cfg.seed)?;
    let mut out = vec![ctx
        .instance(GROUP_INSTANCE)
        .metric("order", g.order() as f64)
        .metric("class_count", profile.class_count as f64)
        .metric("quasirandomness_degree", profile.quasirandomness_degree() as f64)
        .metric("abelianization_order", profile.abelianization_order as f64)];
    for inst in set_instances(ctx, 3, 0.3, 5)? {
        let s = inst.build(g)?;
        let r = count_xy_eq_z(&s[0], &s[1], &s[2], ctx.engine())?;
        let mut rep = inst.report(ctx);
        rep.set_metric("size_a", s[0].card() as f64);
        rep.set_metric("size_b", s[1].card() as f64);
        rep.set_metric("size_c", s[2].card() as f64);
        rep.set_metric("count", r.count as f64);
        rep.set_metric("ratio", r.ratio());
        rep.set_metric("deviation", (r.ratio() - 1.0).abs());
        rep.detail = to_json(&r);
        out.push(rep);
    }
    Ok(out)
}

/// Three-term progressions in intervals (or the configured sets).
fn roth(ctx: &Ctx) -> Result<Vec<InstanceReport>> {
    let insts = if ctx.cfg.sets.is_empty() {
        let lengths = ctx.cfg.params.lengths.clone().unwrap_or_else(|| vec![50, 100, 200]);
        lengths
            .into_iter()
            .map(|m| SetInstance {
                label: format!("m={m}"),
                seed: None,
                kinds: vec![SetKind::Interval { lo: 0, len: m }],
            })
            .collect()
    } else {
        set_instances(ctx, 1, 0.0, 0)?
    };
    let mut out = Vec::new();
    for inst in insts {
        let a = inst.build(&ctx.g)?.remove(0);
        let r = count_ap3(&a, ctx.engine())?;
        let mut rep = inst.report(ctx);
        rep.set_metric("size", a.card() as f64);
        rep.set_metric("count", r.count as f64);
        rep.set_metric("degenerate", r.degenerate_count as f64);
        rep.set_metric("ratio", r.ratio());
        rep.set_metric("doubling", ratio_f64(doubling_constant(&a)?));
        rep.detail = to_json(&r);
        out.push(rep);
    }
    Ok(out)
}

fn power(ctx: &Ctx) -> Result<Vec<InstanceReport>> {
    let [n1, n2, n3] = ctx.cfg.params.exponents.unwrap_or([1, 1, 2]);
    let g = &ctx.g;
    let switched = g.is_abelian() && g.order() % 2 == 1 && (n1, n2, n3) == (1, 1, 2);
    let mut out = Vec::new();
    for inst in set_instances(ctx, 1, 0.3, 5)? {
        let a = inst.build(g)?.remove(0);
        let r = count_power_equation(&a, (n1, n2, n3), ctx.engine())?;
        let mut rep = inst.report(ctx);
        rep.set_metric("size", a.card() as f64);
        rep.set_metric("count", r.report.count as f64);
        rep.set_metric("degenerate", r.report.degenerate_count as f64);
        rep.set_metric("ratio", r.report.ratio());
        rep.set_metric("torsion_free", f64::from(u8::from(r.torsion_free)));
        if switched {
            let ap = count_ap3(&a, ctx.engine())?;
            rep.set_metric("ap3_nondegenerate", ap.nondegenerate() as f64);
            rep.set_metric("switched_agree", f64::from(u8::from(ap.nondegenerate() == r.report.nondegenerate())));
        }
        rep.detail = to_json(&r);
        out.push(rep);
    }
    Ok(out)
}

fn schur(ctx: &Ctx) -> Result<Vec<InstanceReport>> {
    let p = &ctx.cfg.params;
    let k = p.k.unwrap_or(2);
    let seed = ctx.instance_seed(0);
    let best = schur_adversarial_search(&ctx.g, k, p.iterations.unwrap_or(1000), p.restarts.unwrap_or(8), seed)?;
    let counts = schur_counts(&best.coloring)?;
    let n = ctx.g.order() as f64;
    let mut rep = ctx
        .instance("adversarial")
        .metric("max_count", best.max_count as f64)
        .metric("total_count", best.total_count as f64)
        .metric("ratio", best.max_count as f64 / (n * n))
        .metric("restart", best.restart as f64);
    rep.seed = Some(seed);
    rep.detail = json!({ "coloring": best.coloring.to_file(), "counts": counts });
    Ok(vec![rep])
}

fn hindman(ctx: &Ctx) -> Result<Vec<InstanceReport>> {
    let p = &ctx.cfg.params;
    let (k, n) = (p.k.unwrap_or(2), p.n.unwrap_or(3));
    let opts = SearchOptions {
        node_budget: ctx.cfg.budget.node_budget,
        nontrivial: p.nontrivial.unwrap_or(false),
    };
    let mut out = Vec::new();
    for s in 0..p.seeds.unwrap_or(20) {
        let seed = ctx.instance_seed(s);
        let coloring = Coloring::random(ctx.g.clone(), k, seed)?;
        let outcome = monochromatic_tuple_search(&coloring, n, opts)?;
        let id_class = coloring.class(coloring.color(ctx.g.identity()));
        let greedy = hindman_greedy(&id_class, n, false)?;
        let mut rep = ctx.instance(format!("seed={s}"));
        rep.seed = Some(seed);
        let (found, color) = match &outcome {
            SearchOutcome::Witness(w) => (1.0, w.color.map_or(-1.0, |c| c as f64)),
            SearchOutcome::Exhausted { .. } => (0.0, -1.0),
        };
        rep.set_metric("found", found);
        rep.set_metric("color", color);
        rep.set_metric("identity_greedy", f64::from(u8::from(matches!(greedy, HindmanOutcome::Found(_)))));
        rep.detail = json!({ "outcome": outcome });
        out.push(rep);
    }
    Ok(out)
}

fn check_mode(ctx: &Ctx, seed: u64) -> CheckMode {
    match ctx.cfg.params.mode.unwrap_or_default() {
        CheckModeName::Exact => CheckMode::Exact,
        CheckModeName::Sampled => CheckMode::Sampled {
            trials: ctx.cfg.params.samples.unwrap_or(1000),
            seed,
        },
    }
}

fn verdict_metrics(rep: &mut InstanceReport, status: VerdictStatus) {
    let (violated, exact, samples) = match status {
        VerdictStatus::VerifiedExact => (0.0, 1.0, 0.0),
        VerdictStatus::NoViolationFound { samples } => (0.0, 0.0, samples as f64),
        VerdictStatus::Violated => (1.0, 0.0, 0.0),
    };
    rep.set_metric("violated", violated);
    rep.set_metric("verified_exact", exact);
    rep.set_metric("samples", samples);
}

fn check_options(ctx: &Ctx) -> CheckOptions {
    CheckOptions {
        exact_cap: ctx.cfg.budget.exact_cap,
        minimal_size_only: false,
    }
}

fn regular_position(ctx: &Ctx) -> Result<Vec<InstanceReport>> {
    let eps = epsilon(ctx.cfg)?;
    let mut out = Vec::new();
    for (i, inst) in set_instances(ctx, 3, 0.5, 3)?.into_iter().enumerate() {
        let s = inst.build(&ctx.g)?;
        let mode = check_mode(ctx, inst.seed.unwrap_or_else(|| ctx.instance_seed(i)));
        let v = check_regular_position_with(&s[0], &s[1], &s[2], eps, mode, check_options(ctx))?;
        let mut rep = inst.report(ctx);
        verdict_metrics(&mut rep, v.status);
        rep.detail = to_json(&v);
        out.push(rep);
    }
    Ok(out)
}

fn product_rich(ctx: &Ctx) -> Result<Vec<InstanceReport>> {
    let eps = epsilon(ctx.cfg)?;
    let mut out = Vec::new();
    for (i, inst) in set_instances(ctx, 1, 0.5, 3)?.into_iter().enumerate() {
        let a = inst.build(&ctx.g)?.remove(0);
        let mode = check_mode(ctx, inst.seed.unwrap_or_else(|| ctx.instance_seed(i)));
        let v = check_product_rich_with(&a, eps, mode, check_options(ctx))?;
        let mut rep = inst.report(ctx);
        rep.set_metric("size", a.card() as f64);
        verdict_metrics(&mut rep, v.status);
        rep.detail = to_json(&v);
        out.push(rep);
    }
    Ok(out)
}

fn growth(ctx: &Ctx) -> Result<Vec<InstanceReport>> {
    let powers = ctx.cfg.params.powers.unwrap_or(4);
    let mut out = Vec::new();
    for inst in set_instances(ctx, 1, 0.1, 3)? {
        let a = inst.build(&ctx.g)?.remove(0);
        let mut rep = inst.report(ctx);
        rep.set_metric("size", a.card() as f64);
        if a.is_empty() {
            out.push(rep);
            continue;
        }
        for (j, r) in growth_profile(&a, powers)?.into_iter().enumerate() {
            rep.set_metric(&format!("growth_{}", j + 1), ratio_f64(r));
        }
        rep.set_metric("doubling", ratio_f64(doubling_constant(&a)?));
        rep.set_metric("tripling", ratio_f64(tripling_constant(&a, TriplingVariant::Plain)?));
        out.push(rep);
    }
    Ok(out)
}
