//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line with the measured values. Tolerances and runtime limits are
//! fixed constants below.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use grplab_core::counting::{
    convolution_identity_check, count_ap3, count_power_equation, count_xy_eq_z, EngineChoice,
};
use grplab_core::lab::{run_recipe, sweep, CheckModeName, ExperimentConfig, Recipe};
use grplab_core::ramsey::{
    hindman_greedy, monochromatic_tuple_search, schur_adversarial_search, Coloring, HindmanOutcome,
    SearchOptions, SearchOutcome, TupleWitness,
};
use grplab_core::rng::SplitMix64;
use grplab_core::sets::doubling_constant;
use grplab_core::sets::regularity::{check_product_rich, check_regular_position};
use grplab_core::sets::CheckMode;
use grplab_core::spectral::{abelianization_order, character_degrees, regular_representation_degrees};
use grplab_core::{build_group, make_set, Elem, FiniteGroup, GroupSubset, Ratio};

const ENGINE_INSTANCES: usize = 120;
const ENGINE_LIMIT: Duration = Duration::from_secs(60);
const IDENTITY_PAIRS: usize = 1000;
const IDENTITY_LIMIT: Duration = Duration::from_secs(30);
const SPECTRAL_LIMIT: Duration = Duration::from_secs(300);
const MIXING_DENSITY: f64 = 0.3;
const MIXING_SEEDS: usize = 5;
const MIXING_SEED: u64 = 20_240_611;
const ORACLE_TOLERANCE: f64 = 1e-12;
const MIXING_THRESHOLD: f64 = 0.25;
const MIXING_LIMIT: Duration = Duration::from_secs(600);
const ROTH_N: usize = 10_000;
const ROTH_MIN_RATIO: f64 = 0.49;
const ROTH_MAX_DOUBLING: f64 = 2.0;
const ROTH_LIMIT: Duration = Duration::from_secs(10);
const POWER_LIMIT: Duration = Duration::from_secs(1);
const SCHUR_ITERATIONS: usize = 1000;
const SCHUR_RESTARTS: usize = 16;
const SCHUR_LIMIT: Duration = Duration::from_secs(120);
const HINDMAN_SEEDS: u64 = 20;
const HINDMAN_LIMIT: Duration = Duration::from_secs(120);
const REGULARITY_EXHAUSTIVE_ORDER: usize = 5;
const REGULARITY_RANDOM_TRIPLES: usize = 2000;
const REGULARITY_LIMIT: Duration = Duration::from_secs(300);
const DETERMINISM_LIMIT: Duration = Duration::from_secs(60);

fn line(n: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {n} ({name}): {verdict}; {detail}");
}

fn grp(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(build_group(&spec.parse().unwrap()).unwrap())
}

fn random_set(g: &Arc<FiniteGroup>, density: f64, rng: &mut SplitMix64) -> GroupSubset {
    GroupSubset::new(g.clone(), (0..g.order()).filter(|_| rng.bernoulli(density)))
}

const S3: &str = "perm:(1 2 3);(1 2)";
const S4: &str = "perm:(1 2 3 4);(1 2)";
const D4: &str = "perm:(1 2 3 4);(1 3)";
const Q8: &str = "perm:(1 2 3 4)(5 6 7 8);(1 5 3 7)(2 8 4 6)";

#[test]
fn criterion_01_engine_equivalence() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(1);
    let mut mismatches = Vec::new();
    let mut fft_cases = 0;
    for i in 0..ENGINE_INSTANCES {
        let spec = match i % 6 {
            0 | 1 => format!("Z/{}", 1 + rng.index(2000)),
            2 => format!("Z/{} x Z/{}", 2 + rng.index(40), 2 + rng.index(40)),
            3 => format!("Z/{} x Z/{} x Z/{}", 2 + rng.index(12), 2 + rng.index(12), 2 + rng.index(12)),
            4 => [S3, S4][rng.index(2)].to_string(),
            _ => "PSL2(5)".to_string(),
        };
        let g = grp(&spec);
        let d = [0.05 + 0.9 * rng.next_f64(), 0.05 + 0.9 * rng.next_f64(), 0.05 + 0.9 * rng.next_f64()];
        let (a, b, c) = (
            random_set(&g, d[0], &mut rng),
            random_set(&g, d[1], &mut rng),
            random_set(&g, d[2], &mut rng),
        );
        let brute = count_xy_eq_z(&a, &b, &c, EngineChoice::Brute).unwrap().count;
        let cayley = count_xy_eq_z(&a, &b, &c, EngineChoice::Cayley).unwrap().count;
        let mut ok = brute == cayley;
        if g.cyclic_factors().is_some() {
            fft_cases += 1;
            ok &= count_xy_eq_z(&a, &b, &c, EngineChoice::Fft).unwrap().count == brute;
        }
        if !ok {
            mismatches.push(spec);
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches.is_empty() && elapsed < ENGINE_LIMIT;
    line(
        1,
        "engine oracle equivalence",
        pass,
        &format!(
            "{ENGINE_INSTANCES} instances ({fft_cases} with FFT), {} mismatches, {:.2}s",
            mismatches.len(),
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass, "mismatches: {mismatches:?}, elapsed {elapsed:?}");
}

#[test]
fn criterion_02_counting_identity() {
    let start = Instant::now();
    let groups: Vec<_> = ["Z/12", "Z/3 x Z/5", S3, S4, D4, Q8, "PSL2(5)"].iter().map(|s| grp(s)).collect();
    let mut rng = SplitMix64::new(2);
    let mut failures = 0;
    for i in 0..IDENTITY_PAIRS {
        let g = &groups[i % groups.len()];
        let x = random_set(g, rng.next_f64(), &mut rng);
        let y = random_set(g, rng.next_f64(), &mut rng);
        let cert = convolution_identity_check(&x, &y).unwrap();
        // Right side taken literally: Σ over t ∈ XY⁻¹ of |X ∩ tY|.
        let quotient: BTreeSet<Elem> = x.iter().flat_map(|a| y.iter().map(move |b| g.mul(a, g.inv(b)))).collect();
        let direct: u64 = quotient
            .iter()
            .map(|&t| y.iter().filter(|&b| x.contains(g.mul(t, b))).count() as u64)
            .sum();
        let lhs = (x.card() * y.card()) as u64;
        if !(cert.holds() && cert.lhs == lhs && cert.rhs == direct) {
            failures += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = failures == 0 && elapsed < IDENTITY_LIMIT;
    line(
        2,
        "counting identity",
        pass,
        &format!(
            "{IDENTITY_PAIRS} pairs over {} groups, {failures} failures, {:.2}s",
            groups.len(),
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass);
}

/// `[G, G]` as the subgroup generated by every commutator.
fn commutator_subgroup_order(g: &FiniteGroup) -> usize {
    let comms: BTreeSet<Elem> = g
        .elements()
        .flat_map(|x| g.elements().map(move |y| (x, y)))
        .map(|(x, y)| g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)))
        .collect();
    let mut seen = vec![false; g.order()];
    let mut stack = vec![g.identity()];
    seen[g.identity()] = true;
    while let Some(h) = stack.pop() {
        for &c in &comms {
            let n = g.mul(h, c);
            if !seen[n] {
                seen[n] = true;
                stack.push(n);
            }
        }
    }
    seen.iter().filter(|&&s| s).count()
}

#[test]
fn criterion_03_spectral_validation() {
    let start = Instant::now();
    let fleet = [
        "Z/1", "Z/12", "Z/2 x Z/2 x Z/3", S3, D4, Q8, S4, "Z/3 x perm:(1 2 3);(1 2)", "PSL2(3)", "PSL2(4)",
        "PSL2(5)", "perm:(1 2 3 4 5);(1 2)", "PSL2(7)", "PSL2(8)", "PSL2(9)", "PSL2(11)", "PSL2(13)",
    ];
    let mut problems = Vec::new();
    for spec in fleet {
        let g = grp(spec);
        let p = character_degrees(&g).unwrap();
        let sum: usize = p.degrees.iter().map(|d| d * d).sum();
        let ones = p.degrees.iter().filter(|&&d| d == 1).count();
        let abel = g.order() / commutator_subgroup_order(&g);
        if sum != g.order() || ones != abel || abelianization_order(&g) != abel {
            problems.push(format!("{spec}: sum {sum}, ones {ones}, abelianization {abel}"));
        }
        if g.order() <= 24 && regular_representation_degrees(&g, 3).unwrap() != p.degrees {
            problems.push(format!("{spec}: regular representation disagrees"));
        }
    }
    let a5 = character_degrees(&grp("PSL2(5)")).unwrap().degrees;
    let a5_ok = a5 == vec![1, 3, 3, 4, 5];
    let qdeg: Vec<usize> = [5, 7, 11, 13]
        .iter()
        .map(|q| character_degrees(&grp(&format!("PSL2({q})"))).unwrap().quasirandomness_degree())
        .collect();
    let increasing = qdeg.windows(2).all(|w| w[0] < w[1]);
    let elapsed = start.elapsed();
    let pass = problems.is_empty() && a5_ok && increasing && elapsed < SPECTRAL_LIMIT;
    line(
        3,
        "spectral validation",
        pass,
        &format!(
            "{} groups, {} invariant problems, PSL2(5) degrees {a5:?}, PSL2(q) degrees for q=5,7,11,13: {qdeg:?} (strictly increasing: {increasing}), {:.2}s",
            fleet.len(),
            problems.len(),
            elapsed.as_secs_f64()
        ),
    );
    assert!(problems.is_empty(), "{problems:?}");
    assert!(a5_ok);
    assert!(increasing, "quasirandomness degrees {qdeg:?} are not strictly increasing");
    assert!(elapsed < SPECTRAL_LIMIT);
}

#[test]
fn criterion_04_mixing_trend() {
    let start = Instant::now();
    let qs = [5u64, 7, 11, 13];
    let mut cfg = ExperimentConfig::new(
        Recipe::MixingTrend,
        qs.iter().map(|q| format!("PSL2({q})").parse().unwrap()).collect(),
    );
    cfg.seed = MIXING_SEED;
    cfg.params.density = Some(MIXING_DENSITY);
    cfg.params.seeds = Some(MIXING_SEEDS);
    let report = run_recipe(&cfg).unwrap();
    let mut medians = Vec::new();
    let mut oracle_ok = true;
    for q in qs {
        let name = format!("PSL2({q})");
        let g = grp(&name);
        let mut devs = Vec::new();
        for inst in report.instances_of(&name) {
            // Rebuild the sets and count ab = c with a plain triple loop.
            let s: Vec<GroupSubset> = inst.sets.iter().map(|k| make_set(&g, &k.parse().unwrap()).unwrap()).collect();
            let mut count = 0u64;
            for a in s[0].iter() {
                for b in s[1].iter() {
                    count += u64::from(s[2].contains(g.mul(a, b)));
                }
            }
            oracle_ok &= count as f64 == inst.metrics["count"];
            let expected = (s[0].card() * s[1].card() * s[2].card()) as f64 / g.order() as f64;
            let dev = (count as f64 / expected - 1.0).abs();
            oracle_ok &= (dev - inst.metrics["deviation"]).abs() < ORACLE_TOLERANCE;
            devs.push(dev);
        }
        devs.sort_by(f64::total_cmp);
        oracle_ok &= devs.len() == MIXING_SEEDS;
        let med = devs[devs.len() / 2];
        oracle_ok &= report
            .aggregate(&name, "deviation")
            .is_some_and(|a| (a.median - med).abs() < ORACLE_TOLERANCE);
        medians.push(med);
    }
    let elapsed = start.elapsed();
    let (first, last) = (medians[0], medians[medians.len() - 1]);
    let pass = oracle_ok && last < first && last < MIXING_THRESHOLD && elapsed < MIXING_LIMIT;
    line(
        4,
        "mixing trend",
        pass,
        &format!(
            "median deviations for q=5,7,11,13: {medians:?}; q=13 below q=5: {}, below {MIXING_THRESHOLD}: {}; oracle agreement {oracle_ok}; {:.2}s",
            last < first,
            last < MIXING_THRESHOLD,
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_roth_intervals() {
    let start = Instant::now();
    let g = grp(&format!("Z/{ROTH_N}"));
    let mut details = Vec::new();
    let mut pass = true;
    for m in [50usize, 100, 200] {
        let a = make_set(&g, &format!("interval:0,{m}").parse().unwrap()).unwrap();
        let r = count_ap3(&a, EngineChoice::Auto).unwrap();
        let closed = (m * m).div_ceil(2) as u64;
        let d = doubling_constant(&a).unwrap();
        let doubling = *d.numer() as f64 / *d.denom() as f64;
        pass &= r.count == closed && r.ratio() >= ROTH_MIN_RATIO && doubling <= ROTH_MAX_DOUBLING;
        details.push(format!("m={m}: count {} (closed form {closed}), ratio {:.4}, doubling {doubling}", r.count, r.ratio()));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < ROTH_LIMIT;
    line(5, "Roth interval check", pass, &format!("{}; {:.2}s", details.join("; "), elapsed.as_secs_f64()));
    assert!(pass);
}

#[test]
fn criterion_06_power_equation() {
    let start = Instant::now();
    let mut pass = true;
    let mut details = Vec::new();
    for p in [5usize, 7, 11] {
        let g = grp(&format!("Z/{p}"));
        let a = GroupSubset::new(g.clone(), [0, 1, 2]);
        let power = count_power_equation(&a, (1, 1, 2), EngineChoice::Auto).unwrap().report;
        let ap3 = count_ap3(&a, EngineChoice::Auto).unwrap();
        // x + y = 2z over A³ by enumeration.
        let mut direct = 0;
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    direct += u64::from((x + y) % p == (2 * z) % p);
                }
            }
        }
        pass &= power.count == ap3.count && power.count == direct;
        pass &= power.nondegenerate() == ap3.nondegenerate();
        if p == 5 {
            pass &= power.count == 5;
        }
        details.push(format!("Z/{p}: power {} ap3 {} direct {direct}", power.count, ap3.count));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < POWER_LIMIT;
    line(6, "power-equation consistency", pass, &format!("{}; {:.3}s", details.join("; "), elapsed.as_secs_f64()));
    assert!(pass);
}

fn schur_exhaustive_min(g: &FiniteGroup) -> u64 {
    let n = g.order();
    (0u32..1 << n)
        .map(|code| {
            let color = |x: usize| (code >> x) & 1;
            let mut counts = [0u64; 2];
            for a in 0..n {
                for b in 0..n {
                    let c = color(a);
                    if color(b) == c && color(g.mul(a, b)) == c {
                        counts[c as usize] += 1;
                    }
                }
            }
            counts[0].max(counts[1])
        })
        .min()
        .unwrap()
}

#[test]
fn criterion_07_schur_floor() {
    let start = Instant::now();
    let mut pass = true;
    let mut details = Vec::new();
    for n in 1..=6 {
        let g = grp(&format!("Z/{n}"));
        let best = schur_adversarial_search(&g, 2, SCHUR_ITERATIONS, SCHUR_RESTARTS, 7).unwrap();
        let floor = schur_exhaustive_min(&g);
        let single = schur_adversarial_search(&g, 1, SCHUR_ITERATIONS, 2, 7).unwrap();
        pass &= best.max_count == floor && single.max_count == (n * n) as u64;
        details.push(format!("Z/{n}: search {} exhaustive {floor}", best.max_count));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < SCHUR_LIMIT;
    line(7, "Schur exhaustive floor", pass, &format!("{}; k=1 gives |G|^2; {:.2}s", details.join("; "), elapsed.as_secs_f64()));
    assert!(pass);
}

/// Recomputes every ordered subproduct and checks its color.
fn revalidate(g: &FiniteGroup, w: &TupleWitness, member: impl Fn(Elem) -> bool) -> bool {
    let n = w.elements.len();
    (1usize..1 << n).all(|mask| {
        let mut p = g.identity();
        for (i, &a) in w.elements.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p = g.mul(p, a);
            }
        }
        p == w.products[mask - 1] && member(p)
    })
}

#[test]
fn criterion_08_hindman_witnesses() {
    let start = Instant::now();
    let mut pass = true;
    let mut witnesses = 0;
    for spec in ["Z/16", S4, "PSL2(5)"] {
        let g = grp(spec);
        for seed in 0..HINDMAN_SEEDS {
            let c = Coloring::random(g.clone(), 2, seed).unwrap();
            match monochromatic_tuple_search(&c, 3, SearchOptions::default()).unwrap() {
                SearchOutcome::Witness(w) => {
                    let color = w.color.unwrap();
                    pass &= revalidate(&g, &w, |x| c.color(x) == color);
                    witnesses += 1;
                }
                SearchOutcome::Exhausted { .. } => pass = false,
            }
            let id_color = c.color(g.identity());
            match hindman_greedy(&c.class(id_color), 3, false).unwrap() {
                HindmanOutcome::Found(w) => pass &= revalidate(&g, &w, |x| c.color(x) == id_color),
                HindmanOutcome::Failed(_) => pass = false,
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed < HINDMAN_LIMIT;
    line(
        8,
        "Hindman witnesses",
        pass,
        &format!("{witnesses} of {} colorings yield re-validated witnesses; {:.2}s", 3 * HINDMAN_SEEDS, elapsed.as_secs_f64()),
    );
    assert!(pass);
}

/// Brute-force quantifier checks over groups of order at most 8, on bitmasks.
struct Small {
    n: usize,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl Small {
    fn new(g: &FiniteGroup) -> Self {
        let n = g.order();
        assert!(n <= 8);
        Small {
            n,
            mul: (0..n).map(|a| (0..n).map(|b| g.mul(a, b)).collect()).collect(),
            inv: (0..n).map(|a| g.inv(a)).collect(),
        }
    }

    fn prod(&self, x: u32, y: u32) -> u32 {
        let mut out = 0;
        for a in (0..self.n).filter(|a| x >> a & 1 == 1) {
            for b in (0..self.n).filter(|b| y >> b & 1 == 1) {
                out |= 1 << self.mul[a][b];
            }
        }
        out
    }

    fn inverse(&self, x: u32) -> u32 {
        (0..self.n).filter(|a| x >> a & 1 == 1).fold(0, |m, a| m | 1 << self.inv[a])
    }

    fn sandwich(&self, x: u32) -> u32 {
        self.prod(self.prod(x, self.inverse(x)), x)
    }

    /// Subsets of `x` with at least `eps·|x|` elements.
    fn qualifying(&self, x: u32, eps: Ratio<usize>) -> Vec<u32> {
        let size = x.count_ones() as usize;
        (1..1u32 << self.n)
            .filter(|&s| s & !x == 0)
            .filter(|s| s.count_ones() as usize * eps.denom() >= eps.numer() * size)
            .collect()
    }

    fn rich_violated(&self, a: u32, eps: Ratio<usize>) -> bool {
        self.qualifying(a, eps).into_iter().any(|s| self.prod(s, s) & s == 0)
    }

    fn regular_violated(&self, a: u32, b: u32, c: u32, eps: Ratio<usize>) -> bool {
        let sand = |x| -> BTreeSet<u32> { self.qualifying(x, eps).into_iter().map(|s| self.sandwich(s)).collect() };
        let (sa, sb, sc) = (sand(a), sand(b), sand(c));
        let mut blocked = vec![false; 1 << self.n];
        for (p, slot) in blocked.iter_mut().enumerate() {
            *slot = sc.iter().any(|&s| s & p as u32 == 0);
        }
        sa.iter().any(|&x| sb.iter().any(|&y| blocked[self.prod(x, y) as usize]))
    }
}

fn mask(s: &GroupSubset) -> u32 {
    s.iter().fold(0, |m, x| m | 1 << x)
}

fn subset(g: &Arc<FiniteGroup>, m: u32) -> GroupSubset {
    GroupSubset::new(g.clone(), (0..g.order()).filter(|x| m >> x & 1 == 1))
}

#[test]
fn criterion_09_regularity_checkers() {
    let start = Instant::now();
    let specs = [
        "Z/1", "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/7", "Z/8", "Z/2 x Z/2", "Z/2 x Z/4", "Z/2 x Z/2 x Z/2", S3, D4, Q8,
    ];
    let epsilons = [Ratio::new(1, 2), Ratio::new(1, 1)];
    let mut rng = SplitMix64::new(9);
    let (mut rich_checks, mut regular_checks, mut violations, mut disagreements, mut bad_witnesses) =
        (0usize, 0usize, 0usize, 0usize, 0usize);
    for spec in specs {
        let g = grp(spec);
        let small = Small::new(&g);
        let full = (1u32 << g.order()) - 1;
        for eps in epsilons {
            let check_rich = |a: u32, stats: &mut (usize, usize, usize, usize)| {
                let set = subset(&g, a);
                let v = check_product_rich(&set, eps, CheckMode::Exact).unwrap();
                let want = small.rich_violated(a, eps);
                stats.0 += 1;
                if v.is_violated() != want {
                    stats.1 += 1;
                }
                if v.is_violated() {
                    stats.2 += 1;
                    let w = mask(&v.witness[0]);
                    let ok = w & !a == 0
                        && w.count_ones() as usize * eps.denom() >= eps.numer() * a.count_ones() as usize
                        && small.prod(w, w) & w == 0;
                    if !ok {
                        stats.3 += 1;
                    }
                }
            };
            let check_regular = |a: u32, b: u32, c: u32, stats: &mut (usize, usize, usize, usize)| {
                let (sa, sb, sc) = (subset(&g, a), subset(&g, b), subset(&g, c));
                let v = check_regular_position(&sa, &sb, &sc, eps, CheckMode::Exact).unwrap();
                let want = small.regular_violated(a, b, c, eps);
                stats.0 += 1;
                if v.is_violated() != want {
                    stats.1 += 1;
                }
                if v.is_violated() {
                    stats.2 += 1;
                    let w: Vec<u32> = v.witness.iter().map(mask).collect();
                    let ok = w.len() == 3
                        && w.iter().zip([a, b, c]).all(|(&x0, x)| {
                            x0 & !x == 0
                                && x0.count_ones() as usize * eps.denom() >= eps.numer() * x.count_ones() as usize
                        })
                        && small.prod(small.sandwich(w[0]), small.sandwich(w[1])) & small.sandwich(w[2]) == 0;
                    if !ok {
                        stats.3 += 1;
                    }
                }
            };
            let mut rich = (0, 0, 0, 0);
            let mut regular = (0, 0, 0, 0);
            for a in 1..=full {
                check_rich(a, &mut rich);
                check_regular(a, a, a, &mut regular);
            }
            if g.order() <= REGULARITY_EXHAUSTIVE_ORDER {
                for a in 1..=full {
                    for b in 1..=full {
                        for c in 1..=full {
                            check_regular(a, b, c, &mut regular);
                        }
                    }
                }
            } else {
                for _ in 0..REGULARITY_RANDOM_TRIPLES {
                    let mut pick = || 1 + rng.below(full as u64) as u32;
                    let (a, b, c) = (pick(), pick(), pick());
                    check_regular(a, b, c, &mut regular);
                }
            }
            rich_checks += rich.0;
            regular_checks += regular.0;
            disagreements += rich.1 + regular.1;
            violations += rich.2 + regular.2;
            bad_witnesses += rich.3 + regular.3;
        }
    }
    let elapsed = start.elapsed();
    let pass = disagreements == 0 && bad_witnesses == 0 && elapsed < REGULARITY_LIMIT;
    line(
        9,
        "regularity checkers",
        pass,
        &format!(
            "{} groups, {rich_checks} product-rich and {regular_checks} regular-position checks, {violations} violations, {disagreements} disagreements, {bad_witnesses} bad witnesses; {:.2}s",
            specs.len(),
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass);
}

fn determinism_configs() -> Vec<ExperimentConfig> {
    let g = |s: &str| s.parse().unwrap();
    let mut out = Vec::new();
    let mut c = ExperimentConfig::new(Recipe::MixingTrend, vec![g("PSL2(5)"), g("Z/60")]);
    c.seed = 5;
    out.push(c);
    let mut c = ExperimentConfig::new(Recipe::Schur, vec![g("Z/12"), g(S3)]);
    c.seed = 6;
    c.params.iterations = Some(200);
    out.push(c);
    let mut c = ExperimentConfig::new(Recipe::Hindman, vec![g(S4)]);
    c.seed = 7;
    c.params.seeds = Some(5);
    out.push(c);
    let mut c = ExperimentConfig::new(Recipe::ProductRich, vec![g("Z/30")]);
    c.seed = 8;
    c.params.mode = Some(CheckModeName::Sampled);
    c.params.samples = Some(50);
    out.push(c);
    let mut c = ExperimentConfig::new(Recipe::GrowthProfile, vec![g("Z/5 x Z/7")]);
    c.seed = 9;
    out.push(c);
    out
}

#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let mut identical = 0;
    let mut total = 0;
    for cfg in determinism_configs() {
        let a = one.install(|| run_recipe(&cfg)).unwrap().to_json().unwrap();
        let b = one.install(|| run_recipe(&cfg)).unwrap().to_json().unwrap();
        let c = many.install(|| run_recipe(&cfg)).unwrap().to_json().unwrap();
        total += 1;
        identical += usize::from(a == b && a == c);
    }
    let mut grid = ExperimentConfig::new(Recipe::MixingTrend, vec![]);
    grid.seed = 10;
    grid.params.seeds = Some(2);
    grid.grid = Some(
        [(
            "group".to_string(),
            ["PSL2(5)", "PSL2(7)", "Z/50"].iter().map(|s| toml::Value::String(s.to_string())).collect(),
        )]
        .into(),
    );
    let a = one.install(|| sweep(&grid)).unwrap();
    let b = one.install(|| sweep(&grid)).unwrap();
    let c = many.install(|| sweep(&grid)).unwrap();
    total += 1;
    identical += usize::from(
        a.to_json().unwrap() == b.to_json().unwrap()
            && a.to_json().unwrap() == c.to_json().unwrap()
            && a.to_csv().unwrap() == c.to_csv().unwrap(),
    );
    let elapsed = start.elapsed();
    let pass = identical == total && elapsed < DETERMINISM_LIMIT;
    line(
        10,
        "determinism",
        pass,
        &format!("{identical} of {total} configs byte-identical across repeated and 1 vs 4 thread runs; {:.2}s", elapsed.as_secs_f64()),
    );
    assert!(pass);
}
