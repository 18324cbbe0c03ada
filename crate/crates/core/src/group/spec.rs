//! Declarative group specifications and the group builder.
//!
//! Grammar: `Z/n`, `PSL2(q)`, `perm:(1 2 3);(1 2)` (semicolon-separated
//! generators, cycles of 1-based points), `table:PATH` (CSV Cayley table),
//! and direct products of the non-table forms joined by ` x `.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::perm::{parse_cycles, PermData, Permutation};
use super::psl2::{psl2_order, Psl2};
use super::table::{normalize_identity, read_table};
use super::{field::prime_power, FiniteGroup, Formula};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    DirectProduct(Vec<GroupSpec>),
    Psl2(u64),
    /// Generators as cycle lists of 1-based points.
    Permutation(Vec<Vec<Vec<usize>>>),
    Table(PathBuf),
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("table:") {
            if path.trim().is_empty() {
                return Err(Error::malformed(s, "missing table path"));
            }
            return Ok(GroupSpec::Table(PathBuf::from(path.trim())));
        }
        let parts: Vec<&str> = split_product(s);
        if parts.len() > 1 {
            let factors = parts
                .into_iter()
                .map(parse_atom)
                .collect::<Result<Vec<_>>>()?;
            return Ok(GroupSpec::DirectProduct(factors));
        }
        parse_atom(s)
    }
}

/// Splits on the product sign `x` when it stands alone between whitespace.
fn split_product(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 0..bytes.len() {
        if bytes[i] == b'x'
            && i > 0
            && i + 1 < bytes.len()
            && bytes[i - 1].is_ascii_whitespace()
            && bytes[i + 1].is_ascii_whitespace()
        {
            parts.push(s[start..i].trim());
            start = i + 1;
        }
    }
    parts.push(s[start..].trim());
    parts
}

fn parse_atom(s: &str) -> Result<GroupSpec> {
    let s = s.trim();
    if let Some(n) = s.strip_prefix("Z/") {
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::malformed(s, "cyclic order must be a positive integer"))?;
        if n == 0 {
            return Err(Error::malformed(s, "cyclic order must be at least 1"));
        }
        return Ok(GroupSpec::Cyclic(n));
    }
    if let Some(rest) = s.strip_prefix("PSL2(") {
        let q = rest
            .strip_suffix(')')
            .and_then(|q| q.trim().parse::<u64>().ok())
            .ok_or_else(|| Error::malformed(s, "expected PSL2(q)"))?;
        return Ok(GroupSpec::Psl2(q));
    }
    if let Some(rest) = s.strip_prefix("perm:") {
        let gens = rest
            .split(';')
            .map(|g| parse_cycles(g).map_err(|e| Error::malformed(s, e)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(GroupSpec::Permutation(gens));
    }
    if s.starts_with("table:") {
        return Err(Error::malformed(s, "table groups cannot be product factors"));
    }
    Err(Error::malformed(s, "unknown group form"))
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z/{n}"),
            GroupSpec::DirectProduct(factors) => {
                let parts: Vec<String> = factors.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
            GroupSpec::Psl2(q) => write!(f, "PSL2({q})"),
            GroupSpec::Permutation(gens) => {
                let gens: Vec<String> = gens
                    .iter()
                    .map(|cycles| {
                        if cycles.is_empty() {
                            return "()".to_string();
                        }
                        cycles
                            .iter()
                            .map(|c| {
                                let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                                format!("({})", pts.join(" "))
                            })
                            .collect::<String>()
                    })
                    .collect();
                write!(f, "perm:{}", gens.join(";"))
            }
            GroupSpec::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub order_cap: usize,
    /// Seed for sampled associativity checks of large tables.
    pub seed: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            order_cap: 200_000,
            seed: 0,
        }
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    build_group_with(spec, &BuildOptions::default())
}

pub fn build_group_with(spec: &GroupSpec, opts: &BuildOptions) -> Result<FiniteGroup> {
    if let Some(order) = predicted_order(spec)? {
        if order > opts.order_cap as u128 {
            return Err(Error::OrderCapExceeded {
                order,
                cap: opts.order_cap,
            });
        }
    }
    let name = spec.to_string();
    match spec {
        GroupSpec::Cyclic(n) => Ok(FiniteGroup::from_formula(
            name,
            *n,
            Formula::Cyclic(*n),
            Some(vec![*n]),
            None,
        )),
        GroupSpec::DirectProduct(factors) => {
            if factors.is_empty() {
                return Err(Error::malformed(&name, "empty direct product"));
            }
            let built = factors
                .iter()
                .map(|f| build_group_with(f, opts))
                .collect::<Result<Vec<_>>>()?;
            let order: usize = built.iter().map(FiniteGroup::order).product();
            let mut strides = vec![1usize; built.len()];
            for i in (0..built.len().saturating_sub(1)).rev() {
                strides[i] = strides[i + 1] * built[i + 1].order();
            }
            let cyclic = built
                .iter()
                .map(|g| g.cyclic_factors().map(<[usize]>::to_vec))
                .collect::<Option<Vec<_>>>()
                .map(|v| v.concat());
            let labels = (order <= super::TABLE_LIMIT).then(|| {
                (0..order)
                    .map(|x| {
                        let parts: Vec<String> = built
                            .iter()
                            .zip(&strides)
                            .map(|(g, s)| g.label(x / s % g.order()))
                            .collect();
                        format!("({})", parts.join(","))
                    })
                    .collect()
            });
            Ok(FiniteGroup::from_formula(
                name,
                order,
                Formula::Product {
                    factors: built,
                    strides,
                },
                cyclic,
                labels,
            ))
        }
        GroupSpec::Psl2(q) => {
            let psl = Psl2::new(*q)?;
            let labels = psl.labels();
            Ok(FiniteGroup::from_formula(
                name,
                psl.order(),
                Formula::Psl2(psl),
                None,
                Some(labels),
            ))
        }
        GroupSpec::Permutation(gens) => {
            if gens.is_empty() {
                return Err(Error::malformed(&name, "no generators"));
            }
            let m = gens.iter().flatten().flatten().copied().max().unwrap_or(1);
            let perms = gens
                .iter()
                .map(|c| {
                    Permutation::from_cycles(m, c)
                        .ok_or_else(|| Error::malformed(&name, "cycles are not disjoint"))
                })
                .collect::<Result<Vec<_>>>()?;
            let data = PermData::close(&perms, opts.order_cap)?;
            let labels = data.labels();
            Ok(FiniteGroup::from_formula(
                name,
                data.order(),
                Formula::Perm(data),
                None,
                Some(labels),
            ))
        }
        GroupSpec::Table(path) => {
            let (n, table) = read_table(path)?;
            if n > opts.order_cap {
                return Err(Error::OrderCapExceeded {
                    order: n as u128,
                    cap: opts.order_cap,
                });
            }
            let (table, original) = normalize_identity(n, table)?;
            let labels = original.iter().map(|i| i.to_string()).collect();
            let g = FiniteGroup::from_table(name, n, table, Some(labels));
            g.check_axioms(opts.seed)?;
            Ok(g)
        }
    }
}

/// Order computable from the spec alone, checked against the cap before any
/// enumeration. `None` for permutation and table groups.
fn predicted_order(spec: &GroupSpec) -> Result<Option<u128>> {
    Ok(match spec {
        GroupSpec::Cyclic(n) => {
            if *n == 0 {
                return Err(Error::malformed(&spec.to_string(), "cyclic order must be at least 1"));
            }
            Some(*n as u128)
        }
        GroupSpec::Psl2(q) => {
            if prime_power(*q).is_none() {
                return Err(Error::NotPrimePower(*q));
            }
            Some(psl2_order(*q))
        }
        GroupSpec::DirectProduct(factors) => {
            let mut total = Some(1u128);
            for f in factors {
                total = match (total, predicted_order(f)?) {
                    (Some(t), Some(o)) => Some(t.saturating_mul(o)),
                    _ => None,
                };
            }
            total
        }
        GroupSpec::Permutation(_) | GroupSpec::Table(_) => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn build(s: &str) -> Result<FiniteGroup> {
        build_group(&s.parse()?)
    }

    #[test]
    fn parses_and_prints() {
        for s in ["Z/5", "Z/2 x Z/3", "PSL2(7)", "perm:(1 2 3);(1 2)", "table:/tmp/x.csv"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        assert_eq!(
            "perm:(1,2,3)(4 5);()".parse::<GroupSpec>().unwrap().to_string(),
            "perm:(1 2 3)(4 5);()"
        );
        for bad in ["Z/0", "Z/x", "PSL2(5", "perm:(1 2", "foo", "Z/2 x table:a", ""] {
            assert!(
                matches!(bad.parse::<GroupSpec>(), Err(Error::MalformedSpec { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(build("Z/5").unwrap().order(), 5);
        let g = build("Z/2 x Z/3").unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
        assert_eq!(g.cyclic_factors(), Some(&[2usize, 3][..]));
        assert_eq!(build("PSL2(5)").unwrap().order(), 60);
        assert!(!build("PSL2(5)").unwrap().is_abelian());
        assert_eq!(build("perm:(1 2 3);(1 2)").unwrap().order(), 6);
        assert_eq!(build("perm:()").unwrap().order(), 1);
    }

    #[test]
    fn psl2_orders_follow_formula() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            let g = build(&format!("PSL2({q})")).unwrap();
            let expected = q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 };
            assert_eq!(g.order() as u64, expected, "q={q}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(build("PSL2(6)"), Err(Error::NotPrimePower(6))));
        assert!(matches!(build("PSL2(1)"), Err(Error::NotPrimePower(1))));
        assert!(matches!(
            build("Z/300000"),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert!(matches!(
            build("Z/1000 x Z/1000"),
            Err(Error::OrderCapExceeded { .. })
        ));
        let opts = BuildOptions {
            order_cap: 100,
            seed: 0,
        };
        assert!(matches!(
            build_group_with(&"perm:(1 2 3 4 5);(1 2)".parse().unwrap(), &opts),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn constructed_groups_satisfy_axioms() {
        for s in [
            "Z/1",
            "Z/7",
            "Z/2 x Z/2 x Z/3",
            "Z/3 x perm:(1 2 3);(1 2)",
            "PSL2(2)",
            "PSL2(4)",
            "PSL2(5)",
            "PSL2(8)",
            "perm:(1 2 3 4);(1 2)",
            "perm:(1 2)(3 4);(1 3)(2 4)",
        ] {
            let g = build(s).unwrap();
            g.check_axioms(1).unwrap_or_else(|e| panic!("{s}: {e}"));
        }
    }

    #[test]
    fn large_cyclic_uses_formula() {
        let g = build("Z/100000").unwrap();
        assert!(!g.has_table());
        assert_eq!(g.mul(99_999, 2), 1);
        assert_eq!(g.inv(1), 99_999);
    }

    #[test]
    fn deterministic_indexing() {
        let a = build("PSL2(7)").unwrap();
        let b = build("PSL2(7)").unwrap();
        assert_eq!(a.labels(), b.labels());
    }

    fn write_table(rows: &[Vec<u32>]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for r in rows {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(",")).unwrap();
        }
        f
    }

    #[test]
    fn table_groups() {
        // Z/4 with the identity stored at index 3.
        let rows: Vec<Vec<u32>> = (0..4)
            .map(|i| (0..4).map(|j| ((i + 1 + j + 1) % 4 + 3) % 4).collect())
            .collect();
        let f = write_table(&rows);
        let g = build(&format!("table:{}", f.path().display())).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.label(0), "3");
        assert_eq!(g.element_order(0), 1);

        // Latin square with identity that is not associative.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let f = write_table(&rows);
        assert!(matches!(
            build(&format!("table:{}", f.path().display())),
            Err(Error::NotAGroup(_))
        ));

        let f = write_table(&[vec![0, 1], vec![1, 1]]);
        assert!(matches!(
            build(&format!("table:{}", f.path().display())),
            Err(Error::NotAGroup(_))
        ));
        assert!(matches!(
            build("table:/nonexistent/grplab.csv"),
            Err(Error::Io { .. })
        ));
    }
}
