//! Permutation groups given by generators, closed by breadth-first search.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::Elem;
use crate::error::{Error, Result};

/// A permutation of `0..m`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u16>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((0..m as u16).collect())
    }

    /// Builds a permutation of `0..m` from cycles of 1-based points.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut img: Vec<u16> = (0..m as u16).collect();
        let mut touched = vec![false; m];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p == 0 || p > m || touched[p - 1] {
                    return None;
                }
                touched[p - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                img[p - 1] = (next - 1) as u16;
            }
        }
        Some(Permutation(img))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self` first, then `other`: `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u16;
        }
        Permutation(out)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.0[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) struct PermData {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl PermData {
    /// Closes the generators under multiplication. Elements are numbered in
    /// discovery order of a breadth-first search from the identity that
    /// right-multiplies by the generators in the order given.
    pub(crate) fn close(gens: &[Permutation], cap: usize) -> Result<Self> {
        let m = gens.iter().map(Permutation::degree).max().unwrap_or(1);
        let id = Permutation::identity(m);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let next = elements[i].then(g);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::OrderCapExceeded {
                            order: elements.len() as u128 + 1,
                            cap,
                        });
                    }
                    index.insert(next.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(PermData { elements, index })
    }

    pub(crate) fn order(&self) -> usize {
        self.elements.len()
    }

    pub(crate) fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.index[&self.elements[a].then(&self.elements[b])] as Elem
    }

    pub(crate) fn inverses(&self) -> Vec<u32> {
        self.elements.iter().map(|p| self.index[&p.inverse()]).collect()
    }

    pub(crate) fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|p| p.to_string()).collect()
    }
}

/// Parses one generator such as `(1 2 3)(4 5)`, `(1,2)` or `()`.
pub(crate) fn parse_cycles(text: &str) -> std::result::Result<Vec<Vec<usize>>, String> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected `(` in `{text}`"))?;
        let close = body.find(')').ok_or_else(|| format!("unclosed cycle in `{text}`"))?;
        let points: Vec<usize> = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| format!("bad point `{s}`")))
            .collect::<std::result::Result<_, _>>()?;
        if points.iter().any(|&p| p == 0) {
            return Err("points are 1-based".into());
        }
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_compose() {
        let c = parse_cycles("(1 2 3)").unwrap();
        let p = Permutation::from_cycles(3, &c).unwrap();
        assert_eq!(p.image(0), 1);
        assert_eq!(p.then(&p).then(&p), Permutation::identity(3));
        assert_eq!(p.to_string(), "(1 2 3)");
        assert_eq!(parse_cycles("(1,2)(3 4)").unwrap(), vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(parse_cycles("()").unwrap(), Vec::<Vec<usize>>::new());
        assert!(parse_cycles("(1 2").is_err());
        assert!(parse_cycles("(0 1)").is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_none());
    }

    #[test]
    fn symmetric_groups_close() {
        let s4 = [vec![vec![1, 2, 3, 4]], vec![vec![1, 2]]]
            .map(|c| Permutation::from_cycles(4, &c).unwrap());
        assert_eq!(PermData::close(&s4, 1000).unwrap().order(), 24);
        assert!(matches!(
            PermData::close(&s4, 10),
            Err(Error::OrderCapExceeded { .. })
        ));
    }
}
