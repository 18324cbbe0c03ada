//! Colorings of finite groups: monochromatic Schur triples, adversarial
//! colorings, and tuples whose ordered products stay in one color class.

mod cip;
mod hindman;
mod schur;

use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use cip::{cip_density_experiment, CipMode, CipOptions, CipReport, CipTrial, EXACT_TUPLE_LIMIT};
pub use hindman::{
    hindman_greedy, monochromatic_tuple_search, FailureTrace, HindmanOutcome, SearchOptions,
    SearchOutcome, TupleWitness, DEFAULT_NODE_BUDGET,
};
pub use schur::{schur_adversarial_search, schur_counts, AdversarialResult, SchurReport};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::rng::SplitMix64;
use crate::sets::GroupSubset;

/// An assignment of one of `k` colors to every element.
#[derive(Clone)]
pub struct Coloring {
    group: Arc<FiniteGroup>,
    k: usize,
    colors: Vec<usize>,
}

impl std::fmt::Debug for Coloring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Coloring")
            .field("group", &self.group.name())
            .field("k", &self.k)
            .field("colors", &self.colors)
            .finish()
    }
}

/// On-disk form: `{"k": 2, "colors": [0, 1, ...]}` indexed by element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub k: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn new(group: Arc<FiniteGroup>, k: usize, colors: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("a coloring needs at least one color".into()));
        }
        if colors.len() != group.order() {
            return Err(Error::InvalidParameter(format!(
                "{} colors for a group of order {}",
                colors.len(),
                group.order()
            )));
        }
        if let Some(c) = colors.iter().find(|&&c| c >= k) {
            return Err(Error::InvalidParameter(format!("color {c} is not below k = {k}")));
        }
        Ok(Coloring { group, k, colors })
    }

    /// Every element colored independently and uniformly.
    pub fn random(group: Arc<FiniteGroup>, k: usize, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("a coloring needs at least one color".into()));
        }
        let mut rng = SplitMix64::new(seed);
        let colors = (0..group.order()).map(|_| rng.index(k)).collect();
        Coloring::new(group, k, colors)
    }

    pub fn from_file(group: Arc<FiniteGroup>, file: ColoringFile) -> Result<Self> {
        Coloring::new(group, file.k, file.colors)
    }

    pub fn load(group: Arc<FiniteGroup>, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let file: ColoringFile = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidParameter(format!("coloring file {}: {e}", path.display())))?;
        Coloring::from_file(group, file)
    }

    /// Parses `random:k,seed`, or otherwise reads a JSON coloring file.
    pub fn from_arg(group: Arc<FiniteGroup>, arg: &str) -> Result<Self> {
        match arg.strip_prefix("random:") {
            Some(rest) => {
                let bad = || Error::InvalidParameter(format!("expected random:k,seed, got `{arg}`"));
                let (k, seed) = rest.split_once(',').ok_or_else(bad)?;
                let k = usize::from_str(k.trim()).map_err(|_| bad())?;
                let seed = u64::from_str(seed.trim()).map_err(|_| bad())?;
                Coloring::random(group, k, seed)
            }
            None => Coloring::load(group, Path::new(arg)),
        }
    }

    pub fn to_file(&self) -> ColoringFile {
        ColoringFile {
            k: self.k,
            colors: self.colors.clone(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, x: Elem) -> usize {
        self.colors[x]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn class(&self, j: usize) -> GroupSubset {
        GroupSubset::new(
            self.group.clone(),
            self.colors.iter().enumerate().filter(|&(_, &c)| c == j).map(|(x, _)| x),
        )
    }

    pub fn classes(&self) -> Vec<GroupSubset> {
        (0..self.k).map(|j| self.class(j)).collect()
    }
}
