use std::collections::VecDeque;

use serde::Serialize;

use super::{Elem, FiniteGroup, IDENTITY};

/// Partition of a group into conjugacy classes. Classes are numbered by
/// their least element, so class 0 is `{identity}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClasses {
    classes: Vec<Vec<Elem>>,
    class_of: Vec<usize>,
}

impl ConjugacyClasses {
    /// Orbits under conjugation by a generating set, which are the orbits of
    /// the whole group.
    pub(crate) fn compute(group: &FiniteGroup) -> Self {
        let n = group.order();
        let gens = group.generators();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &g in gens {
                    let y = group.conjugate(x, g);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        debug_assert_eq!(classes[0], vec![IDENTITY]);
        ConjugacyClasses { classes, class_of }
    }

    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &[Elem] {
        &self.classes[id]
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}
