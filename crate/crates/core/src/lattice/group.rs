use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

use super::{Isometry, Lattice};

pub const DEFAULT_GROUP_BUDGET: usize = 10_000;

/// A group of isometries given by generators.
#[derive(Clone, Debug)]
pub struct GroupAction {
    generators: Vec<Isometry>,
    order_hint: Option<usize>,
}

impl GroupAction {
    pub fn new(lat: &Lattice, generators: Vec<Isometry>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        for g in &generators {
            if !lat.is_isometry(g.matrix())? {
                return Err(Error::NotIsometry);
            }
        }
        Ok(GroupAction {
            generators,
            order_hint: None,
        })
    }

    /// Checked construction from raw generator matrices.
    pub fn from_matrices(lat: &Lattice, matrices: Vec<IntMatrix>) -> Result<Self> {
        let gens = matrices
            .into_iter()
            .map(|m| Isometry::new(lat, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lat, gens)
    }

    pub fn with_order_hint(mut self, order: usize) -> Self {
        self.order_hint = Some(order);
        self
    }

    pub fn order_hint(&self) -> Option<usize> {
        self.order_hint
    }

    pub fn generators(&self) -> &[Isometry] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators[0].rank()
    }

    /// All group elements, by breadth-first closure under right
    /// multiplication with the generators. Fails instead of truncating when
    /// more than `budget` elements appear.
    pub fn enumerate(&self, budget: usize) -> Result<Vec<Isometry>> {
        let id = Isometry::identity(self.rank());
        let mut seen: HashSet<IntMatrix> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(id.matrix().clone());
        queue.push_back(id);
        while let Some(g) = queue.pop_front() {
            for s in &self.generators {
                let h = g.compose(s)?;
                if seen.insert(h.matrix().clone()) {
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    queue.push_back(h);
                }
            }
            out.push(g);
        }
        Ok(out)
    }

    pub fn order(&self, budget: usize) -> Result<usize> {
        self.enumerate(budget).map(|v| v.len())
    }
}
