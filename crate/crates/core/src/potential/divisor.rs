use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{GraphPoint, WeightedDualGraph};
use crate::scalar::Scalar;

/// Finitely supported formal sum of points with exact coefficients.
///
/// Zero coefficients are never stored, so structural equality is divisor
/// equality. Coefficients are integers for every divisor the theory
/// produces; Laplacians of functions with non-integral slopes can have
/// rational degrees, which is why the coefficient type is the scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphDivisor<S> {
    coeffs: BTreeMap<GraphPoint<S>, S>,
}

impl<S: Scalar> Default for GraphDivisor<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> FromIterator<(GraphPoint<S>, S)> for GraphDivisor<S> {
    fn from_iter<I: IntoIterator<Item = (GraphPoint<S>, S)>>(iter: I) -> Self {
        let mut d = Self::zero();
        for (p, c) in iter {
            d.add_at(p, c);
        }
        d
    }
}

impl<S: Scalar> GraphDivisor<S> {
    pub fn zero() -> Self {
        GraphDivisor {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn point(p: GraphPoint<S>, c: S) -> Self {
        let mut d = Self::zero();
        d.add_at(p, c);
        d
    }

    pub fn vertex(v: usize, c: i64) -> Self {
        Self::point(GraphPoint::Vertex(v), S::from_int(c))
    }

    pub fn add_at(&mut self, p: GraphPoint<S>, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(p) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, p: &GraphPoint<S>) -> S {
        self.coeffs.get(p).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GraphPoint<S>, &S)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &GraphPoint<S>> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> S {
        self.coeffs.values().fold(S::zero(), |a, c| a + c.clone())
    }

    /// Degree of the part supported off the rays.
    pub fn compact_degree(&self) -> S {
        self.coeffs
            .iter()
            .filter(|(p, _)| !p.is_on_ray())
            .fold(S::zero(), |a, (_, c)| a + c.clone())
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(S::is_integer)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (p, c) in other.iter() {
            d.add_at(p.clone(), c.clone());
        }
        d
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-S::one())
    }

    pub fn scaled(&self, k: &S) -> Self {
        self.coeffs
            .iter()
            .map(|(p, c)| (p.clone(), c.clone() * k.clone()))
            .collect()
    }

    /// `self >= other` coefficient-wise.
    pub fn dominates(&self, other: &Self) -> bool {
        self.minus(other).is_effective()
    }

    pub fn validate(&self, graph: &WeightedDualGraph<S>) -> Result<()> {
        for p in self.coeffs.keys() {
            graph
                .validate_point(p)
                .map_err(|e| Error::InvalidDivisor(e.to_string()))?;
        }
        Ok(())
    }
}
