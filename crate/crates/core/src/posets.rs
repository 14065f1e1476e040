//! Minimal elements, Dickson layers and downset filtrations of finite point
//! sets under an orthant order.
//!
//! Every finite `S` is stratified as `S_0 = min S`, `S_{k+1} = min(S \ S_(k))`
//! where `S_(k)` is the union of the first `k + 1` layers. Elements whose
//! downset has at most `k + 1` members always lie in `S_(k)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{coordinate_ranks, Orthant, Point};

/// A finite set of distinct points ordered by `<=_P` for an orthant `P`.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    elements: Vec<Point>,
    order: Orthant,
    // Reflected coordinates replaced by per-coordinate ranks.
    keys: Vec<Vec<u32>>,
}

/// The first layers of the Dickson stratification and what is left over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layering {
    pub layers: Vec<Vec<Point>>,
    pub residual: Vec<Point>,
}

impl Layering {
    /// Union of all computed layers, `S_(k)`.
    pub fn covered(&self) -> Vec<Point> {
        let mut all: Vec<Point> = self.layers.iter().flatten().cloned().collect();
        all.sort();
        all
    }
}

fn key_leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl FinitePoset {
    /// Builds a poset; duplicate points are merged.
    pub fn new(elements: Vec<Point>, order: Orthant) -> Result<Self> {
        let n = order.dim();
        for e in &elements {
            e.check_dim(n)?;
        }
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let reflected = elements
            .iter()
            .map(|e| order.reflect(e))
            .collect::<Result<Vec<_>>>()?;
        let keys = coordinate_ranks(&reflected);
        Ok(FinitePoset {
            elements,
            order,
            keys,
        })
    }

    /// Poset under the componentwise order.
    pub fn standard(elements: Vec<Point>, n: usize) -> Result<Self> {
        FinitePoset::new(elements, Orthant::positive(n))
    }

    pub fn elements(&self) -> &[Point] {
        &self.elements
    }

    pub fn order(&self) -> &Orthant {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn less(&self, i: usize, j: usize) -> bool {
        i != j && key_leq(&self.keys[i], &self.keys[j])
    }

    fn minimal_among(&self, alive: &[usize]) -> Vec<usize> {
        alive
            .iter()
            .copied()
            .filter(|&i| !alive.iter().any(|&j| self.less(j, i)))
            .collect()
    }

    fn collect(&self, idx: &[usize]) -> Vec<Point> {
        idx.iter().map(|&i| self.elements[i].clone()).collect()
    }

    pub fn minimal_elements(&self) -> Vec<Point> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.collect(&self.minimal_among(&all))
    }

    /// Layers `S_0, ..., S_k`, stopping early once `S` is exhausted.
    pub fn dickson_layers(&self, k: usize) -> Layering {
        let mut alive: Vec<usize> = (0..self.len()).collect();
        let mut layers = Vec::new();
        for _ in 0..=k {
            if alive.is_empty() {
                break;
            }
            let layer = self.minimal_among(&alive);
            alive.retain(|i| !layer.contains(i));
            layers.push(self.collect(&layer));
        }
        Layering {
            layers,
            residual: self.collect(&alive),
        }
    }

    /// `{u in S : u <=_P s}` for an arbitrary `s`.
    pub fn downset(&self, s: &Point) -> Result<Vec<Point>> {
        s.check_dim(self.order.dim())?;
        let rs = self.order.reflect(s)?;
        Ok(self
            .elements
            .iter()
            .filter(|u| self.order.reflect(u).map(|ru| ru.leq(&rs)).unwrap_or(false))
            .cloned()
            .collect())
    }

    fn downset_sizes(&self) -> Vec<usize> {
        (0..self.len())
            .map(|i| {
                (0..self.len())
                    .filter(|&j| key_leq(&self.keys[j], &self.keys[i]))
                    .count()
            })
            .collect()
    }

    /// `{s in S : card downset(s) <= k + 1}`.
    pub fn filter_by_downset(&self, k: usize) -> Vec<Point> {
        let sizes = self.downset_sizes();
        let idx: Vec<usize> = (0..self.len()).filter(|&i| sizes[i] <= k + 1).collect();
        self.collect(&idx)
    }
}

pub fn minimal_elements(s: &FinitePoset) -> Vec<Point> {
    s.minimal_elements()
}

pub fn dickson_layers(s: &FinitePoset, k: usize) -> Layering {
    s.dickson_layers(k)
}

pub fn downset(s: &Point, poset: &FinitePoset) -> Result<Vec<Point>> {
    poset.downset(s)
}

pub fn filter_by_downset(s: &FinitePoset, k: usize) -> Vec<Point> {
    s.filter_by_downset(k)
}

/// Rejects mixed dimensions before a poset is built from raw input.
pub fn check_uniform(points: &[Point]) -> Result<usize> {
    let n = points.first().ok_or(Error::EmptyPointSet)?.dim();
    for p in points {
        p.check_dim(n)?;
    }
    Ok(n)
}
