use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::modes::FockVertex;
use super::state::{translation, FockState, Monomial};

/// Per-weight subspace of the Fock space up to `max_weight`, each layer held
/// in reduced echelon form keyed by pivot monomial (the largest monomial of
/// each row). Two spans are equal iff their layers are identical.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSubspace {
    max_weight: usize,
    layers: BTreeMap<usize, BTreeMap<Monomial, FockState>>,
}

impl GradedSubspace {
    pub fn new(max_weight: usize) -> Self {
        GradedSubspace {
            max_weight,
            layers: BTreeMap::new(),
        }
    }

    /// Span of the homogeneous components of `states` up to `max_weight`.
    pub fn spanned_by<'a>(max_weight: usize, states: impl IntoIterator<Item = &'a FockState>) -> Self {
        let mut s = GradedSubspace::new(max_weight);
        for st in states {
            s.insert(st);
        }
        s
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    fn reduce(&self, w: usize, v: &FockState) -> FockState {
        let mut v = v.clone();
        if let Some(layer) = self.layers.get(&w) {
            for (pivot, row) in layer.iter().rev() {
                let c = v.coeff(pivot);
                if !c.is_zero() {
                    v.add_scaled(row, &-c);
                }
            }
        }
        v
    }

    /// Adds the homogeneous components of `state`; returns whether the span grew.
    pub fn insert(&mut self, state: &FockState) -> bool {
        let Some((lo, hi)) = state.weight_range() else {
            return false;
        };
        let mut grew = false;
        for w in lo..=hi.min(self.max_weight) {
            let comp = state.component(w);
            if comp.is_zero() {
                continue;
            }
            let r = self.reduce(w, &comp);
            let Some((pivot, lead)) = r.terms().last().map(|(m, c)| (m.clone(), c.clone())) else {
                continue;
            };
            let row = r.scale(&lead.recip());
            let layer = self.layers.entry(w).or_default();
            for other in layer.values_mut() {
                let c = other.coeff(&pivot);
                if !c.is_zero() {
                    other.add_scaled(&row, &-c);
                }
            }
            layer.insert(pivot, row);
            grew = true;
        }
        grew
    }

    pub fn contains(&self, state: &FockState) -> bool {
        let Some((lo, hi)) = state.weight_range() else {
            return true;
        };
        hi <= self.max_weight && (lo..=hi).all(|w| self.reduce(w, &state.component(w)).is_zero())
    }

    pub fn dim(&self, w: usize) -> usize {
        self.layers.get(&w).map_or(0, BTreeMap::len)
    }

    /// `(weight, dimension)` for every nonzero layer.
    pub fn dims(&self) -> Vec<(usize, usize)> {
        self.layers.iter().map(|(w, l)| (*w, l.len())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn vectors(&self, w: usize) -> Vec<FockState> {
        self.layers.get(&w).map_or_else(Vec::new, |l| l.values().cloned().collect())
    }

    /// All spanning vectors, by increasing weight.
    pub fn all_vectors(&self) -> Vec<FockState> {
        self.layers.values().flat_map(|l| l.values().cloned()).collect()
    }

    /// Layers of weight `≤ w` only.
    pub fn restrict(&self, w: usize) -> GradedSubspace {
        GradedSubspace {
            max_weight: w.min(self.max_weight),
            layers: self.layers.range(..=w).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// A spanning vector of `other` missing from `self`, if any.
    pub fn missing_from(&self, other: &GradedSubspace) -> Option<FockState> {
        other.all_vectors().into_iter().find(|v| !self.contains(v))
    }
}

/// Weight-wise span of `a_(j) b` over spanning vectors `a ∈ A`, `b ∈ B` and
/// every `j` that lands in weights `0..=W`.
pub fn subspace_product(v: &FockVertex, a: &GradedSubspace, b: &GradedSubspace) -> GradedSubspace {
    let w = v.cutoff().weight;
    let avs = a.all_vectors();
    let bvs = b.all_vectors();
    let pairs: Vec<(&FockState, &FockState)> =
        avs.iter().flat_map(|x| bvs.iter().map(move |y| (x, y))).collect();
    let products: Vec<Vec<FockState>> = pairs
        .par_iter()
        .map(|(x, y)| {
            let total = (x.max_weight() + y.max_weight()) as i64;
            ((total - 1 - w as i64)..total)
                .map(|j| v.mode(x, j, y).truncate(w))
                .filter(|s| !s.is_zero())
                .collect()
        })
        .collect();
    let mut out = GradedSubspace::new(w);
    for p in products.iter().flatten() {
        out.insert(p);
    }
    out
}

/// Span of `T^k g` for the given states, up to `max_weight`.
pub fn translation_closure(states: &[FockState], max_weight: usize) -> GradedSubspace {
    let mut out = GradedSubspace::new(max_weight);
    for g in states {
        let mut t = g.truncate(max_weight);
        while !t.is_zero() {
            out.insert(&t);
            t = translation(&t).truncate(max_weight);
        }
    }
    out
}
