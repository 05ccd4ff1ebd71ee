//! Weighted node selection for the growth processes.
//!
//! Attachment weights only depend on degree through `k + a` (for `k >= 1`) and
//! `b` (for `k = 0`), so the weight of any set of nodes is
//! `sum(k) + a * #{k >= 1} + b * #{k = 0}`. A Fenwick tree over those three
//! integer aggregates gives exact prefix weights in `O(log n)` without
//! floating-point drift across updates.

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::params::ModelParams;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Agg {
    degree_sum: i64,
    positive: i64,
    zero: i64,
}

impl Agg {
    fn of(degree: u64) -> Self {
        if degree == 0 {
            Agg {
                degree_sum: 0,
                positive: 0,
                zero: 1,
            }
        } else {
            Agg {
                degree_sum: degree as i64,
                positive: 1,
                zero: 0,
            }
        }
    }

    fn add(self, o: Agg) -> Agg {
        Agg {
            degree_sum: self.degree_sum + o.degree_sum,
            positive: self.positive + o.positive,
            zero: self.zero + o.zero,
        }
    }

    fn sub(self, o: Agg) -> Agg {
        Agg {
            degree_sum: self.degree_sum - o.degree_sum,
            positive: self.positive - o.positive,
            zero: self.zero - o.zero,
        }
    }

    fn weight(self, a: f64, b: f64) -> f64 {
        self.degree_sum as f64 + a * self.positive as f64 + b * self.zero as f64
    }

    fn nodes(self) -> i64 {
        self.positive + self.zero
    }
}

/// Fenwick tree of attachment weights over a growing set of nodes, with
/// support for temporarily excluding nodes (sampling without replacement).
#[derive(Clone, Debug)]
pub struct AttachmentTree {
    a: f64,
    b: f64,
    tree: Vec<Agg>,
    degree: Vec<u64>,
    active: Vec<bool>,
}

impl AttachmentTree {
    pub fn new(params: &ModelParams) -> Self {
        Self::with_weights(params.a, params.b)
    }

    fn with_weights(a: f64, b: f64) -> Self {
        AttachmentTree {
            a,
            b,
            tree: vec![Agg::default()],
            degree: Vec::new(),
            active: Vec::new(),
        }
    }

    pub fn from_degrees(params: &ModelParams, degrees: &[u64]) -> Self {
        let mut t = Self::new(params);
        for &k in degrees {
            t.push(k);
        }
        t
    }

    pub fn len(&self) -> usize {
        self.degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degree.is_empty()
    }

    fn prefix(&self, mut i: usize) -> Agg {
        let mut acc = Agg::default();
        while i > 0 {
            acc = acc.add(self.tree[i]);
            i &= i - 1;
        }
        acc
    }

    fn update(&mut self, idx: usize, delta_add: Agg, delta_sub: Agg) {
        let mut i = idx + 1;
        while i < self.tree.len() {
            self.tree[i] = self.tree[i].add(delta_add).sub(delta_sub);
            i += i & i.wrapping_neg();
        }
    }

    pub fn push(&mut self, degree: u64) {
        let i = self.tree.len();
        let low = i & i.wrapping_neg();
        let node = self
            .prefix(i - 1)
            .sub(self.prefix(i - low))
            .add(Agg::of(degree));
        self.tree.push(node);
        self.degree.push(degree);
        self.active.push(true);
    }

    pub fn degree(&self, idx: usize) -> u64 {
        self.degree[idx]
    }

    pub fn set_degree(&mut self, idx: usize, degree: u64) {
        let old = self.degree[idx];
        if old == degree {
            return;
        }
        self.degree[idx] = degree;
        if self.active[idx] {
            self.update(idx, Agg::of(degree), Agg::of(old));
        }
    }

    /// Excludes a node from sampling until [`activate`](Self::activate).
    pub fn deactivate(&mut self, idx: usize) {
        if self.active[idx] {
            self.active[idx] = false;
            self.update(idx, Agg::default(), Agg::of(self.degree[idx]));
        }
    }

    pub fn activate(&mut self, idx: usize) {
        if !self.active[idx] {
            self.active[idx] = true;
            self.update(idx, Agg::of(self.degree[idx]), Agg::default());
        }
    }

    pub fn weight(&self, idx: usize) -> f64 {
        if self.active[idx] {
            Agg::of(self.degree[idx]).weight(self.a, self.b)
        } else {
            0.0
        }
    }

    /// Total attachment weight of the active nodes.
    pub fn total_weight(&self) -> f64 {
        self.prefix(self.len()).weight(self.a, self.b)
    }

    pub fn active_count(&self) -> usize {
        self.prefix(self.len()).nodes() as usize
    }

    /// First index whose running `measure` exceeds `target`.
    fn descend(&self, target: f64, measure: impl Fn(Agg) -> f64) -> usize {
        let n = self.len();
        let mut step = n.next_power_of_two();
        let mut pos = 0;
        let mut acc = Agg::default();
        while step > 0 {
            let next = pos + step;
            if next <= n {
                let cand = acc.add(self.tree[next]);
                if measure(cand) <= target {
                    pos = next;
                    acc = cand;
                }
            }
            step >>= 1;
        }
        pos
    }

    /// Draws an active node with probability proportional to its weight. When
    /// every active node has zero weight the draw is uniform over the active
    /// nodes. Returns `None` only if no node is active.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<usize> {
        let total = self.total_weight();
        if total > 0.0 {
            loop {
                let u = rng.random::<f64>() * total;
                let idx = self.descend(u, |agg| agg.weight(self.a, self.b));
                // Rounding can land on an empty slot at a boundary; redraw.
                if idx < self.len() && self.weight(idx) > 0.0 {
                    return Some(idx);
                }
            }
        }
        let active = self.active_count();
        if active == 0 {
            return None;
        }
        let r = rng.random_range(0..active) as f64;
        Some(self.descend(r, |agg| agg.nodes() as f64))
    }
}

/// Exact Poisson variate by sequential-search inversion for `mean <= 30`;
/// larger means defer to `rand_distr`.
pub fn poisson<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    debug_assert!(mean >= 0.0);
    if mean == 0.0 {
        return 0;
    }
    if mean > 30.0 {
        let d = Poisson::new(mean).expect("finite positive mean");
        return d.sample(rng) as u64;
    }
    let u: f64 = rng.random();
    let mut x = 0u64;
    let mut p = (-mean).exp();
    let mut cdf = p;
    while u >= cdf {
        x += 1;
        p *= mean / x as f64;
        if p == 0.0 {
            break;
        }
        cdf += p;
    }
    x
}
