//! Static kd-tree for k-nearest-neighbor queries under the Chebyshev
//! (max-coordinate) metric.
//!
//! The entropy estimator needs, for every point, the distance to its k-th
//! nearest neighbor with the point itself excluded. A median-split kd-tree
//! over the row-major point buffer answers each query in roughly O(log N)
//! for the low-dimensional sets used here, against O(N) for a linear scan.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Chebyshev (L-infinity) distance between two points.
pub fn chebyshev(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[derive(PartialEq)]
struct HeapDist(f64);

impl Eq for HeapDist {}

impl PartialOrd for HeapDist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapDist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// kd-tree over borrowed points; `order` holds a median-partitioned
/// permutation of point indices. The subtree of a range is rooted at its
/// midpoint, with the halves as children, so no explicit node structs are
/// needed.
pub struct KdTree<'a> {
    points: &'a [f64],
    dim: usize,
    order: Vec<u32>,
}

impl<'a> KdTree<'a> {
    /// Build over `n = points.len() / dim` points stored row-major.
    pub fn build(points: &'a [f64], dim: usize) -> Self {
        assert!(dim > 0 && points.len().is_multiple_of(dim));
        let n = points.len() / dim;
        let mut order: Vec<u32> = (0..n as u32).collect();
        build_range(points, dim, &mut order, 0);
        KdTree { points, dim, order }
    }

    fn point(&self, idx: u32) -> &[f64] {
        let i = idx as usize * self.dim;
        &self.points[i..i + self.dim]
    }

    /// Chebyshev distance from `query` to its k-th nearest neighbor,
    /// excluding the point with index `skip` (pass `u32::MAX` to keep all).
    ///
    /// Panics if fewer than k candidate points exist.
    pub fn kth_distance(&self, query: &[f64], skip: u32, k: usize) -> f64 {
        debug_assert_eq!(query.len(), self.dim);
        // max-heap of the k smallest distances seen so far
        let mut best: BinaryHeap<HeapDist> = BinaryHeap::with_capacity(k + 1);
        self.search(&self.order, 0, query, skip, k, &mut best);
        assert_eq!(best.len(), k, "not enough neighbors for k={k}");
        best.peek().expect("k >= 1").0
    }

    fn search(
        &self,
        range: &[u32],
        depth: usize,
        query: &[f64],
        skip: u32,
        k: usize,
        best: &mut BinaryHeap<HeapDist>,
    ) {
        if range.is_empty() {
            return;
        }
        let mid = range.len() / 2;
        let node = range[mid];
        if node != skip {
            let d = chebyshev(query, self.point(node));
            if best.len() < k {
                best.push(HeapDist(d));
            } else if d < best.peek().expect("non-empty").0 {
                best.pop();
                best.push(HeapDist(d));
            }
        }
        if range.len() == 1 {
            return;
        }
        let axis = depth % self.dim;
        let delta = query[axis] - self.point(node)[axis];
        let (near, far) = if delta < 0.0 {
            (&range[..mid], &range[mid + 1..])
        } else {
            (&range[mid + 1..], &range[..mid])
        };
        self.search(near, depth + 1, query, skip, k, best);
        // the splitting plane lower-bounds the Chebyshev distance to the far side
        if best.len() < k || delta.abs() < best.peek().expect("non-empty").0 {
            self.search(far, depth + 1, query, skip, k, best);
        }
    }
}

fn build_range(points: &[f64], dim: usize, order: &mut [u32], depth: usize) {
    if order.len() <= 1 {
        return;
    }
    let axis = depth % dim;
    let mid = order.len() / 2;
    order.select_nth_unstable_by(mid, |&a, &b| {
        points[a as usize * dim + axis].total_cmp(&points[b as usize * dim + axis])
    });
    let (left, rest) = order.split_at_mut(mid);
    build_range(points, dim, left, depth + 1);
    build_range(points, dim, &mut rest[1..], depth + 1);
}
