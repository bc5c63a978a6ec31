//! Broad-phase spatial hash over axis-aligned boxes. Buckets are keyed by a
//! mixed integer-cell hash; key collisions only ever add candidates, never
//! hide them, so queries are conservative and callers filter by true distance.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::mathx;

#[derive(Debug, Clone)]
pub struct SpatialHash {
    cell: f64,
    dim: usize,
    buckets: BTreeMap<u64, Vec<u32>>,
    boxes: Vec<(Vec<f64>, Vec<f64>)>,
}

fn mix(key: u64, coord: i64) -> u64 {
    let mut h = key ^ (coord as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    h ^= h >> 29;
    h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h ^ (h >> 32)
}

impl SpatialHash {
    pub fn new(cell: f64, dim: usize, capacity: usize) -> Self {
        assert!(cell > 0.0 && cell.is_finite());
        SpatialHash { cell, dim, buckets: BTreeMap::new(), boxes: Vec::with_capacity(capacity) }
    }

    pub fn cell(&self) -> f64 {
        self.cell
    }

    fn cell_index(&self, x: f64) -> i64 {
        mathx::floor(x / self.cell) as i64
    }

    fn for_each_cell(&self, lo: &[f64], hi: &[f64], mut f: impl FnMut(u64)) {
        let ranges: Vec<(i64, i64)> = (0..self.dim)
            .map(|i| (self.cell_index(lo[i]), self.cell_index(hi[i])))
            .collect();
        let mut idx: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            let mut key = 0xcbf2_9ce4_8422_2325u64;
            for &c in &idx {
                key = mix(key, c);
            }
            f(key);
            let mut carry = 0;
            while carry < self.dim {
                idx[carry] += 1;
                if idx[carry] <= ranges[carry].1 {
                    break;
                }
                idx[carry] = ranges[carry].0;
                carry += 1;
            }
            if carry == self.dim {
                break;
            }
        }
    }

    /// Registers `id` with the given box. Ids must be registered in order
    /// (`id == number of prior inserts`) the first time.
    pub fn insert(&mut self, id: u32, lo: Vec<f64>, hi: Vec<f64>) {
        debug_assert_eq!(lo.len(), self.dim);
        if (id as usize) == self.boxes.len() {
            self.boxes.push((lo, hi));
        } else {
            self.boxes[id as usize] = (lo, hi);
        }
        let (lo, hi) = self.boxes[id as usize].clone();
        let mut keys = Vec::new();
        self.for_each_cell(&lo, &hi, |key| keys.push(key));
        for key in keys {
            self.buckets.entry(key).or_default().push(id);
        }
    }

    pub fn remove(&mut self, id: u32) {
        let (lo, hi) = self.boxes[id as usize].clone();
        let mut keys = Vec::new();
        self.for_each_cell(&lo, &hi, |key| keys.push(key));
        for key in keys {
            if let Some(b) = self.buckets.get_mut(&key) {
                b.retain(|&x| x != id);
            }
        }
    }

    /// Relocates `id` to a new box.
    pub fn update(&mut self, id: u32, lo: Vec<f64>, hi: Vec<f64>) {
        self.remove(id);
        self.insert(id, lo, hi);
    }

    /// Ids whose registered box may lie within `margin` of the query box.
    /// Sorted and deduplicated; conservative (may contain farther ids).
    pub fn query(&self, lo: &[f64], hi: &[f64], margin: f64) -> Vec<u32> {
        let qlo: Vec<f64> = lo.iter().map(|x| x - margin).collect();
        let qhi: Vec<f64> = hi.iter().map(|x| x + margin).collect();
        let mut out = Vec::new();
        self.for_each_cell(&qlo, &qhi, |key| {
            if let Some(b) = self.buckets.get(&key) {
                out.extend_from_slice(b);
            }
        });
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Gap between two axis-aligned boxes (0 when they overlap). A lower bound
/// for the distance between any contents.
pub fn box_gap(alo: &[f64], ahi: &[f64], blo: &[f64], bhi: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..alo.len() {
        let g = (blo[i] - ahi[i]).max(alo[i] - bhi[i]).max(0.0);
        s += g * g;
    }
    mathx::sqrt(s)
}

/// Axis-aligned bounding box of a point tuple.
pub fn bounding_box(points: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n = points[0].len();
    let mut lo = points[0].clone();
    let mut hi = points[0].clone();
    for p in &points[1..] {
        for i in 0..n {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn query_finds_nearby_boxes() {
        let mut h = SpatialHash::new(1.0, 2, 4);
        h.insert(0, vec![0.0, 0.0], vec![1.0, 1.0]);
        h.insert(1, vec![5.0, 5.0], vec![6.0, 6.0]);
        let near = h.query(&[0.5, 0.5], &[0.6, 0.6], 0.5);
        assert!(near.contains(&0));
        assert!(!near.contains(&1));
        let far = h.query(&[4.0, 4.0], &[4.5, 4.5], 1.5);
        assert!(far.contains(&1));
    }

    #[test]
    fn update_moves_entries() {
        let mut h = SpatialHash::new(1.0, 2, 1);
        h.insert(0, vec![0.0, 0.0], vec![0.1, 0.1]);
        h.update(0, vec![9.0, 9.0], vec![9.1, 9.1]);
        assert!(h.query(&[0.0, 0.0], &[0.2, 0.2], 0.5).is_empty());
        assert!(h.query(&[9.0, 9.0], &[9.0, 9.0], 0.5).contains(&0));
    }

    #[test]
    fn box_gap_values() {
        assert_eq!(box_gap(&[0.0], &[1.0], &[2.0], &[3.0]), 1.0);
        assert_eq!(box_gap(&[0.0], &[2.5], &[2.0], &[3.0]), 0.0);
        let g = box_gap(&[0.0, 0.0], &[1.0, 1.0], &[2.0, 2.0], &[3.0, 3.0]);
        assert!((g - core::f64::consts::SQRT_2).abs() < 1e-12);
    }
}
