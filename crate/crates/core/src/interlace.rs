//! Enumeration of tuples lying in a product of closed intervals.
//!
//! Every branching rule used here (`Spin(m) ↓ Spin(m−1)`, the `P`-restrictions
//! of principal, complementary and discrete series) is an interlacing chain, and
//! each chain fixes the admissible range of every coordinate independently of
//! the others. So the solution set is a box intersected with a parity class.

use crate::halfint::HalfInt;
use crate::weight::{Parity, WeightVector};

/// All tuples `c` in the given parity class with `lo_i ≤ c_i ≤ hi_i`, in
/// lexicographic order. Empty when any interval is empty or `bounds` is empty.
pub fn interval_product(bounds: &[(HalfInt, HalfInt)], class: Parity) -> Vec<WeightVector> {
    let base = class.base();
    let ranges: Vec<(HalfInt, HalfInt)> = bounds
        .iter()
        .map(|&(lo, hi)| (HalfInt::ceil_in_class(lo, base), HalfInt::floor_in_class(hi, base)))
        .collect();
    if ranges.is_empty() || ranges.iter().any(|(lo, hi)| lo > hi) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current: Vec<HalfInt> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.push(WeightVector::from_coords_unchecked(current.clone()));
        // odometer increment, last coordinate fastest
        let mut pos = current.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if current[pos] < ranges[pos].1 {
                current[pos] += HalfInt::ONE;
                for (j, slot) in current.iter_mut().enumerate().skip(pos + 1) {
                    *slot = ranges[j].0;
                }
                break;
            }
        }
    }
}
