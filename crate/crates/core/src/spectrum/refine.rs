//! Finite-depth covers of the attractor of `{T_m : m ∈ digits}`.

use crate::error::{Error, Result};
use crate::exact::{AffineMap, Interval};

/// `⋃ T_{i_1} ∘ ⋯ ∘ T_{i_depth}(base)` as sorted disjoint intervals.
pub fn attractor_refine(digits: &[u32], base: &Interval, depth: usize) -> Result<Vec<Interval>> {
    if digits.is_empty() {
        return Err(Error::input("digit set is empty"));
    }
    if depth == 0 {
        return Err(Error::input("depth must be at least 1"));
    }
    let maps = digits.iter().map(|&m| AffineMap::digit(m)).collect::<Result<Vec<_>>>()?;
    for (m, map) in digits.iter().zip(&maps) {
        let image = map.map_interval(base);
        if !image.is_subset_of(base) {
            return Err(Error::input(format!("T_{m}({base}) = {image} leaves the base interval")));
        }
    }
    let mut level = vec![base.clone()];
    for _ in 0..depth {
        let images = maps
            .iter()
            .flat_map(|map| level.iter().map(move |piece| map.map_interval(piece)))
            .collect();
        level = Interval::merge_all(images);
    }
    Ok(level)
}
