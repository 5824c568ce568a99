//! The catalog of finite chain products up to a size bound.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::finite::FiniteAlgebra;
use crate::symbolic::{Block, SymbolicAlgebra};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// Chain heights, descending.
    pub heights: Vec<u32>,
    pub symbolic: SymbolicAlgebra,
    pub finite: Arc<FiniteAlgebra>,
}

impl CatalogEntry {
    pub fn size(&self) -> usize {
        self.finite.size()
    }

    pub fn name(&self) -> String {
        self.symbolic.to_string()
    }
}

/// Serializable summary of one catalog entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub name: String,
    pub size: usize,
    pub heights: Vec<u32>,
}

impl From<&CatalogEntry> for CatalogRecord {
    fn from(e: &CatalogEntry) -> Self {
        CatalogRecord { name: e.name(), size: e.size(), heights: e.heights.clone() }
    }
}

/// Height multisets (descending) whose product of `m + 1` is at most `max_size`.
pub fn height_lists(max_size: usize) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, max_height: u32, budget: usize, out: &mut Vec<Vec<u32>>) {
        out.push(prefix.clone());
        for m in (1..=max_height).rev() {
            let factor = m as usize + 1;
            if factor <= budget {
                prefix.push(m);
                extend(prefix, m, budget / factor, out);
                prefix.pop();
            }
        }
    }
    if max_size == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), max_size.saturating_sub(1) as u32, max_size, &mut out);
    out.sort_by_key(|h| (h.iter().map(|&m| m as usize + 1).product::<usize>(), std::cmp::Reverse(h.clone())));
    out
}

/// Every chain product with at most `max_size` elements, by size.
pub fn catalog(max_size: usize) -> Vec<CatalogEntry> {
    height_lists(max_size)
        .into_iter()
        .map(|heights| {
            let symbolic = SymbolicAlgebra::new(heights.iter().map(|&m| Block::Chain(m)).collect())
                .expect("chains are valid");
            let finite = Arc::new(symbolic.to_finite().expect("chain products are finite"));
            CatalogEntry { heights, symbolic, finite }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_catalog_contents() {
        let names: Vec<String> = catalog(6).iter().map(CatalogEntry::name).collect();
        assert_eq!(
            names,
            vec![
                "Chain(0)",
                "Chain(1)",
                "Chain(2)",
                "Chain(3)",
                "Chain(1) x Chain(1)",
                "Chain(4)",
                "Chain(5)",
                "Chain(2) x Chain(1)"
            ]
        );
    }

    #[test]
    fn sizes_respect_the_bound() {
        let c = catalog(60);
        assert!(c.iter().all(|e| e.size() <= 60));
        assert_eq!(c.iter().filter(|e| e.size() == 8).count(), 3);
        assert_eq!(c.iter().filter(|e| e.size() == 16).count(), 5);
    }
}
