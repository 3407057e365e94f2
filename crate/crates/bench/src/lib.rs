//! Shared inputs for the benchmarks.

use plabic_core::{Budget, GrassmannNecklace, WSCollection};

/// The uniform necklace of rank `k` on `[n]`.
pub fn uniform(n: usize, k: usize) -> GrassmannNecklace {
    GrassmannNecklace::uniform(n, k).expect("valid uniform parameters")
}

/// A maximal collection of the uniform positroid, found greedily.
pub fn maximal(n: usize, k: usize) -> WSCollection {
    WSCollection::from_necklace(&uniform(n, k))
        .extend_to_maximal(&Budget::default())
        .expect("greedy extension fits the default budget")
}

#[cfg(test)]
mod tests {
    #[test]
    fn maximal_has_the_expected_size() {
        for (n, k) in [(6, 3), (8, 4)] {
            assert_eq!(super::maximal(n, k).len(), k * (n - k) + 1);
        }
    }
}
