//! Enumeration of the non-empty sub-patterns of a pattern.

use crate::transactions::Pattern;

/// Upper bound on any enumeration cap; subsets are indexed by `u64` masks.
pub const HARD_CAP: usize = 32;

/// Default number of items a pattern may have before sub-pattern enumeration
/// is refused (65535 non-empty subsets).
pub const DEFAULT_CAP: usize = 16;

/// Masks of every non-empty subset of `k` positions, ordered by size and then
/// lexicographically by position: for `k = 3` the order is
/// `{0} {1} {2} {0,1} {0,2} {1,2} {0,1,2}`.
pub fn levelwise_masks(k: usize) -> Vec<u64> {
    assert!(k <= HARD_CAP, "refusing to enumerate 2^{k} subsets");
    let mut out = Vec::with_capacity((1usize << k) - 1);
    for size in 1..=k {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            out.push(combo.iter().fold(0u64, |m, &i| m | (1u64 << i)));
            // Advance to the next combination in lexicographic order.
            let Some(pos) = (0..size).rev().find(|&i| combo[i] != i + k - size) else {
                break;
            };
            combo[pos] += 1;
            for j in pos + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    out
}

/// Non-empty subsets of `x` in levelwise order over its (ascending) items.
pub fn nonempty_subsets(x: &Pattern) -> Vec<Pattern> {
    levelwise_masks(x.len()).into_iter().map(|m| x.subset_by_mask(m)).collect()
}
