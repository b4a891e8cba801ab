#pragma once

#include <cstdint>
#include <vector>

namespace pbsurf {

/// Exact minimum set cover over coverage patterns.
///
/// Input: for every universe element, the bitmask (over at most 24 sets) of
/// the sets containing it. Returns the lexicographically smallest subcover
/// of minimum cardinality, as set indices in ascending order.
///
/// Iterative-deepening DFS that includes lower-indexed sets first, pruned by
/// suffix coverage; exact by construction. Throws std::invalid_argument if
/// some element has an empty mask (not a cover) or n_sets > 24.
std::vector<int> min_set_cover(const std::vector<std::uint32_t>& element_masks, int n_sets);

}  // namespace pbsurf
