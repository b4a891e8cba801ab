#include "pbsurf/setcover.hpp"

#include <algorithm>
#include <stdexcept>

namespace pbsurf {

namespace {

// Distinct coverage patterns only; duplicates never change the optimum.
std::vector<std::uint32_t> unique_masks(std::vector<std::uint32_t> masks) {
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  // Drop patterns that are supersets of another pattern: covering the
  // subset pattern covers them for free.
  std::vector<std::uint32_t> core;
  for (std::uint32_t m : masks) {
    bool dominated = false;
    for (std::uint32_t o : core)
      if ((o & m) == o) { dominated = true; break; }
    if (!dominated) core.push_back(m);
  }
  return core;
}

struct Search {
  const std::vector<std::uint32_t>& elems;
  int n_sets;
  std::vector<std::uint32_t> suffix_union;  // union of set bits with index >= i
  std::vector<int> chosen;

  bool covers(std::uint32_t picked) const {
    for (std::uint32_t m : elems)
      if ((m & picked) == 0) return false;
    return true;
  }

  bool dfs(int next, int remaining, std::uint32_t picked) {
    if (covers(picked)) return true;
    if (remaining == 0 || next >= n_sets) return false;
    // Some element must still be coverable by the remaining suffix.
    for (std::uint32_t m : elems)
      if ((m & picked) == 0 && (m & suffix_union[next]) == 0) return false;
    for (int i = next; i <= n_sets - 1; ++i) {
      chosen.push_back(i);
      if (dfs(i + 1, remaining - 1, picked | (1u << i))) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

std::vector<int> min_set_cover(const std::vector<std::uint32_t>& element_masks, int n_sets) {
  if (n_sets < 1 || n_sets > 24)
    throw std::invalid_argument("min_set_cover: set count must be in [1, 24]");
  for (std::uint32_t m : element_masks)
    if (m == 0) throw std::invalid_argument("min_set_cover: element covered by no set");

  Search s{unique_masks(element_masks), n_sets, {}, {}};
  if (s.elems.empty()) return {};  // empty universe: empty subcover
  s.suffix_union.assign(n_sets + 1, 0);
  for (int i = n_sets - 1; i >= 0; --i) s.suffix_union[i] = s.suffix_union[i + 1] | (1u << i);

  for (int k = 1; k <= n_sets; ++k) {
    s.chosen.clear();
    if (s.dfs(0, k, 0)) return s.chosen;
  }
  throw std::logic_error("min_set_cover: unreachable");  // masks nonzero => full family covers
}

}  // namespace pbsurf
