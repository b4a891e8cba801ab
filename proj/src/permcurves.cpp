#include "pbsurf/permcurves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "pbsurf/parallel.hpp"
#include "pbsurf/pbcalc.hpp"
#include "pbsurf/rng.hpp"

namespace pbsurf {

IntervalGrid make_interval_grid(const PartitionOfUnity& p, int L) {
  if (L < 1) throw std::invalid_argument("make_interval_grid: L must be positive");
  IntervalGrid g;
  g.partition = &p;
  g.L = L;
  for (int i = 0; i < p.size(); ++i) {
    const double mx = p.fields[i].max_value();
    int m = static_cast<int>(std::floor(L * mx)) + 1;
    if (!(m / static_cast<double>(L) > mx)) ++m;  // boundary case f_max = m/L
    g.m.push_back(m);
  }
  return g;
}

std::vector<std::vector<double>> sample_thresholds(const IntervalGrid& grid, std::uint64_t seed) {
  const PartitionOfUnity& p = *grid.partition;
  Rng rng = derive_rng(seed, 1);
  std::vector<std::vector<double>> s(p.size());
  for (int i = 0; i < p.size(); ++i) {
    std::vector<double> sorted = p.fields[i].values;
    std::sort(sorted.begin(), sorted.end());
    auto regular = [&](double x) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
      if (it != sorted.end() && std::abs(*it - x) < 1e-9) return false;
      if (it != sorted.begin() && std::abs(*(it - 1) - x) < 1e-9) return false;
      return true;
    };
    s[i].resize(grid.m[i]);
    for (int k = 1; k <= grid.m[i]; ++k) {
      const double lo = (k - 1) / static_cast<double>(grid.L);
      const double hi = k / static_cast<double>(grid.L);
      double x = rng.uniform(lo, hi);
      int guard = 0;
      while (!regular(x)) {
        x = rng.uniform(lo, hi);
        if (++guard > 256) throw DegeneracyError("sample_thresholds: rejection stuck");
      }
      s[i][k - 1] = x;
    }
  }
  return s;
}

Cover levelset_cover(const PartitionOfUnity& p, const IntervalGrid& grid,
                     const std::vector<std::vector<double>>& thresholds) {
  const Mesh& mesh = *p.mesh;
  Cover c;
  c.mesh = &mesh;
  for (int i = 0; i < p.size(); ++i)
    for (int k = 1; k <= grid.m[i]; ++k) {
      CoverSet set;
      set.name = "U" + std::to_string(i + 1) + "_" + std::to_string(k);
      set.region = superlevel_region(p.fields[i], thresholds[i][k - 1]);
      set.defining_field = p.fields[i];
      set.threshold = thresholds[i][k - 1];
      c.sets.push_back(std::move(set));
    }
  if (!is_cover(c))
    throw std::runtime_error("levelset_cover: triangle regions fail to cover (mesh too coarse for L=" +
                             std::to_string(grid.L) + ")");
  return c;
}

std::vector<CurveSegment> PermCurveSet::all_segments() const {
  std::vector<CurveSegment> out;
  for (const auto& p : pieces) out.insert(out.end(), p.begin(), p.end());
  return out;
}

bool PermCurveSet::empty() const {
  for (const auto& p : pieces)
    if (!p.empty()) return false;
  return true;
}

namespace {

double eval_at_bary(const ScalarField& f, int tri, const Vec2& b) {
  return f.eval_bary(tri, 1.0 - b.x - b.y, b.x, b.y);
}

}  // namespace

PermCurveSet gamma_curves(const Cover& c, const std::vector<int>& perm) {
  const Mesh& mesh = *c.mesh;
  PermCurveSet out;
  out.mesh = &mesh;
  out.perm = perm;
  out.pieces.resize(perm.size());

  for (size_t pos = 0; pos < perm.size(); ++pos) {
    const CoverSet& set = c.sets[perm[pos]];
    if (!set.defining_field)
      throw std::invalid_argument("gamma_curves: set '" + set.name + "' has no defining field");
    std::vector<CurveSegment> kept = level_curve(*set.defining_field, set.threshold).segments();
    // Clip to { f_alpha(j) <= s_alpha(j) } for every earlier position j.
    for (size_t j = 0; j < pos && !kept.empty(); ++j) {
      const CoverSet& prev = c.sets[perm[j]];
      const ScalarField& g = *prev.defining_field;
      std::vector<CurveSegment> next;
      next.reserve(kept.size());
      for (const auto& seg : kept) {
        const double pa = eval_at_bary(g, seg.tri, seg.a) - prev.threshold;
        const double pb = eval_at_bary(g, seg.tri, seg.b) - prev.threshold;
        if (pa <= 0 && pb <= 0) {
          next.push_back(seg);
        } else if (pa > 0 && pb > 0) {
          // dropped entirely
        } else {
          const double tau = pa / (pa - pb);
          const Vec2 mid = seg.a + (seg.b - seg.a) * tau;
          if (pa <= 0)
            next.push_back({seg.tri, seg.a, mid});
          else
            next.push_back({seg.tri, mid, seg.b});
        }
      }
      kept = std::move(next);
    }
    out.pieces[pos] = std::move(kept);
  }
  return out;
}

long long curve_intersection_count(const PermCurveSet& a, const PermCurveSet& b) {
  return count_segment_crossings(a.all_segments(), b.all_segments());
}

namespace {

struct BoundaryFamily {
  // One segment list per (field, level), flattened.
  std::vector<std::vector<CurveSegment>> curves;
  std::vector<std::unordered_map<int, std::vector<int>>> by_tri;

  void build(const PartitionOfUnity& p, const IntervalGrid& grid,
             const std::vector<std::vector<double>>& thresholds) {
    for (int i = 0; i < p.size(); ++i)
      for (int k = 0; k < grid.m[i]; ++k)
        curves.push_back(level_curve(p.fields[i], thresholds[i][k]).segments());
    by_tri.resize(curves.size());
    for (size_t c = 0; c < curves.size(); ++c)
      for (int s = 0; s < static_cast<int>(curves[c].size()); ++s)
        by_tri[c][curves[c][s].tri].push_back(s);
  }
};

long long crossings_between(const BoundaryFamily& A, const BoundaryFamily& B) {
  const int na = static_cast<int>(A.curves.size());
  const int nb = static_cast<int>(B.curves.size());
  std::vector<long long> counts(static_cast<size_t>(na) * nb, 0);
  std::vector<std::uint8_t> degenerate(static_cast<size_t>(na) * nb, 0);
  PBSURF_PARALLEL_FOR_DYNAMIC
  for (int ia = 0; ia < na; ++ia) {
    for (int ib = 0; ib < nb; ++ib) {
      long long cnt = 0;
      try {
        for (const auto& sa : A.curves[ia]) {
          auto it = B.by_tri[ib].find(sa.tri);
          if (it == B.by_tri[ib].end()) continue;
          for (int sidx : it->second)
            if (segments_cross(sa.a, sa.b, B.curves[ib][sidx].a, B.curves[ib][sidx].b)) ++cnt;
        }
      } catch (const DegeneracyError&) {
        degenerate[static_cast<size_t>(ia) * nb + ib] = 1;
        continue;
      }
      counts[static_cast<size_t>(ia) * nb + ib] = cnt;
    }
  }
  for (auto d : degenerate)
    if (d) throw DegeneracyError("boundary families in degenerate position");
  long long total = 0;
  for (long long c : counts) total += c;
  return total;
}

int min_vertex_multiplicity(const PartitionOfUnity& p, const std::vector<std::vector<double>>& s) {
  const Mesh& mesh = *p.mesh;
  int best = std::numeric_limits<int>::max();
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    int count = 0;
    for (int i = 0; i < p.size(); ++i)
      for (double thr : s[i])
        if (p.fields[i][v] > thr) ++count;
    best = std::min(best, count);
  }
  return best;
}

}  // namespace

long long total_boundary_crossings(const PartitionOfUnity& p, const IntervalGrid& grid,
                                   const std::vector<std::vector<double>>& s,
                                   const std::vector<std::vector<double>>& t) {
  BoundaryFamily A, B;
  A.build(p, grid, s);
  B.build(p, grid, t);
  return crossings_between(A, B);
}

CrossingFloorReport boundary_crossing_check(const PartitionOfUnity& p, int L,
                                            std::uint64_t seed, int n_perm_samples) {
  CrossingFloorReport rep;
  const int n = p.size();
  rep.multiplicity_floor = L - n;
  rep.required_crossings = static_cast<long long>(L + 1 - n) * (L + 1 - n);

  if (L <= n) {
    rep.hypothesis_failure = "L must exceed the number of sets";
    return rep;
  }
  const KappaResult kr = kappa(p.cover);
  rep.kappa_envelopes = kr.kappa;
  if (kr.kappa < 3) {
    rep.hypothesis_failure = "kappa of the enveloping family is below 3";
    return rep;
  }
  for (const auto& set : p.cover.sets)
    if (!is_topological_disc(set.region)) {
      rep.hypothesis_failure = "enveloping set '" + set.name + "' is not a topological disc";
      return rep;
    }

  const IntervalGrid grid = make_interval_grid(p, L);

  for (int attempt = 0; attempt < 16; ++attempt) {
    rep.retries = attempt;
    const auto s = sample_thresholds(grid, derive_rng(seed, 2 * attempt).next_u64());
    const auto t = sample_thresholds(grid, derive_rng(seed, 2 * attempt + 1).next_u64());

    rep.min_multiplicity_s = min_vertex_multiplicity(p, s);
    rep.min_multiplicity_t = min_vertex_multiplicity(p, t);
    if (rep.min_multiplicity_s < rep.multiplicity_floor ||
        rep.min_multiplicity_t < rep.multiplicity_floor) {
      rep.hypothesis_failure = "multiplicity floor violated";
      return rep;
    }

    Cover cs, ct;
    try {
      cs = levelset_cover(p, grid, s);
      ct = levelset_cover(p, grid, t);
    } catch (const std::runtime_error& e) {
      rep.hypothesis_failure = e.what();
      return rep;
    }

    try {
      rep.total_crossings = total_boundary_crossings(p, grid, s, t);
      rep.floor_holds = rep.total_crossings >= rep.required_crossings;

      // Permutation samples: Step-2 style positivity of clipped unions.
      Rng prng = derive_rng(seed, 1000 + attempt);
      const int nsets = cs.size();
      rep.perm_samples = n_perm_samples;
      rep.perm_min_crossings = std::numeric_limits<long long>::max();
      long long sum = 0;
      rep.perm_pairs_nonempty = 0;
      bool positive = true;
      for (int m = 0; m < n_perm_samples; ++m) {
        std::vector<int> alpha(nsets), beta(nsets);
        std::iota(alpha.begin(), alpha.end(), 0);
        std::iota(beta.begin(), beta.end(), 0);
        for (int i = nsets - 1; i > 0; --i) {
          std::swap(alpha[i], alpha[prng.next_below(i + 1)]);
          std::swap(beta[i], beta[prng.next_below(i + 1)]);
        }
        const PermCurveSet ga = gamma_curves(cs, alpha);
        const PermCurveSet gb = gamma_curves(ct, beta);
        if (ga.empty() || gb.empty()) continue;
        ++rep.perm_pairs_nonempty;
        const long long cnt = curve_intersection_count(ga, gb);
        sum += cnt;
        rep.perm_min_crossings = std::min(rep.perm_min_crossings, cnt);
        if (cnt < 1) positive = false;
      }
      if (rep.perm_pairs_nonempty == 0) rep.perm_min_crossings = 0;
      rep.perm_mean_crossings =
          rep.perm_pairs_nonempty ? static_cast<double>(sum) / rep.perm_pairs_nonempty : 0.0;
      rep.perm_positive_holds = positive;
      rep.hypotheses_ok = true;
      return rep;
    } catch (const DegeneracyError&) {
      continue;  // re-perturb thresholds deterministically
    }
  }
  rep.hypothesis_failure = "degenerate position persisted after 16 re-perturbations";
  return rep;
}

AveragingReport averaging_experiment(const PartitionOfUnity& p, int L, int n_samples,
                                     std::uint64_t seed) {
  AveragingReport rep;
  rep.L = L;
  const int n = p.size();
  if (L <= n) {
    rep.gate_reason = "L must exceed the number of sets";
    return rep;
  }
  const KappaResult kr = kappa(p.cover);
  if (kr.kappa < 3) {
    rep.gate_reason = "kappa below 3: bracket may vanish identically, floor inapplicable";
    rep.l1_value = l1_bracket_sum(p);
    return rep;
  }
  rep.applicable = true;

  const IntervalGrid grid = make_interval_grid(p, L);
  rep.floor_value = static_cast<double>(L + 1 - n) * (L + 1 - n) / (static_cast<double>(L) * L);
  rep.l1_value = l1_bracket_sum(p);

  rep.counts.assign(n_samples, 0);
  for (int m = 0; m < n_samples; ++m) {
    long long value = -1;
    for (int attempt = 0; attempt < 16; ++attempt) {
      const std::uint64_t base = static_cast<std::uint64_t>(m) * 64 + attempt;
      const auto s = sample_thresholds(grid, derive_rng(seed, 10000 + 2 * base).next_u64());
      const auto t = sample_thresholds(grid, derive_rng(seed, 10001 + 2 * base).next_u64());
      try {
        value = total_boundary_crossings(p, grid, s, t);
        break;
      } catch (const DegeneracyError&) {
        ++rep.degenerate_retries;
      }
    }
    if (value < 0) throw DegeneracyError("averaging_experiment: sample stuck in degenerate position");
    rep.counts[m] = value;
  }
  rep.samples = n_samples;

  double mean = 0;
  for (long long c : rep.counts) mean += static_cast<double>(c);
  mean /= n_samples;
  double var = 0;
  for (long long c : rep.counts) {
    const double d = static_cast<double>(c) - mean;
    var += d * d;
  }
  var = n_samples > 1 ? var / (n_samples - 1) : 0.0;
  rep.mean_crossings = mean;
  rep.sigma_mc = std::sqrt(var / n_samples);

  const double L2 = static_cast<double>(L) * L;
  rep.implied_lower_bound = mean / L2;
  rep.lower_ok = rep.implied_lower_bound >= rep.floor_value - 3.0 * rep.sigma_mc / L2;
  const double sigma_rel = rep.l1_value > 0 ? (rep.sigma_mc / L2) / rep.l1_value : 0.0;
  rep.upper_ok = rep.implied_lower_bound <= rep.l1_value * (1.0 + 3.0 * sigma_rel) + 1e-12;
  return rep;
}

}  // namespace pbsurf
