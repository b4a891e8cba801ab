#include "pbsurf/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace pbsurf::reference {

double max_bilinear_sign_pairs(const double* b, int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("max_bilinear_sign_pairs: n must be in [1, 16]");
  int a[16], bb[16];
  double y[16];
  double best = 0;
  for (std::uint32_t abits = 0; abits < (1u << n); ++abits) {
    for (int i = 0; i < n; ++i) a[i] = (abits >> i) & 1u ? -1 : 1;
    for (int j = 0; j < n; ++j) {
      double acc = 0;
      for (int i = 0; i < n; ++i) acc += a[i] * b[i * n + j];
      y[j] = acc;
    }
    for (std::uint32_t bbits = 0; bbits < (1u << n); ++bbits) {
      for (int j = 0; j < n; ++j) bb[j] = (bbits >> j) & 1u ? -1 : 1;
      double s = 0;
      for (int j = 0; j < n; ++j) s += bb[j] * y[j];
      if (s > best) best = s;
    }
  }
  return best;
}

double max_bilinear_sign_pairs(const std::vector<double>& b, int n) {
  return max_bilinear_sign_pairs(b.data(), n);
}

double nu_c(const PartitionOfUnity& p) {
  const Mesh& m = *p.mesh;
  const int n = p.size();
  if (n > 16) throw std::invalid_argument("reference::nu_c: n must be <= 16");
  std::vector<double> dense(n * n);
  double best = 0;
  for (int t = 0; t < m.tri_count(); ++t) {
    for (int i = 0; i < n; ++i) {
      dense[i * n + i] = 0;
      for (int j = i + 1; j < n; ++j) {
        const double v = poisson_bracket_tri(p.fields[i], p.fields[j], t);
        dense[i * n + j] = v;
        dense[j * n + i] = -v;
      }
    }
    best = std::max(best, max_bilinear_sign_pairs(dense.data(), n));
  }
  return best;
}

double l1_bracket_sum(const PartitionOfUnity& p) {
  const Mesh& m = *p.mesh;
  const int n = p.size();
  double total = 0;
  for (int t = 0; t < m.tri_count(); ++t) {
    double s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        s += std::abs(poisson_bracket_tri(p.fields[i], p.fields[j], t));
    total += 2.0 * s * m.tri_area[t];
  }
  return total;
}

long long count_segment_crossings(const std::vector<CurveSegment>& a,
                                  const std::vector<CurveSegment>& b) {
  long long count = 0;
  for (const auto& sa : a)
    for (const auto& sb : b) {
      if (sa.tri != sb.tri) continue;
      if (segments_cross(sa.a, sa.b, sb.a, sb.b)) ++count;
    }
  return count;
}

}  // namespace pbsurf::reference
