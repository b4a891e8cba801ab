#include "pbsurf/pbnorm.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace pbsurf {

namespace {

// a[0] is pinned to +1: the objective is invariant under a -> -a.
inline void decode_signs(std::uint32_t bits, int n, int* a) {
  a[0] = 1;
  for (int i = 1; i < n; ++i) a[i] = (bits >> (i - 1)) & 1u ? -1 : 1;
}

double eval_fresh(const double* b, int n, const int* a, double* y) {
  for (int j = 0; j < n; ++j) {
    double acc = 0;
    for (int i = 0; i < n; ++i) acc += a[i] * b[i * n + j];
    y[j] = acc;
  }
  double s = 0;
  for (int j = 0; j < n; ++j) s += std::abs(y[j]);
  return s;
}

}  // namespace

double inf_to_one_norm(const double* b, int n) {
  return inf_to_one_norm_witness(b, n).value;
}

InfToOneWitness inf_to_one_norm_witness(const double* b, int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("inf_to_one_norm: n must be in [1, 20]");
  InfToOneWitness best;
  best.a.assign(n, 1);
  best.sigma.assign(n, 1);
  if (n == 1) return best;  // antisymmetric 1x1 is zero

  int a[20];
  double y[20];
  const std::uint32_t count = 1u << (n - 1);

  if (n <= 12) {
    std::uint32_t best_bits = 0;
    double best_val = -1;
    for (std::uint32_t bits = 0; bits < count; ++bits) {
      decode_signs(bits, n, a);
      const double s = eval_fresh(b, n, a, y);
      if (s > best_val) {
        best_val = s;
        best_bits = bits;
      }
    }
    decode_signs(best_bits, n, a);
    best.value = eval_fresh(b, n, a, y);
  } else {
    // Gray-code walk: one sign flip per step, y updated incrementally.
    for (int i = 0; i < n; ++i) a[i] = 1;
    for (int j = 0; j < n; ++j) {
      double acc = 0;
      for (int i = 0; i < n; ++i) acc += b[i * n + j];
      y[j] = acc;
    }
    double best_val = -1;
    std::uint32_t best_bits = 0;
    std::uint32_t gray_prev = 0;
    for (std::uint32_t k = 0;; ++k) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += std::abs(y[j]);
      if (s > best_val) {
        best_val = s;
        best_bits = gray_prev;
      }
      if (k + 1 == count) break;
      const std::uint32_t gray = (k + 1) ^ ((k + 1) >> 1);
      const std::uint32_t flipped = gray ^ gray_prev;  // single bit
      int idx = 0;
      while (!((flipped >> idx) & 1u)) ++idx;
      const int i = idx + 1;  // bit 0 of the code drives sign a[1]
      a[i] = -a[i];
      const double two_ai = 2.0 * a[i];
      for (int j = 0; j < n; ++j) y[j] += two_ai * b[i * n + j];
      gray_prev = gray;
    }
    // The sign state after step k is exactly the Gray code of k, so the
    // stored code decodes with the plain rule. Re-evaluate from scratch
    // for a clean witness.
    decode_signs(best_bits, n, a);
    best.value = eval_fresh(b, n, a, y);
  }

  for (int i = 0; i < n; ++i) best.a[i] = a[i];
  for (int j = 0; j < n; ++j) best.sigma[j] = y[j] >= 0 ? 1 : -1;
  return best;
}

}  // namespace pbsurf
