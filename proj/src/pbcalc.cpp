#include "pbsurf/pbcalc.hpp"

#include <cmath>

#include "pbsurf/parallel.hpp"

namespace pbsurf {

void BracketMatrixField::dense(int t, double* out) const {
  for (int i = 0; i < n_; ++i) out[i * n_ + i] = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const double v = upper_entry(t, pair_index(i, j));
      out[i * n_ + j] = v;
      out[j * n_ + i] = -v;
    }
}

BracketMatrixField bracket_matrix(const PartitionOfUnity& p) {
  const Mesh& m = *p.mesh;
  const int n = p.size();
  if (n > 32) throw std::invalid_argument("bracket_matrix: more than 32 fields");
  const int nt = m.tri_count();
  BracketMatrixField b(m, n);

  PBSURF_PARALLEL_FOR
  for (int t = 0; t < nt; ++t) {
    Vec3 grads[32];
    for (int i = 0; i < n; ++i) grads[i] = pl_gradient_tri(p.fields[i], t);
    const Vec3 nrm = m.unit_normal(t);
    int pair = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        b.upper_entry(t, pair++) = dot(cross(grads[i], grads[j]), nrm);
  }
  return b;
}

namespace {

std::vector<double> per_triangle_norms(const BracketMatrixField& b) {
  const int nt = b.mesh().tri_count();
  const int n = b.n();
  std::vector<double> norms(nt);
  PBSURF_PARALLEL_FOR_DYNAMIC
  for (int t = 0; t < nt; ++t) {
    double dense[400];
    b.dense(t, dense);
    norms[t] = inf_to_one_norm(dense, n);
  }
  return norms;
}

}  // namespace

double nu_c(const BracketMatrixField& b) {
  const auto norms = per_triangle_norms(b);
  double best = 0;
  for (double v : norms) best = std::max(best, v);
  return best;
}

double nu_c(const PartitionOfUnity& p) { return nu_c(bracket_matrix(p)); }

NuWitness nu_c_witness(const BracketMatrixField& b) {
  const auto norms = per_triangle_norms(b);
  NuWitness w;
  for (int t = 0; t < static_cast<int>(norms.size()); ++t)
    if (norms[t] > w.value) {
      w.value = norms[t];
      w.triangle = t;
    }
  if (w.triangle >= 0) {
    double dense[400];
    b.dense(w.triangle, dense);
    w.signs = inf_to_one_norm_witness(dense, b.n());
  }
  return w;
}

double l1_bracket_sum(const BracketMatrixField& b) {
  const Mesh& m = b.mesh();
  const int nt = m.tri_count();
  const int pairs = b.pair_count();
  std::vector<double> per_tri(nt);
  PBSURF_PARALLEL_FOR
  for (int t = 0; t < nt; ++t) {
    double s = 0;
    for (int k = 0; k < pairs; ++k) s += std::abs(b.upper_entry(t, k));
    per_tri[t] = 2.0 * s * m.tri_area[t];  // both orders (i,j) and (j,i)
  }
  double sum = 0, comp = 0;
  for (double v : per_tri) {
    const double y = v - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

double l1_bracket_sum(const PartitionOfUnity& p) { return l1_bracket_sum(bracket_matrix(p)); }

double max_abs_row_sum(const BracketMatrixField& b) {
  const int nt = b.mesh().tri_count();
  const int pairs = b.pair_count();
  std::vector<double> per_tri(nt);
  PBSURF_PARALLEL_FOR
  for (int t = 0; t < nt; ++t) {
    double s = 0;
    for (int k = 0; k < pairs; ++k) s += std::abs(b.upper_entry(t, k));
    per_tri[t] = 2.0 * s;
  }
  double best = 0;
  for (double v : per_tri) best = std::max(best, v);
  return best;
}

RatioReport nu_maxsum_ratio(const PartitionOfUnity& p) {
  const auto b = bracket_matrix(p);
  RatioReport r;
  r.nu_c_value = nu_c(b);
  r.maxsum_value = max_abs_row_sum(b);
  if (r.maxsum_value > 0) {
    r.ratio = r.nu_c_value / r.maxsum_value;
    r.defined = true;
  }
  return r;
}

}  // namespace pbsurf
