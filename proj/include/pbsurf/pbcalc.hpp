#pragma once

#include <vector>

#include "pbsurf/partition.hpp"
#include "pbsurf/pbnorm.hpp"

namespace pbsurf {

/// Pairwise brackets B_ij(T) = {f_i, f_j}|_T, stored packed (i < j) since
/// B is antisymmetric by construction.
class BracketMatrixField {
 public:
  BracketMatrixField(const Mesh& mesh, int n) : mesh_(&mesh), n_(n), upper_() {
    upper_.assign(static_cast<size_t>(mesh.tri_count()) * pair_count(), 0.0);
  }

  int n() const { return n_; }
  int pair_count() const { return n_ * (n_ - 1) / 2; }
  const Mesh& mesh() const { return *mesh_; }

  double& upper_entry(int t, int pair) { return upper_[static_cast<size_t>(t) * pair_count() + pair]; }
  double upper_entry(int t, int pair) const { return upper_[static_cast<size_t>(t) * pair_count() + pair]; }

  double entry(int t, int i, int j) const {
    if (i == j) return 0.0;
    if (i < j) return upper_entry(t, pair_index(i, j));
    return -upper_entry(t, pair_index(j, i));
  }

  /// Row-major dense n x n matrix for triangle t.
  void dense(int t, double* out) const;

  int pair_index(int i, int j) const {  // requires i < j
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

 private:
  const Mesh* mesh_;
  int n_;
  std::vector<double> upper_;
};

BracketMatrixField bracket_matrix(const PartitionOfUnity& p);

/// nu_c = max over triangles of inf_to_one_norm(B(T)).
double nu_c(const PartitionOfUnity& p);
double nu_c(const BracketMatrixField& b);

/// As nu_c, also reporting the active triangle and sign vectors.
struct NuWitness {
  double value = 0;
  int triangle = -1;
  InfToOneWitness signs;
};
NuWitness nu_c_witness(const BracketMatrixField& b);

/// sum_ij int_M |{f_i,f_j}| omega.
double l1_bracket_sum(const PartitionOfUnity& p);
double l1_bracket_sum(const BracketMatrixField& b);

/// max over triangles of sum_ij |B_ij(T)|.
double max_abs_row_sum(const BracketMatrixField& b);

/// nu_c, max_T sum_ij |B_ij|, and their ratio (lies in (0,1] when the
/// brackets are not identically zero; flagged undefined otherwise).
struct RatioReport {
  double nu_c_value = 0;
  double maxsum_value = 0;
  double ratio = 0;
  bool defined = false;
};
RatioReport nu_maxsum_ratio(const PartitionOfUnity& p);

}  // namespace pbsurf
