#pragma once

#include <vector>

namespace pbsurf {

/// Exact max over sign vectors a in {-1,1}^n of sum_j |(B^T a)_j| for an
/// antisymmetric n x n matrix B (row-major). This equals the maximum of
/// |a^T B b| over the full cube [-1,1]^n x [-1,1]^n: the bilinear form is
/// maximized at cube vertices and the inner maximum over b has the closed
/// form sum_j |.|.
///
/// n <= 20 (2^(n-1) enumeration guard). For n <= 12 every candidate is
/// evaluated from scratch, which makes the result bit-identical to the
/// brute-force pair enumeration; larger n use Gray-code updates.
double inf_to_one_norm(const double* b, int n);

inline double inf_to_one_norm(const std::vector<double>& b, int n) {
  return inf_to_one_norm(b.data(), n);
}

/// As above, also reporting an attaining sign vector a and the signs
/// sigma_j = sign((B^T a)_j) (+1 on ties). Used by the minimizer.
struct InfToOneWitness {
  double value = 0;
  std::vector<int> a;      // entries +-1
  std::vector<int> sigma;  // entries +-1
};
InfToOneWitness inf_to_one_norm_witness(const double* b, int n);

}  // namespace pbsurf
