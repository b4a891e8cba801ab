#include "pbsurf/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "pbsurf/parallel.hpp"
#include "pbsurf/rng.hpp"

namespace pbsurf {

namespace {

struct RestartResult {
  PartitionOfUnity best;
  double best_value = 0;
  std::vector<double> trace;
};

std::vector<std::vector<double>> fields_to_raw(const PartitionOfUnity& p) {
  std::vector<std::vector<double>> raw(p.size());
  for (int i = 0; i < p.size(); ++i) raw[i] = p.fields[i].values;
  return raw;
}

RestartResult run_restart(const Cover& cover, const std::vector<TriRegion>& supports,
                          const PartitionOfUnity& init, const OptimizerOptions& opts) {
  const Mesh& mesh = *cover.mesh;
  const int n = static_cast<int>(supports.size());

  RestartResult res;
  PartitionOfUnity cur = init;
  res.best = cur;
  res.best_value = nu_c(cur);
  res.trace.push_back(res.best_value);

  for (int it = 1; it <= opts.iterations; ++it) {
    const auto b = bracket_matrix(cur);
    const NuWitness w = nu_c_witness(b);
    if (w.value <= 0 || w.triangle < 0) break;  // exact zero: cannot improve

    // Subgradient of the active term sum_{i,j} a_i sigma_j {f_i,f_j}(T*)
    // with respect to the three vertex values of each field on T*.
    const int t = w.triangle;
    Vec3 hat[3];
    for (int c = 0; c < 3; ++c) hat[c] = hat_gradient_tri(mesh, t, c);
    const Vec3 nrm = mesh.unit_normal(t);

    double h[3][32];  // h[c][j] = {hat_c, f_j}(T*)
    for (int c = 0; c < 3; ++c)
      for (int j = 0; j < n; ++j)
        h[c][j] = dot(cross(hat[c], pl_gradient_tri(cur.fields[j], t)), nrm);

    double grad[3][32];
    double gmax = 0;
    for (int c = 0; c < 3; ++c) {
      double s_sigma = 0, s_a = 0;
      for (int j = 0; j < n; ++j) s_sigma += w.signs.sigma[j] * h[c][j];
      for (int i = 0; i < n; ++i) s_a += w.signs.a[i] * h[c][i];
      for (int k = 0; k < n; ++k) {
        grad[c][k] = w.signs.a[k] * s_sigma - w.signs.sigma[k] * s_a;
        gmax = std::max(gmax, std::abs(grad[c][k]));
      }
    }
    if (gmax == 0) break;

    const double eta = opts.eta0 / std::sqrt(static_cast<double>(it));
    auto raw = fields_to_raw(cur);
    for (int c = 0; c < 3; ++c) {
      const int v = mesh.tris[t][c];
      for (int k = 0; k < n; ++k) raw[k][v] -= eta * grad[c][k] / gmax;
    }
    cur = project_to_feasible(mesh, cover, raw, supports);

    const double val = nu_c(cur);
    if (val < res.best_value) {
      res.best_value = val;
      res.best = cur;
    }
    res.trace.push_back(res.best_value);
  }
  return res;
}

}  // namespace

PbEstimate minimize_pb(const Cover& c, const OptimizerOptions& opts) {
  const Mesh& mesh = *c.mesh;
  const int n = c.size();
  if (n > 20) throw std::invalid_argument("minimize_pb: more than 20 sets");

  PbEstimate est;
  const KappaResult kr = kappa(c);
  est.kappa_value = kr.kappa;

  // Initial feasible point; also fixes the supports used throughout.
  PartitionOfUnity bump = build_bump_partition(c, opts.margin, opts.sharpness);
  const std::vector<TriRegion> supports = bump.supports;

  const int restarts = std::max(1, opts.restarts);
  std::vector<RestartResult> results(restarts);

  PBSURF_PARALLEL_FOR_DYNAMIC
  for (int r = 0; r < restarts; ++r) {
    PartitionOfUnity init = bump;
    if (r > 0) {
      Rng rng = derive_rng(opts.seed, 100 + r);
      std::vector<std::vector<double>> raw(n, std::vector<double>(mesh.vertex_count()));
      for (int i = 0; i < n; ++i)
        for (int v = 0; v < mesh.vertex_count(); ++v) raw[i][v] = rng.next_double();
      init = project_to_feasible(mesh, c, raw, supports);
    }
    results[r] = run_restart(c, supports, init, opts);
  }

  // Deterministic reduce: restart order, then cumulative minimum.
  int best_r = 0;
  for (int r = 1; r < restarts; ++r)
    if (results[r].best_value < results[best_r].best_value) best_r = r;
  est.best = results[best_r].best;
  est.nu_c_value = results[best_r].best_value;
  double running = results[0].trace.empty() ? 0 : results[0].trace.front();
  for (const auto& rr : results)
    for (double v : rr.trace) {
      running = std::min(running, v);
      est.trace.push_back(running);
    }
  est.budget_exhausted = est.nu_c_value > 0;

  const double area = mesh.total_area();
  if (est.kappa_value < 3) {
    est.lower_bound_kind = "two_set_subcover_zero";
    est.lower_bound = 0;
  } else {
    bool all_discs = true;
    for (const auto& s : c.sets)
      if (!is_topological_disc(s.region)) { all_discs = false; break; }
    if (all_discs) {
      // L1 floor for disc covers with kappa >= 3, degraded by the documented
      // 5% mesh tolerance, pushed through nu_c >= max_T sum|B_ij| / N^2.
      est.lower_bound_kind = "l1_floor_disc_cover";
      est.lower_bound = 0.95 / (static_cast<double>(n) * n * area);
    } else {
      est.lower_bound_kind = "none";
      est.lower_bound = 0;
    }
  }
  return est;
}

}  // namespace pbsurf
