// Times the OpenMP kernels against the serial reference implementations.
//
// Usage: bench_kernels [subdiv]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "pbsurf/fixtures.hpp"
#include "pbsurf/levelsets.hpp"
#include "pbsurf/parallel.hpp"
#include "pbsurf/partition.hpp"
#include "pbsurf/pbcalc.hpp"
#include "pbsurf/permcurves.hpp"
#include "pbsurf/reference.hpp"

using h_clock = std::chrono::steady_clock;

namespace {

double ms_since(h_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(h_clock::now() - t0).count();
}

template <class F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = h_clock::now();
    fn();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int subdiv = argc > 1 ? std::atoi(argv[1]) : 5;
  std::printf("mesh: sphere subdiv %d, workers %d\n", subdiv, pbsurf::worker_count());

  const pbsurf::Mesh sphere = pbsurf::build_sphere_mesh(subdiv, 1.0);
  const pbsurf::Cover cover = pbsurf::three_cap_cover(sphere);
  const pbsurf::PartitionOfUnity part = pbsurf::build_bump_partition(cover, 2, 2.0);

  double v_par = 0, v_ser = 0;

  const double t_nu_par = time_best_of(3, [&] { v_par = pbsurf::nu_c(part); });
  const double t_nu_ser = time_best_of(3, [&] { v_ser = pbsurf::reference::nu_c(part); });
  std::printf("nu_c            omp %8.2f ms   serial %8.2f ms   speedup %.2fx   (%.6g vs %.6g)\n",
              t_nu_par, t_nu_ser, t_nu_ser / t_nu_par, v_par, v_ser);

  const double t_l1_par = time_best_of(3, [&] { v_par = pbsurf::l1_bracket_sum(part); });
  const double t_l1_ser = time_best_of(3, [&] { v_ser = pbsurf::reference::l1_bracket_sum(part); });
  std::printf("l1_bracket_sum  omp %8.2f ms   serial %8.2f ms   speedup %.2fx   (%.6g vs %.6g)\n",
              t_l1_par, t_l1_ser, t_l1_ser / t_l1_par, v_par, v_ser);

  const pbsurf::ScalarField f = pbsurf::make_named_field(sphere, "z");
  const pbsurf::ScalarField g = pbsurf::make_named_field(sphere, "x");
  pbsurf::CoareaReport rep;
  const double t_co = time_best_of(1, [&] {
    rep = pbsurf::coarea_sides(f, g, -0.9, 0.9, -0.9, 0.9, 64, 64);
  });
  std::printf("coarea 64x64    omp %8.2f ms   (lhs %.6g rhs %.6g)\n", t_co, rep.lhs, rep.rhs);

  // Boundary-family intersection counting: triangle-bucketed joins against
  // the quadratic all-pairs reference.
  const pbsurf::IntervalGrid grid = pbsurf::make_interval_grid(part, 8);
  const auto s = pbsurf::sample_thresholds(grid, 1);
  const auto t = pbsurf::sample_thresholds(grid, 2);
  long long total_par = 0, total_ser = 0;
  const double t_cr_par = time_best_of(3, [&] {
    total_par = pbsurf::total_boundary_crossings(part, grid, s, t);
  });
  std::vector<std::vector<pbsurf::CurveSegment>> scurves, tcurves;
  for (int i = 0; i < part.size(); ++i)
    for (int k = 0; k < grid.m[i]; ++k) {
      scurves.push_back(pbsurf::level_curve(part.fields[i], s[i][k]).segments());
      tcurves.push_back(pbsurf::level_curve(part.fields[i], t[i][k]).segments());
    }
  const double t_cr_ser = time_best_of(3, [&] {
    total_ser = 0;
    for (const auto& a : scurves)
      for (const auto& b : tcurves) total_ser += pbsurf::reference::count_segment_crossings(a, b);
  });
  std::printf("crossings L=8   omp %8.2f ms   serial %8.2f ms   speedup %.2fx   (%lld vs %lld)\n",
              t_cr_par, t_cr_ser, t_cr_ser / t_cr_par, total_par, total_ser);
  return 0;
}
