// Acceptance suite: one line per criterion, each with its pinned tolerance
// and runtime budget. Exit 0 iff every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pbsurf/fixtures.hpp"
#include "pbsurf/levelsets.hpp"
#include "pbsurf/optimizer.hpp"
#include "pbsurf/partition.hpp"
#include "pbsurf/pbcalc.hpp"
#include "pbsurf/permcurves.hpp"
#include "pbsurf/reference.hpp"
#include "pbsurf/rng.hpp"
#include "pbsurf/runner.hpp"

using namespace pbsurf;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, double budget_s,
               const std::function<bool(std::string&)>& body) {
  const auto t0 = clock_type::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
  if (secs >= budget_s) {
    ok = false;
    detail += " [over budget]";
  }
  std::printf("[%s] criterion %d: %s (%.2fs < %.0fs) %s\n", ok ? "PASS" : "FAIL", id,
              name.c_str(), secs, budget_s, detail.c_str());
  if (!ok) ++failures;
}

std::vector<double> random_antisym(int n, std::uint64_t seed) {
  std::vector<double> b(n * n, 0.0);
  Rng rng(seed);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = rng.uniform(-1.0, 1.0);
      b[i * n + j] = v;
      b[j * n + i] = -v;
    }
  return b;
}

}  // namespace

int main() {
  const Mesh sphere5 = build_sphere_mesh(5, 1.0);
  const Mesh torus64 = build_torus_mesh(64, 64, 1.0, 1.0);

  // 1: L1 bracket floor for disc covers with kappa >= 3 (5% PL tolerance).
  criterion(1, "l1 bracket floor on sphere caps and torus rectangles", 60.0,
            [&](std::string& detail) {
              const PartitionOfUnity ps =
                  build_bump_partition(three_cap_cover(sphere5), 2, 2.0);
              const double l1s = l1_bracket_sum(ps);
              const PartitionOfUnity pt =
                  build_bump_partition(three_rect_cover(torus64), 2, 2.0);
              const double l1t = l1_bracket_sum(pt);
              char buf[128];
              std::snprintf(buf, sizeof buf, "sphere %.4f, torus %.4f (floor 0.95)", l1s, l1t);
              detail = buf;
              return kappa(three_cap_cover(sphere5)).kappa == 3 &&
                     kappa(three_rect_cover(torus64)).kappa == 3 && l1s >= 0.95 && l1t >= 0.95;
            });

  // 2: kappa < 3 forces a vanishing estimate; the complement pair commutes
  // exactly.
  criterion(2, "two-disc cover: zero estimate and exactly zero bracket", 10.0,
            [&](std::string& detail) {
              const Mesh sphere4 = build_sphere_mesh(4, 1.0);
              const Cover two = two_cap_cover(sphere4);
              for (const auto& s : two.sets)
                if (!is_topological_disc(s.region)) {
                  detail = "cover set is not a disc";
                  return false;
                }
              OptimizerOptions opts;
              opts.iterations = 50;
              opts.restarts = 2;
              const PbEstimate est = minimize_pb(two, opts);
              const PartitionOfUnity p = build_bump_partition(two, 2, 2.0);
              const TriDensity b = poisson_bracket(p.fields[0], p.fields[1]);
              bool exact_zero = true;
              for (double v : b.values) exact_zero = exact_zero && v == 0.0;
              char buf[96];
              std::snprintf(buf, sizeof buf, "estimate %.3g, bracket exactly zero: %s",
                            est.nu_c_value, exact_zero ? "yes" : "no");
              detail = buf;
              return est.nu_c_value <= 1e-9 && exact_zero;
            });

  // 3: coarea identity within 2%, skipped measure below 1%.
  criterion(3, "coarea identity on the sphere fixture", 120.0, [&](std::string& detail) {
    const ScalarField f = make_named_field(sphere5, "z");
    const ScalarField g = make_named_field(sphere5, "x");
    const CoareaReport rep = coarea_sides(f, g, -0.9, 0.9, -0.9, 0.9, 100, 100);
    const double rel = std::abs(rep.lhs - rep.rhs) / std::max(rep.lhs, 1e-12);
    char buf[128];
    std::snprintf(buf, sizeof buf, "lhs %.5f rhs %.5f rel %.4f skip %.4f", rep.lhs, rep.rhs, rel,
                  rep.skipped_measure / rep.omega_measure);
    detail = buf;
    return rel <= 0.02 && rep.skipped_measure < 0.01 * rep.omega_measure;
  });
  criterion(3, "coarea identity on the torus fixture", 120.0, [&](std::string& detail) {
    const ScalarField f = make_named_field(torus64, "sin2pix");
    const ScalarField g = make_named_field(torus64, "sin2piy");
    const CoareaReport rep = coarea_sides(f, g, -0.9, 0.9, -0.9, 0.9, 100, 100);
    const double rel = std::abs(rep.lhs - rep.rhs) / std::max(rep.lhs, 1e-12);
    char buf[128];
    std::snprintf(buf, sizeof buf, "lhs %.5f rhs %.5f rel %.4f skip %.4f", rep.lhs, rep.rhs, rel,
                  rep.skipped_measure / rep.omega_measure);
    detail = buf;
    return rel <= 0.02 && rep.skipped_measure < 0.01 * rep.omega_measure;
  });

  // 4: essential-set bound: all three caps essential, l1 >= 3 * 0.95, and
  // the max bracket sum clears 0.95 / min essential area.
  criterion(4, "essential-set floors on the three caps", 90.0, [&](std::string& detail) {
    const Cover c = three_cap_cover(sphere5);
    const EssentialResult es = essential_sets(c);
    if (es.essential.size() != 3) {
      detail = "essential set count != 3";
      return false;
    }
    for (size_t k = 0; k < es.essential.size(); ++k) {
      int owners = 0;
      for (const auto& s : c.sets)
        if (s.region.contains(es.witness_triangle[k])) ++owners;
      if (owners != 1) {
        detail = "witness triangle is not private";
        return false;
      }
    }
    double min_area = 1e300;
    for (int i : es.essential) min_area = std::min(min_area, region_area(c.sets[i].region));
    const PartitionOfUnity p = build_bump_partition(c, 2, 2.0);
    const BracketMatrixField b = bracket_matrix(p);
    const double l1 = l1_bracket_sum(b);
    const double maxsum = max_abs_row_sum(b);
    char buf[160];
    std::snprintf(buf, sizeof buf, "l1 %.4f >= 2.85; maxsum %.2f >= %.4f", l1, maxsum,
                  0.95 / min_area);
    detail = buf;
    return l1 >= 2.85 && maxsum >= 0.95 / min_area;
  });

  // 5: the inf-to-one norm equals full sign-pair enumeration, exactly.
  criterion(5, "exact norm vs brute-force enumeration", 10.0, [&](std::string& detail) {
    int checked = 0;
    for (int n = 2; n <= 6; ++n)
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto b = random_antisym(n, 7000 + 100 * n + seed);
        if (inf_to_one_norm(b, n) != reference::max_bilinear_sign_pairs(b, n)) {
          detail = "mismatch at n=" + std::to_string(n) + " seed " + std::to_string(seed);
          return false;
        }
        ++checked;
      }
    detail = std::to_string(checked) + " matrices, exact equality";
    return true;
  });

  // 6: crossing floor (L+1-|I|)^2 per sample and the averaging sandwich.
  criterion(6, "crossing floor and averaging sandwich (L=8, seed 0)", 300.0,
            [&](std::string& detail) {
              const PartitionOfUnity p =
                  build_bump_partition(three_cap_cover(sphere5), 2, 2.0);
              const CrossingFloorReport floor_rep = boundary_crossing_check(p, 8, 0, 8);
              if (!floor_rep.hypotheses_ok) {
                detail = "hypotheses: " + floor_rep.hypothesis_failure;
                return false;
              }
              const AveragingReport avg = averaging_experiment(p, 8, 200, 0);
              if (!avg.applicable) {
                detail = "averaging gate: " + avg.gate_reason;
                return false;
              }
              long long min_count = avg.counts.empty() ? 0 : avg.counts.front();
              for (long long c : avg.counts) min_count = std::min(min_count, c);
              char buf[192];
              std::snprintf(buf, sizeof buf,
                            "single-draw total %lld >= 36; min over 200 samples %lld; "
                            "implied %.4f vs l1 %.4f (3sigma %.4f)",
                            floor_rep.total_crossings, min_count, avg.implied_lower_bound,
                            avg.l1_value, 3.0 * avg.sigma_mc / 64.0);
              detail = buf;
              return floor_rep.floor_holds && floor_rep.perm_positive_holds && min_count >= 36 &&
                     avg.lower_ok && avg.upper_ok;
            });

  // 7: property suite distilled: exactness and determinism claims.
  criterion(7, "property suite: exact identities and determinism", 600.0,
            [&](std::string& detail) {
              const Mesh torus24 = build_torus_mesh(24, 24, 1.0, 1.0);
              Rng rng(99);
              // bracket antisymmetry, bilinearity, vanishing signed integral
              ScalarField f(torus24), g(torus24), h(torus24);
              for (int v = 0; v < torus24.vertex_count(); ++v) {
                f[v] = rng.uniform(-2, 2);
                g[v] = rng.uniform(-1, 1);
                h[v] = rng.uniform(-1, 1);
              }
              const TriDensity fg = poisson_bracket(f, g);
              const TriDensity gf = poisson_bracket(g, f);
              for (int t = 0; t < torus24.tri_count(); ++t)
                if (fg.values[t] != -gf.values[t]) {
                  detail = "antisymmetry breach";
                  return false;
                }
              double fmax = 0, gmax = 0;
              for (double v : f.values) fmax = std::max(fmax, std::abs(v));
              for (double v : g.values) gmax = std::max(gmax, std::abs(v));
              if (std::abs(integrate(fg)) > 1e-9 * fmax * gmax * torus24.total_area()) {
                detail = "signed bracket integral too large";
                return false;
              }
              ScalarField lin(torus24);
              for (int v = 0; v < torus24.vertex_count(); ++v) lin[v] = 1.3 * f[v] - 0.7 * h[v];
              const TriDensity left = poisson_bracket(lin, g);
              const TriDensity hg = poisson_bracket(h, g);
              for (int t = 0; t < torus24.tri_count(); ++t) {
                const double want = 1.3 * fg.values[t] - 0.7 * hg.values[t];
                if (std::abs(left.values[t] - want) >
                    1e-12 * std::max(1.0, std::abs(want))) {
                  detail = "bilinearity breach";
                  return false;
                }
              }
              // partition invariants and projection idempotence
              const Mesh sphere3 = build_sphere_mesh(4, 1.0);
              const PartitionOfUnity p = build_bump_partition(three_cap_cover(sphere3), 2, 2.0);
              if (!validate_partition(p).ok(1e-9)) {
                detail = "partition invariant breach";
                return false;
              }
              std::vector<std::vector<double>> raw;
              for (const auto& field : p.fields) raw.push_back(field.values);
              const PartitionOfUnity q = project_to_feasible(sphere3, p.cover, raw, p.supports);
              for (int i = 0; i < p.size(); ++i)
                for (int v = 0; v < sphere3.vertex_count(); ++v)
                  if (q.fields[i][v] != p.fields[i][v]) {
                    detail = "projection not idempotent";
                    return false;
                  }
              // superlevel monotonicity and K symmetry
              const ScalarField z = make_named_field(sphere3, "z");
              if (!superlevel_region(z, 0.4).subset_of(superlevel_region(z, 0.1))) {
                detail = "superlevel monotonicity breach";
                return false;
              }
              const ScalarField x = make_named_field(sphere3, "x");
              const double s = make_regular(z, 0.17), t = make_regular(x, -0.23);
              if (count_level_intersections(z, x, s, t) !=
                  count_level_intersections(x, z, t, s)) {
                detail = "K symmetry breach";
                return false;
              }
              // deterministic reports per seed
              Scenario sc;
              sc.surface.type = "sphere";
              sc.surface.subdiv = 3;
              CoverSetSpec a_spec, b_spec;
              a_spec.name = "A";
              a_spec.kind = "halfspace";
              a_spec.halfspaces = {{"z", false, 0.6}};
              b_spec.name = "B";
              b_spec.kind = "halfspace";
              b_spec.halfspaces = {{"z", true, -0.6}};
              sc.cover.sets = {a_spec, b_spec};
              sc.task = "kappa";
              const RunOutcome a = run_scenario(sc, "/tmp/pbacc_a", true);
              const RunOutcome b = run_scenario(sc, "/tmp/pbacc_b", true);
              auto strip = [](std::string sjson) {
                const auto pos = sjson.find("\"wall_clock_ms\"");
                const auto end = sjson.find('\n', pos);
                return sjson.erase(pos, end - pos);
              };
              if (strip(a.report_json) != strip(b.report_json)) {
                detail = "report not deterministic";
                return false;
              }
              detail = "all property groups hold";
              return true;
            });

  // 8: the nu_c / max-sum ratio stays in (0, 1]; empirical values logged.
  criterion(8, "ratio report positivity and upper sandwich", 60.0, [&](std::string& detail) {
    const PartitionOfUnity ps = build_bump_partition(three_cap_cover(sphere5), 2, 2.0);
    const RatioReport rs = nu_maxsum_ratio(ps);
    const PartitionOfUnity pt = build_bump_partition(three_rect_cover(torus64), 2, 2.0);
    const RatioReport rt = nu_maxsum_ratio(pt);
    char buf[128];
    std::snprintf(buf, sizeof buf, "ratios: sphere %.6f, torus %.6f (logged)", rs.ratio, rt.ratio);
    detail = buf;
    return rs.defined && rs.ratio > 0 && rs.ratio <= 1 + 1e-12 && rt.defined && rt.ratio > 0 &&
           rt.ratio <= 1 + 1e-12;
  });

  if (failures) std::printf("%d criterion check(s) failed\n", failures);
  return failures ? 1 : 0;
}
