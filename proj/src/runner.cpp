#include "pbsurf/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "pbsurf/fixtures.hpp"
#include "pbsurf/levelsets.hpp"
#include "pbsurf/optimizer.hpp"
#include "pbsurf/partition.hpp"
#include "pbsurf/pbcalc.hpp"
#include "pbsurf/rng.hpp"
#include "pbsurf/permcurves.hpp"
#include "pbsurf/svg.hpp"

namespace pbsurf {

using json = nlohmann::ordered_json;

namespace {

Mesh build_surface(const SurfaceSpec& s) {
  if (s.type == "sphere") return build_sphere_mesh(s.subdiv, s.radius);
  return build_torus_mesh(s.nx, s.ny, s.lx, s.ly);
}

Cover build_cover(const Mesh& mesh, const CoverSpec& spec) {
  Cover c;
  c.mesh = &mesh;
  const PredicateMode mode =
      spec.mode == "majority" ? PredicateMode::Majority : PredicateMode::Strict;
  for (const auto& s : spec.sets) {
    CoverSet set;
    set.name = s.name;
    if (s.kind == "halfspace") {
      set.region = region_from_predicate(
          mesh,
          [&](const Vec3& p) {
            for (const auto& h : s.halfspaces) {
              const double v = h.axis == "x" ? p.x : h.axis == "y" ? p.y : p.z;
              if (h.greater ? v <= h.value : v >= h.value) return false;
            }
            return true;
          },
          mode);
    } else if (s.kind == "cap") {
      const Vec3 c0 = normalized(Vec3{s.cap_cx, s.cap_cy, s.cap_cz});
      set.region = region_from_predicate(
          mesh, [&](const Vec3& p) { return dot(normalized(p), c0) > s.cap_cos; }, mode);
    } else if (s.kind == "rect") {
      set.region = region_from_predicate(
          mesh,
          [&](const Vec3& p) {
            return torus_rect_contains(mesh, s.rect_x0, s.rect_x1, s.rect_y0, s.rect_y1, p);
          },
          mode);
    } else {  // field
      ScalarField f = make_named_field(mesh, s.field_name);
      set.region = superlevel_region(f, s.field_threshold);
      set.defining_field = std::move(f);
      set.threshold = s.field_threshold;
    }
    c.sets.push_back(std::move(set));
  }
  return c;
}

struct CheckList {
  json checks = json::array();
  bool all_pass = true;
  bool any_inconclusive = false;

  void add(const std::string& id, const std::string& statement, double value,
           double threshold, bool pass) {
    checks.push_back({{"id", id},
                      {"statement", statement},
                      {"value", value},
                      {"threshold", threshold},
                      {"pass", pass}});
    all_pass = all_pass && pass;
  }
  void add_bool(const std::string& id, const std::string& statement, bool pass) {
    checks.push_back({{"id", id}, {"statement", statement}, {"pass", pass}});
    all_pass = all_pass && pass;
  }
  void inconclusive(const std::string& id, const std::string& reason) {
    checks.push_back({{"id", id}, {"inconclusive", true}, {"reason", reason}});
    any_inconclusive = true;
  }
};

json scenario_echo(const Scenario& sc) {
  json e;
  e["surface"] = {{"type", sc.surface.type}};
  if (sc.surface.type == "sphere") {
    e["surface"]["subdiv"] = sc.surface.subdiv;
    e["surface"]["radius"] = sc.surface.radius;
  } else {
    e["surface"]["nx"] = sc.surface.nx;
    e["surface"]["ny"] = sc.surface.ny;
    e["surface"]["lx"] = sc.surface.lx;
    e["surface"]["ly"] = sc.surface.ly;
  }
  json sets = json::array();
  for (const auto& s : sc.cover.sets) sets.push_back({{"name", s.name}, {"kind", s.kind}});
  e["cover"] = {{"mode", sc.cover.mode}, {"sets", sets}};
  e["partition"] = {{"margin", sc.partition.margin}, {"sharpness", sc.partition.sharpness}};
  e["task"] = {{"name", sc.task}};
  for (const auto& [k, v] : sc.task_params) e["task"][k] = v;
  e["seed"] = sc.seed;
  return e;
}

json cover_summary(const Cover& c) {
  json sets = json::array();
  for (const auto& s : c.sets) {
    sets.push_back({{"name", s.name},
                    {"triangles", s.region.size()},
                    {"area", region_area(s.region)},
                    {"disc", s.region.empty() ? false : is_topological_disc(s.region)}});
  }
  return sets;
}

}  // namespace

RunOutcome run_scenario(const Scenario& sc, const std::string& out_dir, bool quiet) {
  RunOutcome outcome;
  const auto t_start = std::chrono::steady_clock::now();
  json report;
  report["tool"] = kToolVersion;
  report["task"] = sc.task;
  report["scenario"] = scenario_echo(sc);
  CheckList checks;
  json result;

  try {
    std::filesystem::create_directories(out_dir);
    const Mesh mesh = build_surface(sc.surface);
    result["mesh"] = {{"vertices", mesh.vertex_count()},
                      {"triangles", mesh.tri_count()},
                      {"euler_characteristic", mesh.euler_characteristic()},
                      {"area", mesh.total_area()}};

    Cover cover;
    const bool needs_cover = sc.task != "coarea";
    if (needs_cover) {
      if (sc.cover.sets.empty()) throw std::runtime_error("config: task requires a [cover] section");
      cover = build_cover(mesh, sc.cover);
      result["cover"] = cover_summary(cover);
      result["is_cover"] = is_cover(cover);
      if (!is_cover(cover)) throw std::runtime_error("cover: regions do not cover the mesh");
    }

    if (sc.task == "kappa") {
      const KappaResult kr = kappa(cover);
      json witness = json::array();
      for (int i : kr.witness) witness.push_back(cover.sets[i].name);
      result["kappa"] = kr.kappa;
      result["smallest_subcover"] = witness;
      checks.add("kappa_at_most_size", "kappa <= number of sets", kr.kappa, cover.size(),
                 kr.kappa <= cover.size());
    } else if (sc.task == "essential") {
      const EssentialResult es = essential_sets(cover);
      json names = json::array();
      json witnesses = json::array();
      for (size_t i = 0; i < es.essential.size(); ++i) {
        names.push_back(cover.sets[es.essential[i]].name);
        witnesses.push_back(es.witness_triangle[i]);
      }
      result["essential_sets"] = names;
      result["witness_triangles"] = witnesses;
      result["essential_count"] = es.essential.size();
    } else if (sc.task == "verify-thm14") {
      const PartitionOfUnity p =
          build_bump_partition(cover, sc.partition.margin, sc.partition.sharpness);
      const auto viol = validate_partition(p);
      result["partition_violations"] = {{"negativity", viol.negativity},
                                        {"sum_error", viol.sum_error},
                                        {"support_leak", viol.support_leak},
                                        {"star_violations", viol.star_violations}};
      checks.add_bool("partition_valid", "bump partition satisfies all invariants within 1e-9",
                      viol.ok());
      const auto b = bracket_matrix(p);
      const double l1 = l1_bracket_sum(b);
      const double maxsum = max_abs_row_sum(b);
      result["l1_bracket_sum"] = l1;
      result["max_abs_bracket_sum"] = maxsum;

      const KappaResult kr = kappa(cover);
      result["kappa"] = kr.kappa;
      bool discs = true;
      for (const auto& s : cover.sets) discs = discs && is_topological_disc(s.region);
      result["all_discs"] = discs;
      const double floor = sc.task_double("l1_floor", 0.95);
      if (kr.kappa >= 3 && discs) {
        checks.add("l1_floor_disc_cover",
                   "sum_ij int |{f_i,f_j}| omega >= " + std::to_string(floor) +
                       " for a disc cover with kappa >= 3 (5% PL tolerance)",
                   l1, floor, l1 >= floor);
      } else {
        checks.inconclusive("l1_floor_disc_cover",
                            "hypotheses not met (kappa < 3 or a set is not a disc)");
      }
      const EssentialResult es = essential_sets(cover);
      result["essential_count"] = es.essential.size();
      if (!es.essential.empty()) {
        const double ess_floor = floor * static_cast<double>(es.essential.size());
        checks.add("l1_floor_essential_count",
                   "sum_ij int |{f_i,f_j}| omega >= 0.95 * |essential sets|", l1, ess_floor,
                   l1 >= ess_floor);
        double min_area = 0;
        bool first = true;
        for (int i : es.essential) {
          const double a = region_area(cover.sets[i].region);
          min_area = first ? a : std::min(min_area, a);
          first = false;
        }
        result["min_essential_area"] = min_area;
        checks.add("maxsum_vs_min_essential_area",
                   "max_T sum_ij |{f_i,f_j}| >= 0.95 / min essential-set area", maxsum,
                   0.95 / min_area, maxsum >= 0.95 / min_area);
      }
      const RatioReport ratio = nu_maxsum_ratio(p);
      result["nu_c"] = ratio.nu_c_value;
      result["ratio_nu_over_maxsum"] =
          ratio.defined ? json(ratio.ratio) : json("undefined");
      if (ratio.defined) {
        checks.add("ratio_positive", "nu_c / max_T sum|B_ij| > 0 when brackets are nonzero",
                   ratio.ratio, 0.0, ratio.ratio > 0);
        checks.add("ratio_at_most_one", "nu_c <= max_T sum|B_ij| (triangle inequality)",
                   ratio.ratio, 1.0, ratio.ratio <= 1.0 + 1e-12);
      }
      if (!sc.csv_out.empty()) export_partition_csv(p, out_dir + "/" + sc.csv_out);
      if (!sc.svg_out.empty()) {
        SvgScene scene;
        scene.mesh = &mesh;
        std::vector<const TriRegion*> regs;
        for (const auto& s : cover.sets) regs.push_back(&s.region);
        scene.regions = regs;
        emit_svg(scene, out_dir + "/" + sc.svg_out);
      }
    } else if (sc.task == "coarea") {
      const ScalarField f = make_named_field(mesh, sc.task_string("f", "z"));
      const ScalarField g = make_named_field(mesh, sc.task_string("g", "x"));
      const double s0 = sc.task_double("s_min", -0.9), s1 = sc.task_double("s_max", 0.9);
      const double t0 = sc.task_double("t_min", -0.9), t1 = sc.task_double("t_max", 0.9);
      const int ns = sc.task_int("grid_s", 100), nt = sc.task_int("grid_t", 100);
      const CoareaReport rep = coarea_sides(f, g, s0, s1, t0, t1, ns, nt);
      result["coarea"] = {{"lhs", rep.lhs},
                          {"rhs", rep.rhs},
                          {"grid", {rep.grid_s, rep.grid_t}},
                          {"omega", {rep.s_min, rep.s_max, rep.t_min, rep.t_max}},
                          {"skipped_cells", rep.skipped_cells},
                          {"skipped_measure", rep.skipped_measure},
                          {"omega_measure", rep.omega_measure}};
      const double rel_tol = sc.task_double("rel_tol", 0.02);
      const double denom = std::max(std::max(rep.lhs, rep.rhs), 1e-12);
      const double rel = std::abs(rep.lhs - rep.rhs) / denom;
      result["coarea"]["relative_difference"] = rel;
      checks.add("coarea_sides_agree",
                 "level-count quadrature matches the bracket integral (relative)", rel, rel_tol,
                 rel <= rel_tol);
      const double max_skip = sc.task_double("max_skip_fraction", 0.01);
      checks.add("coarea_skip_fraction", "near-critical skipped measure stays below bound",
                 rep.skipped_measure / rep.omega_measure, max_skip,
                 rep.skipped_measure / rep.omega_measure <= max_skip);
      if (!sc.svg_out.empty()) {
        const LevelCurve cf = level_curve(f, make_regular(f, 0.5 * (s0 + s1)));
        const LevelCurve cg = level_curve(g, make_regular(g, 0.5 * (t0 + t1)));
        SvgScene scene;
        scene.mesh = &mesh;
        scene.curves = {&cf, &cg};
        emit_svg(scene, out_dir + "/" + sc.svg_out);
      }
    } else if (sc.task == "minimize-pb") {
      OptimizerOptions opts;
      opts.iterations = sc.task_int("iterations", 200);
      opts.restarts = sc.task_int("restarts", 3);
      opts.eta0 = sc.task_double("eta0", 0.25);
      opts.margin = sc.partition.margin;
      opts.sharpness = sc.partition.sharpness;
      opts.seed = sc.seed;
      const PbEstimate est = minimize_pb(cover, opts);
      result["pb_estimate"] = {{"nu_c_upper", est.nu_c_value},
                               {"lower_bound", est.lower_bound},
                               {"lower_bound_kind", est.lower_bound_kind},
                               {"kappa", est.kappa_value},
                               {"iterations_traced", est.trace.size()},
                               {"budget_exhausted", est.budget_exhausted}};
      if (est.kappa_value < 3) {
        checks.add("pb_zero_when_kappa_lt_3",
                   "a two-set subcover admits a commuting partition, estimate <= 1e-9",
                   est.nu_c_value, 1e-9, est.nu_c_value <= 1e-9);
      } else {
        checks.add("pb_lower_vs_estimate", "theoretical lower bound <= optimized upper estimate",
                   est.lower_bound, est.nu_c_value, est.lower_bound <= est.nu_c_value);
        const double l1 = l1_bracket_sum(est.best);
        result["pb_estimate"]["l1_of_best"] = l1;
      }
      if (!sc.csv_out.empty()) export_partition_csv(est.best, out_dir + "/" + sc.csv_out);
    } else if (sc.task == "lemma34") {
      const PartitionOfUnity p =
          build_bump_partition(cover, sc.partition.margin, sc.partition.sharpness);
      const int L = sc.task_int("L", 8);
      const int nperm = sc.task_int("perm_samples", 8);
      const CrossingFloorReport rep = boundary_crossing_check(p, L, sc.seed, nperm);
      result["crossing_floor"] = {{"hypotheses_ok", rep.hypotheses_ok},
                                  {"kappa_envelopes", rep.kappa_envelopes},
                                  {"multiplicity_floor", rep.multiplicity_floor},
                                  {"min_multiplicity_s", rep.min_multiplicity_s},
                                  {"min_multiplicity_t", rep.min_multiplicity_t},
                                  {"total_crossings", rep.total_crossings},
                                  {"required_crossings", rep.required_crossings},
                                  {"perm_samples", rep.perm_samples},
                                  {"perm_pairs_nonempty", rep.perm_pairs_nonempty},
                                  {"perm_min_crossings", rep.perm_min_crossings},
                                  {"perm_mean_crossings", rep.perm_mean_crossings},
                                  {"retries", rep.retries}};
      if (!rep.hypotheses_ok) {
        result["crossing_floor"]["hypothesis_failure"] = rep.hypothesis_failure;
        checks.inconclusive("crossing_floor", rep.hypothesis_failure);
      } else {
        checks.add("crossing_floor",
                   "total boundary crossings >= (L+1-N)^2 for good covers in generic position",
                   static_cast<double>(rep.total_crossings),
                   static_cast<double>(rep.required_crossings), rep.floor_holds);
        checks.add_bool("perm_pairs_positive",
                        "every sampled permutation pair with nonempty clipped unions crosses",
                        rep.perm_positive_holds);
        if (!sc.svg_out.empty()) {
          // Overlay of one clipped boundary union per draw, identity vs
          // reversed permutation order.
          const IntervalGrid grid = make_interval_grid(p, L);
          const auto s = sample_thresholds(grid, derive_rng(sc.seed, 2 * rep.retries).next_u64());
          const auto t =
              sample_thresholds(grid, derive_rng(sc.seed, 2 * rep.retries + 1).next_u64());
          const Cover cs = levelset_cover(p, grid, s);
          const Cover ct = levelset_cover(p, grid, t);
          std::vector<int> ident(cs.size()), rev(ct.size());
          for (int i = 0; i < cs.size(); ++i) ident[i] = i;
          for (int i = 0; i < ct.size(); ++i) rev[i] = ct.size() - 1 - i;
          const PermCurveSet ga = gamma_curves(cs, ident);
          const PermCurveSet gb = gamma_curves(ct, rev);
          SvgScene scene;
          scene.mesh = &mesh;
          scene.perm_curves = {&ga, &gb};
          emit_svg(scene, out_dir + "/" + sc.svg_out);
        }
      }
    } else if (sc.task == "thm14-averaging") {
      const PartitionOfUnity p =
          build_bump_partition(cover, sc.partition.margin, sc.partition.sharpness);
      const int L = sc.task_int("L", 8);
      const int nsamples = sc.task_int("samples", 200);
      const AveragingReport rep = averaging_experiment(p, L, nsamples, sc.seed);
      result["averaging"] = {{"applicable", rep.applicable},
                             {"samples", rep.samples},
                             {"L", rep.L},
                             {"mean_crossings", rep.mean_crossings},
                             {"sigma_mc", rep.sigma_mc},
                             {"implied_lower_bound", rep.implied_lower_bound},
                             {"floor_value", rep.floor_value},
                             {"l1_bracket_sum", rep.l1_value},
                             {"degenerate_retries", rep.degenerate_retries}};
      json counts = json::array();
      for (long long c : rep.counts) counts.push_back(c);
      result["averaging"]["counts"] = counts;
      if (!rep.applicable) {
        result["averaging"]["gate_reason"] = rep.gate_reason;
        checks.inconclusive("averaging_sandwich", rep.gate_reason);
      } else {
        checks.add("averaging_lower_sandwich",
                   "mean crossings / L^2 >= (L+1-N)^2/L^2 - 3 sigma", rep.implied_lower_bound,
                   rep.floor_value, rep.lower_ok);
        checks.add("averaging_upper_sandwich",
                   "mean crossings / L^2 <= l1 bracket sum within 3 sigma",
                   rep.implied_lower_bound, rep.l1_value, rep.upper_ok);
        if (!sc.svg_out.empty()) {
          const IntervalGrid grid = make_interval_grid(p, L);
          const auto s = sample_thresholds(grid, derive_rng(sc.seed, 10000).next_u64());
          const auto t = sample_thresholds(grid, derive_rng(sc.seed, 10001).next_u64());
          const Cover cs = levelset_cover(p, grid, s);
          const Cover ct = levelset_cover(p, grid, t);
          std::vector<int> ident(cs.size()), rev(ct.size());
          for (int i = 0; i < cs.size(); ++i) ident[i] = i;
          for (int i = 0; i < ct.size(); ++i) rev[i] = ct.size() - 1 - i;
          const PermCurveSet ga = gamma_curves(cs, ident);
          const PermCurveSet gb = gamma_curves(ct, rev);
          SvgScene scene;
          scene.mesh = &mesh;
          scene.perm_curves = {&ga, &gb};
          emit_svg(scene, out_dir + "/" + sc.svg_out);
        }
      }
    }
  } catch (const std::exception& e) {
    outcome.status = RunStatus::Error;
    outcome.error = e.what();
    report["error"] = e.what();
  }

  report["result"] = result;
  report["checks"] = checks.checks;
  if (outcome.status != RunStatus::Error) {
    if (!checks.all_pass)
      outcome.status = RunStatus::Error;
    else if (checks.any_inconclusive)
      outcome.status = RunStatus::Inconclusive;
    report["status"] = outcome.status == RunStatus::Pass          ? "pass"
                       : outcome.status == RunStatus::Inconclusive ? "inconclusive"
                                                                    : "fail";
  } else {
    report["status"] = "error";
  }
  const auto t_end = std::chrono::steady_clock::now();
  report["wall_clock_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t_end - t_start).count();

  outcome.report_json = report.dump(2) + "\n";
  try {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir + "/report.json", std::ios::binary);
    out << outcome.report_json;
  } catch (...) {
    // Report content is still returned to the caller.
  }
  if (!quiet) {
    for (const auto& c : checks.checks) {
      std::string line;
      if (c.contains("inconclusive"))
        line = "[INCONCLUSIVE] " + c["id"].get<std::string>() + ": " + c["reason"].get<std::string>();
      else
        line = std::string(c["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") + c["id"].get<std::string>();
      std::cout << line << "\n";
    }
    if (outcome.status == RunStatus::Error && !outcome.error.empty())
      std::cout << "[ERROR] " << outcome.error << "\n";
  }
  return outcome;
}

}  // namespace pbsurf
