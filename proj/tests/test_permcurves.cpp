#include <doctest.h>

#include <numeric>

#include "pbsurf/pbcalc.hpp"
#include "pbsurf/permcurves.hpp"
#include "test_util.hpp"

using namespace pbsurf;

namespace {

PartitionOfUnity caps_partition(int subdiv) {
  if (subdiv < 4) subdiv = 4;  // cap overlaps too thin below subdivision 4
  return build_bump_partition(three_cap_cover(testutil::sphere(subdiv)), 2, 2.0);
}

Cover nested_disc_cover(const Mesh& m, double s1, double s2) {
  const ScalarField z = make_named_field(m, "z");
  Cover c;
  c.mesh = &m;
  for (double s : {s1, s2}) {
    CoverSet set;
    set.name = "D" + std::to_string(s);
    set.region = superlevel_region(z, s);
    set.defining_field = z;
    set.threshold = make_regular(z, s);
    c.sets.push_back(std::move(set));
  }
  return c;
}

}  // namespace

TEST_CASE("interval grid tops out above the field maxima") {
  const PartitionOfUnity p = caps_partition(3);
  const IntervalGrid g = make_interval_grid(p, 8);
  REQUIRE(g.m.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(g.m[i] / 8.0 > p.fields[i].max_value());
    CHECK(g.m[i] == 9);  // bump partitions attain 1 at private vertices
  }
}

TEST_CASE("threshold sampling: determinism, ranges, regularity") {
  const PartitionOfUnity p = caps_partition(3);
  const IntervalGrid g = make_interval_grid(p, 8);
  const auto s1 = sample_thresholds(g, 12345);
  const auto s2 = sample_thresholds(g, 12345);
  CHECK(s1 == s2);
  const auto s3 = sample_thresholds(g, 54321);
  CHECK(s1 != s3);
  for (int i = 0; i < p.size(); ++i)
    for (int k = 1; k <= g.m[i]; ++k) {
      const double v = s1[i][k - 1];
      CHECK(v >= (k - 1) / 8.0);
      CHECK(v <= k / 8.0);
      for (double fv : p.fields[i].values) CHECK(std::abs(fv - v) >= 1e-9);
    }
}

TEST_CASE("first-interval samples average to 1/(2L)") {
  const PartitionOfUnity p = caps_partition(2);
  const IntervalGrid g = make_interval_grid(p, 8);
  double sum = 0;
  int count = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto s = sample_thresholds(g, seed);
    for (int i = 0; i < p.size(); ++i) {
      sum += s[i][0];
      ++count;
    }
  }
  const double mean = sum / count;
  const double sigma = (1.0 / 8.0) / std::sqrt(12.0 * count);
  CHECK(std::abs(mean - 1.0 / 16.0) <= 3 * sigma);
}

TEST_CASE("levelset cover of the constant-one partition") {
  const Mesh& m = testutil::sphere(2);
  Cover whole;
  whole.mesh = &m;
  CoverSet all;
  all.name = "M";
  all.region = TriRegion(m, true);
  whole.sets = {all};
  const PartitionOfUnity p = build_bump_partition(whole, 1, 1.0);
  const IntervalGrid g = make_interval_grid(p, 4);
  const auto s = sample_thresholds(g, 7);
  const Cover c = levelset_cover(p, g, s);
  CHECK(is_cover(c));
  for (int k = 0; k < g.m[0]; ++k) {
    const bool below_one = s[0][k] < 1.0;
    CHECK(c.sets[k].region.size() == (below_one ? m.tri_count() : 0));
  }
}

TEST_CASE("levelset cover multiplicity floors") {
  const PartitionOfUnity p = caps_partition(5);
  const int L = 8;
  const IntervalGrid g = make_interval_grid(p, L);
  const auto s = sample_thresholds(g, 0);
  const Cover c = levelset_cover(p, g, s);
  CHECK(is_cover(c));

  // Pointwise multiplicity at vertices: provably >= L - |I| since the
  // fields sum to one.
  int min_vertex_mult = 1 << 30;
  for (int v = 0; v < p.mesh->vertex_count(); ++v) {
    int cnt = 0;
    for (int i = 0; i < p.size(); ++i)
      for (double thr : s[i])
        if (p.fields[i][v] > thr) ++cnt;
    min_vertex_mult = std::min(min_vertex_mult, cnt);
  }
  CHECK(min_vertex_mult >= L - p.size());

  // Triangle-region multiplicity: documented PL slack of one below that.
  int min_tri_mult = 1 << 30;
  for (int t = 0; t < p.mesh->tri_count(); ++t) {
    int cnt = 0;
    for (const auto& set : c.sets)
      if (set.region.contains(t)) ++cnt;
    min_tri_mult = std::min(min_tri_mult, cnt);
  }
  CHECK(min_tri_mult >= L - p.size() - 1);
}

TEST_CASE("gamma curves: single-set cover has empty boundary union") {
  const Mesh& m = testutil::sphere(2);
  Cover whole;
  whole.mesh = &m;
  CoverSet all;
  all.name = "M";
  all.region = TriRegion(m, true);
  ScalarField one(m, 1.0);
  all.defining_field = one;
  all.threshold = 0.5;
  whole.sets = {all};
  const PermCurveSet gamma = gamma_curves(whole, {0});
  CHECK(gamma.empty());
}

TEST_CASE("gamma curves require defining fields") {
  const Mesh& m = testutil::sphere(2);
  Cover c = two_cap_cover(m);  // predicate sets carry no defining field
  CHECK_THROWS_WITH_AS(gamma_curves(c, {0, 1}), doctest::Contains("defining field"),
                       std::invalid_argument);
}

TEST_CASE("gamma curves on nested discs follow the permutation order") {
  const Mesh& m = testutil::sphere(4);
  const Cover c = nested_disc_cover(m, 0.2, 0.6);  // D1 contains D2
  const PermCurveSet inner_first = gamma_curves(c, {0, 1});
  CHECK_FALSE(inner_first.pieces[0].empty());  // boundary of D1
  CHECK(inner_first.pieces[1].empty());        // boundary of D2 lies inside D1
  const PermCurveSet outer_first = gamma_curves(c, {1, 0});
  CHECK_FALSE(outer_first.pieces[0].empty());
  CHECK_FALSE(outer_first.pieces[1].empty());  // boundary of D1 survives in D2^c
  // nothing was clipped in either order: D2^c contains all of boundary D1
  const auto full_d1 = level_curve(*c.sets[0].defining_field, c.sets[0].threshold).segments();
  CHECK(outer_first.pieces[1].size() == full_d1.size());
  // a transversal great circle crosses each latitude circle twice
  const ScalarField x = make_named_field(m, "x");
  PermCurveSet meridian;
  meridian.mesh = &m;
  meridian.perm = {0};
  meridian.pieces.push_back(level_curve(x, make_regular(x, 1e-3)).segments());
  CHECK(curve_intersection_count(inner_first, meridian) == 2);
  CHECK(curve_intersection_count(outer_first, meridian) == 4);
}

TEST_CASE("gamma curves only remove points from the parent level curves") {
  const Mesh& m = testutil::sphere(3);
  const PartitionOfUnity p = caps_partition(3);
  const IntervalGrid g = make_interval_grid(p, 6);
  const auto s = sample_thresholds(g, 3);
  const Cover c = levelset_cover(p, g, s);
  std::vector<int> perm(c.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  const PermCurveSet gamma = gamma_curves(c, perm);
  for (size_t pos = 0; pos < perm.size(); ++pos) {
    const auto& set = c.sets[perm[pos]];
    const auto parent = level_curve(*set.defining_field, set.threshold).segments();
    for (const auto& seg : gamma.pieces[pos]) {
      bool found = false;
      for (const auto& par : parent) {
        if (par.tri != seg.tri) continue;
        // the clipped segment endpoints must lie on the parent chord
        const Vec2 d{par.b.x - par.a.x, par.b.y - par.a.y};
        const Vec2 e{seg.a.x - par.a.x, seg.a.y - par.a.y};
        if (std::abs(cross2(d, e)) < 1e-12) { found = true; break; }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("gamma curves are reproducible bit for bit") {
  const PartitionOfUnity p = caps_partition(3);
  const IntervalGrid g = make_interval_grid(p, 6);
  const auto s = sample_thresholds(g, 11);
  const Cover c = levelset_cover(p, g, s);
  std::vector<int> perm(c.size());
  std::iota(perm.begin(), perm.end(), 0);
  const PermCurveSet a = gamma_curves(c, perm);
  const PermCurveSet b = gamma_curves(c, perm);
  REQUIRE(a.pieces.size() == b.pieces.size());
  for (size_t k = 0; k < a.pieces.size(); ++k) {
    REQUIRE(a.pieces[k].size() == b.pieces[k].size());
    for (size_t i = 0; i < a.pieces[k].size(); ++i) {
      CHECK(a.pieces[k][i].tri == b.pieces[k][i].tri);
      CHECK(a.pieces[k][i].a.x == b.pieces[k][i].a.x);
      CHECK(a.pieces[k][i].b.y == b.pieces[k][i].b.y);
    }
  }
}

TEST_CASE("curve intersection counting: empty, great circles, symmetry") {
  const Mesh& m = testutil::sphere(4);
  const ScalarField z = make_named_field(m, "z");
  const ScalarField x = make_named_field(m, "x");
  PermCurveSet a, b, empty;
  a.mesh = b.mesh = empty.mesh = &m;
  a.perm = b.perm = {0};
  a.pieces.push_back(level_curve(z, make_regular(z, 1e-3)).segments());
  b.pieces.push_back(level_curve(x, make_regular(x, 1e-3)).segments());
  CHECK(curve_intersection_count(a, empty) == 0);
  CHECK(curve_intersection_count(a, b) == 2);
  CHECK(curve_intersection_count(b, a) == 2);
  // reversing segment orientation does not change the count
  PermCurveSet rev = b;
  for (auto& piece : rev.pieces)
    for (auto& seg : piece) std::swap(seg.a, seg.b);
  CHECK(curve_intersection_count(a, rev) == 2);
}

TEST_CASE("boundary crossing floor on the three caps") {
  const PartitionOfUnity p = caps_partition(4);
  const CrossingFloorReport rep = boundary_crossing_check(p, 8, 0, 6);
  REQUIRE(rep.hypotheses_ok);
  CHECK(rep.kappa_envelopes == 3);
  CHECK(rep.multiplicity_floor == 5);
  CHECK(rep.min_multiplicity_s >= 5);
  CHECK(rep.min_multiplicity_t >= 5);
  CHECK(rep.required_crossings == 36);
  CHECK(rep.total_crossings >= 36);
  CHECK(rep.floor_holds);
  CHECK(rep.perm_positive_holds);
  CHECK(rep.perm_pairs_nonempty > 0);
  CHECK(rep.perm_min_crossings >= 1);
}

TEST_CASE("crossing check gates on its hypotheses") {
  const Mesh& m = testutil::sphere(3);
  // kappa = 2 envelope family: inconclusive, not a failure
  const PartitionOfUnity p2 = build_bump_partition(two_cap_cover(m), 2, 2.0);
  const CrossingFloorReport r2 = boundary_crossing_check(p2, 8, 0, 2);
  CHECK_FALSE(r2.hypotheses_ok);
  CHECK(r2.hypothesis_failure.find("kappa") != std::string::npos);
  // L too small
  const PartitionOfUnity p3 = caps_partition(3);
  const CrossingFloorReport r3 = boundary_crossing_check(p3, 3, 0, 2);
  CHECK_FALSE(r3.hypotheses_ok);
}

TEST_CASE("averaging experiment: gate and sandwich") {
  const Mesh& m = testutil::sphere(3);
  const PartitionOfUnity p2 = build_bump_partition(two_cap_cover(m), 2, 2.0);
  const AveragingReport gate = averaging_experiment(p2, 8, 10, 0);
  CHECK_FALSE(gate.applicable);
  CHECK(gate.l1_value == 0.0);

  const PartitionOfUnity p = caps_partition(4);
  const AveragingReport rep = averaging_experiment(p, 8, 40, 0);
  REQUIRE(rep.applicable);
  CHECK(rep.samples == 40);
  CHECK(rep.lower_ok);
  CHECK(rep.upper_ok);
  CHECK(rep.implied_lower_bound >= rep.floor_value);
  for (long long c : rep.counts) CHECK(c >= 36);
  // the estimator targets the l1 sum itself; 4 sigma covers the MC noise
  CHECK(std::abs(rep.implied_lower_bound - rep.l1_value) <=
        4.0 * rep.sigma_mc / 64.0 + 0.05 * rep.l1_value);
}

TEST_CASE("averaging regression baseline at seed 0") {
  const PartitionOfUnity p = caps_partition(4);
  const AveragingReport rep = averaging_experiment(p, 8, 40, 0);
  REQUIRE(rep.applicable);
  CHECK(rep.mean_crossings == doctest::Approx(383.2).epsilon(1e-6));
  CHECK(rep.implied_lower_bound == doctest::Approx(5.9875).epsilon(1e-6));
}

TEST_CASE("averaging floors rise with L") {
  const PartitionOfUnity p = caps_partition(3);
  double prev_floor = 0;
  for (int L : {8, 16, 32}) {
    const AveragingReport rep = averaging_experiment(p, L, 15, 1);
    REQUIRE(rep.applicable);
    CHECK(rep.floor_value > prev_floor);
    prev_floor = rep.floor_value;
    CHECK(rep.implied_lower_bound >= rep.floor_value - 3.0 * rep.sigma_mc / (L * L));
    CHECK(rep.lower_ok);
    CHECK(rep.upper_ok);
  }
  // floor is (1 - (|I|-1)/L)^2, approaching one from below
  CHECK(prev_floor == doctest::Approx((30.0 * 30.0) / (32.0 * 32.0)).epsilon(1e-12));
}
