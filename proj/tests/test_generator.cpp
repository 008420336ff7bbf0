#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "generator.hpp"
#include "heavy_hex.hpp"
#include "instance_io.hpp"
#include "reference.hpp"
#include "rng.hpp"
#include "swap_schedule.hpp"

using namespace hubo;

TEST_CASE("edge coloring yields disjoint matchings covering all edges") {
  HeavyHexGraph g = build_heavy_hex();
  auto matchings = edge_color_matchings(g);
  size_t covered = 0;
  for (const auto& matching : matchings) {
    std::set<int32_t> seen;
    for (auto [u, v] : matching) {
      CHECK(seen.insert(u).second);
      CHECK(seen.insert(v).second);
      CHECK(g.has_edge(u, v));
    }
    covered += matching.size();
  }
  CHECK(covered == g.edges.size());
}

TEST_CASE("densify with zero swap layers keeps only the base slices") {
  HeavyHexGraph g = build_heavy_hex();
  SliceSchedule schedule = default_schedule(g);
  auto base = densify(g, schedule, 0);
  std::set<Support> expected;
  for (const Slice& slice : schedule.iteration_slices[0]) {
    for (Support s : slice.supports) {
      std::sort(s.begin(), s.end());
      expected.insert(s);
    }
  }
  CHECK(base.size() == expected.size());
  for (const Support& s : base) CHECK(expected.count(s) == 1);
}

TEST_CASE("cumulative supports: each layer is a superset of the previous") {
  HeavyHexGraph g = build_heavy_hex();
  SliceSchedule schedule = default_schedule(g);
  std::vector<std::set<Support>> sets;
  for (int n = 0; n <= 4; ++n) {
    auto supports = densify(g, schedule, n);
    sets.emplace_back(supports.begin(), supports.end());
  }
  for (int n = 0; n < 4; ++n) {
    CHECK(std::includes(sets[n + 1].begin(), sets[n + 1].end(),
                        sets[n].begin(), sets[n].end()));
  }
}

TEST_CASE("calibrated schedule hits the committed term counts") {
  HeavyHexGraph g = build_heavy_hex();
  SliceSchedule schedule = default_schedule(g);
  CHECK(densify(g, schedule, 3).size() == 1128);
  CHECK(densify(g, schedule, 4).size() == 1323);
}

TEST_CASE("schedule violations are rejected") {
  HeavyHexGraph g = build_heavy_hex();
  SliceSchedule schedule = default_schedule(g);
  // Corrupt one slice so two supports share a vertex.
  SliceSchedule broken = schedule;
  Support first = broken.iteration_slices[0][0].supports[0];
  broken.iteration_slices[0][0].supports.push_back(first);
  CHECK_THROWS_AS(densify(g, broken, 1), std::invalid_argument);

  SliceSchedule bad_swap = schedule;
  bad_swap.swap_layers[0].swaps.push_back({0, 155});  // not an edge
  CHECK_THROWS_AS(densify(g, bad_swap, 1), std::invalid_argument);

  CHECK_THROWS_AS(densify(g, schedule, 5), std::invalid_argument);
}

TEST_CASE("instance generation is deterministic and family-consistent") {
  auto a = generate_family("3S", 3, 42);
  auto b = generate_family("3S", 3, 42);
  REQUIRE(a.size() == 3);
  for (size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].n_vars() == 156);
    CHECK(a[k].metadata().seed == (42ull ^ k));
    CHECK(instance_to_string(a[k]) == instance_to_string(b[k]));
  }
  CHECK(a[0].terms().size() == 1128);
  auto dense = generate_instance("4S", 42);
  CHECK(dense.terms().size() == 1323);

  // Matching seed: 3S supports are a subset of 4S supports.
  std::set<std::vector<int32_t>> supports4;
  for (const Term& t : dense.terms()) {
    supports4.insert({t.vars.begin(), t.vars.begin() + t.arity});
  }
  for (const Term& t : a[0].terms()) {
    CHECK(supports4.count({t.vars.begin(), t.vars.begin() + t.arity}) == 1);
  }
  CHECK_THROWS_AS(generate_family("5S", 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_family("3S", 0, 0), std::invalid_argument);
}

TEST_CASE("cauchy sampler matches its closed-form statistics") {
  SplitMix64 rng(20250808);
  const int n = 100000;
  std::vector<double> samples(n);
  int tail = 0;
  for (int i = 0; i < n; ++i) {
    samples[i] = rng.next_cauchy();
    if (std::abs(samples[i]) > 10.0) tail++;
  }
  std::nth_element(samples.begin(), samples.begin() + n / 2, samples.end());
  const double median = samples[n / 2];
  CHECK(median > -0.02);
  CHECK(median < 0.02);
  // P(|X| > 10) = 1 - (2/pi) atan(10) ~ 0.0635
  const double fraction = static_cast<double>(tail) / n;
  CHECK(fraction > 0.058);
  CHECK(fraction < 0.069);
}

TEST_CASE("same seed gives identical coefficient sequences") {
  HeavyHexGraph g = build_heavy_hex();
  auto supports = densify(g, default_schedule(g), 3);
  HuboInstance x = sample_couplings(g.n_nodes, supports, 7);
  HuboInstance y = sample_couplings(g.n_nodes, supports, 7);
  HuboInstance z = sample_couplings(g.n_nodes, supports, 8);
  REQUIRE(x.terms().size() == y.terms().size());
  bool all_equal = true, any_diff_z = false;
  for (size_t i = 0; i < x.terms().size(); ++i) {
    if (x.terms()[i].coeff != y.terms()[i].coeff) all_equal = false;
    if (x.terms()[i].coeff != z.terms()[i].coeff) any_diff_z = true;
  }
  CHECK(all_equal);
  CHECK(any_diff_z);
}

TEST_CASE("instance files round-trip exactly") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "hubo_io_test";
  fs::create_directories(dir);
  HuboInstance inst = generate_instance("3S", 5);
  const fs::path file = dir / "roundtrip.json";
  save_instance(inst, file.string());
  HuboInstance back = load_instance(file.string());
  CHECK(instance_to_string(back) == instance_to_string(inst));
  CHECK(back.metadata().family == "3S");
  CHECK(back.metadata().seed == 5);
  CHECK(back.metadata().n_swap_layers == 3);
  CHECK(back.metadata().provenance == inst.metadata().provenance);
  fs::remove_all(dir);
}

TEST_CASE("hand-written files parse; malformed files carry context") {
  const std::string good = R"({
    "format_version": 1,
    "n_vars": 3,
    "terms": [[2, [0, 2], -1.5]]
  })";
  HuboInstance inst = instance_from_string(good);
  REQUIRE(inst.terms().size() == 1);
  CHECK(inst.terms()[0].coeff == -1.5);
  CHECK(inst.n_vars() == 3);

  const std::string out_of_range = R"({
    "format_version": 1,
    "n_vars": 3,
    "terms": [[2, [0, 7], -1.5]]
  })";
  CHECK_THROWS_WITH_AS(instance_from_string(out_of_range),
                       doctest::Contains("out of range"), std::runtime_error);

  CHECK_THROWS_WITH_AS(instance_from_string("{ not json"),
                       doctest::Contains("line"), std::runtime_error);

  const std::string bad_counts = R"({
    "format_version": 1,
    "n_vars": 3,
    "term_counts": {"2": 5},
    "terms": [[2, [0, 1], -1.5]]
  })";
  CHECK_THROWS_WITH_AS(instance_from_string(bad_counts),
                       doctest::Contains("term_counts"), std::runtime_error);
}

TEST_CASE("coefficients survive the 17-digit text format") {
  SplitMix64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.next_cauchy();
    CHECK(std::stod(format_coeff(x)) == x);
  }
}

TEST_CASE("generation config drives the densified instance") {
  GenerationConfig cfg;
  cfg.n_swap_layers = 4;
  cfg.seed = 11;
  HuboInstance inst = generate_instance(cfg);
  CHECK(inst.n_vars() == 156);
  CHECK(inst.terms().size() == 1323);
  CHECK(inst.metadata().family == "4S");
  CHECK(instance_to_string(inst) ==
        instance_to_string(generate_instance("4S", 11)));

  GenerationConfig bad = cfg;
  bad.coupling_distribution = "gaussian";
  CHECK_THROWS_AS(generate_instance(bad), std::invalid_argument);
  GenerationConfig bad_lattice = cfg;
  bad_lattice.lattice = "999";
  CHECK_THROWS_AS(generate_instance(bad_lattice), std::invalid_argument);
}
