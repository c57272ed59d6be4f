#include <doctest.h>

#include <numeric>

#include "dessin/error.hpp"
#include "dessin/orbits.hpp"

using namespace dessin;

namespace {

using Partitions = std::vector<std::vector<unsigned>>;

// Number of partitions of n into parts >= lo, by the standard recurrence.
unsigned long partition_count(unsigned n, unsigned lo) {
  if (n == 0) return 1;
  unsigned long total = 0;
  for (unsigned part = lo; part <= n; ++part) total += partition_count(n - part, part);
  return total;
}

}  // namespace

TEST_CASE("feasible orbit partitions") {
  CHECK(feasible_orbit_partitions(6, 3, true) == Partitions{{6}});
  CHECK(feasible_orbit_partitions(3, 3, false) == Partitions{{3}});
  CHECK(feasible_orbit_partitions(6, 1, true) == Partitions{{2, 2, 2}, {2, 4}, {6}});
  CHECK(feasible_orbit_partitions(5, 1, true).empty());
  CHECK(feasible_orbit_partitions(1, 1, false) == Partitions{{1}});
  CHECK_THROWS_AS(feasible_orbit_partitions(0, 1, false), InvalidInput);
  for (unsigned n = 1; n <= 16; ++n) {
    for (unsigned lo = 1; lo <= 4; ++lo) {
      const auto parts = feasible_orbit_partitions(n, lo, false);
      CHECK(parts.size() == partition_count(n, lo));
      for (const auto& p : parts) {
        CHECK(std::accumulate(p.begin(), p.end(), 0u) == n);
        CHECK(std::is_sorted(p.begin(), p.end()));
        CHECK(p.front() >= lo);
      }
      CHECK(std::is_sorted(parts.begin(), parts.end()));
    }
  }
}

TEST_CASE("orbit sizes from eliminants") {
  const auto sys = build_center_system(parse_passport("15,3,2,1/4,1^17"));
  CHECK(orbit_sizes_from_eliminant(eliminant(sys, 0), 6) == std::vector<unsigned>{6});
  const auto big = build_center_system(parse_passport("84,80,11,1/4,1^172"));
  CHECK(orbit_sizes_from_eliminant(eliminant(big, 0), 6) == std::vector<unsigned>{4, 2});
  const auto small = build_center_system(parse_passport("1,1/2"));
  CHECK(orbit_sizes_from_eliminant(eliminant(small, 0), 1) == std::vector<unsigned>{1});

  EliminantReport wrong = eliminant(sys, 0);
  CHECK_THROWS_WITH_AS(orbit_sizes_from_eliminant(wrong, 5), doctest::Contains("degree mismatch"), InvalidInput);
  wrong.degree_mismatch = true;
  CHECK_THROWS_AS(orbit_sizes_from_eliminant(wrong, 6), InvalidInput);
  const auto form = eliminant_linear_form(sys, Expression::difference(sys, 0, 1));
  CHECK_THROWS_AS(orbit_sizes_from_eliminant(form, 6), InvalidInput);
}

TEST_CASE("mirror parity") {
  CHECK(mirror_parity(parse_passport("1,2,4,6/4,1^9")) == MirrorParity{0, true});
  CHECK(mirror_parity(parse_passport("6,2,1,1/4,1^6")) == MirrorParity{1, false});
  CHECK(mirror_parity(parse_passport("5/1^5")) == MirrorParity{1, false});
  CHECK(mirror_parity(parse_passport("84,80,11,1/4,1^172")) == MirrorParity{0, true});
  CHECK(tree_count(parse_passport("84,80,11,1/4,1^172")) == 6);
  CHECK(tree_count(parse_passport("8,2,1,1,1,1/6,1^8")) == 5);
}

TEST_CASE("analysis of the headline passports") {
  const auto a = analyze(parse_passport("15,3,2,1/4,1^17"), 7);
  CHECK(a.verdict == Verdict::Definitive);
  CHECK(a.orbit_sizes == std::vector<unsigned>{6});
  CHECK(a.degree_bound == 3u);
  CHECK(a.feasible_partitions == Partitions{{6}});
  REQUIRE(a.eliminant.has_value());
  CHECK(a.eliminant->pure_at_prediction == true);
  CHECK(a.summary == "one orbit of 6");

  const auto b = analyze(parse_passport("6,2,1,1/4,1^6"), 5);
  CHECK(b.verdict == Verdict::Definitive);
  CHECK(b.orbit_sizes == std::vector<unsigned>{3});
  CHECK_FALSE(b.mirror.parity_applicable);

  const auto c = analyze(parse_passport("84,80,11,1/4,1^172"), 11);
  CHECK(c.white.decomposable);
  CHECK(c.white.witness == std::vector<unsigned>{11});
  CHECK_FALSE(c.degree_bound.has_value());
  CHECK(c.orbit_sizes == std::vector<unsigned>{4, 2});
  CHECK(c.verdict == Verdict::Consistent);
}

TEST_CASE("analysis outside the family and errors") {
  const auto r = analyze(parse_passport("2,2,1/2,2,1"), 5);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK_FALSE(r.eliminant.has_value());
  CHECK(r.min_orbit_size == 1);
  CHECK(r.feasible_partitions == Partitions{{1}});
  CHECK_THROWS_AS(analyze(parse_passport("15,3,2,1/4,1^17"), 5), InvalidInput);
  CHECK_THROWS_AS(analyze(parse_passport("9,9,9/2,2,1^23"), 3), Unsupported);
}

TEST_CASE("report invariants") {
  for (const auto& [text, p] : std::vector<std::pair<const char*, unsigned>>{
           {"15,3,2,1/4,1^17", 7}, {"6,2,1,1/4,1^6", 5}, {"6,4,2,1/4,1^9", 13}, {"84,80,11,1/4,1^172", 11},
           {"4,2,1/3,1^4", 7}, {"5,2,1,1/4,1^5", 3}, {"5,3,1/3,1^6", 3}, {"2,1,1/3,1", 2}}) {
    const auto r = analyze(parse_passport(text), p);
    INFO(text << " p=" << p);
    CHECK(r.verdict != Verdict::Mismatch);
    if (r.verdict == Verdict::Definitive) {
      CHECK(std::accumulate(r.orbit_sizes.begin(), r.orbit_sizes.end(), 0u) == r.tree_count);
    }
    if (!r.orbit_sizes.empty() && r.mirror.parity_applicable) {
      for (unsigned s : r.orbit_sizes) CHECK(s % 2 == 0);
    }
    for (unsigned s : r.orbit_sizes) CHECK(s >= r.min_orbit_size);
    CHECK(r.polygon_divisibility);
  }
}

TEST_CASE("json round trip and determinism") {
  for (const auto& [text, p] : std::vector<std::pair<const char*, unsigned>>{
           {"15,3,2,1/4,1^17", 7}, {"2,2,1/2,2,1", 5}, {"84,80,11,1/4,1^172", 11}, {"3,1/2,1,1", 2}}) {
    const auto r = analyze(parse_passport(text), p);
    const std::string j = to_json(r);
    CHECK(orbit_report_from_json(j) == r);
    CHECK(to_json(orbit_report_from_json(j)) == j);
    CHECK(to_json(analyze(parse_passport(text), p)) == j);
    CHECK(to_text(analyze(parse_passport(text), p)) == to_text(r));
  }
  CHECK_THROWS_AS(orbit_report_from_json("{"), InvalidInput);
  CHECK_THROWS_AS(orbit_report_from_json("{\"passport\": 1}"), InvalidInput);
}
